use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use hoplift_core::datum::{parse_datum, Datum, DatumError, DatumKind};
use hoplift_core::double::induced::{self, InducedFactory};
use hoplift_core::double::lattice::{analyze_lattice, LatticeAnalysis};
use hoplift_core::double::DAlgebra;
use hoplift_core::group::{CharId, GammaChar};
use hoplift_core::hopf::HAlgebra;
use hoplift_core::verma;

use crate::report::*;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at {0}")]
    Parse(DatumError),
    #[error("invalid datum: {0}")]
    Input(String),
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("datum is not classical")]
    NotClassical,
    #[error("bad selector: {0}")]
    Selector(String),
}

pub enum Selector {
    All,
    One(Vec<i64>),
}

impl Selector {
    pub fn parse(text: &str) -> Result<Selector, CliError> {
        text.split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| CliError::Selector(format!("`{t}` is not an integer"))))
            .collect::<Result<Vec<_>, _>>()
            .map(Selector::One)
    }
}

pub fn load(path: &Path) -> Result<Datum, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    parse_datum(&text).map_err(|e| match e {
        DatumError::Parse { .. } => CliError::Parse(e),
        other => CliError::Input(other.to_string()),
    })
}

/// The linked form needed by the representation-theoretic commands.
pub fn linked(d: &Datum) -> Result<Datum, CliError> {
    let report = d.validate();
    if !report.is_valid() {
        return Err(CliError::ValidationFailed(report.failures()));
    }
    if d.is_linked() {
        return Ok(d.clone());
    }
    d.normalize().map(|n| n.datum).map_err(|e| CliError::Input(e.to_string()))
}

pub fn echo(d: &Datum) -> DatumEcho {
    let g = d.group();
    let elem = |x| g.elem(x).exps;
    let chr = |c| g.character(c).exps;
    let k = d.num_generators();
    let (a, b, chi, mode) = match d.kind() {
        DatumKind::Linked(l) => (
            l.a.iter().map(|&x| elem(x)).collect(),
            l.b.iter().map(|&x| elem(x)).collect(),
            l.chi.iter().map(|&c| chr(c)).collect(),
            "linked",
        ),
        DatumKind::General(gd) => (gd.a.iter().map(|&x| elem(x)).collect(), vec![], gd.chi.iter().map(|&c| chr(c)).collect(), "general"),
    };
    let q = (0..k)
        .map(|i| {
            let (ai, ci) = d.generator(i);
            FieldValue::from(&d.eval(ci, ai))
        })
        .collect();
    DatumEcho {
        mode: mode.into(),
        orders: g.orders().to_vec(),
        conductor: d.field().conductor(),
        generators: k,
        a,
        b,
        chi,
        q,
        m: (0..k).map(|i| d.order_of(i)).collect(),
    }
}

pub fn validate(d: &Datum) -> Report {
    let v = d.validate();
    let checks = v.checks.iter().map(|c| CheckOut { name: c.name.into(), passed: c.passed, offending: c.offending.clone() }).collect();
    let normalized = if v.is_valid() { linked(d).ok() } else { None };
    let mut assertions = vec![AssertionOut {
        check: "datum_conditions".into(),
        status: if v.is_valid() { "pass" } else { "fail" }.into(),
        detail: (!v.is_valid()).then(|| v.failures()),
    }];
    match &normalized {
        Some(n) if !n.is_half_clean() => assertions.push(AssertionOut {
            check: "double_representation_theorems".into(),
            status: "not asserted".into(),
            detail: Some("datum not half-clean".into()),
        }),
        _ => {}
    }
    if let Some(n) = &normalized {
        if !n.is_classical() {
            assertions.push(AssertionOut {
                check: "submodule_lattice_theorems".into(),
                status: "not asserted".into(),
                detail: Some("datum not classical".into()),
            });
        }
    }
    Report {
        command: "validate".into(),
        datum: Some(echo(d)),
        validation: Some(ValidationOut {
            valid: v.is_valid(),
            checks,
            linked: normalized.is_some(),
            half_clean: normalized.as_ref().map(Datum::is_half_clean),
            classical: normalized.as_ref().map(Datum::is_classical),
        }),
        assertions,
        ..Report::default()
    }
}

fn char_selector(d: &Datum, sel: &[i64]) -> Result<CharId, CliError> {
    let g = d.group();
    if sel.len() != g.rank() {
        return Err(CliError::Selector(format!("expected {} exponents, got {}", g.rank(), sel.len())));
    }
    let c = g.char_from_ints(sel).map_err(|e| CliError::Selector(e.to_string()))?;
    g.char_id(&c).map_err(|e| CliError::Selector(e.to_string()))
}

pub fn gamma_selector(d: &Datum, sel: &[i64]) -> Result<GammaChar, CliError> {
    let g = d.group();
    let r = g.rank();
    if sel.len() != 2 * r {
        return Err(CliError::Selector(format!("expected {} exponents (character, then group element), got {}", 2 * r, sel.len())));
    }
    let chi = char_selector(d, &sel[..r])?;
    let e = g.elem_from_ints(&sel[r..]).map_err(|e| CliError::Selector(e.to_string()))?;
    let h = g.id_of(&e).map_err(|e| CliError::Selector(e.to_string()))?;
    Ok(GammaChar { chi, h })
}

pub fn lambda_exps(d: &Datum, lam: &GammaChar) -> Vec<u32> {
    let g = d.group();
    let mut v = g.character(lam.chi).exps;
    v.extend(g.elem(lam.h).exps);
    v
}

fn one_based(v: Vec<usize>) -> Vec<usize> {
    v.into_iter().map(|i| i + 1).collect()
}

pub fn verma_row(h: &HAlgebra, gamma: CharId) -> VermaRow {
    let d = h.datum();
    let a = verma::analyze(h, gamma);
    VermaRow {
        gamma: d.group().character(gamma).exps,
        s: one_based(a.singular.clone()),
        e: d.singular_h(gamma).e,
        dim_z: a.dim_z,
        dim_l: a.dim_l,
        loewy_length: a.loewy_length,
        layers: factors(&a.layers),
        assertions: assertions(&a.ledger),
    }
}

pub fn verma(d: &Datum, sel: &Selector) -> Result<Report, CliError> {
    let d = linked(d)?;
    let h = HAlgebra::new(&d).map_err(|e| CliError::Input(e.to_string()))?;
    let chars: Vec<CharId> = match sel {
        Selector::All => d.group().characters().collect(),
        Selector::One(v) => vec![char_selector(&d, v)?],
    };
    let mut rows: Vec<VermaRow> = chars.par_iter().map(|&c| verma_row(&h, c)).collect();
    rows.sort_by(|a, b| a.gamma.cmp(&b.gamma));
    Ok(Report { command: "verma".into(), datum: Some(echo(&d)), verma: rows, ..Report::default() })
}

pub struct DoubleContext {
    pub datum: Datum,
    pub dd: DAlgebra,
    pub factory: InducedFactory,
}

impl DoubleContext {
    pub fn new(d: &Datum) -> Result<Self, CliError> {
        let datum = linked(d)?;
        let h = HAlgebra::new(&datum).map_err(|e| CliError::Input(e.to_string()))?;
        let dd = DAlgebra::new(Arc::new(h)).map_err(|e| CliError::Input(e.to_string()))?;
        let factory = InducedFactory::new(&dd);
        Ok(DoubleContext { datum, dd, factory })
    }

    pub fn row(&self, lam: &GammaChar) -> DoubleRow {
        let a = induced::analyze(&self.factory, &self.dd, lam);
        DoubleRow {
            lambda: lambda_exps(&self.datum, lam),
            s: Pair { first: one_based(a.s1.clone()), second: one_based(a.s2.clone()) },
            e: Pair { first: a.e1.clone(), second: a.e2.clone() },
            dim_i: a.dim_i,
            dim_l: a.dim_l,
            loewy_length: a.loewy_length,
            layer_dims: a.layer_dims.clone(),
            layers: a.layers.as_deref().map(factors),
            composition_length: a.composition_length,
            thetas: a
                .thetas
                .iter()
                .map(|(g, s, t, v)| ThetaOut { generator: g.clone(), s: s.clone(), t: t.clone(), value: v.into() })
                .collect(),
            assertions: assertions(&a.ledger),
        }
    }

    pub fn lattice(&self, lam: &GammaChar) -> Result<(LatticeAnalysis, LatticeRow), CliError> {
        let a = analyze_lattice(&self.factory, lam).map_err(|_| CliError::NotClassical)?;
        let row = LatticeRow {
            lambda: lambda_exps(&self.datum, lam),
            locals: a
                .locals
                .iter()
                .map(|l| LocalOut { s: Pair { first: one_based(l.s_first.clone()), second: one_based(l.s_second.clone()) }, dim: l.dim })
                .collect(),
            composition_length: a.composition_length,
            submodules_checked: a.submodules_checked,
            summands_maximal: [a.summands_maximal.0, a.summands_maximal.1],
            assertions: assertions(&a.ledger),
        };
        Ok((a, row))
    }

    pub fn rows(&self, lams: &[GammaChar]) -> Vec<DoubleRow> {
        let mut rows: Vec<DoubleRow> = lams.par_iter().map(|l| self.row(l)).collect();
        rows.sort_by(|a, b| a.lambda.cmp(&b.lambda));
        rows
    }
}

pub fn double(d: &Datum, sel: &Selector) -> Result<Report, CliError> {
    let ctx = DoubleContext::new(d)?;
    let lams = match sel {
        Selector::All => ctx.datum.gamma_chars(),
        Selector::One(v) => vec![gamma_selector(&ctx.datum, v)?],
    };
    let rows = ctx.rows(&lams);
    Ok(Report { command: "double".into(), datum: Some(echo(&ctx.datum)), double: rows, ..Report::default() })
}

pub fn lattice(d: &Datum, sel: &[i64]) -> Result<Report, CliError> {
    let ctx = DoubleContext::new(d)?;
    if !ctx.datum.is_classical() {
        return Err(CliError::NotClassical);
    }
    let lam = gamma_selector(&ctx.datum, sel)?;
    let (_, row) = ctx.lattice(&lam)?;
    Ok(Report { command: "lattice".into(), datum: Some(echo(&ctx.datum)), lattice: vec![row], ..Report::default() })
}
