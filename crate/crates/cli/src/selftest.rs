//! The fixture suite: every theorem-side computation on E1–E4 checked
//! against the oracle side.

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;

use hoplift_core::checks::{self, Sweep};
use hoplift_core::datum::{fixtures, Datum};
use hoplift_core::double::oracle::DoubleOracle;
use hoplift_core::hopf::HAlgebra;
use hoplift_core::report::Ledger;
use hoplift_core::verma;

use crate::commands::{self, DoubleContext};
use crate::report::{Report, Section};

/// Every k-th λ of E4 is analyzed; the other data run over all of Γ̂.
const E4_STRIDE: usize = 8;

fn sweep(ledger: &mut Ledger, name: &str, r: Sweep) {
    ledger.check(name, r.is_ok(), || r.clone().err().unwrap_or_default());
}

fn algebra_section(name: &str, d: &Datum, with_double: bool) -> Section {
    let h = Arc::new(HAlgebra::new(d).expect("fixture is valid"));
    let mut ledger = Ledger::new();
    if h.dim() <= 16 {
        sweep(&mut ledger, "h_associative_on_basis", checks::h_associative_on_basis(&h));
    } else {
        sweep(&mut ledger, "h_associative_random", checks::h_associative_random(&h, 300, 7));
    }
    sweep(&mut ledger, "dual_pairing_is_identity", checks::dual_pairing_is_identity(&h));
    sweep(&mut ledger, "dual_relations", checks::dual_relations_hold(&h));
    if with_double {
        let dd = hoplift_core::double::DAlgebra::new(h.clone()).expect("linked");
        let oracle = DoubleOracle::new(h.clone());
        sweep(&mut ledger, "double_matches_model_on_generators", checks::d_matches_model_on_generators(&dd, &oracle));
        sweep(&mut ledger, "double_matches_model_random", checks::d_matches_model_random(&dd, &oracle, 100, 11));
        sweep(&mut ledger, "double_associative_on_generators", checks::d_associative_on_generators(&dd));
    }
    Section::from_ledger(&format!("{name}/algebra"), &ledger)
}

fn verma_section(name: &str, d: &Datum, coradical: bool) -> Section {
    let h = Arc::new(HAlgebra::new(d).expect("fixture is valid"));
    let chars: Vec<_> = d.group().characters().collect();
    let analyses: Vec<_> = chars.par_iter().map(|&c| verma::analyze(&h, c)).collect();
    let mut ledger = Ledger::new();
    let mut tops = BTreeSet::new();
    for a in &analyses {
        ledger.extend(a.ledger.clone());
        if let Some(t) = a.top_weight {
            tops.insert(t);
        }
    }
    ledger.check("simple_tops_pairwise_distinct", tops.len() == chars.len(), || format!("{} distinct tops for {} characters", tops.len(), chars.len()));
    if coradical {
        let bad: Vec<_> = chars.par_iter().filter(|&&c| verma::c_gamma_dim(&h, c) != verma::simple_dim_h(d, c)).collect();
        ledger.check("coradical_orbit_dimension", bad.is_empty(), || format!("{} characters differ", bad.len()));
    }
    let mut s = Section::from_ledger(&format!("{name}/verma"), &ledger);
    s.notes.push(format!("{} characters", chars.len()));
    s
}

fn double_section(name: &str, ctx: &DoubleContext, stride: usize) -> Section {
    let all = ctx.datum.gamma_chars();
    let lams: Vec<_> = all.iter().step_by(stride).cloned().collect();
    let analyses: Vec<_> =
        lams.par_iter().map(|l| hoplift_core::double::induced::analyze(&ctx.factory, &ctx.dd, l)).collect();
    let mut ledger = Ledger::new();
    let mut tops = BTreeSet::new();
    for a in &analyses {
        ledger.extend(a.ledger.clone());
        if let Some(t) = &a.top_weight {
            tops.insert(t.clone());
        }
    }
    if ctx.datum.is_half_clean() {
        ledger.check("simple_tops_pairwise_distinct", tops.len() == lams.len(), || format!("{} distinct tops for {} characters", tops.len(), lams.len()));
    } else {
        ledger.skip("simple_tops_pairwise_distinct", "datum not half-clean");
    }
    let mut s = Section::from_ledger(&format!("{name}/double"), &ledger);
    if stride > 1 {
        s.notes.push(format!("sampled {} of {} characters of the double", lams.len(), all.len()));
    } else {
        s.notes.push(format!("{} characters", lams.len()));
    }
    s
}

fn lattice_section(name: &str, ctx: &DoubleContext) -> Section {
    let mut ledger = Ledger::new();
    if !ctx.datum.is_classical() {
        ledger.skip("submodule_lattice", "datum not classical");
        return Section::from_ledger(&format!("{name}/lattice"), &ledger);
    }
    let lams = ctx.datum.gamma_chars();
    let results: Vec<_> = lams.par_iter().map(|l| ctx.lattice(l).map(|(a, _)| a)).collect();
    let mut maximal = (0, 0);
    for r in results {
        match r {
            Ok(a) => {
                maximal.0 += a.summands_maximal.0;
                maximal.1 += a.summands_maximal.1;
                ledger.extend(a.ledger);
            }
            Err(e) => {
                ledger.check("submodule_lattice", false, || e.to_string());
            }
        }
    }
    let mut s = Section::from_ledger(&format!("{name}/lattice"), &ledger);
    s.notes.push(format!("summands of two-term decompositions that are maximal in their sum: {}/{}", maximal.0, maximal.1));
    s
}

pub fn run() -> Report {
    let mut sections = vec![];
    for (name, d) in fixtures::all() {
        let v = commands::validate(&d);
        let mut ledger = Ledger::new();
        let valid = v.validation.as_ref().is_some_and(|x| x.valid);
        ledger.check("datum_conditions", valid, || "fixture fails validation".into());
        let mut s = Section::from_ledger(&format!("{name}/validate"), &ledger);
        s.notes.push(format!("half_clean={} classical={}", d.is_half_clean(), d.is_classical()));
        sections.push(s);

        let small = d.group().size() <= 4;
        sections.push(algebra_section(name, &d, small));
        sections.push(verma_section(name, &d, small && d.is_half_clean()));
        let ctx = DoubleContext::new(&d).expect("fixture is valid");
        let stride = if name == "e4" { E4_STRIDE } else { 1 };
        sections.push(double_section(name, &ctx, stride));
        if name != "e4" {
            sections.push(lattice_section(name, &ctx));
        }
    }
    Report { command: "selftest".into(), sections, ..Report::default() }
}
