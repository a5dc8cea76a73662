//! Machine-readable reports and their table rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use hoplift_core::cyclo::FieldElem;
use hoplift_core::modtheory::Factor;
use hoplift_core::report::{Ledger, Outcome};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FieldValue {
    #[serde(rename = "N")]
    pub n: u32,
    pub coeffs: Vec<String>,
}

impl From<&FieldElem> for FieldValue {
    fn from(x: &FieldElem) -> Self {
        FieldValue { n: x.conductor(), coeffs: x.to_rational_strings() }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct AssertionOut {
    pub check: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

pub fn assertions(ledger: &Ledger) -> Vec<AssertionOut> {
    ledger
        .entries
        .iter()
        .map(|a| {
            let (status, detail) = match &a.outcome {
                Outcome::Pass => ("pass", None),
                Outcome::Fail(why) => ("fail", Some(why.clone())),
                Outcome::NotAsserted(why) => ("not asserted", Some(why.clone())),
            };
            AssertionOut { check: a.check.clone(), status: status.into(), detail }
        })
        .collect()
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FactorOut {
    pub dim: usize,
    pub weight: Vec<u32>,
}

pub fn factors(layers: &[Vec<Factor>]) -> Vec<Vec<FactorOut>> {
    layers.iter().map(|l| l.iter().map(|f| FactorOut { dim: f.dim, weight: f.weight.clone() }).collect()).collect()
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CheckOut {
    pub name: String,
    pub passed: bool,
    pub offending: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DatumEcho {
    pub mode: String,
    pub orders: Vec<u32>,
    pub conductor: u32,
    pub generators: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub a: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub b: Vec<Vec<u32>>,
    pub chi: Vec<Vec<u32>>,
    pub q: Vec<FieldValue>,
    pub m: Vec<u32>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ValidationOut {
    pub valid: bool,
    pub checks: Vec<CheckOut>,
    pub linked: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_clean: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classical: Option<bool>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct VermaRow {
    pub gamma: Vec<u32>,
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    pub e: Vec<Option<u32>>,
    #[serde(rename = "dim_Z")]
    pub dim_z: usize,
    #[serde(rename = "dim_L")]
    pub dim_l: usize,
    pub loewy_length: usize,
    pub layers: Vec<Vec<FactorOut>>,
    pub assertions: Vec<AssertionOut>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct Pair<T> {
    pub first: T,
    pub second: T,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ThetaOut {
    pub generator: String,
    pub s: Vec<u32>,
    pub t: Vec<u32>,
    pub value: FieldValue,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DoubleRow {
    pub lambda: Vec<u32>,
    #[serde(rename = "S")]
    pub s: Pair<Vec<usize>>,
    pub e: Pair<Vec<Option<u32>>>,
    #[serde(rename = "dim_I")]
    pub dim_i: usize,
    #[serde(rename = "dim_L")]
    pub dim_l: usize,
    pub loewy_length: usize,
    pub layer_dims: Vec<usize>,
    pub layers: Option<Vec<Vec<FactorOut>>>,
    pub composition_length: Option<usize>,
    pub thetas: Vec<ThetaOut>,
    pub assertions: Vec<AssertionOut>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct LocalOut {
    #[serde(rename = "S")]
    pub s: Pair<Vec<usize>>,
    pub dim: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct LatticeRow {
    pub lambda: Vec<u32>,
    pub locals: Vec<LocalOut>,
    pub composition_length: Option<usize>,
    pub submodules_checked: usize,
    pub summands_maximal: [usize; 2],
    pub assertions: Vec<AssertionOut>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub not_asserted: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<AssertionOut>,
}

impl Section {
    pub fn from_ledger(name: &str, ledger: &Ledger) -> Self {
        let failures: Vec<AssertionOut> = assertions(ledger).into_iter().filter(|a| a.status == "fail").collect();
        Section {
            name: name.into(),
            passed: ledger.count(|o| matches!(o, Outcome::Pass)),
            failed: failures.len(),
            not_asserted: ledger.count(|o| matches!(o, Outcome::NotAsserted(_))),
            notes: vec![],
            failures,
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datum: Option<DatumEcho>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationOut>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verma: Vec<VermaRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub double: Vec<DoubleRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lattice: Vec<LatticeRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sections: Vec<Section>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assertions: Vec<AssertionOut>,
}

impl Report {
    fn all_assertions(&self) -> impl Iterator<Item = &AssertionOut> {
        self.assertions
            .iter()
            .chain(self.verma.iter().flat_map(|r| &r.assertions))
            .chain(self.double.iter().flat_map(|r| &r.assertions))
            .chain(self.lattice.iter().flat_map(|r| &r.assertions))
            .chain(self.sections.iter().flat_map(|s| &s.failures))
    }

    pub fn passed(&self) -> bool {
        self.all_assertions().all(|a| a.status != "fail")
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        if let Some(d) = &self.datum {
            let _ = writeln!(out, "datum: {} mode, G = {:?}, N = {}, {} generators, m = {:?}", d.mode, d.orders, d.conductor, d.generators, d.m);
        }
        if let Some(v) = &self.validation {
            let _ = writeln!(out, "valid: {}", v.valid);
            for c in &v.checks {
                let mark = if c.passed { "pass" } else { "FAIL" };
                if c.passed {
                    let _ = writeln!(out, "  {mark}  {}", c.name);
                } else {
                    let _ = writeln!(out, "  {mark}  {} at {:?}", c.name, c.offending);
                }
            }
            let show = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
            let _ = writeln!(out, "linked: {}", v.linked);
            let _ = writeln!(out, "half_clean={}", show(v.half_clean));
            let _ = writeln!(out, "classical={}", show(v.classical));
        }
        if !self.verma.is_empty() {
            let _ = writeln!(out, "{:<14} {:<10} {:<16} {:>6} {:>6} {:>4}  layers", "gamma", "S", "e", "dim Z", "dim L", "ell");
            for r in &self.verma {
                let dims: Vec<usize> = r.layers.iter().map(|l| l.iter().map(|f| f.dim).sum()).collect();
                let _ = writeln!(
                    out,
                    "{:<14} {:<10} {:<16} {:>6} {:>6} {:>4}  {:?}",
                    fmt_list(&r.gamma),
                    fmt_list(&r.s),
                    fmt_opts(&r.e),
                    r.dim_z,
                    r.dim_l,
                    r.loewy_length,
                    dims
                );
            }
        }
        if !self.double.is_empty() {
            let _ = writeln!(
                out,
                "{:<18} {:<8} {:<8} {:<10} {:<10} {:>5} {:>5} {:>4} {:>5}  layers",
                "lambda", "S1", "S2", "e", "e'", "dim I", "dim L", "ell", "comp"
            );
            for r in &self.double {
                let comp = r.composition_length.map_or("-".to_string(), |c| c.to_string());
                let _ = writeln!(
                    out,
                    "{:<18} {:<8} {:<8} {:<10} {:<10} {:>5} {:>5} {:>4} {:>5}  {:?}",
                    fmt_list(&r.lambda),
                    fmt_list(&r.s.first),
                    fmt_list(&r.s.second),
                    fmt_opts(&r.e.first),
                    fmt_opts(&r.e.second),
                    r.dim_i,
                    r.dim_l,
                    r.loewy_length,
                    comp,
                    r.layer_dims
                );
            }
        }
        for r in &self.lattice {
            let _ = writeln!(out, "lattice of I({}): composition length {:?}", fmt_list(&r.lambda), r.composition_length);
            for l in &r.locals {
                let _ = writeln!(out, "  local S'={} S''={} dim {}", fmt_list(&l.s.first), fmt_list(&l.s.second), l.dim);
            }
            let _ = writeln!(
                out,
                "  {} submodules checked; summands maximal in their sum: {}/{}",
                r.submodules_checked, r.summands_maximal[0], r.summands_maximal[1]
            );
        }
        for s in &self.sections {
            let status = if s.failed > 0 { "FAIL" } else { "pass" };
            let _ = writeln!(out, "{status}  {:<28} {:>5} pass {:>3} fail {:>4} not asserted", s.name, s.passed, s.failed, s.not_asserted);
            for n in &s.notes {
                let _ = writeln!(out, "      {n}");
            }
            for f in &s.failures {
                let _ = writeln!(out, "      FAIL {}: {}", f.check, f.detail.clone().unwrap_or_default());
            }
        }
        let rows = self
            .verma
            .iter()
            .map(|r| (fmt_list(&r.gamma), &r.assertions))
            .chain(self.double.iter().map(|r| (fmt_list(&r.lambda), &r.assertions)))
            .chain(self.lattice.iter().map(|r| (fmt_list(&r.lambda), &r.assertions)));
        let mut ledger_lines = vec![];
        for (sel, list) in rows {
            for a in list {
                ledger_lines.push(format!("{sel}  {}", line(a)));
            }
        }
        ledger_lines.extend(self.assertions.iter().map(line));
        if !ledger_lines.is_empty() {
            let _ = writeln!(out, "assertions:");
            for l in ledger_lines {
                let _ = writeln!(out, "  {l}");
            }
        }
        out
    }
}

fn line(a: &AssertionOut) -> String {
    match (a.status.as_str(), &a.detail) {
        ("pass", _) => format!("pass  {}", a.check),
        ("fail", d) => format!("FAIL  {}: {}", a.check, d.clone().unwrap_or_default()),
        (_, d) => format!("not asserted  {} ({})", a.check, d.clone().unwrap_or_default()),
    }
}

fn fmt_list<T: std::fmt::Display>(v: &[T]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn fmt_opts(v: &[Option<u32>]) -> String {
    format!("({})", v.iter().map(|x| x.map_or("-".to_string(), |e| e.to_string())).collect::<Vec<_>>().join(","))
}
