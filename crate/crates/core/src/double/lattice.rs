//! Submodule lattice of I(λ) for classical data.
//!
//! Local submodules are the cyclic submodules generated by primitive weight
//! vectors. They are indexed by pairs (S', S'') of subsets of S⁽¹⁾(λ) and
//! S⁽²⁾(λ), and every submodule is a unique irredundant sum of locals.

use super::induced::{predicted_primitives, InducedFactory};
use crate::group::GammaChar;
use crate::linalg::Subspace;
use crate::lincomb::Exps;
use crate::modtheory::ModuleRep;
use crate::report::Ledger;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("datum is not classical")]
    NotClassical,
}

#[derive(Debug, Clone)]
pub struct LocalInfo {
    pub s_first: Vec<usize>,
    pub s_second: Vec<usize>,
    pub dim: usize,
}

#[derive(Debug, Clone)]
pub struct LatticeAnalysis {
    pub lambda: GammaChar,
    pub locals: Vec<LocalInfo>,
    pub composition_length: Option<usize>,
    pub submodules_checked: usize,
    /// Summands J_i that are maximal submodules of N, out of all summands of
    /// decompositions with at least two terms.
    pub summands_maximal: (usize, usize),
    pub ledger: Ledger,
}

/// Label of a primitive: the indices where s, resp. t, is nonzero.
fn psi(s: &Exps, t: &Exps, n: usize) -> (Vec<usize>, Vec<usize>) {
    ((0..n).filter(|&j| s.get(j) > 0).collect(), (0..n).filter(|&j| t.get(j) > 0).collect())
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn sum_all(m: &ModuleRep, subs: &[&Subspace]) -> Subspace {
    subs.iter().fold(m.zero_sub(), |acc, s| acc.sum(s))
}

/// Whether `sub` is a maximal proper submodule of `n`.
fn is_maximal_in(m: &ModuleRep, sub: &Subspace, n: &Subspace) -> bool {
    if sub == n {
        return false;
    }
    let (q, _) = m.subquotient(n, sub);
    q.action_algebra().radical.is_empty() && q.is_absolutely_simple()
}

pub fn analyze_lattice(factory: &InducedFactory, lam: &GammaChar) -> Result<LatticeAnalysis, LatticeError> {
    let d = factory.datum();
    if !d.is_classical() {
        return Err(LatticeError::NotClassical);
    }
    let n = d.n();
    let im = factory.build(lam);
    let m = &im.module;
    let alg = m.action_algebra();
    let rad_series = m.radical_series(&alg);
    let mut ledger = Ledger::new();
    let sd = d.singular_d(lam);
    let ell = sd.first().len() + sd.second().len() + 1;

    let layers = m.layer_factors(&rad_series).ok();
    let composition_length = layers.as_ref().map(|l| l.iter().map(Vec::len).sum::<usize>());
    ledger.check("multiplicity_free", layers.as_deref().is_some_and(ModuleRep::is_multiplicity_free), || {
        format!("composition factors {layers:?}")
    });
    let spaces = m.weight_spaces(&m.whole());
    ledger.check("weight_spaces_one_dimensional", spaces.as_ref().is_ok_and(|s| s.values().all(|w| w.dim() == 1)), || {
        "a weight space has dimension other than 1".into()
    });
    ledger.check("composition_length", composition_length == Some(1 << (ell - 1)), || {
        format!("composition length {composition_length:?}, expected {}", 1usize << (ell - 1))
    });

    // locals from the predicted primitives
    let vs = im.weight_vectors();
    let prim = predicted_primitives(d, lam);
    let indexed: Vec<((Vec<usize>, Vec<usize>), Subspace)> = prim
        .iter()
        .map(|(s, t)| {
            let v = vs[im.index_of(s, t).expect("label")].clone();
            (psi(s, t, n), m.span_closure(&[v]).expect("dimension"))
        })
        .collect();
    let oracle_locals = m.local_submodules().unwrap_or_default();
    let same_set = oracle_locals.len() == indexed.len() && oracle_locals.iter().all(|l| indexed.iter().any(|(_, j)| j == l));
    ledger.check("locals_indexed_by_singular_subsets", same_set, || {
        format!("{} cyclic weight submodules, {} subset pairs", oracle_locals.len(), indexed.len())
    });
    let mut order_ok = true;
    for ((a1, a2), ja) in &indexed {
        for ((b1, b2), jb) in &indexed {
            let by_labels = subset(a1, b1) && subset(a2, b2);
            // J_a ⊇ J_b exactly when the labels of a are contained in those of b
            order_ok &= jb.is_subspace_of(ja) == by_labels;
        }
    }
    ledger.check("local_order_reverses_label_inclusion", order_ok, || "inclusions of locals disagree with the subset order".into());

    // submodules generated by at most two weight lines
    let mut decomposition_ok = true;
    let mut maximal = (0, 0);
    let mut checked = 0;
    let mut failure = String::new();
    let mut seen: Vec<Subspace> = vec![];
    for i in 0..vs.len() {
        for j in i..vs.len() {
            let nsub = m.span_closure(&[vs[i].clone(), vs[j].clone()]).expect("dimension");
            if seen.contains(&nsub) {
                continue;
            }
            seen.push(nsub.clone());
            checked += 1;
            let inside: Vec<&Subspace> = indexed.iter().map(|(_, s)| s).filter(|s| s.is_subspace_of(&nsub)).collect();
            // irredundant families of locals with sum N
            let mut families: Vec<Vec<usize>> = vec![];
            for mask in 1u32..(1 << inside.len()) {
                let fam: Vec<usize> = (0..inside.len()).filter(|b| mask & (1 << b) != 0).collect();
                let subs: Vec<&Subspace> = fam.iter().map(|&b| inside[b]).collect();
                if sum_all(m, &subs) != nsub {
                    continue;
                }
                let irredundant = (0..subs.len()).all(|drop| {
                    let rest: Vec<&Subspace> = subs.iter().enumerate().filter(|(k, _)| *k != drop).map(|(_, s)| *s).collect();
                    sum_all(m, &rest) != nsub
                });
                if irredundant {
                    families.push(fam);
                }
            }
            if families.len() != 1 {
                decomposition_ok = false;
                failure = format!("{} irredundant decompositions of a submodule of dim {}", families.len(), nsub.dim());
                continue;
            }
            let parts: Vec<&Subspace> = families[0].iter().map(|&b| inside[b]).collect();
            let rad_n = m.apply_all(&alg.radical, &nsub);
            let rads: Vec<Subspace> = parts.iter().map(|p| m.apply_all(&alg.radical, p)).collect();
            let rad_sum = sum_all(m, &rads.iter().collect::<Vec<_>>());
            let tops: usize = parts.iter().zip(&rads).map(|(p, r)| p.dim() - r.dim()).sum();
            if rad_n != rad_sum || nsub.dim() - rad_n.dim() != tops {
                decomposition_ok = false;
                failure = format!("radical of a submodule of dim {} is not the sum of the radicals of its summands", nsub.dim());
            }
            if parts.len() > 1 {
                for p in &parts {
                    maximal.1 += 1;
                    maximal.0 += usize::from(is_maximal_in(m, p, &nsub));
                }
            }
        }
    }
    ledger.check("irredundant_local_decomposition", decomposition_ok, || failure.clone());

    let locals = indexed
        .iter()
        .map(|((a, b), s)| LocalInfo { s_first: a.clone(), s_second: b.clone(), dim: s.dim() })
        .collect();
    Ok(LatticeAnalysis { lambda: lam.clone(), locals, composition_length, submodules_checked: checked, summands_maximal: maximal, ledger })
}
