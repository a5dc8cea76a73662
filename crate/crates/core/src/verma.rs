//! Verma modules Z(γ) = H ⊗_Y k_γ, where Y is generated by G and the y_k.
//!
//! The basis is x^i ⊗ 1_γ. A generator acts by straightening z·x^i in H and
//! evaluating: words with a y-letter vanish, g ↦ γ(g).

use std::collections::HashMap;
use std::sync::Arc;

use crate::cyclo::{FieldElem, FieldExt};
use crate::datum::Datum;
use crate::dual::{Functional, HStar};
use crate::group::CharId;
use crate::hopf::{HAlgebra, HElem};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::lincomb::Exps;
use crate::modtheory::{Factor, ModuleRep, Weight};
use crate::report::Ledger;

pub struct VermaZ {
    pub gamma: CharId,
    pub basis: Vec<Exps>,
    index: HashMap<Exps, usize>,
    /// Group generators, then x_1..x_n, then y_1..y_n.
    pub module: ModuleRep,
    n: usize,
    group_gens: usize,
}

/// Weight of a character as eigenvalue exponents on the group generators.
pub fn char_weight(d: &Datum, chi: CharId) -> Weight {
    let g = d.group();
    let scale = d.field().conductor() / g.exponent();
    g.generators().into_iter().map(|x| g.pair(chi, x) * scale).collect()
}

pub fn weight_char(d: &Datum, w: &Weight) -> Option<CharId> {
    d.group().characters().find(|&c| &char_weight(d, c) == w)
}

/// dim L(γ) = Π_{k∉S} m_k Π_{j∈S} (e_j + 1).
pub fn simple_dim_h(d: &Datum, gamma: CharId) -> usize {
    let s = d.singular_h(gamma);
    (0..d.n())
        .map(|k| match s.e[k] {
            Some(e) => e as usize + 1,
            None => d.m(k) as usize,
        })
        .product()
}

impl VermaZ {
    pub fn build(h: &HAlgebra, gamma: CharId) -> Self {
        let d = h.datum();
        let n = d.n();
        let g = d.group();
        let basis = Exps::box_iter(&d.ms());
        let index: HashMap<Exps, usize> = basis.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let mut letters: Vec<HElem> = g.generators().into_iter().map(|x| h.group_elem(x)).collect();
        let group_gens = letters.len();
        letters.extend((0..2 * n).map(|k| h.gen(k)));
        let field = d.field();
        let dim = basis.len();
        let gens = letters
            .iter()
            .map(|z| {
                let mut m = Matrix::zero(field, dim, dim);
                for (col, &e) in basis.iter().enumerate() {
                    let w = h.word(&e.to_vec(n), g.identity(), &[]);
                    let prod = h.multiply(z, &HElem::monomial(w, field.one()));
                    for (u, c) in prod.iter() {
                        if !u.post.is_zero() {
                            continue;
                        }
                        let row = index[&u.pre];
                        let v = m.get(row, col) + &(c * &d.eval(gamma, u.g));
                        m.set(row, col, v);
                    }
                }
                m
            })
            .collect();
        let torus = (0..group_gens).collect();
        let lowering = (group_gens + n..group_gens + 2 * n).collect();
        let module = ModuleRep::new(field, dim, gens, torus, lowering).expect("square matrices");
        VermaZ { gamma, basis, index, module, n, group_gens }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn x(&self, k: usize) -> &Matrix {
        &self.module.gens()[self.group_gens + k]
    }

    pub fn y(&self, k: usize) -> &Matrix {
        &self.module.gens()[self.group_gens + self.n + k]
    }

    pub fn group_gen(&self, i: usize) -> &Matrix {
        &self.module.gens()[i]
    }

    pub fn vector(&self, e: &Exps) -> Vector {
        self.module.unit(self.index[e])
    }

    pub fn index_of(&self, e: &Exps) -> usize {
        self.index[e]
    }

    /// Basis monomials killed by every y_k.
    pub fn primitive_monomials(&self) -> Vec<Exps> {
        self.basis
            .iter()
            .filter(|e| {
                let v = self.vector(e);
                (0..self.n).all(|k| self.y(k).mul_vec(&v).iter().all(|c| c.is_zero()))
            })
            .copied()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect()
    }
}

/// Monomials with i_j ∈ {0, e_j+1} on S(γ) and 0 elsewhere.
pub fn predicted_primitives(d: &Datum, gamma: CharId) -> Vec<Exps> {
    let s = d.singular_h(gamma);
    let set = s.set();
    let mut out = vec![];
    for mask in 0u32..(1 << set.len()) {
        let mut e = Exps::ZERO;
        for (bit, &j) in set.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                e = e.with(j, s.e[j].expect("singular") + 1);
            }
        }
        out.push(e);
    }
    out.sort();
    out
}

/// Number of singular j with i_j ≥ e_j + 1.
pub fn rank_h(d: &Datum, gamma: CharId, i: &Exps) -> usize {
    let s = d.singular_h(gamma);
    s.set().into_iter().filter(|&j| i.get(j) > s.e[j].expect("singular")).count()
}

/// Weight γχ^i of x^i ⊗ 1_γ.
pub fn monomial_char(d: &Datum, gamma: CharId, i: &Exps) -> CharId {
    let g = d.group();
    (0..d.n()).fold(gamma, |acc, k| g.char_mul(acc, g.char_pow(d.chi(k), i.get(k) as i64)))
}

pub struct VermaAnalysis {
    pub gamma: CharId,
    pub singular: Vec<usize>,
    pub e: Vec<Option<u32>>,
    pub dim_z: usize,
    pub dim_l: usize,
    pub dim_l_formula: usize,
    pub loewy_length: usize,
    pub layers: Vec<Vec<Factor>>,
    /// Weight of the primitive line of the simple top, when unique.
    pub top_weight: Option<CharId>,
    pub ledger: Ledger,
}

fn factor_desc(d: &Datum, fs: &[Factor]) -> String {
    let parts: Vec<String> = fs
        .iter()
        .map(|f| match weight_char(d, &f.weight) {
            Some(c) => format!("{}:{:?}", f.dim, d.group().character(c).exps),
            None => format!("{}:?", f.dim),
        })
        .collect();
    format!("[{}]", parts.join(", "))
}

pub fn analyze(h: &HAlgebra, gamma: CharId) -> VermaAnalysis {
    let d = h.datum();
    let z = VermaZ::build(h, gamma);
    let m = &z.module;
    let s = d.singular_h(gamma);
    let set = s.set();
    let mut ledger = Ledger::new();

    let alg = m.action_algebra();
    let rad_series = m.radical_series(&alg);
    let soc_series = m.socle_series(&alg);
    let oracle_rad = rad_series.get(1).cloned().unwrap_or_else(|| m.zero_sub());

    ledger.check("radical_is_nilpotent", crate::modtheory::is_nilpotent_ideal(d.field(), &alg.radical, m.dim()), || {
        "trace radical is not nilpotent".into()
    });

    ledger.check("unique_maximal_submodule", m.has_unique_maximal(&alg), || "top is not simple".into());

    let primitives = z.primitive_monomials();
    let predicted = predicted_primitives(d, gamma);
    ledger.check("primitive_monomials", primitives == predicted, || {
        format!("found {:?}, expected {:?}", primitives.iter().map(|e| e.to_vec(d.n())).collect::<Vec<_>>(), predicted.iter().map(|e| e.to_vec(d.n())).collect::<Vec<_>>())
    });

    // theorem side: R^k generated by the primitive monomials of rank k
    let ell = set.len() + 1;
    let mut theorem_series: Vec<Subspace> = (0..ell)
        .map(|k| {
            let seeds: Vec<Vector> = predicted.iter().filter(|e| rank_h(d, gamma, e) == k).map(|e| z.vector(e)).collect();
            m.span_closure(&seeds).expect("dimension")
        })
        .collect();
    theorem_series.push(m.zero_sub());
    let theorem_rad = theorem_series.get(1).cloned().unwrap_or_else(|| m.zero_sub());
    ledger.check("radical_generated_by_critical_powers", theorem_rad == oracle_rad, || {
        format!("theorem radical dim {}, oracle radical dim {}", theorem_rad.dim(), oracle_rad.dim())
    });

    let dim_l = m.dim() - oracle_rad.dim();
    let dim_l_formula = simple_dim_h(d, gamma);
    ledger.check("simple_dimension_formula", dim_l == dim_l_formula, || format!("oracle {dim_l}, formula {dim_l_formula}"));

    ledger.check("radical_series_equals_rank_filtration", rad_series == theorem_series, || {
        format!(
            "oracle dims {:?}, theorem dims {:?}",
            rad_series.iter().map(Subspace::dim).collect::<Vec<_>>(),
            theorem_series.iter().map(Subspace::dim).collect::<Vec<_>>()
        )
    });
    let reversed: Vec<Subspace> = soc_series.iter().rev().cloned().collect();
    ledger.check("socle_series_reverses_radical_series", reversed == rad_series, || {
        format!("socle dims {:?}", soc_series.iter().map(Subspace::dim).collect::<Vec<_>>())
    });
    let loewy_length = rad_series.len() - 1;
    ledger.check("loewy_length_formula", loewy_length == ell, || format!("oracle {loewy_length}, expected |S|+1 = {ell}"));

    let layers = match m.layer_factors(&rad_series) {
        Ok(l) => l,
        Err(err) => {
            ledger.check("layer_decomposition", false, || err.to_string());
            vec![]
        }
    };
    let layers_ss = rad_series.windows(2).all(|w| {
        let (layer, _) = m.subquotient(&w[0], &w[1]);
        layer.action_algebra().radical.is_empty()
    });
    ledger.check("layers_semisimple", layers_ss, || "a radical layer has nonzero radical".into());

    let expected_layers: Vec<Vec<Factor>> = (0..ell)
        .map(|k| {
            let mut fs: Vec<Factor> = predicted
                .iter()
                .filter(|e| rank_h(d, gamma, e) == k)
                .map(|e| {
                    let eta = monomial_char(d, gamma, e);
                    Factor { dim: simple_dim_h(d, eta), weight: char_weight(d, eta) }
                })
                .collect();
            fs.sort();
            fs
        })
        .collect();
    ledger.check("layer_weights", layers == expected_layers, || {
        format!(
            "oracle {}, expected {}",
            layers.iter().map(|l| factor_desc(d, l)).collect::<Vec<_>>().join(" "),
            expected_layers.iter().map(|l| factor_desc(d, l)).collect::<Vec<_>>().join(" ")
        )
    });

    // e_k(η) ∈ {e_k(γ), m_k - e_k(γ) - 2} for weights η of primitive vectors
    let mut bookkeeping = true;
    for e in &predicted {
        let eta = monomial_char(d, gamma, e);
        let se = d.singular_h(eta);
        for &k in &set {
            let ek = s.e[k].expect("singular");
            let ok = matches!(se.e[k], Some(x) if x == ek || x + ek + 2 == d.m(k));
            bookkeeping &= ok;
        }
    }
    ledger.check("primitive_weight_exponents", bookkeeping, || "a primitive weight has an unexpected singular exponent".into());

    let (top, _) = m.subquotient(&m.whole(), &oracle_rad);
    let tp = top.primitive_space();
    let top_weight = if tp.dim() == 1 { top.weight_of(&tp.basis()[0]).and_then(|w| weight_char(d, &w)) } else { None };
    ledger.check("top_primitive_line", top_weight == Some(gamma), || format!("primitive space of the top has dim {}", tp.dim()));

    VermaAnalysis {
        gamma,
        singular: set,
        e: s.e.clone(),
        dim_z: m.dim(),
        dim_l,
        dim_l_formula,
        loewy_length,
        layers,
        top_weight,
        ledger,
    }
}

/// dim of H ⇀ γ, the span of all h ⇀ γ.
pub fn c_gamma_dim(h: &Arc<HAlgebra>, gamma: CharId) -> usize {
    let dual = HStar::new(h.clone());
    let field = h.field();
    let basis = h.basis();
    let to_vec = |f: &Functional| -> Vector { basis.iter().map(|w| f.coeff(w).cloned().unwrap_or_else(|| field.zero())).collect() };
    let from_vec = |v: &Vector| -> Functional { basis.iter().zip(v).map(|(w, c)| (*w, c.clone())).collect() };
    let mut gens: Vec<HElem> = h.group().generators().into_iter().map(|g| h.group_elem(g)).collect();
    gens.extend((0..h.num_generators()).map(|k| h.gen(k)));
    let start = to_vec(&dual.group_character(gamma));
    let mut space = Subspace::new(field, basis.len());
    space.insert(start.clone());
    let mut queue = vec![start];
    while let Some(v) = queue.pop() {
        let f = from_vec(&v);
        for z in &gens {
            let w = to_vec(&dual.left_hit(z, &f));
            if space.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    space.dim()
}

pub fn scalar_action(z: &VermaZ, gen: &Matrix, from: &Exps, to: &Exps) -> FieldElem {
    gen.get(z.index_of(to), z.index_of(from)).clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::fixtures;
    use crate::group::Character;

    #[test]
    fn e1_y_on_x() {
        let d = fixtures::e1();
        let h = HAlgebra::new(&d).unwrap();
        let g = d.group();
        let f = d.field();
        let one = Exps::unit(0);
        let trivial = VermaZ::build(&h, g.trivial_char());
        assert!(scalar_action(&trivial, trivial.y(0), &one, &Exps::ZERO).is_zero());
        let gamma = g.char_id(&Character { exps: vec![1, 0] }).unwrap();
        let z = VermaZ::build(&h, gamma);
        assert_eq!(scalar_action(&z, z.y(0), &one, &Exps::ZERO), f.from_int(-2));
    }
}
