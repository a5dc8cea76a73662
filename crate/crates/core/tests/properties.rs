use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use hoplift_core::cyclo::{q_binomial, q_number, CyclotomicField, Field, FieldElem, FieldExt};
use hoplift_core::datum::fixtures;
use hoplift_core::double::induced::InducedFactory;
use hoplift_core::double::DAlgebra;
use hoplift_core::dual::{Functional, HStar};
use hoplift_core::group::{AbelianGroup, GammaChar};
use hoplift_core::hopf::HAlgebra;
use hoplift_core::linalg::Subspace;
use hoplift_core::modtheory::ModuleRep;

const CONDUCTORS: [u32; 6] = [2, 3, 4, 5, 8, 12];

fn elem(f: &Field, coeffs: &[(i64, i64)]) -> FieldElem {
    f.from_coeffs(coeffs.iter().map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q))).collect())
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-9i64..=9, 1i64..=5), 1..8)
}

proptest! {
    #[test]
    fn field_axioms(ci in 0usize..CONDUCTORS.len(), a in coeffs(), b in coeffs(), c in coeffs()) {
        let f = CyclotomicField::new(CONDUCTORS[ci]).unwrap();
        let (x, y, z) = (elem(&f, &a), elem(&f, &b), elem(&f, &c));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn span_closure_is_monotone_and_idempotent(li in 0usize..9, picks in prop::collection::vec((0usize..9, -3i64..=3), 1..4), extra in (0usize..9, 1i64..=3)) {
        let d = fixtures::e2();
        let dd = DAlgebra::new(Arc::new(HAlgebra::new(&d).unwrap())).unwrap();
        let factory = InducedFactory::new(&dd);
        let lam = d.gamma_chars()[li].clone();
        let m = factory.build(&lam).module;
        let f = d.field();
        let vec_of = |ps: &[(usize, i64)]| {
            let mut v = vec![f.zero(); m.dim()];
            for &(i, c) in ps {
                v[i] += &f.from_int(c);
            }
            v
        };
        let small = m.span_closure(&[vec_of(&picks)]).unwrap();
        let big = m.span_closure(&[vec_of(&picks), vec_of(&[extra])]).unwrap();
        prop_assert!(small.is_subspace_of(&big));
        prop_assert_eq!(m.closure_of(&small), small.clone());
        prop_assert!(m.is_submodule(&big));
    }
}

#[test]
fn roots_of_unity_multiply_by_adding_exponents() {
    for n in CONDUCTORS {
        let f = CyclotomicField::new(n).unwrap();
        for k in 0..n as i64 {
            for l in 0..n as i64 {
                assert_eq!(f.root_of_unity(k) * f.root_of_unity(l), f.root_of_unity(k + l));
            }
        }
    }
}

#[test]
fn gaussian_binomials() {
    let f = CyclotomicField::new(12).unwrap();
    for q in [f.one(), f.from_int(-1), f.root_of_unity(4), f.root_of_unity(3), f.root_of_unity(2)] {
        for n in 1..=12i64 {
            for m in 0..=n {
                let pascal = q_binomial(n - 1, m - 1, &q) + q.pow(m).unwrap() * q_binomial(n - 1, m, &q);
                assert_eq!(q_binomial(n, m, &q), pascal);
            }
            // Π_{i<n} (1 + q^i t) = Σ_m q^{m(m-1)/2} [n, m] t^m
            let mut poly = vec![f.one()];
            for i in 0..n {
                let qi = q.pow(i).unwrap();
                let mut next = vec![f.zero(); poly.len() + 1];
                for (k, c) in poly.iter().enumerate() {
                    next[k] += c;
                    next[k + 1] += &(c * &qi);
                }
                poly = next;
            }
            for (m, c) in poly.iter().enumerate() {
                let m = m as i64;
                assert_eq!(c, &(q.pow(m * (m - 1) / 2).unwrap() * q_binomial(n, m, &q)), "n={n} m={m}");
            }
        }
        if let Ok(order) = q.order_of() {
            if order > 1 {
                assert!(q_number(order as i64, &q).is_zero());
            }
        }
    }
    assert_eq!(q_binomial(7, 3, &f.one()), f.from_int(35));
}

#[test]
fn character_orthogonality_and_double_duality() {
    for orders in [vec![2, 2], vec![3], vec![4], vec![2, 4], vec![2, 2, 2, 2], vec![6]] {
        let g = AbelianGroup::new(orders).unwrap();
        let f = CyclotomicField::new(g.exponent()).unwrap();
        let size = g.size() as i64;
        for x in g.elements() {
            let sum = g.characters().fold(f.zero(), |acc, c| acc + f.root_of_unity(g.pair(c, x) as i64));
            let expected = if x == g.identity() { f.from_int(size) } else { f.zero() };
            assert_eq!(sum, expected);
            // ĝ is a homomorphism and faithful
            for y in g.elements() {
                for c in g.characters() {
                    assert_eq!(g.pair(c, g.mul(x, y)), (g.pair(c, x) + g.pair(c, y)) % g.exponent());
                }
            }
            if x != g.identity() {
                assert!(g.characters().any(|c| g.pair(c, x) != 0));
            }
        }
    }
}

#[test]
fn datum_singularity_invariants() {
    for (_, d) in fixtures::all() {
        let g = d.group();
        if d.is_classical() {
            assert!(d.is_half_clean());
        }
        for i in 0..d.n() {
            assert_eq!(d.eval(d.chi(i), d.a(i)), d.q(i));
            assert_eq!(d.eval(d.chi(i), d.b(i)), d.q(i));
        }
        for gamma in g.characters() {
            let s = d.singular_h(gamma);
            for j in 0..d.n() {
                let q = d.q(j);
                let gab = d.eval(gamma, d.ab(j));
                let solutions: Vec<u32> = (0..d.m(j) - 1).filter(|&e| gab == q.pow(-(e as i64)).unwrap()).collect();
                assert!(solutions.len() <= 1);
                assert_eq!(s.e[j], solutions.first().copied());
                if let Some(e) = s.e[j] {
                    assert!(d.c_function(j, e + 1, gamma).is_zero());
                }
            }
        }
    }
}

#[test]
fn xi_ideal_of_dual_is_nilpotent() {
    for d in [fixtures::e1(), fixtures::e2()] {
        let h = Arc::new(HAlgebra::new(&d).unwrap());
        let dual = HStar::new(h.clone());
        let f = d.field();
        let words = h.basis().to_vec();
        let dim = words.len();
        let to_vec = |x: &Functional| words.iter().map(|w| x.coeff(w).cloned().unwrap_or_else(|| f.zero())).collect::<Vec<_>>();
        let from_vec = |v: &[FieldElem]| -> Functional { words.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(w, c)| (*w, c.clone())).collect() };
        let basis: Vec<Functional> = words.iter().map(|w| Functional::monomial(*w, f.one())).collect();
        let mut ideal = Subspace::new(f, dim);
        for k in 0..h.num_generators() {
            let xi = dual.ordered_xi(k);
            for u in &basis {
                let left = dual.convolve(u, &xi);
                for v in &basis {
                    ideal.insert(to_vec(&dual.convolve(&left, v)));
                }
            }
        }
        assert_eq!(ideal.dim(), dim - d.group().size());
        let jbasis: Vec<Functional> = ideal.basis().iter().map(|v| from_vec(v)).collect();
        let mut power = ideal.clone();
        let mut steps = 1;
        while power.dim() > 0 {
            let mut next = Subspace::new(f, dim);
            for p in power.basis() {
                let p = from_vec(p);
                for j in &jbasis {
                    next.insert(to_vec(&dual.convolve(&p, j)));
                }
            }
            assert!(next.dim() < power.dim());
            power = next;
            steps += 1;
        }
        assert!(steps <= h.num_generators() * d.m(0) as usize + 1);
    }
}

#[test]
fn oracle_is_independent_of_generator_order() {
    let d = fixtures::e2();
    let dd = DAlgebra::new(Arc::new(HAlgebra::new(&d).unwrap())).unwrap();
    let factory = InducedFactory::new(&dd);
    let g = d.group();
    let lam = GammaChar { chi: g.trivial_char(), h: g.identity() };
    let m = factory.build(&lam).module;
    let alg = m.action_algebra();
    let mut gens = m.gens().to_vec();
    gens.reverse();
    let k = gens.len();
    let reversed = ModuleRep::new(d.field(), m.dim(), gens, vec![k - 1, k - 2], vec![]).unwrap();
    let alg2 = reversed.action_algebra();
    assert_eq!(m.radical_series(&alg), reversed.radical_series(&alg2));
    assert_eq!(m.socle_series(&alg), reversed.socle_series(&alg2));
}
