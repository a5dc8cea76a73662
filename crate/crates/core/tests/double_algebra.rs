use std::sync::Arc;

use hoplift_core::cyclo::{q_number, FieldExt};
use hoplift_core::datum::{fixtures, Datum};
use hoplift_core::double::oracle::DoubleOracle;
use hoplift_core::double::{DAlgebra, DElem, DLetter, DWord};
use hoplift_core::hopf::HAlgebra;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn setup(d: &Datum) -> (DAlgebra, DoubleOracle) {
    let h = Arc::new(HAlgebra::new(d).unwrap());
    (DAlgebra::new(h.clone()).unwrap(), DoubleOracle::new(h))
}

fn generators(d: &Datum) -> Vec<DLetter> {
    let mut out = vec![];
    for k in 0..d.n() as u8 {
        out.extend([DLetter::X(k), DLetter::Eta(k), DLetter::Y(k), DLetter::Xi(k)]);
    }
    let g = d.group();
    out.extend(g.generators().into_iter().map(DLetter::G));
    out.extend(g.char_generators().into_iter().map(DLetter::Chi));
    out
}

fn random_word(dd: &DAlgebra, basis: &[DWord], rng: &mut ChaCha8Rng) -> DElem {
    DElem::monomial(basis[rng.gen_range(0..basis.len())], dd.field().one())
}

fn random_elem(dd: &DAlgebra, basis: &[DWord], rng: &mut ChaCha8Rng) -> DElem {
    let f = dd.field();
    let mut e = DElem::zero();
    for _ in 0..2 {
        let c = f.from_int(rng.gen_range(-2..=2)) + f.root_of_unity(rng.gen_range(0..12));
        e.add_term(basis[rng.gen_range(0..basis.len())], c);
    }
    e
}

#[test]
fn generator_products_match_doi_takeuchi_model() {
    for d in [fixtures::e1(), fixtures::e2()] {
        let (dd, oracle) = setup(&d);
        let gens = generators(&d);
        for &l in &gens {
            for &r in &gens {
                let (u, v) = (dd.letter(l), dd.letter(r));
                let uv = dd.multiply(&u, &v);
                assert_eq!(oracle.d_multiply(&dd, &u, &v).unwrap(), uv, "{l:?} {r:?}");
            }
        }
    }
}

#[test]
fn random_products_match_doi_takeuchi_model() {
    for d in [fixtures::e1(), fixtures::e2()] {
        let (dd, oracle) = setup(&d);
        let basis = dd.basis();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let (u, v) = (random_elem(&dd, &basis, &mut rng), random_elem(&dd, &basis, &mut rng));
            assert_eq!(oracle.d_multiply(&dd, &u, &v).unwrap(), dd.multiply(&u, &v));
        }
    }
}

#[test]
fn generator_triples_associative() {
    for d in [fixtures::e1(), fixtures::e2()] {
        let (dd, _) = setup(&d);
        let gens = generators(&d);
        for &a in &gens {
            for &b in &gens {
                let ab = dd.from_letters(&[a, b]);
                for &c in &gens {
                    let bc = dd.from_letters(&[b, c]);
                    let left = dd.multiply(&ab, &dd.letter(c));
                    assert_eq!(left, dd.multiply(&dd.letter(a), &bc), "{a:?} {b:?} {c:?}");
                }
            }
        }
    }
}

#[test]
fn random_word_triples_associative() {
    for d in [fixtures::e1(), fixtures::e2()] {
        let (dd, _) = setup(&d);
        let basis = dd.basis();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..2000 {
            let (u, v, w) =
                (random_word(&dd, &basis, &mut rng), random_word(&dd, &basis, &mut rng), random_word(&dd, &basis, &mut rng));
            assert_eq!(dd.multiply(&dd.multiply(&u, &v), &w), dd.multiply(&u, &dd.multiply(&v, &w)));
        }
    }
}

#[test]
fn basis_has_square_dimension() {
    for d in [fixtures::e1(), fixtures::e2()] {
        let (dd, _) = setup(&d);
        assert_eq!(dd.basis().len(), dd.dim());
        assert_eq!(dd.dim(), dd.h().dim() * dd.h().dim());
    }
}

#[test]
fn h_embeds_as_subalgebra() {
    let d = fixtures::e2();
    let (dd, _) = setup(&d);
    let h = dd.h();
    let one = h.field().one();
    for &u in h.basis() {
        for &v in h.basis() {
            let uv = h.mul_words(u, v);
            let lhs = dd.from_h(&uv);
            let rhs = dd.multiply(
                &dd.from_h(&hoplift_core::hopf::HElem::monomial(u, one.clone())),
                &dd.from_h(&hoplift_core::hopf::HElem::monomial(v, one.clone())),
            );
            assert_eq!(lhs, rhs);
        }
    }
}

fn mono(dd: &DAlgebra, w: DWord) -> DElem {
    DElem::monomial(w, dd.field().one())
}

fn x_power(dd: &DAlgebra, k: usize, s: u32) -> DElem {
    let n = dd.n();
    let mut e = vec![0; n];
    e[k] = s;
    let g = dd.datum().group();
    mono(dd, dd.word(&e, &vec![0; n], &vec![0; n], &vec![0; n], g.identity(), g.trivial_char()))
}

/// Word x_k^i η_k^j ξ_k^l g γ.
fn kword(dd: &DAlgebra, k: usize, i: u32, j: u32, l: u32, g: hoplift_core::group::ElemId, c: hoplift_core::group::CharId) -> DWord {
    let n = dd.n();
    let at = |v: u32| {
        let mut e = vec![0; n];
        e[k] = v;
        e
    };
    dd.word(&at(i), &at(j), &vec![0; n], &at(l), g, c)
}

#[test]
fn eta_passes_x_powers_with_higher_eta_terms() {
    for d in [fixtures::e1(), fixtures::e2(), fixtures::e3(), fixtures::e4()] {
        let dd = DAlgebra::new(Arc::new(HAlgebra::new(&d).unwrap())).unwrap();
        let g = d.group();
        for k in 0..d.n() {
            let q = d.q(k);
            for s in 1..d.m(k) {
                let p = dd.multiply(&dd.letter(DLetter::Eta(k as u8)), &x_power(&dd, k, s));
                let allowed: Vec<DWord> = (0..=s).map(|i| kword(&dd, k, s - i, i + 1, 0, g.identity(), g.trivial_char())).collect();
                for (w, _) in p.iter() {
                    assert!(allowed.contains(w), "η x^{s}: {w:?}");
                }
                assert_eq!(p.coeff(&allowed[0]).cloned().unwrap(), q.pow(-(s as i64)).unwrap());
            }
        }
    }
}

#[test]
fn characters_pass_x_powers_with_eta_terms() {
    for d in [fixtures::e1(), fixtures::e2(), fixtures::e3()] {
        let dd = DAlgebra::new(Arc::new(HAlgebra::new(&d).unwrap())).unwrap();
        let g = d.group();
        for c in g.characters() {
            for s in 1..d.m(0) {
                let p = dd.multiply(&dd.letter(DLetter::Chi(c)), &x_power(&dd, 0, s));
                let allowed: Vec<DWord> = (0..=s).map(|i| kword(&dd, 0, s - i, i, 0, g.identity(), c)).collect();
                for (w, _) in p.iter() {
                    assert!(allowed.contains(w), "γ x^{s}: {w:?}");
                }
                let lead = d.eval(c, g.pow(d.a(0), -(s as i64)));
                assert_eq!(p.coeff(&allowed[0]).cloned().unwrap(), lead);
            }
        }
    }
}

#[test]
fn xi_passes_x_powers_with_group_terms() {
    for d in [fixtures::e1(), fixtures::e2(), fixtures::e3()] {
        let dd = DAlgebra::new(Arc::new(HAlgebra::new(&d).unwrap())).unwrap();
        let g = d.group();
        let (q, a, chi) = (d.q(0), d.a(0), d.chi(0));
        let (e, one) = (g.identity(), g.trivial_char());
        for s in 1..d.m(0) {
            let p = dd.multiply(&dd.letter(DLetter::Xi(0)), &x_power(&dd, 0, s));
            let qs = q_number(s as i64, &q);
            let mut allowed = vec![kword(&dd, 0, s, 0, 1, e, one), kword(&dd, 0, s - 1, 0, 0, a, one), kword(&dd, 0, s - 1, 0, 0, e, chi)];
            allowed.extend((1..s).map(|i| kword(&dd, 0, s - 1 - i, i, 0, e, chi)));
            for (w, _) in p.iter() {
                assert!(allowed.contains(w), "ξ x^{s}: {w:?}");
            }
            assert!(p.coeff(&allowed[0]).unwrap().is_one());
            assert_eq!(p.coeff(&allowed[1]).cloned().unwrap_or_else(|| d.field().zero()), qs.clone());
            let expected = -(qs * q.pow(-(s as i64 - 1)).unwrap());
            assert_eq!(p.coeff(&allowed[2]).cloned().unwrap_or_else(|| d.field().zero()), expected);
        }
    }
}

#[test]
fn y_passes_eta_powers_exactly() {
    for d in [fixtures::e1(), fixtures::e2(), fixtures::e3(), fixtures::e4()] {
        let dd = DAlgebra::new(Arc::new(HAlgebra::new(&d).unwrap())).unwrap();
        let g = d.group();
        let n = d.n();
        for k in 0..n {
            let q = d.q(k);
            let at = |v: u32| {
                let mut e = vec![0; n];
                e[k] = v;
                e
            };
            let z = vec![0; n];
            for t in 1..d.m(k) {
                let lhs = dd.multiply(&dd.letter(DLetter::Y(k as u8)), &mono(&dd, dd.word(&z, &at(t), &z, &z, g.identity(), g.trivial_char())));
                let qt = q.pow(t as i64).unwrap();
                let tq = q_number(t as i64, &q);
                let mut rhs = DElem::zero();
                rhs.add_term(dd.word(&z, &at(t), &at(1), &z, g.identity(), g.trivial_char()), qt.clone());
                // the χb term carries q^{t-1}, matching the single-step rule at t = 1
                rhs.add_term(dd.word(&z, &at(t - 1), &z, &z, d.b(k), d.chi(k)), -(tq.clone() * q.pow(t as i64 - 1).unwrap()));
                rhs.add_term(dd.word(&z, &at(t - 1), &z, &z, g.identity(), g.trivial_char()), tq);
                assert_eq!(lhs, rhs, "y η^{t}");
            }
        }
    }
}

#[test]
fn x_derivation_on_eta_powers_times_characters() {
    for d in [fixtures::e1(), fixtures::e2(), fixtures::e3()] {
        let dd = DAlgebra::new(Arc::new(HAlgebra::new(&d).unwrap())).unwrap();
        let g = d.group();
        let f = d.field();
        let (q, a, b) = (d.q(0), d.a(0), d.b(0));
        for c in g.characters() {
            let ga_inv = d.eval(c, g.inv(a));
            let gab = d.eval(c, g.mul(a, b));
            for i in 0..d.m(0) {
                let w = mono(&dd, kword(&dd, 0, 0, i, 0, g.identity(), c));
                let left = dd.multiply(&w, &dd.letter(DLetter::X(0)));
                // x (a^{-1} ⇀ η^i γ) = q^{-i} γ(a^{-1}) x η^i γ
                let twisted = dd.multiply(&dd.letter(DLetter::X(0)), &w).scaled(&(q.pow(-(i as i64)).unwrap() * &ga_inv));
                let delta = left.sub(&twisted);
                let coeff = q.pow(-(i as i64 - 1)).unwrap() * &ga_inv * (q.pow(i as i64).unwrap() * &gab - f.one());
                let mut expected = DElem::zero();
                if i + 1 < d.m(0) {
                    expected.add_term(kword(&dd, 0, 0, i + 1, 0, g.identity(), c), coeff);
                }
                assert_eq!(delta, expected, "γ={c:?} i={i}");
            }
        }
    }
}

#[test]
fn unit_acts_as_identity() {
    for d in [fixtures::e1(), fixtures::e2()] {
        let dd = DAlgebra::new(Arc::new(HAlgebra::new(&d).unwrap())).unwrap();
        let one = dd.one();
        for w in dd.basis() {
            let u = mono(&dd, w);
            assert_eq!(dd.multiply(&one, &u), u);
            assert_eq!(dd.multiply(&u, &one), u);
        }
    }
}
