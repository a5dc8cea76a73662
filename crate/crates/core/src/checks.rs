//! Sweeps over algebra structure: associativity, agreement with the
//! Doi–Takeuchi model, and the H*/H pairing. Each returns the number of
//! identities checked or a description of the first failure.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclo::FieldExt;
use crate::double::oracle::DoubleOracle;
use crate::double::{DAlgebra, DElem, DLetter, DWord};
use crate::dual::HStar;
use crate::hopf::{HAlgebra, HElem, HWord};

pub type Sweep = Result<usize, String>;

fn h_mono(h: &HAlgebra, w: HWord) -> HElem {
    HElem::monomial(w, h.field().one())
}

fn h_random(h: &HAlgebra, rng: &mut ChaCha8Rng) -> HElem {
    let f = h.field();
    let mut e = HElem::zero();
    for _ in 0..3 {
        let w = h.basis()[rng.gen_range(0..h.dim())];
        e.add_term(w, f.from_int(rng.gen_range(-3..=3)) + f.root_of_unity(rng.gen_range(0..12)));
    }
    e
}

/// (uv)w = u(vw) on every triple of basis words.
pub fn h_associative_on_basis(h: &HAlgebra) -> Sweep {
    let b = h.basis();
    for &u in b {
        for &v in b {
            let uv = h.mul_words(u, v);
            for &w in b {
                if h.multiply(&uv, &h_mono(h, w)) != h.multiply(&h_mono(h, u), &h.mul_words(v, w)) {
                    return Err(format!("({u:?} {v:?}) {w:?}"));
                }
            }
        }
    }
    Ok(b.len().pow(3))
}

pub fn h_associative_random(h: &HAlgebra, count: usize, seed: u64) -> Sweep {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let (u, v, w) = (h_random(h, &mut rng), h_random(h, &mut rng), h_random(h, &mut rng));
        if h.multiply(&h.multiply(&u, &v), &w) != h.multiply(&u, &h.multiply(&v, &w)) {
            return Err(format!("random triple {i}"));
        }
    }
    Ok(count)
}

/// ⟨φ_{i,g}, x^j h⟩ = δ for the ordered monomial basis and its dual basis.
pub fn dual_pairing_is_identity(h: &Arc<HAlgebra>) -> Sweep {
    let dual = HStar::new(h.clone());
    let f = h.field();
    let labels = dual.ordered_labels();
    let elems: Vec<HElem> = labels.iter().map(|(e, g)| h.ordered_monomial(e, *g)).collect();
    for (c, g) in &labels {
        let phi = dual.dual_basis_element(c, *g);
        for ((i, k), u) in labels.iter().zip(&elems) {
            let expected = if i == c && k == g { f.one() } else { f.zero() };
            if dual.pair(&phi, u) != expected {
                return Err(format!("pairing of {c:?},{g:?} with {i:?},{k:?}"));
            }
        }
    }
    Ok(labels.len() * labels.len())
}

/// The commutation relations of H* between characters, ξ and η.
pub fn dual_relations_hold(h: &Arc<HAlgebra>) -> Sweep {
    let d = h.datum();
    let dual = HStar::new(h.clone());
    let g = d.group();
    let n = d.n();
    let mut count = 0;
    let mut expect = |ok: bool, what: String| -> Result<(), String> {
        count += 1;
        if ok {
            Ok(())
        } else {
            Err(what)
        }
    };
    for gamma in g.characters() {
        let gt = dual.group_character(gamma);
        for k in 0..n {
            let (xi, eta) = (dual.xi(k), dual.eta(k));
            expect(dual.convolve(&gt, &xi) == dual.convolve(&xi, &gt).scaled(&d.eval(gamma, d.a(k))), format!("γ ξ_{k}"))?;
            expect(dual.convolve(&gt, &eta) == dual.convolve(&eta, &gt).scaled(&d.eval(gamma, d.b(k))), format!("γ η_{k}"))?;
        }
    }
    for s in 0..n {
        for t in 0..n {
            let (xs, xt, es, et) = (dual.xi(s), dual.xi(t), dual.eta(s), dual.eta(t));
            if s != t {
                expect(dual.convolve(&xs, &xt) == dual.convolve(&xt, &xs).scaled(&d.eval(d.chi(s), d.a(t))), format!("ξ_{s} ξ_{t}"))?;
                expect(dual.convolve(&es, &et) == dual.convolve(&et, &es).scaled(&d.eval(d.chi(s), d.b(t))), format!("η_{s} η_{t}"))?;
            }
            expect(dual.convolve(&xs, &et) == dual.convolve(&et, &xs), format!("ξ_{s} η_{t}"))?;
        }
        let m = d.m(s);
        expect(dual.power(&dual.xi(s), m).is_zero(), format!("ξ_{s}^m"))?;
        expect(dual.power(&dual.eta(s), m).is_zero(), format!("η_{s}^m"))?;
    }
    Ok(count)
}

/// x_k, η_k, y_k, ξ_k, then generators of G and of Ĝ.
pub fn d_generators(dd: &DAlgebra) -> Vec<DLetter> {
    let g = dd.datum().group();
    let mut out: Vec<DLetter> = (0..dd.n() as u8).flat_map(|k| [DLetter::X(k), DLetter::Eta(k), DLetter::Y(k), DLetter::Xi(k)]).collect();
    out.extend(g.generators().into_iter().map(DLetter::G));
    out.extend(g.char_generators().into_iter().map(DLetter::Chi));
    out
}

fn d_random(dd: &DAlgebra, basis: &[DWord], rng: &mut ChaCha8Rng) -> DElem {
    let f = dd.field();
    let mut e = DElem::zero();
    for _ in 0..2 {
        let c = f.from_int(rng.gen_range(-2..=2)) + f.root_of_unity(rng.gen_range(0..12));
        e.add_term(basis[rng.gen_range(0..basis.len())], c);
    }
    e
}

pub fn d_matches_model_on_generators(dd: &DAlgebra, oracle: &DoubleOracle) -> Sweep {
    let gens = d_generators(dd);
    for &l in &gens {
        for &r in &gens {
            let (u, v) = (dd.letter(l), dd.letter(r));
            match oracle.d_multiply(dd, &u, &v) {
                Ok(p) if p == dd.multiply(&u, &v) => {}
                Ok(_) => return Err(format!("{l:?}·{r:?}")),
                Err(e) => return Err(format!("{l:?}·{r:?}: {e}")),
            }
        }
    }
    Ok(gens.len() * gens.len())
}

pub fn d_matches_model_random(dd: &DAlgebra, oracle: &DoubleOracle, count: usize, seed: u64) -> Sweep {
    let basis = dd.basis();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let (u, v) = (d_random(dd, &basis, &mut rng), d_random(dd, &basis, &mut rng));
        match oracle.d_multiply(dd, &u, &v) {
            Ok(p) if p == dd.multiply(&u, &v) => {}
            _ => return Err(format!("random pair {i}")),
        }
    }
    Ok(count)
}

pub fn d_associative_on_generators(dd: &DAlgebra) -> Sweep {
    let gens = d_generators(dd);
    for &a in &gens {
        for &b in &gens {
            let ab = dd.from_letters(&[a, b]);
            for &c in &gens {
                if dd.multiply(&ab, &dd.letter(c)) != dd.multiply(&dd.letter(a), &dd.from_letters(&[b, c])) {
                    return Err(format!("{a:?} {b:?} {c:?}"));
                }
            }
        }
    }
    Ok(gens.len().pow(3))
}

pub fn d_associative_random(dd: &DAlgebra, count: usize, seed: u64) -> Sweep {
    let basis = dd.basis();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = dd.field().one();
    for i in 0..count {
        let mut pick = || DElem::monomial(basis[rng.gen_range(0..basis.len())], one.clone());
        let (u, v, w) = (pick(), pick(), pick());
        if dd.multiply(&dd.multiply(&u, &v), &w) != dd.multiply(&u, &dd.multiply(&v, &w)) {
            return Err(format!("random word triple {i}"));
        }
    }
    Ok(count)
}
