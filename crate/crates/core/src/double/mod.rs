//! The Drinfeld double D(H) of a linked datum.
//!
//! Canonical words are x^i η^j y^k ξ^l g γ with letters ordered
//! x < η < y < ξ < G < Ĝ. Out-of-order pairs are rewritten with the
//! commutation rules between H, the functionals ξ_k, η_k, γ of H*, and the
//! group; products are normalized by the shared rewriting engine.

use std::sync::Arc;

use crate::cyclo::{Field, FieldElem, FieldExt};
use crate::datum::Datum;
use crate::group::{AbelianGroup, CharId, ElemId};
use crate::hopf::{HAlgebra, HElem, HLetter, HopfError};
use crate::lincomb::{Exps, LinComb};
use crate::rewrite::{Normalizer, Presentation, RewriteDivergence, Step};

pub mod induced;
pub mod lattice;
pub mod oracle;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DWord {
    pub x: Exps,
    pub eta: Exps,
    pub y: Exps,
    pub xi: Exps,
    pub g: ElemId,
    pub chi: CharId,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum DLetter {
    X(u8),
    Eta(u8),
    Y(u8),
    Xi(u8),
    G(ElemId),
    Chi(CharId),
}

pub type DElem = LinComb<DWord>;

pub struct DRules {
    datum: Datum,
    group: AbelianGroup,
    n: usize,
    m: Vec<u32>,
}

impl DRules {
    fn f(&self) -> &Field {
        self.datum.field()
    }

    fn ev(&self, chi: CharId, g: ElemId) -> FieldElem {
        self.datum.eval(chi, g)
    }

    fn qm(&self, i: usize, j: usize) -> FieldElem {
        self.datum.q_pair(i, j)
    }
}

impl Presentation for DRules {
    type Word = DWord;
    type Letter = DLetter;

    fn field(&self) -> &Field {
        self.datum.field()
    }

    fn one(&self) -> DWord {
        DWord {
            x: Exps::ZERO,
            eta: Exps::ZERO,
            y: Exps::ZERO,
            xi: Exps::ZERO,
            g: self.group.identity(),
            chi: self.group.trivial_char(),
        }
    }

    fn pop_last(&self, w: DWord) -> Option<(DWord, DLetter)> {
        if w.chi != self.group.trivial_char() {
            return Some((DWord { chi: self.group.trivial_char(), ..w }, DLetter::Chi(w.chi)));
        }
        if w.g != self.group.identity() {
            return Some((DWord { g: self.group.identity(), ..w }, DLetter::G(w.g)));
        }
        if let Some(s) = w.xi.last_nonzero() {
            return Some((DWord { xi: w.xi.with(s, w.xi.get(s) - 1), ..w }, DLetter::Xi(s as u8)));
        }
        if let Some(s) = w.y.last_nonzero() {
            return Some((DWord { y: w.y.with(s, w.y.get(s) - 1), ..w }, DLetter::Y(s as u8)));
        }
        if let Some(s) = w.eta.last_nonzero() {
            return Some((DWord { eta: w.eta.with(s, w.eta.get(s) - 1), ..w }, DLetter::Eta(s as u8)));
        }
        let s = w.x.last_nonzero()?;
        Some((DWord { x: w.x.with(s, w.x.get(s) - 1), ..w }, DLetter::X(s as u8)))
    }

    fn rank(&self, l: DLetter) -> usize {
        let n = self.n;
        match l {
            DLetter::X(k) => k as usize,
            DLetter::Eta(k) => n + k as usize,
            DLetter::Y(k) => 2 * n + k as usize,
            DLetter::Xi(k) => 3 * n + k as usize,
            DLetter::G(_) => 4 * n,
            DLetter::Chi(_) => 4 * n + 1,
        }
    }

    fn append(&self, w: DWord, l: DLetter) -> Vec<Step<DWord, DLetter>> {
        let one = self.f().one();
        let bump = |e: Exps, k: u8| -> Option<Exps> {
            let k = k as usize;
            let v = e.get(k) + 1;
            (v < self.m[k]).then(|| e.with(k, v))
        };
        let word = match l {
            DLetter::X(k) => bump(w.x, k).map(|x| DWord { x, ..w }),
            DLetter::Eta(k) => bump(w.eta, k).map(|eta| DWord { eta, ..w }),
            DLetter::Y(k) => bump(w.y, k).map(|y| DWord { y, ..w }),
            DLetter::Xi(k) => bump(w.xi, k).map(|xi| DWord { xi, ..w }),
            DLetter::G(h) => Some(DWord { g: self.group.mul(w.g, h), ..w }),
            DLetter::Chi(c) => Some(DWord { chi: self.group.char_mul(w.chi, c), ..w }),
        };
        word.map(|word| vec![Step { coeff: one, word, tail: vec![] }]).unwrap_or_default()
    }

    fn swap(&self, left: DLetter, right: DLetter) -> Vec<(FieldElem, Vec<DLetter>)> {
        use DLetter::*;
        let f = self.f();
        let d = &self.datum;
        let g = &self.group;
        let one = f.one();
        let inv = |x: FieldElem| x.inv().expect("root of unity");
        match (left, right) {
            (X(t), X(k)) => vec![(self.qm(t as usize, k as usize), vec![X(k), X(t)])],
            (Eta(t), Eta(k)) => {
                vec![(self.ev(d.chi(t as usize), d.b(k as usize)), vec![Eta(k), Eta(t)])]
            }
            (Y(t), Y(k)) => vec![(self.qm(t as usize, k as usize), vec![Y(k), Y(t)])],
            (Xi(t), Xi(k)) => {
                vec![(self.ev(d.chi(t as usize), d.a(k as usize)), vec![Xi(k), Xi(t)])]
            }
            (Eta(l), X(k)) => {
                // η_l x_k = q_kl^{-1} x_k η_l + δ_kl (q_k - 1) η_k^2
                let mut out = vec![(inv(self.qm(k as usize, l as usize)), vec![X(k), Eta(l)])];
                if l == k {
                    out.push((d.q(k as usize) - &one, vec![Eta(k), Eta(k)]));
                }
                out
            }
            (Y(l), X(k)) => {
                // y_l x_k = q_kl x_k y_l - δ_kl q_k (a_k b_k - 1)
                let mut out = vec![(self.qm(k as usize, l as usize), vec![X(k), Y(l)])];
                if l == k {
                    let q = d.q(k as usize);
                    out.push((-&q, vec![G(d.ab(k as usize))]));
                    out.push((q, vec![]));
                }
                out
            }
            (Y(l), Eta(k)) => {
                // from η_k y_l = q_kl^{-1} y_l η_k + δ_kl q_k^{-1} (χ_k b_k - 1)
                let qkl = self.qm(k as usize, l as usize);
                let mut out = vec![(qkl.clone(), vec![Eta(k), Y(l)])];
                if l == k {
                    let c = -(&qkl * &inv(d.q(k as usize)));
                    out.push((c.clone(), vec![G(d.b(k as usize)), Chi(d.chi(k as usize))]));
                    out.push((-c, vec![]));
                }
                out
            }
            (Xi(l), X(k)) => {
                // ξ_l x_k = x_k ξ_l + δ_kl (a_l - χ_k)
                let mut out = vec![(one.clone(), vec![X(k), Xi(l)])];
                if l == k {
                    out.push((one.clone(), vec![G(d.a(l as usize))]));
                    out.push((-&one, vec![Chi(d.chi(k as usize))]));
                }
                out
            }
            (Xi(l), Eta(k)) => vec![(one, vec![Eta(k), Xi(l)])],
            (Xi(l), Y(k)) => {
                // ξ_l y_k = y_k ξ_l - δ_kl q_k^{-1} (q_k - 1) ξ_k^2 b_k
                let mut out = vec![(one.clone(), vec![Y(k), Xi(l)])];
                if l == k {
                    let q = d.q(k as usize);
                    let c = -(inv(q.clone()) * (q - &one));
                    out.push((c, vec![Xi(k), Xi(k), G(d.b(k as usize))]));
                }
                out
            }
            (G(h), X(k)) => vec![(self.ev(d.chi(k as usize), h), vec![X(k), G(h)])],
            (G(h), Eta(k)) => vec![(self.ev(d.chi(k as usize), h), vec![Eta(k), G(h)])],
            (G(h), Y(k)) => vec![(self.ev(g.char_inv(d.chi(k as usize)), h), vec![Y(k), G(h)])],
            (G(h), Xi(k)) => vec![(self.ev(g.char_inv(d.chi(k as usize)), h), vec![Xi(k), G(h)])],
            (Chi(c), X(k)) => {
                // γ x_k = γ(a_k^{-1}) x_k γ + γ(a_k^{-1}) q_k (γ(a_k b_k) - 1) η_k γ
                let k_ = k as usize;
                let ga = self.ev(c, g.inv(d.a(k_)));
                let extra = &ga * &d.q(k_) * (self.ev(c, d.ab(k_)) - &one);
                let mut out = vec![(ga, vec![X(k), Chi(c)])];
                if !extra.is_zero() {
                    out.push((extra, vec![Eta(k), Chi(c)]));
                }
                out
            }
            (Chi(c), Eta(k)) => vec![(self.ev(c, d.b(k as usize)), vec![Eta(k), Chi(c)])],
            (Chi(c), Y(k)) => {
                // γ y_k = γ(b_k^{-1}) y_k γ - γ(b_k^{-1}) (γ(a_k b_k) - 1) ξ_k b_k γ
                let k_ = k as usize;
                let gb = self.ev(c, g.inv(d.b(k_)));
                let extra = -(&gb * (self.ev(c, d.ab(k_)) - &one));
                let mut out = vec![(gb, vec![Y(k), Chi(c)])];
                if !extra.is_zero() {
                    out.push((extra, vec![Xi(k), G(d.b(k_)), Chi(c)]));
                }
                out
            }
            (Chi(c), Xi(k)) => vec![(self.ev(c, d.a(k as usize)), vec![Xi(k), Chi(c)])],
            (Chi(c), G(h)) => vec![(one, vec![G(h), Chi(c)])],
            (l, r) => unreachable!("pair {l:?} {r:?} is already ordered"),
        }
    }

    fn letters(&self, w: DWord) -> Vec<DLetter> {
        let mut out = vec![];
        let n = self.n;
        let rep = |out: &mut Vec<DLetter>, e: Exps, mk: fn(u8) -> DLetter| {
            for k in 0..n {
                out.extend(std::iter::repeat(mk(k as u8)).take(e.get(k) as usize));
            }
        };
        rep(&mut out, w.x, DLetter::X);
        rep(&mut out, w.eta, DLetter::Eta);
        rep(&mut out, w.y, DLetter::Y);
        rep(&mut out, w.xi, DLetter::Xi);
        if w.g != self.group.identity() {
            out.push(DLetter::G(w.g));
        }
        if w.chi != self.group.trivial_char() {
            out.push(DLetter::Chi(w.chi));
        }
        out
    }
}

pub struct DAlgebra {
    h: Arc<HAlgebra>,
    engine: Normalizer<DRules>,
}

impl DAlgebra {
    pub fn new(h: Arc<HAlgebra>) -> Result<Self, HopfError> {
        let datum = h.datum().clone();
        if !datum.is_linked() {
            return Err(HopfError::InvalidDatum("the double is built from linked data; normalize first".into()));
        }
        let rules = DRules { group: datum.group().clone(), n: datum.n(), m: datum.ms(), datum };
        Ok(DAlgebra { h, engine: Normalizer::new(rules) })
    }

    pub fn h(&self) -> &Arc<HAlgebra> {
        &self.h
    }

    pub fn datum(&self) -> &Datum {
        self.h.datum()
    }

    pub fn field(&self) -> &Field {
        self.h.field()
    }

    pub fn n(&self) -> usize {
        self.datum().n()
    }

    pub fn one_word(&self) -> DWord {
        self.engine.presentation().one()
    }

    pub fn one(&self) -> DElem {
        DElem::monomial(self.one_word(), self.field().one())
    }

    pub fn letters(&self, w: DWord) -> Vec<DLetter> {
        self.engine.presentation().letters(w)
    }

    pub fn pop_last(&self, w: DWord) -> Option<(DWord, DLetter)> {
        self.engine.presentation().pop_last(w)
    }

    /// Number of x and y letters in a word.
    pub fn h_degree(&self, w: &DWord) -> u32 {
        w.x.total() + w.y.total()
    }

    /// All canonical words, in word order.
    pub fn basis(&self) -> Vec<DWord> {
        let m = self.datum().ms();
        let g = self.datum().group();
        let boxes = Exps::box_iter(&m);
        let mut out = vec![];
        for &x in &boxes {
            for &eta in &boxes {
                for &y in &boxes {
                    for &xi in &boxes {
                        for gg in g.elements() {
                            for chi in g.characters() {
                                out.push(DWord { x, eta, y, xi, g: gg, chi });
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn dim(&self) -> usize {
        self.h.dim() * self.h.dim()
    }

    pub fn letter(&self, l: DLetter) -> DElem {
        self.from_letters(&[l])
    }

    pub fn from_letters(&self, letters: &[DLetter]) -> DElem {
        self.try_from_letters(letters).expect("rewriting in D(H) terminates")
    }

    pub fn try_from_letters(&self, letters: &[DLetter]) -> Result<DElem, RewriteDivergence> {
        self.engine.word_of_letters(letters)
    }

    pub fn multiply(&self, u: &DElem, v: &DElem) -> DElem {
        self.try_multiply(u, v).expect("rewriting in D(H) terminates")
    }

    pub fn try_multiply(&self, u: &DElem, v: &DElem) -> Result<DElem, RewriteDivergence> {
        self.engine.multiply(u, v)
    }

    pub fn mul_words(&self, u: DWord, v: DWord) -> DElem {
        let one = self.field().one();
        self.multiply(&DElem::monomial(u, one.clone()), &DElem::monomial(v, one))
    }

    /// The image of an element of H under the embedding H → D(H).
    pub fn from_h(&self, u: &HElem) -> DElem {
        let n = self.n();
        let mut out = DElem::zero();
        for (w, c) in u.iter() {
            let letters: Vec<DLetter> = self
                .h
                .letters(*w)
                .into_iter()
                .map(|l| match l {
                    HLetter::V(k) if (k as usize) < n => DLetter::X(k),
                    HLetter::V(k) => DLetter::Y(k - n as u8),
                    HLetter::G(g) => DLetter::G(g),
                })
                .collect();
            out.add_scaled(&self.from_letters(&letters), c);
        }
        out
    }

    pub fn word(&self, x: &[u32], eta: &[u32], y: &[u32], xi: &[u32], g: ElemId, chi: CharId) -> DWord {
        DWord {
            x: Exps::from_slice(x),
            eta: Exps::from_slice(eta),
            y: Exps::from_slice(y),
            xi: Exps::from_slice(xi),
            g,
            chi,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::fixtures;

    #[test]
    fn e1_xi_x() {
        let d = fixtures::e1();
        let dd = DAlgebra::new(Arc::new(HAlgebra::new(&d).unwrap())).unwrap();
        let f = d.field();
        let r = dd.from_letters(&[DLetter::Xi(0), DLetter::X(0)]);
        let g = d.group();
        let mut expected = DElem::zero();
        expected.add_term(dd.word(&[1], &[0], &[0], &[1], g.identity(), g.trivial_char()), f.one());
        expected.add_term(dd.word(&[0], &[0], &[0], &[0], d.a(0), g.trivial_char()), f.one());
        expected.add_term(dd.word(&[0], &[0], &[0], &[0], g.identity(), d.chi(0)), -f.one());
        assert_eq!(r, expected);
    }

    #[test]
    fn e1_gamma_x() {
        // γ(a) = -1, γ(b) = 1
        let d = fixtures::e1();
        let dd = DAlgebra::new(Arc::new(HAlgebra::new(&d).unwrap())).unwrap();
        let f = d.field();
        let g = d.group();
        let gamma = g.char_id(&crate::group::Character { exps: vec![1, 0] }).unwrap();
        let r = dd.from_letters(&[DLetter::Chi(gamma), DLetter::X(0)]);
        let mut expected = DElem::zero();
        expected.add_term(dd.word(&[1], &[0], &[0], &[0], g.identity(), gamma), -f.one());
        expected.add_term(dd.word(&[0], &[1], &[0], &[0], g.identity(), gamma), f.from_int(-2));
        assert_eq!(r, expected);
    }
}
