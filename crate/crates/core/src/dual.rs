//! The dual Hopf algebra H*.
//!
//! A functional is stored by its values on the canonical word basis of H, so
//! Σ_w f(w) φ_w with φ_w the dual basis. The product is convolution
//! (fg)(u) = Σ f(u_1) g(u_2).

use std::sync::Arc;

use crate::cyclo::{q_factorial, FieldElem, FieldExt};
use crate::group::{CharId, ElemId};
use crate::hopf::{HAlgebra, HElem, HWord};
use crate::lincomb::{Exps, LinComb};

pub type Functional = LinComb<HWord>;

pub struct HStar {
    h: Arc<HAlgebra>,
}

impl HStar {
    pub fn new(h: Arc<HAlgebra>) -> Self {
        HStar { h }
    }

    pub fn algebra(&self) -> &HAlgebra {
        &self.h
    }

    pub fn pair(&self, f: &Functional, u: &HElem) -> FieldElem {
        let mut acc = self.h.field().zero();
        for (w, c) in u.iter() {
            if let Some(v) = f.coeff(w) {
                acc += &(v * c);
            }
        }
        acc
    }

    pub fn convolve(&self, f: &Functional, g: &Functional) -> Functional {
        let mut out = Functional::zero();
        if f.is_zero() || g.is_zero() {
            return out;
        }
        for &u in self.h.basis() {
            let delta = self.h.coproduct_word(u);
            let mut acc = self.h.field().zero();
            for ((w1, w2), c) in delta.iter() {
                if let (Some(a), Some(b)) = (f.coeff(w1), g.coeff(w2)) {
                    acc += &(c * &(a * b));
                }
            }
            out.add_term(u, acc);
        }
        out
    }

    pub fn power(&self, f: &Functional, e: u32) -> Functional {
        (0..e).fold(self.counit(), |acc, _| self.convolve(&acc, f))
    }

    /// ε, the unit of H*.
    pub fn counit(&self) -> Functional {
        let one = self.h.field().one();
        self.h.basis().iter().filter(|w| self.h.degree(w) == 0).map(|w| (*w, one.clone())).collect()
    }

    /// The character γ extended by zero on words with skew-primitive letters.
    pub fn group_character(&self, gamma: CharId) -> Functional {
        let d = self.h.datum();
        self.h.basis().iter().filter(|w| self.h.degree(w) == 0).map(|w| (*w, d.eval(gamma, w.g))).collect()
    }

    /// ε_g = φ_g, the dual basis element of the grouplike g.
    pub fn group_delta(&self, g: ElemId) -> Functional {
        Functional::monomial(self.h.group_word(g), self.h.field().one())
    }

    /// Σ_g φ_{x_k g} on the x^i g y^j basis (linked data).
    pub fn xi(&self, k: usize) -> Functional {
        let one = self.h.field().one();
        let x = Exps::unit(k);
        self.h.basis().iter().filter(|w| w.pre == x && w.post.is_zero()).map(|w| (*w, one.clone())).collect()
    }

    /// Σ_g φ_{g y_k} on the x^i g y^j basis (linked data).
    pub fn eta(&self, k: usize) -> Functional {
        let one = self.h.field().one();
        let y = Exps::unit(k);
        self.h.basis().iter().filter(|w| w.pre.is_zero() && w.post == y).map(|w| (*w, one.clone())).collect()
    }

    /// ξ_k with ξ_k(v^i g) = δ_{i, e_k} in the ordering v^i g where every
    /// generator precedes the group element.
    pub fn ordered_xi(&self, k: usize) -> Functional {
        let ngen = self.h.num_generators();
        let mut exps = vec![0u32; ngen];
        exps[k] = 1;
        let mut out = Functional::zero();
        for g in self.h.group().elements() {
            let m = self.h.ordered_monomial(&exps, g);
            debug_assert_eq!(m.len(), 1);
            let (w, c) = m.iter().next().expect("nonzero monomial");
            out.add_term(*w, c.inv().expect("nonzero"));
        }
        out
    }

    /// The functional dual to v^c g in the ordered basis: ((c)!)^{-1} ξ^c ε_g.
    pub fn dual_basis_element(&self, c: &[u32], g: ElemId) -> Functional {
        let f = self.h.field();
        let mut acc = self.counit();
        let mut fact = f.one();
        for (k, &e) in c.iter().enumerate() {
            if e > 0 {
                acc = self.convolve(&acc, &self.power(&self.ordered_xi(k), e));
                let q = f.root_of_unity(self.h.datum().q_exponent_of(k) as i64);
                fact = fact * q_factorial(e, &q);
            }
        }
        let acc = self.convolve(&acc, &self.group_delta(g));
        acc.scaled(&fact.inv().expect("(c)! is nonzero below the root orders"))
    }

    /// Exponent vectors and group elements indexing the ordered basis.
    pub fn ordered_labels(&self) -> Vec<(Vec<u32>, ElemId)> {
        let orders = self.h.orders().to_vec();
        let mut out = vec![];
        for e in Exps::box_iter(&orders) {
            for g in self.h.group().elements() {
                out.push((e.to_vec(orders.len()), g));
            }
        }
        out
    }

    /// (h ⇀ f)(u) = f(u h).
    pub fn left_hit(&self, h: &HElem, f: &Functional) -> Functional {
        let mut out = Functional::zero();
        for &u in self.h.basis() {
            let uh = self.h.multiply(&HElem::monomial(u, self.h.field().one()), h);
            out.add_term(u, self.pair(f, &uh));
        }
        out
    }

    /// (f ↼ h)(u) = f(h u).
    pub fn right_hit(&self, f: &Functional, h: &HElem) -> Functional {
        let mut out = Functional::zero();
        for &u in self.h.basis() {
            let hu = self.h.multiply(h, &HElem::monomial(u, self.h.field().one()));
            out.add_term(u, self.pair(f, &hu));
        }
        out
    }
}
