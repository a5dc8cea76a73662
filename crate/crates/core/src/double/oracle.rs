//! An independent model of D(H) as H*⊗H with the Doi–Takeuchi product
//!
//!   (f⊗h)(f'⊗k) = Σ f·(h_1 ⇀ f' ↼ S^{-1}(h_3)) ⊗ h_2 k,
//!
//! where (h ⇀ f)(u) = f(u h) and (f ↼ h)(u) = f(h u). Elements are stored in
//! the basis φ_w ⊗ u with φ_w the dual basis of the canonical words of H.
//! `image` sends a canonical word of D(H) to this model; `preimage` inverts it.

use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::RwLock;
use thiserror::Error;

use super::{DAlgebra, DElem, DLetter, DWord};
use crate::cyclo::{FieldElem, FieldExt};
use crate::dual::HStar;
use crate::hopf::{HAlgebra, HElem, HWord};
use crate::linalg::{Matrix, Vector};
use crate::lincomb::{Exps, LinComb};

/// Σ c (φ_{basis[i]} ⊗ basis[j]).
pub type OElem = LinComb<(u16, u16)>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("element is not in the image of the canonical words")]
    NotInImage,
}

type Row = Vec<OElem>;

pub struct DoubleOracle {
    h: Arc<HAlgebra>,
    dual: HStar,
    /// (a, b) -> φ_a φ_b
    conv: HashMap<(u16, u16), Vec<(u16, FieldElem)>>,
    /// hits[h][v] = (ε⊗h)(φ_v⊗1)
    hits: RwLock<HashMap<u16, Arc<Row>>>,
    images: RwLock<HashMap<DWord, Arc<OElem>>>,
    monomials: Vec<(Exps, Exps, crate::group::CharId)>,
    monomial_inverse: Matrix,
}

impl DoubleOracle {
    pub fn new(h: Arc<HAlgebra>) -> Self {
        let dual = HStar::new(h.clone());
        let mut conv: HashMap<(u16, u16), Vec<(u16, FieldElem)>> = HashMap::new();
        for (u, &w) in h.basis().iter().enumerate() {
            for ((a, b), c) in h.coproduct_word(w).iter() {
                let key = (h.index_of(a) as u16, h.index_of(b) as u16);
                conv.entry(key).or_default().push((u as u16, c.clone()));
            }
        }
        let d = h.datum();
        let m = d.ms();
        let boxes = Exps::box_iter(&m);
        let mut monomials = vec![];
        let mut monomial_values = vec![];
        for &j in &boxes {
            let mut eta = dual.counit();
            for k in 0..d.n() {
                eta = dual.convolve(&eta, &dual.power(&dual.eta(k), j.get(k)));
            }
            for &l in &boxes {
                let mut exi = eta.clone();
                for k in 0..d.n() {
                    exi = dual.convolve(&exi, &dual.power(&dual.xi(k), l.get(k)));
                }
                for gamma in d.group().characters() {
                    let f = dual.convolve(&exi, &dual.group_character(gamma));
                    monomials.push((j, l, gamma));
                    monomial_values.push(h.basis().iter().map(|w| f.coeff(w).cloned().unwrap_or_else(|| d.field().zero())).collect());
                }
            }
        }
        let field = h.field().clone();
        let mat = Matrix::from_columns(&field, h.dim(), &monomial_values);
        let monomial_inverse = mat.inverse(&field).expect("the monomials η^j ξ^l γ form a basis of H*");
        DoubleOracle {
            h,
            dual,
            conv,
            hits: RwLock::new(HashMap::new()),
            images: RwLock::new(HashMap::new()),
            monomials,
            monomial_inverse,
        }
    }

    pub fn algebra(&self) -> &HAlgebra {
        &self.h
    }

    fn idx(&self, w: &HWord) -> u16 {
        self.h.index_of(w) as u16
    }

    fn hit_row(&self, hi: u16) -> Arc<Row> {
        if let Some(r) = self.hits.read().get(&hi) {
            return r.clone();
        }
        let h = &self.h;
        let mut row: Row = vec![OElem::zero(); h.dim()];
        let hw = h.basis()[hi as usize];
        for ((a, h3), c) in h.coproduct_word(hw).iter() {
            let s3 = h.antipode_inverse_word(*h3);
            for ((h1, h2), c2) in h.coproduct_word(*a).iter() {
                let cc = c * c2;
                let h2i = self.idx(h2);
                for (ui, &u) in h.basis().iter().enumerate() {
                    let uh1 = h.mul_words(u, *h1);
                    let prod = h.multiply(&s3, &uh1);
                    for (v, cv) in prod.iter() {
                        row[self.idx(v) as usize].add_term((ui as u16, h2i), &cc * cv);
                    }
                }
            }
        }
        let r = Arc::new(row);
        self.hits.write().insert(hi, r.clone());
        r
    }

    pub fn multiply(&self, x: &OElem, y: &OElem) -> OElem {
        let mut acc: HashMap<(u16, u16), FieldElem> = HashMap::new();
        let basis = self.h.basis();
        for (&(w, hi), c) in x.iter() {
            let row = self.hit_row(hi);
            for (&(v, k), c2) in y.iter() {
                let c12 = c * c2;
                for (&(u, h2), c3) in row[v as usize].iter() {
                    let Some(fs) = self.conv.get(&(w, u)) else { continue };
                    let hk = self.h.mul_words(basis[h2 as usize], basis[k as usize]);
                    let c123 = &c12 * c3;
                    for (z, cz) in fs {
                        let cz = &c123 * cz;
                        for (t, ct) in hk.iter() {
                            let e = acc.entry((*z, self.idx(t))).or_insert_with(|| self.h.field().zero());
                            *e += &(&cz * ct);
                        }
                    }
                }
            }
        }
        acc.into_iter().collect()
    }

    fn counit_times(&self, u: &HElem) -> OElem {
        let mut out = OElem::zero();
        for g in self.h.group().elements() {
            let gi = self.idx(&self.h.group_word(g));
            for (w, c) in u.iter() {
                out.add_term((gi, self.idx(w)), c.clone());
            }
        }
        out
    }

    fn functional_times_one(&self, f: &crate::dual::Functional) -> OElem {
        let one = self.idx(&self.h.one_word());
        f.iter().map(|(w, c)| ((self.idx(w), one), c.clone())).collect()
    }

    fn letter_image(&self, l: DLetter) -> OElem {
        let h = &self.h;
        let n = h.datum().n();
        match l {
            DLetter::X(k) => self.counit_times(&h.gen(k as usize)),
            DLetter::Y(k) => self.counit_times(&h.gen(n + k as usize)),
            DLetter::G(g) => self.counit_times(&h.group_elem(g)),
            DLetter::Eta(k) => self.functional_times_one(&self.dual.eta(k as usize)),
            DLetter::Xi(k) => self.functional_times_one(&self.dual.xi(k as usize)),
            DLetter::Chi(c) => self.functional_times_one(&self.dual.group_character(c)),
        }
    }

    /// The image of a canonical word of D(H), as the product of the images of
    /// its letters.
    pub fn image_word(&self, d: &DAlgebra, w: DWord) -> Arc<OElem> {
        if let Some(r) = self.images.read().get(&w) {
            return r.clone();
        }
        let r = match d.pop_last(w) {
            None => self.counit_times(&self.h.one()),
            Some((rest, l)) => self.multiply(&self.image_word(d, rest), &self.letter_image(l)),
        };
        let r = Arc::new(r);
        self.images.write().insert(w, r.clone());
        r
    }

    pub fn image(&self, d: &DAlgebra, u: &DElem) -> OElem {
        let mut out = OElem::zero();
        for (w, c) in u.iter() {
            out.add_scaled(&self.image_word(d, *w), c);
        }
        out
    }

    fn degree(&self, hi: u16) -> u32 {
        self.h.degree(&self.h.basis()[hi as usize])
    }

    fn functional_vector(&self, x: &OElem, hi: u16) -> Vector {
        let mut v = vec![self.h.field().zero(); self.h.dim()];
        for (&(w, k), c) in x.iter() {
            if k == hi {
                v[w as usize] = c.clone();
            }
        }
        v
    }

    /// Writes an element of H*⊗H in the canonical words of D(H), descending
    /// by the number of skew-primitive letters in the H factor.
    pub fn preimage(&self, d: &DAlgebra, x: &OElem) -> Result<DElem, OracleError> {
        let mut rem = x.clone();
        let mut out = DElem::zero();
        let mut bound = u32::MAX;
        while !rem.is_zero() {
            let top = rem.iter().map(|(&(_, k), _)| self.degree(k)).max().expect("nonzero");
            if top >= bound {
                return Err(OracleError::NotInImage);
            }
            bound = top;
            let mut heads: Vec<u16> = rem.iter().map(|(&(_, k), _)| k).filter(|&k| self.degree(k) == top).collect();
            heads.sort_unstable();
            heads.dedup();
            for hi in heads {
                let coords = self.monomial_inverse.mul_vec(&self.functional_vector(&rem, hi));
                let hw = self.h.basis()[hi as usize];
                for (mi, c) in coords.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (eta, xi, chi) = self.monomials[mi];
                    let w = DWord { x: hw.pre, eta, y: hw.post, xi, g: hw.g, chi };
                    let img = self.image_word(d, w);
                    let lead = self.functional_vector(&img, hi);
                    let kappa = self.monomial_inverse.mul_vec(&lead);
                    let scale = kappa[mi].clone();
                    if scale.is_zero() || kappa.iter().enumerate().any(|(i, k)| i != mi && !k.is_zero()) {
                        return Err(OracleError::NotInImage);
                    }
                    let t = c * &scale.inv().expect("nonzero");
                    out.add_term(w, t.clone());
                    rem.add_scaled(&img, &-t);
                }
            }
        }
        Ok(out)
    }

    /// The product of two elements of D(H) computed in the model.
    pub fn d_multiply(&self, d: &DAlgebra, u: &DElem, v: &DElem) -> Result<DElem, OracleError> {
        self.preimage(d, &self.multiply(&self.image(d, u), &self.image(d, v)))
    }
}
