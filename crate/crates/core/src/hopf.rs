//! The pointed Hopf algebra H attached to a datum.
//!
//! Generators are numbered uniformly: for linked data v_0..v_{n-1} are
//! x_1..x_n and v_n..v_{2n-1} are y_1..y_n; for general data they are the
//! given v_i. A canonical word is v^{pre} g v^{post}: for linked data this is
//! x^i g y^j, for general data all generators precede the group element.

use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::RwLock;
use thiserror::Error;

use crate::cyclo::{q_binomial, q_factorial, Field, FieldElem, FieldExt};
use crate::datum::{Datum, DatumKind};
use crate::group::{AbelianGroup, CharId, ElemId};
use crate::lincomb::{Exps, LinComb};
use crate::rewrite::{Normalizer, Presentation, RewriteDivergence, Step};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HopfError {
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error(transparent)]
    Rewrite(#[from] RewriteDivergence),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct HWord {
    pub pre: Exps,
    pub g: ElemId,
    pub post: Exps,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum HLetter {
    V(u8),
    G(ElemId),
}

pub type HElem = LinComb<HWord>;
pub type HTensor = LinComb<(HWord, HWord)>;

pub struct HRules {
    field: Field,
    group: AbelianGroup,
    split: usize,
    a: Vec<ElemId>,
    chi: Vec<CharId>,
    m: Vec<u32>,
    mu: Vec<FieldElem>,
    lambda: Vec<Vec<FieldElem>>,
}

impl HRules {
    fn slot(&self, k: usize) -> (bool, usize) {
        if k < self.split {
            (true, k)
        } else {
            (false, k - self.split)
        }
    }

    fn char_val(&self, chi: CharId, g: ElemId) -> FieldElem {
        self.field.root_of_unity(self.group.pair(chi, g) as i64)
    }
}

impl Presentation for HRules {
    type Word = HWord;
    type Letter = HLetter;

    fn field(&self) -> &Field {
        &self.field
    }

    fn one(&self) -> HWord {
        HWord { pre: Exps::ZERO, g: self.group.identity(), post: Exps::ZERO }
    }

    fn pop_last(&self, w: HWord) -> Option<(HWord, HLetter)> {
        if let Some(s) = w.post.last_nonzero() {
            let post = w.post.with(s, w.post.get(s) - 1);
            return Some((HWord { post, ..w }, HLetter::V((s + self.split) as u8)));
        }
        if w.g != self.group.identity() {
            return Some((HWord { g: self.group.identity(), ..w }, HLetter::G(w.g)));
        }
        let s = w.pre.last_nonzero()?;
        let pre = w.pre.with(s, w.pre.get(s) - 1);
        Some((HWord { pre, ..w }, HLetter::V(s as u8)))
    }

    fn rank(&self, l: HLetter) -> usize {
        match l {
            HLetter::V(k) if (k as usize) < self.split => k as usize,
            HLetter::V(k) => k as usize + 1,
            HLetter::G(_) => self.split,
        }
    }

    fn append(&self, w: HWord, l: HLetter) -> Vec<Step<HWord, HLetter>> {
        let one = self.field.one();
        match l {
            HLetter::G(h) => {
                vec![Step { coeff: one, word: HWord { g: self.group.mul(w.g, h), ..w }, tail: vec![] }]
            }
            HLetter::V(k) => {
                let k = k as usize;
                let (is_pre, s) = self.slot(k);
                let exps = if is_pre { w.pre } else { w.post };
                let e = exps.get(s) + 1;
                let set = |x: Exps| if is_pre { HWord { pre: x, ..w } } else { HWord { post: x, ..w } };
                if e < self.m[k] {
                    return vec![Step { coeff: one, word: set(exps.with(s, e)), tail: vec![] }];
                }
                // v_k^{m} = μ_k (a_k^{m} - 1)
                if self.mu[k].is_zero() {
                    return vec![];
                }
                let w0 = set(exps.with(s, 0));
                let am = self.group.pow(self.a[k], self.m[k] as i64);
                vec![
                    Step { coeff: self.mu[k].clone(), word: w0, tail: vec![HLetter::G(am)] },
                    Step { coeff: -&self.mu[k], word: w0, tail: vec![] },
                ]
            }
        }
    }

    fn swap(&self, left: HLetter, right: HLetter) -> Vec<(FieldElem, Vec<HLetter>)> {
        match (left, right) {
            (HLetter::V(t), HLetter::V(k)) => {
                let (t, k) = (t as usize, k as usize);
                // v_t v_k = χ_k(a_t) v_k v_t + λ_tk (a_t a_k - 1)
                let q = self.char_val(self.chi[k], self.a[t]);
                let mut out = vec![(q, vec![HLetter::V(k as u8), HLetter::V(t as u8)])];
                let lam = &self.lambda[t][k];
                if !lam.is_zero() {
                    out.push((lam.clone(), vec![HLetter::G(self.group.mul(self.a[t], self.a[k]))]));
                    out.push((-lam, vec![]));
                }
                out
            }
            (HLetter::G(g), HLetter::V(k)) => {
                // g v_k = χ_k(g) v_k g
                vec![(self.char_val(self.chi[k as usize], g), vec![HLetter::V(k), HLetter::G(g)])]
            }
            (HLetter::V(t), HLetter::G(h)) => {
                // v_t h = χ_t(h)^{-1} h v_t
                let c = self.char_val(self.group.char_inv(self.chi[t as usize]), h);
                vec![(c, vec![HLetter::G(h), HLetter::V(t)])]
            }
            (HLetter::G(_), HLetter::G(_)) => unreachable!("group letters share a rank"),
        }
    }

    fn letters(&self, w: HWord) -> Vec<HLetter> {
        let mut out = vec![];
        for s in 0..self.split {
            out.extend(std::iter::repeat(HLetter::V(s as u8)).take(w.pre.get(s) as usize));
        }
        if w.g != self.group.identity() {
            out.push(HLetter::G(w.g));
        }
        for s in 0..self.m.len() - self.split {
            out.extend(std::iter::repeat(HLetter::V((s + self.split) as u8)).take(w.post.get(s) as usize));
        }
        out
    }
}

pub struct HAlgebra {
    datum: Datum,
    engine: Normalizer<HRules>,
    basis: Vec<HWord>,
    index: HashMap<HWord, usize>,
    products: RwLock<HashMap<(HWord, HWord), Arc<HElem>>>,
    coproducts: RwLock<HashMap<HWord, Arc<HTensor>>>,
    antipodes: RwLock<HashMap<(bool, HWord), Arc<HElem>>>,
    /// q-powers table for linked data: qp[i][j] = χ_j(a_i).
    qp: Vec<Vec<FieldElem>>,
}

impl HAlgebra {
    pub fn new(datum: &Datum) -> Result<Self, HopfError> {
        datum.ensure_valid().map_err(|e| HopfError::InvalidDatum(e.to_string()))?;
        let group = datum.group().clone();
        let field = datum.field().clone();
        let ngen = datum.num_generators();
        let (split, mu, lambda) = match datum.kind() {
            DatumKind::Linked(_) => {
                let n = datum.n();
                let mut lambda = vec![vec![field.zero(); ngen]; ngen];
                for i in 0..n {
                    lambda[i][n + i] = field.one();
                    lambda[n + i][i] = -datum.q(i);
                }
                (n, vec![field.zero(); ngen], lambda)
            }
            DatumKind::General(g) => (ngen, g.mu.clone(), g.lambda.clone()),
        };
        let (a, chi): (Vec<ElemId>, Vec<CharId>) = (0..ngen).map(|k| datum.generator(k)).unzip();
        let m: Vec<u32> = (0..ngen).map(|k| datum.order_of(k)).collect();
        if m.iter().any(|&x| x > 255) {
            return Err(HopfError::InvalidDatum("root orders above 255 are not supported".into()));
        }
        let rules = HRules { field: field.clone(), group: group.clone(), split, a, chi, m: m.clone(), mu, lambda };
        let pre_bounds: Vec<u32> = m[..split].to_vec();
        let post_bounds: Vec<u32> = m[split..].to_vec();
        let mut basis = vec![];
        for pre in Exps::box_iter(&pre_bounds) {
            for g in group.elements() {
                for &post in &Exps::box_iter(&post_bounds) {
                    basis.push(HWord { pre, g, post });
                }
            }
        }
        basis.sort();
        let index = basis.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        let qp = if datum.is_linked() {
            let n = datum.n();
            (0..n).map(|i| (0..n).map(|j| datum.q_pair(i, j)).collect()).collect()
        } else {
            vec![]
        };
        Ok(HAlgebra {
            datum: datum.clone(),
            engine: Normalizer::new(rules),
            basis,
            index,
            products: RwLock::new(HashMap::new()),
            coproducts: RwLock::new(HashMap::new()),
            antipodes: RwLock::new(HashMap::new()),
            qp,
        })
    }

    pub fn datum(&self) -> &Datum {
        &self.datum
    }

    pub fn field(&self) -> &Field {
        self.datum.field()
    }

    pub fn group(&self) -> &AbelianGroup {
        self.datum.group()
    }

    fn rules(&self) -> &HRules {
        self.engine.presentation()
    }

    pub fn num_generators(&self) -> usize {
        self.rules().m.len()
    }

    /// Number of generators placed before the group element.
    pub fn split(&self) -> usize {
        self.rules().split
    }

    pub fn orders(&self) -> &[u32] {
        &self.rules().m
    }

    pub fn generator_data(&self, k: usize) -> (ElemId, CharId) {
        (self.rules().a[k], self.rules().chi[k])
    }

    pub fn basis(&self) -> &[HWord] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, w: &HWord) -> usize {
        self.index[w]
    }

    pub fn one_word(&self) -> HWord {
        self.rules().one()
    }

    pub fn one(&self) -> HElem {
        HElem::monomial(self.one_word(), self.field().one())
    }

    pub fn word(&self, pre: &[u32], g: ElemId, post: &[u32]) -> HWord {
        HWord { pre: Exps::from_slice(pre), g, post: Exps::from_slice(post) }
    }

    pub fn group_word(&self, g: ElemId) -> HWord {
        HWord { g, ..self.one_word() }
    }

    pub fn group_elem(&self, g: ElemId) -> HElem {
        HElem::monomial(self.group_word(g), self.field().one())
    }

    /// The generator v_k as an element.
    pub fn gen(&self, k: usize) -> HElem {
        self.engine.word_of_letters(&[HLetter::V(k as u8)]).expect("single letter")
    }

    /// x_i (linked data).
    pub fn x(&self, i: usize) -> HElem {
        self.gen(i)
    }

    /// y_i (linked data).
    pub fn y(&self, i: usize) -> HElem {
        self.gen(self.datum.n() + i)
    }

    /// Number of skew-primitive letters in a word.
    pub fn degree(&self, w: &HWord) -> u32 {
        w.pre.total() + w.post.total()
    }

    pub fn letters(&self, w: HWord) -> Vec<HLetter> {
        self.rules().letters(w)
    }

    /// Product of letters, normalized by rewriting.
    pub fn from_letters(&self, letters: &[HLetter]) -> HElem {
        self.engine.word_of_letters(letters).expect("rewriting in H terminates")
    }

    /// Product of two canonical words; linked data use the closed-form
    /// commutation formula, general data fall back to rewriting.
    pub fn mul_words(&self, u: HWord, v: HWord) -> Arc<HElem> {
        if let Some(r) = self.products.read().get(&(u, v)) {
            return r.clone();
        }
        let r = if self.datum.is_linked() {
            self.mul_closed(u, v)
        } else {
            self.engine.mul_letters(&HElem::monomial(u, self.field().one()), &self.letters(v)).expect("rewriting in H terminates")
        };
        let r = Arc::new(r);
        self.products.write().insert((u, v), r.clone());
        r
    }

    pub fn multiply(&self, u: &HElem, v: &HElem) -> HElem {
        let mut out = HElem::zero();
        for (w1, c1) in u.iter() {
            for (w2, c2) in v.iter() {
                out.add_scaled(&self.mul_words(*w1, *w2), &(c1 * c2));
            }
        }
        out
    }

    /// Product computed purely by single-letter rewriting.
    pub fn multiply_by_rewriting(&self, u: &HElem, v: &HElem) -> Result<HElem, HopfError> {
        Ok(self.engine.multiply(u, v)?)
    }

    /// f_r^{j,k} for the i-th linked pair as a combination of powers of a_i b_i:
    /// y^j x^k = Σ_r x^{k-r} f_r y^{j-r}.
    pub fn commutator_coefficient(&self, i: usize, j: u32, k: u32, r: u32) -> Vec<(ElemId, FieldElem)> {
        let d = &self.datum;
        let f = self.field();
        let q = d.q(i);
        let lam = -q.clone();
        let qpow = |e: i64| q.pow(e).expect("root of unity");
        let (j_, k_, r_) = (j as i64, k as i64, r as i64);
        let scalar = lam.pow(r_).expect("nonzero")
            * q_binomial(j_, r_, &q)
            * q_binomial(k_, r_, &q)
            * q_factorial(r, &q)
            * qpow((k_ - r_) * (j_ - r_));
        // Π_{m=1}^{r} (q^{j+k-m-r} Z - 1) as a polynomial in Z = a b
        let mut poly = vec![f.one()];
        for m in 1..=r_ {
            let c = qpow(j_ + k_ - m - r_);
            let mut next = vec![f.zero(); poly.len() + 1];
            for (p, x) in poly.iter().enumerate() {
                next[p + 1] += &(x * &c);
                next[p] -= x;
            }
            poly = next;
        }
        let g = self.group();
        let ab = d.ab(i);
        let mut acc: HashMap<ElemId, FieldElem> = HashMap::new();
        for (p, x) in poly.into_iter().enumerate() {
            let e = g.pow(ab, p as i64);
            let v = acc.entry(e).or_insert_with(|| f.zero());
            *v += &(&x * &scalar);
        }
        let mut out: Vec<(ElemId, FieldElem)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by_key(|(e, _)| *e);
        out
    }

    /// y_i^j x_i^k in canonical form from the closed formula.
    pub fn commutator_expansion(&self, i: usize, j: u32, k: u32) -> HElem {
        let n = self.datum.n();
        let m = self.datum.m(i);
        let mut out = HElem::zero();
        for r in 0..=j.min(k) {
            let (xe, ye) = (k - r, j - r);
            if xe >= m || ye >= m {
                continue;
            }
            for (g, c) in self.commutator_coefficient(i, j, k, r) {
                let mut pre = vec![0; n];
                let mut post = vec![0; n];
                pre[i] = xe;
                post[i] = ye;
                out.add_term(self.word(&pre, g, &post), c);
            }
        }
        out
    }

    fn mul_closed(&self, w1: HWord, w2: HWord) -> HElem {
        let d = &self.datum;
        let g = self.group();
        let f = self.field();
        let n = d.n();
        let m = d.ms();
        let qp = &self.qp;
        let pw = |x: &FieldElem, e: u32| x.pow(e as i64).expect("root of unity");
        // (g1 y^{j1}) · x^{i2} as terms c · x^s h y^t
        let mut terms: Vec<(FieldElem, Exps, ElemId, Exps)> = vec![(f.one(), Exps::ZERO, w1.g, w1.post)];
        for k in 0..n {
            let e = w2.pre.get(k);
            if e == 0 {
                continue;
            }
            let mut next = vec![];
            for (c, s, h, t) in terms {
                // y_l x_k = q_kl x_k y_l for l > k
                let mut c = c;
                for l in k + 1..n {
                    c = c * pw(&qp[k][l], t.get(l) * e);
                }
                let tk = t.get(k);
                for r in 0..=tk.min(e) {
                    let xe = e - r;
                    if s.get(k) + xe >= m[k] {
                        continue;
                    }
                    for (hf, cf) in self.commutator_coefficient(k, tk, e, r) {
                        let mut coef = &c * &cf;
                        for l in 0..k {
                            // x_k^{xe} and hf move left past y_l^{t_l}
                            coef = coef * pw(&qp[k][l], t.get(l) * xe) * pw(&d.eval(d.chi(l), hf), t.get(l));
                        }
                        coef = coef * pw(&d.eval(d.chi(k), h), xe);
                        for l in k + 1..n {
                            coef = coef * pw(&qp[l][k], s.get(l) * xe);
                        }
                        let s2 = s.with(k, s.get(k) + xe);
                        let t2 = t.with(k, tk - r);
                        next.push((coef, s2, g.mul(h, hf), t2));
                    }
                }
            }
            terms = next;
        }
        let mut out = HElem::zero();
        'terms: for (c, s, h, t) in terms {
            let mut coef = c;
            let mut pre = Exps::ZERO;
            for k in 0..n {
                let tot = w1.pre.get(k) + s.get(k);
                if tot >= m[k] {
                    continue 'terms;
                }
                pre = pre.with(k, tot);
                for l in k + 1..n {
                    coef = coef * pw(&qp[l][k], w1.pre.get(l) * s.get(k));
                }
            }
            for l in 0..n {
                // y_l g2 = χ_l(g2) g2 y_l
                coef = coef * pw(&d.eval(d.chi(l), w2.g), t.get(l));
            }
            let mut post = Exps::ZERO;
            for k in 0..n {
                let tot = t.get(k) + w2.post.get(k);
                if tot >= m[k] {
                    continue 'terms;
                }
                post = post.with(k, tot);
                for l in k + 1..n {
                    coef = coef * pw(&qp[l][k], t.get(l) * w2.post.get(k));
                }
            }
            out.add_term(HWord { pre, g: g.mul(h, w2.g), post }, coef);
        }
        out
    }

    fn tensor_mul(&self, u: &HTensor, v: &HTensor) -> HTensor {
        let mut out = HTensor::zero();
        for ((a1, b1), c1) in u.iter() {
            for ((a2, b2), c2) in v.iter() {
                let left = self.mul_words(*a1, *a2);
                let right = self.mul_words(*b1, *b2);
                let c = c1 * c2;
                for (x, cx) in left.iter() {
                    let cx = cx * &c;
                    for (y, cy) in right.iter() {
                        out.add_term((*x, *y), &cx * cy);
                    }
                }
            }
        }
        out
    }

    fn letter_coproduct(&self, l: HLetter) -> HTensor {
        let one = self.field().one();
        match l {
            HLetter::G(g) => HTensor::monomial((self.group_word(g), self.group_word(g)), one),
            HLetter::V(k) => {
                let v = self.gen(k as usize);
                let a = self.group_word(self.rules().a[k as usize]);
                let mut t = HTensor::zero();
                for (w, c) in v.iter() {
                    t.add_term((*w, self.one_word()), c.clone());
                    t.add_term((a, *w), c.clone());
                }
                t
            }
        }
    }

    /// Δ of a canonical word, built multiplicatively from the generators.
    pub fn coproduct_word(&self, w: HWord) -> Arc<HTensor> {
        if let Some(r) = self.coproducts.read().get(&w) {
            return r.clone();
        }
        let r = match self.rules().pop_last(w) {
            None => HTensor::monomial((w, w), self.field().one()),
            Some((rest, l)) => self.tensor_mul(&self.coproduct_word(rest), &self.letter_coproduct(l)),
        };
        let r = Arc::new(r);
        self.coproducts.write().insert(w, r.clone());
        r
    }

    pub fn coproduct(&self, u: &HElem) -> HTensor {
        let mut out = HTensor::zero();
        for (w, c) in u.iter() {
            out.add_scaled(&self.coproduct_word(*w), c);
        }
        out
    }

    pub fn counit(&self, u: &HElem) -> FieldElem {
        u.iter().filter(|(w, _)| self.degree(w) == 0).fold(self.field().zero(), |acc, (_, c)| acc + c)
    }

    fn letter_antipode(&self, l: HLetter, inverse: bool) -> HElem {
        let g = self.group();
        match l {
            HLetter::G(h) => self.group_elem(g.inv(h)),
            HLetter::V(k) => {
                // S(v) = -a^{-1} v, S^{-1}(v) = -v a^{-1}
                let ainv = HLetter::G(g.inv(self.rules().a[k as usize]));
                let letters = if inverse { [HLetter::V(k), ainv] } else { [ainv, HLetter::V(k)] };
                self.from_letters(&letters).scaled(&-self.field().one())
            }
        }
    }

    fn antipode_word(&self, w: HWord, inverse: bool) -> Arc<HElem> {
        if let Some(r) = self.antipodes.read().get(&(inverse, w)) {
            return r.clone();
        }
        // S(w' l) = S(l) S(w'), likewise for S^{-1}
        let r = match self.rules().pop_last(w) {
            None => self.one(),
            Some((rest, l)) => self.multiply(&self.letter_antipode(l, inverse), &self.antipode_word(rest, inverse)),
        };
        let r = Arc::new(r);
        self.antipodes.write().insert((inverse, w), r.clone());
        r
    }

    pub fn antipode(&self, u: &HElem) -> HElem {
        let mut out = HElem::zero();
        for (w, c) in u.iter() {
            out.add_scaled(&self.antipode_word(*w, false), c);
        }
        out
    }

    pub fn antipode_inverse(&self, u: &HElem) -> HElem {
        let mut out = HElem::zero();
        for (w, c) in u.iter() {
            out.add_scaled(&self.antipode_word(*w, true), c);
        }
        out
    }

    pub fn antipode_inverse_word(&self, w: HWord) -> Arc<HElem> {
        self.antipode_word(w, true)
    }

    /// Dimension of the n-th term of the coradical filtration
    /// (span of words with at most n skew-primitive letters).
    pub fn coradical_term_dim(&self, n: u32) -> usize {
        self.basis.iter().filter(|w| self.degree(w) <= n).count()
    }

    /// v^{i} g in the ordering where all generators precede the group element.
    pub fn ordered_monomial(&self, exps: &[u32], g: ElemId) -> HElem {
        let mut letters = vec![];
        for (k, &e) in exps.iter().enumerate() {
            letters.extend(std::iter::repeat(HLetter::V(k as u8)).take(e as usize));
        }
        letters.push(HLetter::G(g));
        self.from_letters(&letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::fixtures;

    #[test]
    fn e1_yx_relation() {
        let d = fixtures::e1();
        let h = HAlgebra::new(&d).unwrap();
        let f = d.field();
        let yx = h.multiply(&h.y(0), &h.x(0));
        let g = d.group();
        let mut expected = HElem::zero();
        expected.add_term(h.word(&[1], g.identity(), &[1]), f.from_int(-1));
        expected.add_term(h.group_word(d.ab(0)), f.one());
        expected.add_term(h.one_word(), f.from_int(-1));
        assert_eq!(yx, expected);
    }

    #[test]
    fn e1_dimension() {
        let h = HAlgebra::new(&fixtures::e1()).unwrap();
        assert_eq!(h.dim(), 16);
        assert_eq!(h.coradical_term_dim(0), 4);
        assert_eq!(h.coradical_term_dim(1), 12);
    }

    #[test]
    fn closed_form_matches_rewriting_on_e2() {
        let h = HAlgebra::new(&fixtures::e2()).unwrap();
        for &u in h.basis() {
            for &v in h.basis() {
                let a = HElem::monomial(u, h.field().one());
                let b = HElem::monomial(v, h.field().one());
                assert_eq!(h.multiply(&a, &b), h.multiply_by_rewriting(&a, &b).unwrap(), "{u:?} {v:?}");
            }
        }
    }
}
