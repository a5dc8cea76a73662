//! Sparse linear combinations over Q(ζ_N) and packed exponent vectors.

use std::collections::BTreeMap;
use std::fmt;

use crate::cyclo::FieldElem;

/// Up to eight exponents below 256 packed into one word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Exps(u64);

pub const MAX_SLOTS: usize = 8;

impl Exps {
    pub const ZERO: Exps = Exps(0);

    pub fn from_slice(v: &[u32]) -> Exps {
        assert!(v.len() <= MAX_SLOTS);
        let mut e = Exps(0);
        for (i, &x) in v.iter().enumerate() {
            e = e.with(i, x);
        }
        e
    }

    pub fn unit(i: usize) -> Exps {
        Exps::ZERO.with(i, 1)
    }

    pub fn get(self, i: usize) -> u32 {
        ((self.0 >> (8 * i)) & 0xff) as u32
    }

    pub fn with(self, i: usize, v: u32) -> Exps {
        assert!(v < 256, "exponent {v} too large");
        let shift = 8 * i;
        Exps((self.0 & !(0xffu64 << shift)) | ((v as u64) << shift))
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn total(self) -> u32 {
        (0..MAX_SLOTS).map(|i| self.get(i)).sum()
    }

    /// Highest slot holding a nonzero exponent.
    pub fn last_nonzero(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some((63 - self.0.leading_zeros() as usize) / 8)
        }
    }

    pub fn to_vec(self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.get(i)).collect()
    }

    /// Slot-wise sum, or None if a slot would reach its bound.
    pub fn checked_add(self, other: Exps, bounds: &[u32]) -> Option<Exps> {
        let mut out = Exps::ZERO;
        for (i, &m) in bounds.iter().enumerate() {
            let s = self.get(i) + other.get(i);
            if s >= m {
                return None;
            }
            out = out.with(i, s);
        }
        Some(out)
    }

    /// All exponent vectors in Π [0, bounds_i), in lexicographic order.
    pub fn box_iter(bounds: &[u32]) -> Vec<Exps> {
        let mut out = vec![Exps::ZERO];
        for (i, &m) in bounds.iter().enumerate() {
            out = out.into_iter().flat_map(|e| (0..m).map(move |k| e.with(i, k))).collect();
        }
        out
    }
}

impl fmt::Debug for Exps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.last_nonzero().map_or(0, |k| k + 1);
        write!(f, "{:?}", self.to_vec(n))
    }
}

/// Σ c_w · w with nonzero coefficients, ordered by word.
#[derive(Clone, PartialEq, Eq)]
pub struct LinComb<W: Ord> {
    terms: BTreeMap<W, FieldElem>,
}

impl<W: Ord + Clone> Default for LinComb<W> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<W: Ord + Clone> LinComb<W> {
    pub fn zero() -> Self {
        LinComb { terms: BTreeMap::new() }
    }

    pub fn monomial(w: W, c: FieldElem) -> Self {
        let mut l = Self::zero();
        l.add_term(w, c);
        l
    }

    pub fn add_term(&mut self, w: W, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb<W>, c: &FieldElem) {
        if c.is_zero() {
            return;
        }
        let one = c.is_one();
        for (w, x) in &other.terms {
            self.add_term(w.clone(), if one { x.clone() } else { x * c });
        }
    }

    pub fn add(&mut self, other: &LinComb<W>) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x.clone());
        }
    }

    pub fn scaled(&self, c: &FieldElem) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &LinComb<W>) -> Self {
        let mut out = self.clone();
        for (w, x) in &other.terms {
            out.add_term(w.clone(), -x);
        }
        out
    }

    pub fn coeff(&self, w: &W) -> Option<&FieldElem> {
        self.terms.get(w)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&W, &FieldElem)> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &W> {
        self.terms.keys()
    }

    pub fn map_words<V: Ord + Clone>(&self, mut f: impl FnMut(&W) -> V) -> LinComb<V> {
        let mut out = LinComb::zero();
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }
}

impl<W: Ord + Clone> FromIterator<(W, FieldElem)> for LinComb<W> {
    fn from_iter<I: IntoIterator<Item = (W, FieldElem)>>(iter: I) -> Self {
        let mut l = Self::zero();
        for (w, c) in iter {
            l.add_term(w, c);
        }
        l
    }
}

impl<W: Ord + fmt::Debug> fmt::Debug for LinComb<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})·{:?}", c, w)?;
        }
        Ok(())
    }
}
