//! Normal ordering of words in algebras presented by PBW-type generators.
//!
//! A presentation supplies an order on letters, a rule to append a letter to
//! an already ordered word whose letters are all no greater, and a rewriting
//! of each out-of-order adjacent pair. Right multiplication of a canonical
//! word by a letter is then computed recursively and memoized.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use parking_lot::RwLock;
use thiserror::Error;

use crate::cyclo::{Field, FieldElem, FieldExt};
use crate::lincomb::LinComb;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("rewriting did not terminate within {0} nested steps")]
pub struct RewriteDivergence(pub usize);

/// One term c · (word · tail[0] · tail[1] ⋯) of an expansion.
pub struct Step<W, L> {
    pub coeff: FieldElem,
    pub word: W,
    pub tail: Vec<L>,
}

pub trait Presentation: Sync + Send {
    type Word: Copy + Ord + Hash + Debug + Send + Sync;
    type Letter: Copy + Eq + Hash + Debug + Send + Sync;

    fn field(&self) -> &Field;
    fn one(&self) -> Self::Word;
    /// Splits w = w' · l with l the greatest letter of w.
    fn pop_last(&self, w: Self::Word) -> Option<(Self::Word, Self::Letter)>;
    /// Position in the canonical order; equal ranks merge on append.
    fn rank(&self, l: Self::Letter) -> usize;
    /// w · l where every letter of w has rank at most rank(l).
    fn append(&self, w: Self::Word, l: Self::Letter) -> Vec<Step<Self::Word, Self::Letter>>;
    /// left · right with rank(left) > rank(right), as Σ c · (letters).
    fn swap(&self, left: Self::Letter, right: Self::Letter) -> Vec<(FieldElem, Vec<Self::Letter>)>;
    /// Letters whose ordered product is the word.
    fn letters(&self, w: Self::Word) -> Vec<Self::Letter>;
}

const MAX_DEPTH: usize = 4096;

pub struct Normalizer<P: Presentation> {
    pres: P,
    memo: RwLock<HashMap<(P::Word, P::Letter), LinComb<P::Word>>>,
}

impl<P: Presentation> Normalizer<P> {
    pub fn new(pres: P) -> Self {
        Normalizer { pres, memo: RwLock::new(HashMap::new()) }
    }

    pub fn presentation(&self) -> &P {
        &self.pres
    }

    pub fn memo_size(&self) -> usize {
        self.memo.read().len()
    }

    /// Canonical form of w · l.
    pub fn mul_letter(&self, w: P::Word, l: P::Letter) -> Result<LinComb<P::Word>, RewriteDivergence> {
        self.mul_letter_at(w, l, 0)
    }

    fn mul_letter_at(&self, w: P::Word, l: P::Letter, depth: usize) -> Result<LinComb<P::Word>, RewriteDivergence> {
        if depth > MAX_DEPTH {
            return Err(RewriteDivergence(MAX_DEPTH));
        }
        if let Some(r) = self.memo.read().get(&(w, l)) {
            return Ok(r.clone());
        }
        let p = &self.pres;
        let mut out = LinComb::zero();
        match p.pop_last(w) {
            Some((rest, last)) if p.rank(last) > p.rank(l) => {
                for (c, seq) in p.swap(last, l) {
                    let part = self.fold_at(&LinComb::monomial(rest, p.field().one()), &seq, depth + 1)?;
                    out.add_scaled(&part, &c);
                }
            }
            _ => {
                for step in p.append(w, l) {
                    let part = self.fold_at(&LinComb::monomial(step.word, p.field().one()), &step.tail, depth + 1)?;
                    out.add_scaled(&part, &step.coeff);
                }
            }
        }
        self.memo.write().insert((w, l), out.clone());
        Ok(out)
    }

    fn fold_at(
        &self,
        start: &LinComb<P::Word>,
        letters: &[P::Letter],
        depth: usize,
    ) -> Result<LinComb<P::Word>, RewriteDivergence> {
        let mut cur = start.clone();
        for &l in letters {
            let mut next = LinComb::zero();
            for (w, c) in cur.iter() {
                let r = self.mul_letter_at(*w, l, depth)?;
                next.add_scaled(&r, c);
            }
            cur = next;
        }
        Ok(cur)
    }

    /// Canonical form of x · l_1 · l_2 ⋯.
    pub fn mul_letters(&self, x: &LinComb<P::Word>, letters: &[P::Letter]) -> Result<LinComb<P::Word>, RewriteDivergence> {
        self.fold_at(x, letters, 0)
    }

    /// Canonical form of the product of a sequence of letters.
    pub fn word_of_letters(&self, letters: &[P::Letter]) -> Result<LinComb<P::Word>, RewriteDivergence> {
        self.fold_at(&LinComb::monomial(self.pres.one(), self.pres.field().one()), letters, 0)
    }

    pub fn multiply(&self, u: &LinComb<P::Word>, v: &LinComb<P::Word>) -> Result<LinComb<P::Word>, RewriteDivergence> {
        let mut out = LinComb::zero();
        for (w2, c2) in v.iter() {
            let letters = self.pres.letters(*w2);
            let part = self.fold_at(u, &letters, 0)?;
            out.add_scaled(&part, c2);
        }
        Ok(out)
    }
}
