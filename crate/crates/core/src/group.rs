//! Finite abelian groups Z_{d_1} × … × Z_{d_r}, their character groups, and
//! the group Γ = G × Ĝ together with Γ̂ realized as Ĝ × G.
//!
//! Elements and characters are exponent vectors. Internally both are also
//! numbered by a mixed-radix index (first component most significant) so the
//! algebra code can work with small copyable ids and precomputed tables.

use thiserror::Error;

use crate::cyclo::{Field, FieldElem, FieldExt};

const MAX_ORDER: usize = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("expected a vector of length {expected}, got {found}")]
    GroupMismatch { expected: usize, found: usize },
    #[error("component {index} = {value} is out of range for Z_{order}")]
    OutOfRange { index: usize, value: i64, order: u32 },
    #[error("cyclic factor orders must be positive")]
    BadOrder,
    #[error("group of order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemId(pub u16);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharId(pub u16);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    pub exps: Vec<u32>,
}

/// χ(g) = ζ_N^{Σ (N/d_j) χ_j g_j}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub exps: Vec<u32>,
}

/// A character λ of Γ = G × Ĝ, stored as (λ|_G, h) where λ(γ) = γ(h) on Ĝ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaChar {
    pub chi: CharId,
    pub h: ElemId,
}

#[derive(Debug, Clone)]
pub struct AbelianGroup {
    orders: Vec<u32>,
    strides: Vec<usize>,
    exponent: u32,
    size: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    /// pair[χ * size + g] = exponent k with χ(g) = ζ_N^k.
    pair: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self, GroupError> {
        if orders.iter().any(|&d| d == 0) {
            return Err(GroupError::BadOrder);
        }
        let size: usize = orders.iter().map(|&d| d as usize).product();
        if size > MAX_ORDER {
            return Err(GroupError::TooLarge(size));
        }
        let exponent = orders.iter().fold(1u32, |acc, &d| num_integer::lcm(acc, d));
        let mut strides = vec![1usize; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1] as usize;
        }
        let mut g = AbelianGroup { orders, strides, exponent, size, mul: vec![], inv: vec![], pair: vec![] };
        let all: Vec<Vec<u32>> = (0..size).map(|i| g.decode(i)).collect();
        g.mul = Vec::with_capacity(size * size);
        g.pair = Vec::with_capacity(size * size);
        for a in &all {
            for b in &all {
                let c: Vec<u32> = a.iter().zip(b).zip(&g.orders).map(|((x, y), d)| (x + y) % d).collect();
                g.mul.push(g.encode(&c) as u16);
                let k: u64 = a
                    .iter()
                    .zip(b)
                    .zip(&g.orders)
                    .map(|((x, y), &d)| (exponent / d) as u64 * *x as u64 * *y as u64)
                    .sum();
                g.pair.push((k % exponent as u64) as u32);
            }
        }
        g.inv = all
            .iter()
            .map(|a| {
                let c: Vec<u32> = a.iter().zip(&g.orders).map(|(x, d)| (d - x) % d).collect();
                g.encode(&c) as u16
            })
            .collect();
        Ok(g)
    }

    /// Γ = G × Ĝ as an abstract group with the same factor orders repeated.
    pub fn gamma(&self) -> AbelianGroup {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&self.orders);
        AbelianGroup::new(orders).expect("Γ of a supported group")
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn decode(&self, mut idx: usize) -> Vec<u32> {
        let mut out = vec![0u32; self.orders.len()];
        for (i, s) in self.strides.iter().enumerate() {
            out[i] = (idx / s) as u32;
            idx %= s;
        }
        out
    }

    fn encode(&self, exps: &[u32]) -> usize {
        exps.iter().zip(&self.strides).map(|(&e, s)| e as usize * s).sum()
    }

    fn check(&self, exps: &[u32]) -> Result<(), GroupError> {
        if exps.len() != self.orders.len() {
            return Err(GroupError::GroupMismatch { expected: self.orders.len(), found: exps.len() });
        }
        for (i, (&e, &d)) in exps.iter().zip(&self.orders).enumerate() {
            if e >= d {
                return Err(GroupError::OutOfRange { index: i, value: e as i64, order: d });
            }
        }
        Ok(())
    }

    /// Reduces an integer vector into a group element.
    pub fn elem_from_ints(&self, v: &[i64]) -> Result<GroupElem, GroupError> {
        if v.len() != self.orders.len() {
            return Err(GroupError::GroupMismatch { expected: self.orders.len(), found: v.len() });
        }
        Ok(GroupElem { exps: v.iter().zip(&self.orders).map(|(&e, &d)| e.rem_euclid(d as i64) as u32).collect() })
    }

    pub fn char_from_ints(&self, v: &[i64]) -> Result<Character, GroupError> {
        self.elem_from_ints(v).map(|g| Character { exps: g.exps })
    }

    pub fn id_of(&self, g: &GroupElem) -> Result<ElemId, GroupError> {
        self.check(&g.exps)?;
        Ok(ElemId(self.encode(&g.exps) as u16))
    }

    pub fn char_id(&self, chi: &Character) -> Result<CharId, GroupError> {
        self.check(&chi.exps)?;
        Ok(CharId(self.encode(&chi.exps) as u16))
    }

    pub fn elem(&self, id: ElemId) -> GroupElem {
        GroupElem { exps: self.decode(id.0 as usize) }
    }

    pub fn character(&self, id: CharId) -> Character {
        Character { exps: self.decode(id.0 as usize) }
    }

    pub fn identity(&self) -> ElemId {
        ElemId(0)
    }

    pub fn trivial_char(&self) -> CharId {
        CharId(0)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        (0..self.size as u16).map(ElemId)
    }

    pub fn characters(&self) -> impl Iterator<Item = CharId> {
        (0..self.size as u16).map(CharId)
    }

    /// Standard generators (unit vectors) of G.
    pub fn generators(&self) -> Vec<ElemId> {
        (0..self.rank())
            .map(|i| {
                let mut e = vec![0u32; self.rank()];
                e[i] = 1 % self.orders[i];
                ElemId(self.encode(&e) as u16)
            })
            .collect()
    }

    pub fn char_generators(&self) -> Vec<CharId> {
        self.generators().into_iter().map(|g| CharId(g.0)).collect()
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        ElemId(self.mul[a.0 as usize * self.size + b.0 as usize])
    }

    pub fn inv(&self, a: ElemId) -> ElemId {
        ElemId(self.inv[a.0 as usize])
    }

    pub fn pow(&self, a: ElemId, k: i64) -> ElemId {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(self.identity(), |acc, _| self.mul(acc, base))
    }

    pub fn char_mul(&self, a: CharId, b: CharId) -> CharId {
        CharId(self.mul[a.0 as usize * self.size + b.0 as usize])
    }

    pub fn char_inv(&self, a: CharId) -> CharId {
        CharId(self.inv[a.0 as usize])
    }

    pub fn char_pow(&self, a: CharId, k: i64) -> CharId {
        CharId(self.pow(ElemId(a.0), k).0)
    }

    pub fn elem_order_id(&self, a: ElemId) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Exponent k with χ(g) = ζ_N^k, N the exponent of G.
    pub fn pair(&self, chi: CharId, g: ElemId) -> u32 {
        self.pair[chi.0 as usize * self.size + g.0 as usize]
    }

    pub fn multiply(&self, g: &GroupElem, h: &GroupElem) -> Result<GroupElem, GroupError> {
        Ok(self.elem(self.mul(self.id_of(g)?, self.id_of(h)?)))
    }

    pub fn inverse(&self, g: &GroupElem) -> Result<GroupElem, GroupError> {
        Ok(self.elem(self.inv(self.id_of(g)?)))
    }

    pub fn order(&self, g: &GroupElem) -> Result<u32, GroupError> {
        Ok(self.elem_order_id(self.id_of(g)?))
    }

    pub fn char_eval_exponent(&self, chi: &Character, g: &GroupElem) -> Result<u32, GroupError> {
        Ok(self.pair(self.char_id(chi)?, self.id_of(g)?))
    }

    /// χ(g) as an element of Q(ζ_N); the field's conductor must be a multiple of N.
    pub fn char_eval(&self, field: &Field, chi: &Character, g: &GroupElem) -> Result<FieldElem, GroupError> {
        let k = self.char_eval_exponent(chi, g)?;
        let scale = field.conductor() / self.exponent;
        Ok(field.root_of_unity((k * scale) as i64))
    }

    /// Order of the subgroup generated by `gens`.
    pub fn subgroup_order(&self, gens: &[ElemId]) -> usize {
        let mut seen = vec![false; self.size];
        seen[0] = true;
        let mut frontier = vec![self.identity()];
        let mut count = 1;
        while let Some(x) = frontier.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y.0 as usize] {
                    seen[y.0 as usize] = true;
                    count += 1;
                    frontier.push(y);
                }
            }
        }
        count
    }

    /// Coefficients of e_λ = |G|^{-1} Σ_k λ^{-1}(k) k for a character λ of this group.
    pub fn idempotent_coeffs(&self, field: &Field, lambda: CharId) -> Vec<(ElemId, FieldElem)> {
        let scale = (field.conductor() / self.exponent) as i64;
        let inv_size = field.from_int(self.size as i64).inv().expect("nonzero");
        self.elements()
            .map(|k| {
                let e = -(self.pair(lambda, k) as i64) * scale;
                (k, &field.root_of_unity(e) * &inv_size)
            })
            .collect()
    }
}
