//! Linking data over a finite abelian group.
//!
//! A datum is either *linked* (the normalized form with generators x_i, y_i,
//! grouplikes a_i, b_i and characters χ_i), or *general* (generators v_i with
//! grouplikes, characters, root-vector scalars μ_i and linking scalars
//! λ_ij). General data whose linking graph is a perfect matching and whose
//! μ vanish can be brought to linked form with [`Datum::normalize`].

mod parse;
pub mod fixtures;

use thiserror::Error;

use crate::cyclo::{CyclotomicField, Field, FieldElem, FieldExt};
use crate::group::{AbelianGroup, CharId, Character, ElemId, GammaChar, GroupElem, GroupError};
use crate::lincomb::MAX_SLOTS;

pub use parse::parse_datum;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DatumError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{0}")]
    Structure(String),
    #[error("datum fails: {0}")]
    Invalid(String),
    #[error("cannot normalize: {0}")]
    Normalize(String),
}

#[derive(Debug, Clone)]
pub struct LinkedData {
    pub a: Vec<ElemId>,
    pub b: Vec<ElemId>,
    pub chi: Vec<CharId>,
}

#[derive(Debug, Clone)]
pub struct GeneralData {
    pub a: Vec<ElemId>,
    pub chi: Vec<CharId>,
    pub mu: Vec<FieldElem>,
    /// lambda[i][j] for i != j; the diagonal is unused.
    pub lambda: Vec<Vec<FieldElem>>,
}

#[derive(Debug, Clone)]
pub enum DatumKind {
    Linked(LinkedData),
    General(GeneralData),
}

#[derive(Debug, Clone)]
pub struct Datum {
    group: AbelianGroup,
    field: Field,
    kind: DatumKind,
}

/// A single named condition with the index tuples that violate it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub offending: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> String {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{} at {:?}", c.name, c.offending))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Singular indices of a character γ of G: e[j] = Some(e_j) when γ(a_j b_j) = q_j^{-e_j}
/// with 0 <= e_j <= m_j - 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularH {
    pub e: Vec<Option<u32>>,
}

impl SingularH {
    pub fn set(&self) -> Vec<usize> {
        (0..self.e.len()).filter(|&j| self.e[j].is_some()).collect()
    }
}

/// Singular indices of a character λ of Γ for the two conditions
/// λ(a_j χ_j^{-1}) = q_j^{-e} and λ(b_j χ_j) = q_j^{-e'}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularD {
    pub e1: Vec<Option<u32>>,
    pub e2: Vec<Option<u32>>,
}

impl SingularD {
    /// Indices meeting the first condition (whether or not the second holds).
    pub fn first(&self) -> Vec<usize> {
        (0..self.e1.len()).filter(|&j| self.e1[j].is_some()).collect()
    }

    pub fn second(&self) -> Vec<usize> {
        (0..self.e2.len()).filter(|&j| self.e2[j].is_some()).collect()
    }

    pub fn both(&self) -> Vec<usize> {
        (0..self.e1.len()).filter(|&j| self.e1[j].is_some() && self.e2[j].is_some()).collect()
    }

    pub fn first_only(&self) -> Vec<usize> {
        (0..self.e1.len()).filter(|&j| self.e1[j].is_some() && self.e2[j].is_none()).collect()
    }

    pub fn second_only(&self) -> Vec<usize> {
        (0..self.e1.len()).filter(|&j| self.e1[j].is_none() && self.e2[j].is_some()).collect()
    }

    pub fn union(&self) -> Vec<usize> {
        (0..self.e1.len()).filter(|&j| self.e1[j].is_some() || self.e2[j].is_some()).collect()
    }
}

/// Result of bringing a general datum to linked form: generator v_{x[i]}
/// becomes scale[i]·x_i and v_{y[i]} becomes y_i.
#[derive(Debug, Clone)]
pub struct Normalization {
    pub datum: Datum,
    pub x_source: Vec<usize>,
    pub y_source: Vec<usize>,
    pub scale: Vec<FieldElem>,
}

impl Datum {
    pub fn linked(orders: Vec<u32>, a: Vec<GroupElem>, b: Vec<GroupElem>, chi: Vec<Character>) -> Result<Self, DatumError> {
        let group = AbelianGroup::new(orders)?;
        if a.len() != b.len() || a.len() != chi.len() {
            return Err(DatumError::Structure("a, b and chi must have the same length".into()));
        }
        if a.is_empty() || a.len() > MAX_SLOTS {
            return Err(DatumError::Structure(format!("number of linked pairs must be between 1 and {MAX_SLOTS}")));
        }
        let field = CyclotomicField::new(group.exponent()).map_err(|e| DatumError::Structure(e.to_string()))?;
        let a = a.iter().map(|g| group.id_of(g)).collect::<Result<Vec<_>, _>>()?;
        let b = b.iter().map(|g| group.id_of(g)).collect::<Result<Vec<_>, _>>()?;
        let chi = chi.iter().map(|c| group.char_id(c)).collect::<Result<Vec<_>, _>>()?;
        Ok(Datum { group, field, kind: DatumKind::Linked(LinkedData { a, b, chi }) })
    }

    /// `lambda` lists (i, j, λ_ij); missing λ_ji are filled in as -χ_i(a_j) λ_ij.
    pub fn general(
        orders: Vec<u32>,
        a: Vec<GroupElem>,
        chi: Vec<Character>,
        mu: Vec<Option<FieldElem>>,
        lambda: Vec<(usize, usize, FieldElem)>,
    ) -> Result<Self, DatumError> {
        let group = AbelianGroup::new(orders)?;
        let n = a.len();
        if chi.len() != n || mu.len() != n {
            return Err(DatumError::Structure("aa, cchi and mu must have the same length".into()));
        }
        if n == 0 || n > MAX_SLOTS {
            return Err(DatumError::Structure(format!("number of generators must be between 1 and {MAX_SLOTS}")));
        }
        let field = CyclotomicField::new(group.exponent()).map_err(|e| DatumError::Structure(e.to_string()))?;
        let a = a.iter().map(|g| group.id_of(g)).collect::<Result<Vec<_>, _>>()?;
        let chi = chi.iter().map(|c| group.char_id(c)).collect::<Result<Vec<_>, _>>()?;
        let mu = mu.into_iter().map(|m| m.unwrap_or_else(|| field.zero())).collect();
        let mut given = vec![vec![None; n]; n];
        for (i, j, v) in lambda {
            if i >= n || j >= n || i == j {
                return Err(DatumError::Structure(format!("linking scalar index ({}, {}) out of range", i + 1, j + 1)));
            }
            given[i][j] = Some(v);
        }
        let mut lam = vec![vec![field.zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                lam[i][j] = match (&given[i][j], &given[j][i]) {
                    (Some(v), _) => v.clone(),
                    (None, Some(w)) => {
                        // λ_ij = -q_ij λ_ji with q_ij = χ_j(a_i)
                        let q = field.root_of_unity(group.pair(chi[j], a[i]) as i64);
                        -(q * w)
                    }
                    (None, None) => field.zero(),
                };
            }
        }
        Ok(Datum { group, field, kind: DatumKind::General(GeneralData { a, chi, mu, lambda: lam }) })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn kind(&self) -> &DatumKind {
        &self.kind
    }

    pub fn is_linked(&self) -> bool {
        matches!(self.kind, DatumKind::Linked(_))
    }

    fn linked_data(&self) -> &LinkedData {
        match &self.kind {
            DatumKind::Linked(l) => l,
            DatumKind::General(_) => panic!("operation requires a linked datum"),
        }
    }

    /// Number of linked pairs n (linked data only).
    pub fn n(&self) -> usize {
        self.linked_data().a.len()
    }

    /// Number of skew-primitive generators.
    pub fn num_generators(&self) -> usize {
        match &self.kind {
            DatumKind::Linked(l) => 2 * l.a.len(),
            DatumKind::General(g) => g.a.len(),
        }
    }

    pub fn a(&self, i: usize) -> ElemId {
        self.linked_data().a[i]
    }

    pub fn b(&self, i: usize) -> ElemId {
        self.linked_data().b[i]
    }

    pub fn chi(&self, i: usize) -> CharId {
        self.linked_data().chi[i]
    }

    /// Grouplike and character of the k-th generator in the uniform numbering
    /// (for linked data: x_1..x_n, then y_1..y_n).
    pub fn generator(&self, k: usize) -> (ElemId, CharId) {
        match &self.kind {
            DatumKind::Linked(l) => {
                let n = l.a.len();
                if k < n {
                    (l.a[k], l.chi[k])
                } else {
                    (l.b[k - n], self.group.char_inv(l.chi[k - n]))
                }
            }
            DatumKind::General(g) => (g.a[k], g.chi[k]),
        }
    }

    /// χ(g) as a field element.
    pub fn eval(&self, chi: CharId, g: ElemId) -> FieldElem {
        self.field.root_of_unity(self.group.pair(chi, g) as i64)
    }

    /// λ(g γ) for a character λ of Γ.
    pub fn eval_gamma(&self, lam: &GammaChar, g: ElemId, gamma: CharId) -> FieldElem {
        let k = self.group.pair(lam.chi, g) + self.group.pair(gamma, lam.h);
        self.field.root_of_unity(k as i64)
    }

    /// Exponent k_i with q_i = χ_i(a_i) = ζ^{k_i}, for generator k in uniform numbering.
    pub fn q_exponent_of(&self, k: usize) -> u32 {
        let (a, chi) = self.generator(k);
        self.group.pair(chi, a)
    }

    /// q_i = χ_i(a_i) for the i-th linked pair.
    pub fn q(&self, i: usize) -> FieldElem {
        self.field.root_of_unity(self.q_exponent_of(i) as i64)
    }

    pub fn q_exponent(&self, i: usize) -> u32 {
        self.q_exponent_of(i)
    }

    /// Order of q for generator k in uniform numbering.
    pub fn order_of(&self, k: usize) -> u32 {
        let e = self.q_exponent_of(k);
        let n = self.group.exponent();
        n / num_integer::gcd(n, e)
    }

    /// m_i, the order of q_i.
    pub fn m(&self, i: usize) -> u32 {
        self.order_of(i)
    }

    pub fn ms(&self) -> Vec<u32> {
        (0..self.n()).map(|i| self.m(i)).collect()
    }

    /// q_ij = χ_j(a_i), for linked pairs.
    pub fn q_pair(&self, i: usize, j: usize) -> FieldElem {
        self.eval(self.chi(j), self.a(i))
    }

    pub fn ab(&self, i: usize) -> ElemId {
        self.group.mul(self.a(i), self.b(i))
    }

    pub fn validate(&self) -> ValidationReport {
        let g = &self.group;
        let mut checks = Vec::new();
        let mut push = |name: &'static str, offending: Vec<Vec<usize>>| {
            checks.push(Check { name, passed: offending.is_empty(), offending });
        };
        match &self.kind {
            DatumKind::Linked(l) => {
                let n = l.a.len();
                let pairs = || (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)));
                push(
                    "nontrivial_product",
                    (0..n).filter(|&i| g.mul(l.a[i], l.b[i]) == g.identity()).map(|i| vec![i]).collect(),
                );
                push(
                    "character_link",
                    pairs().filter(|&(i, j)| g.pair(l.chi[j], l.a[i]) != g.pair(l.chi[i], l.b[j])).map(|(i, j)| vec![i, j]).collect(),
                );
                let nn = g.exponent();
                push(
                    "braiding_a",
                    pairs()
                        .filter(|&(i, j)| i < j && (g.pair(l.chi[i], l.a[j]) + g.pair(l.chi[j], l.a[i])) % nn != 0)
                        .map(|(i, j)| vec![i, j])
                        .collect(),
                );
                push(
                    "braiding_b",
                    pairs()
                        .filter(|&(i, j)| i < j && (g.pair(l.chi[i], l.b[j]) + g.pair(l.chi[j], l.b[i])) % nn != 0)
                        .map(|(i, j)| vec![i, j])
                        .collect(),
                );
                push("root_order", (0..n).filter(|&i| self.m(i) < 2).map(|i| vec![i]).collect());
            }
            DatumKind::General(d) => {
                let n = d.a.len();
                let nn = g.exponent();
                let pairs = || (0..n).flat_map(move |i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j);
                push(
                    "braiding",
                    pairs()
                        .filter(|&(i, j)| i < j && (g.pair(d.chi[i], d.a[j]) + g.pair(d.chi[j], d.a[i])) % nn != 0)
                        .map(|(i, j)| vec![i, j])
                        .collect(),
                );
                push("root_order", (0..n).filter(|&i| self.order_of(i) < 2).map(|i| vec![i]).collect());
                push(
                    "root_vector_scalars",
                    (0..n)
                        .filter(|&i| {
                            let m = self.order_of(i) as i64;
                            let trivial = g.pow(d.a[i], m) == g.identity() || g.char_pow(d.chi[i], m) != g.trivial_char();
                            trivial && !d.mu[i].is_zero()
                        })
                        .map(|i| vec![i])
                        .collect(),
                );
                push(
                    "linking_scalars",
                    pairs()
                        .filter(|&(i, j)| {
                            let trivial = g.mul(d.a[i], d.a[j]) == g.identity()
                                || g.char_mul(d.chi[i], d.chi[j]) != g.trivial_char();
                            trivial && !d.lambda[i][j].is_zero()
                        })
                        .map(|(i, j)| vec![i, j])
                        .collect(),
                );
                push(
                    "linking_symmetry",
                    pairs()
                        .filter(|&(i, j)| {
                            // λ_ji = -q_ji λ_ij, q_ji = χ_i(a_j)
                            let q = self.eval(d.chi[i], d.a[j]);
                            d.lambda[j][i] != -(q * &d.lambda[i][j])
                        })
                        .map(|(i, j)| vec![i, j])
                        .collect(),
                );
            }
        }
        ValidationReport { checks }
    }

    pub fn ensure_valid(&self) -> Result<(), DatumError> {
        let r = self.validate();
        if r.is_valid() {
            Ok(())
        } else {
            Err(DatumError::Invalid(r.failures()))
        }
    }

    /// Brings a general datum with a perfect-matching linking graph and
    /// vanishing μ into linked form. Linked data are returned unchanged.
    pub fn normalize(&self) -> Result<Normalization, DatumError> {
        let d = match &self.kind {
            DatumKind::Linked(l) => {
                let n = l.a.len();
                return Ok(Normalization {
                    datum: self.clone(),
                    x_source: (0..n).collect(),
                    y_source: (n..2 * n).collect(),
                    scale: vec![self.field.one(); n],
                });
            }
            DatumKind::General(d) => d,
        };
        self.ensure_valid()?;
        let n = d.a.len();
        if let Some(i) = (0..n).find(|&i| !d.mu[i].is_zero()) {
            return Err(DatumError::Normalize(format!("root vector scalar mu.{} is nonzero", i + 1)));
        }
        let mut partner = vec![None; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && !d.lambda[i][j].is_zero() {
                    if partner[i].is_some() {
                        return Err(DatumError::Normalize(format!("generator {} is linked more than once", i + 1)));
                    }
                    partner[i] = Some(j);
                }
            }
        }
        let mut x_source = vec![];
        let mut y_source = vec![];
        let mut scale = vec![];
        for i in 0..n {
            match partner[i] {
                None => return Err(DatumError::Normalize(format!("generator {} is not linked", i + 1))),
                Some(j) if j > i => {
                    x_source.push(i);
                    y_source.push(j);
                    scale.push(d.lambda[i][j].clone());
                }
                Some(_) => {}
            }
        }
        let g = &self.group;
        let a = x_source.iter().map(|&i| g.elem(d.a[i])).collect();
        let b = y_source.iter().map(|&j| g.elem(d.a[j])).collect();
        let chi = x_source.iter().map(|&i| g.character(d.chi[i])).collect();
        let datum = Datum::linked(g.orders().to_vec(), a, b, chi)?;
        datum.ensure_valid()?;
        Ok(Normalization { datum, x_source, y_source, scale })
    }

    /// Π (a_i b_i)^{t_i} ≠ 1 for every nonzero t with t_i ∈ {0, m_i/2}, m_i even.
    pub fn is_half_clean(&self) -> bool {
        let g = &self.group;
        let evens: Vec<usize> = (0..self.n()).filter(|&i| self.m(i) % 2 == 0).collect();
        for mask in 1u32..(1 << evens.len()) {
            let mut acc = g.identity();
            for (bit, &i) in evens.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    acc = g.mul(acc, g.pow(self.ab(i), (self.m(i) / 2) as i64));
                }
            }
            if acc == g.identity() {
                return false;
            }
        }
        true
    }

    /// All m_i odd, or |⟨a_1, b_1, …, a_n, b_n⟩| = Π |a_i| |b_i|.
    pub fn is_classical(&self) -> bool {
        if (0..self.n()).all(|i| self.m(i) % 2 == 1) {
            return true;
        }
        let g = &self.group;
        let gens: Vec<ElemId> = (0..self.n()).flat_map(|i| [self.a(i), self.b(i)]).collect();
        let product: usize = gens.iter().map(|&x| g.elem_order_id(x) as usize).product();
        g.subgroup_order(&gens) == product
    }

    /// Solves ζ^x = q_j^{-e} for e in [0, m_j - 2].
    fn singular_exponent(&self, j: usize, x: u32) -> Option<u32> {
        let nn = self.group.exponent() as i64;
        let k = self.q_exponent(j) as i64;
        (0..self.m(j).saturating_sub(1)).find(|&e| (x as i64 + e as i64 * k).rem_euclid(nn) == 0)
    }

    pub fn singular_h(&self, gamma: CharId) -> SingularH {
        let e = (0..self.n()).map(|j| self.singular_exponent(j, self.group.pair(gamma, self.ab(j)))).collect();
        SingularH { e }
    }

    pub fn singular_d(&self, lam: &GammaChar) -> SingularD {
        let g = &self.group;
        let nn = g.exponent();
        let mut e1 = vec![];
        let mut e2 = vec![];
        for j in 0..self.n() {
            let chi_h = g.pair(self.chi(j), lam.h);
            // λ(a_j χ_j^{-1}) and λ(b_j χ_j)
            let x1 = (g.pair(lam.chi, self.a(j)) + nn - chi_h) % nn;
            let x2 = (g.pair(lam.chi, self.b(j)) + chi_h) % nn;
            e1.push(self.singular_exponent(j, x1));
            e2.push(self.singular_exponent(j, x2));
        }
        SingularD { e1, e2 }
    }

    /// c_k^m(γ) = Π_{p=1}^{m} (q_k^{m-p} γ(a_k b_k) - 1).
    pub fn c_function(&self, k: usize, m: u32, gamma: CharId) -> FieldElem {
        let q = self.q(k);
        let gab = self.eval(gamma, self.ab(k));
        (1..=m).fold(self.field.one(), |acc, p| {
            let t = q.pow((m - p) as i64).expect("root of unity") * &gab - self.field.one();
            acc * t
        })
    }

    /// All characters of Γ = G × Ĝ in index order.
    pub fn gamma_chars(&self) -> Vec<GammaChar> {
        let g = &self.group;
        g.characters().flat_map(|chi| g.elements().map(move |h| GammaChar { chi, h })).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        for (name, d) in fixtures::all() {
            assert!(d.validate().is_valid(), "{name}: {}", d.validate().failures());
        }
    }

    #[test]
    fn fixture_predicates() {
        let e1 = fixtures::e1();
        assert_eq!(e1.q(0), e1.field().from_int(-1));
        assert_eq!(e1.m(0), 2);
        assert!(e1.is_half_clean() && e1.is_classical());
        let e2 = fixtures::e2();
        assert_eq!(e2.m(0), 3);
        assert!(e2.is_half_clean() && e2.is_classical());
        let e3 = fixtures::e3();
        assert_eq!(e3.m(0), 4);
        assert!(!e3.is_half_clean() && !e3.is_classical());
        let e4 = fixtures::e4();
        assert!(e4.is_half_clean() && e4.is_classical());
    }

    #[test]
    fn broken_link_is_reported() {
        // χ(a) = -1 but χ(b) = 1
        let d = Datum::linked(
            vec![2, 2],
            vec![GroupElem { exps: vec![1, 0] }],
            vec![GroupElem { exps: vec![0, 1] }],
            vec![Character { exps: vec![1, 0] }],
        )
        .unwrap();
        let r = d.validate();
        assert!(!r.is_valid());
        let link = r.checks.iter().find(|c| c.name == "character_link").unwrap();
        assert_eq!(link.offending, vec![vec![0, 0]]);
    }

    #[test]
    fn e1_singular_sets() {
        let d = fixtures::e1();
        let g = d.group();
        // γ(ab) = 1 = q^0 for γ = ε
        assert_eq!(d.singular_h(g.trivial_char()).e, vec![Some(0)]);
        let gamma = g.char_id(&Character { exps: vec![1, 0] }).unwrap();
        assert_eq!(d.singular_h(gamma).e, vec![None]);
    }
}
