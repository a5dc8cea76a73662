//! Brute-force module theory over an exact field.
//!
//! A module is a list of generator matrices. The action algebra B is the
//! span of all products of generators; its Jacobson radical is the radical of
//! the trace form Tr(bb') (characteristic zero). Radical and socle series,
//! layers and their simple summands are all derived from these.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cyclo::{Field, FieldElem, FieldExt};
use crate::linalg::{Matrix, Subspace, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("weight spaces are not one-dimensional")]
    WeightSpacesNotSimple,
    #[error("torus generator is not diagonalizable over the field")]
    NotDiagonalizable,
}

/// Joint eigenvalue exponents (ζ_N^k) of the torus generators.
pub type Weight = Vec<u32>;

#[derive(Clone, Debug)]
pub struct ModuleRep {
    field: Field,
    dim: usize,
    gens: Vec<Matrix>,
    /// Indices of commuting diagonalizable generators of finite order.
    torus: Vec<usize>,
    /// Indices of generators that kill primitive vectors.
    lowering: Vec<usize>,
}

/// A composition factor: dimension and weight of its primitive line.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    pub dim: usize,
    pub weight: Weight,
}

pub struct ActionAlgebra {
    pub basis: Vec<Matrix>,
    pub radical: Vec<Matrix>,
}

impl ModuleRep {
    pub fn new(field: &Field, dim: usize, gens: Vec<Matrix>, torus: Vec<usize>, lowering: Vec<usize>) -> Result<Self, ModError> {
        for g in &gens {
            if g.rows() != dim || g.cols() != dim {
                return Err(ModError::DimensionMismatch { expected: dim, found: g.rows().max(g.cols()) });
            }
        }
        Ok(ModuleRep { field: field.clone(), dim, gens, torus, lowering })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn zero_sub(&self) -> Subspace {
        Subspace::new(&self.field, self.dim)
    }

    pub fn whole(&self) -> Subspace {
        Subspace::whole(&self.field, self.dim)
    }

    pub fn unit(&self, i: usize) -> Vector {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    /// Smallest generator-stable subspace containing the seeds.
    pub fn span_closure(&self, seeds: &[Vector]) -> Result<Subspace, ModError> {
        let mut s = self.zero_sub();
        let mut queue = vec![];
        for v in seeds {
            if v.len() != self.dim {
                return Err(ModError::DimensionMismatch { expected: self.dim, found: v.len() });
            }
            if s.insert(v.clone()) {
                queue.push(v.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for g in &self.gens {
                let w = g.mul_vec(&v);
                if s.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        Ok(s)
    }

    pub fn closure_of(&self, sub: &Subspace) -> Subspace {
        self.span_closure(sub.basis()).expect("same ambient dimension")
    }

    pub fn is_submodule(&self, sub: &Subspace) -> bool {
        sub.basis().iter().all(|v| self.gens.iter().all(|g| sub.contains(&g.mul_vec(v))))
    }

    /// A basis of the algebra generated by the action matrices, together
    /// with the radical of its trace form.
    pub fn action_algebra(&self) -> ActionAlgebra {
        let d = self.dim;
        let mut space = Subspace::new(&self.field, d * d);
        let mut basis = vec![];
        let id = Matrix::identity(&self.field, d);
        space.insert(id.as_vector().to_vec());
        basis.push(id.clone());
        let mut queue = vec![id];
        'closure: while let Some(b) = queue.pop() {
            for g in &self.gens {
                let p = g.mul(&b);
                if space.insert(p.as_vector().to_vec()) {
                    basis.push(p.clone());
                    if basis.len() == d * d {
                        break 'closure;
                    }
                    queue.push(p);
                }
            }
        }
        // the full matrix algebra is simple
        let radical = if basis.len() == d * d { vec![] } else { trace_radical(&self.field, &basis) };
        ActionAlgebra { basis, radical }
    }

    /// J(B)·sub.
    pub fn apply_all(&self, ops: &[Matrix], sub: &Subspace) -> Subspace {
        let mut s = self.zero_sub();
        for r in ops {
            for v in sub.basis() {
                s.insert(r.mul_vec(v));
            }
        }
        s
    }

    /// M ⊃ R(M) ⊃ R²(M) ⊃ … ⊃ 0, ending with the zero submodule.
    pub fn radical_series(&self, alg: &ActionAlgebra) -> Vec<Subspace> {
        let mut out = vec![self.whole()];
        loop {
            let last = out.last().expect("nonempty");
            if last.dim() == 0 {
                break;
            }
            let next = self.apply_all(&alg.radical, last);
            assert!(next.dim() < last.dim(), "radical of a nonzero module is proper");
            out.push(next);
        }
        out
    }

    /// {v : r v ∈ base for every r in the radical}.
    fn socle_over(&self, alg: &ActionAlgebra, base: &Subspace) -> Subspace {
        let d = self.dim;
        // linear map F^d -> F^d reducing modulo base
        let cols: Vec<Vector> = (0..d).map(|i| base.reduce(&self.unit(i))).collect();
        let q = Matrix::from_columns(&self.field, d, &cols);
        let mut rows = vec![];
        for r in &alg.radical {
            let qr = q.mul(r);
            for i in 0..d {
                rows.push(qr.row(i));
            }
        }
        if rows.is_empty() {
            return self.whole();
        }
        let m = Matrix::from_rows(&self.field, d, &rows);
        Subspace::spanned_by(&self.field, d, m.kernel(&self.field))
    }

    /// 0 ⊂ Soc ⊂ Soc² ⊂ … ⊂ M, starting with the zero submodule.
    pub fn socle_series(&self, alg: &ActionAlgebra) -> Vec<Subspace> {
        let mut out = vec![self.zero_sub()];
        loop {
            let last = out.last().expect("nonempty");
            if last.dim() == self.dim {
                break;
            }
            let next = self.socle_over(alg, last);
            assert!(next.dim() > last.dim(), "socle of a nonzero module is nonzero");
            out.push(next);
        }
        out
    }

    /// The module sub/quot for submodules quot ⊆ sub, with the lifts of its
    /// basis vectors.
    pub fn subquotient(&self, sub: &Subspace, quot: &Subspace) -> (ModuleRep, Vec<Vector>) {
        let red = Subspace::spanned_by(&self.field, self.dim, sub.basis().iter().map(|v| quot.reduce(v)));
        let k = red.dim();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let cols: Vec<Vector> = red.basis().iter().map(|b| red.coordinates(&quot.reduce(&g.mul_vec(b)))).collect();
                Matrix::from_columns(&self.field, k, &cols)
            })
            .collect();
        let m = ModuleRep { field: self.field.clone(), dim: k, gens, torus: self.torus.clone(), lowering: self.lowering.clone() };
        (m, red.basis().to_vec())
    }

    /// Dimension of End_B(M), the commutant of the action.
    pub fn endomorphism_dim(&self) -> usize {
        let d = self.dim;
        if d == 0 {
            return 0;
        }
        // unknown X (d×d, row-major); equations X A - A X = 0. The identity is
        // always a solution, so the system stops growing at rank d² - 1.
        let mut rows = Subspace::new(&self.field, d * d);
        for a in &self.gens {
            for i in 0..d {
                for j in 0..d {
                    let mut row = vec![self.field.zero(); d * d];
                    for k in 0..d {
                        // (XA)_{ij} = Σ_k X_{ik} A_{kj}
                        let akj = a.get(k, j);
                        if !akj.is_zero() {
                            row[i * d + k] += akj;
                        }
                        // (AX)_{ij} = Σ_k A_{ik} X_{kj}
                        let aik = a.get(i, k);
                        if !aik.is_zero() {
                            row[k * d + j] -= aik;
                        }
                    }
                    rows.insert(row);
                    if rows.dim() + 1 == d * d {
                        return 1;
                    }
                }
            }
        }
        d * d - rows.dim()
    }

    /// Whether the module is simple with scalar endomorphisms.
    pub fn is_absolutely_simple(&self) -> bool {
        self.dim > 0 && self.endomorphism_dim() == 1
    }

    /// M has a unique maximal submodule iff its top M/R(M) is simple; the
    /// top is tested for absolute simplicity.
    pub fn has_unique_maximal(&self, alg: &ActionAlgebra) -> bool {
        let r = self.apply_all(&alg.radical, &self.whole());
        let (top, _) = self.subquotient(&self.whole(), &r);
        top.is_absolutely_simple()
    }

    /// Vectors killed by every lowering generator.
    pub fn primitive_space(&self) -> Subspace {
        let d = self.dim;
        let rows: Vec<Vector> = self.lowering.iter().flat_map(|&i| (0..d).map(move |r| self.gens[i].row(r))).collect();
        if rows.is_empty() {
            return self.whole();
        }
        Subspace::spanned_by(&self.field, d, Matrix::from_rows(&self.field, d, &rows).kernel(&self.field))
    }

    /// Joint eigenspaces of the torus generators inside `within`, keyed by
    /// the eigenvalue exponents.
    pub fn weight_spaces(&self, within: &Subspace) -> Result<BTreeMap<Weight, Subspace>, ModError> {
        let n = self.field.conductor();
        let mut parts: BTreeMap<Weight, Subspace> = BTreeMap::new();
        parts.insert(vec![], within.clone());
        for &t in &self.torus {
            let mut next = BTreeMap::new();
            for (w, space) in parts {
                let mut total = 0;
                for k in 0..n {
                    let shifted = self.gens[t].sub(&Matrix::identity(&self.field, self.dim).scale(&self.field.root_of_unity(k as i64)));
                    let e = intersect_kernel(&self.field, &shifted, &space);
                    if e.dim() > 0 {
                        total += e.dim();
                        let mut w2 = w.clone();
                        w2.push(k);
                        next.insert(w2, e);
                    }
                }
                if total != space.dim() {
                    return Err(ModError::NotDiagonalizable);
                }
            }
            parts = next;
        }
        Ok(parts)
    }

    /// Weight of a weight vector.
    pub fn weight_of(&self, v: &[FieldElem]) -> Option<Weight> {
        let p = v.iter().position(|x| !x.is_zero())?;
        self.torus
            .iter()
            .map(|&t| {
                let w = self.gens[t].mul_vec(v);
                let ratio = w[p].try_div(&v[p]).ok()?;
                let k = ratio.root_exponent()?;
                (w == v.iter().map(|x| x * &ratio).collect::<Vec<_>>()).then_some(k)
            })
            .collect()
    }

    /// Splits a semisimple module into simple summands by primitive weight
    /// lines: each primitive weight space of dimension p contributes p copies
    /// of the simple generated by any of its vectors.
    pub fn semisimple_factors(&self) -> Result<Vec<Factor>, ModError> {
        let prim = self.primitive_space();
        let mut out = vec![];
        let mut total = self.zero_sub();
        for (weight, space) in self.weight_spaces(&prim)? {
            let first = self.span_closure(&space.basis()[..1])?;
            let all = self.closure_of(&space);
            total = total.sum(&all);
            for _ in 0..space.dim() {
                out.push(Factor { dim: first.dim(), weight: weight.clone() });
            }
            if all.dim() != first.dim() * space.dim() {
                return Err(ModError::DimensionMismatch { expected: first.dim() * space.dim(), found: all.dim() });
            }
        }
        if total.dim() != self.dim {
            return Err(ModError::DimensionMismatch { expected: self.dim, found: total.dim() });
        }
        out.sort();
        Ok(out)
    }

    /// Composition factors of each layer of a descending filtration.
    pub fn layer_factors(&self, series: &[Subspace]) -> Result<Vec<Vec<Factor>>, ModError> {
        series
            .windows(2)
            .map(|w| {
                let (layer, _) = self.subquotient(&w[0], &w[1]);
                layer.semisimple_factors()
            })
            .collect()
    }

    /// Whether no two composition factors share dimension and weight.
    pub fn is_multiplicity_free(layers: &[Vec<Factor>]) -> bool {
        let mut all: Vec<&Factor> = layers.iter().flatten().collect();
        let n = all.len();
        all.sort();
        all.dedup();
        all.len() == n
    }

    /// Cyclic submodules generated by the weight lines, deduplicated.
    pub fn local_submodules(&self) -> Result<Vec<Subspace>, ModError> {
        let spaces = self.weight_spaces(&self.whole())?;
        if spaces.values().any(|s| s.dim() != 1) {
            return Err(ModError::WeightSpacesNotSimple);
        }
        let mut out: Vec<Subspace> = vec![];
        for s in spaces.values() {
            let c = self.closure_of(s);
            if !out.contains(&c) {
                out.push(c);
            }
        }
        Ok(out)
    }
}

/// Kernel of `m` restricted to the subspace `space`.
fn intersect_kernel(field: &Field, m: &Matrix, space: &Subspace) -> Subspace {
    let basis = space.basis();
    if basis.is_empty() {
        return space.clone();
    }
    let d = m.rows();
    // coefficients c with m(Σ c_i b_i) = 0
    let images: Vec<Vector> = basis.iter().map(|b| m.mul_vec(b)).collect();
    let a = Matrix::from_columns(field, d, &images);
    let coeffs = a.kernel(field);
    Subspace::spanned_by(
        field,
        space.ambient(),
        coeffs.into_iter().map(|c| {
            let mut v = vec![field.zero(); space.ambient()];
            for (ci, b) in c.iter().zip(basis) {
                if ci.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(b) {
                    *x += &(ci * y);
                }
            }
            v
        }),
    )
}

/// Radical of the trace form on the span of `basis`.
pub fn trace_radical(field: &Field, basis: &[Matrix]) -> Vec<Matrix> {
    let k = basis.len();
    if k == 0 {
        return vec![];
    }
    let transposed: Vec<Matrix> = basis.iter().map(|b| b.transpose()).collect();
    let mut gram = Matrix::zero(field, k, k);
    for i in 0..k {
        for j in i..k {
            // Tr(b_i b_j) = Σ (b_i)_{kl} (b_j)_{lk}
            let mut acc = field.zero();
            for (x, y) in basis[i].as_vector().iter().zip(transposed[j].as_vector()) {
                if !x.is_zero() && !y.is_zero() {
                    acc += &(x * y);
                }
            }
            gram.set(i, j, acc.clone());
            gram.set(j, i, acc);
        }
    }
    let d = basis[0].rows();
    gram.kernel(field)
        .into_iter()
        .map(|c| {
            let mut m = Matrix::zero(field, d, d);
            for (ci, b) in c.iter().zip(basis) {
                if !ci.is_zero() {
                    m = m.add(&b.scale(ci));
                }
            }
            m
        })
        .collect()
}

/// Whether a product of `len` radical elements always vanishes.
pub fn is_nilpotent_ideal(field: &Field, ideal: &[Matrix], dim: usize) -> bool {
    if ideal.is_empty() {
        return true;
    }
    let mut cur: Vec<Matrix> = ideal.to_vec();
    for _ in 0..dim {
        let mut span = Subspace::new(field, dim * dim);
        let mut next = vec![];
        for a in &cur {
            for b in ideal {
                let p = a.mul(b);
                if span.insert(p.as_vector().to_vec()) {
                    next.push(p);
                }
            }
        }
        if next.is_empty() {
            return true;
        }
        cur = next;
    }
    cur.iter().all(|m| m.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CyclotomicField;

    fn f() -> Field {
        CyclotomicField::new(1).unwrap()
    }

    fn mat(f: &Field, rows: &[&[i64]]) -> Matrix {
        let r: Vec<Vector> = rows.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect();
        Matrix::from_rows(f, r[0].len(), &r)
    }

    #[test]
    fn upper_triangular_radical() {
        let f = f();
        let m = ModuleRep::new(&f, 2, vec![mat(&f, &[&[1, 0], &[0, 0]]), mat(&f, &[&[0, 1], &[0, 0]])], vec![], vec![]).unwrap();
        let alg = m.action_algebra();
        assert_eq!(alg.basis.len(), 3);
        assert_eq!(alg.radical.len(), 1);
        assert!(is_nilpotent_ideal(&f, &alg.radical, 2));
        assert_eq!(m.radical_series(&alg).len(), 3);
        assert_eq!(m.socle_series(&alg).len(), 3);
    }

    #[test]
    fn full_matrix_algebra_is_semisimple() {
        let f = f();
        let m = ModuleRep::new(&f, 2, vec![mat(&f, &[&[0, 1], &[0, 0]]), mat(&f, &[&[0, 0], &[1, 0]])], vec![], vec![]).unwrap();
        let alg = m.action_algebra();
        assert_eq!(alg.basis.len(), 4);
        assert!(alg.radical.is_empty());
        assert!(m.is_absolutely_simple());
    }

    #[test]
    fn diagonal_algebra_dimension() {
        let f = f();
        let m = ModuleRep::new(&f, 3, vec![mat(&f, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]])], vec![], vec![]).unwrap();
        assert_eq!(m.action_algebra().basis.len(), 3);
        assert_eq!(m.endomorphism_dim(), 3);
    }

    #[test]
    fn closure_edge_cases() {
        let f = f();
        let m = ModuleRep::new(&f, 2, vec![mat(&f, &[&[0, 1], &[0, 0]])], vec![], vec![]).unwrap();
        assert_eq!(m.span_closure(&[vec![f.zero(), f.zero()]]).unwrap().dim(), 0);
        assert_eq!(m.span_closure(&[m.unit(1)]).unwrap().dim(), 2);
        assert_eq!(m.span_closure(&[m.unit(0)]).unwrap().dim(), 1);
        assert!(m.span_closure(&[vec![f.zero()]]).is_err());
    }
}
