//! Exact arithmetic in the cyclotomic field Q(ζ_N).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{φ(N)-1} with rational
//! coefficients; products are reduced modulo the cyclotomic polynomial Φ_N.

mod poly;
mod qnum;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use qnum::{q_binomial, q_factorial, q_number};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("element is not an N-th root of unity (N = {0})")]
    NotRootOfUnity(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields (conductors {0} and {1})")]
    ConductorMismatch(u32, u32),
    #[error("conductor must be positive")]
    BadConductor,
}

/// The field Q(ζ_N) together with its reduction tables.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u32,
    degree: usize,
    /// ζ^k in the power basis, for 0 <= k < N.
    powers: Vec<Vec<BigRational>>,
    /// Φ_N with rational coefficients, lowest degree first.
    modulus: Vec<BigRational>,
}

pub type Field = Arc<CyclotomicField>;

impl CyclotomicField {
    pub fn new(conductor: u32) -> Result<Field, FieldError> {
        if conductor == 0 {
            return Err(FieldError::BadConductor);
        }
        let phi = poly::cyclotomic_polynomial(conductor as usize);
        let degree = phi.len() - 1;
        let modulus: Vec<BigRational> =
            phi.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        let n = conductor as usize;
        let mut powers = Vec::with_capacity(n);
        let mut cur = vec![BigRational::zero(); degree];
        cur[0] = BigRational::one();
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by ζ: shift, then fold the top coefficient with x^φ = -Σ c_i x^i
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigRational::zero();
            if !top.is_zero() {
                for i in 0..degree {
                    cur[i] -= &top * &modulus[i];
                }
            }
        }
        Ok(Arc::new(CyclotomicField { conductor, degree, powers, modulus }))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[BigRational] {
        &self.modulus
    }

    fn reduce_exponent_table(&self, acc: Vec<BigRational>) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = acc[..self.degree].to_vec();
        for (k, c) in acc.into_iter().enumerate().skip(self.degree) {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&self.powers[k]) {
                if !p.is_zero() {
                    *o += &c * p;
                }
            }
        }
        out
    }
}

pub trait FieldExt {
    fn zero(&self) -> FieldElem;
    fn one(&self) -> FieldElem;
    fn from_int(&self, v: i64) -> FieldElem;
    fn from_rational(&self, v: BigRational) -> FieldElem;
    /// ζ_N^k for any integer k.
    fn root_of_unity(&self, k: i64) -> FieldElem;
    fn from_coeffs(&self, coeffs: Vec<BigRational>) -> FieldElem;
}

impl FieldExt for Field {
    fn zero(&self) -> FieldElem {
        FieldElem { field: self.clone(), coeffs: vec![BigRational::zero(); self.degree] }
    }

    fn one(&self) -> FieldElem {
        self.root_of_unity(0)
    }

    fn from_int(&self, v: i64) -> FieldElem {
        self.from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    fn from_rational(&self, v: BigRational) -> FieldElem {
        let mut e = self.zero();
        e.coeffs[0] = v;
        e
    }

    fn root_of_unity(&self, k: i64) -> FieldElem {
        let n = self.conductor as i64;
        let idx = k.rem_euclid(n) as usize;
        FieldElem { field: self.clone(), coeffs: self.powers[idx].clone() }
    }

    fn from_coeffs(&self, mut coeffs: Vec<BigRational>) -> FieldElem {
        if coeffs.len() > self.degree {
            // treat as a polynomial in ζ and reduce
            let mut acc = vec![BigRational::zero(); self.conductor as usize];
            let n = self.conductor as usize;
            for (i, c) in coeffs.into_iter().enumerate() {
                acc[i % n] += c;
            }
            if acc.len() < self.degree {
                acc.resize(self.degree, BigRational::zero());
            }
            coeffs = self.reduce_exponent_table(acc);
        } else {
            coeffs.resize(self.degree, BigRational::zero());
        }
        FieldElem { field: self.clone(), coeffs }
    }
}

/// An element of Q(ζ_N).
#[derive(Clone)]
pub struct FieldElem {
    field: Field,
    coeffs: Vec<BigRational>,
}

impl FieldElem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn check(&self, other: &FieldElem) -> Result<(), FieldError> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field.conductor == other.field.conductor {
            Ok(())
        } else {
            Err(FieldError::ConductorMismatch(self.field.conductor, other.field.conductor))
        }
    }

    pub fn try_add(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(FieldElem { field: self.field.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(FieldElem { field: self.field.clone(), coeffs })
    }

    pub fn try_mul(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(other)?;
        let f = &self.field;
        if self.is_rational() {
            let s = &self.coeffs[0];
            return Ok(FieldElem { field: f.clone(), coeffs: other.coeffs.iter().map(|c| s * c).collect() });
        }
        if other.is_rational() {
            let s = &other.coeffs[0];
            return Ok(FieldElem { field: f.clone(), coeffs: self.coeffs.iter().map(|c| c * s).collect() });
        }
        let n = f.conductor as usize;
        let mut acc = vec![BigRational::zero(); n.max(f.degree)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    acc[(i + j) % n] += a * b;
                }
            }
        }
        Ok(FieldElem { field: f.clone(), coeffs: f.reduce_exponent_table(acc) })
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_N.
    pub fn inv(&self) -> Result<FieldElem, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(self.field.from_rational(self.coeffs[0].recip()));
        }
        let s = poly::inverse_mod(&self.coeffs, &self.field.modulus);
        Ok(self.field.from_coeffs(s))
    }

    pub fn try_div(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.try_mul(&other.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<FieldElem, FieldError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// The k in [0, N) with self = ζ_N^k, if self is an N-th root of unity.
    pub fn root_exponent(&self) -> Option<u32> {
        self.field.powers.iter().position(|p| *p == self.coeffs).map(|k| k as u32)
    }

    /// Whether self is a root of unity; these are ±ζ_N^k in Q(ζ_N).
    pub fn is_root_of_unity(&self) -> bool {
        self.root_exponent().is_some() || (-self.clone()).root_exponent().is_some()
    }

    /// Multiplicative order of a root of unity.
    pub fn order_of(&self) -> Result<u32, FieldError> {
        let n = self.field.conductor;
        let k = self.root_exponent().ok_or(FieldError::NotRootOfUnity(n))?;
        Ok(n / num_integer::gcd(n, k))
    }

    /// Coefficients rendered as `p/q` strings (or integers), power basis order.
    pub fn to_rational_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElem {}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(k) = self.root_exponent() {
            return match k {
                0 => write!(f, "1"),
                k if 2 * k == self.field.conductor => write!(f, "-1"),
                k => write!(f, "z^{}", k),
            };
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            match (i, abs.is_one()) {
                (0, _) => write!(f, "{}", abs)?,
                (_, true) => write!(f, "z^{}", i)?,
                (_, false) => write!(f, "{}*z^{}", abs, i)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                self.$try(rhs).expect("field operands from different conductors")
            }
        }
        impl $trait<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl AddAssign<&FieldElem> for FieldElem {
    fn add_assign(&mut self, rhs: &FieldElem) {
        assert_eq!(self.field.conductor, rhs.field.conductor, "conductor mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&FieldElem> for FieldElem {
    fn sub_assign(&mut self, rhs: &FieldElem) {
        assert_eq!(self.field.conductor, rhs.field.conductor, "conductor mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl MulAssign<&FieldElem> for FieldElem {
    fn mul_assign(&mut self, rhs: &FieldElem) {
        *self = &*self * rhs;
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(mut self) -> FieldElem {
        for c in self.coeffs.iter_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn zeta3_minimal_polynomial() {
        let f = CyclotomicField::new(3).unwrap();
        let z = f.root_of_unity(1);
        let s = &(&z * &z) + &z;
        assert_eq!(s + f.one(), f.zero());
    }

    #[test]
    fn inverse_of_one_plus_zeta4() {
        let f = CyclotomicField::new(4).unwrap();
        let x = f.one() + f.root_of_unity(1);
        let inv = x.inv().unwrap();
        let expected = f.from_coeffs(vec![rat(1, 2), rat(-1, 2)]);
        assert_eq!(inv, expected);
        assert!((&x * &inv).is_one());
    }

    #[test]
    fn order_of_roots() {
        let f = CyclotomicField::new(4).unwrap();
        assert_eq!(f.root_of_unity(2).order_of().unwrap(), 2);
        assert_eq!(f.root_of_unity(3).order_of().unwrap(), 4);
        assert_eq!(f.one().order_of().unwrap(), 1);
        assert_eq!(f.from_int(2).order_of(), Err(FieldError::NotRootOfUnity(4)));
    }

    #[test]
    fn rational_field_for_conductor_two() {
        let f = CyclotomicField::new(2).unwrap();
        assert_eq!(f.degree(), 1);
        assert_eq!(f.root_of_unity(1), f.from_int(-1));
    }

    #[test]
    fn conductor_twelve_degree() {
        let f = CyclotomicField::new(12).unwrap();
        assert_eq!(f.degree(), 4);
        for k in 0..24 {
            let z = f.root_of_unity(k);
            assert!(z.pow(12).unwrap().is_one());
            assert_eq!(&z * &f.root_of_unity(-k), f.one());
        }
    }

    #[test]
    fn zero_has_no_inverse() {
        let f = CyclotomicField::new(5).unwrap();
        assert_eq!(f.zero().inv().unwrap_err(), FieldError::DivisionByZero);
    }
}
