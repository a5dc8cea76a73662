//! Quantum integers, q-factorials and Gaussian binomials evaluated in Q(ζ_N).

use super::{FieldElem, FieldExt};

/// (n)_q = 1 + q + … + q^{n-1}, extended to negative n by (n)_q = -q^n (-n)_q.
pub fn q_number(n: i64, q: &FieldElem) -> FieldElem {
    let f = q.field();
    if n < 0 {
        return -(q.pow(n).expect("q is invertible") * q_number(-n, q));
    }
    let mut acc = f.zero();
    let mut p = f.one();
    for _ in 0..n {
        acc += &p;
        p = &p * q;
    }
    acc
}

/// (n)_q! = (1)_q (2)_q ⋯ (n)_q.
pub fn q_factorial(n: u32, q: &FieldElem) -> FieldElem {
    (1..=n as i64).fold(q.field().one(), |acc, i| acc * q_number(i, q))
}

/// Gaussian binomial [n choose m]_q via the q-Pascal rule
/// [n, m] = [n-1, m-1] + q^m [n-1, m]; negative n uses
/// [n, m] = (-1)^m q^{nm - m(m-1)/2} [m-n-1, m].
pub fn q_binomial(n: i64, m: i64, q: &FieldElem) -> FieldElem {
    let f = q.field();
    if m < 0 {
        return f.zero();
    }
    if n < 0 {
        let sign = if m % 2 == 0 { f.one() } else { -f.one() };
        let e = n * m - m * (m - 1) / 2;
        return sign * q.pow(e).expect("q is invertible") * q_binomial(m - n - 1, m, q);
    }
    if m > n {
        return f.zero();
    }
    let (n, m) = (n as usize, m as usize);
    // row[k] = [r, k] for the current row r
    let mut row = vec![f.zero(); m + 1];
    row[0] = f.one();
    let qpows: Vec<FieldElem> = (0..=m as i64).map(|k| q.pow(k).expect("q is invertible")).collect();
    for r in 1..=n {
        for k in (1..=m.min(r)).rev() {
            let upd = &row[k - 1] + &(&qpows[k] * &row[k]);
            row[k] = upd;
        }
    }
    row[m].clone()
}
