//! Reader for the plain-text datum format.
//!
//! ```text
//! [group]
//! orders = 2,2
//! [datum]
//! n = 1
//! a.1 = 1,0
//! b.1 = 0,1
//! chi.1 = 1,1
//! ```
//!
//! General data use `generators = N` with `aa.<i>`, `cchi.<i>`, optional
//! `mu.<i>` and `lambda.<i>.<j>`. Scalars are `p/q` or `zeta:k`. Indices are
//! 1-based and `#` starts a comment.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Datum, DatumError};
use crate::cyclo::{CyclotomicField, FieldElem, FieldExt};
use crate::group::{Character, GroupElem};

struct Entry {
    line: usize,
    value: String,
}

fn err(line: usize, msg: impl Into<String>) -> DatumError {
    DatumError::Parse { line, msg: msg.into() }
}

fn parse_ints(e: &Entry) -> Result<Vec<i64>, DatumError> {
    e.value
        .split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| err(e.line, format!("expected integers, got `{}`", e.value))))
        .collect()
}

fn parse_count(e: &Entry) -> Result<usize, DatumError> {
    e.value.trim().parse::<usize>().map_err(|_| err(e.line, format!("expected a count, got `{}`", e.value)))
}

fn parse_scalar(e: &Entry, conductor: u32) -> Result<FieldElem, DatumError> {
    let field = CyclotomicField::new(conductor).map_err(|x| err(e.line, x.to_string()))?;
    let v = e.value.trim();
    if let Some(k) = v.strip_prefix("zeta:") {
        let k: i64 = k.trim().parse().map_err(|_| err(e.line, format!("bad root of unity `{v}`")))?;
        return Ok(field.root_of_unity(k));
    }
    let (p, q) = match v.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (v, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| err(e.line, format!("bad scalar `{v}`")))?;
    let q: BigInt = q.parse().map_err(|_| err(e.line, format!("bad scalar `{v}`")))?;
    if q == BigInt::from(0) {
        return Err(err(e.line, "zero denominator"));
    }
    Ok(field.from_rational(BigRational::new(p, q)))
}

pub fn parse_datum(text: &str) -> Result<Datum, DatumError> {
    let mut sections: BTreeMap<String, (usize, BTreeMap<String, Entry>)> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(name) = body.strip_prefix('[') {
            let name = name.strip_suffix(']').ok_or_else(|| err(line, "unterminated section header"))?.trim();
            if name != "group" && name != "datum" {
                return Err(err(line, format!("unknown section `{name}`")));
            }
            if sections.contains_key(name) {
                return Err(err(line, format!("duplicate section `{name}`")));
            }
            sections.insert(name.to_string(), (line, BTreeMap::new()));
            current = Some(name.to_string());
            continue;
        }
        let Some(sec) = &current else {
            return Err(err(line, "key outside of a section"));
        };
        let (k, v) = body.split_once('=').ok_or_else(|| err(line, "expected `key = value`"))?;
        let k = k.trim().to_string();
        let entries = &mut sections.get_mut(sec).expect("section exists").1;
        if entries.contains_key(&k) {
            return Err(err(line, format!("duplicate key `{k}`")));
        }
        entries.insert(k, Entry { line, value: v.trim().to_string() });
    }
    let (gline, group) = sections.remove("group").ok_or_else(|| err(0, "missing [group] section"))?;
    let (dline, mut datum) = sections.remove("datum").ok_or_else(|| err(0, "missing [datum] section"))?;
    let orders_entry = group.get("orders").ok_or_else(|| err(gline, "missing `orders`"))?;
    if let Some((k, e)) = group.iter().find(|(k, _)| k.as_str() != "orders") {
        return Err(err(e.line, format!("unknown key `{k}` in [group]")));
    }
    let orders: Vec<u32> = parse_ints(orders_entry)?
        .into_iter()
        .map(|d| u32::try_from(d).ok().filter(|&d| d > 0).ok_or_else(|| err(orders_entry.line, "orders must be positive")))
        .collect::<Result<_, _>>()?;
    let conductor = orders.iter().fold(1u32, |acc, &d| num_integer::lcm(acc, d));
    let vec_of = |e: &Entry| -> Result<Vec<u32>, DatumError> {
        let v = parse_ints(e)?;
        if v.len() != orders.len() {
            return Err(err(e.line, format!("expected {} components, got {}", orders.len(), v.len())));
        }
        Ok(v.iter().zip(&orders).map(|(&x, &d)| x.rem_euclid(d as i64) as u32).collect())
    };
    let mut take = |key: &str| datum.remove(key);

    let result = if let Some(gen) = take("generators") {
        let n = parse_count(&gen)?;
        let mut a = vec![];
        let mut chi = vec![];
        let mut mu = vec![];
        for i in 1..=n {
            let ae = take(&format!("aa.{i}")).ok_or_else(|| err(dline, format!("missing `aa.{i}`")))?;
            let ce = take(&format!("cchi.{i}")).ok_or_else(|| err(dline, format!("missing `cchi.{i}`")))?;
            a.push(GroupElem { exps: vec_of(&ae)? });
            chi.push(Character { exps: vec_of(&ce)? });
            mu.push(take(&format!("mu.{i}")).map(|e| parse_scalar(&e, conductor)).transpose()?);
        }
        let mut lambda = vec![];
        let keys: Vec<String> = datum.keys().filter(|k| k.starts_with("lambda.")).cloned().collect();
        for k in keys {
            let e = datum.remove(&k).expect("present");
            let parts: Vec<&str> = k.split('.').collect();
            let idx = |s: &str| s.parse::<usize>().ok().filter(|&i| i >= 1 && i <= n);
            let (Some(i), Some(j)) = (parts.get(1).and_then(|s| idx(s)), parts.get(2).and_then(|s| idx(s))) else {
                return Err(err(e.line, format!("bad linking key `{k}`")));
            };
            if parts.len() != 3 || i == j {
                return Err(err(e.line, format!("bad linking key `{k}`")));
            }
            lambda.push((i - 1, j - 1, parse_scalar(&e, conductor)?));
        }
        Datum::general(orders.clone(), a, chi, mu, lambda)
    } else {
        let ne = take("n").ok_or_else(|| err(dline, "missing `n` (or `generators`)"))?;
        let n = parse_count(&ne)?;
        let mut a = vec![];
        let mut b = vec![];
        let mut chi = vec![];
        for i in 1..=n {
            let ae = take(&format!("a.{i}")).ok_or_else(|| err(dline, format!("missing `a.{i}`")))?;
            let be = take(&format!("b.{i}")).ok_or_else(|| err(dline, format!("missing `b.{i}`")))?;
            let ce = take(&format!("chi.{i}")).ok_or_else(|| err(dline, format!("missing `chi.{i}`")))?;
            a.push(GroupElem { exps: vec_of(&ae)? });
            b.push(GroupElem { exps: vec_of(&be)? });
            chi.push(Character { exps: vec_of(&ce)? });
        }
        Datum::linked(orders.clone(), a, b, chi)
    };
    if let Some((k, e)) = datum.iter().next() {
        return Err(err(e.line, format!("unknown key `{k}` in [datum]")));
    }
    result.map_err(|e| match e {
        DatumError::Parse { .. } => e,
        other => err(dline, other.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_carries_line() {
        let text = "[group]\norders = 2,2\n[datum]\nn = 1\na.1 = 1,0\nb.1 = x\nchi.1 = 1,1\n";
        match parse_datum(text) {
            Err(DatumError::Parse { line, .. }) => assert_eq!(line, 6),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_key_points_at_section() {
        let text = "# header\n[group]\norders = 3\n\n[datum]\nn = 1\na.1 = 1\nchi.1 = 1\n";
        match parse_datum(text) {
            Err(DatumError::Parse { line, msg }) => {
                assert_eq!(line, 5);
                assert!(msg.contains("b.1"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn general_mode_with_scalars() {
        let text = "[group]\norders = 3\n[datum]\ngenerators = 2\naa.1 = 1\ncchi.1 = 1\naa.2 = 1\ncchi.2 = 2\nlambda.1.2 = zeta:1\n";
        let d = parse_datum(text).unwrap();
        assert!(d.validate().is_valid(), "{}", d.validate().failures());
        let norm = d.normalize().unwrap();
        assert_eq!(norm.datum.n(), 1);
        assert_eq!(norm.scale[0], d.field().root_of_unity(1));
    }

    #[test]
    fn bad_scalar_line() {
        let text = "[group]\norders = 3\n[datum]\ngenerators = 1\naa.1 = 1\ncchi.1 = 1\nmu.1 = 1/0\n";
        assert!(matches!(parse_datum(text), Err(DatumError::Parse { line: 7, .. })));
    }
}
