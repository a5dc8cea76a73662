//! The four reference data shipped with the crate.

use super::{parse_datum, Datum};

pub const E1_TEXT: &str = include_str!("../../fixtures/e1.datum");
pub const E2_TEXT: &str = include_str!("../../fixtures/e2.datum");
pub const E3_TEXT: &str = include_str!("../../fixtures/e3.datum");
pub const E4_TEXT: &str = include_str!("../../fixtures/e4.datum");

/// Z2 × Z2, a = (1,0), b = (0,1), χ = (1,1); q = -1, m = 2.
pub fn e1() -> Datum {
    parse_datum(E1_TEXT).expect("e1 fixture parses")
}

/// Z3 with a = b = c and χ(c) = ζ_3; m = 3.
pub fn e2() -> Datum {
    parse_datum(E2_TEXT).expect("e2 fixture parses")
}

/// Z4 with a = b = c and χ(c) = ζ_4; m = 4, neither half-clean nor classical.
pub fn e3() -> Datum {
    parse_datum(E3_TEXT).expect("e3 fixture parses")
}

/// (Z2)^4 with two linked pairs on the standard generators.
pub fn e4() -> Datum {
    parse_datum(E4_TEXT).expect("e4 fixture parses")
}

pub fn all() -> Vec<(&'static str, Datum)> {
    vec![("e1", e1()), ("e2", e2()), ("e3", e3()), ("e4", e4())]
}

pub fn by_name(name: &str) -> Option<Datum> {
    match name {
        "e1" => Some(e1()),
        "e2" => Some(e2()),
        "e3" => Some(e3()),
        "e4" => Some(e4()),
        _ => None,
    }
}
