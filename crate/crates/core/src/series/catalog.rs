//! Built-in series.

use std::sync::OnceLock;

use crate::exact::rational::{int, rat};
use crate::exact::{Polynomial, Rational, RationalFunction};

use super::term::{BBPTerm, FactorialFactor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCatalogEntry {
    pub term: BBPTerm,
    pub constant_name: &'static str,
    /// Identifier of the published coefficient table in [`crate::tables`], if any.
    pub fixture: Option<&'static str>,
}

fn fractions(a: i64, p: u32, list: &[(i64, i64)]) -> RationalFunction {
    let terms: Vec<(Rational, Rational, Rational, u32)> = list
        .iter()
        .map(|&(coef, c)| (int(coef), int(a), int(c), p))
        .collect();
    RationalFunction::sum_of_simple_fractions(&terms).expect("valid fractions")
}

fn term(
    name: &str,
    prefactor: Rational,
    r: RationalFunction,
    base_q: Rational,
    num_factorials: Vec<FactorialFactor>,
    den_factorials: Vec<FactorialFactor>,
    start_index: u64,
    q_is_one: bool,
) -> BBPTerm {
    BBPTerm {
        name: name.to_string(),
        prefactor,
        r,
        base_q,
        q_is_one,
        num_factorials,
        den_factorials,
        start_index,
    }
    .validated()
    .expect("catalog entries are valid")
}

pub const PI_BBP: [(i64, i64); 4] = [(4, 1), (-2, 4), (-1, 5), (-1, 6)];

/// The second row is sometimes printed with `(24 n + 7)^2`; every other
/// fraction is indexed by `m`, so that entry is read as `(24 m + 7)^2`.
/// Summing the corrected series reproduces Catalan's constant.
pub const CATALAN_BBP: [(i64, i64); 16] = [
    (36864, 2),
    (-30720, 3),
    (-30720, 4),
    (-6144, 6),
    (-1536, 7),
    (2304, 9),
    (2304, 10),
    (768, 14),
    (480, 15),
    (384, 11),
    (1536, 12),
    (24, 19),
    (-120, 20),
    (-36, 21),
    (48, 22),
    (-6, 23),
];

pub const PI2_BBP: [(i64, i64); 9] = [
    (243, 1),
    (-405, 2),
    (-81, 4),
    (-27, 5),
    (-72, 6),
    (-9, 7),
    (-9, 8),
    (-5, 10),
    (1, 11),
];

pub fn pi_bbp() -> BBPTerm {
    term("pi-bbp", int(1), fractions(8, 1, &PI_BBP), int(16), vec![], vec![], 0, false)
}

pub fn catalan_bbp() -> BBPTerm {
    term(
        "catalan-bbp",
        rat(1, 4096),
        fractions(24, 2, &CATALAN_BBP),
        int(4096),
        vec![],
        vec![],
        0,
        false,
    )
}

pub fn pi2_bbp() -> BBPTerm {
    term("pi2-bbp", rat(2, 27), fractions(12, 2, &PI2_BBP), int(729), vec![], vec![], 0, false)
}

/// Only the first four fractions of [`PI2_BBP`]. The published `pi^2`
/// correction table is exactly the correction of this truncated term, not of
/// the full one; it is kept so that the table can be checked at all.
pub fn pi2_bbp_first_row() -> BBPTerm {
    term(
        "pi2-bbp-first-row",
        rat(2, 27),
        fractions(12, 2, &PI2_BBP[..4]),
        int(729),
        vec![],
        vec![],
        0,
        false,
    )
}

/// `1/pi = (1/16) sum ((2m)!)^3 / (m!)^6 (42m+5) / 4096^m`.
pub fn ramanujan_inv_pi() -> BBPTerm {
    term(
        "ramanujan-inv-pi",
        rat(1, 16),
        RationalFunction::from_poly(Polynomial::from_ints(&[5, 42])),
        int(4096),
        vec![FactorialFactor::new(2, 0); 3],
        vec![FactorialFactor::new(1, 0); 6],
        0,
        false,
    )
}

/// `G = (1/2) sum 4^n n!^2 / ((2n)! (2n+1)^2)`; the `4^n` is a base of `1/4`.
pub fn catalan_central_binomial() -> BBPTerm {
    term(
        "catalan-central-binomial",
        rat(1, 2),
        fractions(2, 2, &[(1, 1)]),
        rat(1, 4),
        vec![FactorialFactor::new(1, 0); 2],
        vec![FactorialFactor::new(2, 0)],
        0,
        false,
    )
}

/// `ln 2 = sum_{m>=1} 1/(m 2^m)`.
pub fn ln2_mercator() -> BBPTerm {
    term("ln2-mercator", int(1), fractions(1, 1, &[(1, 0)]), int(2), vec![], vec![], 1, false)
}

/// `sum_{m>=1} 1/(4m+1)^2`, no geometric factor.
pub fn inverse_squares_4m1() -> BBPTerm {
    term(
        "inverse-squares-4m1",
        int(1),
        fractions(4, 2, &[(1, 1)]),
        int(1),
        vec![],
        vec![],
        1,
        true,
    )
}

/// Built once; the Catalan term alone sums sixteen fractions.
pub fn catalog() -> Vec<SeriesCatalogEntry> {
    static CATALOG: OnceLock<Vec<SeriesCatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog).clone()
}

fn build_catalog() -> Vec<SeriesCatalogEntry> {
    vec![
        SeriesCatalogEntry { term: pi_bbp(), constant_name: "pi", fixture: Some("thm1") },
        SeriesCatalogEntry { term: catalan_bbp(), constant_name: "Catalan G", fixture: Some("thm3") },
        SeriesCatalogEntry { term: pi2_bbp(), constant_name: "pi^2", fixture: Some("thm5") },
        SeriesCatalogEntry {
            term: pi2_bbp_first_row(),
            constant_name: "(2/27) sum of the first four pi^2 fractions",
            fixture: None,
        },
        SeriesCatalogEntry {
            term: ramanujan_inv_pi(),
            constant_name: "1/pi",
            fixture: Some("ramanujan"),
        },
        SeriesCatalogEntry {
            term: catalan_central_binomial(),
            constant_name: "Catalan G",
            fixture: Some("catalan-cb"),
        },
        SeriesCatalogEntry { term: ln2_mercator(), constant_name: "ln 2", fixture: Some("ln2") },
        SeriesCatalogEntry {
            term: inverse_squares_4m1(),
            constant_name: "sum 1/(4m+1)^2",
            fixture: Some("sq4m1"),
        },
    ]
}

/// Looks a series up by its catalog name or one of the short aliases used on
/// the command line and in the shipped `.series` file names.
pub fn lookup(id: &str) -> Option<BBPTerm> {
    let name = match id {
        "pi" | "pi-bbp" => "pi-bbp",
        "catalan" | "catalan-bbp" => "catalan-bbp",
        "pi2" | "pi2-bbp" => "pi2-bbp",
        "pi2-first-row" | "pi2-bbp-first-row" => "pi2-bbp-first-row",
        "ramanujan" | "ramanujan-inv-pi" => "ramanujan-inv-pi",
        "catalan-cb" | "catalan-central-binomial" => "catalan-central-binomial",
        "ln2" | "ln2-mercator" => "ln2-mercator",
        "sq4m1" | "inverse-squares-4m1" => "inverse-squares-4m1",
        _ => return None,
    };
    catalog().into_iter().find(|e| e.term.name == name).map(|e| e.term)
}
