//! Proper BBP-type terms, their kernels, the `.series` file format and the
//! built-in catalog.

pub mod catalog;
pub mod format;
pub mod term;

pub use catalog::{catalog, lookup, SeriesCatalogEntry};
pub use format::{parse_series, render};
pub use term::{BBPTerm, FactorialFactor};

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("base must differ from 1 (set q_is_one=true for geometric-free series)")]
    BaseIsOne,
    #[error("q_is_one=true requires base 1")]
    QIsOneMismatch,
    #[error("base must be positive")]
    BaseNotPositive,
    #[error("rational part must be nonzero")]
    ZeroRationalPart,
    #[error("pole at m={0}")]
    Pole(BigInt),
    #[error("invalid factorial factor: {0}")]
    BadFactorial(String),
    #[error("m={m} is below the start index {start}")]
    BelowStart { m: u64, start: u64 },
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;
    use crate::exact::rational::{int, rat};
    use crate::exact::{expand_at_infinity, Polynomial, Rational, RationalFunction};

    #[test]
    fn ramanujan_kernel() {
        let k = ramanujan_inv_pi().kernel();
        let two_m = |c| Polynomial::from_ints(&[c, 2]);
        let expected = RationalFunction::new(
            &two_m(2).pow(3) * &two_m(1).pow(3),
            Polynomial::from_ints(&[1, 1]).pow(6).scale(&int(4096)),
        )
        .unwrap();
        assert_eq!(k, expected);
    }

    #[test]
    fn geometric_kernels_are_constant() {
        assert_eq!(pi_bbp().kernel(), RationalFunction::constant(rat(1, 16)));
        assert_eq!(ln2_mercator().kernel(), RationalFunction::constant(rat(1, 2)));
        assert_eq!(inverse_squares_4m1().kernel(), RationalFunction::one());
        // 4 (m+1)^2 / ((2m+1)(2m+2))
        assert_eq!(
            catalan_central_binomial().kernel(),
            RationalFunction::new(Polynomial::from_ints(&[2, 2]), Polynomial::from_ints(&[1, 2])).unwrap()
        );
    }

    #[test]
    fn term_values() {
        // 4 - 1/2 - 1/5 - 1/6
        assert_eq!(pi_bbp().term_value(0).unwrap(), rat(47, 15));
        assert_eq!(ln2_mercator().term_value(1).unwrap(), rat(1, 2));
        // (2!)^3 / (1!)^6 * 47 / 4096
        assert_eq!(ramanujan_inv_pi().term_value(1).unwrap(), rat(8 * 47, 4096));
        assert_eq!(
            ln2_mercator().term_value(0),
            Err(SeriesError::BelowStart { m: 0, start: 1 })
        );
    }

    #[test]
    fn ratio_of_consecutive_terms_is_kernel_times_r_ratio() {
        for entry in catalog() {
            let t = &entry.term;
            let k = t.kernel();
            for m in t.start_index..t.start_index + 20 {
                let lhs = t.term_value(m + 1).unwrap() / t.term_value(m).unwrap();
                let mm = int(m as i64);
                let rhs = k.eval(&mm).unwrap() * t.r.eval(&(&mm + int(1))).unwrap() / t.r.eval(&mm).unwrap();
                assert_eq!(lhs, rhs, "{} at m={m}", t.name);
            }
        }
    }

    #[test]
    fn weights_iterator_matches_direct_evaluation() {
        let t = ramanujan_inv_pi();
        for (m, w) in t.weights().take(8) {
            assert_eq!(w, t.weight(m));
        }
    }

    #[test]
    fn catalog_shape() {
        let cat = catalog();
        assert_eq!(cat.len(), 8);
        let s = expand_at_infinity(&pi_bbp().r, 2);
        assert_eq!(s.leading_exponent(), 2);
        assert_eq!(s.leading_coefficient(), Some(&rat(15, 64)));
        assert_eq!(catalan_bbp().prefactor, rat(1, 4096));
        assert_eq!(pi2_bbp().prefactor, rat(2, 27));
        assert_eq!(catalan_bbp().r.den().degree(), Some(32));
        assert_eq!(pi2_bbp().r.den().degree(), Some(18));
        assert_eq!(ln2_mercator().start_index, 1);
        assert_eq!(catalan_central_binomial().base_q, rat(1, 4));
        assert!(inverse_squares_4m1().q_is_one);
    }

    #[test]
    fn render_parse_round_trip() {
        for entry in catalog() {
            let text = render(&entry.term);
            let back = parse_series(&text).unwrap();
            assert_eq!(back, entry.term);
            assert_eq!(render(&back), text);
        }
    }

    #[test]
    fn base_one_rejected() {
        let text = "[series]\nname=x\nbase=1\nr_fraction=1/(m+1)^2\n";
        assert_eq!(parse_series(text), Err(SeriesError::BaseIsOne));
        assert!(SeriesError::BaseIsOne.to_string().starts_with("base must differ from 1"));
        let ok = "[series]\nname=x\nq_is_one=true\nr_fraction=1/(m+1)^2\n";
        assert!(parse_series(ok).unwrap().q_is_one);
    }

    #[test]
    fn pole_rejected() {
        let text = "[series]\nname=x\nbase=2\nstart=0\nr_num=1\nr_den=0,1\n";
        let err = parse_series(text).unwrap_err();
        assert_eq!(err, SeriesError::Pole(0.into()));
        assert_eq!(err.to_string(), "pole at m=0");
        let shifted = "[series]\nname=x\nbase=2\nstart=1\nr_num=1\nr_den=0,1\n";
        assert!(parse_series(shifted).is_ok());
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_series("[series]\nname=x\nbase=2/\n").unwrap_err();
        assert!(matches!(err, SeriesError::Syntax { line: 3, column: 6, .. }), "{err:?}");
        let err = parse_series("name=x\n").unwrap_err();
        assert!(matches!(err, SeriesError::Syntax { line: 1, column: 1, .. }));
        let err = parse_series("[series]\nname=x\nbase=2\nr_fraction=1/(8m+1\n").unwrap_err();
        assert!(matches!(err, SeriesError::Syntax { line: 4, .. }));
        let err = parse_series("[series]\nname=x\nbase=2\ncolour=red\n").unwrap_err();
        assert!(err.to_string().contains("unknown key"));
    }

    #[test]
    fn fraction_syntax_variants() {
        let text = "[series]\nname=x\nbase=3\nr_fraction=-2/( m - 1 )^2\nr_fraction = 1/(4m)\nstart=2\n";
        let t = parse_series(text).unwrap();
        let expected = &RationalFunction::simple_fraction(int(-2), int(1), int(-1), 2).unwrap()
            + &RationalFunction::simple_fraction(int(1), int(4), Rational::from_integer(0.into()), 1).unwrap();
        assert_eq!(t.r, expected);
    }
}
