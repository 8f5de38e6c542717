use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exact::rational::{floor_to_bigint, from_bigint};
use crate::exact::Rational;
use crate::series::BBPTerm;
use crate::solver::CorrectionCF;

use super::{alpha_enclosure, corrected_value, default_n_ref, Enclosure, EvalError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitString {
    /// Integer part, then the certified fractional digits.
    pub text: String,
    /// Number of certified fractional digits.
    pub certified: usize,
    pub base: u32,
    pub approximation: Rational,
    /// Hull of the approximation and the enclosure of the series value.
    pub hull: Enclosure,
}

fn radix(n: &BigInt, base: u32) -> String {
    n.to_str_radix(base)
}

/// Truncated expansion of the corrected approximation, cut to the digits
/// shared by every point between it and the enclosed series value.
pub fn digits(term: &BBPTerm, cf: Option<&CorrectionCF>, n: u64, base: u32) -> Result<DigitString, EvalError> {
    assert!(base == 10 || base == 16, "base must be 10 or 16");
    let approx = corrected_value(term, cf, n)?;
    let alpha = alpha_enclosure(term, default_n_ref(n))?;
    let hull = alpha.hull_with(&approx);
    let negative = hull.hi.is_negative();
    let (lo, hi, a) = if negative {
        (-hull.hi.clone(), -hull.lo.clone(), -approx.clone())
    } else {
        (hull.lo.clone(), hull.hi.clone(), approx.clone())
    };
    let b = from_bigint(BigInt::from(base));
    let whole = floor_to_bigint(&a);
    let mut certified = 0usize;
    let mut scale = Rational::from_integer(1.into());
    let mut frac = String::new();
    if floor_to_bigint(&lo) == floor_to_bigint(&hi) && !hull.width().is_zero() {
        loop {
            scale *= &b;
            let (l, h) = (floor_to_bigint(&(&lo * &scale)), floor_to_bigint(&(&hi * &scale)));
            if l != h {
                break;
            }
            certified += 1;
        }
        if certified > 0 {
            let shifted = floor_to_bigint(&(&a * &scale / &b));
            let f = radix(&(shifted - &whole * (&scale / &b).to_integer()), base);
            frac = format!("{}{f}", "0".repeat(certified - f.len()));
        }
    }
    let mut text = String::new();
    if negative {
        text.push('-');
    }
    text.push_str(&radix(&whole, base));
    if certified > 0 {
        text.push('.');
        text.push_str(&frac);
    }
    Ok(DigitString {
        text,
        certified,
        base,
        approximation: approx,
        hull,
    })
}
