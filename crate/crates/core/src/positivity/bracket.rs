use num_traits::{One, Signed, Zero};

use crate::exact::{expand_at_infinity, Rational, RationalFunction};
use crate::series::BBPTerm;
use crate::solver::{build_correction, residual_function, SolverError};

use super::{prove_sign_on_ray, PositivityError, SignCertificate, Verdict};

/// How the bracket constant compares with the solver's expansion of
/// `f + C/m^K0 = -D'/m^(K0+1) - e/m^(K0+2) + ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DCheck {
    pub solver_d: Rational,
    pub equal: bool,
    pub same_sign: bool,
    /// `beta` with `-D'/(m+beta)^(K0+1)` matching both orders: `-e/((K0+1) D')`.
    pub implied_shift: Option<Rational>,
    /// `implied_shift` lies strictly between the two offsets.
    pub within_offsets: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketReport {
    pub series: String,
    pub k: usize,
    pub k0: i64,
    pub ck: Rational,
    pub d: Rational,
    pub beta_lo: Rational,
    pub beta_hi: Rational,
    pub m0: i64,
    /// `f + C/m^K0 + D/(m+beta_lo)^(K0+1)`, required positive.
    pub lower: SignCertificate,
    /// `f + C/m^K0 + D/(m+beta_hi)^(K0+1)`, required negative.
    pub upper: SignCertificate,
    pub d_check: DCheck,
}

impl BracketReport {
    pub fn certified(&self) -> bool {
        self.lower.verdict == Verdict::ProvenPositive && self.upper.verdict == Verdict::ProvenNegative
    }
}

impl From<SolverError> for PositivityError {
    fn from(e: SolverError) -> Self {
        PositivityError::Solver(e)
    }
}

/// Certifies `-D/(m+beta_lo)^(K0+1) < f(m) + C_k/m^K0 < -D/(m+beta_hi)^(K0+1)`
/// on `m >= m0`, where `f = MC_k - kernel MC_k(m+1) - R` is built from the
/// solver's correction and `(K0, C_k)` from its residual.
pub fn certify_second_order_bracket(
    term: &BBPTerm,
    k: usize,
    d: &Rational,
    beta_lo: &Rational,
    beta_hi: &Rational,
    m0: i64,
) -> Result<BracketReport, PositivityError> {
    let (cf, info) = build_correction(term, k)?;
    let f = residual_function(term, &cf);
    let leading = RationalFunction::inv_power(info.k0 as usize).scale(&info.ck);
    let g = &f + &leading;
    let next = (info.k0 + 1) as u32;
    let side = |beta: &Rational| {
        let t = RationalFunction::simple_fraction(d.clone(), Rational::one(), beta.clone(), next)
            .expect("nonzero linear factor");
        &g + &t
    };
    let start = Rational::from_integer(m0.into());
    let lower = prove_sign_on_ray(&side(beta_lo), &start)?;
    let upper = prove_sign_on_ray(&side(beta_hi), &start)?;

    let s = expand_at_infinity(&g, 2);
    let coeff = |j: i64| -s.coefficient_at(j).unwrap_or_else(Rational::zero);
    let solver_d = coeff(info.k0 + 1);
    let e = coeff(info.k0 + 2);
    let implied_shift = (!solver_d.is_zero()).then(|| -&e / (Rational::from_integer((info.k0 + 1).into()) * &solver_d));
    let (lo, hi) = if beta_lo <= beta_hi { (beta_lo, beta_hi) } else { (beta_hi, beta_lo) };
    let d_check = DCheck {
        equal: solver_d == *d,
        same_sign: solver_d.signum() == d.signum() && !d.is_zero(),
        within_offsets: implied_shift.as_ref().is_some_and(|b| lo < b && b < hi),
        implied_shift,
        solver_d,
    };
    Ok(BracketReport {
        series: term.name.clone(),
        k,
        k0: info.k0,
        ck: info.ck,
        d: d.clone(),
        beta_lo: beta_lo.clone(),
        beta_hi: beta_hi.clone(),
        m0,
        lower,
        upper,
        d_check,
    })
}
