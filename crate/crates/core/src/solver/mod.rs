//! Construction of the correction `MC_k` for a term: the initial exponent,
//! the head, the continued-fraction levels and the residual pair `(K0, C_k)`.
//!
//! Every unknown is solved from exact residuals. A trial pair `x = 0` and
//! `x = 1` locates the first exponent at which the unknown enters the
//! residual and the (linear) coefficient it enters with; the solution is
//! then checked by recomputing the residual.

mod cf;
pub mod closed_form;

pub use cf::{CorrectionCF, HeadKind, Level};
pub use closed_form::{verify_closed_form, ClosedFormFamily, ClosedFormReport, LevelCheck};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::rational::{denominator_lcm, from_bigint};

use crate::exact::asymptotic::expand_pair;
use crate::exact::{AsymptoticSeries, Polynomial, Precision, Rational, RationalFunction};
use crate::series::BBPTerm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("no initial correction")]
    NoInitialCorrection,
    #[error("ambiguous initial correction: exponents {0:?} leave residuals of equal degree")]
    AmbiguousInitialCorrection(Vec<i64>),
    #[error("degenerate head at coefficient {0}")]
    DegenerateHead(usize),
    #[error("degenerate level {0}")]
    DegenerateLevel(usize),
    #[error("correction terminates exactly after {depth} levels")]
    ExactTermination { depth: usize },
    #[error("residual does not decay (leading exponent {0})")]
    NonDecayingResidual(i64),
    #[error("expansion budget {0} exhausted before a nonzero residual coefficient")]
    BudgetExhausted(usize),
}

/// `(K0, C_k)` and the next coefficient: the residual behaves like
/// `-C_k/m^K0 - next/m^(K0+1) + ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidualInfo {
    pub k0: i64,
    pub ck: Rational,
    pub next_order_coefficient: Rational,
}

/// Unreduced residual `num/den`.
#[derive(Clone, Debug)]
struct Pair {
    num: Polynomial,
    den: Polynomial,
}

impl Pair {
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Leading exponent `e` (the function is `~ c/m^e`), `None` if zero.
    fn exponent(&self) -> Option<i64> {
        Some(self.den.degree()? as i64 - self.num.degree()? as i64)
    }

    fn leading(&self) -> Option<Rational> {
        Some(self.num.leading()? / self.den.leading()?)
    }

    fn minus(&self, other: &Pair) -> Pair {
        Pair {
            num: &(&self.num * &other.den) - &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
    }
}

/// Rescales a fraction `n/d` to coprime integer coefficients, which keeps
/// every later product free of rational reductions.
fn integral((n, d): (Polynomial, Polynomial)) -> (Polynomial, Polynomial) {
    let l = denominator_lcm(n.coeffs().iter().chain(d.coeffs()));
    let scaled = |p: &Polynomial| -> Vec<BigInt> { p.coeffs().iter().map(|c| (c * from_bigint(l.clone())).to_integer()).collect() };
    let (ni, di) = (scaled(&n), scaled(&d));
    let g = ni.iter().chain(&di).fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let back = |v: Vec<BigInt>| Polynomial::new(v.into_iter().map(|c| from_bigint(c / &g)).collect());
    (back(ni), back(di))
}

/// The difference equation `y(m) - K(m) y(m+1) - R(m) = 0` with `K = Kn/Kd`,
/// `R = Rn/Rd`, pre-multiplied for residual evaluation.
#[derive(Clone, Debug)]
struct Equation {
    kd_rd: Polynomial,
    kn_rd: Polynomial,
    rn_kd: Polynomial,
}

impl Equation {
    fn new(term: &BBPTerm) -> Self {
        let k = term.kernel();
        // One common scale for all three keeps the residual's value intact.
        let (kd, kn) = integral((k.den().clone(), k.num().clone()));
        let (rd, rn) = integral((term.r.den().clone(), term.r.num().clone()));
        Equation {
            kd_rd: &kd * &rd,
            kn_rd: &kn * &rd,
            rn_kd: &rn * &kd,
        }
    }

    fn residual(&self, cf: &CorrectionCF) -> Pair {
        let (n, d) = integral(cf.pair());
        let one = Rational::one();
        let (ns, ds) = (n.taylor_shift(&one), d.taylor_shift(&one));
        let d_ds = &d * &ds;
        let num = &(&(&(&n * &ds) * &self.kd_rd) - &(&(&ns * &d) * &self.kn_rd)) - &(&d_ds * &self.rn_kd);
        Pair {
            num,
            den: &d_ds * &self.kd_rd,
        }
    }
}

/// Solves one unknown that enters `build(x)` linearly at leading order.
/// Returns the solution and the residual it leaves.
fn solve_unknown<F>(eq: &Equation, build: F) -> Option<(Rational, Pair)>
where
    F: Fn(&Rational) -> CorrectionCF,
{
    let r0 = eq.residual(&build(&Rational::zero()));
    let r1 = eq.residual(&build(&Rational::one()));
    let delta = r1.minus(&r0);
    let e = delta.exponent()?;
    let pivot = delta.leading()?;
    let x = match r0.exponent() {
        None => return Some((Rational::zero(), r0)),
        Some(l0) if l0 < e => return None,
        Some(l0) if l0 > e => return Some((Rational::zero(), r0)),
        Some(_) => -r0.leading().unwrap() / pivot,
    };
    let r = eq.residual(&build(&x));
    match r.exponent() {
        Some(l) if l <= e => None,
        _ => Some((x, r)),
    }
}

/// `(kappa0, lambda0)` minimising `deg(lambda/m^kappa - K(m) lambda/(m+1)^kappa - R(m))`.
///
/// Candidates are the exponents for which `1/m^kappa - K/(m+1)^kappa` has
/// the degree of `R`; the search window covers both the generic rule
/// `kappa = deg K - deg R` and the cancelling case `lim K = 1`.
pub fn initial_exponent(kernel: &RationalFunction, r: &RationalFunction) -> Result<(i64, Rational), SolverError> {
    let deg_r = r.degree().map_err(|_| SolverError::NoInitialCorrection)?;
    let deg_k = kernel.degree().map_err(|_| SolverError::NoInitialCorrection)?;
    let centre = deg_k - deg_r;
    let mut best: Vec<(Option<i64>, i64, Rational)> = Vec::new();
    for kappa in centre - 4..=centre + 4 {
        let p = if kappa > 0 {
            RationalFunction::inv_power(kappa as usize)
        } else {
            RationalFunction::from_poly(Polynomial::monomial(Rational::one(), (-kappa) as usize))
        };
        let a = &p - &(kernel * &p.shift(&Rational::one()));
        if a.is_zero() || a.degree().unwrap() != deg_r {
            continue;
        }
        let lambda = r.leading_coefficient().unwrap() / a.leading_coefficient().unwrap();
        let left = &a.scale(&lambda) - r;
        let score = left.degree().ok();
        match best.first().map(|b| b.0) {
            Some(s) if score > s => {}
            Some(s) if score == s => best.push((score, kappa, lambda)),
            _ => best = vec![(score, kappa, lambda)],
        }
    }
    match best.len() {
        0 => Err(SolverError::NoInitialCorrection),
        1 => {
            let (_, k, l) = best.pop().unwrap();
            Ok((k, l))
        }
        _ => Err(SolverError::AmbiguousInitialCorrection(best.iter().map(|b| b.1).collect())),
    }
}

fn head_cf(kind: HeadKind, coeffs: Vec<Rational>, lambda0: &Rational, kappa0: i64) -> CorrectionCF {
    CorrectionCF {
        head_kind: kind,
        head_poly: Polynomial::new(coeffs),
        lambda0: lambda0.clone(),
        kappa0,
        levels: Vec::new(),
    }
}

/// Completes `MC_0`, solving the lower head coefficients from the top down.
pub fn solve_head(term: &BBPTerm, kappa0: i64, lambda0: &Rational) -> Result<CorrectionCF, SolverError> {
    solve_head_with(&Equation::new(term), kappa0, lambda0).map(|(cf, _)| cf)
}

fn solve_head_with(eq: &Equation, kappa0: i64, lambda0: &Rational) -> Result<(CorrectionCF, Pair), SolverError> {
    let (kind, degree, top) = if kappa0 > 0 {
        (HeadKind::ReciprocalHead, kappa0 as usize, Rational::one())
    } else {
        (HeadKind::PolynomialHead, (-kappa0) as usize, lambda0.clone())
    };
    let mut coeffs = vec![Rational::zero(); degree + 1];
    coeffs[degree] = top;
    let mut residual = eq.residual(&head_cf(kind, coeffs.clone(), lambda0, kappa0));
    for i in (0..degree).rev() {
        let build = |x: &Rational| {
            let mut c = coeffs.clone();
            c[i] = x.clone();
            head_cf(kind, c, lambda0, kappa0)
        };
        let (x, r) = solve_unknown(eq, build).ok_or(SolverError::DegenerateHead(i))?;
        coeffs[i] = x;
        residual = r;
    }
    Ok((head_cf(kind, coeffs, lambda0, kappa0), residual))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelOutcome {
    Extended(Level),
    /// The residual is identically zero: the tail equals `MC_k(n) F(n)/q^n`
    /// exactly and no further level exists.
    ExactTermination,
}

/// Solver pipeline state: the term, the current correction and its residual.
#[derive(Clone, Debug)]
pub struct SolverState {
    pub term: BBPTerm,
    pub cf: CorrectionCF,
    pub residual_series: AsymptoticSeries,
    pub expansion_budget: usize,
    eq: Equation,
    residual: Pair,
}

pub fn default_budget(k: usize) -> usize {
    2 * k + 12
}

fn series_of(pair: &Pair, budget: usize) -> AsymptoticSeries {
    match expand_pair(&pair.num, &pair.den, budget) {
        None => AsymptoticSeries::zero(),
        Some((e, coeffs)) => AsymptoticSeries::new(e, coeffs, Precision::Through(e + budget as i64 - 1)),
    }
}

impl SolverState {
    /// Runs `initial_exponent` and `solve_head`.
    pub fn new(term: &BBPTerm, expansion_budget: usize) -> Result<Self, SolverError> {
        let (kappa0, lambda0) = initial_exponent(&term.kernel(), &term.r)?;
        let eq = Equation::new(term);
        let (cf, residual) = solve_head_with(&eq, kappa0, &lambda0)?;
        Ok(SolverState {
            term: term.clone(),
            residual_series: series_of(&residual, expansion_budget),
            cf,
            expansion_budget,
            eq,
            residual,
        })
    }

    fn set_residual(&mut self, residual: Pair) {
        self.residual_series = series_of(&residual, self.expansion_budget);
        self.residual = residual;
    }

    pub fn residual_is_zero(&self) -> bool {
        self.residual.is_zero()
    }

    /// `MC_k(m) - K(m) MC_k(m+1) - R(m)`, reduced.
    pub fn residual_function(&self) -> RationalFunction {
        RationalFunction::new(self.residual.num.clone(), self.residual.den.clone())
            .expect("residual denominator is nonzero")
    }
}

/// Appends one level: `a_j` (with `b_j = 0`) cancels the leading residual
/// coefficient, then `b_j` cancels the next one.
pub fn extend_level(state: &mut SolverState) -> Result<LevelOutcome, SolverError> {
    if state.residual.is_zero() {
        return Ok(LevelOutcome::ExactTermination);
    }
    let j = state.cf.depth() + 1;
    let with_level = |a: &Rational, b: &Rational| {
        let mut cf = state.cf.clone();
        cf.levels.push(Level::new(a.clone(), b.clone()));
        cf
    };
    let (a, _) = solve_unknown(&state.eq, |x| with_level(x, &Rational::zero())).ok_or(SolverError::DegenerateLevel(j))?;
    if a.is_zero() {
        return Err(SolverError::DegenerateLevel(j));
    }
    let (b, residual) = solve_unknown(&state.eq, |x| with_level(&a, x)).ok_or(SolverError::DegenerateLevel(j))?;
    let level = Level::new(a, b);
    state.cf.levels.push(level.clone());
    state.set_residual(residual);
    Ok(LevelOutcome::Extended(level))
}

/// Reads `(K0, C_k)` off the residual series, enlarging the budget (doubling,
/// up to eight times the starting value) if fewer than two coefficients are
/// available.
pub fn residual_leading(state: &mut SolverState) -> Result<ResidualInfo, SolverError> {
    if state.residual.is_zero() {
        return Err(SolverError::ExactTermination { depth: state.cf.depth() });
    }
    let cap = state.expansion_budget.max(1) * 8;
    while state.residual_series.coefficients().len() < 2 {
        if state.expansion_budget >= cap {
            return Err(SolverError::BudgetExhausted(state.expansion_budget));
        }
        state.expansion_budget = (state.expansion_budget * 2).max(2);
        state.residual_series = series_of(&state.residual, state.expansion_budget);
    }
    let s = &state.residual_series;
    let k0 = s.leading_exponent();
    if k0 <= 0 {
        return Err(SolverError::NonDecayingResidual(k0));
    }
    Ok(ResidualInfo {
        k0,
        ck: -s.coefficients()[0].clone(),
        next_order_coefficient: -s.coefficients()[1].clone(),
    })
}

/// The correction with `k` levels and each intermediate residual pair
/// `(K0, C_j)` for `j = 0..=k`.
pub fn correction_trace(term: &BBPTerm, k: usize, budget: usize) -> Result<(CorrectionCF, Vec<ResidualInfo>), SolverError> {
    let mut state = SolverState::new(term, budget)?;
    let mut trace = vec![residual_leading(&mut state)?];
    for _ in 0..k {
        match extend_level(&mut state)? {
            LevelOutcome::Extended(_) => trace.push(residual_leading(&mut state)?),
            LevelOutcome::ExactTermination => {
                return Err(SolverError::ExactTermination { depth: state.cf.depth() })
            }
        }
    }
    Ok((state.cf, trace))
}

/// `initial_exponent -> solve_head -> k x extend_level -> residual_leading`.
pub fn build_correction(term: &BBPTerm, k: usize) -> Result<(CorrectionCF, ResidualInfo), SolverError> {
    build_correction_with_budget(term, k, default_budget(k))
}

pub fn build_correction_with_budget(
    term: &BBPTerm,
    k: usize,
    budget: usize,
) -> Result<(CorrectionCF, ResidualInfo), SolverError> {
    let (cf, mut trace) = correction_trace(term, k, budget)?;
    Ok((cf, trace.pop().unwrap()))
}

/// `MC(m) - K(m) MC(m+1) - R(m)` for an arbitrary correction of `term`.
pub fn residual_function(term: &BBPTerm, cf: &CorrectionCF) -> RationalFunction {
    let p = Equation::new(term).residual(cf);
    RationalFunction::new(p.num, p.den).expect("residual denominator is nonzero")
}
