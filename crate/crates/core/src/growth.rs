//! Growth classification of degree sequences and the counting bounds around it.
//!
//! Estimators work on a tail window of the sequence; a finite window can only suggest a
//! limsup, so every estimate carries its fit residual. The bound calculators are exact.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive};

use crate::dynamics::DegreeSequence;
use crate::error::{Error, Result};

/// Fewest terms any estimator accepts.
pub const MIN_TERMS: usize = 8;

/// Default threshold on `degrees[N]^(1/N) - 1` below which growth is never called
/// exponential.
pub const DEFAULT_EPS_EXP: f64 = 0.05;

/// Residual (RMS, natural-log units) above which neither model is trusted.
pub const DEFAULT_FIT_TOLERANCE: f64 = 0.1;

/// A least-squares line through `(x, ln deg)` on a window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square of the residuals.
    pub residual: f64,
    /// Inclusive 1-based index range `[first, last]`.
    pub window: (usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LambdaEstimate {
    /// `degrees[N]^(1/N)`.
    pub root: f64,
    /// `degrees[N] / degrees[N-1]`.
    pub ratio: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthLabel {
    Bounded,
    Polynomial,
    Exponential,
    Indeterminate,
}

impl GrowthLabel {
    pub fn name(&self) -> &'static str {
        match self {
            GrowthLabel::Bounded => "bounded",
            GrowthLabel::Polynomial => "polynomial",
            GrowthLabel::Exponential => "exponential",
            GrowthLabel::Indeterminate => "indeterminate",
        }
    }
}

/// The four growth types of birational maps of surfaces. Assigned from the shape of
/// the sequence alone, so it is advisory: no fibration is ever computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dim2Category {
    Bounded,
    Linear,
    Quadratic,
    Exponential,
}

impl Dim2Category {
    pub fn name(&self) -> &'static str {
        match self {
            Dim2Category::Bounded => "bounded",
            Dim2Category::Linear => "linear",
            Dim2Category::Quadratic => "quadratic",
            Dim2Category::Exponential => "exponential",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthConfig {
    pub eps_exp: f64,
    pub fit_tolerance: f64,
}

impl Default for GrowthConfig {
    fn default() -> Self {
        GrowthConfig { eps_exp: DEFAULT_EPS_EXP, fit_tolerance: DEFAULT_FIT_TOLERANCE }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub label: GrowthLabel,
    /// Log-log slope on the window; always present (0 for bounded sequences).
    pub dpol: Option<f64>,
    /// `exp` of the semi-log slope; present for exponential sequences.
    pub lambda: Option<f64>,
    pub lambda_estimates: LambdaEstimate,
    /// Residual of the model behind the label.
    pub fit_residual: f64,
    pub polynomial_fit: Fit,
    pub exponential_fit: Fit,
    pub window: (usize, usize),
    /// Period of the tail when the sequence is eventually periodic.
    pub tail_period: Option<usize>,
    pub dim2_category: Option<Dim2Category>,
}

fn check_len(degrees: &[u64]) -> Result<()> {
    if degrees.len() < MIN_TERMS {
        return Err(Error::SequenceTooShort { needed: MIN_TERMS, have: degrees.len() });
    }
    if degrees.contains(&0) {
        return Err(Error::InvalidArgument("degrees must be positive".into()));
    }
    Ok(())
}

/// The tail window `[N/2, N]` (1-based, inclusive).
pub fn tail_window(len: usize) -> (usize, usize) {
    ((len / 2).max(1), len)
}

fn least_squares(points: &[(f64, f64)], window: (usize, usize)) -> Fit {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let intercept = my - slope * mx;
    let sq: f64 = points.iter().map(|p| p.1 - slope * p.0 - intercept).map(|e| e * e).sum();
    Fit { slope, intercept, residual: libm::sqrt(sq / n), window }
}

fn fit_on_tail(degrees: &[u64], x: impl Fn(usize) -> f64) -> Fit {
    let window = tail_window(degrees.len());
    let points: Vec<(f64, f64)> =
        (window.0..=window.1).map(|n| (x(n), libm::log(degrees[n - 1] as f64))).collect();
    least_squares(&points, window)
}

/// Slope of `ln deg(f^n)` against `ln n` over the tail window.
pub fn dpol_estimate(degrees: &[u64]) -> Result<Fit> {
    check_len(degrees)?;
    Ok(fit_on_tail(degrees, |n| libm::log(n as f64)))
}

/// Slope of `ln deg(f^n)` against `n` over the tail window; `exp(slope)` estimates λ.
pub fn semilog_fit(degrees: &[u64]) -> Result<Fit> {
    check_len(degrees)?;
    Ok(fit_on_tail(degrees, |n| n as f64))
}

pub fn lambda_estimate(degrees: &[u64]) -> Result<LambdaEstimate> {
    check_len(degrees)?;
    let n = degrees.len();
    let (last, prev) = (degrees[n - 1] as f64, degrees[n - 2] as f64);
    Ok(LambdaEstimate { root: libm::pow(last, 1.0 / n as f64), ratio: last / prev })
}

/// Smallest `p` such that the last `max(min_len, 3p)` terms repeat with period `p`.
pub fn tail_period(degrees: &[u64], min_len: usize) -> Option<usize> {
    let n = degrees.len();
    (1..=n / 3).find(|&p| {
        let len = min_len.max(3 * p);
        len <= n && (n - len..n - p).all(|i| degrees[i] == degrees[i + p])
    })
}

/// Labels `seq`. `dim` (taken from the sequence when present) fixes the constant-tail
/// length `max(4, d+2)` and decides whether a surface category is attached.
pub fn classify_growth(seq: &DegreeSequence, config: &GrowthConfig) -> Result<GrowthReport> {
    classify_degrees(&seq.degrees, seq.dim, seq.period.is_some(), config)
}

pub fn classify_degrees(
    degrees: &[u64],
    dim: Option<usize>,
    period_certified: bool,
    config: &GrowthConfig,
) -> Result<GrowthReport> {
    let polynomial_fit = dpol_estimate(degrees)?;
    let exponential_fit = semilog_fit(degrees)?;
    let lambda_estimates = lambda_estimate(degrees)?;
    let window = polynomial_fit.window;
    let min_tail = 4.max(dim.unwrap_or(0) + 2);
    let period = tail_period(degrees, min_tail);
    let lambda_fit = libm::exp(exponential_fit.slope);

    let mut report = GrowthReport {
        label: GrowthLabel::Indeterminate,
        dpol: Some(polynomial_fit.slope.max(0.0)),
        lambda: None,
        lambda_estimates,
        fit_residual: polynomial_fit.residual,
        polynomial_fit,
        exponential_fit,
        window,
        tail_period: period,
        dim2_category: None,
    };
    if period_certified || period.is_some() {
        report.label = GrowthLabel::Bounded;
        report.dpol = Some(0.0);
    } else {
        let exp_better = exponential_fit.residual < polynomial_fit.residual;
        let fast = lambda_estimates.root >= 1.0 + config.eps_exp && lambda_fit >= 1.0 + config.eps_exp;
        let best = polynomial_fit.residual.min(exponential_fit.residual);
        if best > config.fit_tolerance {
            report.label = GrowthLabel::Indeterminate;
        } else if exp_better && fast {
            report.label = GrowthLabel::Exponential;
            report.lambda = Some(lambda_fit);
            report.fit_residual = exponential_fit.residual;
        } else if !exp_better {
            report.label = GrowthLabel::Polynomial;
        }
        // exp_better but slow: the two diagnostics disagree, stay indeterminate.
    }
    if dim == Some(2) {
        report.dim2_category = match report.label {
            GrowthLabel::Bounded => Some(Dim2Category::Bounded),
            GrowthLabel::Exponential => Some(Dim2Category::Exponential),
            GrowthLabel::Polynomial => match report.dpol {
                Some(k) if (k - 1.0).abs() < 0.5 => Some(Dim2Category::Linear),
                Some(k) if (k - 2.0).abs() < 0.5 => Some(Dim2Category::Quadratic),
                _ => None,
            },
            GrowthLabel::Indeterminate => None,
        };
    }
    Ok(report)
}

/// Number of indices in the window with `deg(f^m) <= k`.
pub fn count_low_degree_iterates(degrees: &[u64], k: u64) -> usize {
    degrees.iter().filter(|&&d| d <= k).count()
}

/// The constant and both sides of the counting inequality for automorphisms of `A^d`:
/// the relevant iterates span a space of dimension `d * C(d+K, K)`, which must stay
/// below `C_d K^d` with `C_d = (1+d)^d / (d-1)!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegautBound {
    pub c_d: BigRational,
    pub bound: BigRational,
    pub dim_check: BigUint,
    /// `dim_check < bound`.
    pub holds: bool,
    /// `d = 1`, where the chain of strict inequalities degenerates.
    pub boundary: bool,
}

pub fn degaut_constant(d: u32) -> Result<BigRational> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    let num = BigInt::from(d + 1).pow(d);
    let den: BigInt = (1..d).map(BigInt::from).product();
    Ok(BigRational::new(num, den))
}

pub fn degaut_bound(d: u32, k: u64) -> Result<DegautBound> {
    if k == 0 {
        return Err(Error::InvalidArgument("K must be at least 1".into()));
    }
    let c_d = degaut_constant(d)?;
    let bound = &c_d * BigRational::from_integer(BigInt::from(k).pow(d));
    let dim_check = BigUint::from(d) * binomial(BigUint::from(d as u64 + k), BigUint::from(k));
    let holds = BigRational::from_integer(BigInt::from(dim_check.clone())) < bound;
    Ok(DegautBound { c_d, bound, dim_check, holds, boundary: d == 1 })
}

/// `C(K, d) = (d+1) * C(d+K, K)`, the number of coefficients of a map of `P^d` of
/// degree `K`.
pub fn coefficient_count(d: u32, k: u64) -> BigUint {
    BigUint::from(d + 1) * binomial(BigUint::from(d as u64 + k), BigUint::from(k))
}

/// `q^C(K, d)`: an upper bound on the number of maps of `P^d` over `F_q` of degree `K`.
pub fn finite_field_count_bound(q: u64, d: u32, k: u64) -> Result<BigUint> {
    if q < 2 || d == 0 {
        return Err(Error::InvalidArgument("need q >= 2 and d >= 1".into()));
    }
    let exp = coefficient_count(d, k).to_u32().ok_or(Error::ExponentOverflow)?;
    Ok(BigUint::from(q).pow(exp))
}

/// `C_{d,q} = (d! / ((d+1)^(d+1) ln q))^(1/d)`.
///
/// From `C(d+K, K) <= ((d+1)K)^d / d!` for `K >= 1`: if `D_S(n) = K < C_{d,q}
/// (ln n)^(1/d)` then `q^C(K,d) < n`, so the `n+1` words of length `<= n` cannot all be
/// distinct maps of degree `<= K`, and the monoid is finite.
pub fn log_threshold_constant(d: u32, q: u64) -> f64 {
    let fact: f64 = (1..=d).map(|i| i as f64).product();
    let denom = libm::pow((d + 1) as f64, (d + 1) as f64) * libm::log(q as f64);
    libm::pow(fact / denom, 1.0 / d as f64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdRow {
    pub n: usize,
    pub value: u64,
    /// `D_S(n) < C_d n^(1/d)`, decided exactly as `D^d < C_d^d n`.
    pub below_root: bool,
    /// `D_S(n) < C_{d,q} (ln n)^(1/d)`; only for `n >= 2` and a given `q`.
    pub below_log: Option<bool>,
    /// `q^C(D, d) < n + 1`: too few maps of this degree for `n+1` distinct words.
    pub pigeonhole: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdReport {
    pub d: u32,
    pub q: Option<u64>,
    pub c_d: BigRational,
    pub c_dq: Option<f64>,
    pub rows: Vec<ThresholdRow>,
    /// The root condition held at every `n` in the window (non-empty).
    pub root_predicts_bounded: bool,
    /// The log condition held at every `n >= 2` in the window.
    pub log_predicts_bounded: Option<bool>,
}

/// Evaluates both finiteness thresholds on `values[n-1] = D_S(n)`.
pub fn threshold_check(values: &[u64], d: u32, q: Option<u64>) -> Result<ThresholdReport> {
    let c_d = degaut_constant(d)?;
    if let Some(q) = q {
        if q < 2 {
            return Err(Error::InvalidArgument("q must be at least 2".into()));
        }
    }
    let c_pow = Pow::pow(&c_d, d);
    let c_dq = q.map(|q| log_threshold_constant(d, q));
    let rows: Vec<ThresholdRow> = values
        .iter()
        .enumerate()
        .map(|(i, &value)| {
            let n = i + 1;
            let lhs = BigRational::from_integer(BigInt::from(value).pow(d));
            let below_root = lhs < &c_pow * BigRational::from_integer(BigInt::from(n));
            let (below_log, pigeonhole) = match (q, c_dq) {
                (Some(q), Some(c)) if n >= 2 => {
                    let rhs = c * libm::pow(libm::log(n as f64), 1.0 / d as f64);
                    (Some((value as f64) < rhs), Some(count_below(q, d, value, n)))
                }
                _ => (None, None),
            };
            ThresholdRow { n, value, below_root, below_log, pigeonhole }
        })
        .collect();
    let root_predicts_bounded = !rows.is_empty() && rows.iter().all(|r| r.below_root);
    let log_predicts_bounded = q.map(|_| {
        let mut logs = rows.iter().filter_map(|r| r.below_log).peekable();
        logs.peek().is_some() && logs.all(|b| b)
    });
    Ok(ThresholdReport { d, q, c_d, c_dq, rows, root_predicts_bounded, log_predicts_bounded })
}

fn count_below(q: u64, d: u32, degree: u64, n: usize) -> bool {
    let target = BigUint::from(n as u64 + 1);
    let exp = coefficient_count(d, degree);
    // q^e >= 2^e >= 2^bits(n+1) > n + 1 once e reaches the bit length.
    if exp >= BigUint::from(target.bits()) {
        return false;
    }
    BigUint::from(q).pow(exp.to_u32().expect("below a bit length")) < target
}
