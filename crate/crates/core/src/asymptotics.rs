//! Dominant-pole asymptotics for pattern-avoiding compositions over ℕ.
//!
//! With `y = 0, z = 1` each avoidance series is `C(x) = 1/f(x)` for an `f`
//! that is analytic on `|x| < 1`. The number of avoiders grows like
//! `K v^n` where `ρ = 1/v` is the smallest positive zero of `f` and
//! `K = -1/(ρ f'(ρ))`. A winding count of `f` around the circle `|x| = 0.7`
//! certifies that `ρ` is the only zero inside and that it is simple.
//!
//! All infinite sums and products are truncated with an explicit bound on
//! the discarded tail, so every evaluation reports how far it can be from
//! the exact value.

// Range checks are written `!(a < b)` so that NaN inputs fail them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt::Debug;

use num_complex::Complex;
use num_traits::{Float, FloatConst};
use thiserror::Error;

use crate::patterns::PatternId;

/// Float types the numerics run on.
pub trait Real: Float + FloatConst + Debug + Send + Sync + 'static {}

impl<F: Float + FloatConst + Debug + Send + Sync + 'static> Real for F {}

/// Evaluations are refused beyond this modulus.
pub const MAX_MODULUS: f64 = 0.8;
/// Sums stop once the bounding geometric term falls below this.
pub const DEFAULT_TAIL_EPS: f64 = 1e-15;
pub const DEFAULT_ROOT_TOL: f64 = 1e-11;
pub const DEFAULT_FD_STEP: f64 = 1e-6;
pub const DEFAULT_RADIUS: f64 = 0.7;
pub const DEFAULT_SAMPLES: usize = 4096;
pub const MIN_SAMPLES: usize = 1024;

const SCAN_START: f64 = 0.5;
const SCAN_STEP: f64 = 0.01;
const SCAN_END: f64 = 0.99;
const MAX_TERMS: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymptoticError {
    #[error("|x| = {modulus} is outside the evaluation disk |x| <= {max}")]
    Domain { modulus: f64, max: f64 },
    #[error("tail bound {eps} not reachable within {MAX_TERMS} terms")]
    TailNotReached { eps: f64 },
    #[error("no sign change of f found on ({start}, {end})")]
    RootNotFound { start: f64, end: f64 },
    #[error("phase jump of {jump} rad between samples; retry with more than {samples} samples")]
    UnderSampled { samples: usize, jump: f64 },
    #[error("f vanishes on the contour at sample {index}")]
    ZeroOnContour { index: usize },
    #[error("numerator is too close to zero at rho ({value})")]
    NumeratorVanishes { value: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

type Result<T> = std::result::Result<T, AsymptoticError>;

/// A value together with a bound on its truncation error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation<F> {
    pub value: Complex<F>,
    pub tail_bound: F,
}

impl<F: Real> Evaluation<F> {
    fn exact(value: Complex<F>) -> Self {
        Self { value, tail_bound: F::zero() }
    }
}

/// `C(x) = numerator(x) / denominator(x)`, so `f = denominator / numerator`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyticParts<F> {
    pub numerator: Evaluation<F>,
    pub denominator: Evaluation<F>,
}

/// Tolerances an estimate was computed with.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimateConfig<F> {
    pub root_tol: F,
    pub tail_eps: F,
    pub fd_step: F,
    pub radius: F,
    pub samples: usize,
}

impl<F: Real> Default for EstimateConfig<F> {
    fn default() -> Self {
        Self {
            root_tol: c(DEFAULT_ROOT_TOL),
            tail_eps: c(DEFAULT_TAIL_EPS),
            fd_step: c(DEFAULT_FD_STEP),
            radius: c(DEFAULT_RADIUS),
            samples: DEFAULT_SAMPLES,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticEstimate<F> {
    pub pattern: PatternId,
    pub rho: F,
    pub growth_v: F,
    pub constant_k: F,
    pub winding: i64,
    pub f_at_rho: F,
    pub derivative: F,
    pub tolerances: EstimateConfig<F>,
}

impl<F: Real> AsymptoticEstimate<F> {
    /// `K v^n`
    pub fn predict(&self, n: u32) -> F {
        self.constant_k * self.growth_v.powi(n as i32)
    }
}

/// One sample of the image of a circle under `f`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint<F> {
    pub x: Complex<F>,
    pub f: Complex<F>,
}

fn c<F: Real>(v: f64) -> F {
    F::from(v).expect("float constant")
}

fn to_f64<F: Real>(v: F) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Smallest `L >= min` with `bound(L) <= eps`.
fn cutoff<F: Real>(min: usize, eps: F, bound: impl Fn(usize) -> F) -> Result<usize> {
    (min..MAX_TERMS).find(|&l| bound(l) <= eps).ok_or(AsymptoticError::TailNotReached { eps: to_f64(eps) })
}

/// Upper bound for `|1/(x;x)_q|` valid for every `q` when `|x| <= r`.
fn inverse_q_product_bound<F: Real>(r: F) -> F {
    let mut prod = F::one();
    let mut pw = r;
    let mut j = 0;
    while pw > c(1e-3) && j < MAX_TERMS {
        prod = prod / (F::one() - pw);
        pw = pw * r;
        j += 1;
    }
    // -ln(1 - t) <= 2t for t <= 1/2 bounds the remaining factors.
    prod * (c::<F>(2.0) * pw / (F::one() - r)).exp()
}

/// Upper bound for `|Π_{i>=1} (1 - x^{2i})|`.
fn product_bound<F: Real>(r: F) -> F {
    (r * r / (F::one() - r * r)).exp()
}

fn q_pochhammer<F: Real>(x: Complex<F>, n: usize) -> Complex<F> {
    let mut prod = Complex::new(F::one(), F::zero());
    let mut pw = Complex::new(F::one(), F::zero());
    for _ in 0..n {
        pw = pw * x;
        prod = prod * (Complex::new(F::one(), F::zero()) - pw);
    }
    prod
}

fn powc<F: Real>(x: Complex<F>, e: usize) -> Complex<F> {
    x.powu(e as u32)
}

fn check_domain<F: Real>(x: Complex<F>, eps: F) -> Result<F> {
    let r = x.norm();
    if !(r <= c(MAX_MODULUS)) {
        return Err(AsymptoticError::Domain { modulus: to_f64(r), max: MAX_MODULUS });
    }
    if !(eps > F::zero()) {
        return Err(AsymptoticError::InvalidArgument("tail tolerance must be positive".into()));
    }
    Ok(r)
}

/// Numerator and denominator of the avoidance series of `p` at `x`.
pub fn eval_parts<F: Real>(p: PatternId, x: Complex<F>, eps: F) -> Result<AnalyticParts<F>> {
    let r = check_domain(x, eps)?;
    let one = Complex::new(F::one(), F::zero());
    let unit = Evaluation::exact(one);
    let geo = F::one() / (F::one() - r);
    let parts = match p {
        PatternId::P111 => {
            // tail terms have |x^i| <= s = r^{L+1}
            let bound = |l: usize| {
                let s = r.powi(l as i32 + 1);
                let den = F::one() - s - s * s;
                if den <= F::zero() {
                    F::infinity()
                } else {
                    s * geo * (F::one() + s) / den
                }
            };
            let l = cutoff(1, eps, bound)?;
            let mut sum = Complex::new(F::zero(), F::zero());
            let mut w = one;
            for _ in 1..=l {
                w = w * x;
                let t = w * (one + w);
                sum = sum + t / (one + t);
            }
            AnalyticParts { numerator: unit, denominator: Evaluation { value: one - sum, tail_bound: bound(l) } }
        }
        PatternId::P112 => {
            let pb = product_bound(r);
            let bound = |l: usize| pb * r.powi(l as i32 + 1) * geo;
            let l = cutoff(1, eps, bound)?;
            let mut sum = Complex::new(F::zero(), F::zero());
            let mut running = one;
            let mut xj = one;
            for j in 1..=l {
                xj = xj * x;
                sum = sum + xj * running;
                running = running * (one - powc(x, 2 * j));
            }
            AnalyticParts { numerator: unit, denominator: Evaluation { value: one - sum, tail_bound: bound(l) } }
        }
        PatternId::P221 => {
            let pb = product_bound(r);
            let bound = |l: usize| {
                let omitted = pb * r.powi(l as i32 + 1) * geo;
                let t = r.powi(2 * l as i32 + 2) / (F::one() - r * r);
                omitted + r * geo * pb * (t.exp() - F::one())
            };
            let l = cutoff(1, eps, bound)?;
            // suffix[i] = Π_{j=i+1..l} (1 - x^{2j})
            let mut suffix = vec![one; l + 1];
            for i in (0..l).rev() {
                suffix[i] = suffix[i + 1] * (one - powc(x, 2 * (i + 1)));
            }
            let mut sum = Complex::new(F::zero(), F::zero());
            let mut xi = one;
            for s in suffix.iter().skip(1) {
                xi = xi * x;
                sum = sum + xi * *s;
            }
            AnalyticParts { numerator: unit, denominator: Evaluation { value: one - sum, tail_bound: bound(l) } }
        }
        PatternId::P123 => {
            let qb = inverse_q_product_bound(r);
            let two: F = c(2.0);
            let term_bound = |q: usize| two.powi(q as i32 - 3) * r.powi((q * (q + 1) / 2) as i32) * qb;
            // once 2 r^{q+1} <= 1/2 the tail is at most twice its first term
            let bound = |l: usize| {
                if two * r.powi(l as i32 + 2) <= c(0.5) {
                    two * term_bound(l + 1)
                } else {
                    F::infinity()
                }
            };
            let l = cutoff(3, eps, bound)?;
            let mut value = one - x / (one - x);
            for q in 3..=l {
                let cq: i64 = (3..=q).map(|p| binom(p - 3, q - p) * if p % 2 == 0 { 1 } else { -1 }).sum();
                if cq != 0 {
                    let t = powc(x, q * (q + 1) / 2) / q_pochhammer(x, q);
                    value = value - t * c::<F>(cq as f64);
                }
            }
            AnalyticParts { numerator: unit, denominator: Evaluation { value, tail_bound: bound(l) } }
        }
        PatternId::Peak | PatternId::Valley => {
            let qb = inverse_q_product_bound(r);
            let odd_exp = |j: usize| match p {
                PatternId::Peak => j * j + 3 * j + 1,
                _ => (j + 1) * (j + 1),
            };
            // even exponents j(j+2) grow by 2j+3 per step, odd ones by at least 2j+2
            let tail = |l: usize| {
                if r.powi(2 * l as i32 + 2) <= c(0.5) {
                    let even = two_x(r.powi(((l + 1) * (l + 3)) as i32) * qb);
                    let odd = two_x(r.powi(odd_exp(l + 1) as i32) * qb);
                    (even, odd)
                } else {
                    (F::infinity(), F::infinity())
                }
            };
            let l = cutoff(1, eps, |l| {
                let (e, o) = tail(l);
                e + o
            })?;
            let mut even = one;
            let mut odd = Complex::new(F::zero(), F::zero());
            for j in 0..=l {
                if j >= 1 {
                    even = even + powc(x, j * (j + 2)) / q_pochhammer(x, 2 * j);
                }
                odd = odd + powc(x, odd_exp(j)) / q_pochhammer(x, 2 * j + 1);
            }
            let (te, to) = tail(l);
            AnalyticParts {
                numerator: Evaluation { value: even, tail_bound: te },
                denominator: Evaluation { value: even - odd, tail_bound: te + to },
            }
        }
    };
    Ok(parts)
}

fn two_x<F: Real>(v: F) -> F {
    v + v
}

fn binom(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `f(x) = denominator / numerator`, with a bound on the truncation error.
pub fn eval_f<F: Real>(p: PatternId, x: Complex<F>, eps: F) -> Result<Evaluation<F>> {
    let AnalyticParts { numerator: n, denominator: d } = eval_parts(p, x, eps)?;
    if n.tail_bound == F::zero() && n.value == Complex::new(F::one(), F::zero()) {
        return Ok(d);
    }
    let value = d.value / n.value;
    let slack = n.value.norm() - n.tail_bound;
    let tail_bound =
        if slack > F::zero() { (d.tail_bound + value.norm() * n.tail_bound) / slack } else { F::infinity() };
    Ok(Evaluation { value, tail_bound })
}

fn f_real<F: Real>(p: PatternId, x: F, eps: F) -> Result<F> {
    Ok(eval_f(p, Complex::new(x, F::zero()), eps)?.value.re)
}

/// Smallest positive zero of `f`, located by scanning `(0.5, 0.99)` in steps
/// of 0.01 (up to the evaluation limit) and bisecting the first bracket.
pub fn find_rho<F: Real>(p: PatternId, tol: F) -> Result<F> {
    find_rho_with(p, tol, c(DEFAULT_TAIL_EPS))
}

pub fn find_rho_with<F: Real>(p: PatternId, tol: F, eps: F) -> Result<F> {
    if !(tol >= c(1e-12)) {
        return Err(AsymptoticError::InvalidArgument("root tolerance must be at least 1e-12".into()));
    }
    let not_found = AsymptoticError::RootNotFound { start: SCAN_START, end: SCAN_END };
    let start: F = c(SCAN_START);
    if !(f_real(p, start, eps)? > F::zero()) {
        return Err(not_found);
    }
    let end = c::<F>(SCAN_END).min(c(MAX_MODULUS));
    let mut lo = start;
    let mut hi = None;
    let mut k = 1;
    loop {
        let x = start + c::<F>(SCAN_STEP) * F::from(k).unwrap();
        if x > end + c(1e-12) {
            break;
        }
        let x = x.min(end);
        if f_real(p, x, eps)? <= F::zero() {
            hi = Some(x);
            break;
        }
        lo = x;
        k += 1;
    }
    let mut hi = hi.ok_or(not_found)?;
    let half: F = c(0.5);
    while hi - lo > tol {
        let mid = (lo + hi) * half;
        if mid <= lo || mid >= hi {
            break;
        }
        if f_real(p, mid, eps)? > F::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) * half)
}

/// `f'(x)` from central differences at steps `h` and `h/2`, combined by one
/// Richardson step.
pub fn derivative<F: Real>(p: PatternId, x: F, h: F, eps: F) -> Result<F> {
    let two: F = c(2.0);
    let central = |h: F| -> Result<F> { Ok((f_real(p, x + h, eps)? - f_real(p, x - h, eps)?) / (two * h)) };
    let coarse = central(h)?;
    let fine = central(h / two)?;
    Ok((c::<F>(4.0) * fine - coarse) / c(3.0))
}

/// Winding number of `g` around the origin along `|x| = radius`.
pub fn winding_of<F: Real>(
    mut g: impl FnMut(Complex<F>) -> Result<Complex<F>>,
    radius: F,
    samples: usize,
) -> Result<i64> {
    if samples < MIN_SAMPLES {
        return Err(AsymptoticError::InvalidArgument(format!("need at least {MIN_SAMPLES} samples")));
    }
    let values = (0..samples).map(|k| g(circle_point(radius, k, samples))).collect::<Result<Vec<_>>>()?;
    accumulated_phase(&values).map(|turns| (turns / F::TAU()).round().to_i64().unwrap_or(0))
}

fn circle_point<F: Real>(radius: F, k: usize, samples: usize) -> Complex<F> {
    let theta = F::TAU() * F::from(k).unwrap() / F::from(samples).unwrap();
    Complex::from_polar(radius, theta)
}

/// Total phase change along a closed sampled curve (last sample joins the first).
pub fn accumulated_phase<F: Real>(values: &[Complex<F>]) -> Result<F> {
    if let Some(index) = values.iter().position(|v| v.norm() == F::zero()) {
        return Err(AsymptoticError::ZeroOnContour { index });
    }
    let mut total = F::zero();
    for k in 0..values.len() {
        let step = (values[(k + 1) % values.len()] / values[k]).arg();
        if step.abs() > F::FRAC_PI_2() {
            return Err(AsymptoticError::UnderSampled { samples: values.len(), jump: to_f64(step) });
        }
        total = total + step;
    }
    Ok(total)
}

pub fn winding_number<F: Real>(p: PatternId, radius: F, samples: usize) -> Result<i64> {
    if !(radius < c(MAX_MODULUS)) || !(radius > F::zero()) {
        return Err(AsymptoticError::Domain { modulus: to_f64(radius), max: MAX_MODULUS });
    }
    let eps = c(DEFAULT_TAIL_EPS);
    winding_of(|x| eval_f(p, x, eps).map(|e| e.value), radius, samples)
}

/// Samples of `f` on `|x| = radius`, starting on the positive real axis.
pub fn emit_curve<F: Real>(p: PatternId, radius: F, samples: usize) -> Result<Vec<CurvePoint<F>>> {
    let eps = c(DEFAULT_TAIL_EPS);
    (0..samples)
        .map(|k| {
            let x = if k == 0 { Complex::new(radius, F::zero()) } else { circle_point(radius, k, samples) };
            let mut f = eval_f(p, x, eps)?.value;
            if k == 0 {
                f.im = F::zero();
            }
            Ok(CurvePoint { x, f })
        })
        .collect()
}

pub fn estimate<F: Real>(p: PatternId) -> Result<AsymptoticEstimate<F>> {
    estimate_with(p, EstimateConfig::default())
}

pub fn estimate_with<F: Real>(p: PatternId, cfg: EstimateConfig<F>) -> Result<AsymptoticEstimate<F>> {
    let rho = find_rho_with(p, cfg.root_tol, cfg.tail_eps)?;
    if matches!(p, PatternId::Peak | PatternId::Valley) {
        let n = eval_parts(p, Complex::new(rho, F::zero()), cfg.tail_eps)?.numerator.value.norm();
        if !(n > c(1e-6)) {
            return Err(AsymptoticError::NumeratorVanishes { value: to_f64(n) });
        }
    }
    let fp = derivative(p, rho, cfg.fd_step, cfg.tail_eps)?;
    let winding = winding_number(p, cfg.radius, cfg.samples)?;
    Ok(AsymptoticEstimate {
        pattern: p,
        rho,
        growth_v: F::one() / rho,
        constant_k: -F::one() / (rho * fp),
        winding,
        f_at_rho: f_real(p, rho, cfg.tail_eps)?,
        derivative: fp,
        tolerances: cfg,
    })
}

/// All six estimates, computed on scoped threads; results are in
/// [`PatternId::ALL`] order.
pub fn estimate_all<F: Real>() -> Vec<Result<AsymptoticEstimate<F>>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = PatternId::ALL.iter().map(|&p| scope.spawn(move || estimate::<F>(p))).collect();
        handles.into_iter().map(|h| h.join().expect("estimate thread panicked")).collect()
    })
}

/// `K v^n` for the avoidance count of `p`.
pub fn predict_count<F: Real>(p: PatternId, n: u32) -> Result<F> {
    Ok(estimate::<F>(p)?.predict(n))
}
