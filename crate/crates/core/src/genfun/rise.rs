//! Rise-rise (123): distinct-part selections `t^p`, the auxiliary series `D`,
//! and both the closed form and the part-by-part recursion.

use super::{binomial, PartWeights};
use crate::patterns::PartSet;
use crate::series::{Coefficient, SeriesError, TruncatedSeries};

/// `t^0, t^1, ...` where `t^p = Σ_{i_1 < ... < i_p} b_{i_1} ... b_{i_p}`,
/// built by peeling parts off the front of the suffix view `A_k`.
/// The list stops at the last nonzero `t^p`.
pub fn t_polys<T: Coefficient>(w: &PartWeights<T>) -> Vec<TruncatedSeries<T>> {
    // Every weight has grading degree >= 1, so t^p vanishes for p > order.
    let max_p = w.len().min(w.order() as usize);
    let mut t = vec![w.zero(); max_p + 1];
    t[0] = w.one();
    for (seen, b) in w.weights().iter().rev().enumerate() {
        let top = (seen + 1).min(max_p);
        for p in (1..=top).rev() {
            let add = b * &t[p - 1];
            t[p] = &t[p] + &add;
        }
    }
    while t.len() > 1 && t.last().is_some_and(TruncatedSeries::is_zero) {
        t.pop();
    }
    t
}

/// `t^p(A)` truncated at `x^order`.
pub fn t_poly<T: Coefficient>(set: &PartSet, p: usize, order: u32) -> TruncatedSeries<T> {
    let w = PartWeights::compositions(set, order);
    t_polys(&w).get(p).cloned().unwrap_or_else(|| w.zero())
}

struct RiseParts<T> {
    /// `1 - t^1 - Σ_{p>=3} Σ_j C(p-3, j) t^{p+j} (y-1)^{p-2}`
    denominator: TruncatedSeries<T>,
    /// `1 + Σ_{p>=2} Σ_j C(p-2, j) t^{p+j} (y-1)^{p-1}`
    d_numerator: TruncatedSeries<T>,
}

fn rise_parts<T: Coefficient>(w: &PartWeights<T>) -> RiseParts<T> {
    let t = t_polys(w);
    let top = t.len() - 1;
    let y_minus_1 = -&w.one_minus_y();
    let ym1 = w.powers(&y_minus_1, top);
    let tp = |q: usize| t.get(q);

    let mut denominator = w.one();
    if let Some(t1) = tp(1) {
        denominator = &denominator - t1;
    }
    for p in 3..=top {
        for j in 0..=p - 3 {
            if let Some(tq) = tp(p + j) {
                let c: T = binomial((p - 3) as i64, j as i64);
                denominator = &denominator - &(tq * &ym1[p - 2]).scale(&c);
            }
        }
    }

    let mut d_numerator = w.one();
    for p in 2..=top {
        for j in 0..=p - 2 {
            if let Some(tq) = tp(p + j) {
                let c: T = binomial((p - 2) as i64, j as i64);
                d_numerator = &d_numerator + &(tq * &ym1[p - 1]).scale(&c);
            }
        }
    }
    RiseParts { denominator, d_numerator }
}

pub fn gf_123_with<T: Coefficient>(w: &PartWeights<T>) -> Result<TruncatedSeries<T>, SeriesError> {
    rise_parts(w).denominator.reciprocal()
}

/// Compositions `σ` with parts in `A` counted by occurrences of 123 in `aσ`,
/// for a sentinel `a` below every part of `A`.
pub fn d_series_with<T: Coefficient>(w: &PartWeights<T>) -> Result<TruncatedSeries<T>, SeriesError> {
    let parts = rise_parts(w);
    Ok(&parts.d_numerator * &parts.denominator.reciprocal()?)
}

/// Builds `C` and `D` together, adding parts from the largest down:
/// `D <- ((1 - b(1-y)) D + b(1-y)) / (1 - b D)` and `C <- C / (1 - b D)`.
pub fn gf_123_recursive_with<T: Coefficient>(w: &PartWeights<T>) -> Result<TruncatedSeries<T>, SeriesError> {
    let one = w.one();
    let u = w.one_minus_y();
    let mut c = w.one();
    let mut d = w.one();
    for b in w.weights().iter().rev() {
        let inv = (&one - &(b * &d)).reciprocal()?;
        let bu = b * &u;
        c = &c * &inv;
        d = &(&(&(&one - &bu) * &d) + &bu) * &inv;
    }
    Ok(c)
}

pub fn gf_123<T: Coefficient>(set: &PartSet, order: u32) -> Result<TruncatedSeries<T>, SeriesError> {
    gf_123_with(&PartWeights::compositions(set, order))
}

pub fn d_series<T: Coefficient>(set: &PartSet, order: u32) -> Result<TruncatedSeries<T>, SeriesError> {
    d_series_with(&PartWeights::compositions(set, order))
}

pub fn gf_123_recursive<T: Coefficient>(set: &PartSet, order: u32) -> Result<TruncatedSeries<T>, SeriesError> {
    gf_123_recursive_with(&PartWeights::compositions(set, order))
}
