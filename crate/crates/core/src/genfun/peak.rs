//! Peaks and valleys.
//!
//! `M^s(A)` sums `b_{i_1} ... b_{i_s}` over index tuples with alternating
//! constraints `i_1 < i_2 <= i_3 < i_4 <= ...`; `N^s(A)` uses the mirrored
//! pattern `i_1 <= i_2 < i_3 <= ...`. Each index contributes one weight `b_i`,
//! so `M^s` has `z`-degree exactly `s`.

use super::PartWeights;
use crate::patterns::PartSet;
use crate::series::{Coefficient, SeriesError, TruncatedSeries};

fn max_tuple_len<T: Coefficient>(w: &PartWeights<T>) -> usize {
    // A tuple needs a strict increase every other step, and each weight
    // has grading degree >= 1.
    (2 * w.len()).min(w.order() as usize)
}

/// `M^0, ..., M^smax` by extending the prefix `{a_1..a_k}` one part at a time:
/// `M^{2s}(k) = b_k M^{2s-1}(k-1) + M^{2s}(k-1)` and
/// `M^{2s+1}(k) = b_k M^{2s}(k) + M^{2s+1}(k-1)`.
pub fn m_prefix<T: Coefficient>(w: &PartWeights<T>) -> Vec<TruncatedSeries<T>> {
    let smax = max_tuple_len(w);
    let mut m = vec![w.zero(); smax + 1];
    m[0] = w.one();
    for b in w.weights() {
        for s in (2..=smax).step_by(2) {
            let add = b * &m[s - 1];
            m[s] = &m[s] + &add;
        }
        for s in (1..=smax).step_by(2) {
            let add = b * &m[s - 1];
            m[s] = &m[s] + &add;
        }
    }
    m
}

/// `(M^s, N^s)` for `s = 0..=smax` by peeling parts off the front of the
/// suffix view `A_k = {a_{k+1}..a_d}`:
/// `M^s(A_k) = b_{k+1} N^{s-1}(A_{k+1}) + M^s(A_{k+1})` and
/// `N^s(A_k) = b_{k+1} M^{s-1}(A_k) + N^s(A_{k+1})`.
pub fn m_n_suffix<T: Coefficient>(w: &PartWeights<T>) -> (Vec<TruncatedSeries<T>>, Vec<TruncatedSeries<T>>) {
    let smax = max_tuple_len(w);
    let mut m = vec![w.zero(); smax + 1];
    let mut n = vec![w.zero(); smax + 1];
    m[0] = w.one();
    n[0] = w.one();
    for b in w.weights().iter().rev() {
        for s in (1..=smax).rev() {
            let add = b * &n[s - 1];
            m[s] = &m[s] + &add;
        }
        for s in (1..=smax).rev() {
            let add = b * &m[s - 1];
            n[s] = &n[s] + &add;
        }
    }
    (m, n)
}

pub fn m_poly<T: Coefficient>(set: &PartSet, s: usize, order: u32) -> TruncatedSeries<T> {
    let w = PartWeights::compositions(set, order);
    m_prefix(&w).get(s).cloned().unwrap_or_else(|| w.zero())
}

pub fn n_poly<T: Coefficient>(set: &PartSet, s: usize, order: u32) -> TruncatedSeries<T> {
    let w = PartWeights::compositions(set, order);
    m_n_suffix(&w).1.get(s).cloned().unwrap_or_else(|| w.zero())
}

/// `num / (num - Σ_j odd[2j+1] (1-y)^j)` with `num = 1 + Σ_{j>=1} M^{2j} (1-y)^j`.
fn alternating_quotient<T: Coefficient>(
    w: &PartWeights<T>,
    even: &[TruncatedSeries<T>],
    odd: &[TruncatedSeries<T>],
) -> Result<TruncatedSeries<T>, SeriesError> {
    let u = w.one_minus_y();
    let upow = w.powers(&u, even.len() / 2 + 1);
    let mut num = w.one();
    for (j, m) in even.iter().enumerate().skip(2).step_by(2).map(|(s, m)| (s / 2, m)) {
        num = &num + &(m * &upow[j]);
    }
    let mut den = num.clone();
    for (j, m) in odd.iter().enumerate().skip(1).step_by(2).map(|(s, m)| (s / 2, m)) {
        den = &den - &(m * &upow[j]);
    }
    Ok(&num * &den.reciprocal()?)
}

pub fn gf_peak_with<T: Coefficient>(w: &PartWeights<T>) -> Result<TruncatedSeries<T>, SeriesError> {
    let m = m_prefix(w);
    alternating_quotient(w, &m, &m)
}

pub fn gf_valley_with<T: Coefficient>(w: &PartWeights<T>) -> Result<TruncatedSeries<T>, SeriesError> {
    let (m, n) = m_n_suffix(w);
    alternating_quotient(w, &m, &n)
}

/// Adds parts in increasing order, tracking where the current largest part sits:
/// `C <- ((1 + b(1-y)) C - b(1-y)) / (1 - b(1-b)(1-y) - b(b(1-y) + y) C)`.
pub fn gf_peak_recursive_with<T: Coefficient>(w: &PartWeights<T>) -> Result<TruncatedSeries<T>, SeriesError> {
    let one = w.one();
    let u = w.one_minus_y();
    let y = w.y();
    let mut c = w.one();
    for b in w.weights() {
        let bu = b * &u;
        let num = &(&(&one + &bu) * &c) - &bu;
        let den = &(&(&one - &(&(b * &(&one - b)) * &u)) - &(&(b * &(&bu + &y)) * &c));
        c = &num * &den.reciprocal()?;
    }
    Ok(c)
}

pub fn gf_peak<T: Coefficient>(set: &PartSet, order: u32) -> Result<TruncatedSeries<T>, SeriesError> {
    gf_peak_with(&PartWeights::compositions(set, order))
}

pub fn gf_valley<T: Coefficient>(set: &PartSet, order: u32) -> Result<TruncatedSeries<T>, SeriesError> {
    gf_valley_with(&PartWeights::compositions(set, order))
}

pub fn gf_peak_recursive<T: Coefficient>(set: &PartSet, order: u32) -> Result<TruncatedSeries<T>, SeriesError> {
    gf_peak_recursive_with(&PartWeights::compositions(set, order))
}
