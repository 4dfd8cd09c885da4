//! Generating functions for pattern occurrences over a part set.
//!
//! Every builder works on a [`PartWeights`]: the ordered list of part
//! weights `b_i` together with the ring they live in. For compositions
//! `b_i = x^{a_i} z` under `x`-grading; for words over `[k]` the `x`-degree
//! is forced to zero and `b_i = z` under `z`-grading. The same formulas serve
//! both families.

mod nat;
mod peak;
mod rise;

pub use nat::{nat_closed_form, q_pochhammer_inverse, NatForm, QPochhammerInverse};
pub use peak::{
    gf_peak, gf_peak_recursive, gf_peak_recursive_with, gf_peak_with, gf_valley, gf_valley_with, m_n_suffix, m_poly,
    m_prefix, n_poly,
};
pub use rise::{
    d_series, d_series_with, gf_123, gf_123_recursive, gf_123_recursive_with, gf_123_with, t_poly, t_polys,
};

use crate::patterns::{PartSet, PatternId};
use crate::series::{Coefficient, GradingVar, SeriesError, TruncatedSeries};

/// Part weights `b_i` in ascending part order, with their ring.
#[derive(Clone, Debug)]
pub struct PartWeights<T> {
    grading: GradingVar,
    order: u32,
    weights: Vec<TruncatedSeries<T>>,
}

impl<T: Coefficient> PartWeights<T> {
    /// `b_a = x^a z` for each part `a <= order`; ℕ materializes to `{1..order}`.
    pub fn compositions(set: &PartSet, order: u32) -> Self {
        let weights = set
            .materialize(order)
            .into_iter()
            .map(|a| TruncatedSeries::monomial(GradingVar::X, order, a, 1, 0, T::one()))
            .collect();
        Self { grading: GradingVar::X, order, weights }
    }

    /// `k` letters, each weighted `z`, truncated at word length `order`.
    pub fn words(k: u32, order: u32) -> Self {
        let weights = (0..k).map(|_| TruncatedSeries::monomial(GradingVar::Z, order, 0, 1, 0, T::one())).collect();
        Self { grading: GradingVar::Z, order, weights }
    }

    /// First `k` weights (the prefix view `{a_1, ..., a_k}`).
    pub fn prefix(&self, k: usize) -> Self {
        Self { grading: self.grading, order: self.order, weights: self.weights[..k].to_vec() }
    }

    pub fn grading(&self) -> GradingVar {
        self.grading
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn weights(&self) -> &[TruncatedSeries<T>] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn one(&self) -> TruncatedSeries<T> {
        TruncatedSeries::one(self.grading, self.order)
    }

    pub fn zero(&self) -> TruncatedSeries<T> {
        TruncatedSeries::zero(self.grading, self.order)
    }

    pub fn constant(&self, c: T) -> TruncatedSeries<T> {
        TruncatedSeries::constant(self.grading, self.order, c)
    }

    pub fn y(&self) -> TruncatedSeries<T> {
        TruncatedSeries::monomial(self.grading, self.order, 0, 0, 1, T::one())
    }

    pub fn one_minus_y(&self) -> TruncatedSeries<T> {
        &self.one() - &self.y()
    }

    /// `u^0, u^1, ..., u^max` for a fixed series `u`.
    pub(crate) fn powers(&self, u: &TruncatedSeries<T>, max: usize) -> Vec<TruncatedSeries<T>> {
        let mut out = Vec::with_capacity(max + 1);
        out.push(self.one());
        for i in 1..=max {
            let next = &out[i - 1] * u;
            out.push(next);
        }
        out
    }

    /// `1 / (1 - Σ b_i)`: compositions (or words) with no statistic tracked.
    pub fn unrestricted(&self) -> Result<TruncatedSeries<T>, SeriesError> {
        let sum = self.weights.iter().fold(self.zero(), |acc, b| &acc + b);
        (&self.one() - &sum).reciprocal()
    }
}

/// The integer `v` in an arbitrary coefficient ring.
pub fn int<T: Coefficient>(v: i64) -> T {
    let mut acc = T::zero();
    let mut unit = T::one();
    let mut bits = v.unsigned_abs();
    while bits > 0 {
        if bits & 1 == 1 {
            acc += unit.clone();
        }
        unit = unit.clone() + unit;
        bits >>= 1;
    }
    if v < 0 {
        -acc
    } else {
        acc
    }
}

/// `C(n, k)` by Pascal's rule; zero outside `0 <= k <= n`.
pub fn binomial<T: Coefficient>(n: i64, k: i64) -> T {
    if n < 0 || k < 0 || k > n {
        return T::zero();
    }
    let k = k.min(n - k) as usize;
    let mut row = vec![T::zero(); k + 1];
    row[0] = T::one();
    for i in 1..=n as usize {
        for j in (1..=k.min(i)).rev() {
            let prev = row[j - 1].clone();
            row[j] += prev;
        }
    }
    row[k].clone()
}

/// Level-level statistic.
pub fn gf_111_with<T: Coefficient>(w: &PartWeights<T>) -> Result<TruncatedSeries<T>, SeriesError> {
    let one = w.one();
    let u = w.one_minus_y();
    let mut sum = w.zero();
    for b in w.weights() {
        let num = b * &(&one + &(&u * b));
        let den = &one + &(&(b * &(&one + b)) * &u);
        sum = &sum + &(&num * &den.reciprocal()?);
    }
    (&one - &sum).reciprocal()
}

/// Level-rise (`ascending = true`, product over smaller parts) or
/// level-drop (product over larger parts).
fn gf_level_pair<T: Coefficient>(w: &PartWeights<T>, ascending: bool) -> Result<TruncatedSeries<T>, SeriesError> {
    let one = w.one();
    let u = w.one_minus_y();
    let factor = |b: &TruncatedSeries<T>| &one - &(&u * &(b * b));
    let mut sum = w.zero();
    let mut running = w.one();
    let order: Box<dyn Iterator<Item = &TruncatedSeries<T>>> =
        if ascending { Box::new(w.weights().iter()) } else { Box::new(w.weights().iter().rev()) };
    for b in order {
        sum = &sum + &(b * &running);
        running = &running * &factor(b);
    }
    (&one - &sum).reciprocal()
}

pub fn gf_112_with<T: Coefficient>(w: &PartWeights<T>) -> Result<TruncatedSeries<T>, SeriesError> {
    gf_level_pair(w, true)
}

pub fn gf_221_with<T: Coefficient>(w: &PartWeights<T>) -> Result<TruncatedSeries<T>, SeriesError> {
    gf_level_pair(w, false)
}

pub fn gf_111<T: Coefficient>(set: &PartSet, order: u32) -> Result<TruncatedSeries<T>, SeriesError> {
    gf_111_with(&PartWeights::compositions(set, order))
}

pub fn gf_112<T: Coefficient>(set: &PartSet, order: u32) -> Result<TruncatedSeries<T>, SeriesError> {
    gf_112_with(&PartWeights::compositions(set, order))
}

pub fn gf_221<T: Coefficient>(set: &PartSet, order: u32) -> Result<TruncatedSeries<T>, SeriesError> {
    gf_221_with(&PartWeights::compositions(set, order))
}

/// The closed-form builder for `p` over arbitrary weights.
pub fn build_with<T: Coefficient>(p: PatternId, w: &PartWeights<T>) -> Result<TruncatedSeries<T>, SeriesError> {
    let s = match p {
        PatternId::P111 => gf_111_with(w),
        PatternId::P112 => gf_112_with(w),
        PatternId::P221 => gf_221_with(w),
        PatternId::P123 => gf_123_with(w),
        PatternId::Peak => gf_peak_with(w),
        PatternId::Valley => gf_valley_with(w),
    }?;
    debug_assert!(s.has_nonnegative_coefficients(), "{p} builder produced a negative count");
    Ok(s)
}

/// `C_p(x, y, z)` over `set`, truncated at `x^order`.
pub fn build<T: Coefficient>(p: PatternId, set: &PartSet, order: u32) -> Result<TruncatedSeries<T>, SeriesError> {
    build_with(p, &PartWeights::compositions(set, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::brute_force_table;
    use crate::patterns::OccurrenceTable;
    use num_bigint::BigInt;

    fn seq(s: &TruncatedSeries<BigInt>) -> Vec<i64> {
        s.substitute_y0().substitute_z1().unwrap().terms().map(|(_, c)| i64::try_from(c.clone()).unwrap()).collect()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial::<i64>(5, 2), 10);
        assert_eq!(binomial::<i64>(0, 0), 1);
        assert_eq!(binomial::<i64>(4, 5), 0);
        assert_eq!(binomial::<i64>(4, -1), 0);
        assert_eq!(binomial::<i64>(-1, 0), 0);
        assert_eq!(binomial::<i64>(30, 15), 155_117_520);
        assert_eq!(int::<BigInt>(-13), BigInt::from(-13));
        assert_eq!(int::<i64>(0), 0);
    }

    #[test]
    fn level_level_golden() {
        let s = gf_111::<BigInt>(&PartSet::nat(), 25).unwrap();
        let expected = [
            1, 1, 2, 3, 7, 13, 24, 46, 89, 170, 324, 618, 1183, 2260, 4318, 8249, 15765, 30123, 57556, 109973, 210137,
            401525, 767216, 1465963, 2801115, 5352275,
        ];
        assert_eq!(seq(&s), expected);
        let collapsed = s.substitute_y0().substitute_z1().unwrap();
        assert_eq!(collapsed.coefficient(25, 0, 0).unwrap(), BigInt::from(5_352_275));
        assert_eq!(s.coefficient(3, 3, 1).unwrap(), BigInt::from(1));
        assert_eq!(s.coefficient(0, 0, 0).unwrap(), BigInt::from(1));
    }

    #[test]
    fn level_pair_golden() {
        let s = gf_112::<BigInt>(&PartSet::nat(), 20).unwrap();
        assert_eq!(
            seq(&s),
            [1, 1, 2, 4, 7, 13, 24, 43, 78, 142, 256, 463, 838, 1513, 2735, 4944, 8931, 16139, 29164, 52693, 95213]
        );
        let s = gf_221::<BigInt>(&PartSet::nat(), 20).unwrap();
        assert_eq!(
            seq(&s),
            [
                1, 1, 2, 4, 8, 15, 30, 58, 113, 220, 429, 835, 1627, 3169, 6172, 12023, 23419, 45616, 88853, 173073,
                337118
            ]
        );
    }

    #[test]
    fn level_builders_match_oracle_on_134() {
        let set = PartSet::finite(vec![1, 3, 4]).unwrap();
        for p in [PatternId::P111, PatternId::P112, PatternId::P221] {
            let s = build::<BigInt>(p, &set, 14).unwrap();
            let got = OccurrenceTable::from_series(p, set.clone(), 14, &s);
            assert_eq!(brute_force_table(p, &set, 14).compare(&got).1, vec![], "{p}");
        }
    }

    #[test]
    fn machine_integers_agree_with_bigint() {
        for p in PatternId::ALL {
            let a = build::<i64>(p, &PartSet::nat(), 12).unwrap();
            let b = build::<BigInt>(p, &PartSet::nat(), 12).unwrap();
            let a: Vec<_> = a.terms().map(|(e, c)| (e, BigInt::from(*c))).collect();
            let b: Vec<_> = b.terms().map(|(e, c)| (e, c.clone())).collect();
            assert_eq!(a, b, "{p}");
        }
    }

    #[test]
    fn empty_weight_list_gives_one() {
        let w = PartWeights::<BigInt>::compositions(&PartSet::finite(vec![9]).unwrap(), 5);
        assert!(w.is_empty());
        for p in PatternId::ALL {
            assert_eq!(build_with(p, &w).unwrap(), w.one());
        }
    }
}
