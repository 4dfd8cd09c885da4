//! Closed forms over ℕ built from `1/(x;x)_p`.
//!
//! These are cross-checks for the materialized builders, which remain the
//! primary path for `A = ℕ`.

use crate::series::{Coefficient, GradingVar, TruncatedSeries};

/// `1/(x;x)_p = Π_{j=1..p} 1/(1 - x^j)`, the partition generating function
/// for parts of size at most `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct QPochhammerInverse<T> {
    pub p: u32,
    pub order: u32,
    pub series: TruncatedSeries<T>,
}

pub fn q_pochhammer_inverse<T: Coefficient>(p: u32, order: u32) -> QPochhammerInverse<T> {
    let len = order as usize + 1;
    let mut counts = vec![T::zero(); len];
    counts[0] = T::one();
    for j in 1..=p as usize {
        for n in j..len {
            let prev = counts[n - j].clone();
            counts[n] += prev;
        }
    }
    let terms = counts.into_iter().enumerate().map(|(n, c)| (crate::series::Exponents::new(n as u32, 0, 0), c));
    QPochhammerInverse { p, order, series: TruncatedSeries::from_terms(GradingVar::X, order, terms) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NatForm {
    /// `t^p(ℕ) = x^{p(p+1)/2} z^p / (x;x)_p`
    T,
    /// `M^{2s}(ℕ) = x^{s(s+2)} z^{2s} / (x;x)_{2s}`
    MEven,
    /// `M^{2s+1}(ℕ) = x^{s^2+3s+1} z^{2s+1} / (x;x)_{2s+1}`
    MOdd,
    /// `N^{2s+1}(ℕ) = x^{(s+1)^2} z^{2s+1} / (x;x)_{2s+1}`
    NOdd,
}

impl NatForm {
    /// `(x exponent, z exponent, q-Pochhammer length)` for index `s` (or `p`).
    pub fn shape(self, s: u32) -> (u32, u32, u32) {
        match self {
            NatForm::T => (s * (s + 1) / 2, s, s),
            NatForm::MEven => (s * (s + 2), 2 * s, 2 * s),
            NatForm::MOdd => (s * s + 3 * s + 1, 2 * s + 1, 2 * s + 1),
            NatForm::NOdd => ((s + 1) * (s + 1), 2 * s + 1, 2 * s + 1),
        }
    }
}

pub fn nat_closed_form<T: Coefficient>(kind: NatForm, s: u32, order: u32) -> TruncatedSeries<T> {
    let (xe, ze, len) = kind.shape(s);
    let lead = TruncatedSeries::monomial(GradingVar::X, order, xe, ze, 0, T::one());
    &lead * &q_pochhammer_inverse(len, order).series
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::{m_poly, n_poly, t_poly};
    use crate::patterns::PartSet;
    use num_bigint::BigInt;

    type S = TruncatedSeries<BigInt>;

    #[test]
    fn q_pochhammer_inverse_inverts_the_product() {
        for p in 0..=6 {
            let inv = q_pochhammer_inverse::<BigInt>(p, 20);
            let one = S::one(GradingVar::X, 20);
            let product = (1..=p)
                .fold(one.clone(), |acc, j| &acc * &(&one - &S::monomial(GradingVar::X, 20, j, 0, 0, BigInt::from(1))));
            assert_eq!(&inv.series * &product, one);
            assert!(inv.series.has_nonnegative_coefficients());
        }
        // partitions of 10
        let all = q_pochhammer_inverse::<BigInt>(10, 10);
        assert_eq!(all.series.coefficient(10, 0, 0).unwrap(), BigInt::from(42));
    }

    #[test]
    fn single_part_selection() {
        let t1 = nat_closed_form::<BigInt>(NatForm::T, 1, 8);
        for n in 1..=8 {
            assert_eq!(t1.coefficient(n, 1, 0).unwrap(), BigInt::from(1));
        }
        assert_eq!(t1.len(), 8);
    }

    #[test]
    fn closed_forms_match_materialized_sums() {
        let order = 20;
        for s in 0..=5 {
            assert_eq!(nat_closed_form::<BigInt>(NatForm::T, s, order), t_poly(&PartSet::nat(), s as usize, order));
        }
        for s in 1..=4 {
            let two_s = (2 * s) as usize;
            assert_eq!(nat_closed_form::<BigInt>(NatForm::MEven, s, order), m_poly(&PartSet::nat(), two_s, order));
            assert_eq!(nat_closed_form::<BigInt>(NatForm::MOdd, s, order), m_poly(&PartSet::nat(), two_s + 1, order));
            assert_eq!(nat_closed_form::<BigInt>(NatForm::NOdd, s, order), n_poly(&PartSet::nat(), two_s + 1, order));
        }
        assert_eq!(nat_closed_form::<BigInt>(NatForm::MOdd, 0, order), m_poly(&PartSet::nat(), 1, order));
        assert_eq!(nat_closed_form::<BigInt>(NatForm::NOdd, 0, order), n_poly(&PartSet::nat(), 1, order));
    }
}
