//! Truncated trivariate power series with exact coefficients.
//!
//! A series lives in `Z[y][[x, z]]` (or any other signed ring in place of `Z`)
//! and is truncated by the degree of one designated grading variable: `x` for
//! composition series, `z` for word series. Monomials are written
//! `x^n z^m y^r`.
//!
//! Internally the series is stored as one sparse layer per grading degree,
//! each layer keyed by the two remaining exponents. Zero coefficients are
//! never stored, so structural equality is series equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{NumAssign, Signed};
use thiserror::Error;

/// Scalars usable as series coefficients.
pub trait Coefficient: Clone + fmt::Debug + PartialEq + Signed + NumAssign + Send + Sync {}

impl<T> Coefficient for T where T: Clone + fmt::Debug + PartialEq + Signed + NumAssign + Send + Sync {}

/// The variable whose exponent bounds truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GradingVar {
    /// Truncate by the exponent of `x` (composition sum).
    X,
    /// Truncate by the exponent of `z` (word length).
    Z,
}

/// Exponent triple `(n, m, r)` of `x^n z^m y^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponents {
    pub n: u32,
    pub m: u32,
    pub r: u32,
}

impl Exponents {
    pub const fn new(n: u32, m: u32, r: u32) -> Self {
        Self { n, m, r }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("operands live in different rings: ({left_grading:?}, order {left_order}) vs ({right_grading:?}, order {right_order})")]
    Mismatch { left_grading: GradingVar, left_order: u32, right_grading: GradingVar, right_order: u32 },
    #[error("series is not invertible: constant term must be +1 or -1")]
    NonInvertible,
    #[error("non-constant term {0:?} has grading degree 0; normalize the series before inverting")]
    Representation(Exponents),
    #[error("coefficient {exps:?} lies beyond truncation order {order}")]
    OutOfRange { exps: Exponents, order: u32 },
    #[error("operation requires grading {expected:?}, found {found:?}")]
    WrongGrading { expected: GradingVar, found: GradingVar },
}

type Layer<T> = BTreeMap<(u32, u32), T>;

/// Exact power series in `x, z, y`, truncated above `order` in the grading variable.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<T> {
    grading: GradingVar,
    order: u32,
    // layers[d] holds every term whose grading exponent is d, keyed by
    // (other exponent, r) where "other" is m for X grading and n for Z grading.
    layers: Vec<Layer<T>>,
}

impl<T: Coefficient> TruncatedSeries<T> {
    pub fn zero(grading: GradingVar, order: u32) -> Self {
        Self { grading, order, layers: vec![Layer::new(); order as usize + 1] }
    }

    pub fn one(grading: GradingVar, order: u32) -> Self {
        Self::constant(grading, order, T::one())
    }

    pub fn constant(grading: GradingVar, order: u32, c: T) -> Self {
        Self::monomial(grading, order, 0, 0, 0, c)
    }

    /// `c x^n z^m y^r`, or zero when the grading exponent exceeds `order`.
    pub fn monomial(grading: GradingVar, order: u32, n: u32, m: u32, r: u32, c: T) -> Self {
        let mut s = Self::zero(grading, order);
        s.add_term(Exponents::new(n, m, r), c);
        s
    }

    /// Builds a series from arbitrary terms; duplicates are summed and terms
    /// above the order are dropped.
    pub fn from_terms<I>(grading: GradingVar, order: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, T)>,
    {
        let mut s = Self::zero(grading, order);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    /// A copy of this series living in the same ring as `other`.
    pub fn like(other: &Self, c: T) -> Self {
        Self::constant(other.grading, other.order, c)
    }

    pub fn grading(&self) -> GradingVar {
        self.grading
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.layers.iter().all(BTreeMap::is_empty)
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.layers.iter().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Smallest grading degree carrying a nonzero term.
    pub fn min_degree(&self) -> Option<u32> {
        self.layers.iter().position(|l| !l.is_empty()).map(|d| d as u32)
    }

    fn split(&self, e: Exponents) -> (u32, (u32, u32)) {
        match self.grading {
            GradingVar::X => (e.n, (e.m, e.r)),
            GradingVar::Z => (e.m, (e.n, e.r)),
        }
    }

    fn join(&self, d: u32, key: (u32, u32)) -> Exponents {
        match self.grading {
            GradingVar::X => Exponents::new(d, key.0, key.1),
            GradingVar::Z => Exponents::new(key.0, d, key.1),
        }
    }

    fn add_term(&mut self, e: Exponents, c: T) {
        let (d, key) = self.split(e);
        if d > self.order || c.is_zero() {
            return;
        }
        accumulate(&mut self.layers[d as usize], key, c);
    }

    /// Terms in ascending `(grading degree, other, r)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponents, &T)> + '_ {
        self.layers
            .iter()
            .enumerate()
            .flat_map(move |(d, layer)| layer.iter().map(move |(&k, c)| (self.join(d as u32, k), c)))
    }

    /// Stored coefficient of `x^n z^m y^r`; queries past the truncation
    /// order are an error rather than a silent zero.
    pub fn coefficient(&self, n: u32, m: u32, r: u32) -> Result<T, SeriesError> {
        let e = Exponents::new(n, m, r);
        let (d, key) = self.split(e);
        if d > self.order {
            return Err(SeriesError::OutOfRange { exps: e, order: self.order });
        }
        Ok(self.layers[d as usize].get(&key).cloned().unwrap_or_else(T::zero))
    }

    fn check_same_ring(&self, other: &Self) -> Result<(), SeriesError> {
        if self.grading != other.grading || self.order != other.order {
            return Err(SeriesError::Mismatch {
                left_grading: self.grading,
                left_order: self.order,
                right_grading: other.grading,
                right_order: other.order,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (d, layer) in other.layers.iter().enumerate() {
            for (&k, c) in layer {
                accumulate(&mut out.layers[d], k, c.clone());
            }
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_add(&-other)
    }

    /// Convolution product, dropping terms whose grading degree exceeds the order.
    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same_ring(other)?;
        let order = self.order as usize;
        let mut out = Self::zero(self.grading, self.order);
        for (d1, l1) in self.layers.iter().enumerate() {
            if l1.is_empty() {
                continue;
            }
            for (d2, l2) in other.layers.iter().enumerate().take(order - d1 + 1) {
                if l2.is_empty() {
                    continue;
                }
                let target = &mut out.layers[d1 + d2];
                for (&(a1, r1), c1) in l1 {
                    for (&(a2, r2), c2) in l2 {
                        accumulate(target, (a1 + a2, r1 + r2), c1.clone() * c2.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.grading, self.order);
        }
        let mut out = self.clone();
        for layer in &mut out.layers {
            for v in layer.values_mut() {
                *v = v.clone() * c.clone();
            }
        }
        out
    }

    /// Multiplicative inverse, solved degree by degree in the grading variable.
    ///
    /// Requires a constant term of `±1` and no other term of grading degree 0,
    /// so the result stays fraction-free.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let base = &self.layers[0];
        let unit = match base.get(&(0, 0)) {
            Some(c) if c.is_one() || (-c.clone()).is_one() => c.clone(),
            _ => return Err(SeriesError::NonInvertible),
        };
        if let Some((&k, _)) = base.iter().find(|(&k, _)| k != (0, 0)) {
            return Err(SeriesError::Representation(self.join(0, k)));
        }
        let mut inv = Self::zero(self.grading, self.order);
        inv.layers[0].insert((0, 0), unit.clone());
        for d in 1..=self.order as usize {
            let mut acc = Layer::new();
            for i in 1..=d {
                let (la, lb) = (&self.layers[i], &inv.layers[d - i]);
                for (&(a1, r1), c1) in la {
                    for (&(a2, r2), c2) in lb {
                        accumulate(&mut acc, (a1 + a2, r1 + r2), c1.clone() * c2.clone());
                    }
                }
            }
            // b_d = -(1/a_0) * sum, and 1/a_0 = a_0 for a unit.
            let neg_unit = -unit.clone();
            for v in acc.values_mut() {
                *v = v.clone() * neg_unit.clone();
            }
            inv.layers[d] = acc;
        }
        Ok(inv)
    }

    /// Sets `y = 0`: keeps only the terms with `r = 0`.
    pub fn substitute_y0(&self) -> Self {
        let mut out = self.clone();
        for layer in &mut out.layers {
            layer.retain(|&(_, r), _| r == 0);
        }
        out
    }

    /// Sets `y = 1`: sums coefficients over `r`.
    pub fn substitute_y1(&self) -> Self {
        let mut out = Self::zero(self.grading, self.order);
        for (d, layer) in self.layers.iter().enumerate() {
            for (&(a, _), c) in layer {
                accumulate(&mut out.layers[d], (a, 0), c.clone());
            }
        }
        out
    }

    /// Sets `z = 1` on an `x`-graded series: sums coefficients over `m`.
    pub fn substitute_z1(&self) -> Result<Self, SeriesError> {
        if self.grading != GradingVar::X {
            return Err(SeriesError::WrongGrading { expected: GradingVar::X, found: self.grading });
        }
        let mut out = Self::zero(self.grading, self.order);
        for (d, layer) in self.layers.iter().enumerate() {
            for (&(_, r), c) in layer {
                accumulate(&mut out.layers[d], (0, r), c.clone());
            }
        }
        Ok(out)
    }

    /// The same series read at a lower truncation order.
    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        Self { grading: self.grading, order, layers: self.layers[..=order as usize].to_vec() }
    }

    /// Coefficients along the grading variable after `y = 0` and collapsing
    /// the other variable, i.e. the avoidance sequence `a(0..=order)`.
    pub fn avoidance_sequence(&self) -> Vec<T> {
        self.layers
            .iter()
            .map(|layer| layer.iter().filter(|(&(_, r), _)| r == 0).fold(T::zero(), |acc, (_, c)| acc + c.clone()))
            .collect()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.grading, self.order);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms().all(|(_, c)| !c.is_negative())
    }
}

fn accumulate<T: Coefficient>(layer: &mut Layer<T>, key: (u32, u32), c: T) {
    if c.is_zero() {
        return;
    }
    match layer.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for TruncatedSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[{:?}<={}](", self.grading, self.order)?;
        let mut first = true;
        for (d, layer) in self.layers.iter().enumerate() {
            for (&(o, r), c) in layer {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                let (n, m) = match self.grading {
                    GradingVar::X => (d as u32, o),
                    GradingVar::Z => (o, d as u32),
                };
                write!(f, "{c:?}*x^{n}z^{m}y^{r}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

// Operator forms panic on ring mismatch; the `try_*` methods report it.

impl<T: Coefficient> Add for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn add(self, rhs: Self) -> TruncatedSeries<T> {
        self.try_add(rhs).expect("series addition")
    }
}

impl<T: Coefficient> Sub for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn sub(self, rhs: Self) -> TruncatedSeries<T> {
        self.try_sub(rhs).expect("series subtraction")
    }
}

impl<T: Coefficient> Mul for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn mul(self, rhs: Self) -> TruncatedSeries<T> {
        self.try_mul(rhs).expect("series multiplication")
    }
}

impl<T: Coefficient> Neg for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn neg(self) -> TruncatedSeries<T> {
        self.scale(&-T::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type S = TruncatedSeries<BigInt>;

    fn mono(order: u32, n: u32, m: u32, r: u32, c: i64) -> S {
        S::monomial(GradingVar::X, order, n, m, r, BigInt::from(c))
    }

    #[test]
    fn monomial_construction() {
        assert_eq!(mono(10, 0, 0, 0, 1), S::one(GradingVar::X, 10));
        assert!(mono(5, 7, 1, 0, 1).is_zero());
        let s = mono(10, 3, 1, 0, 1);
        assert_eq!(s.len(), 1);
        assert_eq!(s.coefficient(3, 1, 0).unwrap(), BigInt::from(1));
    }

    #[test]
    fn addition_examples() {
        let x = mono(5, 1, 0, 0, 1);
        assert!((&x + &-&x).is_zero());
        let s = &S::one(GradingVar::X, 5) + &x;
        let terms: Vec<_> = s.terms().map(|(e, c)| (e, c.clone())).collect();
        assert_eq!(terms, vec![(Exponents::new(0, 0, 0), BigInt::from(1)), (Exponents::new(1, 0, 0), BigInt::from(1))]);
        let one_minus_y = &S::one(GradingVar::X, 5) - &mono(5, 0, 0, 1, 1);
        assert_eq!(&one_minus_y + &mono(5, 0, 0, 1, 1), S::one(GradingVar::X, 5));
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = S::one(GradingVar::X, 5);
        let b = S::one(GradingVar::X, 6);
        let c = S::one(GradingVar::Z, 5);
        assert!(matches!(a.try_add(&b), Err(SeriesError::Mismatch { .. })));
        assert!(matches!(a.try_mul(&c), Err(SeriesError::Mismatch { .. })));
    }

    #[test]
    fn multiplication_examples() {
        let one = S::one(GradingVar::X, 5);
        let x = mono(5, 1, 0, 0, 1);
        assert_eq!(&(&one + &x) * &(&one - &x), &one - &mono(5, 2, 0, 0, 1));
        let xz = mono(5, 1, 1, 0, 1);
        assert_eq!(&xz * &xz, mono(5, 2, 2, 0, 1));
        let geo = S::from_terms(GradingVar::X, 3, (0..=3).map(|n| (Exponents::new(n, 0, 0), BigInt::from(1))));
        let one3 = S::one(GradingVar::X, 3);
        assert_eq!(&geo * &(&one3 - &mono(3, 1, 0, 0, 1)), one3);
    }

    #[test]
    fn reciprocal_examples() {
        let one = S::one(GradingVar::X, 5);
        assert_eq!(one.reciprocal().unwrap(), one);
        let inv = (&one - &mono(5, 1, 0, 0, 1)).reciprocal().unwrap();
        for n in 0..=5 {
            assert_eq!(inv.coefficient(n, 0, 0).unwrap(), BigInt::from(1));
        }
        assert_eq!(inv.len(), 6);

        // 1 + xz(1+xz)(1-y) at order 3
        let o = 3;
        let one = S::one(GradingVar::X, o);
        let xz = mono(o, 1, 1, 0, 1);
        let omy = &one - &mono(o, 0, 0, 1, 1);
        let a = &one + &(&(&xz * &(&one + &xz)) * &omy);
        let b = a.reciprocal().unwrap();
        assert_eq!(&a * &b, one);
    }

    #[test]
    fn reciprocal_errors() {
        let two = S::constant(GradingVar::X, 4, BigInt::from(2));
        assert_eq!(two.reciprocal(), Err(SeriesError::NonInvertible));
        assert_eq!(mono(4, 1, 0, 0, 1).reciprocal(), Err(SeriesError::NonInvertible));
        let one_minus_y = &S::one(GradingVar::X, 4) - &mono(4, 0, 0, 1, 1);
        assert_eq!(one_minus_y.reciprocal(), Err(SeriesError::Representation(Exponents::new(0, 0, 1))));
        let minus_one = S::constant(GradingVar::X, 4, BigInt::from(-1));
        assert_eq!(minus_one.reciprocal().unwrap(), minus_one);
    }

    #[test]
    fn substitutions() {
        let s = &S::one(GradingVar::X, 4) + &mono(4, 1, 0, 1, 1);
        assert_eq!(s.substitute_y0(), S::one(GradingVar::X, 4));
        let plain = &S::one(GradingVar::X, 4) + &mono(4, 2, 1, 0, 3);
        assert_eq!(plain.substitute_y0(), plain);

        let t = &mono(4, 1, 1, 0, 1) + &mono(4, 1, 2, 0, 1);
        assert_eq!(t.substitute_z1().unwrap(), mono(4, 1, 0, 0, 2));
        let zfree = &S::one(GradingVar::X, 4) + &mono(4, 3, 0, 2, 5);
        assert_eq!(zfree.substitute_z1().unwrap(), zfree);
        let w = S::one(GradingVar::Z, 4);
        assert!(matches!(w.substitute_z1(), Err(SeriesError::WrongGrading { .. })));
    }

    #[test]
    fn coefficient_lookup() {
        let one = S::one(GradingVar::X, 4);
        assert_eq!(one.coefficient(0, 0, 0).unwrap(), BigInt::from(1));
        assert_eq!(one.coefficient(2, 7, 9).unwrap(), BigInt::from(0));
        assert!(matches!(one.coefficient(5, 0, 0), Err(SeriesError::OutOfRange { .. })));
        let w = S::one(GradingVar::Z, 4);
        // For word series the bound is on m, not n.
        assert_eq!(w.coefficient(9, 0, 0).unwrap(), BigInt::from(0));
        assert!(w.coefficient(0, 5, 0).is_err());
    }

    #[test]
    fn works_over_machine_integers_and_rationals() {
        use num_rational::Ratio;
        let one = TruncatedSeries::<i64>::one(GradingVar::Z, 6);
        let z = TruncatedSeries::<i64>::monomial(GradingVar::Z, 6, 0, 1, 0, 1);
        let inv = (&one - &(&z + &(&z * &z))).reciprocal().unwrap();
        let fib: Vec<i64> = (0..=6).map(|m| inv.coefficient(0, m, 0).unwrap()).collect();
        assert_eq!(fib, vec![1, 1, 2, 3, 5, 8, 13]);

        let half = Ratio::new(1i64, 2);
        let q = TruncatedSeries::<Ratio<i64>>::monomial(GradingVar::X, 4, 1, 0, 0, half);
        let one = TruncatedSeries::<Ratio<i64>>::one(GradingVar::X, 4);
        let inv = (&one - &q).reciprocal().unwrap();
        assert_eq!(inv.coefficient(3, 0, 0).unwrap(), Ratio::new(1, 8));
    }

    fn arb_series(grading: GradingVar, order: u32) -> impl Strategy<Value = S> {
        prop::collection::vec(((0..=order), (0..4u32), (0..4u32), -5i64..=5), 0..8).prop_map(move |ts| {
            let terms = ts.into_iter().map(|(d, a, r, c)| {
                let e = match grading {
                    GradingVar::X => Exponents::new(d, a, r),
                    GradingVar::Z => Exponents::new(a, d, r),
                };
                (e, BigInt::from(c))
            });
            S::from_terms(grading, order, terms)
        })
    }

    fn arb_unit_series(order: u32) -> impl Strategy<Value = S> {
        (arb_series(GradingVar::X, order), prop::bool::ANY).prop_map(move |(s, neg)| {
            let mut t = S::zero(GradingVar::X, order);
            for (e, c) in s.terms() {
                if e.n > 0 {
                    t = &t + &S::monomial(GradingVar::X, order, e.n, e.m, e.r, c.clone());
                }
            }
            let c0 = if neg { BigInt::from(-1) } else { BigInt::from(1) };
            &t + &S::constant(GradingVar::X, order, c0)
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_series(GradingVar::X, 5), b in arb_series(GradingVar::X, 5), c in arb_series(GradingVar::X, 5)) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn ring_laws_word_grading(a in arb_series(GradingVar::Z, 4), b in arb_series(GradingVar::Z, 4)) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a - &b) + &b, a);
        }

        #[test]
        fn reciprocal_round_trip(a in arb_unit_series(6)) {
            let inv = a.reciprocal().unwrap();
            prop_assert_eq!(&a * &inv, S::one(GradingVar::X, 6));
        }

        #[test]
        fn truncation_commutes_with_products(a in arb_series(GradingVar::X, 6), b in arb_series(GradingVar::X, 6)) {
            prop_assert_eq!((&a * &b).truncate(3), &a.truncate(3) * &b.truncate(3));
        }
    }
}
