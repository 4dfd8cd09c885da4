//! Words over `[k]`: the composition generating functions at `x = 1`.
//!
//! The primary path rebuilds each generating function with every part
//! weighted by `z` alone, graded and truncated by word length. The classical
//! closed forms for words live alongside it as independent cross-checks.

use crate::genfun::{binomial, build_with, int, PartWeights};
use crate::patterns::PatternId;
use crate::series::{Coefficient, GradingVar, SeriesError, TruncatedSeries};

/// A `z`-graded series with no `x`-exponents.
pub type WordSeries<T> = TruncatedSeries<T>;

struct Ring {
    order: u32,
}

impl Ring {
    fn mono<T: Coefficient>(&self, m: u32, r: u32, c: T) -> WordSeries<T> {
        TruncatedSeries::monomial(GradingVar::Z, self.order, 0, m, r, c)
    }

    fn one<T: Coefficient>(&self) -> WordSeries<T> {
        TruncatedSeries::one(GradingVar::Z, self.order)
    }

    fn zero<T: Coefficient>(&self) -> WordSeries<T> {
        TruncatedSeries::zero(GradingVar::Z, self.order)
    }

    fn z<T: Coefficient>(&self, m: u32) -> WordSeries<T> {
        self.mono(m, 0, T::one())
    }

    fn one_minus_y<T: Coefficient>(&self) -> WordSeries<T> {
        &self.one() - &self.mono(0, 1, T::one())
    }
}

/// Occurrence series for `p` over words in `[k]^m`, `m <= order`.
pub fn word_gf<T: Coefficient>(p: PatternId, k: u32, order: u32) -> Result<WordSeries<T>, SeriesError> {
    build_with(p, &PartWeights::words(k, order))
}

/// `(1 + z(1+z)(1-y)) / (1 - (k-1+y)z - (k-1)(1-y)z^2)`
pub fn w111_closed<T: Coefficient>(k: u32, order: u32) -> Result<WordSeries<T>, SeriesError> {
    let ring = Ring { order };
    let one = ring.one::<T>();
    let u = ring.one_minus_y::<T>();
    let z = ring.z::<T>(1);
    let num = &one + &(&(&z * &(&one + &z)) * &u);
    let km1 = int::<T>(k as i64 - 1);
    let lin = &ring.constant_y_plus(km1.clone()) * &z;
    let quad = (&u * &ring.z(2)).scale(&km1);
    let den = &(&one - &lin) - &quad;
    Ok(&num * &den.reciprocal()?)
}

impl Ring {
    /// `c + y`
    fn constant_y_plus<T: Coefficient>(&self, c: T) -> WordSeries<T> {
        &TruncatedSeries::constant(GradingVar::Z, self.order, c) + &self.mono(0, 1, T::one())
    }
}

/// Level-rise over words, in the unit-constant form obtained by cancelling
/// `(1-y)z` from `(1-y)z / ((1-y)z - 1 + (1 - (1-y)z^2)^k)`:
/// `1 / (1 - kz + Σ_{j=2..k} (-1)^j C(k,j) (1-y)^{j-1} z^{2j-1})`.
pub fn w112_closed<T: Coefficient>(k: u32, order: u32) -> Result<WordSeries<T>, SeriesError> {
    let ring = Ring { order };
    let u = ring.one_minus_y::<T>();
    let mut den = &ring.one::<T>() - &ring.z::<T>(1).scale(&int(k as i64));
    let mut upow = ring.one::<T>();
    for j in 2..=k as i64 {
        upow = &upow * &u;
        let mut c: T = binomial(k as i64, j);
        if j % 2 == 1 {
            c = -c;
        }
        den = &den + &(&upow * &ring.z((2 * j - 1) as u32)).scale(&c);
    }
    den.reciprocal()
}

/// `1 / (1 - kz - Σ_{p=3..k} Σ_{j=0..p-3} C(p-3,j) C(k,p+j) z^{p+j} (y-1)^{p-2})`
pub fn w123_closed<T: Coefficient>(k: u32, order: u32) -> Result<WordSeries<T>, SeriesError> {
    let ring = Ring { order };
    let ym1 = -&ring.one_minus_y::<T>();
    let k = k as i64;
    let mut den = &ring.one::<T>() - &ring.z::<T>(1).scale(&int(k));
    for p in 3..=k {
        let yp = ym1.pow((p - 2) as u32);
        for j in 0..=p - 3 {
            let c = binomial::<T>(p - 3, j) * binomial::<T>(k, p + j);
            den = &den - &(&yp * &ring.z((p + j) as u32)).scale(&c);
        }
    }
    den.reciprocal()
}

/// `U_n(y)` as ascending coefficients in `y`:
/// `U_0 = U_1 = 1`, `U_{2n} = (1-y) U_{2n-1} - U_{2n-2}`, `U_{2n+1} = U_{2n} - U_{2n-1}`.
pub fn u_poly<T: Coefficient>(n: usize) -> Vec<T> {
    let mut prev2 = vec![T::one()];
    let mut prev1 = vec![T::one()];
    if n == 0 {
        return prev2;
    }
    for i in 2..=n {
        let next = if i % 2 == 0 {
            let mut v = vec![T::zero(); prev1.len() + 1];
            for (d, c) in prev1.iter().enumerate() {
                v[d] += c.clone();
                v[d + 1] -= c.clone();
            }
            sub_poly(v, &prev2)
        } else {
            sub_poly(prev1.clone(), &prev2)
        };
        prev2 = prev1;
        prev1 = next;
    }
    prev1
}

fn sub_poly<T: Coefficient>(mut a: Vec<T>, b: &[T]) -> Vec<T> {
    if a.len() < b.len() {
        a.resize(b.len(), T::zero());
    }
    for (d, c) in b.iter().enumerate() {
        a[d] -= c.clone();
    }
    while a.len() > 1 && a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn y_poly_series<T: Coefficient>(ring: &Ring, coeffs: &[T], m: u32) -> WordSeries<T> {
    coeffs.iter().enumerate().fold(ring.zero(), |acc, (r, c)| &acc + &ring.mono(m, r as u32, c.clone()))
}

/// `Σ_n U_n(y) z^n` through `z^order`.
pub fn u_series<T: Coefficient>(order: u32) -> WordSeries<T> {
    let ring = Ring { order };
    (0..=order).fold(ring.zero(), |acc, n| &acc + &y_poly_series(&ring, &u_poly::<T>(n as usize), n))
}

/// `(1 + z + z^2) / (1 + (1+y) z^2 + z^4)`
pub fn u_generating<T: Coefficient>(order: u32) -> Result<WordSeries<T>, SeriesError> {
    let ring = Ring { order };
    let one = ring.one::<T>();
    let num = &(&one + &ring.z(1)) + &ring.z(2);
    let den = &(&one + &(&ring.constant_y_plus(T::one()) * &ring.z(2))) + &ring.z(4);
    Ok(&num * &den.reciprocal()?)
}

/// `1 / (1 - kz - Σ_{j=3..k} (-z)^j C(k,j) (1-y)^{⌊j/2⌋} U_{j-3}(y))`
pub fn w123_chebyshev<T: Coefficient>(k: u32, order: u32) -> Result<WordSeries<T>, SeriesError> {
    let ring = Ring { order };
    let u = ring.one_minus_y::<T>();
    let k = k as i64;
    let mut den = &ring.one::<T>() - &ring.z::<T>(1).scale(&int(k));
    for j in 3..=k {
        let mut c: T = binomial(k, j);
        if j % 2 == 1 {
            c = -c;
        }
        let uj = y_poly_series(&ring, &u_poly::<T>((j - 3) as usize), j as u32);
        let term = (&u.pow((j / 2) as u32) * &uj).scale(&c);
        den = &den - &term;
    }
    den.reciprocal()
}

/// 123-avoiding words: `1 / Σ_{j=0..k} a_j C(k,j) z^j` with
/// `a_{3l} = 1`, `a_{3l+1} = -1`, `a_{3l+2} = 0`.
pub fn w123_avoid_aj<T: Coefficient>(k: u32, order: u32) -> Result<WordSeries<T>, SeriesError> {
    let ring = Ring { order };
    let k = k as i64;
    let den = (0..=k).fold(ring.zero::<T>(), |acc, j| {
        let c: T = match j % 3 {
            0 => binomial(k, j),
            1 => -binomial::<T>(k, j),
            _ => return acc,
        };
        &acc + &ring.z(j as u32).scale(&c)
    });
    den.reciprocal()
}

/// `E / (E - O)` with `E = Σ_j z^{2j} (1-y)^j C(k-1+j, 2j)` and
/// `O = Σ_j z^{2j+1} (1-y)^j C(k+j, 2j+1)`; serves peaks and valleys alike.
pub fn w_peak_closed<T: Coefficient>(k: u32, order: u32) -> Result<WordSeries<T>, SeriesError> {
    let ring = Ring { order };
    let u = ring.one_minus_y::<T>();
    let k = k as i64;
    let mut even = ring.zero::<T>();
    let mut odd = ring.zero::<T>();
    let mut upow = ring.one::<T>();
    for j in 0..=(order as i64) / 2 {
        if j > 0 {
            upow = &upow * &u;
        }
        even = &even + &(&upow * &ring.z((2 * j) as u32)).scale(&binomial(k - 1 + j, 2 * j));
        odd = &odd + &(&upow * &ring.z((2 * j + 1) as u32)).scale(&binomial(k + j, 2 * j + 1));
    }
    Ok(&even * &(&even - &odd).reciprocal()?)
}

/// The closed form matching `p`, for the statistics that have one.
pub fn closed_form<T: Coefficient>(p: PatternId, k: u32, order: u32) -> Result<WordSeries<T>, SeriesError> {
    match p {
        PatternId::P111 => w111_closed(k, order),
        PatternId::P112 | PatternId::P221 => w112_closed(k, order),
        PatternId::P123 => w123_closed(k, order),
        PatternId::Peak | PatternId::Valley => w_peak_closed(k, order),
    }
}
