//! Arbitrary-precision rationals and rational intervals.
//!
//! `Rational` is the coefficient field of every exact computation in this
//! crate. It is always stored reduced with a positive denominator, so two
//! equal fractions compare equal structurally.

use crate::error::{ExactError, Result};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

/// `n/d` as a `Rational`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a `Rational`.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Nearest-value `f64` approximation (for reporting, never for decisions).
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"num/den"` or `"num"` with arbitrary-precision integers.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = |msg: &str| ExactError::Parse {
        line: 0,
        msg: format!("{msg}: {s:?}"),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num.parse().map_err(|_| bad("invalid numerator"))?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad("invalid denominator"))?,
        None => BigInt::from(1),
    };
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

/// A rational interval with `lo < hi`, used for root enclosures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalQ {
    lo: Rational,
    hi: Rational,
}

impl IntervalQ {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo < hi {
            Ok(Self { lo, hi })
        } else {
            Err(ExactError::EmptyInterval)
        }
    }

    pub fn from_i64(lo: i64, hi: i64) -> Self {
        Self::new(int(lo), int(hi)).expect("lo < hi")
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    /// Open-interval membership.
    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn contains_interval(&self, other: &IntervalQ) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &IntervalQ) -> bool {
        self.lo < other.hi && other.lo < self.hi
    }

    /// `self` lies entirely to the left of `other` with no overlap.
    pub fn strictly_left_of(&self, other: &IntervalQ) -> bool {
        self.hi < other.lo
    }

    /// Monotone-monomial bound: the larger of `c·lo^m` and `c·hi^m`.
    ///
    /// Valid as an upper bound of `c·x^m` over the closed interval whenever
    /// the interval does not straddle zero, since `x^m` is then monotone.
    pub fn monomial_upper(&self, c: &Rational, m: u32) -> Rational {
        let a = c * pow_rational(&self.lo, m);
        let b = c * pow_rational(&self.hi, m);
        if a >= b {
            a
        } else {
            b
        }
    }

    /// Lower counterpart of [`IntervalQ::monomial_upper`].
    pub fn monomial_lower(&self, c: &Rational, m: u32) -> Rational {
        let a = c * pow_rational(&self.lo, m);
        let b = c * pow_rational(&self.hi, m);
        if a <= b {
            a
        } else {
            b
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (to_f64(&self.lo), to_f64(&self.hi))
    }
}

pub fn pow_rational(x: &Rational, m: u32) -> Rational {
    let mut acc = Rational::from_integer(BigInt::from(1));
    let mut base = x.clone();
    let mut e = m;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Shrinking rational enclosure of `sqrt(x)` for `x > 0`, by bisection,
/// outward-rounded: the returned interval satisfies `lo^2 < x < hi^2`
/// (exact squares are nudged outward) and `hi - lo <= tol`.
pub fn sqrt_enclosure(x: &Rational, tol: &Rational) -> Result<IntervalQ> {
    if !x.is_positive() {
        return Err(ExactError::ZeroInput);
    }
    let one = int(1);
    let (mut lo, mut hi) = if *x >= one {
        (int(1), x.clone() + &one)
    } else {
        (Rational::new(BigInt::from(0), BigInt::from(1)), int(1))
    };
    // keep lo^2 <= x <= hi^2 and shrink
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / int(2);
        let sq = &mid * &mid;
        if sq == *x {
            // exact square: widen outward by a tiny margin on both sides
            let eps = tol / int(4);
            return IntervalQ::new(&mid - &eps, &mid + &eps);
        } else if sq < *x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if &lo * &lo == *x {
        lo -= tol / int(4);
    }
    if &hi * &hi == *x {
        hi += tol / int(4);
    }
    IntervalQ::new(lo, hi)
}
