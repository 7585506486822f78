//! Dense univariate helpers over `Rational`, used by the Sturm chain,
//! square-free decomposition and the interpolation fall-back. Coefficient
//! index `i` holds the coefficient of `x^i`; the vector never ends in zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

pub type UPoly = Vec<Rational>;

pub fn normalize(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn degree(p: &UPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn eval(p: &UPoly, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn derivative(p: &UPoly) -> UPoly {
    if p.len() <= 1 {
        return Vec::new();
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
        .collect()
}

/// True remainder over the field of rationals.
pub fn rem(a: &UPoly, b: &UPoly) -> UPoly {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let q = &r[dr] / lb;
        if !q.is_zero() {
            for i in 0..db {
                let t = &b[i] * &q;
                r[dr - db + i] -= t;
            }
        }
        r.pop();
        r = normalize(r);
    }
    r
}

/// Exact quotient over the rationals; panics if the division is inexact
/// (callers guarantee divisibility).
pub fn exact_quotient(a: &UPoly, b: &UPoly) -> UPoly {
    assert!(!b.is_empty());
    if a.is_empty() {
        return Vec::new();
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    let mut q = vec![Rational::zero(); a.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = &r[dr] / lb;
        q[dr - db] = c.clone();
        for i in 0..db {
            let t = &b[i] * &c;
            r[dr - db + i] -= t;
        }
        r.pop();
        r = normalize(r);
    }
    assert!(r.is_empty(), "inexact univariate division");
    q
}

/// Divides by the content, returning an integer-coefficient primitive
/// polynomial with positive leading coefficient.
pub fn primitive_int(p: &UPoly) -> Vec<BigInt> {
    if p.is_empty() {
        return Vec::new();
    }
    let mut den = BigInt::one();
    for c in p {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if ints.last().unwrap().is_negative() {
        g = -g;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

pub fn int_to_rational(p: &[BigInt]) -> UPoly {
    p.iter()
        .map(|c| Rational::from_integer(c.clone()))
        .collect()
}


fn int_normalize(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) · a  mod  b`, all integer.
fn int_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let da = a.len() - 1;
    let db = b.len() - 1;
    debug_assert!(da >= db);
    let lb = &b[db];
    let mut r: Vec<BigInt> = a.to_vec();
    for _ in 0..=(da - db) {
        let dr = r.len() - 1;
        if dr < db {
            // degree dropped early: keep multiplying to honour the formula
            for c in r.iter_mut() {
                *c *= lb;
            }
            continue;
        }
        let lead = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for i in 0..db {
            let t = &b[i] * &lead;
            r[dr - db + i] -= t;
        }
        r.pop();
        r = int_normalize(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Primitive gcd of two rational polynomials, via the subresultant
/// pseudo-remainder sequence over the integers. The result is primitive
/// with positive leading coefficient; gcd with zero returns the other
/// argument's primitive part.
pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() {
        if b.is_empty() {
            return Vec::new();
        }
        return int_to_rational(&primitive_int(b));
    }
    if b.is_empty() {
        return int_to_rational(&primitive_int(a));
    }
    let mut f = primitive_int(a);
    let mut g = primitive_int(b);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    // subresultant PRS with Collins' g/h correction factors
    let mut h = BigInt::one();
    let mut gc = BigInt::one();
    loop {
        let delta = (f.len() - 1) - (g.len() - 1);
        let r = int_prem(&f, &g);
        if r.is_empty() {
            let prim = {
                let mut gg = BigInt::zero();
                for c in &g {
                    gg = gg.gcd(c);
                }
                if g.last().unwrap().is_negative() {
                    gg = -gg;
                }
                g.iter().map(|c| c / &gg).collect::<Vec<_>>()
            };
            return int_to_rational(&prim);
        }
        let divisor = &gc * h.pow(delta as u32);
        let r2: Vec<BigInt> = r.iter().map(|c| c / &divisor).collect();
        f = g;
        g = r2;
        if g.len() == 1 {
            // nonzero constant remainder: coprime
            return vec![Rational::one()];
        }
        gc = f.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            // h^(1-delta) * gc^delta, exact in Z
            let num = gc.pow(delta as u32);
            if delta == 1 {
                num
            } else {
                num / h.pow((delta - 1) as u32)
            }
        };
    }
}

/// Square-free part: `p / gcd(p, p')`, normalized to primitive integer form.
pub fn squarefree_part(p: &UPoly) -> UPoly {
    let g = gcd(p, &derivative(p));
    if degree(&g) == Some(0) {
        return int_to_rational(&primitive_int(p));
    }
    let q = exact_quotient(p, &g);
    int_to_rational(&primitive_int(&q))
}

/// Strict bound `B` with every real root of `p` in `(-B, B)` (Cauchy).
pub fn cauchy_root_bound(p: &UPoly) -> Rational {
    let d = degree(p).expect("nonzero polynomial");
    let lead = p[d].clone();
    let mut m = Rational::zero();
    for c in &p[..d] {
        let q = (c / &lead).abs();
        if q > m {
            m = q;
        }
    }
    m + Rational::one()
}
