//! Sparse multivariate polynomials over the rationals in the ordered
//! variables `(u, w, D)`.
//!
//! Terms live in a `BTreeMap` keyed by exponent triples, so iteration order
//! is the lexicographic exponent order used by the text formats, and
//! equality is structural. No zero coefficient is ever stored.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{ExactError, Result};
use crate::rational::{pow_rational, Rational};

/// The three polynomial variables, in storage order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    U,
    W,
    D,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::U, Var::W, Var::D];

    pub fn index(self) -> usize {
        match self {
            Var::U => 0,
            Var::W => 1,
            Var::D => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::U => "u",
            Var::W => "w",
            Var::D => "D",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type Exponents = [u32; 3];

/// Sparse polynomial in `Q[u, w, D]`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Exponents, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0, 0, 0], c);
        }
        Self { terms }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0u32; 3];
        e[v.index()] = 1;
        Self::monomial(Rational::one(), e)
    }

    pub fn monomial(c: Rational, exps: Exponents) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { terms }
    }

    /// `c + b·v` — handy for the many linear factors in the certificate.
    pub fn linear(v: Var, b: Rational, c: Rational) -> Self {
        Self::monomial(b, {
            let mut e = [0u32; 3];
            e[v.index()] = 1;
            e
        }) + &Self::constant(c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&[0, 0, 0]))
    }

    /// Degree-0 round trip back to `Rational`; `None` if not constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return self.terms.get(&[0, 0, 0]).cloned();
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> std::collections::btree_map::Iter<'_, Exponents, Rational> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &Exponents) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Sets the coefficient of one monomial, dropping it when zero.
    pub fn insert_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, c);
        }
    }

    fn add_term(&mut self, exps: Exponents, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|e| e[v.index()]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Total degree counting only the given variables.
    pub fn degree_sum(&self, vars: &[Var]) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| vars.iter().map(|v| e[v.index()]).sum())
            .max()
    }

    /// Which variables actually occur.
    pub fn support(&self) -> [bool; 3] {
        let mut s = [false; 3];
        for e in self.terms.keys() {
            for i in 0..3 {
                s[i] |= e[i] > 0;
            }
        }
        s
    }

    /// True when the support uses no variable other than `v`.
    pub fn is_univariate_in(&self, v: Var) -> bool {
        let s = self.support();
        (0..3).all(|i| i == v.index() || !s[i])
    }

    /// The single variable of a non-constant univariate polynomial.
    pub fn sole_variable(&self) -> Option<Var> {
        let s = self.support();
        let mut found = None;
        for v in Var::ALL {
            if s[v.index()] {
                if found.is_some() {
                    return None;
                }
                found = Some(v);
            }
        }
        found
    }

    /// Coefficients with respect to `v`: entry `i` is the coefficient of
    /// `v^i`, an `MPoly` in the remaining variables. Empty for zero.
    pub fn coeffs_wrt(&self, v: Var) -> Vec<MPoly> {
        let Some(d) = self.degree(v) else {
            return Vec::new();
        };
        let mut out = vec![MPoly::zero(); d as usize + 1];
        let vi = v.index();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            let k = e2[vi];
            e2[vi] = 0;
            out[k as usize].add_term(e2, c);
        }
        out
    }

    pub fn from_coeffs_wrt(v: Var, coeffs: &[MPoly]) -> MPoly {
        let vi = v.index();
        let mut out = MPoly::zero();
        for (k, p) in coeffs.iter().enumerate() {
            for (e, c) in &p.terms {
                debug_assert_eq!(e[vi], 0);
                let mut e2 = *e;
                e2[vi] = k as u32;
                out.add_term(e2, c);
            }
        }
        out
    }

    /// Leading coefficient with respect to `v` (an `MPoly` in the others).
    pub fn leading_coeff(&self, v: Var) -> MPoly {
        match self.degree(v) {
            None => MPoly::zero(),
            Some(d) => {
                let vi = v.index();
                let mut out = MPoly::zero();
                for (e, c) in &self.terms {
                    if e[vi] == d {
                        let mut e2 = *e;
                        e2[vi] = 0;
                        out.add_term(e2, c);
                    }
                }
                out
            }
        }
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: Var) -> MPoly {
        let vi = v.index();
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            if e[vi] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[vi] -= 1;
            out.add_term(e2, &(c * Rational::from_integer(BigInt::from(e[vi]))));
        }
        out
    }

    /// Substitutes a rational value for `v`, eliminating it from the support.
    pub fn substitute(&self, v: Var, value: &Rational) -> MPoly {
        let vi = v.index();
        let maxe = match self.degree(v) {
            None => return MPoly::zero(),
            Some(d) => d,
        };
        // precompute powers once
        let mut powers = Vec::with_capacity(maxe as usize + 1);
        powers.push(Rational::one());
        for _ in 0..maxe {
            powers.push(powers.last().unwrap() * value);
        }
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            let k = e2[vi];
            e2[vi] = 0;
            out.add_term(e2, &(c * &powers[k as usize]));
        }
        out
    }

    /// Full evaluation at `(u, w, D)`.
    pub fn eval(&self, u: &Rational, w: &Rational, d: &Rational) -> Rational {
        let vals = [u, w, d];
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                if e[i] > 0 {
                    t *= pow_rational(vals[i], e[i]);
                }
            }
            acc += t;
        }
        acc
    }

    /// Approximate evaluation, for numeric spot checks only.
    pub fn eval_f64(&self, u: f64, w: f64, d: f64) -> f64 {
        let vals = [u, w, d];
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = crate::rational::to_f64(c);
            for i in 0..3 {
                t *= vals[i].powi(e[i] as i32);
            }
            acc += t;
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Writes `self = constant · primitive` with `primitive` having coprime
    /// integer coefficients and positive leading (lex-largest) coefficient.
    pub fn primitive_parts(&self) -> (Rational, MPoly) {
        if self.is_zero() {
            return (Rational::zero(), MPoly::zero());
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&(c.numer() * &den_lcm / c.denom()));
        }
        let mut content = Rational::new(num_gcd, den_lcm);
        let lead = self.terms.iter().next_back().unwrap().1;
        if lead.is_negative() {
            content = -content;
        }
        let prim = self.scale(&content.recip());
        (content, prim)
    }

    /// Exact polynomial division: returns `r` with `self = q·r`, or
    /// `NotDivisible` when no exact quotient exists.
    pub fn exact_div(&self, q: &MPoly) -> Result<MPoly> {
        if q.is_zero() {
            return Err(ExactError::ZeroInput);
        }
        if self.is_zero() {
            return Ok(MPoly::zero());
        }
        if let Some(c) = q.as_constant() {
            return Ok(self.scale(&c.recip()));
        }
        // Single-term divisor: divide term-wise.
        if q.terms.len() == 1 {
            let (qe, qc) = q.terms.iter().next().unwrap();
            let mut out = MPoly::zero();
            for (e, c) in &self.terms {
                if (0..3).any(|i| e[i] < qe[i]) {
                    return Err(ExactError::NotDivisible);
                }
                let e2 = [e[0] - qe[0], e[1] - qe[1], e[2] - qe[2]];
                out.insert_term(e2, c / qc);
            }
            return Ok(out);
        }
        // Lead-term reduction under the lex order. If an exact quotient
        // exists the leading term of the running remainder always reduces.
        let (qe, qc) = q.terms.iter().next_back().unwrap();
        let mut r = self.clone();
        let mut quot = MPoly::zero();
        while !r.is_zero() {
            let (re, rc) = {
                let (e, c) = r.terms.iter().next_back().unwrap();
                (*e, c.clone())
            };
            if (0..3).any(|i| re[i] < qe[i]) {
                return Err(ExactError::NotDivisible);
            }
            let te = [re[0] - qe[0], re[1] - qe[1], re[2] - qe[2]];
            let tc = &rc / qc;
            // r -= t * q
            for (e, c) in &q.terms {
                let e2 = [e[0] + te[0], e[1] + te[1], e[2] + te[2]];
                r.add_term(e2, &-(c * &tc));
            }
            quot.insert_term(te, tc);
        }
        Ok(quot)
    }

    /// Repeatedly divides by `factor`, returning the residual and the
    /// multiplicity removed.
    pub fn strip_factor(&self, factor: &MPoly) -> (MPoly, u32) {
        let mut cur = self.clone();
        let mut mult = 0;
        loop {
            match cur.exact_div(factor) {
                Ok(next) => {
                    cur = next;
                    mult += 1;
                }
                Err(_) => return (cur, mult),
            }
        }
    }
}

// Multiplication clears denominators and works over the integers, reducing
// each output coefficient once at the end.
fn mul_impl(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() || b.is_zero() {
        return MPoly::zero();
    }
    let scaled = |p: &MPoly| -> (Vec<(Exponents, BigInt)>, BigInt) {
        let mut den = BigInt::one();
        for c in p.terms.values() {
            den = den.lcm(c.denom());
        }
        let v = p
            .terms
            .iter()
            .map(|(e, c)| (*e, c.numer() * (&den / c.denom())))
            .collect();
        (v, den)
    };
    let (av, aden) = scaled(a);
    let (bv, bden) = scaled(b);
    let mut acc: HashMap<Exponents, BigInt> = HashMap::with_capacity(av.len() * bv.len());
    for (ea, ca) in &av {
        for (eb, cb) in &bv {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
            let prod = ca * cb;
            match acc.entry(e) {
                std::collections::hash_map::Entry::Vacant(en) => {
                    en.insert(prod);
                }
                std::collections::hash_map::Entry::Occupied(mut en) => {
                    *en.get_mut() += prod;
                }
            }
        }
    }
    let den = aden * bden;
    let mut terms = BTreeMap::new();
    for (e, n) in acc {
        if !n.is_zero() {
            terms.insert(e, Rational::new(n, den.clone()));
        }
    }
    MPoly { terms }
}

impl Add<&MPoly> for MPoly {
    type Output = MPoly;
    fn add(mut self, rhs: &MPoly) -> MPoly {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
        self
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.clone() + rhs
    }
}

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }
}

impl Sub<&MPoly> for MPoly {
    type Output = MPoly;
    fn sub(mut self, rhs: &MPoly) -> MPoly {
        for (e, c) in &rhs.terms {
            self.add_term(*e, &-c.clone());
        }
        self
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.clone() - rhs
    }
}

impl SubAssign<&MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &MPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, &-c.clone());
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -self.clone()
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        mul_impl(self, rhs)
    }
}

impl Mul<&MPoly> for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        mul_impl(&self, rhs)
    }
}

impl MulAssign<&MPoly> for MPoly {
    fn mul_assign(&mut self, rhs: &MPoly) {
        *self = mul_impl(self, rhs);
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // highest lex term first reads more naturally
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let abs = c.abs();
            let is_monomial = e.iter().any(|&x| x > 0);
            if !is_monomial || !abs.is_one() {
                write!(f, "{abs}")?;
                if is_monomial {
                    f.write_str("*")?;
                }
            }
            let mut first = true;
            for v in Var::ALL {
                let k = e[v.index()];
                if k == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                if k == 1 {
                    write!(f, "{}", v.name())?;
                } else {
                    write!(f, "{}^{}", v.name(), k)?;
                }
            }
        }
        Ok(())
    }
}
