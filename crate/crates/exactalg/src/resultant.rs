//! Resultants and discriminants.
//!
//! The canonical resultant is the Sylvester determinant, computed by
//! fraction-free Bareiss elimination with polynomial entries so that no
//! content factor is ever dropped. An independent evaluation–interpolation
//! route (`interpolated_resultant`) specializes one parameter at integer
//! points, computes the specialized resultants, and reconstructs each
//! coefficient by Newton interpolation; it must agree with the direct
//! route wherever both run.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{ExactError, Result};
use crate::mpoly::{Exponents, MPoly, Var};
use crate::rational::{pow_rational, Rational};

/// Sylvester matrix of `p, q` with respect to `var`; entries are
/// polynomials in the remaining variables.
pub fn sylvester_matrix(p: &MPoly, q: &MPoly, var: Var) -> Result<Vec<Vec<MPoly>>> {
    if p.is_zero() || q.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    let pc = p.coeffs_wrt(var);
    let qc = q.coeffs_wrt(var);
    let m = pc.len() - 1;
    let n = qc.len() - 1;
    let size = m + n;
    let mut mat = vec![vec![MPoly::zero(); size]; size];
    for row in 0..n {
        for (k, c) in pc.iter().enumerate() {
            mat[row][row + (m - k)] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in qc.iter().enumerate() {
            mat[n + row][row + (n - k)] = c.clone();
        }
    }
    Ok(mat)
}

/// Fraction-free determinant of a matrix of polynomials. Every
/// intermediate entry is a minor of the input, so the divisions are exact.
pub fn bareiss_det(mut m: Vec<Vec<MPoly>>, cancel: Option<&AtomicBool>) -> Result<MPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(MPoly::one());
    }
    let mut sign = 1i32;
    let mut prev = MPoly::one();
    for k in 0..n - 1 {
        if cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
            return Err(ExactError::Cancelled);
        }
        // pick the sparsest nonzero pivot in column k
        let pivot = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| m[i][k].num_terms());
        let Some(pivot) = pivot else {
            return Ok(MPoly::zero());
        };
        if pivot != k {
            m.swap(pivot, k);
            sign = -sign;
        }
        for i in k + 1..n {
            if cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
                return Err(ExactError::Cancelled);
            }
            for j in k + 1..n {
                let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev)?;
            }
            m[i][k] = MPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let mut det = m.pop().unwrap().pop().unwrap();
    if sign < 0 {
        det = -det;
    }
    Ok(det)
}

/// Canonical Sylvester-determinant resultant with respect to `var`.
pub fn resultant(p: &MPoly, q: &MPoly, var: Var) -> Result<MPoly> {
    resultant_cancellable(p, q, var, None)
}

/// As [`resultant`], but abandons the elimination with `Cancelled` once the
/// flag is raised. Used to enforce wall-clock budgets on heavy eliminations.
pub fn resultant_cancellable(
    p: &MPoly,
    q: &MPoly,
    var: Var,
    cancel: Option<&AtomicBool>,
) -> Result<MPoly> {
    if p.is_zero() || q.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    let dp = p.degree(var).unwrap();
    let dq = q.degree(var).unwrap();
    if dp == 0 && dq == 0 {
        return Ok(MPoly::one());
    }
    if dq == 0 {
        return Ok(q.pow(dp));
    }
    if dp == 0 {
        return Ok(p.pow(dq));
    }
    bareiss_det(sylvester_matrix(p, q, var)?, cancel)
}

/// Integer Bareiss determinant; divisions are exact by the minor identity.
fn bareiss_det_int(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        let pivot = (k..n).find(|&i| !m[i][k].is_zero());
        let Some(pivot) = pivot else {
            return BigInt::zero();
        };
        if pivot != k {
            m.swap(pivot, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m.pop().unwrap().pop().unwrap();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Resultant of two univariate rational polynomials given as dense
/// coefficient vectors (index = power), via an integer Sylvester matrix.
pub fn resultant_univariate(a: &[Rational], b: &[Rational]) -> Result<Rational> {
    if a.is_empty() || b.is_empty() {
        return Err(ExactError::ZeroInput);
    }
    let m = a.len() - 1;
    let n = b.len() - 1;
    if m == 0 && n == 0 {
        return Ok(Rational::one());
    }
    if n == 0 {
        return Ok(pow_rational(&b[0], m as u32));
    }
    if m == 0 {
        return Ok(pow_rational(&a[0], n as u32));
    }
    // scale to integers: res(c·p, q) = c^deg(q) · res(p, q)
    let scale_int = |p: &[Rational]| -> (Vec<BigInt>, BigInt) {
        let mut den = BigInt::one();
        for c in p {
            den = den.lcm(c.denom());
        }
        let ints = p.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        (ints, den)
    };
    let (ai, ad) = scale_int(a);
    let (bi, bd) = scale_int(b);
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for row in 0..n {
        for (k, c) in ai.iter().enumerate() {
            mat[row][row + (m - k)] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in bi.iter().enumerate() {
            mat[n + row][row + (n - k)] = c.clone();
        }
    }
    let det = bareiss_det_int(mat);
    let denom = ad.pow(n as u32) * bd.pow(m as u32);
    Ok(Rational::new(det, denom))
}

/// Evaluation–interpolation resultant: eliminates `var` by substituting
/// integer values for `param`, computing specialized resultants, and
/// interpolating each coefficient. Sample points where either leading
/// coefficient vanishes are skipped so every specialization commutes with
/// the resultant.
pub fn interpolated_resultant(p: &MPoly, q: &MPoly, var: Var, param: Var) -> Result<MPoly> {
    if p.is_zero() || q.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    if var == param {
        return Err(ExactError::NotUnivariate(param.name()));
    }
    let dp_param = p.degree(param).unwrap();
    let dq_param = q.degree(param).unwrap();
    if dp_param == 0 && dq_param == 0 {
        return resultant(p, q, var);
    }
    let np = p.degree(var).unwrap();
    let nq = q.degree(var).unwrap();
    if np == 0 || nq == 0 {
        return resultant(p, q, var);
    }
    let bound = (nq * dp_param + np * dq_param) as usize;
    let lcp = p.leading_coeff(var);
    let lcq = q.leading_coeff(var);

    let mut points: Vec<Rational> = Vec::with_capacity(bound + 1);
    let mut values: Vec<MPoly> = Vec::with_capacity(bound + 1);
    let mut t: i64 = 0;
    while points.len() < bound + 1 {
        let tv = Rational::from_integer(BigInt::from(t));
        t = next_candidate(t);
        if lcp.substitute(param, &tv).is_zero() || lcq.substitute(param, &tv).is_zero() {
            continue;
        }
        let ps = p.substitute(param, &tv);
        let qs = q.substitute(param, &tv);
        let r = specialized_resultant(&ps, &qs, var)?;
        points.push(tv);
        values.push(r);
    }

    // interpolate each remaining-monomial coefficient as a polynomial in param
    let mut keys: BTreeSet<Exponents> = BTreeSet::new();
    for v in &values {
        for (e, _) in v.terms() {
            debug_assert_eq!(e[param.index()], 0);
            keys.insert(*e);
        }
    }
    let mut out = MPoly::zero();
    for key in keys {
        let ys: Vec<Rational> = values.iter().map(|v| v.coeff(&key)).collect();
        let coeffs = newton_interpolate(&points, &ys);
        for (j, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut e = key;
            e[param.index()] = j as u32;
            out.insert_term(e, c);
        }
    }
    Ok(out)
}

fn next_candidate(t: i64) -> i64 {
    // 0, 1, -1, 2, -2, ...
    if t > 0 {
        -t
    } else {
        -t + 1
    }
}

fn specialized_resultant(ps: &MPoly, qs: &MPoly, var: Var) -> Result<MPoly> {
    if ps.is_univariate_in(var) && qs.is_univariate_in(var) {
        let dense = |p: &MPoly| -> Vec<Rational> {
            p.coeffs_wrt(var)
                .into_iter()
                .map(|c| c.as_constant().expect("univariate"))
                .collect()
        };
        let r = resultant_univariate(&dense(ps), &dense(qs))?;
        Ok(MPoly::constant(r))
    } else {
        resultant(ps, qs, var)
    }
}

/// Newton divided-difference interpolation; returns monomial coefficients.
fn newton_interpolate(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    let n = xs.len();
    let mut table: Vec<Rational> = ys.to_vec();
    // divided differences in place: table[i] becomes f[x_0..x_i]
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &table[i] - &table[i - 1];
            let den = &xs[i] - &xs[i - level];
            table[i] = num / den;
        }
    }
    // expand the Newton form to monomial coefficients
    let mut coeffs = vec![Rational::zero(); n];
    let mut basis = vec![Rational::zero(); n]; // current product poly
    basis[0] = Rational::one();
    let mut basis_len = 1;
    for (i, c) in table.iter().enumerate() {
        for j in 0..basis_len {
            coeffs[j] += c * &basis[j];
        }
        if i + 1 < n {
            // basis *= (x - xs[i]), in place from the top coefficient down
            for j in (0..basis_len).rev() {
                let b = basis[j].clone();
                basis[j + 1] += &b;
                basis[j] = -(&b * &xs[i]);
            }
            basis_len += 1;
        }
    }
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

/// Discriminant with respect to `var`:
/// `(-1)^(n(n-1)/2) · Res(p, ∂p/∂var) / lc(p)`, `n = deg(p, var)`.
pub fn discriminant(p: &MPoly, var: Var) -> Result<MPoly> {
    if p.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    let res = {
        let dp = p.derivative(var);
        if dp.is_zero() {
            return Err(ExactError::DegreeTooLow(var.name()));
        }
        resultant(p, &dp, var)?
    };
    discriminant_from_resultant(p, var, res)
}

/// Discriminant computed through the interpolation route; `param` is the
/// surviving variable that gets interpolated.
pub fn discriminant_interpolated(p: &MPoly, var: Var, param: Var) -> Result<MPoly> {
    let dp = p.derivative(var);
    if dp.is_zero() {
        return Err(ExactError::DegreeTooLow(var.name()));
    }
    let res = interpolated_resultant(p, &dp, var, param)?;
    discriminant_from_resultant(p, var, res)
}

pub fn discriminant_from_resultant(p: &MPoly, var: Var, res: MPoly) -> Result<MPoly> {
    let n = p.degree(var).ok_or(ExactError::ZeroInput)?;
    if n < 2 {
        return Err(ExactError::DegreeTooLow(var.name()));
    }
    let lc = p.leading_coeff(var);
    let quot = res.exact_div(&lc)?;
    let flip = (n as u64 * (n as u64 - 1) / 2) % 2 == 1;
    Ok(if flip { -quot } else { quot })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn x_minus(c: i64, v: Var) -> MPoly {
        MPoly::linear(v, int(1), int(-c))
    }

    #[test]
    fn two_by_two_sylvester() {
        // Res(x-1, x+1, x) = 2
        let p = x_minus(1, Var::U);
        let q = MPoly::linear(Var::U, int(1), int(1));
        assert_eq!(resultant(&p, &q, Var::U).unwrap(), MPoly::from_i64(2));
    }

    #[test]
    fn swap_sign_rule() {
        // deg 2 * deg 1: res(q, p) = (-1)^2 res(p, q)
        let p = &x_minus(1, Var::U) * &x_minus(2, Var::U);
        let q = x_minus(3, Var::U);
        let a = resultant(&p, &q, Var::U).unwrap();
        let b = resultant(&q, &p, Var::U).unwrap();
        assert_eq!(a, b);
        // odd*odd flips
        let c = resultant(&x_minus(1, Var::U), &x_minus(3, Var::U), Var::U).unwrap();
        let d = resultant(&x_minus(3, Var::U), &x_minus(1, Var::U), Var::U).unwrap();
        assert_eq!(c, -d);
    }

    #[test]
    fn common_root_gives_zero() {
        let p = &x_minus(1, Var::U) * &x_minus(2, Var::U);
        let q = &x_minus(1, Var::U) * &x_minus(5, Var::U);
        assert!(resultant(&p, &q, Var::U).unwrap().is_zero());
    }

    #[test]
    fn quadratic_discriminant_formula() {
        // disc(x^2 + bx + c) = b^2 - 4c, with (b, c) -> (w, D) as stand-ins
        let x = MPoly::var(Var::U);
        let b = MPoly::var(Var::W);
        let c = MPoly::var(Var::D);
        let p = x.pow(2) + &(&b * &x) + &c;
        let disc = discriminant(&p, Var::U).unwrap();
        let expect = b.pow(2) - &c.scale(&int(4));
        assert_eq!(disc, expect);
    }

    #[test]
    fn univariate_fast_path_matches_matrix() {
        let p = &x_minus(1, Var::U) * &(&x_minus(-2, Var::U) * &x_minus(4, Var::U));
        let q = &x_minus(3, Var::U) * &x_minus(-5, Var::U);
        let dense = |p: &MPoly| -> Vec<Rational> {
            p.coeffs_wrt(Var::U)
                .into_iter()
                .map(|c| c.as_constant().unwrap())
                .collect()
        };
        let fast = resultant_univariate(&dense(&p), &dense(&q)).unwrap();
        let slow = resultant(&p, &q, Var::U).unwrap().as_constant().unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn interpolation_agrees_on_bivariate() {
        // p = u^2 - D, q = u - D: res_u = D^2 - D
        let p = MPoly::var(Var::U).pow(2) - &MPoly::var(Var::D);
        let q = MPoly::var(Var::U) - &MPoly::var(Var::D);
        let direct = resultant(&p, &q, Var::U).unwrap();
        let interp = interpolated_resultant(&p, &q, Var::U, Var::D).unwrap();
        assert_eq!(direct, interp);
        let expect = MPoly::var(Var::D).pow(2) - &MPoly::var(Var::D);
        assert_eq!(direct, expect);
    }

    #[test]
    fn interpolation_degenerate_param_absent() {
        let p = x_minus(1, Var::U);
        let q = MPoly::linear(Var::U, int(1), int(1));
        let r = interpolated_resultant(&p, &q, Var::U, Var::D).unwrap();
        assert_eq!(r, MPoly::from_i64(2));
    }

    #[test]
    fn newton_interpolation_roundtrip() {
        // f(x) = 3x^3 - x + 7/2 through 5 points
        let f = |x: &Rational| {
            int(3) * x * x * x - x + rat(7, 2)
        };
        let xs: Vec<Rational> = (0..5).map(int).collect();
        let ys: Vec<Rational> = xs.iter().map(f).collect();
        let cs = newton_interpolate(&xs, &ys);
        assert_eq!(cs, vec![rat(7, 2), int(-1), int(0), int(3)]);
    }
}
