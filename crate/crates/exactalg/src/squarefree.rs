//! Square-free decomposition of univariate rational polynomials by Yun's
//! algorithm. Factors come back monic, pairwise coprime and square-free;
//! their multiplicity-weighted product reassembles the input up to a
//! rational constant.

use num_traits::One;

use crate::error::{ExactError, Result};
use crate::mpoly::{MPoly, Var};
use crate::rational::Rational;
use crate::uni::{self, UPoly};

/// Returns `(factor, multiplicity)` pairs in increasing multiplicity,
/// skipping trivial (degree-0) blocks.
pub fn squarefree_decomposition(p: &MPoly) -> Result<Vec<(MPoly, u32)>> {
    if p.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    let var = p.sole_variable().unwrap_or(Var::U);
    if !p.is_univariate_in(var) {
        return Err(ExactError::NotUnivariate(var.name()));
    }
    let dense: UPoly = p
        .coeffs_wrt(var)
        .into_iter()
        .map(|c| c.as_constant().expect("univariate"))
        .collect();
    let dense = uni::normalize(dense);
    if uni::degree(&dense).unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let f = monic(&dense);
    let mut out = Vec::new();

    // Yun: f = prod a_i^i
    let fp = uni::derivative(&f);
    let a0 = monic(&uni::gcd(&f, &fp));
    let mut b = uni::exact_quotient(&f, &a0);
    let mut c = uni::exact_quotient(&fp, &a0);
    let mut d: UPoly = {
        let bp = uni::derivative(&b);
        sub(&c, &bp)
    };
    let mut i = 1u32;
    while uni::degree(&b).unwrap_or(0) >= 1 {
        let ai = monic(&uni::gcd(&b, &d));
        if uni::degree(&ai).unwrap_or(0) >= 1 {
            out.push((from_dense(&ai, var), i));
        }
        b = uni::exact_quotient(&b, &ai);
        c = uni::exact_quotient(&d, &ai);
        d = {
            let bp = uni::derivative(&b);
            sub(&c, &bp)
        };
        i += 1;
    }
    Ok(out)
}

fn monic(p: &UPoly) -> UPoly {
    match p.last() {
        None => Vec::new(),
        Some(lc) => {
            if lc.is_one() {
                p.clone()
            } else {
                let inv = lc.clone().recip();
                p.iter().map(|c| c * &inv).collect()
            }
        }
    }
}

fn sub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let zero = Rational::from_integer(0.into());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        out.push(x - y);
    }
    uni::normalize(out)
}

fn from_dense(q: &UPoly, var: Var) -> MPoly {
    let mut out = MPoly::zero();
    for (i, c) in q.iter().enumerate() {
        let mut e = [0u32; 3];
        e[var.index()] = i as u32;
        out.insert_term(e, c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn lin(c: i64) -> MPoly {
        MPoly::linear(Var::U, int(1), int(-c))
    }

    #[test]
    fn double_root_and_simple_root() {
        // (u-1)^2 (u+2) -> [(u+2, 1), (u-1, 2)]
        let p = &(&lin(1) * &lin(1)) * &lin(-2);
        let dec = squarefree_decomposition(&p).unwrap();
        assert_eq!(dec, vec![(lin(-2), 1), (lin(1), 2)]);
    }

    #[test]
    fn squarefree_input_is_identity_case() {
        // 2(u-1)(u+3) -> [((u-1)(u+3), 1)] after monic normalization
        let p = (&lin(1) * &lin(-3)).scale(&int(2));
        let dec = squarefree_decomposition(&p).unwrap();
        assert_eq!(dec.len(), 1);
        assert_eq!(dec[0].1, 1);
        assert_eq!(dec[0].0, &lin(1) * &lin(-3));
    }

    #[test]
    fn reassembles_up_to_constant() {
        // 6 (u-1)^3 (u+1)^2 (u-4)
        let p = (&(&lin(1).pow(3) * &lin(-1).pow(2)) * &lin(4)).scale(&int(6));
        let dec = squarefree_decomposition(&p).unwrap();
        let mut prod = MPoly::one();
        for (f, m) in &dec {
            prod = &prod * &f.pow(*m);
        }
        // p / prod must be a nonzero constant
        let q = p.exact_div(&prod).unwrap();
        assert_eq!(q.as_constant(), Some(int(6)));
    }

    #[test]
    fn constant_input_has_no_factors() {
        let dec = squarefree_decomposition(&MPoly::from_i64(5)).unwrap();
        assert!(dec.is_empty());
    }
}
