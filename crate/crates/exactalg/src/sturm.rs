//! Sturm sequences, exact real-root counting, and bisection-driven root
//! isolation for univariate polynomials over the rationals.

use num_traits::{Signed, Zero};

use crate::error::{ExactError, Result};
use crate::mpoly::{MPoly, Var};
use crate::rational::{int, IntervalQ, Rational};
use crate::uni::{self, UPoly};

/// The classical chain `p, p', -rem(p_{i-1}, p_i), ...` down to a nonzero
/// last element. Later entries are scaled by positive rational constants,
/// which leaves every sign variation untouched.
#[derive(Debug, Clone)]
pub struct SturmSeq {
    var: Var,
    chain: Vec<MPoly>,
    dense: Vec<UPoly>,
}

impl SturmSeq {
    pub fn new(p: &MPoly, var: Var) -> Result<Self> {
        if p.is_zero() {
            return Err(ExactError::ZeroInput);
        }
        if !p.is_univariate_in(var) {
            return Err(ExactError::NotUnivariate(var.name()));
        }
        let first = dense_of(p, var);
        let mut dense = vec![first.clone()];
        if uni::degree(&first) >= Some(1) {
            dense.push(positive_primitive(uni::derivative(&first)));
        }
        while dense.last().map(|q| uni::degree(q) >= Some(1)) == Some(true) {
            let n = dense.len();
            let r = uni::rem(&dense[n - 2], &dense[n - 1]);
            if r.is_empty() {
                break;
            }
            let mut r = positive_primitive(r);
            for c in r.iter_mut() {
                *c = -c.clone();
            }
            dense.push(r);
        }
        let chain = dense
            .iter()
            .map(|q| mpoly_of(q, var))
            .collect();
        Ok(Self { var, chain, dense })
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn chain(&self) -> &[MPoly] {
        &self.chain
    }

    /// Number of sign variations of the chain evaluated at `x`.
    pub fn variations_at(&self, x: &Rational) -> usize {
        let signs: Vec<i8> = self
            .dense
            .iter()
            .map(|q| {
                let v = uni::eval(q, x);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            })
            .filter(|s| *s != 0)
            .collect();
        signs.windows(2).filter(|p| p[0] != p[1]).count()
    }

    /// Distinct real roots of the chain's first element in `(lo, hi]`.
    pub fn count_roots(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations_at(lo) - self.variations_at(hi)
    }
}

fn dense_of(p: &MPoly, var: Var) -> UPoly {
    p.coeffs_wrt(var)
        .into_iter()
        .map(|c| c.as_constant().expect("univariate"))
        .collect::<Vec<_>>()
}

fn mpoly_of(q: &UPoly, var: Var) -> MPoly {
    let mut out = MPoly::zero();
    for (i, c) in q.iter().enumerate() {
        let mut e = [0u32; 3];
        e[var.index()] = i as u32;
        out.insert_term(e, c.clone());
    }
    out
}

/// Divides by the positive content so coefficients are coprime integers;
/// the sign of the polynomial is preserved.
fn positive_primitive(q: UPoly) -> UPoly {
    if q.is_empty() {
        return q;
    }
    let prim = uni::primitive_int(&q);
    let mut out = uni::int_to_rational(&prim);
    if q.last().unwrap().is_negative() != out.last().unwrap().is_negative() {
        for c in out.iter_mut() {
            *c = -c.clone();
        }
    }
    out
}

/// Exact number of distinct real roots of `p` in the open interval.
///
/// When `p` has repeated roots the count is taken on its square-free part.
/// A root at either endpoint is reported as `EndpointRoot`.
pub fn sturm_count(p: &MPoly, iv: &IntervalQ) -> Result<usize> {
    let (seq, _) = squarefree_seq(p)?;
    count_with(&seq, p, iv)
}

fn squarefree_seq(p: &MPoly) -> Result<(SturmSeq, Var)> {
    if p.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    let var = p.sole_variable().unwrap_or(Var::U);
    if !p.is_univariate_in(var) {
        return Err(ExactError::NotUnivariate(var.name()));
    }
    let dense = dense_of(p, var);
    let sf = uni::squarefree_part(&dense);
    SturmSeq::new(&mpoly_of(&sf, var), var).map(|s| (s, var))
}

fn count_with(seq: &SturmSeq, original: &MPoly, iv: &IntervalQ) -> Result<usize> {
    let at = |x: &Rational| original.eval(x, x, x);
    if at(iv.lo()).is_zero() {
        return Err(ExactError::EndpointRoot(iv.lo().clone()));
    }
    if at(iv.hi()).is_zero() {
        return Err(ExactError::EndpointRoot(iv.hi().clone()));
    }
    Ok(seq.count_roots(iv.lo(), iv.hi()))
}

/// Isolates every real root of `p` inside `iv` in pairwise disjoint open
/// rational intervals of width below `tol`, ordered left to right.
pub fn isolate_roots(p: &MPoly, iv: &IntervalQ, tol: &Rational) -> Result<Vec<IntervalQ>> {
    assert!(tol.is_positive(), "tolerance must be positive");
    let (seq, var) = squarefree_seq(p)?;
    // endpoint check on the original polynomial
    let ev = |x: &Rational| p.eval(x, x, x);
    if ev(iv.lo()).is_zero() {
        return Err(ExactError::EndpointRoot(iv.lo().clone()));
    }
    if ev(iv.hi()).is_zero() {
        return Err(ExactError::EndpointRoot(iv.hi().clone()));
    }
    let sf = &seq.chain()[0];
    let sf_eval = |x: &Rational| sf.eval(x, x, x);
    let mut out = Vec::new();
    let mut stack = vec![(iv.lo().clone(), iv.hi().clone())];
    // depth-first, left interval processed last-in-first-out; collect then sort
    while let Some((lo, hi)) = stack.pop() {
        let n = seq.count_roots(&lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 && &hi - &lo < *tol {
            out.push(IntervalQ::new(lo, hi)?);
            continue;
        }
        let mid = (&lo + &hi) / int(2);
        if sf_eval(&mid).is_zero() {
            // rational root exactly at the midpoint: emit a shrinking
            // bracket around it whose endpoints are not roots
            let mut eps = {
                let w = (&hi - &lo) / int(4);
                if w < *tol {
                    w
                } else {
                    tol.clone()
                }
            } / int(3);
            loop {
                let a = &mid - &eps;
                let b = &mid + &eps;
                if !sf_eval(&a).is_zero()
                    && !sf_eval(&b).is_zero()
                    && seq.count_roots(&a, &b) == 1
                {
                    stack.push((lo, a.clone()));
                    stack.push((b.clone(), hi));
                    out.push(IntervalQ::new(a, b)?);
                    break;
                }
                eps /= int(2);
            }
        } else {
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
    }
    let _ = var;
    out.sort_by(|a, b| a.lo().cmp(b.lo()));
    Ok(out)
}

/// Strict Cauchy bound: every real root of `p` lies in `(-B, B)`.
pub fn cauchy_bound(p: &MPoly, var: Var) -> Result<Rational> {
    if p.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    if !p.is_univariate_in(var) {
        return Err(ExactError::NotUnivariate(var.name()));
    }
    Ok(uni::cauchy_root_bound(&dense_of(p, var)))
}

/// Bisects an isolating interval of a single root until its width drops
/// below `tol`, keeping exactly that root inside.
pub fn refine_root(p: &MPoly, iv: &IntervalQ, tol: &Rational) -> Result<IntervalQ> {
    let found = isolate_roots(p, iv, tol)?;
    match found.len() {
        1 => Ok(found.into_iter().next().unwrap()),
        n => {
            debug_assert!(false, "expected isolated root, found {n}");
            Err(ExactError::ZeroInput)
        }
    }
}
