//! The individual certificate steps: nonvanishing of the quartic `P` on
//! the admissible window, the `D = -1/3` elimination replay, the heavy
//! resultant `Res(P₂, P₃, ·) = S·R₂`, discriminant analysis of `R₂`,
//! sub-interval root counting, and the rational bounding polynomials that
//! settle the discriminant-root parameter values.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use exactalg::{
    cauchy_bound, int, interpolated_resultant, isolate_roots, rat, refine_root, resultant,
    resultant_cancellable, sqrt_enclosure, squarefree_decomposition, sturm_count, ExactError,
    IntervalQ, MPoly, Rational, Var,
};
use num_traits::{Signed, Zero};
use serde_json::json;

use crate::polys;
use crate::report::{interval_json, poly_json, rational_str, Branch, StepReport, Verdict};

#[derive(Debug, Clone)]
pub struct CertifyConfig {
    /// Wall-clock budget for the direct (matrix) discriminant elimination
    /// before switching to the interpolation route. `None` skips the
    /// direct attempt.
    pub direct_budget: Option<Duration>,
    /// Width target for root enclosures.
    pub refine_tol: Rational,
    /// Retry budget for bounding-polynomial shrinking.
    pub bound_retries: u32,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        Self {
            direct_budget: None,
            refine_tol: rat(1, 1_000_000),
            bound_retries: 10,
        }
    }
}

fn pass(name: &str, claim: &str, witness: serde_json::Value) -> StepReport {
    StepReport {
        name: name.to_string(),
        claim: claim.to_string(),
        verdict: Verdict::Pass,
        witness,
    }
}

fn fail(name: &str, claim: &str, witness: serde_json::Value) -> StepReport {
    StepReport {
        name: name.to_string(),
        claim: claim.to_string(),
        verdict: Verdict::Fail,
        witness,
    }
}

/// Step: symbolic construction of the comparison polynomials with the
/// stated degrees; the denominator clearings must be exact.
pub fn build_proof_polys() -> (Option<polys::ProofPolynomials>, StepReport) {
    let name = "build_proof_polys";
    let claim = "P2 and P3 are polynomials of total degree 7 and 11 obtained by exact \
                 denominator clearing";
    match polys::ProofPolynomials::build() {
        Err(e) => (
            None,
            fail(name, claim, json!({ "error": e.to_string() })),
        ),
        Ok(pp) => {
            // degrees in (u, w); D is the family parameter
            let d2 = pp.p2.degree_sum(&[Var::U, Var::W]);
            let d3 = pp.p3.degree_sum(&[Var::U, Var::W]);
            if d2 != Some(7) || d3 != Some(11) {
                let w = json!({ "deg_p2": d2, "deg_p3": d3 });
                return (None, fail(name, claim, w));
            }
            let witness = json!({
                "deg_p2": 7,
                "deg_p3": 11,
                "p2": poly_json(&pp.p2),
                "p3": poly_json(&pp.p3),
            });
            (Some(pp), pass(name, claim, witness))
        }
    }
}

/// Step (decreasing branch): `P(w;D)` has no zeros on the window
/// `(w*(D), 0)` for `D ∈ (-1/2, 0)`.
pub fn check_p_negative() -> StepReport {
    let name = "check_P_negative";
    let claim = "P(w;D) does not vanish for w*(D) < w < 0 and -1/2 < D < 0";
    let p = polys::p_quartic(Var::W);

    // (i) the discriminant in w matches the displayed product exactly,
    // and its quartic core has no roots on (-1/2, 0)
    let disc = match exactalg::discriminant(&p, Var::W) {
        Ok(d) => d,
        Err(e) => return fail(name, claim, json!({ "error": e.to_string() })),
    };
    let display = polys::delta_w_display();
    if disc != display {
        return fail(
            name,
            claim,
            json!({
                "mismatch": "discriminant",
                "computed": poly_json(&disc),
                "displayed": poly_json(&display),
            }),
        );
    }
    let window = IntervalQ::new(rat(-1, 2), int(0)).unwrap();
    let quartic_count = match sturm_count(&polys::delta_w_quartic(), &window) {
        Ok(n) => n,
        Err(e) => return fail(name, claim, json!({ "error": e.to_string() })),
    };
    if quartic_count != 0 {
        return fail(name, claim, json!({ "quartic_roots": quartic_count }));
    }

    // (ii) P(0, D) = -1
    if p.substitute(Var::W, &int(0)) != MPoly::from_i64(-1) {
        return fail(name, claim, json!({ "mismatch": "P(0,D)" }));
    }

    // (iii) the reduction of P at the window root is exact:
    // (1+2D)² P(w;D) + L(w,D) ≡ 0 mod the window quadratic
    let reduction = {
        let lhs = &(polys::one() + &polys::dv().scale(&int(2))).pow(2) * &p;
        let sum = lhs + &polys::wstar_linear_reduction();
        sum.exact_div(&polys::window_quadratic(Var::W))
    };
    if reduction.is_err() {
        return fail(name, claim, json!({ "mismatch": "window reduction identity" }));
    }

    // (iv) at D = -1/3: the window root w* = -3(1+√2) lies in
    // [-29/4, -36/5], P(w*) < 0 by outward-rounded interval evaluation
    // of the linear reduction, and P(w; -1/3) has no roots on (-29/4, 0)
    let d13 = rat(-1, 3);
    let sqrt2 = match sqrt_enclosure(&int(2), &rat(1, 10_000_000)) {
        Ok(iv) => iv,
        Err(e) => return fail(name, claim, json!({ "error": e.to_string() })),
    };
    // w* = -3 - 3√2, outward
    let wstar = IntervalQ::new(
        int(-3) - int(3) * sqrt2.hi(),
        int(-3) - int(3) * sqrt2.lo(),
    )
    .unwrap();
    let paper_window = IntervalQ::new(rat(-29, 4), rat(-36, 5)).unwrap();
    if !paper_window.contains_interval(&wstar) {
        return fail(
            name,
            claim,
            json!({ "mismatch": "w* enclosure", "wstar": interval_json(&wstar) }),
        );
    }
    // P(w*) = -L(w*)/(1+2D)² with L linear in w*: need min L(w*) > 0
    let lred = polys::wstar_linear_reduction();
    let c1 = lred
        .coeffs_wrt(Var::W)
        .get(1)
        .map(|c| c.substitute(Var::D, &d13).as_constant().unwrap())
        .unwrap_or_else(Rational::zero);
    let c0 = lred
        .coeffs_wrt(Var::W)
        .first()
        .map(|c| c.substitute(Var::D, &d13).as_constant().unwrap())
        .unwrap_or_else(Rational::zero);
    let l_min = {
        let a = &c1 * wstar.lo();
        let b = &c1 * wstar.hi();
        (if a <= b { a } else { b }) + &c0
    };
    if !l_min.is_positive() {
        return fail(
            name,
            claim,
            json!({ "mismatch": "sign of P at w*", "l_min": rational_str(&l_min) }),
        );
    }
    let p13 = p.substitute(Var::D, &d13);
    let count13 = match sturm_count(&p13, &IntervalQ::new(rat(-29, 4), int(0)).unwrap()) {
        Ok(n) => n,
        Err(e) => return fail(name, claim, json!({ "error": e.to_string() })),
    };
    if count13 != 0 {
        return fail(name, claim, json!({ "roots_at_minus_third": count13 }));
    }

    pass(
        name,
        claim,
        json!({
            "delta_w": poly_json(&display),
            "quartic_roots_on_window": 0,
            "p_at_zero": "-1",
            "wstar_enclosure": interval_json(&wstar),
            "linear_reduction_min": rational_str(&l_min),
            "roots_at_minus_third": 0,
        }),
    )
}

/// Step (increasing branch): the reconstructed restriction set. For
/// `D ∈ (-1, -1/2)` the window quadratic has no negative roots (so the
/// whole half-line `w < 0` is admissible) and `P(w;D)` has no zeros
/// there: its `w`-discriminant never vanishes on the branch, its leading
/// coefficient keeps a sign, `P(0,D) = -1`, and the count at the sample
/// `D = -3/4` is zero.
pub fn check_p_negative_increasing() -> StepReport {
    let name = "check_P_negative_increasing";
    let claim = "P(w;D) does not vanish for w < 0 and -1 < D < -1/2; the window quadratic \
                 is positive on w <= 0 there";
    let window = IntervalQ::new(int(-1), rat(-1, 2)).unwrap();
    let p = polys::p_quartic(Var::W);

    // window quadratic: lc = D(1+2D) > 0 and root sum -2/(1+2D) > 0 on
    // the branch, so any real roots are positive; q(0) = 1
    let lc_q = &polys::dv() * &(polys::one() + &polys::dv().scale(&int(2)));
    let sum_sign_factor = polys::one() + &polys::dv().scale(&int(2)); // 1+2D < 0
    let sample = rat(-3, 4);
    let checks = [
        ("D(1+2D) has no roots on the branch", &lc_q, true),
        ("1+2D has no roots on the branch", &sum_sign_factor, false),
    ];
    let mut witness_parts = Vec::new();
    for (label, poly, want_positive) in checks {
        match count_open(poly, &window) {
            Ok(0) => {}
            Ok(n) => return fail(name, claim, json!({ "mismatch": label, "roots": n })),
            Err(e) => return fail(name, claim, json!({ "error": e.to_string() })),
        }
        let v = poly.eval(&sample, &sample, &sample);
        let ok = if want_positive {
            v.is_positive()
        } else {
            v.is_negative()
        };
        if !ok {
            return fail(name, claim, json!({ "mismatch": label, "value": rational_str(&v) }));
        }
        witness_parts.push(json!({ "factor": label, "sample_value": rational_str(&v) }));
    }

    // discriminant constancy: Δ_w matches the display and its quartic
    // core has no roots on (-1, -1/2); lc_w(P) = D²(1+2D) keeps a sign
    let disc = match exactalg::discriminant(&p, Var::W) {
        Ok(d) => d,
        Err(e) => return fail(name, claim, json!({ "error": e.to_string() })),
    };
    if disc != polys::delta_w_display() {
        return fail(name, claim, json!({ "mismatch": "discriminant" }));
    }
    match count_open(&polys::delta_w_quartic(), &window) {
        Ok(0) => {}
        Ok(n) => return fail(name, claim, json!({ "mismatch": "quartic core roots", "roots": n })),
        Err(e) => return fail(name, claim, json!({ "error": e.to_string() })),
    }
    let lc_p = p.leading_coeff(Var::W);
    match count_open(&lc_p, &window) {
        Ok(0) => {}
        Ok(n) => return fail(name, claim, json!({ "mismatch": "leading coefficient roots", "roots": n })),
        Err(e) => return fail(name, claim, json!({ "error": e.to_string() })),
    }
    if p.substitute(Var::W, &int(0)) != MPoly::from_i64(-1) {
        return fail(name, claim, json!({ "mismatch": "P(0,D)" }));
    }

    // sample count on the whole negative axis via a strict root bound
    let p_sample = p.substitute(Var::D, &sample);
    let bound = match cauchy_bound(&p_sample, Var::W) {
        Ok(b) => b,
        Err(e) => return fail(name, claim, json!({ "error": e.to_string() })),
    };
    let neg_axis = IntervalQ::new(-bound.clone(), int(0)).unwrap();
    match sturm_count(&p_sample, &neg_axis) {
        Ok(0) => {}
        Ok(n) => return fail(name, claim, json!({ "mismatch": "sample count", "roots": n })),
        Err(e) => return fail(name, claim, json!({ "error": e.to_string() })),
    }

    pass(
        name,
        claim,
        json!({
            "restriction_set": "w < 0 (window quadratic positive on the closed negative axis)",
            "factors": witness_parts,
            "sample_D": rational_str(&sample),
            "root_bound": rational_str(&bound),
        }),
    )
}

/// Step (decreasing branch): replay of the `D = -1/3` elimination with
/// the displayed polynomials.
pub fn replay_d13() -> StepReport {
    replay_d13_with(&polys::q2_poly())
}

/// As [`replay_d13`] with an injectable second polynomial, so that a
/// tampered input demonstrably breaks the step.
pub fn replay_d13_with(q2: &MPoly) -> StepReport {
    let name = "replay_D13";
    let claim = "Res(Q1, Q2, w) = 32(u-1)^3 u^6 R(u) with the displayed R, and R has no \
                 roots on (0, 1)";
    let q1 = polys::q1_poly();
    let res = match resultant(&q1, q2, Var::W) {
        Ok(r) => r,
        Err(e) => return fail(name, claim, json!({ "error": e.to_string() })),
    };
    let quotient = match res.exact_div(&polys::r_cofactor()) {
        Ok(q) => q,
        Err(e) => {
            return fail(
                name,
                claim,
                json!({ "mismatch": "cofactor division", "error": e.to_string() }),
            )
        }
    };
    let r = polys::r_poly();
    if quotient != r {
        // locate the first differing coefficient
        let qc = quotient.coeffs_wrt(Var::U);
        let rc = r.coeffs_wrt(Var::U);
        let mut idx = 0usize;
        for i in 0..qc.len().max(rc.len()) {
            let a = qc.get(i).cloned().unwrap_or_else(MPoly::zero);
            let b = rc.get(i).cloned().unwrap_or_else(MPoly::zero);
            if a != b {
                idx = i;
                break;
            }
        }
        return fail(
            name,
            claim,
            json!({ "mismatch": "coefficient", "index": idx }),
        );
    }
    let count = match sturm_count(&r, &IntervalQ::from_i64(0, 1)) {
        Ok(n) => n,
        Err(e) => return fail(name, claim, json!({ "error": e.to_string() })),
    };
    if count != 0 {
        return fail(name, claim, json!({ "roots_on_unit_interval": count }));
    }
    pass(
        name,
        claim,
        json!({
            "r": poly_json(&r),
            "cofactor": poly_json(&polys::r_cofactor()),
            "roots_on_unit_interval": 0,
        }),
    )
}

/// Output of the heavy elimination step: `R₂` normalized so its root
/// variable is `u` on both branches (the increasing branch eliminates `u`
/// and mirrors `w → u` afterwards).
pub struct R2Data {
    pub r2: MPoly,
    pub stripped: Vec<(String, u32)>,
}

pub fn compute_r2(branch: Branch, pp: &polys::ProofPolynomials) -> (Option<R2Data>, StepReport) {
    let name = "compute_R2";
    let claim = match branch {
        Branch::Decreasing => {
            "Res(P2, P3, w) = S(u;D) R2(u;D) with deg_u R2 = 12, R2(0;D) = 54D(D+1) and \
             R2(1;D) = 4D(1+2D)^4(D+1)^9"
        }
        Branch::Increasing => {
            "Res(P2, P3, u) factors as the mirrored S times a degree-12 residual in w \
             whose endpoint polynomial at w = 0 does not vanish on the branch"
        }
    };
    let (elim_var, interp_var) = match branch {
        Branch::Decreasing => (Var::W, Var::U),
        Branch::Increasing => (Var::U, Var::W),
    };
    let res = match interpolated_resultant(&pp.p2, &pp.p3, elim_var, interp_var) {
        Ok(r) => r,
        Err(e) => return (None, fail(name, claim, json!({ "error": e.to_string() }))),
    };
    // orient the residual variable as u
    let res = match branch {
        Branch::Decreasing => res,
        Branch::Increasing => polys::mirror_uw(&res),
    };
    // strip the explicit factor S piece by piece, recording exponents
    let mut cur = res;
    let mut stripped = Vec::new();
    for (factor, expect) in polys::s_factors(Var::U) {
        let (next, mult) = cur.strip_factor(&factor);
        stripped.push((format!("{factor}"), mult));
        if mult != expect {
            return (
                None,
                fail(
                    name,
                    claim,
                    json!({
                        "mismatch": "spurious factor multiplicity",
                        "factor": format!("{factor}"),
                        "expected": expect,
                        "found": mult,
                    }),
                ),
            );
        }
        cur = next;
    }
    let r2 = cur.scale(&polys::s_constant().recip());
    if r2.degree(Var::U) != Some(12) {
        return (
            None,
            fail(
                name,
                claim,
                json!({ "mismatch": "degree", "deg_u": r2.degree(Var::U) }),
            ),
        );
    }
    // endpoint pins
    let at0 = r2.substitute(Var::U, &int(0));
    let at1 = r2.substitute(Var::U, &int(1));
    match branch {
        Branch::Decreasing => {
            if at0 != polys::r2_at_zero() {
                return (
                    None,
                    fail(name, claim, json!({ "mismatch": "endpoint u=0", "value": poly_json(&at0) })),
                );
            }
            if at1 != polys::r2_at_one() {
                return (
                    None,
                    fail(name, claim, json!({ "mismatch": "endpoint u=1", "value": poly_json(&at1) })),
                );
            }
        }
        Branch::Increasing => {
            // property pin: the w = 0 endpoint polynomial has no roots on
            // the branch window (no root of R2 crosses the section w = 0)
            let window = {
                let (lo, hi) = branch.d_window();
                IntervalQ::new(lo, hi).unwrap()
            };
            match count_open(&at0, &window) {
                Ok(0) => {}
                Ok(n) => {
                    return (
                        None,
                        fail(name, claim, json!({ "mismatch": "endpoint roots on branch", "roots": n })),
                    )
                }
                Err(e) => return (None, fail(name, claim, json!({ "error": e.to_string() }))),
            }
        }
    }
    let witness = json!({
        "stripped_factors": stripped.iter().map(|(f, m)| json!({ "factor": f, "multiplicity": m })).collect::<Vec<_>>(),
        "constant": rational_str(&polys::s_constant()),
        "deg_u": 12,
        "deg_D": r2.degree(Var::D),
        "r2": poly_json(&r2),
        "endpoint_at_0": poly_json(&at0),
        "endpoint_at_1": poly_json(&at1),
    });
    (Some(R2Data { r2, stripped }), pass(name, claim, witness))
}

/// Everything the later steps need from the discriminant of `R₂`.
pub struct DiscAnalysis {
    /// the discriminant itself (for emission and re-verification)
    pub delta: MPoly,
    /// labelled root enclosures inside the branch window, ascending
    pub roots: Vec<(String, MPoly, IntervalQ)>,
    /// the degree-22 square-free residual block (decreasing branch)
    pub w_block: Option<MPoly>,
}

fn count_in(p: &MPoly, iv: &IntervalQ) -> Result<usize, ExactError> {
    sturm_count(p, iv)
}

/// Divides out any roots sitting exactly at the interval endpoints; the
/// root set inside the open interval is untouched.
fn deflate_endpoints(p: &MPoly, iv: &IntervalQ) -> MPoly {
    let var = p.sole_variable().unwrap_or(Var::D);
    let mut out = p.clone();
    for endpoint in [iv.lo(), iv.hi()] {
        let factor = MPoly::linear(var, int(1), -endpoint.clone());
        loop {
            if !out.eval(endpoint, endpoint, endpoint).is_zero() {
                break;
            }
            match out.exact_div(&factor) {
                Ok(next) => out = next,
                Err(_) => break,
            }
        }
    }
    out
}

/// Root count in the open interval, tolerating roots at the endpoints.
fn count_open(p: &MPoly, iv: &IntervalQ) -> Result<usize, ExactError> {
    sturm_count(&deflate_endpoints(p, iv), iv)
}

/// Root isolation in the open interval, tolerating endpoint roots.
fn isolate_open(p: &MPoly, iv: &IntervalQ, tol: &Rational) -> Result<Vec<IntervalQ>, ExactError> {
    isolate_roots(&deflate_endpoints(p, iv), iv, tol)
}

pub fn analyze_discriminant(
    branch: Branch,
    r2: &MPoly,
    cfg: &CertifyConfig,
) -> (Option<DiscAnalysis>, StepReport) {
    let name = "analyze_discriminant";
    let claim = match branch {
        Branch::Decreasing => {
            "disc_u(R2) = const · D^43 (D+1)^43 (1+2D)^32 K0^3 K1^2 W(D)^2 with W square-free \
             of degree 22; exactly one root of W, one of K0 and one of K1 lie in (-1/2, 0), \
             ordered -1/2 < D2 < D1 < D0 < 0 by disjoint rational enclosures"
        }
        Branch::Increasing => {
            "every square-free block of disc_u(R2) has its roots inside (-1, -1/2) isolated \
             in pairwise disjoint rational enclosures, together with any leading-coefficient \
             roots (no root escapes to infinity unnoticed)"
        }
    };

    let delta = match discriminant_with_budget(r2, cfg) {
        Ok(d) => d,
        Err(e) => return (None, fail(name, claim, json!({ "error": e.to_string() }))),
    };

    // strip the elementary factors
    let d = polys::dv();
    let (after_d, e_d) = delta.strip_factor(&d);
    let (after_d1, e_d1) = after_d.strip_factor(&(d.clone() + &polys::one()));
    let (residual, e_2d1) = after_d1.strip_factor(&(polys::one() + &d.scale(&int(2))));
    if branch == Branch::Decreasing && (e_d, e_d1, e_2d1) != (43, 43, 32) {
        return (
            None,
            fail(
                name,
                claim,
                json!({ "mismatch": "elementary factor exponents", "found": [e_d, e_d1, e_2d1] }),
            ),
        );
    }

    // square-free structure of the residual
    let blocks = match squarefree_decomposition(&residual) {
        Ok(b) => b,
        Err(e) => return (None, fail(name, claim, json!({ "error": e.to_string() }))),
    };
    let shape: Vec<(Option<u32>, u32)> = blocks
        .iter()
        .map(|(f, m)| (f.degree(Var::D), *m))
        .collect();

    let (lo, hi) = branch.d_window();
    let window = IntervalQ::new(lo, hi).unwrap();
    let mut roots: Vec<(String, MPoly, IntervalQ)> = Vec::new();
    let mut w_block_out = None;
    let mut proportionality = None;

    match branch {
        Branch::Decreasing => {
            if blocks.len() != 2 || blocks[0].1 != 2 || blocks[1].1 != 3 {
                return (
                    None,
                    fail(name, claim, json!({ "mismatch": "square-free shape", "shape": format!("{shape:?}") })),
                );
            }
            let m2 = &blocks[0].0;
            let m3 = &blocks[1].0;
            if m3.degree(Var::D) != Some(2) || m2.degree(Var::D) != Some(26) {
                return (
                    None,
                    fail(name, claim, json!({ "mismatch": "block degrees", "shape": format!("{shape:?}") })),
                );
            }
            // multiplicity-3 block is K0 up to the monic normalization
            if m3.scale(&int(22)) != polys::k0_poly() {
                return (
                    None,
                    fail(name, claim, json!({ "mismatch": "multiplicity-3 block", "block": poly_json(m3) })),
                );
            }
            // K1 divides the multiplicity-2 block exactly
            let k1_monic = polys::k1_poly().scale(&rat(1, 128));
            let w_block = match m2.exact_div(&k1_monic) {
                Ok(w) => w,
                Err(_) => {
                    return (
                        None,
                        fail(name, claim, json!({ "mismatch": "K1 does not divide the multiplicity-2 block" })),
                    )
                }
            };
            if w_block.degree(Var::D) != Some(22) {
                return (
                    None,
                    fail(name, claim, json!({ "mismatch": "residual degree", "deg": w_block.degree(Var::D) })),
                );
            }

            // proportionality constant against the printed normalization
            let mut q = residual.clone();
            for f in [&polys::k0_poly(), &polys::k0_poly(), &polys::k0_poly(),
                      &polys::k1_poly(), &polys::k1_poly(), &w_block, &w_block]
            {
                q = match q.exact_div(f) {
                    Ok(v) => v,
                    Err(e) => return (None, fail(name, claim, json!({ "error": e.to_string() }))),
                };
            }
            let c = match q.as_constant() {
                Some(c) => c,
                None => {
                    return (
                        None,
                        fail(name, claim, json!({ "mismatch": "nonconstant after factor removal" })),
                    )
                }
            };
            proportionality = Some(c);

            // one root each inside the window
            for (label, f) in [("K0", polys::k0_poly()), ("K1", polys::k1_poly()), ("W", w_block.clone())] {
                let ivs = match isolate_open(&f, &window, &cfg.refine_tol) {
                    Ok(v) => v,
                    Err(e) => return (None, fail(name, claim, json!({ "error": e.to_string(), "factor": label }))),
                };
                if ivs.len() != 1 {
                    return (
                        None,
                        fail(name, claim, json!({ "mismatch": "root count", "factor": label, "count": ivs.len() })),
                    );
                }
                roots.push((label.to_string(), f, ivs.into_iter().next().unwrap()));
            }

            // the printed interval pins the W-root by a sign change
            let (dlo, dhi) = (rat(-16, 125), rat(-267, 2086));
            let wl = w_block.eval(&dlo, &dlo, &dlo);
            let wh = w_block.eval(&dhi, &dhi, &dhi);
            if wl.is_zero() || wh.is_zero() || wl.is_positive() == wh.is_positive() {
                return (
                    None,
                    fail(name, claim, json!({ "mismatch": "no sign change across the printed enclosure" })),
                );
            }
            let printed = IntervalQ::new(dlo, dhi).unwrap();
            let w_iv = &roots.iter().find(|(l, _, _)| l == "W").unwrap().2;
            if !w_iv.intersects(&printed) {
                return (
                    None,
                    fail(name, claim, json!({ "mismatch": "W enclosure misses the printed interval",
                        "ours": interval_json(w_iv), "printed": interval_json(&printed) })),
                );
            }
            w_block_out = Some(w_block);
        }
        Branch::Increasing => {
            // property route: isolate the window roots of every block and
            // of the leading coefficient of R2 (escape control)
            for (i, (f, mult)) in blocks.iter().enumerate() {
                let ivs = match isolate_open(f, &window, &cfg.refine_tol) {
                    Ok(v) => v,
                    Err(e) => return (None, fail(name, claim, json!({ "error": e.to_string(), "block": i }))),
                };
                for (j, iv) in ivs.into_iter().enumerate() {
                    roots.push((format!("block{i}m{mult}_{j}"), f.clone(), iv));
                }
            }
            let lc = r2.leading_coeff(Var::U);
            if lc.degree(Var::D) >= Some(1) {
                let ivs = match isolate_open(&lc, &window, &cfg.refine_tol) {
                    Ok(v) => v,
                    Err(e) => return (None, fail(name, claim, json!({ "error": e.to_string(), "factor": "lc" }))),
                };
                for (j, iv) in ivs.into_iter().enumerate() {
                    roots.push((format!("lc_{j}"), lc.clone(), iv));
                }
            }
            if roots.is_empty() {
                return (
                    None,
                    fail(name, claim, json!({ "mismatch": "expected interior discriminant roots" })),
                );
            }
        }
    }

    // refine until pairwise disjoint, then order
    let mut guard = 0;
    'outer: loop {
        roots.sort_by(|a, b| a.2.lo().cmp(b.2.lo()));
        let mut overlapping = None;
        for i in 0..roots.len().saturating_sub(1) {
            if !roots[i].2.strictly_left_of(&roots[i + 1].2) {
                overlapping = Some(i);
                break;
            }
        }
        match overlapping {
            None => break,
            Some(_) => {
                guard += 1;
                if guard > 24 {
                    return (
                        None,
                        fail(name, claim, json!({ "mismatch": "enclosures not separable" })),
                    );
                }
                for (_, f, iv) in roots.iter_mut() {
                    let tol = iv.width() / int(4);
                    if let Ok(refined) = refine_root(f, iv, &tol) {
                        *iv = refined;
                    }
                }
                continue 'outer;
            }
        }
    }
    // decreasing branch: the printed ordering D2 < D1 < D0
    if branch == Branch::Decreasing {
        let order: Vec<&str> = roots.iter().map(|(l, _, _)| l.as_str()).collect();
        if order != vec!["W", "K1", "K0"] {
            return (
                None,
                fail(name, claim, json!({ "mismatch": "root ordering", "order": format!("{order:?}") })),
            );
        }
    }

    let two_pow_25 = int(33_554_432);
    let witness = json!({
        "elementary_exponents": { "D": e_d, "D_plus_1": e_d1, "one_plus_2D": e_2d1 },
        "squarefree_shape": format!("{shape:?}"),
        "w_block": w_block_out.as_ref().map(poly_json),
        "proportionality": proportionality.as_ref().map(rational_str),
        "ratio_vs_2pow25": proportionality.as_ref().map(|c| rational_str(&(c / &two_pow_25))),
        "roots": roots.iter().map(|(l, _, iv)| json!({ "label": l, "enclosure": interval_json(iv) })).collect::<Vec<_>>(),
    });
    (
        Some(DiscAnalysis {
            delta,
            roots,
            w_block: w_block_out,
        }),
        pass(name, claim, witness),
    )
}

/// Direct elimination inside a wall-clock budget, falling back to the
/// interpolation route. Both produce the same canonical determinant, so
/// the report content never depends on which one finished.
fn discriminant_with_budget(r2: &MPoly, cfg: &CertifyConfig) -> Result<MPoly, ExactError> {
    let dr2 = r2.derivative(Var::U);
    if dr2.is_zero() {
        return Err(ExactError::DegreeTooLow("u"));
    }
    if let Some(budget) = cfg.direct_budget {
        let cancel = AtomicBool::new(false);
        let direct = std::thread::scope(|scope| {
            let handle = scope.spawn(|| resultant_cancellable(r2, &dr2, Var::U, Some(&cancel)));
            let deadline = Instant::now() + budget;
            loop {
                if handle.is_finished() {
                    return handle.join().expect("elimination thread");
                }
                if Instant::now() >= deadline {
                    cancel.store(true, Ordering::Relaxed);
                    return handle.join().expect("elimination thread");
                }
                std::thread::sleep(Duration::from_millis(5));
            }
        });
        match direct {
            Ok(res) => {
                eprintln!("analyze_discriminant: direct elimination finished in budget");
                return exactalg::resultant::discriminant_from_resultant(r2, Var::U, res);
            }
            Err(ExactError::Cancelled) => {
                eprintln!("analyze_discriminant: budget exceeded, using interpolation");
            }
            Err(e) => return Err(e),
        }
    }
    exactalg::discriminant_interpolated(r2, Var::U, Var::D)
}

/// Step: one rational sample per sub-interval between consecutive
/// discriminant roots; `R₂(·, sample)` must have no roots in the branch
/// root-window.
pub fn check_subintervals(
    branch: Branch,
    r2: &MPoly,
    analysis: &DiscAnalysis,
) -> StepReport {
    let name = "check_subintervals";
    let claim = "R2 has no roots in the branch root-window for one validated rational \
                 sample per sub-interval";
    let (lo, hi) = branch.d_window();
    let defaults: Vec<Rational> = match branch {
        Branch::Decreasing => vec![rat(-1, 3), rat(-1, 8), rat(-1, 10), rat(-1, 50)],
        Branch::Increasing => Vec::new(),
    };
    // sub-interval boundaries: window ends + root enclosures (ascending)
    let mut bounds: Vec<(Rational, Rational)> = vec![(lo.clone(), lo.clone())];
    for (_, _, iv) in &analysis.roots {
        bounds.push((iv.lo().clone(), iv.hi().clone()));
    }
    bounds.push((hi.clone(), hi.clone()));

    let mut samples = Vec::new();
    let mut repaired = Vec::new();
    for i in 0..bounds.len() - 1 {
        let left_hi = &bounds[i].1;
        let right_lo = &bounds[i + 1].0;
        let midpoint = (left_hi + right_lo) / int(2);
        let sample = match defaults.get(i) {
            Some(s) if left_hi < s && s < right_lo => s.clone(),
            Some(s) => {
                repaired.push(json!({
                    "sub_interval": i,
                    "rejected": rational_str(s),
                    "used": rational_str(&midpoint),
                }));
                midpoint
            }
            None => midpoint,
        };
        samples.push(sample);
    }

    let mut sample_witness = Vec::new();
    for (i, s) in samples.iter().enumerate() {
        let slice = r2.substitute(Var::D, s);
        let window = match branch {
            Branch::Decreasing => IntervalQ::from_i64(0, 1),
            Branch::Increasing => {
                let b = match cauchy_bound(&slice, Var::U) {
                    Ok(b) => b,
                    Err(e) => return fail(name, claim, json!({ "error": e.to_string(), "sample": rational_str(s) })),
                };
                IntervalQ::new(-b, int(0)).unwrap()
            }
        };
        match count_in(&slice, &window) {
            Ok(0) => sample_witness.push(json!({
                "sub_interval": i,
                "sample": rational_str(s),
                "roots": 0,
            })),
            Ok(n) => {
                return fail(
                    name,
                    claim,
                    json!({ "sample": rational_str(s), "roots": n }),
                )
            }
            Err(e) => {
                return fail(
                    name,
                    claim,
                    json!({ "sample": rational_str(s), "error": e.to_string() }),
                )
            }
        }
    }
    pass(
        name,
        claim,
        json!({ "samples": sample_witness, "repaired": repaired }),
    )
}

/// Builds the rational upper bound `U` of `R₂` over a parameter
/// enclosure: every monomial `c·D^m·u^j` is replaced by its best constant
/// bound over `D ∈ iv`, taken from above where `u^j > 0` on the window
/// and from below where `u^j < 0`.
fn bounding_upper(r2: &MPoly, iv: &IntervalQ, negative_axis: bool) -> MPoly {
    let coeffs = r2.coeffs_wrt(Var::U);
    let mut u_poly = MPoly::zero();
    for (j, cj) in coeffs.iter().enumerate() {
        let mut bound = Rational::zero();
        let upper = !negative_axis || j % 2 == 0;
        for (e, c) in cj.terms() {
            let m = e[Var::D.index()];
            bound += if upper {
                iv.monomial_upper(c, m)
            } else {
                iv.monomial_lower(c, m)
            };
        }
        if !bound.is_zero() {
            u_poly.insert_term([j as u32, 0, 0], bound);
        }
    }
    u_poly
}

/// Step: for one discriminant-root enclosure, the bounding polynomial is
/// negative on the whole root-window, hence `R₂ < 0` there for every `D`
/// in the enclosure. Shrinks the enclosure and retries when too loose.
pub fn bounding_poly_step(
    branch: Branch,
    r2: &MPoly,
    label: &str,
    factor: &MPoly,
    enclosure: &IntervalQ,
    cfg: &CertifyConfig,
) -> (Option<MPoly>, StepReport) {
    let name = format!("bounding_poly_{label}");
    let claim = "an upper bounding polynomial with rational coefficients is negative on \
                 the whole root-window for every D in the enclosure";
    let negative_axis = branch == Branch::Increasing;
    let mut iv = enclosure.clone();
    let mut attempts = Vec::new();
    for attempt in 0..=cfg.bound_retries {
        let u_poly = bounding_upper(r2, &iv, negative_axis);
        let verdict = bound_is_negative(&u_poly, negative_axis);
        attempts.push(json!({
            "attempt": attempt,
            "enclosure": interval_json(&iv),
            "outcome": match &verdict { Ok(()) => "negative".to_string(), Err(m) => m.clone() },
        }));
        if verdict.is_ok() {
            let report = pass(
                &name,
                claim,
                json!({
                    "enclosure": interval_json(&iv),
                    "bounding_poly": poly_json(&u_poly),
                    "attempts": attempts,
                }),
            );
            return (Some(u_poly), report);
        }
        // shrink toward the root and retry
        let tol = iv.width() / int(4);
        match refine_root(factor, &iv, &tol) {
            Ok(refined) => iv = refined,
            Err(e) => {
                return (
                    None,
                    fail(
                        &name,
                        claim,
                        json!({ "error": e.to_string(), "attempts": attempts }),
                    ),
                )
            }
        }
    }
    (
        None,
        fail(
            &name,
            claim,
            json!({ "mismatch": "bound too loose after retries", "attempts": attempts }),
        ),
    )
}

fn bound_is_negative(u_poly: &MPoly, negative_axis: bool) -> Result<(), String> {
    if u_poly.is_zero() {
        return Err("bound is identically zero".into());
    }
    if !negative_axis {
        // window (0, 1): negative inside and at the probe point 1/2
        let probe = u_poly.eval(&rat(1, 2), &int(0), &int(0));
        if !probe.is_negative() {
            return Err("bound not negative at 1/2".into());
        }
        match sturm_count(u_poly, &IntervalQ::from_i64(0, 1)) {
            Ok(0) => Ok(()),
            Ok(n) => Err(format!("bound has {n} roots in (0,1)")),
            Err(e) => Err(e.to_string()),
        }
    } else {
        // window (-∞, 0): negative at -1, no roots below zero, and the
        // leading behaviour keeps it negative toward -∞
        let probe = u_poly.eval(&int(-1), &int(0), &int(0));
        if !probe.is_negative() {
            return Err("bound not negative at -1".into());
        }
        let deg = u_poly.degree(Var::U).unwrap();
        let lc = u_poly
            .leading_coeff(Var::U)
            .as_constant()
            .expect("univariate bound");
        let tail_negative = if deg % 2 == 0 {
            lc.is_negative()
        } else {
            lc.is_positive()
        };
        if !tail_negative {
            return Err("bound does not stay negative toward -infinity".into());
        }
        let b = cauchy_bound(u_poly, Var::U).map_err(|e| e.to_string())?;
        match sturm_count(u_poly, &IntervalQ::new(-b, int(0)).unwrap()) {
            Ok(0) => Ok(()),
            Ok(n) => Err(format!("bound has {n} roots on the negative axis")),
            Err(e) => Err(e.to_string()),
        }
    }
}

/// For the decreasing branch the `W`-root enclosure is first taken to be
/// the printed interval, provided it still isolates the root.
pub fn preferred_w_enclosure(analysis: &DiscAnalysis) -> Option<IntervalQ> {
    let printed = IntervalQ::new(rat(-16, 125), rat(-267, 2086)).ok()?;
    let ours = &analysis.roots.iter().find(|(l, _, _)| l == "W")?.2;
    if printed.contains_interval(ours) {
        Some(printed)
    } else {
        Some(ours.clone())
    }
}
