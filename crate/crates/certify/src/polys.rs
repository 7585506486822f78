//! Symbolic construction of every named polynomial in the certificate:
//! the quartic `P`, the cleared-denominator comparison polynomials `P₂`
//! and `P₃`, the explicit spurious factor `S`, the `D = -1/3` pair
//! `Q₁, Q₂` with the degree-12 elimination polynomial `R`, and the
//! discriminant factors `K₀, K₁` with the quartic core of `Δ_w`.

use exactalg::{int, ExactError, MPoly, Rational, Var};

pub fn u() -> MPoly {
    MPoly::var(Var::U)
}

pub fn w() -> MPoly {
    MPoly::var(Var::W)
}

pub fn dv() -> MPoly {
    MPoly::var(Var::D)
}

fn xv(x: Var) -> MPoly {
    MPoly::var(x)
}

pub fn one() -> MPoly {
    MPoly::one()
}

/// `1 - x`.
pub fn one_minus(x: Var) -> MPoly {
    one() - &xv(x)
}

/// `1 + D·x`.
pub fn one_plus_dx(x: Var) -> MPoly {
    one() + &(&dv() * &xv(x))
}

/// `1 + 2Dx + D(1+2D)x²` — the quadratic whose positive root bounds the
/// admissible `w`-window.
pub fn window_quadratic(x: Var) -> MPoly {
    let d = dv();
    one()
        + &(&(&d * &xv(x)).scale(&int(2)))
        + &(&(&d * &(one() + &d.scale(&int(2)))) * &xv(x).pow(2))
}

/// `P(x; D) = -1 - 4Dx - 2D(2D-1)x² - 2D(1+D+2D²)x³ + D²(1+2D)x⁴`.
pub fn p_quartic(x: Var) -> MPoly {
    let d = dv();
    let x1 = xv(x);
    let c1 = d.scale(&int(-4));
    let c2 = (&d * &(d.scale(&int(2)) - &one())).scale(&int(-2));
    let c3 = (&d * &(one() + &d + &d.pow(2).scale(&int(2)))).scale(&int(-2));
    let c4 = &d.pow(2) * &(one() + &d.scale(&int(2)));
    MPoly::from_i64(-1)
        + &(&c1 * &x1)
        + &(&c2 * &x1.pow(2))
        + &(&c3 * &x1.pow(3))
        + &(&c4 * &x1.pow(4))
}

/// `G(x) = (1-x)(1 + 2Dx + D(1+2D)x²)`, the numerator piece of the
/// second comparison curve.
fn g_factor(x: Var) -> MPoly {
    &one_minus(x) * &window_quadratic(x)
}

/// `P₂(u,w;D) = uw(1+Du)³(1+Dw)³·F₂`, built by clearing the denominators
/// of `F₂ = G(u)/(u(1+Du)³) + G(w)/(w(1+Dw)³)` exactly.
pub fn p2_poly() -> MPoly {
    let lhs = &g_factor(Var::U) * &(&w() * &one_plus_dx(Var::W).pow(3));
    let rhs = &g_factor(Var::W) * &(&u() * &one_plus_dx(Var::U).pow(3));
    lhs + &rhs
}

/// `P₃(u,w;D) = (u-1)u²(1+Du)⁴(1+Dw)·P(w;D)·F₃/w`. Clearing the two
/// denominators of `F₃` leaves the numerator `A·E + C·B` over `B·E`, and
/// the stated prefactor cancels everything except one division by `u·w`,
/// which must be exact.
pub fn p3_poly() -> Result<MPoly, ExactError> {
    let a = &(&w() * &(w() - &one())) * &one_plus_dx(Var::U);
    let b = &(&u() * &(u() - &one())) * &one_plus_dx(Var::W);
    let c = &(&p_quartic(Var::U) * &w().pow(2)) * &one_plus_dx(Var::W).pow(4);
    let e = &(&p_quartic(Var::W) * &u().pow(2)) * &one_plus_dx(Var::U).pow(4);
    let numerator = &(&a * &e) + &(&c * &b);
    numerator.exact_div(&(&u() * &w()))
}

/// The explicit nonvanishing factor of `Res(P₂, P₃, w)`:
/// `S(u;D) = -8 D⁹ u⁷ (u-1)³ (1+2D)(D+1)⁹ (Du+1)²¹ (D(1+2D)u² + 2Du + 1)`.
pub fn s_factors(x: Var) -> Vec<(MPoly, u32)> {
    vec![
        (dv(), 9),
        (xv(x), 7),
        (xv(x) - &one(), 3),
        (one() + &dv().scale(&int(2)), 1),
        (dv() + &one(), 9),
        (one_plus_dx(x), 21),
        (window_quadratic(x), 1),
    ]
}

pub fn s_constant() -> Rational {
    int(-8)
}

/// Expanded `S` (used in witnesses).
pub fn s_poly(x: Var) -> MPoly {
    let mut p = MPoly::constant(s_constant());
    for (f, m) in s_factors(x) {
        p = &p * &f.pow(m);
    }
    p
}

/// `Q₁(u,w) = u³(1-w)² + w³(1-u)²`: the polynomial form of the
/// first comparison curve at `D = -1/3`.
pub fn q1_poly() -> MPoly {
    &u().pow(3) * &one_minus(Var::W).pow(2) + &(&w().pow(3) * &one_minus(Var::U).pow(2))
}

/// `Q₂(u,w)`: the numerator of `F₂` at `D = -1/3`, as displayed.
pub fn q2_poly() -> MPoly {
    let upoly = |cs: &[i64]| -> MPoly {
        let mut p = MPoly::zero();
        for (i, &c) in cs.iter().enumerate() {
            if c != 0 {
                p.insert_term([i as u32, 0, 0], int(c));
            }
        }
        p
    };
    // -9u(u-3)^3
    let t0 = upoly(&[0, 243, -243, 81, -9]);
    // 3(81 - 270u + 180u² - 36u³ + 5u⁴) w
    let t1 = &upoly(&[243, -810, 540, -108, 15]) * &w();
    // (-243 + 540u - 270u² + 18u³ - 5u⁴) w²
    let t2 = &upoly(&[-243, 540, -270, 18, -5]) * &w().pow(2);
    // -(u+3)(-27 + 45u - 21u² + u³) w³
    let t3 = &(&upoly(&[3, 1]) * &upoly(&[-27, 45, -21, 1])).scale(&int(-1)) * &w().pow(3);
    // -(u-1)(-9 + 6u + u²) w⁴
    let t4 = &(&upoly(&[-1, 1]) * &upoly(&[-9, 6, 1])).scale(&int(-1)) * &w().pow(4);
    t0 + &t1 + &t2 + &t3 + &t4
}

/// The displayed coefficients of `R(u)`, constant term first.
pub const R_COEFFS: [i64; 13] = [
    531_441,
    -3_188_646,
    8_148_762,
    -11_455_506,
    9_546_255,
    -4_776_408,
    1_487_889,
    -406_782,
    143_856,
    -32_238,
    1_593,
    -180,
    -4,
];

pub fn r_poly() -> MPoly {
    let mut p = MPoly::zero();
    for (i, &c) in R_COEFFS.iter().enumerate() {
        p.insert_term([i as u32, 0, 0], int(c));
    }
    p
}

/// `32 (u-1)³ u⁶`, the cofactor of `R(u)` inside `Res(Q₁, Q₂, w)`.
pub fn r_cofactor() -> MPoly {
    (&(u() - &one()).pow(3) * &u().pow(6)).scale(&int(32))
}

/// `K₀(D) = 22D² + 22D + 1`.
pub fn k0_poly() -> MPoly {
    let d = dv();
    d.pow(2).scale(&int(22)) + &d.scale(&int(22)) + &one()
}

/// `K₁(D) = 128D⁴ + 256D³ + 112D² - 16D - 3`.
pub fn k1_poly() -> MPoly {
    let d = dv();
    d.pow(4).scale(&int(128))
        + &d.pow(3).scale(&int(256))
        + &d.pow(2).scale(&int(112))
        + &d.scale(&int(-16))
        + &MPoly::from_i64(-3)
}

/// The quartic core of `Δ_w`: `304D⁴ + 608D³ + 296D² - 8D + 27`.
pub fn delta_w_quartic() -> MPoly {
    let d = dv();
    d.pow(4).scale(&int(304))
        + &d.pow(3).scale(&int(608))
        + &d.pow(2).scale(&int(296))
        + &d.scale(&int(-8))
        + &MPoly::from_i64(27)
}

/// The full displayed discriminant `Δ_w(D) = -16(D+1)⁴ D⁴ · quartic`.
pub fn delta_w_display() -> MPoly {
    let d = dv();
    (&(&(d.clone() + &one()).pow(4) * &d.pow(4)) * &delta_w_quartic()).scale(&int(-16))
}

/// Linear reduction of `P` at the window root:
/// `L(w,D) = 2(D+1)(4D²+4D-1)·w + 2(2D+3)(D+1)`, entering through
/// `(1+2D)²·P(w;D) + L(w,D) ≡ 0 (mod window quadratic)`.
pub fn wstar_linear_reduction() -> MPoly {
    let d = dv();
    let c1 = (&(d.clone() + &one())
        * &(d.pow(2).scale(&int(4)) + &d.scale(&int(4)) - &one()))
        .scale(&int(2));
    let c0 = (&(d.scale(&int(2)) + &MPoly::from_i64(3)) * &(d.clone() + &one())).scale(&int(2));
    &c1 * &w() + &c0
}

/// Endpoint identities of `R₂`: `R₂(0;D) = 54D(D+1)` and
/// `R₂(1;D) = 4D(1+2D)⁴(D+1)⁹`.
pub fn r2_at_zero() -> MPoly {
    (&dv() * &(dv() + &one())).scale(&int(54))
}

pub fn r2_at_one() -> MPoly {
    let d = dv();
    (&(&d * &(one() + &d.scale(&int(2))).pow(4)) * &(d.clone() + &one()).pow(9)).scale(&int(4))
}

/// Swaps the roles of `u` and `w` (the comparison polynomials are
/// symmetric, so the increasing-branch elimination mirrors this way).
pub fn mirror_uw(p: &MPoly) -> MPoly {
    let mut out = MPoly::zero();
    for (e, c) in p.terms() {
        out.insert_term([e[1], e[0], e[2]], c.clone());
    }
    out
}

/// The named polynomials a branch's certificate rests on.
#[derive(Debug, Clone)]
pub struct ProofPolynomials {
    /// `P(w;D)` (decreasing) or `P(u;D)`-mirrored view (increasing)
    pub p_quartic: MPoly,
    /// polynomial form of the first comparison curve at `D = -1/3`
    pub f1_numerator: MPoly,
    pub p2: MPoly,
    pub p3: MPoly,
    pub s: MPoly,
    pub delta_w: MPoly,
    pub k0: MPoly,
    pub k1: MPoly,
}

impl ProofPolynomials {
    pub fn build() -> Result<Self, ExactError> {
        Ok(Self {
            p_quartic: p_quartic(Var::W),
            f1_numerator: q1_poly(),
            p2: p2_poly(),
            p3: p3_poly()?,
            s: s_poly(Var::U),
            delta_w: delta_w_display(),
            k0: k0_poly(),
            k1: k1_poly(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::rat;

    #[test]
    fn p_at_zero_is_minus_one() {
        let p = p_quartic(Var::W);
        assert_eq!(p.substitute(Var::W, &int(0)), MPoly::from_i64(-1));
    }

    fn uw_degree(p: &MPoly) -> u32 {
        p.terms().map(|(e, _)| e[0] + e[1]).max().unwrap_or(0)
    }

    #[test]
    fn stated_total_degrees() {
        // degrees in (u, w), with D a parameter
        assert_eq!(uw_degree(&p2_poly()), 7);
        assert_eq!(uw_degree(&p3_poly().unwrap()), 11);
    }

    #[test]
    fn q2_is_a_rescaled_p2_slice() {
        // at D = -1/3: (1+Du)³(1+Dw)³ = (u-3)³(w-3)³/729, so Q2 = 243·P2
        let slice = p2_poly().substitute(Var::D, &rat(-1, 3));
        assert_eq!(q2_poly(), slice.scale(&int(243)));
    }

    #[test]
    fn p2_p3_symmetric_under_uw_swap() {
        let p2 = p2_poly();
        assert_eq!(mirror_uw(&p2), p2);
        let p3 = p3_poly().unwrap();
        assert_eq!(mirror_uw(&p3), p3);
    }

    #[test]
    fn p2_matches_cleared_f2_numerically() {
        // F₂(u,w;D)·uw(1+Du)³(1+Dw)³ = P₂ at sample points
        let p2 = p2_poly();
        for (uu, ww, d) in [(0.3, -0.7, -0.3), (0.6, -2.0, -0.45), (0.9, -0.2, -0.12)] {
            let f2 = dynsys_f2(uu, ww, d);
            let clear = uu * ww * (1.0 + d * uu).powi(3) * (1.0 + d * ww).powi(3);
            let got = p2.eval_f64(uu, ww, d);
            let expect = f2 * clear;
            assert!(
                (got - expect).abs() <= 1e-10 * expect.abs().max(1.0),
                "got={got} expect={expect}"
            );
        }
    }

    // local copy of the rational-function form of F₂ for the numeric check
    fn dynsys_f2(u: f64, w: f64, d: f64) -> f64 {
        let g2 = |x: f64| {
            let quad = 1.0 + 2.0 * d * x + d * (1.0 + 2.0 * d) * x * x;
            (1.0 - x) * quad / (x * (1.0 + d * x).powi(3))
        };
        g2(u) + g2(w)
    }

    #[test]
    fn p3_matches_its_rational_definition_numerically() {
        let p3 = p3_poly().unwrap();
        let p = |x: f64, d: f64| {
            -1.0 - 4.0 * d * x - 2.0 * d * (2.0 * d - 1.0) * x * x
                - 2.0 * d * (1.0 + d + 2.0 * d * d) * x.powi(3)
                + d * d * (1.0 + 2.0 * d) * x.powi(4)
        };
        for (uu, ww, d) in [(0.3, -0.7, -0.3), (0.55, -1.4, -0.2)] {
            let f3 = ww * (ww - 1.0) * (1.0 + d * uu) / (uu * (uu - 1.0) * (1.0 + d * ww))
                + p(uu, d) / p(ww, d) * ww * ww * (1.0 + d * ww).powi(4)
                    / (uu * uu * (1.0 + d * uu).powi(4));
            let prefactor =
                (uu - 1.0) * uu * uu * (1.0 + d * uu).powi(4) * (1.0 + d * ww) * p(ww, d) / ww;
            let expect = prefactor * f3;
            let got = p3.eval_f64(uu, ww, d);
            assert!(
                (got - expect).abs() <= 1e-9 * expect.abs().max(1.0),
                "got={got} expect={expect}"
            );
        }
    }

    #[test]
    fn q2_is_the_f2_numerator_at_minus_third() {
        // 3·Q₂/(uw(u-3)³(w-3)³) = F₂(u,w;-1/3)
        let q2 = q2_poly();
        for (uu, ww) in [(0.4, -0.8), (0.7, -3.0)] {
            let d = -1.0 / 3.0;
            let f2 = dynsys_f2(uu, ww, d);
            let denom = uu * ww * (uu - 3.0).powi(3) * (ww - 3.0).powi(3);
            let got = 3.0 * q2.eval_f64(uu, ww, 0.0);
            let expect = f2 * denom;
            assert!(
                (got - expect).abs() <= 1e-9 * expect.abs().max(1.0),
                "got={got} expect={expect}"
            );
        }
    }

    #[test]
    fn window_quadratic_reduction_of_p_is_exact() {
        // (1+2D)²·P(w;D) + L(w,D) is divisible by the window quadratic
        let lhs = &(one() + &dv().scale(&int(2))).pow(2) * &p_quartic(Var::W);
        let sum = lhs + &wstar_linear_reduction();
        let q = sum.exact_div(&window_quadratic(Var::W));
        assert!(q.is_ok(), "reduction identity failed: {:?}", q.err());
    }

    #[test]
    fn r_coefficients_sum_to_thirty_two() {
        // R(1) = 32, consistent with the resultant's cofactor structure
        let s: i64 = R_COEFFS.iter().sum();
        assert_eq!(s, 32);
        assert_eq!(r_poly().substitute(Var::U, &int(1)), MPoly::from_i64(32));
        assert_eq!(
            r_poly().substitute(Var::U, &int(0)),
            MPoly::from_i64(531_441)
        );
    }

    #[test]
    fn endpoint_polynomials_shape() {
        assert_eq!(r2_at_zero().degree(Var::D), Some(2));
        assert_eq!(r2_at_one().degree(Var::D), Some(14));
        let m = mirror_uw(&r2_at_one());
        assert_eq!(m, r2_at_one());
    }

    #[test]
    fn delta_w_display_shape() {
        let dw = delta_w_display();
        assert_eq!(dw.degree(Var::D), Some(12));
        // leading coefficient: -16·304·1 D^12
        assert_eq!(dw.coeff(&[0, 0, 12]), rat(-16 * 304, 1));
    }
}
