//! End-to-end certificate replays, negative controls, and cross-checks
//! against the direct elimination route and the floating-point engines.

use certify::{
    certify_theorem_b_full, polys, report::Branch, steps, CertifyConfig, Verdict,
};
use exactalg::{int, rat, resultant, sturm_count, IntervalQ, MPoly, Var};
use num_traits::Signed;

fn cfg() -> CertifyConfig {
    CertifyConfig::default()
}

#[test]
fn p_negative_step_passes() {
    let step = steps::check_p_negative();
    assert_eq!(step.verdict, Verdict::Pass, "witness: {}", step.witness);
}

#[test]
fn p_negative_increasing_step_passes() {
    let step = steps::check_p_negative_increasing();
    assert_eq!(step.verdict, Verdict::Pass, "witness: {}", step.witness);
}

#[test]
fn d13_replay_matches_displayed_elimination() {
    let step = steps::replay_d13();
    assert_eq!(step.verdict, Verdict::Pass, "witness: {}", step.witness);
}

#[test]
fn d13_tamper_is_detected_with_witness() {
    // flip one coefficient of Q2: the step must fail and name the spot
    let mut q2 = polys::q2_poly();
    let tweak = q2.coeff(&[2, 2, 0]) + int(1);
    q2.insert_term([2, 2, 0], tweak);
    let step = steps::replay_d13_with(&q2);
    assert_eq!(step.verdict, Verdict::Fail);
    let w = step.witness.to_string();
    assert!(
        w.contains("coefficient") || w.contains("division"),
        "witness should localize the damage: {w}"
    );
}

#[test]
fn decreasing_branch_certificate_passes() {
    let outcome = certify_theorem_b_full(Branch::Decreasing, &cfg());
    for s in &outcome.report.steps {
        assert_eq!(
            s.verdict,
            Verdict::Pass,
            "step {} failed: {}",
            s.name,
            s.witness
        );
    }
    assert!(outcome.report.passed());
    // expected artifacts for emission
    for name in ["P2", "P3", "R2", "Delta_u", "K0", "K1", "W"] {
        assert!(
            outcome.polys.iter().any(|(n, _)| n == name),
            "missing artifact {name}"
        );
    }
    // determinism: a second run yields the identical report byte-for-byte
    let again = certify_theorem_b_full(Branch::Decreasing, &cfg());
    assert_eq!(
        outcome.report.to_json_string(),
        again.report.to_json_string()
    );
}

#[test]
fn increasing_branch_certificate_passes() {
    let outcome = certify_theorem_b_full(Branch::Increasing, &cfg());
    for s in &outcome.report.steps {
        assert_eq!(
            s.verdict,
            Verdict::Pass,
            "step {} failed: {}",
            s.name,
            s.witness
        );
    }
    assert!(outcome.report.passed());
}

#[test]
fn elimination_is_symmetric_between_branches() {
    // P2 and P3 are (u,w)-symmetric, so eliminating u and mirroring must
    // reproduce the w-elimination exactly
    let pp = polys::ProofPolynomials::build().unwrap();
    let (dec, s1) = steps::compute_r2(Branch::Decreasing, &pp);
    let (inc, s2) = steps::compute_r2(Branch::Increasing, &pp);
    assert_eq!(s1.verdict, Verdict::Pass, "{}", s1.witness);
    assert_eq!(s2.verdict, Verdict::Pass, "{}", s2.witness);
    assert_eq!(dec.unwrap().r2, inc.unwrap().r2);
}

#[test]
fn q1_q2_resultant_agrees_with_direct_route() {
    // the replay uses the Sylvester elimination; cross-check through the
    // interpolation route on the same pair
    let q1 = polys::q1_poly();
    let q2 = polys::q2_poly();
    let direct = resultant(&q1, &q2, Var::W).unwrap();
    let interp = exactalg::interpolated_resultant(&q1, &q2, Var::W, Var::U).unwrap();
    assert_eq!(direct, interp);
}

#[test]
fn r2_is_negative_at_random_rational_points() {
    // the certificate concludes R2 < 0 on (0,1)×(-1/2,0); spot-check the
    // sign exactly at rational points
    let pp = polys::ProofPolynomials::build().unwrap();
    let (data, _) = steps::compute_r2(Branch::Decreasing, &pp);
    let r2 = data.unwrap().r2;
    let mut seed = 0x2F6E_u64;
    let mut next = || {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (seed >> 33) as i64
    };
    for _ in 0..10 {
        let u = rat(1 + next().rem_euclid(97), 100);
        let d = rat(-(1 + next().rem_euclid(48)), 100);
        let v = r2.eval(&u, &u, &d);
        assert!(
            v.is_negative(),
            "R2({u}, {d}) = {v} should be negative"
        );
    }
}

#[test]
fn bounding_construction_dominates_pointwise() {
    // U(u) >= R2(u; D) for random rational (u, D) in the certified box
    let pp = polys::ProofPolynomials::build().unwrap();
    let (data, _) = steps::compute_r2(Branch::Decreasing, &pp);
    let r2 = data.unwrap().r2;
    let iv = IntervalQ::new(rat(-16, 125), rat(-267, 2086)).unwrap();
    let (u_poly, step) = steps::bounding_poly_step(
        Branch::Decreasing,
        &r2,
        "D2",
        &MPoly::zero(), // factor unused when the first attempt succeeds
        &iv,
        &cfg(),
    );
    assert_eq!(step.verdict, Verdict::Pass, "{}", step.witness);
    let u_poly = u_poly.unwrap();
    let mut seed = 0xB0B_u64;
    let mut next = || {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (seed >> 33) as i64
    };
    for _ in 0..20 {
        let u = rat(1 + next().rem_euclid(999), 1000);
        // random rational D inside the enclosure
        let t = rat(next().rem_euclid(1000), 1000);
        let d = iv.lo() + (iv.hi() - iv.lo()) * &t;
        let bound = u_poly.eval(&u, &u, &u);
        let value = r2.eval(&u, &u, &d);
        assert!(bound >= value, "u={u} D={d}: bound {bound} < value {value}");
    }
}

#[test]
fn k0_k1_roots_match_their_radical_values() {
    // D0 = -1/2 + 3√11/22 and D1 = -1/2 + √(5-√7)/4
    let window = IntervalQ::new(rat(-1, 2), int(0)).unwrap();
    let tol = rat(1, 10_000_000);
    let k0_iv = exactalg::isolate_roots(&polys::k0_poly(), &window, &tol)
        .unwrap()
        .pop()
        .unwrap();
    let d0 = -0.5 + 3.0 * 11f64.sqrt() / 22.0;
    let (lo, hi) = k0_iv.to_f64_pair();
    assert!(lo <= d0 && d0 <= hi, "D0={d0} not in [{lo},{hi}]");
    assert!((d0 - (-0.047733)).abs() < 1e-6);

    let k1_iv = exactalg::isolate_roots(&polys::k1_poly(), &window, &tol)
        .unwrap()
        .pop()
        .unwrap();
    let d1 = -0.5 + (5.0 - 7f64.sqrt()).sqrt() / 4.0;
    let (lo, hi) = k1_iv.to_f64_pair();
    assert!(lo <= d1 && d1 <= hi, "D1={d1} not in [{lo},{hi}]");
    assert!((d1 - (-0.116410)).abs() < 1e-6);
}

#[test]
fn quartic_count_example_from_delta_w() {
    // 304D⁴+608D³+296D²-8D+27 has no roots on (-1/2, 0)
    let n = sturm_count(
        &polys::delta_w_quartic(),
        &IntervalQ::new(rat(-1, 2), int(0)).unwrap(),
    )
    .unwrap();
    assert_eq!(n, 0);
}
