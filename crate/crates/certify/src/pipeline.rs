//! The full certificate pipeline for one monotonicity branch.

use exactalg::MPoly;

use crate::report::{Branch, CertificateReport, StepReport, Verdict};
use crate::steps::{
    analyze_discriminant, bounding_poly_step, build_proof_polys, check_p_negative,
    check_p_negative_increasing, check_subintervals, compute_r2, preferred_w_enclosure,
    CertifyConfig,
};
use serde_json::json;

fn blocked(name: &str, missing: &str) -> StepReport {
    StepReport {
        name: name.to_string(),
        claim: "not evaluated".to_string(),
        verdict: Verdict::Fail,
        witness: json!({ "blocked_on": missing }),
    }
}

/// A branch certificate together with every named polynomial it built,
/// for `--emit-polys` and re-verification.
pub struct CertifyOutcome {
    pub report: CertificateReport,
    pub polys: Vec<(String, MPoly)>,
}

pub fn certify_theorem_b(branch: Branch, cfg: &CertifyConfig) -> CertificateReport {
    certify_theorem_b_full(branch, cfg).report
}

/// Runs every step of the branch certificate and aggregates the verdict.
/// No step is ever skipped: when a prerequisite failed, dependent steps
/// report a blocked failure.
pub fn certify_theorem_b_full(branch: Branch, cfg: &CertifyConfig) -> CertifyOutcome {
    let mut steps = Vec::new();
    let mut polys_out: Vec<(String, MPoly)> = Vec::new();

    let (pp, step) = build_proof_polys();
    steps.push(step);
    if let Some(pp) = &pp {
        polys_out.push(("P".into(), pp.p_quartic.clone()));
        polys_out.push(("P2".into(), pp.p2.clone()));
        polys_out.push(("P3".into(), pp.p3.clone()));
        polys_out.push(("S".into(), pp.s.clone()));
        polys_out.push(("Delta_w".into(), pp.delta_w.clone()));
    }

    match branch {
        Branch::Decreasing => {
            steps.push(check_p_negative());
            steps.push(crate::steps::replay_d13());
            polys_out.push(("Q1".into(), crate::polys::q1_poly()));
            polys_out.push(("Q2".into(), crate::polys::q2_poly()));
            polys_out.push(("R".into(), crate::polys::r_poly()));
        }
        Branch::Increasing => {
            steps.push(check_p_negative_increasing());
        }
    }

    let r2_data = match &pp {
        None => {
            steps.push(blocked("compute_R2", "build_proof_polys"));
            None
        }
        Some(pp) => {
            let (r2, step) = compute_r2(branch, pp);
            steps.push(step);
            r2
        }
    };
    if let Some(data) = &r2_data {
        polys_out.push(("R2".into(), data.r2.clone()));
    }

    let analysis = match &r2_data {
        None => {
            steps.push(blocked("analyze_discriminant", "compute_R2"));
            None
        }
        Some(data) => {
            let (a, step) = analyze_discriminant(branch, &data.r2, cfg);
            steps.push(step);
            a
        }
    };
    if let Some(a) = &analysis {
        polys_out.push(("Delta_u".into(), a.delta.clone()));
        polys_out.push(("K0".into(), crate::polys::k0_poly()));
        polys_out.push(("K1".into(), crate::polys::k1_poly()));
        if let Some(w) = &a.w_block {
            polys_out.push(("W".into(), w.clone()));
        }
    }

    match (&r2_data, &analysis) {
        (Some(data), Some(a)) => {
            steps.push(check_subintervals(branch, &data.r2, a));
            for (label, factor, iv) in &a.roots {
                let display = display_label(branch, label);
                let enclosure = if branch == Branch::Decreasing && label == "W" {
                    preferred_w_enclosure(a).unwrap_or_else(|| iv.clone())
                } else {
                    iv.clone()
                };
                let (u_poly, step) = bounding_poly_step(
                    branch, &data.r2, &display, factor, &enclosure, cfg,
                );
                if let Some(u_poly) = u_poly {
                    polys_out.push((format!("U_{display}"), u_poly));
                }
                steps.push(step);
            }
        }
        _ => {
            steps.push(blocked("check_subintervals", "analyze_discriminant"));
            steps.push(blocked("bounding_poly", "analyze_discriminant"));
        }
    }

    CertifyOutcome {
        report: CertificateReport::assemble(branch, steps),
        polys: polys_out,
    }
}

/// The decreasing-branch roots carry their conventional names.
fn display_label(branch: Branch, label: &str) -> String {
    if branch == Branch::Decreasing {
        match label {
            "K0" => return "D0".to_string(),
            "K1" => return "D1".to_string(),
            "W" => return "D2".to_string(),
            _ => {}
        }
    }
    label.to_string()
}

/// Writes every named certificate polynomial to `dir` in the text format.
pub fn emit_polys(
    branch: Branch,
    report_polys: &[(String, MPoly)],
    dir: &std::path::Path,
) -> std::io::Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, poly) in report_polys {
        let path = dir.join(format!("{}_{}.poly", branch.name(), name));
        std::fs::write(&path, exactalg::textfmt::to_text(poly))?;
        written.push(path);
    }
    Ok(written)
}
