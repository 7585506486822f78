//! The five subcommands. Computational failures exit 2, certificate
//! failures exit 1, usage problems exit 64.

use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, ValueEnum};
use num_complex::Complex64;

use certify::{certify_theorem_b_full, Branch, CertifyConfig};
use dynsys::{
    asymptotic_period_loud, asymptotic_period_zk, closed_form_period, normalize_zk,
    period_quadrature_tol, period_returnmap, pi_sigma, ClosedFormCase, EnergyLevel, LoudParams,
    Method, OdeOptions, PeriodCurve, PeriodPoint, PlanarState, SystemSpec, ZkParams,
};

use crate::grid::Grid;
use crate::runio::{emit, parallel_map, thread_cap};

pub enum CmdError {
    Usage(String),
    Compute(String),
}

impl CmdError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CmdError::Usage(_) => 64,
            CmdError::Compute(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CmdError::Usage(m) | CmdError::Compute(m) => m,
        }
    }
}

fn usage(msg: impl Into<String>) -> CmdError {
    CmdError::Usage(msg.into())
}

fn compute(msg: impl std::fmt::Display) -> CmdError {
    CmdError::Compute(msg.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SystemKind {
    Loud,
    Zk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct PeriodArgs {
    /// Which family to sweep
    #[arg(long, value_enum)]
    pub system: SystemKind,
    /// Loud parameter D
    #[arg(long = "D", allow_negative_numbers = true)]
    pub d: Option<f64>,
    /// Loud parameter F (defaults to D + 1)
    #[arg(long = "F", allow_negative_numbers = true)]
    pub f: Option<f64>,
    /// Equivariant exponent n
    #[arg(long)]
    pub n: Option<u32>,
    /// Equivariant symmetry order k
    #[arg(long)]
    pub k: Option<u32>,
    /// Real part of the nonlinearity coefficient a
    #[arg(long = "a-re", default_value_t = 1.0, allow_negative_numbers = true)]
    pub a_re: f64,
    /// Imaginary part of the nonlinearity coefficient a
    #[arg(long = "a-im", default_value_t = 0.0, allow_negative_numbers = true)]
    pub a_im: f64,
    /// Energy grid start:stop:lin|log:count (Loud)
    #[arg(long)]
    pub h: Option<Grid>,
    /// Radius grid start:stop:lin|log:count (orbit start)
    #[arg(long)]
    pub rho: Option<Grid>,
    /// Output path (stdout when omitted); written atomically
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    pub format: OutFormat,
}

pub fn cmd_period(args: &PeriodArgs) -> Result<i32, CmdError> {
    match args.system {
        SystemKind::Loud => {
            let d = args.d.ok_or_else(|| usage("--system loud requires --D"))?;
            let f = args.f.unwrap_or(d + 1.0);
            let params = LoudParams::new(d, f).map_err(compute)?;
            let on_line = params.is_on_line();
            let limit = if on_line {
                Some(asymptotic_period_loud(d)).filter(|l| l.is_finite())
            } else {
                None
            };
            if let Some(h_grid) = &args.h {
                if !on_line {
                    return Err(usage(
                        "energy sweeps require the sub-family F = D + 1; use --rho for general (D, F)",
                    ));
                }
                let eval: Box<dyn Fn(f64) -> Result<PeriodPoint, String> + Sync> =
                    if d == -1.0 {
                        Box::new(move |h: f64| {
                            let r = h.sqrt();
                            let t = closed_form_period(ClosedFormCase::DMinusOne { r })
                                .map_err(|e| e.to_string())?;
                            Ok(PeriodPoint {
                                param: h,
                                period: t,
                                method: Method::ClosedForm,
                                err_estimate: 4.0 * f64::EPSILON * t,
                            })
                        })
                    } else {
                        Box::new(move |h: f64| {
                            let level = EnergyLevel::new(h).map_err(|e| e.to_string())?;
                            let (t, err) =
                                period_quadrature_tol(level, d, 1e-11).map_err(|e| e.to_string())?;
                            Ok(PeriodPoint {
                                param: h,
                                period: t,
                                method: Method::Quadrature,
                                err_estimate: err,
                            })
                        })
                    };
                return run_sweep(args, &h_grid.values, eval, limit);
            }
            if let Some(rho_grid) = &args.rho {
                let eval: Box<dyn Fn(f64) -> Result<PeriodPoint, String> + Sync> =
                    Box::new(move |rho: f64| {
                        let t = period_returnmap(
                            &SystemSpec::Loud(params),
                            &PlanarState::loud(rho, 0.0),
                            &OdeOptions::default(),
                        )
                        .map_err(|e| e.to_string())?;
                        Ok(PeriodPoint {
                            param: rho,
                            period: t,
                            method: Method::ReturnMap,
                            err_estimate: 1e-11 * t,
                        })
                    });
                return run_sweep(args, &rho_grid.values, eval, limit);
            }
            Err(usage("loud sweeps need --h or --rho"))
        }
        SystemKind::Zk => {
            let n = args.n.ok_or_else(|| usage("--system zk requires --n"))?;
            let k = args.k.ok_or_else(|| usage("--system zk requires --k"))?;
            let a = Complex64::new(args.a_re, args.a_im);
            let rho_grid = args
                .rho
                .as_ref()
                .ok_or_else(|| usage("zk sweeps need --rho"))?;
            if k == 0 {
                // closed-form family: a = αi is required for a center
                if args.a_re != 0.0 {
                    return Err(usage("k = 0 has a center only for purely imaginary a"));
                }
                if n == 0 {
                    return Err(usage("n + k must be at least 1"));
                }
                let alpha = args.a_im;
                let eval: Box<dyn Fn(f64) -> Result<PeriodPoint, String> + Sync> =
                    Box::new(move |rho: f64| {
                        let u = rho * rho;
                        let t = closed_form_period(ClosedFormCase::KZero { alpha, n, u })
                            .map_err(|e| e.to_string())?;
                        Ok(PeriodPoint {
                            param: rho,
                            period: t,
                            method: Method::ClosedForm,
                            err_estimate: 4.0 * f64::EPSILON * t,
                        })
                    });
                return run_sweep(args, &rho_grid.values, eval, None);
            }
            let params = ZkParams::new(n, k, a).map_err(compute)?;
            let (lambda, mu, normalized) = normalize_zk(&params).map_err(compute)?;
            if lambda != 1.0 || mu != 0.0 {
                eprintln!(
                    "note: coefficient normalized via z = {lambda:.17e} exp({mu:.17e} i) w; \
                     the radius grid refers to the normalized equation"
                );
            }
            let limit = if n >= 1 {
                Some(asymptotic_period_zk(n, k))
            } else {
                None // isochronous
            };
            let eval: Box<dyn Fn(f64) -> Result<PeriodPoint, String> + Sync> =
                Box::new(move |rho: f64| {
                    let start = PlanarState::polar(rho, 0.0).map_err(|e| e.to_string())?;
                    let t = period_returnmap(
                        &SystemSpec::Zk(normalized),
                        &start,
                        &OdeOptions::default(),
                    )
                    .map_err(|e| e.to_string())?;
                    Ok(PeriodPoint {
                        param: rho,
                        period: t,
                        method: Method::ReturnMap,
                        err_estimate: 1e-11 * t,
                    })
                });
            run_sweep(args, &rho_grid.values, eval, limit)
        }
    }
}

fn run_sweep(
    args: &PeriodArgs,
    grid: &[f64],
    eval: Box<dyn Fn(f64) -> Result<PeriodPoint, String> + Sync>,
    limit: Option<f64>,
) -> Result<i32, CmdError> {
    let results = parallel_map(grid, thread_cap(), |&p| eval(p));
    let mut curve = PeriodCurve::new();
    let mut failure: Option<(f64, String)> = None;
    for (p, row) in grid.iter().zip(results) {
        match row {
            Ok(point) => {
                if failure.is_none() {
                    curve.push(point).map_err(compute)?;
                }
            }
            Err(msg) => {
                failure = Some((*p, msg));
                break;
            }
        }
    }

    // monotonicity verdict on the sampled grid
    let verdict = monotonicity_verdict(&curve);
    let footer_limit = limit
        .map(|l| format!("{l:.16e}"))
        .unwrap_or_else(|| "none".into());

    let body = match args.format {
        OutFormat::Csv => {
            let mut s = curve.to_csv();
            if let Some((p, msg)) = &failure {
                s.push_str(&format!("# status: error at param={p:.16e}: {msg}\n"));
            } else {
                s.push_str("# status: ok\n");
            }
            s.push_str(&format!("# asymptotic_limit: {footer_limit}\n"));
            s.push_str(&format!("# monotonicity: {verdict}\n"));
            s
        }
        OutFormat::Json => {
            let points: Vec<serde_json::Value> = curve
                .points()
                .iter()
                .map(|p| {
                    serde_json::json!({
                        "param": p.param,
                        "period": p.period,
                        "method": p.method.to_string(),
                        "err_estimate": p.err_estimate,
                    })
                })
                .collect();
            let status = match &failure {
                None => serde_json::json!("ok"),
                Some((p, msg)) => serde_json::json!({ "error": msg, "param": p }),
            };
            let v = serde_json::json!({
                "points": points,
                "asymptotic_limit": limit,
                "monotonicity": verdict,
                "status": status,
            });
            let mut s = serde_json::to_string_pretty(&v).expect("json");
            s.push('\n');
            s
        }
    };
    emit(args.out.as_deref(), &body).map_err(compute)?;
    eprintln!("asymptotic limit: {footer_limit}");
    eprintln!("monotonicity: {verdict}");
    if let Some((p, msg)) = failure {
        eprintln!("error at param={p}: {msg}");
        return Ok(2);
    }
    Ok(0)
}

fn monotonicity_verdict(curve: &PeriodCurve) -> String {
    let pts = curve.points();
    if pts.len() < 2 {
        return "insufficient".into();
    }
    let constant = pts
        .windows(2)
        .all(|w| (w[1].period - w[0].period).abs() <= 1e-9 * w[0].period.abs().max(1.0));
    if constant {
        return "constant".into();
    }
    match (curve.first_increase(), curve.first_decrease()) {
        (None, _) => "strictly decreasing".into(),
        (_, None) => "strictly increasing".into(),
        (Some(i), Some(j)) => format!(
            "not monotone (first violation at index {})",
            i.min(j) + 1
        ),
    }
}

#[derive(Args, Debug)]
pub struct CriterionArgs {
    /// Loud parameter D on the line F = D + 1, inside (-1, 0) \ {-1/2}
    #[arg(long = "D", allow_negative_numbers = true)]
    pub d: f64,
    /// Sample grid in u, strictly inside (0, 1)
    #[arg(long, default_value = "0.001:0.999:lin:512")]
    pub u: Grid,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn cmd_criterion(args: &CriterionArgs) -> Result<i32, CmdError> {
    let d = args.d;
    if !(d > -1.0 && d < 0.0) || d == -0.5 {
        return Err(usage("criterion scans need D in (-1, 0) away from -1/2"));
    }
    if args.u.values.iter().any(|&u| u <= 0.0 || u >= 1.0) {
        return Err(usage("the u-grid must lie strictly inside (0, 1)"));
    }
    // the f-denominator vanishes at u = -1/D; keep a guard band around it
    let pole = -1.0 / d;
    let us: Vec<f64> = args
        .u
        .values
        .iter()
        .copied()
        .filter(|u| (u - pole).abs() > 1e-3)
        .collect();
    let results = parallel_map(&us, thread_cap(), |&u| pi_sigma(u, d));
    let mut body = String::from("u,pi_sigma\n");
    let mut sign = 0.0_f64;
    let mut single = true;
    for (u, r) in us.iter().zip(&results) {
        match r {
            Ok(v) => {
                if sign == 0.0 {
                    sign = v.signum();
                } else if v.signum() != sign {
                    single = false;
                }
                body.push_str(&format!("{u:.16e},{v:.16e}\n"));
            }
            Err(e) => return Err(compute(format!("criterion failed at u={u}: {e}"))),
        }
    }
    let summary = if single { "yes" } else { "no" };
    body.push_str(&format!("# single_signed: {summary}\n"));
    emit(args.out.as_deref(), &body).map_err(compute)?;
    eprintln!("single-signed: {summary}");
    Ok(0)
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    /// Monotonicity branch: decreasing (D in (-1/2,0)) or increasing
    /// (D in (-1,-1/2))
    #[arg(long, value_parser = parse_branch)]
    pub branch: Branch,
    /// Report path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory for the named certificate polynomials (text format)
    #[arg(long = "emit-polys")]
    pub emit_polys: Option<PathBuf>,
    /// Wall-clock budget in seconds for the direct elimination before the
    /// interpolation route takes over
    #[arg(long = "direct-budget-secs", default_value_t = 10)]
    pub direct_budget_secs: u64,
}

fn parse_branch(s: &str) -> Result<Branch, String> {
    s.parse::<Branch>()
}

pub fn cmd_certify(args: &CertifyArgs) -> Result<i32, CmdError> {
    let cfg = CertifyConfig {
        direct_budget: match args.direct_budget_secs {
            0 => None,
            s => Some(Duration::from_secs(s)),
        },
        ..CertifyConfig::default()
    };
    let outcome = certify_theorem_b_full(args.branch, &cfg);
    let mut body = outcome.report.to_json_string();
    body.push('\n');
    emit(args.out.as_deref(), &body).map_err(compute)?;
    if let Some(dir) = &args.emit_polys {
        certify::emit_polys(args.branch, &outcome.polys, dir).map_err(compute)?;
    }
    for step in &outcome.report.steps {
        eprintln!(
            "{}: {}",
            step.name,
            if step.passed() { "pass" } else { "FAIL" }
        );
    }
    Ok(if outcome.report.passed() { 0 } else { 1 })
}

#[derive(Args, Debug)]
pub struct MapArgs {
    /// Equivariant exponent n
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// Equivariant symmetry order k
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Orbit label (radius on the section)
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    /// Imaginary coefficient for the k = 0 family (a = αi)
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Evaluation grid for the k = 0 closed form, in u = z z̄
    #[arg(long, default_value = "0.1:2.0:lin:20")]
    pub u: Grid,
}

pub fn cmd_map(args: &MapArgs) -> Result<i32, CmdError> {
    let mut out = String::new();
    if args.k == 0 {
        let alpha = args
            .alpha
            .ok_or_else(|| usage("k = 0 needs --alpha (the coefficient a = alpha*i)"))?;
        if args.n == 0 {
            return Err(usage("n + k must be at least 1"));
        }
        out.push_str("k = 0: the origin is a center iff Re(a) = 0 (taken as a = alpha*i)\n");
        out.push_str(&format!(
            "period closed form: T(u) = 2*pi / (1 + ({alpha})*u^{})\n",
            args.n
        ));
        if alpha < 0.0 {
            let bound = (-1.0 / alpha).powf(1.0 / args.n as f64);
            out.push_str(&format!(
                "period annulus: u <= {bound:.16e}; its boundary consists of equilibria and \
                 the period tends to infinity there\n"
            ));
        } else {
            out.push_str("period annulus: global; the period decreases to zero at infinity\n");
        }
        out.push_str("u,period\n");
        for &u in &args.u.values {
            match closed_form_period(ClosedFormCase::KZero {
                alpha,
                n: args.n,
                u,
            }) {
                Ok(t) => out.push_str(&format!("{u:.16e},{t:.16e}\n")),
                Err(_) => {
                    out.push_str(&format!("{u:.16e},boundary\n"));
                }
            }
        }
        print!("{out}");
        return Ok(0);
    }
    if args.n == 0 {
        out.push_str("n = 0: the equation is holomorphic and the origin is an isochronous \
                      center; every orbit has period 2*pi\n");
        print!("{out}");
        return Ok(0);
    }
    let (loud, b) = dynsys::zk_to_loud(args.n, args.k).map_err(compute)?;
    let zk = ZkParams::normalized(args.n, args.k);
    let (start, factor) = dynsys::map_zk_orbit(&zk, args.rho).map_err(compute)?;
    out.push_str(&format!("b = 1 + 2n/k = {b:.16e}\n"));
    out.push_str(&format!("D = -k/(2(k+n)) = {:.16e} (F = D + 1)\n", loud.d));
    out.push_str(&format!(
        "orbit through rho = {:.16e} maps to the start point ({:.16e}, {:.16e}); \
         the period transfers with factor {factor}\n",
        args.rho, start.c[0], start.c[1]
    ));
    out.push_str(&format!(
        "period at the center: {:.16e} (2*pi)\n",
        std::f64::consts::TAU
    ));
    out.push_str(&format!(
        "boundary limit: {:.16e} (= 2(k+n)*pi/(k+2n) = pi/(D+1))\n",
        asymptotic_period_zk(args.n, args.k)
    ));
    print!("{out}");
    Ok(0)
}

#[derive(Args, Debug)]
pub struct SturmArgs {
    /// Polynomial file (text term-per-line format or the JSON form)
    #[arg(long)]
    pub poly: PathBuf,
    /// Interval endpoints as exact rationals, e.g. -1/2 and 0
    #[arg(long, allow_hyphen_values = true)]
    pub lo: String,
    #[arg(long, allow_hyphen_values = true)]
    pub hi: String,
}

pub fn cmd_sturm(args: &SturmArgs) -> Result<i32, CmdError> {
    let text = std::fs::read_to_string(&args.poly)
        .map_err(|e| compute(format!("cannot read {}: {e}", args.poly.display())))?;
    let poly = exactalg::textfmt::from_str_any(&text).map_err(compute)?;
    let lo = exactalg::parse_rational(&args.lo).map_err(|e| usage(e.to_string()))?;
    let hi = exactalg::parse_rational(&args.hi).map_err(|e| usage(e.to_string()))?;
    let iv = exactalg::IntervalQ::new(lo, hi).map_err(|e| usage(e.to_string()))?;
    let count = exactalg::sturm_count(&poly, &iv).map_err(compute)?;
    println!("{count}");
    Ok(0)
}
