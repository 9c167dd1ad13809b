//! Command-line driver: one subcommand per experiment, deterministic JSON +
//! CSV reports, optional power-law fits over the swept parameter.

mod report;

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{Map, Value};

use report::{bound_components, num, write_report, Component, Fit, Row};
use sphmult::bounds::{
    bessel_weighted_sum, cos_bound, dim4_bound, fit_exponent, omega_l2, parseval_residual,
    ParsevalVariant,
};
use sphmult::fkernel::{fk_eval, fk_l1, u_evendim, FkRepresentation};
use sphmult::gammaconst::{gamma_asymptotic_ratio, gamma_const, gamma_ratio_limit, GammaKey};
use sphmult::spherequad::QuadratureRule;
use sphmult::symbols::{make_symbol, SymbolKind};
use sphmult::testfn::{lowercomp_norms, TestFnParams};

#[derive(Parser)]
#[command(
    name = "sphmult",
    version,
    about = "Lower-bound functionals and scaling laws for homogeneous unimodular multiplier symbols"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// γ constants: values, symmetry products, asymptotic ratios.
    Gamma(GammaArgs),
    /// F_k kernel: L¹ identity, core mass, uniform bound, representation gap.
    Fk(FkArgs),
    /// Near-extremizer norms and error terms over the ε grid.
    Testfn(TestfnArgs),
    /// The cos-symbol lower bound over a λ sweep.
    CosBound(CosBoundArgs),
    /// The 4D tensor-power lower bound over a k sweep.
    Dim4Bound(Dim4Args),
    /// Kernel-profile L² norm of the cos symbol over a λ sweep.
    OmegaNorm(OmegaArgs),
    /// Even-order Bessel sums and expansion-identity residuals.
    BesselSums(BesselArgs),
    /// Sweep one pipeline and fit the scaling exponent.
    Sweep(SweepArgs),
}

/// `key=value` file merged beneath the flags: a flag that was given wins.
fn read_config_file(path: &Path) -> Result<HashMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config file {}", path.display()))?;
    let mut map = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("config line {} is not key=value: {line}", i + 1))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn file_list_f64(map: &HashMap<String, String>, key: &str) -> Result<Option<Vec<f64>>> {
    match map.get(key) {
        None => Ok(None),
        Some(s) => s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| anyhow!("invalid parameter {key} = {t} in config file"))
            })
            .collect::<Result<Vec<f64>>>()
            .map(Some),
    }
}

fn file_scalar<T: std::str::FromStr>(
    map: &HashMap<String, String>,
    key: &str,
) -> Result<Option<T>> {
    match map.get(key) {
        None => Ok(None),
        Some(s) => s
            .parse::<T>()
            .map(Some)
            .map_err(|_| anyhow!("invalid parameter {key} = {s} in config file")),
    }
}

fn check_p_list(ps: &[f64]) -> Result<()> {
    for &p in ps {
        if !(p > 1.0 && p <= 2.0) {
            bail!("invalid parameter p = {p}: must lie in (1, 2]");
        }
    }
    Ok(())
}

fn check_lambda_list(ls: &[f64]) -> Result<()> {
    for &l in ls {
        if !(l >= 1.0) || !l.is_finite() {
            bail!("invalid parameter lambda = {l}: must be >= 1");
        }
    }
    Ok(())
}

fn config_value(pairs: &[(&str, Value)]) -> Value {
    let mut map = Map::new();
    for (k, v) in pairs {
        map.insert((*k).to_string(), v.clone());
    }
    Value::Object(map)
}

fn list_value(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

// ---------------------------------------------------------------------------

#[derive(Args)]
struct GammaArgs {
    /// Dimensions, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,6")]
    n: Vec<u32>,
    /// Harmonic degrees, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "0,1,2,4,8,16,32,64,128")]
    j: Vec<u32>,
    /// α values, comma-separated; defaults to {n/4, n/2, 3n/4} per n.
    #[arg(long, value_delimiter = ',')]
    alpha: Vec<f64>,
    #[arg(short, long)]
    out: PathBuf,
    #[arg(long)]
    config: Option<PathBuf>,
}

fn run_gamma(mut a: GammaArgs) -> Result<bool> {
    if let Some(path) = &a.config {
        let map = read_config_file(path)?;
        if a.alpha.is_empty() {
            if let Some(v) = file_list_f64(&map, "alpha")? {
                a.alpha = v;
            }
        }
    }
    let mut rows = Vec::new();
    for &n in &a.n {
        let nf = n as f64;
        let alphas: Vec<f64> = if a.alpha.is_empty() {
            vec![nf / 4.0, nf / 2.0, 3.0 * nf / 4.0]
        } else {
            a.alpha.clone()
        };
        for &j in &a.j {
            for &alpha in &alphas {
                if !(0.0..=nf).contains(&alpha) {
                    bail!("invalid parameter alpha = {alpha}: must lie in [0, n] (n = {n})");
                }
                if j == 0 && (alpha == 0.0 || alpha == nf) {
                    bail!("invalid parameter (j, alpha) = (0, {alpha}): pole of the gamma ratio");
                }
                let key = GammaKey::new(n, j, alpha).map_err(|e| anyhow!("{e}"))?;
                let g = gamma_const(&key)?;
                let g_mirror = gamma_const(&GammaKey::new(n, j, nf - alpha)?)?;
                let sym = g * g_mirror;
                let mut components = vec![
                    Component { name: "n", value: nf, op: "gammaconst.gamma_const", tol: 0.0 },
                    Component { name: "alpha", value: alpha, op: "gammaconst.gamma_const", tol: 0.0 },
                    Component { name: "gamma", value: g, op: "gammaconst.gamma_const", tol: 1e-11 },
                    Component { name: "symmetryProduct", value: sym, op: "gammaconst.gamma_const", tol: 1e-10 },
                ];
                if j >= 1 {
                    components.push(Component {
                        name: "asymptoticRatio",
                        value: gamma_asymptotic_ratio(&key)?,
                        op: "gammaconst.gamma_asymptotic_ratio",
                        tol: 1e-11,
                    });
                    components.push(Component {
                        name: "ratioLimit",
                        value: gamma_ratio_limit(n, alpha),
                        op: "gammaconst.gamma_ratio_limit",
                        tol: 0.0,
                    });
                }
                rows.push(Row {
                    param: j as f64,
                    value: g,
                    components,
                    tolerances_met: (sym - 1.0).abs() <= 1e-10,
                });
            }
        }
    }
    let config = config_value(&[
        ("subcommand", Value::String("gamma".into())),
        ("n", Value::Array(a.n.iter().map(|&v| Value::from(v)).collect())),
        ("j", Value::Array(a.j.iter().map(|&v| Value::from(v)).collect())),
        ("alpha", list_value(&a.alpha)),
        ("out", Value::String(a.out.display().to_string())),
    ]);
    write_report(&a.out, config, rows, None)
}

// ---------------------------------------------------------------------------

#[derive(Args)]
struct FkArgs {
    /// Kernel orders, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,5,10,20")]
    k: Vec<u32>,
    #[arg(short, long)]
    out: PathBuf,
    /// Tolerance on the L¹ identity.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long)]
    config: Option<PathBuf>,
}

fn run_fk(a: FkArgs) -> Result<bool> {
    const HALF_SQRT_PI_OVER_2: f64 = 0.626_657_068_657_750_1;
    let mut rows = Vec::new();
    for &k in &a.k {
        if k == 0 {
            bail!("invalid parameter k = 0: must be >= 1");
        }
        let l1 = fk_l1(k)?;
        let l1_err = (l1.total - HALF_SQRT_PI_OVER_2).abs();
        // uniform bound max over the s grid (asserted for k >= 3 only)
        let mut bound_max = 0.0f64;
        for i in 1..=100 {
            let s = i as f64 / 10.0;
            let v = fk_eval(k, s, FkRepresentation::ClosedForm)?;
            bound_max = bound_max.max(v / (400.0 * s * s).min(1.0 / (4.0 * s * s)));
        }
        // representation spot checks
        let mut repr_gap = 0.0f64;
        for &s in &[0.5, 2.0, 5.0] {
            repr_gap = repr_gap.max(
                (fk_eval(k, s, FkRepresentation::Integral)?
                    - fk_eval(k, s, FkRepresentation::ClosedForm)?)
                .abs(),
            );
        }
        let met =
            l1_err <= a.tol && repr_gap <= 1e-8 && (k < 3 || bound_max <= 1.0 + 1e-9);
        rows.push(Row {
            param: k as f64,
            value: l1.total,
            components: vec![
                Component { name: "l1Total", value: l1.total, op: "fkernel.fk_l1", tol: a.tol },
                Component { name: "l1Error", value: l1_err, op: "fkernel.fk_l1", tol: a.tol },
                Component { name: "coreMass", value: l1.core_mass, op: "fkernel.fk_l1", tol: 1e-8 },
                Component { name: "coreR", value: l1.core_r, op: "fkernel.fk_l1", tol: 0.0 },
                Component { name: "uniformBoundMax", value: bound_max, op: "fkernel.fk_eval", tol: 1e-9 },
                Component { name: "representationGap", value: repr_gap, op: "fkernel.fk_eval", tol: 1e-8 },
            ],
            tolerances_met: met,
        });
    }
    let config = config_value(&[
        ("subcommand", Value::String("fk".into())),
        ("k", Value::Array(a.k.iter().map(|&v| Value::from(v)).collect())),
        ("tol", num(a.tol)),
        ("out", Value::String(a.out.display().to_string())),
    ]);
    write_report(&a.out, config, rows, None)
}

// ---------------------------------------------------------------------------

#[derive(Args)]
struct TestfnArgs {
    /// Even ambient dimension.
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Lebesgue exponent in (1, 2].
    #[arg(long, default_value_t = 4.0 / 3.0)]
    p: f64,
    /// Harmonic degree of the angular factor.
    #[arg(long, default_value_t = 2)]
    j: u32,
    /// ε values, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "1e-1,1e-2,1e-3,1e-4")]
    epsilon: Vec<f64>,
    #[arg(short, long)]
    out: PathBuf,
    /// Tolerance on the accumulated quadrature residual.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long)]
    config: Option<PathBuf>,
}

fn run_testfn(a: TestfnArgs) -> Result<bool> {
    check_p_list(&[a.p])?;
    let mut rows = Vec::new();
    for &eps in &a.epsilon {
        if !(eps > 0.0 && eps <= 0.5) {
            bail!("invalid parameter epsilon = {eps}: must lie in (0, 1/2]");
        }
        let params = TestFnParams::new(a.n, a.p, eps, a.j).map_err(|e| anyhow!("{e}"))?;
        let norms = lowercomp_norms(&params)?;
        let op = "testfn.lowercomp_norms";
        let mut components = vec![
            Component { name: "errP", value: norms.err_p, op, tol: a.tol },
            Component { name: "errQ", value: norms.err_q, op, tol: a.tol },
            Component { name: "normP", value: norms.norm_p, op, tol: a.tol },
            Component { name: "normQ", value: norms.norm_q, op, tol: a.tol },
            Component { name: "quadResidual", value: norms.quad_residual, op, tol: a.tol },
        ];
        let names_p: [&'static str; 4] = ["regimeP1", "regimeP2", "regimeP3", "regimeP4"];
        let names_q: [&'static str; 4] = ["regimeQ1", "regimeQ2", "regimeQ3", "regimeQ4"];
        for (i, v) in norms.regime_p.iter().enumerate() {
            components.push(Component { name: names_p[i], value: *v, op, tol: a.tol });
        }
        for (i, v) in norms.regime_q.iter().enumerate() {
            components.push(Component { name: names_q[i], value: *v, op, tol: a.tol });
        }
        rows.push(Row {
            param: eps,
            value: norms.norm_p,
            components,
            tolerances_met: norms.quad_residual <= a.tol,
        });
    }
    let config = config_value(&[
        ("subcommand", Value::String("testfn".into())),
        ("n", Value::from(a.n)),
        ("p", num(a.p)),
        ("j", Value::from(a.j)),
        ("epsilon", list_value(&a.epsilon)),
        ("tol", num(a.tol)),
        ("out", Value::String(a.out.display().to_string())),
    ]);
    write_report(&a.out, config, rows, None)
}

// ---------------------------------------------------------------------------

#[derive(Args)]
struct CosBoundArgs {
    /// λ values, comma-separated.
    #[arg(short = 'l', long, value_delimiter = ',')]
    lambda: Vec<f64>,
    /// Exponents p in (1, 2], comma-separated.
    #[arg(long, value_delimiter = ',')]
    p: Vec<f64>,
    /// Truncation degree J (per-λ default: 2λ + 40).
    #[arg(short = 'J', long)]
    trunc: Option<u32>,
    #[arg(short, long)]
    out: PathBuf,
    /// Tail-coefficient tolerance certifying the truncation.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long)]
    config: Option<PathBuf>,
}

fn run_cos_bound(mut a: CosBoundArgs) -> Result<bool> {
    if let Some(path) = &a.config {
        let map = read_config_file(path)?;
        if a.lambda.is_empty() {
            if let Some(v) = file_list_f64(&map, "lambda")? {
                a.lambda = v;
            }
        }
        if a.p.is_empty() {
            if let Some(v) = file_list_f64(&map, "p")? {
                a.p = v;
            }
        }
        if a.trunc.is_none() {
            a.trunc = file_scalar(&map, "trunc")?;
        }
    }
    if a.lambda.is_empty() {
        bail!("invalid parameter lambda: at least one value required");
    }
    if a.p.is_empty() {
        bail!("invalid parameter p: at least one value required");
    }
    check_lambda_list(&a.lambda)?;
    check_p_list(&a.p)?;

    let mut rows = Vec::new();
    let mut samples = Vec::new();
    for &lambda in &a.lambda {
        let j_min = (2.0 * lambda).ceil() as u32 + 40;
        let j_max = match a.trunc {
            None => j_min,
            Some(j) if j >= j_min => j,
            Some(j) => {
                bail!("invalid parameter trunc = {j}: needs >= 2*lambda+40 = {j_min} at lambda = {lambda}")
            }
        };
        for &p in &a.p {
            let rep = cos_bound(lambda, p, j_max)?;
            // truncation certificate: the last retained coefficient is tiny
            let tail = sphmult::specfun::bessel_j(2 * (j_max / 2), lambda)?.powi(2);
            let mut components = bound_components(&rep, "bounds.cos_bound");
            components.push(Component {
                name: "tailCoefficientSq",
                value: tail,
                op: "specfun.bessel_j",
                tol: a.tol,
            });
            rows.push(Row {
                param: lambda,
                value: rep.strong_bound,
                components,
                tolerances_met: tail <= a.tol,
            });
            if a.p.len() == 1 {
                samples.push((lambda, rep.strong_bound));
            }
        }
    }
    let fit = if samples.len() >= 3 {
        let f = fit_exponent(&samples)?;
        Some(Fit { slope: f.slope, intercept: f.intercept, max_residual: f.max_residual })
    } else {
        None
    };
    let config = config_value(&[
        ("subcommand", Value::String("cos-bound".into())),
        ("lambda", list_value(&a.lambda)),
        ("p", list_value(&a.p)),
        ("trunc", a.trunc.map(Value::from).unwrap_or(Value::Null)),
        ("tol", num(a.tol)),
        ("out", Value::String(a.out.display().to_string())),
    ]);
    write_report(&a.out, config, rows, fit)
}

// ---------------------------------------------------------------------------

#[derive(Args)]
struct Dim4Args {
    /// Even exponents k, comma-separated.
    #[arg(long, value_delimiter = ',')]
    k: Vec<u32>,
    /// Exponents p in (1, 2], comma-separated.
    #[arg(long, value_delimiter = ',')]
    p: Vec<f64>,
    /// Truncation degree J (per-k default: 2k + 32; must be >= 2k + 16).
    #[arg(short = 'J', long)]
    trunc: Option<u32>,
    /// Rule resolution on S³.
    #[arg(long, default_value_t = 120)]
    resolution: usize,
    /// Transition width for the smoothed-symbol comparison (omitted: skip).
    #[arg(long)]
    delta: Option<f64>,
    #[arg(short, long)]
    out: PathBuf,
    /// Allowed relative gap between the series and kernel norms.
    #[arg(long, default_value_t = 0.05)]
    tol: f64,
    #[arg(long)]
    config: Option<PathBuf>,
}

fn run_dim4(mut a: Dim4Args) -> Result<bool> {
    if let Some(path) = &a.config {
        let map = read_config_file(path)?;
        if a.k.is_empty() {
            if let Some(v) = file_list_f64(&map, "k")? {
                a.k = v.iter().map(|&x| x as u32).collect();
            }
        }
        if a.p.is_empty() {
            if let Some(v) = file_list_f64(&map, "p")? {
                a.p = v;
            }
        }
    }
    if a.k.is_empty() {
        bail!("invalid parameter k: at least one value required");
    }
    if a.p.is_empty() {
        bail!("invalid parameter p: at least one value required");
    }
    check_p_list(&a.p)?;
    for &k in &a.k {
        if k == 0 || k % 2 != 0 {
            bail!("invalid parameter k = {k}: must be a positive even integer");
        }
    }
    let rule = QuadratureRule::make_rule(4, a.resolution).map_err(|e| anyhow!("{e}"))?;
    let mut rows = Vec::new();
    let mut samples = Vec::new();
    for &k in &a.k {
        let j_min = 2 * k + 16;
        let j_max = match a.trunc {
            None => 2 * k + 32,
            Some(j) if j >= j_min => j,
            Some(j) => bail!("invalid parameter trunc = {j}: needs >= 2k+16 = {j_min} at k = {k}"),
        };
        for &p in &a.p {
            let rep = dim4_bound(k, p, j_max, &rule, a.delta)?;
            let kernel_gap = rep
                .u_norm_q_kernel
                .map(|v| (v - rep.u_norm_q).abs() / v)
                .unwrap_or(0.0);
            let mut components = bound_components(&rep, "bounds.dim4_bound");
            components.push(Component {
                name: "kernelNormRelGap",
                value: kernel_gap,
                op: "fkernel.u_evendim",
                tol: a.tol,
            });
            rows.push(Row {
                param: k as f64,
                value: rep.strong_bound,
                components,
                tolerances_met: kernel_gap <= a.tol,
            });
            if a.p.len() == 1 {
                samples.push((k as f64, rep.strong_bound));
            }
        }
    }
    let fit = if samples.len() >= 3 {
        let f = fit_exponent(&samples)?;
        Some(Fit { slope: f.slope, intercept: f.intercept, max_residual: f.max_residual })
    } else {
        None
    };
    let config = config_value(&[
        ("subcommand", Value::String("dim4-bound".into())),
        ("k", Value::Array(a.k.iter().map(|&v| Value::from(v)).collect())),
        ("p", list_value(&a.p)),
        ("trunc", a.trunc.map(Value::from).unwrap_or(Value::Null)),
        ("resolution", Value::from(a.resolution as u64)),
        ("delta", a.delta.map(num).unwrap_or(Value::Null)),
        ("tol", num(a.tol)),
        ("out", Value::String(a.out.display().to_string())),
    ]);
    write_report(&a.out, config, rows, fit)
}

// ---------------------------------------------------------------------------

#[derive(Args)]
struct OmegaArgs {
    /// λ values, comma-separated.
    #[arg(short = 'l', long, value_delimiter = ',')]
    lambda: Vec<f64>,
    /// Truncation degree J (per-λ default: 2λ + 40).
    #[arg(short = 'J', long)]
    trunc: Option<u32>,
    #[arg(short, long)]
    out: PathBuf,
    /// Tail-term tolerance certifying the truncation.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long)]
    config: Option<PathBuf>,
}

fn run_omega(a: OmegaArgs) -> Result<bool> {
    if a.lambda.is_empty() {
        bail!("invalid parameter lambda: at least one value required");
    }
    check_lambda_list(&a.lambda)?;
    let mut rows = Vec::new();
    let mut samples = Vec::new();
    for &lambda in &a.lambda {
        let j_min = (2.0 * lambda).ceil() as u32 + 40;
        let j_max = match a.trunc {
            None => j_min,
            Some(j) if j >= j_min => j,
            Some(j) => {
                bail!("invalid parameter trunc = {j}: needs >= 2*lambda+40 = {j_min} at lambda = {lambda}")
            }
        };
        let spec = make_symbol(SymbolKind::CosPhase, 2, lambda, None)?;
        let v = omega_l2(&spec, lambda, j_max)?;
        let g = gamma_const(&GammaKey::new(2, j_max, 2.0)?)?;
        let tail = 4.0 * std::f64::consts::PI
            * (g * sphmult::specfun::bessel_j(j_max, lambda)?).powi(2);
        rows.push(Row {
            param: lambda,
            value: v,
            components: vec![
                Component { name: "omegaL2", value: v, op: "bounds.omega_l2", tol: 1e-9 },
                Component { name: "truncationDegree", value: j_max as f64, op: "bounds.omega_l2", tol: 0.0 },
                Component { name: "tailTerm", value: tail, op: "specfun.bessel_j", tol: a.tol },
            ],
            tolerances_met: tail <= a.tol,
        });
        samples.push((lambda, v));
    }
    let fit = if samples.len() >= 3 {
        let f = fit_exponent(&samples)?;
        Some(Fit { slope: f.slope, intercept: f.intercept, max_residual: f.max_residual })
    } else {
        None
    };
    let config = config_value(&[
        ("subcommand", Value::String("omega-norm".into())),
        ("lambda", list_value(&a.lambda)),
        ("trunc", a.trunc.map(Value::from).unwrap_or(Value::Null)),
        ("tol", num(a.tol)),
        ("out", Value::String(a.out.display().to_string())),
    ]);
    write_report(&a.out, config, rows, fit)
}

// ---------------------------------------------------------------------------

#[derive(Args)]
struct BesselArgs {
    /// λ values, comma-separated.
    #[arg(short = 'l', long, value_delimiter = ',')]
    lambda: Vec<f64>,
    /// Weight exponents a of Σ l^a J_{2l}(λ)².
    #[arg(long, value_delimiter = ',', default_value = "1,2,4")]
    a: Vec<f64>,
    /// Truncation degree J (per-λ default: 2λ + 40).
    #[arg(short = 'J', long)]
    trunc: Option<u32>,
    #[arg(short, long)]
    out: PathBuf,
    /// Tolerance on the expansion-identity residuals.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long)]
    config: Option<PathBuf>,
}

fn run_bessel_sums(args: BesselArgs) -> Result<bool> {
    if args.lambda.is_empty() {
        bail!("invalid parameter lambda: at least one value required");
    }
    check_lambda_list(&args.lambda)?;
    let mut rows = Vec::new();
    for &lambda in &args.lambda {
        let j_min = (2.0 * lambda).ceil() as u32 + 40;
        let j_max = match args.trunc {
            None => j_min,
            Some(j) if j >= j_min => j,
            Some(j) => {
                bail!("invalid parameter trunc = {j}: needs >= 2*lambda+40 = {j_min} at lambda = {lambda}")
            }
        };
        let mut components = Vec::new();
        let mut first_sum = f64::NAN;
        for &a in &args.a {
            let s = bessel_weighted_sum(a, lambda, j_max)?;
            if first_sum.is_nan() {
                first_sum = s;
            }
            let name: &'static str = match a {
                x if x == 1.0 => "sumA1",
                x if x == 2.0 => "sumA2",
                x if x == 4.0 => "sumA4",
                _ => "sumAOther",
            };
            components.push(Component {
                name,
                value: s,
                op: "bounds.bessel_weighted_sum",
                tol: 1e-10,
            });
            let ratio_name: &'static str = match a {
                x if x == 1.0 => "ratioA1",
                x if x == 2.0 => "ratioA2",
                x if x == 4.0 => "ratioA4",
                _ => "ratioAOther",
            };
            components.push(Component {
                name: ratio_name,
                value: s / lambda.powf(a),
                op: "bounds.bessel_weighted_sum",
                tol: 1e-10,
            });
        }
        let mut worst_resid = 0.0f64;
        for (variant, name) in [
            (ParsevalVariant::Base, "residualBase"),
            (ParsevalVariant::Real, "residualReal"),
            (ParsevalVariant::ImagShift, "residualImagShift"),
            (ParsevalVariant::Deriv1, "residualDeriv1"),
            (ParsevalVariant::Deriv2, "residualDeriv2"),
        ] {
            let r = parseval_residual(lambda, variant, j_max)?;
            worst_resid = worst_resid.max(r);
            components.push(Component {
                name,
                value: r,
                op: "bounds.parseval_residual",
                tol: args.tol,
            });
        }
        rows.push(Row {
            param: lambda,
            value: first_sum,
            components,
            tolerances_met: worst_resid <= args.tol,
        });
    }
    let config = config_value(&[
        ("subcommand", Value::String("bessel-sums".into())),
        ("lambda", list_value(&args.lambda)),
        ("a", list_value(&args.a)),
        ("trunc", args.trunc.map(Value::from).unwrap_or(Value::Null)),
        ("tol", num(args.tol)),
        ("out", Value::String(args.out.display().to_string())),
    ]);
    write_report(&args.out, config, rows, None)
}

// ---------------------------------------------------------------------------

#[derive(Args)]
struct SweepArgs {
    /// Which quantity to sweep: cos-strong, cos-weak, omega, dim4, u-sup.
    #[arg(long)]
    target: String,
    /// λ values (cos-strong, cos-weak, omega).
    #[arg(short = 'l', long, value_delimiter = ',')]
    lambda: Vec<f64>,
    /// k values (dim4, u-sup).
    #[arg(long, value_delimiter = ',')]
    k: Vec<u32>,
    /// Exponent p (cos-*, dim4).
    #[arg(long, default_value_t = 4.0 / 3.0)]
    p: f64,
    /// Rule resolution on S³ (dim4).
    #[arg(long, default_value_t = 120)]
    resolution: usize,
    /// Expected slope; when given, tolerancesMet reflects the fit.
    #[arg(long)]
    expect_slope: Option<f64>,
    /// Allowed deviation of the fitted slope.
    #[arg(long, default_value_t = 0.15)]
    slope_tol: f64,
    #[arg(short, long)]
    out: PathBuf,
    #[arg(long)]
    config: Option<PathBuf>,
}

fn run_sweep(a: SweepArgs) -> Result<bool> {
    check_p_list(&[a.p])?;
    let op: &'static str;
    let samples: Vec<(f64, f64)> = match a.target.as_str() {
        "cos-strong" | "cos-weak" => {
            if a.lambda.is_empty() {
                bail!("invalid parameter lambda: required for target {}", a.target);
            }
            check_lambda_list(&a.lambda)?;
            op = "bounds.cos_bound";
            a.lambda
                .iter()
                .map(|&l| {
                    let rep = cos_bound(l, a.p, (2.0 * l).ceil() as u32 + 40)?;
                    Ok((
                        l,
                        if a.target == "cos-strong" {
                            rep.strong_bound
                        } else {
                            rep.weak_proxy
                        },
                    ))
                })
                .collect::<Result<_>>()?
        }
        "omega" => {
            if a.lambda.is_empty() {
                bail!("invalid parameter lambda: required for target omega");
            }
            check_lambda_list(&a.lambda)?;
            op = "bounds.omega_l2";
            a.lambda
                .iter()
                .map(|&l| {
                    let spec = make_symbol(SymbolKind::CosPhase, 2, l, None)?;
                    Ok((l, omega_l2(&spec, l, (2.0 * l).ceil() as u32 + 40)?))
                })
                .collect::<Result<_>>()?
        }
        "dim4" => {
            if a.k.is_empty() {
                bail!("invalid parameter k: required for target dim4");
            }
            op = "bounds.dim4_bound";
            let rule = QuadratureRule::make_rule(4, a.resolution)?;
            a.k.iter()
                .map(|&k| {
                    if k == 0 || k % 2 != 0 {
                        bail!("invalid parameter k = {k}: must be a positive even integer");
                    }
                    let rep = dim4_bound(k, a.p, 2 * k + 32, &rule, None)?;
                    Ok((k as f64, rep.strong_bound))
                })
                .collect::<Result<_>>()?
        }
        "u-sup" => {
            if a.k.is_empty() {
                bail!("invalid parameter k: required for target u-sup");
            }
            op = "fkernel.u_evendim";
            a.k.iter()
                .map(|&k| {
                    let mut best = 0.0f64;
                    for i in 1..32 {
                        let th = std::f64::consts::FRAC_PI_2 * i as f64 / 32.0;
                        best = best.max(u_evendim(2, k, &[th.cos(), th.sin()])?);
                    }
                    Ok((k as f64, best))
                })
                .collect::<Result<_>>()?
        }
        other => bail!(
            "invalid parameter target = {other}: one of cos-strong, cos-weak, omega, dim4, u-sup"
        ),
    };
    let fit = fit_exponent(&samples)?;
    let slope_ok = match a.expect_slope {
        None => true,
        Some(e) => (fit.slope - e).abs() <= a.slope_tol,
    };
    let rows: Vec<Row> = samples
        .iter()
        .map(|&(x, y)| Row {
            param: x,
            value: y,
            components: vec![Component {
                name: "sample",
                value: y,
                op,
                tol: f64::INFINITY,
            }],
            tolerances_met: slope_ok,
        })
        .collect();
    let config = config_value(&[
        ("subcommand", Value::String("sweep".into())),
        ("target", Value::String(a.target.clone())),
        ("lambda", list_value(&a.lambda)),
        ("k", Value::Array(a.k.iter().map(|&v| Value::from(v)).collect())),
        ("p", num(a.p)),
        ("resolution", Value::from(a.resolution as u64)),
        ("expectSlope", a.expect_slope.map(num).unwrap_or(Value::Null)),
        ("slopeTol", num(a.slope_tol)),
        ("out", Value::String(a.out.display().to_string())),
    ]);
    write_report(
        &a.out,
        config,
        rows,
        Some(Fit {
            slope: fit.slope,
            intercept: fit.intercept,
            max_residual: fit.max_residual,
        }),
    )
}

// ---------------------------------------------------------------------------

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Gamma(a) => run_gamma(a),
        Cmd::Fk(a) => run_fk(a),
        Cmd::Testfn(a) => run_testfn(a),
        Cmd::CosBound(a) => run_cos_bound(a),
        Cmd::Dim4Bound(a) => run_dim4(a),
        Cmd::OmegaNorm(a) => run_omega(a),
        Cmd::BesselSums(a) => run_bessel_sums(a),
        Cmd::Sweep(a) => run_sweep(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("one or more results missed their declared tolerances");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
