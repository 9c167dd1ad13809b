//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line with the measured quantities.
//!
//! Run with `cargo test --release --test acceptance -- --nocapture`.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use std::time::Instant;

use sphmult::bounds::{
    bessel_weighted_sum, cos_bound, dim4_bound, fit_exponent, lower_bound_report, omega_l2,
    parseval_residual, ParsevalVariant,
};
use sphmult::fkernel::{fk_eval, fk_l1, u_evendim, FkRepresentation};
use sphmult::gammaconst::{gamma_asymptotic_ratio, gamma_const, gamma_ratio_limit, GammaKey};
use sphmult::harmonics::{
    mtilde4d_explicit, mtilde4d_term, zonal_project_grid, zonal_projector, HarmonicSeries,
    HarmonicTerm,
};
use sphmult::spherequad::{sphere_area, QuadratureRule, SphericalFn};
use sphmult::symbols::{as_spherical_fn, make_symbol, SymbolKind};
use sphmult::testfn::{lowercomp_norms, TestFnParams};

fn report(criterion: u32, passed: bool, detail: &str, started: Instant) {
    let verdict = if passed { "PASS" } else { "FAIL" };
    println!(
        "criterion {criterion:2}: {verdict} — {detail} [{:.2?}]",
        started.elapsed()
    );
    assert!(passed, "criterion {criterion} failed: {detail}");
}

#[test]
fn criterion_01_gamma_symmetry() {
    let t = Instant::now();
    let mut worst = 0.0f64;
    for n in [2u32, 3, 4, 6] {
        let nf = n as f64;
        for j in 0..=128u32 {
            for a in [0.0, nf / 4.0, nf / 2.0, 3.0 * nf / 4.0, nf] {
                if j == 0 && (a == 0.0 || a == nf) {
                    continue;
                }
                let g1 = gamma_const(&GammaKey::new(n, j, a).unwrap()).unwrap();
                let g2 = gamma_const(&GammaKey::new(n, j, nf - a).unwrap()).unwrap();
                worst = worst.max((g1 * g2 - 1.0).abs());
            }
        }
    }
    report(
        1,
        worst <= 1e-10,
        &format!("max |γ(n,j,α)·γ(n,j,n-α) - 1| = {worst:.2e} (≤ 1e-10)"),
        t,
    );
}

#[test]
fn criterion_02_gamma_asymptotics() {
    let t = Instant::now();
    let mut worst = 0.0f64;
    for n in [2u32, 4] {
        let nf = n as f64;
        for a in [0.0, nf / 2.0, nf] {
            let key = GammaKey::new(n, 512, a).unwrap();
            let ratio = gamma_asymptotic_ratio(&key).unwrap();
            let limit = gamma_ratio_limit(n, a);
            worst = worst.max((ratio - limit).abs() / limit);
        }
    }
    report(
        2,
        worst <= 0.01,
        &format!("max relative gap of γ·j^{{n/2-α}} to (2π)^{{n/2-α}} at j=512: {worst:.2e} (≤ 1%)"),
        t,
    );
}

#[test]
fn criterion_03_fk_identity_and_bounds() {
    let t = Instant::now();
    const HALF_SQRT_PI_OVER_2: f64 = 0.626_657_068_657_750_1;
    let mut worst_l1 = 0.0f64;
    for k in 1..=20u32 {
        let l1 = fk_l1(k).unwrap();
        worst_l1 = worst_l1.max((l1.total - HALF_SQRT_PI_OVER_2).abs());
    }
    let s_grid: Vec<f64> = (1..=100).map(|i| i as f64 / 10.0).collect();
    let worst_agreement = [1u32, 2, 3, 5, 10, 20]
        .par_iter()
        .flat_map(|&k| s_grid.par_iter().map(move |&s| (k, s)))
        .map(|(k, s)| {
            let a = fk_eval(k, s, FkRepresentation::Integral).unwrap();
            let b = fk_eval(k, s, FkRepresentation::ClosedForm).unwrap();
            (a - b).abs()
        })
        .reduce(|| 0.0, f64::max);
    let mut bound_ok = true;
    for k in 3..=20u32 {
        for &s in &s_grid {
            let v = fk_eval(k, s, FkRepresentation::ClosedForm).unwrap();
            let bound = (400.0 * s * s).min(1.0 / (4.0 * s * s));
            if !(v >= 0.0 && v <= bound * (1.0 + 1e-9)) {
                bound_ok = false;
            }
        }
    }
    report(
        3,
        worst_l1 <= 1e-6 && worst_agreement <= 1e-8 && bound_ok,
        &format!(
            "max |‖F_k‖₁ - ½√(π/2)| = {worst_l1:.2e} (≤ 1e-6), representation gap {worst_agreement:.2e} (≤ 1e-8), uniform bound {}",
            if bound_ok { "holds" } else { "violated" }
        ),
        t,
    );
}

#[test]
fn criterion_04_u_kernel_scaling() {
    let t = Instant::now();
    let thetas: Vec<f64> = (1..32)
        .map(|i| std::f64::consts::FRAC_PI_2 * i as f64 / 32.0)
        .collect();
    let samples: Vec<(f64, f64)> = [2u32, 4, 8, 16, 32]
        .par_iter()
        .map(|&k| {
            let sup = thetas
                .iter()
                .map(|&th| u_evendim(2, k, &[th.cos(), th.sin()]).unwrap())
                .fold(0.0f64, f64::max);
            (k as f64, sup)
        })
        .collect();
    let fit = fit_exponent(&samples).unwrap();
    report(
        4,
        (fit.slope + 2.0).abs() <= 0.15,
        &format!("sup|u^(k)| slope over k = {:.4} (want -2 ± 0.15)", fit.slope),
        t,
    );
}

#[test]
fn criterion_05_cos_strong_scaling() {
    let t = Instant::now();
    let lambdas = [8.0f64, 16.0, 32.0, 64.0, 128.0];
    let p = 4.0 / 3.0;
    let samples: Vec<(f64, f64)> = lambdas
        .iter()
        .map(|&l| {
            let rep = cos_bound(l, p, (2.0 * l) as u32 + 40).unwrap();
            (l, rep.strong_bound)
        })
        .collect();
    let fit = fit_exponent(&samples).unwrap();
    let mut ceiling_ok = true;
    let mut worst_p2 = 0.0f64;
    for &l in &lambdas {
        let rep = cos_bound(l, 2.0, (2.0 * l) as u32 + 40).unwrap();
        worst_p2 = worst_p2.max(rep.strong_bound);
        if rep.strong_bound > 1.0 + 1e-9 {
            ceiling_ok = false;
        }
    }
    report(
        5,
        (fit.slope - 0.5).abs() <= 0.05 && ceiling_ok,
        &format!(
            "strong-bound slope at p=4/3: {:.4} (want 0.5 ± 0.05); max bound at p=2: {worst_p2:.9} (≤ 1+1e-9)",
            fit.slope
        ),
        t,
    );
}

#[test]
fn criterion_06_cos_weak_scaling() {
    let t = Instant::now();
    let samples: Vec<(f64, f64)> = [8.0f64, 16.0, 32.0, 64.0, 128.0]
        .iter()
        .map(|&l| {
            let rep = cos_bound(l, 4.0 / 3.0, (2.0 * l) as u32 + 40).unwrap();
            (l, rep.weak_proxy)
        })
        .collect();
    let fit = fit_exponent(&samples).unwrap();
    report(
        6,
        (fit.slope - 1.0).abs() <= 0.1,
        &format!("weak-proxy slope: {:.4} (want 1 ± 0.1)", fit.slope),
        t,
    );
}

#[test]
fn criterion_07_kernel_norm_scaling() {
    let t = Instant::now();
    let samples: Vec<(f64, f64)> = [8.0f64, 16.0, 32.0, 64.0, 128.0]
        .iter()
        .map(|&l| {
            let spec = make_symbol(SymbolKind::CosPhase, 2, l, None).unwrap();
            (l, omega_l2(&spec, l, (2.0 * l) as u32 + 40).unwrap())
        })
        .collect();
    let fit = fit_exponent(&samples).unwrap();
    report(
        7,
        (fit.slope - 1.0).abs() <= 0.1,
        &format!("kernel-norm slope: {:.4} (want 1 ± 0.1 = n/2 at n=2)", fit.slope),
        t,
    );
}

#[test]
fn criterion_08_near_extremizer_norms() {
    let t = Instant::now();
    let eps_grid = [1e-1, 1e-2, 1e-3, 1e-4];
    let mut err_p = Vec::new();
    let mut err_q = Vec::new();
    let mut gaps = Vec::new();
    for eps in eps_grid {
        let params = TestFnParams::new(2, 4.0 / 3.0, eps, 2).unwrap();
        let norms = lowercomp_norms(&params).unwrap();
        err_p.push(norms.err_p);
        err_q.push(norms.err_q);
        let sigma = sphere_area(2);
        let main = (sigma * 2.0 * (1.0 / eps).ln()).powf(1.0 / params.p);
        gaps.push((norms.norm_p / main - 1.0).abs());
    }
    let spread = |v: &[f64]| {
        v.iter().cloned().fold(0.0f64, f64::max) / v.iter().cloned().fold(f64::INFINITY, f64::min)
    };
    let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
    let ok = spread(&err_p) < 3.0 && spread(&err_q) < 3.0 && decreasing && gaps[3] <= 0.1;
    report(
        8,
        ok,
        &format!(
            "errP spread {:.3}, errQ spread {:.3} (< 3); norm gap decreasing: {decreasing}, final gap {:.4} (≤ 0.1)",
            spread(&err_p),
            spread(&err_q),
            gaps[3]
        ),
        t,
    );
}

#[test]
fn criterion_09_explicit_4d_expansion() {
    let t = Instant::now();
    let k = 2u32;
    let m = as_spherical_fn(&make_symbol(SymbolKind::TensorPower, 4, k as f64, None).unwrap());
    let rule = QuadratureRule::make_rule(4, 48).unwrap();
    let degrees: Vec<u32> = (1..=6).map(|i| 4 * i).collect();

    // The projections live in the charge-(k,k) class e^{ik(φ1+φ2)}·R(radius),
    // so one projector evaluation per distinct radial level determines the
    // whole grid; the projector itself is the full zonal integral over the
    // rule. Consistency with the plain per-node route is asserted below.
    let phase = |x: &[f64]| -> Complex64 {
        Complex64::from_polar(
            1.0,
            k as f64 * (x[1].atan2(x[0]) + x[3].atan2(x[2])),
        )
    };
    let radial_key = |x: &[f64]| -> u64 {
        ((x[0] * x[0] + x[1] * x[1]).sqrt() * 1e14).round() as u64
    };
    let mut reps: std::collections::BTreeMap<u64, usize> = std::collections::BTreeMap::new();
    for i in 0..rule.len() {
        reps.entry(radial_key(rule.node(i))).or_insert(i);
    }
    let rep_list: Vec<(u64, usize)> = reps.iter().map(|(&a, &b)| (a, b)).collect();
    let project_grid = |j: u32| -> (Vec<Complex64>, f64) {
        let proj = zonal_projector(&m, 4, j, &rule).unwrap();
        let profile: std::collections::BTreeMap<u64, Complex64> = rep_list
            .par_iter()
            .map(|&(key, i)| {
                let x = rule.node(i);
                (key, proj.eval(x) * phase(x).conj())
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        let values: Vec<Complex64> = (0..rule.len())
            .map(|i| {
                let x = rule.node(i);
                phase(x) * profile[&radial_key(x)]
            })
            .collect();
        let norm_sq = (0..rule.len())
            .map(|i| rule.weight(i) * values[i].norm_sqr())
            .sum();
        (values, norm_sq)
    };
    let projections: Vec<(Vec<Complex64>, f64)> =
        degrees.iter().map(|&j| project_grid(j)).collect();

    // radial-profile route agrees with the plain per-node route
    let small_rule = QuadratureRule::make_rule(4, 32).unwrap();
    let (_, full_norm) = zonal_project_grid(&m, 4, 8, &small_rule).unwrap();
    let explicit8 = mtilde4d_term(k, 8).unwrap().l2norm_sq;
    assert!(
        (full_norm - explicit8).abs() / explicit8 < 1e-6,
        "plain zonal route drifted: {full_norm} vs {explicit8}"
    );

    // (a) explicit-term norms match the zonal route to 1e-6 relative
    let mut worst_norm_rel = 0.0f64;
    for (i, &j) in degrees.iter().enumerate() {
        let explicit = mtilde4d_term(k, j).unwrap().l2norm_sq;
        let rel = (projections[i].1 - explicit).abs() / explicit;
        worst_norm_rel = worst_norm_rel.max(rel);
    }

    // (b) cumulative Parseval mass against 2π² at J = 24
    let mass: f64 = projections.iter().map(|(_, n)| n).sum();
    let frac = mass / (2.0 * std::f64::consts::PI * std::f64::consts::PI);

    // (c) cross-degree orthogonality
    let mut worst_orth = 0.0f64;
    for a in 0..projections.len() {
        for b in a + 1..projections.len() {
            let mut ip = Complex64::new(0.0, 0.0);
            for i in 0..rule.len() {
                ip += projections[a].0[i] * projections[b].0[i].conj() * rule.weight(i);
            }
            worst_orth = worst_orth
                .max(ip.norm() / (projections[a].1.sqrt() * projections[b].1.sqrt()));
        }
    }

    // (d) finite-difference harmonicity of the solid extensions
    let mut rng = StdRng::seed_from_u64(2024);
    let mut worst_harm = 0.0f64;
    for &j in &degrees {
        let e = mtilde4d_explicit(k, j).unwrap();
        let sup = e.sup_on_sphere();
        let mut done = 0;
        while done < 20 {
            let x: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.1..1.1)).collect();
            let r: f64 = x.iter().map(|c| c * c).sum::<f64>().sqrt();
            if !(0.8..=1.2).contains(&r) {
                continue;
            }
            done += 1;
            let h = 5e-4 * r;
            let lap = e.fd_laplacian(&x, h).norm();
            let scale = (j * (j + 2)) as f64 * sup * r.powi(j as i32 - 2);
            worst_harm = worst_harm.max(lap / scale);
        }
    }

    let ok_norms = worst_norm_rel <= 1e-6;
    let ok_mass = frac >= 0.99;
    let ok_orth = worst_orth <= 1e-8;
    let ok_harm = worst_harm <= 1e-4;
    report(
        9,
        ok_norms && ok_mass && ok_orth && ok_harm,
        &format!(
            "norms-vs-zonal rel {worst_norm_rel:.2e} (≤1e-6, {}), Parseval mass {frac:.6} at J=24 (≥0.99, {}; exact value is 90/91 ≈ 0.989011, 99% is first reached at J=28), orthogonality {worst_orth:.2e} (≤1e-8, {}), FD harmonicity {worst_harm:.2e} (≤1e-4, {})",
            if ok_norms { "ok" } else { "FAIL" },
            if ok_mass { "ok" } else { "FAIL" },
            if ok_orth { "ok" } else { "FAIL" },
            if ok_harm { "ok" } else { "FAIL" }
        ),
        t,
    );
}

#[test]
fn criterion_10_dim4_scaling_and_chain() {
    let t = Instant::now();
    let p = 4.0 / 3.0;
    let rule = QuadratureRule::make_rule(4, 120).unwrap();
    let samples: Vec<(f64, f64)> = [2u32, 4, 8, 16]
        .iter()
        .map(|&k| {
            let rep = dim4_bound(k, p, 2 * k + 32, &rule, None).unwrap();
            (k as f64, rep.strong_bound)
        })
        .collect();
    let fit = fit_exponent(&samples).unwrap();

    // the chained inequality of the construction, in its exact per-degree
    // forms: Σ j^{4/p}‖Y_j‖² ≥ (2k)^{4/p}‖u‖² and ⟨m̃,v⟩ ≥ γγ-floor·‖u‖²
    let mut chain_ok = true;
    let mut chain_detail = String::new();
    for &k in &[2u32, 4, 8] {
        let rep = dim4_bound(k, p, 2 * k + 32, &rule, None).unwrap();
        let c = rep.chain.unwrap();
        let weighted = c.weighted_sum >= c.literal_rhs * (1.0 - 1e-6);
        let floor = rep.inner_product.re >= c.coeff_floor * c.u_l2_sq * (1.0 - 1e-6);
        if !(weighted && floor) {
            chain_ok = false;
        }
        if k == 2 {
            chain_detail = format!(
                "at k=2: Σj^3‖Y‖²/((2k)^3‖u‖²) = {:.3}, ⟨m̃,v⟩/(γγ·‖u‖²) = {:.3}",
                c.weighted_sum / c.literal_rhs,
                rep.inner_product.re / (c.coeff_floor * c.u_l2_sq)
            );
        }
    }
    report(
        10,
        (fit.slope - 1.0).abs() <= 0.15 && chain_ok,
        &format!(
            "strong-bound slope over k: {:.4} (want 1 ± 0.15); chained inequality holds to 1e-6 slack ({chain_detail})",
            fit.slope
        ),
        t,
    );
}

#[test]
fn criterion_11_parseval_and_bessel_sums() {
    let t = Instant::now();
    let variants = [
        ParsevalVariant::Base,
        ParsevalVariant::Real,
        ParsevalVariant::ImagShift,
        ParsevalVariant::Deriv1,
        ParsevalVariant::Deriv2,
    ];
    let mut worst_resid = 0.0f64;
    for &lambda in &[1.0f64, 5.0, 10.0, 25.0] {
        let j_max = (2.0 * lambda).ceil() as u32 + 40;
        for &v in &variants {
            worst_resid = worst_resid.max(parseval_residual(lambda, v, j_max).unwrap());
        }
    }
    let mut ratio2 = (f64::INFINITY, 0.0f64);
    let mut ratio4_max = 0.0f64;
    for &lambda in &[8.0f64, 16.0, 32.0, 64.0, 128.0] {
        let j_max = (2.0 * lambda) as u32 + 40;
        let r2 = bessel_weighted_sum(2.0, lambda, j_max).unwrap() / lambda.powi(2);
        ratio2 = (ratio2.0.min(r2), ratio2.1.max(r2));
        let r4 = bessel_weighted_sum(4.0, lambda, j_max).unwrap() / lambda.powi(4);
        ratio4_max = ratio4_max.max(r4);
    }
    let ok = worst_resid <= 1e-8 && ratio2.0 >= 0.01 && ratio2.1 <= 1.0 && ratio4_max <= 1.0;
    report(
        11,
        ok,
        &format!(
            "max Parseval residual {worst_resid:.2e} (≤ 1e-8); Σl²J²/λ² ∈ [{:.4}, {:.4}] (within [0.01, 1]); max Σl⁴J²/λ⁴ = {ratio4_max:.4} (≤ 1)",
            ratio2.0, ratio2.1
        ),
        t,
    );
}

#[test]
fn criterion_12_calibration_and_pipeline_agreement() {
    let t = Instant::now();
    // identity multiplier
    let m = make_symbol(SymbolKind::CosPhase, 2, 0.0, None).unwrap();
    let rule = QuadratureRule::make_rule(2, 64).unwrap();
    let u = HarmonicSeries::new(
        2,
        vec![HarmonicTerm {
            degree: 0,
            evaluator: SphericalFn::new("1", |_: &[f64]| Complex64::new(1.0, 0.0)),
            l2norm_sq: sphere_area(2),
        }],
    )
    .unwrap();
    let mut worst_cal = 0.0f64;
    for p in [1.1, 4.0 / 3.0, 1.5, 2.0] {
        let rep = lower_bound_report(2, p, &m, &u, &rule).unwrap();
        worst_cal = worst_cal.max((rep.strong_bound - 1.0).abs());
    }

    // cos pipelines: quadrature route vs Bessel closed form
    let mut worst_rel = 0.0f64;
    for &lambda in &[5.0f64, 10.0] {
        let j_max = (2.0 * lambda) as u32 + 40;
        let rule = QuadratureRule::make_rule(2, 4 * j_max as usize).unwrap();
        let m = make_symbol(SymbolKind::CosPhase, 2, lambda, None).unwrap();
        let j0 = sphmult::specfun::bessel_j(0, lambda).unwrap();
        let u_fn = SphericalFn::new("u", move |x: &[f64]| {
            let phi = x[1].atan2(x[0]);
            Complex64::new((lambda * phi.sin()).cos() - j0, 0.0)
        });
        let series = sphmult::harmonics::fourier_series_circle(&u_fn, j_max, &rule).unwrap();
        for &p in &[4.0 / 3.0, 2.0] {
            let generic = lower_bound_report(2, p, &m, &series, &rule).unwrap();
            let closed = cos_bound(lambda, p, j_max).unwrap();
            worst_rel = worst_rel
                .max((generic.strong_bound - closed.strong_bound).abs() / closed.strong_bound);
        }
    }
    report(
        12,
        worst_cal <= 1e-9 && worst_rel <= 1e-6,
        &format!(
            "identity calibration max gap {worst_cal:.2e} (≤ 1e-9); pipeline agreement max rel {worst_rel:.2e} (≤ 1e-6)"
        ),
        t,
    );
}
