//! The radial kernel F_k(s) = ∫_0^∞ J_k(2√k ρ s) e^{-ρ²/2k} ρ dρ in two
//! independent representations, its L¹ identity ‖F_k‖_{L¹} = ½√(π/2), the
//! uniform bound min{400 s², 1/(4 s²)}, and the function u^{(k)} on
//! S^{2r-1} assembled from products of F_k.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quad::{adaptive, gauss_legendre};
use crate::specfun::{bessel_j, log_gamma};

/// Evaluation parameters for the kernel layer.
#[derive(Debug, Clone, Copy)]
pub struct FkParams {
    pub k: u32,
    /// Quadrature tolerance for the t-integral of u^{(k)}.
    pub quad_tol: f64,
    /// Multiplier on the analytic t-range cutoffs.
    pub t_cutoff_factor: f64,
}

impl FkParams {
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("k must be >= 1".to_string()));
        }
        Ok(FkParams {
            k,
            quad_tol: 1e-10,
            t_cutoff_factor: 1.0,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::domain("k must be >= 1".to_string()));
        }
        if !(self.quad_tol > 0.0 && self.quad_tol <= 1e-8) {
            return Err(Error::domain(format!(
                "quad_tol = {:e} outside (0, 1e-8]",
                self.quad_tol
            )));
        }
        if !(self.t_cutoff_factor > 0.0) {
            return Err(Error::domain("t_cutoff_factor must be positive".to_string()));
        }
        Ok(())
    }
}

/// Which defining formula to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FkRepresentation {
    /// The oscillatory Bessel integral; kept for cross-validation.
    Integral,
    /// The Beta-weighted exponential integral; smooth, the default path.
    ClosedForm,
}

/// F_k at the closed form: (2^{k/2} k^{k+1} s^k / Γ(k/2)) ∫_0^1 e^{-2k²s²τ}
/// τ^{k/2} (1-τ)^{k/2-1} dτ, with τ = sin²ψ regularizing both endpoints for
/// every k ≥ 1 (for k = 1 this is the w² endpoint substitution composed at
/// both ends). Evaluated in log space: the prefactor alone overflows.
fn fk_closed_form(k: u32, s: f64) -> f64 {
    if s == 0.0 {
        return 0.0;
    }
    let kf = k as f64;
    let ln_pref = 0.5 * kf * std::f64::consts::LN_2 + (kf + 1.0) * kf.ln() + kf * s.ln()
        - log_gamma(kf / 2.0).unwrap();
    let c = 2.0 * kf * kf * s * s;
    // log of the ψ-integrand (including the Jacobian factor 2 sinψ cosψ)
    let ln_f = |psi: f64| -> f64 {
        let (sn, cs) = psi.sin_cos();
        if sn <= 0.0 || cs <= 0.0 {
            return f64::NEG_INFINITY;
        }
        std::f64::consts::LN_2 - c * sn * sn + (kf + 1.0) * sn.ln() + (kf - 1.0) * cs.ln()
    };
    // peak of ln_f: the log-derivative vanishes where 2c v² - 2(c+k)v + (k+1) = 0,
    // v = sin²ψ (take the root in (0,1); for small c it sits at the π/2 edge)
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut peak = f64::NEG_INFINITY;
    let mut psi_star = half_pi * 0.5;
    let disc = (c + kf) * (c + kf) - 2.0 * c * (kf + 1.0);
    if disc >= 0.0 && c > 0.0 {
        let v = ((c + kf - disc.sqrt()) / (2.0 * c)).clamp(1e-12, 1.0 - 1e-12);
        psi_star = v.sqrt().asin();
        peak = ln_f(psi_star);
    }
    const SCAN: usize = 64;
    for i in 1..SCAN {
        let psi = half_pi * i as f64 / SCAN as f64;
        let v = ln_f(psi);
        if v > peak {
            peak = v;
            psi_star = psi;
        }
    }
    if peak == f64::NEG_INFINITY {
        return 0.0;
    }
    let shifted = |psi: f64| {
        let v = ln_f(psi);
        if v - peak < -745.0 {
            0.0
        } else {
            (v - peak).exp()
        }
    };
    // segment around the peak: a spike narrower than the top-level GL node
    // spacing would otherwise be invisible to the acceptance test
    let width = (2.0 / c).sqrt().min(half_pi);
    let a1 = (psi_star - 25.0 * width).max(0.0);
    let a2 = (psi_star + 25.0 * width).min(half_pi);
    let mut integral = adaptive(&shifted, a1, a2, 1e-12).0;
    if a1 > 0.0 {
        integral += adaptive(&shifted, 0.0, a1, 1e-12).0;
    }
    if a2 < half_pi {
        integral += adaptive(&shifted, a2, half_pi, 1e-12).0;
    }
    (ln_pref + peak).exp() * integral
}

/// F_k by quadrature of the oscillatory integral: Gauss–Legendre panels of
/// two Bessel periods each (GL-16 is far below 1e-12 at that width), out to
/// where the Gaussian factor falls under e^{-25}.
fn fk_integral(k: u32, s: f64) -> f64 {
    if s == 0.0 {
        return 0.0;
    }
    let kf = k as f64;
    let c = 2.0 * kf.sqrt() * s;
    let rho_max = (2.0 * kf * 25.0).sqrt();
    let n_panels =
        ((c * rho_max / (4.0 * std::f64::consts::PI)).ceil() as usize).clamp(8, 200_000);
    let width = rho_max / n_panels as f64;
    let (gx, gw) = gauss_legendre(16);
    let panel = |p: usize| -> f64 {
        let a = width * p as f64;
        let mid = a + 0.5 * width;
        let half = 0.5 * width;
        let mut acc = 0.0;
        for i in 0..gx.len() {
            let rho = mid + half * gx[i];
            let v = bessel_j(k, c * rho).unwrap() * (-rho * rho / (2.0 * kf)).exp() * rho;
            acc += gw[i] * v;
        }
        acc * half
    };
    // ordered panel sums: the total must not depend on thread scheduling
    let v = if n_panels >= 64 {
        (0..n_panels)
            .into_par_iter()
            .map(panel)
            .collect::<Vec<f64>>()
            .into_iter()
            .sum::<f64>()
    } else {
        (0..n_panels).map(panel).sum::<f64>()
    };
    // the kernel is nonnegative; clip quadrature noise around zero
    if v < 0.0 && v > -1e-10 {
        0.0
    } else {
        v
    }
}

/// Evaluate F_k(s) in the chosen representation.
pub fn fk_eval(k: u32, s: f64, representation: FkRepresentation) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("k must be >= 1".to_string()));
    }
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::domain(format!("s = {s} must be finite and >= 0")));
    }
    Ok(match representation {
        FkRepresentation::ClosedForm => fk_closed_form(k, s),
        FkRepresentation::Integral => fk_integral(k, s),
    })
}

/// ‖F_k‖_{L¹(0,∞)} plus the core mass over [1/R, R] at the smallest grid R
/// whose tails stay below 1/10.
#[derive(Debug, Clone, Copy)]
pub struct FkL1 {
    /// ∫_0^∞ F_k; equals ½√(π/2) for every k ≥ 1.
    pub total: f64,
    /// ∫_{1/R}^{R} F_k at `core_r`.
    pub core_mass: f64,
    /// Smallest R from a fixed grid with total - core < 0.1.
    pub core_r: f64,
}

const L1_UPPER: f64 = 500.0;

fn fk_mass(k: u32, a: f64, b: f64) -> f64 {
    let f = |s: f64| fk_closed_form(k, s);
    let (lo, _) = adaptive(&f, a, b.min(2.0), 1e-10);
    let hi = if b > 2.0 {
        crate::quad::adaptive_log(&f, 2.0, b, 1e-10).0
    } else {
        0.0
    };
    lo + hi
}

/// The L¹ identity data for F_k. The t-tail above the integration cutoff is
/// added analytically from F_k(s) → 1/(4s²).
pub fn fk_l1(k: u32) -> Result<FkL1> {
    if k == 0 {
        return Err(Error::domain("k must be >= 1".to_string()));
    }
    let total = fk_mass(k, 0.0, L1_UPPER) + 1.0 / (4.0 * L1_UPPER);
    const R_GRID: [f64; 14] = [
        1.25, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0, 12.0, 16.0, 20.0, 25.0,
    ];
    let mut core_mass = 0.0;
    let mut core_r = f64::NAN;
    for r in R_GRID {
        let core = fk_mass(k, 1.0 / r, r);
        if total - core < 0.1 {
            core_mass = core;
            core_r = r;
            break;
        }
    }
    Ok(FkL1 {
        total,
        core_mass,
        core_r,
    })
}

/// |u^{(k)}| at a point of S^{2r-1} with the given coordinate radii:
/// (2π^r/(r-1)!) k^{-r} ∫_0^∞ Π_i F_k(t·radii_i) dt/t. The unimodular phase
/// factor is omitted.
pub fn u_evendim(r: u32, k: u32, radii: &[f64]) -> Result<f64> {
    u_evendim_with(&FkParams::new(k)?, r, radii)
}

pub fn u_evendim_with(params: &FkParams, r: u32, radii: &[f64]) -> Result<f64> {
    params.validate()?;
    let k = params.k;
    if !(1..=3).contains(&r) {
        return Err(Error::domain(format!("r = {r} outside {{1, 2, 3}}")));
    }
    if radii.len() != r as usize {
        return Err(Error::domain(format!(
            "expected {r} radii, got {}",
            radii.len()
        )));
    }
    let sum_sq: f64 = radii.iter().map(|w| w * w).sum();
    if radii.iter().any(|w| !(*w >= 0.0)) || (sum_sq - 1.0).abs() > 1e-9 {
        return Err(Error::domain(format!(
            "radii must be nonnegative with squares summing to 1, got {radii:?}"
        )));
    }
    // a zero radius kills the product: F_k(0) = 0
    if radii.iter().any(|w| *w == 0.0) {
        return Ok(0.0);
    }
    // sorted copy: the integrand is symmetric and sorting makes permuted
    // inputs produce identical floating-point results
    let mut omega = radii.to_vec();
    omega.sort_by(|a, b| b.partial_cmp(a).unwrap());

    let rf = r as f64;
    let tol = params.quad_tol;
    let sum_ln: f64 = omega.iter().map(|w| w.ln()).sum();
    // range from the uniform bound: Π 400 (tω)² and Π 1/(4 (tω)²)
    let y_lo = ((tol * 1e-2).ln() - rf * 400f64.ln() - 2.0 * sum_ln) / (2.0 * rf)
        - params.t_cutoff_factor.ln();
    let y_hi = (-(tol * 1e-2).ln() - rf * 4f64.ln() - 2.0 * sum_ln) / (2.0 * rf)
        + params.t_cutoff_factor.ln();
    let integrand = |y: f64| -> f64 {
        let t = y.exp();
        omega.iter().map(|w| fk_closed_form(k, t * w)).product()
    };
    let (integral, _) = adaptive(&integrand, y_lo, y_hi, tol);
    let kf = k as f64;
    let factorial: f64 = (1..r).map(|i| i as f64).product::<f64>().max(1.0);
    let constant = 2.0 * std::f64::consts::PI.powi(r as i32) / factorial;
    Ok(constant * kf.powi(-(r as i32)) * integral)
}
