//! Quadrature on S^{n-1} for even n, L^p norms and inner products of
//! spherical functions.
//!
//! The sphere S^{2r-1} is parametrized by r torus angles φ_i ∈ (-π, π) and a
//! positive radius vector ω on the unit simplex sphere S^{r-1}_+; the surface
//! element is dφ_1…dφ_r ω_1…ω_r dσ(ω). Angles get periodic-trapezoid nodes
//! (exact for trigonometric degree < node count); the radial directions get
//! Gauss–Legendre nodes in the doubled-angle cosine, which integrates the
//! polynomial survivors of the angular average exactly.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quad::gauss_legendre;
use crate::specfun::log_gamma;

/// Surface measure of S^{n-1}: 2 π^{n/2} / Γ(n/2).
pub fn sphere_area(n: usize) -> f64 {
    let nf = n as f64;
    (2.0 * std::f64::consts::PI.powf(nf / 2.0)) / log_gamma(nf / 2.0).unwrap().exp()
}

/// A complex-valued function on the sphere, evaluated at unit vectors.
#[derive(Clone)]
pub struct SphericalFn {
    label: String,
    f: Arc<dyn Fn(&[f64]) -> Complex64 + Send + Sync>,
}

impl SphericalFn {
    pub fn new<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(&[f64]) -> Complex64 + Send + Sync + 'static,
    {
        SphericalFn {
            label: label.into(),
            f: Arc::new(f),
        }
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        (self.f)(x)
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl std::fmt::Debug for SphericalFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SphericalFn({})", self.label)
    }
}

#[derive(Debug, Clone)]
enum ParamGrid {
    Circle {
        nphi: usize,
    },
    Product {
        r: usize,
        nphi: usize,
        /// Gauss–Legendre nodes in u = cos 2ψ per radial level (levels 2..=r).
        radial: Vec<Vec<f64>>,
    },
}

/// Nodes and weights approximating integration over S^{n-1}.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    n: usize,
    resolution: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    grid: ParamGrid,
}

const MAX_NODES: usize = 8_000_000;

/// Build ω ∈ S^{r-1}_+ from the per-level doubled-angle cosines.
fn omega_from_us(us: &[f64]) -> Vec<f64> {
    let mut omega = vec![1.0];
    for &u in us {
        let c = ((1.0 + u) / 2.0).sqrt();
        let s = ((1.0 - u) / 2.0).sqrt();
        for w in omega.iter_mut() {
            *w *= s;
        }
        omega.push(c);
    }
    omega
}

fn assemble_point(phis: &[f64], omega: &[f64], out: &mut [f64]) {
    for (i, (&phi, &w)) in phis.iter().zip(omega.iter()).enumerate() {
        out[2 * i] = w * phi.cos();
        out[2 * i + 1] = w * phi.sin();
    }
}

impl QuadratureRule {
    /// Product rule on S^{n-1} exact (to roundoff) for polynomials of degree
    /// ≤ `resolution`.
    pub fn make_rule(n: usize, resolution: usize) -> Result<Self> {
        if n % 2 != 0 || !(2..=8).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        if resolution < 8 {
            return Err(Error::domain(format!(
                "resolution {resolution} below minimum 8"
            )));
        }
        if n == 2 {
            let nphi = resolution.max(8);
            let step = 2.0 * std::f64::consts::PI / nphi as f64;
            let mut nodes = Vec::with_capacity(2 * nphi);
            let mut weights = Vec::with_capacity(nphi);
            for i in 0..nphi {
                let phi = -std::f64::consts::PI + step * (i as f64 + 0.5);
                nodes.push(phi.cos());
                nodes.push(phi.sin());
                weights.push(step);
            }
            return Ok(QuadratureRule {
                n,
                resolution,
                nodes,
                weights,
                grid: ParamGrid::Circle { nphi },
            });
        }

        let r = n / 2;
        let nphi = (resolution + 1).max(8);
        let m_u = (resolution / 4 + 2).max(4);
        let count = nphi.pow(r as u32) * m_u.pow((r - 1) as u32);
        if count > MAX_NODES {
            return Err(Error::domain(format!(
                "rule for n={n} at resolution {resolution} needs {count} nodes (limit {MAX_NODES})"
            )));
        }

        let step = 2.0 * std::f64::consts::PI / nphi as f64;
        let phi_nodes: Vec<f64> = (0..nphi)
            .map(|i| -std::f64::consts::PI + step * (i as f64 + 0.5))
            .collect();
        let (u_nodes, u_weights) = gauss_legendre(m_u);
        // level i ∈ 2..=r carries the polynomial factor ((1-u)/2)^{i-2} / 4
        let level_weight = |level: usize, idx: usize| -> f64 {
            u_weights[idx] * ((1.0 - u_nodes[idx]) / 2.0).powi(level as i32 - 2) / 4.0
        };

        let mut nodes = Vec::with_capacity(count * n);
        let mut weights = Vec::with_capacity(count);
        let mut phi_idx = vec![0usize; r];
        let mut u_idx = vec![0usize; r - 1];
        let mut point = vec![0.0; n];
        'outer: loop {
            let phis: Vec<f64> = phi_idx.iter().map(|&i| phi_nodes[i]).collect();
            let us: Vec<f64> = u_idx.iter().map(|&i| u_nodes[i]).collect();
            let omega = omega_from_us(&us);
            assemble_point(&phis, &omega, &mut point);
            nodes.extend_from_slice(&point);
            let mut w = step.powi(r as i32);
            for (lvl, &ui) in u_idx.iter().enumerate() {
                w *= level_weight(lvl + 2, ui);
            }
            weights.push(w);

            // odometer over (φ_1..φ_r, u_2..u_r)
            let mut k = 0;
            loop {
                if k < r {
                    phi_idx[k] += 1;
                    if phi_idx[k] < nphi {
                        break;
                    }
                    phi_idx[k] = 0;
                } else if k < 2 * r - 1 {
                    u_idx[k - r] += 1;
                    if u_idx[k - r] < m_u {
                        break;
                    }
                    u_idx[k - r] = 0;
                } else {
                    break 'outer;
                }
                k += 1;
            }
        }

        let radial = vec![u_nodes; r - 1];
        Ok(QuadratureRule {
            n,
            resolution,
            nodes,
            weights,
            grid: ParamGrid::Product { r, nphi, radial },
        })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn node(&self, i: usize) -> &[f64] {
        &self.nodes[i * self.n..(i + 1) * self.n]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.nodes.chunks_exact(self.n).zip(self.weights.iter().copied())
    }

    /// Parallel map-reduce of `f(node, weight)` summed over all nodes.
    /// Block sums are accumulated in index order, so the result does not
    /// depend on thread scheduling.
    pub fn par_sum<F>(&self, f: F) -> Complex64
    where
        F: Fn(&[f64], f64) -> Complex64 + Send + Sync,
    {
        if self.len() < 4096 {
            return self
                .iter()
                .map(|(x, w)| f(x, w))
                .fold(Complex64::new(0.0, 0.0), |a, b| a + b);
        }
        const BLOCK: usize = 4096;
        let blocks: Vec<Complex64> = (0..self.len().div_ceil(BLOCK))
            .into_par_iter()
            .map(|b| {
                let lo = b * BLOCK;
                let hi = (lo + BLOCK).min(self.len());
                let mut acc = Complex64::new(0.0, 0.0);
                for i in lo..hi {
                    acc += f(self.node(i), self.weights[i]);
                }
                acc
            })
            .collect();
        blocks.into_iter().fold(Complex64::new(0.0, 0.0), |a, b| a + b)
    }
}

fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..48 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let t = 0.5 * (a + b);
    (t, f(t))
}

/// Grid max of |f| plus one coordinatewise golden-section refinement pass.
///
/// This is a certified lower estimate of the true sup; the second component
/// is the improvement gained by refinement, reported so callers can flag how
/// far the plain grid maximum was from locally converged.
pub fn sup_estimate(f: &SphericalFn, rule: &QuadratureRule) -> (f64, f64) {
    let mut best = f64::NEG_INFINITY;
    let mut best_idx = 0;
    for (i, (x, _)) in rule.iter().enumerate() {
        let v = f.eval(x).norm();
        if v > best {
            best = v;
            best_idx = i;
        }
    }
    let grid_max = best;

    match &rule.grid {
        ParamGrid::Circle { nphi } => {
            let spacing = 2.0 * std::f64::consts::PI / *nphi as f64;
            let x0 = rule.node(best_idx);
            let phi0 = x0[1].atan2(x0[0]);
            let g = |phi: f64| f.eval(&[phi.cos(), phi.sin()]).norm();
            let (_, v) = golden_max(&g, phi0 - spacing, phi0 + spacing);
            let refined = v.max(grid_max);
            (refined, refined - grid_max)
        }
        ParamGrid::Product { r, nphi, radial } => {
            let r = *r;
            let x0 = rule.node(best_idx);
            let mut phis: Vec<f64> = (0..r)
                .map(|i| x0[2 * i + 1].atan2(x0[2 * i]))
                .collect();
            // recover the u-coordinates from the radii
            let mut us: Vec<f64> = Vec::with_capacity(r - 1);
            let mut rem_sq = 1.0;
            for lvl in (1..r).rev() {
                // ω_{lvl+1} = cos ψ · sqrt(rem_sq)
                let w = (x0[2 * lvl].powi(2) + x0[2 * lvl + 1].powi(2)).sqrt();
                let cos_psi_sq = (w * w / rem_sq).clamp(0.0, 1.0);
                us.push(2.0 * cos_psi_sq - 1.0);
                rem_sq *= 1.0 - cos_psi_sq;
            }
            us.reverse();

            let phi_spacing = 2.0 * std::f64::consts::PI / *nphi as f64;
            let u_spacing = 2.0 / radial[0].len() as f64;
            let eval_at = |phis: &[f64], us: &[f64]| {
                let omega = omega_from_us(us);
                let mut point = vec![0.0; phis.len() * 2];
                assemble_point(phis, &omega, &mut point);
                f.eval(&point).norm()
            };
            let mut current = grid_max;
            for _ in 0..2 {
                for c in 0..r {
                    let (t, v) = golden_max(
                        &|phi| {
                            let mut p = phis.clone();
                            p[c] = phi;
                            eval_at(&p, &us)
                        },
                        phis[c] - phi_spacing,
                        phis[c] + phi_spacing,
                    );
                    if v > current {
                        current = v;
                        phis[c] = t;
                    }
                }
                for c in 0..r - 1 {
                    let lo = (us[c] - u_spacing).max(-1.0);
                    let hi = (us[c] + u_spacing).min(1.0);
                    let (t, v) = golden_max(
                        &|u| {
                            let mut q = us.clone();
                            q[c] = u;
                            eval_at(&phis, &q)
                        },
                        lo,
                        hi,
                    );
                    if v > current {
                        current = v;
                        us[c] = t;
                    }
                }
            }
            (current, current - grid_max)
        }
    }
}

/// L^p norm of `f` on the rule; p = f64::INFINITY gives the refined grid sup.
pub fn lp_norm(f: &SphericalFn, p: f64, rule: &QuadratureRule) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::domain(format!("lp_norm requires p >= 1, got {p}")));
    }
    if p.is_infinite() {
        return Ok(sup_estimate(f, rule).0);
    }
    let s = rule
        .par_sum(|x, w| Complex64::new(w * f.eval(x).norm().powf(p), 0.0))
        .re;
    Ok(s.powf(1.0 / p))
}

/// ⟨f, g⟩ = Σ_i w_i f(x_i) conj(g(x_i)).
pub fn inner_product(f: &SphericalFn, g: &SphericalFn, rule: &QuadratureRule) -> Complex64 {
    rule.par_sum(|x, w| f.eval(x) * g.eval(x).conj() * w)
}
