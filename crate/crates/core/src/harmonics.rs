//! Spherical-harmonic expansions: circle Fourier coefficients, the explicit
//! degree-j terms of the 4-dimensional tensor-power symbol, and a zonal
//! (Gegenbauer-kernel) projector that provides an independent route to the
//! same quantities.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quad::gauss_legendre;
use crate::specfun::log_gamma;
use crate::spherequad::{sphere_area, QuadratureRule, SphericalFn};

/// One degree of an expansion: an evaluator and its cached squared L² norm.
#[derive(Debug, Clone)]
pub struct HarmonicTerm {
    pub degree: u32,
    pub evaluator: SphericalFn,
    pub l2norm_sq: f64,
}

impl HarmonicTerm {
    pub fn zero(degree: u32) -> Self {
        HarmonicTerm {
            degree,
            evaluator: SphericalFn::new("0", |_: &[f64]| Complex64::new(0.0, 0.0)),
            l2norm_sq: 0.0,
        }
    }

    /// The same term multiplied by a complex scalar.
    pub fn scaled(&self, factor: Complex64) -> Self {
        let inner = self.evaluator.clone();
        HarmonicTerm {
            degree: self.degree,
            evaluator: SphericalFn::new(
                format!("{}*{}", factor, inner.label()),
                move |x: &[f64]| inner.eval(x) * factor,
            ),
            l2norm_sq: self.l2norm_sq * factor.norm_sqr(),
        }
    }
}

/// A truncated expansion Σ_j Y_j with strictly increasing degrees.
#[derive(Debug, Clone)]
pub struct HarmonicSeries {
    dimension: usize,
    terms: Arc<Vec<HarmonicTerm>>,
    truncation_degree: u32,
}

impl HarmonicSeries {
    pub fn new(dimension: usize, terms: Vec<HarmonicTerm>) -> Result<Self> {
        for pair in terms.windows(2) {
            if pair[1].degree <= pair[0].degree {
                return Err(Error::domain(format!(
                    "series degrees must strictly increase, got {} then {}",
                    pair[0].degree, pair[1].degree
                )));
            }
        }
        let truncation_degree = terms.last().map(|t| t.degree).unwrap_or(0);
        Ok(HarmonicSeries {
            dimension,
            terms: Arc::new(terms),
            truncation_degree,
        })
    }

    /// Like [`HarmonicSeries::new`] but also checks the Parseval budget
    /// against the squared norm of an attached target function.
    pub fn new_with_target(
        dimension: usize,
        terms: Vec<HarmonicTerm>,
        target_norm_sq: f64,
    ) -> Result<Self> {
        let s = Self::new(dimension, terms)?;
        let mass = s.parseval_sum();
        if mass > target_norm_sq + 1e-6 {
            return Err(Error::domain(format!(
                "Parseval mass {mass} exceeds target {target_norm_sq}"
            )));
        }
        Ok(s)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn terms(&self) -> &[HarmonicTerm] {
        &self.terms
    }

    pub fn truncation_degree(&self) -> u32 {
        self.truncation_degree
    }

    pub fn parseval_sum(&self) -> f64 {
        self.terms.iter().map(|t| t.l2norm_sq).sum()
    }

    pub fn eval_sum(&self, x: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|t| t.evaluator.eval(x))
            .fold(Complex64::new(0.0, 0.0), |a, b| a + b)
    }

    pub fn as_spherical_fn(&self, label: impl Into<String>) -> SphericalFn {
        let terms = Arc::clone(&self.terms);
        SphericalFn::new(label, move |x: &[f64]| {
            terms
                .iter()
                .map(|t| t.evaluator.eval(x))
                .fold(Complex64::new(0.0, 0.0), |a, b| a + b)
        })
    }
}

/// Raw circle Fourier coefficients c_j = (1/2π)⟨f, e^{ijφ}⟩ for |j| ≤ j_max.
///
/// Index i of the returned vector holds c_{i - j_max}.
pub fn circle_coefficients(
    f: &SphericalFn,
    j_max: u32,
    rule: &QuadratureRule,
) -> Result<Vec<Complex64>> {
    if rule.dimension() != 2 {
        return Err(Error::domain(format!(
            "circle coefficients need an S^1 rule, got n={}",
            rule.dimension()
        )));
    }
    if rule.resolution() < 4 * j_max as usize {
        return Err(Error::Truncation(format!(
            "rule resolution {} below 4*J = {} — coefficients would alias",
            rule.resolution(),
            4 * j_max
        )));
    }
    let values: Vec<(f64, Complex64)> = rule
        .iter()
        .map(|(x, w)| (x[1].atan2(x[0]), f.eval(x) * w))
        .collect();
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut out = Vec::with_capacity(2 * j_max as usize + 1);
    for j in -(j_max as i64)..=(j_max as i64) {
        let mut c = Complex64::new(0.0, 0.0);
        for &(phi, fw) in &values {
            c += fw * Complex64::from_polar(1.0, -(j as f64) * phi);
        }
        out.push(c / two_pi);
    }
    Ok(out)
}

/// Fourier expansion of a circle function packaged per degree:
/// the degree-j term is c_j e^{ijφ} + c_{-j} e^{-ijφ}.
pub fn fourier_series_circle(
    f: &SphericalFn,
    j_max: u32,
    rule: &QuadratureRule,
) -> Result<HarmonicSeries> {
    let coeffs = circle_coefficients(f, j_max, rule)?;
    let c = |j: i64| coeffs[(j + j_max as i64) as usize];
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut terms = Vec::with_capacity(j_max as usize + 1);
    let c0 = c(0);
    terms.push(HarmonicTerm {
        degree: 0,
        evaluator: SphericalFn::new("c0", move |_: &[f64]| c0),
        l2norm_sq: two_pi * c0.norm_sqr(),
    });
    for j in 1..=j_max {
        let cp = c(j as i64);
        let cm = c(-(j as i64));
        let jf = j as f64;
        terms.push(HarmonicTerm {
            degree: j,
            evaluator: SphericalFn::new(format!("deg{j}"), move |x: &[f64]| {
                let phi = x[1].atan2(x[0]);
                cp * Complex64::from_polar(1.0, jf * phi)
                    + cm * Complex64::from_polar(1.0, -jf * phi)
            }),
            l2norm_sq: two_pi * (cp.norm_sqr() + cm.norm_sqr()),
        });
    }
    HarmonicSeries::new(2, terms)
}

/// Dimension of the space of degree-j spherical harmonics on S^{n-1}.
pub fn harmonic_space_dim(n: usize, j: u32) -> f64 {
    if j == 0 {
        return 1.0;
    }
    let jf = j as f64;
    let nf = n as f64;
    // (2j + n - 2)/(j + n - 2) * C(j + n - 2, n - 2)
    let mut binom = 1.0;
    for i in 1..=(n - 2) {
        binom *= (jf + i as f64) / i as f64;
    }
    (2.0 * jf + nf - 2.0) / (jf + nf - 2.0) * binom
}

/// C_j^{ν}(t) / C_j^{ν}(1) with ν = (n-2)/2; for n = 2 this is the
/// Chebyshev polynomial T_j(t).
pub fn gegenbauer_ratio(n: usize, j: u32, t: f64) -> f64 {
    if j == 0 {
        return 1.0;
    }
    if n == 2 {
        // T_j by recurrence
        let mut p0 = 1.0;
        let mut p1 = t;
        for _ in 2..=j {
            let p2 = 2.0 * t * p1 - p0;
            p0 = p1;
            p1 = p2;
        }
        return p1;
    }
    let nu = (n as f64 - 2.0) / 2.0;
    let mut p0 = 1.0;
    let mut p1 = 2.0 * nu * t;
    for m in 2..=j {
        let mf = m as f64;
        let p2 = (2.0 * t * (mf + nu - 1.0) * p1 - (mf + 2.0 * nu - 2.0) * p0) / mf;
        p0 = p1;
        p1 = p2;
    }
    // C_j^ν(1) = C(j + 2ν - 1, j)
    let mut at_one = 1.0;
    for m in 1..=j {
        let mf = m as f64;
        at_one *= (mf + 2.0 * nu - 1.0) / mf;
    }
    p1 / at_one
}

/// The on-demand evaluator of the zonal projection
/// (H_j f)(x) = (dim_j / σ) ∫ C_j^{(n-2)/2}(x·y)/C_j^{(n-2)/2}(1) f(y) dσ(y),
/// with f pre-evaluated on the rule; each call costs one pass over the rule.
pub fn zonal_projector(
    f: &SphericalFn,
    n: usize,
    j: u32,
    rule: &QuadratureRule,
) -> Result<SphericalFn> {
    if n % 2 != 0 || !(2..=8).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    if rule.dimension() != n {
        return Err(Error::domain(format!(
            "rule dimension {} does not match n={n}",
            rule.dimension()
        )));
    }
    let scale = harmonic_space_dim(n, j) / sphere_area(n);
    let nodes: Arc<Vec<f64>> = Arc::new(rule.iter().flat_map(|(x, _)| x.to_vec()).collect());
    let weighted: Arc<Vec<Complex64>> = Arc::new(
        rule.iter().map(|(x, w)| f.eval(x) * w).collect(),
    );
    let label = format!("H_{j}[{}]", f.label());
    Ok(SphericalFn::new(label, move |x: &[f64]| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (y, fw) in nodes.chunks_exact(n).zip(weighted.iter()) {
            let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
            acc += *fw * gegenbauer_ratio(n, j, dot.clamp(-1.0, 1.0));
        }
        acc * scale
    }))
}

/// Orthogonal projection onto degree-j harmonics via the zonal kernel,
/// packaged per degree; the cached squared norm is Σ_x w_x |H_j f(x)|², an
/// O(N²) pass over the rule.
pub fn zonal_project(
    f: &SphericalFn,
    n: usize,
    j: u32,
    rule: &QuadratureRule,
) -> Result<HarmonicTerm> {
    let projector = zonal_projector(f, n, j, rule)?;
    let l2norm_sq: f64 = (0..rule.len())
        .into_par_iter()
        .map(|i| rule.weight(i) * projector.eval(rule.node(i)).norm_sqr())
        .sum();
    Ok(HarmonicTerm {
        degree: j,
        evaluator: projector,
        l2norm_sq,
    })
}

/// Values of a zonal projection on all rule nodes plus its quadrature norm;
/// cheaper than calling the term evaluator node by node when the whole grid
/// is needed (orthogonality checks, cumulative mass).
pub fn zonal_project_grid(
    f: &SphericalFn,
    n: usize,
    j: u32,
    rule: &QuadratureRule,
) -> Result<(Vec<Complex64>, f64)> {
    if rule.dimension() != n {
        return Err(Error::domain("rule dimension mismatch".to_string()));
    }
    let scale = harmonic_space_dim(n, j) / sphere_area(n);
    let fw: Vec<Complex64> = rule.iter().map(|(x, w)| f.eval(x) * w).collect();
    let values: Vec<Complex64> = (0..rule.len())
        .into_par_iter()
        .map(|i| {
            let x = rule.node(i);
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, fwk) in fw.iter().enumerate() {
                let y = rule.node(k);
                let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
                acc += *fwk * gegenbauer_ratio(n, j, dot.clamp(-1.0, 1.0));
            }
            acc * scale
        })
        .collect();
    let norm_sq = (0..rule.len())
        .map(|i| rule.weight(i) * values[i].norm_sqr())
        .sum();
    Ok((values, norm_sq))
}

// ---------------------------------------------------------------------------
// Explicit degree terms of the 4D tensor-power symbol
// ---------------------------------------------------------------------------

/// P_d^{(k,k)}(x), Jacobi polynomial with equal parameters, by the standard
/// three-term recurrence (stable at high degree where the equivalent
/// alternating binomial sum cancels catastrophically).
pub fn jacobi_pkk(d: u32, k: u32, x: f64) -> f64 {
    let kf = k as f64;
    if d == 0 {
        return 1.0;
    }
    let mut p0 = 1.0;
    let mut p1 = (kf + 1.0) * x;
    for m in 1..d {
        let mf = m as f64;
        let a = (2.0 * mf + 2.0 * kf + 1.0) * (2.0 * mf + 2.0 * kf + 2.0)
            / (2.0 * (mf + 1.0) * (mf + 2.0 * kf + 1.0));
        let c = (mf + kf) * (mf + kf) * (2.0 * mf + 2.0 * kf + 2.0)
            / ((mf + 1.0) * (mf + 2.0 * kf + 1.0) * (2.0 * mf + 2.0 * kf));
        let p2 = a * x * p1 - c * p0;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// The literal alternating binomial form of the same radial polynomial,
/// Σ_l (-1)^l C(m, d-l) C(m, l) a^{d-l} b^l with m = d + k; reliable only
/// while the binomials stay small. Kept for cross-validation.
pub fn alternating_radial(d: u32, k: u32, a: f64, b: f64) -> f64 {
    let m = d + k;
    let binom = |n: u32, r: u32| -> f64 {
        if r > n {
            return 0.0;
        }
        let mut v = 1.0;
        for i in 0..r {
            v *= (n - i) as f64 / (i + 1) as f64;
        }
        v
    };
    let mut s = 0.0;
    let mut sign = 1.0;
    for l in 0..=d {
        s += sign * binom(m, d - l) * binom(m, l) * a.powi((d - l) as i32) * b.powi(l as i32);
        sign = -sign;
    }
    s
}

/// One explicit term of the 4D expansion, as a solid (homogeneous, harmonic)
/// polynomial on R⁴: prefactor · ζ₁^k ζ₂^k (a+b)^d P_d^{(k,k)}((a-b)/(a+b))
/// with a = |ζ₁|², b = |ζ₂|², d = (j-2k)/2.
#[derive(Debug, Clone, Copy)]
pub struct ExplicitTerm4d {
    pub k: u32,
    pub degree: u32,
    pub prefactor: f64,
}

impl ExplicitTerm4d {
    pub fn is_zero(&self) -> bool {
        self.prefactor == 0.0
    }

    fn d(&self) -> u32 {
        (self.degree - 2 * self.k) / 2
    }

    /// Evaluate the homogeneous polynomial at any point of R⁴.
    pub fn eval_solid(&self, x: &[f64]) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        let z1 = Complex64::new(x[0], x[1]);
        let z2 = Complex64::new(x[2], x[3]);
        let a = z1.norm_sqr();
        let b = z2.norm_sqr();
        let s = a + b;
        if s == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let d = self.d();
        let radial = s.powi(d as i32) * jacobi_pkk(d, self.k, (a - b) / s);
        z1.powu(self.k) * z2.powu(self.k) * self.prefactor * radial
    }

    /// Centered finite-difference Laplacian of the solid polynomial.
    pub fn fd_laplacian(&self, x: &[f64], h: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let center = self.eval_solid(x);
        let mut p = [x[0], x[1], x[2], x[3]];
        for i in 0..4 {
            p[i] = x[i] + h;
            let up = self.eval_solid(&p);
            p[i] = x[i] - h;
            let dn = self.eval_solid(&p);
            p[i] = x[i];
            acc += up + dn - 2.0 * center;
        }
        acc / (h * h)
    }

    /// Peak modulus over the sphere (radial scan; the modulus is
    /// φ-independent).
    pub fn sup_on_sphere(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let d = self.d();
        let mut best = 0.0f64;
        let steps = 64 + 8 * (d + self.k) as usize;
        for i in 0..=steps {
            let t = -1.0 + 2.0 * i as f64 / steps as f64; // t = a - b, a + b = 1
            let ab = (1.0 - t * t) / 4.0;
            let v = self.prefactor.abs() * ab.powi(self.k as i32 / 2)
                * jacobi_pkk(d, self.k, t).abs();
            best = best.max(v);
        }
        best
    }
}

/// The explicit degree-j term of the expansion of the 4D tensor-power symbol
/// with even exponent k ≥ 2. Zero unless j ≥ 2k and 4 | j.
pub fn mtilde4d_explicit(k: u32, j: u32) -> Result<ExplicitTerm4d> {
    if k % 2 != 0 || k < 2 {
        return Err(Error::domain(format!(
            "explicit 4D terms are defined for even k >= 2, got k={k}"
        )));
    }
    if j < 2 * k || j % 4 != 0 {
        return Ok(ExplicitTerm4d {
            k,
            degree: j,
            prefactor: 0.0,
        });
    }
    let lb = |x: f64| log_gamma(x).expect("positive argument");
    let ln_binom = |n: f64, r: f64| lb(n + 1.0) - lb(r + 1.0) - lb(n - r + 1.0);
    let jf = j as f64;
    let kf = k as f64;
    let ln_pref = ln_binom(jf, jf / 2.0) + ln_binom(jf / 2.0, jf / 4.0 - kf / 2.0)
        + ((jf + 1.0) * kf).ln()
        - ln_binom(jf / 2.0, jf / 4.0)
        - ln_binom(jf, jf / 2.0 - kf)
        - ((jf / 2.0) * (jf / 2.0 + 1.0)).ln();
    Ok(ExplicitTerm4d {
        k,
        degree: j,
        prefactor: ln_pref.exp(),
    })
}

/// ‖Ỹ_j^{(k)}‖²_{L²(S³)} = π² 4^{-k} pref² ∫_{-1}^{1} (1-x²)^k P_d^{(k,k)}(x)² dx,
/// with the integral done by Gauss–Legendre (exact: polynomial integrand).
fn explicit_term_norm_sq(term: &ExplicitTerm4d) -> f64 {
    if term.is_zero() {
        return 0.0;
    }
    let d = term.d();
    let m = (d + term.k + 2) as usize;
    let (xs, ws) = gauss_legendre(m);
    let mut s = 0.0;
    for i in 0..m {
        let x = xs[i];
        s += ws[i] * (1.0 - x * x).powi(term.k as i32) * jacobi_pkk(d, term.k, x).powi(2);
    }
    std::f64::consts::PI.powi(2) * 0.25f64.powi(term.k as i32) * term.prefactor.powi(2) * s
}

/// The degree-j term of the 4D expansion packaged as a [`HarmonicTerm`].
pub fn mtilde4d_term(k: u32, j: u32) -> Result<HarmonicTerm> {
    let t = mtilde4d_explicit(k, j)?;
    if t.is_zero() {
        return Ok(HarmonicTerm::zero(j));
    }
    let l2norm_sq = explicit_term_norm_sq(&t);
    Ok(HarmonicTerm {
        degree: j,
        evaluator: SphericalFn::new(format!("Ytilde_{j}^{k}"), move |x: &[f64]| t.eval_solid(x)),
        l2norm_sq,
    })
}

/// The truncated expansion Σ_{j ≤ j_max} Ỹ_j^{(k)} of the 4D tensor-power
/// symbol (nonzero degrees only).
pub fn mtilde4d_series(k: u32, j_max: u32) -> Result<HarmonicSeries> {
    let mut terms = Vec::new();
    let mut j = 2 * k;
    while j <= j_max {
        if j % 4 == 0 {
            let t = mtilde4d_term(k, j)?;
            if t.l2norm_sq > 0.0 {
                terms.push(t);
            }
        }
        j += 2;
    }
    if terms.is_empty() {
        return Err(Error::Truncation(format!(
            "no nonzero degrees up to {j_max} for k={k}"
        )));
    }
    HarmonicSeries::new_with_target(4, terms, 2.0 * std::f64::consts::PI.powi(2))
}
