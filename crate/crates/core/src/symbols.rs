//! Constructors and evaluators for the unimodular homogeneous symbols:
//! the cos symbol on S¹, the tensor-power symbol on S^{2r-1}, and their
//! smoothed variants with a fixed, reproducible C^∞ transition.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Identifier of the fixed smoothing choice, recorded in reports.
pub const SMOOTHING_CHOICE: &str = "expinv-smoothstep-v1";

/// S(t) = ψ(t) / (ψ(t) + ψ(1-t)) with ψ(t) = e^{-1/t} for t > 0.
///
/// Identically 0 for t ≤ 0, identically 1 for t ≥ 1, C^∞ everywhere, and
/// S(t) + S(1-t) = 1.
pub fn smooth_transition(t: f64) -> f64 {
    fn psi(t: f64) -> f64 {
        if t > 0.0 {
            (-1.0 / t).exp()
        } else {
            0.0
        }
    }
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let a = psi(t);
        a / (a + psi(1.0 - t))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolKind {
    /// e^{iλ cos φ} on S¹.
    CosPhase,
    /// Π_i (ζ_i/|ζ_i|)^k on S^{2r-1}; singular where any ζ_i = 0.
    TensorPower,
    /// e^{iλ φ_δ(·)} on S¹ with the winding phase flattened across an arc of
    /// width δ at ±π.
    Smoothed2d,
    /// The tensor-power phase k(φ_1+…+φ_r) cut off outside the major cone.
    SmoothedEven,
}

/// A homogeneous unit-modulus symbol, evaluated on unit vectors only.
#[derive(Debug, Clone, Copy)]
pub struct SymbolSpec {
    pub kind: SymbolKind,
    pub n: usize,
    /// λ for the phase families, k (integer-valued) for the power families.
    pub param: f64,
    /// Transition width for the smoothed kinds; unused otherwise.
    pub delta: f64,
}

/// Predicate for the major cone: all |ζ_i| > δ and all φ_i ∈ (-π+δ, π-δ).
#[derive(Debug, Clone, Copy)]
pub struct MajorConeTest {
    pub delta: f64,
}

impl MajorConeTest {
    pub fn contains(&self, x: &[f64]) -> bool {
        let r = x.len() / 2;
        for i in 0..r {
            let re = x[2 * i];
            let im = x[2 * i + 1];
            let w = (re * re + im * im).sqrt();
            if w <= self.delta {
                return false;
            }
            let phi = im.atan2(re);
            if phi.abs() >= std::f64::consts::PI - self.delta {
                return false;
            }
        }
        true
    }
}

pub fn make_symbol(
    kind: SymbolKind,
    n: usize,
    param: f64,
    delta: Option<f64>,
) -> Result<SymbolSpec> {
    if !param.is_finite() {
        return Err(Error::domain("symbol parameter must be finite".to_string()));
    }
    let r = n / 2;
    match kind {
        SymbolKind::CosPhase => {
            if n != 2 {
                return Err(Error::domain(format!("cos symbol lives on S^1, got n={n}")));
            }
            Ok(SymbolSpec { kind, n, param, delta: 0.0 })
        }
        SymbolKind::TensorPower => {
            if n % 2 != 0 || n < 2 {
                return Err(Error::domain(format!(
                    "tensor-power symbol needs even n >= 2, got n={n}"
                )));
            }
            if param.fract() != 0.0 {
                return Err(Error::domain(format!(
                    "tensor-power exponent must be an integer, got {param}"
                )));
            }
            Ok(SymbolSpec { kind, n, param, delta: 0.0 })
        }
        SymbolKind::Smoothed2d => {
            if n != 2 {
                return Err(Error::domain(format!("smoothed 2d symbol needs n=2, got n={n}")));
            }
            let d = delta.unwrap_or(std::f64::consts::PI / 8.0);
            if !(d > 0.0 && d < std::f64::consts::PI) {
                return Err(Error::domain(format!("delta={d} outside (0, pi)")));
            }
            Ok(SymbolSpec { kind, n, param, delta: d })
        }
        SymbolKind::SmoothedEven => {
            if n % 2 != 0 || n < 4 {
                return Err(Error::domain(format!(
                    "smoothed even symbol needs even n >= 4, got n={n}"
                )));
            }
            if param.fract() != 0.0 {
                return Err(Error::domain(format!(
                    "smoothed even exponent must be an integer, got {param}"
                )));
            }
            let d = delta.unwrap_or(0.1 / r as f64);
            if !(d > 0.0 && d < 1.0 / r as f64) {
                return Err(Error::domain(format!(
                    "delta={d} outside (0, {})",
                    1.0 / r as f64
                )));
            }
            Ok(SymbolSpec { kind, n, param, delta: d })
        }
    }
}

/// The flattened winding phase on S¹: equals φ on (-π+δ, π-δ), blends
/// smoothly to 0 across the arcs [π-δ, π] and [-π, -π+δ].
pub fn smoothed2d_phase(delta: f64, varphi: f64) -> f64 {
    let a = varphi.abs();
    let edge = std::f64::consts::PI - delta;
    if a <= edge {
        varphi
    } else {
        varphi * (1.0 - smooth_transition((a - edge) / delta))
    }
}

/// The cut-off sum-of-angles phase on S^{2r-1} in Ψ coordinates: equals
/// Σφ_i when all |φ_i| ≤ π-δ and all ω_i ≥ δ, vanishes once any |φ_i| ≥
/// π-δ/2 or any ω_i ≤ δ/2, C^∞ in between.
pub fn smoothed_even_phase(delta: f64, phis: &[f64], omegas: &[f64]) -> f64 {
    let mut cutoff = 1.0;
    let edge = std::f64::consts::PI - delta;
    for &phi in phis {
        let a = phi.abs();
        if a > edge {
            cutoff *= 1.0 - smooth_transition((a - edge) / (delta / 2.0));
        }
        if cutoff == 0.0 {
            return 0.0;
        }
    }
    for &w in omegas {
        if w < delta {
            cutoff *= smooth_transition((w - delta / 2.0) / (delta / 2.0));
        }
        if cutoff == 0.0 {
            return 0.0;
        }
    }
    phis.iter().sum::<f64>() * cutoff
}

/// Evaluate the symbol at a unit vector. Non-unit input is rejected.
pub fn symbol_eval(spec: &SymbolSpec, x: &[f64]) -> Result<Complex64> {
    if x.len() != spec.n {
        return Err(Error::domain(format!(
            "point has dimension {}, symbol lives on S^{}",
            x.len(),
            spec.n - 1
        )));
    }
    let norm_sq: f64 = x.iter().map(|c| c * c).sum();
    if (norm_sq.sqrt() - 1.0).abs() > 1e-9 {
        return Err(Error::domain(format!(
            "symbol evaluated off the unit sphere (|x| = {})",
            norm_sq.sqrt()
        )));
    }
    let r = spec.n / 2;
    match spec.kind {
        SymbolKind::CosPhase => Ok(Complex64::from_polar(1.0, spec.param * x[0])),
        SymbolKind::TensorPower => {
            let mut phase = 0.0;
            for i in 0..r {
                let re = x[2 * i];
                let im = x[2 * i + 1];
                if re == 0.0 && im == 0.0 {
                    return Err(Error::domain(
                        "tensor-power symbol undefined where a coordinate pair vanishes"
                            .to_string(),
                    ));
                }
                phase += im.atan2(re);
            }
            Ok(Complex64::from_polar(1.0, spec.param * phase))
        }
        SymbolKind::Smoothed2d => {
            let varphi = x[1].atan2(x[0]);
            Ok(Complex64::from_polar(
                1.0,
                spec.param * smoothed2d_phase(spec.delta, varphi),
            ))
        }
        SymbolKind::SmoothedEven => {
            let mut phis = Vec::with_capacity(r);
            let mut omegas = Vec::with_capacity(r);
            for i in 0..r {
                let re = x[2 * i];
                let im = x[2 * i + 1];
                omegas.push((re * re + im * im).sqrt());
                phis.push(im.atan2(re));
            }
            Ok(Complex64::from_polar(
                1.0,
                spec.param * smoothed_even_phase(spec.delta, &phis, &omegas),
            ))
        }
    }
}

/// The symbol as a [`crate::spherequad::SphericalFn`]; evaluation panics on
/// non-unit input, which quadrature rules never produce.
pub fn as_spherical_fn(spec: &SymbolSpec) -> crate::spherequad::SphericalFn {
    let spec = *spec;
    let label = format!("{:?}(param={}, delta={})", spec.kind, spec.param, spec.delta);
    crate::spherequad::SphericalFn::new(label, move |x: &[f64]| {
        symbol_eval(&spec, x).expect("symbol evaluated at invalid point")
    })
}
