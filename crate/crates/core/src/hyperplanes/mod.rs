//! Separating and supporting complex hyperplanes of the tetrablock and of
//! `G₂,ρ`.

mod gamma;
mod miss;

pub use gamma::{
    canonicalize, gamma_e_point, gamma_g2rho, ratio_class_membership, ratio_set_membership, sample_ratio_slopes, Frame,
    FramedGamma, GammaSet, ProjClass, RatioGrid, SubFamily,
};
pub use miss::{hyperplane_misses_domain, MissCheck, MissOutcome};

use crate::domains::{
    classify_boundary_e, e_value, in_e, in_g2, roots_of_pi, BoundaryClassification, CPoint2, CPoint3, Tolerance, C64,
};
use crate::error::{Error, Result};
use crate::maps::{phi, worst_omega, OmegaParam};
use crate::projective::{AffineHyperplane, ProjVec, ProjVec2, ProjVec3};
use serde::{Deserialize, Serialize};

/// The root-pencil line `−μs + p = −μ²` through a point outside `G₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparatingLine {
    /// The root of largest modulus, `|μ| ≥ 1`.
    pub mu: C64,
    /// `(−μ, 1)`
    pub coeffs: [C64; 2],
    /// `−μ²`
    pub constant: C64,
    pub class: ProjVec2,
}

impl SeparatingLine {
    pub fn residual(&self, q: &CPoint2) -> f64 {
        (self.coeffs[0] * q.s + self.coeffs[1] * q.p - self.constant).norm()
    }
}

/// A complex line through `q ∉ G₂` missing `G₂`: every point on it has `μ`
/// as a root, and `|μ| ≥ 1`.
pub fn separating_line_g2(q: &CPoint2) -> Result<SeparatingLine> {
    let q = q.ensure_finite()?;
    if in_g2(&q) {
        return Err(Error::Precondition("point lies in G2".to_string()));
    }
    let roots = roots_of_pi(&q);
    // equal moduli: the root of smaller argument
    let mu = if roots.is_modulus_tie() {
        roots.lambda1
    } else {
        roots.lambda2
    };
    let coeffs = [-mu, C64::new(1.0, 0.0)];
    Ok(SeparatingLine {
        mu,
        coeffs,
        constant: -mu * mu,
        class: ProjVec::new(coeffs)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LiftVariant {
    Phi,
    Psi,
}

/// Coefficients of the hyperplane of `C³` pulled back from the line
/// `[(a, c)]` by `Φ_ω` (`[(a, ωa, ωc)]`) or `Ψ_ω` (`[(ωa, a, ωc)]`).
pub fn lift_coeffs(a: C64, c: C64, omega: OmegaParam, variant: LiftVariant) -> Result<[C64; 3]> {
    let w = omega.nonzero()?;
    if a.norm_sqr() == 0.0 && c.norm_sqr() == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(match variant {
        LiftVariant::Phi => [a, w * a, w * c],
        LiftVariant::Psi => [w * a, a, w * c],
    })
}

pub fn lift_line_to_e(a: C64, c: C64, omega: OmegaParam, variant: LiftVariant) -> Result<ProjVec3> {
    ProjVec::new(lift_coeffs(a, c, omega, variant)?)
}

/// Hyperplane through `x ∉ E` missing `E`, pulled back from a separating
/// line of `G₂` at `Φ_{ω*}(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparatingHyperplane {
    pub omega: OmegaParam,
    pub image: CPoint2,
    pub line: SeparatingLine,
    /// `(−μ, −μω*, ω*)`
    pub coeffs: [C64; 3],
    /// `−μ²`: the equation is `Σ coeffsⱼ yⱼ = constant`.
    pub constant: C64,
    pub hyperplane: AffineHyperplane,
}

impl SeparatingHyperplane {
    pub fn residual(&self, y: &CPoint3) -> f64 {
        let [a, b, c] = self.coeffs;
        (a * y.x1 + b * y.x2 + c * y.x3 - self.constant).norm()
    }
}

pub fn separating_hyperplane_e(x: &CPoint3) -> Result<SeparatingHyperplane> {
    let x = x.ensure_finite()?;
    if in_e(&x) {
        return Err(Error::Precondition("point lies in E".to_string()));
    }
    let omega = worst_omega(&x);
    let image = phi(omega, &x);
    let line = separating_line_g2(&image)?;
    let coeffs = lift_coeffs(line.coeffs[0], line.coeffs[1], omega, LiftVariant::Phi)?;
    Ok(SeparatingHyperplane {
        omega,
        image,
        line,
        coeffs,
        constant: line.constant,
        hyperplane: AffineHyperplane::new(x.to_array(), ProjVec::new(coeffs)?),
    })
}

/// `(∂e/∂x₁, ∂e/∂x₂, ∂e/∂x₃)` for the tetrablock defining function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WirtingerGradient {
    pub g1: C64,
    pub g2: C64,
    pub g3: C64,
}

impl WirtingerGradient {
    pub fn to_array(self) -> [C64; 3] {
        [self.g1, self.g2, self.g3]
    }
}

/// Holomorphic gradient of `e` where `u = x₁ − x̄₂x₃` and `v = x₂ − x̄₁x₃`
/// are both non-zero.
pub fn wirtinger_gradient(x: &CPoint3) -> Result<WirtingerGradient> {
    let x = x.ensure_finite()?;
    let (u, v) = (x.u(), x.v());
    let (nu, nv) = (u.norm(), v.norm());
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::Precondition(
            "gradient undefined where x1 = conj(x2) x3 or x2 = conj(x1) x3".to_string(),
        ));
    }
    let (hu, hv) = (u.conj() / (2.0 * nu), v.conj() / (2.0 * nv));
    let (ku, kv) = (u / (2.0 * nu), v / (2.0 * nv));
    Ok(WirtingerGradient {
        g1: hu - kv * x.x3.conj(),
        g2: hv - ku * x.x3.conj(),
        g3: -hu * x.x2.conj() - hv * x.x1.conj() + x.x3.conj(),
    })
}

/// The complex tangent hyperplane at a smooth boundary point of `E`.
pub fn tangent_hyperplane_smooth(x: &CPoint3, tol: &Tolerance) -> Result<AffineHyperplane> {
    match classify_boundary_e(x, tol)? {
        BoundaryClassification::SmoothBoundary => {
            let g = wirtinger_gradient(x)?;
            Ok(AffineHyperplane::new(x.to_array(), ProjVec::new(g.to_array())?))
        }
        other => Err(Error::Precondition(format!(
            "not a smooth boundary point ({})",
            variant_name(&other)
        ))),
    }
}

pub(crate) fn variant_name(c: &BoundaryClassification) -> &'static str {
    match c {
        BoundaryClassification::Interior => "interior",
        BoundaryClassification::Exterior => "exterior",
        BoundaryClassification::SmoothBoundary => "smooth boundary",
        BoundaryClassification::NonSmoothBoundary(_) => "non-smooth boundary",
    }
}

/// The boundary point of `E` on the ray `t ↦ t·dir`, by bisection.
pub fn boundary_on_ray(dir: &CPoint3) -> Result<CPoint3> {
    let dir = dir.ensure_finite()?;
    let at = |t: f64| CPoint3::new(dir.x1 * t, dir.x2 * t, dir.x3 * t);
    let mut hi = 1.0;
    while e_value(&at(hi)) <= 0.0 {
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::ZeroDirection);
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if e_value(&at(mid)) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(at(0.5 * (lo + hi)))
}

/// Membership in `Γ_E(1, r, r) = {[(−1, −ω, ω)] : |ω| ≤ 1}`.
pub fn gamma_membership_e_1rr(v: &ProjVec3, r: f64, tol: f64) -> Result<bool> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Precondition(format!("r must lie in [0, 1), got {r}")));
    }
    let [a, b, c] = v.coords();
    Ok((b + c).norm() <= tol && c.norm() <= a.norm() + tol)
}

/// Membership in `Γ_{Dⁿ}(1, …, 1)`: all non-zero components share one
/// argument.
pub fn gamma_polydisc_corner_membership<const N: usize>(v: &ProjVec<N>, tol: f64) -> bool {
    let coords = v.coords();
    let pivot = coords[v.pivot()];
    // the pivot is 1 after normalization, so every component must be a
    // non-negative real
    debug_assert!((pivot - 1.0).norm() < 1e-12);
    N >= 2 && coords.iter().all(|z| z.im.abs() <= tol && z.re >= -tol)
}
