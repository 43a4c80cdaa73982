//! Defining functions, membership predicates and boundary classification for
//! the tetrablock `E ⊂ C³`, the symmetrized bidisc `G₂ ⊂ C²`, the family
//! `G₂,ρ = π(D_ρ)` and the polydiscs that bound them.
//!
//! Every defining function here is negative exactly on its (open) domain.

mod shapes;

pub use shapes::{DRhoDomain, Domain, G2RhoDomain, Polydisc, PuncturedBidisc, SymmetrizedBidisc, Tetrablock};

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

pub type C64 = Complex64;

/// Point of C³, the ambient space of the tetrablock.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CPoint3 {
    pub x1: C64,
    pub x2: C64,
    pub x3: C64,
}

impl CPoint3 {
    pub const fn new(x1: C64, x2: C64, x3: C64) -> Self {
        Self { x1, x2, x3 }
    }

    pub fn real(x1: f64, x2: f64, x3: f64) -> Self {
        Self::new(C64::new(x1, 0.0), C64::new(x2, 0.0), C64::new(x3, 0.0))
    }

    pub fn to_array(self) -> [C64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn from_array([x1, x2, x3]: [C64; 3]) -> Self {
        Self { x1, x2, x3 }
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|z| z.is_finite())
    }

    pub fn ensure_finite(self) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite)
        }
    }

    /// Max-norm distance to `other`.
    pub fn dist_inf(&self, other: &CPoint3) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `x₁ − x̄₂x₃`
    pub fn u(&self) -> C64 {
        self.x1 - self.x2.conj() * self.x3
    }

    /// `x₂ − x̄₁x₃`
    pub fn v(&self) -> C64 {
        self.x2 - self.x1.conj() * self.x3
    }
}

/// Point `(s, p)` of C², the ambient space of the symmetrized bidisc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CPoint2 {
    pub s: C64,
    pub p: C64,
}

impl CPoint2 {
    pub const fn new(s: C64, p: C64) -> Self {
        Self { s, p }
    }

    pub fn real(s: f64, p: f64) -> Self {
        Self::new(C64::new(s, 0.0), C64::new(p, 0.0))
    }

    pub fn to_array(self) -> [C64; 2] {
        [self.s, self.p]
    }

    pub fn from_array([s, p]: [C64; 2]) -> Self {
        Self { s, p }
    }

    pub fn is_finite(&self) -> bool {
        self.s.is_finite() && self.p.is_finite()
    }

    pub fn ensure_finite(self) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn dist_inf(&self, other: &CPoint2) -> f64 {
        (self.s - other.s).norm().max((self.p - other.p).norm())
    }
}

/// The two roots of `z² − sz + p`, ordered by modulus.
///
/// Equal moduli are ordered by principal argument taken in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootPair {
    pub lambda1: C64,
    pub lambda2: C64,
}

/// Relative gap under which two root moduli count as equal.
pub(crate) const ROOT_TIE_REL: f64 = 1e-12;

impl RootPair {
    pub fn new(a: C64, b: C64) -> Self {
        if root_precedes(b, a) {
            Self { lambda1: b, lambda2: a }
        } else {
            Self { lambda1: a, lambda2: b }
        }
    }

    /// Whether the two roots have (numerically) equal modulus.
    pub fn is_modulus_tie(&self) -> bool {
        let (m1, m2) = (self.lambda1.norm(), self.lambda2.norm());
        (m2 - m1) <= ROOT_TIE_REL * m2.max(f64::MIN_POSITIVE)
    }

    pub fn symmetrize(&self) -> CPoint2 {
        CPoint2::new(self.lambda1 + self.lambda2, self.lambda1 * self.lambda2)
    }
}

fn arg_0_2pi(z: C64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

/// Ordering used by [`RootPair`]: smaller modulus first, ties by argument.
fn root_precedes(a: C64, b: C64) -> bool {
    let (ma, mb) = (a.norm(), b.norm());
    let scale = ma.max(mb).max(f64::MIN_POSITIVE);
    if (ma - mb).abs() <= ROOT_TIE_REL * scale {
        arg_0_2pi(a) < arg_0_2pi(b)
    } else {
        ma < mb
    }
}

/// Radius parameter of `D_ρ` and `G₂,ρ`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Rho(f64);

impl Rho {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 && value <= 1.0 {
            Ok(Self(value))
        } else {
            Err(Error::InvalidRho(value))
        }
    }

    pub const ONE: Rho = Rho(1.0);

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Rho {
    type Error = Error;
    fn try_from(value: f64) -> Result<Self> {
        Rho::new(value)
    }
}

impl From<Rho> for f64 {
    fn from(r: Rho) -> f64 {
        r.0
    }
}

/// Numerical bands used by boundary classification and projective comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub membership_tol: f64,
    pub proj_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            membership_tol: 1e-9,
            proj_tol: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(membership_tol: f64, proj_tol: f64) -> Result<Self> {
        if membership_tol > 0.0 && proj_tol > 0.0 {
            Ok(Self {
                membership_tol,
                proj_tol,
            })
        } else {
            Err(Error::Precondition("tolerances must be positive".to_string()))
        }
    }

    pub fn uniform(tol: f64) -> Result<Self> {
        Self::new(tol, tol)
    }

    /// Band for matching a boundary point against the non-smooth
    /// parametrizations.
    ///
    /// Near the non-smooth locus the defining function factors as a product
    /// of two small terms, so a defining value of `tol` allows coordinate
    /// deviations of order `sqrt(tol)`.
    pub fn param_tol(&self) -> f64 {
        self.membership_tol.sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NonSmoothCase {
    /// `(re^{iθ}, re^{iτ}, e^{i(θ+τ)})`, canonical point `(r, r, 1)`.
    RR1,
    /// `(e^{iθ}, re^{iτ}, re^{i(θ+τ)})`, canonical point `(1, r, r)`.
    OneRR,
    /// `(re^{iθ}, e^{iτ}, re^{i(θ+τ)})`, canonical point `(r, 1, r)`.
    R1R,
}

impl NonSmoothCase {
    pub const ALL: [NonSmoothCase; 3] = [Self::RR1, Self::OneRR, Self::R1R];

    pub fn canonical_point(self, r: f64) -> CPoint3 {
        match self {
            Self::RR1 => CPoint3::real(r, r, 1.0),
            Self::OneRR => CPoint3::real(1.0, r, r),
            Self::R1R => CPoint3::real(r, 1.0, r),
        }
    }
}

/// Parameters `(case, r, θ, τ)` of a non-smooth boundary point: rotating the
/// point by `rotate_e(θ, τ, ·)` lands on the case's canonical point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub case: NonSmoothCase,
    pub r: f64,
    pub theta: f64,
    pub tau: f64,
}

impl CanonicalForm {
    pub fn canonical_point(&self) -> CPoint3 {
        self.case.canonical_point(self.r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum BoundaryClassification {
    Interior,
    Exterior,
    SmoothBoundary,
    NonSmoothBoundary(CanonicalForm),
}

impl BoundaryClassification {
    pub fn is_boundary(&self) -> bool {
        matches!(self, Self::SmoothBoundary | Self::NonSmoothBoundary(_))
    }
}

pub(crate) fn e_value(x: &CPoint3) -> f64 {
    x.u().norm() + x.v().norm() + x.x3.norm_sqr() - 1.0
}

pub(crate) fn g2_value(q: &CPoint2) -> f64 {
    (q.s - q.s.conj() * q.p).norm() + q.p.norm_sqr() - 1.0
}

/// Tetrablock defining function `|x₁ − x̄₂x₃| + |x₂ − x̄₁x₃| + |x₃|² − 1`.
pub fn e_defining(x: &CPoint3) -> Result<f64> {
    x.ensure_finite().map(|x| e_value(&x))
}

/// Symmetrized bidisc defining function `|s − s̄p| + |p|² − 1`.
pub fn g2_defining(q: &CPoint2) -> Result<f64> {
    q.ensure_finite().map(|q| g2_value(&q))
}

/// Defining function of `G₂,ρ`: `max(|λ₂| − 1, |p| − ρ)` with `λ₂` the
/// larger root of `z² − sz + p`.
pub fn g2rho_defining(q: &CPoint2, rho: Rho) -> Result<f64> {
    let q = q.ensure_finite()?;
    let roots = roots_of_pi(&q);
    Ok((roots.lambda2.norm() - 1.0).max(q.p.norm() - rho.value()))
}

pub fn in_e(x: &CPoint3) -> bool {
    e_value(x) < 0.0
}

pub fn in_g2(q: &CPoint2) -> bool {
    g2_value(q) < 0.0
}

/// Open unit polydisc membership of the first `n` coordinates.
pub fn in_polydisc(z: &[C64], n: usize) -> bool {
    z.len() >= n && z[..n].iter().all(|c| c.norm() < 1.0)
}

/// Roots of `z² − sz + p`.
///
/// The larger-magnitude root is formed first, choosing the sign of the square
/// root that avoids cancellation, and the other root is recovered from the
/// product `p`.
pub fn roots_of_pi(q: &CPoint2) -> RootPair {
    let (s, p) = (q.s, q.p);
    let mut d = (s * s - 4.0 * p).sqrt();
    if (s.conj() * d).re < 0.0 {
        d = -d;
    }
    let big = (s + d) * 0.5;
    if big == C64::new(0.0, 0.0) {
        return RootPair::new(big, big);
    }
    RootPair::new(p / big, big)
}

/// `|z₁| < 1 ∧ |z₂| < 1 ∧ |z₁z₂| < ρ`
pub fn in_drho(z: &CPoint2, rho: Rho) -> bool {
    let (z1, z2) = (z.s, z.p);
    z1.norm() < 1.0 && z2.norm() < 1.0 && (z1 * z2).norm() < rho.value()
}

/// Membership in `G₂,ρ = π(D_ρ)`: both roots in the open unit disc and
/// `|p| < ρ`.
pub fn in_g2rho(q: &CPoint2, rho: Rho) -> bool {
    // both roots inside the disc forces |s| < 2
    if !(q.p.norm() < rho.value()) || !(q.s.norm() < 2.0) {
        return false;
    }
    roots_of_pi(q).lambda2.norm() < 1.0
}

/// The automorphism `(e^{−iθ}y₁, e^{−iτ}y₂, e^{−i(θ+τ)}y₃)` of `E`.
pub fn rotate_e(theta: f64, tau: f64, y: &CPoint3) -> CPoint3 {
    CPoint3::new(
        y.x1 * C64::from_polar(1.0, -theta),
        y.x2 * C64::from_polar(1.0, -tau),
        y.x3 * C64::from_polar(1.0, -(theta + tau)),
    )
}

/// Wrap an angle into `(−π, π]`.
pub(crate) fn wrap_angle(a: f64) -> f64 {
    let w = a.rem_euclid(TAU);
    if w > PI {
        w - TAU
    } else {
        w
    }
}

fn extract_params(case: NonSmoothCase, x: &CPoint3, small: f64) -> CanonicalForm {
    let (m1, m2, m3) = (x.x1.norm(), x.x2.norm(), x.x3.norm());
    let (r, theta, tau) = match case {
        NonSmoothCase::RR1 => {
            let r = 0.5 * (m1 + m2);
            let theta = if m1 > small { x.x1.arg() } else { 0.0 };
            (r, theta, x.x3.arg() - theta)
        }
        NonSmoothCase::OneRR => {
            let r = 0.5 * (m2 + m3);
            let theta = x.x1.arg();
            let tau = if m2 > small {
                x.x2.arg()
            } else if m3 > small {
                x.x3.arg() - theta
            } else {
                0.0
            };
            (r, theta, tau)
        }
        NonSmoothCase::R1R => {
            let r = 0.5 * (m1 + m3);
            let tau = x.x2.arg();
            let theta = if m1 > small {
                x.x1.arg()
            } else if m3 > small {
                x.x3.arg() - tau
            } else {
                0.0
            };
            (r, theta, tau)
        }
    };
    CanonicalForm {
        case,
        r: r.clamp(0.0, 1.0),
        theta: wrap_angle(theta),
        tau: wrap_angle(tau),
    }
}

/// Classify `x` relative to `E`.
///
/// Points with `|e_defining(x)| ≤ membership_tol` are boundary points; a
/// boundary point is smooth when both `|x₁ − x̄₂x₃|` and `|x₂ − x̄₁x₃|`
/// exceed the tolerance. Non-smooth points are matched against the three
/// parametrizations in the order RR1, OneRR, R1R; the first match wins.
pub fn classify_boundary_e(x: &CPoint3, tol: &Tolerance) -> Result<BoundaryClassification> {
    let e = e_defining(x)?;
    let t = tol.membership_tol;
    if e < -t {
        return Ok(BoundaryClassification::Interior);
    }
    if e > t {
        return Ok(BoundaryClassification::Exterior);
    }
    if x.u().norm() > t && x.v().norm() > t {
        return Ok(BoundaryClassification::SmoothBoundary);
    }
    let band = tol.param_tol();
    let mut best = f64::INFINITY;
    for case in NonSmoothCase::ALL {
        let form = extract_params(case, x, band);
        let residual = rotate_e(form.theta, form.tau, x).dist_inf(&form.canonical_point());
        if residual <= band {
            return Ok(BoundaryClassification::NonSmoothBoundary(form));
        }
        best = best.min(residual);
    }
    Err(Error::InconsistentBoundary { residual: best })
}
