//! The maps `Φ_ω`, `Ψ_ω = Φ_ω∘σ`, the symmetrization `π`, and the constructive
//! inverse of `Φ_ω` over `G₂,|ω|`.

use crate::domains::{e_value, g2_value, in_e, in_g2, in_g2rho, CPoint2, CPoint3, Rho, C64};
use crate::error::{Error, Result};
use crate::rng::seeded;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Slack allowed above modulus 1 when validating `ω`.
const OMEGA_SLACK: f64 = 1e-12;

/// A parameter `ω` of the closed unit disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "C64", into = "C64")]
pub struct OmegaParam(C64);

impl OmegaParam {
    pub fn new(value: C64) -> Result<Self> {
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let m = value.norm();
        if m > 1.0 + OMEGA_SLACK {
            return Err(Error::OmegaOutsideDisc(m));
        }
        Ok(Self(value))
    }

    pub const ONE: OmegaParam = OmegaParam(C64::new(1.0, 0.0));

    /// `e^{iφ}`
    pub fn unimodular(phase: f64) -> Self {
        Self(C64::from_polar(1.0, phase))
    }

    pub fn value(self) -> C64 {
        self.0
    }

    pub fn norm(self) -> f64 {
        self.0.norm()
    }

    pub(crate) fn nonzero(self) -> Result<C64> {
        if self.0 == C64::new(0.0, 0.0) {
            Err(Error::ZeroOmega)
        } else {
            Ok(self.0)
        }
    }
}

impl TryFrom<C64> for OmegaParam {
    type Error = Error;
    fn try_from(value: C64) -> Result<Self> {
        OmegaParam::new(value)
    }
}

impl From<OmegaParam> for C64 {
    fn from(w: OmegaParam) -> C64 {
        w.0
    }
}

/// `σ(x) = (x₂, x₁, x₃)`
pub fn sigma_swap(x: &CPoint3) -> CPoint3 {
    CPoint3::new(x.x2, x.x1, x.x3)
}

/// `Φ_ω(x) = (x₁ + ωx₂, ωx₃)`
pub fn phi(omega: OmegaParam, x: &CPoint3) -> CPoint2 {
    let w = omega.value();
    CPoint2::new(x.x1 + w * x.x2, w * x.x3)
}

/// `Ψ_ω(x) = Φ_ω(σ(x))`
pub fn psi(omega: OmegaParam, x: &CPoint3) -> CPoint2 {
    phi(omega, &sigma_swap(x))
}

/// `π(z₁, z₂) = (z₁ + z₂, z₁z₂)`
pub fn pi_symmetrize(z1: C64, z2: C64) -> CPoint2 {
    CPoint2::new(z1 + z2, z1 * z2)
}

/// The unimodular `ω` maximizing `g2(Φ_ω(x))` over the circle.
///
/// On the circle `g2(Φ_ω(x)) = |u + ωv| + |x₃|² − 1` with `u = x₁ − x̄₂x₃`,
/// `v = x₂ − x̄₁x₃`, so the maximum aligns `ωv` with `u`.
pub fn worst_omega(x: &CPoint3) -> OmegaParam {
    let (u, v) = (x.u(), x.v());
    let (mu, mv) = (u.norm(), v.norm());
    if mu == 0.0 || mv == 0.0 || !(mu.is_finite() && mv.is_finite()) {
        return OmegaParam::ONE;
    }
    let w = (u / mu) * (v.conj() / mv);
    OmegaParam(w / w.norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lemma1Report {
    pub direct: bool,
    pub grid_all_unimodular: bool,
    pub sampled_closed_disc: bool,
    pub margin: f64,
}

impl Lemma1Report {
    pub fn consistent(&self) -> bool {
        self.direct == self.grid_all_unimodular && self.direct == self.sampled_closed_disc
    }
}

/// Evaluate the three equivalent descriptions of `x ∈ E`: the defining
/// inequality, `Φ_ω(x) ∈ G₂` on a grid of `grid_n` unimodular phases, and
/// `Φ_ω(x) ∈ G₂` on `sample_n` area-uniform samples of the closed disc.
pub fn lemma1_equivalence_check(x: &CPoint3, grid_n: usize, sample_n: usize, seed: u64) -> Result<Lemma1Report> {
    let x = x.ensure_finite()?;
    if grid_n < 8 {
        return Err(Error::Precondition(format!("grid_n must be at least 8, got {grid_n}")));
    }
    let grid_all_unimodular = (0..grid_n).all(|k| {
        let w = OmegaParam::unimodular(TAU * k as f64 / grid_n as f64);
        in_g2(&phi(w, &x))
    });
    let mut rng = seeded(seed);
    let sampled_closed_disc = (0..sample_n).all(|_| {
        let t: f64 = rng.random();
        let th: f64 = rng.random();
        let w = OmegaParam(C64::from_polar(t.sqrt(), TAU * th));
        in_g2(&phi(w, &x))
    });
    Ok(Lemma1Report {
        direct: in_e(&x),
        grid_all_unimodular,
        sampled_closed_disc,
        margin: e_value(&x),
    })
}

/// Largest value of `g2(Φ_ω(x))` over `n` equally spaced unimodular phases.
pub fn grid_max_g2(x: &CPoint3, n: usize) -> f64 {
    (0..n)
        .map(|k| g2_value(&phi(OmegaParam::unimodular(TAU * k as f64 / n as f64), x)))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// The point `x ∈ E` with `Φ_ω(x) = q`, for `q ∈ G₂,|ω|`:
///
/// `x = ((s − s̄p)/(1 − |p|²), (s̄ − sp̄)/(1 − |p|²) · p/ω, p/ω)`.
pub fn preimage_phi(q: &CPoint2, omega: OmegaParam) -> Result<CPoint3> {
    let q = q.ensure_finite()?;
    let w = omega.nonzero()?;
    let rho = Rho::new(omega.norm().min(1.0))?;
    if !in_g2rho(&q, rho) {
        return Err(Error::Precondition(format!(
            "point is not in G2,rho with rho = |omega| = {}",
            rho.value()
        )));
    }
    let (s, p) = (q.s, q.p);
    let denom = 1.0 - p.norm_sqr();
    let x3 = p / w;
    let x1 = (s - s.conj() * p) / denom;
    let x2 = (s.conj() - s * p.conj()) / denom * x3;
    Ok(CPoint3::new(x1, x2, x3))
}
