use super::{lift_coeffs, wirtinger_gradient, LiftVariant};
use crate::domains::{
    classify_boundary_e, roots_of_pi, rotate_e, BoundaryClassification, CPoint2, CPoint3, NonSmoothCase, Rho,
    Tolerance, C64,
};
use crate::error::{Error, Result};
use crate::maps::OmegaParam;
use crate::projective::{proj_equal, ProjVec, ProjVec2, ProjVec3};
use crate::rng::{complex_gaussian, stream_rng, SeededRng};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Band for recognising a corner `{|λ₁|, |λ₂|} = {ρ, 1}`.
const CORNER_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "dim", content = "coeffs")]
pub enum ProjClass {
    Planar(ProjVec2),
    Spatial(ProjVec3),
}

/// Sampling grid for `μ₁` over the closed annulus `ρ ≤ |μ₁| ≤ 1`.
///
/// Moduli sit at `ρ^{1 − i/(m+1)}`, `i = 0..=m+1`, and phases at `2πk/n`;
/// [`RatioGrid::refined`] produces a grid containing this one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioGrid {
    pub moduli: usize,
    pub phases: usize,
}

impl Default for RatioGrid {
    fn default() -> Self {
        Self {
            moduli: 64,
            phases: 128,
        }
    }
}

impl RatioGrid {
    pub fn refined(&self) -> Self {
        Self {
            moduli: 2 * self.moduli + 1,
            phases: 2 * self.phases,
        }
    }

    fn nodes(&self, rho: f64) -> impl Iterator<Item = C64> + '_ {
        let m = self.moduli;
        let n = self.phases;
        (0..=m + 1).flat_map(move |i| {
            let t = i as f64 / (m + 1) as f64;
            let modulus = rho.powf(1.0 - t);
            (0..n).map(move |k| C64::from_polar(modulus, TAU * k as f64 / n as f64))
        })
    }
}

fn check_corner(lambda1: C64, lambda2: C64, rho: Rho) -> Result<()> {
    let (a, b) = (lambda1.norm(), lambda2.norm());
    let (lo, hi) = (a.min(b), a.max(b));
    if (lo - rho.value()).abs() <= CORNER_TOL && (hi - 1.0).abs() <= CORNER_TOL {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "root moduli ({a}, {b}) are not (rho, 1) = ({}, 1)",
            rho.value()
        )))
    }
}

/// Whether the line through the corner `π(λ₁, λ₂)` of `G₂,ρ` with slope
/// `w = Δs/Δp` misses `G₂,ρ`.
///
/// For each grid node `μ₁` the lines through the corner that meet
/// `π(μ₁, μ)`, `|μ₁μ| < ρ`, have slopes filling the open half-plane
/// `Re[(wλ₁λ₂ − λ₁λ₂/μ₁)/C(μ₁)] > 1/2`, `C(μ₁) = λ₁ + λ₂ − μ₁ − λ₁λ₂/μ₁`;
/// a member avoids all of them.
pub fn ratio_set_membership(w: C64, lambda1: C64, lambda2: C64, rho: Rho, grid: &RatioGrid) -> Result<bool> {
    check_corner(lambda1, lambda2, rho)?;
    if !(w.re.is_finite() && w.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    let prod = lambda1 * lambda2;
    let sum = lambda1 + lambda2;
    for mu1 in grid.nodes(rho.value()) {
        let c = sum - mu1 - prod / mu1;
        if c.norm() <= 1e-14 {
            if (w - mu1.inv()).norm() <= 1e-14 {
                return Ok(false);
            }
            continue;
        }
        if ((w * prod - prod / mu1) / c).re > 0.5 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Class form of [`ratio_set_membership`]: `[(a, c)]` has slope `−c/a`, and
/// `a = 0` is the line `p = p₀` with `|p₀| = ρ`, which always misses.
pub fn ratio_class_membership(
    class: &ProjVec2,
    lambda1: C64,
    lambda2: C64,
    rho: Rho,
    grid: &RatioGrid,
) -> Result<bool> {
    let [a, c] = class.coords();
    if a.norm() <= 1e-15 {
        check_corner(lambda1, lambda2, rho)?;
        return Ok(true);
    }
    ratio_set_membership(-c / a, lambda1, lambda2, rho, grid)
}

/// Slopes of members of the corner set, drawn by rejection from complex
/// Gaussians in `w` and in `1/w` (the level line `p = p₀` sits at `w = ∞`),
/// and from points of the ray `w = (1 − c·κ̄(λ − κ))/λ`, `c ≥ 0`, where `λ`
/// is the unimodular root and `κ` the other one; to first order at the corner
/// this ray is the whole set. May return fewer than `n` slopes when the set
/// is thin.
pub fn sample_ratio_slopes(
    lambda1: C64,
    lambda2: C64,
    rho: Rho,
    grid: &RatioGrid,
    n: usize,
    rng: &mut SeededRng,
) -> Result<Vec<C64>> {
    check_corner(lambda1, lambda2, rho)?;
    let (kappa, unit) = if (lambda1.norm() - 1.0).abs() < (lambda2.norm() - 1.0).abs() {
        (lambda2, lambda1)
    } else {
        (lambda1, lambda2)
    };
    let step = kappa.conj() * (unit - kappa);
    let mut out = Vec::with_capacity(n);
    let mut attempts = 0;
    while out.len() < n && attempts < 200 * n.max(1) {
        attempts += 1;
        let g = complex_gaussian(rng);
        let w = match attempts % 3 {
            0 => g,
            1 => (g * 0.5).inv(),
            _ => {
                let c = (1.0 - rng.random::<f64>()).recip() - 1.0;
                (1.0 - step * c) / unit
            }
        };
        if w.re.is_finite() && w.im.is_finite() && ratio_set_membership(w, lambda1, lambda2, rho, grid)? {
            out.push(w);
        }
    }
    Ok(out)
}

/// Supporting hyperplanes through a boundary point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum GammaSet {
    Singleton {
        class: ProjClass,
    },
    /// `{[(−1, −ω, ω)] : |ω| ≤ 1}` at `(1, r, r)`.
    OmegaFamily,
    /// The union of lifted `G₂,|ω|` sets and polydisc pieces at `(r, r, 1)`.
    UnionFamily {
        r: f64,
    },
    /// The corner set of `G₂,ρ`, described by slopes `w` accepted by
    /// [`ratio_set_membership`].
    RatioPredicate {
        lambda1: C64,
        lambda2: C64,
        rho: Rho,
        grid: RatioGrid,
    },
}

/// `Γ_{G₂,ρ}(q)` for a boundary point `q`, `ρ < 1`.
pub fn gamma_g2rho(q: &CPoint2, rho: Rho, tol: f64) -> Result<GammaSet> {
    let q = q.ensure_finite()?;
    let r = rho.value();
    if r >= 1.0 {
        return Err(Error::Precondition("rho must be below 1".to_string()));
    }
    let roots = roots_of_pi(&q);
    let (l1, l2) = (roots.lambda1, roots.lambda2);
    let (m1, m2) = (l1.norm(), l2.norm());
    let pm = q.p.norm();
    let on_boundary = pm <= r + tol && m2 <= 1.0 + tol && (pm >= r - tol || m2 >= 1.0 - tol);
    if !on_boundary {
        return Err(Error::Precondition(format!(
            "point is not on the boundary of G2,rho (|p| = {pm}, max root modulus = {m2})"
        )));
    }
    let unit = (m2 - 1.0).abs() <= tol;
    let at_rho = (m1 - r).abs() <= tol;
    let pencil = unit && m1 < r - tol;
    let flat = (pm - r).abs() <= tol && m1 > r + tol && m2 < 1.0 - tol;
    let corner = unit && at_rho;
    match (pencil, flat, corner) {
        (true, false, false) => Ok(GammaSet::Singleton {
            class: ProjClass::Planar(ProjVec::new([-l2, C64::new(1.0, 0.0)])?),
        }),
        (false, true, false) => Ok(GammaSet::Singleton {
            class: ProjClass::Planar(ProjVec2::from_real([0.0, 1.0])?),
        }),
        (false, false, true) => Ok(GammaSet::RatioPredicate {
            lambda1: l1,
            lambda2: l2,
            rho,
            grid: RatioGrid::default(),
        }),
        _ => {
            let first = if unit {
                "root-pencil singleton"
            } else {
                "p-level singleton"
            };
            let second = if at_rho || m1 <= r + tol {
                "corner ratio set"
            } else {
                "p-level singleton"
            };
            Err(Error::Degenerate(format!(
                "{first} and {second} (root moduli {m1}, {m2}, rho {r}, tol {tol})"
            )))
        }
    }
}

/// Rotation taking the caller's point to its canonical form, and whether
/// coordinates 1 and 2 are exchanged on top of it.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Frame {
    pub theta: f64,
    pub tau: f64,
    pub swapped: bool,
}

impl Frame {
    fn phases(&self) -> [f64; 3] {
        [self.theta, self.tau, self.theta + self.tau]
    }

    /// Normals at the canonical point, seen from the caller's frame.
    pub fn to_caller(&self, v: &ProjVec3) -> ProjVec3 {
        let mut c = v.coords();
        if self.swapped {
            c.swap(0, 1);
        }
        let ph = self.phases();
        ProjVec::new(std::array::from_fn(|j| c[j] * C64::from_polar(1.0, -ph[j])))
            .expect("rotation preserves non-zero vectors")
    }

    pub fn to_canonical(&self, v: &ProjVec3) -> ProjVec3 {
        let c = v.coords();
        let ph = self.phases();
        let mut out: [C64; 3] = std::array::from_fn(|j| c[j] * C64::from_polar(1.0, ph[j]));
        if self.swapped {
            out.swap(0, 1);
        }
        ProjVec::new(out).expect("rotation preserves non-zero vectors")
    }
}

/// One piece of the union describing `Γ_E(r, r, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SubFamily {
    /// `0 < |ω| < 1`: lifts of `Γ_{G₂,|ω|}(r + rω, ω)` by `Φ_ω` and `Ψ_ω`.
    Lifted {
        omega: C64,
        image: CPoint2,
        planar: GammaSet,
    },
    /// `|ω| = 1`: both roots of the image are unimodular; the root pencils and
    /// the line `p = ω` miss `G₂`.
    Torus {
        omega: C64,
        image: CPoint2,
        lambda1: C64,
        lambda2: C64,
    },
    /// `[(s̃, 0, p̃)]`, `[(0, s̃, p̃)]` for `[(s̃, p̃)] ∈ Γ_{D²}(r, 1)`.
    Polydisc { r: f64 },
}

impl SubFamily {
    pub fn omega(&self) -> Option<C64> {
        match self {
            Self::Lifted { omega, .. } | Self::Torus { omega, .. } => Some(*omega),
            Self::Polydisc { .. } => None,
        }
    }

    /// The planar `G₂,|ω|` point the piece is built on.
    pub fn image(&self) -> Option<CPoint2> {
        match self {
            Self::Lifted { image, .. } | Self::Torus { image, .. } => Some(*image),
            Self::Polydisc { .. } => None,
        }
    }

    /// Planar classes of the piece: the full set for singletons and pencils,
    /// a sample for the corner and polydisc sets. `[(0, 1)]` comes first
    /// whenever it belongs to the piece.
    pub fn planar_members(&self, n: usize, rng: &mut SeededRng) -> Result<Vec<ProjVec2>> {
        let one = C64::new(1.0, 0.0);
        let horizontal = ProjVec2::from_real([0.0, 1.0])?;
        match self {
            Self::Lifted { planar, .. } => match planar {
                GammaSet::Singleton {
                    class: ProjClass::Planar(v),
                } => Ok(vec![*v]),
                GammaSet::RatioPredicate {
                    lambda1,
                    lambda2,
                    rho,
                    grid,
                } => {
                    let mut out = vec![horizontal];
                    for w in sample_ratio_slopes(*lambda1, *lambda2, *rho, grid, n, rng)? {
                        out.push(ProjVec::new([one, -w])?);
                    }
                    Ok(out)
                }
                _ => Err(Error::Precondition("unexpected planar set".to_string())),
            },
            Self::Torus { lambda1, lambda2, .. } => Ok(vec![
                horizontal,
                ProjVec::new([-*lambda1, one])?,
                ProjVec::new([-*lambda2, one])?,
            ]),
            Self::Polydisc { r } => {
                let mut out = vec![horizontal];
                if *r >= 1.0 {
                    for _ in 0..n {
                        let t: [f64; 2] = [rng.random(), rng.random()];
                        if t != [0.0, 0.0] {
                            out.push(ProjVec2::from_real(t)?);
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    /// Lifts of the planar members to `C³`, in the canonical frame.
    pub fn members(&self, n: usize, rng: &mut SeededRng) -> Result<Vec<ProjVec3>> {
        let planar = self.planar_members(n, rng)?;
        let mut out = Vec::with_capacity(2 * planar.len());
        match self.omega() {
            Some(w) => {
                let omega = OmegaParam::new(w)?;
                for v in planar {
                    let [a, c] = v.coords();
                    for variant in [LiftVariant::Phi, LiftVariant::Psi] {
                        out.push(ProjVec::new(lift_coeffs(a, c, omega, variant)?)?);
                    }
                }
            }
            None => {
                let zero = C64::new(0.0, 0.0);
                for v in planar {
                    let [s, p] = v.coords();
                    out.push(ProjVec::new([s, zero, p])?);
                    out.push(ProjVec::new([zero, s, p])?);
                }
            }
        }
        Ok(out)
    }
}

/// `Γ_E(x)` at a boundary point, described at the canonical point of `x`
/// together with the frame change back to `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FramedGamma {
    pub point: CPoint3,
    pub classification: BoundaryClassification,
    pub canonical: CPoint3,
    pub frame: Frame,
    pub set: GammaSet,
}

pub fn gamma_e_point(x: &CPoint3, tol: &Tolerance) -> Result<FramedGamma> {
    let classification = classify_boundary_e(x, tol)?;
    let (canonical, frame, set) = match classification {
        BoundaryClassification::Interior | BoundaryClassification::Exterior => {
            return Err(Error::Precondition(format!(
                "not a boundary point of E ({})",
                super::variant_name(&classification)
            )))
        }
        BoundaryClassification::SmoothBoundary => {
            let g = wirtinger_gradient(x)?;
            (
                *x,
                Frame::default(),
                GammaSet::Singleton {
                    class: ProjClass::Spatial(ProjVec::new(g.to_array())?),
                },
            )
        }
        BoundaryClassification::NonSmoothBoundary(form) => {
            let frame = Frame {
                theta: form.theta,
                tau: form.tau,
                swapped: form.case == NonSmoothCase::R1R,
            };
            let set = match form.case {
                NonSmoothCase::RR1 => GammaSet::UnionFamily { r: form.r },
                NonSmoothCase::OneRR | NonSmoothCase::R1R => GammaSet::OmegaFamily,
            };
            (form.canonical_point(), frame, set)
        }
    };
    Ok(FramedGamma {
        point: *x,
        classification,
        canonical,
        frame,
        set,
    })
}

/// Points of the closed unit disc on `rings` concentric circles (the last
/// one the unit circle) plus the origin, with seeded phase offsets.
fn omega_rings(n: usize, rings: usize, rng: &mut SeededRng) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0)];
    let per_ring = n.saturating_sub(1).div_ceil(rings).max(1);
    for k in 1..=rings {
        let modulus = k as f64 / rings as f64;
        let offset: f64 = rng.random();
        for j in 0..per_ring {
            out.push(C64::from_polar(modulus, TAU * (j as f64 + offset) / per_ring as f64));
        }
    }
    out.truncate(n.max(1));
    out
}

impl FramedGamma {
    /// The pieces of a union family, for `ω` on rings of the punctured disc
    /// plus the polydisc piece. Empty for the other variants.
    pub fn subfamilies(&self, n: usize, seed: u64) -> Result<Vec<SubFamily>> {
        let GammaSet::UnionFamily { r } = self.set else {
            return Ok(Vec::new());
        };
        let mut rng = stream_rng(seed, 1);
        let mut out = Vec::new();
        for w in omega_rings(n.saturating_sub(1).max(1) + 1, 4, &mut rng)
            .into_iter()
            .skip(1)
        {
            let image = CPoint2::new(r * (1.0 + w), w);
            let modulus = w.norm();
            if modulus >= 1.0 - 1e-12 {
                let roots = roots_of_pi(&image);
                out.push(SubFamily::Torus {
                    omega: w,
                    image,
                    lambda1: roots.lambda1,
                    lambda2: roots.lambda2,
                });
            } else {
                match gamma_g2rho(&image, Rho::new(modulus)?, 1e-9) {
                    Ok(planar) => out.push(SubFamily::Lifted {
                        omega: w,
                        image,
                        planar,
                    }),
                    // near-degenerate nodes add nothing the neighbours miss
                    Err(Error::Degenerate(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        out.push(SubFamily::Polydisc { r });
        Ok(out)
    }

    /// `n` members (fewer for singletons) in the caller's frame.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<ProjVec3>> {
        let mut rng = stream_rng(seed, 2);
        let canonical: Vec<ProjVec3> = match self.set {
            GammaSet::Singleton {
                class: ProjClass::Spatial(v),
            } => return Ok(vec![v]),
            GammaSet::Singleton { .. } | GammaSet::RatioPredicate { .. } => {
                return Err(Error::Precondition("planar set attached to E".to_string()))
            }
            GammaSet::OmegaFamily => omega_rings(n, 4, &mut rng)
                .into_iter()
                .map(|w| ProjVec::new([C64::new(-1.0, 0.0), -w, w]))
                .collect::<Result<_>>()?,
            GammaSet::UnionFamily { .. } => {
                let subs = self.subfamilies(n.div_ceil(4).max(2), seed)?;
                let mut all = Vec::new();
                for sub in &subs {
                    all.extend(sub.members(2, &mut rng)?);
                }
                // spread the budget evenly over the pieces
                let step = (all.len() as f64 / n.max(1) as f64).max(1.0);
                let mut picked = Vec::with_capacity(n);
                let mut t = 0.0;
                while (t as usize) < all.len() && picked.len() < n {
                    picked.push(all[t as usize]);
                    t += step;
                }
                picked
            }
        };
        Ok(canonical.iter().map(|v| self.frame.to_caller(v)).collect())
    }

    /// Exact membership where the description is closed-form.
    pub fn contains(&self, v: &ProjVec3, tol: f64) -> Option<bool> {
        match self.set {
            GammaSet::Singleton {
                class: ProjClass::Spatial(s),
            } => Some(proj_equal(&s, v, tol)),
            GammaSet::OmegaFamily => {
                let r = match self.classification {
                    BoundaryClassification::NonSmoothBoundary(f) => f.r,
                    _ => return None,
                };
                super::gamma_membership_e_1rr(&self.frame.to_canonical(v), r, tol).ok()
            }
            _ => None,
        }
    }
}

/// Rotate a point into the frame where `gamma_e_point` describes it.
pub fn canonicalize(x: &CPoint3, frame: &Frame) -> CPoint3 {
    let y = rotate_e(frame.theta, frame.tau, x);
    if frame.swapped {
        CPoint3::new(y.x2, y.x1, y.x3)
    } else {
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn rho(v: f64) -> Rho {
        Rho::new(v).unwrap()
    }

    #[test]
    fn g2rho_bullet_examples() {
        let q = crate::maps::pi_symmetrize(c(0.2, 0.0), c(1.0, 0.0));
        match gamma_g2rho(&q, rho(0.5), 1e-9).unwrap() {
            GammaSet::Singleton {
                class: ProjClass::Planar(v),
            } => assert!(proj_equal(&v, &ProjVec2::from_real([-1.0, 1.0]).unwrap(), 1e-12)),
            other => panic!("{other:?}"),
        }
        let q = crate::maps::pi_symmetrize(C64::from_polar(0.7, 0.4), C64::from_polar(0.5 / 0.7, -1.1));
        match gamma_g2rho(&q, rho(0.5), 1e-9).unwrap() {
            GammaSet::Singleton {
                class: ProjClass::Planar(v),
            } => assert!(proj_equal(&v, &ProjVec2::from_real([0.0, 1.0]).unwrap(), 1e-12)),
            other => panic!("{other:?}"),
        }
        let q = CPoint2::real(1.5, 0.5);
        assert!(matches!(
            gamma_g2rho(&q, rho(0.5), 1e-9).unwrap(),
            GammaSet::RatioPredicate { .. }
        ));
    }

    #[test]
    fn g2rho_rejects_non_boundary_points() {
        assert!(matches!(
            gamma_g2rho(&CPoint2::real(0.0, 0.0), rho(0.5), 1e-9),
            Err(Error::Precondition(_))
        ));
        assert!(gamma_g2rho(&CPoint2::real(1.5, 0.5), Rho::ONE, 1e-9).is_err());
        // |λ₁| just under ρ by less than tol, |λ₂| = 1
        let q = crate::maps::pi_symmetrize(c(0.5 - 1e-7, 0.0), c(1.0, 0.0));
        assert!(matches!(
            gamma_g2rho(&q, rho(0.5), 1e-6).unwrap(),
            GammaSet::RatioPredicate { .. }
        ));
        let q = crate::maps::pi_symmetrize(c(0.5 - 1e-5, 0.0), c(1.0, 0.0));
        assert!(matches!(
            gamma_g2rho(&q, rho(0.5), 1e-6).unwrap(),
            GammaSet::Singleton { .. }
        ));
    }

    #[test]
    fn ratio_set_examples() {
        let (l1, l2, r) = (c(0.5, 0.0), c(1.0, 0.0), rho(0.5));
        let grid = RatioGrid::default();
        assert!(ratio_set_membership(c(0.0, 0.0), l1, l2, r, &grid).unwrap());
        // the line through (1.5, 0.5) and π(0.6, 0.6) = (1.2, 0.36) has
        // coefficient ratio a/c = −7/15, slope 15/7
        assert!(!ratio_set_membership(c(15.0 / 7.0, 0.0), l1, l2, r, &grid).unwrap());
        let class = ProjVec2::from_real([-7.0, 15.0]).unwrap();
        assert!(!ratio_class_membership(&class, l1, l2, r, &grid).unwrap());
        let horizontal = ProjVec2::from_real([0.0, 1.0]).unwrap();
        assert!(ratio_class_membership(&horizontal, l1, l2, r, &grid).unwrap());
        assert!(ratio_set_membership(c(0.0, 0.0), c(0.3, 0.0), l2, r, &grid).is_err());
    }

    #[test]
    fn ratio_grid_refinement_is_nested() {
        let g = RatioGrid { moduli: 3, phases: 4 };
        let fine: Vec<C64> = g.refined().nodes(0.4).collect();
        for z in g.nodes(0.4) {
            assert!(fine.iter().any(|f| (f - z).norm() < 1e-14));
        }
    }

    #[test]
    fn gamma_e_dispatch_examples() {
        let tol = Tolerance::default();
        let g = gamma_e_point(&CPoint3::real(1.0, 0.3, 0.3), &tol).unwrap();
        assert_eq!(g.set, GammaSet::OmegaFamily);
        let g = gamma_e_point(&CPoint3::real(0.5, 0.5, 1.0), &tol).unwrap();
        assert_eq!(g.set, GammaSet::UnionFamily { r: 0.5 });
        let e3 = ProjVec3::from_real([0.0, 0.0, 1.0]).unwrap();
        assert!(g.sample(40, 7).unwrap().iter().any(|v| proj_equal(v, &e3, 1e-12)));
        assert!(gamma_e_point(&CPoint3::real(0.1, 0.0, 0.0), &tol).is_err());
    }

    #[test]
    fn omega_family_samples_are_members_in_any_frame() {
        let tol = Tolerance::default();
        let x = rotate_e(-0.8, 2.1, &CPoint3::real(1.0, 0.3, 0.3));
        let g = gamma_e_point(&x, &tol).unwrap();
        for v in g.sample(50, 3).unwrap() {
            assert_eq!(g.contains(&v, 1e-9), Some(true));
        }
        let x = rotate_e(0.4, -1.3, &CPoint3::real(0.3, 1.0, 0.3));
        let g = gamma_e_point(&x, &tol).unwrap();
        assert!(g.frame.swapped);
        let samples = g.sample(50, 3).unwrap();
        assert_eq!(samples.len(), 50);
        for v in samples {
            assert_eq!(g.contains(&v, 1e-9), Some(true));
        }
    }

    #[test]
    fn union_family_pieces_contain_the_common_class() {
        let g = gamma_e_point(&CPoint3::real(0.4, 0.4, 1.0), &Tolerance::default()).unwrap();
        let subs = g.subfamilies(24, 5).unwrap();
        assert!(subs.iter().any(|s| matches!(s, SubFamily::Torus { .. })));
        assert!(subs.iter().any(|s| matches!(s, SubFamily::Polydisc { .. })));
        let e3 = ProjVec3::from_real([0.0, 0.0, 1.0]).unwrap();
        let mut rng = seeded(1);
        for s in subs {
            let members = s.members(3, &mut rng).unwrap();
            assert!(proj_equal(&members[0], &e3, 1e-12), "{s:?}");
        }
    }

    #[test]
    fn corner_pieces_appear_at_r_one() {
        let g = gamma_e_point(&CPoint3::real(1.0, 1.0, 1.0), &Tolerance::default()).unwrap();
        assert_eq!(g.set, GammaSet::UnionFamily { r: 1.0 });
        let subs = g.subfamilies(12, 2).unwrap();
        assert!(subs.iter().any(|s| matches!(
            s,
            SubFamily::Lifted {
                planar: GammaSet::RatioPredicate { .. },
                ..
            }
        )));
    }
}
