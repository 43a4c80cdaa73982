use crate::domains::{BoundaryClassification, CPoint3, G2RhoDomain, NonSmoothCase, Rho, Tetrablock, Tolerance};
use crate::error::{Error, Result};
use crate::hyperplanes::{gamma_e_point, hyperplane_misses_domain, MissCheck};
use crate::projective::{proj_equal, Hyperplane, ProjVec2, ProjVec3};
use crate::rng::stream_rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub case: NonSmoothCase,
    pub r: f64,
    pub members_sampled: usize,
    pub members_missing: usize,
    /// `(r, r, 1)` only: `[(0, 0, 1)]` misses `E`.
    pub common_class_misses: Option<bool>,
    /// `(r, r, 1)` only: pieces of the union checked for the common class.
    pub subfamilies_checked: usize,
    /// Pieces whose planar set contains `[(0, 1)]` (checked numerically
    /// against `G₂,|ω|`) and whose first lifted member is `[(0, 0, 1)]`.
    pub subfamilies_with_common_class: usize,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.members_missing == self.members_sampled
            && self.common_class_misses.unwrap_or(true)
            && self.subfamilies_with_common_class == self.subfamilies_checked
    }
}

fn canonical_case(x: &CPoint3) -> Option<(NonSmoothCase, f64)> {
    let eps = 1e-12;
    let real = [x.x1, x.x2, x.x3].iter().all(|z| z.im.abs() <= eps && z.re >= -eps);
    if !real {
        return None;
    }
    let (a, b, c) = (x.x1.re, x.x2.re, x.x3.re);
    if (c - 1.0).abs() <= eps && (a - b).abs() <= eps && a <= 1.0 + eps {
        Some((NonSmoothCase::RR1, a))
    } else if (a - 1.0).abs() <= eps && (b - c).abs() <= eps && b < 1.0 {
        Some((NonSmoothCase::OneRR, b))
    } else if (b - 1.0).abs() <= eps && (a - c).abs() <= eps && a < 1.0 {
        Some((NonSmoothCase::R1R, a))
    } else {
        None
    }
}

/// Sample `Γ_E(x)` at a canonical non-smooth point and check every member
/// numerically; at `(r, r, 1)` also check that each piece of the union
/// contains the common class `[(0, 0, 1)]`.
pub fn gamma_probe(x: &CPoint3, n_samples: usize, seed: u64, check: &MissCheck) -> Result<ProbeReport> {
    let (case, r) = canonical_case(x).ok_or_else(|| {
        Error::Precondition("expected (r, r, 1), (1, r, r) or (r, 1, r) with r in [0, 1]".to_string())
    })?;
    let gamma = gamma_e_point(x, &Tolerance::default())?;
    debug_assert!(matches!(
        gamma.classification,
        BoundaryClassification::NonSmoothBoundary(_)
    ));
    let members = gamma.sample(n_samples, seed)?;
    let base = x.to_array();
    let mut missing = 0;
    for (i, v) in members.iter().enumerate() {
        let cfg = MissCheck {
            seed: check.seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15),
            ..*check
        };
        if hyperplane_misses_domain(&Hyperplane::new(base, *v), &Tetrablock, &cfg).misses {
            missing += 1;
        }
    }
    let mut report = ProbeReport {
        case,
        r,
        members_sampled: members.len(),
        members_missing: missing,
        common_class_misses: None,
        subfamilies_checked: 0,
        subfamilies_with_common_class: 0,
    };
    if case != NonSmoothCase::RR1 {
        return Ok(report);
    }
    let e3 = ProjVec3::from_real([0.0, 0.0, 1.0])?;
    report.common_class_misses = Some(hyperplane_misses_domain(&Hyperplane::new(base, e3), &Tetrablock, check).misses);
    let horizontal = ProjVec2::from_real([0.0, 1.0])?;
    let mut rng = stream_rng(seed, 3);
    let subs = gamma.subfamilies(n_samples.max(8), seed)?;
    report.subfamilies_checked = subs.len();
    for sub in &subs {
        let members = sub.members(2, &mut rng)?;
        let lifted_ok = members.first().is_some_and(|m| proj_equal(m, &e3, 1e-9));
        let planar_ok = match (sub.omega(), sub.image()) {
            (Some(w), Some(q)) => {
                let domain = G2RhoDomain::new(Rho::new(w.norm().min(1.0))?);
                let line = Hyperplane::new([q.s, q.p], horizontal);
                hyperplane_misses_domain(
                    &line,
                    &domain,
                    &MissCheck {
                        samples: check.samples.min(20_000),
                        ..*check
                    },
                )
                .misses
            }
            // the polydisc piece: the line y₃ = 1 misses |y₃| < 1
            _ => sub.planar_members(1, &mut rng)?[0] == horizontal,
        };
        if lifted_ok && planar_ok {
            report.subfamilies_with_common_class += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probe_examples() {
        let check = MissCheck::with_samples(3000, 1);
        let rep = gamma_probe(&CPoint3::real(0.5, 0.5, 1.0), 16, 2, &check).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.common_class_misses, Some(true));
        let rep = gamma_probe(&CPoint3::real(1.0, 0.3, 0.3), 16, 2, &check).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let rep = gamma_probe(&CPoint3::real(0.0, 0.0, 1.0), 8, 2, &check).unwrap();
        assert_eq!(rep.r, 0.0);
        assert!(rep.passed(), "{rep:?}");
        assert!(gamma_probe(&CPoint3::real(0.2, 0.0, 0.0), 8, 2, &check).is_err());
    }
}
