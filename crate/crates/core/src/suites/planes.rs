use super::oracles::fd_gradient;
use super::{sub_seed, Check, SuiteSizes};
use crate::cconvexity::gamma_probe;
use crate::domains::{
    classify_boundary_e, e_defining, in_g2, roots_of_pi, BoundaryClassification, CPoint2, CPoint3, Domain, G2RhoDomain,
    NonSmoothCase, Rho, SymmetrizedBidisc, Tetrablock, Tolerance, C64,
};
use crate::error::Result;
use crate::hyperplanes::{
    boundary_on_ray, gamma_g2rho, gamma_membership_e_1rr, hyperplane_misses_domain, lift_line_to_e,
    ratio_class_membership, ratio_set_membership, sample_ratio_slopes, separating_hyperplane_e, separating_line_g2,
    tangent_hyperplane_smooth, wirtinger_gradient, GammaSet, LiftVariant, MissCheck, ProjClass, RatioGrid,
};
use crate::maps::{phi, pi_symmetrize, psi, worst_omega, OmegaParam};
use crate::projective::{Hyperplane, ProjVec, ProjVec2, ProjVec3};
use crate::rng::{complex_gaussian, stream_rng, uniform_disc, unit_phase, SeededRng};
use rand::Rng;

fn gaussian_point(rng: &mut SeededRng) -> CPoint3 {
    CPoint3::new(complex_gaussian(rng), complex_gaussian(rng), complex_gaussian(rng))
}

pub(super) fn lemma2(seed: u64, sizes: &SuiteSizes) -> Result<Vec<Check>> {
    // separating hyperplanes of E
    let mut rng = stream_rng(seed, 0x21);
    let (mut failures, mut worst_res, mut n) = (0, 0.0f64, 0);
    let mut min_best = f64::INFINITY;
    while n < sizes.lemma2_points {
        let x = CPoint3::new(
            uniform_disc(&mut rng, 1.2),
            uniform_disc(&mut rng, 1.2),
            uniform_disc(&mut rng, 1.2),
        );
        if e_defining(&x)? <= 1e-3 {
            continue;
        }
        let h = separating_hyperplane_e(&x)?;
        let res = h.residual(&x);
        let out = hyperplane_misses_domain(
            &h.hyperplane,
            &Tetrablock,
            &MissCheck::with_samples(sizes.miss_samples, sub_seed(seed, 0x21, n)),
        );
        worst_res = worst_res.max(res);
        min_best = min_best.min(out.best_value);
        failures += (res > 1e-12 || !out.misses) as usize;
        n += 1;
    }
    let planes = Check::new("separating_hyperplanes_miss", n, failures)
        .metric("max_residual", worst_res)
        .metric("min_defining_on_planes", min_best);

    // separating lines of G₂ never meet sampled points of G₂
    let mut rng = stream_rng(seed, 0x22);
    let lines = 100;
    let per_line = 10_000;
    let (mut failures, mut worst_res, mut closest) = (0, 0.0f64, f64::INFINITY);
    let mut n = 0;
    while n < lines {
        let q = CPoint2::new(uniform_disc(&mut rng, 2.5), uniform_disc(&mut rng, 1.5));
        if in_g2(&q) {
            continue;
        }
        n += 1;
        let line = separating_line_g2(&q)?;
        let res = line.residual(&q);
        worst_res = worst_res.max(res);
        let mut hit = res > 1e-12;
        for _ in 0..per_line {
            let y = CPoint2::from_array(SymmetrizedBidisc.sample_interior(&mut rng));
            let r = line.residual(&y);
            closest = closest.min(r);
            hit |= r <= 1e-10;
        }
        failures += hit as usize;
    }
    let g2 = Check::new("separating_lines_g2", lines, failures)
        .metric("max_residual", worst_res)
        .metric("closest_sample", closest);
    Ok(vec![planes, g2])
}

/// Misses of the lifted hyperplane through `x` and of the planar line through
/// its image.
fn lemma3_pair(
    x: &CPoint3,
    omega: OmegaParam,
    class: [C64; 2],
    variant: LiftVariant,
    cfg: &MissCheck,
) -> Result<(bool, bool)> {
    let lifted = lift_line_to_e(class[0], class[1], omega, variant)?;
    let e = hyperplane_misses_domain(&Hyperplane::new(x.to_array(), lifted), &Tetrablock, cfg).misses;
    let image = match variant {
        LiftVariant::Phi => phi(omega, x),
        LiftVariant::Psi => psi(omega, x),
    };
    let domain = G2RhoDomain::new(Rho::new(omega.norm().min(1.0))?);
    let planar = Hyperplane::new(image.to_array(), ProjVec::new(class)?);
    let g = hyperplane_misses_domain(&planar, &domain, cfg).misses;
    Ok((e, g))
}

pub(super) fn lemma3(seed: u64, sizes: &SuiteSizes) -> Result<Vec<Check>> {
    let mut rng = stream_rng(seed, 0x23);
    let samples = (sizes.miss_samples / 5).max(1000);
    let (mut disagreements, mut both_miss) = (0, 0);
    let one = C64::new(1.0, 0.0);
    for i in 0..sizes.lemma3_trials {
        let cfg = MissCheck::with_samples(samples, sub_seed(seed, 0x23, i));
        let (x, omega, class, variant) = match i % 4 {
            // generic classes through generic boundary points
            0 | 1 => {
                let x = boundary_on_ray(&gaussian_point(&mut rng))?;
                let r = 0.05 + 0.95 * rng.random::<f64>();
                let omega = OmegaParam::new(unit_phase(&mut rng) * r)?;
                let class = [complex_gaussian(&mut rng), complex_gaussian(&mut rng)];
                let variant = if i % 4 == 0 { LiftVariant::Phi } else { LiftVariant::Psi };
                (x, omega, class, variant)
            }
            // the root pencil at the worst phase: a supporting pair
            2 => {
                let x = boundary_on_ray(&gaussian_point(&mut rng))?;
                let omega = worst_omega(&x);
                let mu = roots_of_pi(&phi(omega, &x)).lambda2;
                (x, omega, [-mu, one], LiftVariant::Phi)
            }
            // |x₃| = 1 and the level line of p
            _ => {
                let r = rng.random::<f64>();
                let (a, b) = (unit_phase(&mut rng), unit_phase(&mut rng));
                let x = CPoint3::new(a * r, b * r, a * b);
                let omega = OmegaParam::new(unit_phase(&mut rng) * (0.05 + 0.9 * rng.random::<f64>()))?;
                let variant = if rng.random::<bool>() {
                    LiftVariant::Phi
                } else {
                    LiftVariant::Psi
                };
                (x, omega, [C64::new(0.0, 0.0), one], variant)
            }
        };
        let (e, g) = lemma3_pair(&x, omega, class, variant, &cfg)?;
        disagreements += (e != g) as usize;
        both_miss += (e && g) as usize;
    }
    Ok(vec![
        Check::new("lift_round_trip", sizes.lemma3_trials, disagreements).metric("both_miss", both_miss as f64)
    ])
}

pub(super) fn thm1(seed: u64, sizes: &SuiteSizes) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let tol = Tolerance::default();

    // Γ_E(1, r, r): members miss, non-members hit
    let (mut member_fail, mut non_fail, mut members, mut non) = (0, 0, 0, 0);
    for (k, r) in [0.0, 0.3, 0.7].into_iter().enumerate() {
        let x = CPoint3::real(1.0, r, r).to_array();
        let mut rng = stream_rng(seed, 0x41 + k as u64);
        for i in 0..sizes.thm1_members {
            let w = if i % 4 == 0 {
                unit_phase(&mut rng)
            } else {
                uniform_disc(&mut rng, 1.0)
            };
            let v = ProjVec3::new([C64::new(-1.0, 0.0), -w, w])?;
            debug_assert!(gamma_membership_e_1rr(&v, r, 1e-12)?);
            let cfg = MissCheck::with_samples(sizes.miss_samples, sub_seed(seed, 0x41 + k as u64, i));
            members += 1;
            member_fail += !hyperplane_misses_domain(&Hyperplane::new(x, v), &Tetrablock, &cfg).misses as usize;
        }
        let mut i = 0;
        while i < sizes.thm1_members {
            let v = if i % 2 == 0 {
                ProjVec3::new([
                    complex_gaussian(&mut rng),
                    complex_gaussian(&mut rng),
                    complex_gaussian(&mut rng),
                ])?
            } else {
                // b + c = 0 but |c| > |a|
                let w = unit_phase(&mut rng) * (1.05 + rng.random::<f64>());
                ProjVec3::new([C64::new(-1.0, 0.0), -w, w])?
            };
            if gamma_membership_e_1rr(&v, r, 1e-3)? {
                continue;
            }
            let cfg = MissCheck::with_samples(sizes.miss_samples, sub_seed(seed, 0x51 + k as u64, i));
            non += 1;
            non_fail += hyperplane_misses_domain(&Hyperplane::new(x, v), &Tetrablock, &cfg).misses as usize;
            i += 1;
        }
    }
    checks.push(Check::new("one_r_r_members_miss", members, member_fail));
    checks.push(Check::new("one_r_r_non_members_hit", non, non_fail));

    // pulling the pieces of G₂,|ω| back at (1, r, r) lands in the ω-family
    let mut rng = stream_rng(seed, 0x44);
    let (mut trials, mut failures) = (0, 0);
    for r in [0.0, 0.3, 0.7] {
        let x = CPoint3::real(1.0, r, r);
        for modulus in [0.25, 0.5, 0.75, 1.0] {
            for _ in 0..16 {
                let omega = OmegaParam::new(unit_phase(&mut rng) * modulus)?;
                trials += 1;
                let ok = if modulus < 1.0 {
                    let rho = Rho::new(modulus)?;
                    // Ψ_ω(1, r, r) is interior, Φ_ω(1, r, r) has a root-pencil singleton
                    let inner = crate::domains::in_g2rho(&psi(omega, &x), rho);
                    match gamma_g2rho(&phi(omega, &x), rho, 1e-9)? {
                        GammaSet::Singleton {
                            class: ProjClass::Planar(c),
                        } => {
                            let [a, cc] = c.coords();
                            let v = lift_line_to_e(a, cc, omega, LiftVariant::Phi)?;
                            inner && gamma_membership_e_1rr(&v, r, 1e-9)?
                        }
                        _ => false,
                    }
                } else {
                    // both images lie on ∂G₂; their root pencils lift into the family
                    [LiftVariant::Phi, LiftVariant::Psi].into_iter().all(|variant| {
                        let q = match variant {
                            LiftVariant::Phi => phi(omega, &x),
                            LiftVariant::Psi => psi(omega, &x),
                        };
                        let mu = roots_of_pi(&q).lambda2;
                        lift_line_to_e(-mu, C64::new(1.0, 0.0), omega, variant)
                            .and_then(|v| gamma_membership_e_1rr(&v, r, 1e-9))
                            .unwrap_or(false)
                    })
                };
                failures += !ok as usize;
            }
        }
    }
    checks.push(Check::new("one_r_r_from_lifts", trials, failures));

    // sampled Γ_E at the non-smooth points
    let probe_cfg = MissCheck::with_samples(sizes.miss_samples / 5, sub_seed(seed, 0x45, 0));
    let (mut sampled, mut missing, mut points) = (0, 0, 0);
    for case in NonSmoothCase::ALL {
        for r in [0.0, 0.5, 0.9] {
            let rep = gamma_probe(
                &case.canonical_point(r),
                sizes.probe_samples,
                sub_seed(seed, 0x45, points),
                &probe_cfg,
            )?;
            points += 1;
            sampled += rep.members_sampled;
            missing += rep.members_missing;
        }
    }
    checks.push(Check::new("non_smooth_members_miss", sampled, sampled - missing).metric("points", points as f64));

    // smooth points: analytic gradient, finite differences, tangent plane
    let mut rng = stream_rng(seed, 0x46);
    let (mut n, mut grad_fail, mut miss_fail, mut worst_rel) = (0, 0, 0, 0.0f64);
    while n < sizes.gradient_points {
        let x = boundary_on_ray(&gaussian_point(&mut rng))?;
        if classify_boundary_e(&x, &tol)? != BoundaryClassification::SmoothBoundary {
            continue;
        }
        let g = wirtinger_gradient(&x)?.to_array();
        let fd = fd_gradient(&x, 1e-6)?;
        let norm = g.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let err = g.iter().zip(&fd).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        let rel = err / norm;
        worst_rel = worst_rel.max(rel);
        grad_fail += (rel > 1e-6) as usize;
        let h = tangent_hyperplane_smooth(&x, &tol)?;
        let cfg = MissCheck::with_samples(sizes.miss_samples / 5, sub_seed(seed, 0x46, n));
        miss_fail += !hyperplane_misses_domain(&h, &Tetrablock, &cfg).misses as usize;
        n += 1;
    }
    checks.push(Check::new("gradient_vs_finite_differences", n, grad_fail).metric("max_relative_error", worst_rel));
    checks.push(Check::new("tangent_planes_miss", n, miss_fail));
    Ok(checks)
}

/// Boundary points of `G₂,ρ` of the two smooth kinds, with their roots.
fn bullet_point(rng: &mut SeededRng, flat: bool) -> (CPoint2, f64) {
    let rho = 0.2 + 0.6 * rng.random::<f64>();
    let (a, b) = (unit_phase(rng), unit_phase(rng));
    let (l1, l2) = if flat {
        let t = 0.1 + 0.8 * rng.random::<f64>();
        (a * rho.powf(t), b * rho.powf(1.0 - t))
    } else {
        (a * (0.9 * rho * rng.random::<f64>()), b)
    };
    (pi_symmetrize(l1, l2), rho)
}

pub(super) fn thm2(seed: u64, sizes: &SuiteSizes) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (k, (name, flat)) in [("pencil_singleton", false), ("flat_singleton", true)]
        .into_iter()
        .enumerate()
    {
        let tag = 0x61 + k as u64;
        let mut rng = stream_rng(seed, tag);
        let (mut singleton_fail, mut miss_fail, mut hit_fail, mut perturbed) = (0, 0, 0, 0);
        for i in 0..sizes.thm2_points {
            let (q, rho) = bullet_point(&mut rng, flat);
            let rho_p = Rho::new(rho)?;
            let domain = G2RhoDomain::new(rho_p);
            let class = match gamma_g2rho(&q, rho_p, 1e-9)? {
                GammaSet::Singleton {
                    class: ProjClass::Planar(c),
                } => c,
                _ => {
                    singleton_fail += 1;
                    continue;
                }
            };
            let base = q.to_array();
            let cfg = MissCheck::with_samples(sizes.miss_samples / 5, sub_seed(seed, tag, i));
            miss_fail += !hyperplane_misses_domain(&Hyperplane::new(base, class), &domain, &cfg).misses as usize;
            let c = class.coords();
            for j in 0..sizes.thm2_perturbations {
                let eps = 10f64.powf(-2.0 + 1.5 * rng.random::<f64>());
                let v = ProjVec2::new([
                    c[0] + complex_gaussian(&mut rng) * eps,
                    c[1] + complex_gaussian(&mut rng) * eps,
                ])?;
                let cfg = MissCheck::with_samples(sizes.miss_samples / 5, sub_seed(seed, tag + 0x10, i * 1000 + j));
                perturbed += 1;
                hit_fail += hyperplane_misses_domain(&Hyperplane::new(base, v), &domain, &cfg).misses as usize;
            }
        }
        checks.push(Check::new(
            &format!("{name}_is_singleton"),
            sizes.thm2_points,
            singleton_fail,
        ));
        checks.push(Check::new(&format!("{name}_misses"), sizes.thm2_points, miss_fail));
        checks.push(Check::new(&format!("{name}_perturbations_hit"), perturbed, hit_fail));
    }
    checks.extend(corner_checks(seed, sizes)?);
    Ok(checks)
}

fn corner_checks(seed: u64, sizes: &SuiteSizes) -> Result<Vec<Check>> {
    let grid = RatioGrid::default();
    let rho = Rho::new(0.5)?;
    let (l1, l2) = (C64::new(0.5, 0.0), C64::new(1.0, 0.0));
    let q = pi_symmetrize(l1, l2);
    let mut checks = Vec::new();

    let variant_ok = matches!(gamma_g2rho(&q, rho, 1e-9)?, GammaSet::RatioPredicate { .. });
    let level = ProjVec2::from_real([0.0, 1.0])?;
    let level_in = ratio_class_membership(&level, l1, l2, rho, &grid)?;
    let cfg = MissCheck::with_samples(sizes.miss_samples / 5, sub_seed(seed, 0x71, 0));
    let domain = G2RhoDomain::new(rho);
    let level_misses = hyperplane_misses_domain(&Hyperplane::new(q.to_array(), level), &domain, &cfg).misses;
    checks.push(Check::new(
        "corner_contains_zero",
        3,
        [variant_ok, level_in, level_misses].iter().filter(|b| !**b).count(),
    ));

    // a/c = −7/15 is excluded, and its line does meet G₂,ρ
    let witness = ProjVec2::from_real([-7.0, 15.0])?;
    let rejected = !ratio_class_membership(&witness, l1, l2, rho, &grid)?;
    let hit = !hyperplane_misses_domain(&Hyperplane::new(q.to_array(), witness), &domain, &cfg).misses;
    checks.push(Check::new(
        "corner_excludes_witness",
        2,
        [rejected, hit].iter().filter(|b| !**b).count(),
    ));

    // midpoint convexity in the slope coordinate, at several corners
    let mut rng = stream_rng(seed, 0x72);
    let corners = [
        (0.5, l1, l2),
        (0.3, C64::from_polar(0.3, 1.0), C64::from_polar(1.0, -2.0)),
        (0.8, C64::from_polar(1.0, 0.4), C64::from_polar(0.8, 2.5)),
    ];
    let (mut failures, mut done, mut i) = (0, 0, 0);
    while done < sizes.convexity_checks && i < 10 * sizes.convexity_checks {
        let (r, a, b) = corners[i % corners.len()];
        i += 1;
        let rho = Rho::new(r)?;
        let w = sample_ratio_slopes(a, b, rho, &grid, 2, &mut rng)?;
        if w.len() < 2 {
            continue;
        }
        done += 1;
        failures += !ratio_set_membership((w[0] + w[1]) / 2.0, a, b, rho, &grid)? as usize;
    }
    checks.push(
        Check::new("corner_midpoint_convex", done, failures).expect(failures == 0 && done == sizes.convexity_checks),
    );

    // a finer grid only removes slopes
    let fine = grid.refined();
    let mut failures = 0;
    for _ in 0..sizes.convexity_checks {
        let w = complex_gaussian(&mut rng) * 0.7;
        let coarse = ratio_set_membership(w, l1, l2, rho, &grid)?;
        let refined = ratio_set_membership(w, l1, l2, rho, &fine)?;
        failures += (refined && !coarse) as usize;
    }
    checks.push(Check::new(
        "corner_refinement_monotone",
        sizes.convexity_checks,
        failures,
    ));
    Ok(checks)
}
