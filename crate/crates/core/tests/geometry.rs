use tetrablock::cconvexity::{cconvexity_scan, check_line, AffineLine, DEFAULT_MIN_BLOB};
use tetrablock::domains::{
    classify_boundary_e, e_defining, g2rho_defining, in_g2rho, BoundaryClassification, G2RhoDomain, NonSmoothCase,
    Polydisc, PuncturedBidisc, Tetrablock,
};
use tetrablock::hyperplanes::{
    boundary_on_ray, gamma_membership_e_1rr, hyperplane_misses_domain, ratio_class_membership, ratio_set_membership,
    sample_ratio_slopes, separating_hyperplane_e, wirtinger_gradient, MissCheck, RatioGrid,
};
use tetrablock::maps::pi_symmetrize;
use tetrablock::projective::{proj_equal, Hyperplane, ProjVec, ProjVec2, ProjVec3};
use tetrablock::rng::{complex_gaussian, stream_rng, uniform_disc};
use tetrablock::suites::{fd_gradient, random_search_preimage};
use tetrablock::{CPoint2, CPoint3, Rho, Tolerance, C64};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Both roots of `z² − sz + p` in the open disc and `|p| < ρ`, from the
/// textbook quadratic formula.
fn naive_in_g2rho(q: &CPoint2, rho: f64) -> bool {
    let d = (q.s * q.s - 4.0 * q.p).sqrt();
    let (a, b) = ((q.s + d) / 2.0, (q.s - d) / 2.0);
    a.norm() < 1.0 && b.norm() < 1.0 && q.p.norm() < rho
}

#[test]
fn origin_is_deep_inside() {
    assert_eq!(e_defining(&CPoint3::real(0.0, 0.0, 0.0)).unwrap(), -1.0);
}

#[test]
fn separating_hyperplane_examples() {
    // (2, 0, 0): ω* = 1, μ = 2
    let h = separating_hyperplane_e(&CPoint3::real(2.0, 0.0, 0.0)).unwrap();
    let expect = [c(-2.0, 0.0), c(-2.0, 0.0), c(1.0, 0.0)];
    for (a, b) in h.coeffs.iter().zip(expect) {
        assert!((a - b).norm() < 1e-12);
    }
    assert!((h.constant - c(-4.0, 0.0)).norm() < 1e-12);

    // (0, 0, 1): μ = i
    let x = CPoint3::real(0.0, 0.0, 1.0);
    let h = separating_hyperplane_e(&x).unwrap();
    let v = ProjVec3::new(h.coeffs).unwrap();
    let expect = ProjVec3::new([c(0.0, -1.0), c(0.0, -1.0), c(1.0, 0.0)]).unwrap();
    assert!(proj_equal(&v, &expect, 1e-12));
    let cfg = MissCheck::with_samples(20_000, 3);
    assert!(hyperplane_misses_domain(&h.hyperplane, &Tetrablock, &cfg).misses);
}

#[test]
fn canonical_corners_classify() {
    let tol = Tolerance::default();
    for case in NonSmoothCase::ALL {
        for r in [0.0, 0.4, 0.9] {
            let p = case.canonical_point(r);
            match classify_boundary_e(&p, &tol).unwrap() {
                BoundaryClassification::NonSmoothBoundary(f) => {
                    assert!(f.canonical_point().dist_inf(&p) < 1e-9, "{case:?} {r}");
                }
                other => panic!("{case:?} {r}: {other:?}"),
            }
        }
    }
}

#[test]
fn wirtinger_gradient_matches_finite_differences() {
    let mut rng = stream_rng(9, 0);
    let tol = Tolerance::default();
    let mut done = 0;
    while done < 40 {
        let dir = CPoint3::new(
            uniform_disc(&mut rng, 1.0),
            uniform_disc(&mut rng, 1.0),
            uniform_disc(&mut rng, 1.0),
        );
        let x = boundary_on_ray(&dir).unwrap();
        if classify_boundary_e(&x, &tol).unwrap() != BoundaryClassification::SmoothBoundary
            || x.u().norm() < 1e-2
            || x.v().norm() < 1e-2
        {
            continue;
        }
        let g = wirtinger_gradient(&x).unwrap().to_array();
        let fd = fd_gradient(&x, 1e-6).unwrap();
        let scale = g.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for (a, b) in g.iter().zip(fd) {
            assert!((a - b).norm() <= 1e-6 * scale, "{a} vs {b}");
        }
        done += 1;
    }
}

#[test]
fn one_r_r_family_against_the_miss_checker() {
    let mut rng = stream_rng(5, 1);
    for (k, r) in [0.0, 0.3, 0.7].into_iter().enumerate() {
        let base = CPoint3::real(1.0, r, r).to_array();
        for i in 0..8u64 {
            let cfg = MissCheck::with_samples(20_000, 100 * k as u64 + i);
            let w = uniform_disc(&mut rng, 1.0);
            let member = ProjVec3::new([c(-1.0, 0.0), -w, w]).unwrap();
            assert!(gamma_membership_e_1rr(&member, r, 1e-12).unwrap());
            assert!(hyperplane_misses_domain(&Hyperplane::new(base, member), &Tetrablock, &cfg).misses);

            let other = ProjVec3::new([
                complex_gaussian(&mut rng),
                complex_gaussian(&mut rng),
                complex_gaussian(&mut rng),
            ])
            .unwrap();
            if !gamma_membership_e_1rr(&other, r, 1e-3).unwrap() {
                assert!(!hyperplane_misses_domain(&Hyperplane::new(base, other), &Tetrablock, &cfg).misses);
            }
        }
    }
}

#[test]
fn corner_set_examples() {
    let rho = Rho::new(0.5).unwrap();
    let (l1, l2) = (c(0.5, 0.0), c(1.0, 0.0));
    let grid = RatioGrid::default();
    let level = ProjVec2::from_real([0.0, 1.0]).unwrap();
    assert!(ratio_class_membership(&level, l1, l2, rho, &grid).unwrap());

    // a/c = −7/15 reaches π(0.6, 0.6) = (1.2, 0.36)
    let witness = ProjVec2::from_real([-7.0, 15.0]).unwrap();
    assert!(!ratio_class_membership(&witness, l1, l2, rho, &grid).unwrap());
    let corner = pi_symmetrize(l1, l2);
    let inner = pi_symmetrize(c(0.6, 0.0), c(0.6, 0.0));
    let [a, cc] = witness.coords();
    assert!((a * (inner.s - corner.s) + cc * (inner.p - corner.p)).norm() < 1e-12);
    assert!(naive_in_g2rho(&inner, 0.5));
}

#[test]
fn corner_members_miss() {
    let rho = Rho::new(0.5).unwrap();
    let grid = RatioGrid::default();
    for (k, phase) in [0.0, 1.0, 2.5, std::f64::consts::PI].into_iter().enumerate() {
        let (l1, l2) = (C64::from_polar(0.5, phase), C64::from_polar(1.0, 0.3 * k as f64));
        let q = pi_symmetrize(l1, l2);
        let domain = G2RhoDomain::new(rho);
        let mut rng = stream_rng(11, k as u64);
        let slopes = sample_ratio_slopes(l1, l2, rho, &grid, 12, &mut rng).unwrap();
        assert!(!slopes.is_empty());
        let mut missing = 0;
        for (i, w) in slopes.iter().enumerate() {
            assert!(ratio_set_membership(*w, l1, l2, rho, &grid).unwrap());
            let v = ProjVec::new([c(1.0, 0.0), -w]).unwrap();
            let cfg = MissCheck::with_samples(20_000, i as u64);
            missing += hyperplane_misses_domain(&Hyperplane::new(q.to_array(), v), &domain, &cfg).misses as usize;
        }
        // rejection draws may land within grid resolution of the set
        assert!(
            2 * missing > slopes.len(),
            "phase {phase}: {missing} of {}",
            slopes.len()
        );
    }
}

#[test]
fn midpoints_of_corner_members_are_members() {
    let rho = Rho::new(0.5).unwrap();
    let grid = RatioGrid::default();
    let (l1, l2) = (c(0.5, 0.0), c(1.0, 0.0));
    let mut rng = stream_rng(12, 0);
    let slopes = sample_ratio_slopes(l1, l2, rho, &grid, 40, &mut rng).unwrap();
    for pair in slopes.windows(2) {
        let mid = (pair[0] + pair[1]) / 2.0;
        assert!(ratio_set_membership(mid, l1, l2, rho, &grid).unwrap());
    }
}

#[test]
fn closed_form_g2rho_matches_the_preimage_search() {
    let mut rng = stream_rng(13, 0);
    let mut search = stream_rng(13, 1);
    for rho in [0.25, 0.5, 0.75] {
        let mut n = 0;
        while n < 150 {
            let q = pi_symmetrize(uniform_disc(&mut rng, 1.15), uniform_disc(&mut rng, 1.15));
            let rho_p = Rho::new(rho).unwrap();
            if g2rho_defining(&q, rho_p).unwrap().abs() <= 1e-6 {
                continue;
            }
            n += 1;
            let closed = in_g2rho(&q, rho_p);
            assert_eq!(closed, naive_in_g2rho(&q, rho));
            assert_eq!(closed, random_search_preimage(&q, rho, 1_000_000, &mut search), "{q:?}");
        }
    }
}

#[test]
fn control_hole_is_seen_at_every_resolution() {
    let line = AffineLine::new([c(0.0, 0.0), c(0.05, 0.02)], [c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
    for res in [64, 128, 256, 512] {
        let (passes, topo) = check_line(&PuncturedBidisc::default(), &line, res, DEFAULT_MIN_BLOB).unwrap();
        assert!(!passes, "res {res}");
        assert_eq!(topo.significant_holes, 1);
    }
}

#[test]
fn convex_domains_scan_clean() {
    let rep = cconvexity_scan(&Polydisc::<3>, 300, 4, 128, DEFAULT_MIN_BLOB).unwrap();
    assert!(rep.violations.is_empty());
    let rep = cconvexity_scan(&Tetrablock, 300, 4, 128, DEFAULT_MIN_BLOB).unwrap();
    assert!(rep.violations.is_empty());
    let rep = cconvexity_scan(&PuncturedBidisc::default(), 300, 4, 128, DEFAULT_MIN_BLOB).unwrap();
    assert!(!rep.violations.is_empty());
}

#[test]
fn lines_away_from_the_domain_give_empty_slices() {
    let line = AffineLine::new(
        [c(5.0, 0.0), c(5.0, 0.0), c(5.0, 0.0)],
        [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
    )
    .unwrap();
    let (passes, topo) = check_line(&Tetrablock, &line, 64, DEFAULT_MIN_BLOB).unwrap();
    assert!(passes && topo.empty);
}
