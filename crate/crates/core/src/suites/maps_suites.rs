use super::oracles::random_search_preimage;
use super::{sub_seed, Check, SuiteSizes};
use crate::domains::{
    e_defining, g2_defining, g2rho_defining, in_e, in_g2, in_g2rho, CPoint2, CPoint3, Domain, Rho, Tetrablock,
};
use crate::error::Result;
use crate::maps::{grid_max_g2, lemma1_equivalence_check, phi, pi_symmetrize, preimage_phi, worst_omega, OmegaParam};
use crate::rng::{stream_rng, uniform_disc, SeededRng};
use rand::Rng;
use std::f64::consts::TAU;

fn polydisc_point(rng: &mut SeededRng, radius: f64) -> CPoint3 {
    CPoint3::new(
        uniform_disc(rng, radius),
        uniform_disc(rng, radius),
        uniform_disc(rng, radius),
    )
}

pub(super) fn lemma1(seed: u64, sizes: &SuiteSizes) -> Result<Vec<Check>> {
    // three descriptions of E agree away from the boundary
    let mut rng = stream_rng(seed, 0x11);
    let (mut scored, mut skipped, mut failures, mut interior) = (0, 0, 0, 0);
    while scored < sizes.lemma1_points {
        let x = polydisc_point(&mut rng, 2.0);
        if e_defining(&x)?.abs() <= 1e-6 {
            skipped += 1;
            continue;
        }
        let rep = lemma1_equivalence_check(&x, sizes.lemma1_grid, sizes.lemma1_disc, sub_seed(seed, 0x11, scored))?;
        scored += 1;
        interior += rep.direct as usize;
        failures += !rep.consistent() as usize;
    }
    let equivalence = Check::new("three_criteria_agree", scored, failures)
        .metric("interior_points", interior as f64)
        .metric("skipped_near_boundary", skipped as f64);

    // the worst phase attains the supremum
    let mut rng = stream_rng(seed, 0x12);
    let (mut failures, mut max_gap, mut max_excess) = (0, 0.0f64, f64::NEG_INFINITY);
    for _ in 0..sizes.lemma1_points {
        let x = polydisc_point(&mut rng, 2.0);
        let e = e_defining(&x)?;
        let at_worst = g2_defining(&phi(worst_omega(&x), &x))?;
        let grid = grid_max_g2(&x, sizes.lemma1_grid);
        let gap = (at_worst - e).abs();
        max_gap = max_gap.max(gap);
        max_excess = max_excess.max(grid - e);
        failures += (gap > 1e-12 || grid > e + 1e-9) as usize;
    }
    let extremal = Check::new("extremal_identity", sizes.lemma1_points, failures)
        .metric("max_abs_gap", max_gap)
        .metric("max_grid_excess", max_excess);
    Ok(vec![equivalence, extremal])
}

/// A point of `π(D_ρ)`: both roots uniform in the disc, product below `ρ`.
fn g2rho_point(rng: &mut SeededRng, rho: f64) -> CPoint2 {
    loop {
        let (a, b) = (uniform_disc(rng, 1.0), uniform_disc(rng, 1.0));
        if (a * b).norm() < rho {
            return pi_symmetrize(a, b);
        }
    }
}

pub(super) fn prop31(seed: u64, sizes: &SuiteSizes) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    // G₂,|ω| ⊂ Φ_ω(E): the explicit preimage
    let (mut trials, mut failures, mut worst) = (0, 0, 0.0f64);
    for (k, rho) in [0.1, 0.5, 0.9, 1.0].into_iter().enumerate() {
        let mut rng = stream_rng(seed, 0x31 + k as u64);
        for _ in 0..sizes.prop31_trips {
            let q = g2rho_point(&mut rng, rho);
            let omega = OmegaParam::new(num_complex::Complex::from_polar(rho, TAU * rng.random::<f64>()))?;
            trials += 1;
            match preimage_phi(&q, omega) {
                Ok(x) => {
                    let back = phi(omega, &x);
                    let res = back.dist_inf(&q);
                    worst = worst.max(res);
                    failures += (!in_e(&x) || res > 1e-12) as usize;
                }
                Err(_) => failures += 1,
            }
        }
    }
    checks.push(Check::new("preimage_round_trip", trials, failures).metric("max_residual", worst));

    // Φ_ω(E) ⊂ G₂,|ω|
    let mut rng = stream_rng(seed, 0x35);
    let mut failures = 0;
    for _ in 0..sizes.prop31_trips {
        let x = Tetrablock.sample_interior(&mut rng);
        let x = CPoint3::from_array(x);
        let r = 1e-3 + (1.0 - 1e-3) * rng.random::<f64>().sqrt();
        let omega = OmegaParam::new(num_complex::Complex::from_polar(r, TAU * rng.random::<f64>()))?;
        failures += !in_g2rho(&phi(omega, &x), Rho::new(omega.norm().min(1.0))?) as usize;
    }
    checks.push(Check::new("image_inside", sizes.prop31_trips, failures));

    // the closed form for G₂,ρ against a preimage search
    let (mut scored, mut failures, mut inside, mut attempts_cap) = (0, 0, 0, 0);
    let mut mismatch_forms = 0;
    for (k, rho) in [0.25, 0.5, 0.75].into_iter().enumerate() {
        let rho_p = Rho::new(rho)?;
        let mut rng = stream_rng(seed, 0x36 + k as u64);
        let mut oracle_rng = stream_rng(seed, 0x46 + k as u64);
        let mut n = 0;
        let mut draws = 0;
        while n < sizes.oracle_points && draws < 100 * sizes.oracle_points.max(1) {
            draws += 1;
            let q = if draws % 2 == 0 {
                CPoint2::new(uniform_disc(&mut rng, 2.0), uniform_disc(&mut rng, 1.0))
            } else {
                pi_symmetrize(uniform_disc(&mut rng, 1.15), uniform_disc(&mut rng, 1.15))
            };
            if g2rho_defining(&q, rho_p)?.abs() <= 1e-6 {
                continue;
            }
            n += 1;
            let closed = in_g2rho(&q, rho_p);
            let oracle = random_search_preimage(&q, rho, sizes.oracle_attempts, &mut oracle_rng);
            inside += closed as usize;
            failures += (closed != oracle) as usize;
            mismatch_forms += (closed != (in_g2(&q) && q.p.norm() < rho)) as usize;
        }
        scored += n;
        attempts_cap = attempts_cap.max(sizes.oracle_attempts);
    }
    checks.push(
        Check::new("g2rho_vs_preimage_search", scored, failures)
            .metric("inside", inside as f64)
            .metric("attempt_cap", attempts_cap as f64),
    );
    checks.push(Check::new("g2rho_vs_g2_form", scored, mismatch_forms));
    Ok(checks)
}
