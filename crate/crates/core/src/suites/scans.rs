use super::{sub_seed, Check, SuiteSizes};
use crate::cconvexity::{cconvexity_scan, gamma_probe, ScanReport};
use crate::domains::{CPoint3, Domain, G2RhoDomain, PuncturedBidisc, Rho, Tetrablock};
use crate::error::Result;
use crate::hyperplanes::MissCheck;

fn scan_check<const N: usize, D: Domain<N>>(
    domain: &D,
    lines: usize,
    seed: u64,
    sizes: &SuiteSizes,
) -> Result<ScanReport<N>> {
    cconvexity_scan(domain, lines, seed, sizes.resolution, sizes.min_blob)
}

fn summarize<const N: usize>(name: &str, rep: &ScanReport<N>) -> Check {
    Check::new(name, rep.lines_tested, rep.violations.len())
        .metric("empty_slices", rep.empty_slices as f64)
        .metric("resolution", rep.resolution as f64)
        .metric(
            "first_violation",
            rep.violations.first().map_or(-1.0, |v| v.index as f64),
        )
        .metric("dismissed_defects", rep.dismissed_defects as f64)
}

pub(super) fn corollary(seed: u64, sizes: &SuiteSizes) -> Result<Vec<Check>> {
    let mut checks = vec![summarize(
        "scan_E",
        &scan_check(&Tetrablock, sizes.scan_lines, seed, sizes)?,
    )];
    for rho in [0.25, 0.5, 0.75, 1.0] {
        let rep = scan_check(&G2RhoDomain::new(Rho::new(rho)?), sizes.scan_lines, seed, sizes)?;
        checks.push(summarize(&format!("scan_G2RHO({rho})"), &rep));
    }
    let control = scan_check(&PuncturedBidisc::default(), sizes.control_lines, seed, sizes)?;
    let found = !control.violations.is_empty();
    checks.push(summarize("scan_control", &control).expect(found));

    // every piece of the union at (r, r, 1) carries [(0, 0, 1)]
    let cfg = MissCheck::with_samples(sizes.miss_samples / 5, sub_seed(seed, 0x81, 0));
    let (mut pieces, mut with_common, mut failures) = (0, 0, 0);
    for (i, r) in [0.0, 0.5, 1.0].into_iter().enumerate() {
        let rep = gamma_probe(
            &CPoint3::real(r, r, 1.0),
            sizes.probe_samples,
            sub_seed(seed, 0x82, i),
            &cfg,
        )?;
        pieces += rep.subfamilies_checked;
        with_common += rep.subfamilies_with_common_class;
        failures += !rep.passed() as usize;
    }
    checks.push(
        Check::new("common_class_at_r_r_1", 3, failures)
            .metric("pieces", pieces as f64)
            .metric("pieces_with_common_class", with_common as f64),
    );
    Ok(checks)
}
