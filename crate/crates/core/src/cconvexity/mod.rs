//! Numerical audit of C-convexity: slices of a domain by complex affine lines
//! are rasterized and checked for being connected and simply connected.
//!
//! A clean scan is evidence at the stated resolution and line count, not a
//! proof.

mod probe;
mod raster;
mod refine;
mod topology;

pub use probe::{gamma_probe, ProbeReport};
pub use raster::{raster_slice, AffineLine, SliceRaster};
pub use topology::{slice_topology, SliceTopology};

use crate::domains::Domain;
use crate::error::Result;
use crate::rng::{stream_rng, uniform_disc, unit_sphere};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const DEFAULT_MIN_BLOB: usize = 4;

/// Whether `line ∩ domain` is empty or connected without holes, at
/// `resolution` and ignoring blobs under `min_blob` pixels. Defects that
/// close up in a magnified window around them are dismissed.
pub fn check_line<const N: usize, D: Domain<N> + ?Sized>(
    domain: &D,
    line: &AffineLine<N>,
    resolution: usize,
    min_blob: usize,
) -> Result<(bool, SliceTopology)> {
    let raster = raster_slice(domain, line, resolution)?;
    let topo = refine::refined_topology(domain, &raster, min_blob);
    Ok((topo.passes(), topo))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation<const N: usize> {
    pub index: usize,
    pub line: AffineLine<N>,
    pub topology: SliceTopology,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport<const N: usize> {
    pub domain: String,
    pub lines_tested: usize,
    pub empty_slices: usize,
    /// Raster defects that closed up under magnification, over all lines.
    pub dismissed_defects: usize,
    pub violations: Vec<Violation<N>>,
    pub seed: u64,
    pub resolution: usize,
    pub min_blob: usize,
}

/// Line `index` of the scan with seed `seed`: base uniform in the bounding
/// polydisc, direction uniform on the unit sphere of `Cⁿ`.
pub fn scan_line<const N: usize>(bounds: &[f64; N], seed: u64, index: usize) -> AffineLine<N> {
    let mut rng = stream_rng(seed, index as u64);
    let base: [_; N] = std::array::from_fn(|j| uniform_disc(&mut rng, bounds[j]));
    let dir = unit_sphere::<N>(&mut rng);
    AffineLine::new(base, dir).expect("unit vectors are non-zero")
}

/// Check `n_lines` random lines. Each line depends only on `(seed, index)`,
/// so the report does not depend on scheduling.
pub fn cconvexity_scan<const N: usize, D: Domain<N> + ?Sized>(
    domain: &D,
    n_lines: usize,
    seed: u64,
    resolution: usize,
    min_blob: usize,
) -> Result<ScanReport<N>> {
    let bounds = domain.bounds();
    let results: Vec<(AffineLine<N>, SliceTopology)> = (0..n_lines)
        .into_par_iter()
        .map(|i| {
            let line = scan_line(&bounds, seed, i);
            check_line(domain, &line, resolution, min_blob).map(|(_, t)| (line, t))
        })
        .collect::<Result<_>>()?;
    let empty_slices = results.iter().filter(|(_, t)| t.empty).count();
    let dismissed_defects = results.iter().map(|(_, t)| t.dismissed).sum();
    let violations = results
        .into_iter()
        .enumerate()
        .filter(|(_, (_, t))| !t.passes())
        .map(|(index, (line, topology))| Violation { index, line, topology })
        .collect();
    Ok(ScanReport {
        domain: domain.label(),
        lines_tested: n_lines,
        empty_slices,
        dismissed_defects,
        violations,
        seed,
        resolution,
        min_blob,
    })
}
