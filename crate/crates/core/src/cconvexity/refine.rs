//! Second look at raster defects.
//!
//! A neck of the slice narrower than a pixel breaks it into pieces, and a
//! channel narrower than a pixel seals off a hole. Each defect is re-rasterized
//! in a magnified window around its gap to the main piece (for holes: to the
//! outside); it is dismissed only if the two sides join there.

use super::raster::{raster_window, AffineLine, SliceRaster};
use super::topology::{labelled, neighbours, slice_topology, SliceTopology};
use crate::domains::{Domain, C64};

const ZOOM_RES: usize = 128;
const ZOOM_DEPTH: usize = 3;

/// Centres of the pixels labelled `id` that touch a pixel of another value.
fn rim(labels: &[usize], n: usize, id: usize, centre: impl Fn(usize, usize) -> C64) -> Vec<C64> {
    let mut out = Vec::new();
    for i in 0..labels.len() {
        if labels[i] != id {
            continue;
        }
        let (r, c) = (i / n, i % n);
        let inner =
            r > 0 && c > 0 && r + 1 < n && c + 1 < n && [i - n, i + n, i - 1, i + 1].iter().all(|&j| labels[j] == id);
        if !inner {
            out.push(centre(r, c));
        }
    }
    out
}

fn closest(a: &[C64], b: &[C64]) -> Option<(f64, C64, C64)> {
    let mut best: Option<(f64, C64, C64)> = None;
    for &p in a {
        for &q in b {
            let d = (p - q).norm();
            if best.is_none_or(|(bd, _, _)| d < bd) {
                best = Some((d, p, q));
            }
        }
    }
    best
}

/// Whether the pixel sets `a` and `b` (centres, both of membership `value`)
/// connect inside a magnified window around their closest approach.
fn joined<const N: usize, D: Domain<N> + ?Sized>(
    domain: &D,
    line: &AffineLine<N>,
    a: &[C64],
    b: &[C64],
    value: bool,
    px: f64,
    depth: usize,
) -> bool {
    let Some((gap, za, zb)) = closest(a, b) else {
        return false;
    };
    let centre = (za + zb) / 2.0;
    let half = gap + 2.0 * px;
    let n = ZOOM_RES;
    let fine = 2.0 * half / n as f64;
    let bits = raster_window(domain, line, centre, half, n);
    let (labels, _) = labelled(&bits, n, value, neighbours(value));
    let at = |r: usize, c: usize| {
        C64::new(
            centre.re - half + (c as f64 + 0.5) * fine,
            centre.im + half - (r as f64 + 0.5) * fine,
        )
    };
    // labels of fine pixels within the coarse pixel around `z`
    let near = |z: C64| {
        let mut ids: Vec<usize> = (0..n * n)
            .filter(|&i| labels[i] != usize::MAX)
            .filter(|&i| {
                let d = at(i / n, i % n) - z;
                d.re.abs() <= px / 2.0 && d.im.abs() <= px / 2.0
            })
            .map(|i| labels[i])
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    };
    let (la, lb) = (near(za), near(zb));
    if la.iter().any(|id| lb.contains(id)) {
        return true;
    }
    if depth == 0 || la.is_empty() || lb.is_empty() {
        return false;
    }
    let gather = |ids: &[usize]| -> Vec<C64> { ids.iter().flat_map(|&id| rim(&labels, n, id, at)).collect() };
    joined(domain, line, &gather(&la), &gather(&lb), value, fine, depth - 1)
}

/// Topology of `raster` after dismissing defects that join up under
/// magnification. Without defects this is [`slice_topology`].
pub(crate) fn refined_topology<const N: usize, D: Domain<N> + ?Sized>(
    domain: &D,
    raster: &SliceRaster<N>,
    min_blob: usize,
) -> SliceTopology {
    let mut topo = slice_topology(raster, min_blob);
    if topo.passes() {
        return topo;
    }
    let n = raster.resolution;
    let px = raster.pixel_size();
    let centre = |r: usize, c: usize| raster.center(r, c);
    let mut defects = Vec::new();

    let (labels, comps) = labelled(&raster.bits, n, true, neighbours(true));
    let main = (0..comps.len()).max_by_key(|&i| comps[i].0).unwrap_or(0);
    // a fragment joins the group once it connects to any piece already in it
    let mut group = rim(&labels, n, main, centre);
    let mut pending: Vec<usize> = (0..comps.len())
        .filter(|&id| id != main && comps[id].0 >= min_blob)
        .collect();
    loop {
        let before = pending.len();
        let mut rest = Vec::new();
        for id in pending {
            let piece = rim(&labels, n, id, centre);
            if joined(domain, &raster.line, &piece, &group, true, px, ZOOM_DEPTH) {
                group.extend(piece);
                topo.significant_components -= 1;
                topo.dismissed += 1;
            } else {
                rest.push(id);
            }
        }
        pending = rest;
        if pending.len() == before || pending.is_empty() {
            break;
        }
    }
    defects.extend(pending.iter().map(|&id| comps[id].0));

    let (labels, comps) = labelled(&raster.bits, n, false, neighbours(false));
    let outside: Vec<C64> = (0..comps.len())
        .filter(|&id| comps[id].1)
        .flat_map(|id| rim(&labels, n, id, centre))
        .collect();
    for (id, &(size, border)) in comps.iter().enumerate() {
        if border || size < min_blob {
            continue;
        }
        if joined(
            domain,
            &raster.line,
            &rim(&labels, n, id, centre),
            &outside,
            false,
            px,
            ZOOM_DEPTH,
        ) {
            topo.significant_holes -= 1;
            topo.dismissed += 1;
        } else {
            defects.push(size);
        }
    }
    topo.smallest_defect = defects.into_iter().min().unwrap_or(0);
    topo
}
