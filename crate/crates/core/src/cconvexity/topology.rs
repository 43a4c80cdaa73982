use super::raster::SliceRaster;
use serde::{Deserialize, Serialize};

/// Component and hole counts of a raster.
///
/// Set pixels are joined 4-connectedly, unset pixels 8-connectedly; a hole is
/// an unset component that does not reach the window border. The
/// `significant_*` counts only include blobs of at least `min_blob` pixels.
/// [`slice_topology`] reads the raster as is; scans use the refined count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceTopology {
    pub component_count: usize,
    pub hole_count: usize,
    pub empty: bool,
    pub significant_components: usize,
    pub significant_holes: usize,
    pub min_blob: usize,
    /// Pixels in the smallest significant hole or extra component, 0 if none.
    pub smallest_defect: usize,
    /// Defects that joined up under magnification and were not counted.
    #[serde(default)]
    pub dismissed: usize,
}

impl SliceTopology {
    /// Connected and simply connected at the raster's resolution.
    pub fn passes(&self) -> bool {
        self.empty || (self.significant_components <= 1 && self.significant_holes == 0)
    }
}

const N4: [(isize, isize); 4] = [(-1, 0), (1, 0), (0, -1), (0, 1)];
const N8: [(isize, isize); 8] = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)];

pub(crate) fn neighbours(value: bool) -> &'static [(isize, isize)] {
    if value {
        &N4
    } else {
        &N8
    }
}

/// Sizes of the connected components of `{i : mask[i] == value}` and whether
/// each touches the border.
fn components(mask: &[bool], n: usize, value: bool, nbrs: &[(isize, isize)]) -> Vec<(usize, bool)> {
    labelled(mask, n, value, nbrs).1
}

/// Component labels (`usize::MAX` off the set) plus sizes and border flags.
pub(crate) fn labelled(
    mask: &[bool],
    n: usize,
    value: bool,
    nbrs: &[(isize, isize)],
) -> (Vec<usize>, Vec<(usize, bool)>) {
    let mut label = vec![usize::MAX; mask.len()];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for start in 0..mask.len() {
        if label[start] != usize::MAX || mask[start] != value {
            continue;
        }
        let id = out.len();
        label[start] = id;
        stack.push(start);
        let (mut size, mut border) = (0usize, false);
        while let Some(i) = stack.pop() {
            size += 1;
            let (r, c) = ((i / n) as isize, (i % n) as isize);
            if r == 0 || c == 0 || r == n as isize - 1 || c == n as isize - 1 {
                border = true;
            }
            for &(dr, dc) in nbrs {
                let (rr, cc) = (r + dr, c + dc);
                if rr < 0 || cc < 0 || rr >= n as isize || cc >= n as isize {
                    continue;
                }
                let j = rr as usize * n + cc as usize;
                if label[j] == usize::MAX && mask[j] == value {
                    label[j] = id;
                    stack.push(j);
                }
            }
        }
        out.push((size, border));
    }
    (label, out)
}

pub fn slice_topology<const N: usize>(r: &SliceRaster<N>, min_blob: usize) -> SliceTopology {
    topology_of(&r.bits, r.resolution, min_blob)
}

pub(crate) fn topology_of(bits: &[bool], n: usize, min_blob: usize) -> SliceTopology {
    let comps = components(bits, n, true, &N4);
    if comps.is_empty() {
        return SliceTopology {
            component_count: 0,
            hole_count: 0,
            empty: true,
            significant_components: 0,
            significant_holes: 0,
            min_blob,
            smallest_defect: 0,
            dismissed: 0,
        };
    }
    let holes: Vec<usize> = components(bits, n, false, &N8)
        .into_iter()
        .filter(|&(_, border)| !border)
        .map(|(size, _)| size)
        .collect();
    let mut big: Vec<usize> = comps.iter().map(|c| c.0).filter(|&s| s >= min_blob).collect();
    big.sort_unstable();
    let big_holes: Vec<usize> = holes.iter().copied().filter(|&s| s >= min_blob).collect();
    // the largest component is the slice itself; the rest are defects
    let defects = big
        .iter()
        .rev()
        .skip(1)
        .chain(big_holes.iter())
        .copied()
        .min()
        .unwrap_or(0);
    SliceTopology {
        component_count: comps.len(),
        hole_count: holes.len(),
        empty: false,
        significant_components: big.len(),
        significant_holes: big_holes.len(),
        min_blob,
        smallest_defect: defects,
        dismissed: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize, f: impl Fn(f64, f64) -> bool) -> Vec<bool> {
        let mut v = vec![false; n * n];
        for r in 0..n {
            for c in 0..n {
                let (x, y) = (
                    (c as f64 + 0.5) / n as f64 * 2.0 - 1.0,
                    (r as f64 + 0.5) / n as f64 * 2.0 - 1.0,
                );
                v[r * n + c] = f(x, y);
            }
        }
        v
    }

    #[test]
    fn disc_annulus_and_empty() {
        let disc = topology_of(&grid(64, |x, y| x * x + y * y < 0.8), 64, 4);
        assert_eq!((disc.component_count, disc.hole_count, disc.empty), (1, 0, false));
        assert!(disc.passes());
        let ann = topology_of(&grid(64, |x, y| (0.1..0.8).contains(&(x * x + y * y))), 64, 4);
        assert_eq!((ann.component_count, ann.hole_count), (1, 1));
        assert!(!ann.passes());
        let empty = topology_of(&vec![false; 256], 16, 4);
        assert_eq!((empty.component_count, empty.hole_count, empty.empty), (0, 0, true));
        assert!(empty.passes());
    }

    #[test]
    fn connectivity_pairing() {
        // a diagonal chain of set pixels is disconnected under 4-adjacency,
        // and the unset pixels around it form no hole under 8-adjacency
        let n = 8;
        let mut bits = vec![false; n * n];
        for i in 1..7 {
            bits[i * n + i] = true;
        }
        let t = topology_of(&bits, n, 1);
        assert_eq!((t.component_count, t.hole_count), (6, 0));
        // a 4-connected ring encloses a single-pixel hole
        let mut ring = vec![false; 25];
        for i in [6, 7, 8, 11, 13, 16, 17, 18] {
            ring[i] = true;
        }
        let t = topology_of(&ring, 5, 1);
        assert_eq!((t.component_count, t.hole_count), (1, 1));
        assert!(topology_of(&ring, 5, 4).passes());
    }

    #[test]
    fn two_blobs_fail() {
        let t = topology_of(&grid(32, |x, _| x.abs() > 0.3 && x.abs() < 0.8), 32, 4);
        assert_eq!(t.component_count, 2);
        assert!(!t.passes());
        assert!(t.smallest_defect >= 4);
    }
}
