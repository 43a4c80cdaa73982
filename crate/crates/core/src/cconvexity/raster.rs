use crate::domains::{Domain, C64};
use crate::error::{Error, Result};
use crate::projective::serde_arrays;
use serde::{Deserialize, Serialize};

/// The complex affine line `ζ ↦ base + ζ·dir`, with `max |dirⱼ| = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineLine<const N: usize> {
    #[serde(with = "serde_arrays")]
    pub base: [C64; N],
    #[serde(with = "serde_arrays")]
    pub dir: [C64; N],
}

impl<const N: usize> AffineLine<N> {
    pub fn new(base: [C64; N], dir: [C64; N]) -> Result<Self> {
        let all = base.iter().chain(dir.iter());
        if all.clone().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite);
        }
        let m = dir.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if m == 0.0 {
            return Err(Error::ZeroDirection);
        }
        Ok(Self {
            base,
            dir: dir.map(|z| z / m),
        })
    }

    pub fn at(&self, zeta: C64) -> [C64; N] {
        std::array::from_fn(|j| self.base[j] + zeta * self.dir[j])
    }
}

/// Membership of the pixel centres of a square window of the `ζ`-plane.
///
/// Row 0 is the top of the window (largest `Im ζ`), column 0 its left edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SliceRaster<const N: usize> {
    pub line: AffineLine<N>,
    pub halfwidth: f64,
    pub resolution: usize,
    #[serde(skip)]
    pub bits: Vec<bool>,
}

impl<const N: usize> SliceRaster<N> {
    pub fn pixel_size(&self) -> f64 {
        2.0 * self.halfwidth / self.resolution as f64
    }

    pub fn center(&self, row: usize, col: usize) -> C64 {
        let px = self.pixel_size();
        C64::new(
            -self.halfwidth + (col as f64 + 0.5) * px,
            self.halfwidth - (row as f64 + 0.5) * px,
        )
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.resolution + col]
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Binary PGM (P5), 255 for set pixels.
    pub fn to_pgm(&self) -> Vec<u8> {
        let n = self.resolution;
        let mut out = format!("P5\n{n} {n}\n255\n").into_bytes();
        out.extend(self.bits.iter().map(|&b| if b { 255u8 } else { 0 }));
        out
    }

    /// Row-major `0`/`1` values, one raster row per CSV record.
    pub fn to_csv(&self) -> String {
        let mut s = String::with_capacity(self.bits.len() * 2);
        for row in self.bits.chunks(self.resolution) {
            let cells: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
            s.push_str(&cells.join(","));
            s.push_str("\r\n");
        }
        s
    }
}

/// Column interval of row centre `y` where every coordinate stays inside the
/// domain's bounding polydisc, as a range of real parts.
fn row_span<const N: usize>(line: &AffineLine<N>, bounds: &[f64; N], y: f64) -> Option<(f64, f64)> {
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for j in 0..N {
        let d = line.dir[j];
        let m = d.norm();
        if m == 0.0 {
            if line.base[j].norm() >= bounds[j] {
                return None;
            }
            continue;
        }
        // |base + ζd| < R  ⟺  |ζ − c| < R/|d|, c = −base/d
        let c = -line.base[j] / d;
        let r = bounds[j] / m;
        let dy = y - c.im;
        let h2 = r * r - dy * dy;
        if h2 <= 0.0 {
            return None;
        }
        let h = h2.sqrt();
        lo = lo.max(c.re - h);
        hi = hi.min(c.re + h);
    }
    (lo < hi).then_some((lo, hi))
}

/// Membership bits of the square window of half-width `halfwidth` centred at
/// `centre`, row 0 on top.
pub(crate) fn raster_window<const N: usize, D: Domain<N> + ?Sized>(
    domain: &D,
    line: &AffineLine<N>,
    centre: C64,
    halfwidth: f64,
    resolution: usize,
) -> Vec<bool> {
    let bounds = domain.bounds();
    let mut bits = vec![false; resolution * resolution];
    let px = 2.0 * halfwidth / resolution as f64;
    let left = centre.re - halfwidth;
    for row in 0..resolution {
        let y = centre.im + halfwidth - (row as f64 + 0.5) * px;
        let Some((lo, hi)) = row_span(line, &bounds, y) else {
            continue;
        };
        // columns whose centre lies in (lo, hi)
        let first = (((lo - left) / px - 0.5).floor().max(-1.0) + 1.0) as usize;
        let last = (((hi - left) / px - 0.5).ceil().min(resolution as f64)) as usize;
        for col in first..last.min(resolution) {
            let zeta = C64::new(left + (col as f64 + 0.5) * px, y);
            if domain.contains(&line.at(zeta)) {
                bits[row * resolution + col] = true;
            }
        }
    }
    bits
}

/// Rasterize `line ∩ domain` at `resolution × resolution` pixel centres.
///
/// The window `|Re ζ|, |Im ζ| ≤ R_k + |base_k|`, `k` the index of the unit
/// direction component, contains every `ζ` whose `k`-th coordinate stays in
/// the bounding disc of radius `R_k`.
pub fn raster_slice<const N: usize, D: Domain<N> + ?Sized>(
    domain: &D,
    line: &AffineLine<N>,
    resolution: usize,
) -> Result<SliceRaster<N>> {
    if resolution < 16 {
        return Err(Error::Precondition(format!(
            "resolution must be at least 16, got {resolution}"
        )));
    }
    let line = AffineLine::new(line.base, line.dir)?;
    let bounds = domain.bounds();
    let k = line.dir.iter().position(|z| z.norm() >= 1.0 - 1e-12).unwrap_or(0);
    let halfwidth = (bounds[k] + line.base[k].norm()) / line.dir[k].norm();
    let bits = raster_window(domain, &line, C64::new(0.0, 0.0), halfwidth, resolution);
    let raster = SliceRaster {
        line,
        halfwidth,
        resolution,
        bits,
    };
    Ok(raster)
}
