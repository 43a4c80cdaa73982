//! Numerical search for domain points on an affine hyperplane.
//!
//! A negative answer (a witness) is exact up to the witness depth; a positive
//! answer only means the search came back empty.

use crate::domains::{Domain, C64};
use crate::projective::Hyperplane;
use crate::rng::{stream_rng, uniform_disc, SeededRng};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Search budget for [`hyperplane_misses_domain`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MissCheck {
    pub samples: usize,
    pub seed: u64,
    /// A witness must satisfy `defining(y) < −depth`, keeping rounding noise
    /// at a supporting hyperplane from posing as a hit.
    pub depth: f64,
    /// Number of best samples handed to the local search.
    pub refine_starts: usize,
    /// Evaluation cap per local search.
    pub refine_evals: usize,
}

impl Default for MissCheck {
    fn default() -> Self {
        Self {
            samples: 100_000,
            seed: 0,
            depth: 1e-9,
            refine_starts: 8,
            refine_evals: 4000,
        }
    }
}

impl MissCheck {
    pub fn with_samples(samples: usize, seed: u64) -> Self {
        Self {
            samples,
            seed,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MissOutcome<const N: usize> {
    pub misses: bool,
    pub witness: Option<[C64; N]>,
    /// Smallest defining value seen on the hyperplane.
    pub best_value: f64,
    /// `|functional(witness)|`, zero without a witness.
    pub residual: f64,
    pub evaluations: usize,
}

/// Coordinates of the hyperplane as a graph over all coordinates but the
/// pivot `k`: `y_k = base_k − Σ_{j≠k} (aⱼ/a_k)(yⱼ − baseⱼ)`.
struct Chart<const N: usize> {
    k: usize,
    base: [C64; N],
    slope: [C64; N],
}

impl<const N: usize> Chart<N> {
    fn new(h: &Hyperplane<N>) -> Self {
        let a = h.coeffs.coords();
        let k = h.coeffs.pivot();
        Self {
            k,
            base: h.base,
            slope: a.map(|aj| aj / a[k]),
        }
    }

    fn lift(&self, free: &[C64; N]) -> [C64; N] {
        let mut y = *free;
        let mut acc = self.base[self.k];
        for j in 0..N {
            if j != self.k {
                acc -= self.slope[j] * (free[j] - self.base[j]);
            }
        }
        y[self.k] = acc;
        y
    }
}

struct Search<'a, const N: usize, D: Domain<N> + ?Sized> {
    domain: &'a D,
    chart: Chart<N>,
    target: f64,
    evals: usize,
    found: Option<[C64; N]>,
}

impl<const N: usize, D: Domain<N> + ?Sized> Search<'_, N, D> {
    fn eval(&mut self, free: &[C64; N]) -> f64 {
        let y = self.chart.lift(free);
        self.evals += 1;
        let v = self.domain.defining(&y);
        if !v.is_finite() {
            return f64::INFINITY;
        }
        if v < self.target && self.found.is_none() && self.domain.contains(&y) {
            self.found = Some(y);
        }
        v
    }

    /// Compass search over the real and imaginary parts of the free
    /// coordinates, with a few random directions mixed in to get past kinks.
    fn refine(&mut self, start: [C64; N], mut value: f64, budget: usize, rng: &mut SeededRng) {
        let dims: Vec<(usize, bool)> = (0..N)
            .filter(|&j| j != self.chart.k)
            .flat_map(|j| [(j, false), (j, true)])
            .collect();
        let mut x = start;
        let mut step = 0.05;
        let stop = self.evals + budget;
        while step > 1e-13 && self.evals < stop && self.found.is_none() {
            let mut improved = false;
            for &(j, imag) in &dims {
                for sign in [1.0, -1.0] {
                    let mut y = x;
                    let d = if imag {
                        C64::new(0.0, sign * step)
                    } else {
                        C64::new(sign * step, 0.0)
                    };
                    y[j] += d;
                    let v = self.eval(&y);
                    if v < value {
                        x = y;
                        value = v;
                        improved = true;
                        break;
                    }
                }
            }
            if !improved {
                for _ in 0..dims.len() {
                    let mut y = x;
                    for &(j, _) in &dims {
                        y[j] += uniform_disc(rng, step);
                    }
                    let v = self.eval(&y);
                    if v < value {
                        x = y;
                        value = v;
                        improved = true;
                        break;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
    }
}

/// Look for a point of `domain` on `h`.
///
/// Candidates are drawn from three sources: uniform points of the hyperplane
/// chart over the bounding polydisc, points at geometrically spread distances
/// from the base point, and domain samples moved onto the hyperplane along
/// the pivot axis. The best candidates then seed a local search.
pub fn hyperplane_misses_domain<const N: usize, D: Domain<N> + ?Sized>(
    h: &Hyperplane<N>,
    domain: &D,
    cfg: &MissCheck,
) -> MissOutcome<N> {
    let mut search = Search {
        domain,
        chart: Chart::new(h),
        target: -cfg.depth,
        evals: 0,
        found: None,
    };
    let mut rng = stream_rng(cfg.seed, 0x6d69_7373);
    let keep = cfg.refine_starts.max(1);
    let mut best: Vec<(f64, [C64; N])> = Vec::with_capacity(keep + 1);
    let base = h.base;
    let bounds = domain.bounds();
    for i in 0..cfg.samples {
        let free: [C64; N] = match i % 3 {
            0 => std::array::from_fn(|j| uniform_disc(&mut rng, bounds[j])),
            1 => {
                let scale = 10f64.powf(-8.0 * rng.random::<f64>());
                std::array::from_fn(|j| base[j] + uniform_disc(&mut rng, scale))
            }
            _ => domain.sample_interior(&mut rng),
        };
        let v = search.eval(&free);
        if search.found.is_some() {
            break;
        }
        if best.len() < keep || v < best[best.len() - 1].0 {
            let pos = best.partition_point(|(b, _)| *b <= v);
            best.insert(pos, (v, free));
            best.truncate(keep);
        }
    }
    if search.found.is_none() {
        // the base point itself is the natural start for supporting planes
        let v0 = search.eval(&base);
        best.push((v0, base));
        for (v, start) in best.clone() {
            if search.found.is_some() {
                break;
            }
            search.refine(start, v, cfg.refine_evals, &mut rng);
        }
    }
    let best_value = best.iter().map(|b| b.0).fold(f64::INFINITY, f64::min);
    match search.found {
        Some(y) => MissOutcome {
            misses: false,
            witness: Some(y),
            best_value: domain.defining(&y).min(best_value),
            residual: h.functional(&y).norm(),
            evaluations: search.evals,
        },
        None => MissOutcome {
            misses: true,
            witness: None,
            best_value,
            residual: 0.0,
            evaluations: search.evals,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{Polydisc, Tetrablock};
    use crate::projective::{ProjVec2, ProjVec3};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn plane_at_the_rim_misses() {
        let h = Hyperplane::new([c(0.0), c(0.0), c(1.0)], ProjVec3::from_real([0.0, 0.0, 1.0]).unwrap());
        let out = hyperplane_misses_domain(&h, &Tetrablock, &MissCheck::with_samples(20_000, 1));
        assert!(out.misses);
        assert!(out.best_value >= 0.0);
    }

    #[test]
    fn coordinate_plane_hits_at_the_origin() {
        let h = Hyperplane::new([c(0.0); 3], ProjVec3::from_real([1.0, 0.0, 0.0]).unwrap());
        let out = hyperplane_misses_domain(&h, &Tetrablock, &MissCheck::with_samples(1000, 2));
        assert!(!out.misses);
        let y = out.witness.unwrap();
        assert!(out.residual <= 1e-10);
        assert!(Tetrablock.contains(&y));
    }

    #[test]
    fn refinement_finds_thin_intersections() {
        // the line z₁ + z₂ = 1.999 only meets the bidisc near (1, 1)
        let h = Hyperplane::new([c(1.999), c(0.0)], ProjVec2::from_real([1.0, 1.0]).unwrap());
        let out = hyperplane_misses_domain(&h, &Polydisc::<2>, &MissCheck::with_samples(200, 3));
        assert!(!out.misses);
        let y = out.witness.unwrap();
        assert!(y[0].norm() < 1.0 && y[1].norm() < 1.0);
    }
}
