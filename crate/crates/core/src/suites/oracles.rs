use crate::domains::{e_defining, CPoint2, CPoint3, C64};
use crate::error::Result;
use crate::rng::{uniform_disc, SeededRng};

/// Decide `q ∈ π(D_ρ)` by looking for a preimage: random search for a zero
/// `z` of `z(s − z) − p`, then test the pair `(z, s − z)`.
///
/// Uses at most `attempts` evaluations and no root formula. Roots lie in
/// `|z| ≤ 1 + max(|s|, |p|)`, which is where the search starts; `|f|` has no
/// local minima besides its zeros, so a short global phase suffices.
pub fn random_search_preimage(q: &CPoint2, rho: f64, attempts: usize, rng: &mut SeededRng) -> bool {
    let f = |z: C64| (z * (q.s - z) - q.p).norm();
    let reach = 1.0 + q.s.norm().max(q.p.norm());
    let scale = 1.0 + q.s.norm() + q.p.norm();
    let first = attempts.min(256);
    let mut best = C64::new(0.0, 0.0);
    let mut fb = f(best);
    for _ in 0..first {
        let z = uniform_disc(rng, reach);
        let v = f(z);
        if v < fb {
            best = z;
            fb = v;
        }
    }
    let mut used = first;
    let mut radius = 2.0 * reach / (first as f64).sqrt();
    while used < attempts && fb > 1e-15 * scale && radius > 1e-17 {
        let mut improved = false;
        for _ in 0..16 {
            let z = best + uniform_disc(rng, radius);
            used += 1;
            let v = f(z);
            if v < fb {
                best = z;
                fb = v;
                improved = true;
            }
        }
        if !improved {
            radius *= 0.5;
        }
    }
    // a double root is only located to about sqrt(f)
    if fb > 1e-12 * scale {
        return false;
    }
    let other = q.s - best;
    best.norm() < 1.0 && other.norm() < 1.0 && q.p.norm() < rho
}

/// Holomorphic gradient of the tetrablock defining function by central
/// differences: `∂e/∂zⱼ = (∂e/∂xⱼ − i ∂e/∂yⱼ)/2`.
pub fn fd_gradient(x: &CPoint3, h: f64) -> Result<[C64; 3]> {
    let base = x.to_array();
    let mut out = [C64::new(0.0, 0.0); 3];
    for j in 0..3 {
        let mut d = [0.0; 2];
        for (k, step) in [C64::new(h, 0.0), C64::new(0.0, h)].into_iter().enumerate() {
            let mut plus = base;
            let mut minus = base;
            plus[j] += step;
            minus[j] -= step;
            let ep = e_defining(&CPoint3::from_array(plus))?;
            let em = e_defining(&CPoint3::from_array(minus))?;
            d[k] = (ep - em) / (2.0 * h);
        }
        out[j] = C64::new(d[0], -d[1]) / 2.0;
    }
    Ok(out)
}
