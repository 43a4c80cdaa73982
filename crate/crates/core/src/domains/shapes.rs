use super::{e_value, g2_value, CPoint2, CPoint3, Rho, C64};
use crate::rng::{uniform_disc, unit_phase, SeededRng};
use rand::Rng;

/// A bounded domain inside the closed unit polydisc of C^N.
///
/// `defining` must be negative exactly on the domain; `contains` may be
/// overridden with a faster test but has to agree with it.
pub trait Domain<const N: usize>: Send + Sync {
    fn label(&self) -> String;

    fn defining(&self, z: &[C64; N]) -> f64;

    fn contains(&self, z: &[C64; N]) -> bool {
        self.defining(z) < 0.0
    }

    /// Radii of a polydisc containing the domain.
    fn bounds(&self) -> [f64; N] {
        [1.0; N]
    }

    /// A point of the domain. Distribution is sampler-specific, not
    /// necessarily uniform.
    fn sample_interior(&self, rng: &mut SeededRng) -> [C64; N];
}

/// The tetrablock `E`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Tetrablock;

impl Domain<3> for Tetrablock {
    fn label(&self) -> String {
        "E".into()
    }

    fn defining(&self, z: &[C64; 3]) -> f64 {
        e_value(&CPoint3::from_array(*z))
    }

    fn contains(&self, z: &[C64; 3]) -> bool {
        z[2].norm_sqr() < 1.0 && self.defining(z) < 0.0
    }

    /// Draws `x₁` and then `(x₂, x₃)` through the linear change of variables
    /// `a = x₂ − x̄₁x₃`, `b = x₁x₂ − x₃`, under which the fibre of the
    /// tetrablock over `x₁` is the ball `|a| + |b| < 1 − |x₁|²`. The `x₁`
    /// marginal `∝ (1 − |x₁|²)²` makes the result uniform.
    fn sample_interior(&self, rng: &mut SeededRng) -> [C64; 3] {
        loop {
            let u: f64 = rng.random();
            let m2 = 1.0 - (1.0 - u).cbrt();
            let x1 = unit_phase(rng) * m2.sqrt();
            let budget = 1.0 - m2;
            // (|a|, |b|) uniform on the simplex with density ∝ |a||b|
            let g1 = -(rng.random::<f64>() * rng.random::<f64>()).ln();
            let g2 = -(rng.random::<f64>() * rng.random::<f64>()).ln();
            let g3 = -rng.random::<f64>().ln();
            let total = g1 + g2 + g3;
            if !(total.is_finite() && total > 0.0) {
                continue;
            }
            let a = unit_phase(rng) * (budget * g1 / total);
            let b = unit_phase(rng) * (budget * g2 / total);
            let x2 = (a - x1.conj() * b) / budget;
            let x3 = x1 * x2 - b;
            let z = [x1, x2, x3];
            if self.contains(&z) {
                return z;
            }
        }
    }
}

/// The symmetrized bidisc `G₂`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SymmetrizedBidisc;

impl Domain<2> for SymmetrizedBidisc {
    fn label(&self) -> String {
        "G2".into()
    }

    fn defining(&self, z: &[C64; 2]) -> f64 {
        g2_value(&CPoint2::from_array(*z))
    }

    fn bounds(&self) -> [f64; 2] {
        [2.0, 1.0]
    }

    fn sample_interior(&self, rng: &mut SeededRng) -> [C64; 2] {
        loop {
            let (a, b) = (uniform_disc(rng, 1.0), uniform_disc(rng, 1.0));
            let z = [a + b, a * b];
            if self.contains(&z) {
                return z;
            }
        }
    }
}

/// `G₂,ρ = π(D_ρ)`.
#[derive(Debug, Clone, Copy)]
pub struct G2RhoDomain {
    pub rho: Rho,
}

impl G2RhoDomain {
    pub fn new(rho: Rho) -> Self {
        Self { rho }
    }
}

impl Domain<2> for G2RhoDomain {
    fn label(&self) -> String {
        format!("G2RHO({})", self.rho.value())
    }

    /// `max(g2, |p| − ρ)`: same sign as `g2rho_defining`, but free of the
    /// root computation, whose error near double roots is of order `√ε`.
    fn defining(&self, z: &[C64; 2]) -> f64 {
        let q = CPoint2::from_array(*z);
        g2_value(&q).max(q.p.norm() - self.rho.value())
    }

    fn bounds(&self) -> [f64; 2] {
        [2.0, self.rho.value()]
    }

    fn sample_interior(&self, rng: &mut SeededRng) -> [C64; 2] {
        loop {
            let [a, b] = DRhoDomain::new(self.rho).sample_interior(rng);
            let z = [a + b, a * b];
            if self.contains(&z) {
                return z;
            }
        }
    }
}

/// `D_ρ = {|z₁|, |z₂| < 1, |z₁z₂| < ρ}`.
#[derive(Debug, Clone, Copy)]
pub struct DRhoDomain {
    pub rho: Rho,
}

impl DRhoDomain {
    pub fn new(rho: Rho) -> Self {
        Self { rho }
    }
}

impl Domain<2> for DRhoDomain {
    fn label(&self) -> String {
        format!("DRHO({})", self.rho.value())
    }

    fn defining(&self, z: &[C64; 2]) -> f64 {
        (z[0].norm() - 1.0)
            .max(z[1].norm() - 1.0)
            .max((z[0] * z[1]).norm() - self.rho.value())
    }

    fn sample_interior(&self, rng: &mut SeededRng) -> [C64; 2] {
        loop {
            let z = [uniform_disc(rng, 1.0), uniform_disc(rng, 1.0)];
            if self.contains(&z) {
                return z;
            }
        }
    }
}

/// The open unit polydisc of C^N.
#[derive(Debug, Clone, Copy, Default)]
pub struct Polydisc<const N: usize>;

impl<const N: usize> Domain<N> for Polydisc<N> {
    fn label(&self) -> String {
        format!("POLYDISC{N}")
    }

    fn defining(&self, z: &[C64; N]) -> f64 {
        z.iter().map(|c| c.norm()).fold(f64::NEG_INFINITY, f64::max) - 1.0
    }

    fn sample_interior(&self, rng: &mut SeededRng) -> [C64; N] {
        std::array::from_fn(|_| uniform_disc(rng, 1.0))
    }
}

/// Control domain `D² \ {‖z‖∞ ≤ inner}`: bounded, connected, but its slices
/// through the removed block are annuli.
#[derive(Debug, Clone, Copy)]
pub struct PuncturedBidisc {
    pub inner: f64,
}

impl Default for PuncturedBidisc {
    fn default() -> Self {
        Self { inner: 0.3 }
    }
}

impl Domain<2> for PuncturedBidisc {
    fn label(&self) -> String {
        format!("CONTROL({})", self.inner)
    }

    fn defining(&self, z: &[C64; 2]) -> f64 {
        let sup = z[0].norm().max(z[1].norm());
        (sup - 1.0).max(self.inner - sup)
    }

    fn sample_interior(&self, rng: &mut SeededRng) -> [C64; 2] {
        loop {
            let z = [uniform_disc(rng, 1.0), uniform_disc(rng, 1.0)];
            if self.contains(&z) {
                return z;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{in_drho, in_e, in_g2, in_g2rho};
    use crate::rng::seeded;

    #[test]
    fn tetrablock_sampler_stays_inside() {
        let mut rng = seeded(3);
        let mut max_mod: f64 = 0.0;
        for _ in 0..20_000 {
            let z = Tetrablock.sample_interior(&mut rng);
            assert!(in_e(&CPoint3::from_array(z)));
            max_mod = max_mod.max(z.iter().map(|c| c.norm()).fold(0.0, f64::max));
        }
        // the sampler reaches far into the domain, not just a core
        assert!(max_mod > 0.95);
    }

    #[test]
    fn tetrablock_sampler_matches_rejection_volume() {
        // fraction of polydisc samples landing in E versus the sampler's
        // radial profile: compare mean |x₃|² under both
        let mut rng = seeded(4);
        let mut rej = Vec::new();
        while rej.len() < 4000 {
            let z: [C64; 3] = std::array::from_fn(|_| uniform_disc(&mut rng, 1.0));
            if Tetrablock.contains(&z) {
                rej.push(z[2].norm_sqr());
            }
        }
        let direct: Vec<f64> = (0..4000)
            .map(|_| Tetrablock.sample_interior(&mut rng)[2].norm_sqr())
            .collect();
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        assert!((mean(&rej) - mean(&direct)).abs() < 0.02);
    }

    #[test]
    fn planar_samplers_stay_inside() {
        let mut rng = seeded(5);
        let rho = Rho::new(0.3).unwrap();
        for _ in 0..5000 {
            assert!(in_g2(&CPoint2::from_array(SymmetrizedBidisc.sample_interior(&mut rng))));
            assert!(in_g2rho(
                &CPoint2::from_array(G2RhoDomain::new(rho).sample_interior(&mut rng)),
                rho
            ));
            assert!(in_drho(
                &CPoint2::from_array(DRhoDomain::new(rho).sample_interior(&mut rng)),
                rho
            ));
            assert!(PuncturedBidisc::default().contains(&PuncturedBidisc::default().sample_interior(&mut rng)));
        }
    }

    #[test]
    fn contains_agrees_with_defining_sign() {
        let mut rng = seeded(6);
        let g = G2RhoDomain::new(Rho::new(0.6).unwrap());
        for _ in 0..20_000 {
            let z3: [C64; 3] = std::array::from_fn(|_| uniform_disc(&mut rng, 1.3));
            assert_eq!(Tetrablock.contains(&z3), Tetrablock.defining(&z3) < 0.0);
            let z2 = [uniform_disc(&mut rng, 2.2), uniform_disc(&mut rng, 1.2)];
            let d = g.defining(&z2);
            if d.abs() > 1e-12 {
                assert_eq!(g.contains(&z2), d < 0.0);
            }
        }
    }
}
