//! Projective classes of coefficient vectors and the affine hyperplanes they
//! define.

use crate::domains::C64;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Relative gap under which two component moduli count as tied for the
/// normalizing index.
const TIE_REL: f64 = 1e-12;

/// A point `[v]` of `P^{N−1}`, stored with its largest-modulus component
/// scaled to 1 (ties resolved towards the lower index).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<C64>", into = "Vec<C64>")]
pub struct ProjVec<const N: usize> {
    coords: [C64; N],
}

pub type ProjVec2 = ProjVec<2>;
pub type ProjVec3 = ProjVec<3>;

fn pivot<const N: usize>(v: &[C64; N]) -> usize {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    v.iter().position(|z| z.norm() >= max * (1.0 - TIE_REL)).unwrap_or(0)
}

impl<const N: usize> ProjVec<N> {
    pub fn new(v: [C64; N]) -> Result<Self> {
        if v.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite);
        }
        if v.iter().all(|z| z.norm_sqr() == 0.0) {
            return Err(Error::ZeroVector);
        }
        let k = pivot(&v);
        let scale = v[k];
        let mut coords = v.map(|z| z / scale);
        coords[k] = C64::new(1.0, 0.0);
        Ok(Self { coords })
    }

    pub fn from_real(v: [f64; N]) -> Result<Self> {
        Self::new(v.map(|x| C64::new(x, 0.0)))
    }

    pub fn coords(&self) -> [C64; N] {
        self.coords
    }

    /// Index of the component normalized to 1.
    pub fn pivot(&self) -> usize {
        pivot(&self.coords)
    }

    /// Multiply component `j` by `factors[j]`.
    pub fn scaled(&self, factors: [C64; N]) -> Result<Self> {
        let mut v = self.coords;
        for (z, f) in v.iter_mut().zip(factors) {
            *z *= f;
        }
        Self::new(v)
    }
}

impl<const N: usize> TryFrom<Vec<C64>> for ProjVec<N> {
    type Error = Error;
    fn try_from(v: Vec<C64>) -> Result<Self> {
        let len = v.len();
        let arr: [C64; N] = v
            .try_into()
            .map_err(|_| Error::Precondition(format!("expected {N} coefficients, got {len}")))?;
        Self::new(arr)
    }
}

impl<const N: usize> From<ProjVec<N>> for Vec<C64> {
    fn from(v: ProjVec<N>) -> Vec<C64> {
        v.coords.to_vec()
    }
}

/// Whether `u` and `v` are the same projective class.
///
/// Both are rescaled at the pivot of `u` and compared componentwise, which
/// stays stable when the pivot of `v` is a near-tie.
pub fn proj_equal<const N: usize>(u: &ProjVec<N>, v: &ProjVec<N>, tol: f64) -> bool {
    let k = u.pivot();
    let vk = v.coords[k];
    if vk.norm() <= tol {
        return false;
    }
    u.coords
        .iter()
        .zip(v.coords.iter())
        .all(|(a, b)| (a - b / vk).norm() <= tol)
}

/// The affine hyperplane `{y : Σ aⱼ(yⱼ − baseⱼ) = 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hyperplane<const N: usize> {
    #[serde(with = "serde_arrays")]
    pub base: [C64; N],
    pub coeffs: ProjVec<N>,
}

pub type AffineHyperplane = Hyperplane<3>;
pub type AffineLine2 = Hyperplane<2>;

impl<const N: usize> Hyperplane<N> {
    pub fn new(base: [C64; N], coeffs: ProjVec<N>) -> Self {
        Self { base, coeffs }
    }

    /// `Σ aⱼ(yⱼ − baseⱼ)`
    pub fn functional(&self, y: &[C64; N]) -> C64 {
        self.coeffs
            .coords
            .iter()
            .zip(y.iter().zip(self.base.iter()))
            .map(|(a, (y, b))| a * (y - b))
            .sum()
    }

    /// `d` in the equation `Σ aⱼyⱼ = d`.
    pub fn constant(&self) -> C64 {
        self.coeffs
            .coords
            .iter()
            .zip(self.base.iter())
            .map(|(a, b)| a * b)
            .sum()
    }
}

pub(crate) mod serde_arrays {
    use crate::domains::C64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer, const N: usize>(v: &[C64; N], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.as_slice().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, const N: usize>(d: D) -> std::result::Result<[C64; N], D::Error> {
        let v = Vec::<C64>::deserialize(d)?;
        let len = v.len();
        v.try_into()
            .map_err(|_| serde::de::Error::invalid_length(len, &"a point of the ambient space"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn normalization_scales_the_largest_component() {
        let v = ProjVec3::from_real([-2.0, -2.0, 1.0]).unwrap();
        assert_eq!(v.coords(), [c(1.0, 0.0), c(1.0, 0.0), c(-0.5, 0.0)]);
        let v = ProjVec2::from_real([-2.0, 1.0]).unwrap();
        assert_eq!(v.coords(), [c(1.0, 0.0), c(-0.5, 0.0)]);
        assert_eq!(ProjVec3::from_real([0.0; 3]), Err(Error::ZeroVector));
    }

    #[test]
    fn equality_examples() {
        let tol = 1e-9;
        let a = ProjVec3::from_real([2.0, 0.0, 0.0]).unwrap();
        let b = ProjVec3::from_real([1.0, 0.0, 0.0]).unwrap();
        assert!(proj_equal(&a, &b, tol));
        let e2 = ProjVec3::from_real([0.0, 1.0, 0.0]).unwrap();
        assert!(!proj_equal(&b, &e2, tol));
        let u = ProjVec3::new([c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)]).unwrap();
        let v = ProjVec3::new([c(0.0, -1.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(proj_equal(&u, &v, tol));
        assert!(proj_equal(&v, &u, tol));
    }

    #[test]
    fn near_tie_pivots_still_compare_equal() {
        let u = ProjVec2::new([c(1.0, 0.0), c(1.0 + 1e-13, 0.0)]).unwrap();
        let v = ProjVec2::new([c(1.0 + 1e-13, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(!proj_equal(&u, &v, 1e-15));
        assert!(proj_equal(&u, &v, 1e-9));
    }

    #[test]
    fn hyperplane_functional_and_constant() {
        let h = Hyperplane::new(
            [c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            ProjVec3::from_real([-2.0, -2.0, 1.0]).unwrap(),
        );
        // normalized coefficients (1, 1, -1/2): y₁ + y₂ − y₃/2 = 2
        assert_eq!(h.constant(), c(2.0, 0.0));
        assert_eq!(h.functional(&h.base), c(0.0, 0.0));
        assert_eq!(h.functional(&[c(0.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)]), c(0.0, 0.0));
    }

    #[test]
    fn serde_round_trip() {
        let h = Hyperplane::new(
            [c(0.5, 0.1), c(0.0, 0.0)],
            ProjVec2::new([c(0.2, 0.3), c(-1.0, 0.5)]).unwrap(),
        );
        let s = serde_json::to_string(&h).unwrap();
        let back: AffineLine2 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
        assert!(serde_json::from_str::<ProjVec2>("[[0.0,0.0],[0.0,0.0]]").is_err());
    }
}
