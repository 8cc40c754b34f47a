use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::projective::{IndexSet, ProjectivePoint};
use crate::Scalar;

use super::instance::{check_arity, FaceInstance};

/// Ground-truth label of a generated instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InstanceKind {
    /// Projections of one point: concurrent.
    Positive,
    /// A positive instance with one coordinate rescaled: not concurrent.
    Perturbed,
}

/// A nonzero rational `p/q` with `|p| <= 9` and `1 <= q <= 5`.
pub(crate) fn small_nonzero<T: Scalar, R: Rng>(rng: &mut R) -> T {
    loop {
        let num = rng.random_range(-9..=9i64);
        if num != 0 {
            return T::from_ratio(num, rng.random_range(1..=5i64));
        }
    }
}

/// A point of ℙⁿ with every coordinate a small nonzero rational.
pub fn random_point<T: Scalar, R: Rng>(n: usize, rng: &mut R) -> ProjectivePoint<T> {
    let coords = (0..=n).map(|_| small_nonzero(rng)).collect();
    ProjectivePoint::new(coords).expect("coordinates are nonzero")
}

/// A seeded instance on the torus.
///
/// The same `(n, k, seed, kind)` always yields the same instance. Perturbed
/// instances multiply one uniformly chosen face coordinate by a small nonzero
/// rational different from 1, which breaks every constraint through it.
pub fn random_instance<T: Scalar>(
    n: usize,
    k: usize,
    seed: u64,
    kind: InstanceKind,
) -> Result<FaceInstance<T>> {
    check_arity(n, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = random_point(n, &mut rng);
    let inst = FaceInstance::from_point(&p, k)?;
    if kind == InstanceKind::Positive {
        return Ok(inst);
    }
    let faces = IndexSet::subsets(n, k + 1);
    let slot = rng.random_range(0..faces.len() * (k + 1));
    let face = &faces[slot / (k + 1)];
    let factor: T = loop {
        let f = small_nonzero::<T, _>(&mut rng);
        if !f.is_one() {
            break f;
        }
    };
    let mut coords = inst.point(face).expect("face present").coords().to_vec();
    coords[slot % (k + 1)] = coords[slot % (k + 1)].clone() * factor;
    inst.with_point(face, ProjectivePoint::new(coords)?)
}
