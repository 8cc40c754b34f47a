//! Homogeneous coordinates, coordinate faces and linear subspaces of ℙⁿ.
//!
//! Subspaces are stored by a basis of their cone in kⁿ⁺¹ kept in reduced row
//! echelon form, so two subspaces are equal exactly when their bases are.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::linalg;
use crate::Scalar;

/// A point of ℙᵐ given by m+1 homogeneous coordinates, not all zero.
///
/// The coordinates are kept exactly as supplied; equality is equality of
/// points, i.e. up to a nonzero scalar.
#[derive(Clone, Debug)]
pub struct ProjectivePoint<T> {
    coords: Vec<T>,
}

impl<T: Scalar> ProjectivePoint<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidPoint);
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    /// Projective dimension m of the ambient ℙᵐ.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// The representative whose first nonzero coordinate is 1.
    pub fn normalize(&self) -> Self {
        let lead = self.leading().1.clone();
        Self {
            coords: self
                .coords
                .iter()
                .map(|c| c.clone() / lead.clone())
                .collect(),
        }
    }

    /// Multiplies every coordinate by `factor`.
    pub fn scaled(&self, factor: &T) -> Result<Self> {
        if factor.is_zero() {
            return Err(Error::InvalidArgument(
                "scale factor must be nonzero".into(),
            ));
        }
        Ok(Self {
            coords: self
                .coords
                .iter()
                .map(|c| c.clone() * factor.clone())
                .collect(),
        })
    }

    /// True when no coordinate vanishes.
    pub fn is_on_torus(&self) -> bool {
        self.coords.iter().all(|c| !c.is_zero())
    }

    /// Places this point of ℙᵏ into the coordinate subspace ⟨face⟩ ⊂ ℙⁿ.
    pub fn embed(&self, face: &IndexSet, n: usize) -> Result<Self> {
        if face.len() != self.coords.len() {
            return Err(Error::DimensionMismatch {
                expected: face.len(),
                found: self.coords.len(),
            });
        }
        if face.members().last().is_some_and(|&m| m > n) {
            return Err(Error::InvalidIndexSet(format!(
                "{face} is not inside {{0..{n}}}"
            )));
        }
        let mut coords = vec![T::zero(); n + 1];
        for (&i, c) in face.members().iter().zip(&self.coords) {
            coords[i] = c.clone();
        }
        Ok(Self { coords })
    }

    fn leading(&self) -> (usize, &T) {
        self.coords
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .expect("a projective point has a nonzero coordinate")
    }
}

impl<T: Scalar> PartialEq for ProjectivePoint<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.coords.len() != other.coords.len() {
            return false;
        }
        let (i, a) = self.leading();
        let b = &other.coords[i];
        if b.is_zero() {
            return false;
        }
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(x, y)| x.clone() * b.clone() == y.clone() * a.clone())
    }
}

impl<T: Scalar> Eq for ProjectivePoint<T> {}

impl<T: fmt::Display> fmt::Display for ProjectivePoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coords.iter().join(":"))
    }
}

/// A strictly increasing set of coordinate indices.
///
/// The derived ordering is lexicographic, which is the row order used for
/// partial matrices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Validates that `members` is strictly increasing and bounded by `n`.
    pub fn new(members: Vec<usize>, n: usize) -> Result<Self> {
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndexSet(format!(
                "{members:?} is not strictly increasing"
            )));
        }
        if members.last().is_some_and(|&m| m > n) {
            return Err(Error::InvalidIndexSet(format!(
                "{members:?} has a member outside {{0..{n}}}"
            )));
        }
        Ok(Self(members))
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.binary_search(&j).is_ok()
    }

    /// Position of `j` within the set, i.e. the local coordinate index.
    pub fn position(&self, j: usize) -> Option<usize> {
        self.0.binary_search(&j).ok()
    }

    pub fn complement(&self, n: usize) -> Self {
        Self((0..=n).filter(|j| !self.contains(*j)).collect())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .copied()
                .filter(|&j| other.contains(j))
                .collect(),
        )
    }

    /// All subsets of `{0..n}` of the given size, in lexicographic order.
    pub fn subsets(n: usize, size: usize) -> Vec<Self> {
        (0..=n).combinations(size).map(Self).collect()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

/// Face opposite ⟨I⟩ on the standard simplex of ℙⁿ: the complementary index set.
pub fn opposite_face(face: &IndexSet, n: usize) -> Result<IndexSet> {
    if face.members().last().is_some_and(|&m| m > n) {
        return Err(Error::InvalidIndexSet(format!(
            "{face} is not inside {{0..{n}}}"
        )));
    }
    if face.is_empty() || face.len() == n + 1 {
        return Err(Error::InvalidIndexSet(format!(
            "{face} must be a proper nonempty subset of {{0..{n}}}"
        )));
    }
    Ok(face.complement(n))
}

/// Projection ℙⁿ ⇢ ℙᵏ keeping the coordinates indexed by `face`.
pub fn project<T: Scalar>(p: &ProjectivePoint<T>, face: &IndexSet) -> Result<ProjectivePoint<T>> {
    if face.is_empty() || face.members().last().is_some_and(|&m| m > p.dim()) {
        return Err(Error::InvalidIndexSet(format!(
            "{face} does not index coordinates of a point of P^{}",
            p.dim()
        )));
    }
    let coords: Vec<T> = face
        .members()
        .iter()
        .map(|&i| p.coords[i].clone())
        .collect();
    ProjectivePoint::new(coords).map_err(|_| Error::ProjectionUndefined)
}

/// A projective linear subspace of ℙᵐ.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSubspace<T> {
    ambient_dim: usize,
    basis: Vec<Vec<T>>,
}

impl<T: Scalar> LinearSubspace<T> {
    /// The span of the given homogeneous vectors.
    pub fn from_vectors(ambient_dim: usize, vectors: Vec<Vec<T>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim + 1) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: v.len().saturating_sub(1),
            });
        }
        let (basis, _) = linalg::rref(vectors, ambient_dim + 1);
        if basis.is_empty() {
            return Err(Error::InvalidArgument(
                "the zero vector spans no projective subspace".into(),
            ));
        }
        Ok(Self { ambient_dim, basis })
    }

    pub fn from_point(p: &ProjectivePoint<T>) -> Self {
        Self::from_vectors(p.dim(), vec![p.coords.clone()]).expect("a point is a nonzero vector")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn proj_dim(&self) -> usize {
        self.basis.len() - 1
    }

    /// The reduced row echelon basis.
    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    /// Linear forms cutting out the subspace (a basis of its annihilator).
    pub fn annihilator(&self) -> Vec<Vec<T>> {
        linalg::kernel(&self.basis, self.ambient_dim + 1)
    }

    pub fn contains_point(&self, p: &ProjectivePoint<T>) -> bool {
        p.dim() == self.ambient_dim
            && self
                .annihilator()
                .iter()
                .all(|form| linalg::dot(form, p.coords()).is_zero())
    }

    pub fn contains(&self, other: &Self) -> bool {
        other.ambient_dim == self.ambient_dim
            && self
                .annihilator()
                .iter()
                .all(|form| other.basis.iter().all(|v| linalg::dot(form, v).is_zero()))
    }

    /// The subspace as a point, when it is zero-dimensional.
    pub fn as_point(&self) -> Option<ProjectivePoint<T>> {
        (self.basis.len() == 1).then(|| ProjectivePoint {
            coords: self.basis[0].clone(),
        })
    }
}

impl<T: Scalar> From<&ProjectivePoint<T>> for LinearSubspace<T> {
    fn from(p: &ProjectivePoint<T>) -> Self {
        Self::from_point(p)
    }
}

impl<T: Scalar> From<ProjectivePoint<T>> for LinearSubspace<T> {
    fn from(p: ProjectivePoint<T>) -> Self {
        Self::from_point(&p)
    }
}

fn common_ambient<T>(items: &[LinearSubspace<T>]) -> Result<usize> {
    let first = items
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty list of subspaces".into()))?
        .ambient_dim;
    if let Some(s) = items.iter().find(|s| s.ambient_dim != first) {
        return Err(Error::DimensionMismatch {
            expected: first,
            found: s.ambient_dim,
        });
    }
    Ok(first)
}

/// ⟨I⟩: the subspace of ℙⁿ where every coordinate outside `face` vanishes.
pub fn coordinate_subspace<T: Scalar>(face: &IndexSet, n: usize) -> Result<LinearSubspace<T>> {
    if face.is_empty() {
        return Err(Error::InvalidIndexSet("empty index set".into()));
    }
    if face.members().last().is_some_and(|&m| m > n) {
        return Err(Error::InvalidIndexSet(format!(
            "{face} is not inside {{0..{n}}}"
        )));
    }
    let basis = face
        .members()
        .iter()
        .map(|&i| {
            (0..=n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    LinearSubspace::from_vectors(n, basis)
}

/// The smallest subspace containing every input.
pub fn span<T: Scalar>(items: &[LinearSubspace<T>]) -> Result<LinearSubspace<T>> {
    let ambient = common_ambient(items)?;
    let vectors = items.iter().flat_map(|s| s.basis.iter().cloned()).collect();
    LinearSubspace::from_vectors(ambient, vectors)
}

/// Exact intersection; `None` when only the zero vector is common to all inputs.
pub fn intersect<T: Scalar>(items: &[LinearSubspace<T>]) -> Result<Option<LinearSubspace<T>>> {
    let ambient = common_ambient(items)?;
    let forms: Vec<Vec<T>> = items.iter().flat_map(|s| s.annihilator()).collect();
    let cone = linalg::kernel(&forms, ambient + 1);
    if cone.is_empty() {
        return Ok(None);
    }
    LinearSubspace::from_vectors(ambient, cone).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn pt(c: &[i64]) -> ProjectivePoint<Rational> {
        ProjectivePoint::new(
            c.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect(),
        )
        .unwrap()
    }

    fn set(m: &[usize], n: usize) -> IndexSet {
        IndexSet::new(m.to_vec(), n).unwrap()
    }

    fn show(p: &ProjectivePoint<Rational>) -> String {
        p.to_string()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(show(&pt(&[2, 4, 6]).normalize()), "(1:2:3)");
        assert_eq!(show(&pt(&[0, -3, 6]).normalize()), "(0:1:-2)");
        assert_eq!(show(&pt(&[1, 0, 0]).normalize()), "(1:0:0)");
        let once = pt(&[0, -3, 6]).normalize();
        assert_eq!(show(&once.normalize()), show(&once));
    }

    #[test]
    fn zero_vector_is_not_a_point() {
        let zero = vec![Rational::from_integer(0.into()); 3];
        assert_eq!(ProjectivePoint::new(zero), Err(Error::InvalidPoint));
    }

    #[test]
    fn equality_is_up_to_scale() {
        assert_eq!(pt(&[1, 2, 3]), pt(&[-2, -4, -6]));
        assert_ne!(pt(&[1, 2, 3]), pt(&[1, 2, 4]));
        assert_ne!(pt(&[0, 1]), pt(&[1, 0]));
        assert_ne!(pt(&[1, 1]), pt(&[1, 1, 1]));
    }

    #[test]
    fn index_set_validation() {
        assert!(IndexSet::new(vec![1, 1], 3).is_err());
        assert!(IndexSet::new(vec![2, 1], 3).is_err());
        assert!(IndexSet::new(vec![0, 4], 3).is_err());
        let subsets = IndexSet::subsets(3, 2);
        let shown: Vec<String> = subsets.iter().map(|s| s.to_string()).collect();
        assert_eq!(
            shown,
            ["{0,1}", "{0,2}", "{0,3}", "{1,2}", "{1,3}", "{2,3}"]
        );
    }

    #[test]
    fn coordinate_subspace_examples() {
        let line = coordinate_subspace::<Rational>(&set(&[0, 1], 2), 2).unwrap();
        assert_eq!(line.proj_dim(), 1);
        assert!(line.contains_point(&pt(&[3, 5, 0])));
        assert!(!line.contains_point(&pt(&[3, 5, 1])));

        let vertex = coordinate_subspace::<Rational>(&set(&[2], 2), 2).unwrap();
        assert_eq!(vertex.as_point().unwrap(), pt(&[0, 0, 1]));

        let l23 = coordinate_subspace::<Rational>(&set(&[2, 3], 3), 3).unwrap();
        assert_eq!(l23.proj_dim(), 1);
        assert!(l23.contains_point(&pt(&[0, 0, 1, 7])));
        assert!(!l23.contains_point(&pt(&[1, 0, 1, 7])));

        assert!(matches!(
            coordinate_subspace::<Rational>(&set(&[], 2), 2),
            Err(Error::InvalidIndexSet(_))
        ));
    }

    #[test]
    fn opposite_face_examples() {
        assert_eq!(opposite_face(&set(&[0, 1], 2), 2).unwrap(), set(&[2], 2));
        assert_eq!(opposite_face(&set(&[2, 3], 3), 3).unwrap(), set(&[0, 1], 3));
        assert_eq!(
            opposite_face(&set(&[0], 4), 4).unwrap(),
            set(&[1, 2, 3, 4], 4)
        );
        assert!(opposite_face(&set(&[], 2), 2).is_err());
        assert!(opposite_face(&set(&[0, 1, 2], 2), 2).is_err());
    }

    #[test]
    fn span_examples() {
        let l = span(&[pt(&[1, 0, 0]).into(), pt(&[0, 1, 0]).into()]).unwrap();
        assert_eq!(l, coordinate_subspace(&set(&[0, 1], 2), 2).unwrap());
        assert_eq!(l.proj_dim(), 1);

        let single = span(&[pt(&[1, 2, 3]).into()]).unwrap();
        assert_eq!(single.proj_dim(), 0);
        assert_eq!(single.as_point().unwrap(), pt(&[1, 2, 3]));

        let face = coordinate_subspace(&set(&[2, 3], 3), 3).unwrap();
        let plane = span(&[pt(&[1, 1, 1, 1]).into(), face]).unwrap();
        assert_eq!(plane.proj_dim(), 2);
        // rref of {(1,1,1,1),(0,0,1,0),(0,0,0,1)}
        assert_eq!(plane.basis()[0], pt(&[1, 1, 0, 0]).into_coords());

        assert!(matches!(
            span(&[pt(&[1, 0]).into(), pt(&[1, 0, 0]).into()]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(span::<Rational>(&[]).is_err());
    }

    #[test]
    fn intersect_examples() {
        let x0 = coordinate_subspace::<Rational>(&set(&[1, 2], 2), 2).unwrap();
        let x1 = coordinate_subspace::<Rational>(&set(&[0, 2], 2), 2).unwrap();
        let p = intersect(&[x0, x1]).unwrap().unwrap();
        assert_eq!(p.as_point().unwrap(), pt(&[0, 0, 1]));

        // cevian lines through the vertices and the feet (0:1:2), (1:0:3), (2:3:0)
        let a = span(&[pt(&[1, 0, 0]).into(), pt(&[0, 1, 2]).into()]).unwrap();
        let b = span(&[pt(&[0, 1, 0]).into(), pt(&[1, 0, 3]).into()]).unwrap();
        let c = span(&[pt(&[0, 0, 1]).into(), pt(&[2, 3, 0]).into()]).unwrap();
        let meet = intersect(&[a, b, c]).unwrap().unwrap();
        assert_eq!(meet.as_point().unwrap(), pt(&[2, 3, 6]));

        let l1 = span(&[pt(&[1, 0, 0, 0]).into(), pt(&[0, 1, 0, 0]).into()]).unwrap();
        let l2 = span(&[pt(&[0, 0, 1, 0]).into(), pt(&[0, 0, 0, 1]).into()]).unwrap();
        assert_eq!(intersect(&[l1, l2]).unwrap(), None);

        assert!(intersect::<Rational>(&[]).is_err());
    }

    #[test]
    fn project_examples() {
        assert_eq!(
            project(&pt(&[1, 2, 3, 4]), &set(&[2, 3], 3)).unwrap(),
            pt(&[3, 4])
        );
        assert_eq!(
            project(&pt(&[1, 0, 0]), &set(&[1, 2], 2)),
            Err(Error::ProjectionUndefined)
        );
        assert!(project(&pt(&[1, 0, 0]), &set(&[1, 3], 3)).is_err());
    }

    #[test]
    fn embed_places_coordinates() {
        let p = pt(&[3, 4]).embed(&set(&[1, 3], 3), 3).unwrap();
        assert_eq!(p, pt(&[0, 3, 0, 4]));
        assert!(pt(&[3, 4]).embed(&set(&[1], 3), 3).is_err());
    }
}
