use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::projective::{project, IndexSet, ProjectivePoint};
use crate::Scalar;

/// One point on each k-dimensional coordinate face of ℙⁿ.
#[derive(Clone, Debug, PartialEq)]
pub struct FaceInstance<T: Scalar> {
    n: usize,
    k: usize,
    points: BTreeMap<IndexSet, ProjectivePoint<T>>,
}

pub(crate) fn check_arity(n: usize, k: usize) -> Result<()> {
    if n < 2 || k < 1 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "need n >= 2 and 1 <= k <= n-1, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

impl<T: Scalar> FaceInstance<T> {
    /// Builds an instance, requiring exactly one point of ℙᵏ per (k+1)-subset.
    pub fn new(
        n: usize,
        k: usize,
        points: impl IntoIterator<Item = (IndexSet, ProjectivePoint<T>)>,
    ) -> Result<Self> {
        check_arity(n, k)?;
        let mut map = BTreeMap::new();
        for (face, p) in points {
            if face.len() != k + 1 || face.members().last().is_some_and(|&m| m > n) {
                return Err(Error::InvalidIndexSet(format!(
                    "{face} is not a {}-subset of {{0..{n}}}",
                    k + 1
                )));
            }
            if p.dim() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: p.dim(),
                });
            }
            if map.insert(face.clone(), p).is_some() {
                return Err(Error::InvalidArgument(format!("face {face} given twice")));
            }
        }
        let expected = IndexSet::subsets(n, k + 1).len();
        if map.len() != expected {
            return Err(Error::InvalidArgument(format!(
                "expected {expected} face points, got {}",
                map.len()
            )));
        }
        Ok(Self { n, k, points: map })
    }

    /// The projections of a single point of ℙⁿ to every ⟨I⟩.
    pub fn from_point(p: &ProjectivePoint<T>, k: usize) -> Result<Self> {
        let n = p.dim();
        check_arity(n, k)?;
        let points = IndexSet::subsets(n, k + 1)
            .into_iter()
            .map(|face| project(p, &face).map(|q| (face, q)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, k, points)
    }

    /// The n = 2, k = 1 instance of a planar cevian triple `(d, e, f)`.
    ///
    /// The feet `(0:d0:d1)`, `(e1:0:e0)`, `(f0:f1:0)` become
    /// `P_{1,2} = (d0:d1)`, `P_{0,2} = (e1:e0)` and `P_{0,1} = (f0:f1)`.
    pub fn from_cevian_triple(c: &crate::classic::CevianTriple<T>) -> Result<Self> {
        let (d, e, f) = (c.d.coords(), c.e.coords(), c.f.coords());
        let face = |m: [usize; 2]| IndexSet::new(m.to_vec(), 2).expect("valid edge");
        let pt = |a: &T, b: &T| ProjectivePoint::new(vec![a.clone(), b.clone()]);
        Self::new(
            2,
            1,
            [
                (face([0, 1]), pt(&f[0], &f[1])?),
                (face([0, 2]), pt(&e[1], &e[0])?),
                (face([1, 2]), pt(&d[0], &d[1])?),
            ],
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn point(&self, face: &IndexSet) -> Option<&ProjectivePoint<T>> {
        self.points.get(face)
    }

    /// Face points in lexicographic order of the faces.
    pub fn points(&self) -> impl Iterator<Item = (&IndexSet, &ProjectivePoint<T>)> {
        self.points.iter()
    }

    /// Replaces the point on one face; the face must already be present.
    pub fn with_point(&self, face: &IndexSet, p: ProjectivePoint<T>) -> Result<Self> {
        if !self.points.contains_key(face) {
            return Err(Error::InvalidIndexSet(format!(
                "{face} is not a face of this instance"
            )));
        }
        if p.dim() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: p.dim(),
            });
        }
        let mut out = self.clone();
        out.points.insert(face.clone(), p);
        Ok(out)
    }

    /// First zero coordinate, as (face, global index), if any.
    pub fn torus_violation(&self) -> Option<(&IndexSet, usize)> {
        self.points.iter().find_map(|(face, p)| {
            p.coords()
                .iter()
                .position(|c| c.is_zero())
                .map(|pos| (face, face.members()[pos]))
        })
    }

    pub fn is_on_torus(&self) -> bool {
        self.torus_violation().is_none()
    }

    /// The partial matrix, rows in lexicographic order of the faces.
    pub fn build_matrix(&self) -> PartialMatrix<T> {
        let rows = self
            .points
            .iter()
            .map(|(face, p)| {
                let mut row = vec![None; self.n + 1];
                for (&j, c) in face.members().iter().zip(p.coords()) {
                    row[j] = Some(c.clone());
                }
                (face.clone(), row)
            })
            .collect();
        PartialMatrix {
            n: self.n,
            k: self.k,
            rows,
        }
    }
}

/// A matrix with one row per face; entry (I, j) is specified iff j ∈ I.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialMatrix<T> {
    n: usize,
    k: usize,
    rows: Vec<(IndexSet, Vec<Option<T>>)>,
}

impl<T: Scalar> PartialMatrix<T> {
    /// Builds a matrix from rows given in any order.
    ///
    /// Every face must appear once and each row must be specified exactly on
    /// the columns of its face.
    pub fn from_rows(n: usize, k: usize, rows: Vec<(IndexSet, Vec<Option<T>>)>) -> Result<Self> {
        check_arity(n, k)?;
        let m = Self { n, k, rows };
        m.to_instance()?;
        for (face, row) in &m.rows {
            if row.len() != n + 1 {
                return Err(Error::DimensionMismatch {
                    expected: n + 1,
                    found: row.len(),
                });
            }
            if row
                .iter()
                .enumerate()
                .any(|(j, e)| e.is_some() != face.contains(j))
            {
                return Err(Error::InvalidArgument(format!(
                    "row {face} must be specified exactly on its own columns"
                )));
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> &[(IndexSet, Vec<Option<T>>)] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<&T> {
        self.rows[row].1[col].as_ref()
    }

    /// The same matrix with rows reordered: row `i` of the result is row
    /// `order[i]` of `self`.
    pub fn permute_rows(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.rows.len()];
        if order.len() != self.rows.len()
            || order
                .iter()
                .any(|&i| i >= seen.len() || std::mem::replace(&mut seen[i], true))
        {
            return Err(Error::InvalidArgument(
                "not a permutation of the rows".into(),
            ));
        }
        Ok(Self {
            n: self.n,
            k: self.k,
            rows: order.iter().map(|&i| self.rows[i].clone()).collect(),
        })
    }

    /// Reads the face points back out of the specified entries.
    pub fn to_instance(&self) -> Result<FaceInstance<T>> {
        let points = self
            .rows
            .iter()
            .map(|(face, row)| {
                let coords = face
                    .members()
                    .iter()
                    .map(|&j| {
                        row.get(j).cloned().flatten().ok_or_else(|| {
                            Error::InvalidArgument(format!("row {face} lacks column {j}"))
                        })
                    })
                    .collect::<Result<Vec<T>>>()?;
                Ok((face.clone(), ProjectivePoint::new(coords)?))
            })
            .collect::<Result<Vec<_>>>()?;
        FaceInstance::new(self.n, self.k, points)
    }

    /// Fills every row with a multiple of `x`, scaled to agree with the first
    /// specified entry of the row whose x-coordinate is nonzero.
    ///
    /// The result has rank one by construction; it agrees with the specified
    /// entries only when `x` is a valid rank-one completion.
    pub fn complete_with(&self, x: &ProjectivePoint<T>) -> Result<Vec<Vec<T>>> {
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.dim(),
            });
        }
        let xs = x.coords();
        self.rows
            .iter()
            .map(|(face, row)| {
                let j = face
                    .members()
                    .iter()
                    .copied()
                    .find(|&j| !xs[j].is_zero())
                    .ok_or(Error::NotRankOneCompletable)?;
                let scale = row[j].clone().expect("specified on its face") / xs[j].clone();
                Ok(xs.iter().map(|c| c.clone() * scale.clone()).collect())
            })
            .collect()
    }
}
