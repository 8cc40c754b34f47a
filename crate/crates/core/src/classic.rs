//! Ceva's theorem for a Euclidean triangle.
//!
//! A triangle ABC with vertices in the affine plane z = 1 is sent to the
//! coordinate triangle of ℙ² by the inverse of
//!
//! ```text
//!     | a1 b1 c1 |
//! T = | a2 b2 c2 |
//!     |  1  1  1 |
//! ```
//!
//! after which the feet D, E, F of the cevians become `(0:d0:d1)`,
//! `(e1:0:e0)` and `(f0:f1:0)`. The cevians are concurrent exactly when
//! `d0*e0*f0 - d1*e1*f1` vanishes; off the coordinate axes this is the
//! familiar ratio product `(d0/d1)(e0/e1)(f0/f1) = 1`, with `d0/d1 = CD/DB`,
//! `e0/e1 = AE/EC` and `f0/f1 = BF/FA` as signed ratios.

use crate::error::{Error, Result};
use crate::linalg;
use crate::projective::{intersect, span, LinearSubspace, ProjectivePoint};
use crate::Scalar;

/// A triangle in the Euclidean plane.
#[derive(Clone, Debug, PartialEq)]
pub struct Triangle2D<T> {
    pub a: [T; 2],
    pub b: [T; 2],
    pub c: [T; 2],
}

impl<T: Scalar> Triangle2D<T> {
    pub fn new(a: [T; 2], b: [T; 2], c: [T; 2]) -> Result<Self> {
        let t = Self { a, b, c };
        embedding_transform(&t)?;
        Ok(t)
    }

    /// The vertices A, B, C lifted to the plane z = 1.
    pub fn lifted_vertices(&self) -> [Vec<T>; 3] {
        [lift(&self.a), lift(&self.b), lift(&self.c)]
    }
}

fn lift<T: Scalar>(p: &[T; 2]) -> Vec<T> {
    vec![p[0].clone(), p[1].clone(), T::one()]
}

/// The three cevian feet in their coordinate lines of ℙ².
#[derive(Clone, Debug, PartialEq)]
pub struct CevianTriple<T: Scalar> {
    /// Foot on BC, as `(d0:d1)`.
    pub d: ProjectivePoint<T>,
    /// Foot on AC, as `(e0:e1)`.
    pub e: ProjectivePoint<T>,
    /// Foot on AB, as `(f0:f1)`.
    pub f: ProjectivePoint<T>,
}

impl<T: Scalar> CevianTriple<T> {
    pub fn new(
        d: ProjectivePoint<T>,
        e: ProjectivePoint<T>,
        f: ProjectivePoint<T>,
    ) -> Result<Self> {
        for p in [&d, &e, &f] {
            if p.dim() != 1 {
                return Err(Error::DimensionMismatch {
                    expected: 1,
                    found: p.dim(),
                });
            }
        }
        Ok(Self { d, e, f })
    }

    /// Convenience constructor from the six homogeneous coordinates.
    pub fn from_coords(d: [T; 2], e: [T; 2], f: [T; 2]) -> Result<Self> {
        Self::new(
            ProjectivePoint::new(d.to_vec())?,
            ProjectivePoint::new(e.to_vec())?,
            ProjectivePoint::new(f.to_vec())?,
        )
    }

    /// The feet as points of ℙ²: `(0:d0:d1)`, `(e1:0:e0)`, `(f0:f1:0)`.
    pub fn feet(&self) -> [ProjectivePoint<T>; 3] {
        let (d, e, f) = (self.d.coords(), self.e.coords(), self.f.coords());
        let z = T::zero;
        [
            ProjectivePoint::new(vec![z(), d[0].clone(), d[1].clone()]),
            ProjectivePoint::new(vec![e[1].clone(), z(), e[0].clone()]),
            ProjectivePoint::new(vec![f[0].clone(), f[1].clone(), z()]),
        ]
        .map(|p| p.expect("a foot inherits a nonzero coordinate"))
    }

    /// No homogeneous coordinate is zero, i.e. no foot sits on a vertex.
    pub fn is_on_torus(&self) -> bool {
        self.d.is_on_torus() && self.e.is_on_torus() && self.f.is_on_torus()
    }
}

/// The matrix T whose columns are the lifted vertices.
pub fn embedding_transform<T: Scalar>(t: &Triangle2D<T>) -> Result<Vec<Vec<T>>> {
    let m = vec![
        vec![t.a[0].clone(), t.b[0].clone(), t.c[0].clone()],
        vec![t.a[1].clone(), t.b[1].clone(), t.c[1].clone()],
        vec![T::one(), T::one(), T::one()],
    ];
    if linalg::determinant(&m).is_zero() {
        return Err(Error::DegenerateTriangle);
    }
    Ok(m)
}

/// Reads off the cevian triple for feet D on BC, E on AC and F on AB.
pub fn cevian_coordinates<T: Scalar>(
    t: &Triangle2D<T>,
    d: &[T; 2],
    e: &[T; 2],
    f: &[T; 2],
) -> Result<CevianTriple<T>> {
    let inv = linalg::inverse(&embedding_transform(t)?).ok_or(Error::DegenerateTriangle)?;
    let du = linalg::mat_vec(&inv, &lift(d));
    let eu = linalg::mat_vec(&inv, &lift(e));
    let fu = linalg::mat_vec(&inv, &lift(f));
    if !du[0].is_zero() {
        return Err(Error::PointNotOnSide {
            point: 'D',
            side: "BC",
        });
    }
    if !eu[1].is_zero() {
        return Err(Error::PointNotOnSide {
            point: 'E',
            side: "AC",
        });
    }
    if !fu[2].is_zero() {
        return Err(Error::PointNotOnSide {
            point: 'F',
            side: "AB",
        });
    }
    let [_, d0, d1] = <[T; 3]>::try_from(du).expect("three coordinates");
    let [e1, _, e0] = <[T; 3]>::try_from(eu).expect("three coordinates");
    let [f0, f1, _] = <[T; 3]>::try_from(fu).expect("three coordinates");
    CevianTriple::from_coords([d0, d1], [e0, e1], [f0, f1])
}

/// Rows are the linear forms annihilating the three cevian planes of k³.
pub fn annihilator_matrix<T: Scalar>(c: &CevianTriple<T>) -> Vec<Vec<T>> {
    let (d, e, f) = (c.d.coords(), c.e.coords(), c.f.coords());
    vec![
        vec![T::zero(), d[1].clone(), -d[0].clone()],
        vec![-e[0].clone(), T::zero(), e[1].clone()],
        vec![-f[1].clone(), f[0].clone(), T::zero()],
    ]
}

/// `d0*e0*f0 - d1*e1*f1`, the determinant of [`annihilator_matrix`].
pub fn concurrency_determinant<T: Scalar>(c: &CevianTriple<T>) -> T {
    let (zeros, ones) = monomials(c);
    zeros - ones
}

fn monomials<T: Scalar>(c: &CevianTriple<T>) -> (T, T) {
    let (d, e, f) = (c.d.coords(), c.e.coords(), c.f.coords());
    (
        d[0].clone() * e[0].clone() * f[0].clone(),
        d[1].clone() * e[1].clone() * f[1].clone(),
    )
}

/// Value of the ratio product, which may be infinite when a foot is at a vertex.
#[derive(Clone, Debug, PartialEq)]
pub enum RatioProduct<T> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> RatioProduct<T> {
    pub fn is_one(&self) -> bool {
        matches!(self, Self::Finite(v) if v.is_one())
    }
}

/// `(d0 e0 f0) / (d1 e1 f1)`.
pub fn ratio_product<T: Scalar>(c: &CevianTriple<T>) -> Result<RatioProduct<T>> {
    let (num, den) = monomials(c);
    match (num.is_zero(), den.is_zero()) {
        (true, true) => Err(Error::IndeterminateRatio),
        (false, true) => Ok(RatioProduct::Infinite),
        _ => Ok(RatioProduct::Finite(num / den)),
    }
}

/// The planes of k³ over the cevians AD, BE and CF.
pub fn cevian_planes<T: Scalar>(c: &CevianTriple<T>) -> Result<[LinearSubspace<T>; 3]> {
    let [d, e, f] = c.feet();
    let vertex = |i: usize| {
        let coords = (0..3)
            .map(|j| if i == j { T::one() } else { T::zero() })
            .collect();
        LinearSubspace::from_point(&ProjectivePoint::new(coords).expect("unit vector"))
    };
    Ok([
        span(&[vertex(0), d.into()])?,
        span(&[vertex(1), e.into()])?,
        span(&[vertex(2), f.into()])?,
    ])
}

/// Outcome of the planar concurrency test.
#[derive(Clone, Debug, PartialEq)]
pub struct CevaReport<T: Scalar> {
    pub cevians: CevianTriple<T>,
    /// `None` when both monomials vanish and the ratio is indeterminate.
    pub ratio_product: Option<RatioProduct<T>>,
    pub determinant: T,
    pub concurrent: bool,
    /// Common point in the coordinates of the reference triangle.
    pub barycentric: Option<ProjectivePoint<T>>,
    /// Common point mapped back to the plane, as `(X:Y:W)` with `W = 1` for a
    /// finite point; `W = 0` means the cevians are parallel.
    pub common_point: Option<ProjectivePoint<T>>,
}

impl<T: Scalar> CevaReport<T> {
    /// The common point as a Euclidean point, when it is finite.
    pub fn euclidean_point(&self) -> Option<[T; 2]> {
        let p = self.common_point.as_ref()?;
        let c = p.coords();
        if c[2].is_zero() {
            return None;
        }
        Some([c[0].clone() / c[2].clone(), c[1].clone() / c[2].clone()])
    }
}

/// Full planar pipeline: coordinates, both criteria and the common point.
///
/// The common point is present whenever the cevians are concurrent, including
/// off-torus cases where two cevians coincide with a side. It is scaled so the
/// last coordinate is 1, or left with last coordinate 0 for parallel cevians.
pub fn check_ceva<T: Scalar>(
    t: &Triangle2D<T>,
    d: &[T; 2],
    e: &[T; 2],
    f: &[T; 2],
) -> Result<CevaReport<T>> {
    let cevians = cevian_coordinates(t, d, e, f)?;
    let determinant = concurrency_determinant(&cevians);
    let ratio_product = match ratio_product(&cevians) {
        Ok(r) => Some(r),
        Err(Error::IndeterminateRatio) => None,
        Err(e) => return Err(e),
    };
    let concurrent = determinant.is_zero();
    let (barycentric, common_point) = if concurrent {
        let meet = intersect(&cevian_planes(&cevians)?)?;
        match meet.and_then(|s| s.as_point()) {
            Some(u) => {
                let back = linalg::mat_vec(&embedding_transform(t)?, u.coords());
                let p = ProjectivePoint::new(back)?;
                let p = if p.coords()[2].is_zero() {
                    p
                } else {
                    p.scaled(&(T::one() / p.coords()[2].clone()))?
                };
                (Some(u), Some(p))
            }
            None => (None, None),
        }
    } else {
        (None, None)
    };
    Ok(CevaReport {
        cevians,
        ratio_product,
        determinant,
        concurrent,
        barycentric,
        common_point,
    })
}
