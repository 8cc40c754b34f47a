//! The blowup of ℙ² in the three coordinate points and its image in (ℙ¹)³.
//!
//! The surface S ⊂ ℙ² × (ℙ¹)³ consists of tuples `(x, d, e, f)` with
//!
//! ```text
//! x1*d1 = x2*d0,   x2*e1 = x0*e0,   x0*f1 = x1*f0
//! ```
//!
//! i.e. a point x together with the lines through x and each coordinate
//! vertex. Forgetting x identifies S with the hypersurface
//! H : `d0*e0*f0 = d1*e1*f1`.

use crate::error::{Error, Result};
use crate::projective::ProjectivePoint;
use crate::Scalar;

/// A point of ℙ² × (ℙ¹)³, not necessarily on S.
#[derive(Clone, Debug, PartialEq)]
pub struct SPoint<T: Scalar> {
    pub x: ProjectivePoint<T>,
    pub d: ProjectivePoint<T>,
    pub e: ProjectivePoint<T>,
    pub f: ProjectivePoint<T>,
}

/// A point of (ℙ¹)³, not necessarily on H.
#[derive(Clone, Debug, PartialEq)]
pub struct HPoint<T: Scalar> {
    pub d: ProjectivePoint<T>,
    pub e: ProjectivePoint<T>,
    pub f: ProjectivePoint<T>,
}

impl<T: Scalar> HPoint<T> {
    pub fn new(
        d: ProjectivePoint<T>,
        e: ProjectivePoint<T>,
        f: ProjectivePoint<T>,
    ) -> Result<Self> {
        for p in [&d, &e, &f] {
            check_line_point(p)?;
        }
        Ok(Self { d, e, f })
    }
}

impl<T: Scalar> SPoint<T> {
    pub fn new(
        x: ProjectivePoint<T>,
        d: ProjectivePoint<T>,
        e: ProjectivePoint<T>,
        f: ProjectivePoint<T>,
    ) -> Result<Self> {
        if x.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: x.dim(),
            });
        }
        for p in [&d, &e, &f] {
            check_line_point(p)?;
        }
        Ok(Self { x, d, e, f })
    }
}

fn check_line_point<T: Scalar>(p: &ProjectivePoint<T>) -> Result<()> {
    if p.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: p.dim(),
        });
    }
    Ok(())
}

/// `x*a1 = a0*y`: the point (x, y) of the affine plane lies on the line (a0:a1)
/// through the origin.
pub fn affine_blowup_member<T: Scalar>(p: &[T; 2], l: &ProjectivePoint<T>) -> bool {
    let a = l.coords();
    p[0].clone() * a[1].clone() == a[0].clone() * p[1].clone()
}

/// `x0*y1 = x1*y0`: the blowup of ℙ² at (0:0:1).
pub fn projective_blowup_member<T: Scalar>(x: &ProjectivePoint<T>, l: &ProjectivePoint<T>) -> bool {
    let (x, y) = (x.coords(), l.coords());
    x[0].clone() * y[1].clone() == x[1].clone() * y[0].clone()
}

fn s_equations<T: Scalar>(x: &[T], d: &[T], e: &[T], f: &[T]) -> [bool; 3] {
    [
        x[1].clone() * d[1].clone() == x[2].clone() * d[0].clone(),
        x[2].clone() * e[1].clone() == x[0].clone() * e[0].clone(),
        x[0].clone() * f[1].clone() == x[1].clone() * f[0].clone(),
    ]
}

pub fn on_s<T: Scalar>(s: &SPoint<T>) -> bool {
    s_equations(s.x.coords(), s.d.coords(), s.e.coords(), s.f.coords())
        .iter()
        .all(|&ok| ok)
}

pub fn on_h<T: Scalar>(h: &HPoint<T>) -> bool {
    let (d, e, f) = (h.d.coords(), h.e.coords(), h.f.coords());
    d[0].clone() * e[0].clone() * f[0].clone() == d[1].clone() * e[1].clone() * f[1].clone()
}

/// Forgets the point x.
pub fn project_s_to_h<T: Scalar>(s: &SPoint<T>) -> Result<HPoint<T>> {
    if !on_s(s) {
        return Err(Error::NotOnS);
    }
    Ok(HPoint {
        d: s.d.clone(),
        e: s.e.clone(),
        f: s.f.clone(),
    })
}

/// The affine charts of S over H, in the order they are tried by
/// [`lift_h_to_s`]. Each chart sets one coordinate of x to 1 and solves two of
/// the three equations; the third then holds because h lies on H.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// x2 = 1, needs d1 ≠ 0 and e0 ≠ 0: x = (e1/e0 : d0/d1 : 1).
    X2,
    /// x0 = 1, needs e1 ≠ 0 and f0 ≠ 0: x = (1 : f1/f0 : e0/e1).
    X0,
    /// x1 = 1, needs f1 ≠ 0 and d0 ≠ 0: x = (f0/f1 : 1 : d1/d0).
    X1,
}

impl Chart {
    pub const ORDER: [Chart; 3] = [Chart::X2, Chart::X0, Chart::X1];

    /// The x coordinate in this chart, or `None` if the chart does not apply.
    pub fn solve<T: Scalar>(self, h: &HPoint<T>) -> Option<ProjectivePoint<T>> {
        let (d, e, f) = (h.d.coords(), h.e.coords(), h.f.coords());
        let ratio = |n: &T, m: &T| (!m.is_zero()).then(|| n.clone() / m.clone());
        let coords = match self {
            Chart::X2 => vec![ratio(&e[1], &e[0])?, ratio(&d[0], &d[1])?, T::one()],
            Chart::X0 => vec![T::one(), ratio(&f[1], &f[0])?, ratio(&e[0], &e[1])?],
            Chart::X1 => vec![ratio(&f[0], &f[1])?, T::one(), ratio(&d[1], &d[0])?],
        };
        Some(ProjectivePoint::new(coords).expect("a chart coordinate equals one"))
    }
}

fn is_coordinate_vertex<T: Scalar>(p: &ProjectivePoint<T>, slot: usize) -> bool {
    let c = p.coords();
    c[1 - slot].is_zero()
}

/// Recovers the unique x with (x, d, e, f) on S.
///
/// The triples ((1:0),(1:0),(1:0)) and ((0:1),(0:1),(0:1)) are reported as
/// `NotInImage` before the hypersurface test. Neither lies on H (one monomial
/// is 1, the other 0), so every point of H has a lift.
pub fn lift_h_to_s<T: Scalar>(h: &HPoint<T>) -> Result<SPoint<T>> {
    for (slot, name) in [(0, "((1:0),(1:0),(1:0))"), (1, "((0:1),(0:1),(0:1))")] {
        if [&h.d, &h.e, &h.f]
            .iter()
            .all(|p| is_coordinate_vertex(p, slot))
        {
            return Err(Error::NotInImage(name));
        }
    }
    if !on_h(h) {
        return Err(Error::NotOnH);
    }
    let x = Chart::ORDER
        .iter()
        .find_map(|chart| chart.solve(h))
        .expect("every non-excluded point of H lies in some chart");
    Ok(SPoint {
        x,
        d: h.d.clone(),
        e: h.e.clone(),
        f: h.f.clone(),
    })
}
