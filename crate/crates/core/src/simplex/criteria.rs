use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::projective::{IndexSet, ProjectivePoint};
use crate::Scalar;

use super::instance::{FaceInstance, PartialMatrix};
use super::oracle::{geometric_oracle, OracleOutcome};

/// Which closed-form test produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Criterion {
    /// Triple-ratio products over all a < b < c (k = 1).
    TripleRatios,
    /// Fully specified 2×2 minors (k ≥ 2).
    Minors,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::TripleRatios => "triple-ratios",
            Self::Minors => "minors",
        })
    }
}

/// `(x^{ab}_a / x^{ab}_b) (x^{bc}_b / x^{bc}_c) (x^{ac}_c / x^{ac}_a)` for a < b < c.
#[derive(Clone, Debug, PartialEq)]
pub struct Triple<T> {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub product: T,
}

/// `x^I_i x^J_j - x^I_j x^J_i` for rows I, J and columns i < j in I ∩ J.
#[derive(Clone, Debug, PartialEq)]
pub struct Minor<T> {
    pub rows: (IndexSet, IndexSet),
    pub cols: (usize, usize),
    pub value: T,
}

/// A violated constraint.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness<T> {
    Triple(Triple<T>),
    Minor(Minor<T>),
}

/// Verdict of [`decide_concurrent`].
#[derive(Clone, Debug, PartialEq)]
pub struct ConcurrencyReport<T: Scalar> {
    pub verdict: bool,
    pub criterion: Criterion,
    /// Empty exactly when the verdict is true.
    pub witnesses: Vec<Witness<T>>,
    /// The common point, present exactly when the verdict is true.
    pub common_point: Option<ProjectivePoint<T>>,
    /// Set by [`decide_with_oracle`].
    pub oracle_agrees: Option<bool>,
}

fn require_torus<T: Scalar>(m: &PartialMatrix<T>) -> Result<()> {
    for (face, row) in m.rows() {
        for &j in face.members() {
            if row[j].as_ref().is_none_or(|v| v.is_zero()) {
                return Err(Error::OffTorus {
                    subset: face.members().to_vec(),
                    position: j,
                });
            }
        }
    }
    Ok(())
}

/// Every 2×2 minor of `m` with all four entries specified, zero or not.
///
/// Row pairs follow the matrix's own row order.
pub fn specified_minors<T: Scalar>(m: &PartialMatrix<T>) -> Vec<Minor<T>> {
    let mut out = Vec::new();
    for ((fi, ri), (fj, rj)) in m.rows().iter().tuple_combinations() {
        let shared = fi.intersection(fj);
        for (&i, &j) in shared.members().iter().tuple_combinations() {
            let get =
                |row: &[Option<T>], c: usize| row[c].clone().expect("shared column is specified");
            let value = get(ri, i) * get(rj, j) - get(ri, j) * get(rj, i);
            out.push(Minor {
                rows: (fi.clone(), fj.clone()),
                cols: (i, j),
                value,
            });
        }
    }
    out
}

fn row_lookup<T: Scalar>(m: &PartialMatrix<T>) -> HashMap<&IndexSet, &[Option<T>]> {
    m.rows().iter().map(|(f, r)| (f, r.as_slice())).collect()
}

/// All triple products of a k = 1 matrix, in lexicographic order of (a, b, c).
fn triple_products<T: Scalar>(m: &PartialMatrix<T>) -> Result<Vec<Triple<T>>> {
    if m.k() != 1 {
        return Err(Error::WrongArity(m.k()));
    }
    require_torus(m)?;
    let rows = row_lookup(m);
    let n = m.n();
    let entry = |a: usize, b: usize, col: usize| -> T {
        let face = IndexSet::new(vec![a, b], n).expect("edge of the simplex");
        rows[&face][col].clone().expect("specified on its face")
    };
    Ok((0..=n)
        .tuple_combinations()
        .map(|(a, b, c)| {
            let product = entry(a, b, a) / entry(a, b, b) * entry(b, c, b) / entry(b, c, c)
                * entry(a, c, c)
                / entry(a, c, a);
            Triple { a, b, c, product }
        })
        .collect())
}

/// The triples a < b < c whose ratio product differs from 1.
pub fn check_triples_k1<T: Scalar>(inst: &FaceInstance<T>) -> Result<Vec<Triple<T>>> {
    if inst.k() != 1 {
        return Err(Error::WrongArity(inst.k()));
    }
    Ok(triple_products(&inst.build_matrix())?
        .into_iter()
        .filter(|t| !t.product.is_one())
        .collect())
}

/// Rank-one completion anchored at `x_0 = 1`.
///
/// `x_j` is read from the lexicographically first row whose face contains
/// `{0, j}`; every row is then checked to be proportional to x on its face.
pub fn complete_rank1<T: Scalar>(m: &PartialMatrix<T>) -> Result<ProjectivePoint<T>> {
    let n = m.n();
    let mut x = vec![T::zero(); n + 1];
    x[0] = T::one();
    for (j, xj) in x.iter_mut().enumerate().skip(1) {
        let (_, row) = m
            .rows()
            .iter()
            .filter(|(face, _)| face.contains(0) && face.contains(j))
            .min_by(|a, b| a.0.cmp(&b.0))
            .ok_or(Error::NotRankOneCompletable)?;
        let (r0, rj) = (
            row[0].clone().expect("specified"),
            row[j].clone().expect("specified"),
        );
        if r0.is_zero() {
            return Err(Error::NotRankOneCompletable);
        }
        *xj = rj / r0;
    }
    for (face, row) in m.rows() {
        let proportional = face.members().iter().tuple_combinations().all(|(&a, &b)| {
            let (ra, rb) = (
                row[a].clone().expect("specified"),
                row[b].clone().expect("specified"),
            );
            ra * x[b].clone() == rb * x[a].clone()
        });
        if !proportional {
            return Err(Error::NotRankOneCompletable);
        }
    }
    ProjectivePoint::new(x)
}

/// Decides concurrency from the matrix alone; rows may be in any order.
pub fn decide_matrix<T: Scalar>(m: &PartialMatrix<T>) -> Result<ConcurrencyReport<T>> {
    require_torus(m)?;
    let (criterion, witnesses): (_, Vec<Witness<T>>) = if m.k() == 1 {
        let violated = triple_products(m)?
            .into_iter()
            .filter(|t| !t.product.is_one())
            .map(Witness::Triple)
            .collect();
        (Criterion::TripleRatios, violated)
    } else {
        let violated = specified_minors(m)
            .into_iter()
            .filter(|mi| !mi.value.is_zero())
            .map(Witness::Minor)
            .collect();
        (Criterion::Minors, violated)
    };
    let verdict = witnesses.is_empty();
    let common_point = if verdict {
        Some(complete_rank1(m)?)
    } else {
        None
    };
    Ok(ConcurrencyReport {
        verdict,
        criterion,
        witnesses,
        common_point,
        oracle_agrees: None,
    })
}

/// Triple ratios for k = 1, specified minors for k ≥ 2.
pub fn decide_concurrent<T: Scalar>(inst: &FaceInstance<T>) -> Result<ConcurrencyReport<T>> {
    decide_matrix(&inst.build_matrix())
}

/// The oracle agrees when it finds a single common point exactly when the
/// verdict is true, and that point equals the recovered one.
pub fn oracle_agreement<T: Scalar>(
    report: &ConcurrencyReport<T>,
    outcome: &OracleOutcome<T>,
) -> bool {
    let points_match = match (&report.common_point, outcome.point()) {
        (Some(p), Some(q)) => p == &q,
        (None, None) => true,
        _ => false,
    };
    points_match && report.verdict == outcome.is_point()
}

/// [`decide_concurrent`] followed by the geometric oracle.
pub fn decide_with_oracle<T: Scalar>(inst: &FaceInstance<T>) -> Result<ConcurrencyReport<T>> {
    let mut report = decide_concurrent(inst)?;
    let outcome = geometric_oracle(inst)?;
    report.oracle_agrees = Some(oracle_agreement(&report, &outcome));
    Ok(report)
}
