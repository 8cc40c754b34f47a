//! Numerical search for low-rank completions of the face-point matrix.
//!
//! A completion of rank r+1 gives an r-dimensional linear space (the row
//! space) meeting every cevian span. No exact criterion is known for r > 0,
//! so this module runs alternating least squares on the specified entries
//! with seeded random restarts. A `Found` result is a certificate that can be
//! checked with [`verify_transversal`]; `NotFoundWithinBudget` proves nothing.
//!
//! The numerical engine is generic over `nalgebra::RealField`; exact inputs
//! are converted through `f64`.

use nalgebra::{DMatrix, DVector, RealField};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg;
use crate::projective::{IndexSet, ProjectivePoint};
use crate::simplex::{small_nonzero, FaceInstance, PartialMatrix};
use crate::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct RankSearchConfig {
    /// Target projective dimension; the completion has rank r+1.
    pub r: usize,
    /// Threshold on the masked relative residual.
    pub tol: f64,
    pub max_iter: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for RankSearchConfig {
    fn default() -> Self {
        Self {
            r: 0,
            tol: 1e-8,
            max_iter: 500,
            restarts: 10,
            seed: 0,
        }
    }
}

impl RankSearchConfig {
    pub fn with_rank(r: usize) -> Self {
        Self {
            r,
            ..Self::default()
        }
    }

    pub fn validate(&self, rows: usize, cols: usize) -> Result<()> {
        if self.tol <= 0.0 || !self.tol.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter == 0 || self.restarts == 0 {
            return Err(Error::InvalidArgument(
                "max_iter and restarts must be positive".into(),
            ));
        }
        if self.r + 1 > rows.min(cols) {
            return Err(Error::InvalidArgument(format!(
                "rank {} exceeds min({rows}, {cols})",
                self.r + 1
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    Found,
    NotFoundWithinBudget,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransversalResult<F: RealField> {
    pub status: SearchStatus,
    /// Full completion `A * B`, present when found.
    pub completion: Option<DMatrix<F>>,
    /// Orthonormal basis (as rows) of the row space of the completion.
    pub subspace: Option<Vec<Vec<F>>>,
    /// Best masked relative residual over all restarts that ran.
    pub residual: F,
    /// Restart that produced the reported residual.
    pub restart: usize,
}

/// The specified entries as a dense matrix plus a mask.
pub struct Masked<F: RealField> {
    pub values: DMatrix<F>,
    pub mask: Vec<Vec<bool>>,
}

impl<F: RealField + Copy> Masked<F> {
    pub fn from_partial<T: Scalar + ToPrimitive>(m: &PartialMatrix<T>) -> Self {
        let (rows, cols) = (m.rows().len(), m.n() + 1);
        let mut values = DMatrix::zeros(rows, cols);
        let mut mask = vec![vec![false; cols]; rows];
        for (i, (_, row)) in m.rows().iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if let Some(v) = e {
                    values[(i, j)] = to_float(v);
                    mask[i][j] = true;
                }
            }
        }
        Self { values, mask }
    }

    /// `||P(C - M)||_F / ||P(M)||_F` over the specified positions P.
    pub fn relative_residual(&self, completion: &DMatrix<F>) -> F {
        let (mut err, mut norm) = (F::zero(), F::zero());
        for (i, row) in self.mask.iter().enumerate() {
            for (j, &on) in row.iter().enumerate() {
                if on {
                    let d = completion[(i, j)] - self.values[(i, j)];
                    err += d * d;
                    norm += self.values[(i, j)] * self.values[(i, j)];
                }
            }
        }
        (err / norm).sqrt()
    }
}

fn to_float<T: ToPrimitive, F: RealField>(v: &T) -> F {
    nalgebra::convert(v.to_f64().expect("finite value"))
}

fn least_squares<F: RealField + Copy>(a: DMatrix<F>, b: DVector<F>) -> DVector<F> {
    let eps: F = nalgebra::convert(1e-13);
    let svd = a.svd(true, true);
    let cutoff = svd.singular_values.max() * eps;
    svd.solve(&b, cutoff)
        .unwrap_or_else(|_| DVector::zeros(svd.v_t.map_or(0, |v| v.nrows())))
}

struct Run<F: RealField> {
    residual: F,
    left: DMatrix<F>,
    right: DMatrix<F>,
}

fn als_restart<F: RealField + Copy>(
    masked: &Masked<F>,
    rank: usize,
    cfg: &RankSearchConfig,
    restart: usize,
) -> Run<F> {
    let (rows, cols) = masked.values.shape();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(restart as u64);
    let mut normal = || -> F { nalgebra::convert(rng.sample::<f64, _>(StandardNormal)) };
    let mut left = DMatrix::from_fn(rows, rank, |_, _| normal());
    let mut right = DMatrix::from_fn(rank, cols, |_, _| normal());

    let row_support: Vec<Vec<usize>> = masked
        .mask
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, &on)| on)
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let col_support: Vec<Vec<usize>> = (0..cols)
        .map(|j| (0..rows).filter(|&i| masked.mask[i][j]).collect())
        .collect();

    let target: F = nalgebra::convert(cfg.tol * 1e-4);
    let mut residual = masked.relative_residual(&(&left * &right));
    for _ in 0..cfg.max_iter {
        for (i, support) in row_support.iter().enumerate() {
            let a = DMatrix::from_fn(support.len(), rank, |s, c| right[(c, support[s])]);
            let b = DVector::from_fn(support.len(), |s, _| masked.values[(i, support[s])]);
            let sol = least_squares(a, b);
            left.row_mut(i).copy_from(&sol.transpose());
        }
        for (j, support) in col_support.iter().enumerate() {
            let a = DMatrix::from_fn(support.len(), rank, |s, c| left[(support[s], c)]);
            let b = DVector::from_fn(support.len(), |s, _| masked.values[(support[s], j)]);
            let sol = least_squares(a, b);
            right.column_mut(j).copy_from(&sol);
        }
        let next = masked.relative_residual(&(&left * &right));
        let stalled = next >= residual * nalgebra::convert(1.0 - 1e-9);
        residual = next;
        if residual <= target || stalled {
            break;
        }
    }
    if residual > target {
        residual = polish(masked, &mut left, &mut right, target, POLISH_STEPS);
    }
    Run {
        residual,
        left,
        right,
    }
}

const POLISH_STEPS: usize = 100;

/// Damped Gauss-Newton (Levenberg-Marquardt) on both factors at once.
///
/// Alternating sweeps converge sublinearly near a solution; this finishes a
/// restart to working precision when it is already close.
fn polish<F: RealField + Copy>(
    masked: &Masked<F>,
    left: &mut DMatrix<F>,
    right: &mut DMatrix<F>,
    target: F,
    steps: usize,
) -> F {
    let (rows, rank) = left.shape();
    let cols = right.ncols();
    let observed: Vec<(usize, usize)> = (0..rows)
        .flat_map(|i| (0..cols).map(move |j| (i, j)))
        .filter(|&(i, j)| masked.mask[i][j])
        .collect();
    let unknowns = rows * rank + rank * cols;
    let errors = |l: &DMatrix<F>, r: &DMatrix<F>| {
        DVector::from_iterator(
            observed.len(),
            observed
                .iter()
                .map(|&(i, j)| l.row(i).dot(&r.column(j).transpose()) - masked.values[(i, j)]),
        )
    };
    let mut err = errors(left, right);
    let mut cost = err.norm_squared();
    let mut damping: F = nalgebra::convert(1e-3);
    for _ in 0..steps {
        if masked.relative_residual(&(&*left * &*right)) <= target {
            break;
        }
        let mut jac = DMatrix::zeros(observed.len(), unknowns);
        for (e, &(i, j)) in observed.iter().enumerate() {
            for c in 0..rank {
                jac[(e, i * rank + c)] = right[(c, j)];
                jac[(e, rows * rank + c * cols + j)] = left[(i, c)];
            }
        }
        let normal = jac.tr_mul(&jac);
        let gradient = jac.tr_mul(&err);
        let mut improved = false;
        while damping < nalgebra::convert(1e12) {
            let mut system = normal.clone();
            for d in 0..unknowns {
                system[(d, d)] += damping;
            }
            let Some(chol) = system.cholesky() else {
                damping *= nalgebra::convert(10.0);
                continue;
            };
            let step = chol.solve(&gradient);
            let l2 = DMatrix::from_fn(rows, rank, |i, c| left[(i, c)] - step[i * rank + c]);
            let r2 = DMatrix::from_fn(rank, cols, |c, j| {
                right[(c, j)] - step[rows * rank + c * cols + j]
            });
            let e2 = errors(&l2, &r2);
            let c2 = e2.norm_squared();
            if c2 < cost {
                (*left, *right, err, cost) = (l2, r2, e2, c2);
                damping = (damping * nalgebra::convert(0.3)).max(nalgebra::convert(1e-15));
                improved = true;
                break;
            }
            damping *= nalgebra::convert(10.0);
        }
        if !improved {
            break;
        }
    }
    masked.relative_residual(&(&*left * &*right))
}

/// Orthonormal basis of the row space, as rows.
fn row_space<F: RealField + Copy>(m: &DMatrix<F>) -> Vec<Vec<F>> {
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let top = svd.singular_values.max();
    let cutoff = top * nalgebra::convert(1e-10);
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > cutoff)
        .map(|(i, _)| v_t.row(i).iter().copied().collect())
        .collect()
}

/// Alternating minimisation of the masked error over factors `A` (faces × (r+1))
/// and `B` ((r+1) × (n+1)), each restart finished by a damped Gauss-Newton
/// polish.
///
/// A restart succeeds when its residual is at most `tol` and its row space
/// passes [`verify_transversal`] at `tol`. Restarts run in index order and
/// stop at the first success; otherwise the restart with the smallest
/// residual is reported (ties go to the lower index).
pub fn low_rank_complete<T: Scalar + ToPrimitive, F: RealField + Copy>(
    m: &PartialMatrix<T>,
    cfg: &RankSearchConfig,
) -> Result<TransversalResult<F>> {
    let masked = Masked::<F>::from_partial(m);
    let (rows, cols) = masked.values.shape();
    cfg.validate(rows, cols)?;
    let inst = m.to_instance()?;
    let tol: F = nalgebra::convert(cfg.tol);
    let mut best: Option<(usize, F)> = None;
    for restart in 0..cfg.restarts {
        let run = als_restart(&masked, cfg.r + 1, cfg, restart);
        if run.residual <= tol {
            let subspace = row_space(&run.right);
            if verify_transversal(&inst, &subspace, tol).unwrap_or(false) {
                return Ok(TransversalResult {
                    status: SearchStatus::Found,
                    completion: Some(&run.left * &run.right),
                    subspace: Some(subspace),
                    residual: run.residual,
                    restart,
                });
            }
        }
        if best.is_none_or(|(_, r)| run.residual < r) {
            best = Some((restart, run.residual));
        }
    }
    let (restart, residual) = best.expect("at least one restart");
    Ok(TransversalResult {
        status: SearchStatus::NotFoundWithinBudget,
        completion: None,
        subspace: None,
        residual,
        restart,
    })
}

/// Orthonormal basis (rows) of the orthogonal complement of the row space of
/// `m`, assuming `m` has full row rank `rank`.
fn complement<F: RealField + Copy>(m: &DMatrix<F>, rank: usize) -> DMatrix<F> {
    let n = m.ncols();
    let mut square = DMatrix::zeros(n, n);
    square.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let v_t = square.svd(false, true).v_t.expect("requested V^T");
    v_t.rows(rank, n - rank).into_owned()
}

/// Per-face outcome of [`transversal_checks`].
#[derive(Clone, Debug, PartialEq)]
pub struct FaceCheck<F> {
    pub face: IndexSet,
    /// Smallest singular value of the stacked annihilators; zero means the
    /// spaces meet.
    pub sigma: F,
    pub passes: bool,
}

/// For each face I, whether span(basis) meets span(P_I, opposite face) to
/// within `tol`.
pub fn transversal_checks<T: Scalar + ToPrimitive, F: RealField + Copy>(
    inst: &FaceInstance<T>,
    basis: &[Vec<F>],
    tol: F,
) -> Result<Vec<FaceCheck<F>>> {
    let dim = inst.n() + 1;
    if basis.is_empty() || basis.len() > dim {
        return Err(Error::InvalidArgument(format!(
            "need between 1 and {dim} basis vectors, got {}",
            basis.len()
        )));
    }
    if let Some(v) = basis.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: inst.n(),
            found: v.len().saturating_sub(1),
        });
    }
    let l = DMatrix::from_fn(basis.len(), dim, |i, j| basis[i][j]);
    let sv = l.clone().svd(false, false).singular_values;
    if sv.min() <= sv.max() * nalgebra::convert(1e-10) {
        return Err(Error::InvalidArgument(
            "transversal basis is degenerate".into(),
        ));
    }
    let l_perp = complement(&l, basis.len());

    inst.points()
        .map(|(face, p)| {
            let cone = cevian_cone::<T, F>(face, p, inst.n());
            let w_perp = complement(&cone, cone.nrows());
            let stacked_rows = l_perp.nrows() + w_perp.nrows();
            let sigma = if stacked_rows < dim {
                F::zero()
            } else {
                let mut s = DMatrix::zeros(stacked_rows, dim);
                s.view_mut((0, 0), (l_perp.nrows(), dim)).copy_from(&l_perp);
                s.view_mut((l_perp.nrows(), 0), (w_perp.nrows(), dim))
                    .copy_from(&w_perp);
                s.svd(false, false).singular_values.min()
            };
            Ok(FaceCheck {
                face: face.clone(),
                sigma,
                passes: sigma <= tol,
            })
        })
        .collect()
}

/// Basis of span(P_I, opposite face) in k^{n+1}, with P_I normalised.
fn cevian_cone<T: Scalar + ToPrimitive, F: RealField + Copy>(
    face: &IndexSet,
    p: &ProjectivePoint<T>,
    n: usize,
) -> DMatrix<F> {
    let mut point = vec![F::zero(); n + 1];
    for (&j, c) in face.members().iter().zip(p.coords()) {
        point[j] = to_float(c);
    }
    let norm = point.iter().fold(F::zero(), |acc, &x| acc + x * x).sqrt();
    let others = face.complement(n);
    DMatrix::from_fn(1 + others.len(), n + 1, |i, j| {
        if i == 0 {
            point[j] / norm
        } else if others.members()[i - 1] == j {
            F::one()
        } else {
            F::zero()
        }
    })
}

/// True when span(basis) meets every cevian span of the instance.
pub fn verify_transversal<T: Scalar + ToPrimitive, F: RealField + Copy>(
    inst: &FaceInstance<T>,
    basis: &[Vec<F>],
    tol: F,
) -> Result<bool> {
    Ok(transversal_checks(inst, basis, tol)?
        .iter()
        .all(|c| c.passes))
}

/// A partial matrix whose specified entries come from a rank-(r+1) matrix.
///
/// Samples a full-rank (r+1) × (n+1) matrix B with nonzero entries and, per face I, coefficients
/// c_I with `c_I · B` nonzero on the columns of I; row I is `c_I · B`.
pub fn construct_rank_instance<T: Scalar>(
    n: usize,
    k: usize,
    r: usize,
    seed: u64,
) -> Result<PartialMatrix<T>> {
    if n < 2 || k < 1 || k >= n {
        return Err(Error::InvalidArgument(format!("invalid n = {n}, k = {k}")));
    }
    if r + 1 > n + 1 {
        return Err(Error::InvalidArgument(format!(
            "r = {r} too large for n = {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small = |rng: &mut ChaCha8Rng| small_nonzero::<T, _>(rng);
    let b = loop {
        let b: Vec<Vec<T>> = (0..=r)
            .map(|_| (0..=n).map(|_| small(&mut rng)).collect())
            .collect();
        if linalg::rank(&b, n + 1) == r + 1 {
            break b;
        }
    };
    let rows = IndexSet::subsets(n, k + 1)
        .into_iter()
        .map(|face| {
            let row = loop {
                let c: Vec<T> = (0..=r).map(|_| small(&mut rng)).collect();
                let row: Vec<T> = (0..=n)
                    .map(|j| {
                        b.iter()
                            .zip(&c)
                            .fold(T::zero(), |acc, (bi, ci)| acc + ci.clone() * bi[j].clone())
                    })
                    .collect();
                if face.members().iter().all(|&j| !row[j].is_zero()) {
                    break row;
                }
            };
            let entries = row
                .into_iter()
                .enumerate()
                .map(|(j, v)| face.contains(j).then_some(v))
                .collect();
            (face, entries)
        })
        .collect();
    PartialMatrix::from_rows(n, k, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::{decide_concurrent, random_instance, InstanceKind};
    use crate::Rational;

    #[test]
    fn config_validation() {
        let cfg = RankSearchConfig::default();
        assert!(cfg.validate(4, 4).is_ok());
        assert!(RankSearchConfig {
            tol: 0.0,
            ..cfg.clone()
        }
        .validate(4, 4)
        .is_err());
        assert!(RankSearchConfig {
            restarts: 0,
            ..cfg.clone()
        }
        .validate(4, 4)
        .is_err());
        assert!(RankSearchConfig::with_rank(4).validate(6, 4).is_err());
    }

    #[test]
    fn rank_one_instance_is_found_and_recovers_point() {
        let inst = random_instance::<Rational>(4, 2, 3, InstanceKind::Positive).unwrap();
        let res = low_rank_complete::<_, f64>(&inst.build_matrix(), &RankSearchConfig::default())
            .unwrap();
        assert_eq!(res.status, SearchStatus::Found);
        assert!(res.residual <= 1e-8);
        let basis = res.subspace.unwrap();
        assert_eq!(basis.len(), 1);
        let exact = decide_concurrent(&inst).unwrap().common_point.unwrap();
        let x: Vec<f64> = exact.coords().iter().map(|c| c.to_f64().unwrap()).collect();
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let cos = basis[0].iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() / norm;
        assert!((cos.abs() - 1.0).abs() < 1e-10);
        assert!(verify_transversal(&inst, &basis, 1e-8).unwrap());
    }

    #[test]
    fn constructed_rank_two_instance_is_found() {
        let m = construct_rank_instance::<Rational>(3, 1, 1, 7).unwrap();
        let res = low_rank_complete::<_, f64>(&m, &RankSearchConfig::with_rank(1)).unwrap();
        assert_eq!(res.status, SearchStatus::Found);
        assert!(res.residual <= 1e-8);
        let inst = m.to_instance().unwrap();
        assert!(verify_transversal(&inst, res.subspace.as_ref().unwrap(), 1e-8).unwrap());
    }

    #[test]
    fn perturbed_instance_is_not_rank_one() {
        let inst = random_instance::<Rational>(4, 2, 5, InstanceKind::Perturbed).unwrap();
        let cfg = RankSearchConfig {
            tol: 1e-10,
            ..RankSearchConfig::default()
        };
        let res = low_rank_complete::<_, f64>(&inst.build_matrix(), &cfg).unwrap();
        assert_eq!(res.status, SearchStatus::NotFoundWithinBudget);
        assert!(res.completion.is_none());
    }

    #[test]
    fn rank_zero_construction_is_concurrent() {
        for seed in 0..5 {
            let m = construct_rank_instance::<Rational>(4, 2, 0, seed).unwrap();
            assert!(
                decide_concurrent(&m.to_instance().unwrap())
                    .unwrap()
                    .verdict
            );
        }
        assert!(construct_rank_instance::<Rational>(3, 1, 4, 0).is_err());
        let a = construct_rank_instance::<Rational>(4, 1, 1, 9).unwrap();
        let b = construct_rank_instance::<Rational>(4, 1, 1, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn random_plane_is_not_transversal() {
        let inst = random_instance::<Rational>(4, 2, 11, InstanceKind::Positive).unwrap();
        let basis = vec![
            vec![1.0, 0.3, -0.7, 0.2, 0.5],
            vec![0.1, 1.0, 0.4, -0.9, 0.3],
        ];
        assert!(!verify_transversal(&inst, &basis, 1e-8).unwrap());
        let checks = transversal_checks(&inst, &basis, 1e-8).unwrap();
        assert_eq!(checks.len(), 10);
    }

    #[test]
    fn degenerate_basis_is_rejected() {
        let inst = random_instance::<Rational>(3, 1, 1, InstanceKind::Positive).unwrap();
        let basis = vec![vec![1.0, 2.0, 3.0, 4.0], vec![2.0, 4.0, 6.0, 8.0]];
        assert!(verify_transversal(&inst, &basis, 1e-8).is_err());
        assert!(verify_transversal(&inst, &[vec![1.0, 2.0]], 1e-8).is_err());
    }

    #[test]
    fn padded_factorisation_keeps_residual() {
        let m = construct_rank_instance::<Rational>(4, 1, 1, 2).unwrap();
        let res = low_rank_complete::<_, f64>(&m, &RankSearchConfig::with_rank(1)).unwrap();
        assert_eq!(res.status, SearchStatus::Found);
        let higher = low_rank_complete::<_, f64>(&m, &RankSearchConfig::with_rank(2)).unwrap();
        assert_eq!(higher.status, SearchStatus::Found);
    }
}
