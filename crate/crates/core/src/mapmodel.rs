//! Smooth map models on the d-torus and finite inverse-limit orbit windows.
//!
//! Phase space is `[0,1)^d` with the flat metric induced by nearest-integer
//! lifts. The built-in map suite consists of linear toral endomorphisms given
//! by integer matrices and their trigonometric perturbations; both carry
//! analytic Jacobians and complete preimage enumeration, so every downstream
//! quantity can be checked against exact linear-algebra oracles.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;

/// Default residual tolerance for orbit windows: `f(x_i) = x_{i+1}` must hold
/// to this accuracy for every consecutive pair.
pub const ORBIT_TOL: f64 = 1e-12;

/// Default window radius for inverse-limit truncations.
pub const DEFAULT_WINDOW_RADIUS: usize = 32;

#[derive(Debug, Error)]
pub enum MapError {
    #[error("matrix must be square with d^2 entries, got {got} for dimension {dim}")]
    BadMatrixShape { dim: usize, got: usize },
    #[error("linear part is singular (det = 0); maps with a collapsed direction are not supported")]
    SingularLinearPart,
    #[error("map has no preimage rule")]
    NoPreimageRule,
    #[error("preimage solve failed to converge at branch {branch}")]
    PreimageFailed { branch: usize },
    #[error("expected {expected} preimages, found {found}")]
    PreimageCount { expected: usize, found: usize },
    #[error("branch policy cannot decide within tolerance: margins {first:.3e} vs {second:.3e}")]
    AmbiguousBranch { first: f64, second: f64 },
    #[error("history policy needs {needed} stored backward points, got {got}")]
    HistoryTooShort { needed: usize, got: usize },
    #[error("orbit residual {residual:.3e} at step {index} exceeds tolerance {tol:.3e}")]
    OrbitResidual { index: usize, residual: f64, tol: f64 },
    #[error("window mismatch: radii {left} vs {right} (dims {left_dim} vs {right_dim})")]
    WindowMismatch { left: usize, right: usize, left_dim: usize, right_dim: usize },
    #[error("trajectory of length {len} cannot host a window of radius {radius} at index {center}")]
    WindowOutOfRange { len: usize, center: usize, radius: usize },
    #[error("dimension mismatch: point has {got}, map expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Wrap a real number into `[0, 1)`.
fn wrap(x: f64) -> f64 {
    let f = x - x.floor();
    // x.floor() can round such that f == 1.0 for tiny negative x
    if f >= 1.0 {
        f - 1.0
    } else {
        f
    }
}

/// Nearest-integer representative of `x` in `[-0.5, 0.5)`.
fn wrap_centered(x: f64) -> f64 {
    let f = wrap(x);
    if f >= 0.5 {
        f - 1.0
    } else {
        f
    }
}

/// A point on the d-torus, coordinates normalized to `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorusPoint {
    coords: DVector<f64>,
}

impl TorusPoint {
    pub fn new(coords: DVector<f64>) -> Self {
        Self { coords: coords.map(wrap) }
    }

    pub fn from_slice(coords: &[f64]) -> Self {
        Self::new(DVector::from_row_slice(coords))
    }

    pub fn origin(dim: usize) -> Self {
        Self { coords: DVector::zeros(dim) }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.coords
    }

    /// Nearest-image lift of `self - other`, each component in `[-0.5, 0.5)`.
    pub fn lift_diff(&self, other: &TorusPoint) -> DVector<f64> {
        DVector::from_iterator(
            self.coords.len(),
            self.coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| wrap_centered(a - b)),
        )
    }

    /// Flat torus distance (Euclidean norm of the nearest-image lift).
    pub fn distance(&self, other: &TorusPoint) -> f64 {
        self.lift_diff(other).norm()
    }

    /// Translate by a tangent vector and renormalize to the torus.
    pub fn translate(&self, v: &DVector<f64>) -> TorusPoint {
        TorusPoint::new(&self.coords + v)
    }
}

/// Hölder data for the derivative: `||Df(x) - Df(y)|| <= constant * d(x,y)^alpha`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct HolderData {
    pub alpha: f64,
    pub constant: f64,
}

/// A smooth endomorphism of the d-torus: integer linear part plus an optional
/// rank-one trigonometric perturbation `x -> A x + (eps/2pi) sin(2pi x_0) u`.
///
/// The perturbation direction `u` is the dominant eigendirection of `A` when
/// that is real, so the line `span(u)` stays invariant under every `Df(x)`
/// and the perturbed map remains uniformly hyperbolic for small `eps`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapModel {
    dim: usize,
    int_matrix: Vec<i64>,
    matrix: DMatrix<f64>,
    inverse: DMatrix<f64>,
    eps: f64,
    pert_dir: DVector<f64>,
    degree: i64,
    holder: HolderData,
}

impl MapModel {
    /// Linear toral endomorphism from a row-major integer matrix.
    pub fn linear(dim: usize, entries: &[i64]) -> Result<Self, MapError> {
        Self::perturbed(dim, entries, 0.0)
    }

    /// The identity map on the d-torus.
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0i64; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        Self::linear(dim, &entries).expect("identity is never singular")
    }

    /// Trigonometric perturbation of a linear endomorphism with C^1-size `eps`.
    pub fn perturbed(dim: usize, entries: &[i64], eps: f64) -> Result<Self, MapError> {
        if entries.len() != dim * dim {
            return Err(MapError::BadMatrixShape { dim, got: entries.len() });
        }
        let matrix = DMatrix::from_iterator(
            dim,
            dim,
            // from_iterator fills column-major; transpose the row-major input
            (0..dim * dim).map(|k| entries[(k % dim) * dim + k / dim] as f64),
        );
        let det = int_det(dim, entries);
        if det == 0 {
            return Err(MapError::SingularLinearPart);
        }
        let inverse = linalg::invert(&matrix).ok_or(MapError::SingularLinearPart)?;
        let pert_dir = dominant_direction(&matrix);
        let holder = HolderData {
            alpha: 1.0,
            constant: 2.0 * std::f64::consts::PI * eps.abs(),
        };
        Ok(Self {
            dim,
            int_matrix: entries.to_vec(),
            matrix,
            inverse,
            eps,
            pert_dir,
            degree: det.abs(),
            holder,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Covering degree `|det A|`.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn linear_part(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn int_matrix(&self) -> &[i64] {
        &self.int_matrix
    }

    pub fn perturbation(&self) -> f64 {
        self.eps
    }

    pub fn is_linear(&self) -> bool {
        self.eps == 0.0
    }

    pub fn holder(&self) -> HolderData {
        self.holder
    }

    /// Evaluate on the universal cover (no wrapping).
    pub fn eval_lift(&self, x: &DVector<f64>) -> DVector<f64> {
        let mut y = &self.matrix * x;
        if self.eps != 0.0 {
            let s = (2.0 * std::f64::consts::PI * x[0]).sin();
            y += &self.pert_dir * (self.eps / (2.0 * std::f64::consts::PI) * s);
        }
        y
    }

    /// Evaluate the map on the torus.
    pub fn eval(&self, p: &TorusPoint) -> TorusPoint {
        TorusPoint::new(self.eval_lift(p.coords()))
    }

    /// Jacobian matrix at a point.
    pub fn jacobian(&self, p: &TorusPoint) -> DMatrix<f64> {
        let mut j = self.matrix.clone();
        if self.eps != 0.0 {
            let c = (2.0 * std::f64::consts::PI * p.coords()[0]).cos();
            for i in 0..self.dim {
                j[(i, 0)] += self.eps * c * self.pert_dir[i];
            }
        }
        j
    }

    /// Forward orbit `[p, f(p), ..., f^n(p)]` of length `n + 1`.
    pub fn iterate(&self, p: &TorusPoint, n: usize) -> Vec<TorusPoint> {
        let mut orbit = Vec::with_capacity(n + 1);
        orbit.push(p.clone());
        for i in 0..n {
            let next = self.eval(&orbit[i]);
            orbit.push(next);
        }
        orbit
    }

    /// All preimages of `p`, one per covering branch. The count equals the
    /// degree for every built-in model.
    pub fn preimages(&self, p: &TorusPoint) -> Result<Vec<TorusPoint>, MapError> {
        if p.dim() != self.dim {
            return Err(MapError::DimensionMismatch { expected: self.dim, got: p.dim() });
        }
        // Shift bounds: any preimage q in [0,1)^d satisfies A q - p = m with
        // |m_i| <= sum_j |A_ij| + pert + 1.
        let bounds: Vec<i64> = (0..self.dim)
            .map(|i| {
                let row_sum: i64 = (0..self.dim).map(|j| self.int_matrix[i * self.dim + j].abs()).sum();
                row_sum + 2
            })
            .collect();
        let mut shifts = vec![DVector::<f64>::zeros(self.dim)];
        for (axis, b) in bounds.iter().enumerate() {
            let mut extended = Vec::with_capacity(shifts.len() * (2 * *b as usize + 1));
            for base in &shifts {
                for m in -*b..=*b {
                    let mut s = base.clone();
                    s[axis] = m as f64;
                    extended.push(s);
                }
            }
            shifts = extended;
        }

        let mut found: Vec<TorusPoint> = Vec::new();
        for (branch, m) in shifts.iter().enumerate() {
            let target = p.coords() + m;
            let seed = &self.inverse * &target;
            let q = if self.eps == 0.0 {
                TorusPoint::new(seed)
            } else {
                match self.preimage_newton(&TorusPoint::new(seed), p) {
                    Some(q) => q,
                    None => return Err(MapError::PreimageFailed { branch }),
                }
            };
            if self.eval(&q).distance(p) > 1e-9 {
                continue;
            }
            if found.iter().all(|r| r.distance(&q) > 1e-8) {
                found.push(q);
            }
        }
        if found.len() != self.degree as usize {
            return Err(MapError::PreimageCount {
                expected: self.degree as usize,
                found: found.len(),
            });
        }
        // Deterministic order for downstream consumers.
        found.sort_by(|a, b| {
            a.coords()
                .iter()
                .zip(b.coords().iter())
                .find_map(|(x, y)| x.partial_cmp(y).filter(|o| o.is_ne()))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        Ok(found)
    }

    /// Newton iteration for `f(q) = p` on the torus, started at `seed`.
    fn preimage_newton(&self, seed: &TorusPoint, p: &TorusPoint) -> Option<TorusPoint> {
        let mut q = seed.clone();
        for _ in 0..60 {
            let r = self.eval(&q).lift_diff(p);
            if r.norm() <= 1e-13 {
                return Some(q);
            }
            let j = self.jacobian(&q);
            let delta = linalg::solve(&j, &r)?;
            q = q.translate(&(-delta));
        }
        let r = self.eval(&q).lift_diff(p);
        (r.norm() <= 1e-11).then_some(q)
    }
}

/// Row-major integer determinant via fraction-free Gaussian elimination.
fn int_det(dim: usize, entries: &[i64]) -> i64 {
    let mut m: Vec<i128> = entries.iter().map(|&x| x as i128).collect();
    let mut det: i128 = 1;
    let mut sign = 1i128;
    let mut prev: i128 = 1;
    for k in 0..dim {
        // pivot
        let mut pivot = None;
        for r in k..dim {
            if m[r * dim + k] != 0 {
                pivot = Some(r);
                break;
            }
        }
        let Some(pr) = pivot else { return 0 };
        if pr != k {
            for c in 0..dim {
                m.swap(k * dim + c, pr * dim + c);
            }
            sign = -sign;
        }
        for r in (k + 1)..dim {
            for c in (k + 1)..dim {
                m[r * dim + c] =
                    (m[r * dim + c] * m[k * dim + k] - m[r * dim + k] * m[k * dim + c]) / prev;
            }
            m[r * dim + k] = 0;
        }
        prev = m[k * dim + k];
        det = prev;
    }
    (sign * det) as i64
}

/// Dominant real eigendirection of `A` by power iteration; falls back to `e_0`
/// when the dominant eigenvalue is not real and simple.
fn dominant_direction(a: &DMatrix<f64>) -> DVector<f64> {
    let d = a.nrows();
    let mut v = DVector::from_fn(d, |i, _| 1.0 + 0.1 * (i as f64 + 1.0));
    v /= v.norm();
    for _ in 0..2000 {
        let mut w = a * &v;
        let n = w.norm();
        if n == 0.0 {
            break;
        }
        w /= n;
        // fix orientation to avoid flip-flop for negative eigenvalues
        if w.dot(&v) < 0.0 {
            w = -w;
        }
        v = w;
    }
    let av = a * &v;
    let lam = v.dot(&av);
    if (av - &v * lam).norm() < 1e-9 {
        v
    } else {
        DVector::from_fn(d, |i, _| if i == 0 { 1.0 } else { 0.0 })
    }
}

/// Branch selection for backward orbit extension.
#[derive(Debug, Clone, Copy)]
pub enum BranchPolicy<'a> {
    /// Use the true backward orbit stored during simulation. The slice holds
    /// points strictly before the window's leftmost point, oldest first.
    History(&'a [TorusPoint]),
    /// Choose the preimage of minimal torus distance to the reference point.
    NearestBranch,
}

/// A finite truncation of an inverse-limit point: samples `x_{-W..+W}` of a
/// full orbit, with `f(x_i) = x_{i+1}` holding to `orbit_tol`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitWindow {
    points: Vec<TorusPoint>,
    radius: usize,
}

impl OrbitWindow {
    /// Window of radius `radius` centered at `traj[center]`.
    pub fn from_trajectory(
        map: &MapModel,
        traj: &[TorusPoint],
        center: usize,
        radius: usize,
    ) -> Result<Self, MapError> {
        if center < radius || center + radius >= traj.len() {
            return Err(MapError::WindowOutOfRange { len: traj.len(), center, radius });
        }
        let points: Vec<TorusPoint> = traj[center - radius..=center + radius].to_vec();
        let w = Self { points, radius };
        w.validate(map, ORBIT_TOL)?;
        Ok(w)
    }

    /// Build a window around `p`: forward by iteration, backward by policy.
    pub fn from_point(
        map: &MapModel,
        p: &TorusPoint,
        radius: usize,
        policy: BranchPolicy<'_>,
    ) -> Result<Self, MapError> {
        let mut backward = backward_orbit(map, p, radius, policy)?;
        backward.reverse(); // oldest first
        let forward = map.iterate(p, radius);
        let mut points = backward;
        points.extend(forward);
        let w = Self { points, radius };
        w.validate(map, ORBIT_TOL)?;
        Ok(w)
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    /// Point at window index `i`, `-W <= i <= W`.
    pub fn point(&self, i: isize) -> &TorusPoint {
        &self.points[(i + self.radius as isize) as usize]
    }

    pub fn center(&self) -> &TorusPoint {
        self.point(0)
    }

    pub fn points(&self) -> &[TorusPoint] {
        &self.points
    }

    /// Largest consecutive residual `d(f(x_i), x_{i+1})` over the window.
    pub fn max_residual(&self, map: &MapModel) -> f64 {
        self.points
            .windows(2)
            .map(|pair| map.eval(&pair[0]).distance(&pair[1]))
            .fold(0.0, f64::max)
    }

    fn validate(&self, map: &MapModel, tol: f64) -> Result<(), MapError> {
        for (i, pair) in self.points.windows(2).enumerate() {
            let r = map.eval(&pair[0]).distance(&pair[1]);
            if r > tol {
                return Err(MapError::OrbitResidual { index: i, residual: r, tol });
            }
        }
        Ok(())
    }

    /// Increase the window radius by `steps` using backward extension on the
    /// left and plain iteration on the right.
    pub fn extend_backward(
        &self,
        map: &MapModel,
        steps: usize,
        policy: BranchPolicy<'_>,
    ) -> Result<Self, MapError> {
        let mut back = backward_orbit(map, self.point(-(self.radius as isize)), steps, policy)?;
        back.reverse();
        let mut points = back;
        points.extend(self.points.iter().cloned());
        let last = self.point(self.radius as isize).clone();
        let forward = map.iterate(&last, steps);
        points.extend(forward.into_iter().skip(1));
        let w = Self { points, radius: self.radius + steps };
        w.validate(map, ORBIT_TOL)?;
        Ok(w)
    }
}

/// Backward orbit of length `steps` from `p` (newest first), per policy.
fn backward_orbit(
    map: &MapModel,
    p: &TorusPoint,
    steps: usize,
    policy: BranchPolicy<'_>,
) -> Result<Vec<TorusPoint>, MapError> {
    match policy {
        BranchPolicy::History(hist) => {
            if hist.len() < steps {
                return Err(MapError::HistoryTooShort { needed: steps, got: hist.len() });
            }
            // history is oldest-first; check it really maps onto p
            let mut out = Vec::with_capacity(steps);
            let mut next = p.clone();
            for h in hist.iter().rev().take(steps) {
                let r = map.eval(h).distance(&next);
                if r > ORBIT_TOL {
                    return Err(MapError::OrbitResidual { index: out.len(), residual: r, tol: ORBIT_TOL });
                }
                out.push(h.clone());
                next = h.clone();
            }
            Ok(out)
        }
        BranchPolicy::NearestBranch => {
            let mut out = Vec::with_capacity(steps);
            let mut cur = p.clone();
            for _ in 0..steps {
                let pres = map.preimages(&cur)?;
                let mut ranked: Vec<(f64, &TorusPoint)> =
                    pres.iter().map(|q| (q.distance(&cur), q)).collect();
                ranked.sort_by(|a, b| a.0.total_cmp(&b.0));
                if ranked.len() > 1 && (ranked[1].0 - ranked[0].0).abs() < 1e-9 {
                    return Err(MapError::AmbiguousBranch {
                        first: ranked[0].0,
                        second: ranked[1].0,
                    });
                }
                cur = ranked[0].1.clone();
                out.push(cur.clone());
            }
            Ok(out)
        }
    }
}

/// Truncated inverse-limit metric `sum_i d(x_i, y_i) / 2^{|i|}` over the
/// common window range. Requires equal radii and dimensions.
pub fn inverse_limit_distance(a: &OrbitWindow, b: &OrbitWindow) -> Result<f64, MapError> {
    if a.radius != b.radius || a.dim() != b.dim() {
        return Err(MapError::WindowMismatch {
            left: a.radius,
            right: b.radius,
            left_dim: a.dim(),
            right_dim: b.dim(),
        });
    }
    let w = a.radius as isize;
    let mut sum = 0.0;
    for i in -w..=w {
        sum += a.point(i).distance(b.point(i)) / 2f64.powi(i.unsigned_abs() as i32);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cat3() -> MapModel {
        MapModel::linear(2, &[3, 1, 1, 1]).unwrap()
    }

    #[test]
    fn eval_fixed_point_and_half_lattice() {
        let map = cat3();
        let p0 = TorusPoint::from_slice(&[0.0, 0.0]);
        assert_eq!(map.eval(&p0), p0);

        // (0.5, 0.5) -> (2.0, 1.0) mod 1 = (0, 0)
        let p = TorusPoint::from_slice(&[0.5, 0.5]);
        let q = map.eval(&p);
        assert!(q.distance(&p0) < 1e-15);

        let id = MapModel::identity(2);
        let r = TorusPoint::from_slice(&[0.3, 0.9]);
        assert_eq!(id.eval(&r), r);
    }

    #[test]
    fn jacobian_constant_for_linear_and_matches_finite_differences() {
        let map = cat3();
        let p = TorusPoint::from_slice(&[0.37, 0.81]);
        assert_eq!(map.jacobian(&p), *map.linear_part());

        let zero_eps = MapModel::perturbed(2, &[3, 1, 1, 1], 0.0).unwrap();
        assert_eq!(zero_eps.jacobian(&p), *map.linear_part());

        let pert = MapModel::perturbed(2, &[3, 1, 1, 1], 0.01).unwrap();
        let j = pert.jacobian(&p);
        let h = 1e-6;
        for col in 0..2 {
            let mut dx = DVector::zeros(2);
            dx[col] = h;
            let plus = pert.eval_lift(&(p.coords() + &dx));
            let minus = pert.eval_lift(&(p.coords() - &dx));
            let fd = (plus - minus) / (2.0 * h);
            for row in 0..2 {
                assert_relative_eq!(j[(row, col)], fd[row], epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn iterate_counts_and_fixed_point() {
        let map = cat3();
        let p = TorusPoint::from_slice(&[0.0, 0.0]);
        let orbit = map.iterate(&p, 5);
        assert_eq!(orbit.len(), 6);
        for q in &orbit {
            assert!(q.distance(&p) < 1e-15);
        }
        let single = map.iterate(&TorusPoint::from_slice(&[0.2, 0.4]), 0);
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn preimages_of_origin_under_degree_two_map() {
        let map = cat3();
        assert_eq!(map.degree(), 2);
        let p = TorusPoint::from_slice(&[0.0, 0.0]);
        let pres = map.preimages(&p).unwrap();
        assert_eq!(pres.len(), 2);
        let expected = [TorusPoint::from_slice(&[0.0, 0.0]), TorusPoint::from_slice(&[0.5, 0.5])];
        for e in &expected {
            assert!(pres.iter().any(|q| q.distance(e) < 1e-10));
        }
    }

    #[test]
    fn preimages_invertible_and_identity() {
        let inv = MapModel::linear(2, &[2, 1, 1, 1]).unwrap();
        assert_eq!(inv.degree(), 1);
        let p = TorusPoint::from_slice(&[0.3, 0.7]);
        let pres = inv.preimages(&p).unwrap();
        assert_eq!(pres.len(), 1);
        assert!(inv.eval(&pres[0]).distance(&p) < 1e-12);

        let id = MapModel::identity(2);
        let pres = id.preimages(&p).unwrap();
        assert_eq!(pres.len(), 1);
        assert!(pres[0].distance(&p) < 1e-15);
    }

    #[test]
    fn preimage_eval_contains_identity_perturbed() {
        let map = MapModel::perturbed(2, &[3, 1, 1, 1], 0.05).unwrap();
        let p = TorusPoint::from_slice(&[0.123, 0.456]);
        let image = map.eval(&p);
        let pres = map.preimages(&image).unwrap();
        assert!(pres.iter().any(|q| q.distance(&p) < 1e-10));
    }

    #[test]
    fn window_from_point_with_history_and_nearest() {
        let map = cat3();
        let start = TorusPoint::from_slice(&[0.1234, 0.775]);
        let traj = map.iterate(&start, 20);
        let w = OrbitWindow::from_trajectory(&map, &traj, 10, 5).unwrap();
        assert!(w.max_residual(&map) < 1e-12);
        assert_eq!(w.center(), &traj[10]);

        // history policy reproduces the stored trajectory
        let hist = &traj[..10];
        let w2 = OrbitWindow::from_point(&map, &traj[10], 5, BranchPolicy::History(hist)).unwrap();
        for i in -5..=5 {
            assert!(w2.point(i).distance(&traj[(10 + i) as usize]) < 1e-12);
        }

        // fixed point window, any policy
        let origin = TorusPoint::from_slice(&[0.0, 0.0]);
        let wf = OrbitWindow::from_point(&map, &origin, 3, BranchPolicy::NearestBranch).unwrap();
        for i in -3..=3 {
            assert!(wf.point(i).distance(&origin) < 1e-12);
        }
    }

    #[test]
    fn nearest_branch_picks_minimal_distance_preimage() {
        let map = cat3();
        let p = TorusPoint::from_slice(&[0.25, 0.25]);
        let pres = map.preimages(&p).unwrap();
        let best = pres
            .iter()
            .min_by(|a, b| a.distance(&p).total_cmp(&b.distance(&p)))
            .unwrap()
            .clone();
        // hand enumeration: branches are (0, 0.25) and (0.5, 0.75)
        assert!(best.distance(&TorusPoint::from_slice(&[0.0, 0.25])) < 1e-10);

        let w = OrbitWindow::from_point(&map, &p, 0, BranchPolicy::NearestBranch).unwrap();
        let ext = w.extend_backward(&map, 1, BranchPolicy::NearestBranch).unwrap();
        assert!(ext.point(-1).distance(&best) < 1e-10);
    }

    #[test]
    fn inverse_limit_distance_examples() {
        let map = cat3();
        let start = TorusPoint::from_slice(&[0.3141, 0.2718]);
        let traj = map.iterate(&start, 10);
        let w1 = OrbitWindow::from_trajectory(&map, &traj, 5, 2).unwrap();
        assert_eq!(inverse_limit_distance(&w1, &w1).unwrap(), 0.0);

        // constant windows at per-slot distance delta, W = 2:
        // delta * (1 + 2*(1/2 + 1/4)) = 2.5 delta
        let id = MapModel::identity(1);
        let delta = 0.05;
        let a = OrbitWindow::from_point(&id, &TorusPoint::from_slice(&[0.2]), 2, BranchPolicy::NearestBranch).unwrap();
        let b = OrbitWindow::from_point(&id, &TorusPoint::from_slice(&[0.2 + delta]), 2, BranchPolicy::NearestBranch).unwrap();
        assert_relative_eq!(inverse_limit_distance(&a, &b).unwrap(), 2.5 * delta, epsilon = 1e-12);

        let w3 = OrbitWindow::from_trajectory(&map, &traj, 5, 3).unwrap();
        assert!(inverse_limit_distance(&w1, &w3).is_err());
    }

    #[test]
    fn jacobian_finite_difference_sweep() {
        let map = MapModel::perturbed(2, &[3, 1, 1, 1], 0.05).unwrap();
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 11) as f64 / (1u64 << 53) as f64
        };
        let h = 1e-6;
        for _ in 0..100 {
            let p = TorusPoint::from_slice(&[next(), next()]);
            let j = map.jacobian(&p);
            for col in 0..2 {
                let mut dx = DVector::zeros(2);
                dx[col] = h;
                let fd = (map.eval_lift(&(p.coords() + &dx)) - map.eval_lift(&(p.coords() - &dx))) / (2.0 * h);
                for row in 0..2 {
                    let scale = j[(row, col)].abs().max(1.0);
                    assert!((j[(row, col)] - fd[row]).abs() / scale < 1e-5);
                }
            }
        }
    }
}
