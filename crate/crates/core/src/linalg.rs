//! Small dense-matrix helpers shared across the crate.

use nalgebra::{DMatrix, DVector};

/// Operator 2-norm (largest singular value).
pub fn op_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().max()
}

/// Co-norm: smallest singular value, i.e. `1 / ||M^{-1}||` for invertible `M`.
pub fn co_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return f64::INFINITY;
    }
    m.singular_values().min()
}

/// QR-orthonormalization with the sign convention `diag(R) >= 0`, so that the
/// factorization is unique and propagation is deterministic.
pub fn orthonormalize(m: &DMatrix<f64>) -> (DMatrix<f64>, DMatrix<f64>) {
    let qr = m.clone().qr();
    let mut q = qr.q();
    let mut r = qr.r();
    for i in 0..r.nrows().min(r.ncols()) {
        if r[(i, i)] < 0.0 {
            for j in 0..r.ncols() {
                r[(i, j)] = -r[(i, j)];
            }
            for j in 0..q.nrows() {
                q[(j, i)] = -q[(j, i)];
            }
        }
    }
    (q, r)
}

/// Distance between the column spans of two orthonormal frames:
/// `|| (I - B B^T) A ||_2`, zero iff span(A) is contained in span(B).
pub fn subspace_distance(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    if a.ncols() == 0 {
        return 0.0;
    }
    let proj = a - b * (b.transpose() * a);
    op_norm(&proj)
}

/// Principal angle (radians) between the spans of two orthonormal frames.
pub fn principal_angle(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    if a.ncols() == 0 || b.ncols() == 0 {
        return std::f64::consts::FRAC_PI_2;
    }
    let cos = op_norm(&(a.transpose() * b)).min(1.0);
    cos.acos()
}

/// Smallest principal angle complement: how far the joint frame `[A | B]` is
/// from degenerate. Returns the smallest singular value of `[A | B]`.
pub fn frame_conditioning(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    let d = a.nrows();
    let mut joint = DMatrix::zeros(d, a.ncols() + b.ncols());
    joint.columns_mut(0, a.ncols()).copy_from(a);
    joint.columns_mut(a.ncols(), b.ncols()).copy_from(b);
    co_norm(&joint)
}

/// Solve `M x = y` by LU with full pivoting; `None` when `M` is singular to
/// working precision.
pub fn solve(m: &DMatrix<f64>, y: &DVector<f64>) -> Option<DVector<f64>> {
    m.clone().full_piv_lu().solve(y)
}

/// Matrix inverse via LU; `None` when singular.
pub fn invert(m: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    m.clone().full_piv_lu().try_inverse()
}
