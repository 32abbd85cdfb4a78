//! Small complex linear-algebra helpers on top of `nalgebra`.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};

#[allow(non_camel_case_types)]
pub type c64 = Complex<f64>;
pub type CMatrix = DMatrix<c64>;
pub type CVector = DVector<c64>;

/// Largest elementwise deviation `|A_ij - conj(A_ji)|`.
pub fn hermitian_defect(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

/// `‖A‖_F²`.
pub fn frobenius_sq(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

/// Squared Euclidean norm of each row.
pub fn row_energies(a: &CMatrix) -> Vec<f64> {
    (0..a.nrows())
        .map(|i| a.row(i).iter().map(|z| z.norm_sqr()).sum())
        .collect()
}

/// Diagonal of `A Aᴴ`, i.e. the squared norm of each row.
pub fn gram_diag(a: &CMatrix) -> DVector<f64> {
    DVector::from_vec(row_energies(a))
}

/// `Σ_i |x_i|² d_i` for a real diagonal `d`.
pub fn weighted_energy(x: impl Iterator<Item = c64>, d: &DVector<f64>) -> f64 {
    x.zip(d.iter()).map(|(z, w)| z.norm_sqr() * w).sum()
}

/// Completes the column span of a tall matrix `a` (N×K, K < N) to a unitary
/// basis with Householder reflections.
///
/// Returns `Q` (N×N, unitary) whose first K columns span `range(a)` and whose
/// remaining N−K columns span its orthogonal complement. Fails if `a` has a
/// column that is numerically dependent on the previous ones.
pub fn complete_unitary_basis(a: &CMatrix) -> Result<CMatrix> {
    let (n, k) = a.shape();
    if k > n {
        return Err(Error::DimensionMismatch(format!(
            "cannot complete a basis from {k} columns in dimension {n}"
        )));
    }
    let scale = frobenius_sq(a).sqrt();
    let tol = 1e-12 * scale.max(f64::MIN_POSITIVE);
    let mut work = a.clone();
    let mut reflectors: Vec<CVector> = Vec::with_capacity(k);

    for j in 0..k {
        let x = work.view((j, j), (n - j, 1)).column(0).into_owned();
        let norm = x.norm();
        if norm <= tol {
            return Err(Error::RankDeficient { expected: k });
        }
        let phase = if x[0].norm() > 0.0 {
            x[0] / x[0].norm()
        } else {
            c64::new(1.0, 0.0)
        };
        // v = x + e^{i arg x0} ‖x‖ e1 avoids cancellation in the first entry.
        let mut v = x;
        v[0] += phase * norm;
        let vnorm = v.norm();
        v.unscale_mut(vnorm);
        apply_reflector(&mut work, &v, j, j);
        reflectors.push(v);
    }

    let mut q = CMatrix::identity(n, n);
    for (j, v) in reflectors.iter().enumerate().rev() {
        apply_reflector(&mut q, v, j, j);
    }
    Ok(q)
}

/// Applies `I − 2 v vᴴ` (acting on rows `offset..`) to the columns
/// `first_col..` of `m`.
fn apply_reflector(m: &mut CMatrix, v: &CVector, offset: usize, first_col: usize) {
    let len = v.len();
    for c in first_col..m.ncols() {
        let mut col = m.view_mut((offset, c), (len, 1));
        let dot: c64 = v.iter().zip(col.iter()).map(|(vi, xi)| vi.conj() * xi).sum();
        let s = dot * 2.0;
        for (xi, vi) in col.iter_mut().zip(v.iter()) {
            *xi -= vi * s;
        }
    }
}

/// Neumaier-compensated sum; the result depends only on the input order.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
