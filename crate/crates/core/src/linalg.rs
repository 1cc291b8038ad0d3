//! Small dense linear-algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

pub type Vector = DVector<f64>;
pub type Matrix = DMatrix<f64>;

/// Returns `(M + Mᵀ) / 2`.
pub fn symmetrize(m: &Matrix) -> Matrix {
    (m + m.transpose()) * 0.5
}

/// Eigen-decomposition of a symmetric matrix with eigenvalues sorted ascending.
///
/// Column `i` of the returned matrix is the unit eigenvector for value `i`.
pub fn sym_eigen(m: &Matrix) -> (Vector, Matrix) {
    let n = m.nrows();
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = Vector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Smallest eigenvalue of a symmetric matrix with a unit eigenvector.
pub fn min_eig(m: &Matrix) -> (f64, Vector) {
    let (values, vectors) = sym_eigen(m);
    (values[0], vectors.column(0).into_owned())
}

/// Singular values, sorted descending.
pub fn singular_values(m: &Matrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Spectral (operator 2-) norm.
pub fn spectral_norm(m: &Matrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Smallest singular value.
pub fn sigma_min(m: &Matrix) -> f64 {
    singular_values(m).last().copied().unwrap_or(0.0)
}

/// 2-norm condition number; infinite for a singular matrix.
pub fn cond(m: &Matrix) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        (Some(_), Some(_)) => f64::INFINITY,
        _ => 1.0,
    }
}

/// Orthonormal basis of the null space of `m`, one vector per column.
///
/// A singular value counts as zero when it is at most `rel_tol` times the
/// largest one (or exactly zero for the zero matrix).
pub fn null_space(m: &Matrix, rel_tol: f64) -> Matrix {
    let cols = m.ncols();
    if cols == 0 {
        return Matrix::zeros(0, 0);
    }
    // Pad to at least square so that the SVD exposes a full right basis.
    let rows = m.nrows().max(cols);
    let mut padded = Matrix::zeros(rows, cols);
    padded.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.max();
    let thresh = if smax > 0.0 { rel_tol * smax } else { 0.0 };
    let kernel: Vec<Vector> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= thresh)
        .map(|(i, _)| v_t.row(i).transpose())
        .collect();
    if kernel.is_empty() {
        Matrix::zeros(cols, 0)
    } else {
        Matrix::from_columns(&kernel)
    }
}

/// Completes a nonzero vector to an orthonormal basis of its orthogonal
/// complement (the returned columns are orthogonal to `v` and each other).
pub fn orthogonal_complement(v: &Vector) -> Matrix {
    let n = v.len();
    let mut basis: Vec<Vector> = Vec::with_capacity(n);
    let norm = v.norm();
    if norm > 0.0 {
        basis.push(v / norm);
    }
    for i in 0..n {
        let mut e = Vector::zeros(n);
        e[i] = 1.0;
        for b in &basis {
            let c = b.dot(&e);
            e -= b * c;
        }
        // Second pass for numerical orthogonality.
        for b in &basis {
            let c = b.dot(&e);
            e -= b * c;
        }
        let en = e.norm();
        if en > 1e-10 {
            basis.push(e / en);
        }
        if basis.len() == n {
            break;
        }
    }
    let rest: Vec<Vector> = basis.into_iter().skip(usize::from(norm > 0.0)).collect();
    if rest.is_empty() {
        Matrix::zeros(n, 0)
    } else {
        Matrix::from_columns(&rest)
    }
}

/// Lexicographic comparison of two vectors of equal length.
pub fn lex_cmp(a: &Vector, b: &Vector) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_sorted_ascending() {
        let m = Matrix::from_row_slice(3, 3, &[2.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 5.0]);
        let (vals, vecs) = sym_eigen(&m);
        assert_eq!(vals.as_slice(), &[-1.0, 2.0, 5.0]);
        assert!((vecs[(1, 0)].abs() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn norm_and_cond() {
        let m = Matrix::from_row_slice(2, 2, &[3.0, 0.0, 0.0, -0.5]);
        assert!((spectral_norm(&m) - 3.0).abs() < 1e-14);
        assert!((sigma_min(&m) - 0.5).abs() < 1e-14);
        assert!((cond(&m) - 6.0).abs() < 1e-12);
        let s = Matrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        assert!(cond(&s) > 1e15);
    }

    #[test]
    fn null_space_of_rank_one() {
        let m = Matrix::from_row_slice(1, 3, &[1.0, 1.0, 1.0]);
        let k = null_space(&m, 1e-12);
        assert_eq!(k.ncols(), 2);
        assert!((&m * &k).norm() < 1e-12);
        assert!((k.transpose() * &k - Matrix::identity(2, 2)).norm() < 1e-12);
    }

    #[test]
    fn complement_is_orthonormal() {
        let v = Vector::from_vec(vec![1.0, 2.0, -1.0, 0.5]);
        let c = orthogonal_complement(&v);
        assert_eq!(c.ncols(), 3);
        assert!((c.transpose() * &v).norm() < 1e-12);
        assert!((c.transpose() * &c - Matrix::identity(3, 3)).norm() < 1e-12);
    }
}
