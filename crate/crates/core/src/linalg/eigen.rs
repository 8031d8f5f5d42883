//! Floating-point symmetric eigendecomposition, backed by nalgebra.

use nalgebra::{DMatrix, RealField};

use super::matrix::Matrix;
use crate::error::LinalgError;

/// Eigenpairs of a real symmetric matrix, sorted by ascending eigenvalue.
#[derive(Clone, Debug)]
pub struct SymmetricEigen<T> {
    pub values: Vec<T>,
    /// `vectors[k]` is a unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<T>>,
}

pub fn symmetric_eigen<T>(m: &Matrix<T>, max_order: usize) -> Result<SymmetricEigen<T>, LinalgError>
where
    T: RealField + Copy,
{
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.nrows(), m.ncols()));
    }
    let n = m.nrows();
    if n > max_order {
        return Err(LinalgError::TooLarge { n, max: max_order });
    }
    let dm = DMatrix::from_fn(n, n, |i, j| m[(i, j)]);
    let eig = dm.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(SymmetricEigen {
        values: order.iter().map(|&k| eig.eigenvalues[k]).collect(),
        vectors: order
            .iter()
            .map(|&k| eig.eigenvectors.column(k).iter().copied().collect())
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path2_spectrum() {
        let a = Matrix::from_rows(vec![vec![0.0f64, 1.0], vec![1.0, 0.0]]);
        let e = symmetric_eigen(&a, 64).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-12);
        assert!((e.values[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn works_in_single_precision() {
        let a = Matrix::from_rows(vec![vec![2.0f32, 0.0], vec![0.0, -3.0]]);
        let e = symmetric_eigen(&a, 64).unwrap();
        assert_eq!(e.values, vec![-3.0, 2.0]);
    }

    #[test]
    fn budget_enforced() {
        let a = Matrix::<f64>::zeros(3, 3);
        assert!(matches!(
            symmetric_eigen(&a, 2),
            Err(LinalgError::TooLarge { n: 3, max: 2 })
        ));
    }
}
