//! Fraction-free (Bareiss) Gauss–Jordan elimination and field inversion.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Signed;

use super::matrix::Matrix;
use super::scalar::{Field, IntegralDomain};
use crate::error::LinalgError;

/// Output of [`fraction_free_rref`].
///
/// `matrix` is the reduced row echelon form scaled by `scale`: each pivot
/// entry equals `scale`, every other entry of a pivot column is zero, and
/// rows at index `rank()` and beyond are zero.
#[derive(Clone, Debug)]
pub struct FractionFreeEchelon<I: IntegralDomain> {
    pub matrix: Matrix<I>,
    /// Pivot column of each nonzero row, in row order.
    pub pivot_cols: Vec<usize>,
    pub scale: I,
}

impl<I: IntegralDomain> FractionFreeEchelon<I> {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    /// Integer basis of the right null space, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<I>> {
        let cols = self.matrix.ncols();
        let mut is_pivot = vec![false; cols];
        for &c in &self.pivot_cols {
            is_pivot[c] = true;
        }
        (0..cols)
            .filter(|&f| !is_pivot[f])
            .map(|free| {
                let mut x = vec![I::zero(); cols];
                x[free] = self.scale.clone();
                for (row, &pc) in self.pivot_cols.iter().enumerate() {
                    x[pc] = -self.matrix[(row, free)].clone();
                }
                normalize_integer_vector(x)
            })
            .collect()
    }
}

/// Divides by the content and makes the first nonzero entry positive.
fn normalize_integer_vector<I: IntegralDomain>(mut x: Vec<I>) -> Vec<I> {
    let g = x.iter().fold(I::zero(), |g, v| g.gcd(v));
    let sign_neg = x.iter().find(|v| !v.is_zero()).is_some_and(Signed::is_negative);
    if !g.is_zero() {
        for v in &mut x {
            *v = v.clone() / g.clone();
            if sign_neg {
                *v = -v.clone();
            }
        }
    }
    x
}

/// Bareiss-style Gauss–Jordan elimination over an integral domain.
///
/// Every division performed is exact; intermediate entries are minors of
/// the input, so their size stays bounded by Hadamard's inequality. Pivots
/// are taken as the first nonzero entry in column order.
pub fn fraction_free_rref<I: IntegralDomain>(mut a: Matrix<I>) -> FractionFreeEchelon<I> {
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut prev = I::one();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let piv = a[(r, c)].clone();
        for i in (0..rows).filter(|&i| i != r) {
            let factor = a[(i, c)].clone();
            for j in 0..cols {
                if j == c {
                    continue;
                }
                let num = piv.clone() * a[(i, j)].clone() - factor.clone() * a[(r, j)].clone();
                debug_assert!(num.is_multiple_of(&prev), "inexact Bareiss division");
                a[(i, j)] = num / prev.clone();
            }
            a[(i, c)] = I::zero();
        }
        prev = piv;
        pivot_cols.push(c);
        r += 1;
    }
    FractionFreeEchelon {
        matrix: a,
        pivot_cols,
        scale: prev,
    }
}

/// Scales each row of a rational matrix by the lcm of its denominators.
/// The result has the same row space, rank and null space.
pub fn clear_row_denominators<I>(m: &Matrix<Ratio<I>>) -> Matrix<I>
where
    I: IntegralDomain,
{
    let mut rows = Vec::with_capacity(m.nrows());
    for i in 0..m.nrows() {
        let row = m.row(i);
        let lcm = row.iter().fold(I::one(), |l, x| l.lcm(x.denom()));
        rows.push(
            row.iter()
                .map(|x| x.numer().clone() * (lcm.clone() / x.denom().clone()))
                .collect(),
        );
    }
    if m.ncols() == 0 {
        return Matrix::zeros(m.nrows(), 0);
    }
    Matrix::from_rows(rows)
}

/// Gauss–Jordan inverse over a field, pivoting on the first nonzero entry.
/// Suitable for exact fields; no magnitude pivoting is done.
pub fn invert<T: Field>(m: &Matrix<T>) -> Result<Matrix<T>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.nrows(), m.ncols()));
    }
    let n = m.nrows();
    let mut a = m.clone();
    let mut inv = Matrix::<T>::identity(n);
    for c in 0..n {
        let p = (c..n).find(|&i| !a[(i, c)].is_zero()).ok_or(LinalgError::Singular)?;
        a.swap_rows(p, c);
        inv.swap_rows(p, c);
        let piv = a[(c, c)].clone();
        for j in 0..n {
            a[(c, j)] = a[(c, j)].clone() / piv.clone();
            inv[(c, j)] = inv[(c, j)].clone() / piv.clone();
        }
        for i in (0..n).filter(|&i| i != c) {
            let factor = a[(i, c)].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..n {
                a[(i, j)] = a[(i, j)].clone() - factor.clone() * a[(c, j)].clone();
                inv[(i, j)] = inv[(i, j)].clone() - factor.clone() * inv[(c, j)].clone();
            }
        }
    }
    Ok(inv)
}

/// Converts an integer matrix into the corresponding rational matrix.
pub fn to_rational<I: Integer + Clone>(m: &Matrix<I>) -> Matrix<Ratio<I>> {
    m.map(|x| Ratio::from_integer(x.clone()))
}
