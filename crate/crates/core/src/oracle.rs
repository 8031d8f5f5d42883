//! Exact Moore–Penrose pseudoinverse and null-space machinery over the
//! rationals. Nothing here knows about trees or matchings; it is the
//! ground truth the combinatorial inverse is compared against.

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::LinalgError;
use crate::linalg::eliminate::{clear_row_denominators, fraction_free_rref, invert};
use crate::linalg::{IntegralDomain, Matrix};

/// `A = F·G` with `F` of full column rank and `G` of full row rank.
#[derive(Clone, Debug)]
pub struct RankFactorization<I: IntegralDomain> {
    /// Pivot columns of `A`.
    pub f: Matrix<Ratio<I>>,
    /// Nonzero rows of the reduced row echelon form of `A`.
    pub g: Matrix<Ratio<I>>,
    pub rank: usize,
}

/// Rank and a basis of the right null space.
#[derive(Clone, Debug, PartialEq)]
pub struct NullSpace<I: IntegralDomain> {
    pub rank: usize,
    /// Integer-valued basis vectors, each primitive with a positive leading entry.
    pub basis: Vec<Vec<Ratio<I>>>,
}

pub fn rank_and_nullspace<I: IntegralDomain>(m: &Matrix<Ratio<I>>) -> NullSpace<I> {
    let echelon = fraction_free_rref(clear_row_denominators(m));
    NullSpace {
        rank: echelon.rank(),
        basis: echelon
            .nullspace()
            .into_iter()
            .map(|v| v.into_iter().map(Ratio::from_integer).collect())
            .collect(),
    }
}

pub fn rank<I: IntegralDomain>(m: &Matrix<Ratio<I>>) -> usize {
    fraction_free_rref(clear_row_denominators(m)).rank()
}

pub fn rank_factorization<I: IntegralDomain>(m: &Matrix<Ratio<I>>) -> RankFactorization<I> {
    let echelon = fraction_free_rref(clear_row_denominators(m));
    let rank = echelon.rank();
    let scale = Ratio::from_integer(echelon.scale.clone());
    let g = Matrix::from_fn(rank, m.ncols(), |i, j| {
        Ratio::from_integer(echelon.matrix[(i, j)].clone()) / scale.clone()
    });
    RankFactorization {
        f: m.select_columns(&echelon.pivot_cols),
        g,
        rank,
    }
}

/// The Moore–Penrose inverse `A⁺ = Gᵀ(GGᵀ)⁻¹(FᵀF)⁻¹Fᵀ`, computed exactly.
pub fn exact_pseudoinverse<I: IntegralDomain>(m: &Matrix<Ratio<I>>) -> Matrix<Ratio<I>> {
    let RankFactorization { f, g, rank } = rank_factorization(m);
    if rank == 0 {
        return Matrix::zeros(m.ncols(), m.nrows());
    }
    let ft = f.transpose();
    let gt = g.transpose();
    // Both Gram matrices are r×r and nonsingular because F and G have full rank.
    let ggt_inv = invert(&(&g * &gt)).expect("G has full row rank");
    let ftf_inv = invert(&(&ft * &f)).expect("F has full column rank");
    &(&(&gt * &ggt_inv) * &ftf_inv) * &ft
}

fn check_same_square(a_rows: usize, a_cols: usize, b_rows: usize, b_cols: usize) -> Result<(), LinalgError> {
    if a_rows != b_rows || a_cols != b_cols || a_rows != a_cols {
        return Err(LinalgError::DimensionMismatch(a_rows, a_cols, b_rows, b_cols));
    }
    Ok(())
}

/// True iff `ABA = A`, `BAB = B` and `AB = BA`, exactly. For symmetric
/// `A` and `B` these are the group-inverse (and Moore–Penrose) conditions.
pub fn check_group_inverse_axioms<I: IntegralDomain>(
    a: &Matrix<Ratio<I>>,
    b: &Matrix<Ratio<I>>,
) -> Result<bool, LinalgError> {
    check_same_square(a.nrows(), a.ncols(), b.nrows(), b.ncols())?;
    let ab = a * b;
    let ba = b * a;
    Ok(ab == ba && &ab * a == *a && &ba * b == *b)
}

/// All four Penrose conditions, for possibly non-symmetric square matrices.
pub fn check_moore_penrose<I: IntegralDomain>(
    a: &Matrix<Ratio<I>>,
    b: &Matrix<Ratio<I>>,
) -> Result<bool, LinalgError> {
    check_same_square(a.nrows(), a.ncols(), b.nrows(), b.ncols())?;
    let ab = a * b;
    let ba = b * a;
    Ok(&ab * a == *a && &ba * b == *b && ab.transpose() == ab && ba.transpose() == ba)
}

/// True iff `a` and `c` have equal rank and `c` annihilates every null
/// vector of `a`, i.e. the two matrices have the same null space.
pub fn same_nullspace<I: IntegralDomain>(
    a: &Matrix<Ratio<I>>,
    c: &Matrix<Ratio<I>>,
) -> Result<bool, LinalgError> {
    check_same_square(a.nrows(), a.ncols(), c.nrows(), c.ncols())?;
    let ns = rank_and_nullspace(a);
    if ns.rank != rank(c) {
        return Ok(false);
    }
    Ok(ns
        .basis
        .iter()
        .all(|g| c.mul_vec(g).iter().all(Zero::is_zero)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eliminate::to_rational;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn rat(rows: Vec<Vec<i64>>) -> Matrix<BigRational> {
        to_rational(&Matrix::from_rows(rows).map(|&x| BigInt::from(x)))
    }

    fn p3() -> Matrix<BigRational> {
        rat(vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]])
    }

    #[test]
    fn nullspaces() {
        let ns = rank_and_nullspace(&p3());
        assert_eq!(ns.rank, 2);
        assert_eq!(ns.basis, vec![rat(vec![vec![1, 0, -1]]).row(0).to_vec()]);

        let p4 = rat(vec![
            vec![0, 1, 0, 0],
            vec![1, 0, 1, 0],
            vec![0, 1, 0, 1],
            vec![0, 0, 1, 0],
        ]);
        let ns = rank_and_nullspace(&p4);
        assert_eq!(ns.rank, 4);
        assert!(ns.basis.is_empty());

        let z = rank_and_nullspace(&Matrix::<BigRational>::zeros(2, 2));
        assert_eq!(z.rank, 0);
        assert_eq!(z.basis.len(), 2);
    }

    #[test]
    fn pseudoinverses() {
        let p2 = rat(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(exact_pseudoinverse(&p2), p2);

        let zero = Matrix::<BigRational>::zeros(3, 3);
        assert_eq!(exact_pseudoinverse(&zero), zero);

        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(exact_pseudoinverse(&p3()), p3().scale(&half));
    }

    #[test]
    fn rank_factorization_reproduces_input() {
        let a = rat(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        let rf = rank_factorization(&a);
        assert_eq!(rf.rank, 2);
        assert_eq!(&rf.f * &rf.g, a);
    }

    #[test]
    fn group_inverse_axioms() {
        let p2 = rat(vec![vec![0, 1], vec![1, 0]]);
        assert!(check_group_inverse_axioms(&p2, &p2).unwrap());
        let half = BigRational::new(1.into(), 2.into());
        assert!(check_group_inverse_axioms(&p3(), &p3().scale(&half)).unwrap());
        assert!(!check_group_inverse_axioms(&p3(), &p3()).unwrap());
        assert!(matches!(
            check_group_inverse_axioms(&p2, &p3()),
            Err(LinalgError::DimensionMismatch(..))
        ));
    }

    #[test]
    fn nullspace_comparison() {
        let c = rat(vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]);
        assert!(same_nullspace(&p3(), &c).unwrap());
        assert!(!same_nullspace(&p3(), &Matrix::identity(3)).unwrap());
    }

    #[test]
    fn works_with_machine_rationals() {
        let a: Matrix<Ratio<i64>> = to_rational(&Matrix::from_rows(vec![vec![0i64, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]));
        let b = exact_pseudoinverse(&a);
        assert!(check_group_inverse_axioms(&a, &b).unwrap());
        assert_eq!(b[(0, 1)], Ratio::new(1, 2));
    }
}
