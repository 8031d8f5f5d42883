//! The generalized inverse of a tree, assembled entrywise as
//! `μ(u, v) / m(T)`, and its view as an edge-labeled graph.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::LinalgError;
use crate::io::format_rational;
use crate::linalg::symmetric_eigen;
use crate::matching::{mu_table, MuTable};
use crate::oracle;
use crate::tree::Tree;
use crate::RationalMatrix;

/// Largest order handed to the floating-point eigensolver.
pub const SPECTRAL_MAX_ORDER: usize = 64;

/// 0/1 adjacency matrix with zero diagonal.
pub fn adjacency_matrix(t: &Tree) -> RationalMatrix {
    let mut a = RationalMatrix::zeros(t.order(), t.order());
    for &(u, v) in t.edges() {
        a[(u, v)] = BigRational::one();
        a[(v, u)] = BigRational::one();
    }
    a
}

/// `B[u][v] = μ[u][v] / m`, zero on the diagonal.
pub fn inverse_from_table(table: &MuTable) -> RationalMatrix {
    let n = table.order();
    let denom = table.m.clone();
    RationalMatrix::from_fn(n, n, |u, v| {
        if u == v {
            BigRational::zero()
        } else {
            BigRational::new(table.mu[(u, v)].clone(), denom.clone())
        }
    })
}

pub fn generalized_inverse(t: &Tree) -> RationalMatrix {
    inverse_from_table(&mu_table(t))
}

/// Edge-labeled graph whose adjacency matrix is a given symmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub n: usize,
    /// `(u, v, label)` with `u < v` and nonzero label, sorted by `(u, v)`.
    pub edges: Vec<(usize, usize, BigRational)>,
}

impl LabeledGraph {
    pub fn from_matrix(m: &RationalMatrix) -> Self {
        let edges = m
            .iter_indexed()
            .filter(|(u, v, x)| u < v && !x.is_zero())
            .map(|(u, v, x)| (u, v, x.clone()))
            .collect();
        LabeledGraph {
            n: m.nrows(),
            edges,
        }
    }

    pub fn label(&self, u: usize, v: usize) -> Option<&BigRational> {
        let key = (u.min(v), u.max(v));
        self.edges
            .binary_search_by(|(a, b, _)| (*a, *b).cmp(&key))
            .ok()
            .map(|k| &self.edges[k].2)
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|(u, v, x)| json!([u, v, format_rational(x)]))
            .collect();
        json!({ "n": self.n, "edges": edges })
    }
}

pub fn inverse_graph(t: &Tree) -> LabeledGraph {
    LabeledGraph::from_matrix(&generalized_inverse(t))
}

/// Outcome of comparing the spectrum of `A` with that of its inverse.
#[derive(Clone, Debug)]
pub struct SpectralComparison {
    /// Nonzero eigenvalues of `A`, ascending.
    pub nonzero: Vec<f64>,
    /// Nonzero eigenvalues of `B`, ascending.
    pub inverse_nonzero: Vec<f64>,
    pub nullity: usize,
    pub max_deviation: f64,
}

/// `rank` eigenvalues of largest magnitude (ascending), plus the largest
/// magnitude among the remaining ones.
fn split_spectrum(values: &[f64], rank: usize) -> (Vec<f64>, f64) {
    let mut by_mag = values.to_vec();
    by_mag.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    let residual = by_mag[rank..].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut nonzero = by_mag[..rank].to_vec();
    nonzero.sort_by(f64::total_cmp);
    (nonzero, residual)
}

/// Checks that the nonzero eigenvalues of `B = A*` are the reciprocals of
/// those of `A` and that both have the same number of zero eigenvalues.
///
/// Zero multiplicities come from exact ranks; the float eigenvalues must
/// then vanish within `tol` on the null part, and reciprocals agree within
/// `tol` relative to `max(1, |1/λ|)`.
pub fn spectral_reciprocity_check(t: &Tree, tol: f64) -> Result<SpectralComparison, LinalgError> {
    let n = t.order();
    if n > SPECTRAL_MAX_ORDER {
        return Err(LinalgError::TooLarge {
            n,
            max: SPECTRAL_MAX_ORDER,
        });
    }
    let a = adjacency_matrix(t);
    let b = generalized_inverse(t);
    compare_spectra(&a, &b, tol)
}

pub fn compare_spectra(
    a: &RationalMatrix,
    b: &RationalMatrix,
    tol: f64,
) -> Result<SpectralComparison, LinalgError> {
    let rank_a = oracle::rank(a);
    let rank_b = oracle::rank(b);
    if rank_a != rank_b {
        return Err(LinalgError::ToleranceViolated {
            tol,
            max_deviation: f64::INFINITY,
        });
    }
    let eig_a = symmetric_eigen(&a.to_f64(), SPECTRAL_MAX_ORDER)?;
    let eig_b = symmetric_eigen(&b.to_f64(), SPECTRAL_MAX_ORDER)?;
    let (nonzero, zero_a) = split_spectrum(&eig_a.values, rank_a);
    let (inverse_nonzero, zero_b) = split_spectrum(&eig_b.values, rank_b);

    let mut reciprocals: Vec<f64> = nonzero.iter().map(|x| x.recip()).collect();
    reciprocals.sort_by(f64::total_cmp);
    let max_deviation = reciprocals
        .iter()
        .zip(&inverse_nonzero)
        .map(|(r, x)| (r - x).abs() / r.abs().max(1.0))
        .fold(zero_a.max(zero_b), f64::max);
    if max_deviation.is_nan() || max_deviation > tol {
        return Err(LinalgError::ToleranceViolated { tol, max_deviation });
    }
    Ok(SpectralComparison {
        nonzero,
        inverse_nonzero,
        nullity: a.nrows() - rank_a,
        max_deviation,
    })
}

/// `m(T)·B`, which must reproduce the integer μ table.
pub fn scaled_inverse(b: &RationalMatrix, m: &BigInt) -> RationalMatrix {
    b.scale(&BigRational::from_integer(m.clone()))
}
