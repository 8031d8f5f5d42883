//! Maximum matchings of trees and forests: the size `ν`, the count `m`,
//! saturation, and the signed alternating-path counts `μ(u, v)`.
//!
//! The counting routines are exact and polynomial. Exhaustive enumerators
//! are provided alongside as independent oracles for small inputs.

use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::MatchingError;
use crate::linalg::Matrix;
use crate::tree::{Forest, Tree};
use crate::IntegerMatrix;

/// Largest order accepted by the exhaustive enumerators.
pub const MAX_BRUTE_FORCE_ORDER: usize = 20;

/// Maximum matching size and the number of maximum matchings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingSummary<C = BigUint> {
    pub nu: usize,
    pub m: C,
}

/// A set of pairwise disjoint edges, stored as sorted `(min, max)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn covers(&self, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| a == v || b == v)
    }
}

/// Best partial matching in a DP state: size and number of ways.
#[derive(Clone, Debug)]
struct Best<C> {
    size: usize,
    ways: C,
}

impl<C: Clone + Mul<Output = C>> Best<C> {
    fn join(&self, other: &Best<C>) -> Best<C> {
        Best {
            size: self.size + other.size,
            ways: self.ways.clone() * other.ways.clone(),
        }
    }
}

/// Keeps the larger size; counts add on ties.
fn merge<C: Clone + Add<Output = C>>(a: Option<Best<C>>, b: Best<C>) -> Best<C> {
    match a {
        None => b,
        Some(a) if a.size > b.size => a,
        Some(a) if a.size < b.size => b,
        Some(a) => Best {
            size: a.size,
            ways: a.ways + b.ways,
        },
    }
}

/// `(ν, m)` of a forest with counts in any semiring-like type `C`.
///
/// Each component is rooted and processed leaves-up. Every vertex keeps
/// two states: unmatched (free to pair with its parent), and matched to one
/// of its children. Component totals multiply across the forest.
pub fn max_matching_summary_as<C>(forest: &Forest) -> MatchingSummary<C>
where
    C: Clone + Zero + One + Add<Output = C> + Mul<Output = C>,
{
    let n = forest.order();
    let mut unmatched: Vec<Option<Best<C>>> = vec![None; n];
    let mut matched: Vec<Option<Best<C>>> = vec![None; n];
    let mut visited = vec![false; n];
    let mut total = Best {
        size: 0,
        ways: C::one(),
    };
    for root in 0..n {
        if visited[root] {
            continue;
        }
        // Preorder with parents; reversed, children precede parents.
        let mut order = vec![(root, usize::MAX)];
        visited[root] = true;
        let mut k = 0;
        while k < order.len() {
            let (v, _) = order[k];
            for &w in forest.neighbors(v) {
                if !visited[w] {
                    visited[w] = true;
                    order.push((w, v));
                }
            }
            k += 1;
        }
        for &(v, parent) in order.iter().rev() {
            let mut free = Best {
                size: 0,
                ways: C::one(),
            };
            let mut paired: Option<Best<C>> = None;
            for &c in forest.neighbors(v).iter().filter(|&&c| c != parent) {
                let child_free = unmatched[c].take().expect("child processed");
                let child_paired = matched[c].take();
                let child_best = merge(child_paired, child_free.clone());
                let via_edge = free.join(&child_free).join(&Best {
                    size: 1,
                    ways: C::one(),
                });
                paired = Some(merge(paired.map(|p| p.join(&child_best)), via_edge));
                free = free.join(&child_best);
            }
            unmatched[v] = Some(free);
            matched[v] = paired;
        }
        let component = merge(matched[root].take(), unmatched[root].take().expect("root"));
        total = total.join(&component);
    }
    MatchingSummary {
        nu: total.size,
        m: total.ways,
    }
}

/// `(ν, m)` with arbitrary-precision counts. The empty forest gives `(0, 1)`.
pub fn max_matching_summary(forest: &Forest) -> MatchingSummary {
    max_matching_summary_as::<BigUint>(forest)
}

pub fn tree_summary(t: &Tree) -> MatchingSummary {
    max_matching_summary(&t.as_forest())
}

/// Every maximum matching of a forest with at most
/// [`MAX_BRUTE_FORCE_ORDER`] vertices, by exhaustive search over edge subsets.
pub fn enumerate_max_matchings(forest: &Forest) -> Result<Vec<Matching>, MatchingError> {
    if forest.order() > MAX_BRUTE_FORCE_ORDER {
        return Err(MatchingError::TooLarge {
            n: forest.order(),
            max: MAX_BRUTE_FORCE_ORDER,
        });
    }
    struct Search<'a> {
        edges: &'a [(usize, usize)],
        used: Vec<bool>,
        current: Vec<(usize, usize)>,
        best: usize,
        found: Vec<Matching>,
    }

    impl Search<'_> {
        fn run(&mut self, k: usize) {
            if self.current.len() + (self.edges.len() - k) < self.best {
                return;
            }
            if k == self.edges.len() {
                if self.current.len() > self.best {
                    self.best = self.current.len();
                    self.found.clear();
                }
                self.found.push(Matching {
                    edges: self.current.clone(),
                });
                return;
            }
            let (u, v) = self.edges[k];
            if !self.used[u] && !self.used[v] {
                self.used[u] = true;
                self.used[v] = true;
                self.current.push((u, v));
                self.run(k + 1);
                self.current.pop();
                self.used[u] = false;
                self.used[v] = false;
            }
            self.run(k + 1);
        }
    }

    let edges = forest.edges();
    let mut search = Search {
        edges: &edges,
        used: vec![false; forest.order()],
        current: Vec::new(),
        best: 0,
        found: Vec::new(),
    };
    search.run(0);
    Ok(search.found)
}

/// True iff every maximum matching covers `u`, i.e. `ν(T − u) = ν(T) − 1`.
pub fn is_saturated(t: &Tree, u: usize) -> Result<bool, MatchingError> {
    if u >= t.order() {
        return Err(crate::error::TreeError::OutOfRange {
            vertex: u,
            n: t.order(),
        }
        .into());
    }
    let whole = tree_summary(t).nu;
    let without = max_matching_summary(&t.without_vertices(&[u])).nu;
    Ok(without + 1 == whole)
}

/// Saturation flag of every vertex.
pub fn saturated_vertices(t: &Tree) -> Vec<bool> {
    let whole = tree_summary(t).nu;
    (0..t.order())
        .map(|u| max_matching_summary(&t.without_vertices(&[u])).nu + 1 == whole)
        .collect()
}

/// `+1` for distances `≡ 1 (mod 4)`, `−1` for `≡ 3 (mod 4)`.
pub fn sigma(distance: usize) -> Result<i32, MatchingError> {
    match distance % 4 {
        1 => Ok(1),
        3 => Ok(-1),
        _ => Err(MatchingError::EvenDistance(distance)),
    }
}

/// `μ(u, v)` along a path whose vertex sequence is `path`, given `ν(T)`.
///
/// Forcing the odd-position edges of the path covers every path vertex, so
/// a qualifying matching is those edges plus any matching of the forest
/// left after deleting the path. It is maximum exactly when the sizes add
/// up to `ν(T)`, and then the forest part must itself be maximum.
fn mu_along(t: &Tree, path: &[usize], tree_nu: usize) -> BigInt {
    let d = path.len() - 1;
    let Ok(sign) = sigma(d) else {
        return BigInt::zero();
    };
    let rest = max_matching_summary(&t.without_vertices(path));
    if d.div_ceil(2) + rest.nu == tree_nu {
        BigInt::from(sign) * BigInt::from(rest.m)
    } else {
        BigInt::zero()
    }
}

/// Signed count of maximum matchings `M` for which the `u`–`v` path alternates
/// with respect to `M` and starts and ends with an edge of `M`.
pub fn mu(t: &Tree, u: usize, v: usize, summary: &MatchingSummary) -> Result<BigInt, MatchingError> {
    let path = t.path_between(u, v)?;
    Ok(mu_along(t, path.vertices(), summary.nu))
}

/// `μ` by definition: filter the enumerated maximum matchings.
pub fn mu_bruteforce(t: &Tree, u: usize, v: usize) -> Result<BigInt, MatchingError> {
    let matchings = enumerate_max_matchings(&t.as_forest())?;
    mu_from_matchings(t, u, v, &matchings)
}

/// Like [`mu_bruteforce`], reusing a precomputed list of maximum matchings.
pub fn mu_from_matchings(
    t: &Tree,
    u: usize,
    v: usize,
    matchings: &[Matching],
) -> Result<BigInt, MatchingError> {
    let path = t.path_between(u, v)?;
    let Ok(sign) = sigma(path.len()) else {
        return Ok(BigInt::zero());
    };
    let path_edges: Vec<_> = path.edges().collect();
    let count = matchings
        .iter()
        .filter(|m| {
            path_edges
                .iter()
                .enumerate()
                .all(|(k, &(a, b))| m.contains(a, b) == (k % 2 == 0))
        })
        .count();
    Ok(BigInt::from(sign) * BigInt::from(count))
}

/// The integer matrix of `μ` values together with `m(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuTable {
    pub mu: IntegerMatrix,
    pub m: BigInt,
}

impl MuTable {
    pub fn order(&self) -> usize {
        self.mu.nrows()
    }

    /// Nonzero entries `(u, v, μ)` with `u < v`.
    pub fn upper_entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.mu
            .iter_indexed()
            .filter(|(u, v, x)| u < v && !x.is_zero())
    }

    /// `{"n": .., "m": .., "entries": [[u, v, mu], ...]}` with exact integers.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .upper_entries()
            .map(|(u, v, x)| json!([u, v, crate::io::big_number(x)]))
            .collect();
        json!({
            "n": self.order(),
            "m": crate::io::big_number(&self.m),
            "entries": entries,
        })
    }

    /// Reads the format written by [`MuTable::to_json`].
    pub fn from_json(value: &Value) -> Option<MuTable> {
        let n = usize::try_from(value.get("n")?.as_u64()?).ok()?;
        let m = crate::io::parse_big_number(value.get("m")?)?;
        let mut mu = Matrix::zeros(n, n);
        for e in value.get("entries")?.as_array()? {
            let e = e.as_array()?;
            let (u, v) = (e.first()?.as_u64()? as usize, e.get(1)?.as_u64()? as usize);
            if u >= n || v >= n {
                return None;
            }
            let x = crate::io::parse_big_number(e.get(2)?)?;
            mu[(u, v)] = x.clone();
            mu[(v, u)] = x;
        }
        Some(MuTable { mu, m })
    }
}

/// `μ` for every pair, plus `m(T)`.
pub fn mu_table(t: &Tree) -> MuTable {
    let n = t.order();
    let summary = tree_summary(t);
    let mut mu = Matrix::zeros(n, n);
    for u in 0..n {
        let parent = t.parents_from(u);
        let dist = t.distances_from(u);
        for v in (u + 1..n).filter(|&v| dist[v] % 2 == 1) {
            let mut path = vec![v];
            let mut cur = v;
            while cur != u {
                cur = parent[cur];
                path.push(cur);
            }
            let x = mu_along(t, &path, summary.nu);
            mu[(u, v)] = x.clone();
            mu[(v, u)] = x;
        }
    }
    MuTable {
        mu,
        m: BigInt::from(summary.m),
    }
}

/// `μ` table computed by enumeration; `n ≤ MAX_BRUTE_FORCE_ORDER`.
pub fn mu_table_bruteforce(t: &Tree) -> Result<MuTable, MatchingError> {
    let n = t.order();
    let matchings = enumerate_max_matchings(&t.as_forest())?;
    let mut mu = Matrix::zeros(n, n);
    for u in 0..n {
        for v in u + 1..n {
            let x = mu_from_matchings(t, u, v, &matchings)?;
            mu[(u, v)] = x.clone();
            mu[(v, u)] = x;
        }
    }
    Ok(MuTable {
        mu,
        m: BigInt::from(matchings.len()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::random_tree;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn matching(edges: &[(usize, usize)]) -> Matching {
        Matching {
            edges: edges.to_vec(),
        }
    }

    #[test]
    fn summaries() {
        let s = tree_summary(&Tree::path(3).unwrap());
        assert_eq!((s.nu, s.m), (1, BigUint::from(2u32)));
        let s = tree_summary(&Tree::path(4).unwrap());
        assert_eq!((s.nu, s.m), (2, BigUint::from(1u32)));
        for leaves in 1..10 {
            let s = tree_summary(&Tree::star(leaves).unwrap());
            assert_eq!((s.nu, s.m), (1, BigUint::from(leaves)));
        }
        let empty = max_matching_summary(&Forest::empty());
        assert_eq!((empty.nu, empty.m), (0, BigUint::one()));
    }

    #[test]
    fn machine_integer_counts_agree() {
        let t = random_tree(30, 11).unwrap();
        let big = tree_summary(&t);
        let small = max_matching_summary_as::<u64>(&t.as_forest());
        assert_eq!(big.nu, small.nu);
        assert_eq!(big.m, BigUint::from(small.m));
    }

    #[test]
    fn enumeration_examples() {
        let p3 = enumerate_max_matchings(&Tree::path(3).unwrap().as_forest()).unwrap();
        assert_eq!(p3, vec![matching(&[(0, 1)]), matching(&[(1, 2)])]);
        let p5 = enumerate_max_matchings(&Tree::path(5).unwrap().as_forest()).unwrap();
        assert_eq!(
            p5,
            vec![
                matching(&[(0, 1), (2, 3)]),
                matching(&[(0, 1), (3, 4)]),
                matching(&[(1, 2), (3, 4)]),
            ]
        );
        let p2 = enumerate_max_matchings(&Tree::path(2).unwrap().as_forest()).unwrap();
        assert_eq!(p2, vec![matching(&[(0, 1)])]);
        let big = Tree::path(21).unwrap();
        assert!(matches!(
            enumerate_max_matchings(&big.as_forest()),
            Err(MatchingError::TooLarge { n: 21, max: 20 })
        ));
    }

    #[test]
    fn saturation() {
        let p3 = Tree::path(3).unwrap();
        assert!(is_saturated(&p3, 1).unwrap());
        assert!(!is_saturated(&p3, 0).unwrap());
        let p4 = Tree::path(4).unwrap();
        assert!((0..4).all(|u| is_saturated(&p4, u).unwrap()));
        let star = Tree::star(4).unwrap();
        assert!(is_saturated(&star, 0).unwrap());
        assert!(!is_saturated(&star, 3).unwrap());
        assert_eq!(
            saturated_vertices(&Tree::path(5).unwrap()),
            vec![false, true, false, true, false]
        );
        assert!(is_saturated(&p3, 7).is_err());
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(1), Ok(1));
        assert_eq!(sigma(3), Ok(-1));
        assert_eq!(sigma(5), Ok(1));
        assert_eq!(sigma(4), Err(MatchingError::EvenDistance(4)));
    }

    #[test]
    fn mu_examples() {
        let p5 = Tree::path(5).unwrap();
        let s = tree_summary(&p5);
        assert_eq!(mu(&p5, 0, 3, &s).unwrap(), big(-1));
        assert_eq!(mu(&p5, 0, 1, &s).unwrap(), big(2));
        assert_eq!(mu(&p5, 0, 2, &s).unwrap(), big(0));
        assert_eq!(mu(&p5, 0, 4, &s).unwrap(), big(0));
        assert!(mu(&p5, 1, 1, &s).is_err());

        let star = Tree::star(6).unwrap();
        let s = tree_summary(&star);
        for leaf in 1..=6 {
            assert_eq!(mu(&star, 0, leaf, &s).unwrap(), big(1));
        }
        assert_eq!(mu_bruteforce(&Tree::path(2).unwrap(), 0, 1).unwrap(), big(1));
    }

    #[test]
    fn mu_tables() {
        let t = mu_table(&Tree::path(2).unwrap());
        assert_eq!(t.mu, Matrix::from_rows(vec![vec![big(0), big(1)], vec![big(1), big(0)]]));
        assert_eq!(t.m, big(1));

        let t = mu_table(&Tree::path(3).unwrap());
        let expected = Matrix::from_rows(vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]).map(|&x| big(x));
        assert_eq!(t.mu, expected);
        assert_eq!(t.m, big(2));

        let t = mu_table(&Tree::path(5).unwrap());
        assert_eq!(t.m, big(3));
        let mut expected = Matrix::zeros(5, 5);
        for (u, v, x) in [(0, 1, 2), (1, 2, 1), (2, 3, 1), (3, 4, 2), (0, 3, -1), (1, 4, -1)] {
            expected[(u, v)] = big(x);
            expected[(v, u)] = big(x);
        }
        assert_eq!(t.mu, expected);
        assert_eq!(mu_table_bruteforce(&Tree::path(5).unwrap()).unwrap(), t);
    }

    #[test]
    fn json_round_trip() {
        let t = mu_table(&Tree::path(5).unwrap());
        let v = t.to_json();
        assert_eq!(v["m"], json!(3));
        assert_eq!(v["entries"].as_array().unwrap().len(), 6);
        assert_eq!(v["entries"][0], json!([0, 1, 2]));
        assert_eq!(MuTable::from_json(&v).unwrap(), t);
    }
}
