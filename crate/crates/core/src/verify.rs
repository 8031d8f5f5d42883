//! Runnable checks of the identities linking `μ`, `m(T)` and the adjacency
//! matrix, aggregated into a per-tree report.
//!
//! Every check takes the μ table explicitly so that a deliberately corrupted
//! table can be fed through the same code path as a computed one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::geninv::{adjacency_matrix, inverse_from_table, SPECTRAL_MAX_ORDER};
use crate::graph6;
use crate::linalg::{eliminate::to_rational, symmetric_eigen};
use crate::matching::{mu_table, saturated_vertices, MuTable};
use crate::oracle::{exact_pseudoinverse, rank_and_nullspace, same_nullspace};
use crate::tree::Tree;

/// Bound on the magnitude of the random integer test vectors.
pub const TEST_VECTOR_BOUND: i64 = 100;

#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    /// Random test vectors per tree for the all-functions identities.
    pub trials: usize,
    pub seed: u64,
    /// Tolerance for the floating-point eigenvector check.
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            trials: 20,
            seed: 0x5eed,
            tol: 1e-9,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: CheckStatus,
    /// First failing indices and values, when the check failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    fn pass(name: &'static str) -> Self {
        CheckResult {
            name,
            status: CheckStatus::Pass,
            witness: None,
            detail: None,
        }
    }

    fn fail(name: &'static str, witness: String) -> Self {
        CheckResult {
            name,
            status: CheckStatus::Fail,
            witness: Some(witness),
            detail: None,
        }
    }

    fn from_witness(name: &'static str, witness: Option<String>) -> Self {
        match witness {
            Some(w) => Self::fail(name, w),
            None => Self::pass(name),
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub tree_id: String,
    pub n: usize,
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl VerificationReport {
    fn new(tree: &Tree, checks: Vec<CheckResult>) -> Self {
        let count = |s| checks.iter().filter(|c| c.status == s).count();
        VerificationReport {
            tree_id: tree_id(tree),
            n: tree.order(),
            passed: count(CheckStatus::Pass),
            failed: count(CheckStatus::Fail),
            skipped: count(CheckStatus::Skipped),
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }
}

/// graph6 string for `n <= 62`, otherwise an FNV-1a digest of the edge list.
pub fn tree_id(tree: &Tree) -> String {
    match graph6::to_graph6(tree) {
        Ok(s) => s,
        Err(_) => format!("fnv1a:{:016x}", edge_digest(tree)),
    }
}

fn edge_digest(tree: &Tree) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    };
    feed(tree.order() as u64);
    for &(u, v) in tree.edges() {
        feed(u as u64);
        feed(v as u64);
    }
    h
}

fn expected_value(hit: bool, m: &BigInt) -> BigInt {
    if hit {
        m.clone()
    } else {
        BigInt::zero()
    }
}

/// Sanity of the table itself: symmetric, zero diagonal, zero between
/// vertices at even distance, `1 <= m` and `|μ| <= m`.
pub fn check_mu_support(t: &Tree, table: &MuTable) -> CheckResult {
    const NAME: &str = "mu_support";
    let n = t.order();
    if table.order() != n {
        return CheckResult::fail(NAME, format!("table order {} for tree order {n}", table.order()));
    }
    if table.m < BigInt::from(1) {
        return CheckResult::fail(NAME, format!("m = {}", table.m));
    }
    let parts = t.bipartition();
    for u in 0..n {
        for v in 0..n {
            let x = &table.mu[(u, v)];
            if *x != table.mu[(v, u)] {
                return CheckResult::fail(NAME, format!("asymmetric at ({u},{v}): {x} vs {}", table.mu[(v, u)]));
            }
            if (u == v || parts.same_part(u, v)) && !x.is_zero() {
                return CheckResult::fail(NAME, format!("nonzero μ({u},{v}) = {x} at even distance"));
            }
            if x.magnitude() > table.m.magnitude() {
                return CheckResult::fail(NAME, format!("|μ({u},{v})| = {x} exceeds m = {}", table.m));
            }
        }
    }
    CheckResult::pass(NAME)
}

/// The combinatorial inverse equals the exact pseudoinverse, entry by entry.
pub fn check_theorem_main(t: &Tree, table: &MuTable) -> CheckResult {
    const NAME: &str = "theorem_main";
    let b = inverse_from_table(table);
    let oracle = exact_pseudoinverse(&adjacency_matrix(t));
    let witness = b
        .iter_indexed()
        .find(|&(u, v, x)| *x != oracle[(u, v)])
        .map(|(u, v, x)| format!("B[{u}][{v}] = {x}, pseudoinverse has {}", oracle[(u, v)]));
    CheckResult::from_witness(NAME, witness)
}

/// For saturated `u`: `Σ_{v ∈ T(w)} μ(u, v)` is `m` at `w = u` and 0 elsewhere.
pub fn check_saturated_sums(t: &Tree, table: &MuTable) -> CheckResult {
    const NAME: &str = "saturated_sums";
    let saturated = saturated_vertices(t);
    for u in (0..t.order()).filter(|&u| saturated[u]) {
        for w in 0..t.order() {
            let sum: BigInt = t.neighbors(w).iter().map(|&v| &table.mu[(u, v)]).sum();
            let want = expected_value(w == u, &table.m);
            if sum != want {
                return CheckResult::fail(NAME, format!("u={u} w={w}: sum {sum}, expected {want}"));
            }
        }
    }
    CheckResult::pass(NAME).with_detail(format!(
        "{} saturated vertices",
        saturated.iter().filter(|&&s| s).count()
    ))
}

/// For all `u, x`: the sum of `μ(u, v)` over the endpoints `v` of all
/// length-2 walks from `x` is `m` when `x` is adjacent to `u`, else 0.
pub fn check_two_step_sums(t: &Tree, table: &MuTable) -> CheckResult {
    const NAME: &str = "two_step_sums";
    for u in 0..t.order() {
        for x in 0..t.order() {
            let mut sum = BigInt::zero();
            for &w in t.neighbors(x) {
                for &v in t.neighbors(w) {
                    sum += &table.mu[(u, v)];
                }
            }
            let want = expected_value(t.is_adjacent(u, x), &table.m);
            if sum != want {
                return CheckResult::fail(NAME, format!("u={u} x={x}: sum {sum}, expected {want}"));
            }
        }
    }
    CheckResult::pass(NAME)
}

fn rng_for(t: &Tree, seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ edge_digest(t))
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigInt> {
    (0..n)
        .map(|_| BigInt::from(rng.gen_range(-TEST_VECTOR_BOUND..=TEST_VECTOR_BOUND)))
        .collect()
}

/// `(A f)(v) = Σ_{w ∈ T(v)} f(w)`.
fn neighbor_sums(t: &Tree, f: &[BigInt]) -> Vec<BigInt> {
    (0..t.order())
        .map(|v| t.neighbors(v).iter().map(|&w| &f[w]).sum())
        .collect()
}

fn mu_row_dot(table: &MuTable, u: usize, g: &[BigInt]) -> BigInt {
    (0..g.len())
        .filter(|&v| !table.mu[(u, v)].is_zero())
        .map(|v| &table.mu[(u, v)] * &g[v])
        .sum()
}

fn format_vector(f: &[BigInt]) -> String {
    let cells: Vec<String> = f.iter().map(ToString::to_string).collect();
    format!("[{}]", cells.join(","))
}

/// For saturated `u` and arbitrary integer `f`:
/// `Σ_v μ(u, v) Σ_{w ∈ T(v)} f(w) = m·f(u)`.
pub fn check_saturated_identity_all_f(t: &Tree, table: &MuTable, trials: usize, seed: u64) -> CheckResult {
    const NAME: &str = "saturated_identity_all_f";
    let saturated = saturated_vertices(t);
    let mut rng = rng_for(t, seed);
    for _ in 0..trials {
        let f = random_vector(&mut rng, t.order());
        let g = neighbor_sums(t, &f);
        for u in (0..t.order()).filter(|&u| saturated[u]) {
            let lhs = mu_row_dot(table, u, &g);
            let rhs = &table.m * &f[u];
            if lhs != rhs {
                return CheckResult::fail(
                    NAME,
                    format!("u={u} f={}: lhs {lhs}, rhs {rhs}", format_vector(&f)),
                );
            }
        }
    }
    CheckResult::pass(NAME).with_detail(format!("{trials} random vectors"))
}

/// For all `u` and arbitrary integer `f`:
/// `Σ_v μ(u, v) Σ_{w ∈ T(v)} Σ_{x ∈ T(w)} f(x) = m·Σ_{y ∈ T(u)} f(y)`.
pub fn check_two_step_identity_all_f(t: &Tree, table: &MuTable, trials: usize, seed: u64) -> CheckResult {
    const NAME: &str = "two_step_identity_all_f";
    let mut rng = rng_for(t, seed.rotate_left(17));
    for _ in 0..trials {
        let f = random_vector(&mut rng, t.order());
        let g = neighbor_sums(t, &f);
        let h = neighbor_sums(t, &g);
        for (u, gu) in g.iter().enumerate() {
            let lhs = mu_row_dot(table, u, &h);
            let rhs = &table.m * gu;
            if lhs != rhs {
                return CheckResult::fail(
                    NAME,
                    format!("u={u} f={}: lhs {lhs}, rhs {rhs}", format_vector(&f)),
                );
            }
        }
    }
    CheckResult::pass(NAME).with_detail(format!("{trials} random vectors"))
}

/// Eigenvectors of `A` for nonzero eigenvalues satisfy `C·A·f = m·f`.
///
/// Floating part (n <= 64): every eigenpair with `|λ| > tol` must satisfy
/// `‖C·A·f − m·f‖∞ <= tol · m · n · max|f|`. Exact part (always): `B·A·A = A`,
/// i.e. the identity holds on the whole row space of `A`.
pub fn check_eigen_identity(t: &Tree, table: &MuTable, tol: f64) -> CheckResult {
    const NAME: &str = "eigen_identity";
    let a = adjacency_matrix(t);
    let b = inverse_from_table(table);
    let baa = &(&b * &a) * &a;
    if baa != a {
        let (u, v, x) = baa
            .iter_indexed()
            .find(|&(u, v, x)| *x != a[(u, v)])
            .expect("matrices differ");
        return CheckResult::fail(NAME, format!("(B·A·A)[{u}][{v}] = {x}, A has {}", a[(u, v)]));
    }
    let n = t.order();
    if n > SPECTRAL_MAX_ORDER {
        return CheckResult::pass(NAME).with_detail("exact B·A·A = A only; float eigenpairs skipped (n > 64)");
    }
    let eig = match symmetric_eigen(&a.to_f64(), SPECTRAL_MAX_ORDER) {
        Ok(e) => e,
        Err(e) => return CheckResult::fail(NAME, e.to_string()),
    };
    let c = table.mu.to_f64();
    let m = table.m.to_f64().unwrap_or(f64::INFINITY);
    let mut worst = 0.0f64;
    let mut checked = 0;
    for (lambda, f) in eig.values.iter().zip(&eig.vectors) {
        if lambda.abs() <= tol {
            continue;
        }
        checked += 1;
        let af: Vec<f64> = (0..n).map(|v| t.neighbors(v).iter().map(|&w| f[w]).sum()).collect();
        let scale = m * n as f64 * f.iter().fold(0.0f64, |s, x| s.max(x.abs()));
        for u in 0..n {
            let lhs: f64 = (0..n).map(|v| c[(u, v)] * af[v]).sum();
            let dev = (lhs - m * f[u]).abs() / scale;
            if dev.is_nan() || dev > tol {
                return CheckResult::fail(NAME, format!("λ={lambda:.12} u={u}: scaled deviation {dev:e} > {tol:e}"));
            }
            worst = worst.max(dev);
        }
    }
    CheckResult::pass(NAME).with_detail(format!("{checked} eigenpairs, worst scaled deviation {worst:e}"))
}

/// `A` and the μ table have the same null space, and every exact null
/// vector `g` of `A` satisfies `Σ_v μ(u, v) g(v) = 0` for all `u`.
pub fn check_nullspace_equivalence(t: &Tree, table: &MuTable) -> CheckResult {
    const NAME: &str = "nullspace_equivalence";
    let a = adjacency_matrix(t);
    let c = to_rational(&table.mu);
    match same_nullspace(&a, &c) {
        Ok(true) => {}
        Ok(false) => return CheckResult::fail(NAME, "null spaces of A and C differ".into()),
        Err(e) => return CheckResult::fail(NAME, e.to_string()),
    }
    let ns = rank_and_nullspace(&a);
    for g in &ns.basis {
        for u in 0..t.order() {
            let s: BigRational = (0..t.order())
                .map(|v| BigRational::from_integer(table.mu[(u, v)].clone()) * &g[v])
                .sum();
            if !s.is_zero() {
                let cells: Vec<String> = g.iter().map(ToString::to_string).collect();
                return CheckResult::fail(NAME, format!("u={u} g=[{}]: sum {s}", cells.join(",")));
            }
        }
    }
    CheckResult::pass(NAME).with_detail(format!("nullity {}", ns.basis.len()))
}

/// Runs every check against a supplied table.
pub fn verify_with_table(t: &Tree, table: &MuTable, config: &VerifyConfig) -> VerificationReport {
    let checks = vec![
        check_mu_support(t, table),
        check_theorem_main(t, table),
        check_saturated_sums(t, table),
        check_two_step_sums(t, table),
        check_saturated_identity_all_f(t, table, config.trials, config.seed),
        check_two_step_identity_all_f(t, table, config.trials, config.seed),
        check_eigen_identity(t, table, config.tol),
        check_nullspace_equivalence(t, table),
    ];
    VerificationReport::new(t, checks)
}

pub fn verify_all(t: &Tree, config: &VerifyConfig) -> VerificationReport {
    verify_with_table(t, &mu_table(t), config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::random_tree;

    fn all_pass(t: &Tree) {
        let report = verify_all(t, &VerifyConfig::default());
        let failures: Vec<_> = report.failures().collect();
        assert!(failures.is_empty(), "{}: {failures:?}", report.tree_id);
        assert_eq!(report.passed, 8);
    }

    #[test]
    fn small_trees_pass() {
        all_pass(&Tree::path(2).unwrap());
        all_pass(&Tree::path(3).unwrap());
        all_pass(&Tree::path(4).unwrap());
        all_pass(&Tree::path(5).unwrap());
        all_pass(&Tree::star(4).unwrap());
        all_pass(&Tree::star(5).unwrap());
    }

    #[test]
    fn individual_checks_on_named_trees() {
        let p5 = Tree::path(5).unwrap();
        let table = mu_table(&p5);
        assert_eq!(check_saturated_sums(&p5, &table).detail.as_deref(), Some("2 saturated vertices"));
        assert_eq!(check_nullspace_equivalence(&p5, &table).detail.as_deref(), Some("nullity 1"));
        let p4 = Tree::path(4).unwrap();
        assert_eq!(
            check_nullspace_equivalence(&p4, &mu_table(&p4)).detail.as_deref(),
            Some("nullity 0")
        );
        let k14 = Tree::star(4).unwrap();
        assert!(check_two_step_sums(&k14, &mu_table(&k14)).passed());
        let t = random_tree(50, 9).unwrap();
        assert!(check_two_step_sums(&t, &mu_table(&t)).passed());
    }

    #[test]
    fn larger_random_trees_pass() {
        for seed in 0..5 {
            all_pass(&random_tree(40, seed).unwrap());
        }
        // Beyond the eigensolver budget the float part is skipped.
        let t = random_tree(70, 1).unwrap();
        let r = check_eigen_identity(&t, &mu_table(&t), 1e-9);
        assert!(r.passed());
        assert!(r.detail.unwrap().contains("skipped"));
        assert!(tree_id(&t).starts_with("fnv1a:"));
    }

    #[test]
    fn corrupted_table_is_caught_with_witness() {
        let p5 = Tree::path(5).unwrap();
        let mut table = mu_table(&p5);
        table.mu[(0, 1)] += 1;
        let report = verify_with_table(&p5, &table, &VerifyConfig::default());
        assert!(!report.all_passed());
        assert!(report.failures().all(|c| c.witness.is_some()));
        let theorem = report.checks.iter().find(|c| c.name == "theorem_main").unwrap();
        assert_eq!(theorem.status, CheckStatus::Fail);
    }

    #[test]
    fn report_serializes() {
        let report = verify_all(&Tree::path(3).unwrap(), &VerifyConfig::default());
        let v = serde_json::to_value(&report).unwrap();
        assert_eq!(v["tree_id"], "Bg");
        assert_eq!(v["checks"][0]["status"], "pass");
    }
}
