//! Trees on dense vertex ids `0..n`, plus the forests left behind by
//! deleting vertices from them.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::TreeError;

/// Largest vertex count accepted by [`enumerate_labeled_trees`].
pub const MAX_ENUMERATION_ORDER: usize = 9;

/// An immutable tree with at least two vertices.
///
/// Adjacency lists are sorted and edges are stored as `(min, max)` pairs in
/// lexicographic order, so two trees with the same edge set compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tree {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Tree {
    /// Builds a tree from an edge list, rejecting anything that is not a
    /// connected acyclic simple graph on `n >= 2` vertices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, TreeError> {
        if n < 2 {
            return Err(TreeError::TooSmall(n));
        }
        let mut canonical = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(TreeError::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(TreeError::NotATree(format!("self-loop at vertex {u}")));
            }
            canonical.push((u.min(v), u.max(v)));
        }
        canonical.sort_unstable();
        if let Some(w) = canonical.windows(2).find(|w| w[0] == w[1]) {
            return Err(TreeError::NotATree(format!(
                "duplicate edge {} {}",
                w[0].0, w[0].1
            )));
        }
        if canonical.len() != n - 1 {
            return Err(TreeError::NotATree(format!(
                "{} edges on {} vertices (a tree needs {})",
                canonical.len(),
                n,
                n - 1
            )));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &canonical {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let tree = Tree {
            adjacency,
            edges: canonical,
        };
        // n - 1 edges and connected implies acyclic.
        let reached = tree.bfs_order(0).len();
        if reached != n {
            return Err(TreeError::NotATree(format!(
                "disconnected: only {reached} of {n} vertices reachable from 0 (contains a cycle)"
            )));
        }
        Ok(tree)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self, TreeError> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edges(n, &edges)
    }

    /// Star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Result<Self, TreeError> {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Self::from_edges(leaves + 1, &edges)
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    fn check_vertex(&self, v: usize) -> Result<(), TreeError> {
        if v < self.order() {
            Ok(())
        } else {
            Err(TreeError::OutOfRange {
                vertex: v,
                n: self.order(),
            })
        }
    }

    fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut order = Vec::with_capacity(self.order());
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        order
    }

    /// Parent pointers of the tree rooted at `root` (`parent[root] == root`).
    pub(crate) fn parents_from(&self, root: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.order()];
        parent[root] = root;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// Distances from `root` to every vertex.
    pub fn distances_from(&self, root: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order()];
        dist[root] = 0;
        for v in self.bfs_order(root) {
            for &w in &self.adjacency[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                }
            }
        }
        dist
    }

    /// The unique `u`–`v` path.
    pub fn path_between(&self, u: usize, v: usize) -> Result<TreePath, TreeError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(TreeError::SameVertex(u));
        }
        // Root at v so walking parents from u yields the path in u -> v order.
        let parent = self.parents_from(v);
        Ok(TreePath::from_parents(&parent, u, v))
    }

    /// BFS two-colouring rooted at vertex 0.
    pub fn bipartition(&self) -> Bipartition {
        let part = self
            .distances_from(0)
            .into_iter()
            .map(|d| (d % 2) as u8)
            .collect();
        Bipartition { part }
    }

    /// Forest obtained by deleting `removed` (vertex ids are preserved; the
    /// deleted vertices remain as isolated, inert vertices).
    pub fn without_vertices(&self, removed: &[usize]) -> Forest {
        let mut gone = vec![false; self.order()];
        for &v in removed {
            gone[v] = true;
        }
        let adjacency = self
            .adjacency
            .iter()
            .enumerate()
            .map(|(v, list)| {
                if gone[v] {
                    Vec::new()
                } else {
                    list.iter().copied().filter(|&w| !gone[w]).collect()
                }
            })
            .collect();
        Forest { adjacency }
    }

    pub fn as_forest(&self) -> Forest {
        Forest {
            adjacency: self.adjacency.clone(),
        }
    }

    /// Serializes in the line-oriented edge-list format read by [`parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.order());
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}

/// The unique path between two distinct vertices of a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreePath {
    vertices: Vec<usize>,
}

impl TreePath {
    fn from_parents(parent: &[usize], from: usize, to: usize) -> Self {
        let mut vertices = vec![from];
        let mut cur = from;
        while cur != to {
            cur = parent[cur];
            vertices.push(cur);
        }
        TreePath { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Edges in path order, each as `(min, max)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1])))
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        TreePath { vertices }
    }
}

/// Two-colouring of a tree; vertex 0 always has flag 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    part: Vec<u8>,
}

impl Bipartition {
    pub fn flags(&self) -> &[u8] {
        &self.part
    }

    pub fn same_part(&self, u: usize, v: usize) -> bool {
        self.part[u] == self.part[v]
    }
}

/// A forest on vertex ids `0..n`. Only produced by deleting vertices from a
/// [`Tree`] or by viewing a tree as a forest, so acyclicity is inherited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forest {
    adjacency: Vec<Vec<usize>>,
}

impl Forest {
    pub fn empty() -> Self {
        Forest {
            adjacency: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Edges as sorted `(min, max)` pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<_> = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        edges.sort_unstable();
        edges
    }
}

impl From<&Tree> for Forest {
    fn from(t: &Tree) -> Self {
        t.as_forest()
    }
}

/// Parses the edge-list format: a header `n <count>` followed by one `u v`
/// pair per line. Blank lines and `#` comments are ignored.
pub fn parse_edge_list(text: &str) -> Result<Tree, TreeError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let parse_num = |tok: &str| {
            tok.parse::<usize>().map_err(|_| TreeError::Parse {
                line: lineno,
                message: format!("expected a non-negative integer, found {tok:?}"),
            })
        };
        match (n, tokens.as_slice()) {
            (None, ["n", count]) => n = Some(parse_num(count)?),
            (None, _) => {
                return Err(TreeError::Parse {
                    line: lineno,
                    message: "expected header line `n <count>`".into(),
                })
            }
            (Some(_), [u, v]) => edges.push((parse_num(u)?, parse_num(v)?)),
            (Some(_), _) => {
                return Err(TreeError::Parse {
                    line: lineno,
                    message: format!("expected `u v`, found {line:?}"),
                })
            }
        }
    }
    let n = n.ok_or(TreeError::Parse {
        line: 0,
        message: "missing header line `n <count>`".into(),
    })?;
    Tree::from_edges(n, &edges)
}

/// Splits text holding several edge-list trees, each starting with its own
/// `n <count>` header, and parses each one. Items are `(first line, result)`.
pub fn parse_edge_list_records(text: &str) -> Vec<(usize, Result<Tree, TreeError>)> {
    let mut starts = Vec::new();
    let lines: Vec<&str> = text.lines().collect();
    for (idx, raw) in lines.iter().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.starts_with('n') && line.split_whitespace().next() == Some("n") {
            starts.push(idx);
        }
    }
    if starts.is_empty() {
        return vec![(1, parse_edge_list(text))];
    }
    starts
        .iter()
        .enumerate()
        .map(|(k, &start)| {
            let end = starts.get(k + 1).copied().unwrap_or(lines.len());
            let chunk = lines[start..end].join("\n");
            let result = parse_edge_list(&chunk).map_err(|e| match e {
                TreeError::Parse { line, message } => TreeError::Parse {
                    line: line + start,
                    message,
                },
                other => other,
            });
            (start + 1, result)
        })
        .collect()
}

/// Decodes a Prüfer sequence of length `n - 2` into the labeled tree on `n`
/// vertices it encodes.
pub fn tree_from_prufer(n: usize, code: &[usize]) -> Result<Tree, TreeError> {
    if n < 2 {
        return Err(TreeError::TooSmall(n));
    }
    if code.len() != n - 2 {
        return Err(TreeError::NotATree(format!(
            "Prüfer sequence for {n} vertices must have length {}",
            n - 2
        )));
    }
    let mut degree = vec![1usize; n];
    for &c in code {
        if c >= n {
            return Err(TreeError::OutOfRange { vertex: c, n });
        }
        degree[c] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let Reverse(leaf) = leaves.pop().expect("a tree always has a leaf");
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.push(Reverse(c));
        }
    }
    let Reverse(a) = leaves.pop().expect("two leaves remain");
    let Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((a, b));
    Tree::from_edges(n, &edges)
}

/// Uniformly random labeled tree on `n` vertices, reproducible from `seed`.
pub fn random_tree(n: usize, seed: u64) -> Result<Tree, TreeError> {
    if n < 2 {
        return Err(TreeError::TooSmall(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    tree_from_prufer(n, &code)
}

/// Every labeled tree on `n` vertices, once each, in lexicographic order of
/// their Prüfer sequences.
pub fn enumerate_labeled_trees(n: usize) -> Result<LabeledTrees, TreeError> {
    if n < 2 {
        return Err(TreeError::TooSmall(n));
    }
    if n > MAX_ENUMERATION_ORDER {
        return Err(TreeError::TooLarge {
            n,
            max: MAX_ENUMERATION_ORDER,
        });
    }
    Ok(LabeledTrees {
        n,
        code: Some(vec![0; n - 2]),
    })
}

/// Iterator returned by [`enumerate_labeled_trees`].
#[derive(Clone, Debug)]
pub struct LabeledTrees {
    n: usize,
    code: Option<Vec<usize>>,
}

impl LabeledTrees {
    /// `n^(n-2)`.
    pub fn total(&self) -> u64 {
        (self.n as u64).pow(self.n as u32 - 2)
    }
}

impl Iterator for LabeledTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        let code = self.code.as_mut()?;
        let tree = tree_from_prufer(self.n, code).expect("every Prüfer sequence decodes");
        // Odometer increment; exhausting it ends the stream.
        let mut pos = code.len();
        loop {
            if pos == 0 {
                self.code = None;
                break;
            }
            pos -= 1;
            code[pos] += 1;
            if code[pos] < self.n {
                break;
            }
            code[pos] = 0;
        }
        Some(tree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_smallest_trees() {
        let p2 = parse_edge_list("n 2\n0 1\n").unwrap();
        assert_eq!(p2, Tree::path(2).unwrap());
        let p3 = parse_edge_list("# a path\nn 3\n0 1\n1 2  # tail\n").unwrap();
        assert_eq!(p3, Tree::path(3).unwrap());
    }

    #[test]
    fn rejects_non_trees() {
        assert!(matches!(
            parse_edge_list("n 3\n0 1\n0 2\n1 2\n"),
            Err(TreeError::NotATree(_))
        ));
        assert!(matches!(
            parse_edge_list("n 4\n0 1\n2 3\n"),
            Err(TreeError::NotATree(_))
        ));
        // right edge count, but a triangle plus an isolated vertex
        assert!(matches!(
            parse_edge_list("n 4\n0 1\n1 2\n0 2\n"),
            Err(TreeError::NotATree(_))
        ));
        assert!(matches!(
            parse_edge_list("n 2\n0 0\n"),
            Err(TreeError::NotATree(_))
        ));
        assert!(matches!(
            parse_edge_list("n 1\n"),
            Err(TreeError::TooSmall(1))
        ));
        assert!(matches!(
            parse_edge_list("n 2\n0 x\n"),
            Err(TreeError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("0 1\n"),
            Err(TreeError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("n 2\n0 5\n"),
            Err(TreeError::OutOfRange { vertex: 5, n: 2 })
        ));
    }

    #[test]
    fn edge_list_round_trips() {
        let t = random_tree(12, 3).unwrap();
        assert_eq!(parse_edge_list(&t.to_edge_list()).unwrap(), t);
    }

    #[test]
    fn multiple_edge_list_records() {
        let text = format!(
            "# corpus\n{}{}n 3\n0 1\n0 2\n1 2\n",
            Tree::path(3).unwrap().to_edge_list(),
            Tree::star(3).unwrap().to_edge_list()
        );
        let records = parse_edge_list_records(&text);
        assert_eq!(records.len(), 3);
        assert_eq!(records[0].1, Ok(Tree::path(3).unwrap()));
        assert_eq!(records[1].1, Ok(Tree::star(3).unwrap()));
        assert!(matches!(records[2].1, Err(TreeError::NotATree(_))));
        assert_eq!(records[2].0, 9);
    }

    #[test]
    fn paths_in_paths_and_stars() {
        let p5 = Tree::path(5).unwrap();
        let p = p5.path_between(0, 3).unwrap();
        assert_eq!(p.vertices(), &[0, 1, 2, 3]);
        assert_eq!(p.len(), 3);

        let star = Tree::star(4).unwrap();
        let p = star.path_between(0, 2).unwrap();
        assert_eq!(p.vertices(), &[0, 2]);
        assert_eq!(p.len(), 1);
        let p = star.path_between(1, 4).unwrap();
        assert_eq!(p.vertices(), &[1, 0, 4]);
        assert_eq!(p.len(), 2);

        assert_eq!(p5.path_between(2, 2), Err(TreeError::SameVertex(2)));
        assert_eq!(
            p5.path_between(0, 9),
            Err(TreeError::OutOfRange { vertex: 9, n: 5 })
        );
    }

    #[test]
    fn bipartition_flags() {
        assert_eq!(Tree::path(4).unwrap().bipartition().flags(), &[0, 1, 0, 1]);
        assert_eq!(
            Tree::path(5).unwrap().bipartition().flags(),
            &[0, 1, 0, 1, 0]
        );
        assert_eq!(Tree::star(4).unwrap().bipartition().flags(), &[0, 1, 1, 1, 1]);
    }

    #[test]
    fn random_trees_small_orders() {
        for seed in 0..10 {
            assert_eq!(random_tree(2, seed).unwrap(), Tree::path(2).unwrap());
        }
        let all3: Vec<Tree> = enumerate_labeled_trees(3).unwrap().collect();
        for seed in 0..20 {
            assert!(all3.contains(&random_tree(3, seed).unwrap()));
        }
        assert_eq!(random_tree(1, 0), Err(TreeError::TooSmall(1)));
        assert_eq!(random_tree(8, 42).unwrap(), random_tree(8, 42).unwrap());
    }

    #[test]
    fn prufer_decode_known_sequence() {
        // Hand-decoded: leaves 0,1 attach to 3, then 2 -> 4, 3 -> 4, 4 -> 5.
        let t = tree_from_prufer(6, &[3, 3, 4, 4]).unwrap();
        assert_eq!(t.edges(), &[(0, 3), (1, 3), (2, 4), (3, 4), (4, 5)]);
    }

    #[test]
    fn cayley_counts() {
        for (n, count) in [(2usize, 1usize), (3, 3), (4, 16), (5, 125), (6, 1296)] {
            let trees: std::collections::HashSet<Tree> =
                enumerate_labeled_trees(n).unwrap().collect();
            assert_eq!(trees.len(), count, "n = {n}");
        }
        assert_eq!(enumerate_labeled_trees(8).unwrap().total(), 262_144);
        assert!(matches!(
            enumerate_labeled_trees(10),
            Err(TreeError::TooLarge { n: 10, max: 9 })
        ));
    }

    #[test]
    fn forest_deletion_keeps_ids() {
        let p5 = Tree::path(5).unwrap();
        let f = p5.without_vertices(&[2]);
        assert_eq!(f.edges(), vec![(0, 1), (3, 4)]);
        assert!(f.neighbors(2).is_empty());
    }
}
