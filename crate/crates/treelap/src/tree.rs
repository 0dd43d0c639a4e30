//! Labeled trees on vertices 1..n: construction, enumeration via vertex
//! sequences, deterministic random sampling, and derived matrices.

use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::rng::CounterRng;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Labeled tree with vertex set {1, ..., n}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    n: usize,
    /// n-1 unordered edges, stored as (min, max), sorted.
    edges: Vec<(usize, usize)>,
    /// Per-vertex edge counts, index v-1.
    degrees: Vec<usize>,
    adj: Vec<Vec<usize>>,
}

impl Tree {
    /// Validates and normalizes an edge list into a tree.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTree("vertex count must be at least 1".into()));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "expected {} edges for {} vertices, got {}",
                n - 1,
                n,
                edges.len()
            )));
        }
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(u, v) in &edges {
            if u < 1 || u > n || v < 1 || v > n {
                return Err(Error::InvalidTree(format!(
                    "edge ({u},{v}) out of range 1..={n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidTree(format!("self-loop at {u}")));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        if norm.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidTree("duplicate edge".into()));
        }

        let mut adj = vec![Vec::new(); n];
        let mut degrees = vec![0usize; n];
        for &(u, v) in &norm {
            adj[u - 1].push(v);
            adj[v - 1].push(u);
            degrees[u - 1] += 1;
            degrees[v - 1] += 1;
        }
        for nbrs in adj.iter_mut() {
            nbrs.sort_unstable();
        }

        // Connectivity; acyclicity follows from the edge count.
        let mut seen = vec![false; n];
        let mut stack = vec![1usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v - 1] {
                if !seen[w - 1] {
                    seen[w - 1] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        if count != n {
            return Err(Error::InvalidTree("graph is not connected".into()));
        }

        Ok(Tree {
            n,
            edges: norm,
            degrees,
            adj,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v - 1]
    }

    /// Neighbors of vertex v (1-indexed), ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v - 1]
    }

    /// 0/1 adjacency matrix with zero diagonal; exact.
    pub fn adjacency_matrix(&self) -> SymMatrix {
        let n = self.n;
        let mut e = vec![0f64; n * n];
        for &(u, v) in &self.edges {
            e[(u - 1) * n + (v - 1)] = 1.0;
            e[(v - 1) * n + (u - 1)] = 1.0;
        }
        SymMatrix::from_entries(n, &e).expect("adjacency is symmetric")
    }

    /// All-pairs distances by breadth-first traversal from every vertex.
    pub fn distance_matrix(&self) -> SymMatrix {
        let n = self.n;
        let mut e = vec![0f64; n * n];
        let mut dist = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        for src in 1..=n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[src - 1] = 0;
            queue.clear();
            queue.push_back(src);
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbors(v) {
                    if dist[w - 1] == usize::MAX {
                        dist[w - 1] = dist[v - 1] + 1;
                        queue.push_back(w);
                    }
                }
            }
            for j in 1..=n {
                e[(src - 1) * n + (j - 1)] = dist[j - 1] as f64;
            }
        }
        SymMatrix::from_entries(n, &e).expect("distances are symmetric")
    }

    /// Parses the edge-list format: first line n, then one "u v" per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty tree file".into()))?
            .trim()
            .parse()
            .map_err(|_| Error::Parse("first line must be the vertex count".into()))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let u: usize = it
                .next()
                .ok_or_else(|| Error::Parse(format!("bad edge line '{line}'")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad edge line '{line}'")))?;
            let v: usize = it
                .next()
                .ok_or_else(|| Error::Parse(format!("bad edge line '{line}'")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad edge line '{line}'")))?;
            edges.push((u, v));
        }
        Tree::new(n, edges)
    }

    /// Formats the edge-list file format.
    pub fn format(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// Vertex sequence of length n-2 in bijection with labeled trees on n
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PruferSeq {
    entries: Vec<usize>,
}

impl PruferSeq {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len() + 2;
        for &e in &entries {
            if e < 1 || e > n {
                return Err(Error::InvalidSequence { value: e, n });
            }
        }
        Ok(PruferSeq { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len() + 2
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }
}

/// Standard decoding: repeatedly join the smallest leaf not appearing in the
/// remaining sequence to the sequence head.
pub fn prufer_decode(seq: &PruferSeq) -> Tree {
    let n = seq.n();
    let mut degree = vec![1u32; n + 1];
    for &a in seq.entries() {
        degree[a] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (1..=n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &a in seq.entries() {
        let Reverse(leaf) = leaves.pop().expect("a leaf always remains");
        edges.push((leaf, a));
        degree[leaf] -= 1;
        degree[a] -= 1;
        if degree[a] == 1 {
            leaves.push(Reverse(a));
        }
    }
    let Reverse(u) = leaves.pop().expect("two vertices remain");
    let Reverse(v) = leaves.pop().expect("two vertices remain");
    edges.push((u, v));
    Tree::new(n, edges).expect("decoding yields a tree")
}

/// Inverse of [`prufer_decode`]: repeatedly strip the smallest leaf and
/// record its neighbor.
pub fn prufer_encode(tree: &Tree) -> PruferSeq {
    let n = tree.n();
    if n < 2 {
        return PruferSeq {
            entries: Vec::new(),
        };
    }
    let mut degree: Vec<usize> = (1..=n).map(|v| tree.degree(v)).collect();
    let mut removed = vec![false; n + 1];
    let mut leaves: BinaryHeap<Reverse<usize>> = (1..=n)
        .filter(|&v| degree[v - 1] == 1)
        .map(Reverse)
        .collect();
    let mut entries = Vec::with_capacity(n - 2);
    for _ in 0..n - 2 {
        let Reverse(leaf) = leaves.pop().expect("leaf exists");
        removed[leaf] = true;
        let &nbr = tree
            .neighbors(leaf)
            .iter()
            .find(|&&w| !removed[w])
            .expect("leaf has a live neighbor");
        entries.push(nbr);
        degree[nbr - 1] -= 1;
        if degree[nbr - 1] == 1 {
            leaves.push(Reverse(nbr));
        }
    }
    PruferSeq { entries }
}

/// Path 1-2-...-n.
pub fn path_graph(n: usize) -> Result<Tree> {
    if n == 0 {
        return Err(Error::SizeOutOfRange {
            n,
            min: 1,
            max: usize::MAX,
        });
    }
    Tree::new(n, (1..n).map(|i| (i, i + 1)).collect())
}

/// Star with center 1 joined to 2..n.
pub fn star_graph(n: usize) -> Result<Tree> {
    if n < 2 {
        return Err(Error::SizeOutOfRange {
            n,
            min: 2,
            max: usize::MAX,
        });
    }
    Tree::new(n, (2..=n).map(|v| (1, v)).collect())
}

/// Supported range for exhaustive enumeration; n^(n-2) trees.
pub const ENUM_MIN: usize = 2;
pub const ENUM_MAX: usize = 9;

/// Number of labeled trees on n vertices.
pub fn tree_count(n: usize) -> u64 {
    if n <= 2 {
        1
    } else {
        (n as u64).pow(n as u32 - 2)
    }
}

/// Iterator over every labeled tree on n vertices, in lexicographic order of
/// the underlying vertex sequence.
pub struct TreeEnumeration {
    n: usize,
    index: u64,
    total: u64,
}

impl TreeEnumeration {
    /// Decodes the tree at a given lexicographic rank.
    pub fn tree_at(n: usize, index: u64) -> Tree {
        let len = n.saturating_sub(2);
        let mut entries = vec![0usize; len];
        let mut rem = index;
        for k in (0..len).rev() {
            entries[k] = (rem % n as u64) as usize + 1;
            rem /= n as u64;
        }
        prufer_decode(&PruferSeq { entries })
    }
}

impl Iterator for TreeEnumeration {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.index >= self.total {
            return None;
        }
        let t = TreeEnumeration::tree_at(self.n, self.index);
        self.index += 1;
        Some(t)
    }
}

/// Enumerates all labeled trees on n vertices, 2 <= n <= 9.
pub fn enumerate_trees(n: usize) -> Result<TreeEnumeration> {
    if !(ENUM_MIN..=ENUM_MAX).contains(&n) {
        return Err(Error::SizeOutOfRange {
            n,
            min: ENUM_MIN,
            max: ENUM_MAX,
        });
    }
    Ok(TreeEnumeration {
        n,
        index: 0,
        total: tree_count(n),
    })
}

/// Uniform labeled tree from a counter-based stream; (n, seed) determines
/// the result.
pub fn random_tree(n: usize, seed: u64) -> Result<Tree> {
    if n < 2 {
        return Err(Error::SizeOutOfRange {
            n,
            min: 2,
            max: usize::MAX,
        });
    }
    let mut rng = CounterRng::new(seed);
    let entries: Vec<usize> = (0..n - 2)
        .map(|_| rng.next_below(n as u64) as usize + 1)
        .collect();
    Ok(prufer_decode(&PruferSeq { entries }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn path_edges() {
        assert_eq!(path_graph(2).unwrap().edges(), &[(1, 2)]);
        assert_eq!(path_graph(4).unwrap().edges(), &[(1, 2), (2, 3), (3, 4)]);
        assert!(path_graph(1).unwrap().edges().is_empty());
        assert!(path_graph(0).is_err());
    }

    #[test]
    fn star_edges() {
        assert_eq!(star_graph(4).unwrap().edges(), &[(1, 2), (1, 3), (1, 4)]);
        assert_eq!(star_graph(2).unwrap().edges(), &[(1, 2)]);
        assert!(star_graph(1).is_err());
    }

    #[test]
    fn decode_empty_sequence() {
        let t = prufer_decode(&PruferSeq::new(vec![]).unwrap());
        assert_eq!(t.edges(), &[(1, 2)]);
    }

    #[test]
    fn decode_star_sequence() {
        // Hand-run of the standard decode: (1,1) joins 2->1, 3->1, then 1-4.
        let t = prufer_decode(&PruferSeq::new(vec![1, 1]).unwrap());
        assert_eq!(t.edges(), &[(1, 2), (1, 3), (1, 4)]);
    }

    #[test]
    fn encode_decode_round_trip_n5() {
        // brute force over all 125 sequences
        for a in 1..=5usize {
            for b in 1..=5usize {
                for c in 1..=5usize {
                    let seq = PruferSeq::new(vec![a, b, c]).unwrap();
                    let back = prufer_encode(&prufer_decode(&seq));
                    assert_eq!(back, seq);
                }
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_trees(2).unwrap().count(), 1);
        assert_eq!(enumerate_trees(4).unwrap().count(), 16);
        let mut distinct = HashSet::new();
        for t in enumerate_trees(7).unwrap() {
            distinct.insert(t.edges().to_vec());
        }
        assert_eq!(distinct.len() as u64, tree_count(7));
        assert!(enumerate_trees(10).is_err());
        assert!(enumerate_trees(1).is_err());
    }

    #[test]
    fn random_tree_is_deterministic() {
        let a = random_tree(5, 7).unwrap();
        let b = random_tree(5, 7).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_eq!(random_tree(2, 123).unwrap().edges(), &[(1, 2)]);
        assert!(random_tree(1, 0).is_err());
    }

    #[test]
    fn random_tree_frequencies_are_uniform() {
        // 16 labeled trees on 4 vertices; 16000 draws, binomial bound.
        let mut counts: std::collections::HashMap<Vec<(usize, usize)>, u32> =
            std::collections::HashMap::new();
        for seed in 0..16000u64 {
            let t = random_tree(4, crate::rng::mix(2024, seed)).unwrap();
            *counts.entry(t.edges().to_vec()).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 16);
        for (edges, &c) in &counts {
            assert!(
                (c as i64 - 1000).abs() <= 150,
                "tree {edges:?} appeared {c} times"
            );
        }
    }

    #[test]
    fn distance_matrix_path4() {
        let d = path_graph(4).unwrap().distance_matrix();
        assert_eq!(d.row(0), &[0.0, 1.0, 2.0, 3.0]);
        let sums: Vec<f64> = (0..4).map(|i| d.row(i).iter().sum()).collect();
        assert_eq!(sums, vec![6.0, 4.0, 4.0, 6.0]);
    }

    #[test]
    fn distance_matrix_star4() {
        let d = star_graph(4).unwrap().distance_matrix();
        assert_eq!(d.row(0), &[0.0, 1.0, 1.0, 1.0]);
        assert_eq!(d.get(1, 2), 2.0);
        assert_eq!(d.get(2, 3), 2.0);
    }

    #[test]
    fn adjacency_matrix_examples() {
        let p3 = path_graph(3).unwrap().adjacency_matrix();
        assert_eq!(p3.entries(), &[0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0]);
        let s3 = star_graph(3).unwrap().adjacency_matrix();
        assert_eq!(s3.entries(), &[0.0, 1.0, 1.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        let single = path_graph(1).unwrap().adjacency_matrix();
        assert_eq!(single.entries(), &[0.0]);
    }

    #[test]
    fn parse_and_format_round_trip() {
        let t = Tree::parse("4\n1 2\n2 3\n3 4\n").unwrap();
        assert_eq!(t.edges(), &[(1, 2), (2, 3), (3, 4)]);
        let again = Tree::parse(&t.format()).unwrap();
        assert_eq!(t, again);
    }

    #[test]
    fn rejects_disconnected_and_cyclic() {
        assert!(Tree::new(4, vec![(1, 2), (3, 4), (1, 2)]).is_err());
        assert!(Tree::new(3, vec![(1, 2)]).is_err());
        assert!(Tree::new(4, vec![(1, 2), (2, 3), (1, 3)]).is_err());
    }
}
