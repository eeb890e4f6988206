//! Simple undirected graphs: construction, generators and structural queries.
//!
//! Vertices are `0..n`. Edges are stored once, as `(i, j)` with `i < j`, in
//! lexicographic order; adjacency lists are sorted. A [`Graph`] is immutable
//! after construction.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from unordered pairs. Duplicate pairs collapse; a
    /// self-loop or an endpoint `>= n` is rejected.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = Vec::new();
        for (a, b) in pairs {
            if a == b {
                return Err(Error::SelfLoop { vertex: a });
            }
            for v in [a, b] {
                if v >= n {
                    return Err(Error::EndpointOutOfRange { vertex: v, n });
                }
            }
            edges.push(if a < b { (a, b) } else { (b, a) });
        }
        edges.sort_unstable();
        edges.dedup();

        let mut adj = vec![Vec::new(); n];
        for &(i, j) in &edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn generate(kind: &Generator) -> Result<Self> {
        kind.build()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Largest vertex degree. Rejects the graph with no vertices.
    pub fn max_degree(&self) -> Result<usize> {
        self.adj
            .iter()
            .map(Vec::len)
            .max()
            .ok_or(Error::EmptyGraph)
    }

    pub fn complement(&self) -> Graph {
        let mut pairs = Vec::new();
        for i in 0..self.n {
            let mut nb = self.adj[i].iter().peekable();
            for j in (i + 1)..self.n {
                while nb.next_if(|&&k| k < j).is_some() {}
                if nb.peek() == Some(&&j) {
                    continue;
                }
                pairs.push((i, j));
            }
        }
        // pairs are generated sorted and unique
        Graph::from_edges(self.n, pairs).expect("complement of a valid graph is valid")
    }

    /// Maximal connected vertex sets, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            stack.push(root);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Named graph families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator {
    Complete(usize),
    CompleteBipartite(usize, usize),
    Path(usize),
    Cycle(usize),
    /// `K_{1,k}`; vertex 0 is the center.
    Star(usize),
    /// Each pair `i < j`, visited in lexicographic order, is an edge with
    /// probability `edge_probability`, driven by a ChaCha8 stream seeded
    /// from `seed`.
    Random {
        n: usize,
        edge_probability: f64,
        seed: u64,
    },
}

impl Generator {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            Generator::Complete(n) => {
                if n == 0 {
                    return Err(Error::InvalidGenerator("complete graph needs n >= 1"));
                }
                let pairs = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j)));
                Graph::from_edges(n, pairs)
            }
            Generator::CompleteBipartite(s, t) => {
                if s == 0 || t == 0 {
                    return Err(Error::InvalidGenerator(
                        "complete bipartite graph needs both classes non-empty",
                    ));
                }
                let pairs = (0..s).flat_map(|i| (s..s + t).map(move |j| (i, j)));
                Graph::from_edges(s + t, pairs)
            }
            Generator::Path(n) => {
                if n == 0 {
                    return Err(Error::InvalidGenerator("path needs n >= 1"));
                }
                Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
            }
            Generator::Cycle(n) => {
                if n < 3 {
                    return Err(Error::InvalidGenerator("cycle needs n >= 3"));
                }
                Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            Generator::Star(k) => {
                if k == 0 {
                    return Err(Error::InvalidGenerator("star needs k >= 1 leaves"));
                }
                Generator::CompleteBipartite(1, k).build()
            }
            Generator::Random {
                n,
                edge_probability,
                seed,
            } => {
                if n == 0 {
                    return Err(Error::InvalidGenerator("random graph needs n >= 1"));
                }
                if !(0.0..=1.0).contains(&edge_probability) {
                    return Err(Error::InvalidGenerator(
                        "edge probability must lie in [0, 1]",
                    ));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut pairs = Vec::new();
                for i in 0..n {
                    for j in (i + 1)..n {
                        if rng.gen::<f64>() < edge_probability {
                            pairs.push((i, j));
                        }
                    }
                }
                Graph::from_edges(n, pairs)
            }
        }
    }
}

/// A bipartition `(S, T)` of the vertex set and its cut size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionCut {
    /// `true` puts the vertex in `S`.
    pub side_mask: Vec<bool>,
    pub cut_size: usize,
}

impl PartitionCut {
    pub fn new(g: &Graph, side_mask: Vec<bool>) -> Result<Self> {
        if side_mask.len() != g.n() {
            return Err(Error::LengthMismatch {
                expected: g.n(),
                got: side_mask.len(),
            });
        }
        let cut_size = cut_size(g, &side_mask);
        Ok(PartitionCut {
            side_mask,
            cut_size,
        })
    }

    pub fn s(&self) -> Vec<usize> {
        self.side(true)
    }

    pub fn t(&self) -> Vec<usize> {
        self.side(false)
    }

    fn side(&self, which: bool) -> Vec<usize> {
        self.side_mask
            .iter()
            .enumerate()
            .filter(|&(_, &m)| m == which)
            .map(|(i, _)| i)
            .collect()
    }
}

pub(crate) fn cut_size(g: &Graph, mask: &[bool]) -> usize {
    g.edges()
        .iter()
        .filter(|&&(i, j)| mask[i] != mask[j])
        .count()
}
