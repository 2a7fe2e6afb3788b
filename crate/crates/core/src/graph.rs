//! Undirected simple graphs, the graph families used by the case studies,
//! and independent / dominating vertex-set predicates.
//!
//! Vertices are `0..n` internally. Every textual or user-facing surface
//! (edge lists, instance files, CLI, `Display` impls) numbers them `1..=n`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest vertex count accepted by exhaustive subset and profile scans.
pub const ENUMERATION_GUARD: usize = 30;

/// Vertex sets and pure profiles are packed into a `u64`.
pub const MAX_MASK_VERTICES: usize = 64;

/// Sampling budget for [`Graph::erdos_renyi`] before giving up on connectivity.
pub const ER_MAX_ATTEMPTS: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    neighbors: Vec<Vec<usize>>,
    masks: Vec<u64>,
}

impl Graph {
    /// Builds a graph from 1-based vertex pairs. Duplicate edges (in either
    /// orientation) are collapsed; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
        }
        let mut zero_based = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            zero_based.push((u - 1, v - 1));
        }
        Ok(Self::from_zero_based(n, zero_based))
    }

    fn from_zero_based(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut neighbors = vec![Vec::new(); n];
        for (u, v) in edges {
            debug_assert!(u != v && u < n && v < n);
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
            list.dedup();
        }
        let masks = if n <= MAX_MASK_VERTICES {
            neighbors
                .iter()
                .map(|list| list.iter().fold(0u64, |m, &w| m | (1u64 << w)))
                .collect()
        } else {
            Vec::new()
        };
        Graph { n, neighbors, masks }
    }

    /// Path on `n` vertices, `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("path needs at least one vertex".into()));
        }
        Ok(Self::from_zero_based(n, (1..n).map(|v| (v - 1, v))))
    }

    /// Caterpillar `C_L(b_1, ..., b_L)`: stalk vertices `1..=L` form a path
    /// and stalk vertex `i` receives `b_i` pendant leaves. Leaves are numbered
    /// from `L + 1` upwards in stalk order, so for `C_8(0,1,0,5,0,0,4,0)`
    /// leaf 9 hangs off vertex 2, leaves 10-14 off vertex 4 and 15-18 off 7.
    pub fn caterpillar(stalk_len: usize, branch_counts: &[usize]) -> Result<Self> {
        if stalk_len == 0 {
            return Err(Error::InvalidArgument("caterpillar stalk must be non-empty".into()));
        }
        if branch_counts.len() != stalk_len {
            return Err(Error::InvalidArgument(format!(
                "caterpillar has {stalk_len} stalk vertices but {} branch counts",
                branch_counts.len()
            )));
        }
        let n = stalk_len + branch_counts.iter().sum::<usize>();
        let mut edges: Vec<(usize, usize)> = (1..stalk_len).map(|v| (v - 1, v)).collect();
        let mut next = stalk_len;
        for (stalk, &count) in branch_counts.iter().enumerate() {
            for _ in 0..count {
                edges.push((stalk, next));
                next += 1;
            }
        }
        Ok(Self::from_zero_based(n, edges))
    }

    /// Star with center vertex 1.
    pub fn star(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("star needs n >= 2, got {n}")));
        }
        Ok(Self::from_zero_based(n, (1..n).map(|v| (0, v))))
    }

    /// G(n, p) with `p = avg_degree / (n - 1)`, drawn from a ChaCha8 stream
    /// seeded with `seed`. Samples are redrawn (continuing the same stream)
    /// until the graph is connected, at most [`ER_MAX_ATTEMPTS`] times.
    pub fn erdos_renyi(n: usize, avg_degree: f64, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
        }
        if !(avg_degree > 0.0 && avg_degree < n as f64) {
            return Err(Error::InvalidArgument(format!(
                "average degree must lie in (0, {n}), got {avg_degree}"
            )));
        }
        if n == 1 {
            return Ok(Self::from_zero_based(1, std::iter::empty()));
        }
        let p = (avg_degree / (n - 1) as f64).min(1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..ER_MAX_ATTEMPTS {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random::<f64>() < p {
                        edges.push((u, v));
                    }
                }
            }
            let g = Self::from_zero_based(n, edges);
            if g.is_connected() {
                return Ok(g);
            }
        }
        Err(Error::NotConnected {
            n,
            avg_degree,
            attempts: ER_MAX_ATTEMPTS,
        })
    }

    /// Parses the edge-list text format: a header line `n <count>` followed by
    /// `u v` lines (1-based). Blank lines and `#` comments are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let parse = |tok: &str| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("expected a non-negative integer, found {tok:?}"),
                })
            };
            match n {
                None => {
                    if tokens.len() != 2 || tokens[0] != "n" {
                        return Err(Error::Parse {
                            line,
                            msg: "expected header `n <count>`".into(),
                        });
                    }
                    n = Some(parse(tokens[1])?);
                }
                Some(count) => {
                    if tokens.len() != 2 {
                        return Err(Error::Parse {
                            line,
                            msg: format!(
                                "expected `u v`, found {} fields (weighted edges are not supported)",
                                tokens.len()
                            ),
                        });
                    }
                    let (u, v) = (parse(tokens[0])?, parse(tokens[1])?);
                    for w in [u, v] {
                        if w == 0 || w > count {
                            return Err(Error::Parse {
                                line,
                                msg: format!("vertex {w} is out of range 1..={count}"),
                            });
                        }
                    }
                    if u == v {
                        return Err(Error::Parse {
                            line,
                            msg: format!("self-loop at vertex {u}"),
                        });
                    }
                    edges.push((u, v));
                }
            }
        }
        let n = n.ok_or(Error::Parse {
            line: 1,
            msg: "missing header `n <count>`".into(),
        })?;
        Self::from_edge_list(n, &edges).map_err(|e| Error::Parse {
            line: 1,
            msg: e.to_string(),
        })
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].binary_search(&v).is_ok()
    }

    /// `a_{u,v}` as 0 or 1.
    pub fn adjacency(&self, u: usize, v: usize) -> u8 {
        u8::from(self.has_edge(u, v))
    }

    /// Neighbor set of `v` as a bitmask; `None` above [`MAX_MASK_VERTICES`].
    pub fn neighbor_mask(&self, v: usize) -> Option<u64> {
        self.masks.get(v).copied()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }
}

/// A subset of the vertices, packed as a bitmask (bit `v` for vertex `v + 1`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub fn empty() -> Self {
        VertexSet(0)
    }

    pub fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    /// The full vertex set of an `n`-vertex graph.
    pub fn all(n: usize) -> Self {
        VertexSet(low_bits(n))
    }

    /// Builds a set from 1-based vertex labels.
    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n > MAX_MASK_VERTICES {
            return Err(Error::InvalidArgument(format!(
                "vertex sets support at most {MAX_MASK_VERTICES} vertices"
            )));
        }
        let mut mask = 0u64;
        for v in vertices {
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            mask |= 1 << (v - 1);
        }
        Ok(VertexSet(mask))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_MASK_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Members as 0-based indices, ascending.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(v)
            }
        })
    }

    /// Members as 1-based labels, ascending.
    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.iter().map(|v| (v + 1).to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

pub(crate) fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// No edge has both endpoints in `s`.
pub fn is_independent(g: &Graph, s: VertexSet) -> bool {
    s.iter()
        .filter(|&v| v < g.n())
        .all(|v| g.neighbors(v).iter().all(|&w| !s.contains(w)))
}

/// Every vertex outside `s` has a neighbor in `s`.
pub fn is_dominating(g: &Graph, s: VertexSet) -> bool {
    (0..g.n())
        .filter(|&v| !s.contains(v))
        .all(|v| g.neighbors(v).iter().any(|&w| s.contains(w)))
}

fn check_guard(n: usize) -> Result<()> {
    if n > ENUMERATION_GUARD {
        Err(Error::GuardExceeded {
            n,
            limit: ENUMERATION_GUARD,
        })
    } else {
        Ok(())
    }
}

/// All independent dominating sets of `g`, in ascending bitmask order.
///
/// An independent set is dominating exactly when it is maximal, so this runs
/// Bron-Kerbosch with pivoting over the complement graph and sorts the
/// resulting maximal independent sets.
pub fn enumerate_independent_dominating_sets(g: &Graph) -> Result<Vec<VertexSet>> {
    let n = g.n();
    check_guard(n)?;
    let all = low_bits(n);
    // Non-neighbors of v, excluding v itself.
    let free: Vec<u64> = (0..n)
        .map(|v| all & !(g.neighbor_mask(v).unwrap_or(0) | 1 << v))
        .collect();
    let mut found = Vec::new();
    bron_kerbosch(&free, 0, all, 0, &mut found);
    found.sort_unstable();
    Ok(found.into_iter().map(VertexSet).collect())
}

fn bron_kerbosch(free: &[u64], chosen: u64, mut candidates: u64, mut excluded: u64, out: &mut Vec<u64>) {
    if candidates == 0 {
        if excluded == 0 {
            out.push(chosen);
        }
        return;
    }
    let pivot = VertexSet(candidates | excluded)
        .iter()
        .max_by_key(|&u| (candidates & free[u]).count_ones())
        .expect("non-empty");
    for v in VertexSet(candidates & !free[pivot]).iter() {
        let bit = 1u64 << v;
        bron_kerbosch(free, chosen | bit, candidates & free[v], excluded & free[v], out);
        candidates &= !bit;
        excluded |= bit;
    }
}
