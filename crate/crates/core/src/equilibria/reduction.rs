//! Groups of vertices that play the same strategy in every strict
//! equilibrium.
//!
//! Starting from singletons, each edge `(u, v)` is tested locally: take the
//! closed neighborhoods of `u` and `v`, treat every current group touching
//! them as one boolean variable, and look for an assignment with `u` and `v`
//! disagreeing under which every vertex whose neighbors are all covered by
//! those variables satisfies its strict condition. If there is none, `u` and
//! `v` agree in every strict equilibrium and their groups merge. Merging only
//! adds constraints, so the scan repeats until nothing changes.
//!
//! A leaf on a coordination vertex is the simplest case: it cannot strictly
//! oppose its only neighbor, so it joins that neighbor's group.

use crate::error::{Error, Result};
use crate::game::{EgnInstance, EPS};
use crate::graph::{VertexSet, ENUMERATION_GUARD};

use super::{pure_lambda, PureProfile};

/// Edge tests touching more groups than this are skipped (never merged).
const MAX_LOCAL_GROUPS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateReduction {
    n: usize,
    /// Groups ordered by smallest member.
    pub groups: Vec<VertexSet>,
}

impl CandidateReduction {
    pub fn candidate_count(&self) -> u64 {
        1u64 << self.groups.len()
    }

    /// The group-constant profiles, in ascending index order. Every strict
    /// equilibrium is among them.
    pub fn candidates(&self) -> Vec<PureProfile> {
        let mut out: Vec<PureProfile> = (0..self.candidate_count())
            .map(|choice| {
                let index = self
                    .groups
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| choice >> i & 1 == 1)
                    .fold(0u64, |acc, (_, g)| acc | g.mask());
                PureProfile::from_index_unchecked(self.n, index)
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Whether `p` plays a single strategy on each group.
    pub fn is_group_constant(&self, p: PureProfile) -> bool {
        self.groups.iter().all(|g| {
            let on = p.index() & g.mask();
            on == 0 || on == g.mask()
        })
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, v: usize) -> usize {
        let mut root = v;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = v;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

pub fn sne_agreement_groups(inst: &EgnInstance) -> Result<CandidateReduction> {
    let g = inst.graph();
    let n = g.n();
    if n > ENUMERATION_GUARD {
        return Err(Error::GuardExceeded {
            n,
            limit: ENUMERATION_GUARD,
        });
    }
    let masks: Vec<u64> = (0..n).map(|v| g.neighbor_mask(v).expect("guarded size")).collect();
    let sigma: Vec<(f64, f64)> = (0..n).map(|v| inst.sigma(v)).collect();
    let mut uf = UnionFind((0..n).collect());

    let mut changed = true;
    while changed {
        changed = false;
        for (u, v) in g.edges() {
            if uf.find(u) != uf.find(v) && forced_to_agree(&masks, &sigma, &mut uf, u, v) {
                uf.union(u, v);
                changed = true;
            }
        }
    }

    let mut groups: Vec<u64> = vec![0; n];
    for v in 0..n {
        let root = uf.find(v);
        groups[root] |= 1 << v;
    }
    let mut groups: Vec<VertexSet> = groups
        .into_iter()
        .filter(|&m| m != 0)
        .map(VertexSet::from_mask)
        .collect();
    groups.sort_by_key(|s| s.mask().trailing_zeros());
    Ok(CandidateReduction { n, groups })
}

fn forced_to_agree(masks: &[u64], sigma: &[(f64, f64)], uf: &mut UnionFind, u: usize, v: usize) -> bool {
    let n = masks.len();
    let local = masks[u] | masks[v] | 1 << u | 1 << v;

    let mut roots: Vec<usize> = VertexSet::from_mask(local).iter().map(|w| uf.find(w)).collect();
    roots.sort_unstable();
    roots.dedup();
    if roots.len() > MAX_LOCAL_GROUPS {
        return false;
    }
    let root_of: Vec<usize> = (0..n).map(|w| uf.find(w)).collect();
    let var_of = |w: usize| roots.binary_search(&root_of[w]).ok();

    // Vertices in a group with a local member; their strategy is pinned by
    // the assignment.
    let mut covered = 0u64;
    for w in 0..n {
        if var_of(w).is_some() {
            covered |= 1 << w;
        }
    }
    let checkable: Vec<usize> = VertexSet::from_mask(local)
        .iter()
        .filter(|&w| masks[w] & !covered == 0)
        .collect();

    let (var_u, var_v) = (var_of(u).expect("local"), var_of(v).expect("local"));
    for assignment in 0u32..(1 << roots.len()) {
        if (assignment >> var_u & 1) == (assignment >> var_v & 1) {
            continue;
        }
        let mut bits = 0u64;
        for w in VertexSet::from_mask(covered).iter() {
            if assignment >> var_of(w).expect("covered") & 1 == 1 {
                bits |= 1 << w;
            }
        }
        let all_strict = checkable.iter().all(|&w| {
            let n_c = (masks[w] & bits).count_ones();
            let n_d = masks[w].count_ones() - n_c;
            let (sc, sd) = sigma[w];
            pure_lambda(bits >> w & 1 == 1, sc, sd, n_c as f64, n_d as f64) < -EPS
        });
        if all_strict {
            return false;
        }
    }
    true
}
