use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::{EgnInstance, GameClass, EPS};
use crate::graph::{enumerate_independent_dominating_sets, low_bits, ENUMERATION_GUARD};

use super::rules::{coordination_unique_sne, ids_equivalence, IdsEquivalence};
use super::{classify_pure, pure_lambda, ProfileClassification, PureProfile, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    /// Strict Nash equilibria only.
    Sne,
    /// All Nash equilibria, strict or not.
    Ne,
    All,
}

impl Filter {
    fn accepts(self, verdict: Verdict) -> bool {
        match self {
            Filter::Sne => verdict.is_strict(),
            Filter::Ne => verdict.is_nash(),
            Filter::All => true,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    pub filter: Filter,
    /// Skip profiles the topological rules already exclude. Never changes
    /// the output.
    pub prune: bool,
    /// Worker threads; 1 runs inline.
    pub jobs: usize,
    pub guard: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            filter: Filter::All,
            prune: false,
            jobs: 1,
            guard: ENUMERATION_GUARD,
        }
    }
}

impl EnumerateOptions {
    pub fn new(filter: Filter) -> Self {
        EnumerateOptions {
            filter,
            ..Default::default()
        }
    }

    pub fn prune(mut self, prune: bool) -> Self {
        self.prune = prune;
        self
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }
}

/// Bitmask form of the instance for tight loops over profile indices.
struct Kernel {
    masks: Vec<u64>,
    sigma: Vec<(f64, f64)>,
    class: Vec<GameClass>,
}

impl Kernel {
    fn new(inst: &EgnInstance) -> Self {
        let g = inst.graph();
        Kernel {
            masks: (0..g.n()).map(|v| g.neighbor_mask(v).expect("guarded size")).collect(),
            sigma: (0..g.n()).map(|v| inst.sigma(v)).collect(),
            class: (0..g.n()).map(|v| inst.class(v)).collect(),
        }
    }

    #[inline]
    fn verdict(&self, bits: u64) -> Verdict {
        let mut verdict = Verdict::StrictNash;
        for (v, &mask) in self.masks.iter().enumerate() {
            let n_c = (mask & bits).count_ones();
            let n_d = mask.count_ones() - n_c;
            let (sc, sd) = self.sigma[v];
            let lambda = pure_lambda(bits >> v & 1 == 1, sc, sd, n_c as f64, n_d as f64);
            if lambda > EPS {
                return Verdict::NotNash;
            }
            if lambda >= -EPS {
                verdict = Verdict::NashOnly;
            }
        }
        verdict
    }

    /// Same test as the public rejection rules, on bitmasks.
    #[inline]
    fn rejected(&self, bits: u64) -> bool {
        self.masks.iter().enumerate().any(|(v, &mask)| {
            if mask == 0 {
                return false;
            }
            let cooperates = bits >> v & 1 == 1;
            let all_cooperate = mask & bits == mask;
            let all_defect = mask & bits == 0;
            match self.class[v] {
                GameClass::Coordination => {
                    if cooperates {
                        all_defect
                    } else {
                        all_cooperate
                    }
                }
                GameClass::AntiCoordination => {
                    if cooperates {
                        all_cooperate
                    } else {
                        all_defect
                    }
                }
                _ => false,
            }
        })
    }
}

fn check_guard(inst: &EgnInstance, guard: usize) -> Result<()> {
    let limit = guard.min(ENUMERATION_GUARD);
    if inst.n() > limit {
        Err(Error::GuardExceeded { n: inst.n(), limit })
    } else {
        Ok(())
    }
}

const CHUNK_BITS: u32 = 14;

/// Runs `visit` over all `2^n` profile indices in chunks and concatenates
/// the per-chunk outputs in ascending index order.
fn scan<T, F>(n: usize, jobs: usize, visit: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64, &mut Vec<T>) + Sync,
{
    let total = 1u64 << n;
    let chunk = 1u64 << CHUNK_BITS.min(n as u32);
    let chunks = total / chunk;
    let run = |c: u64| {
        let mut out = Vec::new();
        visit(c * chunk, (c + 1) * chunk, &mut out);
        out
    };
    if jobs <= 1 || chunks == 1 {
        let mut out = Vec::new();
        for c in 0..chunks {
            out.extend(run(c));
        }
        return out;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(run)
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    })
}

/// Every pure profile whose verdict passes `opts.filter`, in ascending index
/// order, with its full classification.
///
/// With pruning on, the SNE filter is answered in closed form when the
/// instance meets the unique-SNE or independent-dominating-set hypotheses;
/// otherwise rejected profiles are skipped before classification.
pub fn enumerate_classified(
    inst: &EgnInstance,
    opts: EnumerateOptions,
) -> Result<Vec<(PureProfile, ProfileClassification)>> {
    check_guard(inst, opts.guard)?;
    let n = inst.n();
    let classify = |idx: u64| {
        let p = PureProfile::from_index_unchecked(n, idx);
        let c = classify_pure(inst, p).expect("profile sized to instance");
        (p, c)
    };

    if opts.prune && opts.filter == Filter::Sne {
        if let Some(candidates) = closed_form_sne_candidates(inst)? {
            return Ok(candidates
                .into_iter()
                .map(classify)
                .filter(|(_, c)| c.verdict.is_strict())
                .collect());
        }
    }

    let kernel = Kernel::new(inst);
    let prune = opts.prune && opts.filter != Filter::All;
    Ok(scan(n, opts.jobs, |lo, hi, out| {
        for idx in lo..hi {
            if prune && kernel.rejected(idx) {
                continue;
            }
            if opts.filter.accepts(kernel.verdict(idx)) {
                out.push(classify(idx));
            }
        }
    }))
}

/// A superset of the strict equilibria, in ascending index order, when a
/// closed-form characterization applies.
fn closed_form_sne_candidates(inst: &EgnInstance) -> Result<Option<Vec<u64>>> {
    let n = inst.n();
    if coordination_unique_sne(inst).holds() {
        return Ok(Some(vec![0, low_bits(n)]));
    }
    let all = low_bits(n);
    let mut candidates: Vec<u64> = match ids_equivalence(inst) {
        IdsEquivalence::Inapplicable => return Ok(None),
        IdsEquivalence::CooperatorIds => enumerate_independent_dominating_sets(inst.graph())?
            .into_iter()
            .map(|s| s.mask())
            .collect(),
        IdsEquivalence::DefectorIds => enumerate_independent_dominating_sets(inst.graph())?
            .into_iter()
            .map(|s| all & !s.mask())
            .collect(),
    };
    candidates.sort_unstable();
    Ok(Some(candidates))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EquilibriumCounts {
    pub sne: usize,
    pub ne: usize,
}

/// Number of strict and of all Nash equilibria among the pure profiles.
pub fn count_equilibria(inst: &EgnInstance, jobs: usize) -> Result<EquilibriumCounts> {
    check_guard(inst, ENUMERATION_GUARD)?;
    let kernel = Kernel::new(inst);
    let per_chunk = scan(inst.n(), jobs, |lo, hi, out| {
        let mut counts = EquilibriumCounts::default();
        for idx in lo..hi {
            match kernel.verdict(idx) {
                Verdict::StrictNash => {
                    counts.sne += 1;
                    counts.ne += 1;
                }
                Verdict::NashOnly => counts.ne += 1,
                Verdict::NotNash => {}
            }
        }
        out.push(counts);
    });
    Ok(per_chunk
        .into_iter()
        .fold(EquilibriumCounts::default(), |acc, c| EquilibriumCounts {
            sne: acc.sne + c.sne,
            ne: acc.ne + c.ne,
        }))
}
