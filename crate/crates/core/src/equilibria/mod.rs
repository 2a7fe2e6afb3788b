//! Classification of pure steady states as strict Nash, Nash or neither.
//!
//! At a pure profile the Jacobian of the replicator flow is diagonal with
//! entries `λ_v = (1 - 2x_v)(σ_{v,C} N_{v,C} - σ_{v,D} N_{v,D})`. The profile
//! is a strict NE iff every `λ_v < 0` and a NE iff every `λ_v <= 0`. For
//! coordination and anti-coordination vertices this is the same as comparing
//! the neighbor counts against `R_v`; the λ form also covers vertices with
//! `σ_{v,D} = 0`, where the ratio is undefined.

mod enumerate;
mod reduction;
mod rules;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{EgnInstance, GameClass, StateVector, EPS};
use crate::graph::{low_bits, VertexSet, MAX_MASK_VERTICES};

pub use enumerate::{count_equilibria, enumerate_classified, EnumerateOptions, EquilibriumCounts, Filter};
pub use reduction::{sne_agreement_groups, CandidateReduction};
pub use rules::{
    coordination_unique_sne, ids_equivalence, rejects_by_anticoordination_match, rejects_by_coordination_mismatch,
    Applicability, IdsEquivalence,
};

/// A pure strategy profile. Bit `v` of the index is `x_v` (1 = cooperate), so
/// vertex 1 is the least significant bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PureProfile {
    n: usize,
    index: u64,
}

impl PureProfile {
    pub fn from_index(n: usize, index: u64) -> Result<Self> {
        if n == 0 || n > MAX_MASK_VERTICES {
            return Err(Error::InvalidArgument(format!(
                "pure profiles need 1..={MAX_MASK_VERTICES} players, got {n}"
            )));
        }
        if index & !low_bits(n) != 0 {
            return Err(Error::InvalidArgument(format!(
                "profile index {index} does not fit {n} players"
            )));
        }
        Ok(PureProfile { n, index })
    }

    pub(crate) fn from_index_unchecked(n: usize, index: u64) -> Self {
        PureProfile { n, index }
    }

    /// Parses a string of `0`/`1` characters; the first character is player 1.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut index = 0u64;
        for (v, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' if v < MAX_MASK_VERTICES => index |= 1 << v,
                '1' => {}
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "profile bitstring may only contain 0 and 1, found {c:?}"
                    )))
                }
            }
        }
        Self::from_index(s.chars().count(), index)
    }

    /// From per-player strategies in player order.
    pub fn from_strategies(bits: &[bool]) -> Result<Self> {
        let index = bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .fold(0u64, |acc, (v, _)| acc | 1u64.checked_shl(v as u32).unwrap_or(0));
        Self::from_index(bits.len(), index)
    }

    pub fn full_cooperation(n: usize) -> Self {
        PureProfile { n, index: low_bits(n) }
    }

    pub fn full_defection(n: usize) -> Self {
        PureProfile { n, index: 0 }
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn index(self) -> u64 {
        self.index
    }

    pub fn cooperates(self, v: usize) -> bool {
        self.index >> v & 1 == 1
    }

    pub fn strategy(self, v: usize) -> f64 {
        if self.cooperates(v) {
            1.0
        } else {
            0.0
        }
    }

    pub fn cooperators(self) -> VertexSet {
        VertexSet::from_mask(self.index)
    }

    pub fn defectors(self) -> VertexSet {
        VertexSet::from_mask(!self.index & low_bits(self.n))
    }

    pub fn with_flipped(self, v: usize) -> Self {
        PureProfile {
            n: self.n,
            index: self.index ^ (1 << v),
        }
    }

    pub fn to_state(self) -> StateVector {
        StateVector::new((0..self.n).map(|v| self.strategy(v)).collect()).expect("0/1 entries")
    }

    pub fn to_vec(self) -> Vec<f64> {
        (0..self.n).map(|v| self.strategy(v)).collect()
    }

    fn check_players(self, inst: &EgnInstance) -> Result<()> {
        if self.n == inst.n() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "profile has {} players but the instance has {} vertices",
                self.n,
                inst.n()
            )))
        }
    }
}

impl fmt::Display for PureProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in 0..self.n {
            f.write_str(if self.cooperates(v) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NeighborCounts {
    pub n_c: usize,
    pub n_d: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Verdict {
    #[serde(rename = "SNE")]
    StrictNash,
    #[serde(rename = "NE")]
    NashOnly,
    #[serde(rename = "not-NE")]
    NotNash,
}

impl Verdict {
    pub fn is_nash(self) -> bool {
        self != Verdict::NotNash
    }

    pub fn is_strict(self) -> bool {
        self == Verdict::StrictNash
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::StrictNash => "SNE",
            Verdict::NashOnly => "NE",
            Verdict::NotNash => "not-NE",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The neighbor-count inequality that governs a vertex, chosen by its game
/// class and its own strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    /// Coordination vertex that cooperates: `N_D <= R N_C`.
    #[serde(rename = "coordination-cooperate")]
    CoordinationCooperate,
    /// Coordination vertex that defects: `N_C <= N_D / R`.
    #[serde(rename = "coordination-defect")]
    CoordinationDefect,
    /// Anti-coordination vertex that cooperates: `N_C <= N_D / R`.
    #[serde(rename = "anti-coordination-cooperate")]
    AntiCoordinationCooperate,
    /// Anti-coordination vertex that defects: `N_D <= R N_C`.
    #[serde(rename = "anti-coordination-defect")]
    AntiCoordinationDefect,
    /// Degenerate or mixed-sign vertex; only the sign of `λ_v` applies.
    #[serde(rename = "lambda-sign")]
    LambdaSign,
}

impl Condition {
    pub fn for_vertex(class: GameClass, cooperates: bool) -> Self {
        match (class, cooperates) {
            (GameClass::Coordination, true) => Condition::CoordinationCooperate,
            (GameClass::Coordination, false) => Condition::CoordinationDefect,
            (GameClass::AntiCoordination, true) => Condition::AntiCoordinationCooperate,
            (GameClass::AntiCoordination, false) => Condition::AntiCoordinationDefect,
            _ => Condition::LambdaSign,
        }
    }

    pub fn inequality(self) -> &'static str {
        match self {
            Condition::CoordinationCooperate | Condition::AntiCoordinationDefect => "N_D <= R*N_C",
            Condition::CoordinationDefect | Condition::AntiCoordinationCooperate => "N_C <= N_D/R",
            Condition::LambdaSign => "lambda <= 0",
        }
    }
}

/// Whether a vertex's condition holds strictly, with equality, or not at all.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Strict,
    Tight,
    Violated,
}

impl Status {
    pub fn from_lambda(lambda: f64) -> Self {
        if lambda < -EPS {
            Status::Strict
        } else if lambda <= EPS {
            Status::Tight
        } else {
            Status::Violated
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexReport {
    /// 1-based vertex label.
    pub vertex: usize,
    pub lambda: f64,
    #[serde(flatten)]
    pub counts: NeighborCounts,
    pub condition: Condition,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProfileClassification {
    pub verdict: Verdict,
    pub vertices: Vec<VertexReport>,
}

impl ProfileClassification {
    fn from_reports(vertices: Vec<VertexReport>) -> Self {
        let verdict = verdict_from_statuses(vertices.iter().map(|r| r.status));
        ProfileClassification { verdict, vertices }
    }

    /// Vertices whose condition fails.
    pub fn violations(&self) -> impl Iterator<Item = &VertexReport> {
        self.vertices.iter().filter(|r| r.status == Status::Violated)
    }
}

pub(crate) fn verdict_from_statuses(statuses: impl IntoIterator<Item = Status>) -> Verdict {
    let mut verdict = Verdict::StrictNash;
    for s in statuses {
        match s {
            Status::Violated => return Verdict::NotNash,
            Status::Tight => verdict = Verdict::NashOnly,
            Status::Strict => {}
        }
    }
    verdict
}

/// Verdict from the signs of the diagonal Jacobian entries at a pure profile.
pub fn verdict_from_lambdas(lambdas: impl IntoIterator<Item = f64>) -> Verdict {
    verdict_from_statuses(lambdas.into_iter().map(Status::from_lambda))
}

/// `λ_v` from the vertex's own strategy and its neighbor counts.
#[inline]
pub(crate) fn pure_lambda(cooperates: bool, sigma_c: f64, sigma_d: f64, n_c: f64, n_d: f64) -> f64 {
    let k = sigma_c * n_c - sigma_d * n_d;
    if cooperates {
        -k
    } else {
        k
    }
}

pub fn neighbor_counts(inst: &EgnInstance, v: usize, p: PureProfile) -> NeighborCounts {
    let neighbors = inst.graph().neighbors(v);
    let n_c = neighbors.iter().filter(|&&w| p.cooperates(w)).count();
    NeighborCounts {
        n_c,
        n_d: neighbors.len() - n_c,
    }
}

pub fn lambda_v(inst: &EgnInstance, v: usize, p: PureProfile) -> f64 {
    let NeighborCounts { n_c, n_d } = neighbor_counts(inst, v, p);
    let (sc, sd) = inst.sigma(v);
    pure_lambda(p.cooperates(v), sc, sd, n_c as f64, n_d as f64)
}

/// Per-vertex verdict with the governing condition and neighbor counts.
pub fn classify_pure(inst: &EgnInstance, p: PureProfile) -> Result<ProfileClassification> {
    p.check_players(inst)?;
    let reports = (0..inst.n())
        .map(|v| {
            let lambda = lambda_v(inst, v, p);
            VertexReport {
                vertex: v + 1,
                lambda,
                counts: neighbor_counts(inst, v, p),
                condition: Condition::for_vertex(inst.class(v), p.cooperates(v)),
                status: Status::from_lambda(lambda),
            }
        })
        .collect();
    Ok(ProfileClassification::from_reports(reports))
}

/// Classification straight from the Nash definitions: each vertex compares
/// its payoff against deviating to the other pure strategy. The payoff is
/// affine in the vertex's own strategy, so this also settles every mixed
/// deviation, and the reported `lambda` is the deviation gain.
pub fn best_response_oracle(inst: &EgnInstance, p: PureProfile) -> Result<ProfileClassification> {
    p.check_players(inst)?;
    let x = p.to_vec();
    let reports = (0..inst.n())
        .map(|v| {
            let current = inst.unilateral_payoff(v, x[v], &x);
            let deviation = inst.unilateral_payoff(v, 1.0 - x[v], &x);
            let gain = deviation - current;
            VertexReport {
                vertex: v + 1,
                lambda: gain,
                counts: neighbor_counts(inst, v, p),
                condition: Condition::for_vertex(inst.class(v), p.cooperates(v)),
                status: Status::from_lambda(gain),
            }
        })
        .collect();
    Ok(ProfileClassification::from_reports(reports))
}

/// Jacobian of the replicator flow, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobianMatrix {
    n: usize,
    entries: Vec<f64>,
    k: Vec<f64>,
}

impl JacobianMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, v: usize, w: usize) -> f64 {
        self.entries[v * self.n + w]
    }

    pub fn k(&self) -> &[f64] {
        &self.k
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|v| self.get(v, v)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|v| (0..self.n).all(|w| v == w || self.get(v, w) == 0.0))
    }

    /// Verdict from the diagonal signs. Meaningful at pure states, where the
    /// diagonal holds the eigenvalues.
    pub fn diagonal_verdict(&self) -> Verdict {
        verdict_from_lambdas(self.diagonal())
    }
}

/// `J_{v,v} = (1 - 2x_v) k_v(x)` and `J_{v,w} = x_v (1 - x_v)(σ_{v,C} + σ_{v,D}) a_{v,w}`,
/// with `k_v(x) = σ_{v,C} Σ_w a_{v,w} x_w - σ_{v,D} Σ_w a_{v,w} (1 - x_w)`.
pub fn jacobian_at(inst: &EgnInstance, x: &StateVector) -> Result<JacobianMatrix> {
    let n = inst.n();
    if x.len() != n {
        return Err(Error::InvalidArgument(format!(
            "state has {} components but the instance has {n} vertices",
            x.len()
        )));
    }
    let x = x.as_slice();
    let g = inst.graph();
    let mut entries = vec![0.0; n * n];
    let mut k = vec![0.0; n];
    for v in 0..n {
        let (sc, sd) = inst.sigma(v);
        let cooperating: f64 = g.neighbors(v).iter().map(|&w| x[w]).sum();
        let defecting: f64 = g.neighbors(v).iter().map(|&w| 1.0 - x[w]).sum();
        k[v] = sc * cooperating - sd * defecting;
        entries[v * n + v] = (1.0 - 2.0 * x[v]) * k[v];
        let off = x[v] * (1.0 - x[v]) * (sc + sd);
        for &w in g.neighbors(v) {
            entries[v * n + w] = off;
        }
    }
    Ok(JacobianMatrix { n, entries, k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::PayoffMatrix;
    use crate::graph::Graph;

    const B_CS: PayoffMatrix = PayoffMatrix::new(2.1, 0.0, 0.0, 1.0);
    const ANTI: PayoffMatrix = PayoffMatrix::new(0.0, 1.0, 1.0, 0.0);

    fn p3(b: PayoffMatrix) -> EgnInstance {
        EgnInstance::uniform(Graph::path(3).unwrap(), b)
    }

    fn profile(s: &str) -> PureProfile {
        PureProfile::from_bitstring(s).unwrap()
    }

    #[test]
    fn profile_encoding() {
        let p = profile("110");
        assert_eq!(p.index(), 0b011);
        assert_eq!(p.to_string(), "110");
        assert!(p.cooperates(0) && p.cooperates(1) && !p.cooperates(2));
        assert_eq!(PureProfile::full_cooperation(3), profile("111"));
        assert_eq!(PureProfile::full_defection(3).index(), 0);
        assert_eq!(PureProfile::from_strategies(&[true, true, false]).unwrap(), p);
        assert!(PureProfile::from_bitstring("10a").is_err());
        assert!(PureProfile::from_bitstring("").is_err());
        assert!(PureProfile::from_index(3, 8).is_err());
    }

    #[test]
    fn counts() {
        let inst = p3(B_CS);
        let fc = PureProfile::full_cooperation(3);
        for v in 0..3 {
            let c = neighbor_counts(&inst, v, fc);
            assert_eq!((c.n_c, c.n_d), (inst.graph().degree(v), 0));
        }
        assert_eq!(
            neighbor_counts(&inst, 1, profile("110")),
            NeighborCounts { n_c: 1, n_d: 1 }
        );
    }

    #[test]
    fn caterpillar_hub_counts() {
        let g = Graph::caterpillar(8, &[0, 1, 0, 5, 0, 0, 4, 0]).unwrap();
        let inst = EgnInstance::uniform(g, B_CS);
        // vertex 4 cooperates with leaves 10-14, stalk neighbors 3 and 5 defect
        let mut bits = vec![false; 18];
        bits[3] = true;
        bits[9..14].fill(true);
        let p = PureProfile::from_strategies(&bits).unwrap();
        assert_eq!(neighbor_counts(&inst, 3, p), NeighborCounts { n_c: 5, n_d: 2 });
    }

    #[test]
    fn lambda_values() {
        let inst = EgnInstance::uniform(Graph::star(5).unwrap(), B_CS);
        let fc = PureProfile::full_cooperation(5);
        let fd = PureProfile::full_defection(5);
        for v in 0..5 {
            let d = inst.graph().degree(v) as f64;
            assert!((lambda_v(&inst, v, fc) + 2.1 * d).abs() < 1e-12);
            assert!((lambda_v(&inst, v, fd) + d).abs() < 1e-12);
        }
        assert!((lambda_v(&p3(B_CS), 2, profile("110")) - 2.1).abs() < 1e-12);
    }

    #[test]
    fn classify_examples() {
        let c = classify_pure(&p3(B_CS), profile("110")).unwrap();
        assert_eq!(c.verdict, Verdict::NotNash);
        let bad: Vec<_> = c.violations().collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].vertex, 3);
        assert_eq!(bad[0].condition, Condition::CoordinationDefect);

        let c = classify_pure(&p3(ANTI), profile("010")).unwrap();
        assert_eq!(c.verdict, Verdict::StrictNash);
        assert!(classify_pure(&p3(ANTI), profile("0101")).is_err());
    }

    #[test]
    fn oracle_examples() {
        let star = EgnInstance::uniform(Graph::star(5).unwrap(), B_CS);
        let fc = PureProfile::full_cooperation(5);
        assert_eq!(best_response_oracle(&star, fc).unwrap().verdict, Verdict::StrictNash);
        let lone = profile("00100");
        assert_eq!(best_response_oracle(&star, lone).unwrap().verdict, Verdict::NotNash);

        // σ_C = σ_D = 0: every payoff ties, every profile is a weak NE
        let flat = EgnInstance::uniform(Graph::path(3).unwrap(), PayoffMatrix::new(1.0, 1.0, 1.0, 1.0));
        for idx in 0..8 {
            let p = PureProfile::from_index(3, idx).unwrap();
            assert_eq!(best_response_oracle(&flat, p).unwrap().verdict, Verdict::NashOnly);
            assert_eq!(classify_pure(&flat, p).unwrap().verdict, Verdict::NashOnly);
        }
    }

    #[test]
    fn jacobian_structure() {
        let inst = p3(B_CS);
        let p = profile("110");
        let j = jacobian_at(&inst, &p.to_state()).unwrap();
        assert!(j.is_diagonal());
        for v in 0..3 {
            assert_eq!(j.get(v, v), lambda_v(&inst, v, p));
        }
        let half = StateVector::new(vec![0.5, 0.5, 0.2]).unwrap();
        let j = jacobian_at(&inst, &half).unwrap();
        assert!((j.get(0, 1) - 0.25 * 3.1).abs() < 1e-12);
        assert!((j.get(1, 2) - 0.25 * 3.1).abs() < 1e-12);
        assert_eq!(j.get(0, 2), 0.0);
        assert!((j.get(2, 1) - 0.16 * 3.1).abs() < 1e-12);
        assert_eq!(j.get(1, 1), 0.0);
    }
}
