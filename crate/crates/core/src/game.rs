//! Two-strategy payoff matrices and the networked payoff / growth functions.
//!
//! Strategy 1 is cooperate (C), strategy 0 is defect (D). A mixed strategy
//! `x_v` is the frequency with which vertex `v` cooperates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Values within this distance of zero are treated as zero by every sign test.
pub const EPS: f64 = 1e-9;

/// `[[b_CC, b_CD], [b_DC, b_DD]]`: row is the player's own strategy, column
/// the opponent's.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[[f64; 2]; 2]", into = "[[f64; 2]; 2]")]
pub struct PayoffMatrix {
    pub cc: f64,
    pub cd: f64,
    pub dc: f64,
    pub dd: f64,
}

impl From<[[f64; 2]; 2]> for PayoffMatrix {
    fn from(m: [[f64; 2]; 2]) -> Self {
        PayoffMatrix::new(m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl From<PayoffMatrix> for [[f64; 2]; 2] {
    fn from(b: PayoffMatrix) -> Self {
        [[b.cc, b.cd], [b.dc, b.dd]]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GameClass {
    /// `σ_C > 0` and `σ_D > 0`: matching the neighbor pays.
    Coordination,
    /// `σ_C < 0` and `σ_D < 0`: mismatching pays.
    AntiCoordination,
    /// `σ_C = 0` or `σ_D = 0`.
    Degenerate,
    /// Non-zero σ of opposite signs.
    MixedSign,
}

impl fmt::Display for GameClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GameClass::Coordination => "coordination",
            GameClass::AntiCoordination => "anti-coordination",
            GameClass::Degenerate => "degenerate",
            GameClass::MixedSign => "mixed-sign",
        })
    }
}

/// `R = σ_C / σ_D`, undefined when `σ_D` is zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Ratio {
    Finite(f64),
    Undefined,
}

impl Ratio {
    pub fn value(self) -> Option<f64> {
        match self {
            Ratio::Finite(r) => Some(r),
            Ratio::Undefined => None,
        }
    }
}

impl PayoffMatrix {
    pub const fn new(cc: f64, cd: f64, dc: f64, dd: f64) -> Self {
        PayoffMatrix { cc, cd, dc, dd }
    }

    /// Canonical coordination matrix with ratio `r`: `[[r, 0], [0, 1]]`.
    pub const fn coordination(r: f64) -> Self {
        PayoffMatrix::new(r, 0.0, 0.0, 1.0)
    }

    /// Canonical anti-coordination matrix with ratio `r`: `[[-r, 0], [0, -1]]`.
    pub const fn anti_coordination(r: f64) -> Self {
        PayoffMatrix::new(-r, 0.0, 0.0, -1.0)
    }

    /// `(σ_C, σ_D) = (b_CC - b_DC, b_DD - b_CD)`.
    pub fn sigma(&self) -> (f64, f64) {
        (self.cc - self.dc, self.dd - self.cd)
    }

    pub fn ratio(&self) -> Ratio {
        let (sc, sd) = self.sigma();
        if sd.abs() <= EPS {
            Ratio::Undefined
        } else {
            Ratio::Finite(sc / sd)
        }
    }

    pub fn class(&self) -> GameClass {
        classify_sigma(self.sigma())
    }

    /// `[x_v, 1 - x_v] B [x_w, 1 - x_w]^T`.
    pub fn pairwise_payoff(&self, x_v: f64, x_w: f64) -> f64 {
        let (sc, sd) = self.sigma();
        (sc + sd) * x_v * x_w - sd * x_v + self.dc * x_w + self.dd * (1.0 - x_w)
    }
}

pub(crate) fn sign(x: f64) -> i8 {
    if x > EPS {
        1
    } else if x < -EPS {
        -1
    } else {
        0
    }
}

pub(crate) fn classify_sigma((sc, sd): (f64, f64)) -> GameClass {
    match (sign(sc), sign(sd)) {
        (0, _) | (_, 0) => GameClass::Degenerate,
        (1, 1) => GameClass::Coordination,
        (-1, -1) => GameClass::AntiCoordination,
        _ => GameClass::MixedSign,
    }
}

/// A population state: `x_v` in `[0, 1]` for every vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector(Vec<f64>);

impl StateVector {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if let Some((v, val)) = x.iter().enumerate().find(|(_, &xv)| !(0.0..=1.0).contains(&xv)) {
            return Err(Error::InvalidArgument(format!(
                "state component {} = {val} lies outside [0, 1]",
                v + 1
            )));
        }
        Ok(StateVector(x))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// A graph together with one payoff matrix per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct EgnInstance {
    graph: Graph,
    payoffs: Vec<PayoffMatrix>,
}

impl EgnInstance {
    pub fn new(graph: Graph, payoffs: Vec<PayoffMatrix>) -> Result<Self> {
        if payoffs.len() != graph.n() {
            return Err(Error::Instance(format!(
                "{} payoff matrices for {} vertices",
                payoffs.len(),
                graph.n()
            )));
        }
        if let Some(v) = payoffs
            .iter()
            .position(|b| ![b.cc, b.cd, b.dc, b.dd].iter().all(|x| x.is_finite()))
        {
            return Err(Error::Instance(format!("vertex {} has a non-finite payoff", v + 1)));
        }
        Ok(EgnInstance { graph, payoffs })
    }

    /// Every vertex plays the same matrix.
    pub fn uniform(graph: Graph, payoff: PayoffMatrix) -> Self {
        let payoffs = vec![payoff; graph.n()];
        EgnInstance { graph, payoffs }
    }

    /// A default matrix with per-vertex overrides keyed by 1-based vertex.
    pub fn with_overrides(
        graph: Graph,
        default: PayoffMatrix,
        overrides: impl IntoIterator<Item = (usize, PayoffMatrix)>,
    ) -> Result<Self> {
        let mut payoffs = vec![default; graph.n()];
        for (v, b) in overrides {
            if v == 0 || v > graph.n() {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: graph.n(),
                });
            }
            payoffs[v - 1] = b;
        }
        Self::new(graph, payoffs)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn payoff(&self, v: usize) -> &PayoffMatrix {
        &self.payoffs[v]
    }

    pub fn payoffs(&self) -> &[PayoffMatrix] {
        &self.payoffs
    }

    pub fn sigma(&self, v: usize) -> (f64, f64) {
        self.payoffs[v].sigma()
    }

    pub fn class(&self, v: usize) -> GameClass {
        self.payoffs[v].class()
    }

    /// The shared matrix when all vertices play the same one.
    pub fn common_payoff(&self) -> Option<PayoffMatrix> {
        let first = *self.payoffs.first()?;
        self.payoffs.iter().all(|b| *b == first).then_some(first)
    }

    /// `φ_v(x) = Σ_w a_{v,w} φ(x_v, x_w)`.
    pub fn network_payoff(&self, v: usize, x: &[f64]) -> f64 {
        let b = &self.payoffs[v];
        self.graph
            .neighbors(v)
            .iter()
            .map(|&w| b.pairwise_payoff(x[v], x[w]))
            .sum()
    }

    /// `π_v(y, x_{-v})`: the payoff of `v` when it alone switches to `y`.
    pub fn unilateral_payoff(&self, v: usize, y: f64, x: &[f64]) -> f64 {
        let b = &self.payoffs[v];
        self.graph
            .neighbors(v)
            .iter()
            .map(|&w| b.pairwise_payoff(y, x[w]))
            .sum()
    }

    /// `f_v(x) = (σ_C + σ_D) Σ_w a_{v,w} x_w - σ_D d_v`, the derivative of
    /// `φ_v` in `x_v`.
    pub fn growth(&self, v: usize, x: &[f64]) -> f64 {
        let (sc, sd) = self.sigma(v);
        let cooperating: f64 = self.graph.neighbors(v).iter().map(|&w| x[w]).sum();
        (sc + sd) * cooperating - sd * self.graph.degree(v) as f64
    }
}
