//! Equilibrium counts as a function of the common payoff ratio `R`.
//!
//! With every vertex on the same matrix, a vertex condition flips only where
//! `R * N_C = N_D` for some reachable neighbor split, i.e. at
//! `R = k / (d_v - k)` with `0 < k < d_v`. Between consecutive such values the
//! classification of every profile is constant, so one sample per open
//! interval plus one per breakpoint covers all of `R > 0`.
//!
//! The coarser degree-ratio set `{d_v / d_u}` is also offered. It is not a
//! superset of the thresholds in general (a degree-5 vertex flips at 1/4 and
//! 4 even when no degree ratio equals them), so counts between its
//! breakpoints may not be constant.

use std::fmt::Write as _;

use num_rational::Rational64;

use crate::equilibria::{count_equilibria, EquilibriumCounts};
use crate::error::{Error, Result};
use crate::game::{EgnInstance, PayoffMatrix};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BreakpointMode {
    /// `{0} ∪ {d_v / d_u}`.
    DegreeRatios,
    /// `{0} ∪ {k / (d_v - k) : 0 < k < d_v}`.
    ExactThresholds,
}

/// Strictly ascending non-negative rationals starting at 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BreakpointSet(Vec<Rational64>);

impl BreakpointSet {
    pub fn new(values: impl IntoIterator<Item = Rational64>) -> Result<Self> {
        let mut values: Vec<Rational64> = values.into_iter().collect();
        if let Some(neg) = values.iter().find(|r| **r < Rational64::from_integer(0)) {
            return Err(Error::InvalidArgument(format!("negative breakpoint {neg}")));
        }
        values.push(Rational64::from_integer(0));
        values.sort_unstable();
        values.dedup();
        Ok(BreakpointSet(values))
    }

    pub fn values(&self) -> &[Rational64] {
        &self.0
    }

    /// Breakpoints other than 0.
    pub fn positive(&self) -> &[Rational64] {
        &self.0[1..]
    }

    pub fn max(&self) -> Rational64 {
        *self.0.last().expect("contains 0")
    }
}

pub fn breakpoints(g: &Graph, mode: BreakpointMode) -> BreakpointSet {
    let mut degrees = g.degrees();
    degrees.sort_unstable();
    degrees.dedup();
    let values: Vec<Rational64> = match mode {
        BreakpointMode::DegreeRatios => degrees
            .iter()
            .flat_map(|&num| {
                degrees
                    .iter()
                    .filter(|&&den| den > 0)
                    .map(move |&den| Rational64::new(num as i64, den as i64))
            })
            .collect(),
        BreakpointMode::ExactThresholds => degrees
            .iter()
            .flat_map(|&d| (1..d).map(move |k| Rational64::new(k as i64, (d - k) as i64)))
            .collect(),
    };
    BreakpointSet::new(values).expect("non-negative by construction")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepClass {
    /// `[[R, 0], [0, 1]]` on every vertex.
    Coordination,
    /// `[[-R, 0], [0, -1]]` on every vertex.
    AntiCoordination,
}

impl SweepClass {
    pub fn matrix(self, r: f64) -> PayoffMatrix {
        match self {
            SweepClass::Coordination => PayoffMatrix::coordination(r),
            SweepClass::AntiCoordination => PayoffMatrix::anti_coordination(r),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    /// Open interval `(lo, hi)`; `hi = None` is unbounded.
    Interval {
        lo: Rational64,
        hi: Option<Rational64>,
    },
    Breakpoint(Rational64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub kind: RowKind,
    /// The exact `R` the counts were taken at.
    pub sample: Rational64,
    pub counts: EquilibriumCounts,
}

impl SweepRow {
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            RowKind::Interval { .. } => "interval",
            RowKind::Breakpoint(_) => "breakpoint",
        }
    }

    pub fn label(&self) -> String {
        match self.kind {
            RowKind::Interval { lo, hi: Some(hi) } => format!("({lo},{hi})"),
            RowKind::Interval { lo, hi: None } => format!("({lo},inf)"),
            RowKind::Breakpoint(r) => r.to_string(),
        }
    }

    pub fn sample_f64(&self) -> f64 {
        to_f64(self.sample)
    }
}

fn to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Rows in ascending `R`: `(0, α_1)`, `α_1`, `(α_1, α_2)`, ..., `α_l`, `(α_l, ∞)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub class: SweepClass,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn intervals(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| matches!(r.kind, RowKind::Interval { .. }))
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| matches!(r.kind, RowKind::Breakpoint(_)))
    }

    /// The row for the interval past the largest breakpoint.
    pub fn unbounded(&self) -> &SweepRow {
        self.rows.last().expect("always has the unbounded interval")
    }
}

/// Equilibrium counts of the common-`R` game on `g` at `R`.
pub fn counts_at(g: &Graph, class: SweepClass, r: f64, jobs: usize) -> Result<EquilibriumCounts> {
    let inst = EgnInstance::uniform(g.clone(), class.matrix(r));
    count_equilibria(&inst, jobs)
}

pub fn sweep_sne_counts(g: &Graph, class: SweepClass, bp: &BreakpointSet, jobs: usize) -> Result<SweepReport> {
    let two = Rational64::from_integer(2);
    let mut layout = Vec::new();
    let mut lo = Rational64::from_integer(0);
    for &alpha in bp.positive() {
        layout.push((RowKind::Interval { lo, hi: Some(alpha) }, (lo + alpha) / two));
        layout.push((RowKind::Breakpoint(alpha), alpha));
        lo = alpha;
    }
    layout.push((RowKind::Interval { lo, hi: None }, lo + 1));

    let rows = layout
        .into_iter()
        .map(|(kind, sample)| {
            Ok(SweepRow {
                kind,
                sample,
                counts: counts_at(g, class, to_f64(sample), jobs)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport { class, rows })
}

pub fn render_csv(report: &SweepReport) -> String {
    let mut out = String::from("kind,r_label,r_sample,sne_count,ne_count\n");
    for row in &report.rows {
        let _ = writeln!(
            out,
            "{},\"{}\",{},{},{}",
            row.kind_name(),
            row.label(),
            row.sample_f64(),
            row.counts.sne,
            row.counts.ne
        );
    }
    out
}

pub fn render_text(report: &SweepReport) -> String {
    let header = ["kind", "R", "sample", "SNE", "NE"];
    let body: Vec<[String; 5]> = report
        .rows
        .iter()
        .map(|row| {
            [
                row.kind_name().to_string(),
                row.label(),
                row.sample_f64().to_string(),
                row.counts.sne.to_string(),
                row.counts.ne.to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for cells in &body {
        for (w, cell) in widths.iter_mut().zip(cells) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: [&str; 5]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(widths)
            .enumerate()
            .map(|(i, (c, w))| if i < 3 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(header);
    for cells in &body {
        line([&cells[0], &cells[1], &cells[2], &cells[3], &cells[4]]);
    }
    out
}
