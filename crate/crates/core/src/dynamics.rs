//! Fixed-step RK4 integration of `ẋ_v = x_v (1 - x_v) f_v(x)`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::equilibria::PureProfile;
use crate::error::{Error, Result};
use crate::game::{EgnInstance, StateVector};

/// Largest clamp back into `[0, 1]` tolerated after a single step.
pub const MAX_CLAMP_PER_STEP: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectoryConfig {
    pub dt: f64,
    pub t_end: f64,
    pub convergence_tol: f64,
    /// Record every `record_stride`-th step (the initial and final states are
    /// always recorded).
    pub record_stride: usize,
}

impl Default for TrajectoryConfig {
    fn default() -> Self {
        TrajectoryConfig {
            dt: 0.01,
            t_end: 200.0,
            convergence_tol: 1e-6,
            record_stride: 100,
        }
    }
}

impl TrajectoryConfig {
    fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidArgument(format!("dt must be positive, got {}", self.dt)));
        }
        if self.t_end.is_nan() || self.t_end < self.dt {
            return Err(Error::InvalidArgument(format!(
                "t_end ({}) must be at least dt ({})",
                self.t_end, self.dt
            )));
        }
        if self.convergence_tol.is_nan() || self.convergence_tol <= 0.0 {
            return Err(Error::InvalidArgument("convergence tolerance must be positive".into()));
        }
        if self.record_stride == 0 {
            return Err(Error::InvalidArgument("record stride must be at least 1".into()));
        }
        Ok(())
    }

    fn steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub terminal: Vec<f64>,
    /// The pure profile the run settled on, if it did.
    pub converged_to: Option<PureProfile>,
    /// Largest single clamp applied over the run.
    pub max_clamp: f64,
}

impl Trajectory {
    pub fn to_csv(&self) -> String {
        let n = self.terminal.len();
        let mut out = String::from("t");
        for v in 1..=n {
            out.push_str(&format!(",x_{v}"));
        }
        out.push('\n');
        for (t, x) in self.times.iter().zip(&self.states) {
            out.push_str(&format!("{t:?}"));
            for xv in x {
                out.push_str(&format!(",{xv:?}"));
            }
            out.push('\n');
        }
        out
    }
}

pub fn rhs(inst: &EgnInstance, x: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; x.len()];
    rhs_into(inst, x, &mut out);
    out
}

fn rhs_into(inst: &EgnInstance, x: &[f64], out: &mut [f64]) {
    for (v, slot) in out.iter_mut().enumerate() {
        // pure coordinates are fixed points of their own equation
        let logistic = x[v] * (1.0 - x[v]);
        *slot = if logistic == 0.0 {
            0.0
        } else {
            logistic * inst.growth(v, x)
        };
    }
}

struct Rk4Scratch {
    k: [Vec<f64>; 4],
    stage: Vec<f64>,
    active: Vec<usize>,
}

impl Rk4Scratch {
    fn new(n: usize) -> Self {
        Rk4Scratch {
            k: std::array::from_fn(|_| vec![0.0; n]),
            stage: vec![0.0; n],
            active: Vec::with_capacity(n),
        }
    }

    /// Coordinates at exactly 0 or 1 have zero derivative in every stage, so
    /// only the interior ones are evaluated and advanced.
    fn step(&mut self, inst: &EgnInstance, x: &mut [f64], dt: f64) {
        let Rk4Scratch { k, stage, active } = self;
        active.clear();
        active.extend((0..x.len()).filter(|&v| x[v] * (1.0 - x[v]) != 0.0));
        if active.is_empty() {
            return;
        }
        stage.copy_from_slice(x);
        let weights = [0.5, 0.5, 1.0];
        for s in 0..4 {
            let src: &[f64] = if s == 0 { x } else { stage };
            for &v in active.iter() {
                k[s][v] = src[v] * (1.0 - src[v]) * inst.growth(v, src);
            }
            if s < 3 {
                for &v in active.iter() {
                    stage[v] = x[v] + weights[s] * dt * k[s][v];
                }
            }
        }
        for &v in active.iter() {
            x[v] += dt / 6.0 * (k[0][v] + 2.0 * k[1][v] + 2.0 * k[2][v] + k[3][v]);
        }
    }
}

/// One classic RK4 step from `x`, without clamping.
pub fn rk4_step(inst: &EgnInstance, x: &[f64], dt: f64) -> Vec<f64> {
    let mut next = x.to_vec();
    Rk4Scratch::new(x.len()).step(inst, &mut next, dt);
    next
}

/// The nearest pure profile if `x` sits within `tol` of it and the flow there
/// is slower than `tol` in every coordinate.
pub fn converged_profile(inst: &EgnInstance, x: &[f64], tol: f64) -> Option<PureProfile> {
    let near = x.iter().all(|&xv| (xv - xv.round()).abs() < tol);
    let slow = rhs(inst, x).iter().all(|d| d.abs() < tol);
    if !(near && slow) {
        return None;
    }
    let bits: Vec<bool> = x.iter().map(|&xv| xv.round() == 1.0).collect();
    PureProfile::from_strategies(&bits).ok()
}

pub fn integrate(inst: &EgnInstance, x0: &StateVector, cfg: &TrajectoryConfig) -> Result<Trajectory> {
    cfg.validate()?;
    if x0.len() != inst.n() {
        return Err(Error::InvalidArgument(format!(
            "initial state has {} components but the instance has {} vertices",
            x0.len(),
            inst.n()
        )));
    }
    let steps = cfg.steps();
    let mut x = x0.as_slice().to_vec();
    let mut scratch = Rk4Scratch::new(x.len());
    let mut times = vec![0.0];
    let mut states = vec![x.clone()];
    let mut max_clamp: f64 = 0.0;

    for step in 1..=steps {
        scratch.step(inst, &mut x, cfg.dt);
        for xv in x.iter_mut() {
            if !xv.is_finite() {
                return Err(Error::NonFinite { step });
            }
            let clamped = xv.clamp(0.0, 1.0);
            let amount = (clamped - *xv).abs();
            if amount > MAX_CLAMP_PER_STEP {
                return Err(Error::ClampExceeded { step, amount });
            }
            max_clamp = max_clamp.max(amount);
            *xv = clamped;
        }
        if step % cfg.record_stride == 0 || step == steps {
            times.push(step as f64 * cfg.dt);
            states.push(x.clone());
        }
    }

    let converged_to = converged_profile(inst, &x, cfg.convergence_tol);
    Ok(Trajectory {
        times,
        states,
        terminal: x,
        converged_to,
        max_clamp,
    })
}

/// Moves every coordinate of `p` a distance `delta` into the open cube.
pub fn perturb_inward(p: PureProfile, delta: f64) -> StateVector {
    let x = (0..p.n())
        .map(|v| if p.cooperates(v) { 1.0 - delta } else { delta })
        .collect();
    StateVector::new(x).expect("delta within [0, 1]")
}

/// Moves only coordinate `v` of `p` a distance `delta` into the open cube.
pub fn perturb_coordinate(p: PureProfile, v: usize, delta: f64) -> StateVector {
    let mut x = p.to_vec();
    x[v] = if p.cooperates(v) { 1.0 - delta } else { delta };
    StateVector::new(x).expect("delta within [0, 1]")
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BasinReport {
    /// Converged runs per limit profile, keyed by profile index.
    pub counts: BTreeMap<u64, usize>,
    pub nonconverged: usize,
    n: usize,
}

impl BasinReport {
    pub fn profiles(&self) -> impl Iterator<Item = (PureProfile, usize)> + '_ {
        self.counts
            .iter()
            .map(|(&idx, &count)| (PureProfile::from_index_unchecked(self.n, idx), count))
    }

    /// `{"counts": {"<bitstring>": count, ...}, "nonconverged": k}`.
    pub fn to_json(&self) -> serde_json::Value {
        let counts: serde_json::Map<String, serde_json::Value> = self
            .profiles()
            .map(|(p, c)| (p.to_string(), serde_json::Value::from(c)))
            .collect();
        serde_json::json!({ "counts": counts, "nonconverged": self.nonconverged })
    }
}

/// Integrates from `samples` uniform interior starting points drawn from a
/// ChaCha8 stream seeded with `seed`, and tallies where they settle.
pub fn basin_probe(inst: &EgnInstance, samples: usize, seed: u64, cfg: &TrajectoryConfig) -> Result<BasinReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("basin probe needs at least one sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let quiet = TrajectoryConfig {
        record_stride: usize::MAX,
        ..*cfg
    };
    let mut report = BasinReport {
        n: inst.n(),
        ..Default::default()
    };
    for _ in 0..samples {
        let x0: Vec<f64> = (0..inst.n()).map(|_| rng.random_range(f64::EPSILON..1.0)).collect();
        let traj = integrate(inst, &StateVector::new(x0)?, &quiet)?;
        match traj.converged_to {
            Some(p) => *report.counts.entry(p.index()).or_insert(0) += 1,
            None => report.nonconverged += 1,
        }
    }
    Ok(report)
}
