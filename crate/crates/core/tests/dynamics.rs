mod common;

use common::*;
use egn::dynamics::{basin_probe, integrate, perturb_inward, rhs, rk4_step, TrajectoryConfig};
use egn::{EgnInstance, Error, Graph, PayoffMatrix, StateVector};
use rand::Rng;

fn cfg(dt: f64, t_end: f64) -> TrajectoryConfig {
    TrajectoryConfig {
        dt,
        t_end,
        convergence_tol: 1e-6,
        record_stride: usize::MAX,
    }
}

fn linf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// A vertex whose only neighbor is pinned at 0 follows `ẋ = -x(1-x)`, solved by
/// `x(t) = x0 e^{-t} / (1 - x0 + x0 e^{-t})`.
#[test]
fn matches_logistic_closed_form() {
    // f_1 = (σ_C + σ_D) x_2 - σ_D = -1
    let inst = EgnInstance::uniform(Graph::path(2).unwrap(), PayoffMatrix::coordination(2.0));
    let x0 = 0.7;
    let traj = integrate(&inst, &StateVector::new(vec![x0, 0.0]).unwrap(), &cfg(0.01, 3.0)).unwrap();
    let e = (-3.0f64).exp();
    let exact = x0 * e / (1.0 - x0 + x0 * e);
    assert!(
        (traj.terminal[0] - exact).abs() < 1e-10,
        "{} vs {exact}",
        traj.terminal[0]
    );
    assert_eq!(traj.terminal[1], 0.0);
}

#[test]
fn rk4_error_shrinks_at_fourth_order() {
    let inst = EgnInstance::uniform(Graph::path(5).unwrap(), PayoffMatrix::new(1.0, -0.5, 0.3, 2.0));
    let x0 = StateVector::new(vec![0.2, 0.7, 0.4, 0.9, 0.5]).unwrap();
    let run = |dt: f64| integrate(&inst, &x0, &cfg(dt, 2.0)).unwrap().terminal;
    let reference = run(0.2 / 128.0);
    let e1 = linf(&run(0.2), &reference);
    let e2 = linf(&run(0.1), &reference);
    let e3 = linf(&run(0.05), &reference);
    for ratio in [e1 / e2, e2 / e3] {
        assert!((12.0..22.0).contains(&ratio), "ratio {ratio}");
    }
}

#[test]
fn rk4_step_agrees_with_integrate() {
    let inst = EgnInstance::uniform(Graph::star(4).unwrap(), PayoffMatrix::anti_coordination(0.7));
    let x0 = vec![0.1, 0.5, 0.6, 0.9];
    let one = rk4_step(&inst, &x0, 0.05);
    let traj = integrate(&inst, &StateVector::new(x0).unwrap(), &cfg(0.05, 0.05)).unwrap();
    assert_eq!(one, traj.terminal);
}

/// Every strict equilibrium of small random instances attracts nearby starts.
#[test]
fn strict_equilibria_attract() {
    let mut rng = rng(31);
    let mut checked = 0;
    for _ in 0..30 {
        let n = rng.random_range(2..=6);
        let p = rng.random_range(0.0..0.5);
        let g = random_connected_graph(&mut rng, n, p);
        let payoffs = (0..n)
            .map(|_| {
                if rng.random_bool(0.5) {
                    random_coordination(&mut rng)
                } else {
                    random_anti_coordination(&mut rng)
                }
            })
            .collect();
        let inst = EgnInstance::new(g, payoffs).unwrap();
        for idx in brute_sne(&inst) {
            let p = egn::PureProfile::from_index(n, idx).unwrap();
            let traj = integrate(&inst, &perturb_inward(p, 1e-3), &cfg(0.01, 200.0)).unwrap();
            assert_eq!(traj.converged_to, Some(p), "instance {inst:?}");
            checked += 1;
        }
    }
    assert!(checked > 20);
}

#[test]
fn pure_states_are_stationary() {
    let mut rng = rng(37);
    for _ in 0..30 {
        let n = rng.random_range(1..=8);
        let inst = random_mixed_instance(&mut rng, n);
        for p in profiles(n) {
            assert!(rhs(&inst, &p.to_vec()).iter().all(|&d| d == 0.0));
        }
    }
}

#[test]
fn oversized_step_is_reported() {
    let inst = EgnInstance::uniform(Graph::star(6).unwrap(), PayoffMatrix::coordination(50.0));
    let x0 = StateVector::new(vec![0.999; 6]).unwrap();
    let err = integrate(&inst, &x0, &cfg(1.0, 10.0)).unwrap_err();
    assert!(
        matches!(err, Error::ClampExceeded { .. } | Error::NonFinite { .. }),
        "{err}"
    );
}

#[test]
fn basin_probe_is_seeded() {
    let inst = EgnInstance::uniform(Graph::path(4).unwrap(), PayoffMatrix::coordination(1.5));
    let c = cfg(0.05, 100.0);
    let a = basin_probe(&inst, 30, 5, &c).unwrap();
    assert_eq!(a, basin_probe(&inst, 30, 5, &c).unwrap());
    assert_ne!(a, basin_probe(&inst, 30, 6, &c).unwrap());
    // with coordination every limit is a strict equilibrium
    let sne = brute_sne(&inst);
    for (p, _) in a.profiles() {
        assert!(sne.contains(&p.index()), "{p}");
    }
}
