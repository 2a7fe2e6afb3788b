//! `egn` command-line front end.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use egn::dynamics::{basin_probe, integrate, perturb_coordinate, perturb_inward, TrajectoryConfig};
use egn::equilibria::{classify_pure, enumerate_classified, EnumerateOptions, Filter, PureProfile, Verdict};
use egn::graph::enumerate_independent_dominating_sets;
use egn::io::{load_graph, load_instance};
use egn::report::{classification_json, classification_text, profile_dot, summary_csv};
use egn::sweep::{breakpoints, render_csv, render_text, sweep_sne_counts, BreakpointMode, SweepClass};
use egn::{EgnInstance, Graph, StateVector};

const PROFILE_HELP: &str = "Pure profile as a 0/1 string, read left to right as players 1..N (1 = cooperate)";

#[derive(Parser)]
#[command(
    name = "egn",
    version,
    about = "Pure Nash equilibria of replicator dynamics on networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one pure profile and report every vertex condition.
    Classify {
        #[command(flatten)]
        input: GameInput,
        #[arg(long, help = PROFILE_HELP)]
        profile: String,
        #[arg(long, value_enum, default_value_t = ClassifyFormat::Text)]
        format: ClassifyFormat,
        #[command(flatten)]
        out: Output,
    },
    /// List pure profiles matching a filter.
    Enumerate {
        #[command(flatten)]
        input: GameInput,
        #[arg(long, value_enum, default_value_t = FilterArg::Sne)]
        filter: FilterArg,
        /// Skip profiles ruled out by the topological rules (same output, fewer checks).
        #[arg(long)]
        prune: bool,
        #[arg(long, value_enum, default_value_t = ListFormat::Csv)]
        format: ListFormat,
        #[command(flatten)]
        jobs: Jobs,
        #[command(flatten)]
        out: Output,
    },
    /// Count SNE/NE on every interval and breakpoint of the payoff ratio R.
    Sweep {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
        format: SweepFormat,
        #[command(flatten)]
        jobs: Jobs,
        #[command(flatten)]
        out: Output,
    },
    /// List the independent dominating sets of the graph.
    Ids {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        out: Output,
    },
    /// Integrate the replicator flow and print the trajectory as CSV.
    Simulate {
        #[command(flatten)]
        input: GameInput,
        /// Initial state, comma-separated values in [0, 1].
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["profile", "basin"])]
        x0: Option<Vec<f64>>,
        #[arg(long, help = PROFILE_HELP, conflicts_with = "basin")]
        profile: Option<String>,
        /// Distance moved into the open cube from --profile.
        #[arg(long, default_value_t = 1e-3, requires = "profile")]
        perturb: f64,
        /// Perturb only this vertex (1-based) instead of every coordinate.
        #[arg(long, requires = "profile")]
        vertex: Option<usize>,
        /// Tally limits of random interior starts instead of printing one trajectory.
        #[arg(long)]
        basin: bool,
        #[arg(long, default_value_t = 100, requires = "basin")]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.01)]
        dt: f64,
        #[arg(long, default_value_t = 200.0)]
        t_end: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Record every k-th step.
        #[arg(long, default_value_t = 100)]
        stride: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Write a DOT graph with cooperators yellow and defectors red.
    ExportDot {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, help = PROFILE_HELP)]
        profile: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Instance JSON (graph plus payoff matrices).
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Edge list: `n <count>` header then one `u v` pair per line.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Args)]
struct GraphInput {
    #[command(flatten)]
    source: Source,
}

#[derive(Args)]
struct GameInput {
    #[command(flatten)]
    source: Source,
    /// Game class applied to every vertex of a bare --graph.
    #[arg(long, value_enum, required_unless_present = "instance", conflicts_with = "instance")]
    class: Option<ClassArg>,
    /// Payoff ratio R applied to every vertex of a bare --graph.
    #[arg(long, required_unless_present = "instance", conflicts_with = "instance")]
    ratio: Option<f64>,
}

#[derive(Args)]
struct Jobs {
    /// Worker threads for enumeration.
    #[arg(long, env = "EGN_JOBS", default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassifyFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ListFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepFormat {
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    Sne,
    Ne,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Coordination,
    AntiCoordination,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    DegreeRatios,
}

impl From<ClassArg> for SweepClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Coordination => SweepClass::Coordination,
            ClassArg::AntiCoordination => SweepClass::AntiCoordination,
        }
    }
}

/// Failures after argument parsing: exit 1 for usage, 2 for data.
enum Failure {
    Usage(String),
    Data(String),
}

impl From<egn::Error> for Failure {
    fn from(e: egn::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

type Run = std::result::Result<(), Failure>;

impl Source {
    fn load_graph(&self) -> Result<Graph, Failure> {
        match (&self.instance, &self.graph) {
            (Some(path), _) => Ok(load_instance(path).map_err(|e| file_error(path, e))?.graph().clone()),
            (_, Some(path)) => load_graph(path).map_err(|e| file_error(path, e)),
            _ => unreachable!("clap requires one source"),
        }
    }
}

impl GameInput {
    fn load(&self) -> Result<EgnInstance, Failure> {
        if let Some(path) = &self.source.instance {
            return load_instance(path).map_err(|e| file_error(path, e));
        }
        let g = self.source.load_graph()?;
        match (self.class, self.ratio) {
            (Some(_), Some(r)) if !(r > 0.0 && r.is_finite()) => {
                Err(Failure::Data(format!("--ratio must be positive and finite, got {r}")))
            }
            (Some(class), Some(r)) => Ok(EgnInstance::uniform(g, SweepClass::from(class).matrix(r))),
            _ => Err(Failure::Usage(
                "--graph needs --class and --ratio to define the game".into(),
            )),
        }
    }
}

impl Output {
    fn emit(&self, text: &str) -> Run {
        match &self.output {
            Some(path) => std::fs::write(path, text).map_err(|e| Failure::Data(format!("{}: {e}", path.display()))),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
                stdout.flush()?;
                Ok(())
            }
        }
    }
}

fn file_error(path: &std::path::Path, e: egn::Error) -> Failure {
    Failure::Data(format!("{}: {e}", path.display()))
}

fn profile_for(n: usize, bits: &str) -> Result<PureProfile, Failure> {
    let p = PureProfile::from_bitstring(bits)?;
    if p.n() != n {
        return Err(Failure::Data(format!(
            "profile {bits:?} has {} players but the graph has {n}",
            p.n()
        )));
    }
    Ok(p)
}

fn run(cli: Cli) -> Run {
    match cli.command {
        Command::Classify {
            input,
            profile,
            format,
            out,
        } => {
            let inst = input.load()?;
            let p = profile_for(inst.n(), &profile)?;
            let c = classify_pure(&inst, p)?;
            let text = match format {
                ClassifyFormat::Text => classification_text(&inst, p, &c),
                ClassifyFormat::Json => format!("{}\n", classification_json(p, &c)),
            };
            out.emit(&text)
        }
        Command::Enumerate {
            input,
            filter,
            prune,
            format,
            jobs,
            out,
        } => {
            let inst = input.load()?;
            let filter = match filter {
                FilterArg::Sne => Filter::Sne,
                FilterArg::Ne => Filter::Ne,
                FilterArg::All => Filter::All,
            };
            let rows = enumerate_classified(&inst, EnumerateOptions::new(filter).prune(prune).jobs(jobs.jobs))?;
            let sne = rows.iter().filter(|(_, c)| c.verdict == Verdict::StrictNash).count();
            let ne = rows.iter().filter(|(_, c)| c.verdict.is_nash()).count();
            eprintln!("{} profiles listed: {sne} SNE, {ne} NE", rows.len());
            let text = match format {
                ListFormat::Csv => summary_csv(&rows),
                ListFormat::Json => {
                    let list: Vec<_> = rows.iter().map(|(p, c)| classification_json(*p, c)).collect();
                    format!("{}\n", serde_json::Value::Array(list))
                }
            };
            out.emit(&text)
        }
        Command::Sweep {
            graph,
            class,
            mode,
            format,
            jobs,
            out,
        } => {
            let g = graph.source.load_graph()?;
            let mode = match mode {
                ModeArg::Exact => BreakpointMode::ExactThresholds,
                ModeArg::DegreeRatios => BreakpointMode::DegreeRatios,
            };
            let bp = breakpoints(&g, mode);
            let report = sweep_sne_counts(&g, class.into(), &bp, jobs.jobs)?;
            let text = match format {
                SweepFormat::Csv => render_csv(&report),
                SweepFormat::Text => render_text(&report),
            };
            out.emit(&text)
        }
        Command::Ids { graph, out } => {
            let g = graph.source.load_graph()?;
            let sets = enumerate_independent_dominating_sets(&g)?;
            let mut text = String::new();
            for s in &sets {
                text.push_str(&s.to_string());
                text.push('\n');
            }
            eprintln!("{} independent dominating sets", sets.len());
            out.emit(&text)
        }
        Command::Simulate {
            input,
            x0,
            profile,
            perturb,
            vertex,
            basin,
            samples,
            seed,
            dt,
            t_end,
            tol,
            stride,
            out,
        } => {
            let inst = input.load()?;
            let cfg = TrajectoryConfig {
                dt,
                t_end,
                convergence_tol: tol,
                record_stride: stride,
            };
            if basin {
                let report = basin_probe(&inst, samples, seed, &cfg)?;
                return out.emit(&format!("{}\n", report.to_json()));
            }
            let start = match (x0, profile) {
                (Some(x), _) => {
                    if x.len() != inst.n() {
                        return Err(Failure::Data(format!(
                            "--x0 has {} values but the graph has {} vertices",
                            x.len(),
                            inst.n()
                        )));
                    }
                    StateVector::new(x)?
                }
                (None, Some(bits)) => {
                    let p = profile_for(inst.n(), &bits)?;
                    if !(0.0..=1.0).contains(&perturb) {
                        return Err(Failure::Data(format!("--perturb must lie in [0, 1], got {perturb}")));
                    }
                    match vertex {
                        Some(v) if v == 0 || v > inst.n() => {
                            return Err(Failure::Data(format!("--vertex {v} is out of range 1..={}", inst.n())))
                        }
                        Some(v) => perturb_coordinate(p, v - 1, perturb),
                        None => perturb_inward(p, perturb),
                    }
                }
                (None, None) => return Err(Failure::Usage("simulate needs --x0, --profile or --basin".into())),
            };
            let traj = integrate(&inst, &start, &cfg)?;
            match traj.converged_to {
                Some(p) => eprintln!("converged to {p}"),
                None => eprintln!("did not converge by t = {t_end}"),
            }
            out.emit(&traj.to_csv())
        }
        Command::ExportDot { graph, profile, out } => {
            let g = graph.source.load_graph()?;
            let p = profile_for(g.n(), &profile)?;
            out.emit(&profile_dot(&g, p))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("egn: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("egn: {}", msg.replace('\n', " "));
            ExitCode::from(2)
        }
    }
}
