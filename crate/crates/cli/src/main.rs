use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use serde::Serialize;
use serde_json::{json, Value};

use tqft_core::cyclotomic::CycNum;
use tqft_core::diagram::{builtin, builtin_names, parse_slice_notation, FramedLink, SliceDiagram};
use tqft_core::error::{DiagramError, InvariantError};
use tqft_core::evaluator::{ColoredDiagram, Evaluator};
use tqft_core::linalg::CycMatrix;
use tqft_core::selftest;
use tqft_core::skein::{SkeinEngine, Strategy};
use tqft_core::surgery::{transfer_matrix, whitehead_pipeline, SurgeryPresentation, DEFAULT_WHITEHEAD_FRAMING};

#[derive(Parser)]
#[command(name = "tqft", version, about = "Exact quantum sl2 invariants of framed links and 3-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    /// Builtin diagram name
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
    /// Diagram in slice notation
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Precision {
    #[arg(long, default_value_t = 4)]
    level: u32,
    /// Exact arithmetic (level 4 only; the default there)
    #[arg(long, conflicts_with = "approx")]
    exact: bool,
    /// Floating-point output (the default away from level 4)
    #[arg(long)]
    approx: bool,
}

#[derive(Args, Clone)]
struct Framing {
    /// Framing per component, e.g. `--framing -1,0`
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    framing: Option<Vec<i64>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    FirstBad,
    LastBadReversed,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a colored diagram
    Eval {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        precision: Precision,
        #[command(flatten)]
        framing: Framing,
        /// Colors per component (default 2 everywhere)
        #[arg(long, value_delimiter = ',')]
        colors: Option<Vec<u32>>,
        /// Print the full operator
        #[arg(long)]
        dump_operator: bool,
    },
    /// Skein invariant I and the Arf invariant
    Arf {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = StrategyArg::FirstBad)]
        strategy: StrategyArg,
    },
    /// Colored invariant through the cabling formula
    Colored {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        precision: Precision,
        #[command(flatten)]
        framing: Framing,
        #[arg(long, value_delimiter = ',')]
        colors: Option<Vec<u32>>,
        /// Include every cabling term
        #[arg(long)]
        trace: bool,
    },
    /// Surgery invariant of the manifold presented by the link
    Rt {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        precision: Precision,
        #[command(flatten)]
        framing: Framing,
    },
    /// Transfer matrix of a two-component link
    Transfer {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        precision: Precision,
        #[command(flatten)]
        framing: Framing,
    },
    /// Transfer matrix, determinant and limit dimension for the Whitehead cobordism
    Whitehead {
        #[command(flatten)]
        precision: Precision,
        #[command(flatten)]
        framing: Framing,
    },
    /// Run the seeded property suites
    Selftest {
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
    },
}

enum Failure {
    /// Unreadable or malformed input: exit 2.
    Input(String),
    /// Well-formed input outside the domain of the computation: exit 3.
    Domain(String),
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Diagram(d) => d.into(),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        match e {
            DiagramError::Parse { .. } | DiagramError::UnknownBuiltin(_) => Failure::Input(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Exact,
    Approx,
}

impl Precision {
    fn mode(&self) -> Result<Mode, Failure> {
        if self.level < 2 {
            return Err(InvariantError::BadLevel(self.level).into());
        }
        if self.exact && self.level != 4 {
            return Err(InvariantError::ApproximateOnly(self.level).into());
        }
        Ok(if self.approx || self.level != 4 { Mode::Approx } else { Mode::Exact })
    }
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Exact => "exact",
        Mode::Approx => "approx",
    }
}

struct Loaded {
    source: String,
    diagram: SliceDiagram,
}

impl Input {
    fn load(&self) -> Result<Loaded, Failure> {
        match (&self.builtin, &self.file) {
            (Some(name), _) => Ok(Loaded { source: format!("builtin:{name}"), diagram: builtin(name)?.into_diagram() }),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                let diagram = parse_slice_notation(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                Ok(Loaded { source: format!("file:{}", path.display()), diagram })
            }
            (None, None) => Err(Failure::Input(format!("give --builtin <{}> or --file <path>", builtin_names().join("|")))),
        }
    }

    fn load_or(&self, default: &str) -> Result<Loaded, Failure> {
        if self.builtin.is_none() && self.file.is_none() {
            return Input { builtin: Some(default.into()), file: None }.load();
        }
        self.load()
    }
}

fn framed(d: SliceDiagram, framing: &Framing) -> Result<FramedLink, Failure> {
    Ok(match &framing.framing {
        Some(f) => FramedLink::with_framing(d, f)?,
        None => FramedLink::blackboard(d)?,
    })
}

fn colors_for(colors: &Option<Vec<u32>>, n: usize) -> Result<Vec<u32>, Failure> {
    let c = colors.clone().unwrap_or_else(|| vec![2; n]);
    if c.len() != n {
        return Err(DiagramError::ComponentCount { expected: n, got: c.len() }.into());
    }
    Ok(c)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn approx_pair(x: &CycNum) -> Value {
    let z = x.approx();
    json!([z.re, z.im])
}

fn scalar(x: &CycNum, mode: Mode) -> Value {
    match mode {
        Mode::Exact => to_value(x),
        Mode::Approx => Value::Null,
    }
}

fn matrix_value(m: &CycMatrix, mode: Mode) -> Value {
    match mode {
        Mode::Exact => to_value(m),
        Mode::Approx => Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(approx_pair).collect())).collect()),
    }
}

fn run(cmd: Command) -> Result<(Value, bool), Failure> {
    Ok(match cmd {
        Command::Eval { input, precision, framing, colors, dump_operator } => {
            let mode = precision.mode()?;
            let loaded = input.load()?;
            let d = match &framing.framing {
                Some(_) => framed(loaded.diagram, &framing)?.into_diagram(),
                None => loaded.diagram,
            };
            let coloring = colors_for(&colors, d.component_count())?;
            let ev = Evaluator::new(precision.level)?;
            let cd = ColoredDiagram::new(d, coloring.clone())?;
            let op = ev.evaluate(&cd)?;
            let value = op.scalar();
            let mut out = json!({
                "command": "eval",
                "engine": "evaluator",
                "input": loaded.source,
                "level": precision.level,
                "mode": mode_name(mode),
                "framing": framing.framing,
                "coloring": coloring,
                "value": value.as_ref().map(|v| scalar(v, mode)),
                "value_approx": value.as_ref().map(approx_pair),
            });
            if dump_operator || value.is_none() {
                out["operator"] = json!({
                    "domain": to_value(&op.domain()),
                    "codomain": to_value(&op.codomain()),
                    "matrix": matrix_value(op.matrix(), mode),
                });
            }
            (out, true)
        }
        Command::Arf { input, strategy } => {
            let loaded = input.load()?;
            let strategy = match strategy {
                StrategyArg::FirstBad => Strategy::FirstBad,
                StrategyArg::LastBadReversed => Strategy::LastBadReversed,
            };
            let engine = SkeinEngine::new(strategy);
            let report = engine.arf(&loaded.diagram)?;
            let (proper, epsilon) = match report.arf {
                tqft_core::skein::Arf::Proper { epsilon } => (true, Some(epsilon)),
                tqft_core::skein::Arf::NonProper => (false, None),
            };
            (
                json!({
                    "command": "arf",
                    "engine": "skein",
                    "strategy": to_value(&strategy),
                    "input": loaded.source,
                    "components": report.components,
                    "I": to_value(&report.i),
                    "I_approx": approx_pair(&report.i),
                    "proper": proper,
                    "epsilon": epsilon,
                    "resolution_steps": engine.steps(),
                }),
                true,
            )
        }
        Command::Colored { input, precision, framing, colors, trace } => {
            let mode = precision.mode()?;
            if precision.level != 4 {
                return Err(InvariantError::ApproximateOnly(precision.level).into());
            }
            let loaded = input.load()?;
            let link = framed(loaded.diagram, &framing)?;
            let coloring = colors_for(&colors, link.component_count())?;
            let report = SkeinEngine::new(Strategy::FirstBad).colored_via_cabling(&link, &coloring)?;
            let mut out = json!({
                "command": "colored",
                "engine": "skein-cabling",
                "input": loaded.source,
                "level": 4,
                "mode": mode_name(mode),
                "framing": link.framing(),
                "coloring": coloring,
                "value": scalar(&report.value, mode),
                "value_approx": approx_pair(&report.value),
            });
            if trace {
                out["terms"] = to_value(&report.terms);
            }
            (out, true)
        }
        Command::Rt { input, precision, framing } => {
            let mode = precision.mode()?;
            let loaded = input.load()?;
            let link = framed(loaded.diagram, &framing)?;
            let lm = link.linking_matrix();
            let sp = SurgeryPresentation::new(link.clone(), precision.level)?;
            let (value, approx) = match mode {
                Mode::Exact => {
                    let z = sp.z_exact()?;
                    (to_value(&z), approx_pair(&z))
                }
                Mode::Approx => {
                    let z = sp.z_approx()?;
                    (Value::Null, json!([z.re, z.im]))
                }
            };
            (
                json!({
                    "command": "rt",
                    "engine": "evaluator",
                    "input": loaded.source,
                    "level": precision.level,
                    "mode": mode_name(mode),
                    "framing": link.framing(),
                    "linking_matrix": lm.entries(),
                    "signature": lm.signature()?,
                    "value": value,
                    "value_approx": approx,
                }),
                true,
            )
        }
        Command::Transfer { input, precision, framing } => {
            let mode = precision.mode()?;
            let loaded = input.load_or("whitehead")?;
            let link = framed(loaded.diagram, &framing)?;
            let t = transfer_matrix(&link, precision.level)?;
            (
                json!({
                    "command": "transfer",
                    "engine": "evaluator",
                    "input": loaded.source,
                    "level": precision.level,
                    "mode": mode_name(mode),
                    "framing": link.framing(),
                    "orientation": "rows: outgoing color j, columns: incoming color i",
                    "matrix": matrix_value(&t.matrix, mode),
                    "rank": t.matrix.rank(),
                    "limit_rank": t.limit_rank(),
                    "anomaly": to_value(&t.anomaly),
                }),
                true,
            )
        }
        Command::Whitehead { precision, framing } => {
            let mode = precision.mode()?;
            let f = framing.framing.unwrap_or_else(|| DEFAULT_WHITEHEAD_FRAMING.to_vec());
            let report = whitehead_pipeline(precision.level, &f)?;
            let mut out = to_value(&report);
            out["command"] = json!("whitehead");
            out["mode"] = json!(mode_name(mode));
            if mode == Mode::Approx {
                out["matrix"] = matrix_value(&report.matrix, mode);
                out["determinant"] = Value::Null;
            }
            (out, true)
        }
        Command::Selftest { seed } => {
            let report = selftest::run(seed);
            let ok = report.ok();
            let mut out = to_value(&report);
            out["command"] = json!("selftest");
            (out, ok)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((out, ok)) => {
            // a closed pipe (e.g. `| head`) is not an error worth a panic
            let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&out).expect("json"));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
