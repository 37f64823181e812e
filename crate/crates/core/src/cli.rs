//! Command-line front end. [`cli_main`] is the whole program minus process
//! setup, so it can be driven from tests.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::designers::{
    design_cluster4, design_dicke2, design_ghz, design_w, preset_beamsplitter, preset_tritter, DickePreset, WForm,
};
use crate::dot::{export_dot, DotRenderOptions, DotView};
use crate::entanglement::{analyze, NumericSource, DEFAULT_RANK_TOL};
use crate::error::LqnError;
use crate::graphs::{enumerate_pms, pm_diagram, to_directed};
use crate::io::{format_complex, parse_network_with_tol, report_to_json, serialize_network, state_to_json};
use crate::model::{to_adjacency, to_bipartite, NetworkSpec, NormalizationMode, Statistics, DEFAULT_TOL};
use crate::spin::{ColorVector, Spin};
use crate::states::{assemble_state, normalize, oracle_state, NoBunchState};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

/// Largest assemble-vs-oracle difference `verify` accepts.
pub const VERIFY_TOL: f64 = 1e-12;

/// Environment variable overriding the validation tolerance.
pub const TOL_ENV: &str = "LQN_TOL";

#[derive(Parser, Debug)]
#[command(name = "lqn", version, about = "Linear quantum networks as colored weighted graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate perfect matchings and print the post-selected state.
    Compute {
        file: PathBuf,
        #[command(flatten)]
        format: Format,
    },
    /// Structural and numerical separability analysis.
    Analyze {
        file: PathBuf,
        /// Also compute the finest product partition numerically. With a
        /// seed, random generic amplitudes replace the file's.
        #[arg(long, value_name = "SEED", num_args = 0..=1)]
        numeric: Option<Option<u64>>,
        #[arg(long)]
        json: bool,
    },
    /// Print the perfect-matching diagram and the removed edges.
    PmDiagram {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
    },
    /// Emit a designer network as JSON.
    Design(DesignArgs),
    /// Compare the assembled state with the brute-force permutation sum.
    Verify { file: PathBuf },
    /// Export a graph view in DOT format.
    Dot {
        file: PathBuf,
        #[arg(long, default_value = "d")]
        view: String,
        #[arg(long)]
        weights: bool,
        /// 1-based index of a perfect matching to draw bold.
        #[arg(long, value_name = "K")]
        highlight: Option<usize>,
    },
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct Format {
    #[arg(long)]
    json: bool,
    #[arg(long)]
    text: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DesignKind {
    Ghz,
    W,
    Dicke,
    Cluster4,
    Tritter,
    Beamsplitter,
}

#[derive(Args, Debug)]
struct DesignArgs {
    kind: DesignKind,
    #[arg(long)]
    n: Option<usize>,
    /// Color vector such as `udud`.
    #[arg(long)]
    colors: Option<String>,
    #[arg(long, default_value = "star")]
    form: String,
    #[arg(long)]
    preset: Option<String>,
    /// Beam-splitter amplitudes `a1,b1,a2,b2` (real).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    amps: Option<Vec<f64>>,
    #[arg(long)]
    fermion: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Invalid(LqnError),
    Mismatch(String),
}

impl From<LqnError> for Failure {
    fn from(e: LqnError) -> Self {
        Failure::Invalid(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn cli_main<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let tol = match std::env::var(TOL_ENV) {
        Err(_) => DEFAULT_TOL,
        Ok(v) => match v.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => t,
            _ => {
                let _ = writeln!(err, "error: {TOL_ENV} must be a positive number, got {v:?}");
                return EXIT_USAGE;
            }
        },
    };
    match run(cli.command, tol, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Invalid(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
        Err(Failure::Mismatch(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            EXIT_MISMATCH
        }
    }
}

fn load(path: &PathBuf, tol: f64) -> std::result::Result<NetworkSpec, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_network_with_tol(&text, tol)?)
}

fn emit(out: &mut dyn Write, text: &str) -> Outcome {
    out.write_all(text.as_bytes()).map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
}

fn run(command: Command, tol: f64, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Compute { file, format } => compute(&load(&file, tol)?, format.json, out),
        Command::Analyze { file, numeric, json } => {
            let spec = load(&file, tol)?;
            let source = numeric.map(|seed| match seed {
                Some(seed) => NumericSource::Generic { seed },
                None => NumericSource::Network,
            });
            let report = analyze(&spec, source, DEFAULT_RANK_TOL)?;
            if json {
                return emit(out, &format!("{:#}\n", report_to_json(&report)));
            }
            emit(out, &analysis_text(&report))
        }
        Command::PmDiagram { file, dot, json } => {
            let spec = load(&file, tol)?;
            if dot {
                let opts = DotRenderOptions { view: DotView::PmDiagram, ..Default::default() };
                return emit(out, &export_dot(&spec, &opts)?);
            }
            diagram_text(&spec, json, out)
        }
        Command::Design(args) => design(args, out),
        Command::Verify { file } => {
            let spec = load(&file, tol)?;
            let pms = enumerate_pms(&to_bipartite(&to_adjacency(&spec)));
            let assembled = assemble_state(&pms, &spec)?;
            let oracle = oracle_state(&spec)?;
            let diff = assembled.max_abs_diff(&oracle)?;
            emit(out, &format!("perfect matchings: {}\nmax amplitude difference: {diff:.3e}\n", pms.len()))?;
            if diff > VERIFY_TOL {
                return Err(Failure::Mismatch(format!("difference {diff:.3e} exceeds {VERIFY_TOL:e}")));
            }
            emit(out, "ok\n")
        }
        Command::Dot { file, view, weights, highlight } => {
            let spec = load(&file, tol)?;
            let view: DotView = view.parse().map_err(|e: LqnError| Failure::Usage(e.to_string()))?;
            let highlight_pm = match highlight {
                Some(0) => return Err(Failure::Usage("--highlight is 1-based".into())),
                other => other.map(|k| k - 1),
            };
            emit(out, &export_dot(&spec, &DotRenderOptions { view, show_weights: weights, highlight_pm })?)
        }
    }
}

fn compute(spec: &NetworkSpec, json: bool, out: &mut dyn Write) -> Outcome {
    let pms = enumerate_pms(&to_bipartite(&to_adjacency(spec)));
    let raw = assemble_state(&pms, spec)?;
    let state = normalize(&raw)?;
    if json {
        let mut value = state_to_json(&state);
        value["perfect_matchings"] = pms.len().into();
        return emit(out, &format!("{value:#}\n"));
    }
    let mut text = format!(
        "n = {}, {}, {} mode\nperfect matchings: {}\nstate:\n",
        spec.n(),
        statistics_name(spec.statistics()),
        mode_name(spec.mode()),
        pms.len()
    );
    text.push_str(&state_lines(&state));
    let p = state.postselect_probability().unwrap_or_default();
    text.push_str(&format!("postselect probability: {p:.9}\n"));
    if spec.mode() == NormalizationMode::Design {
        text.push_str("note: design-mode rows are not normalized, so the probability is relative\n");
    }
    emit(out, &text)
}

fn state_lines(state: &NoBunchState) -> String {
    state
        .terms()
        .map(|(ket, amp)| format!("  |{}>  {}\n", ket.arrows(), format_complex(*amp, 6)))
        .collect()
}

fn statistics_name(s: Statistics) -> &'static str {
    match s {
        Statistics::Boson => "boson",
        Statistics::Fermion => "fermion",
    }
}

fn mode_name(m: NormalizationMode) -> &'static str {
    match m {
        NormalizationMode::Strict => "strict",
        NormalizationMode::Design => "design",
    }
}

fn pair_list(pairs: impl Iterator<Item = (usize, usize)>) -> String {
    let items: Vec<String> = pairs.map(|(a, j)| format!("({},X{})", a + 1, j + 1)).collect();
    if items.is_empty() {
        "none".to_string()
    } else {
        items.join(" ")
    }
}

fn diagram_text(spec: &NetworkSpec, json: bool, out: &mut dyn Write) -> Outcome {
    let diag = pm_diagram(&to_directed(&to_adjacency(spec)))?;
    let kept = diag.matchable_pairs();
    let removed: Vec<(usize, usize)> = diag.removed_edges().iter().map(|e| (e.from, e.to)).collect();
    if json {
        let pairs = |v: &[(usize, usize)]| -> Vec<serde_json::Value> {
            v.iter().map(|&(a, j)| serde_json::json!({ "from": a + 1, "to": j + 1 })).collect()
        };
        let value = serde_json::json!({ "edges": pairs(&kept), "removed_edges": pairs(&removed) });
        return emit(out, &format!("{value:#}\n"));
    }
    let rel = diag.relabeling();
    let mut text = format!("diagram edges ({}): {}\n", kept.len(), pair_list(kept.iter().copied()));
    text.push_str(&format!("removed edges ({}): {}\n", removed.len(), pair_list(removed.iter().copied())));
    if !rel.is_identity() {
        let map: Vec<String> =
            (0..diag.n()).map(|v| format!("w{}=X{}", v + 1, rel.detector_of_vertex(v) + 1)).collect();
        text.push_str(&format!("loop labeling: {}\n", map.join(" ")));
    }
    emit(out, &text)
}

fn analysis_text(report: &crate::entanglement::SeparabilityReport) -> String {
    let mut text = String::new();
    let removed = report.diagram.removed_edges().iter().map(|e| (e.from, e.to));
    text.push_str(&format!("removed edges: {}\n", pair_list(removed)));
    let forced: Vec<String> =
        report.lemma1_detectors.iter().map(|&(j, s)| format!("X{}={}", j + 1, s.arrow())).collect();
    text.push_str(&format!(
        "single-color detectors: {}\n",
        if forced.is_empty() { "none".to_string() } else { forced.join(" ") }
    ));
    text.push_str(&format!("weak components: {}\n", report.lemma2_detectors));
    text.push_str(&format!("structural partition: {}\n", report.structural_partition));
    let t1 = &report.theorem1;
    let bad: Vec<String> = t1
        .color_condition_ok
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(v, _)| format!("w{}", v + 1))
        .collect();
    text.push_str(&format!(
        "genuine-entanglement test: {} (strongly connected: {}, one-color vertices: {})\n",
        t1.verdict.as_str(),
        if t1.strongly_connected { "yes" } else { "no" },
        if bad.is_empty() { "none".to_string() } else { bad.join(" ") }
    ));
    let t2 = &report.theorem2;
    text.push_str(&format!("W-optimal structure: {}\n", if t2.optimal { "yes" } else { "no" }));
    for m in &t2.messages {
        text.push_str(&format!("  {m}\n"));
    }
    match (&report.numeric_finest_partition, report.numeric_source) {
        (Some(p), Some(src)) => {
            let from = match src {
                NumericSource::Network => "network amplitudes".to_string(),
                NumericSource::Generic { seed } => format!("generic amplitudes, seed {seed}"),
            };
            text.push_str(&format!("numeric finest partition ({from}): {p}\n"));
        }
        _ => text.push_str("numeric finest partition: not computed (use --numeric)\n"),
    }
    text
}

fn parse_colors(text: Option<&str>) -> std::result::Result<Option<ColorVector>, Failure> {
    text.map(|t| ColorVector::parse(t).ok_or_else(|| Failure::Usage(format!("bad color vector {t:?} (use u/d)"))))
        .transpose()
}

fn design(args: DesignArgs, out: &mut dyn Write) -> Outcome {
    let colors = parse_colors(args.colors.as_deref())?;
    let n_or = |default: Option<usize>| {
        args.n.or(colors.as_ref().map(ColorVector::len)).or(default).ok_or_else(|| Failure::Usage("--n is required".into()))
    };
    let spec = match args.kind {
        DesignKind::Ghz => {
            let n = n_or(None)?;
            let cv = colors.clone().unwrap_or_else(|| ColorVector::uniform(n, Spin::Up));
            design_ghz(n, &cv, None)?
        }
        DesignKind::W => {
            let form: WForm = args.form.parse().map_err(|e: LqnError| Failure::Usage(e.to_string()))?;
            design_w(n_or(None)?, form, colors.as_ref())?
        }
        DesignKind::Dicke => {
            let preset = args
                .preset
                .as_deref()
                .map(|p| p.parse::<DickePreset>())
                .transpose()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let default_n = match preset {
                Some(DickePreset::PaperN4) => Some(4),
                Some(DickePreset::PaperN5) => Some(5),
                None => None,
            };
            design_dicke2(n_or(default_n)?, preset)?
        }
        DesignKind::Cluster4 => design_cluster4()?,
        DesignKind::Tritter => preset_tritter()?,
        DesignKind::Beamsplitter => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            let a = args.amps.clone().unwrap_or_else(|| vec![h; 4]);
            if a.len() != 4 {
                return Err(Failure::Usage(format!("--amps takes 4 values, got {}", a.len())));
            }
            let c = |x: f64| Complex64::new(x, 0.0);
            let stats = if args.fermion { Statistics::Fermion } else { Statistics::Boson };
            preset_beamsplitter(c(a[0]), c(a[1]), c(a[2]), c(a[3]), stats)?
        }
    };
    let spec = if args.fermion { spec.with_statistics(Statistics::Fermion) } else { spec };
    let text = serialize_network(&spec) + "\n";
    match args.out {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => emit(out, &text),
    }
}
