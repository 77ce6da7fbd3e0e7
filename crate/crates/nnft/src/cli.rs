//! Subcommands and their reports.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nnft_core::circuit::Circuit;
use nnft_core::cost::{self, CommModel, Term};
use nnft_core::expand::{self, Block, ExpansionRequest};
use nnft_core::layout::{self, BlockVariant};
use nnft_core::sim::{self, ErrorModel, Scenario, ScenarioCircuit};
use nnft_core::threshold::{self, ThresholdRow, PHI_TOLERANCE_DEG, PRINTED_TABLE};

use crate::format;
use crate::montecarlo;
use crate::report::{big_value, sci, sci_value, OutputFormat, Report};

#[derive(Debug, Parser)]
#[command(name = "nnft", version, about = "Gate counts, thresholds and fault simulation for Steane codes on nearest-neighbour stripes")]
pub struct Cli {
    /// Output format (default: json for `expand`, text otherwise).
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Free,
    Recnot,
    Swap,
}

impl From<ModelArg> for CommModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Free => CommModel::Free,
            ModelArg::Recnot => CommModel::RemoteCnot,
            ModelArg::Swap => CommModel::Swap,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PrepArg {
    /// Logical zeros supplied from outside the block (27 sites).
    None,
    /// Logical zeros prepared inside the block (46 sites).
    Inline,
}

impl From<PrepArg> for BlockVariant {
    fn from(p: PrepArg) -> Self {
        match p {
            PrepArg::None => BlockVariant::Minimal27,
            PrepArg::Inline => BlockVariant::WithPrep46,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BlockArg {
    Swap,
    ZeroPrep,
    Ec,
    RemoteCnot,
    CnotRows,
}

impl From<BlockArg> for Block {
    fn from(b: BlockArg) -> Self {
        match b {
            BlockArg::Swap => Block::LogicalSwap,
            BlockArg::ZeroPrep => Block::ZeroPrep,
            BlockArg::Ec => Block::EcBlock,
            BlockArg::RemoteCnot => Block::RemoteCnotGadget,
            BlockArg::CnotRows => Block::LogicalCnotRows,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScenarioArg {
    EcOnly,
    CnotEc,
}

impl From<ScenarioArg> for Scenario {
    fn from(s: ScenarioArg) -> Self {
        match s {
            ScenarioArg::EcOnly => Scenario::EcOnly,
            ScenarioArg::CnotEc => Scenario::CnotEc,
        }
    }
}

#[derive(Debug, Clone, clap::Args)]
pub struct Design {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    #[arg(long, value_enum)]
    pub prep: PrepArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gate counts and thresholds for every model and block variant.
    Table,
    /// Per-level gate count broken into named terms.
    Counts(Design),
    /// Error threshold and the matching rotation-angle accuracy.
    Threshold(Design),
    /// Logical error bound for levels 0 through `--levels`.
    LogicalError {
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        levels: u32,
        #[command(flatten)]
        design: Design,
    },
    /// Smallest level whose accessible computation length reaches `--length`.
    Depth {
        #[arg(long)]
        length: f64,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, conflicts_with_all = ["model", "prep"], required_unless_present_all = ["model", "prep"])]
        pth: Option<f64>,
        #[arg(long, value_enum, requires = "prep")]
        model: Option<ModelArg>,
        #[arg(long, value_enum, requires = "model")]
        prep: Option<PrepArg>,
    },
    /// Physical qubits, stripe width and gate counts per level.
    Resources {
        #[arg(long)]
        levels: u32,
        #[arg(long, value_enum)]
        prep: PrepArg,
    },
    /// Emits a level-1 block as a circuit file.
    Expand {
        #[arg(long, value_enum)]
        block: BlockArg,
        #[arg(long, value_enum)]
        prep: PrepArg,
        /// Defaults to swap for `swap` and `cnot-rows`, free otherwise.
        #[arg(long, value_enum)]
        model: Option<ModelArg>,
        /// Writes the circuit here and prints a summary instead.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks a circuit file and its nearest-neighbour constraint.
    Validate { file: PathBuf },
    /// Monte Carlo estimate of the level-1 failure probability.
    Simulate {
        #[arg(long, value_enum)]
        scenario: ScenarioArg,
        /// One or more physical error probabilities, comma separated.
        #[arg(long, required = true, num_args = 1.., value_delimiter = ',')]
        epsilon: Vec<f64>,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Worker threads; falls back to NNFT_THREADS, then the core count.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Injects every single fault and reports the ones that cause a logical error.
    FaultScan {
        #[arg(long, value_enum)]
        scenario: ScenarioArg,
    },
}

/// Runs one invocation; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                2
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.stdout.as_bytes());
            for w in &outcome.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            match outcome.failure {
                Some(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                    1
                }
                None => 0,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
    }
}

#[derive(Debug, Default)]
struct Outcome {
    stdout: String,
    warnings: Vec<String>,
    /// Set when the data was produced but the check it reports failed.
    failure: Option<String>,
}

impl Outcome {
    fn data(stdout: String) -> Self {
        Self { stdout, ..Self::default() }
    }
}

fn execute(cli: &Cli) -> anyhow::Result<Outcome> {
    let fmt = cli.format.unwrap_or(OutputFormat::Text);
    let rendered = |r: Report| Ok(Outcome::data(r.render(fmt)));
    match &cli.command {
        Command::Table => rendered(table_report()),
        Command::Counts(d) => rendered(counts_report(d.model.into(), d.prep.into())),
        Command::Threshold(d) => rendered(threshold_report(d.model.into(), d.prep.into())),
        Command::LogicalError { epsilon, levels, design } => {
            rendered(logical_error_report(*epsilon, *levels, design.model.into(), design.prep.into())?)
        }
        Command::Depth { length, epsilon, pth, model, prep } => {
            let design = model.zip(*prep).map(|(m, p)| (m.into(), p.into()));
            rendered(depth_report(*length, *epsilon, *pth, design)?)
        }
        Command::Resources { levels, prep } => rendered(resources_report(*levels, (*prep).into())),
        Command::Expand { block, prep, model, out } => expand_command(*block, *prep, *model, out.as_ref(), cli.format),
        Command::Validate { file } => validate_command(file, fmt),
        Command::Simulate { scenario, epsilon, trials, seed, threads } => {
            simulate_command((*scenario).into(), epsilon, *trials, *seed, *threads, fmt)
        }
        Command::FaultScan { scenario } => rendered(fault_scan_report((*scenario).into())),
    }
}

fn term_value(section: &str, t: &Term) -> Value {
    json!({
        "section": section,
        "label": t.label,
        "multiplicity": t.multiplicity,
        "computational": t.computational,
        "communication": t.communication,
        "count": t.count(),
    })
}

fn p_th_2sf(p: f64) -> String {
    let (digits, exp) = threshold::round_sig2(p);
    format_sig2(digits, exp)
}

fn format_sig2(digits: u8, exp: i32) -> String {
    format!("{}.{}e{}", digits / 10, digits % 10, exp + 1)
}

pub fn table_report() -> Report {
    let mut r = Report::new(
        "table",
        vec![
            "model",
            "prep",
            "ec_count",
            "unitary_count",
            "n_total",
            "p_th",
            "p_th_2sf",
            "printed_p_th",
            "phi_th_deg",
            "printed_phi_deg",
            "counts_match",
            "p_th_match",
            "phi_within_tolerance",
            "note",
        ],
    );
    let mut rows = Vec::new();
    for (i, (row, printed)) in threshold::table_report().iter().zip(PRINTED_TABLE).enumerate() {
        let counts_match = row.ec_count == printed.ec_count && row.unitary_count == printed.unitary_count;
        let p_th_match = threshold::round_sig2(row.p_th) == printed.p_th;
        let delta = row.phi_th_deg - printed.phi_th_deg;
        let within = delta.abs() <= PHI_TOLERANCE_DEG;
        let rel = delta / printed.phi_th_deg;
        let note = if rel.abs() > 0.05 {
            format!("printed angle deviates {:+.0}% from the value implied by p_th", rel * 100.0)
        } else {
            String::new()
        };
        if !note.is_empty() {
            r.note(format!("row {}: {note} ({:.4} deg computed, {} deg printed)", i + 1, row.phi_th_deg, printed.phi_th_deg));
        }
        r.row(vec![
            row.model.name().into(),
            row.variant.name().into(),
            row.ec_count.to_string(),
            row.unitary_count.to_string(),
            row.n_total.to_string(),
            sci(row.p_th),
            p_th_2sf(row.p_th),
            format_sig2(printed.p_th.0, printed.p_th.1),
            sci(row.phi_th_deg),
            printed.phi_th_deg.to_string(),
            counts_match.to_string(),
            p_th_match.to_string(),
            within.to_string(),
            note.clone(),
        ]);
        rows.push(json!({
            "model": row.model.name(),
            "prep": row.variant.name(),
            "ec_count": row.ec_count,
            "unitary_count": row.unitary_count,
            "n_total": row.n_total,
            "p_th": sci_value(row.p_th),
            "p_th_2sf": p_th_2sf(row.p_th),
            "printed_p_th": format_sig2(printed.p_th.0, printed.p_th.1),
            "phi_th_deg": sci_value(row.phi_th_deg),
            "printed_phi_deg": printed.phi_th_deg,
            "phi_delta_deg": sci_value(delta),
            "counts_match": counts_match,
            "p_th_match": p_th_match,
            "phi_within_tolerance": within,
            "note": note,
        }));
    }
    r.set("phi_tolerance_deg", PHI_TOLERANCE_DEG).set("rows", rows);
    r
}

pub fn counts_report(model: CommModel, variant: BlockVariant) -> Report {
    let b = cost::breakdown(model, variant);
    let mut r = Report::new("counts", vec!["section", "label", "multiplicity", "computational", "communication", "count"]);
    let mut terms = Vec::new();
    for (section, list) in [("unitary", &b.unitary_terms), ("ec", &b.ec_terms)] {
        for t in list {
            r.row(vec![
                section.into(),
                t.label.into(),
                t.multiplicity.to_string(),
                t.computational_total().to_string(),
                t.communication_total().to_string(),
                t.count().to_string(),
            ]);
            terms.push(term_value(section, t));
        }
    }
    for (label, comp, comm) in [("unitary", b.n_u, b.n_uc), ("ec", b.n_e, b.n_ec)] {
        r.row(vec!["total".into(), label.into(), String::new(), comp.to_string(), comm.to_string(), (comp + comm).to_string()]);
    }
    r.row(vec!["total".into(), "all".into(), String::new(), (b.n_u + b.n_e).to_string(), (b.n_uc + b.n_ec).to_string(), b.n_total().to_string()]);
    r.set("model", model.name())
        .set("prep", variant.name())
        .set("n_u", b.n_u)
        .set("n_uc", b.n_uc)
        .set("n_e", b.n_e)
        .set("n_ec", b.n_ec)
        .set("unitary_count", b.unitary_total())
        .set("ec_count", b.ec_total())
        .set("n_total", b.n_total())
        .set("terms", terms);
    r
}

pub fn threshold_report(model: CommModel, variant: BlockVariant) -> Report {
    let row = ThresholdRow::compute(model, variant);
    let mut r = Report::new("threshold", vec!["model", "prep", "n_total", "p_th", "p_th_2sf", "phi_th_deg"]);
    r.row(vec![
        model.name().into(),
        variant.name().into(),
        row.n_total.to_string(),
        sci(row.p_th),
        p_th_2sf(row.p_th),
        sci(row.phi_th_deg),
    ]);
    r.set("model", model.name())
        .set("prep", variant.name())
        .set("n_total", row.n_total)
        .set("p_th", sci_value(row.p_th))
        .set("p_th_2sf", p_th_2sf(row.p_th))
        .set("phi_th_deg", sci_value(row.phi_th_deg));
    r
}

pub fn logical_error_report(epsilon: f64, levels: u32, model: CommModel, variant: BlockVariant) -> anyhow::Result<Report> {
    let p_th = ThresholdRow::compute(model, variant).p_th;
    let mut r = Report::new("logical-error", vec!["level", "p_l"]);
    let mut rows = Vec::new();
    for level in 0..=levels {
        let p = threshold::logical_error(epsilon, level, p_th)?;
        r.row(vec![level.to_string(), sci(p)]);
        rows.push(json!({ "level": level, "p_l": sci_value(p) }));
    }
    if epsilon >= p_th {
        r.note(format!("epsilon {} is not below p_th {}; the bound does not shrink with level", sci(epsilon), sci(p_th)));
    }
    r.set("model", model.name())
        .set("prep", variant.name())
        .set("epsilon", sci_value(epsilon))
        .set("p_th", sci_value(p_th))
        .set("below_threshold", epsilon < p_th)
        .set("levels", rows);
    Ok(r)
}

pub fn depth_report(length: f64, epsilon: f64, pth: Option<f64>, design: Option<(CommModel, BlockVariant)>) -> anyhow::Result<Report> {
    let p_th = match (pth, design) {
        (Some(p), _) => p,
        (None, Some((m, v))) => ThresholdRow::compute(m, v).p_th,
        (None, None) => anyhow::bail!("either --pth or both --model and --prep are required"),
    };
    let choice = threshold::sufficient_level(length, epsilon, p_th)?;
    let reach = threshold::log10_accessible_length(epsilon, choice.level, p_th)?;
    let mut r = Report::new("depth", vec!["length", "epsilon", "p_th", "level", "log10_accessible_length"]);
    r.row(vec![sci(length), sci(epsilon), sci(p_th), choice.level.to_string(), sci(reach)]);
    if choice.trivially_short {
        r.note("length times p_th is at most 1; no concatenation needed");
    }
    r.set("length", sci_value(length))
        .set("epsilon", sci_value(epsilon))
        .set("p_th", sci_value(p_th))
        .set("level", choice.level)
        .set("trivially_short", choice.trivially_short)
        .set("log10_accessible_length", sci_value(reach));
    if let Some((m, v)) = design.filter(|_| pth.is_none()) {
        r.set("model", m.name()).set("prep", v.name());
    }
    Ok(r)
}

pub fn resources_report(levels: u32, variant: BlockVariant) -> Report {
    let mut r = Report::new(
        "resources",
        vec!["level", "physical_qubits", "stripe_width", "gates_free", "gates_recnot", "gates_swap"],
    );
    let mut rows = Vec::new();
    for level in 0..=levels {
        let qubits = layout::physical_qubits(level, variant).to_string();
        let gates: Vec<String> =
            CommModel::ALL.iter().map(|&m| cost::physical_gate_count(level, m, variant).to_string()).collect();
        let width = layout::stripe_width(level);
        let mut cells = vec![level.to_string(), qubits.clone(), width.to_string()];
        cells.extend(gates.iter().cloned());
        r.row(cells);
        let by_model: serde_json::Map<String, Value> =
            CommModel::ALL.iter().zip(&gates).map(|(m, g)| (m.name().to_string(), big_value(g))).collect();
        rows.push(json!({
            "level": level,
            "physical_qubits": big_value(&qubits),
            "stripe_width": width,
            "physical_gates": by_model,
        }));
    }
    r.set("prep", variant.name()).set("block_length", variant.block_length()).set("levels", rows);
    r
}

fn kind_counts(c: &Circuit) -> Value {
    let m: serde_json::Map<String, Value> =
        c.count_by_kind().into_iter().map(|(k, n)| (k.name().to_string(), Value::from(n))).collect();
    Value::Object(m)
}

fn violations_value(c: &Circuit) -> Vec<Value> {
    c.validate_nearest_neighbor()
        .iter()
        .map(|v| {
            json!({
                "timestep": v.timestep,
                "gate_index": v.gate_index,
                "kind": v.gate.kind.name(),
                "targets": v.gate.targets.iter().map(|s| [s.row, s.col]).collect::<Vec<_>>(),
            })
        })
        .collect()
}

fn circuit_summary(r: &mut Report, c: &Circuit) {
    let violations = c.validate_nearest_neighbor();
    r.row(vec!["width".into(), c.width.to_string()]);
    r.row(vec!["length".into(), c.length.to_string()]);
    r.row(vec!["depth".into(), c.depth().to_string()]);
    r.row(vec!["gates".into(), c.gate_count().to_string()]);
    r.row(vec!["counted_operations".into(), c.counted_operations().to_string()]);
    for (k, n) in c.count_by_kind() {
        r.row(vec![format!("count_{}", k.name()), n.to_string()]);
    }
    r.row(vec!["nn_violations".into(), violations.len().to_string()]);
    for v in &violations {
        r.note(format!("nearest-neighbour violation at timestep {} gate {}: {}", v.timestep, v.gate_index, v.gate));
    }
    r.set("width", c.width)
        .set("length", c.length)
        .set("depth", c.depth())
        .set("gates", c.gate_count())
        .set("counted_operations", c.counted_operations())
        .set("by_kind", kind_counts(c))
        .set("nn_violations", violations_value(c));
}

fn expand_command(
    block: BlockArg,
    prep: PrepArg,
    model: Option<ModelArg>,
    out: Option<&PathBuf>,
    format: Option<OutputFormat>,
) -> anyhow::Result<Outcome> {
    let block: Block = block.into();
    let variant: BlockVariant = prep.into();
    let mut req = ExpansionRequest::new(block, variant);
    if let Some(m) = model {
        req.model = m.into();
    }
    let c = expand::expand(&req)?;
    let mut r = Report::new("expansion", vec!["field", "value"]);
    r.set("block", block.name()).set("model", req.model.name()).set("prep", variant.name());
    r.row(vec!["block".into(), block.name().into()]);
    r.row(vec!["model".into(), req.model.name().into()]);
    r.row(vec!["prep".into(), variant.name().into()]);
    circuit_summary(&mut r, &c);
    match block {
        Block::LogicalSwap => {
            let s = expand::logical_swap(layout::WORD_LEN as usize);
            r.row(vec!["phase_swaps".into(), format!("{:?}", s.phase_gates)]);
            r.set("phase_swaps", s.phase_gates.to_vec());
        }
        Block::LogicalCnotRows => {
            let e = expand::logical_cnot_rows(variant, 2)?;
            for (k, v) in [
                ("outbound_swaps", e.outbound_swaps),
                ("total_swaps", e.total_swaps),
                ("derived_unitary", e.derived_unitary),
                ("tabulated_unitary", e.tabulated_unitary),
            ] {
                r.row(vec![k.into(), v.to_string()]);
                r.set(k, v);
            }
            r.set("matches_table", e.matches_table());
            if !e.matches_table() {
                r.note(format!(
                    "derived unitary count {} differs from the tabulated {}",
                    e.derived_unitary, e.tabulated_unitary
                ));
            }
        }
        _ => {}
    }
    match out {
        Some(path) => {
            std::fs::write(path, format::to_json(&c))?;
            r.set("file", path.display().to_string());
            Ok(Outcome::data(r.render(format.unwrap_or(OutputFormat::Text))))
        }
        None => match format.unwrap_or(OutputFormat::Json) {
            OutputFormat::Json => Ok(Outcome::data(format::to_json(&c))),
            f => Ok(Outcome::data(r.render(f))),
        },
    }
}

fn validate_command(file: &PathBuf, fmt: OutputFormat) -> anyhow::Result<Outcome> {
    let text = std::fs::read_to_string(file).map_err(|e| anyhow::anyhow!("{}: {e}", file.display()))?;
    let c = format::parse(&text).map_err(|e| anyhow::anyhow!("{}: {e}", file.display()))?;
    let mut r = Report::new("validation", vec!["field", "value"]);
    r.set("file", file.display().to_string());
    circuit_summary(&mut r, &c);
    let n = c.validate_nearest_neighbor().len();
    r.set("nearest_neighbor", n == 0);
    let mut outcome = Outcome::data(r.render(fmt));
    if n > 0 {
        outcome.failure = Some(format!("{}: {n} nearest-neighbour violation(s)", file.display()));
    }
    Ok(outcome)
}

fn simulate_command(
    scenario: Scenario,
    epsilons: &[f64],
    trials: u64,
    seed: u64,
    threads: Option<usize>,
    fmt: OutputFormat,
) -> anyhow::Result<Outcome> {
    let threads = montecarlo::resolve_threads(threads)?;
    let sc = ScenarioCircuit::build(scenario);
    let mut r = Report::new(
        "simulation",
        vec!["scenario", "epsilon", "trials", "failures", "p1_hat", "ci_low", "ci_high", "union_bound", "within_bound"],
    );
    let mut points = Vec::new();
    let mut fit_input = Vec::new();
    let mut warnings = Vec::new();
    for &eps in epsilons {
        let model = ErrorModel::depolarizing(eps)?;
        let est = montecarlo::estimate(&sc, &model, trials, seed, threads)?;
        let bound = est.union_bound();
        let within = est.ci_high <= bound;
        r.row(vec![
            scenario.name().into(),
            sci(eps),
            trials.to_string(),
            est.failures.to_string(),
            sci(est.p1_hat),
            sci(est.ci_low),
            sci(est.ci_high),
            sci(bound),
            within.to_string(),
        ]);
        points.push(json!({
            "epsilon": sci_value(eps),
            "trials": trials,
            "failures": est.failures,
            "p1_hat": sci_value(est.p1_hat),
            "ci_low": sci_value(est.ci_low),
            "ci_high": sci_value(est.ci_high),
            "union_bound": sci_value(bound),
            "within_bound": within,
        }));
        fit_input.push((eps, est.p1_hat));
    }
    let fit = if epsilons.len() >= 3 {
        match sim::scaling_fit(&fit_input) {
            Ok(f) => {
                if f.excluded > 0 {
                    warnings.push(format!("{} point(s) with zero failures left out of the fit", f.excluded));
                }
                r.note(format!("log-log slope {} from {} point(s)", sci(f.slope), f.used));
                json!({ "slope": sci_value(f.slope), "intercept": sci_value(f.intercept), "used": f.used, "excluded": f.excluded })
            }
            Err(e) => {
                warnings.push(format!("no scaling fit: {e}"));
                Value::Null
            }
        }
    } else {
        Value::Null
    };
    r.note(format!("{} fault locations, seed {seed}", sc.location_count()));
    r.set("scenario", scenario.name())
        .set("seed", seed)
        .set("trials", trials)
        .set("locations", sc.location_count())
        .set("channel", "depolarizing")
        .set("points", points)
        .set("fit", fit);
    Ok(Outcome { stdout: r.render(fmt), warnings, failure: None })
}

pub fn fault_scan_report(scenario: Scenario) -> Report {
    let sc = ScenarioCircuit::build(scenario);
    let scan = sim::exhaustive_single_fault(&sc, None);
    let mut r = Report::new("fault-scan", vec!["timestep", "gate", "kind", "pauli"]);
    let mut offending = Vec::new();
    for f in &scan.offending {
        let kind = sc.circuit.timesteps[f.timestep][f.gate].kind;
        r.row(vec![f.timestep.to_string(), f.gate.to_string(), kind.name().into(), f.pauli.to_string()]);
        offending.push(json!({ "timestep": f.timestep, "gate": f.gate, "kind": kind.name(), "pauli": f.pauli.to_string() }));
    }
    r.note(format!(
        "{}: {} locations, {} single faults injected, {} caused a logical error",
        scenario.name(),
        scan.locations,
        scan.checked,
        scan.offending.len()
    ));
    r.set("scenario", scenario.name())
        .set("locations", scan.locations)
        .set("checked", scan.checked)
        .set("offending", offending);
    r
}
