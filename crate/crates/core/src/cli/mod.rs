//! Command dispatch, preset experiments and CSV/JSON emission.
//!
//! Every command returns an [`ExperimentOutput`]: a manifest plus a JSON
//! summary and named data tables. Data tables and the summary depend only on
//! the [`RunConfig`] and its inputs, so reruns are byte-identical; only the
//! manifest carries a timestamp.

mod args;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

pub use args::{Cli, CliCommand, CliFormat, CliOptions};

use crate::census::{count_series, enumerate_words_capped, enumeration_cap};
use crate::combiner::{
    asymptotic_envelopes, bound_series, BoundReport, CombinedSystem, Schedule, ScheduleSpec,
};
use crate::entropy::{
    entropy_series, fit_scaling, ln_big, topological_entropy_estimate_window, EntropySeries,
    FitReport, DEFAULT_WINDOW,
};
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::presets;
use crate::spectral::{
    char_poly, classify_closed_form, closed_form, conjecture_scan, verify_recurrence, ClosedForm,
    ScanReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Analyze,
    Combine,
    Scan,
    EntropyFit,
    PaperExamples,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Everything a command needs. `None` fields take per-command defaults.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    /// Graph file paths or preset names.
    pub graphs: Vec<String>,
    /// `paper` or a schedule file path.
    pub schedule: Option<String>,
    pub n_max: Option<u64>,
    pub t_max: Option<u64>,
    pub k_max: Option<usize>,
    pub enumerate: bool,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub strict: bool,
    /// Tail fraction for the entropy-rate estimator.
    pub window: Option<f64>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            graphs: Vec::new(),
            schedule: None,
            n_max: None,
            t_max: None,
            k_max: None,
            enumerate: false,
            out: None,
            format: OutputFormat::Csv,
            strict: false,
            window: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_max == Some(0) {
            return Err(Error::InvalidArgument("--n-max must be >= 1".into()));
        }
        if self.t_max == Some(0) {
            return Err(Error::InvalidArgument("--t-max must be >= 1".into()));
        }
        if let Some(w) = self.window {
            if !(w > 0.0 && w <= 1.0) {
                return Err(Error::InvalidArgument(format!(
                    "--window {w} must lie in (0, 1]"
                )));
            }
        }
        Ok(())
    }

    fn window(&self) -> f64 {
        self.window.unwrap_or(DEFAULT_WINDOW)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub command: Command,
    pub config: RunConfig,
    pub version: String,
    pub timestamp_unix: u64,
}

/// A named data table. Cells are JSON values; big integers are strings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(cell_text))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Array of row objects keyed by column name.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    Value::Object(
                        self.columns
                            .iter()
                            .cloned()
                            .zip(row.iter().cloned())
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn big(x: &BigUint) -> Value {
    Value::String(x.to_string())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentOutput {
    pub manifest: Manifest,
    pub summary: Value,
    pub tables: Vec<Table>,
    /// Bound reports that failed; these force a nonzero exit under `--strict`.
    pub violations: Vec<String>,
}

impl ExperimentOutput {
    fn new(config: &RunConfig, summary: Value, tables: Vec<Table>) -> Self {
        let timestamp_unix = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            manifest: Manifest {
                command: config.command,
                config: config.clone(),
                version: env!("CARGO_PKG_VERSION").into(),
                timestamp_unix,
            },
            summary,
            tables,
            violations: Vec::new(),
        }
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    /// The deterministic files of this output as `(file name, contents)`:
    /// `summary.json` and one file per table. The manifest is excluded.
    pub fn data_files(&self, format: OutputFormat) -> Result<Vec<(String, String)>> {
        let mut files = vec![(
            "summary.json".to_string(),
            serde_json::to_string_pretty(&self.summary)? + "\n",
        )];
        for t in &self.tables {
            files.push(match format {
                OutputFormat::Csv => (format!("{}.csv", t.name), t.to_csv()?),
                OutputFormat::Json => (
                    format!("{}.json", t.name),
                    serde_json::to_string_pretty(&t.to_json())? + "\n",
                ),
            });
        }
        Ok(files)
    }

    /// Writes `manifest.json` and the data files into `dir`.
    pub fn write_dir(&self, dir: &Path, format: OutputFormat) -> Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(
            dir.join("manifest.json"),
            serde_json::to_string_pretty(&self.manifest)? + "\n",
        )?;
        for (name, contents) in self.data_files(format)? {
            fs::write(dir.join(name), contents)?;
        }
        Ok(())
    }

    /// Writes everything to one stream: a single JSON document, or the
    /// summary followed by `# table: name` delimited CSV blocks.
    pub fn write_stream<W: Write>(&self, mut out: W, format: OutputFormat) -> Result<()> {
        match format {
            OutputFormat::Json => {
                let tables: serde_json::Map<String, Value> = self
                    .tables
                    .iter()
                    .map(|t| (t.name.clone(), t.to_json()))
                    .collect();
                let doc = json!({
                    "manifest": self.manifest,
                    "summary": self.summary,
                    "tables": tables,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
            }
            OutputFormat::Csv => {
                writeln!(out, "# summary")?;
                writeln!(out, "{}", serde_json::to_string_pretty(&self.summary)?)?;
                for t in &self.tables {
                    writeln!(out, "# table: {}", t.name)?;
                    out.write_all(t.to_csv()?.as_bytes())?;
                }
            }
        }
        Ok(())
    }
}

/// Runs the configured command.
pub fn run(config: &RunConfig) -> Result<ExperimentOutput> {
    config.validate()?;
    match config.command {
        Command::Analyze => cmd_analyze(config),
        Command::Combine => cmd_combine(config),
        Command::Scan => cmd_scan(config),
        Command::EntropyFit => cmd_entropy_fit(config),
        Command::PaperExamples => cmd_paper_examples(config),
    }
}

/// Runs the command and emits its output to `config.out` or `stdout`.
pub fn execute<W: Write>(config: &RunConfig, stdout: W) -> Result<ExperimentOutput> {
    let output = run(config)?;
    match &config.out {
        Some(dir) => output.write_dir(dir, config.format)?,
        None => output.write_stream(stdout, config.format)?,
    }
    Ok(output)
}

/// Resolves a graph argument: an existing file is parsed, otherwise the
/// argument is looked up among the presets.
pub fn load_graph(arg: &str) -> Result<DirectedGraph> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path)?;
        let g = DirectedGraph::parse(&text)?;
        return Ok(match g.name() {
            Some(_) => g,
            None => g.with_name(
                path.file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| arg.to_string()),
            ),
        });
    }
    presets::by_name(arg).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "`{arg}` is neither a readable file nor a preset ({})",
            presets::NAMES.join(", ")
        ))
    })
}

fn load_graphs(config: &RunConfig) -> Result<Vec<DirectedGraph>> {
    config.graphs.iter().map(|a| load_graph(a)).collect()
}

fn single_graph(config: &RunConfig) -> Result<DirectedGraph> {
    match config.graphs.as_slice() {
        [one] => load_graph(one),
        other => Err(Error::InvalidArgument(format!(
            "expected exactly one --graph, got {}",
            other.len()
        ))),
    }
}

/// `paper` (or no selector) gives the reference schedule for `t_max` stint
/// pairs; anything else is read as a schedule file.
pub fn load_schedule(selector: Option<&str>, t_max: u64) -> Result<(Schedule, bool)> {
    match selector {
        None | Some("paper") => Ok((Schedule::paper(t_max)?, true)),
        Some(path) => {
            let text = fs::read_to_string(path)?;
            Ok((ScheduleSpec::parse(&text)?, false))
        }
    }
}

fn same_graph(a: &DirectedGraph, b: &DirectedGraph) -> bool {
    a.alphabet() == b.alphabet() && a.mask() == b.mask()
}

/// Which reference system, if any, the graphs form.
fn reference_example(graphs: &[DirectedGraph]) -> Option<u8> {
    let [a, b] = graphs else { return None };
    if !same_graph(b, &presets::g2()) {
        return None;
    }
    if same_graph(a, &presets::g1()) {
        Some(1)
    } else if same_graph(a, &presets::complete(3)) {
        Some(2)
    } else {
        None
    }
}

fn graph_label(g: &DirectedGraph) -> String {
    g.name()
        .map(str::to_string)
        .unwrap_or_else(|| format!("mask {}", g.mask()))
}

fn closed_form_json(form: &ClosedForm) -> Value {
    let c = |z: num_complex::Complex64| json!({ "re": z.re, "im": z.im });
    json!({
        "expression": form.to_string(),
        "validity_floor": form.validity_floor,
        "zero_multiplicity": form.zero_multiplicity,
        "condition": form.condition,
        "terms": form.terms.iter().map(|t| json!({
            "root": c(t.root),
            "multiplicity": t.multiplicity,
            "coefficients": t.coefficients.iter().map(|z| c(*z)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn entropy_table(series: &EntropySeries) -> Table {
    let mut t = Table::new("entropy", &["n", "omega", "H", "h_top_estimate"]);
    for p in &series.points {
        t.push(vec![
            json!(p.n),
            big(&p.omega),
            json!(p.h),
            json!(p.h_top_estimate),
        ]);
    }
    t
}

fn h_top_json(series: &EntropySeries, window: f64) -> Result<Value> {
    if series.points.len() < 2 {
        return Ok(Value::Null);
    }
    Ok(json!(topological_entropy_estimate_window(series, window)?))
}

/// Diagnostics, characteristic polynomial, closed form, growth class, count
/// and entropy series and the recurrence verdict for one graph.
pub fn cmd_analyze(config: &RunConfig) -> Result<ExperimentOutput> {
    let g = single_graph(config)?;
    let n_max = config.n_max.unwrap_or(30);
    let k = g.k() as u64;

    let poly = char_poly(&g);
    let series = count_series(&g, n_max)?;
    let entropy = entropy_series(series.totals());
    let recurrence = verify_recurrence(&g, n_max.max(k + 1))?;
    let (closed, growth) = match closed_form(&g) {
        Ok(f) => {
            let class = classify_closed_form(&f);
            (closed_form_json(&f), serde_json::to_value(class)?)
        }
        Err(e) => {
            let err = json!({ "error": e.to_string() });
            (err.clone(), err)
        }
    };

    let mut counts = Table::new(
        "counts",
        &series
            .csv_header()
            .iter()
            .map(String::as_str)
            .collect::<Vec<_>>(),
    );
    for p in &series.points {
        let mut row = vec![json!(p.n), big(&p.total)];
        row.extend(p.rows.iter().map(big));
        row.extend(p.cols.iter().map(big));
        counts.push(row);
    }
    let mut tables = vec![counts, entropy_table(&entropy)];

    let mut enumeration = Value::Null;
    if config.enumerate {
        let cap = enumeration_cap();
        let mut t = Table::new("enumeration", &["n", "enumerated", "counted", "agree"]);
        let mut all = true;
        for p in &series.points {
            let words = enumerate_words_capped(&g, p.n, cap)?;
            let agree = BigUint::from(words.len()) == p.total;
            all &= agree;
            t.push(vec![
                json!(p.n),
                json!(words.len()),
                big(&p.total),
                json!(agree),
            ]);
        }
        tables.push(t);
        enumeration = json!({ "cap": cap, "all_agree": all });
    }

    let summary = json!({
        "graph": graph_label(&g),
        "alphabet": g.alphabet().symbols(),
        "diagnostics": g.validate(),
        "char_poly": {
            "display": poly.to_string(),
            "coefficients": poly.coefficients().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        },
        "closed_form": closed,
        "growth": growth,
        "recurrence": recurrence,
        "n_max": n_max,
        "omega_n_max": series.points.last().map(|p| p.total.to_string()),
        "h_top_estimate": h_top_json(&entropy, config.window())?,
        "excluded_lengths": entropy.excluded,
        "enumeration": enumeration,
    });
    Ok(ExperimentOutput::new(config, summary, tables))
}

fn bounds_table(name: &str, example: u8, reports: &[BoundReport]) -> Result<Table> {
    let mut t = Table::new(
        name,
        &[
            "t",
            "n",
            "lower",
            "actual",
            "upper",
            "holds",
            "log_lower",
            "log_actual",
            "log_upper",
            "log_envelope_lower",
            "log_envelope_upper",
        ],
    );
    for r in reports {
        let (f1, f2) = asymptotic_envelopes(example, r.n)?;
        t.push(vec![
            json!(r.t),
            json!(r.n),
            big(&r.lower),
            big(&r.actual),
            big(&r.upper),
            json!(r.holds),
            json!(r.log_lower()),
            json!(r.log_actual()),
            json!(r.log_upper()),
            json!(f1),
            json!(f2),
        ]);
    }
    Ok(t)
}

fn violations(reports: &[BoundReport], example: u8) -> Vec<String> {
    reports
        .iter()
        .filter(|r| !r.holds)
        .map(|r| format!("example {example}: bounds fail at t = {}, n = {}", r.t, r.n))
        .collect()
}

fn witness_json(system: &CombinedSystem, n_max: u64) -> Result<Value> {
    let alphabet = system.graphs()[0].alphabet();
    Ok(match system.find_inadmissible_subword(n_max)? {
        Some(w) => json!({
            "searched_up_to": n_max,
            "word": w.word.render(alphabet),
            "subword": w.subword.render(alphabet),
            "start": w.start,
        }),
        None => json!({ "searched_up_to": n_max, "word": null }),
    })
}

/// Combined counts, reference bounds and envelopes, and the subword witness
/// for two or more graphs under a schedule.
pub fn cmd_combine(config: &RunConfig) -> Result<ExperimentOutput> {
    let graphs = load_graphs(config)?;
    let t_max = config.t_max.unwrap_or(6);
    let (schedule, is_paper) = load_schedule(config.schedule.as_deref(), t_max)?;
    let example = if is_paper {
        reference_example(&graphs)
    } else {
        None
    };
    let system = CombinedSystem::new(graphs, schedule)?;
    let covered = system.schedule().covered();

    let lengths: Vec<u64> = match config.n_max {
        Some(n) => (1..=n).collect(),
        None => system.schedule().boundaries()[1..].to_vec(),
    };
    let mut counts = Table::new("counts", &["n", "stint", "active_graph", "omega"]);
    for (n, omega) in system.counts_at(&lengths)? {
        let active = if n >= 2 {
            json!(graph_label(&system.graphs()[system.active_graph(n)?]))
        } else {
            Value::Null
        };
        counts.push(vec![
            json!(n),
            json!(system.schedule().stint_of(n)?),
            active,
            big(&omega),
        ]);
    }
    let mut tables = vec![counts];

    let mut out_violations = Vec::new();
    let bounds = match example {
        Some(ex) => {
            let reports = bound_series(ex, t_max)?;
            out_violations = violations(&reports, ex);
            tables.push(bounds_table("bounds", ex, &reports)?);
            json!({
                "example": ex,
                "reports": reports.len(),
                "all_hold": out_violations.is_empty(),
            })
        }
        None => Value::Null,
    };

    let summary = json!({
        "graphs": system.graphs().iter().map(graph_label).collect::<Vec<_>>(),
        "schedule": if is_paper { json!({ "paper": t_max }) } else { json!("file") },
        "boundaries": system.schedule().boundaries(),
        "covered": covered,
        "bounds": bounds,
        "witness": witness_json(&system, covered.min(6))?,
    });
    let mut output = ExperimentOutput::new(config, summary, tables);
    output.violations = out_violations;
    Ok(output)
}

fn scan_summary(report: &ScanReport) -> Value {
    json!({
        "k_max": report.k_max,
        "candidates": report.candidates(),
        "strata": report.strata.iter().map(|s| {
            let mixed = |strong: bool| report
                .mixed(strong)
                .filter(|r| r.k == s.k)
                .count();
            json!({
                "k": s.k,
                "candidates": s.candidates,
                "weakly_connected": s.connected,
                "strongly_connected": s.strongly_connected,
                "mixed_strongly_connected": mixed(true),
                "mixed_not_strongly_connected": mixed(false),
            })
        }).collect::<Vec<_>>(),
        "mixed_strongly_connected": report.mixed(true).count(),
        "mixed_not_strongly_connected": report.mixed(false).count(),
        "failures": report.failures,
    })
}

fn scan_table(report: &ScanReport) -> Table {
    let mut t = Table::new(
        "scan",
        &[
            "mask",
            "k",
            "strongly_connected",
            "kind",
            "rho",
            "poly_degree",
        ],
    );
    for r in &report.rows {
        t.push(vec![
            json!(r.mask),
            json!(r.k),
            json!(r.strongly_connected),
            json!(r.kind.to_string()),
            json!(format!("{:.12}", r.rho)),
            json!(r.poly_degree),
        ]);
    }
    t
}

/// Growth classification of every connected digraph with `k <= k_max`.
pub fn cmd_scan(config: &RunConfig) -> Result<ExperimentOutput> {
    let report = conjecture_scan(config.k_max.unwrap_or(3))?;
    Ok(ExperimentOutput::new(
        config,
        scan_summary(&report),
        vec![scan_table(&report)],
    ))
}

fn fit_table(fit: &FitReport) -> Table {
    let mut t = Table::new(
        "fit",
        &["model", "h", "g", "mu", "nu", "e", "residual", "selected"],
    );
    for c in &fit.candidates {
        t.push(vec![
            json!(c.model.to_string()),
            json!(c.h),
            json!(c.g),
            json!(c.mu),
            json!(c.nu),
            json!(c.e),
            json!(c.residual),
            json!(c.model == fit.best.model),
        ]);
    }
    t
}

/// Sample lengths for fitting a combined system: `g_{2t}` for the reference
/// schedule, every boundary otherwise.
fn combined_samples(schedule: &Schedule, is_paper: bool) -> Vec<u64> {
    let b = &schedule.boundaries()[1..];
    if is_paper {
        b.iter().skip(1).step_by(2).copied().collect()
    } else {
        b.to_vec()
    }
}

/// Scaling-law fit of `H(n)` for one graph (`n = 1..=n_max`) or for a
/// combined system (at schedule boundaries).
pub fn cmd_entropy_fit(config: &RunConfig) -> Result<ExperimentOutput> {
    let graphs = load_graphs(config)?;
    let (source, counts) = match graphs.len() {
        0 => return Err(Error::InvalidArgument("entropy-fit needs --graph".into())),
        1 => {
            let g = &graphs[0];
            let series = count_series(g, config.n_max.unwrap_or(400))?;
            (json!(graph_label(g)), series.totals())
        }
        _ => {
            let t_max = config.t_max.unwrap_or(12);
            let (schedule, is_paper) = load_schedule(config.schedule.as_deref(), t_max)?;
            let lengths = combined_samples(&schedule, is_paper);
            let system = CombinedSystem::new(graphs, schedule)?;
            let labels: Vec<String> = system.graphs().iter().map(graph_label).collect();
            (json!(labels), system.counts_at(&lengths)?)
        }
    };
    let entropy = entropy_series(counts);
    let fit = fit_scaling(&entropy)?;
    let summary = json!({
        "source": source,
        "fit": fit,
        "report": fit.to_text(),
        "h_top_estimate": h_top_json(&entropy, config.window())?,
        "excluded_lengths": entropy.excluded,
    });
    Ok(ExperimentOutput::new(
        config,
        summary,
        vec![entropy_table(&entropy), fit_table(&fit)],
    ))
}

/// Reference experiments on the built-in presets: characteristic
/// polynomials, recurrences, growth classes, both combined examples with
/// their bounds, the stretched-exponential ratio and fit, the subword
/// witness and the `k <= 3` scan.
pub fn cmd_paper_examples(config: &RunConfig) -> Result<ExperimentOutput> {
    let window = config.window();
    let mut graphs_table = Table::new(
        "graphs",
        &[
            "graph",
            "char_poly",
            "kind",
            "rho",
            "poly_degree",
            "recurrence_holds_to_200",
            "h_top_estimate_n60",
        ],
    );
    for g in [
        presets::g1(),
        presets::g2(),
        presets::complete(3),
        presets::two_cycle(),
        presets::clique_chain(),
    ] {
        let form = closed_form(&g)?;
        let class = classify_closed_form(&form);
        let entropy = entropy_series(count_series(&g, 60)?.totals());
        graphs_table.push(vec![
            json!(graph_label(&g)),
            json!(char_poly(&g).to_string()),
            json!(class.kind.to_string()),
            json!(class.rho),
            json!(class.poly_degree),
            json!(verify_recurrence(&g, 200)?.holds),
            json!(topological_entropy_estimate_window(&entropy, window)?),
        ]);
    }

    let t1 = config.t_max.unwrap_or(6);
    let t2 = config.t_max.unwrap_or(8);
    let ex1 = bound_series(1, t1)?;
    let ex2 = bound_series(2, t2)?;
    let mut all_violations = violations(&ex1, 1);
    all_violations.extend(violations(&ex2, 2));

    let t_stretch = config.t_max.unwrap_or(12);
    let system = CombinedSystem::example_two(t_stretch)?;
    let lengths = combined_samples(system.schedule(), true);
    let samples = system.counts_at(&lengths)?;
    let mut stretched = Table::new("stretched", &["t", "n", "omega", "log3_omega_over_sqrt_n"]);
    for (t, (n, omega)) in samples.iter().enumerate() {
        let ratio = ln_big(omega) / 3f64.ln() / (*n as f64).sqrt();
        stretched.push(vec![json!(t + 1), json!(n), big(omega), json!(ratio)]);
    }
    let fit = fit_scaling(&entropy_series(samples))?;

    let ex1_system = CombinedSystem::example_one(1)?;
    let equal = CombinedSystem::new(vec![presets::g1(), presets::g1()], Schedule::paper(1)?)?;
    let scan = conjecture_scan(3)?;

    let summary = json!({
        "example_one": {
            "omega_16": ex1_system.count(16)?.to_string(),
            "t_max": t1,
            "all_bounds_hold": ex1.iter().all(|r| r.holds),
        },
        "example_two": {
            "omega_16": CombinedSystem::example_two(1)?.count(16)?.to_string(),
            "t_max": t2,
            "all_bounds_hold": ex2.iter().all(|r| r.holds),
        },
        "stretched_fit": fit,
        "witness_example_one": witness_json(&ex1_system, 5)?,
        "witness_equal_graphs": witness_json(&equal, 5)?,
        "scan": scan_summary(&scan),
    });
    let tables = vec![
        graphs_table,
        bounds_table("bounds_example_one", 1, &ex1)?,
        bounds_table("bounds_example_two", 2, &ex2)?,
        stretched,
        fit_table(&fit),
    ];
    let mut output = ExperimentOutput::new(config, summary, tables);
    output.violations = all_violations;
    Ok(output)
}
