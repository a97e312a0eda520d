//! Argument definitions and command dispatch.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use dsw_core::viz::{render_matrix_paths, render_point_to_point, render_segmented, ColorRole, Overlay, RenderSpec};
use dsw_core::{fixtures, CostFunction, MergeCriterion, Series, ShiftDefinition, ToleranceSpec};

use crate::document::{compare, CompareOptions, Comparison};
use crate::ingest::{ingest, Format};
use crate::verify::{self, VerifyOptions};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "dsw",
    version,
    about = "Dynamic time warping with simplified, readable warping paths"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare two series and print the comparison document as JSON.
    Compare(CompareArgs),
    /// Run the seeded oracle and bound suites.
    Verify(VerifyArgs),
    /// Write the demonstration fixtures as UCR-style TSV files.
    Fixtures(FixturesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Local,
    Global,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShiftArg {
    Closest,
    Start,
    End,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Input files (`-` for standard input). Series from all files are
    /// pooled in order.
    #[arg(conflicts_with = "fixture")]
    pub inputs: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// 1-based positions of the two series in the pooled input.
    #[arg(long, value_delimiter = ',', default_values_t = [1, 2])]
    pub pair: Vec<usize>,
    /// Use a generated demonstration fixture instead of input files.
    #[arg(long)]
    pub fixture: Option<String>,
    /// Seed for fixture generation.
    #[arg(long, default_value_t = fixtures::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 2.0)]
    pub cost_lambda: f64,
    #[arg(long, default_value_t = 2.0)]
    pub cost_p: f64,
    #[arg(long, default_value_t = 0.2)]
    pub gamma_abs: f64,
    #[arg(long, default_value_t = 0.05)]
    pub gamma_rel: f64,
    #[arg(long, value_enum, default_value_t = CriterionArg::Local)]
    pub merge_criterion: CriterionArg,
    #[arg(long, value_enum, default_value_t = ShiftArg::Closest)]
    pub shift_def: ShiftArg,
    /// Draw every n-th connector in the point-to-point view.
    #[arg(long, default_value_t = 1)]
    pub stride: usize,
    /// Write segmented, point-to-point and matrix SVGs into this directory.
    #[arg(long)]
    pub render: Option<PathBuf>,
    /// Write the JSON document here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 500)]
    pub oracle_cases: usize,
    #[arg(long, default_value_t = 1000)]
    pub bound_cases: usize,
    #[arg(long, default_value_t = 25)]
    pub raster_limit: usize,
    /// Invert the tolerance criterion; the bound suite is then expected to fail.
    #[arg(long)]
    pub inject_fault: bool,
}

#[derive(Debug, Args)]
pub struct FixturesArgs {
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = fixtures::DEFAULT_SEED)]
    pub seed: u64,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Compare(args) => cmd_compare(&args, out),
        Command::Verify(args) => cmd_verify(&args, out),
        Command::Fixtures(args) => cmd_fixtures(&args, out),
    }
}

fn select_pair(args: &CompareArgs) -> Result<(Series, Series), CliError> {
    if let Some(name) = &args.fixture {
        let f = fixtures::by_name(name, args.seed).ok_or_else(|| {
            let names: Vec<&str> = fixtures::all().iter().map(|f| f.name).collect();
            CliError::Input(format!("unknown fixture {name:?}; available: {}", names.join(", ")))
        })?;
        return Ok((f.s1, f.s2));
    }
    if args.pair.len() != 2 {
        return Err(CliError::Input(format!(
            "--pair needs two positions, got {}",
            args.pair.len()
        )));
    }
    if args.inputs.is_empty() {
        return Err(CliError::Input("no input files and no --fixture given".into()));
    }
    let mut pool = Vec::new();
    for path in &args.inputs {
        pool.extend(ingest(path, args.format)?);
    }
    let pick = |k: usize| {
        k.checked_sub(1)
            .and_then(|k| pool.get(k))
            .cloned()
            .ok_or_else(|| CliError::Input(format!("series {k} requested, input has {}", pool.len())))
    };
    Ok((pick(args.pair[0])?, pick(args.pair[1])?))
}

pub fn compare_options(args: &CompareArgs) -> Result<CompareOptions, CliError> {
    Ok(CompareOptions {
        cost: CostFunction::new(args.cost_lambda, args.cost_p)?,
        tolerance: ToleranceSpec::new(args.gamma_abs, args.gamma_rel)?,
        criterion: match args.merge_criterion {
            CriterionArg::Local => MergeCriterion::Local,
            CriterionArg::Global => MergeCriterion::Global,
        },
        shift: match args.shift_def {
            ShiftArg::Closest => ShiftDefinition::Closest,
            ShiftArg::Start => ShiftDefinition::Start,
            ShiftArg::End => ShiftDefinition::End,
        },
    })
}

/// The three SVG views of a comparison, keyed by file name.
pub fn render_all(
    s1: &Series,
    s2: &Series,
    cmp: &Comparison,
    stride: usize,
) -> Result<Vec<(&'static str, String)>, CliError> {
    let spec = RenderSpec::default().with_stride(stride)?;
    let res = &cmp.result;
    let simplified = res.simplified();
    let segmented = render_segmented(
        s1,
        s2,
        simplified,
        &cmp.report.segments,
        cmp.report.band.as_ref(),
        &spec,
    )?;
    let p2p = render_point_to_point(s1, s2, &res.dtw.path, &spec)?;
    let overlays = [
        Overlay::path(&res.dtw.path, ColorRole::Optimal),
        Overlay::key_points(simplified, ColorRole::Simplified),
    ];
    let matrix = render_matrix_paths(&res.dtw.cost_matrix, &overlays, &spec)?;
    Ok(vec![
        ("segmented.svg", segmented),
        ("point-to-point.svg", p2p),
        ("matrix.svg", matrix),
    ])
}

pub fn document_json(cmp: &Comparison) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(&cmp.document)
        .map_err(|e| CliError::Invariant(format!("document serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn cmd_compare(args: &CompareArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.stride == 0 {
        return Err(CliError::Input("--stride must be at least 1".into()));
    }
    let (s1, s2) = select_pair(args)?;
    let opts = compare_options(args)?;
    let cmp = compare(&s1, &s2, &opts)?;
    if let Some(dir) = &args.render {
        if s1.is_univariate() && s2.is_univariate() {
            fs::create_dir_all(dir)?;
            for (name, svg) in render_all(&s1, &s2, &cmp, args.stride)? {
                write_file(&dir.join(name), &svg)?;
            }
        }
    }
    let json = document_json(&cmp)?;
    match &args.output {
        Some(path) => write_file(path, &json),
        None => Ok(out.write_all(json.as_bytes())?),
    }
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let outcomes = verify::run(&VerifyOptions {
        seed: args.seed,
        oracle_cases: args.oracle_cases,
        bound_cases: args.bound_cases,
        raster_limit: args.raster_limit,
        inject_fault: args.inject_fault,
    });
    for o in &outcomes {
        writeln!(out, "{}", o.summary())?;
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed()).map(|o| o.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Invariant(format!("failing suites: {}", failed.join(", "))))
    }
}

fn tsv_row(s: &Series) -> String {
    let mut row = s.name().unwrap_or("series").to_string();
    for v in s.as_slice() {
        row.push('\t');
        row.push_str(&v.to_string());
    }
    row.push('\n');
    row
}

fn cmd_fixtures(args: &FixturesArgs, out: &mut dyn Write) -> Result<(), CliError> {
    fs::create_dir_all(&args.out)?;
    for f in fixtures::all_with_seed(args.seed) {
        let path = args.out.join(format!("{}.tsv", f.name));
        write_file(&path, &(tsv_row(&f.s1) + &tsv_row(&f.s2)))?;
        writeln!(out, "{}", path.display())?;
    }
    Ok(())
}

/// JSON document and all three views for a demonstration fixture under the
/// default `compare` flags, as `(file name, contents)` pairs.
pub fn fixture_outputs(name: &str) -> Result<Vec<(String, String)>, CliError> {
    let cli = Cli::try_parse_from(["dsw", "compare", "--fixture", name]).map_err(|e| CliError::Input(e.to_string()))?;
    let Command::Compare(args) = cli.command else {
        unreachable!("parsed a compare command")
    };
    let (s1, s2) = select_pair(&args)?;
    let cmp = compare(&s1, &s2, &compare_options(&args)?)?;
    let mut out = vec![(format!("{name}.json"), document_json(&cmp)?)];
    for (view, svg) in render_all(&s1, &s2, &cmp, args.stride)? {
        out.push((format!("{name}.{view}"), svg));
    }
    Ok(out)
}
