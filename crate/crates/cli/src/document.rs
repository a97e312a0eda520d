//! The JSON document written by `dsw compare`.

use dsw_core::metrics::report;
use dsw_core::segmenter::SegmentWarning;
use dsw_core::{
    simplify_with, CostFunction, DswResult, MergeCriterion, Point, Report, SegmentReport, Series, ShiftDefinition,
    ToleranceSpec,
};
use serde::Serialize;

use crate::CliError;

const SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct SeriesInfo {
    pub name: Option<String>,
    pub length: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Inputs {
    pub series: [SeriesInfo; 2],
    pub cost_lambda: f64,
    pub cost_p: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Tolerances {
    pub gamma_abs: f64,
    pub gamma_rel: f64,
    pub delta_abs: f64,
    pub delta_rel: f64,
    pub merge_criterion: MergeCriterion,
    pub shift_definition: ShiftDefinition,
}

#[derive(Debug, Clone, Serialize)]
pub struct DtwSummary {
    pub distance: f64,
    pub cost: f64,
    pub path_length: usize,
    pub corners: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DswSummary {
    pub distance: f64,
    pub cost: f64,
    pub distance_bound: f64,
    pub split_key_points: usize,
    pub key_points: Vec<Point>,
    pub segments: Vec<SegmentReport>,
    pub warnings: Vec<SegmentWarning>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BandSummary {
    pub max_alpha: f64,
    pub max_beta: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonDocument {
    pub inputs: Inputs,
    pub tolerances: Tolerances,
    pub dtw: DtwSummary,
    pub dsw: DswSummary,
    pub band: Option<BandSummary>,
}

/// Everything computed for one pair: the raw result, its report and the
/// document built from both.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub result: DswResult,
    pub report: Report,
    pub document: ComparisonDocument,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CompareOptions {
    pub cost: CostFunction,
    pub tolerance: ToleranceSpec,
    pub criterion: MergeCriterion,
    pub shift: ShiftDefinition,
}

fn info(s: &Series) -> SeriesInfo {
    SeriesInfo {
        name: s.name().map(str::to_string),
        length: s.len(),
    }
}

pub fn compare(s1: &Series, s2: &Series, opts: &CompareOptions) -> Result<Comparison, CliError> {
    let result = simplify_with(s1, s2, &opts.cost, &opts.tolerance, opts.criterion)?;
    let simp = &result.simplification;
    let report = report(&simp.simplified, s1, s2, opts.shift)?;
    let document = ComparisonDocument {
        inputs: Inputs {
            series: [info(s1), info(s2)],
            cost_lambda: opts.cost.lambda(),
            cost_p: opts.cost.p(),
        },
        tolerances: Tolerances {
            gamma_abs: opts.tolerance.gamma_abs,
            gamma_rel: opts.tolerance.gamma_rel,
            delta_abs: simp.params.delta_abs,
            delta_rel: simp.params.delta_rel,
            merge_criterion: opts.criterion,
            shift_definition: opts.shift,
        },
        dtw: DtwSummary {
            distance: result.dtw.distance,
            cost: result.dtw.cost,
            path_length: result.dtw.path.len(),
            corners: result.dtw.path.corner_count(),
        },
        dsw: DswSummary {
            distance: simp.distance,
            cost: simp.cost,
            distance_bound: simp.distance_bound(),
            split_key_points: simp.split.key_points().len(),
            key_points: simp.simplified.key_points().to_vec(),
            segments: report.segments.clone(),
            warnings: simp.simplified.warnings().to_vec(),
        },
        band: report.band.as_ref().map(|b| BandSummary {
            max_alpha: b.max_alpha(),
            max_beta: b.max_beta(),
        }),
    };
    check(&document)?;
    Ok(Comparison {
        result,
        report,
        document,
    })
}

/// Both distance inequalities of a document.
pub fn check(doc: &ComparisonDocument) -> Result<(), CliError> {
    let (opt, simp) = (doc.dtw.distance, doc.dsw.distance);
    let bound = opt * (1.0 + doc.tolerances.gamma_rel) + doc.tolerances.gamma_abs;
    if simp < opt - SLACK {
        return Err(CliError::Invariant(format!(
            "simplified distance {simp} is below the optimal distance {opt}"
        )));
    }
    if simp > bound + SLACK {
        return Err(CliError::Invariant(format!(
            "simplified distance {simp} exceeds the bound {bound}"
        )));
    }
    Ok(())
}
