use rayon::prelude::*;
use serde::Serialize;

use entmono_core::monogamy::{verdict_from_values, VerdictInput, VerdictOptions};
use entmono_core::states::haar_random_pure;
use entmono_core::{BoundScheme, DimList, MeasureKind};

use crate::output::{csv_bytes, emit, fmt_f64, json_bytes, sha256_hex, summary_path, Meta};
use crate::{CliError, CliResult, Format, SweepArgs};

const VIOLATION_TOL: f64 = -1e-8;

struct Family {
    name: String,
    kind: MeasureKind,
    scheme: BoundScheme,
}

#[derive(Clone)]
struct Cell {
    /// `None` when no exponent fell in the scheme's range.
    min_slack: Option<f64>,
    applicable: bool,
}

#[derive(Serialize)]
struct FamilySummary {
    family: String,
    evaluated: usize,
    min_slack: Option<f64>,
    mean_slack: Option<f64>,
    condition_satisfied: usize,
    violations_when_applicable: usize,
    violations_total: usize,
}

#[derive(Serialize)]
struct Summary {
    dims: Vec<usize>,
    samples: u64,
    alphas: Vec<f64>,
    betas: Vec<f64>,
    families: Vec<FamilySummary>,
}

#[derive(Serialize)]
struct JsonBody<'a> {
    columns: &'a [String],
    rows: &'a [Vec<String>],
    summary: &'a Summary,
}

fn families() -> Vec<Family> {
    let mut out = Vec::new();
    for scheme in BoundScheme::lower_family() {
        out.push(Family {
            name: scheme.name(),
            kind: MeasureKind::Concurrence,
            scheme,
        });
    }
    for scheme in BoundScheme::upper_family() {
        out.push(Family {
            name: scheme.name(),
            kind: MeasureKind::ConcurrenceOfAssistance,
            scheme,
        });
    }
    out
}

fn evaluate_sample(
    dims: &DimList,
    seed: u64,
    fams: &[Family],
    alphas: &[f64],
    betas: &[f64],
) -> CliResult<Vec<Cell>> {
    let psi = haar_random_pure(dims, seed)?;
    let opts = VerdictOptions {
        roof: None,
        ..VerdictOptions::default()
    };
    let conc = VerdictInput::compute(&psi, 0, &MeasureKind::Concurrence, None)?;
    let coa = VerdictInput::compute(&psi, 0, &MeasureKind::ConcurrenceOfAssistance, None)?;
    let mut cells = Vec::with_capacity(fams.len());
    for f in fams {
        let (input, exps) = if f.kind.is_assistance() {
            (&coa, betas)
        } else {
            (&conc, alphas)
        };
        let reports = verdict_from_values(input, &f.kind, exps, &[f.scheme], &opts)?;
        let entries: Vec<_> = reports.iter().flat_map(|r| r.entries.iter()).collect();
        cells.push(Cell {
            min_slack: entries.iter().map(|e| e.slack).reduce(f64::min),
            applicable: !entries.is_empty() && entries.iter().all(|e| e.applicable),
        });
    }
    Ok(cells)
}

pub fn run(args: &SweepArgs) -> CliResult<()> {
    let dims = DimList::new(args.dims.clone())?;
    if dims.len() < 3 || dims.as_slice().iter().any(|&d| d != 2) {
        return Err(CliError::input(
            "sweep needs at least three qubits (--dims 2,2,2[,...])",
        ));
    }
    let alphas = args.alpha.map_or(vec![2.0, 2.5, 3.0], |a| vec![a]);
    let betas = args.beta.map_or(vec![0.5, 1.0, 1.5, 2.0], |b| vec![b]);
    let fams = families();

    let results: Vec<Vec<Cell>> = (0..args.samples)
        .into_par_iter()
        .map(|i| evaluate_sample(&dims, args.common.seed ^ i, &fams, &alphas, &betas))
        .collect::<CliResult<Vec<_>>>()?;

    let mut columns = vec!["sample".to_string(), "seed".to_string()];
    for f in &fams {
        columns.push(format!("{}_min_slack", f.name));
        columns.push(format!("{}_applicable", f.name));
    }
    let rows: Vec<Vec<String>> = results
        .iter()
        .enumerate()
        .map(|(i, cells)| {
            let mut r = vec![i.to_string(), (args.common.seed ^ i as u64).to_string()];
            for c in cells {
                r.push(c.min_slack.map_or_else(String::new, fmt_f64));
                r.push(c.applicable.to_string());
            }
            r
        })
        .collect();

    let fam_summaries = fams
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let cells: Vec<&Cell> = results.iter().map(|r| &r[k]).collect();
            let slacks: Vec<f64> = cells.iter().filter_map(|c| c.min_slack).collect();
            let violated = |c: &&&Cell| c.min_slack.is_some_and(|s| s < VIOLATION_TOL);
            FamilySummary {
                family: f.name.clone(),
                evaluated: slacks.len(),
                min_slack: slacks.iter().copied().reduce(f64::min),
                mean_slack: (!slacks.is_empty())
                    .then(|| slacks.iter().sum::<f64>() / slacks.len() as f64),
                condition_satisfied: cells.iter().filter(|c| c.applicable).count(),
                violations_when_applicable: cells
                    .iter()
                    .filter(|c| c.applicable)
                    .filter(|c| violated(c))
                    .count(),
                violations_total: cells.iter().filter(|c| violated(c)).count(),
            }
        })
        .collect();
    let summary = Summary {
        dims: args.dims.clone(),
        samples: args.samples,
        alphas: alphas.clone(),
        betas: betas.clone(),
        families: fam_summaries,
    };

    let params = format!(
        "dims={:?};samples={};alphas={:?};betas={:?}",
        args.dims, args.samples, alphas, betas
    );
    let grid = format!(
        "alpha={};beta={}",
        alphas
            .iter()
            .map(f64::to_string)
            .collect::<Vec<_>>()
            .join(","),
        betas
            .iter()
            .map(f64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    );
    let meta = Meta::new(
        "sweep",
        args.common.seed,
        grid,
        sha256_hex(params.as_bytes()),
    );
    let out = args.common.out.as_deref();
    match args.format {
        Format::Json => emit(
            out,
            &json_bytes(
                &meta,
                &JsonBody {
                    columns: &columns,
                    rows: &rows,
                    summary: &summary,
                },
            )?,
        ),
        Format::Csv => {
            emit(out, &csv_bytes(&meta, &columns, &rows)?)?;
            let s = json_bytes(&meta, &summary)?;
            match out {
                Some(p) => emit(Some(&summary_path(p)), &s),
                None => {
                    eprint!("{}", String::from_utf8_lossy(&s));
                    Ok(())
                }
            }
        }
    }
}
