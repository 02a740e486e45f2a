//! Curves for the four worked examples. Columns named after a scheme are
//! evaluated from computed pair values; `printed_*` columns are the closed
//! forms as originally published, kept wherever they differ.

use serde::Serialize;

use entmono_core::measures::{
    coa_two_qubit, concurrence_pure, scren_pure, screnoa_pure, screnoa_two_qubit, RoofConfig,
};
use entmono_core::monogamy::{admissible_split, coeff_base, lower_bound, powered, upper_bound};
use entmono_core::states::{pair_reductions, state_to_json};
use entmono_core::{BoundScheme, BoundSpec, MeasureKind, PairValues, QuantumState};

use crate::analyze::example_state;
use crate::output::{csv_bytes, emit, fmt_f64, json_bytes, sha256_hex, Grid, Meta};
use crate::{CliError, CliResult, FigureArgs, Format};

struct Table {
    variable: &'static str,
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct Body<'a> {
    example: u8,
    gamma: f64,
    pair_values: &'a [f64],
    cut_value: f64,
    columns: &'a [String],
    rows: &'a [Vec<f64>],
}

fn default_grid(example: u8) -> Grid {
    match example {
        1 => Grid::new(0.0, 2.0, 0.01),
        2 => Grid::new(1.0, 4.0, 0.01),
        _ => Grid::new(0.0, 1.0, 0.01),
    }
}

fn check_range(example: u8, g: &Grid) -> CliResult<()> {
    let (lo, hi) = match example {
        1 => (0.0, 2.0),
        2 => (1.0, f64::INFINITY),
        _ => (0.0, 1.0),
    };
    if g.start < lo - 1e-12 || g.stop > hi + 1e-12 {
        return Err(CliError::input(format!(
            "grid {g} leaves the exponent range [{lo}, {hi}] of example {example}"
        )));
    }
    Ok(())
}

fn ub(pv: &PairValues, s: BoundScheme, e: f64, g: f64) -> CliResult<f64> {
    Ok(upper_bound(pv, &BoundSpec::new(s, e, g))?)
}

fn lb(pv: &PairValues, s: BoundScheme, e: f64, g: f64) -> CliResult<f64> {
    Ok(lower_bound(pv, &BoundSpec::new(s, e, g))?)
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub fn run(args: &FigureArgs) -> CliResult<()> {
    let ex = args.example;
    let grid = args.grid.unwrap_or_else(|| default_grid(ex));
    check_range(ex, &grid)?;
    let state = example_state(ex)?;
    let hash = sha256_hex(state_to_json(&QuantumState::Pure(state.clone()))?.as_bytes());
    let red = pair_reductions(&QuantumState::Pure(state.clone()), 0)?;
    let pts = grid.points();

    let (gamma, cut, raw_pairs) = match ex {
        1 => (
            2.0,
            concurrence_pure(&state, &[0])?,
            red.pairs
                .iter()
                .map(coa_two_qubit)
                .collect::<Result<Vec<_>, _>>()?,
        ),
        2 => {
            let roof = RoofConfig::default().with_seed(args.common.seed);
            (
                1.0,
                scren_pure(&state, &[0])?,
                red.pairs
                    .iter()
                    .map(|r| MeasureKind::Scren.pair_value(r, Some(&roof)))
                    .collect::<Result<Vec<_>, _>>()?,
            )
        }
        _ => (
            1.0,
            screnoa_pure(&state, &[0])?,
            red.pairs
                .iter()
                .map(screnoa_two_qubit)
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    let pv = PairValues::sorted_descending(raw_pairs.clone())?;
    let m_adm = admissible_split(&pv, gamma).unwrap_or(-1);
    let split = |m| BoundScheme::SplitUpper { m: Some(m) };

    let mut table = match ex {
        1 => Table {
            variable: "beta",
            columns: names(&[
                "exact",
                "hamming_upper",
                "split_upper_m1",
                "split_upper_admissible",
                "printed_hamming_upper",
                "printed_split_upper",
            ]),
            rows: Vec::new(),
        },
        2 => Table {
            variable: "alpha",
            columns: names(&[
                "exact",
                "hamming_lower",
                "ratio_hamming_lower",
                "printed_exact",
                "printed_hamming_lower",
                "printed_ratio_hamming_lower",
            ]),
            rows: Vec::new(),
        },
        3 => Table {
            variable: "beta",
            columns: names(&[
                "exact",
                "hamming_upper",
                "ratio_hamming_upper",
                "printed_hamming_upper",
                "printed_ratio_hamming_upper",
            ]),
            rows: Vec::new(),
        },
        _ => Table {
            variable: "beta",
            columns: names(&[
                "exact",
                "hamming_upper",
                "geometric_upper",
                "split_upper_m1",
                "split_upper_admissible",
                "ratio_geometric_upper",
                "printed_hamming_upper",
                "printed_split_upper",
                "printed_ratio_geometric_upper",
            ]),
            rows: Vec::new(),
        },
    };

    for &e in &pts {
        let exact = powered(cut, e);
        let row = match ex {
            1 => {
                let x = coeff_base(e, 2.0);
                let h = 0.5f64.powf(e);
                vec![
                    exact,
                    ub(&pv, BoundScheme::HammingUpper, e, gamma)?,
                    ub(&pv, split(1), e, gamma)?,
                    ub(&pv, split(m_adm), e, gamma)?,
                    (x * x + 2.0) * h,
                    ((e / 2.0 + 1.0).exp2() - 1.0) * h,
                ]
            }
            2 => {
                let q = (8.0f64 / 9.0).powf(e);
                vec![
                    exact,
                    lb(&pv, BoundScheme::HammingLower, e, gamma)?,
                    lb(&pv, BoundScheme::RatioHammingLower, e, gamma)?,
                    4f64.powf(e),
                    q * e.exp2(),
                    (1.0 + e) * q,
                ]
            }
            3 => {
                let q = 0.25f64.powf(e);
                vec![
                    exact,
                    ub(&pv, BoundScheme::HammingUpper, e, gamma)?,
                    ub(&pv, BoundScheme::RatioHammingUpper, e, gamma)?,
                    (e.exp2() + 1.0) * q,
                    (2.0 + e) * q,
                ]
            }
            _ => {
                let q = 0.25f64.powf(e);
                let x = e.exp2() - 1.0;
                vec![
                    exact,
                    ub(&pv, BoundScheme::HammingUpper, e, gamma)?,
                    ub(&pv, BoundScheme::GeometricUpper, e, gamma)?,
                    ub(&pv, split(1), e, gamma)?,
                    ub(&pv, split(m_adm), e, gamma)?,
                    ub(&pv, BoundScheme::RatioGeometricUpper, e, gamma)?,
                    (2.0 + x * x) * q,
                    ((e + 1.0).exp2() - 1.0) * q,
                    (2.0 + e * e) * q,
                ]
            }
        };
        let mut full = vec![e];
        full.extend(row);
        table.rows.push(full);
    }
    let mut columns = vec![table.variable.to_string()];
    columns.extend(table.columns);

    let meta = Meta::new("figure", args.common.seed, grid.to_string(), hash);
    let bytes = match args.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|r| r.iter().map(|&v| fmt_f64(v)).collect())
                .collect();
            csv_bytes(&meta, &columns, &rows)?
        }
        Format::Json => json_bytes(
            &meta,
            &Body {
                example: ex,
                gamma,
                pair_values: &raw_pairs,
                cut_value: cut,
                columns: &columns,
                rows: &table.rows,
            },
        )?,
    };
    emit(args.common.out.as_deref(), &bytes)
}
