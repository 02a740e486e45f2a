use rayon::prelude::*;
use serde::Serialize;

use entmono_core::measures::{
    bipartite_concurrence, coa_two_qubit, concurrence_two_qubit, convex_roof, RoofConfig,
    RoofDirection,
};
use entmono_core::states::random_mixed;
use entmono_core::DimList;

use crate::output::{csv_bytes, emit, fmt_f64, json_bytes, sha256_hex, summary_path, Meta};
use crate::{CliResult, Format, OracleArgs};

#[derive(Serialize)]
struct Row {
    sample: u64,
    seed: u64,
    concurrence: f64,
    roof_min: f64,
    deviation_min: f64,
    converged_min: bool,
    coa: f64,
    roof_max: f64,
    deviation_max: f64,
    converged_max: bool,
}

#[derive(Serialize)]
struct Summary {
    samples: u64,
    rank: u64,
    restarts: usize,
    max_deviation_min: f64,
    max_deviation_max: f64,
    max_deviation: f64,
    unconverged: usize,
}

#[derive(Serialize)]
struct JsonBody<'a> {
    rows: &'a [Row],
    summary: &'a Summary,
}

fn sample(i: u64, seed: u64, rank: usize, restarts: usize) -> CliResult<Row> {
    let s = seed ^ i;
    let rho = random_mixed(&DimList::qubits(2), rank, s)?;
    let cfg = RoofConfig {
        restarts,
        seed: s,
        ..RoofConfig::default()
    };
    let c = concurrence_two_qubit(&rho)?;
    let ca = coa_two_qubit(&rho)?;
    let lo = convex_roof(&rho, bipartite_concurrence, &cfg)?;
    let hi = convex_roof(
        &rho,
        bipartite_concurrence,
        &cfg.with_direction(RoofDirection::Max),
    )?;
    Ok(Row {
        sample: i,
        seed: s,
        concurrence: c,
        roof_min: lo.value,
        deviation_min: (c - lo.value).abs(),
        converged_min: lo.converged,
        coa: ca,
        roof_max: hi.value,
        deviation_max: (ca - hi.value).abs(),
        converged_max: hi.converged,
    })
}

pub fn run(args: &OracleArgs) -> CliResult<()> {
    let rank = args.rank as usize;
    let rows: Vec<Row> = (0..args.samples)
        .into_par_iter()
        .map(|i| sample(i, args.common.seed, rank, args.restarts))
        .collect::<CliResult<Vec<_>>>()?;
    let max_min = rows.iter().map(|r| r.deviation_min).fold(0.0, f64::max);
    let max_max = rows.iter().map(|r| r.deviation_max).fold(0.0, f64::max);
    let summary = Summary {
        samples: args.samples,
        rank: args.rank,
        restarts: args.restarts,
        max_deviation_min: max_min,
        max_deviation_max: max_max,
        max_deviation: max_min.max(max_max),
        unconverged: rows
            .iter()
            .filter(|r| !(r.converged_min && r.converged_max))
            .count(),
    };
    let params = format!(
        "samples={};rank={};restarts={}",
        args.samples, args.rank, args.restarts
    );
    let meta = Meta::new(
        "oracle",
        args.common.seed,
        "-".into(),
        sha256_hex(params.as_bytes()),
    );
    let out = args.common.out.as_deref();
    match args.format {
        Format::Json => emit(
            out,
            &json_bytes(
                &meta,
                &JsonBody {
                    rows: &rows,
                    summary: &summary,
                },
            )?,
        ),
        Format::Csv => {
            let header: Vec<String> = [
                "sample",
                "seed",
                "concurrence",
                "roof_min",
                "deviation_min",
                "converged_min",
                "coa",
                "roof_max",
                "deviation_max",
                "converged_max",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect();
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.sample.to_string(),
                        r.seed.to_string(),
                        fmt_f64(r.concurrence),
                        fmt_f64(r.roof_min),
                        fmt_f64(r.deviation_min),
                        r.converged_min.to_string(),
                        fmt_f64(r.coa),
                        fmt_f64(r.roof_max),
                        fmt_f64(r.deviation_max),
                        r.converged_max.to_string(),
                    ]
                })
                .collect();
            emit(out, &csv_bytes(&meta, &header, &body)?)?;
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
