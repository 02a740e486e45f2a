use serde::Serialize;

use entmono_core::measures::RoofConfig;
use entmono_core::monogamy::{verdict, BoundReport, VerdictOptions};
use entmono_core::states::{ou_state, state_from_json, state_to_json, w_state};
use entmono_core::{BoundScheme, MultipartiteState, QuantumState};

use crate::output::{csv_bytes, emit, fmt_f64, json_bytes, sha256_hex, Meta};
use crate::{AnalyzeArgs, CliError, CliResult, Format, InputArgs};

/// Built-in state for an example number.
pub fn example_state(n: u8) -> CliResult<MultipartiteState> {
    Ok(match n {
        2 => ou_state(),
        1 | 3 | 4 => w_state(4)?,
        _ => return Err(CliError::input(format!("example {n} is not in 1..=4"))),
    })
}

/// The state and the SHA-256 of the bytes it came from.
pub fn load_input(input: &InputArgs) -> CliResult<(QuantumState, String)> {
    if let Some(path) = &input.state {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|_| CliError::input(format!("{} is not UTF-8", path.display())))?;
        Ok((state_from_json(&text)?, sha256_hex(&bytes)))
    } else {
        let n = input
            .example
            .ok_or_else(|| CliError::input("one of --state or --example is required"))?;
        let s = QuantumState::Pure(example_state(n)?);
        let hash = sha256_hex(state_to_json(&s)?.as_bytes());
        Ok((s, hash))
    }
}

#[derive(Serialize)]
struct Body<'a> {
    measure: &'a str,
    focus: usize,
    unsorted: bool,
    reports: &'a [BoundReport],
}

pub fn run(args: &AnalyzeArgs) -> CliResult<()> {
    let (state, hash) = load_input(&args.input)?;
    let pure = state.as_pure().ok_or_else(|| {
        CliError::input("analyze needs a pure state: the A|rest cut is evaluated on |psi>")
    })?;
    let kind = args.measure.kind();
    let gamma = args.gamma.or(kind.default_gamma());
    let (exponents, grid_label) = if let Some(g) = &args.grid {
        (g.points(), g.to_string())
    } else if let Some(e) = args.alpha.or(args.beta) {
        (vec![e], format!("{e}"))
    } else {
        let g = gamma
            .ok_or_else(|| CliError::input(format!("measure '{}' needs --gamma", kind.label())))?;
        (vec![g], format!("{g}"))
    };
    let schemes = if kind.is_assistance() {
        BoundScheme::upper_family()
    } else {
        BoundScheme::lower_family()
    };
    let opts = VerdictOptions {
        gamma: args.gamma,
        unsorted: args.unsorted,
        roof: Some(RoofConfig::default().with_seed(args.common.seed)),
    };
    let reports = verdict(pure, args.focus, &kind, &exponents, &schemes, &opts)?;
    let meta = Meta::new("analyze", args.common.seed, grid_label, hash);

    let bytes = match args.format {
        Format::Json => json_bytes(
            &meta,
            &Body {
                measure: kind.label(),
                focus: args.focus,
                unsorted: args.unsorted,
                reports: &reports,
            },
        )?,
        Format::Csv => {
            let header: Vec<String> = [
                "exponent",
                "gamma",
                "lhs",
                "delta_q",
                "perm",
                "scheme",
                "bound",
                "slack",
                "satisfied",
                "applicable",
                "condition",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect();
            let mut rows = Vec::new();
            for r in &reports {
                let perm = r
                    .perm
                    .iter()
                    .map(|&k| r.partners[k].to_string())
                    .collect::<Vec<_>>()
                    .join(";");
                for e in &r.entries {
                    rows.push(vec![
                        fmt_f64(r.exponent),
                        fmt_f64(r.gamma),
                        fmt_f64(r.lhs),
                        fmt_f64(r.delta_q),
                        perm.clone(),
                        e.name.clone(),
                        fmt_f64(e.bound),
                        fmt_f64(e.slack),
                        e.satisfied.to_string(),
                        e.applicable.to_string(),
                        e.condition.clone(),
                    ]);
                }
            }
            csv_bytes(&meta, &header, &rows)?
        }
    };
    emit(args.common.out.as_deref(), &bytes)
}
