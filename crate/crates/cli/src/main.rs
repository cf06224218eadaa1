//! Batch front-end for the `fcadepth` library: turn raw data into formal
//! contexts, compute object depths, and run property checks.
//!
//! Exit codes: `0` success (all requested checks hold or their premise is
//! not met), `1` at least one check failed, `2` input or usage error,
//! `3` no failure but at least one check was inconclusive because a
//! combinatorial cap was exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand};
use fcadepth::{
    all_extents_capped, check_c_p8_membership, check_order_basics, check_p10, check_p2, check_p9,
    check_quasiconcavity, check_starshaped, check_strict_quasiconcavity, consistency_report,
    context_from_cxt, context_from_json, context_to_cxt, context_to_json,
    default_consistency_final_bound, default_consistency_noise, depth_map_to_json,
    depth_map_to_tsv, detect_p8_blocked, measure_kind_from_json, points_from_json,
    posets_from_json, rational_str, sample_from_json, scale_halfspaces, scale_posets_with,
    scale_table, simulate_consistency, spec_from_json, table_from_csv_path, write_cxt_file,
    DepthFunctionHandle, DiscreteMeasure, FcaError, FormalContext, PosetScaleOptions,
    PropertyReport, QuasiMode, Sample, Verdict, DEFAULT_EXTENT_CAP,
};

#[derive(Parser)]
#[command(
    name = "fcadepth",
    version,
    about = "Scale tabular data into formal contexts, compute depth functions, run property checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a formal context from raw data (CSV table, posets, or points).
    Scale(ScaleArgs),
    /// Compute a depth function on a context and print the ranked report.
    Depth(DepthArgs),
    /// Run property checks on a depth function over a context.
    Check(CheckArgs),
}

#[derive(Args)]
struct ScaleArgs {
    /// CSV table (first column = row labels); requires --spec.
    #[arg(long, value_name = "FILE")]
    data: Option<PathBuf>,
    /// Scaling specification (JSON) describing how to scale each column.
    #[arg(long, value_name = "FILE")]
    spec: Option<PathBuf>,
    /// JSON file with a family of partial orders over common items.
    #[arg(long, value_name = "FILE")]
    posets: Option<PathBuf>,
    /// Drop the negated attribute block when scaling posets.
    #[arg(long, requires = "posets")]
    no_non_dominance: bool,
    /// JSON file with points and (optionally) directions for halfspace scaling.
    #[arg(long, value_name = "FILE")]
    points: Option<PathBuf>,
    /// Output prefix: writes <prefix>.cxt and <prefix>.json. Without it the
    /// context is printed to stdout in .cxt form.
    #[arg(long, value_name = "PREFIX")]
    out: Option<PathBuf>,
    /// Report the extent-family size only when it does not exceed this cap.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_EXTENT_CAP)]
    cap_extents: usize,
}

#[derive(Args)]
struct DepthArgs {
    /// Context file (.cxt, or .json as written by `scale`).
    #[arg(long, value_name = "FILE")]
    context: PathBuf,
    /// Measure: "uniform" (default) or a JSON weights file.
    #[arg(long, value_name = "uniform|FILE", default_value = "uniform")]
    measure: String,
    /// Empirical sample (JSON list of object labels); replaces --measure.
    #[arg(long, value_name = "FILE")]
    sample: Option<PathBuf>,
    /// Depth function to evaluate.
    #[arg(long, value_name = "tukey|hier-free", default_value = "tukey")]
    depth: String,
    /// Add a decimal column next to the exact rationals.
    #[arg(long)]
    float: bool,
    /// Output file (.json for JSON, anything else for TSV); default stdout TSV.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Context file (.cxt, or .json as written by `scale`).
    #[arg(long, value_name = "FILE")]
    context: PathBuf,
    /// Measure: "uniform" (default) or a JSON weights file.
    #[arg(long, value_name = "uniform|FILE", default_value = "uniform")]
    measure: String,
    /// Empirical sample (JSON list of object labels); used by p9/p10 and,
    /// when given, as the measure for the other checks.
    #[arg(long, value_name = "FILE")]
    sample: Option<PathBuf>,
    /// Depth function the checks are applied to.
    #[arg(long, value_name = "tukey|hier-free", default_value = "tukey")]
    depth: String,
    /// Comma-separated checks: p2, p3, p4, p5, p6, p7, p8, p8-blocked,
    /// c-p8, p9, p10, consistency.
    #[arg(long, value_name = "LIST", required = true, value_delimiter = ',')]
    check: Vec<String>,
    /// Seed for stochastic checks (required by `consistency`).
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Sample sizes for the consistency simulation.
    #[arg(long, value_name = "LIST", value_delimiter = ',', default_values_t = [10usize, 100, 1000, 4000])]
    sizes: Vec<usize>,
    /// Trials per sample size for the consistency simulation.
    #[arg(long, value_name = "N", default_value_t = 50)]
    trials: usize,
    /// Duplicate pair "i,j" (labels or 0-based indices) for p9: one copy of
    /// i is dropped from the sample and the depth of its twin j is compared.
    #[arg(long, value_name = "I,J")]
    dup: Option<String>,
    /// Outlying object (label or 0-based index) for p10.
    #[arg(long, value_name = "OBJECT")]
    outlier: Option<String>,
    /// Output file for the JSON report bundle; default stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Scale(args) => cmd_scale(args),
        Command::Depth(args) => cmd_depth(args),
        Command::Check(args) => cmd_check(args),
    }
}

fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_context(path: &Path) -> Result<FormalContext> {
    let text = read_to_string(path)?;
    let parsed = if path.extension().is_some_and(|ext| ext == "json") {
        context_from_json(&text)
    } else {
        context_from_cxt(&text)
    };
    parsed.with_context(|| format!("parsing context {}", path.display()))
}

fn load_measure(
    spec: &str,
    sample: Option<&PathBuf>,
    ctx: &FormalContext,
) -> Result<(DiscreteMeasure, Option<Sample>)> {
    let sample = sample
        .map(|path| {
            sample_from_json(&read_to_string(path)?, ctx)
                .with_context(|| format!("parsing sample {}", path.display()))
        })
        .transpose()?;
    if let Some(sample) = &sample {
        if spec != "uniform" {
            bail!("--measure and --sample are mutually exclusive");
        }
        return Ok((sample.to_measure(), Some(sample.clone())));
    }
    let measure = if spec == "uniform" {
        DiscreteMeasure::uniform(ctx.n_objects())?
    } else {
        let path = Path::new(spec);
        let kind = measure_kind_from_json(&read_to_string(path)?, ctx)
            .with_context(|| format!("parsing measure {}", path.display()))?;
        fcadepth::make_measure(&kind, ctx)?
    };
    Ok((measure, None))
}

/// Resolves an object given either its label or its 0-based index.
fn resolve_object(ctx: &FormalContext, what: &str) -> Result<usize> {
    if let Some(g) = ctx.object_labels().iter().position(|l| l == what) {
        return Ok(g);
    }
    if let Ok(g) = what.parse::<usize>() {
        if g < ctx.n_objects() {
            return Ok(g);
        }
    }
    bail!("unknown object {what:?}");
}

fn cmd_scale(args: ScaleArgs) -> Result<ExitCode> {
    let inputs = [
        args.data.is_some(),
        args.posets.is_some(),
        args.points.is_some(),
    ];
    if inputs.iter().filter(|&&given| given).count() != 1 {
        bail!("exactly one of --data, --posets, --points is required");
    }

    let ctx = if let Some(data) = &args.data {
        let Some(spec_path) = &args.spec else {
            bail!("--data requires --spec");
        };
        let spec = spec_from_json(&read_to_string(spec_path)?)
            .with_context(|| format!("parsing spec {}", spec_path.display()))?;
        let table = table_from_csv_path(data, &spec)?;
        scale_table(&table, &spec)?
    } else if let Some(posets) = &args.posets {
        let input = posets_from_json(&read_to_string(posets)?)
            .with_context(|| format!("parsing posets {}", posets.display()))?;
        let options = PosetScaleOptions {
            poset_labels: input.poset_labels,
            item_names: input.item_names,
            include_non_dominance: !args.no_non_dominance,
        };
        scale_posets_with(input.n_items, &input.posets, &options)?
    } else {
        let path = args.points.as_ref().unwrap();
        let input = points_from_json(&read_to_string(path)?)
            .with_context(|| format!("parsing points {}", path.display()))?;
        let dim = input.points.first().map_or(0, Vec::len);
        let directions = input
            .directions
            .unwrap_or_else(|| fcadepth::axis_directions(dim));
        scale_halfspaces(&input.points, &directions, input.labels.as_deref())?
    };

    let summary = match all_extents_capped(&ctx, args.cap_extents) {
        Ok(family) => format!(
            "objects: {}, attributes: {}, extents: {}",
            ctx.n_objects(),
            ctx.n_attributes(),
            family.len()
        ),
        Err(FcaError::CapExceeded { .. }) => format!(
            "objects: {}, attributes: {}, extents: more than {}",
            ctx.n_objects(),
            ctx.n_attributes(),
            args.cap_extents
        ),
        Err(err) => return Err(err.into()),
    };

    match &args.out {
        Some(prefix) => {
            let cxt_path = prefix.with_extension("cxt");
            let json_path = prefix.with_extension("json");
            write_cxt_file(&ctx, &cxt_path)
                .with_context(|| format!("writing {}", cxt_path.display()))?;
            std::fs::write(&json_path, format!("{:#}\n", context_to_json(&ctx)))
                .with_context(|| format!("writing {}", json_path.display()))?;
            println!("{summary}");
            println!("wrote {} and {}", cxt_path.display(), json_path.display());
        }
        None => {
            eprintln!("{summary}");
            print!("{}", context_to_cxt(&ctx)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_depth(args: DepthArgs) -> Result<ExitCode> {
    let ctx = load_context(&args.context)?;
    let (measure, _) = load_measure(&args.measure, args.sample.as_ref(), &ctx)?;
    let handle = DepthFunctionHandle::by_name(&args.depth)?;
    let depth = handle.depth_map(&ctx, &measure)?;

    match &args.out {
        Some(path) if path.extension().is_some_and(|ext| ext == "json") => {
            let json = depth_map_to_json(&depth, args.float);
            std::fs::write(path, format!("{json:#}\n"))
                .with_context(|| format!("writing {}", path.display()))?;
        }
        Some(path) => {
            std::fs::write(path, depth_map_to_tsv(&depth, args.float))
                .with_context(|| format!("writing {}", path.display()))?;
        }
        None => print!("{}", depth_map_to_tsv(&depth, args.float)),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(args: CheckArgs) -> Result<ExitCode> {
    let ctx = load_context(&args.context)?;
    let (measure, sample) = load_measure(&args.measure, args.sample.as_ref(), &ctx)?;
    let handle = DepthFunctionHandle::by_name(&args.depth)?;

    let mut reports: Vec<PropertyReport> = Vec::new();
    for name in &args.check {
        let report = run_check(name, &args, &ctx, &measure, sample.as_ref(), &handle)?;
        reports.extend(report);
    }

    // Reruns with the same inputs and seed must be byte-identical, so the
    // wall-clock field is normalised away.
    for report in &mut reports {
        report.runtime_ms = 0;
    }

    let bundle = serde_json::to_value(&reports)?;
    match &args.out {
        Some(path) => std::fs::write(path, format!("{bundle:#}\n"))
            .with_context(|| format!("writing {}", path.display()))?,
        None => println!("{bundle:#}"),
    }

    let any_fails = reports.iter().any(|r| r.verdict == Verdict::Fails);
    let any_capped = reports
        .iter()
        .any(|r| r.verdict == Verdict::InconclusiveCap);
    Ok(ExitCode::from(if any_fails {
        1
    } else if any_capped {
        3
    } else {
        0
    }))
}

/// Runs one named check, converting cap overruns into inconclusive reports
/// (missing inputs and malformed premises remain hard errors).
fn run_check(
    name: &str,
    args: &CheckArgs,
    ctx: &FormalContext,
    measure: &DiscreteMeasure,
    sample: Option<&Sample>,
    handle: &DepthFunctionHandle,
) -> Result<Vec<PropertyReport>> {
    let capped = |label: &str, err: FcaError| -> Result<Vec<PropertyReport>> {
        if matches!(err, FcaError::CapExceeded { .. }) {
            Ok(vec![
                PropertyReport::new(label, Verdict::InconclusiveCap).with_note(err.to_string())
            ])
        } else {
            Err(err.into())
        }
    };

    match name {
        "p2" => Ok(vec![check_p2(ctx, measure, handle)?]),
        "p3" | "p4" | "p5" => {
            let index = match name {
                "p3" => 0,
                "p4" => 1,
                _ => 2,
            };
            let mut basics = check_order_basics(ctx, measure, handle)?;
            Ok(vec![basics.swap_remove(index)])
        }
        "p6" => match check_starshaped(ctx, measure, handle) {
            Ok(report) => Ok(vec![report]),
            Err(err) => capped("P6", err),
        },
        "p7" => match check_quasiconcavity(ctx, measure, handle, QuasiMode::Both) {
            Ok((report, _)) => Ok(vec![report]),
            Err(err) => capped("P7", err),
        },
        "p8" => match check_strict_quasiconcavity(ctx, measure, handle) {
            Ok(report) => Ok(vec![report]),
            Err(err) => capped("P8", err),
        },
        "p8-blocked" => match detect_p8_blocked(ctx) {
            Ok(report) => Ok(vec![report]),
            Err(err) => capped("C_notP8", err),
        },
        "c-p8" => match check_c_p8_membership(ctx, measure) {
            Ok(report) => Ok(vec![report]),
            Err(err) => capped("C_P8", err),
        },
        "p9" => {
            let Some(sample) = sample else {
                bail!("check p9 requires --sample");
            };
            let Some(dup) = &args.dup else {
                bail!("check p9 requires --dup i,j");
            };
            let Some((i, j)) = dup.split_once(',') else {
                bail!("--dup expects two objects separated by a comma");
            };
            let pair = (
                resolve_object(ctx, i.trim())?,
                resolve_object(ctx, j.trim())?,
            );
            Ok(vec![check_p9(ctx, sample, pair, handle)?])
        }
        "p10" => {
            let Some(sample) = sample else {
                bail!("check p10 requires --sample");
            };
            let Some(outlier) = &args.outlier else {
                bail!("check p10 requires --outlier");
            };
            let outlier = resolve_object(ctx, outlier.trim())?;
            Ok(vec![check_p10(ctx, sample, outlier, handle)?])
        }
        "consistency" => {
            let Some(seed) = args.seed else {
                bail!("check consistency requires --seed");
            };
            if args.depth != "tukey" {
                bail!("the consistency check is defined for --depth tukey");
            }
            let table = simulate_consistency(ctx, measure, &args.sizes, args.trials, seed)?;
            let mut report = consistency_report(
                &table,
                &default_consistency_noise(),
                &default_consistency_final_bound(),
            );
            if report.witness.is_none() {
                report.witness = Some(serde_json::json!({
                    "rows": table
                        .rows
                        .iter()
                        .map(|row| {
                            serde_json::json!({
                                "n": row.n,
                                "mean": rational_str(&row.mean),
                                "median": rational_str(&row.median),
                                "max": rational_str(&row.max),
                            })
                        })
                        .collect::<Vec<_>>(),
                    "seed": table.seed,
                    "trials": table.trials,
                }));
            }
            Ok(vec![report])
        }
        other => bail!(
            "unknown check {other:?} (known: p2, p3, p4, p5, p6, p7, p8, p8-blocked, c-p8, \
             p9, p10, consistency)"
        ),
    }
}
