//! Command-line surface for the library: JSON in, JSON out, with
//! deterministic output and machine-readable errors.
//!
//! Exit codes: 0 success, 2 input/schema error, 3 domain error.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use torific::error::TorificError;
use torific::graded::{
    degree_zero_monoid, dual_taut_check, is_loose, is_taut, torific_ideal,
};
use torific::ideal::{
    blowup_charts, ideal_saturation, is_zero_ideal, normalization_threshold, order_subdivision,
    saturation_threshold,
};
use torific::io as tio;
use torific::monoid::{faces, facet_split, prime_height, saturate};
use torific::torify::{quotient_report, torify};
use torific::{corpus, fan};

#[derive(Parser)]
#[command(name = "torific", version, about = "Toric monoid and torification toolkit")]
struct Cli {
    /// Read input from FILE instead of stdin.
    #[arg(long, global = true)]
    r#in: Option<String>,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Balanced,
    Raw,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ThresholdKind {
    Saturation,
    Normalization,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CorpusKind {
    Monoid,
    Ideal,
    ModelAction,
    Fan,
    Spec,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert basis of a constrained monoid (kind: spec).
    Hilbert,
    /// Saturation of a monoid (kind: monoid).
    SaturateMonoid,
    /// Face lattice of a monoid with prime heights (kind: monoid).
    Faces,
    /// Facet split test at the facet with the given normal (kind: monoid).
    Split {
        /// Facet normal as a JSON integer array.
        #[arg(long)]
        normal: String,
    },
    /// Ideal saturation (kind: ideal, payload carries the parent monoid).
    SaturateIdeal,
    /// Saturated blowup charts of an ideal (kind: ideal).
    Blowup,
    /// Order subdivision of the dual cone by an ideal (kind: ideal).
    Subdivision,
    /// Saturation or normalization threshold search (kind: ideal).
    Threshold {
        #[arg(long, value_enum, default_value = "saturation")]
        kind: ThresholdKind,
        #[arg(long, default_value_t = 4)]
        window: usize,
        #[arg(long, default_value_t = 40)]
        cap: usize,
    },
    /// Degree-zero monoid of a grading (kind: grading).
    DegreeZero,
    /// Taut/loose predicates of a grading (kind: grading).
    Taut,
    /// Torific ideal of a grading and multiset (kind: grading with sigma).
    TorificIdeal,
    /// Full torification pipeline for a model action (kind: model_action).
    Torify {
        #[arg(long, value_enum, default_value = "balanced")]
        mode: Mode,
    },
    /// Quotient data for a model action (kind: model_action).
    Quotient {
        #[arg(long, value_enum, default_value = "balanced")]
        mode: Mode,
    },
    /// Barycentric subdivision of a fan (kind: fan).
    FanBarycentric,
    /// Simpleness of a finite group action on a fan (kind: fan_action).
    FanSimple,
    /// Seeded random instance generation; no input document.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "model-action")]
        kind: CorpusKind,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

fn error_code(e: &TorificError) -> &'static str {
    match e {
        TorificError::InvalidInput(_) => "InvalidInput",
        TorificError::DimensionMismatch(_) => "DimensionMismatch",
        TorificError::NotPointed(_) => "NotPointed",
        TorificError::NotSharp(_) => "NotSharp",
        TorificError::NotAFace(_) => "NotAFace",
        TorificError::NotAFacet(_) => "NotAFacet",
        TorificError::NotMember(_) => "NotMember",
        TorificError::UndecidedMembership(_) => "UndecidedMembership",
        TorificError::SearchExhausted(_) => "SearchExhausted",
        TorificError::ZeroIdeal(_) => "ZeroIdeal",
        TorificError::NotPrime(_) => "NotPrime",
        TorificError::NotSaturatedParent(_) => "NotSaturatedParent",
        TorificError::ThresholdSearchExhausted(_) => "ThresholdSearchExhausted",
        TorificError::CriterionMismatch(_) => "CriterionMismatch",
        TorificError::UnknownComponent(_) => "UnknownComponent",
        TorificError::NotAnAutomorphism(_) => "NotAnAutomorphism",
        TorificError::NotSurjective(_) => "NotSurjective",
        TorificError::ZeroCharacterInSigma(_) => "ZeroCharacterInSigma",
        TorificError::NotBalanced(_) => "NotBalanced",
        TorificError::RayOutsideSupport(_) => "RayOutsideSupport",
    }
}

enum CliError {
    /// Bad input or schema: exit 2.
    Schema(String),
    /// Domain error from the library: exit 3.
    Domain(TorificError),
}

impl From<TorificError> for CliError {
    fn from(e: TorificError) -> Self {
        CliError::Domain(e)
    }
}

/// Wraps parse-phase errors: anything failing while decoding input is a
/// schema error.
fn parsed<T>(r: Result<T, TorificError>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Schema(e.to_string()))
}

fn read_input(path: &Option<String>) -> Result<Value, CliError> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| CliError::Schema(format!("cannot read {p}: {e}")))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Schema(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("invalid JSON: {e}")))
}

fn run(cli: &Cli) -> Result<Value, CliError> {
    match &cli.command {
        Command::Hilbert => {
            let doc = read_input(&cli.r#in)?;
            let spec = parsed(
                tio::parse_document(&doc, "spec").and_then(tio::spec_from_value),
            )?;
            let basis = torific::hilbert::hilbert_basis(&spec)?;
            Ok(tio::document("report", json!({ "basis": tio::vecs_to_value(&basis.elements) })))
        }
        Command::SaturateMonoid => {
            let doc = read_input(&cli.r#in)?;
            let m = parsed(
                tio::parse_document(&doc, "monoid").and_then(tio::monoid_from_value),
            )?;
            let s = saturate(&m)?;
            Ok(tio::document("monoid", tio::monoid_to_value(&s)))
        }
        Command::Faces => {
            let doc = read_input(&cli.r#in)?;
            let m = parsed(
                tio::parse_document(&doc, "monoid").and_then(tio::monoid_from_value),
            )?;
            let mut out = Vec::new();
            for f in faces(&m)? {
                let gens = torific::monoid::face_generators(&m, &f);
                out.push(json!({
                    "generators": tio::vecs_to_value(&gens),
                    "normal": tio::vec_to_value(&f.supporting_normal),
                    "height": prime_height(&m, &f)?,
                }));
            }
            Ok(tio::document("report", json!({ "faces": out })))
        }
        Command::Split { normal } => {
            let doc = read_input(&cli.r#in)?;
            let m = parsed(
                tio::parse_document(&doc, "monoid").and_then(tio::monoid_from_value),
            )?;
            let normal_v: Value = serde_json::from_str(normal)
                .map_err(|e| CliError::Schema(format!("bad --normal: {e}")))?;
            let r = parsed(tio::vec_from_value(&normal_v))?;
            let fs = faces(&m)?;
            let f = fs
                .iter()
                .find(|f| f.supporting_normal == r && prime_height(&m, f).unwrap_or(0) == 1)
                .ok_or_else(|| {
                    CliError::Domain(TorificError::NotAFacet(format!("{:?}", r)))
                })?;
            let split = facet_split(&m, f)?;
            Ok(tio::document(
                "report",
                json!({
                    "splits": split.splits,
                    "generator": split.generator.as_ref().map(|g| tio::vec_to_value(g)),
                    "criteria": split.criteria,
                }),
            ))
        }
        Command::SaturateIdeal => {
            let (m, i) = read_ideal(cli)?;
            let s = ideal_saturation(&i)?;
            let _ = m;
            Ok(tio::document("ideal", tio::ideal_to_value(&s)))
        }
        Command::Blowup => {
            let (_, i) = read_ideal(cli)?;
            let charts = blowup_charts(&i, true)?;
            let out: Vec<Value> = charts
                .iter()
                .map(|c| {
                    json!({
                        "monoid": tio::monoid_to_value(&c.monoid),
                        "exceptional": tio::vec_to_value(&c.exceptional),
                        "merged_from": c.generator_indices,
                    })
                })
                .collect();
            Ok(tio::document("report", json!({ "charts": out })))
        }
        Command::Subdivision => {
            let (_, i) = read_ideal(cli)?;
            let s = order_subdivision(&i)?;
            let cells: Vec<Value> =
                s.cells.iter().map(|c| tio::vecs_to_value(&c.rays)).collect();
            Ok(tio::document("report", json!({ "cells": cells, "labels": s.labels })))
        }
        Command::Threshold { kind, window, cap } => {
            let (_, i) = read_ideal(cli)?;
            let report = match kind {
                ThresholdKind::Saturation => saturation_threshold(&i, *window, *cap)?,
                ThresholdKind::Normalization => normalization_threshold(&i, *window, *cap)?,
            };
            Ok(tio::document("report", tio::threshold_report_to_value(&report)))
        }
        Command::DegreeZero => {
            let g = read_grading(cli)?;
            let m0 = degree_zero_monoid(&g)?;
            Ok(tio::document("monoid", tio::monoid_to_value(&m0)))
        }
        Command::Taut => {
            let g = read_grading(cli)?;
            let taut = is_taut(&g)?;
            let loose = is_loose(&g)?;
            let dual = dual_taut_check(&g).ok();
            Ok(tio::document("report", json!({ "taut": taut, "loose": loose, "dual_taut": dual })))
        }
        Command::TorificIdeal => {
            let doc = read_input(&cli.r#in)?;
            let payload = parsed(tio::parse_document(&doc, "grading").cloned())?;
            let m = parsed(
                tio::field(&payload, "monoid").and_then(tio::monoid_from_value),
            )?;
            let g = parsed(tio::grading_from_value(&m, &payload))?;
            let s = parsed(
                tio::field(&payload, "sigma").and_then(tio::multiset_from_value),
            )?;
            let i = torific_ideal(&g, &s)?;
            Ok(tio::document(
                "report",
                json!({ "ideal": tio::ideal_to_value(&i), "zero": is_zero_ideal(&i) }),
            ))
        }
        Command::Torify { mode } => {
            let m = read_model(cli)?;
            let report = torify(&m, convert_mode(*mode))?;
            Ok(tio::document("report", tio::torify_report_to_value(&report)))
        }
        Command::Quotient { mode } => {
            let m = read_model(cli)?;
            let report = torify(&m, convert_mode(*mode))?;
            let q = quotient_report(&m, &report)?;
            Ok(tio::document("report", tio::quotient_report_to_value(&q)))
        }
        Command::FanBarycentric => {
            let doc = read_input(&cli.r#in)?;
            let f =
                parsed(tio::parse_document(&doc, "fan").and_then(tio::fan_from_value))?;
            let b = fan::barycentric_subdivision(&f)?;
            Ok(tio::document("fan", tio::fan_to_value(&b)))
        }
        Command::FanSimple => {
            let doc = read_input(&cli.r#in)?;
            let a = parsed(
                tio::parse_document(&doc, "fan_action").and_then(tio::fan_action_from_value),
            )?;
            let simple = fan::is_action_simple(&a)?;
            Ok(tio::document("report", json!({ "simple": simple })))
        }
        Command::Corpus { seed, kind, count } => {
            let mut r = corpus::rng(*seed);
            let mut items = Vec::new();
            for _ in 0..*count {
                let item = match kind {
                    CorpusKind::Monoid => {
                        tio::monoid_to_value(&corpus::random_sharp_saturated_monoid(&mut r, 3)?)
                    }
                    CorpusKind::Ideal => {
                        let m = corpus::random_sharp_saturated_monoid(&mut r, 3)?;
                        let i = corpus::random_ideal(&mut r, &m)?;
                        json!({ "monoid": tio::monoid_to_value(&m), "generators": tio::vecs_to_value(&i.gens) })
                    }
                    CorpusKind::ModelAction => {
                        tio::model_action_to_value(&corpus::random_model_action(&mut r)?)
                    }
                    CorpusKind::Fan => tio::fan_to_value(&corpus::random_fan(&mut r, 3)?),
                    CorpusKind::Spec => tio::spec_to_value(&corpus::random_spec(&mut r, 3)),
                };
                items.push(item);
            }
            Ok(tio::document(
                "report",
                json!({ "seed": seed, "kind": format!("{:?}", kind), "items": items }),
            ))
        }
    }
}

fn convert_mode(m: Mode) -> torific::torify::TorifyMode {
    match m {
        Mode::Balanced => torific::torify::TorifyMode::Balanced,
        Mode::Raw => torific::torify::TorifyMode::Raw,
    }
}

fn read_ideal(cli: &Cli) -> Result<(torific::monoid::ToricMonoid, torific::ideal::MonoidIdeal), CliError> {
    let doc = read_input(&cli.r#in)?;
    let payload = parsed(tio::parse_document(&doc, "ideal").cloned())?;
    let m = parsed(tio::field(&payload, "monoid").and_then(tio::monoid_from_value))?;
    let i = parsed(tio::ideal_from_value(&m, &payload))?;
    Ok((m, i))
}

fn read_grading(cli: &Cli) -> Result<torific::graded::Grading, CliError> {
    let doc = read_input(&cli.r#in)?;
    let payload = parsed(tio::parse_document(&doc, "grading").cloned())?;
    let m = parsed(tio::field(&payload, "monoid").and_then(tio::monoid_from_value))?;
    parsed(tio::grading_from_value(&m, &payload))
}

fn read_model(cli: &Cli) -> Result<torific::torify::ModelAction, CliError> {
    let doc = read_input(&cli.r#in)?;
    let payload = parsed(tio::parse_document(&doc, "model_action").cloned())?;
    parsed(tio::model_action_from_value(&payload))
}

fn write_output(path: &Option<String>, v: &Value) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(v).expect("serializable value") + "\n";
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            if write_output(&cli.out, &v).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Schema(msg)) => {
            let err = json!({ "error": { "code": "Schema", "message": msg, "context": Value::Null } });
            let _ = write_output(&cli.out, &err);
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            let err = json!({
                "error": {
                    "code": error_code(&e),
                    "message": e.to_string(),
                    "context": Value::Null,
                }
            });
            let _ = write_output(&cli.out, &err);
            ExitCode::from(3)
        }
    }
}
