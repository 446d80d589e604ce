//! Report rendering: JSON lines, CSV, or human-readable text.
//!
//! One line per trial with the fixed field order
//! identity, n, seed, trial, lhs_re, lhs_im, rhs_re, rhs_im, residual,
//! condition, skipped, followed by a summary carrying `schema: 1`. Skipped
//! trials keep their line with null values. All output is assembled into one
//! buffer so identical campaigns emit identical bytes.

use std::fmt::Write;

use sigmadet::{CampaignConfig, CampaignResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Human,
}

fn json_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:e}")
    } else {
        "null".to_string()
    }
}

pub fn render(config: &CampaignConfig, result: &CampaignResult, format: OutputFormat) -> String {
    let mut out = String::new();
    let identity = config.identity.name();
    match format {
        OutputFormat::Json => {
            for outcome in &result.outcomes {
                let (lhs_re, lhs_im, rhs_re, rhs_im, residual, condition) = match &outcome.report {
                    Some(r) => (
                        json_num(r.lhs.re),
                        json_num(r.lhs.im),
                        json_num(r.rhs.re),
                        json_num(r.rhs.im),
                        json_num(r.relative_residual),
                        json_num(r.condition_estimate),
                    ),
                    None => (
                        "null".into(),
                        "null".into(),
                        "null".into(),
                        "null".into(),
                        "null".into(),
                        "null".into(),
                    ),
                };
                writeln!(
                    out,
                    "{{\"identity\":\"{identity}\",\"n\":{},\"seed\":{},\"trial\":{},\
                     \"lhs_re\":{lhs_re},\"lhs_im\":{lhs_im},\"rhs_re\":{rhs_re},\"rhs_im\":{rhs_im},\
                     \"residual\":{residual},\"condition\":{condition},\"skipped\":{}}}",
                    config.n_or_m,
                    config.seed,
                    outcome.trial,
                    outcome.skipped(),
                )
                .unwrap();
            }
            writeln!(
                out,
                "{{\"schema\":1,\"summary\":{{\"identity\":\"{identity}\",\"n\":{},\"seed\":{},\
                 \"trials\":{},\"skipped\":{},\"max_residual\":{},\"median_residual\":{},\
                 \"tolerance\":{:e},\"pass\":{}}}}}",
                config.n_or_m,
                config.seed,
                config.trials,
                result.summary.skip_count,
                json_num(result.summary.max_residual),
                json_num(result.summary.median_residual),
                config.tolerance,
                result.summary.pass,
            )
            .unwrap();
        }
        OutputFormat::Csv => {
            out.push_str(
                "identity,n,seed,trial,lhs_re,lhs_im,rhs_re,rhs_im,residual,condition,skipped\n",
            );
            for outcome in &result.outcomes {
                match &outcome.report {
                    Some(r) => {
                        let condition = if r.condition_estimate.is_finite() {
                            format!("{:e}", r.condition_estimate)
                        } else {
                            String::new()
                        };
                        writeln!(
                            out,
                            "{identity},{},{},{},{:e},{:e},{:e},{:e},{:e},{condition},false",
                            config.n_or_m,
                            config.seed,
                            outcome.trial,
                            r.lhs.re,
                            r.lhs.im,
                            r.rhs.re,
                            r.rhs.im,
                            r.relative_residual,
                        )
                        .unwrap();
                    }
                    None => {
                        writeln!(
                            out,
                            "{identity},{},{},{},,,,,,,true",
                            config.n_or_m, config.seed, outcome.trial,
                        )
                        .unwrap();
                    }
                }
            }
            writeln!(
                out,
                "# summary schema=1 identity={identity} n={} seed={} trials={} skipped={} \
                 max_residual={} median_residual={} tolerance={:e} pass={}",
                config.n_or_m,
                config.seed,
                config.trials,
                result.summary.skip_count,
                json_num(result.summary.max_residual),
                json_num(result.summary.median_residual),
                config.tolerance,
                result.summary.pass,
            )
            .unwrap();
        }
        OutputFormat::Human => {
            for outcome in &result.outcomes {
                match &outcome.report {
                    Some(r) => writeln!(
                        out,
                        "trial {:>4}  residual {:>12.5e}  lhs {:.12e}{:+.12e}i  rhs {:.12e}{:+.12e}i",
                        outcome.trial, r.relative_residual, r.lhs.re, r.lhs.im, r.rhs.re, r.rhs.im,
                    )
                    .unwrap(),
                    None => writeln!(
                        out,
                        "trial {:>4}  skipped ({})",
                        outcome.trial,
                        outcome.skip_reason.as_deref().unwrap_or("unspecified"),
                    )
                    .unwrap(),
                }
            }
            writeln!(
                out,
                "identity {identity} n={} seed={} trials={} skipped={}\n\
                 max residual    {:e}\nmedian residual {:e}\ntolerance       {:e}\nresult          {}",
                config.n_or_m,
                config.seed,
                config.trials,
                result.summary.skip_count,
                result.summary.max_residual,
                result.summary.median_residual,
                config.tolerance,
                if result.summary.pass { "PASS" } else { "FAIL" },
            )
            .unwrap();
        }
    }
    out
}
