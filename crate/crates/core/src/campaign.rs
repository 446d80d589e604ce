//! Seeded verification campaigns over the determinant identities.
//!
//! A campaign draws `trials` safe samples for one identity on one lattice and
//! evaluates both sides per sample. Samples rejected by the safety policy are
//! reported as skipped, never dropped. Identical configurations produce
//! identical outcomes.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::identities::confluence::{confluent_limit, PeDerivativeFamily};
use crate::identities::{fs_residual, hermite_residual, IdentityReport};
use crate::kiepert::{kiepert_report, pe_multiplication, psi_division_value, PsiMethod};
use crate::lattice::Lattice;
use crate::residual::relative_residual;
use crate::sampling::CellSampler;
use crate::tolerances::{
    CONFLUENCE_BAND, CONFLUENCE_GUARD_FACTOR, CONFLUENCE_N_MAX, CONFLUENCE_STEP_DISTANCE_RATIO,
    CONFLUENCE_STEP_MAX_FACTOR, FS_N_MAX, HERMITE_N_MAX, KIEPERT_N_MAX, PE_MULT_M_MAX,
    PSI_NEAR_ZERO,
};
use crate::weierstrass::Weierstrass;

/// Which identity a campaign drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityKind {
    /// Frobenius-Stickelberger bordered determinant.
    Fs,
    /// Hermite's derivative determinant.
    Hermite,
    /// Kiepert's Hankel determinant.
    Kiepert,
    /// Confluent limit on the elliptic derivative family.
    Confluence,
    /// pe(m u) through division values vs. direct evaluation.
    Multiplication,
}

impl IdentityKind {
    pub fn name(&self) -> &'static str {
        match self {
            IdentityKind::Fs => "fs",
            IdentityKind::Hermite => "hermite",
            IdentityKind::Kiepert => "kiepert",
            IdentityKind::Confluence => "confluence",
            IdentityKind::Multiplication => "multiplication",
        }
    }
}

/// Campaign parameters.
#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub identity: IdentityKind,
    /// Generators handed to [`Lattice::new`].
    pub lattice: (Complex64, Complex64),
    /// Identity order n, or the multiplier m for `Multiplication`.
    pub n_or_m: u32,
    pub trials: u32,
    pub seed: u64,
    /// Campaign passes when the maximal residual stays at or below this.
    pub tolerance: f64,
}

/// One trial: either a report or a counted skip.
#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub trial: u32,
    pub report: Option<IdentityReport>,
    pub skip_reason: Option<String>,
}

impl TrialOutcome {
    pub fn skipped(&self) -> bool {
        self.report.is_none()
    }
}

/// Aggregates over the non-skipped trials.
#[derive(Debug, Clone, Copy)]
pub struct CampaignSummary {
    pub max_residual: f64,
    pub median_residual: f64,
    pub skip_count: u32,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct CampaignResult {
    pub outcomes: Vec<TrialOutcome>,
    pub summary: CampaignSummary,
}

fn validate(config: &CampaignConfig) -> Result<()> {
    if config.trials < 1 {
        return Err(Error::InvalidConfig {
            detail: "trials must be at least 1".to_string(),
        });
    }
    if config.tolerance <= 0.0 || config.tolerance.is_nan() {
        return Err(Error::InvalidConfig {
            detail: format!("tolerance must be positive, got {}", config.tolerance),
        });
    }
    let n = config.n_or_m;
    let ok = match config.identity {
        IdentityKind::Fs => n <= FS_N_MAX,
        IdentityKind::Hermite => (1..=HERMITE_N_MAX).contains(&n),
        IdentityKind::Kiepert => (1..=KIEPERT_N_MAX).contains(&n),
        IdentityKind::Confluence => (1..=CONFLUENCE_N_MAX).contains(&n),
        IdentityKind::Multiplication => (2..=PE_MULT_M_MAX).contains(&n),
    };
    if !ok {
        return Err(Error::InvalidConfig {
            detail: format!(
                "order {} out of range for identity {}",
                n,
                config.identity.name()
            ),
        });
    }
    Ok(())
}

/// Runs one campaign. Trials are evaluated in order; the result is a pure
/// function of the configuration.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignResult> {
    validate(config)?;
    let lattice = Lattice::new(config.lattice.0, config.lattice.1)?;
    let w = Weierstrass::new(lattice)?;
    let mut sampler = CellSampler::new(lattice, config.seed);
    let digest_prefix = format!("seed={};", config.seed);

    let mut outcomes = Vec::with_capacity(config.trials as usize);
    for trial in 0..config.trials {
        let outcome = run_trial(config, &w, &mut sampler, trial)?;
        let mut outcome = outcome;
        if let Some(report) = outcome.report.as_mut() {
            report.inputs_digest = format!("{digest_prefix}trial={trial}");
        }
        outcomes.push(outcome);
    }

    let mut residuals: Vec<f64> = outcomes
        .iter()
        .filter_map(|o| o.report.as_ref().map(|r| r.relative_residual))
        .collect();
    residuals.sort_by(f64::total_cmp);
    let max_residual = residuals.last().copied().unwrap_or(0.0);
    let median_residual = if residuals.is_empty() {
        0.0
    } else if residuals.len() % 2 == 1 {
        residuals[residuals.len() / 2]
    } else {
        let hi = residuals.len() / 2;
        0.5 * (residuals[hi - 1] + residuals[hi])
    };
    let skip_count = outcomes.iter().filter(|o| o.skipped()).count() as u32;
    let summary = CampaignSummary {
        max_residual,
        median_residual,
        skip_count,
        pass: max_residual <= config.tolerance,
    };
    Ok(CampaignResult { outcomes, summary })
}

fn skip(trial: u32, reason: impl Into<String>) -> TrialOutcome {
    TrialOutcome {
        trial,
        report: None,
        skip_reason: Some(reason.into()),
    }
}

fn done(trial: u32, report: IdentityReport) -> TrialOutcome {
    TrialOutcome {
        trial,
        report: Some(report),
        skip_reason: None,
    }
}

fn run_trial(
    config: &CampaignConfig,
    w: &Weierstrass,
    sampler: &mut CellSampler,
    trial: u32,
) -> Result<TrialOutcome> {
    let n = config.n_or_m;
    match config.identity {
        IdentityKind::Fs => {
            // u_0..u_n then v_0..v_n; every u_a + v_b feeds a sigma
            // denominator, and the total sum feeds the lone numerator sigma.
            let count = n as usize + 1;
            let Some(points) = sampler.safe_tuple(2 * count, |ps| {
                let (us, vs) = ps.split_at(count);
                let mut extra: Vec<Complex64> = us
                    .iter()
                    .flat_map(|&u| vs.iter().map(move |&v| u + v))
                    .collect();
                extra.push(ps.iter().sum());
                extra
            })?
            else {
                return Ok(skip(trial, "sampler budget exhausted"));
            };
            let (us, vs) = points.split_at(count);
            Ok(done(trial, fs_residual(w, us, vs)?))
        }
        IdentityKind::Hermite => {
            let count = n as usize + 1;
            let Some(points) = sampler.safe_tuple(count, |ps| vec![ps.iter().sum()])? else {
                return Ok(skip(trial, "sampler budget exhausted"));
            };
            Ok(done(trial, hermite_residual(w, &points)?))
        }
        IdentityKind::Kiepert => {
            let multiple = n as f64 + 1.0;
            let Some(points) = sampler.safe_tuple(1, |ps| vec![ps[0] * multiple])? else {
                return Ok(skip(trial, "sampler budget exhausted"));
            };
            let report = kiepert_report(w, points[0], n)?;
            Ok(done(
                trial,
                IdentityReport {
                    identity_name: "kiepert",
                    n,
                    lhs: report.hankel,
                    rhs: report.sigma_ratio,
                    relative_residual: report.relative_residual,
                    condition_estimate: report.condition_estimate,
                    inputs_digest: String::new(),
                },
            ))
        }
        IdentityKind::Confluence => {
            // Dedicated policy: sample inside the pole-dominated annulus,
            // keep all four stencil arms and the Hankel zero set (the
            // multiple (n+1)u) clear, and tie the step to the pole distance.
            let s = w.shortest_vector();
            let lat = w.lattice();
            let mut picked = None;
            for _ in 0..crate::tolerances::SAMPLER_MAX_ATTEMPTS {
                let u = sampler.cell_point();
                let d0 = lat.distance_to_lattice(u)?;
                if d0 < CONFLUENCE_BAND.0 * s || d0 > CONFLUENCE_BAND.1 * s {
                    continue;
                }
                let h0 = (CONFLUENCE_STEP_DISTANCE_RATIO * d0).min(CONFLUENCE_STEP_MAX_FACTOR * s);
                let guard = CONFLUENCE_GUARD_FACTOR * s;
                let directions = [
                    Complex64::new(h0, 0.0),
                    Complex64::new(0.0, h0),
                    Complex64::new(-h0, 0.0),
                    Complex64::new(0.0, -h0),
                ];
                let mut arms_ok = true;
                'arms: for step in directions {
                    for j in 1..=n {
                        if lat.distance_to_lattice(u + step * j as f64)? < guard {
                            arms_ok = false;
                            break 'arms;
                        }
                    }
                }
                if !arms_ok || lat.distance_to_lattice(u * (n as f64 + 1.0))? < guard {
                    continue;
                }
                picked = Some((u, h0));
                break;
            }
            let Some((u, h0)) = picked else {
                return Ok(skip(trial, "sampler budget exhausted"));
            };
            let family = PeDerivativeFamily::new(w);
            let result = confluent_limit(&family, u, n, h0)?;
            Ok(done(
                trial,
                IdentityReport {
                    identity_name: "confluence",
                    n,
                    lhs: result.extrapolated,
                    rhs: result.direct,
                    relative_residual: result.agreement,
                    condition_estimate: f64::NAN,
                    inputs_digest: String::new(),
                },
            ))
        }
        IdentityKind::Multiplication => {
            let m = n;
            let Some(points) = sampler.safe_tuple(1, |ps| vec![ps[0] * m as f64])? else {
                return Ok(skip(trial, "sampler budget exhausted"));
            };
            let u = points[0];
            let psi_m = psi_division_value(w, u, m, PsiMethod::SigmaRatio)?;
            if psi_m.norm() < PSI_NEAR_ZERO {
                return Ok(skip(
                    trial,
                    format!(
                        "|psi_{m}(u)| = {:.3e} below the division-point guard",
                        psi_m.norm()
                    ),
                ));
            }
            let formula = pe_multiplication(w, u, m)?;
            let direct = w.pe(u * m as f64)?;
            Ok(done(
                trial,
                IdentityReport {
                    identity_name: "multiplication",
                    n: m,
                    lhs: formula,
                    rhs: direct,
                    relative_residual: relative_residual(formula, direct),
                    condition_estimate: f64::NAN,
                    inputs_digest: String::new(),
                },
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(identity: IdentityKind, n: u32) -> CampaignConfig {
        CampaignConfig {
            identity,
            lattice: (Complex64::new(2.0, 0.0), Complex64::new(0.0, 2.0)),
            n_or_m: n,
            trials: 20,
            seed: 11,
            tolerance: 1e-8,
        }
    }

    #[test]
    fn campaigns_are_deterministic() {
        let cfg = config(IdentityKind::Fs, 2);
        let a = run_campaign(&cfg).unwrap();
        let b = run_campaign(&cfg).unwrap();
        assert_eq!(a.outcomes.len(), b.outcomes.len());
        for (x, y) in a.outcomes.iter().zip(&b.outcomes) {
            match (&x.report, &y.report) {
                (Some(rx), Some(ry)) => {
                    assert_eq!(rx.lhs, ry.lhs);
                    assert_eq!(rx.rhs, ry.rhs);
                    assert_eq!(rx.inputs_digest, ry.inputs_digest);
                }
                (None, None) => {}
                _ => panic!("skip pattern diverged"),
            }
        }
        assert_eq!(a.summary.max_residual, b.summary.max_residual);
    }

    #[test]
    fn fs_n0_residuals_are_tiny() {
        let mut cfg = config(IdentityKind::Fs, 0);
        cfg.trials = 10;
        let result = run_campaign(&cfg).unwrap();
        assert_eq!(result.summary.skip_count, 0);
        assert!(result.summary.max_residual < 1e-12);
        assert!(result.summary.pass);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut cfg = config(IdentityKind::Fs, 0);
        cfg.trials = 0;
        assert!(matches!(
            run_campaign(&cfg),
            Err(Error::InvalidConfig { .. })
        ));
        let mut cfg = config(IdentityKind::Kiepert, 9);
        cfg.trials = 5;
        assert!(matches!(
            run_campaign(&cfg),
            Err(Error::InvalidConfig { .. })
        ));
        let mut cfg = config(IdentityKind::Hermite, 1);
        cfg.tolerance = 0.0;
        assert!(matches!(
            run_campaign(&cfg),
            Err(Error::InvalidConfig { .. })
        ));
    }

    #[test]
    fn every_identity_kind_runs_clean_on_the_square_lattice() {
        for (kind, n, tol) in [
            (IdentityKind::Fs, 1, 1e-8),
            (IdentityKind::Hermite, 2, 1e-8),
            (IdentityKind::Kiepert, 1, 1e-10),
            (IdentityKind::Confluence, 2, 1e-6),
            (IdentityKind::Multiplication, 2, 1e-7),
        ] {
            let mut cfg = config(kind, n);
            cfg.tolerance = tol;
            cfg.trials = 10;
            let result = run_campaign(&cfg).unwrap();
            assert!(
                result.summary.pass,
                "{} failed: max residual {}",
                kind.name(),
                result.summary.max_residual
            );
        }
    }
}
