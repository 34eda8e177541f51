//! Trials, verdicts and audits.
//!
//! A trial samples the configuration with a seed derived from the run seed
//! and computes the rank of its condition matrix. The best rank over all
//! trials is compared with the expected maximum `min(N, HP)`. Reaching it
//! once certifies maximal rank for the generic configuration; falling short
//! every time is only evidence of a defect.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{ComponentKind, ComponentSpec, Hypersurface, SchemeConfig};
use crate::error::{Error, Result};
use crate::ledger::{binomial, classify_exception, expected_counts, hh_admissible, ExpectedCounts};
use crate::linalg::PrimeField;
use crate::scheme::{assemble_with, horace_split, quadric_h0, HoraceSplit, QuadricScheme, RowBuilder, TraceScheme};

/// Trials used when maximal rank is expected.
pub const CERTIFY_TRIALS: usize = 3;
/// Trials used when a defect is expected.
pub const DEFECT_TRIALS: usize = 7;

/// Printed with every verdict that did not reach the expected rank.
pub const DEFECT_CAVEAT: &str = "probable defect (evidence only): a rank deficiency over F_p does not prove one in characteristic zero; rerun with another --prime to rule out an unlucky characteristic";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialOptions {
    pub trials: usize,
    pub seed: u64,
    pub field: PrimeField,
}

impl Default for TrialOptions {
    fn default() -> Self {
        Self { trials: CERTIFY_TRIALS, seed: 0, field: PrimeField::default() }
    }
}

impl TrialOptions {
    pub fn new(trials: usize, seed: u64) -> Self {
        Self { trials, seed, ..Self::default() }
    }

    pub fn with_field(mut self, field: PrimeField) -> Self {
        self.field = field;
        self
    }

    /// Same field and trial count, seeds moved to an independent stream.
    fn fork(&self, salt: u64) -> Self {
        Self { seed: trial_seed(self.seed, salt ^ 0xA5A5_0000_0000_0000), ..*self }
    }
}

/// Seed of trial `index` in a run with base seed `seed`.
///
/// This is the SplitMix64 output at counter `index + 1` of a stream
/// started at `seed`, so it depends only on `(seed, index)`.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PostulationVerdict {
    pub expected: ExpectedCounts,
    /// `N - best rank`.
    pub observed_h0: u64,
    /// `HP - best rank`.
    pub observed_h1: u64,
    /// `observed_h0 - exp_h0`.
    pub defect: u64,
    /// `observed_h0 - (N - HP)`.
    pub virtual_defect: i64,
    pub trials_run: usize,
    pub certified: bool,
    pub per_trial_ranks: Vec<u64>,
    pub seed: u64,
    pub prime: u64,
}

impl PostulationVerdict {
    fn from_ranks(expected: ExpectedCounts, ranks: Vec<u64>, opts: &TrialOptions) -> Self {
        let best = ranks.iter().copied().max().unwrap_or(0);
        assert!(
            best <= expected.max_rank(),
            "rank {best} exceeds the expected maximum {}; the condition matrix is wrong",
            expected.max_rank()
        );
        let observed_h0 = expected.ambient - best;
        Self {
            expected,
            observed_h0,
            observed_h1: expected.conditions - best,
            defect: observed_h0 - expected.exp_h0,
            virtual_defect: observed_h0 as i64 - expected.virtual_h0,
            trials_run: ranks.len(),
            certified: best == expected.max_rank(),
            per_trial_ranks: ranks,
            seed: opts.seed,
            prime: opts.field.modulus(),
        }
    }

    pub fn best_rank(&self) -> u64 {
        self.expected.ambient - self.observed_h0
    }

    /// Virtual defect of each trial on its own.
    pub fn per_trial_virtual_defects(&self) -> Vec<i64> {
        self.per_trial_ranks.iter().map(|&r| self.expected.conditions as i64 - r as i64).collect()
    }

    /// The caveat to print, if the verdict is not a certificate.
    pub fn caveat(&self) -> Option<&'static str> {
        (!self.certified).then_some(DEFECT_CAVEAT)
    }
}

/// Samples `config` `opts.trials` times and reports the best rank.
pub fn verify_postulation(config: &SchemeConfig, opts: &TrialOptions) -> Result<PostulationVerdict> {
    if opts.trials == 0 {
        return Err(Error::OutOfRange("at least one trial is required".into()));
    }
    config.validate()?;
    let expected = expected_counts(config)?;
    let builder = RowBuilder::new(opts.field, config.n, config.d)?;
    let ranks = (0..opts.trials as u64)
        .into_par_iter()
        .map(|i| {
            let (m, _) = assemble_with(&builder, config, trial_seed(opts.seed, i))?;
            Ok(m.into_rank() as u64)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PostulationVerdict::from_ranks(expected, ranks, opts))
}

/// Largest generic rank of `scheme` in bidegree `(d, d)` over the trials.
fn quadric_best_h0(scheme: &QuadricScheme, d: u32, opts: &TrialOptions) -> Result<u64> {
    (0..opts.trials as u64)
        .into_par_iter()
        .map(|i| quadric_h0(scheme, d, d, opts.field, trial_seed(opts.seed, i)))
        .try_reduce(|| u64::MAX, |a, b| Ok(a.min(b)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CastelnuovoAudit {
    pub lhs_h0: u64,
    pub residual_h0: u64,
    pub trace_h0: u64,
    pub inequality_holds: bool,
}

/// Multiplicities above `d + 1` impose the same conditions in degree `d` as
/// multiplicity `d + 1`; the residual may carry such components.
fn clamp_multiplicities(config: &SchemeConfig) -> SchemeConfig {
    let cap = config.d + 1;
    let components = config
        .components
        .iter()
        .map(|c| {
            let kind = match c.kind {
                ComponentKind::FatLinearSpace { dim, mult } => ComponentKind::FatLinearSpace { dim, mult: mult.min(cap) },
                ComponentKind::FatPoint { mult } => ComponentKind::FatPoint { mult: mult.min(cap) },
                k => k,
            };
            ComponentSpec { kind, ..*c }
        })
        .collect();
    SchemeConfig { components, ..config.clone() }
}

/// Observed `h0` of `config`, its residual and its trace along `split`, and
/// whether `h0(X) <= h0(Res) + h0(Tr)`.
pub fn castelnuovo_audit(config: &SchemeConfig, split: &HoraceSplit, opts: &TrialOptions) -> Result<CastelnuovoAudit> {
    if *split != horace_split(config, split.hypersurface)? {
        return Err(Error::UnsupportedSplit("split was not produced from this configuration".into()));
    }
    let lhs_h0 = verify_postulation(config, opts)?.observed_h0;
    let residual_h0 = verify_postulation(&clamp_multiplicities(&split.residual), &opts.fork(1))?.observed_h0;
    let trace_h0 = match &split.trace {
        TraceScheme::Hyperplane(trace) => verify_postulation(trace, &opts.fork(2))?.observed_h0,
        TraceScheme::Quadric { scheme, degree } => quadric_best_h0(scheme, *degree, &opts.fork(2))?,
    };
    Ok(CastelnuovoAudit { lhs_h0, residual_h0, trace_h0, inequality_holds: lhs_h0 <= residual_h0 + trace_h0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HhCrossCheck {
    pub admissible: bool,
    pub certified_vanishing: bool,
}

/// Compares the quadric criterion with a rank computation in bidegree `(d, d)`.
pub fn hh_cross_check(alpha: u64, beta: u64, gamma: u64, delta: u64, d: u32, opts: &TrialOptions) -> Result<HhCrossCheck> {
    let scheme = QuadricScheme::new(alpha, beta, gamma, delta);
    let admissible = hh_admissible(alpha, beta, gamma, delta, d as u64);
    // h0 = 0 is certified by full column rank; the row count must fit too for h1 = 0
    let rows = scheme.conditions(d as u64);
    let square = (d as u64 + 1).pow(2);
    let certified_vanishing = rows == square && quadric_best_h0(&scheme, d, opts)? == 0;
    Ok(HhCrossCheck { admissible, certified_vanishing })
}

/// Verdict for `x` generic sundials and `y` generic lines.
pub fn sundial_audit(x: usize, y: usize, n: u32, d: u32, opts: &TrialOptions) -> Result<PostulationVerdict> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("sundials need n >= 3, got {n}")));
    }
    let config = SchemeConfig::new(n, d).push(ComponentKind::Sundial, x).push(ComponentKind::Line, y);
    verify_postulation(&config, opts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionAudit {
    pub h0_full: u64,
    pub h0_projected: u64,
    pub equal: bool,
}

/// Quadrics through a double line and `s` lines in `P^n` against quadrics
/// through `s` lines in `P^(n-2)`.
pub fn projection_audit_d2(n: u32, s: usize, opts: &TrialOptions) -> Result<ProjectionAudit> {
    if n < 4 {
        return Err(Error::OutOfRange(format!("projection audit needs n >= 4, got {n}")));
    }
    let full = verify_postulation(&SchemeConfig::double_line_and_lines(n, 2, s), opts)?.observed_h0;
    let projected = verify_postulation(&SchemeConfig::new(n - 2, 2).push(ComponentKind::Line, s), opts)?.observed_h0;
    Ok(ProjectionAudit { h0_full: full, h0_projected: projected, equal: full == projected })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureAudit {
    pub verdict: PostulationVerdict,
    pub exceptional: bool,
    /// Exceptional cases: every trial's virtual defect is `C(s, 2)`.
    /// Other cases: the verdict is certified.
    pub matches_c_s_2: bool,
}

/// One `m`-fold `r`-plane and `s` lines in degree `d = m`.
pub fn conjecture_audit(n: u32, r: u32, m: u32, s: u32, opts: &TrialOptions) -> Result<ConjectureAudit> {
    if m < 2 {
        return Err(Error::OutOfRange(format!("conjecture audit needs m >= 2, got {m}")));
    }
    let class = classify_exception(n, m, r, m, s)?;
    let config = SchemeConfig::new(n, m)
        .push(ComponentKind::FatLinearSpace { dim: r, mult: m }, 1)
        .push(ComponentKind::Line, s as usize);
    let verdict = verify_postulation(&config, opts)?;
    let matches_c_s_2 = if class.exceptional {
        let want = binomial(s as u64, 2)? as i64;
        verdict.per_trial_virtual_defects().iter().all(|&v| v == want)
    } else {
        verdict.certified
    };
    Ok(ConjectureAudit { verdict, exceptional: class.exceptional, matches_c_s_2 })
}

/// Splits along `hypersurface` and audits the inequality in one call.
pub fn split_and_audit(config: &SchemeConfig, hypersurface: Hypersurface, opts: &TrialOptions) -> Result<(HoraceSplit, CastelnuovoAudit)> {
    let split = horace_split(config, hypersurface)?;
    let audit = castelnuovo_audit(config, &split, opts)?;
    Ok((split, audit))
}
