//! The explicit inequalities the toolkit checks, each packaged as a record
//! with its left side, right side, ratio, and verdict.
//!
//! Only Granville's inequality #R_p(⌊p^(1/u)⌋) <= u·p^(1/(2u)) is a proven
//! elementary bound at every size, so only it carries a holds/violated
//! verdict. The remaining comparisons are asymptotic (they hide an o(1) or an
//! implied constant) and are reported as diagnostic ratios.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fermatq::{count_power_residues, enumerate_q_with, enumerate_r_with};
use crate::ihara::ihara_full_with;
use crate::index::log_index_with;
use crate::modarith::PrimeContext;
use crate::util::floor_root;

/// Exponent 463/252 governing the critical range: the cardinality bounds for
/// the vanishing sets are nontrivial for N >= p^(463/252+ε), and the solution
/// count K/p for the power-residue congruence holds from the same height.
pub const CRITICAL_EXPONENT: f64 = 463.0 / 252.0;

/// Exponent 252/463 (the reciprocal of the critical one) in the tail decay
/// N^(-252/463) of the restricted sum past a cutoff N.
pub const TAIL_DECAY_EXPONENT: f64 = 252.0 / 463.0;

/// Exponent 211/463 = 1 - 252/463 in the cardinality corollary
/// #Q_p(N) <= N^(211/463+o(1)) on the critical range.
pub const CARDINALITY_EXPONENT: f64 = 211.0 / 463.0;

/// Coefficient 463/504 = (463/252)/2 in the unconditional index bound
/// log I_p <= (463/504 + o(1)) p² ln ln p.
pub const INDEX_COEFFICIENT: f64 = 463.0 / 504.0;

/// Which inequality a record instantiates. The serialized labels are the
/// stable public names used in CSV/JSONL output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundName {
    /// #R_p(⌊p^(1/u)⌋) <= u·p^(1/(2u)), elementary and unconditional.
    #[serde(rename = "granville")]
    Granville,
    /// #Q_p(N) against u·N·p^(-1/s) with u = ln p/ln N, s = ⌈αu⌉.
    #[serde(rename = "thm_Qp")]
    TheoremQ,
    /// #R_p(N) against the same level.
    #[serde(rename = "thm_Rp")]
    TheoremR,
    /// #Q_p(N) against N^(211/463).
    #[serde(rename = "cor_Qp")]
    CorollaryQ,
    /// #R_p(N) against N^(211/463)·ln p.
    #[serde(rename = "cor_Rp")]
    CorollaryR,
    /// #T_p(K) against K/p, the solution count for the power-residue
    /// congruence above the critical height.
    #[serde(rename = "lemma_sols")]
    LemmaSolutions,
    /// S_p against (463/252) ln ln p, unconditional.
    #[serde(rename = "cor_sp2")]
    SumUnconditional,
    /// S_p against 2 ln ln p + 2, conditional on GRH.
    #[serde(rename = "grh_sp")]
    SumGrh,
    /// log I_p against (463/504) p² ln ln p, unconditional.
    #[serde(rename = "thm_ip")]
    IndexUnconditional,
    /// log I_p against p² ln ln p, conditional on GRH.
    #[serde(rename = "grh_ip")]
    IndexGrh,
}

impl BoundName {
    /// The stable serialized label.
    pub fn label(self) -> &'static str {
        match self {
            BoundName::Granville => "granville",
            BoundName::TheoremQ => "thm_Qp",
            BoundName::TheoremR => "thm_Rp",
            BoundName::CorollaryQ => "cor_Qp",
            BoundName::CorollaryR => "cor_Rp",
            BoundName::LemmaSolutions => "lemma_sols",
            BoundName::SumUnconditional => "cor_sp2",
            BoundName::SumGrh => "grh_sp",
            BoundName::IndexUnconditional => "thm_ip",
            BoundName::IndexGrh => "grh_ip",
        }
    }
}

impl std::fmt::Display for BoundName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Outcome of a comparison. Asymptotic statements never yield a verdict
/// beyond `DiagnosticOnly`; only fully explicit inequalities can hold or be
/// violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "holds")]
    Holds,
    #[serde(rename = "violated")]
    Violated,
    #[serde(rename = "diagnostic-only")]
    DiagnosticOnly,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::DiagnosticOnly => "diagnostic-only",
        })
    }
}

/// The parameters a record was evaluated at; only the ones meaningful for its
/// inequality are set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    /// Window height N for the set bounds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    /// Window height K for the solution-count bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    /// The exponent parameter: an integer for Granville's inequality, the
    /// derived ln p/ln N for the theorem-level ratios.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<f64>,
    /// The slack multiplier behind s = ⌈αu⌉.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u64>,
    /// Whether convention members (multiples of p) entered the left side.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub include_p_term: Option<bool>,
    /// Whether the evaluation point satisfies the hypothesis under which the
    /// asymptotic statement is claimed (N or K at least p^(463/252)-ish, α
    /// above the critical exponent).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypothesis_met: Option<bool>,
    /// ln ln p < 1 (p < 16): the reference levels are tiny or misleading.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loglog_below_one: Option<bool>,
}

/// One evaluated inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub p: u64,
    pub name: BoundName,
    pub params: BoundParams,
    pub lhs: f64,
    pub rhs: f64,
    /// lhs / rhs; <= 1 means the comparison level is respected.
    pub ratio: f64,
    pub verdict: Verdict,
}

fn record(
    p: u64,
    name: BoundName,
    params: BoundParams,
    lhs: f64,
    rhs: f64,
    verdict: Verdict,
) -> BoundRecord {
    BoundRecord { p, name, params, lhs, rhs, ratio: lhs / rhs, verdict }
}

/// Granville's inequality at each requested u: with N = ⌊p^(1/u)⌋, the count
/// of vanishing primes up to N stays below u·p^(1/(2u)). Two records per u —
/// first counting the convention member p (relevant only when u = 1, where
/// N = p), then without it. Verdicts are real: holds or violated.
pub fn granville_check(ctx: &PrimeContext, us: &[u64]) -> Result<Vec<BoundRecord>> {
    granville_check_with(ctx, us, false)
}

/// `granville_check` with an explicit evaluation-path choice.
pub fn granville_check_with(ctx: &PrimeContext, us: &[u64], brute: bool) -> Result<Vec<BoundRecord>> {
    let mut records = Vec::with_capacity(2 * us.len());
    for &u in us {
        if u == 0 {
            return Err(Error::Domain("the root index u must be at least 1".into()));
        }
        let n = floor_root(ctx.p, u as u32);
        let with_p = enumerate_r_with(ctx, n, true, brute);
        let has_p = with_p.members.binary_search(&ctx.p).is_ok();
        let rhs = u as f64 * (ctx.p as f64).powf(1.0 / (2.0 * u as f64));
        for include in [true, false] {
            let lhs = with_p.cardinality - (!include && has_p) as u64;
            let params = BoundParams {
                n: Some(n),
                u: Some(u as f64),
                include_p_term: Some(include),
                ..BoundParams::default()
            };
            let verdict = if lhs as f64 <= rhs { Verdict::Holds } else { Verdict::Violated };
            records.push(record(ctx.p, BoundName::Granville, params, lhs as f64, rhs, verdict));
        }
    }
    Ok(records)
}

/// The theorem-level and corollary-level cardinality ratios at window height
/// N: #Q_p(N) and #R_p(N) against u·N·p^(-1/s) with u = ln p/ln N and
/// s = ⌈αu⌉, and against N^(211/463) (times ln p for R). Four records:
/// thm_Qp, thm_Rp, cor_Qp, cor_Rp. All diagnostic — the statements carry an
/// o(1) — with `hypothesis_met` flagging α above the critical exponent.
pub fn theorem_ratio_report(ctx: &PrimeContext, n: u64, alpha: f64) -> Result<Vec<BoundRecord>> {
    theorem_ratio_report_with(ctx, n, alpha, true, false)
}

/// `theorem_ratio_report` with explicit convention and evaluation-path
/// choices.
pub fn theorem_ratio_report_with(
    ctx: &PrimeContext,
    n: u64,
    alpha: f64,
    include_p_term: bool,
    brute: bool,
) -> Result<Vec<BoundRecord>> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "the window height must satisfy N >= 2, got N = {n}"
        )));
    }
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::Domain(format!("alpha must be positive, got {alpha}")));
    }
    let p = ctx.p as f64;
    let u = p.ln() / (n as f64).ln();
    let s = (alpha * u).ceil() as u64;
    let q_count = enumerate_q_with(ctx, n, include_p_term, brute).cardinality as f64;
    let r_count = enumerate_r_with(ctx, n, include_p_term, brute).cardinality as f64;
    let theorem_rhs = u * n as f64 * p.powf(-1.0 / s as f64);
    let corollary_rhs = (n as f64).powf(CARDINALITY_EXPONENT);
    let params = BoundParams {
        n: Some(n),
        u: Some(u),
        alpha: Some(alpha),
        s: Some(s),
        include_p_term: Some(include_p_term),
        hypothesis_met: Some(alpha > CRITICAL_EXPONENT),
        ..BoundParams::default()
    };
    Ok(vec![
        record(ctx.p, BoundName::TheoremQ, params, q_count, theorem_rhs, Verdict::DiagnosticOnly),
        record(ctx.p, BoundName::TheoremR, params, r_count, theorem_rhs, Verdict::DiagnosticOnly),
        record(ctx.p, BoundName::CorollaryQ, params, q_count, corollary_rhs, Verdict::DiagnosticOnly),
        record(
            ctx.p,
            BoundName::CorollaryR,
            params,
            r_count,
            corollary_rhs * p.ln(),
            Verdict::DiagnosticOnly,
        ),
    ])
}

/// The solution-count ratio #T_p(K) / (K/p). The level K/p is claimed for
/// K >= p^(463/252+ε); `hypothesis_met` records whether K clears the critical
/// height. Diagnostic — the claim hides an implied constant.
pub fn lemma_sols_ratio(ctx: &PrimeContext, k: u64) -> Result<BoundRecord> {
    if k == 0 {
        return Err(Error::Domain("the window height K must be at least 1".into()));
    }
    let lhs = count_power_residues(ctx, k) as f64;
    let rhs = k as f64 / ctx.p as f64;
    let params = BoundParams {
        k: Some(k),
        hypothesis_met: Some(k as f64 >= (ctx.p as f64).powf(CRITICAL_EXPONENT)),
        ..BoundParams::default()
    };
    Ok(record(ctx.p, BoundName::LemmaSolutions, params, lhs, rhs, Verdict::DiagnosticOnly))
}

/// The sum- and index-level ratios at p: S_p against (463/252) ln ln p and
/// against the GRH level 2 ln ln p + 2, then log I_p against
/// (463/504) p² ln ln p and against the GRH level p² ln ln p. Four records:
/// cor_sp2, grh_sp, thm_ip, grh_ip, all diagnostic.
pub fn sp_bound_report(ctx: &PrimeContext) -> Vec<BoundRecord> {
    sp_bound_report_with(ctx, true, false)
}

/// `sp_bound_report` with explicit convention and evaluation-path choices.
pub fn sp_bound_report_with(
    ctx: &PrimeContext,
    include_p_term: bool,
    brute: bool,
) -> Vec<BoundRecord> {
    let s_p = ihara_full_with(ctx, include_p_term, brute).s_p_full;
    let log_i = log_index_with(ctx, include_p_term, brute).log_index;
    let p = ctx.p as f64;
    let p2 = p * p;
    let lnln = p.ln().ln();
    let params = BoundParams {
        include_p_term: Some(include_p_term),
        loglog_below_one: Some(lnln < 1.0),
        ..BoundParams::default()
    };
    vec![
        record(ctx.p, BoundName::SumUnconditional, params, s_p, CRITICAL_EXPONENT * lnln, Verdict::DiagnosticOnly),
        record(ctx.p, BoundName::SumGrh, params, s_p, 2.0 * lnln + 2.0, Verdict::DiagnosticOnly),
        record(ctx.p, BoundName::IndexUnconditional, params, log_i, INDEX_COEFFICIENT * p2 * lnln, Verdict::DiagnosticOnly),
        record(ctx.p, BoundName::IndexGrh, params, log_i, p2 * lnln, Verdict::DiagnosticOnly),
    ]
}
