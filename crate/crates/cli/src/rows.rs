//! Output rows. Each report type has one row struct whose serde field names
//! equal its CSV header, so the two formats carry the same columns. Floats
//! are printed in CSV with 17 significant digits ({:.16e}), which round-trips
//! f64 exactly; lists are quoted and semicolon-joined.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use fq_core::bounds::BoundRecord;
use fq_core::divisor::TauRecord;
use fq_core::fermatq::{SetKind, VanishingReport};
use fq_core::ihara::IharaReport;
use fq_core::index::IndexReport;

/// One output row: a fixed CSV header, the CSV rendering of this row, and
/// (via serde) the JSONL rendering with the same field names.
pub trait Record: Serialize + DeserializeOwned + Send {
    const HEADER: &'static str;
    fn csv_fields(&self) -> Vec<String>;
    /// Whether this row records a violated inequality (drives exit code 1).
    fn is_violation(&self) -> bool {
        false
    }
}

/// f64 → 17 significant digits; parses back to the identical bits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_list(values: &[u64]) -> String {
    let joined: Vec<String> = values.iter().map(u64::to_string).collect();
    format!("\"{}\"", joined.join(";"))
}

fn fmt_opt<T>(value: &Option<T>, f: impl Fn(&T) -> String) -> String {
    value.as_ref().map(f).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientRow {
    pub p: u64,
    pub n: u64,
    pub value: u64,
}

impl Record for QuotientRow {
    const HEADER: &'static str = "p,n,value";
    fn csv_fields(&self) -> Vec<String> {
        vec![self.p.to_string(), self.n.to_string(), self.value.to_string()]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EllRow {
    pub p: u64,
    pub ell: u64,
}

impl Record for EllRow {
    const HEADER: &'static str = "p,ell";
    fn csv_fields(&self) -> Vec<String> {
        vec![self.p.to_string(), self.ell.to_string()]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetRow {
    pub p: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub kind: String,
    pub cardinality: u64,
    pub includes_multiples_of_p: bool,
    pub members: Vec<u64>,
}

impl From<&VanishingReport> for SetRow {
    fn from(report: &VanishingReport) -> Self {
        SetRow {
            p: report.p,
            n: report.limit,
            kind: match report.kind {
                SetKind::Q => "Q",
                SetKind::R => "R",
                SetKind::T => "T",
            }
            .to_string(),
            cardinality: report.cardinality,
            includes_multiples_of_p: report.includes_multiples_of_p,
            members: report.members.clone(),
        }
    }
}

impl Record for SetRow {
    const HEADER: &'static str = "p,N,kind,cardinality,includes_multiples_of_p,members";
    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.p.to_string(),
            self.n.to_string(),
            self.kind.clone(),
            self.cardinality.to_string(),
            self.includes_multiples_of_p.to_string(),
            fmt_list(&self.members),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounttRow {
    pub p: u64,
    #[serde(rename = "K")]
    pub k: u64,
    pub count: u64,
}

impl Record for CounttRow {
    const HEADER: &'static str = "p,K,count";
    fn csv_fields(&self) -> Vec<String> {
        vec![self.p.to_string(), self.k.to_string(), self.count.to_string()]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TauRow {
    pub n: u64,
    pub s: u64,
    /// Exact decimal value of τ_s(n).
    pub tau: String,
    pub bound_main_term: f64,
    pub exponent: f64,
}

impl From<&TauRecord> for TauRow {
    fn from(record: &TauRecord) -> Self {
        TauRow {
            n: record.n,
            s: record.s,
            tau: record.tau.to_string(),
            bound_main_term: record.bound_main_term,
            exponent: record.exponent,
        }
    }
}

impl Record for TauRow {
    const HEADER: &'static str = "n,s,tau,bound_main_term,exponent";
    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.s.to_string(),
            self.tau.clone(),
            fmt_f64(self.bound_main_term),
            fmt_f64(self.exponent),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IharaRow {
    pub p: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub s_p_partial: f64,
    pub s_p_full: f64,
    pub tail: f64,
    #[serde(rename = "mertens_at_N")]
    pub mertens_at_n: f64,
    pub grh_reference: f64,
    pub unconditional_reference: f64,
}

impl From<&IharaReport> for IharaRow {
    fn from(report: &IharaReport) -> Self {
        IharaRow {
            p: report.p,
            n: report.n,
            s_p_partial: report.s_p_partial,
            s_p_full: report.s_p_full,
            tail: report.tail,
            mertens_at_n: report.mertens_at_n,
            grh_reference: report.grh_reference,
            unconditional_reference: report.unconditional_reference,
        }
    }
}

impl Record for IharaRow {
    const HEADER: &'static str =
        "p,N,s_p_partial,s_p_full,tail,mertens_at_N,grh_reference,unconditional_reference";
    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.p.to_string(),
            self.n.to_string(),
            fmt_f64(self.s_p_partial),
            fmt_f64(self.s_p_full),
            fmt_f64(self.tail),
            fmt_f64(self.mertens_at_n),
            fmt_f64(self.grh_reference),
            fmt_f64(self.unconditional_reference),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MertensRow {
    #[serde(rename = "N")]
    pub n: u64,
    pub mertens: f64,
    #[serde(rename = "log_N")]
    pub log_n: f64,
    pub deficit: f64,
}

impl Record for MertensRow {
    const HEADER: &'static str = "N,mertens,log_N,deficit";
    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            fmt_f64(self.mertens),
            fmt_f64(self.log_n),
            fmt_f64(self.deficit),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexRow {
    pub p: u64,
    pub log_index: f64,
    pub half_p2_sp: f64,
    pub unconditional_bound_main: f64,
    pub conditional_reference: f64,
}

impl From<&IndexReport> for IndexRow {
    fn from(report: &IndexReport) -> Self {
        IndexRow {
            p: report.p,
            log_index: report.log_index,
            half_p2_sp: report.half_p2_sp,
            unconditional_bound_main: report.unconditional_bound_main,
            conditional_reference: report.conditional_reference,
        }
    }
}

impl Record for IndexRow {
    const HEADER: &'static str =
        "p,log_index,half_p2_sp,unconditional_bound_main,conditional_reference";
    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.p.to_string(),
            fmt_f64(self.log_index),
            fmt_f64(self.half_p2_sp),
            fmt_f64(self.unconditional_bound_main),
            fmt_f64(self.conditional_reference),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub p: u64,
    /// Stable bound label (granville, thm_Qp, ...).
    pub bound: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<f64>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub include_p_term: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypothesis_met: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loglog_below_one: Option<bool>,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub verdict: String,
}

impl From<&BoundRecord> for BoundRow {
    fn from(record: &BoundRecord) -> Self {
        BoundRow {
            p: record.p,
            bound: record.name.label().to_string(),
            u: record.params.u,
            n: record.params.n,
            k: record.params.k,
            alpha: record.params.alpha,
            s: record.params.s,
            include_p_term: record.params.include_p_term,
            hypothesis_met: record.params.hypothesis_met,
            loglog_below_one: record.params.loglog_below_one,
            lhs: record.lhs,
            rhs: record.rhs,
            ratio: record.ratio,
            verdict: record.verdict.to_string(),
        }
    }
}

impl Record for BoundRow {
    const HEADER: &'static str = "p,bound,u,N,K,alpha,s,include_p_term,hypothesis_met,\
                                  loglog_below_one,lhs,rhs,ratio,verdict";
    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.p.to_string(),
            self.bound.clone(),
            fmt_opt(&self.u, |x| fmt_f64(*x)),
            fmt_opt(&self.n, u64::to_string),
            fmt_opt(&self.k, u64::to_string),
            fmt_opt(&self.alpha, |x| fmt_f64(*x)),
            fmt_opt(&self.s, u64::to_string),
            fmt_opt(&self.include_p_term, bool::to_string),
            fmt_opt(&self.hypothesis_met, bool::to_string),
            fmt_opt(&self.loglog_below_one, bool::to_string),
            fmt_f64(self.lhs),
            fmt_f64(self.rhs),
            fmt_f64(self.ratio),
            self.verdict.clone(),
        ]
    }
    fn is_violation(&self) -> bool {
        self.verdict == "violated"
    }
}
