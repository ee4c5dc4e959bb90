//! Ihara-type sums: S_p = Σ Λ(n)/n over the n in the vanishing set up to p,
//! partial sums with a cutoff, the unrestricted Mertens-style sum for
//! comparison, and a tail report against the predicted decay.

use serde::{Deserialize, Serialize};

use crate::bounds::{CRITICAL_EXPONENT, TAIL_DECAY_EXPONENT};
use crate::error::{Error, Result};
use crate::fermatq::vanishing_prime_powers;
use crate::modarith::PrimeContext;
use crate::primes::primes_up_to;
use crate::util::KahanSum;

/// One prime-power contribution Λ(n)/n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IharaTerm {
    pub n: u64,
    pub lambda: f64,
    pub contribution: f64,
}

/// A full or cutoff view of S_p with its reference levels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IharaReport {
    pub p: u64,
    /// Cutoff of the partial sum; equals p for a full report.
    pub n: u64,
    /// S_p(N): the sum restricted to n <= N.
    pub s_p_partial: f64,
    /// S_p = S_p(p).
    pub s_p_full: f64,
    /// s_p_full - s_p_partial.
    pub tail: f64,
    /// Unrestricted Σ_{n <= N} Λ(n)/n at the same cutoff.
    pub mertens_at_n: f64,
    /// 2 ln ln p + 2.
    pub grh_reference: f64,
    /// (463/252) ln ln p.
    pub unconditional_reference: f64,
    /// tail / (N^(-252/463) ln p): the tail against its predicted decay.
    pub tail_ratio: f64,
    /// Whether the n = p term (ln p)/p is counted, per the multiples-of-p
    /// convention.
    pub include_p_term: bool,
    /// Terms of the full sum, ascending in n.
    pub contributing_terms: Vec<IharaTerm>,
}

fn sum_terms(terms: &[(u64, u64, u32)]) -> (f64, Vec<IharaTerm>) {
    let mut acc = KahanSum::default();
    let mut records = Vec::with_capacity(terms.len());
    for &(n, base, _) in terms {
        let lambda = (base as f64).ln();
        let contribution = lambda / n as f64;
        acc.add(contribution);
        records.push(IharaTerm { n, lambda, contribution });
    }
    (acc.value(), records)
}

fn check_cutoff(ctx: &PrimeContext, n: u64) -> Result<()> {
    if n < 1 || n > ctx.p {
        return Err(Error::Domain(format!(
            "the partial-sum cutoff must satisfy 1 <= N <= p, got N = {n} for p = {}",
            ctx.p
        )));
    }
    Ok(())
}

fn build_report(ctx: &PrimeContext, n: u64, include_p: bool, brute: bool) -> IharaReport {
    let full_terms = vanishing_prime_powers(ctx, ctx.p, include_p, brute);
    let (s_p_full, contributing_terms) = sum_terms(&full_terms);
    let s_p_partial = if n == ctx.p {
        s_p_full
    } else {
        // The terms up to n are exactly the leading run of the full list.
        let cut = full_terms.partition_point(|&(v, _, _)| v <= n);
        sum_terms(&full_terms[..cut]).0
    };
    let tail = s_p_full - s_p_partial;
    let p = ctx.p as f64;
    let lnln_p = p.ln().ln();
    IharaReport {
        p: ctx.p,
        n,
        s_p_partial,
        s_p_full,
        tail,
        mertens_at_n: mertens_sum(n),
        grh_reference: 2.0 * lnln_p + 2.0,
        unconditional_reference: CRITICAL_EXPONENT * lnln_p,
        tail_ratio: tail / ((n as f64).powf(-TAIL_DECAY_EXPONENT) * p.ln()),
        include_p_term: include_p,
        contributing_terms,
    }
}

/// S_p(N) for 1 <= N <= p, convention term included when p <= N.
pub fn ihara_partial(ctx: &PrimeContext, n: u64) -> Result<f64> {
    check_cutoff(ctx, n)?;
    Ok(sum_terms(&vanishing_prime_powers(ctx, n, true, false)).0)
}

/// The full sum S_p with both reference levels.
pub fn ihara_full(ctx: &PrimeContext) -> IharaReport {
    build_report(ctx, ctx.p, true, false)
}

/// `ihara_full` with explicit convention and evaluation-path choices.
pub fn ihara_full_with(ctx: &PrimeContext, include_p_term: bool, brute: bool) -> IharaReport {
    build_report(ctx, ctx.p, include_p_term, brute)
}

/// Report at cutoff N: partial sum, tail S_p - S_p(N), and the tail measured
/// against N^(-252/463) ln p.
pub fn tail_report(ctx: &PrimeContext, n: u64) -> Result<IharaReport> {
    tail_report_with(ctx, n, true, false)
}

/// `tail_report` with explicit convention and evaluation-path choices.
pub fn tail_report_with(
    ctx: &PrimeContext,
    n: u64,
    include_p_term: bool,
    brute: bool,
) -> Result<IharaReport> {
    check_cutoff(ctx, n)?;
    Ok(build_report(ctx, n, include_p_term, brute))
}

/// The unrestricted sum Σ_{n <= N} Λ(n)/n over all prime powers, ascending,
/// compensated. Classically this is ln N + O(1).
pub fn mertens_sum(n: u64) -> f64 {
    let mut terms: Vec<(u64, f64)> = Vec::new();
    for l in primes_up_to(n) {
        let ln_l = (l as f64).ln();
        let mut value = l;
        loop {
            terms.push((value, ln_l / value as f64));
            match value.checked_mul(l) {
                Some(next) if next <= n => value = next,
                _ => break,
            }
        }
    }
    terms.sort_unstable_by_key(|t| t.0);
    let mut acc = KahanSum::default();
    for (_, t) in terms {
        acc.add(t);
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermatq::is_vanishing;
    use crate::modarith::make_context;

    const EPS: f64 = 1e-12;

    #[test]
    fn partial_examples() {
        let ctx = make_context(11).unwrap();
        assert_eq!(ihara_partial(&ctx, 2).unwrap(), 0.0);
        let expect = 3f64.ln() / 3.0 + 3f64.ln() / 9.0;
        assert!((ihara_partial(&ctx, 10).unwrap() - expect).abs() < EPS);
        let ctx5 = make_context(5).unwrap();
        assert!((ihara_partial(&ctx5, 5).unwrap() - 5f64.ln() / 5.0).abs() < EPS);
        assert_eq!(ihara_partial(&ctx5, 4).unwrap(), 0.0);
    }

    #[test]
    fn partial_cutoff_validation() {
        let ctx = make_context(11).unwrap();
        assert!(matches!(ihara_partial(&ctx, 0), Err(Error::Domain(_))));
        assert!(matches!(ihara_partial(&ctx, 12), Err(Error::Domain(_))));
        assert!(matches!(tail_report(&ctx, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn full_report_values() {
        let ctx = make_context(11).unwrap();
        let r = ihara_full(&ctx);
        let s11 = 4.0 * 3f64.ln() / 9.0 + 11f64.ln() / 11.0;
        assert!((r.s_p_full - s11).abs() < 1e-9);
        assert!((r.s_p_full - 0.706_262_607_642_244_1).abs() < 1e-9);
        assert_eq!(r.s_p_partial, r.s_p_full);
        assert_eq!(r.tail, 0.0);
        assert_eq!(r.n, 11);
        assert!(r.include_p_term);
        assert_eq!(
            r.contributing_terms.iter().map(|t| t.n).collect::<Vec<_>>(),
            vec![3, 9, 11]
        );
        // Reference levels straight from their formulas.
        let lnln = 11f64.ln().ln();
        assert!((r.grh_reference - (2.0 * lnln + 2.0)).abs() < EPS);
        assert!((r.grh_reference - 3.749_182_765_847_377_8).abs() < 1e-9);
        assert!((r.unconditional_reference - CRITICAL_EXPONENT * lnln).abs() < EPS);

        let ctx5 = make_context(5).unwrap();
        let r5 = ihara_full(&ctx5);
        assert!((r5.s_p_full - 5f64.ln() / 5.0).abs() < EPS);
        assert_eq!(r5.contributing_terms.len(), 1);
    }

    #[test]
    fn convention_term_flag() {
        let ctx = make_context(11).unwrap();
        let with = ihara_full_with(&ctx, true, false);
        let without = ihara_full_with(&ctx, false, false);
        assert!((with.s_p_full - without.s_p_full - 11f64.ln() / 11.0).abs() < EPS);
        assert!(!without.include_p_term);
        assert!(without.contributing_terms.iter().all(|t| t.n != 11));
    }

    #[test]
    fn wieferich_partial() {
        let ctx = make_context(1093).unwrap();
        assert!((ihara_partial(&ctx, 2).unwrap() - 2f64.ln() / 2.0).abs() < EPS);
        let r = tail_report(&ctx, 2).unwrap();
        assert!((r.tail - (r.s_p_full - 2f64.ln() / 2.0)).abs() < EPS);
        assert!((r.s_p_full - 0.698_871_634_449_345_1).abs() < 1e-9);
    }

    #[test]
    fn tail_report_consistency() {
        let ctx = make_context(11).unwrap();
        let r = tail_report(&ctx, 10).unwrap();
        assert!((r.s_p_partial - (3f64.ln() / 3.0 + 3f64.ln() / 9.0)).abs() < EPS);
        assert!((r.tail - 11f64.ln() / 11.0).abs() < EPS);
        let predicted = 10f64.powf(-TAIL_DECAY_EXPONENT) * 11f64.ln();
        assert!((r.tail_ratio - r.tail / predicted).abs() < EPS);
        assert_eq!(r.mertens_at_n, mertens_sum(10));
        let ctx5 = make_context(5).unwrap();
        let r5 = tail_report(&ctx5, 5).unwrap();
        assert_eq!(r5.tail, 0.0);
        assert_eq!(r5.tail_ratio, 0.0);
    }

    #[test]
    fn partial_is_monotone_and_dominated_by_mertens() {
        for p in [11u64, 101, 1093] {
            let ctx = make_context(p).unwrap();
            let mut prev = 0.0;
            for n in 1..=p.min(200) {
                let s = ihara_partial(&ctx, n).unwrap();
                assert!(s + EPS >= prev, "p = {p}, n = {n}");
                assert!(s <= mertens_sum(n) + EPS, "p = {p}, n = {n}");
                prev = s;
            }
        }
    }

    #[test]
    fn summation_orders_agree() {
        // Ascending-n (the implementation) vs grouped-by-prime accumulation.
        for p in [11u64, 101, 499, 1093] {
            let ctx = make_context(p).unwrap();
            let report = ihara_full(&ctx);
            let mut grouped = KahanSum::default();
            for l in primes_up_to(p) {
                if l == p {
                    grouped.add((l as f64).ln() / l as f64);
                    continue;
                }
                if is_vanishing(&ctx, l) {
                    let mut value = l;
                    loop {
                        grouped.add((l as f64).ln() / value as f64);
                        match value.checked_mul(l) {
                            Some(next) if next <= p => value = next,
                            _ => break,
                        }
                    }
                }
            }
            assert!(
                (report.s_p_full - grouped.value()).abs() < EPS,
                "p = {p}: {} vs {}",
                report.s_p_full,
                grouped.value()
            );
        }
    }

    #[test]
    fn brute_route_is_identical() {
        for p in [11u64, 101, 1093] {
            let ctx = make_context(p).unwrap();
            let fast = ihara_full(&ctx);
            let slow = ihara_full_with(&ctx, true, true);
            // Same term sequence, same accumulation: bit-identical.
            assert_eq!(fast, slow, "p = {p}");
        }
    }

    #[test]
    fn mertens_examples() {
        assert_eq!(mertens_sum(1), 0.0);
        let closed =
            7.0 * 2f64.ln() / 8.0 + 4.0 * 3f64.ln() / 9.0 + 5f64.ln() / 5.0 + 7f64.ln() / 7.0;
        assert!((mertens_sum(10) - closed).abs() < EPS);
        assert!((mertens_sum(10) - 1.694_650_657_924_468_7).abs() < 1e-12);
    }

    #[test]
    fn mertens_tracks_log() {
        for n in [100u64, 1000, 10_000] {
            let deficit = mertens_sum(n) - (n as f64).ln();
            assert!(deficit.abs() < 2.0, "n = {n}: {deficit}");
            // The deficit settles near -0.58 at these scales.
            assert!(deficit < 0.0 && deficit > -1.0, "n = {n}: {deficit}");
        }
    }
}
