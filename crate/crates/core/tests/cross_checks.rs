//! Cross-module consistency: the fast arithmetic against the reference
//! big-integer path at the edges of the supported range, the set/count views
//! of vanishing against each other, and the bound records against left sides
//! recomputed from scratch.

use fq_core::bigint;
use fq_core::bounds::granville_check;
use fq_core::fermatq::{
    count_power_residues, enumerate_q, enumerate_r_with, fermat_quotient, power_residues,
};
use fq_core::ihara::mertens_sum;
use fq_core::make_context;
use fq_core::primes::{primes_up_to, von_mangoldt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn quotient_matches_reference_up_to_the_range_boundary() {
    // 4294967291 is the largest prime below 2^32, 2147483647 = 2^31 - 1; both
    // push the reduction arithmetic to full width.
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for p in [3u64, 5, 65537, 2_147_483_647, 4_294_967_291] {
        let ctx = make_context(p).unwrap();
        for _ in 0..50 {
            let u = rng.gen_range(1..u64::MAX / 2);
            if u % p == 0 {
                continue;
            }
            assert_eq!(
                fermat_quotient(&ctx, u).value,
                bigint::fermat_quotient(p, u),
                "p = {p}, u = {u}"
            );
        }
    }
}

#[test]
fn set_count_and_subgroup_views_agree() {
    for p in [5u64, 11, 101] {
        let ctx = make_context(p).unwrap();
        let residues = power_residues(&ctx);
        let k = 3 * ctx.p_squared + 17;
        let q = enumerate_q(&ctx, k);
        // Every coprime member's class mod p² lies in the subgroup, and the
        // count view tallies exactly the coprime members.
        let mut coprime = 0u64;
        for &m in &q.members {
            if m % p != 0 {
                coprime += 1;
                assert!(
                    residues.binary_search(&(m % ctx.p_squared)).is_ok(),
                    "p = {p}, member {m}"
                );
            }
        }
        assert_eq!(count_power_residues(&ctx, k), coprime, "p = {p}");
    }
}

#[test]
fn mertens_sum_matches_a_direct_pass() {
    for n in [1u64, 2, 100, 3000] {
        let direct: f64 = (1..=n).map(|m| von_mangoldt(m).value() / m as f64).sum();
        assert!((mertens_sum(n) - direct).abs() < 1e-9, "n = {n}");
    }
}

#[test]
fn granville_left_sides_match_the_reference_path() {
    // u = 1 puts the window at N = p; recount the vanishing primes from the
    // big-integer definition only.
    for p in primes_up_to(60).into_iter().skip(1) {
        let ctx = make_context(p).unwrap();
        let recs = granville_check(&ctx, &[1]).unwrap();
        let reference = primes_up_to(p)
            .into_iter()
            .filter(|&l| l != p && bigint::is_vanishing(p, l))
            .count() as f64;
        assert_eq!(recs[0].lhs, reference + 1.0, "p = {p}"); // + the convention member
        assert_eq!(recs[1].lhs, reference, "p = {p}");
    }
}

#[test]
fn enumerations_respect_the_convention_flag_everywhere() {
    let ctx = make_context(11).unwrap();
    let n = 400;
    let q_with = enumerate_q(&ctx, n);
    let multiples = (n / 11) as usize;
    let without = fq_core::fermatq::enumerate_q_with(&ctx, n, false, false);
    assert_eq!(q_with.members.len(), without.members.len() + multiples);
    let r_with = enumerate_r_with(&ctx, n, true, false);
    let r_without = enumerate_r_with(&ctx, n, false, false);
    assert_eq!(r_with.members.len(), r_without.members.len() + 1);
}
