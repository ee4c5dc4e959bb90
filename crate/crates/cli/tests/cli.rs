//! End-to-end checks of the `fq` binary: frozen output lines, header shapes,
//! exit codes, format parity, cache reuse, and worker-count determinism.

use std::path::Path;
use std::process::{Command, Output};

use num_bigint::BigUint;

fn fq() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fq"))
}

fn run(args: &[&str]) -> Output {
    fq().args(args).output().expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "args {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn frozen_single_prime_outputs() {
    assert_eq!(run_ok(&["quotient", "--p", "5", "--n", "2"]), "p,n,value\n5,2,3\n");
    assert_eq!(run_ok(&["countt", "--p", "11", "--k", "121"]), "p,K,count\n11,121,10\n");
    assert_eq!(
        run_ok(&["setq", "--p", "11", "--n", "11"]),
        "p,N,kind,cardinality,includes_multiples_of_p,members\n11,11,Q,4,true,\"1;3;9;11\"\n"
    );
    assert_eq!(
        run_ok(&["setr", "--p", "11", "--n", "11", "--include-p-term", "false"]),
        "p,N,kind,cardinality,includes_multiples_of_p,members\n11,11,R,1,false,\"3\"\n"
    );
    assert_eq!(
        run_ok(&["ihara", "--p", "11"]),
        "p,N,s_p_partial,s_p_full,tail,mertens_at_N,grh_reference,unconditional_reference\n\
         11,11,7.0626260764224413e-1,7.0626260764224413e-1,0.0000000000000000e0,\
         1.9126411372697754e0,3.7491827658473778e0,1.6068881360859841e0\n"
    );
    assert_eq!(
        run_ok(&["index", "--p", "11"]),
        "p,log_index,half_p2_sp,unconditional_bound_main,conditional_reference\n\
         11,1.8676408907357864e1,4.2728887762355768e1,9.7216732233202038e1,\
         1.0582555733376637e2\n"
    );
    assert_eq!(
        run_ok(&["mertens", "--n", "10"]),
        "N,mertens,log_N,deficit\n\
         10,1.6946506579244689e0,2.3025850929940459e0,-6.0793443506957701e-1\n"
    );
    assert_eq!(
        run_ok(&["taus", "--n", "1000000", "--s", "2"]).lines().nth(1).unwrap().split(',').nth(2),
        Some("49")
    );
}

#[test]
fn partial_sum_row_splits_into_head_and_tail() {
    assert_eq!(
        run_ok(&["ihara", "--p", "1093", "--n", "2"]),
        "p,N,s_p_partial,s_p_full,tail,mertens_at_N,grh_reference,unconditional_reference\n\
         1093,2,3.4657359027997264e-1,6.9887163444934508e-1,3.5229804416937244e-1,\
         3.4657359027997264e-1,5.8908719270589760e0,3.5743525837863208e0\n"
    );
}

#[test]
fn headers_are_pinned() {
    let cases: &[(&[&str], &str)] = &[
        (&["quotient", "--p", "3", "--n", "2"], "p,n,value"),
        (&["ell", "--p", "3"], "p,ell"),
        (&["setq", "--p", "3", "--n", "5"], "p,N,kind,cardinality,includes_multiples_of_p,members"),
        (&["setr", "--p", "3", "--n", "5"], "p,N,kind,cardinality,includes_multiples_of_p,members"),
        (&["countt", "--p", "3", "--k", "9"], "p,K,count"),
        (&["taus", "--n", "12", "--s", "2"], "n,s,tau,bound_main_term,exponent"),
        (
            &["ihara", "--p", "3"],
            "p,N,s_p_partial,s_p_full,tail,mertens_at_N,grh_reference,unconditional_reference",
        ),
        (&["mertens", "--n", "10"], "N,mertens,log_N,deficit"),
        (
            &["index", "--p", "3"],
            "p,log_index,half_p2_sp,unconditional_bound_main,conditional_reference",
        ),
        (
            &["granville", "--p", "3"],
            "p,bound,u,N,K,alpha,s,include_p_term,hypothesis_met,loglog_below_one,lhs,rhs,ratio,verdict",
        ),
        (
            &["ratios", "--p", "3", "--n", "5", "--k", "9"],
            "p,bound,u,N,K,alpha,s,include_p_term,hypothesis_met,loglog_below_one,lhs,rhs,ratio,verdict",
        ),
    ];
    for (args, header) in cases {
        let stdout = run_ok(args);
        assert_eq!(stdout.lines().next(), Some(*header), "args {args:?}");
    }
}

#[test]
fn sweep_covers_exactly_the_odd_primes_in_range() {
    let stdout = run_ok(&["ihara", "--p-min", "3", "--p-max", "13"]);
    let ps: Vec<&str> =
        stdout.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(ps, vec!["3", "5", "7", "11", "13"]);
}

#[test]
fn smallest_nonvanishing_is_two_for_every_small_prime() {
    // Confirmed here against an independent big-integer power: none of these
    // primes has 2^(p-1) = 1 mod p².
    let stdout = run_ok(&["ell", "--p-min", "3", "--p-max", "100"]);
    let rows: Vec<&str> = stdout.lines().skip(1).collect();
    assert_eq!(rows.len(), 24);
    for row in rows {
        let mut parts = row.split(',');
        let p: u64 = parts.next().unwrap().parse().unwrap();
        assert_eq!(parts.next(), Some("2"), "p = {p}");
        let two = BigUint::from(2u32);
        let p2 = BigUint::from(p) * BigUint::from(p);
        assert_ne!(
            two.modpow(&BigUint::from(p - 1), &p2),
            BigUint::from(1u32),
            "p = {p}"
        );
    }
}

#[test]
fn csv_and_jsonl_carry_the_same_values() {
    let csv = run_ok(&["ihara", "--p", "11"]);
    let jsonl = run_ok(&["ihara", "--p", "11", "--format", "jsonl"]);
    let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
    let fields: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    let row: serde_json::Value = serde_json::from_str(jsonl.trim()).unwrap();
    assert_eq!(jsonl.lines().count(), 1);
    for (name, field) in header.iter().zip(&fields) {
        let json_value = &row[*name];
        match json_value {
            serde_json::Value::Number(n) if n.is_u64() => {
                assert_eq!(n.as_u64().unwrap().to_string(), *field, "{name}");
            }
            serde_json::Value::Number(n) => {
                assert_eq!(n.as_f64().unwrap(), field.parse::<f64>().unwrap(), "{name}");
            }
            other => panic!("unexpected value for {name}: {other}"),
        }
    }
}

#[test]
fn definitional_paths_match_byte_for_byte() {
    for args in [
        vec!["setq", "--p", "101", "--n", "2000"],
        vec!["setr", "--p", "1093", "--n", "1093"],
        vec!["ihara", "--p", "101"],
        vec!["index", "--p", "101"],
        vec!["granville", "--p", "101"],
        vec!["ratios", "--p", "101", "--n", "101", "--k", "10201"],
    ] {
        let fast = run_ok(&args);
        let mut slow_args = args.clone();
        slow_args.push("--brute");
        assert_eq!(fast, run_ok(&slow_args), "args {args:?}");
    }
}

#[test]
fn include_p_term_flag_changes_the_convention_members() {
    let with = run_ok(&["setq", "--p", "11", "--n", "22"]);
    let without = run_ok(&["setq", "--p", "11", "--n", "22", "--include-p-term", "false"]);
    assert!(with.contains("\"1;3;9;11;22\""), "{with}");
    assert!(without.contains("\"1;3;9\""), "{without}");
}

#[test]
fn output_flag_writes_a_file_instead_of_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let stdout = run_ok(&["ihara", "--p", "11", "--output", path.to_str().unwrap()]);
    assert!(stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, run_ok(&["ihara", "--p", "11"]));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["quotient", "--p", "12", "--n", "2"],       // composite
        vec!["quotient", "--p", "2", "--n", "2"],        // below the range
        vec!["ihara", "--p-min", "3"],                  // no upper end
        vec!["ihara", "--p-min", "50", "--p-max", "10"], // inverted range
        vec!["ihara", "--p", "11", "--n", "0"],         // degenerate cutoff
        vec!["mertens", "--n", "0"],
        vec!["taus", "--n", "2", "--s", "3"],            // below the domain
        vec!["granville", "--p", "11", "--u", "0"],
        vec!["ratios", "--p", "11", "--n", "1", "--k", "5"],
        vec!["nonsense"],                                 // unknown subcommand (clap)
    ] {
        let out = run(&args);
        assert_eq!(exit_code(&out), 2, "args {args:?}");
    }
}

fn scan_ihara(cache: &Path, workers: &str) -> String {
    run_ok(&[
        "scan",
        "ihara",
        "--p-min",
        "3",
        "--p-max",
        "13",
        "--workers",
        workers,
        "--cache",
        cache.to_str().unwrap(),
    ])
}

#[test]
fn scan_caches_resumes_and_stays_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let cold = scan_ihara(&cache, "1");
    assert_eq!(cold.lines().count(), 6); // header + the five odd primes <= 13
    let cache_after_cold = std::fs::read_to_string(&cache).unwrap();
    assert_eq!(cache_after_cold.lines().count(), 5);

    // Warm rerun: byte-identical output, nothing appended.
    let warm = scan_ihara(&cache, "2");
    assert_eq!(warm, cold);
    assert_eq!(std::fs::read_to_string(&cache).unwrap(), cache_after_cold);

    // A fresh cache at a different worker count computes the same bytes.
    let other = dir.path().join("other.jsonl");
    assert_eq!(scan_ihara(&other, "2"), cold);

    // Extending the range reuses the old rows and appends only the new ones.
    let wide = run_ok(&[
        "scan", "ihara", "--p-min", "3", "--p-max", "20",
        "--cache", cache.to_str().unwrap(),
    ]);
    assert_eq!(wide.lines().count(), 8); // adds 17 and 19
    assert!(wide.starts_with(cold.as_str()));
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), 7);
}

#[test]
fn scan_distinguishes_parameter_sets() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let base = ["scan", "countt", "--p-min", "3", "--p-max", "13", "--cache"];
    let mut first = base.to_vec();
    first.push(cache.to_str().unwrap());
    first.extend(["--k", "100"]);
    run_ok(&first);
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), 5);

    // Same command, different K: separate entries.
    let mut second = base.to_vec();
    second.push(cache.to_str().unwrap());
    second.extend(["--k", "200"]);
    run_ok(&second);
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), 10);

    // Repeating either costs nothing further.
    run_ok(&first);
    run_ok(&second);
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), 10);
}

#[test]
fn scan_honors_the_cache_environment_variable() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("env.jsonl");
    let out = fq()
        .args(["scan", "ell", "--p-min", "3", "--p-max", "13"])
        .env("FQ_CACHE", &cache)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), 5);

    // Without the variable or the flag, scan has nowhere to cache: usage error.
    let out = fq()
        .args(["scan", "ell", "--p-min", "3", "--p-max", "13"])
        .env_remove("FQ_CACHE")
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn scan_requires_the_underlying_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let out = run(&[
        "scan", "setq", "--p-min", "3", "--p-max", "13",
        "--cache", cache.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("requires --n"));
}

#[test]
fn corrupt_cache_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    std::fs::write(&cache, "this is not json\n").unwrap();
    let out = run(&[
        "scan", "ihara", "--p-min", "3", "--p-max", "13",
        "--cache", cache.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("corrupt cache"));
    // The bad file is left untouched for inspection.
    assert_eq!(std::fs::read_to_string(&cache).unwrap(), "this is not json\n");
}

#[test]
fn granville_sweep_exits_clean_and_all_verdicts_hold() {
    let stdout = run_ok(&["granville", "--p-min", "3", "--p-max", "300"]);
    let rows: Vec<&str> = stdout.lines().skip(1).collect();
    // Six records per odd prime: u = 1, 2, 3, each with and without p.
    assert_eq!(rows.len() % 6, 0);
    assert!(rows.iter().all(|r| r.ends_with(",holds")), "some verdict isn't `holds`");
}

#[test]
fn jsonl_rows_parse_and_round_trip_through_the_cache_schema() {
    let stdout = run_ok(&["ratios", "--p", "11", "--n", "11", "--k", "121", "--format", "jsonl"]);
    let mut bounds = Vec::new();
    for line in stdout.lines() {
        let row: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(row["p"], 11);
        bounds.push(row["bound"].as_str().unwrap().to_string());
    }
    assert_eq!(
        bounds,
        vec![
            "thm_Qp", "thm_Rp", "cor_Qp", "cor_Rp", "lemma_sols", "cor_sp2", "grh_sp", "thm_ip",
            "grh_ip"
        ]
    );
}
