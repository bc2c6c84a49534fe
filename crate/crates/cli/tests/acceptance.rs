//! One pass/fail line per acceptance criterion, driven through the binary.
//! Built without the libtest harness so the table always prints.

use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kappa")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 report"))
}

fn checks(json: &str) -> Vec<Value> {
    let v: Value = serde_json::from_str(json).expect("valid JSON report");
    v["checks"].as_array().expect("checks array").clone()
}

fn passed(c: &Value) -> bool {
    c["status"] == "pass"
}

fn name(c: &Value) -> &str {
    c["name"].as_str().unwrap_or("")
}

/// All records of `suite` pass and there is at least one.
fn suite_ok(all: &[Value], suite: &str) -> bool {
    let s: Vec<&Value> = all.iter().filter(|c| c["suite"] == suite).collect();
    !s.is_empty() && s.iter().all(|c| passed(c))
}

/// A passing record of `suite` whose name contains every fragment.
fn has(all: &[Value], suite: &str, fragments: &[&str]) -> bool {
    all.iter().any(|c| c["suite"] == suite && passed(c) && fragments.iter().all(|f| name(c).contains(f)))
}

/// Sample count printed as `[n cases]` in a record name.
fn cases(all: &[Value], suite: &str, fragment: &str) -> usize {
    all.iter()
        .filter(|c| c["suite"] == suite && name(c).contains(fragment))
        .filter_map(|c| {
            let n = name(c);
            let i = n.find('[')?;
            n[i + 1..].split(' ').next()?.parse().ok()
        })
        .max()
        .unwrap_or(0)
}

fn main() {
    let (code1, first) = run(&["verify", "all", "--seed", "7", "--format", "json"]);
    let (code2, second) = run(&["verify", "all", "--seed", "7", "--format", "json"]);
    let all = checks(&first);

    let (_, group) = run(&["verify", "group-hopf", "--format", "json", "--timing"]);
    let group_ms = serde_json::from_str::<Value>(&group).unwrap()["elapsed_ms"].as_u64().unwrap_or(u64::MAX);
    let (jacobi_control, _) = run(&["verify", "algebra-jacobi", "--corrupt", "demo"]);

    let results: Vec<(u32, &str, bool)> = vec![
        (
            1,
            "group Hopf suite passes on >= 50 samples in under 5 s",
            suite_ok(&all, "group-hopf") && cases(&all, "group-hopf", "coassociativity") >= 50 && group_ms < 5000,
        ),
        (
            2,
            "Jacobi on 165 triples, Euclidean control fails",
            suite_ok(&all, "algebra-jacobi") && has(&all, "algebra-jacobi", &["165 cases"]) && jacobi_control == 1,
        ),
        (
            3,
            "algebra Hopf axioms and 55 coproduct-homomorphism pairs",
            suite_ok(&all, "algebra-hopf")
                && has(&all, "algebra-hopf", &["coassociativity"])
                && has(&all, "algebra-hopf", &["antipode law"])
                && has(&all, "algebra-hopf", &["counit law"])
                && has(&all, "algebra-hopf", &["coproduct is a homomorphism", "55 cases"]),
        ),
        (
            4,
            "duality: two routes on >= 50 pairs, kernels, <P1, v1 v0> = 1/k",
            suite_ok(&all, "duality")
                && cases(&all, "duality", "expansions agree") >= 50
                && has(&all, "duality", &["every algebra relation"])
                && has(&all, "duality", &["every group relation"])
                && has(&all, "duality", &["<P[1], v[1]*v[0]> = 1/k"]),
        ),
        (
            5,
            "representation closure at spins 0, 1/2, 1",
            suite_ok(&all, "rep-closure")
                && ["0", "1/2", "1"]
                    .iter()
                    .all(|s| has(&all, "rep-closure", &[&format!("spin {}: operator brackets", s), "55 cases"])),
        ),
        (
            6,
            "shell identities: q~^2 = m^2 and the deformed dispersion",
            has(&all, "momentum-shell", &["q~0^2 - q~^2 = m^2"])
                && has(&all, "momentum-shell", &["k^2 (E - 2 + 1/E) - E p^2 = 2 k^2 (c - 1)"]),
        ),
        (
            7,
            "classical limits at order 4",
            suite_ok(&all, "classical-limit")
                && has(&all, "momentum-shell", &["classical limit of the deformed momenta"])
                && has(&all, "kg", &["M^2 -> m^2"]),
        ),
        (
            8,
            "star associativity, antirep on 45 pairs, wave composition",
            suite_ok(&all, "mink-star")
                && has(&all, "mink-star", &["associativity on polynomials of degree <= 4"])
                && has(&all, "mink-star", &["compose by the coproduct"])
                && has(&all, "antirep", &["degree <= 3", "45 cases"]),
        ),
        (
            9,
            "Klein-Gordon factorization and on-shell equation",
            has(&all, "kg", &["second-order form equals the factored box form"])
                && has(&all, "kg", &["annihilates an on-shell plane wave"]),
        ),
        (
            10,
            "momentum-space operators match the induced representation",
            suite_ok(&all, "extract-compare") && all.iter().filter(|c| c["suite"] == "extract-compare").count() == 10,
        ),
        (11, "byte-identical JSON across two runs", code1 == code2 && first == second),
    ];

    for (n, what, ok) in &results {
        println!("criterion {:>2}: {} - {}", n, if *ok { "PASS" } else { "FAIL" }, what);
    }
    println!("full run exit code: {}", code1);
    let failed: Vec<u32> = results.iter().filter(|r| !r.2).map(|r| r.0).collect();
    if !failed.is_empty() || code1 != 0 {
        eprintln!("failed criteria: {:?}", failed);
        std::process::exit(1);
    }
}
