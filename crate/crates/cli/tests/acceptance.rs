//! Acceptance checks, one line per criterion.
//!
//! Runs the `fourier-minors` binary where a criterion maps to a command and
//! the library directly for the oracle comparisons. Set
//! `FOURIER_MINORS_EXTENDED=1` to include the `p = 13` table entry.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use serde_json::Value;

use fourier_minors::cyclo_factor::FieldSetup;
use fourier_minors::enumerate::k_subsets;
use fourier_minors::identities::random_pairs;
use fourier_minors::minors::{minor_det, minor_vanishes, Context};
use fourier_minors::rings::primes::is_prime;
use fourier_minors::schur::{jacobi_trudi_spec, spec_from_expansion, ssyt_expand, IndexSet, DEFAULT_EXPANSION_CAP};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or(Value::Null)
    }

    fn report(&self) -> Value {
        self.json()["report"].clone()
    }
}

fn cli(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_fourier-minors"))
        .args(args)
        .env_remove("FOURIER_MINORS_CACHE_DIR")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn csv_column(csv: &str, col: usize) -> Vec<String> {
    csv.lines().skip(1).map(|l| l.split(',').nth(col).unwrap_or("").to_string()).collect()
}

fn table_new_column() -> Check {
    let r = cli(&["table", "--pmax", "11", "--format", "csv", "--threads", "2"]);
    ensure(r.code == 0, || format!("exit {} {}", r.code, r.stderr))?;
    let got = csv_column(&r.stdout, 1);
    ensure(got == ["3", "2", "7", "17", "193"], || format!("q_new = {got:?}"))
}

fn table_new_column_extended() -> Check {
    let r = cli(&["first-prime", "--p", "13", "--method", "new", "--extended", "--threads", "4"]);
    ensure(r.code == 0, || format!("exit {} {}", r.code, r.stderr))?;
    let q = &r.report()["q"];
    ensure(*q == Value::from(1619), || format!("q_new(13) = {q}, bound {}", r.report()["bound"]))
}

fn table_zhang_column() -> Check {
    let r = cli(&["table", "--pmax", "7", "--format", "csv"]);
    ensure(r.code == 0, || format!("exit {} {}", r.code, r.stderr))?;
    let got = csv_column(&r.stdout, 2);
    ensure(got == ["3", "2", "13", "89"], || format!("q_zhang = {got:?}"))?;
    let g = cli(&["bound", "--p", "7", "--method", "zhang"]).report();
    ensure(g["value"] == "75", || format!("gamma(7) = {}", g["value"]))
}

fn bound_seven() -> Check {
    let r = cli(&["bound", "--p", "7", "--method", "new"]).report();
    ensure(r["value"] == "8", || format!("bound_new(7) = {}", r["value"]))
}

fn factor_set(p: &str, q: &str) -> BTreeSet<String> {
    cli(&["factor", "--p", p, "--q", q]).report()["factors"]
        .as_array()
        .map(|v| v.iter().filter_map(|s| s.as_str().map(String::from)).collect())
        .unwrap_or_default()
}

fn factorization() -> Check {
    let want = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
    let f11 = factor_set("7", "11");
    ensure(f11 == want(&["X^3 + 7X^2 + 6X + 10", "X^3 + 5X^2 + 4X + 10"]), || format!("{f11:?}"))?;
    let f2 = factor_set("7", "2");
    ensure(f2 == want(&["X^3 + X + 1", "X^3 + X^2 + 1"]), || format!("{f2:?}"))
}

fn trace_table() -> Check {
    let r = cli(&["field", "--p", "7", "--q", "2", "--modulus", "X^3 + X + 1"]).report();
    let t = &r["traces"];
    let got: Vec<i64> = (1..7).map(|i| t[i.to_string()].as_i64().unwrap_or(-1)).collect();
    ensure(got == [0, 0, 1, 0, 1, 1], || format!("L = {got:?}"))
}

fn coset_counts() -> Check {
    let r = cli(&["schur", "--p", "7", "--a", "0,1,3", "--b", "0,2,4", "--q", "2"]).report();
    let got = (r["m"].clone(), r["coset_counts"]["1"].clone(), r["coset_counts"]["3"].clone());
    ensure(got == ("1".into(), "2".into(), "0".into()), || format!("(m0, m1, m3) = {got:?}"))
}

fn classic() -> Check {
    let start = Instant::now();
    for p in ["2", "3", "5", "7"] {
        let r = cli(&["verify-classic", "--p", p]);
        ensure(r.code == 0 && r.report()["verified"] == true, || format!("p = {p}: {}", r.stdout))?;
    }
    ensure(start.elapsed().as_secs() < 60, || "p <= 7 took over a minute".into())?;
    let r = cli(&["verify-classic", "--p", "11", "--extended", "--threads", "2"]);
    ensure(r.code == 0 && r.report()["verified"] == true, || format!("p = 11: {}", r.stdout))?;
    ensure(r.report()["raw_minors"] == 705431, || "p = 11 raw count".into())
}

fn counterexample() -> Check {
    let r = cli(&["verify-minors", "--p", "11", "--q", "2"]);
    ensure(r.code == 1, || format!("exit {}", r.code))?;
    let v = &r.report()["first_violation"];
    let list = |x: &Value| -> Vec<usize> {
        x.as_array().map(|a| a.iter().filter_map(|e| e.as_u64()).map(|e| e as usize).collect()).unwrap_or_default()
    };
    let (a, b) = (list(&v["rows"]), list(&v["cols"]));
    let s = FieldSetup::build(11, 2).map_err(|e| e.to_string())?;
    let a = IndexSet::new(11, a).map_err(|e| e.to_string())?;
    let b = IndexSet::new(11, b).map_err(|e| e.to_string())?;
    let det = minor_det(&s, &a, &b).map_err(|e| e.to_string())?;
    ensure(det.is_zero(), || format!("det F_11[{a}, {b}] = {det} over F_2[X]/({})", s.pbar()))
}

fn example_f11() -> Check {
    let u = cli(&["uncertainty", "--p", "5", "--q", "11", "--modulus", "X - 3"]);
    ensure(u.code == 0, || format!("exit {} {}", u.code, u.stderr))?;
    let r = u.report();
    ensure(r["matrix"][1] == serde_json::json!([1, 3, 9, 5, 4]), || format!("row 1 = {}", r["matrix"][1]))?;
    ensure(r["min"] == 6 && r["vectors_scanned"] == 161050, || format!("min = {}", r["min"]))?;
    let v = cli(&["verify-minors", "--p", "5", "--q", "11", "--modulus", "X - 3"]);
    let r = v.report();
    ensure(v.code == 0 && r["verified"] == true && r["minors_checked"] == 251, || v.stdout.clone())
}

fn identity_suites() -> Check {
    let runs: [&[&str]; 6] = [
        &["identities", "--p", "5", "--exhaustive"],
        &["identities", "--p", "7", "--random", "500"],
        &["identities", "--p", "11", "--random", "500"],
        &["identities", "--p", "5", "--q", "11", "--exhaustive"],
        &["identities", "--p", "7", "--q", "2", "--exhaustive"],
        &["identities", "--p", "7", "--q", "11", "--exhaustive"],
    ];
    for args in runs {
        let r = cli(args);
        let summaries = r.report()["summaries"].as_array().cloned().unwrap_or_default();
        let ok = r.code == 0 && !summaries.is_empty() && summaries.iter().all(|s| s["failed"] == 0);
        ensure(ok, || format!("{args:?}: {}", r.stdout))?;
    }
    Ok(())
}

fn real_version() -> Check {
    let start = Instant::now();
    for p in (3..=101u64).filter(|&p| is_prime(p)) {
        let ps = p.to_string();
        let r = cli(&["real-identities", "--p", &ps]).report();
        ensure(r["minpoly_at_2"] == ps.as_str(), || format!("P(2) = {} for p = {p}", r["minpoly_at_2"]))?;
        ensure(r["chebyshev_identity"] == true, || format!("Chebyshev identity fails for p = {p}"))?;
    }
    for p in ["5", "7", "11", "13"] {
        for cmd in ["real-minors", "real-dct"] {
            let r = cli(&[cmd, "--p", p]);
            ensure(r.code == 0 && r.report()["verified"] == true, || format!("{cmd} p = {p}: {}", r.stdout))?;
        }
    }
    ensure(start.elapsed().as_secs() < 60, || "real checks took over a minute".into())
}

fn oracle_equivalence() -> Check {
    for p in [5usize, 7] {
        for k in 1..=p {
            let sets: Vec<IndexSet> = k_subsets(p, k).into_iter().map(|m| IndexSet::from_mask(p, m)).collect();
            for a in &sets {
                let e = ssyt_expand(a, DEFAULT_EXPANSION_CAP).map_err(|e| e.to_string())?;
                for b in &sets {
                    let jt = jacobi_trudi_spec(a, b).map_err(|e| e.to_string())?;
                    ensure(jt == spec_from_expansion(&e, a, b), || format!("spectra differ at ({a}, {b})"))?;
                }
            }
        }
    }
    let fields = [(5usize, 11u64), (5, 2), (5, 3), (7, 2), (7, 3), (7, 11), (7, 13), (11, 2), (11, 3), (13, 3)];
    let mut done = 0;
    for (i, &(p, q)) in fields.iter().enumerate() {
        let s = FieldSetup::build(p, q).map_err(|e| e.to_string())?;
        let ctx = Context::Finite(s.clone());
        for (a, b) in random_pairs(p, 100, 1000 + i as u64) {
            let fast = minor_vanishes(&ctx, &a, &b).map_err(|e| e.to_string())?;
            let slow = minor_det(&s, &a, &b).map_err(|e| e.to_string())?.is_zero();
            ensure(fast == slow, || format!("routes disagree at p = {p}, q = {q}, ({a}, {b})"))?;
            done += 1;
        }
    }
    ensure(done == 1000, || format!("{done} instances"))
}

fn strip_elapsed(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_s");
            map.values_mut().for_each(strip_elapsed);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_elapsed),
        _ => {}
    }
}

fn determinism() -> Check {
    let commands: [&[&str]; 14] = [
        &["factor", "--p", "13", "--q", "3"],
        &["field", "--p", "7", "--q", "11"],
        &["schur", "--p", "11", "--a", "0,2,4,6,8", "--b", "0,1,2,9,10"],
        &["bound", "--p", "11", "--method", "new"],
        &["bound", "--p", "11", "--method", "zhang"],
        &["first-prime", "--p", "7"],
        &["table", "--pmax", "7"],
        &["verify-minors", "--p", "11", "--q", "2"],
        &["verify-minors", "--p", "7", "--q", "17"],
        &["verify-classic", "--p", "7"],
        &["real-minors", "--p", "11"],
        &["real-dct", "--p", "7"],
        &["identities", "--p", "7", "--q", "2", "--random", "100"],
        &["uncertainty", "--p", "5", "--q", "11"],
    ];
    for args in commands {
        let mut outputs = Vec::new();
        for threads in ["1", "4"] {
            let mut full: Vec<&str> = args.to_vec();
            full.extend(["--threads", threads]);
            let r = cli(&full);
            let mut v = r.json();
            ensure(!v.is_null(), || format!("{full:?} produced no JSON: {}", r.stderr))?;
            strip_elapsed(&mut v);
            outputs.push(serde_json::to_string(&v).expect("serializable"));
        }
        ensure(outputs[0] == outputs[1], || format!("{args:?} differs across thread counts"))?;
    }
    let real = cli(&["real-identities", "--p", "13"]);
    ensure(real.stdout.contains("\"seed\""), || "missing seed".into())
}

fn main() {
    let extended = std::env::var("FOURIER_MINORS_EXTENDED").is_ok_and(|v| v == "1");
    let mut criteria: Vec<(&str, fn() -> Check)> = vec![
        ("1. first primes via the cyclotomic-sum bound, p <= 11", table_new_column),
        ("2. first primes via Zhang's bound, p <= 7, and Gamma_7 = 75", table_zhang_column),
        ("3. cyclotomic-sum bound for p = 7 equals 8", bound_seven),
        ("4. factors of Phi_7 over F_11 and F_2", factorization),
        ("5. trace table for p = 7, q = 2, X^3 + X + 1", trace_table),
        ("6. coset counts for A = {0,1,3}, B = {0,2,4}", coset_counts),
        ("7. all minors nonzero in characteristic 0, p <= 11", classic),
        ("8. vanishing minor for p = 11, q = 2 confirmed by elimination", counterexample),
        ("9. F_5 over F_11 with omega = 3: matrix, 251 minors, uncertainty 6", example_f11),
        ("10. scaling-sum and Frobenius-sum identity suites", identity_suites),
        ("11. real version: P(2) = p, Chebyshev identity, real minors", real_version),
        ("12. Schur routes agree; Schur test agrees with elimination", oracle_equivalence),
        ("13. identical JSON across thread counts", determinism),
    ];
    if extended {
        criteria.insert(1, ("1. (extended) first prime via the cyclotomic-sum bound, p = 13", table_new_column_extended));
    }
    let mut failures = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("PASS  {name}  ({:.1}s)", start.elapsed().as_secs_f64()),
            Err(why) => {
                failures += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    if !extended {
        println!("note  p = 13 table entry not run; set FOURIER_MINORS_EXTENDED=1 to include it");
    }
    if failures > 0 {
        eprintln!("{failures} criteria failed");
        std::process::exit(1);
    }
}
