//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde_json::Value;
use succ_lab::classes::{self, PartitionSource};
use succ_lab::enumeration::{self, EnumConfig};
use succ_lab::formulas::{self, Recursion};
use succ_lab::maps;
use succ_lab::verify::{self, Status};
use succ_lab::{Arrangement, Family};

const BIN: &str = env!("CARGO_BIN_EXE_succ-lab");

/// Printed values: n, Der_n, D_n, d_n (blank at 0), Der_n - D_n.
const TABLE_A2: [[&str; 5]; 16] = [
    ["0", "1", "0", "", "+1"],
    ["1", "0", "1", "1", "-1"],
    ["2", "1", "0", "1", "+1"],
    ["3", "2", "3", "3", "-1"],
    ["4", "9", "8", "11", "+1"],
    ["5", "44", "45", "53", "-1"],
    ["6", "265", "264", "309", "+1"],
    ["7", "1.854", "1.855", "2.119", "-1"],
    ["8", "14.833", "14.832", "16.687", "+1"],
    ["9", "133.496", "133.497", "148.329", "-1"],
    ["10", "1.334.961", "1.334.960", "1.468.457", "+1"],
    ["11", "14.684.570", "14.684.571", "16.019.531", "-1"],
    ["12", "176.214.841", "176.214.840", "190.899.411", "+1"],
    ["13", "2.290.792.932", "2.290.792.933", "2.467.007.773", "-1"],
    ["14", "32.071.101.049", "32.071.101.048", "34.361.893.981", "+1"],
    ["15", "481.066.515.734", "481.066.515.735", "513.137.616.783", "-1"],
];

const D3: &[&str] = &["132", "213", "321"];
const D4: &[&str] = &["1324", "1432", "2143", "2431", "3142", "3214", "4213", "4321"];
const D41: &[&str] = &["4132", "2413", "3241"];
const D5: &[&str] = &[
    "13254", "13524", "13542", "14253", "14325", "14352", "15243", "15324", "15432",
    "21354", "21435", "21543", "24135", "24153", "24315", "25314", "25413", "25431",
    "31425", "31524", "31542", "32154", "32415", "32541", "35214", "35241", "35421",
    "41325", "41352", "41532", "42135", "42153", "42531", "43152", "43215", "43521",
    "52143", "52413", "52431", "53142", "53214", "53241", "54132", "54213", "54321",
];
const D51: &[&str] = &["51324", "51432", "25143", "24351", "35142", "32514", "42513", "43251"];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn run_bin(args: &[&str], envs: &[(&str, &str)]) -> (i32, String) {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove("SUCC_LAB_THREADS").env_remove("SUCC_LAB_CAP");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn table_a2() -> Outcome {
    let start = Instant::now();
    let (code, out) = run_bin(&["table", "-N", "15", "--group-sep", "."], &[]);
    within(start.elapsed(), Duration::from_secs(1))?;
    ensure(code == 0, || format!("exit {code}"))?;
    let rows: Vec<Vec<String>> = out
        .lines()
        .skip(2)
        .map(|l| {
            l.trim_matches('|').split('|').map(|c| c.trim().to_string()).collect()
        })
        .collect();
    ensure(rows.len() == 16, || format!("{} rows", rows.len()))?;
    for (got, want) in rows.iter().zip(TABLE_A2) {
        ensure(got == &want, || format!("row {got:?} != {want:?}"))?;
    }
    Ok("16 rows cell-identical".into())
}

fn listed(n: usize, family: &str) -> Result<BTreeSet<String>, String> {
    let (code, out) = run_bin(&["list", "-n", &n.to_string(), "--family", family], &[]);
    ensure(code == 0, || format!("list exit {code}"))?;
    Ok(out.lines().map(String::from).collect())
}

fn table_a1() -> Outcome {
    let start = Instant::now();
    let set = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
    let d4_split: BTreeSet<String> = D4.iter().chain(D41).map(|s| s.to_string()).collect();
    let d5_split: BTreeSet<String> = D5.iter().chain(D51).map(|s| s.to_string()).collect();
    let cases: Vec<(&str, usize, &str, BTreeSet<String>)> = vec![
        ("{D_2}", 2, "D", BTreeSet::new()),
        ("{d_2}", 2, "d", set(&["21"])),
        ("{D_3}", 3, "D", set(D3)),
        ("{d_3}", 3, "d", set(D3)),
        ("{D_4}", 4, "D", set(D4)),
        ("{d_41}", 4, "dn1", set(D41)),
        ("{d_4}", 4, "d", d4_split),
        ("{D_5}", 5, "D", set(D5)),
        ("{d_51}", 5, "dn1", set(D51)),
        ("{d_5}", 5, "d", d5_split),
    ];
    let mut members = 0;
    for (name, n, family, want) in cases {
        let got = listed(n, family)?;
        ensure(got == want, || format!("{name}: got {got:?}"))?;
        members += want.len();
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{members} listed members reproduced"))
}

fn formula_for(n: u64, family: Family) -> Option<BigUint> {
    match family {
        Family::All => Some(formulas::factorial(n)),
        Family::SmallD => formulas::d_small(n).ok(),
        Family::BigD => Some(formulas::d_big(n)),
        Family::Dn1 => formulas::dn1_count(n).ok(),
        Family::Derangement => Some(formulas::derangement(n)),
        Family::ExactFixed(k) => formulas::exact_fixed_formula(n, k as u64).ok(),
    }
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let cfg = EnumConfig::default();
    let mut compared = 0;
    for n in 0..=8usize {
        for family in Family::all_for(n) {
            let brute = BigUint::from(common::naive_count(n, family));
            let searched = enumeration::count(n, family, &cfg).map_err(|e| e.to_string())?;
            ensure(searched == brute, || format!("search {family} n={n}: {searched} != {brute}"))?;
            match formula_for(n as u64, family) {
                Some(f) => {
                    ensure(f == brute, || format!("formula {family} n={n}: {f} != {brute}"))?;
                    compared += 1;
                }
                // d_n needs n >= 1 and d_n1 needs n >= 2; those sets are {empty word} and empty.
                None => {
                    let expect = if family == Family::SmallD { 1u32 } else { 0 };
                    ensure(brute == BigUint::from(expect), || format!("{family} n={n} = {brute}"))?;
                }
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{compared} formula/brute-force pairs equal, {:?}", start.elapsed()))
}

fn bijection_certificates() -> Outcome {
    let cfg = EnumConfig::default();
    for n in 2..=8usize {
        let cert = maps::certify_phi(n, &cfg).map_err(|e| e.to_string())?;
        ensure(cert.injective && cert.surjective, || format!("n={n} not bijective"))?;
        let expect = formulas::d_big(n as u64 - 1);
        ensure(BigUint::from(cert.pairs.len()) == expect, || format!("n={n} pairs"))?;
        for (src, img) in &cert.pairs {
            let back = maps::phi_inverse(img).map_err(|e| e.to_string())?;
            ensure(&back == src, || format!("phi_inverse(phi({src})) = {back}"))?;
            let again = maps::phi(&back).map_err(|e| e.to_string())?;
            ensure(&again == img, || format!("phi(phi_inverse({img})) = {again}"))?;
        }
    }
    Ok("n = 2..8 bijective with D(n-1) pairs; round trips pointwise".into())
}

fn insert_n_before_1(w: &Arrangement) -> Vec<u8> {
    let n = w.len() as u8 + 1;
    w.digits()
        .iter()
        .flat_map(|&d| if d == 1 { vec![n, 1] } else { vec![d] })
        .collect()
}

fn negative_paths() -> Outcome {
    let mut examined = 0;
    for n in 2..=7usize {
        let prev = (n - 1) as u8;
        for w in common::all_words(n - 1) {
            let in_small = common::member(&w, Family::SmallD);
            let in_big = common::member(&w, Family::BigD);
            if in_big {
                continue;
            }
            let image = insert_n_before_1(&w);
            let ok = if in_small {
                image.windows(2).any(|p| p == [prev, prev + 1])
            } else {
                image.windows(2).any(|p| p[1] == p[0] + 1)
            };
            ensure(ok, || format!("n={n}: {w} escapes"))?;
            examined += 1;
        }
        let lib = verify::insertion_exception(n, &EnumConfig::default()).map_err(|e| e.to_string())?;
        ensure(lib.is_none(), || format!("library reports exception {lib:?}"))?;
    }
    Ok(format!("{examined} words examined, zero exceptions"))
}

fn identity_sweep() -> Outcome {
    let report = verify::run_all(30, 8, &EnumConfig::default());
    let required = [
        "lemma-2.1", "lemma-2.3", "lemma-3.1", "lemma-3.6", "prop-2.4", "cor-2.2", "cor-3.2",
        "cor-3.3", "cor-3.4", "cor-3.7", "cor-4.4", "cor-4.6", "cor-4.10", "prop-3.5",
        "prop-4.3", "prop-4.5", "prop-4.9", "prop-4.11", "lemma-4.7", "lemma-4.8", "prop-5.1",
        "prop-5.5", "eq-e1", "prop-6.1",
    ];
    for id in required {
        let rec = report.get(id).ok_or_else(|| format!("{id} missing"))?;
        ensure(rec.status == Status::Pass, || format!("{id}: {:?} {:?}", rec.status, rec.witness))?;
    }
    ensure(!report.has_failures(), || "report has failures".into())?;
    let (code, _) = run_bin(&["verify", "--all"], &[]);
    ensure(code == 0, || format!("verify --all exit {code}"))?;
    Ok(format!("{} pass, {} reported", report.summary.pass, report.summary.reported))
}

fn equidistribution_laws() -> Outcome {
    let cfg = EnumConfig::default();
    let part = |n, f| classes::partition(n, PartitionSource::Family(f), &cfg).map_err(|e| e.to_string());
    for n in 3..=9usize {
        let p = part(n, Family::BigD)?;
        let size = formulas::derangement(n as u64 - 1);
        ensure(p.class_sizes.iter().all(|s| s == &size), || format!("D_{n}: {:?}", p.class_sizes))?;
    }
    for n in 2..=9usize {
        let p = part(n, Family::Derangement)?;
        let size = formulas::d_small(n as u64 - 1).unwrap();
        ensure(
            p.class_sizes[0] == BigUint::default() && p.class_sizes[1..].iter().all(|s| s == &size),
            || format!("Der_{n}: {:?}", p.class_sizes),
        )?;
    }
    for n in 4..=9usize {
        let p = part(n, Family::Dn1)?;
        let size = formulas::derangement(n as u64 - 2);
        ensure(
            p.class_sizes[0] == BigUint::default() && p.class_sizes[1..].iter().all(|s| s == &size),
            || format!("d_{n}1: {:?}", p.class_sizes),
        )?;
        ensure(p.is_equidistributed(), || format!("d_{n}1 verdict"))?;
    }
    for n in 4..=9usize {
        let p = part(n, Family::SmallD)?;
        ensure(!p.is_equidistributed(), || format!("d_{n} equidistributed: {:?}", p.class_sizes))?;
    }
    for id in ["prop-4.3", "cor-4.4", "prop-4.5", "cor-4.6", "prop-4.9", "prop-4.11"] {
        let r = verify::run_one(id, 2..=9, &cfg).map_err(|e| e.to_string())?;
        ensure(r.checks[0].status == Status::Pass, || format!("{id} up to 9: {:?}", r.checks[0]))?;
    }
    Ok("all four laws hold for n up to 9".into())
}

fn prop_5_3_report() -> Outcome {
    let (code, out) = run_bin(&["verify", "prop-5.3", "--format", "json"], &[]);
    ensure(code == 0, || format!("exit {code}"))?;
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let rec = &v["checks"][0];
    ensure(rec["status"] == "REPORTED", || format!("status {}", rec["status"]))?;
    let data = rec["data"].as_array().ok_or("no data")?;
    ensure(data.len() == 6, || format!("{} partitions", data.len()))?;
    for (entry, n) in data.iter().zip(3..=8usize) {
        ensure(entry["n"] == n, || format!("entry {entry}"))?;
        // brute force: leading digit of each inverse
        let mut sizes = vec![0usize; n];
        for w in common::naive_list(n, Family::BigD) {
            sizes[common::inverse(&w).digits()[0] as usize - 1] += 1;
        }
        let want: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
        ensure(entry["class_sizes"] == serde_json::json!(want), || format!("n={n}: {entry}"))?;
        if n == 4 {
            ensure(sizes == [2, 2, 2, 2], || format!("n=4 partition {sizes:?}"))?;
        }
    }
    Ok("REPORTED; n=4 partition is 2,2,2,2".into())
}

fn determinism() -> Outcome {
    let (c1, a) = run_bin(&["verify", "--all", "--format", "json"], &[]);
    let (c2, b) = run_bin(&["verify", "--all", "--format", "json"], &[]);
    ensure(c1 == 0 && c2 == 0 && a == b, || "verify JSON differs between runs".into())?;
    for (n, family) in [("8", "d"), ("8", "der"), ("9", "D"), ("7", "dn1")] {
        let base = run_bin(&["list", "-n", n, "--family", family], &[("SUCC_LAB_THREADS", "1")]);
        for w in ["2", "4", "8"] {
            let other = run_bin(&["list", "-n", n, "--family", family], &[("SUCC_LAB_THREADS", w)]);
            ensure(other == base, || format!("list {family} n={n} differs with {w} workers"))?;
        }
    }
    Ok("identical JSON reports; lists identical for 1/2/4/8 workers".into())
}

fn sequence_extension() -> Outcome {
    let start = Instant::now();
    for n in 2..=200u64 {
        let eq2 = formulas::d_big(n);
        let mul = formulas::d_big_recursive(n, Recursion::MulShift).map_err(|e| e.to_string())?;
        let two = formulas::d_big_recursive(n, Recursion::TwoTerm).map_err(|e| e.to_string())?;
        ensure(eq2 == mul && eq2 == two, || format!("disagree at n={n}"))?;
    }
    ensure(
        formulas::d_big(1) == formulas::d_big_recursive(1, Recursion::MulShift).unwrap(),
        || "disagree at n=1".into(),
    )?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("n <= 200 agree in {:?}", start.elapsed()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 table reproduction", table_a2),
        ("2 listed arrangements", table_a1),
        ("3 oracle equivalence", oracle_equivalence),
        ("4 bijection certificates", bijection_certificates),
        ("5 insertion negative paths", negative_paths),
        ("6 identity sweep", identity_sweep),
        ("7 equidistribution laws", equidistribution_laws),
        ("8 inverse-image report", prop_5_3_report),
        ("9 determinism", determinism),
        ("10 sequence extension", sequence_extension),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
