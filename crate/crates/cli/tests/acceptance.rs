//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always shown. The
//! process fails if any criterion fails other than the known one below.

use std::process::Command;
use std::time::{Duration, Instant};

use rudin_abelian::boxdim::{box_count_report, dimension_report, takagi_sample, GraphSample, DEFAULT_POINT_CAP};
use rudin_abelian::complexity::{
    build_extremal, check_sum_identities, delta_m, extremal_failures, max_sum, min_sum, rho, BruteForce, Flavor,
};
use rudin_abelian::lambda::{
    a_exact, endpoint_diffs, holder_ratio_is_one, holder_scan, lambda_limit_probe, numerator, probe_shrink_factor,
    selfsim_check, Dyadic, EndpointRule, Quad4,
};
use rudin_abelian::regularity::{
    fig2_automaton, guess_linear_representation, kernel_closure, synthesize_dfao, verify_linear_representation,
};
use rudin_abelian::rudin::SignSeq;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(start: Instant, budget: Duration) -> (bool, String) {
    let t = start.elapsed();
    (t < budget, format!("{:.1}s of {}s", t.as_secs_f64(), budget.as_secs()))
}

fn q(s: &str) -> Quad4 {
    s.parse().unwrap()
}

fn recurrence_matches_brute_force() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for seq in [SignSeq::R, SignSeq::RPrime] {
        let mut brute = BruteForce::new(seq);
        for n in 1..=512 {
            let rep = brute.extrema(n).unwrap();
            if !rep.stabilized || rep.max != max_sum(n) as i64 {
                bad.push((seq, n));
            }
        }
    }
    let (fast, time) = within(start, Duration::from_secs(120));
    outcome(
        bad.is_empty() && fast,
        format!("n <= 512 for r and r', mismatches {}, {time}", bad.len()),
    )
}

fn table_of_small_lengths() -> Outcome {
    let m: Vec<u64> = (1..=7).map(max_sum).collect();
    let words: Vec<String> = (1..=7)
        .map(|n| build_extremal(n, Flavor::W).unwrap().word.to_string())
        .collect();
    let want = ["a", "ba", "aba", "baba", "babac", "babdba", "abdbaba"];
    let pass = m == [1, 2, 3, 4, 3, 4, 5] && words == want;
    outcome(pass, format!("M(1..7) = {m:?}, W_5 = {}", words[4]))
}

fn complexity_from_extrema() -> Outcome {
    let mut bad = 0;
    let mut brute = BruteForce::new(SignSeq::R);
    for n in 1..=512 {
        let rep = brute.extrema(n).unwrap();
        let m = rep.max;
        let lo = rep.min;
        if rep.rho as i64 != (m - lo) / 2 + 1 || m + lo != 0 || rep.rho != rho(n) || lo != min_sum(n) {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("n <= 512, violations {bad}"))
}

fn sum_identity_sweep() -> Outcome {
    let start = Instant::now();
    let v = check_sum_identities(128, 128);
    let (fast, time) = within(start, Duration::from_secs(60));
    outcome(
        v.is_empty() && fast,
        format!("16 identities, i < 128, 1 <= n < 128, violations {}, {time}", v.len()),
    )
}

fn automaton_agreement() -> Outcome {
    let a = fig2_automaton();
    let bad = (0..1u64 << 16).filter(|&n| a.eval(n) != delta_m(n) as i64).count();
    outcome(bad == 0, format!("n < 4^8, disagreements {bad}"))
}

fn regularity_witnesses() -> Outcome {
    let f = |n| delta_m(n) as i64;
    let mut parts = Vec::new();
    let mut pass = true;
    for base in [2, 4] {
        let small = kernel_closure(&f, base, 4096, 256).unwrap();
        let big = kernel_closure(&f, base, 8192, 256).unwrap();
        let stable = small.closed && big.closed && small.nodes == big.nodes && small.edges == big.edges;
        let automaton = synthesize_dfao(&big)
            .map(|d| (0..1u64 << 16).all(|n| d.eval(n) == f(n)))
            .unwrap_or(false);
        pass &= stable && automaton;
        parts.push(format!("{base}-kernel {} nodes", big.node_count()));
    }
    let m = |n| max_sum(n) as i64;
    match guess_linear_representation(&m, 2, 512, 64) {
        Ok(rep) => {
            let ok = verify_linear_representation(&rep, &m, 100_000);
            pass &= ok;
            parts.push(format!("M rank {} verified to 10^5: {ok}", rep.rank()));
        }
        Err(e) => {
            pass = false;
            parts.push(format!("M representation not found: {e}"));
        }
    }
    outcome(pass, parts.join(", "))
}

fn extremal_words() -> Outcome {
    let start = Instant::now();
    let bad: Vec<u64> = [Flavor::W, Flavor::WTilde]
        .into_iter()
        .flat_map(|f| extremal_failures(4096, f))
        .collect();
    let (fast, time) = within(start, Duration::from_secs(120));
    outcome(
        bad.is_empty() && fast,
        format!("n <= 4096, both flavors, failures {}, {time}", bad.len()),
    )
}

/// Returns the main outcome and whether the uniform endpoint rule failed in
/// exactly the known way, with the exact rule clean.
fn lambda_exactness() -> (Outcome, bool) {
    let mut parts = Vec::new();

    let mut integer_bad = 0;
    for n in 1..=4096u64 {
        let x = Quad4::integer(n).unwrap();
        let lam = numerator(&x).to_f64() / (n as f64).sqrt();
        let want = (rho(n) + 1) as f64 / (n as f64).sqrt();
        if a_exact(&x) != Dyadic::ONE || (lam - want).abs() > 1e-12 * want {
            integer_bad += 1;
        }
    }
    parts.push(format!("integers {integer_bad} bad"));

    let selfsim_bad = (0..10_000u64)
        .filter(|z| !selfsim_check(&Quad4::new(16384 + 3 * z, 7).unwrap()).unwrap())
        .count();
    parts.push(format!("selfsim {selfsim_bad} bad of 10^4"));

    let steps = lambda_limit_probe(&q("1"), 24).unwrap();
    let last = steps.last().unwrap().quotient;
    let shrink = probe_shrink_factor(&steps, 3.0).unwrap_or(0.0);
    let probe_ok = (last - 3.0).abs() < 1e-5 && shrink > 1.5;
    parts.push(format!("probe at 1 -> {last:.8}, error shrink x{shrink:.2} per step"));

    let mut uniform = Vec::new();
    let mut signed = 0;
    for k in 1..=8 {
        uniform.push(endpoint_diffs(k, EndpointRule::Uniform).unwrap().len());
        signed += endpoint_diffs(k, EndpointRule::Signed).unwrap().len();
    }
    // The -2^-k rule is wrong exactly at z = 0 (mod 4) and at z = 1, 2 (mod 4)
    // when M drops at floor(z / 4); count those from M alone.
    let known: Vec<usize> = (1..=8u32)
        .map(|k| {
            let quarter = 1u64 << (2 * k - 2);
            let drops = (0..quarter).filter(|&q| max_sum(q + 1) < max_sum(q)).count();
            (quarter - 1) as usize + 2 * drops
        })
        .collect();
    let endpoint_pass = uniform.iter().all(|&c| c == 0);
    let as_known = uniform == known && signed == 0;
    parts.push(format!(
        "endpoint sweep k <= 8: -2^-k rule violations {uniform:?}, signed rule violations {signed}"
    ));

    let pass = integer_bad == 0 && selfsim_bad == 0 && probe_ok && endpoint_pass;
    let others = integer_bad == 0 && selfsim_bad == 0 && probe_ok;
    (outcome(pass, parts.join("; ")), as_known && others)
}

fn holder_bound() -> Outcome {
    let scan = holder_scan(10, 100_000, 0x5eed).unwrap();
    let top = 1u64 << 20;
    let adjacent = (1..top - 1)
        .step_by(97)
        .all(|z| holder_ratio_is_one(10, z, z + 1).unwrap());
    let pass = scan.max_ratio <= 10.0 && adjacent;
    outcome(
        pass,
        format!(
            "max ratio {:.3} over 10^5 pairs at 4^-10, adjacent ratio 1: {adjacent}",
            scan.max_ratio
        ),
    )
}

fn box_dimension() -> Outcome {
    let start = Instant::now();
    let main = dimension_report(&q("1"), &q("4"), 3, 7).unwrap();
    let quarter = dimension_report(&q("1/4"), &q("1"), 3, 7).unwrap();
    let gap = (main.slope() - quarter.slope()).abs();

    let line = GraphSample::from_grid(1 << 18, 1 << 20, 9, DEFAULT_POINT_CAP, |z| z as f64 / 262144.0).unwrap();
    let line = box_count_report(&line, q("1"), q("4"), 3, 7).unwrap().fit.slope;
    let tak = takagi_sample(0, 1 << 18, 9, 64.0).unwrap();
    let tak = box_count_report(&tak, q("1"), q("4"), 3, 7).unwrap().fit.slope;
    let calibrated = (line - 1.0).abs() <= 0.03 && (tak - 1.5).abs() <= 0.03;

    let fit = main.main.fit;
    let (fast, time) = within(start, Duration::from_secs(300));
    let pass = (1.40..=1.60).contains(&fit.slope) && fit.r2 >= 0.99 && gap <= 0.05 && calibrated && fast;
    outcome(
        pass,
        format!(
            "slope {:.4} (r2 {:.5}), [1/4,1] slope {:.4}, calibration {line:.3}/{tak:.3}, {time}",
            fit.slope,
            fit.r2,
            quarter.slope()
        ),
    )
}

fn lambda_csv() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_rsabel"))
        .args(["lambda", "--from", "1", "--to", "4", "--step", "4^-6"])
        .output()
        .expect("run rsabel");
    if !out.status.success() {
        return outcome(false, format!("exit status {}", out.status));
    }
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header_ok = lines.next() == Some("x,lambda");
    let rows: Vec<(String, f64)> = lines
        .map(|l| {
            let (x, v) = l.rsplit_once(',').unwrap();
            (x.to_string(), v.parse().unwrap())
        })
        .collect();
    let want = [("1", 3.0), ("2", 8f64.sqrt()), ("3", 5.0 / 3f64.sqrt()), ("4", 3.0)];
    let mut bad = Vec::new();
    for (x, v) in want {
        match rows.iter().find(|r| r.0 == x) {
            Some(r) if (r.1 - v).abs() <= 0.5e-10 * v => {}
            _ => bad.push(x),
        }
    }
    let pass = header_ok && rows.len() == 3 * 4096 + 1 && bad.is_empty();
    outcome(pass, format!("{} rows, mismatches at {bad:?}", rows.len()))
}

fn main() {
    let mut unexpected = Vec::new();
    let mut report = |id: u32, name: &str, o: Outcome, expected_fail: bool| {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let note = if !o.pass && expected_fail {
            " [known: the uniform endpoint identity is false]"
        } else {
            ""
        };
        println!("criterion {id:>2} {tag} {name}: {}{note}", o.detail);
        if !o.pass && !expected_fail {
            unexpected.push(id);
        }
    };
    report(1, "recurrence vs brute force", recurrence_matches_brute_force(), false);
    report(2, "small-length table", table_of_small_lengths(), false);
    report(3, "complexity from extrema", complexity_from_extrema(), false);
    report(4, "window-sum identities", sum_identity_sweep(), false);
    report(5, "automaton agreement", automaton_agreement(), false);
    report(6, "kernel and regularity witnesses", regularity_witnesses(), false);
    report(7, "extremal words", extremal_words(), false);
    let (lam, as_known) = lambda_exactness();
    report(8, "lambda exactness", lam, as_known);
    report(9, "Holder bound", holder_bound(), false);
    report(10, "box dimension", box_dimension(), false);
    report(11, "lambda CSV on [1,4]", lambda_csv(), false);
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
