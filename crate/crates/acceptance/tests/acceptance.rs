//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use clap::Parser;
use fairflip::cli::{run, Cli};
use fairflip::parallel;
use fairflip_core::exact::{
    expected_tosses, flawed_win_probability, pr_match, pr_match_given_mismatch, pr_triple,
    pr_two_doubles, triple_advantage,
};
use fairflip_core::extractor::{
    decide_blind, decide_sound_von_neumann, transduce, DecisionOutcome, Player, SoundEvent, Toss,
};
use fairflip_core::oracle::{absorbing_solve, joint_event_prob, EventPattern};
use fairflip_core::simulate::{SeededSource, TrialConfig};
use fairflip_core::stats::{chi_square_uniform, BitCounts, Significance};
use fairflip_core::{CoinBias, Distribution, ProtocolKind, Result};

struct Check {
    ok: bool,
    detail: String,
}

impl Check {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Check { ok, detail: detail.into() }
    }
}

fn bias(p: f64) -> CoinBias {
    CoinBias::new(p).unwrap()
}

fn random_distribution(src: &mut SeededSource, n: usize) -> Distribution {
    // alternate dense and sparse draws so some supports are partial
    let sparse = src.unit() < 0.3;
    let mut w: Vec<f64> = (0..n)
        .map(|_| if sparse && src.unit() < 0.4 { 0.0 } else { src.unit() })
        .collect();
    if w.iter().all(|&x| x == 0.0) {
        w[0] = 1.0;
    }
    Distribution::normalize(w).unwrap()
}

fn doubles_versus_triple() -> Check {
    let mut worst = f64::NEG_INFINITY;
    let mut violations = 0;
    for n in 2..=8 {
        let mut src = SeededSource::new(2024, n as u64);
        for _ in 0..10_000 {
            let d = random_distribution(&mut src, n);
            let gap = pr_two_doubles(&d) - pr_triple(&d);
            worst = worst.max(gap);
            if gap > 1e-12 {
                violations += 1;
            }
        }
    }

    let mut equality_err: f64 = 0.0;
    for n in 2..=8usize {
        for mask in 1u32..1 << n {
            let w: Vec<f64> = (0..n).map(|i| f64::from(mask >> i & 1)).collect();
            let d = Distribution::normalize(w).unwrap();
            equality_err = equality_err.max((pr_two_doubles(&d) - pr_triple(&d)).abs());
        }
        for face in 0..n {
            let d = Distribution::point_mass(n, face).unwrap();
            equality_err = equality_err.max((pr_two_doubles(&d) - pr_triple(&d)).abs());
        }
    }
    Check::new(
        violations == 0 && equality_err <= 1e-12,
        format!("70000 draws, max gap {worst:.3e}, {violations} violations, equality error {equality_err:.1e}"),
    )
}

fn advantage_curve() -> Check {
    let at_peak = triple_advantage(bias(0.8535533906));
    let (mut best, mut best_p) = (f64::NEG_INFINITY, 0.0);
    for i in 0..=100_000u32 {
        let p = f64::from(i) * 1e-5;
        let v = triple_advantage(bias(p));
        if v > best {
            best = v;
            best_p = p;
        }
    }
    let half_width = 0.5 / 2f64.sqrt();
    let offset = (best_p - (0.5 + half_width)).abs().min((best_p - (0.5 - half_width)).abs());
    Check::new(
        (at_peak - 0.0625).abs() <= 1e-9 && (best - 0.0625).abs() <= 1e-8 && offset <= 1e-4,
        format!("value at 0.8535533906 = {at_peak:.12}, grid max {best:.12} at p = {best_p:.5}"),
    )
}

fn worked_example() -> Result<Check> {
    let d = Distribution::new(vec![0.8, 0.1, 0.1])?;
    let m = pr_match(&d);
    let c = pr_match_given_mismatch(&d)?;
    let om = joint_event_prob(&d, EventPattern::Match)?;
    let oc = joint_event_prob(&d, EventPattern::MatchGivenMismatch)?;
    Ok(Check::new(
        (m - 0.66).abs() <= 1e-12
            && (c - 0.146 / 0.34).abs() <= 1e-12
            && (om - m).abs() <= 1e-12
            && (oc - c).abs() <= 1e-12,
        format!("match = {m:.12}, match given mismatch = {c:.12}, enumeration = ({om:.12}, {oc:.12})"),
    ))
}

fn two_sided_symmetry() -> Result<Check> {
    let mut worst: f64 = 0.0;
    for i in 1..=999u32 {
        let d = bias(f64::from(i) / 1000.0).to_distribution();
        worst = worst.max((pr_match_given_mismatch(&d)? - 0.5).abs());
    }
    Ok(Check::new(worst <= 1e-12, format!("999 values, max deviation {worst:.1e}")))
}

fn chain_agreement() -> Result<(Check, Check)> {
    let mut worst: f64 = 0.0;
    for i in 1..=99u32 {
        let b = bias(f64::from(i) / 100.0);
        for kind in ProtocolKind::ALL {
            let chain = absorbing_solve(kind, b)?;
            worst = worst
                .max((chain.p1_win - flawed_win_probability(kind, b)?).abs())
                .max((chain.expected_tosses - expected_tosses(kind, b)?).abs());
        }
    }
    let b = bias(0.999);
    let svn = absorbing_solve(ProtocolKind::SoundVonNeumann, b)?;
    let win_ok = (svn.p1_win - 0.998002).abs() <= 1e-9;
    let agree = Check::new(
        worst <= 1e-9 && win_ok,
        format!("6 protocols x 99 values, max deviation {worst:.1e}; p1_win at 0.999 = {:.9}", svn.p1_win),
    );
    // the stated target for the average cost at p = 0.999
    let cost = Check::new(
        (svn.expected_tosses - 1001.001).abs() <= 0.01,
        format!("expected tosses at 0.999 = {:.6}, target 1001.001 +/- 0.01", svn.expected_tosses),
    );
    Ok((agree, cost))
}

fn blind_fairness() -> Result<Check> {
    let trials = 1_000_000u64;
    let tol = 4.0 * (0.25 / trials as f64).sqrt();
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let b = bias(p);
        let r = parallel::run_protocol_trials(&TrialConfig::new(ProtocolKind::Blind, b, trials, 42), None)?;
        let target = expected_tosses(ProtocolKind::Blind, b)?;
        let z = (r.mean_tosses - target) / r.tosses_std_error;
        ok &= r.undecided == 0 && (r.p1_rate - 0.5).abs() < tol && z.abs() <= 5.0;
        parts.push(format!("p={p}: rate {:.5}, cost z {z:+.2}", r.p1_rate));
    }
    Ok(Check::new(ok, parts.join("; ")))
}

fn exhaustive_truncation() -> Check {
    let (len, p) = (14usize, 0.7f64);
    let run = |decide: fn(Vec<SoundEvent>) -> Result<DecisionOutcome>, target: f64| {
        let (mut p1, mut p2) = (0.0, 0.0);
        for code in 0..1u32 << len {
            let tosses: Vec<Toss> = (0..len).map(|i| Toss::from_bit(code >> i & 1 == 1)).collect();
            let heads = code.count_ones() as i32;
            let w = p.powi(heads) * (1.0 - p).powi(len as i32 - heads);
            match decide(transduce(&tosses).unwrap()) {
                Ok(o) if o.winner == Player::One => p1 += w,
                Ok(_) => p2 += w,
                Err(_) => {}
            }
        }
        let decided = p1 + p2;
        let undecided = 1.0 - decided;
        // the undecided mass can move the share by at most this much
        let bound = undecided / decided;
        let share = p1 / decided;
        ((share - target).abs() <= bound + 1e-12, share, bound)
    };
    let (blind_ok, blind, blind_bound) = run(decide_blind, 0.5);
    let (svn_ok, svn, svn_bound) = run(decide_sound_von_neumann, 2.0 * p * p - 2.0 * p + 1.0);
    Check::new(
        blind_ok && svn_ok,
        format!("blind share {blind:.9} (bound {blind_bound:.2e}), sound-vn share {svn:.6} (bound {svn_bound:.2e})"),
    )
}

fn extraction_quality() -> Result<Check> {
    let b = bias(0.8);
    let passes = |kind: ProtocolKind| -> Result<usize> {
        let mut n = 0;
        for seed in 0..100 {
            let bits = parallel::seeded_bits(kind, b, seed, 100_000, None)?;
            if !chi_square_uniform(BitCounts::from_bits(&bits), Significance::P01)?.reject {
                n += 1;
            }
        }
        Ok(n)
    };
    let blind = passes(ProtocolKind::Blind)?;
    let control = 100 - passes(ProtocolKind::SingleSound)?;
    Ok(Check::new(
        blind >= 95 && control >= 99,
        format!("blind passes {blind}/100 seeds, single-sound rejected {control}/100"),
    ))
}

fn reproducibility() -> Check {
    let cases: [&[&str]; 4] = [
        &["simulate", "--protocol", "blind", "--p", "0.3", "--trials", "200000", "--seed", "9", "--json"],
        &["simulate", "--protocol", "four-toss", "--p", "0.8", "--trials", "100000", "--seed", "9", "--csv"],
        &["extract", "--mode", "blind", "--p", "0.8", "--bits", "50000", "--seed", "9", "--json"],
        &["extract", "--mode", "sound-vn", "--p", "0.6", "--bits", "20000", "--seed", "9", "--csv"],
    ];
    let run = |args: &[&str], threads: &str| {
        let argv = ["fairflip"].into_iter().chain(args.iter().copied()).chain(["--threads", threads]);
        let cli = Cli::try_parse_from(argv).expect("valid arguments");
        run(&cli).expect("invocation succeeds").stdout
    };
    let mut same = 0;
    for args in cases {
        let one = run(args, "1");
        if ["2", "4", "7"].iter().all(|t| run(args, t) == one) {
            same += 1;
        }
    }
    Check::new(same == cases.len(), format!("{same}/{} invocations identical across 1, 2, 4, 7 threads", cases.len()))
}

fn main() {
    let mut results: Vec<(&str, Check)> = Vec::new();
    let failed = |e: fairflip_core::Error| Check::new(false, format!("error: {e}"));

    results.push(("1  two doubles never beat a triple", doubles_versus_triple()));
    results.push(("2  triple advantage peak", advantage_curve()));
    results.push(("3  three-face worked example", worked_example().unwrap_or_else(failed)));
    results.push(("4  two-faced conditional match is fair", two_sided_symmetry().unwrap_or_else(failed)));
    match chain_agreement() {
        Ok((agree, cost)) => {
            results.push(("5a chains match closed forms", agree));
            results.push(("5b sound-vn cost at p = 0.999", cost));
        }
        Err(e) => results.push(("5  chains match closed forms", failed(e))),
    }
    results.push(("6  blind protocol fairness", blind_fairness().unwrap_or_else(failed)));
    results.push(("7  exhaustive length-14 truncation", exhaustive_truncation()));
    results.push(("8  extraction quality", extraction_quality().unwrap_or_else(failed)));
    results.push(("9  thread-count reproducibility", reproducibility()));

    let mut failures = 0;
    for (name, check) in &results {
        let tag = if check.ok { "PASS" } else { "FAIL" };
        println!("{tag}  criterion {name}: {}", check.detail);
        failures += usize::from(!check.ok);
    }
    println!("acceptance: {} passed, {failures} failed", results.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
