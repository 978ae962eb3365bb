//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.
//!
//!     cargo test -p shannon --release --test acceptance

use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shannon::capacity::{blahut_arimoto, bsc_capacity, capacity_grid_oracle, SolverOptions};
use shannon::channel::Channel;
use shannon::coding::{
    exact_block_correct_probability, likelihood_decode_oracle, map_rule, min_distance_decode,
    random_code, repetition_code, rule_correct_probability, BlockCode, Codeword, DecodingRule,
};
use shannon::experiment::{estimate_correct_probability, run_shannon_experiment, ExperimentConfig};
use shannon::prob::{binary_entropy, Distribution, LogBase};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn simplex(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let w: Vec<f64> = (0..n)
            .map(|_| {
                if rng.random_bool(0.2) {
                    0.0
                } else {
                    rng.random::<f64>()
                }
            })
            .collect();
        let s: f64 = w.iter().sum();
        if s > 1e-3 {
            return w.iter().map(|x| x / s).collect();
        }
    }
}

fn random_channel(rng: &mut ChaCha8Rng, max: usize) -> (Channel, Distribution) {
    let m = rng.random_range(1..=max);
    let n = rng.random_range(1..=max);
    let rows = (0..m).map(|_| simplex(rng, n)).collect();
    let input = Distribution::new(simplex(rng, m)).unwrap();
    (Channel::new(rows).unwrap(), input)
}

fn binary_entropy_values() -> Check {
    let half = binary_entropy(0.5).map_err(|e| e.to_string())?;
    let zero = binary_entropy(0.0).map_err(|e| e.to_string())?;
    let one = binary_entropy(1.0).map_err(|e| e.to_string())?;
    let tenth = binary_entropy(0.1).map_err(|e| e.to_string())?;
    ensure(
        (half - 1.0).abs() <= 1e-12
            && zero == 0.0
            && one == 0.0
            && (tenth - 0.468_996).abs() <= 1e-6,
        format!("H2(0.5)={half} H2(0)={zero} H2(1)={one} H2(0.1)={tenth:.9}"),
    )
}

fn mutual_information_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let (channel, input) = random_channel(&mut rng, 8);
        let e = channel
            .entropies(&input, LogBase::BITS)
            .map_err(|e| e.to_string())?;
        worst = worst.max((e.mutual_information() - e.mutual_information_from_input()).abs());
    }
    ensure(
        worst <= 1e-10,
        format!("1000 channels, max discrepancy {worst:.3e}"),
    )
}

fn bsc_capacity_three_ways() -> Check {
    let mut worst = 0.0f64;
    let mut worst_formula = 0.0f64;
    for p in [0.01, 0.05, 0.1, 0.25, 0.4, 0.5] {
        let closed = bsc_capacity(p, LogBase::BITS).map_err(|e| e.to_string())?;
        let channel = Channel::bsc(p).map_err(|e| e.to_string())?;
        let ba = blahut_arimoto(&channel, SolverOptions::default()).map_err(|e| e.to_string())?;
        if !ba.converged {
            return Err(format!("p={p}: iteration did not converge"));
        }
        let grid = capacity_grid_oracle(&channel, 10_001).map_err(|e| e.to_string())?;
        let xlog2x = |x: f64| if x == 0.0 { 0.0 } else { x * x.log2() };
        let formula = 1.0 + xlog2x(p) + xlog2x(1.0 - p);
        worst = worst
            .max((closed - ba.capacity).abs())
            .max((closed - grid).abs());
        worst_formula = worst_formula.max((formula - closed).abs());
    }
    ensure(
        worst <= 1e-5 && worst_formula <= 1e-12,
        format!("max disagreement {worst:.3e}, direct formula vs closed form {worst_formula:.3e}"),
    )
}

fn nearest_codeword_is_ml() -> Check {
    let mut codes: Vec<BlockCode> = [1, 3, 5, 7]
        .iter()
        .map(|&n| repetition_code(n).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..50 {
        let n = rng.random_range(1..=8u32);
        let m = rng.random_range(1..=16u64.min(1 << n));
        codes.push(random_code(n, m, i).map_err(|e| e.to_string())?);
    }
    let mut comparisons = 0u64;
    for code in &codes {
        let n = code.length();
        for bits in 0..1u64 << n {
            let received = Codeword::new(bits, n).unwrap();
            let nearest = min_distance_decode(code, &received).map_err(|e| e.to_string())?;
            for p in [0.01, 0.1, 0.3, 0.49] {
                let ml = likelihood_decode_oracle(code, &received, p).map_err(|e| e.to_string())?;
                if ml != nearest {
                    return Err(format!(
                        "n={n} received {received} p={p}: nearest {nearest}, ML {ml}"
                    ));
                }
                comparisons += 1;
            }
        }
    }
    Ok(format!(
        "{} codes, {comparisons} comparisons agree",
        codes.len()
    ))
}

fn exact_correct_probability() -> Check {
    let code = repetition_code(3).unwrap();
    let exact = exact_block_correct_probability(&code, 0.1).map_err(|e| e.to_string())?;
    let mc = estimate_correct_probability(&code, 0.1, 1_000_000, 5).map_err(|e| e.to_string())?;
    let z = (mc.estimate - exact).abs() / mc.standard_error;
    ensure(
        (exact - 0.972).abs() <= 1e-12 && z <= 4.0,
        format!(
            "exact {exact}, Monte Carlo {:.6} ({z:.2} standard errors)",
            mc.estimate
        ),
    )
}

fn shannon_trend() -> Check {
    let config = ExperimentConfig {
        p: 0.1,
        rate: 0.25,
        block_lengths: vec![8, 12, 16, 20],
        trials_per_n: 20_000,
        codes_per_n: 10,
        seed: 7,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let result = pool
        .install(|| run_shannon_experiment(&config))
        .map_err(|e| e.to_string())?;
    let means: Vec<f64> = result
        .per_n
        .iter()
        .map(|r| r.mean_correct_probability)
        .collect();
    let rising = means.windows(2).all(|w| w[1] > w[0]);
    let last = means[means.len() - 1];
    ensure(
        rising && last > 0.95 && last - means[0] >= 0.05,
        format!("means {means:.5?} over n=8,12,16,20"),
    )
}

fn map_rule_is_optimal() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut rules = 0u64;
    for _ in 0..200 {
        let (channel, input) = random_channel(&mut rng, 4);
        let (m, n) = (channel.inputs(), channel.outputs());
        let map = map_rule(&channel, &input).map_err(|e| e.to_string())?;
        let best = rule_correct_probability(&channel, &input, &map).map_err(|e| e.to_string())?;
        for index in 0..m.pow(n as u32) {
            let sigma: Vec<usize> = (0..n).map(|j| index / m.pow(j as u32) % m).collect();
            let rule = DecodingRule::new(sigma, m).unwrap();
            let pd =
                rule_correct_probability(&channel, &input, &rule).map_err(|e| e.to_string())?;
            if pd > best + 1e-12 {
                return Err(format!("rule {:?} beats MAP: {pd} > {best}", rule.sigma()));
            }
            rules += 1;
        }
    }
    Ok(format!("200 channels, {rules} rules, none beat MAP"))
}

fn reproducible_reports() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut files = Vec::new();
    for (run, threads) in ["1", "4", "4", "1"].iter().enumerate() {
        for format in ["csv", "json"] {
            let path = dir.path().join(format!("run{run}.{format}"));
            let status = Command::new(env!("CARGO_BIN_EXE_shannon"))
                .args([
                    "experiment",
                    "--p",
                    "0.1",
                    "--rate",
                    "0.25",
                    "--lengths",
                    "8,12,16",
                ])
                .args([
                    "--trials", "5000", "--codes", "4", "--seed", "11", "--format", format,
                ])
                .arg("--out")
                .arg(&path)
                .env("RAYON_NUM_THREADS", threads)
                .env_remove("SHANNON_COMPUTE_BUDGET")
                .output()
                .map_err(|e| e.to_string())?
                .status;
            if !status.success() {
                return Err(format!("experiment exited with {status}"));
            }
            files.push((format, std::fs::read(&path).map_err(|e| e.to_string())?));
        }
    }
    let identical = |format| {
        let runs: Vec<&Vec<u8>> = files
            .iter()
            .filter(|f| f.0 == format)
            .map(|f| &f.1)
            .collect();
        runs.windows(2).all(|w| w[0] == w[1])
    };
    ensure(
        identical("csv") && identical("json"),
        "4 runs at 1 and 4 workers, CSV and JSON reports compared byte for byte".into(),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("binary entropy values", binary_entropy_values),
        ("mutual information identity", mutual_information_identity),
        ("BSC capacity three ways", bsc_capacity_three_ways),
        (
            "nearest codeword equals maximum likelihood",
            nearest_codeword_is_ml,
        ),
        (
            "exact probability of correct decoding",
            exact_correct_probability,
        ),
        ("coding theorem trend", shannon_trend),
        ("MAP rule optimality", map_rule_is_optimal),
        ("reproducible reports", reproducible_reports),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} — {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} — {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
