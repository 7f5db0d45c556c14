// Copyright 2026 The corrnoise Authors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{
    fact, geometric_grid, instance_epsilon, loglog_slope, random_instance, scale_to_epsilon, series_product_f64,
};
use corrnoise::bound::{
    corollary1, corollary1_factor, corollary2_factor, g_coefficient, geometric_constant, DEFAULT_REL_TOL,
};
use corrnoise::contraction::{binomial_domination_violations, exact_partition_sum, relaxed_product_bound};
use corrnoise::verifier::{spectral_norm, verify_instance, CouplingTerm, FaultQuery, SimInstance, Simulator, Step};
use corrnoise::{CouplingSpec, Envelope, EtaProfile, NoiseModel, QubitLayout, QubitSet, Thresholds, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn constant_one_factor() -> Outcome {
    let v = corollary1_factor(1.0f64);
    check((v - 4.72).abs() < 0.005, format!("2 e^((e-1)/2) = {v:.6}"))
}

fn factorial_power_factor() -> Outcome {
    let v = corollary2_factor(2.0f64, 1.0).map_err(|e| e.to_string())?;
    check((v - 4.55).abs() < 0.005, format!("2 e^(pi^2/12) = {v:.6}"))
}

fn envelope_ceilings() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut worst, mut worst_upper) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let alpha: f64 = rng.gen_range(0.0..0.45);
        let c = geometric_constant(alpha).map_err(|e| e.to_string())?;
        let mut envs = vec![(Envelope::ConstantOne, None)];
        envs.extend([1.0, 2.0, 3.0].map(|p| (Envelope::FactorialPower { p }, Some(p))));
        for k in 1..=10 {
            for (env, p) in &envs {
                let ceiling = p.map_or(c, |p| fact(k) / (k as f64).powf(p) * c);
                let g = g_coefficient(k, env, alpha, DEFAULT_REL_TOL).map_err(|e| e.to_string())?;
                worst = worst.max(g.value / ceiling);
                worst_upper = worst_upper.max(g.upper() / ceiling);
            }
        }
    }
    check(
        worst <= 1.0 + 8.0 * f64::EPSILON,
        format!("max g_k / ceiling = {worst:.15} (certified upper {worst_upper:.12}) over 200 alphas, k <= 10"),
    )
}

fn partition_domination() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let alpha: f64 = rng.gen_range(0.0..0.25);
        let g: Vec<f64> = (0..10).map(|_| rng.gen_range(0.0..5.0)).collect();
        for r in 1..=10usize {
            let eta: Vec<f64> =
                (1..=r).map(|k| r as f64 * g[k - 1] * (2.0 * alpha).powi(k as i32) / (2.0 * fact(k))).collect();
            let lhs = exact_partition_sum(r, &eta).map_err(|e| e.to_string())?;
            let rhs = relaxed_product_bound(r, alpha, &g).map_err(|e| e.to_string())?;
            if lhs > rhs {
                return Err(format!("r = {r}, alpha = {alpha}: {lhs} > {rhs}"));
            }
            if rhs > 0.0 {
                worst = worst.max(lhs / rhs);
            }
        }
    }
    Ok(format!("max partition / relaxed = {worst:.4} over 100 draws, r <= 10"))
}

fn generating_function() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let eta: Vec<f64> = (0..12).map(|_| rng.gen_range(0.0..2.0)).collect();
        for r in 1..=12 {
            let a = exact_partition_sum(r, &eta).map_err(|e| e.to_string())?;
            worst = worst.max(rel(a, series_product_f64(r, &eta)));
        }
    }
    check(worst <= 1e-10, format!("max relative difference = {worst:.2e} over 50 draws, r <= 12"))
}

fn binomial_domination() -> Outcome {
    let bad = binomial_domination_violations(30);
    check(bad.is_empty(), format!("{} violations for k + l <= 30", bad.len()))
}

fn xx_instance(lambda_t0: f64) -> SimInstance {
    SimInstance {
        n_sys: 1,
        n_bath: 1,
        bath_h: vec![],
        sb_terms: vec![CouplingTerm {
            coeff: lambda_t0,
            qubits: QubitSet::singleton(0),
            system: "X".parse().unwrap(),
            bath: "X".parse().unwrap(),
        }],
        steps: vec![Step { duration: 1.0, locations: vec![QubitSet::singleton(0)], gates: vec![] }],
    }
}

fn analytic_fault_operator() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for a in [1e-3, 1e-2, 1e-1] {
        let v = verify_instance(&xx_instance(a), 1, Thresholds::default()).map_err(|e| e.to_string())?;
        let res = &v.results[0];
        let want = 2.0 * (a / 2.0).sin().abs();
        let eps = res.epsilon_r.ok_or("missing epsilon")?;
        ok &= (res.norm - want).abs() <= 1e-10 && res.norm <= eps && v.bound.m == 1;
        lines.push(format!("lt0={a:e}: |E|={:.6e} (err {:.1e}) eps={eps:.4e}", res.norm, (res.norm - want).abs()));
    }
    check(ok, lines.join("; "))
}

const CORPUS: usize = 50;

fn corpus() -> Vec<(SimInstance, SimInstance)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    (0..CORPUS)
        .map(|_| {
            let base = random_instance(&mut rng);
            let target = (rng.gen_range(1e-3f64.ln()..0.5f64.ln())).exp();
            let scaled = scale_to_epsilon(&base, target);
            (base, scaled)
        })
        .collect()
}

fn main_bound(corpus: &[(SimInstance, SimInstance)]) -> Outcome {
    let mut queries = 0usize;
    let mut worst = 0.0f64;
    let (mut eps_lo, mut eps_hi) = (f64::INFINITY, 0.0f64);
    for (i, (_, inst)) in corpus.iter().enumerate() {
        if inst.dim() > 256 {
            return Err(format!("instance {i} has dimension {}", inst.dim()));
        }
        let eps = instance_epsilon(inst).ok_or(format!("instance {i}: no epsilon"))?;
        if !(1e-3 * (1.0 - 1e-9)..=0.5).contains(&eps) {
            return Err(format!("instance {i}: epsilon {eps} outside [1e-3, 0.5]"));
        }
        eps_lo = eps_lo.min(eps);
        eps_hi = eps_hi.max(eps);
        let v = verify_instance(inst, 3, Thresholds::default()).map_err(|e| format!("instance {i}: {e}"))?;
        for res in &v.results {
            let bound = res.epsilon_r.ok_or("missing bound")?;
            queries += 1;
            worst = worst.max(res.norm / bound);
            if res.norm > bound {
                return Err(format!(
                    "instance {i}, locations {:?}: |E| = {:e} > eps^r = {bound:e}",
                    res.locations, res.norm
                ));
            }
        }
    }
    Ok(format!(
        "{} instances, {queries} queries with r <= 3, eps in [{eps_lo:.2e}, {eps_hi:.2e}], max |E|/eps^r = {worst:.4}",
        corpus.len()
    ))
}

fn dyson_scaling(corpus: &[(SimInstance, SimInstance)]) -> Outcome {
    let lambdas = geometric_grid(1e-4, 1e-2, 5);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut fits = 0usize;
    for (base, _) in corpus {
        let sims: Vec<SimInstance> = lambdas.iter().map(|&l| base.scaled_couplings(l)).collect();
        let sims: Vec<Simulator> = sims.iter().map(|s| Simulator::new(s).unwrap()).collect();
        for id in base.locations() {
            let norms: Vec<f64> = sims
                .iter()
                .map(|s| spectral_norm(&s.fault_operator(&FaultQuery::new([id])).unwrap()).unwrap())
                .collect();
            let slope = loglog_slope(&lambdas, &norms);
            lo = lo.min(slope);
            hi = hi.max(slope);
            fits += 1;
        }
    }
    check(
        (lo - 1.0).abs() <= 0.05 && (hi - 1.0).abs() <= 0.05,
        format!("{fits} single-location fits, slopes in [{lo:.4}, {hi:.4}]"),
    )
}

fn table_model(rng: &mut ChaCha8Rng, n: usize) -> Vec<(Vec<usize>, f64)> {
    (0..rng.gen_range(1..10))
        .map(|_| {
            let k = rng.gen_range(1..=3.min(n));
            let mut qubits: Vec<usize> = (0..n).collect();
            for i in 0..k {
                let j = rng.gen_range(i..n);
                qubits.swap(i, j);
            }
            qubits.truncate(k);
            (qubits, rng.gen_range(0.0..1.0))
        })
        .collect()
}

fn model(n: usize, entries: &[(Vec<usize>, f64)], t0: f64) -> NoiseModel<f64> {
    let norms = match CouplingSpec::table(entries.iter().cloned()).unwrap() {
        CouplingSpec::Table { norms, .. } => norms,
        CouplingSpec::Parametric { .. } => unreachable!(),
    };
    NoiseModel::new(QubitLayout::abstract_qubits(n), CouplingSpec::Table { k_max: 3.min(n), norms }, t0)
}

fn eta_linearity_monotonicity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst_linear = 0.0f64;
    for draw in 0..200 {
        let n = rng.gen_range(2..=6);
        let k_max = 3.min(n);
        let entries = table_model(&mut rng, n);
        let t0: f64 = rng.gen_range(0.01..10.0);
        let c: f64 = rng.gen_range(0.01..100.0);
        let base = model(n, &entries, t0).eta_profile(k_max).map_err(|e| e.to_string())?;
        let scaled = model(n, &entries, c * t0).eta_profile(k_max).map_err(|e| e.to_string())?;
        let mut raised = entries.clone();
        let i = rng.gen_range(0..raised.len());
        raised[i].1 += rng.gen_range(0.0..1.0);
        let up = model(n, &raised, t0).eta_profile(k_max).map_err(|e| e.to_string())?;
        for k in 1..=k_max {
            worst_linear = worst_linear.max(rel(scaled.eta_tilde(k), c * base.eta_tilde(k)));
            if up.eta_tilde(k) < base.eta_tilde(k) {
                return Err(format!("draw {draw}: raising a norm lowered eta_tilde[{k}]"));
            }
        }
    }
    check(
        worst_linear <= 4.0 * f64::EPSILON,
        format!("200 draws; max relative t0-scaling error {worst_linear:.1e}; monotone throughout"),
    )
}

fn verdict_thresholds() -> Outcome {
    let th = Thresholds::default();
    let report =
        |alpha: f64, th: Thresholds<f64>| corollary1(&EtaProfile::from_eta_tilde(vec![alpha]).unwrap(), 2, th).unwrap();
    let below = report(0.999e-5, th);
    let above = report(1e-4, th);
    let relaxed = report(1e-4, Thresholds { epsilon0: 1e-3, alpha0: 1e-4 });
    let (eb, ea) = (below.epsilon.unwrap(), above.epsilon.unwrap());
    check(
        eb < 1e-4
            && below.verdict == Verdict::Scalable
            && below.alpha_below_alpha0
            && ea > 1e-4
            && above.verdict == Verdict::NotScalable
            && relaxed.verdict == Verdict::Scalable,
        format!(
            "alpha=0.999e-5: eps={eb:.4e} {}; alpha=1e-4: eps={ea:.4e} {}; with eps0=1e-3: {}",
            below.verdict, above.verdict, relaxed.verdict
        ),
    )
}

fn main() -> ExitCode {
    let corpus_start = Instant::now();
    let corpus = corpus();
    let corpus_time = corpus_start.elapsed();

    let criteria: Vec<Criterion> = vec![
        ("constant-one closed-form factor ~ 4.72", Box::new(constant_one_factor)),
        ("factorial-power (p = 2) factor ~ 4.55", Box::new(factorial_power_factor)),
        ("envelope ceilings on g_k", Box::new(envelope_ceilings)),
        ("partition sum dominated by relaxed product", Box::new(partition_domination)),
        ("generating-function equivalence", Box::new(generating_function)),
        ("binomial domination", Box::new(binomial_domination)),
        ("analytic single-term fault operator", Box::new(analytic_fault_operator)),
        ("main bound on randomized corpus", Box::new(|| main_bound(&corpus))),
        ("first-order Dyson scaling", Box::new(|| dyson_scaling(&corpus))),
        ("eta_tilde linearity and monotonicity", Box::new(eta_linearity_monotonicity)),
        ("verdict thresholds", Box::new(verdict_thresholds)),
    ];

    println!("corpus: {CORPUS} instances built in {:.2?}", corpus_time);
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2}. {name} [{elapsed:.2?}]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2}. {name} [{elapsed:.2?}]: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
