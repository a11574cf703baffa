//! Exact winner distributions under i.i.d. reports, the expected
//! social-welfare change caused by anchoring, and the exponential-moment
//! bound on the probability that welfare drops.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::ln_factorials;
use crate::density::{level_set_measure_auto, DensityModel, ReportDistribution};
use crate::error::{Error, Result};
use crate::rules::{check_budget, for_each_composition, Histogram, VotingRule};
use crate::simplex::{anchor_menu, anchored_utility, nearest_report, AnchorParams, SimplexPoint};

pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum OutcomeProvenance {
    ExactEnumeration,
    MonteCarlo { samples: u64 },
}

/// Probability that each alternative wins, ties split uniformly.
#[derive(Debug, Clone, Serialize)]
pub struct OutcomeDistribution {
    pub probs: Vec<f64>,
    pub stderr: Vec<f64>,
    pub provenance: OutcomeProvenance,
}

/// Total utility the profile assigns to alternative `a`.
pub fn social_welfare(a: usize, profile: &[SimplexPoint]) -> Result<f64> {
    if profile.is_empty() {
        return Err(Error::InvalidInput("empty profile".into()));
    }
    if a >= profile[0].dim() {
        return Err(Error::InvalidInput(format!("alternative {a} out of range")));
    }
    Ok(profile.iter().map(|u| u[a]).sum())
}

fn normalized_probs(p: &ReportDistribution, len: usize) -> Result<Vec<f64>> {
    if p.len() != len {
        return Err(Error::InvalidInput(format!(
            "distribution has {} entries, menu has {len}",
            p.len()
        )));
    }
    let cleaned: Vec<f64> = p.probs.iter().map(|&x| x.max(0.0)).collect();
    let sum: f64 = cleaned.iter().sum();
    if sum <= 0.0 || !sum.is_finite() {
        return Err(Error::InvalidInput("distribution has no mass".into()));
    }
    Ok(cleaned.iter().map(|x| x / sum).collect())
}

/// Exact winner distribution: every split of n votes over the menu,
/// weighted by its multinomial probability, with ties sharing the weight.
pub fn outcome_distribution(
    rule: &VotingRule,
    p: &ReportDistribution,
    n: u64,
    cap: u128,
) -> Result<OutcomeDistribution> {
    if n == 0 {
        return Err(Error::InvalidInput("need n >= 1".into()));
    }
    let reports = rule.menu().len();
    let probs = normalized_probs(p, reports)?;
    check_budget(n, reports, cap)?;
    let lf = ln_factorials(n);
    let lnp: Vec<f64> = probs.iter().map(|&x| x.ln()).collect();
    let m = rule.m();
    let mut acc = vec![0.0f64; m];
    let mut carry = vec![0.0f64; m];
    let mut rule_err = None;
    for_each_composition(n, reports, |counts| {
        if rule_err.is_some() {
            return;
        }
        let mut ln_w = lf[n as usize];
        for (&h, (&lp, &prob)) in counts.iter().zip(lnp.iter().zip(&probs)) {
            if h == 0 {
                continue;
            }
            if prob == 0.0 {
                return; // impossible histogram
            }
            ln_w += h as f64 * lp - lf[h as usize];
        }
        let weight = ln_w.exp();
        let hist = Histogram::new(counts.to_vec());
        match rule.winners(&hist) {
            Ok(winners) => {
                let share = weight / winners.len() as f64;
                for a in winners {
                    // compensated accumulation keeps the total near 1 exactly
                    let y = share - carry[a];
                    let s = acc[a] + y;
                    carry[a] = (s - acc[a]) - y;
                    acc[a] = s;
                }
            }
            Err(e) => rule_err = Some(e),
        }
    });
    if let Some(e) = rule_err {
        return Err(e);
    }
    Ok(OutcomeDistribution {
        probs: acc,
        stderr: vec![0.0; m],
        provenance: OutcomeProvenance::ExactEnumeration,
    })
}

/// Winner frequencies over simulated elections: n reports drawn i.i.d. from
/// p, ties broken uniformly at random.
pub fn mc_outcome_distribution(
    rule: &VotingRule,
    p: &ReportDistribution,
    n: u64,
    elections: u64,
    seed: u64,
) -> Result<OutcomeDistribution> {
    if n == 0 || elections == 0 {
        return Err(Error::InvalidInput("need n >= 1 and elections >= 1".into()));
    }
    let reports = rule.menu().len();
    let probs = normalized_probs(p, reports)?;
    let mut cum = Vec::with_capacity(reports);
    let mut acc = 0.0;
    for &x in &probs {
        acc += x;
        cum.push(acc);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut wins = vec![0u64; rule.m()];
    let mut counts = vec![0u64; reports];
    for _ in 0..elections {
        counts.fill(0);
        for _ in 0..n {
            let x: f64 = rng.random();
            let idx = cum.partition_point(|&c| c <= x).min(reports - 1);
            counts[idx] += 1;
        }
        let winners = rule.winners(&Histogram::new(counts.clone()))?;
        let pick = winners[rng.random_range(0..winners.len())];
        wins[pick] += 1;
    }
    let e = elections as f64;
    let probs: Vec<f64> = wins.iter().map(|&w| w as f64 / e).collect();
    let stderr = probs.iter().map(|p| (p * (1.0 - p) / e).sqrt()).collect();
    Ok(OutcomeDistribution {
        probs,
        stderr,
        provenance: OutcomeProvenance::MonteCarlo { samples: elections },
    })
}

/// Winner distribution when every voter first shifts toward the anchor:
/// measures the transformed menu's level sets and enumerates from those.
pub fn anchored_outcome_distribution(
    rule: &VotingRule,
    density: &DensityModel,
    params: &AnchorParams,
    n: u64,
    samples: u64,
    seed: u64,
    cap: u128,
) -> Result<OutcomeDistribution> {
    let q = anchored_report_distribution(rule, density, params, samples, seed)?;
    outcome_distribution(rule, &q, n, cap)
}

/// Level-set masses of the anchored menu image, the anchored analogue of p.
pub fn anchored_report_distribution(
    rule: &VotingRule,
    density: &DensityModel,
    params: &AnchorParams,
    samples: u64,
    seed: u64,
) -> Result<ReportDistribution> {
    let anchored = anchor_menu(rule.menu(), params);
    level_set_measure_auto(density, &anchored, samples, seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaMode {
    Exact,
    MonteCarlo,
}

/// Tie handling inside a sampled election: average the winners' welfare
/// (matches the uniform tie-break in expectation, lower variance) or draw
/// one winner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieMode {
    Expected,
    Sampled,
}

#[derive(Debug, Clone, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct WelfareStats {
    pub n: u64,
    /// Expected total-welfare change over the n voters.
    pub expected_delta: f64,
    pub expected_delta_stderr: Option<f64>,
    /// Mean utility vector of the density.
    pub v: Vec<f64>,
    pub nu: Option<OutcomeDistribution>,
    pub nu_soc: Option<OutcomeDistribution>,
    /// Alternatives whose win probability weakly rose / fell.
    pub inc: Vec<usize>,
    pub dec: Vec<usize>,
    /// True when every falling alternative has mean utility at most that of
    /// every rising one; then the expected change cannot be negative.
    pub inc_dec_condition: Option<bool>,
    pub decrease_probability: Option<Estimate>,
    pub chernoff_bound: Option<Estimate>,
    /// The bound exceeds 1 and says nothing.
    pub chernoff_vacuous: Option<bool>,
}

/// Expected welfare change of anchoring. Exact mode computes
/// n * <v, nu_soc - nu> from enumerated winner distributions; Monte Carlo
/// mode simulates profiles and reports the sample mean of the realized
/// change. The enumerated form treats the winner as independent of each
/// voter's draw, so for small n the two modes estimate slightly different
/// means (the winner is correlated with the utilities that elected it).
#[allow(clippy::too_many_arguments)]
pub fn expected_delta_sw(
    density: &DensityModel,
    rule: &VotingRule,
    params: &AnchorParams,
    n: u64,
    mode: DeltaMode,
    samples: u64,
    seed: u64,
    cap: u128,
) -> Result<WelfareStats> {
    match mode {
        DeltaMode::Exact => exact_delta(density, rule, params, n, samples, seed, cap),
        DeltaMode::MonteCarlo => {
            let mc = simulate_deltas(density, rule, params, n, samples, seed, TieMode::Expected)?;
            Ok(WelfareStats {
                n,
                expected_delta: mc.mean_delta.value,
                expected_delta_stderr: Some(mc.mean_delta.stderr),
                v: density.mean(),
                nu: None,
                nu_soc: None,
                inc: Vec::new(),
                dec: Vec::new(),
                inc_dec_condition: None,
                decrease_probability: None,
                chernoff_bound: None,
                chernoff_vacuous: None,
            })
        }
    }
}

fn exact_delta(
    density: &DensityModel,
    rule: &VotingRule,
    params: &AnchorParams,
    n: u64,
    samples: u64,
    seed: u64,
    cap: u128,
) -> Result<WelfareStats> {
    let p = level_set_measure_auto(density, rule.menu(), samples, seed)?;
    let q = anchored_report_distribution(rule, density, params, samples, seed)?;
    let nu = outcome_distribution(rule, &p, n, cap)?;
    let nu_soc = outcome_distribution(rule, &q, n, cap)?;
    let v = density.mean();
    // centering v against its first entry changes nothing algebraically
    // (the differences sum to zero) but returns an exact 0 when v is flat
    let v0 = v[0];
    let mut delta = 0.0;
    for ((vi, q), p) in v.iter().zip(&nu_soc.probs).zip(&nu.probs) {
        delta += (vi - v0) * (q - p);
    }
    delta *= n as f64;
    let mut inc = Vec::new();
    let mut dec = Vec::new();
    for a in 0..v.len() {
        if nu_soc.probs[a] >= nu.probs[a] {
            inc.push(a);
        } else {
            dec.push(a);
        }
    }
    let max_dec = dec.iter().map(|&a| v[a]).fold(f64::NEG_INFINITY, f64::max);
    let min_inc = inc.iter().map(|&a| v[a]).fold(f64::INFINITY, f64::min);
    Ok(WelfareStats {
        n,
        expected_delta: delta,
        expected_delta_stderr: None,
        v,
        nu: Some(nu),
        nu_soc: Some(nu_soc),
        inc,
        dec,
        inc_dec_condition: Some(max_dec <= min_inc),
        decrease_probability: None,
        chernoff_bound: None,
        chernoff_vacuous: None,
    })
}

/// Monte Carlo estimates of Pr[welfare drops] and of the exponential-moment
/// upper bound E[exp(-delta)], which dominates it pointwise.
pub fn decrease_probability(
    density: &DensityModel,
    rule: &VotingRule,
    params: &AnchorParams,
    n: u64,
    samples: u64,
    seed: u64,
    tie_mode: TieMode,
) -> Result<WelfareStats> {
    let mc = simulate_deltas(density, rule, params, n, samples, seed, tie_mode)?;
    Ok(WelfareStats {
        n,
        expected_delta: mc.mean_delta.value,
        expected_delta_stderr: Some(mc.mean_delta.stderr),
        v: density.mean(),
        nu: None,
        nu_soc: None,
        inc: Vec::new(),
        dec: Vec::new(),
        inc_dec_condition: None,
        decrease_probability: Some(mc.decrease),
        chernoff_bound: Some(Estimate {
            value: mc.exp_moment.value,
            stderr: mc.exp_moment.stderr,
        }),
        chernoff_vacuous: Some(mc.exp_moment.value >= 1.0),
    })
}

struct DeltaSim {
    mean_delta: Estimate,
    decrease: Estimate,
    exp_moment: Estimate,
}

fn simulate_deltas(
    density: &DensityModel,
    rule: &VotingRule,
    params: &AnchorParams,
    n: u64,
    samples: u64,
    seed: u64,
    tie_mode: TieMode,
) -> Result<DeltaSim> {
    if samples == 0 || n == 0 {
        return Err(Error::InvalidInput("need samples >= 1 and n >= 1".into()));
    }
    if density.dim() != rule.m() || params.w.dim() != rule.m() {
        return Err(Error::InvalidInput("dimension mismatch".into()));
    }
    let menu = rule.menu();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut profile = Vec::with_capacity(n as usize);
    let mut std_counts = vec![0u64; menu.len()];
    let mut anch_counts = vec![0u64; menu.len()];
    let mut sum_d = 0.0;
    let mut sum_d2 = 0.0;
    let mut n_neg = 0u64;
    let mut sum_e = 0.0;
    let mut sum_e2 = 0.0;
    for _ in 0..samples {
        profile.clear();
        std_counts.fill(0);
        anch_counts.fill(0);
        for _ in 0..n {
            let u = density.sample(&mut rng);
            let std_ties = nearest_report(&u, menu)?;
            let sv = pick(&std_ties, &mut rng);
            std_counts[sv] += 1;
            let shifted = anchored_utility(&u, params);
            let anch_ties = nearest_report(&shifted, menu)?;
            let av = pick(&anch_ties, &mut rng);
            anch_counts[av] += 1;
            profile.push(u);
        }
        let w_std = rule.winners(&Histogram::new(std_counts.clone()))?;
        let w_anch = rule.winners(&Histogram::new(anch_counts.clone()))?;
        let delta = match tie_mode {
            TieMode::Expected => {
                welfare_of_set(&w_anch, &profile) - welfare_of_set(&w_std, &profile)
            }
            TieMode::Sampled => {
                let a = pick(&w_anch, &mut rng);
                let s = pick(&w_std, &mut rng);
                social_welfare(a, &profile)? - social_welfare(s, &profile)?
            }
        };
        sum_d += delta;
        sum_d2 += delta * delta;
        if delta < 0.0 {
            n_neg += 1;
        }
        let e = (-delta).exp();
        sum_e += e;
        sum_e2 += e * e;
    }
    let s = samples as f64;
    let mean = sum_d / s;
    let var_d = (sum_d2 / s - mean * mean).max(0.0);
    let p_neg = n_neg as f64 / s;
    let mean_e = sum_e / s;
    let var_e = (sum_e2 / s - mean_e * mean_e).max(0.0);
    Ok(DeltaSim {
        mean_delta: Estimate {
            value: mean,
            stderr: (var_d / s).sqrt(),
        },
        decrease: Estimate {
            value: p_neg,
            stderr: (p_neg * (1.0 - p_neg) / s).sqrt(),
        },
        exp_moment: Estimate {
            value: mean_e,
            stderr: (var_e / s).sqrt(),
        },
    })
}

fn pick<R: Rng>(choices: &[usize], rng: &mut R) -> usize {
    if choices.len() == 1 {
        choices[0]
    } else {
        choices[rng.random_range(0..choices.len())]
    }
}

fn welfare_of_set(winners: &[usize], profile: &[SimplexPoint]) -> f64 {
    let total: f64 = winners
        .iter()
        .map(|&a| profile.iter().map(|u| u[a]).sum::<f64>())
        .sum();
    total / winners.len() as f64
}
