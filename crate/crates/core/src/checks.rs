//! End-to-end invariant checks. Each one exercises a documented guarantee of
//! the library against an independent route (exact arithmetic, brute force,
//! simulation) and reports pass/fail with enough detail to debug a red run.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{
    binom_suffix_sums, binom_tail, rule_bounds, tightening_report, w_topk_condition,
    w_topk_slack, LowerVariant, TailMode, Verdict,
};
use crate::density::{
    exact_measure_m3, level_set_measure, DensityModel, Provenance, ReportDistribution,
};
use crate::error::Result;
use crate::exact::{self, rat, Rat};
use crate::rules::{RuleKind, VotingRule};
use crate::simplex::{
    alignment_predicate, anchor_menu, anchor_report, anchored_utility, dist,
    nearest_with_margin, unique_argmax, AnchorParams, ReportMenu, SimplexPoint,
};
use crate::welfare::{
    decrease_probability, expected_delta_sw, mc_outcome_distribution, outcome_distribution,
    DeltaMode, TieMode, DEFAULT_BUDGET,
};
use num_rational::Ratio;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub details: String,
    pub counterexample: Option<String>,
    /// Wall-clock time; excluded from serialization so output is replayable.
    #[serde(skip)]
    pub seconds: f64,
}

fn run_check<F>(name: &str, body: F) -> CheckResult
where
    F: FnOnce() -> Result<(bool, String, Option<String>)>,
{
    let t0 = std::time::Instant::now();
    let (passed, details, counterexample) = match body() {
        Ok(t) => t,
        Err(e) => (false, format!("errored: {e}"), None),
    };
    CheckResult {
        name: name.to_string(),
        passed,
        details,
        counterexample,
        seconds: t0.elapsed().as_secs_f64(),
    }
}

fn uniform_densities() -> Vec<DensityModel> {
    (0..=5)
        .map(|m| DensityModel::uniform(m.max(2)).unwrap())
        .collect()
}

/// Voting the shifted utility against the menu must pick the same report as
/// voting the raw utility against the transformed menu, whenever both picks
/// clear the near-tie margin.
pub fn check_transform_equivalence(tuples: u64, seed: u64) -> CheckResult {
    run_check("transform_equivalence", || {
        transform_equivalence_impl(tuples, seed, false)
    })
}

fn transform_equivalence_impl(
    tuples: u64,
    seed: u64,
    distort: bool,
) -> Result<(bool, String, Option<String>)> {
    const MARGIN: f64 = 1e-8;
    let mut menus: Vec<ReportMenu> = Vec::new();
    for m in 2..=5 {
        menus.push(ReportMenu::plurality(m)?);
    }
    for m in 3..=4 {
        menus.push(ReportMenu::ordinal(m)?);
    }
    for m in 3..=5 {
        menus.push(ReportMenu::veto(m)?);
    }
    let dens = uniform_densities();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut made = 0u64;
    let mut attempts = 0u64;
    let max_attempts = tuples * 4 + 1000;
    while made < tuples && attempts < max_attempts {
        attempts += 1;
        let menu = &menus[rng.random_range(0..menus.len())];
        let m = menu.m();
        let u = dens[m].sample(&mut rng);
        let w = dens[m].sample(&mut rng);
        let alpha = 0.9 * rng.random::<f64>();
        let params = AnchorParams::new(w, alpha)?;
        let shifted = anchored_utility(&u, &params);
        let direct = nearest_with_margin(&shifted, menu, MARGIN);
        let menu_params = if distort {
            AnchorParams::new(params.w.clone(), (alpha + 0.07).min(0.89))?
        } else {
            params.clone()
        };
        let transformed = anchor_menu(menu, &menu_params);
        let via_menu = nearest_with_margin(&u, &transformed, MARGIN);
        if let (Some(a), Some(b)) = (direct, via_menu) {
            made += 1;
            if a != b {
                return Ok((
                    false,
                    format!("route disagreement after {made} tuples"),
                    Some(format!(
                        "menu={:?} m={m} alpha={alpha:.6} u={:?} w={:?}: direct={a} via_menu={b}",
                        menu.kind(),
                        u.coords(),
                        params.w.coords()
                    )),
                ));
            }
        }
    }
    if made < tuples {
        return Ok((
            false,
            format!("only {made}/{tuples} tuples cleared the margin"),
            None,
        ));
    }
    Ok((
        true,
        format!("{made} tuples agreed across both routes (margin {MARGIN:.0e})"),
        None,
    ))
}

/// The rational worked example, end to end with no floating point.
pub fn check_worked_example() -> CheckResult {
    run_check("worked_example", || {
        let u = vec![rat(1, 2), rat(9, 20), rat(1, 20)];
        let w = vec![rat(0, 1), rat(1, 2), rat(1, 2)];
        let alpha = rat(1, 10);
        let shifted = exact::anchored_utility(&u, &w, alpha);
        let expected = vec![rat(9, 20), rat(91, 200), rat(19, 200)];
        if shifted != expected {
            return Ok((
                false,
                "shifted utility mismatch".into(),
                Some(format!("{shifted:?} != {expected:?}")),
            ));
        }
        let menu = exact::plurality_menu(3);
        let before = exact::nearest_report(&u, &menu);
        let after = exact::nearest_report(&shifted, &menu);
        if before != vec![0] || after != vec![1] {
            return Ok((
                false,
                "vote switch mismatch".into(),
                Some(format!("before={before:?} after={after:?}")),
            ));
        }
        let transformed: Vec<Vec<Rat>> = menu
            .iter()
            .map(|r| exact::anchor_report(r, &w, alpha))
            .collect();
        let phi_e0 = vec![rat(10, 9), rat(-1, 18), rat(-1, 18)];
        if transformed[0] != phi_e0 {
            return Ok((
                false,
                "transformed basis report mismatch".into(),
                Some(format!("{:?} != {phi_e0:?}", transformed[0])),
            ));
        }
        // the raw utility against the transformed menu makes the same switch
        let via_menu = exact::nearest_report(&u, &transformed);
        if via_menu != vec![1] {
            return Ok((
                false,
                "transformed-menu vote mismatch".into(),
                Some(format!("{via_menu:?}")),
            ));
        }
        for r in &menu {
            let round_trip =
                exact::unanchor_report(&exact::anchor_report(r, &w, alpha), &w, alpha);
            if &round_trip != r {
                return Ok((false, "transform round trip failed".into(), None));
            }
        }
        Ok((
            true,
            "shifted utility (9/20, 91/200, 19/200); vote moves 0 -> 1 on both routes".into(),
            None,
        ))
    })
}

/// Whenever u weakly prefers report s to report t and the anchor weakly
/// scores s above t, the transformed reports keep that preference. Scoped to
/// menu reports: the guarantee relies on s and t being coordinate
/// permutations of each other, which every built-in menu satisfies.
pub fn check_alignment_implication(tuples: u64, seed: u64) -> CheckResult {
    run_check("alignment_implication", || {
        const SLACK: f64 = 1e-12;
        let mut menus: Vec<ReportMenu> = Vec::new();
        for m in 2..=5 {
            menus.push(ReportMenu::plurality(m)?);
        }
        for m in 3..=4 {
            menus.push(ReportMenu::ordinal(m)?);
        }
        for m in 3..=5 {
            menus.push(ReportMenu::veto(m)?);
        }
        let dens = uniform_densities();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut made = 0u64;
        let mut attempts = 0u64;
        let max_attempts = tuples * 10 + 1000;
        let mut worst = f64::NEG_INFINITY;
        while made < tuples && attempts < max_attempts {
            attempts += 1;
            let menu = &menus[rng.random_range(0..menus.len())];
            let m = menu.m();
            let si = rng.random_range(0..menu.len());
            let ti = rng.random_range(0..menu.len());
            if si == ti {
                continue;
            }
            let (s, t) = (menu.report(si), menu.report(ti));
            let u = dens[m].sample(&mut rng);
            let w = dens[m].sample(&mut rng);
            let alpha = 0.95 * rng.random::<f64>();
            let params = AnchorParams::new(w, alpha)?;
            if !alignment_predicate(s, t, &u, &params) {
                continue;
            }
            made += 1;
            let ds = dist(&u, &anchor_report(s, &params));
            let dt = dist(&u, &anchor_report(t, &params));
            worst = worst.max(ds - dt);
            if ds > dt + SLACK {
                return Ok((
                    false,
                    format!("preference flipped after {made} tuples"),
                    Some(format!(
                        "menu={:?} m={m} alpha={alpha:.6} u={:?} s={s:?} t={t:?} w={:?}: {ds} > {dt}",
                        menu.kind(),
                        u.coords(),
                        params.w.coords()
                    )),
                ));
            }
        }
        if made < tuples {
            return Ok((
                false,
                format!("only {made}/{tuples} tuples satisfied the hypothesis"),
                None,
            ));
        }
        Ok((
            true,
            format!("{made} qualifying tuples kept order; worst slack {worst:.3e}"),
            None,
        ))
    })
}

/// Uniform level-set measures: exact geometry nails 1/3 and 1/6, and an
/// independent Monte Carlo run agrees within 3 sigma.
pub fn check_symmetry_measures(mc_samples: u64, seed: u64) -> CheckResult {
    run_check("symmetry_measures", || {
        let plurality = ReportMenu::plurality(3)?;
        let ordinal = ReportMenu::ordinal(3)?;
        let uniform = DensityModel::uniform(3)?;
        let mut worst_exact = 0.0f64;
        for (menu, target) in [(&plurality, 1.0 / 3.0), (&ordinal, 1.0 / 6.0)] {
            let exact = exact_measure_m3(menu)?;
            for &p in &exact.probs {
                worst_exact = worst_exact.max((p - target).abs());
                if (p - target).abs() > 1e-12 {
                    return Ok((
                        false,
                        "exact geometry missed the symmetric measure".into(),
                        Some(format!("cell measure {p} vs {target}")),
                    ));
                }
            }
            let mc = level_set_measure(&uniform, menu, mc_samples, seed)?;
            for (i, &p) in mc.probs.iter().enumerate() {
                let se = mc.stderr[i].max(1.0 / mc_samples as f64);
                if (p - target).abs() > 3.0 * se {
                    return Ok((
                        false,
                        "Monte Carlo disagreed with the symmetric measure".into(),
                        Some(format!(
                            "{:?} cell {i}: {p} vs {target} (3 sigma = {:.2e})",
                            menu.kind(),
                            3.0 * se
                        )),
                    ));
                }
            }
        }
        Ok((
            true,
            format!(
                "plurality 1/3 and ordinal 1/6 exact to {worst_exact:.2e}; {mc_samples} MC samples within 3 sigma"
            ),
            None,
        ))
    })
}

/// With any anchor that has a clear favorite and positive strength, the
/// favorite's transformed plurality cell strictly exceeds 1/3.
pub fn check_anchored_cell_growth(cases: u64, seed: u64) -> CheckResult {
    run_check("anchored_cell_growth", || {
        let menu = ReportMenu::plurality(3)?;
        let uniform = DensityModel::uniform(3)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut min_growth = f64::INFINITY;
        for case in 0..cases {
            let w = loop {
                let w = uniform.sample(&mut rng);
                let mut sorted = w.coords().to_vec();
                sorted.sort_by(|a, b| b.total_cmp(a));
                if sorted[0] - sorted[1] >= 0.05 {
                    break w;
                }
            };
            let alpha = 0.05 + 0.55 * rng.random::<f64>();
            let a_star = unique_argmax(&w)?;
            let params = AnchorParams::new(w, alpha)?;
            let q = exact_measure_m3(&anchor_menu(&menu, &params))?;
            let growth = q.probs[a_star] - 1.0 / 3.0;
            min_growth = min_growth.min(growth);
            if growth <= 1e-9 {
                return Ok((
                    false,
                    format!("cell failed to grow on case {case}"),
                    Some(format!(
                        "w={:?} alpha={alpha:.6}: cell={} growth={growth:.3e}",
                        params.w.coords(),
                        q.probs[a_star]
                    )),
                ));
            }
        }
        Ok((
            true,
            format!("{cases} anchors all grew the favorite's cell; min growth {min_growth:.3e}"),
            None,
        ))
    })
}

/// The binomial sandwich brackets the exact enumerated win probability.
pub fn check_bound_sandwich(trials_per_cell: u64, seed: u64) -> CheckResult {
    run_check("bound_sandwich", || {
        const SLACK: f64 = 1e-12;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cells = 0u64;
        let mut tightest = f64::INFINITY;
        let mut plan: Vec<(RuleKind, Vec<u64>, u64)> = vec![
            (RuleKind::Plurality, vec![3, 5, 7, 9], trials_per_cell),
            (RuleKind::Borda, vec![3, 5, 7, 9], trials_per_cell),
        ];
        // majority-criterion rules, kept small: enumeration is heavier there
        plan.push((RuleKind::Copeland, vec![3, 5], 3));
        plan.push((RuleKind::Irv, vec![3, 5], 3));
        for (kind, ns, trials) in plan {
            let rule = VotingRule::new(kind, 3)?;
            let sampler = DensityModel::uniform(rule.menu().len())?;
            for n in ns {
                for _ in 0..trials {
                    let p = ReportDistribution::exact(
                        sampler.sample(&mut rng).coords().to_vec(),
                        Provenance::ClosedForm,
                    );
                    let nu = outcome_distribution(&rule, &p, n, DEFAULT_BUDGET)?;
                    for a in 0..3 {
                        let b = rule_bounds(&rule, &p, n, a, LowerVariant::HalfTie)?;
                        cells += 1;
                        tightest = tightest.min(b.upper - b.lower);
                        let v = nu.probs[a];
                        if v < b.lower - SLACK || v > b.upper + SLACK {
                            return Ok((
                                false,
                                format!("{} bound missed at n={n}", kind.name()),
                                Some(format!(
                                    "a={a} p={:?}: nu={v} not in [{}, {}]",
                                    p.probs, b.lower, b.upper
                                )),
                            ));
                        }
                    }
                }
            }
        }
        Ok((
            true,
            format!("{cells} (rule, n, p, a) cells bracketed; narrowest gap {tightest:.3e}"),
            None,
        ))
    })
}

/// Upper tails are nondecreasing in the success probability, with zero
/// violations: the exact-rational path guarantees this bit for bit.
pub fn check_tail_monotonicity(n_max: u64) -> CheckResult {
    run_check("tail_monotonicity", || {
        let grid: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
        let mut comparisons = 0u64;
        for n in 1..=n_max {
            let tables: Vec<Vec<f64>> = grid
                .iter()
                .map(|&p| binom_suffix_sums(n, p))
                .collect::<Result<_>>()?;
            for k in 0..=(n as usize) {
                for pair in tables.windows(2) {
                    comparisons += 2;
                    // AtLeast tail at k, then Greater tail at k
                    if pair[1][k] < pair[0][k] || pair[1][k + 1] < pair[0][k + 1] {
                        return Ok((
                            false,
                            "tail decreased as p grew".into(),
                            Some(format!("n={n} k={k}: {:?} -> {:?}", pair[0], pair[1])),
                        ));
                    }
                }
            }
        }
        // spot-check that the shared tables match the public entry point
        for n in [1, 7, 25, n_max] {
            for p in [0.0, 0.3, 0.65, 1.0] {
                let table = binom_suffix_sums(n, p)?;
                for k in 0..=n {
                    let greater = binom_tail(n, p, Ratio::new(k, 1), TailMode::Greater)?;
                    let at_least = binom_tail(n, p, Ratio::new(k, 1), TailMode::AtLeast)?;
                    if greater != table[k as usize + 1] || at_least != table[k as usize] {
                        return Ok((
                            false,
                            "suffix table disagreed with binom_tail".into(),
                            Some(format!("n={n} p={p} k={k}")),
                        ));
                    }
                }
            }
        }
        Ok((
            true,
            format!(
                "0 violations over {comparisons} adjacent-p comparisons (n <= {n_max}, 21-point grid)"
            ),
            None,
        ))
    })
}

/// The sorted-anchor slack equals the brute-force score gap between the
/// favorite's ranking block and the rest of the ordinal menu.
pub fn check_topk_bruteforce(points_per_m: u64, seed: u64) -> CheckResult {
    run_check("topk_bruteforce", || {
        const AGREE: f64 = 1e-9;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checked = 0u64;
        for m in [3usize, 4] {
            let menu = ReportMenu::ordinal_raw(m)?;
            let scores = menu.int_scores().expect("ordinal menus carry scores");
            let rankings = menu.rankings().expect("ordinal menus carry rankings");
            let sampler = DensityModel::uniform(m)?;
            let mut made = 0u64;
            while made < points_per_m {
                let w = sampler.sample(&mut rng);
                let Ok(a_star) = unique_argmax(&w) else {
                    continue;
                };
                made += 1;
                checked += 1;
                let slack = w_topk_slack(&w);
                let mut min_in = f64::INFINITY;
                let mut max_out = f64::NEG_INFINITY;
                for (r, ranking) in rankings.iter().enumerate() {
                    let score: f64 = scores[r]
                        .iter()
                        .zip(w.coords())
                        .map(|(&s, &wi)| s as f64 * wi)
                        .sum();
                    if ranking[0] == a_star {
                        min_in = min_in.min(score);
                    } else {
                        max_out = max_out.max(score);
                    }
                }
                let gap = min_in - max_out;
                if (slack - gap).abs() > AGREE {
                    return Ok((
                        false,
                        "slack disagreed with the brute-force gap".into(),
                        Some(format!(
                            "m={m} w={:?}: slack={slack} gap={gap}",
                            w.coords()
                        )),
                    ));
                }
                if slack.abs() > AGREE && w_topk_condition(&w) != (gap > 0.0) {
                    return Ok((
                        false,
                        "condition sign disagreed with the gap sign".into(),
                        Some(format!("m={m} w={:?}", w.coords())),
                    ));
                }
            }
        }
        // m = 3 boundary: second-largest weight at 1/3 zeroes the slack
        let boundary = SimplexPoint::new(vec![0.5, 1.0 / 3.0, 1.0 / 6.0])?;
        if w_topk_slack(&boundary).abs() > 1e-12 {
            return Ok((
                false,
                "slack not zero on the boundary".into(),
                Some(format!("{}", w_topk_slack(&boundary))),
            ));
        }
        let inside = SimplexPoint::new(vec![0.51, 1.0 / 3.0 - 0.01, 1.0 / 6.0])?;
        let outside = SimplexPoint::new(vec![0.49, 1.0 / 3.0 + 0.01, 1.0 / 6.0])?;
        if !w_topk_condition(&inside) || w_topk_condition(&outside) {
            return Ok((false, "condition did not flip across the boundary".into(), None));
        }
        Ok((
            true,
            format!("{checked} anchors matched brute force; boundary case flips as expected"),
            None,
        ))
    })
}

/// Against a symmetric electorate, anchoring toward a basis favorite
/// strictly raises the favorite's lower bound, and does nothing at zero
/// strength.
pub fn check_tightening_strict(n: u64) -> CheckResult {
    run_check("tightening_strict", || {
        let rule = VotingRule::new(RuleKind::Plurality, 3)?;
        let p = exact_measure_m3(rule.menu())?;
        let w = SimplexPoint::new(vec![1.0, 0.0, 0.0])?;
        let mut lines = Vec::new();
        for alpha in [0.05, 0.1, 0.2] {
            let params = AnchorParams::new(w.clone(), alpha)?;
            let q = exact_measure_m3(&anchor_menu(rule.menu(), &params))?;
            let rep = tightening_report(&p, &q, &rule, n, &w, LowerVariant::HalfTie)?;
            let gain = rep.anchored.lower - rep.standard.lower;
            if rep.lower_verdict != Verdict::Tightened || gain <= 1e-12 {
                return Ok((
                    false,
                    format!("no strict tightening at alpha={alpha}"),
                    Some(format!(
                        "lower {} -> {} ({:?})",
                        rep.standard.lower, rep.anchored.lower, rep.lower_verdict
                    )),
                ));
            }
            lines.push(format!(
                "alpha={alpha}: lower {:.6} -> {:.6}",
                rep.standard.lower, rep.anchored.lower
            ));
        }
        let params = AnchorParams::new(w.clone(), 0.0)?;
        let q0 = exact_measure_m3(&anchor_menu(rule.menu(), &params))?;
        let rep0 = tightening_report(&p, &q0, &rule, n, &w, LowerVariant::HalfTie)?;
        if rep0.lower_verdict != Verdict::Unchanged || rep0.upper_verdict != Verdict::Unchanged {
            return Ok((false, "zero strength changed a bound".into(), None));
        }
        Ok((true, format!("n={n}; {}", lines.join("; ")), None))
    })
}

/// Enumerated winner distributions match plain election simulation for every
/// rule.
pub fn check_outcome_vs_simulation(elections: u64, seed: u64) -> CheckResult {
    run_check("outcome_vs_simulation", || {
        let n = 6;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst_z = 0.0f64;
        for (ri, kind) in crate::rules::ALL_RULES.into_iter().enumerate() {
            let rule = VotingRule::new(kind, 3)?;
            let sampler = DensityModel::uniform(rule.menu().len())?;
            for trial in 0..3u64 {
                let p = ReportDistribution::exact(
                    sampler.sample(&mut rng).coords().to_vec(),
                    Provenance::ClosedForm,
                );
                let exact = outcome_distribution(&rule, &p, n, DEFAULT_BUDGET)?;
                let mc_seed = seed ^ (ri as u64 * 101 + trial + 1);
                let mc = mc_outcome_distribution(&rule, &p, n, elections, mc_seed)?;
                for a in 0..3 {
                    let floor = 1.0 / elections as f64;
                    let se = mc.stderr[a]
                        .max((exact.probs[a] * (1.0 - exact.probs[a]) / elections as f64).sqrt())
                        .max(floor);
                    let z = (exact.probs[a] - mc.probs[a]).abs() / se;
                    worst_z = worst_z.max(z);
                    if z > 3.0 {
                        return Ok((
                            false,
                            format!("{} enumeration drifted from simulation", kind.name()),
                            Some(format!(
                                "a={a} p={:?}: exact={} mc={} z={z:.2}",
                                p.probs, exact.probs[a], mc.probs[a]
                            )),
                        ));
                    }
                }
            }
        }
        Ok((
            true,
            format!(
                "5 rules x 3 distributions within 3 sigma of {elections}-election simulation; worst z = {worst_z:.2}"
            ),
            None,
        ))
    })
}

/// When no alternative with falling win probability out-values one with
/// rising win probability, the expected welfare change is nonnegative; flat
/// mean utilities give exactly zero.
pub fn check_delta_sign(configs: u64, mc_samples: u64, seed: u64) -> CheckResult {
    run_check("delta_sign", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kinds = [RuleKind::Plurality, RuleKind::Borda, RuleKind::Irv];
        let mut kept = 0u64;
        let mut attempts = 0u64;
        let mut min_delta = f64::INFINITY;
        while kept < configs && attempts < configs * 6 {
            let i = attempts;
            attempts += 1;
            let flat_mean = i.is_multiple_of(2);
            let density = if flat_mean {
                DensityModel::uniform(3)?
            } else {
                let mut theta: Vec<f64> = (0..3).map(|_| 0.5 + 4.5 * rng.random::<f64>()).collect();
                theta.sort_by(|a, b| b.total_cmp(a));
                DensityModel::dirichlet(theta)?
            };
            let rule = VotingRule::new(kinds[(i % 3) as usize], 3)?;
            let n = 3 + (i % 5);
            // anchor sorted the same way as the mean so the favorite rises
            let mut wv = DensityModel::uniform(3)?.sample(&mut rng).coords().to_vec();
            wv.sort_by(|a, b| b.total_cmp(a));
            let w = SimplexPoint::new(wv)?;
            let alpha = 0.1 + 0.3 * rng.random::<f64>();
            let params = AnchorParams::new(w, alpha)?;
            let stats = expected_delta_sw(
                &density,
                &rule,
                &params,
                n,
                DeltaMode::Exact,
                mc_samples,
                seed ^ (i + 1),
                DEFAULT_BUDGET,
            )?;
            if stats.inc_dec_condition != Some(true) {
                continue;
            }
            kept += 1;
            min_delta = min_delta.min(stats.expected_delta);
            if stats.expected_delta < -1e-9 {
                return Ok((
                    false,
                    "negative expected change despite the ordering condition".into(),
                    Some(format!(
                        "rule={} n={n} alpha={:.4} v={:?}: delta={}",
                        rule.kind().name(),
                        params.alpha,
                        stats.v,
                        stats.expected_delta
                    )),
                ));
            }
            if flat_mean && stats.expected_delta != 0.0 {
                return Ok((
                    false,
                    "flat mean utilities gave a nonzero change".into(),
                    Some(format!("delta={}", stats.expected_delta)),
                ));
            }
        }
        if kept < configs {
            return Ok((
                false,
                format!("only {kept}/{configs} configurations satisfied the ordering condition"),
                None,
            ));
        }
        Ok((
            true,
            format!("{kept} qualifying configurations; min delta {min_delta:.3e}"),
            None,
        ))
    })
}

/// The empirical decrease frequency stays below the exponential-moment
/// bound, which dominates the indicator pointwise.
pub fn check_decrease_bound(configs: u64, samples: u64, seed: u64) -> CheckResult {
    run_check("decrease_bound", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kinds = [RuleKind::Plurality, RuleKind::Borda, RuleKind::Veto];
        let mut vacuous = 0u64;
        let mut worst_margin = f64::INFINITY;
        for i in 0..configs {
            let theta: Vec<f64> = (0..3).map(|_| 0.5 + 4.0 * rng.random::<f64>()).collect();
            let density = DensityModel::dirichlet(theta)?;
            let rule = VotingRule::new(kinds[(i % 3) as usize], 3)?;
            let w = DensityModel::uniform(3)?.sample(&mut rng);
            let alpha = 0.05 + 0.45 * rng.random::<f64>();
            let params = AnchorParams::new(w, alpha)?;
            let tie_mode = if i % 2 == 0 {
                TieMode::Expected
            } else {
                TieMode::Sampled
            };
            let stats = decrease_probability(
                &density,
                &rule,
                &params,
                7,
                samples,
                seed ^ (i * 7 + 1),
                tie_mode,
            )?;
            let p = stats.decrease_probability.clone().expect("estimated");
            let b = stats.chernoff_bound.clone().expect("estimated");
            if stats.chernoff_vacuous == Some(true) {
                vacuous += 1;
            }
            let pooled = (p.stderr * p.stderr + b.stderr * b.stderr).sqrt();
            let margin = b.value + 3.0 * pooled - p.value;
            worst_margin = worst_margin.min(margin);
            if margin < -1e-12 {
                return Ok((
                    false,
                    format!("bound violated on configuration {i}"),
                    Some(format!(
                        "rule={} alpha={:.4}: p={} bound={} pooled={pooled:.2e}",
                        rule.kind().name(),
                        params.alpha,
                        p.value,
                        b.value
                    )),
                ));
            }
        }
        Ok((
            true,
            format!(
                "{configs} configurations x {samples} profiles; min margin {worst_margin:.3e}; {vacuous} vacuous bounds"
            ),
            None,
        ))
    })
}

/// The full battery. `quick` shrinks sample counts for fast smoke runs; the
/// checks themselves are identical.
pub fn run_all(quick: bool, seed: u64) -> Vec<CheckResult> {
    let (tuples, align, mc, elections, delta_mc, dec_samples, n_max, topk) = if quick {
        (2_000, 5_000, 50_000, 10_000, 8_000, 5_000, 16, 1_000)
    } else {
        (12_000, 120_000, 1_000_000, 100_000, 60_000, 100_000, 50, 6_000)
    };
    vec![
        check_transform_equivalence(tuples, seed),
        check_worked_example(),
        check_alignment_implication(align, seed.wrapping_add(1)),
        check_symmetry_measures(mc, seed.wrapping_add(2)),
        check_anchored_cell_growth(20, seed.wrapping_add(3)),
        check_bound_sandwich(10, seed.wrapping_add(4)),
        check_tail_monotonicity(n_max),
        check_topk_bruteforce(topk, seed.wrapping_add(5)),
        check_tightening_strict(5),
        check_outcome_vs_simulation(elections, seed.wrapping_add(6)),
        check_delta_sign(10, delta_mc, seed.wrapping_add(7)),
        check_decrease_bound(10, dec_samples, seed.wrapping_add(8)),
    ]
}
