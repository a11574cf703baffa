//! Win-probability bounds from the reduction of elections to independent
//! categorical trials, and the anchored tightening/loosening comparison.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::density::ReportDistribution;
use crate::error::{Error, Result};
use crate::rules::{RuleKind, VotingRule};
use crate::simplex::{unique_argmax, SimplexPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailMode {
    Greater,
    AtLeast,
    Equal,
}

/// Below this n, tails are summed in exact rational arithmetic and rounded
/// once at the end, which makes them provably monotone in p. Larger n falls
/// back to log-space summation.
const EXACT_MAX_N: u64 = 200;

/// Pr[Binom(n, p) relates to the threshold] for the given mode. The
/// threshold is an exact rational, so half-integer cutoffs like n/2 never
/// touch floating point.
pub fn binom_tail(n: u64, p: f64, threshold: Ratio<u64>, mode: TailMode) -> Result<f64> {
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!(
            "probability must lie in [0, 1], got {p}"
        )));
    }
    match mode {
        TailMode::Equal => {
            if !threshold.is_integer() {
                return Ok(0.0);
            }
            let j = threshold.to_integer();
            if j > n {
                return Ok(0.0);
            }
            Ok(pmf(n, p, j))
        }
        TailMode::Greater | TailMode::AtLeast => {
            let j_min = match mode {
                TailMode::Greater => threshold.floor().to_integer() + 1,
                TailMode::AtLeast => threshold.ceil().to_integer(),
                TailMode::Equal => unreachable!(),
            };
            if j_min == 0 {
                return Ok(1.0);
            }
            if j_min > n {
                return Ok(0.0);
            }
            if n <= EXACT_MAX_N {
                Ok(tail_exact(n, p, j_min))
            } else {
                Ok(tail_log(n, p, j_min))
            }
        }
    }
}

fn pmf(n: u64, p: f64, j: u64) -> f64 {
    if p == 0.0 {
        return if j == 0 { 1.0 } else { 0.0 };
    }
    if p == 1.0 {
        return if j == n { 1.0 } else { 0.0 };
    }
    if n <= EXACT_MAX_N {
        let terms = exact_terms(n, p);
        quantize(&terms[j as usize])
    } else {
        let lf = ln_factorials(n);
        (ln_choose(&lf, n, j) + j as f64 * p.ln() + (n - j) as f64 * (-p).ln_1p()).exp()
    }
}

/// All n+1 binomial point masses as exact rationals. p enters as the exact
/// dyadic rational behind the f64, so the result is a function of the bits
/// of p alone.
fn exact_terms(n: u64, p: f64) -> Vec<BigRational> {
    let pr = BigRational::from_float(p).expect("finite");
    let qr = BigRational::one() - &pr;
    let mut terms = Vec::with_capacity(n as usize + 1);
    // q^n, then multiply by p/q * (n-j)/(j+1) stepwise
    let mut term = pow_rational(&qr, n);
    let ratio = &pr / &qr;
    for j in 0..=n {
        terms.push(term.clone());
        if j < n {
            term = term * &ratio * BigRational::from_integer(BigInt::from(n - j))
                / BigRational::from_integer(BigInt::from(j + 1));
        }
    }
    terms
}

fn pow_rational(x: &BigRational, e: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

fn tail_exact(n: u64, p: f64, j_min: u64) -> f64 {
    if p == 0.0 {
        return 0.0; // j_min >= 1 here
    }
    if p == 1.0 {
        return 1.0; // j_min <= n here
    }
    let terms = exact_terms(n, p);
    let sum: BigRational = terms[j_min as usize..].iter().sum();
    quantize(&sum)
}

/// Pr[Binom(n, p) >= j] for every j in 0..=n+1, each rounded from the same
/// exact expansion `binom_tail` uses, so entry j equals the AtLeast tail at
/// threshold j (and entry j+1 the Greater tail at j). Grid scans over many
/// thresholds share the expensive part this way. Exact range only.
pub fn binom_suffix_sums(n: u64, p: f64) -> Result<Vec<f64>> {
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!(
            "probability must lie in [0, 1], got {p}"
        )));
    }
    if n > EXACT_MAX_N {
        return Err(Error::Unsupported(format!(
            "exact tail tables stop at n = {EXACT_MAX_N}, got {n}"
        )));
    }
    let len = n as usize + 2;
    if p == 0.0 {
        let mut out = vec![0.0; len];
        out[0] = 1.0;
        return Ok(out);
    }
    if p == 1.0 {
        let mut out = vec![1.0; len];
        out[len - 1] = 0.0;
        return Ok(out);
    }
    let terms = exact_terms(n, p);
    let mut out = vec![0.0; len];
    let mut acc = BigRational::zero();
    for j in (0..=n as usize).rev() {
        acc += &terms[j];
        out[j] = quantize(&acc);
    }
    Ok(out)
}

/// Rounds a rational in [0, 1] down to a multiple of 2^-62 before the f64
/// conversion. Monotone, with absolute error below 2.2e-19.
fn quantize(x: &BigRational) -> f64 {
    debug_assert!(!x.is_negative());
    let scaled = x * BigRational::from_integer(BigInt::from(1u128 << 62));
    let floor = scaled.floor().to_integer();
    let bits = floor.to_u64().expect("value in [0, 1]");
    bits as f64 / (1u128 << 62) as f64
}

fn tail_log(n: u64, p: f64, j_min: u64) -> f64 {
    if p == 0.0 {
        return 0.0;
    }
    if p == 1.0 {
        return 1.0;
    }
    let lf = ln_factorials(n);
    let lp = p.ln();
    let lq = (-p).ln_1p();
    let ln_term = |j: u64| ln_choose(&lf, n, j) + j as f64 * lp + (n - j) as f64 * lq;
    // sum whichever side has fewer terms; the branch depends only on (n, j_min)
    if 2 * j_min <= n {
        1.0 - stable_sum_exp((0..j_min).map(ln_term))
    } else {
        stable_sum_exp((j_min..=n).map(ln_term))
    }
}

/// Sum of exp(t) over the terms, rescaled by the maximum for stability.
fn stable_sum_exp(terms: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = terms.clone().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return 0.0;
    }
    // compensated summation of the rescaled terms
    let mut sum = 0.0;
    let mut carry = 0.0;
    for t in terms {
        let y = (t - max).exp() - carry;
        let s = sum + y;
        carry = (s - sum) - y;
        sum = s;
    }
    (max + sum.ln()).exp()
}

pub(crate) fn ln_factorials(n: u64) -> Vec<f64> {
    let mut lf = Vec::with_capacity(n as usize + 1);
    lf.push(0.0);
    let mut acc = 0.0;
    for i in 1..=n {
        acc += (i as f64).ln();
        lf.push(acc);
    }
    lf
}

pub(crate) fn ln_choose(lf: &[f64], n: u64, k: u64) -> f64 {
    lf[n as usize] - lf[k as usize] - lf[(n - k) as usize]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    Standard,
    Anchored,
}

/// Which lower bound to use at an exactly split electorate: the refined form
/// credits half the boundary mass (a tied alternative wins at worst a coin
/// flip under plurality); the plain form counts the boundary fully and is
/// not a valid lower bound in degenerate ties. Kept for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LowerVariant {
    HalfTie,
    AtLeastThreshold,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub alternative: usize,
    pub lower: f64,
    pub upper: f64,
    pub n: u64,
    /// c(n), the first-place count beyond which the alternative must win.
    pub threshold: f64,
    /// Probability mass feeding the binomial: p_a, or the top-set sum.
    pub success_prob: f64,
    pub regime: Regime,
}

fn prob_at(p: &ReportDistribution, i: usize) -> f64 {
    p.probs[i].clamp(0.0, 1.0)
}

fn q_mass(p: &ReportDistribution, q: &[usize]) -> f64 {
    q.iter().map(|&r| p.probs[r]).sum::<f64>().clamp(0.0, 1.0)
}

/// Sandwich on the win probability of `a` under plurality with i.i.d.
/// reports distributed as p.
pub fn plurality_bounds(
    p: &ReportDistribution,
    n: u64,
    a: usize,
    variant: LowerVariant,
) -> Result<BoundReport> {
    let m = p.len();
    if a >= m {
        return Err(Error::InvalidInput(format!("alternative {a} out of range")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("need n >= 1".into()));
    }
    let thr = Ratio::new(n, 2);
    let pa = prob_at(p, a);
    let lower = match variant {
        LowerVariant::HalfTie => {
            binom_tail(n, pa, thr, TailMode::Greater)?
                + 0.5 * binom_tail(n, pa, thr, TailMode::Equal)?
        }
        LowerVariant::AtLeastThreshold => binom_tail(n, pa, thr, TailMode::AtLeast)?,
    };
    // a win needs at least ceil(n/m) votes for a; union bound over vote sets
    let k = n.div_ceil(m as u64);
    let count_upper = if pa == 0.0 {
        if k == 0 { 1.0 } else { 0.0 }
    } else {
        let lf = ln_factorials(n);
        (ln_choose(&lf, n, k) + k as f64 * pa.ln()).exp().min(1.0)
    };
    let mut rival = 0.0;
    for b in 0..m {
        if b != a {
            rival += binom_tail(n, prob_at(p, b), thr, TailMode::Greater)?;
        }
    }
    let upper = count_upper.min((1.0 - rival).clamp(0.0, 1.0));
    Ok(BoundReport {
        alternative: a,
        lower,
        upper,
        n,
        threshold: n as f64 / 2.0,
        success_prob: pa,
        regime: Regime::Standard,
    })
}

fn factorial(m: usize) -> usize {
    (1..=m).product()
}

/// First-place blocks of the lexicographic ordinal menu: rankings topped by
/// `a` occupy one contiguous run of (m-1)! indices.
fn top_block(m: usize, a: usize) -> std::ops::Range<usize> {
    let block = factorial(m - 1);
    a * block..(a + 1) * block
}

/// Sandwich on the win probability of `a` under the positional ordinal
/// tally: first-place support beyond c(n) = n(m-1)/m forces a win.
pub fn borda_bounds(p: &ReportDistribution, n: u64, m: usize, a: usize) -> Result<BoundReport> {
    check_ordinal(p, n, m, a)?;
    let c = Ratio::new(n * (m as u64 - 1), m as u64);
    ordinal_first_place_bounds(p, n, m, a, c)
}

/// Sandwich for rules satisfying the majority criterion on ordinal ballots
/// (pairwise-wins scoring, iterated elimination): c(n) = n/2.
pub fn majority_rule_bounds(
    p: &ReportDistribution,
    n: u64,
    m: usize,
    a: usize,
) -> Result<BoundReport> {
    check_ordinal(p, n, m, a)?;
    ordinal_first_place_bounds(p, n, m, a, Ratio::new(n, 2))
}

fn check_ordinal(p: &ReportDistribution, n: u64, m: usize, a: usize) -> Result<()> {
    if p.len() != factorial(m) {
        return Err(Error::InvalidInput(format!(
            "distribution over {} reports does not match the {}-alternative ordinal menu ({} reports)",
            p.len(),
            m,
            factorial(m)
        )));
    }
    if a >= m {
        return Err(Error::InvalidInput(format!("alternative {a} out of range")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("need n >= 1".into()));
    }
    Ok(())
}

fn ordinal_first_place_bounds(
    p: &ReportDistribution,
    n: u64,
    m: usize,
    a: usize,
    c: Ratio<u64>,
) -> Result<BoundReport> {
    let mass = |alt: usize| {
        let r = top_block(m, alt);
        p.probs[r].iter().sum::<f64>().clamp(0.0, 1.0)
    };
    let pa = mass(a);
    let lower = binom_tail(n, pa, c, TailMode::Greater)?;
    let mut rival = 0.0;
    for b in 0..m {
        if b != a {
            rival += binom_tail(n, mass(b), c, TailMode::Greater)?;
        }
    }
    Ok(BoundReport {
        alternative: a,
        lower,
        upper: (1.0 - rival).clamp(0.0, 1.0),
        n,
        threshold: *c.numer() as f64 / *c.denom() as f64,
        success_prob: pa,
        regime: Regime::Standard,
    })
}

/// Dispatch on the rule kind; p must live on the rule's own menu.
pub fn rule_bounds(
    rule: &VotingRule,
    p: &ReportDistribution,
    n: u64,
    a: usize,
    variant: LowerVariant,
) -> Result<BoundReport> {
    if p.len() != rule.menu().len() {
        return Err(Error::InvalidInput(format!(
            "distribution has {} entries, menu has {}",
            p.len(),
            rule.menu().len()
        )));
    }
    match rule.kind() {
        RuleKind::Plurality => plurality_bounds(p, n, a, variant),
        RuleKind::Borda => borda_bounds(p, n, rule.m(), a),
        RuleKind::Copeland | RuleKind::Irv => majority_rule_bounds(p, n, rule.m(), a),
        RuleKind::Veto => Err(Error::Unsupported(
            "no sufficient winning condition exists for veto, so no bounds".into(),
        )),
    }
}

/// Margin by which the sorted anchor clears the top-set condition
/// w_[1] >= (m-1) w_[2] + sum_{i>=3} w_[i] (m - 2i + 2).
///
/// The margin equals (over raw ordinal scores) the gap between the worst
/// top-set report and the best outside report by anchor score, so its sign
/// decides whether the rankings topped by argmax(w) are exactly the
/// (m-1)! highest-scoring reports.
pub fn w_topk_slack(w: &SimplexPoint) -> f64 {
    let mut s: Vec<f64> = w.coords().to_vec();
    s.sort_by(|a, b| b.total_cmp(a));
    let m = s.len();
    let mut rhs = (m as f64 - 1.0) * s[1];
    for (i, si) in s.iter().enumerate().skip(2) {
        // 1-based rank of this entry is i + 1
        rhs += si * (m as f64 - 2.0 * (i as f64 + 1.0) + 2.0);
    }
    s[0] - rhs
}

pub fn w_topk_condition(w: &SimplexPoint) -> bool {
    w_topk_slack(w) >= 0.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Tightened,
    Unchanged,
    Loosened,
}

fn verdict(anchored: f64, standard: f64, improve_up: bool) -> Verdict {
    let diff = anchored - standard;
    if diff.abs() <= 1e-12 {
        Verdict::Unchanged
    } else if (diff > 0.0) == improve_up {
        Verdict::Tightened
    } else {
        Verdict::Loosened
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TighteningReport {
    pub a_star: usize,
    pub standard: BoundReport,
    pub anchored: BoundReport,
    /// The sorted-anchor condition above.
    pub w_condition: bool,
    /// Every rival's first-place mass weakly shrank under anchoring, the
    /// hypothesis for the upper bound to loosen.
    pub rival_mass_nonincreasing: bool,
    pub lower_verdict: Verdict,
    pub upper_verdict: Verdict,
}

/// Compares the bounds for a* = argmax(w) under the standard report
/// distribution p and its anchored counterpart q.
pub fn tightening_report(
    p: &ReportDistribution,
    q: &ReportDistribution,
    rule: &VotingRule,
    n: u64,
    w: &SimplexPoint,
    variant: LowerVariant,
) -> Result<TighteningReport> {
    if p.len() != q.len() {
        return Err(Error::InvalidInput(
            "standard and anchored distributions differ in length".into(),
        ));
    }
    let a_star = unique_argmax(w)?;
    let standard = rule_bounds(rule, p, n, a_star, variant)?;
    let mut anchored = rule_bounds(rule, q, n, a_star, variant)?;
    anchored.regime = Regime::Anchored;

    let mut rival_ok = true;
    for b in 0..rule.m() {
        if b == a_star {
            continue;
        }
        let set = rule.q_set(b)?;
        if q_mass(q, &set) > q_mass(p, &set) + 1e-12 {
            rival_ok = false;
        }
    }
    let lower_verdict = verdict(anchored.lower, standard.lower, true);
    // a larger upper bound is a weaker (looser) guarantee
    let upper_verdict = verdict(anchored.upper, standard.upper, false);
    Ok(TighteningReport {
        a_star,
        standard,
        anchored,
        w_condition: w_topk_condition(w),
        rival_mass_nonincreasing: rival_ok,
        lower_verdict,
        upper_verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::Provenance;

    fn dist(probs: &[f64]) -> ReportDistribution {
        ReportDistribution::exact(probs.to_vec(), Provenance::ClosedForm)
    }

    fn sp(v: &[f64]) -> SimplexPoint {
        SimplexPoint::new(v.to_vec()).unwrap()
    }

    #[test]
    fn tail_frozen_values() {
        // dyadic cases are exact
        assert_eq!(
            binom_tail(4, 0.5, Ratio::new(2, 1), TailMode::Greater).unwrap(),
            5.0 / 16.0
        );
        assert_eq!(
            binom_tail(4, 0.5, Ratio::new(2, 1), TailMode::Equal).unwrap(),
            6.0 / 16.0
        );
        // non-dyadic p within quantization error
        let t = binom_tail(3, 0.6, Ratio::new(3, 2), TailMode::Greater).unwrap();
        assert!((t - 0.648).abs() < 1e-12);
        let t = binom_tail(3, 0.8, Ratio::new(2, 1), TailMode::Greater).unwrap();
        assert!((t - 0.512).abs() < 1e-12);
        let t = binom_tail(6, 1.0 / 3.0, Ratio::new(4, 1), TailMode::Greater).unwrap();
        assert!((t - 13.0 / 729.0).abs() < 1e-12);
    }

    #[test]
    fn tail_edge_cases() {
        assert_eq!(
            binom_tail(7, 1.0, Ratio::new(3, 1), TailMode::Greater).unwrap(),
            1.0
        );
        assert_eq!(
            binom_tail(7, 0.0, Ratio::new(0, 1), TailMode::AtLeast).unwrap(),
            1.0
        );
        assert_eq!(
            binom_tail(7, 0.0, Ratio::new(0, 1), TailMode::Greater).unwrap(),
            0.0
        );
        assert_eq!(
            binom_tail(5, 0.4, Ratio::new(7, 2), TailMode::Equal).unwrap(),
            0.0
        );
        assert_eq!(
            binom_tail(5, 0.4, Ratio::new(9, 1), TailMode::Greater).unwrap(),
            0.0
        );
        assert!(binom_tail(5, 1.2, Ratio::new(1, 1), TailMode::Greater).is_err());
        assert!(binom_tail(5, f64::NAN, Ratio::new(1, 1), TailMode::Greater).is_err());
    }

    #[test]
    fn tail_monotone_spot_grid() {
        for n in [1u64, 7, 24] {
            for k in 0..=n {
                let mut last = -1.0;
                for i in 0..=20 {
                    let p = i as f64 * 0.05;
                    let t = binom_tail(n, p, Ratio::new(k, 1), TailMode::AtLeast).unwrap();
                    assert!(t >= last, "regression at n={n} k={k} p={p}");
                    last = t;
                }
            }
        }
    }

    #[test]
    fn log_path_symmetry_identity() {
        // for p = 1/2, Pr[X >= j] = Pr[X <= n-j]; at j = n/2+1 this forces
        // Pr[X > n/2] = (1 - Pr[X = n/2]) / 2
        let n = 500;
        let gt = binom_tail(n, 0.5, Ratio::new(n, 2), TailMode::Greater).unwrap();
        let eq = binom_tail(n, 0.5, Ratio::new(n, 2), TailMode::Equal).unwrap();
        assert!((gt - (1.0 - eq) / 2.0).abs() < 1e-11, "{gt} {eq}");
        // log and exact paths agree at the boundary scale
        let a = binom_tail(200, 0.3, Ratio::new(70, 1), TailMode::AtLeast).unwrap();
        let b = binom_tail(201, 0.3, Ratio::new(70, 1), TailMode::AtLeast).unwrap();
        assert!(a < b && (b - a) < 0.05, "{a} {b}");
    }

    #[test]
    fn plurality_bound_values() {
        let p = dist(&[0.5, 0.25, 0.25]);
        let r = plurality_bounds(&p, 4, 0, LowerVariant::HalfTie).unwrap();
        assert_eq!(r.lower, 0.5);
        assert!(r.upper >= r.lower && r.upper <= 1.0);
        let r2 = plurality_bounds(&p, 4, 0, LowerVariant::AtLeastThreshold).unwrap();
        assert_eq!(r2.lower, 11.0 / 16.0);
    }

    #[test]
    fn plurality_unanimous() {
        let p = dist(&[1.0, 0.0, 0.0]);
        let r = plurality_bounds(&p, 6, 0, LowerVariant::HalfTie).unwrap();
        assert_eq!(r.lower, 1.0);
        assert_eq!(r.upper, 1.0);
    }

    #[test]
    fn borda_bound_values() {
        // p concentrated on a-top rankings
        let mut probs = vec![0.0; 6];
        probs[0] = 0.7;
        probs[1] = 0.3;
        let r = borda_bounds(&dist(&probs), 3, 3, 0).unwrap();
        assert_eq!(r.lower, 1.0);

        let mut probs = vec![0.0; 6];
        probs[0] = 0.8;
        probs[2] = 0.2;
        let r = borda_bounds(&dist(&probs), 3, 3, 0).unwrap();
        assert!((r.lower - 0.512).abs() < 1e-12);

        let uniform = dist(&[1.0 / 6.0; 6]);
        let r = borda_bounds(&uniform, 6, 3, 0).unwrap();
        assert!((r.lower - 13.0 / 729.0).abs() < 1e-12);
        assert!((r.threshold - 4.0).abs() < 1e-15);
    }

    #[test]
    fn veto_bounds_unsupported() {
        let rule = VotingRule::new(RuleKind::Veto, 3).unwrap();
        let p = dist(&[1.0 / 3.0; 3]);
        assert!(matches!(
            rule_bounds(&rule, &p, 5, 0, LowerVariant::HalfTie),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn topk_condition_examples() {
        assert!(w_topk_condition(&sp(&[0.5, 0.3, 0.2])));
        assert!((w_topk_slack(&sp(&[0.5, 0.3, 0.2])) - 0.1).abs() < 1e-12);
        assert!(!w_topk_condition(&sp(&[0.4, 0.35, 0.25])));
        assert!((w_topk_slack(&sp(&[0.4, 0.35, 0.25])) + 0.05).abs() < 1e-12);
        assert!(w_topk_condition(&sp(&[1.0, 0.0, 0.0])));
        // order of coordinates does not matter
        assert!((w_topk_slack(&sp(&[0.2, 0.5, 0.3])) - 0.1).abs() < 1e-12);
        // m=4 with an explicit negative coefficient on the smallest entry
        assert!((w_topk_slack(&sp(&[0.4, 0.3, 0.2, 0.1])) + 0.3).abs() < 1e-12);
    }

    #[test]
    fn tightening_on_anchored_plurality() {
        let p = dist(&[1.0 / 3.0; 3]);
        let q = dist(&[25.0 / 48.0, 23.0 / 96.0, 23.0 / 96.0]);
        let rule = VotingRule::new(RuleKind::Plurality, 3).unwrap();
        let w = sp(&[1.0, 0.0, 0.0]);
        let rep = tightening_report(&p, &q, &rule, 5, &w, LowerVariant::HalfTie).unwrap();
        assert_eq!(rep.a_star, 0);
        assert_eq!(rep.lower_verdict, Verdict::Tightened);
        assert!(rep.anchored.lower > rep.standard.lower);
        assert_eq!(rep.upper_verdict, Verdict::Loosened);
        assert!(rep.rival_mass_nonincreasing);
        assert!(rep.w_condition);
        assert_eq!(rep.anchored.regime, Regime::Anchored);
    }

    #[test]
    fn tightening_identity_at_alpha_zero() {
        let p = dist(&[0.4, 0.35, 0.25]);
        let rule = VotingRule::new(RuleKind::Plurality, 3).unwrap();
        let w = sp(&[0.6, 0.3, 0.1]);
        let rep = tightening_report(&p, &p, &rule, 7, &w, LowerVariant::HalfTie).unwrap();
        assert_eq!(rep.lower_verdict, Verdict::Unchanged);
        assert_eq!(rep.upper_verdict, Verdict::Unchanged);
    }

    #[test]
    fn ambiguous_anchor_rejected() {
        let p = dist(&[1.0 / 3.0; 3]);
        let rule = VotingRule::new(RuleKind::Plurality, 3).unwrap();
        let w = sp(&[0.4, 0.4, 0.2]);
        assert!(tightening_report(&p, &p, &rule, 5, &w, LowerVariant::HalfTie).is_err());
    }
}
