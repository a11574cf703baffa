//! Voting rules over report histograms: positional tallies and
//! majority-style rules, plus the report sets and thresholds the bounds use.
//! Winner determination runs entirely on exact integers.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::simplex::{MenuKind, ReportMenu};

/// Per-report vote counts for an electorate of size n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Histogram {
    counts: Vec<u64>,
    n: u64,
}

impl Histogram {
    pub fn new(counts: Vec<u64>) -> Self {
        let n = counts.iter().sum();
        Self { counts, n }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn n(&self) -> u64 {
        self.n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RuleKind {
    Plurality,
    Borda,
    Veto,
    Copeland,
    Irv,
}

impl RuleKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Plurality => "plurality",
            Self::Borda => "borda",
            Self::Veto => "veto",
            Self::Copeland => "copeland",
            Self::Irv => "irv",
        }
    }

    pub fn is_positional(self) -> bool {
        matches!(self, Self::Plurality | Self::Borda | Self::Veto)
    }

    fn expected_menu(self) -> MenuKind {
        match self {
            Self::Plurality => MenuKind::Plurality,
            Self::Borda | Self::Copeland | Self::Irv => MenuKind::Ordinal,
            Self::Veto => MenuKind::Veto,
        }
    }
}

pub const ALL_RULES: [RuleKind; 5] = [
    RuleKind::Plurality,
    RuleKind::Borda,
    RuleKind::Veto,
    RuleKind::Copeland,
    RuleKind::Irv,
];

#[derive(Debug, Clone, Serialize)]
pub struct VotingRule {
    kind: RuleKind,
    menu: ReportMenu,
}

impl VotingRule {
    pub fn new(kind: RuleKind, m: usize) -> Result<Self> {
        let menu = match kind.expected_menu() {
            MenuKind::Plurality => ReportMenu::plurality(m)?,
            MenuKind::Ordinal => ReportMenu::ordinal(m)?,
            MenuKind::Veto => ReportMenu::veto(m)?,
            MenuKind::Custom => unreachable!(),
        };
        Ok(Self { kind, menu })
    }

    /// Attach an existing menu (for instance an anchored image, which keeps
    /// its tallying metadata).
    pub fn with_menu(kind: RuleKind, menu: ReportMenu) -> Result<Self> {
        if menu.kind() != kind.expected_menu() {
            return Err(Error::InvalidInput(format!(
                "{} expects a {:?} menu, got {:?}",
                kind.name(),
                kind.expected_menu(),
                menu.kind()
            )));
        }
        if menu.int_scores().is_none() {
            return Err(Error::InvalidInput("menu lacks integer scores".into()));
        }
        Ok(Self { kind, menu })
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn menu(&self) -> &ReportMenu {
        &self.menu
    }

    pub fn m(&self) -> usize {
        self.menu.m()
    }

    fn check_histogram(&self, h: &Histogram) -> Result<()> {
        if h.counts.len() != self.menu.len() {
            return Err(Error::InvalidInput(format!(
                "histogram has {} entries, menu has {}",
                h.counts.len(),
                self.menu.len()
            )));
        }
        if h.n == 0 {
            return Err(Error::InvalidInput("histogram is empty".into()));
        }
        Ok(())
    }

    /// Full winner set, no tie resolution. See `winners_flagged` for the
    /// elimination-order caveat on instant-runoff.
    pub fn winners(&self, h: &Histogram) -> Result<Vec<usize>> {
        self.winners_flagged(h).map(|(w, _)| w)
    }

    /// Winners plus a flag that is true when an instant-runoff elimination
    /// tie was broken by index order (the only non-neutral step here).
    pub fn winners_flagged(&self, h: &Histogram) -> Result<(Vec<usize>, bool)> {
        self.check_histogram(h)?;
        match self.kind {
            RuleKind::Plurality | RuleKind::Borda | RuleKind::Veto => {
                Ok((self.positional_winners(h), false))
            }
            RuleKind::Copeland => Ok((self.copeland_winners(h), false)),
            RuleKind::Irv => Ok(self.irv_winners(h)),
        }
    }

    fn positional_winners(&self, h: &Histogram) -> Vec<usize> {
        let scores = self.positional_scores(h);
        argmax_set(&scores)
    }

    /// Exact integer score of each alternative.
    pub fn positional_scores(&self, h: &Histogram) -> Vec<u128> {
        let table = self.menu.int_scores().expect("built-in menus carry scores");
        let mut scores = vec![0u128; self.m()];
        for (count, row) in h.counts.iter().zip(table) {
            if *count == 0 {
                continue;
            }
            for (s, sc) in scores.iter_mut().zip(row) {
                *s += *count as u128 * *sc as u128;
            }
        }
        scores
    }

    fn copeland_winners(&self, h: &Histogram) -> Vec<usize> {
        let rankings = self.menu.rankings().expect("ordinal menu");
        let m = self.m();
        // position of each alternative within each ranking
        let mut above = vec![vec![0u64; m]; m];
        for (count, ranking) in h.counts.iter().zip(rankings) {
            if *count == 0 {
                continue;
            }
            for (hi, &a) in ranking.iter().enumerate() {
                for &b in &ranking[hi + 1..] {
                    above[a][b] += count;
                }
            }
        }
        // two points per pairwise win, one per exact tie
        let mut scores = vec![0u128; m];
        for a in 0..m {
            for b in (a + 1)..m {
                use std::cmp::Ordering::*;
                match above[a][b].cmp(&above[b][a]) {
                    Greater => scores[a] += 2,
                    Less => scores[b] += 2,
                    Equal => {
                        scores[a] += 1;
                        scores[b] += 1;
                    }
                }
            }
        }
        argmax_set(&scores)
    }

    fn irv_winners(&self, h: &Histogram) -> (Vec<usize>, bool) {
        let rankings = self.menu.rankings().expect("ordinal menu");
        let m = self.m();
        let mut active = vec![true; m];
        let mut remaining = m;
        let mut index_tiebreak = false;
        loop {
            let mut first = vec![0u64; m];
            for (count, ranking) in h.counts.iter().zip(rankings) {
                if *count == 0 {
                    continue;
                }
                let top = ranking
                    .iter()
                    .copied()
                    .find(|&a| active[a])
                    .expect("some alternative stays active");
                first[top] += count;
            }
            let live: Vec<usize> = (0..m).filter(|&a| active[a]).collect();
            if remaining == 1 {
                return (live, index_tiebreak);
            }
            let min = live.iter().map(|&a| first[a]).min().unwrap();
            let max = live.iter().map(|&a| first[a]).max().unwrap();
            if min == max {
                // symmetric deadlock; every survivor ties
                return (live, index_tiebreak);
            }
            let lowest: Vec<usize> = live.iter().copied().filter(|&a| first[a] == min).collect();
            if lowest.len() > 1 {
                // elimination order is unspecified for ties; drop the lowest
                // index and record that the outcome may depend on it
                index_tiebreak = true;
            }
            active[lowest[0]] = false;
            remaining -= 1;
        }
    }

    /// Reports whose top choice is `a`: the ones whose presence above the
    /// majority threshold forces `a` to win.
    pub fn q_set(&self, a: usize) -> Result<Vec<usize>> {
        self.check_alternative(a)?;
        match self.kind {
            RuleKind::Plurality => Ok(vec![a]),
            RuleKind::Borda | RuleKind::Copeland | RuleKind::Irv => {
                let rankings = self.menu.rankings().expect("ordinal menu");
                Ok(rankings
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| r[0] == a)
                    .map(|(i, _)| i)
                    .collect())
            }
            RuleKind::Veto => Err(Error::Unsupported(
                "veto admits no sufficient-condition report set".into(),
            )),
        }
    }

    /// Vote-count threshold above which first-place support alone decides
    /// the election: n/2 for the majority-criterion rules, n(m-1)/m for the
    /// positional ordinal tally.
    pub fn majority_threshold(&self, n: u64) -> Result<Ratio<u64>> {
        if n == 0 {
            return Err(Error::InvalidInput("need n >= 1".into()));
        }
        match self.kind {
            RuleKind::Plurality | RuleKind::Copeland | RuleKind::Irv => Ok(Ratio::new(n, 2)),
            RuleKind::Borda => Ok(Ratio::new(n * (self.m() as u64 - 1), self.m() as u64)),
            RuleKind::Veto => Err(Error::Unsupported(
                "veto has no majority threshold".into(),
            )),
        }
    }

    fn check_alternative(&self, a: usize) -> Result<()> {
        if a >= self.m() {
            return Err(Error::InvalidInput(format!(
                "alternative {a} out of range for m={}",
                self.m()
            )));
        }
        Ok(())
    }

    /// Every histogram of n votes that elects `a`, with the tie multiplicity
    /// |winners|. Errors when the composition count exceeds `cap`.
    pub fn selecting_histograms(
        &self,
        n: u64,
        a: usize,
        cap: u128,
    ) -> Result<Vec<(Histogram, usize)>> {
        let mut out = Vec::new();
        self.for_each_selecting(n, a, cap, |h, mult| {
            out.push((h.clone(), mult));
        })?;
        Ok(out)
    }

    pub fn for_each_selecting<F>(&self, n: u64, a: usize, cap: u128, mut f: F) -> Result<()>
    where
        F: FnMut(&Histogram, usize),
    {
        self.check_alternative(a)?;
        check_budget(n, self.menu.len(), cap)?;
        let mut err = None;
        for_each_composition(n, self.menu.len(), |counts| {
            if err.is_some() {
                return;
            }
            let h = Histogram::new(counts.to_vec());
            match self.winners(&h) {
                Ok(w) if w.contains(&a) => f(&h, w.len()),
                Ok(_) => {}
                Err(e) => err = Some(e),
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }
}

fn argmax_set<T: Ord + Copy>(scores: &[T]) -> Vec<usize> {
    let max = *scores.iter().max().expect("nonempty");
    scores
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == max)
        .map(|(i, _)| i)
        .collect()
}

/// Number of ways to split n votes over `parts` reports.
pub fn composition_count(n: u64, parts: usize) -> Option<u128> {
    // C(n + parts - 1, parts - 1), exact
    let k = (parts - 1) as u128;
    let top = n as u128 + k;
    let mut res: u128 = 1;
    for i in 1..=k {
        res = res.checked_mul(top - k + i)? / i;
    }
    Some(res)
}

pub fn check_budget(n: u64, parts: usize, cap: u128) -> Result<()> {
    match composition_count(n, parts) {
        Some(c) if c <= cap => Ok(()),
        Some(c) => Err(Error::ResourceLimit { required: c, cap }),
        None => Err(Error::ResourceLimit { required: u128::MAX, cap }),
    }
}

/// Visits every composition of n into `parts` nonnegative counts.
pub fn for_each_composition<F>(n: u64, parts: usize, mut f: F)
where
    F: FnMut(&[u64]),
{
    assert!(parts >= 1);
    let mut h = vec![0u64; parts];
    h[0] = n;
    loop {
        f(&h);
        let Some(i) = h[..parts - 1].iter().position(|&x| x > 0) else {
            break;
        };
        let head = h[i] - 1;
        h[i] = 0;
        h[0] = head;
        h[i + 1] += 1;
    }
}
