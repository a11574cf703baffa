//! Rational-arithmetic mirrors of the simplex operations, used as an
//! independent route when floating point would leave doubt.

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rat = Ratio<i128>;

pub fn rat(numer: i128, denom: i128) -> Rat {
    Ratio::new(numer, denom)
}

pub fn to_f64(x: &Rat) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

pub fn check_simplex(u: &[Rat]) -> Result<()> {
    if u.iter().any(|c| c < &Rat::zero()) {
        return Err(Error::InvalidInput("negative coordinate".into()));
    }
    if u.iter().sum::<Rat>() != Rat::one() {
        return Err(Error::InvalidInput("coordinates do not sum to 1".into()));
    }
    Ok(())
}

pub fn anchored_utility(u: &[Rat], w: &[Rat], alpha: Rat) -> Vec<Rat> {
    let keep = Rat::one() - alpha;
    u.iter()
        .zip(w)
        .map(|(ui, wi)| keep * ui + alpha * wi)
        .collect()
}

pub fn anchor_report(r: &[Rat], w: &[Rat], alpha: Rat) -> Vec<Rat> {
    let keep = Rat::one() - alpha;
    r.iter()
        .zip(w)
        .map(|(ri, wi)| (ri - alpha * wi) / keep)
        .collect()
}

pub fn unanchor_report(s: &[Rat], w: &[Rat], alpha: Rat) -> Vec<Rat> {
    let keep = Rat::one() - alpha;
    s.iter()
        .zip(w)
        .map(|(si, wi)| keep * si + alpha * wi)
        .collect()
}

pub fn dist2(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum()
}

/// All reports at exactly minimal squared distance from u.
pub fn nearest_report(u: &[Rat], reports: &[Vec<Rat>]) -> Vec<usize> {
    let d2: Vec<Rat> = reports.iter().map(|r| dist2(u, r)).collect();
    let min = *d2.iter().min().expect("nonempty menu");
    d2.iter()
        .enumerate()
        .filter(|(_, d)| **d == min)
        .map(|(i, _)| i)
        .collect()
}

/// Basis-vector menu over m alternatives.
pub fn plurality_menu(m: usize) -> Vec<Vec<Rat>> {
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect()
}
