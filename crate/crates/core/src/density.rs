//! Utility densities on the simplex, seeded samplers, and level-set measure
//! estimation per menu report.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rand_distr::{Distribution, Gamma};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry;
use crate::simplex::{nearest_report, ReportMenu, SimplexPoint};

#[derive(Debug, Clone, Serialize)]
pub enum DensityModel {
    Uniform { m: usize },
    Dirichlet { theta: Vec<f64> },
    Mixture { weights: Vec<f64>, components: Vec<DensityModel> },
}

impl DensityModel {
    pub fn uniform(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidInput(format!("need m >= 2, got {m}")));
        }
        Ok(Self::Uniform { m })
    }

    pub fn dirichlet(theta: Vec<f64>) -> Result<Self> {
        if theta.len() < 2 {
            return Err(Error::InvalidInput("need at least 2 parameters".into()));
        }
        if theta.iter().any(|&t| !t.is_finite() || t <= 0.0) {
            return Err(Error::InvalidInput(
                "dirichlet parameters must be positive".into(),
            ));
        }
        Ok(Self::Dirichlet { theta })
    }

    /// Convex combination of uniform/dirichlet components of equal dimension.
    pub fn mixture(weights: Vec<f64>, components: Vec<DensityModel>) -> Result<Self> {
        if weights.len() != components.len() || components.is_empty() {
            return Err(Error::InvalidInput(
                "mixture needs matching, nonempty weights and components".into(),
            ));
        }
        if weights.iter().any(|&w| !w.is_finite() || w <= 0.0) {
            return Err(Error::InvalidInput("mixture weights must be positive".into()));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidInput(format!(
                "mixture weights sum to {sum}, expected 1"
            )));
        }
        if components
            .iter()
            .any(|c| matches!(c, DensityModel::Mixture { .. }))
        {
            return Err(Error::InvalidInput("nested mixtures not supported".into()));
        }
        let m = components[0].dim();
        if components.iter().any(|c| c.dim() != m) {
            return Err(Error::InvalidInput(
                "mixture components differ in dimension".into(),
            ));
        }
        Ok(Self::Mixture { weights, components })
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Uniform { m } => *m,
            Self::Dirichlet { theta } => theta.len(),
            Self::Mixture { components, .. } => components[0].dim(),
        }
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self, Self::Uniform { .. })
    }

    /// Expected utility vector, in closed form for every built-in model.
    pub fn mean(&self) -> Vec<f64> {
        match self {
            Self::Uniform { m } => vec![1.0 / *m as f64; *m],
            Self::Dirichlet { theta } => {
                let sum: f64 = theta.iter().sum();
                theta.iter().map(|t| t / sum).collect()
            }
            Self::Mixture { weights, components } => {
                let m = self.dim();
                let mut v = vec![0.0; m];
                for (w, c) in weights.iter().zip(components) {
                    for (vi, ci) in v.iter_mut().zip(c.mean()) {
                        *vi += w * ci;
                    }
                }
                v
            }
        }
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> SimplexPoint {
        match self {
            // the uniform density is dirichlet(1,...,1); sampling goes
            // through the same gamma path so the two produce identical
            // streams from identical seeds
            Self::Uniform { m } => gamma_normalized(&vec![1.0; *m], rng),
            Self::Dirichlet { theta } => gamma_normalized(theta, rng),
            Self::Mixture { weights, components } => {
                let x: f64 = rng.random();
                let mut acc = 0.0;
                for (w, c) in weights.iter().zip(components) {
                    acc += w;
                    if x < acc {
                        return c.sample(rng);
                    }
                }
                components.last().expect("nonempty").sample(rng)
            }
        }
    }

    /// n independent draws, reproducible from the seed.
    pub fn sample_profile(&self, n: usize, seed: u64) -> Result<Vec<SimplexPoint>> {
        if n == 0 {
            return Err(Error::InvalidInput("need at least one sample".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok((0..n).map(|_| self.sample(&mut rng)).collect())
    }
}

fn gamma_normalized<R: Rng>(theta: &[f64], rng: &mut R) -> SimplexPoint {
    loop {
        let draws: Vec<f64> = theta
            .iter()
            .map(|&t| Gamma::new(t, 1.0).expect("validated shape").sample(rng))
            .collect();
        let sum: f64 = draws.iter().sum();
        if sum > 0.0 && sum.is_finite() {
            let coords: Vec<f64> = draws.iter().map(|d| d / sum).collect();
            if let Ok(p) = SimplexPoint::new(coords) {
                return p;
            }
        }
        // all-zero or non-finite draw; vanishing probability, retry
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Provenance {
    MonteCarlo { samples: u64 },
    ExactGeometry,
    ClosedForm,
}

/// Measure of each report's level set, with per-entry uncertainty.
#[derive(Debug, Clone, Serialize)]
pub struct ReportDistribution {
    pub probs: Vec<f64>,
    pub stderr: Vec<f64>,
    pub provenance: Provenance,
}

impl ReportDistribution {
    pub fn exact(probs: Vec<f64>, provenance: Provenance) -> Self {
        let stderr = vec![0.0; probs.len()];
        Self { probs, stderr, provenance }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Monte Carlo estimate of mu(level set) per report. Exact ties split their
/// credit evenly, so the entries always sum to 1.
pub fn level_set_measure(
    density: &DensityModel,
    menu: &ReportMenu,
    samples: u64,
    seed: u64,
) -> Result<ReportDistribution> {
    if samples == 0 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    if density.dim() != menu.m() {
        return Err(Error::InvalidInput(format!(
            "density dimension {} does not match menu dimension {}",
            density.dim(),
            menu.m()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut credit = vec![0.0f64; menu.len()];
    for _ in 0..samples {
        let u = density.sample(&mut rng);
        let ties = nearest_report(&u, menu)?;
        let share = 1.0 / ties.len() as f64;
        for t in ties {
            credit[t] += share;
        }
    }
    let n = samples as f64;
    let probs: Vec<f64> = credit.iter().map(|c| c / n).collect();
    // binomial approximation; fractional tie credit is measure-zero noise
    let stderr = probs.iter().map(|p| (p * (1.0 - p) / n).sqrt()).collect();
    Ok(ReportDistribution {
        probs,
        stderr,
        provenance: Provenance::MonteCarlo { samples },
    })
}

/// Exact cell measures under the uniform density, m = 3 only.
pub fn exact_measure_m3(menu: &ReportMenu) -> Result<ReportDistribution> {
    let probs = geometry::exact_measure_m3(menu)?;
    Ok(ReportDistribution::exact(probs, Provenance::ExactGeometry))
}

/// Exact geometry when available (uniform density, m = 3), Monte Carlo
/// otherwise.
pub fn level_set_measure_auto(
    density: &DensityModel,
    menu: &ReportMenu,
    samples: u64,
    seed: u64,
) -> Result<ReportDistribution> {
    if density.is_uniform() && menu.m() == 3 {
        exact_measure_m3(menu)
    } else {
        level_set_measure(density, menu, samples, seed)
    }
}

/// Largest deviation |mu(cell) - uniform(cell)| over the menu's level sets:
/// a partition-restricted lower estimate of the total-variation distance to
/// uniform. Both sides use the same estimator and seed, so a uniform mu
/// yields exactly zero.
pub fn tv_distance_bound(
    density: &DensityModel,
    menu: &ReportMenu,
    samples: u64,
    seed: u64,
) -> Result<f64> {
    let mu = level_set_measure_auto(density, menu, samples, seed)?;
    let uniform = DensityModel::uniform(density.dim())?;
    let base = level_set_measure_auto(&uniform, menu, samples, seed)?;
    Ok(mu
        .probs
        .iter()
        .zip(&base.probs)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dirichlet_validation() {
        assert!(DensityModel::dirichlet(vec![1.0, 0.0]).is_err());
        assert!(DensityModel::dirichlet(vec![1.0]).is_err());
        assert!(DensityModel::dirichlet(vec![2.0, 1.0, 1.0]).is_ok());
    }

    #[test]
    fn mixture_validation() {
        let u = DensityModel::uniform(3).unwrap();
        let d = DensityModel::dirichlet(vec![5.0, 1.0, 1.0]).unwrap();
        assert!(DensityModel::mixture(vec![0.9, 0.1], vec![u.clone(), d.clone()]).is_ok());
        assert!(DensityModel::mixture(vec![0.5, 0.4], vec![u.clone(), d.clone()]).is_err());
        let w2 = DensityModel::uniform(2).unwrap();
        assert!(DensityModel::mixture(vec![0.5, 0.5], vec![u, w2]).is_err());
    }

    #[test]
    fn profiles_are_reproducible() {
        let d = DensityModel::dirichlet(vec![2.0, 1.0, 1.0]).unwrap();
        let a = d.sample_profile(50, 9).unwrap();
        let b = d.sample_profile(50, 9).unwrap();
        assert_eq!(a, b);
        let c = d.sample_profile(50, 10).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn uniform_matches_unit_dirichlet_stream() {
        let u = DensityModel::uniform(3).unwrap();
        let d = DensityModel::dirichlet(vec![1.0, 1.0, 1.0]).unwrap();
        assert_eq!(
            u.sample_profile(20, 123).unwrap(),
            d.sample_profile(20, 123).unwrap()
        );
    }

    #[test]
    fn sample_means_match_closed_form() {
        let cases = [
            DensityModel::uniform(3).unwrap(),
            DensityModel::dirichlet(vec![2.0, 1.0, 1.0]).unwrap(),
            DensityModel::mixture(
                vec![0.5, 0.5],
                vec![
                    DensityModel::uniform(3).unwrap(),
                    DensityModel::dirichlet(vec![4.0, 1.0, 1.0]).unwrap(),
                ],
            )
            .unwrap(),
        ];
        let n = 100_000;
        for d in cases {
            let profile = d.sample_profile(n, 31).unwrap();
            let mean = d.mean();
            for i in 0..d.dim() {
                let est: f64 = profile.iter().map(|p| p[i]).sum::<f64>() / n as f64;
                // coordinate variance on the simplex is below 1/4
                let sigma = 0.5 / (n as f64).sqrt();
                assert!(
                    (est - mean[i]).abs() < 3.0 * sigma,
                    "coordinate {i}: {est} vs {}",
                    mean[i]
                );
            }
        }
    }

    #[test]
    fn plurality_measures_are_symmetric() {
        let d = DensityModel::uniform(3).unwrap();
        let menu = ReportMenu::plurality(3).unwrap();
        let est = level_set_measure(&d, &menu, 40_000, 5).unwrap();
        assert!((est.probs.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        for (p, se) in est.probs.iter().zip(&est.stderr) {
            assert!((p - 1.0 / 3.0).abs() < 3.0 * se, "{p} vs 1/3 (se {se})");
        }
    }

    #[test]
    fn exact_measure_agrees_with_monte_carlo() {
        let menu = ReportMenu::ordinal(3).unwrap();
        let exact = exact_measure_m3(&menu).unwrap();
        assert_eq!(exact.provenance, Provenance::ExactGeometry);
        let d = DensityModel::uniform(3).unwrap();
        let mc = level_set_measure(&d, &menu, 60_000, 11).unwrap();
        for ((e, p), se) in exact.probs.iter().zip(&mc.probs).zip(&mc.stderr) {
            assert!((e - p).abs() < 3.0 * se);
        }
    }

    #[test]
    fn tv_bound_uniform_is_zero() {
        let menu = ReportMenu::plurality(3).unwrap();
        let d = DensityModel::uniform(3).unwrap();
        assert_eq!(tv_distance_bound(&d, &menu, 10_000, 3).unwrap(), 0.0);
        // m = 4 goes through Monte Carlo on both sides with a shared seed
        let menu4 = ReportMenu::plurality(4).unwrap();
        let d4 = DensityModel::uniform(4).unwrap();
        assert_eq!(tv_distance_bound(&d4, &menu4, 10_000, 3).unwrap(), 0.0);
    }

    #[test]
    fn tv_bound_mixture_capped_by_component_weight() {
        // 0.9 uniform + 0.1 anything differs from uniform by at most 0.1 on
        // any event; allow Monte Carlo slack
        let mix = DensityModel::mixture(
            vec![0.9, 0.1],
            vec![
                DensityModel::uniform(3).unwrap(),
                DensityModel::dirichlet(vec![5.0, 1.0, 1.0]).unwrap(),
            ],
        )
        .unwrap();
        let menu = ReportMenu::plurality(3).unwrap();
        let bound = tv_distance_bound(&mix, &menu, 200_000, 17).unwrap();
        assert!(bound <= 0.1 + 0.005, "{bound}");
    }

    #[test]
    fn measure_seed_determinism() {
        let d = DensityModel::dirichlet(vec![3.0, 2.0, 1.0]).unwrap();
        let menu = ReportMenu::ordinal(3).unwrap();
        let a = level_set_measure(&d, &menu, 20_000, 77).unwrap();
        let b = level_set_measure(&d, &menu, 20_000, 77).unwrap();
        assert_eq!(a.probs, b.probs);
    }
}
