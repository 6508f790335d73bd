use alloc::collections::BTreeMap;
use alloc::vec::Vec;

/// Master seed and number of streams the trials were split over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedPlan {
    pub master_seed: u64,
    pub streams: u64,
}

impl SeedPlan {
    pub fn new(master_seed: u64, streams: u64) -> Self {
        SeedPlan { master_seed, streams: streams.max(1) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    /// Sample standard deviation over `√n_trials`.
    pub std_err: f64,
    pub n_trials: u64,
    pub seed: u64,
    pub streams: u64,
}

impl MonteCarloEstimate {
    pub fn z_score(&self, target: f64) -> f64 {
        if self.std_err == 0.0 {
            if self.mean == target {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.mean - target) / self.std_err
        }
    }

    pub fn within(&self, target: f64, sigmas: f64) -> bool {
        self.z_score(target).abs() <= sigmas
    }
}

/// Counts per category.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Histogram {
    counts: BTreeMap<usize, u64>,
    n: u64,
}

impl Histogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: usize) {
        *self.counts.entry(c).or_insert(0) += 1;
        self.n += 1;
    }

    pub fn merge(&mut self, o: &Histogram) {
        for (&c, &v) in &o.counts {
            *self.counts.entry(c).or_insert(0) += v;
        }
        self.n += o.n;
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn count(&self, c: usize) -> u64 {
        self.counts.get(&c).copied().unwrap_or(0)
    }

    pub fn max_category(&self) -> Option<usize> {
        self.counts.keys().next_back().copied()
    }

    fn estimate(&self, mean: f64, second: f64, plan: SeedPlan) -> MonteCarloEstimate {
        let n = self.n as f64;
        let var = if self.n > 1 { (second - n * mean * mean).max(0.0) / (n - 1.0) } else { 0.0 };
        MonteCarloEstimate {
            mean,
            std_err: libm::sqrt(var / n),
            n_trials: self.n,
            seed: plan.master_seed,
            streams: plan.streams,
        }
    }

    /// Estimate of `P(category = c)`.
    pub fn pmf_estimate(&self, c: usize, plan: SeedPlan) -> MonteCarloEstimate {
        let k = self.count(c) as f64;
        self.estimate(k / self.n as f64, k, plan)
    }

    /// Estimate of the mean category.
    pub fn mean_estimate(&self, plan: SeedPlan) -> MonteCarloEstimate {
        let (mut s1, mut s2) = (0.0, 0.0);
        for (&c, &v) in &self.counts {
            let (c, v) = (c as f64, v as f64);
            s1 += c * v;
            s2 += c * c * v;
        }
        self.estimate(s1 / self.n as f64, s2, plan)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub df: usize,
    /// Wilson–Hilferty normal approximation of the upper tail.
    pub z: f64,
}

impl ChiSquare {
    fn new(statistic: f64, df: usize) -> Self {
        let d = df.max(1) as f64;
        let v = 2.0 / (9.0 * d);
        let z = (libm::cbrt(statistic / d) - (1.0 - v)) / libm::sqrt(v);
        ChiSquare { statistic, df, z }
    }

    pub fn passes(&self, sigmas: f64) -> bool {
        self.z < sigmas
    }
}

/// Goodness of fit of `observed` (total `n`) to `probs`. Cells with expected
/// count below 5 are pooled with the complement of the listed cells.
pub fn chi_square_gof(observed: &[u64], probs: &[f64], n: u64) -> ChiSquare {
    let nf = n as f64;
    let mut stat = 0.0;
    let mut cells = 0usize;
    let (mut rest_o, mut rest_p) = (n as f64, 1.0);
    for (&o, &p) in observed.iter().zip(probs) {
        let e = p * nf;
        if e < 5.0 {
            continue;
        }
        stat += (o as f64 - e) * (o as f64 - e) / e;
        cells += 1;
        rest_o -= o as f64;
        rest_p -= p;
    }
    let rest_e = rest_p.max(0.0) * nf;
    if rest_e >= 5.0 {
        stat += (rest_o - rest_e) * (rest_o - rest_e) / rest_e;
        cells += 1;
    }
    ChiSquare::new(stat, cells.saturating_sub(1))
}

/// Two-sample homogeneity test on aligned cell counts; cells with fewer than
/// 10 combined observations are pooled.
pub fn chi_square_two_sample(a: &[u64], b: &[u64]) -> ChiSquare {
    let na: u64 = a.iter().sum();
    let nb: u64 = b.iter().sum();
    let (ka, kb) = (libm::sqrt(nb as f64 / na as f64), libm::sqrt(na as f64 / nb as f64));
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let (mut pa, mut pb) = (0.0, 0.0);
    for (&x, &y) in a.iter().zip(b) {
        if x + y < 10 {
            pa += x as f64;
            pb += y as f64;
        } else {
            cells.push((x as f64, y as f64));
        }
    }
    if pa + pb > 0.0 {
        cells.push((pa, pb));
    }
    let stat: f64 = cells.iter().map(|&(x, y)| (ka * x - kb * y) * (ka * x - kb * y) / (x + y)).sum();
    ChiSquare::new(stat, cells.len().saturating_sub(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_estimates() {
        let mut h = Histogram::new();
        for c in [0, 1, 1, 2] {
            h.push(c);
        }
        let plan = SeedPlan::new(1, 1);
        let p = h.pmf_estimate(1, plan);
        assert_eq!(p.mean, 0.5);
        assert!((p.std_err - libm::sqrt(1.0 / 3.0 / 4.0)).abs() < 1e-15);
        let m = h.mean_estimate(plan);
        assert_eq!(m.mean, 1.0);
        assert!((m.std_err - libm::sqrt(2.0 / 3.0 / 4.0)).abs() < 1e-15);
    }

    #[test]
    fn chi_square_behaviour() {
        let ok = chi_square_gof(&[250, 250, 500], &[0.25, 0.25, 0.5], 1000);
        assert_eq!(ok.statistic, 0.0);
        assert!(ok.passes(3.0));
        let bad = chi_square_gof(&[400, 100, 500], &[0.25, 0.25, 0.5], 1000);
        assert!(!bad.passes(3.0));
        assert!(chi_square_two_sample(&[100, 200, 300], &[100, 200, 300]).statistic.abs() < 1e-12);
        assert!(!chi_square_two_sample(&[300, 200, 100], &[100, 200, 300]).passes(3.0));
    }
}
