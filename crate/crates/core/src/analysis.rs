//! Histogramming, amplitude fitting, goodness-of-fit, the expected-count
//! band, and toy-ensemble separation between the two hypotheses.

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::generator::RngStream;
use crate::kinematics::Model;
use crate::models::{hvt_alpha_pdf, qm_alpha_pdf, AlphaPdf, AsymmetryParam};
use crate::stats::{chi2_survival, mean, median, std_dev};

/// Uniform histogram of α over `[0, π]`; `α = π` lands in the last bin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    counts: Vec<u64>,
    n_total: u64,
}

impl Histogram {
    pub fn n_bins(&self) -> usize {
        self.counts.len()
    }

    pub fn n_total(&self) -> u64 {
        self.n_total
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `(lo, hi)` edges of bin `i`.
    pub fn edges(&self, i: usize) -> (f64, f64) {
        let w = std::f64::consts::PI / self.n_bins() as f64;
        (i as f64 * w, (i + 1) as f64 * w)
    }

    fn from_counts(counts: Vec<u64>) -> Self {
        let n_total = counts.iter().sum();
        Self { counts, n_total }
    }
}

/// Bins α values into `n_bins` uniform bins over `[0, π]`.
pub fn histogram_alpha<I: IntoIterator<Item = f64>>(alphas: I, n_bins: usize) -> Result<Histogram> {
    if n_bins < 2 {
        return Err(Error::DomainError {
            what: "n_bins",
            value: n_bins as f64,
            domain: ">= 2",
        });
    }
    let pi = std::f64::consts::PI;
    let mut counts = vec![0u64; n_bins];
    let mut any = false;
    for alpha in alphas {
        if !(0.0..=pi).contains(&alpha) {
            return Err(Error::DomainError {
                what: "alpha",
                value: alpha,
                domain: "[0, pi]",
            });
        }
        let idx = ((alpha / pi) * n_bins as f64) as usize;
        counts[idx.min(n_bins - 1)] += 1;
        any = true;
    }
    if !any {
        return Err(Error::EmptyInput("histogram_alpha needs at least one event"));
    }
    Ok(Histogram::from_counts(counts))
}

/// Per-bin expectation of `model` at `n_events`, from the exact
/// antiderivative `α/π + A sin α`, with the `√N` Poisson error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinExpectation {
    pub lo: f64,
    pub hi: f64,
    pub expected: f64,
    pub poisson_err: f64,
}

pub fn expected_counts(
    model: &AlphaPdf<f64>,
    n_events: u64,
    n_bins: usize,
) -> Vec<BinExpectation> {
    let pi = std::f64::consts::PI;
    let w = pi / n_bins as f64;
    (0..n_bins)
        .map(|i| {
            let lo = i as f64 * w;
            let hi = (i + 1) as f64 * w;
            let expected = n_events as f64 * model.bin_probability(lo, hi);
            BinExpectation {
                lo,
                hi,
                expected,
                poisson_err: expected.max(0.0).sqrt(),
            }
        })
        .collect()
}

/// Result of the one-parameter cosine-amplitude fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub a_hat: f64,
    pub sigma_a: f64,
    pub chi2: f64,
    pub ndf: usize,
    pub p_value: f64,
    /// Set when a bin expectation under the flat hypothesis falls below 10
    /// and the χ² approximation becomes questionable.
    pub low_stats_warning: bool,
}

/// Weighted least-squares fit of `W(α) = 1/π + A cos α` to a histogram.
///
/// The χ² uses the flat-hypothesis expectations as fixed Pearson weights,
/// `χ²(A) = Σ (nᵢ − N eᵢ(A))² / (N/n_bins)`, which keeps the model linear
/// in `A` and the minimizer closed-form. The total count is constrained and
/// one parameter is fitted, so `ndf = n_bins − 2`.
pub fn fit_amplitude(hist: &Histogram) -> Result<FitResult> {
    if hist.n_total == 0 {
        return Err(Error::DegenerateFit);
    }
    let nb = hist.n_bins();
    let n = hist.n_total as f64;
    let null_expect = n / nb as f64;
    let low_stats_warning = null_expect < 10.0;

    // sᵢ = ∫_bin cos α dα = sin(hi) − sin(lo).
    let s: Vec<f64> = (0..nb)
        .map(|i| {
            let (lo, hi) = hist.edges(i);
            hi.sin() - lo.sin()
        })
        .collect();
    let s2_sum: f64 = s.iter().map(|v| v * v).sum();

    // Σ sᵢ telescopes to zero, so centering on the flat expectation keeps
    // the estimator exactly unbiased.
    let mut num = 0.0;
    for (i, &si) in s.iter().enumerate() {
        num += si * (hist.counts[i] as f64 - null_expect);
    }
    let raw = num / (n * s2_sum);
    let bound = 1.0 / std::f64::consts::PI;
    let a_hat = raw.clamp(-bound, bound);
    let sigma_a = 1.0 / (n * nb as f64 * s2_sum).sqrt();

    let mut chi2 = 0.0;
    for (i, &si) in s.iter().enumerate() {
        let expect = null_expect + n * a_hat * si;
        chi2 += (hist.counts[i] as f64 - expect).powi(2) / null_expect;
    }
    let ndf = nb - 2;
    Ok(FitResult {
        a_hat,
        sigma_a,
        chi2,
        ndf,
        p_value: chi2_survival(chi2, ndf),
        low_stats_warning,
    })
}

/// Pearson χ² of a histogram against a fixed model; `ndf = n_bins − 1`
/// (the total count is constrained).
pub fn gof_chi2(hist: &Histogram, model: &AlphaPdf<f64>) -> Result<(f64, usize, f64)> {
    if hist.n_total == 0 {
        return Err(Error::EmptyInput("gof_chi2 needs a filled histogram"));
    }
    let expectations = expected_counts(model, hist.n_total, hist.n_bins());
    let mut chi2 = 0.0;
    for (count, e) in hist.counts.iter().zip(&expectations) {
        chi2 += (*count as f64 - e.expected).powi(2) / e.expected;
    }
    let ndf = hist.n_bins() - 1;
    Ok((chi2, ndf, chi2_survival(chi2, ndf)))
}

/// The per-bin expected counts of both hypotheses with Poisson errors; the
/// data behind the experiment-scale uncertainty band.
#[derive(Debug, Clone, PartialEq)]
pub struct BandTable {
    pub n_events: u64,
    pub rows: Vec<BandRow>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandRow {
    pub lo: f64,
    pub hi: f64,
    pub expected_qm: f64,
    pub err_qm: f64,
    pub expected_hvt: f64,
    pub err_hvt: f64,
}

pub fn band_table(n_events: u64, n_bins: usize, a: AsymmetryParam<f64>) -> BandTable {
    let qm = expected_counts(&qm_alpha_pdf(a), n_events, n_bins);
    let hvt = expected_counts(&hvt_alpha_pdf(), n_events, n_bins);
    let rows = qm
        .iter()
        .zip(&hvt)
        .map(|(q, h)| BandRow {
            lo: q.lo,
            hi: q.hi,
            expected_qm: q.expected,
            err_qm: q.poisson_err,
            expected_hvt: h.expected,
            err_hvt: h.poisson_err,
        })
        .collect();
    BandTable { n_events, rows }
}

/// One pseudo-experiment drawn under `hypothesis`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToyRecord {
    pub toy_id: u64,
    pub hypothesis: Model,
    pub chi2_qm: f64,
    pub chi2_hvt: f64,
    pub delta_chi2: f64,
}

/// Toy-ensemble summary of the hypothesis separation.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSummary {
    pub n_toys: u64,
    pub records: Vec<ToyRecord>,
    /// Gaussian-equivalent of the median QM-truth `Δχ²` against the normal
    /// approximation of the HVT-truth ensemble; clamped at zero.
    pub median_significance: f64,
}

impl EnsembleSummary {
    pub fn delta_under(&self, hypothesis: Model) -> Vec<f64> {
        self.records
            .iter()
            .filter(|r| r.hypothesis == hypothesis)
            .map(|r| r.delta_chi2)
            .collect()
    }
}

fn draw_poisson_counts(
    expectations: &[BinExpectation],
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Histogram {
    let counts = expectations
        .iter()
        .map(|e| {
            let poisson = Poisson::new(e.expected).expect("positive bin expectation");
            poisson.sample(rng) as u64
        })
        .collect();
    Histogram::from_counts(counts)
}

fn pearson_against(hist: &Histogram, expectations: &[BinExpectation]) -> f64 {
    // Expectations are held at the nominal n_events of the ensemble, not
    // re-scaled per toy; the Poisson total is part of the statistic.
    hist.counts
        .iter()
        .zip(expectations)
        .map(|(c, e)| (*c as f64 - e.expected).powi(2) / e.expected)
        .sum()
}

/// Runs `n_toys` pseudo-experiments under each hypothesis at `n_events`,
/// computing `Δχ² = χ²(flat) − χ²(cosine)` per toy. The ensemble is
/// deterministic in `seed` and independent of `workers`: toy `t` under QM
/// uses stream `2t`, under HVT stream `2t + 1`.
pub fn separation_significance(
    n_events: u64,
    n_bins: usize,
    n_toys: u64,
    seed: u64,
    a: AsymmetryParam<f64>,
    workers: usize,
) -> Result<EnsembleSummary> {
    if n_toys < 100 {
        return Err(Error::DomainError {
            what: "n_toys",
            value: n_toys as f64,
            domain: ">= 100",
        });
    }
    if n_events < 1 {
        return Err(Error::DomainError {
            what: "n_events",
            value: n_events as f64,
            domain: ">= 1",
        });
    }
    let qm_expect = expected_counts(&qm_alpha_pdf(a), n_events, n_bins);
    let hvt_expect = expected_counts(&hvt_alpha_pdf(), n_events, n_bins);

    let run_range = |lo: u64, hi: u64| -> Vec<ToyRecord> {
        let mut out = Vec::with_capacity(((hi - lo) * 2) as usize);
        for t in lo..hi {
            for (hypothesis, stream, truth) in [
                (Model::Qm, 2 * t, &qm_expect),
                (Model::Hvt, 2 * t + 1, &hvt_expect),
            ] {
                let mut rng = RngStream::new(seed, stream).rng();
                let hist = draw_poisson_counts(truth, &mut rng);
                let chi2_qm = pearson_against(&hist, &qm_expect);
                let chi2_hvt = pearson_against(&hist, &hvt_expect);
                out.push(ToyRecord {
                    toy_id: t,
                    hypothesis,
                    chi2_qm,
                    chi2_hvt,
                    delta_chi2: chi2_hvt - chi2_qm,
                });
            }
        }
        out
    };

    let records: Vec<ToyRecord> = if workers <= 1 {
        run_range(0, n_toys)
    } else {
        let workers = workers.min(n_toys as usize).max(1);
        let step = n_toys.div_ceil(workers as u64);
        let mut parts: Vec<Vec<ToyRecord>> = Vec::new();
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers as u64)
                .map(|w| {
                    let lo = w * step;
                    let hi = ((w + 1) * step).min(n_toys);
                    scope.spawn(move || if lo < hi { run_range(lo, hi) } else { Vec::new() })
                })
                .collect();
            for h in handles {
                parts.push(h.join().expect("toy worker panicked"));
            }
        });
        parts.into_iter().flatten().collect()
    };

    let delta_qm: Vec<f64> = records
        .iter()
        .filter(|r| r.hypothesis == Model::Qm)
        .map(|r| r.delta_chi2)
        .collect();
    let delta_hvt: Vec<f64> = records
        .iter()
        .filter(|r| r.hypothesis == Model::Hvt)
        .map(|r| r.delta_chi2)
        .collect();
    let null_mean = mean(&delta_hvt);
    let null_std = std_dev(&delta_hvt);
    let median_significance = if null_std > 0.0 {
        ((median(&delta_qm) - null_mean) / null_std).max(0.0)
    } else {
        0.0
    };
    Ok(EnsembleSummary {
        n_toys,
        records,
        median_significance,
    })
}

/// Draws a toy histogram under an arbitrary α model; used by pull studies.
pub fn draw_toy_histogram(
    model: &AlphaPdf<f64>,
    n_events: u64,
    n_bins: usize,
    stream: RngStream,
) -> Histogram {
    let mut rng = stream.rng();
    draw_poisson_counts(&expected_counts(model, n_events, n_bins), &mut rng)
}

/// Samples α values directly from an [`AlphaPdf`] by Newton inversion of
/// the exact CDF; a convenience for flat-model checks and tests.
pub fn sample_alpha(model: &AlphaPdf<f64>, rng: &mut rand_chacha::ChaCha8Rng) -> f64 {
    let pi = std::f64::consts::PI;
    let u: f64 = rng.random();
    // CDF(α) = α/π + A sin α is monotone; Newton from the flat guess.
    let mut alpha = u * pi;
    for _ in 0..40 {
        let f = model.cdf(alpha) - u;
        let d = model.density(alpha);
        let step = f / d;
        alpha = (alpha - step).clamp(0.0, pi);
        if step.abs() < 1e-14 {
            break;
        }
    }
    alpha
}
