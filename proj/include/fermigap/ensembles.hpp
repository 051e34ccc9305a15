#pragma once

// Random coefficient ensembles and the statistical experiments built on them.
//
//   gaussian         C with i.i.d. N(0,1) entries, (A, B) = split(C)
//   wishart          A = C C^T * normalization, B = 0
//   bounded_uniform  C = U Sigma V^T, Sigma ~ U[0,1]^n, U, V Haar orthogonal
//
// Sample k of a configuration depends only on (seed, k); see rng.hpp for the
// stream derivation.

#include "fermigap/quadform.hpp"
#include "fermigap/rng.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fermigap {

enum class EnsembleKind { gaussian, wishart, bounded_uniform };

std::string to_string(EnsembleKind kind);
EnsembleKind ensemble_kind_from_string(const std::string& name);

struct EnsembleConfig {
  EnsembleKind kind = EnsembleKind::gaussian;
  int n = 2;
  int samples = 1;
  std::uint64_t seed = 0;
  std::optional<double> normalization;  // wishart only; default 1

  void validate() const;  // samples >= 1, n >= 2
};

// N(0,1) matrix, entries drawn row-major from stream (seed, index, role).
Matrix gaussian_matrix(int n, std::uint64_t seed, std::uint64_t index,
                       StreamRole role);

// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
// columns of Q rescaled by sign(R_jj).
Matrix haar_orthogonal(int n, std::uint64_t seed, std::uint64_t index,
                       StreamRole role);

CoefficientPair sample_pair(const EnsembleConfig& config, int index);

// Pauli-form coefficients W with i.i.d. N(0,1) entries.
Matrix sample_pauli_w(int n, std::uint64_t seed, int index);

// Limit law of n * sigma_min^2 for n x n Gaussian matrices:
//   pdf(x) = (1 + sqrt x) / (2 sqrt x) * exp(-(x/2 + sqrt x))
//   cdf(x) = 1 - exp(-(x/2 + sqrt x))
double edelman_pdf(double x);
double edelman_cdf(double x);
// Closed form: x* = (sqrt(1 + 2 ln 2) - 1)^2.
double edelman_median();
// E[sqrt X] = sqrt(2 pi e) * Q(1), Q the standard normal tail.
double edelman_mean_sqrt();

// Fraction of level choices in (0, 1] whose 2^n - 1 excited levels all
// exceed epsilon: (1 - epsilon)^(2^n - 1), evaluated in log space.
double rarity_fraction(int n, double epsilon);
// exp(-2^(n/2)), the large-n behaviour at epsilon = 2^(-n/2).
double rarity_asymptote(int n);

struct MonteCarloEstimate {
  double fraction = 0.0;
  double standard_error = 0.0;
  long long draws = 0;
};

// Direct simulation: draws 2^n - 1 uniform levels per trial.
MonteCarloEstimate rarity_monte_carlo(int n, double epsilon, long long draws,
                                      std::uint64_t seed);

struct SurvivalPoint {
  double x = 0.0;
  double empirical = 0.0;       // P(gap > 2x/n)
  double standard_error = 0.0;  // binomial
  double limit = 0.0;           // exp(-x)
  double finite_n = 0.0;        // (1 - x/n)^n
};

struct SurvivalResult {
  std::vector<double> gaps;
  std::vector<SurvivalPoint> points;
};

SurvivalResult survival_experiment(const EnsembleConfig& config,
                                   std::span<const double> x_values);

struct EdelmanResult {
  std::vector<double> gaps;
  std::vector<double> scaled;  // n * gap^2 / 4
  double ks_distance = 0.0;
  double median = 0.0;
  int degenerate_count = 0;
};

EdelmanResult gap_distribution_experiment(const EnsembleConfig& config);

// Same statistic for gaps supplied by the caller (e.g. Pauli-form W).
EdelmanResult edelman_statistics(int n, std::vector<double> gaps,
                                 int degenerate_count);

struct HistogramBins {
  double lo = 1e-12;
  double hi = 10.0;
  int count = 60;
};

// Logarithmic bins. Values at or below lo land in the first bin, values at
// or above hi in the last, so counts always sum to the number of values.
struct GapHistogram {
  std::vector<double> bin_edges;
  std::vector<long long> ground_gap_counts;
  std::vector<long long> other_gap_counts;
  int n = 0;
  int samples = 0;
};

std::vector<double> log_bin_edges(const HistogramBins& bins);
int log_bin_index(const HistogramBins& bins, double value);

struct Figure1Result {
  GapHistogram histogram;
  std::vector<double> ground_gaps;
  double median_ground_gap = 0.0;
  double median_other_gap = 0.0;
  double mean_ground_gap = 0.0;
};

// Gaussian ensemble; the ground gap of a sample is E_1 - E_0 of its sorted
// 2^n levels, the other gaps are the remaining 2^n - 2 consecutive
// differences.
Figure1Result figure1_experiment(int n, int samples, std::uint64_t seed,
                                 const HistogramBins& bins = {});

struct Figure2Result {
  std::vector<double> s_grid;
  std::vector<std::vector<double>> levels;  // per s, 2^n ascending energies
  std::vector<double> gaps;
  double gamma_at_one = 0.0;
  double linearity_residual = 0.0;  // max |gap(s) - (2(1-s) + s gap(1))|
};

// Wishart target A = C C^T / n.
Figure2Result figure2_experiment(int n, std::uint64_t seed,
                                 std::span<const double> s_grid);

}  // namespace fermigap
