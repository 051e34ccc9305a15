#include "fermigap/ensembles.hpp"

#include "fermigap/errors.hpp"
#include "fermigap/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fermigap {

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::gaussian:
      return "gaussian";
    case EnsembleKind::wishart:
      return "wishart";
    case EnsembleKind::bounded_uniform:
      return "bounded_uniform";
  }
  return "unknown";
}

EnsembleKind ensemble_kind_from_string(const std::string& name) {
  if (name == "gaussian") return EnsembleKind::gaussian;
  if (name == "wishart") return EnsembleKind::wishart;
  if (name == "bounded_uniform") return EnsembleKind::bounded_uniform;
  throw DomainError("unknown ensemble kind '" + name +
                    "' (expected gaussian, wishart or bounded_uniform)");
}

void EnsembleConfig::validate() const {
  if (samples < 1) throw DomainError("ensemble needs samples >= 1");
  if (n < 2) throw DomainError("ensemble needs n >= 2");
  if (normalization && !(std::isfinite(*normalization) && *normalization > 0.0)) {
    throw DomainError("normalization must be a positive finite number");
  }
}

Matrix gaussian_matrix(int n, std::uint64_t seed, std::uint64_t index,
                       StreamRole role) {
  Stream stream(seed, index, role);
  Matrix c(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) c(j, k) = stream.normal();
  }
  return c;
}

Matrix haar_orthogonal(int n, std::uint64_t seed, std::uint64_t index,
                       StreamRole role) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(n, seed, index, role));
  Matrix q = qr.householderQ();
  const auto r_diag = qr.matrixQR().diagonal();
  for (int j = 0; j < n; ++j) {
    if (r_diag(j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

CoefficientPair sample_pair(const EnsembleConfig& config, int index) {
  config.validate();
  if (index < 0 || index >= config.samples) {
    throw DomainError("sample index " + std::to_string(index) +
                      " outside [0, " + std::to_string(config.samples) + ")");
  }
  const int n = config.n;
  const auto k = static_cast<std::uint64_t>(index);
  switch (config.kind) {
    case EnsembleKind::gaussian:
      return CoefficientPair::from_matrix(
          gaussian_matrix(n, config.seed, k, StreamRole::coefficients));
    case EnsembleKind::wishart: {
      const Matrix c = gaussian_matrix(n, config.seed, k, StreamRole::coefficients);
      const Matrix cct = c * c.transpose();
      // The product kernel need not be bitwise symmetric; average it.
      Matrix a = (cct + cct.transpose()) / 2.0;
      a *= config.normalization.value_or(1.0);
      return CoefficientPair::from_parts(std::move(a), Matrix::Zero(n, n));
    }
    case EnsembleKind::bounded_uniform: {
      Stream sigma_stream(config.seed, k, StreamRole::singular_values);
      Vector sigma(n);
      for (int j = 0; j < n; ++j) sigma(j) = sigma_stream.uniform();
      const Matrix u = haar_orthogonal(n, config.seed, k, StreamRole::left_orthogonal);
      const Matrix v = haar_orthogonal(n, config.seed, k, StreamRole::right_orthogonal);
      return CoefficientPair::from_matrix(u * sigma.asDiagonal() * v.transpose());
    }
  }
  throw DomainError("unknown ensemble kind");
}

Matrix sample_pauli_w(int n, std::uint64_t seed, int index) {
  if (n < 1) throw DomainError("W needs n >= 1");
  return gaussian_matrix(n, seed, static_cast<std::uint64_t>(index),
                         StreamRole::coefficients);
}

double edelman_pdf(double x) {
  if (!(x > 0.0)) throw DomainError("Edelman density is defined for x > 0");
  const double r = std::sqrt(x);
  return (1.0 + r) / (2.0 * r) * std::exp(-(x / 2.0 + r));
}

double edelman_cdf(double x) {
  if (!(x >= 0.0)) throw DomainError("Edelman cdf is defined for x >= 0");
  return -std::expm1(-(x / 2.0 + std::sqrt(x)));
}

double edelman_median() {
  // x/2 + sqrt(x) = ln 2 is a quadratic in t = sqrt(x).
  const double t = std::sqrt(1.0 + 2.0 * std::numbers::ln2) - 1.0;
  return t * t;
}

double edelman_mean_sqrt() {
  // E[t] = int_0^inf exp(-(t^2/2 + t)) dt.
  const double tail = 0.5 * std::erfc(1.0 / std::numbers::sqrt2);
  return std::sqrt(2.0 * std::numbers::pi * std::numbers::e) * tail;
}

double rarity_fraction(int n, double epsilon) {
  if (n < 1) throw DomainError("rarity fraction needs n >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("rarity fraction needs 0 < epsilon < 1");
  }
  const double excited = std::ldexp(1.0, n) - 1.0;
  return std::exp(excited * std::log1p(-epsilon));
}

double rarity_asymptote(int n) {
  if (n < 1) throw DomainError("rarity asymptote needs n >= 1");
  return std::exp(-std::exp2(n / 2.0));
}

MonteCarloEstimate rarity_monte_carlo(int n, double epsilon, long long draws,
                                      std::uint64_t seed) {
  if (n < 1 || n > 24) throw DomainError("rarity simulation needs 1 <= n <= 24");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("rarity simulation needs 0 < epsilon < 1");
  }
  if (draws < 1) throw DomainError("rarity simulation needs draws >= 1");
  Stream stream(seed, static_cast<std::uint64_t>(n), StreamRole::monte_carlo);
  const long long levels = (1LL << n) - 1;
  long long hits = 0;
  for (long long d = 0; d < draws; ++d) {
    bool all_above = true;
    // Levels are uniform on (0, 1]; every draw consumes all of them so the
    // stream position does not depend on earlier outcomes.
    for (long long l = 0; l < levels; ++l) {
      const double level = 1.0 - stream.uniform();
      all_above = all_above && level > epsilon;
    }
    if (all_above) ++hits;
  }
  MonteCarloEstimate est;
  est.draws = draws;
  est.fraction = static_cast<double>(hits) / static_cast<double>(draws);
  est.standard_error =
      binomial_standard_error(rarity_fraction(n, epsilon), draws);
  return est;
}

SurvivalResult survival_experiment(const EnsembleConfig& config,
                                   std::span<const double> x_values) {
  config.validate();
  if (config.kind != EnsembleKind::bounded_uniform) {
    throw DomainError("survival experiment uses the bounded_uniform ensemble");
  }
  for (double x : x_values) {
    if (!(x > 0.0)) throw DomainError("survival thresholds need x > 0");
  }
  SurvivalResult out;
  out.gaps.reserve(static_cast<std::size_t>(config.samples));
  for (int i = 0; i < config.samples; ++i) {
    out.gaps.push_back(ground_gap(sample_pair(config, i)).gap);
  }
  const double n = config.n;
  for (double x : x_values) {
    const double threshold = 2.0 * x / n;
    const auto above = std::count_if(out.gaps.begin(), out.gaps.end(),
                                     [&](double g) { return g > threshold; });
    SurvivalPoint point;
    point.x = x;
    point.empirical = static_cast<double>(above) / config.samples;
    point.standard_error = binomial_standard_error(point.empirical, config.samples);
    point.limit = std::exp(-x);
    point.finite_n = x < n ? std::pow(1.0 - x / n, n) : 0.0;
    out.points.push_back(point);
  }
  return out;
}

EdelmanResult edelman_statistics(int n, std::vector<double> gaps,
                                 int degenerate_count) {
  EdelmanResult out;
  out.gaps = std::move(gaps);
  out.degenerate_count = degenerate_count;
  out.scaled.reserve(out.gaps.size());
  for (double g : out.gaps) out.scaled.push_back(n * g * g / 4.0);
  out.ks_distance = ks_distance(out.scaled, edelman_cdf);
  out.median = median(out.scaled);
  return out;
}

EdelmanResult gap_distribution_experiment(const EnsembleConfig& config) {
  config.validate();
  if (config.kind != EnsembleKind::gaussian) {
    throw DomainError("gap distribution experiment uses the gaussian ensemble");
  }
  std::vector<double> gaps;
  gaps.reserve(static_cast<std::size_t>(config.samples));
  int degenerate = 0;
  for (int i = 0; i < config.samples; ++i) {
    const GapReport report = ground_gap(sample_pair(config, i));
    if (report.degenerate) ++degenerate;
    gaps.push_back(report.gap);
  }
  return edelman_statistics(config.n, std::move(gaps), degenerate);
}

std::vector<double> log_bin_edges(const HistogramBins& bins) {
  if (!(bins.lo > 0.0 && bins.hi > bins.lo) || bins.count < 1) {
    throw DomainError("histogram needs 0 < lo < hi and count >= 1");
  }
  std::vector<double> edges(static_cast<std::size_t>(bins.count) + 1);
  const double ratio = std::log(bins.hi / bins.lo);
  for (int i = 0; i <= bins.count; ++i) {
    edges[i] = bins.lo * std::exp(ratio * i / bins.count);
  }
  edges.back() = bins.hi;
  return edges;
}

int log_bin_index(const HistogramBins& bins, double value) {
  if (!(value > bins.lo)) return 0;
  if (value >= bins.hi) return bins.count - 1;
  const double t = std::log(value / bins.lo) / std::log(bins.hi / bins.lo);
  return std::clamp(static_cast<int>(t * bins.count), 0, bins.count - 1);
}

Figure1Result figure1_experiment(int n, int samples, std::uint64_t seed,
                                 const HistogramBins& bins) {
  if (n > 12) {
    throw CapacityError("figure 1 enumerates 2^n levels per sample; n = " +
                        std::to_string(n) + " exceeds the cap of 12");
  }
  const EnsembleConfig config{EnsembleKind::gaussian, n, samples, seed, {}};
  config.validate();

  Figure1Result out;
  out.histogram.bin_edges = log_bin_edges(bins);
  out.histogram.ground_gap_counts.assign(static_cast<std::size_t>(bins.count), 0);
  out.histogram.other_gap_counts.assign(static_cast<std::size_t>(bins.count), 0);
  out.histogram.n = n;
  out.histogram.samples = samples;

  std::vector<double> other_gaps;
  other_gaps.reserve(static_cast<std::size_t>(samples) * ((std::size_t{1} << n) - 2));
  for (int i = 0; i < samples; ++i) {
    const auto levels = subset_sum_spectrum(singular_values(sample_pair(config, i)));
    const double ground = levels[1] - levels[0];
    out.ground_gaps.push_back(ground);
    ++out.histogram.ground_gap_counts[log_bin_index(bins, ground)];
    for (std::size_t k = 1; k + 1 < levels.size(); ++k) {
      const double gap = levels[k + 1] - levels[k];
      other_gaps.push_back(gap);
      ++out.histogram.other_gap_counts[log_bin_index(bins, gap)];
    }
  }
  out.median_ground_gap = median(out.ground_gaps);
  out.median_other_gap = median(std::move(other_gaps));
  out.mean_ground_gap = mean(out.ground_gaps);
  return out;
}

Figure2Result figure2_experiment(int n, std::uint64_t seed,
                                 std::span<const double> s_grid) {
  if (n > 12) {
    throw CapacityError("figure 2 enumerates 2^n levels per grid point; n = " +
                        std::to_string(n) + " exceeds the cap of 12");
  }
  if (s_grid.empty()) throw DomainError("figure 2 needs a nonempty s grid");
  const EnsembleConfig config{EnsembleKind::wishart, n, 1, seed, 1.0 / n};
  const EvolutionSpec spec{sample_pair(config, 0), "wishart A = C C^T / n"};

  Figure2Result out;
  out.s_grid.assign(s_grid.begin(), s_grid.end());
  out.gamma_at_one = ground_gap(interpolate(spec, 1.0)).gap;
  for (double s : s_grid) {
    const Vector lambda = singular_values(interpolate(spec, s));
    out.levels.push_back(subset_sum_spectrum(lambda));
    const double gap = gap_from_singular_values(lambda).gap;
    out.gaps.push_back(gap);
    const double predicted = 2.0 * (1.0 - s) + s * out.gamma_at_one;
    out.linearity_residual =
        std::max(out.linearity_residual, std::abs(gap - predicted));
  }
  return out;
}

}  // namespace fermigap
