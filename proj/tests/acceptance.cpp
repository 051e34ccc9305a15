// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Thresholds are fixed constants below.

#include "fermigap/conformance.hpp"
#include "fermigap/ensembles.hpp"
#include "fermigap/errors.hpp"
#include "fermigap/lattice.hpp"
#include "fermigap/quadform.hpp"
#include "fermigap/spin.hpp"
#include "fermigap/stats.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace fermigap;

namespace {

constexpr std::uint64_t kSeed = 20240611;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, const std::string& title, const std::function<Outcome()>& body) {
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  if (!outcome.pass) ++failures;
  std::printf("%s %2d %s: %s\n", outcome.pass ? "PASS" : "FAIL", id, title.c_str(),
              outcome.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double spectral_norm(const Matrix& c) { return oracle::augmented_singular_values(c).back(); }

Matrix dyadic_matrix(int n, std::uint32_t seed) {
  return (oracle::random_matrix(n, n, seed) * 1048576.0).array().round() / 1048576.0;
}

std::vector<double> as_vector(const Vector& v) { return {v.data(), v.data() + v.size()}; }

double median_runtime(const std::function<void()>& f, int runs) {
  std::vector<double> t;
  for (int r = 0; r < runs; ++r) {
    const auto start = Clock::now();
    f();
    t.push_back(seconds_since(start));
  }
  return median(t);
}

// Shared corpus for criteria 1 and 2: 200 Gaussian W, n cycling through 2..8.
struct OracleCase {
  int n = 0;
  double norm = 0.0;
  std::vector<double> dense;
  Vector lambda;
};

std::vector<OracleCase> oracle_corpus(double& elapsed) {
  const auto start = Clock::now();
  std::vector<OracleCase> cases;
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + i % 7;
    const Matrix w = sample_pauli_w(n, kSeed, i);
    const auto pair = w_to_ab(w);
    OracleCase c;
    c.n = n;
    c.norm = spectral_norm(pair.sum());
    c.dense = dense_spectrum_oracle(PauliHamiltonian(w));
    c.lambda = lieb_decompose(pair).lambda;
    cases.push_back(std::move(c));
  }
  elapsed = seconds_since(start);
  return cases;
}

}  // namespace

int main() {
  double corpus_time = 0.0;
  std::vector<OracleCase> corpus;

  run(1, "oracle spectrum equivalence", [&] {
    corpus = oracle_corpus(corpus_time);
    double worst = 0.0;
    for (const auto& c : corpus) {
      const auto sums = subset_sum_spectrum(c.lambda);
      worst = std::max(worst, oracle::max_diff(c.dense, sums) / (1.0 + c.norm));
    }
    return Outcome{worst <= 1e-8 && corpus_time < 60.0,
                   "200 cases n=2..8, max scaled residual " + fmt(worst) +
                       " (<= 1e-8), runtime " + fmt(corpus_time) + " s (< 60)"};
  });

  run(2, "gap identity", [&] {
    double worst = 0.0;
    int used = 0;
    for (const auto& c : corpus) {
      const auto report = gap_from_singular_values(c.lambda);
      if (report.degenerate) continue;
      ++used;
      worst = std::max(worst, std::abs((c.dense[1] - c.dense[0]) - 2.0 * c.lambda(0)));
    }
    return Outcome{used > 0 && worst <= 1e-8,
                   std::to_string(used) + " nondegenerate cases, max |oracle gap - 2 sigma_min| " +
                       fmt(worst) + " (<= 1e-8)"};
  });

  run(3, "lieb residuals", [] {
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const int n = 1 + i % 64;
      const auto pair =
          CoefficientPair::from_matrix(gaussian_matrix(n, kSeed, i, StreamRole::coefficients));
      const auto r = lieb_residuals(pair, lieb_decompose(pair));
      const double scale = 1.0 + spectral_norm(pair.sum());
      worst = std::max({worst, r.eq1 / scale, r.eq2 / scale});
    }
    return Outcome{worst <= 1e-10, "500 pairs n=1..64, max scaled residual " + fmt(worst) +
                                       " (<= 1e-10)"};
  });

  run(4, "edelman law", [] {
    const auto start = Clock::now();
    EnsembleConfig config;
    config.kind = EnsembleKind::gaussian;
    config.n = 64;
    config.samples = 2000;
    config.seed = kSeed;
    const auto result = gap_distribution_experiment(config);
    const double elapsed = seconds_since(start);
    const double median_err = std::abs(result.median - 0.2967);
    return Outcome{result.ks_distance < 0.06 && median_err <= 0.08 && elapsed < 120.0,
                   "n=64 samples=2000, KS " + fmt(result.ks_distance) + " (< 0.06), median " +
                       fmt(result.median) + " (0.2967 +- 0.08), runtime " + fmt(elapsed) +
                       " s (< 120)"};
  });

  run(5, "survival law", [] {
    EnsembleConfig config;
    config.kind = EnsembleKind::bounded_uniform;
    config.n = 128;
    config.samples = 2000;
    config.seed = kSeed;
    const std::array<double, 3> xs{0.5, 1.0, 2.0};
    const auto result = survival_experiment(config, xs);
    bool ok = true;
    std::ostringstream detail;
    detail << "n=128 samples=2000";
    for (const auto& p : result.points) {
      const double err = std::abs(p.empirical - std::exp(-p.x));
      ok = ok && err <= 0.05;
      detail << ", x=" << p.x << " P=" << fmt(p.empirical) << " vs " << fmt(std::exp(-p.x));
    }
    detail << " (+- 0.05)";
    return Outcome{ok, detail.str()};
  });

  run(6, "rarity formula", [] {
    bool ok = true;
    std::ostringstream detail;
    detail << "n=4 draws=1e5";
    for (double eps : {0.1, 0.25, 0.5}) {
      const auto mc = rarity_monte_carlo(4, eps, 100000, kSeed);
      const double exact = rarity_fraction(4, eps);
      const double z = std::abs(mc.fraction - exact) / mc.standard_error;
      ok = ok && z <= 3.0;
      detail << ", eps=" << eps << " |z|=" << fmt(z);
    }
    detail << " (<= 3 SE)";
    return Outcome{ok, detail.str()};
  });

  run(7, "figure 1 separation", [] {
    const auto result = figure1_experiment(10, 1000, kSeed);
    const double ratio = result.median_ground_gap / result.median_other_gap;
    long long ground = 0, other = 0;
    for (auto c : result.histogram.ground_gap_counts) ground += c;
    for (auto c : result.histogram.other_gap_counts) other += c;
    const bool counts_ok = ground == 1000 && other == 1000LL * ((1 << 10) - 2);
    return Outcome{ratio >= 10.0 && counts_ok,
                   "n=10 samples=1000, median ratio " + fmt(ratio) +
                       " (>= 10), histogram counts " + (counts_ok ? "conserved" : "lost")};
  });

  run(8, "figure 2 linearity", [] {
    const auto grid = uniform_grid(101);
    const auto result = figure2_experiment(8, kSeed, grid);
    bool table_ok = result.levels.size() == 101;
    for (const auto& row : result.levels) table_ok = table_ok && row.size() == 256;
    return Outcome{result.linearity_residual <= 1e-10 && table_ok,
                   "n=8 grid=101, residual " + fmt(result.linearity_residual) +
                       " (<= 1e-10), level table " + (table_ok ? "101 x 256" : "malformed")};
  });

  run(9, "structured vs dense", [] {
    double worst = 0.0;
    int cases = 0;
    std::uint64_t index = 0;
    auto check = [&](const std::vector<int>& dims) {
      const auto spec = random_structured_spec(dims, kSeed, index++);
      const auto pair = expand(spec);
      const Matrix g = pair.sum() * pair.difference();
      worst = std::max(worst, oracle::max_diff(
                                  [&] {
                                    auto v = as_vector(g_eigenvalues(spec));
                                    std::sort(v.begin(), v.end());
                                    return v;
                                  }(),
                                  oracle::symmetric_eigenvalues(g)));
      ++cases;
    };
    for (int n = 1; n <= 64; ++n) check({n});
    for (int p = 1; p <= 8; ++p)
      for (int q = 1; q <= 8; ++q) check({p, q});
    for (int p = 1; p <= 4; ++p)
      for (int q = 1; q <= 4; ++q)
        for (int r = 1; r <= 4; ++r) check({p, q, r});
    return Outcome{worst <= 1e-8, std::to_string(cases) + " lattices, max |fast - dense| " +
                                      fmt(worst) + " (<= 1e-8)"};
  });

  run(10, "structured performance", [] {
    std::array<double, 3> t{};
    const std::array<int, 3> sizes{1 << 19, 1 << 20, 1 << 21};
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const auto spec = random_structured_spec({sizes[i]}, kSeed, i);
      gap_from_g_eigenvalues(g_eigenvalues(spec));  // warm-up
      t[i] = median_runtime([&] { gap_from_g_eigenvalues(g_eigenvalues(spec)); }, 5);
    }
    const double r1 = t[1] / t[0];
    const double r2 = t[2] / t[1];
    return Outcome{t[1] < 1.0 && r1 <= 2.5 && r2 <= 2.5,
                   "median of 5: 2^20 in " + fmt(t[1]) + " s (< 1), doubling ratios " + fmt(r1) +
                       ", " + fmt(r2) + " (<= 2.5)"};
  });

  run(11, "cluster state", [] {
    bool circulant_ok = true;
    for (int n = 4; n <= 12; ++n) {
      const auto pair = w_to_ab(build_cluster_w(n).w());
      const auto spec = circulant_from_pair(pair);
      circulant_ok = circulant_ok && spec.has_value() && expand(*spec).a() == pair.a() &&
                     expand(*spec).b() == pair.b();
    }
    double stab_err = 0.0;
    for (int n : {4, 5})
      for (double e : cluster_stabilizer_expectations(n))
        stab_err = std::max(stab_err, std::abs(e - 1.0));
    std::vector<double> ns, gaps;
    for (int n = 8; n <= 512; n *= 2) {
      ns.push_back(n);
      gaps.push_back(cluster_min_gap(n).min_gap);
    }
    const double exponent = loglog_slope(ns, gaps);
    return Outcome{circulant_ok && stab_err <= 1e-10 && exponent >= -2.0,
                   std::string("circulant n=4..12 ") + (circulant_ok ? "exact" : "broken") +
                       ", stabilizer error " + fmt(stab_err) + " (<= 1e-10), min-gap exponent " +
                       fmt(exponent) + " over n=8..512 (>= -2)"};
  });

  run(12, "ising scaling", [] {
    std::vector<double> ns, gaps;
    for (int n = 8; n <= 512; n *= 2) {
      ns.push_back(n);
      gaps.push_back(ising_min_gap(n).min_gap);
    }
    const double slope = loglog_slope(ns, gaps);
    return Outcome{std::abs(slope + 1.0) <= 0.15,
                   "n=8..512, log-log slope " + fmt(slope) + " (-1 +- 0.15)"};
  });

  run(13, "fcr suites", [] {
    double jw = 0.0, s32 = 0.0, lieb = 0.0, rebuild = 0.0;
    for (int n = 1; n <= 8; ++n) jw = std::max(jw, fcr_check(jw_operators(n), 1e-12).max_residual);
    for (int n = 1; n <= 2; ++n)
      s32 = std::max(s32, fcr_check(spin32_operators(n), 1e-12).max_residual);
    for (int n = 1; n <= 6; ++n) {
      const auto pair = w_to_ab(sample_pauli_w(n, kSeed, 1000 + n));
      const auto decomp = lieb_decompose(pair);
      const auto cs = jw_operators(n);
      const auto etas = lieb_operators(cs, decomp);
      lieb = std::max(lieb, fcr_check(etas, 1e-12).max_residual);
      rebuild = std::max(rebuild, max_abs_difference(
                                      dense_hamiltonian(PauliHamiltonian(ab_to_w(pair))),
                                      assemble_lieb_form(etas, decomp.lambda)));
    }
    bool control_ok = false;
    std::string control_msg = "no error";
    try {
      const Matrix id = Matrix::Identity(2, 2);
      unitary_fcr_transform(jw_operators(2), id, id);
    } catch (const PreconditionError& e) {
      control_msg = e.what();
      control_ok = control_msg.find("not orthogonal") != std::string::npos;
    }
    const bool ok = jw <= 1e-12 && s32 <= 1e-12 && lieb <= 1e-12 && rebuild <= 1e-10 && control_ok;
    return Outcome{ok, "jw n<=8 " + fmt(jw) + ", spin32 n<=2 " + fmt(s32) + ", lieb n<=6 " +
                           fmt(lieb) + " (<= 1e-12), lieb rebuild " + fmt(rebuild) +
                           " (<= 1e-10), U=V=I control " +
                           (control_ok ? "rejected" : "accepted: " + control_msg)};
  });

  run(14, "bijection and route equality", [] {
    bool exact = true;
    for (int i = 0; i < 32; ++i) {
      const int n = 1 + i % 32;
      const Matrix w = dyadic_matrix(n, 500 + i);
      exact = exact && ab_to_w(w_to_ab(w)) == w;
      const Matrix c = dyadic_matrix(n, 900 + i);
      const auto pair = symmetrize_split(c);
      const auto back = w_to_ab(ab_to_w(pair));
      exact = exact && back.a() == pair.a() && back.b() == pair.b();
    }
    double gaussian_roundtrip = 0.0;
    double route = 0.0;
    for (int n = 1; n <= 8; ++n) {
      for (int t = 0; t < 4; ++t) {
        const Matrix w = sample_pauli_w(n, kSeed, 2000 + 10 * n + t);
        gaussian_roundtrip =
            std::max(gaussian_roundtrip, (ab_to_w(w_to_ab(w)) - w).cwiseAbs().maxCoeff());
        route = std::max(route, max_abs_difference(dense_hamiltonian(PauliHamiltonian(w)),
                                                   assemble_quadratic(jw_operators(n), w_to_ab(w))));
      }
    }
    return Outcome{exact && route <= 1e-12,
                   std::string("dyadic roundtrips n=1..32 ") + (exact ? "exact" : "inexact") +
                       " (gaussian roundtrip diagnostic " + fmt(gaussian_roundtrip) +
                       "), route difference n<=8 " + fmt(route) + " (<= 1e-12)"};
  });

  std::printf("%s: %d of 14 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
