#include "fermigap/conformance.hpp"

#include "fermigap/ensembles.hpp"
#include "fermigap/errors.hpp"
#include "fermigap/rng.hpp"
#include "fermigap/spin.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fermigap {

namespace {

constexpr int kRouteModeCap = 8;
constexpr int kLiebFcrModeCap = 6;
constexpr int kSpinFcrSiteCap = 2;

class Tracker {
 public:
  Tracker(std::string name, double threshold) {
    result_.name = std::move(name);
    result_.threshold = threshold;
  }

  void record(double residual, const std::string& replay) {
    ++result_.cases;
    if (result_.worst_case.empty() || std::isnan(residual) ||
        residual > result_.max_residual) {
      result_.max_residual = residual;
      result_.worst_case = replay;
    }
    if (!(residual <= result_.threshold) && result_.failing_case.empty()) {
      result_.failing_case = replay;
      result_.pass = false;
    }
  }

  CheckResult done() const { return result_; }

 private:
  CheckResult result_;
};

std::string replay(std::uint64_t seed, std::uint64_t index, int n) {
  std::ostringstream out;
  out << "seed=" << seed << " index=" << index << " n=" << n;
  return out.str();
}

double spectral_norm(const Matrix& m) {
  return Eigen::BDCSVD<Matrix>(m).singularValues()(0);
}

CoefficientPair with_fault(const CoefficientPair& pair) {
  if (pair.n() < 2) return pair;
  Matrix b = pair.b();
  b(0, 1) = -b(0, 1);
  b(1, 0) = -b(1, 0);
  if (b(0, 1) == 0.0) {
    b(0, 1) = 1.0;
    b(1, 0) = -1.0;
  }
  return CoefficientPair::from_parts(pair.a(), std::move(b));
}

}  // namespace

bool VerifyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

double sorted_max_difference(std::vector<double> x, std::vector<double> y) {
  if (x.size() != y.size()) {
    throw DimensionError("spectra differ in size: " + std::to_string(x.size()) +
                         " vs " + std::to_string(y.size()));
  }
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

StructuredSpec random_structured_spec(const std::vector<int>& dims,
                                      std::uint64_t seed, std::uint64_t index) {
  int n = 1;
  for (int d : dims) n *= d;
  Stream stream(seed, index, StreamRole::coefficients);
  std::vector<double> a(static_cast<std::size_t>(n), 0.0);
  std::vector<double> b(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const int r = reflected_index(dims, i);
    if (r == i) {
      a[i] = stream.normal();
    } else if (i < r) {
      a[i] = a[r] = stream.normal();
      b[i] = stream.normal();
      b[r] = -b[i];
    }
  }
  switch (dims.size()) {
    case 1:
      return StructuredSpec::circulant(std::move(a), std::move(b));
    case 2:
      return StructuredSpec::bccb(dims[0], dims[1], std::move(a), std::move(b));
    case 3:
      return StructuredSpec::bc2cb(dims[0], dims[1], dims[2], std::move(a), std::move(b));
    default:
      throw DimensionError("lattice rank must be 1, 2 or 3");
  }
}

Vector dense_g_eigenvalues(const StructuredSpec& spec) {
  const CoefficientPair pair = expand(spec);
  const Matrix g = pair.sum() * pair.difference();
  // G = C C^T is symmetric in exact arithmetic; average away product skew.
  const Matrix sym = (g + g.transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("dense eigensolver for G did not converge");
  }
  return solver.eigenvalues();
}

VerifyReport run_verify(const VerifyOptions& options) {
  if (options.n_max < 1 || options.n_max > kDenseQubitCap) {
    throw DomainError("n-max must lie in [1, " + std::to_string(kDenseQubitCap) + "]");
  }
  if (options.trials < 1) throw DomainError("trials must be >= 1");

  Tracker spectrum("subset-sum-vs-dense", 1e-8);
  Tracker gap("gap-identity", 1e-8);
  Tracker lieb("lieb-residuals", 1e-10);
  Tracker orth("lieb-orthogonality", 1e-12);
  Tracker route("route-equality", 1e-12);
  Tracker fcr("fcr", 1e-12);
  Tracker structured("structured-vs-dense", 1e-8);

  const std::uint64_t seed = options.seed;
  std::uint64_t index = 0;
  for (int n = 1; n <= options.n_max; ++n) {
    const FermionOperatorSet jw = n <= kRouteModeCap ? jw_operators(n) : FermionOperatorSet{};
    for (int t = 0; t < options.trials; ++t, ++index) {
      const std::string tag = replay(seed, index, n);
      const PauliHamiltonian h(sample_pauli_w(n, seed, static_cast<int>(index)));
      const CoefficientPair pair = w_to_ab(h.w());
      const double scale = 1.0 + spectral_norm(pair.sum());
      const LiebDecomposition decomp = lieb_decompose(pair);

      const auto oracle = dense_spectrum_oracle(h);
      const auto levels = subset_sum_spectrum(decomp);
      spectrum.record(sorted_max_difference(oracle, levels) / scale, tag);

      const GapReport report = gap_from_singular_values(decomp.lambda);
      if (!report.degenerate) {
        const double ground = oracle.front();
        const auto next = std::find_if(oracle.begin(), oracle.end(), [&](double e) {
          return e - ground > 1e-6 * scale;
        });
        if (next != oracle.end()) gap.record(std::abs((*next - ground) - report.gap), tag);
      }

      const LiebResiduals r = lieb_residuals(pair, decomp);
      lieb.record(std::max(r.eq1, r.eq2) / scale, tag);
      orth.record(std::max(r.orth_x, r.orth_y) / n, tag);

      if (n <= kRouteModeCap) {
        const CoefficientPair assembled = options.inject_fault ? with_fault(pair) : pair;
        route.record(max_abs_difference(dense_hamiltonian(h),
                                        assemble_quadratic(jw, assembled)),
                     tag);
      }
      if (n <= kLiebFcrModeCap && t == 0) {
        fcr.record(fcr_check(lieb_operators(jw, decomp), 1e-12).max_residual,
                   tag + " set=lieb");
      }
    }
    if (n <= kRouteModeCap) {
      fcr.record(fcr_check(jw, 1e-12).max_residual, "set=jw n=" + std::to_string(n));
    }
    if (n <= kSpinFcrSiteCap) {
      fcr.record(fcr_check(spin32_operators(n), 1e-12).max_residual,
                 "set=spin32 n=" + std::to_string(n));
    }
  }

  // Lattice sizes grow with n-max; at n-max = 1 this is a 3-site ring.
  const int ring = std::max(3, 8 * options.n_max);
  const int side = std::clamp(options.n_max, 3, 8);
  const int cube = std::clamp(options.n_max / 2, 2, 4);
  const std::vector<std::vector<int>> shapes{
      {ring}, {ring - 1}, {side, side}, {side, side - 1}, {cube, cube, cube}, {cube + 1, cube, 2}};
  for (const auto& dims : shapes) {
    for (int t = 0; t < options.trials; ++t, ++index) {
      const StructuredSpec spec = random_structured_spec(dims, seed, index);
      const Vector fast = g_eigenvalues(spec);
      const Vector dense = dense_g_eigenvalues(spec);
      const double scale = 1.0 + dense.cwiseAbs().maxCoeff();
      std::ostringstream tag;
      tag << "seed=" << seed << " index=" << index << " kind=" << to_string(spec.kind());
      structured.record(
          sorted_max_difference({fast.data(), fast.data() + fast.size()},
                                {dense.data(), dense.data() + dense.size()}) / scale,
          tag.str());
    }
  }

  VerifyReport out;
  out.options = options;
  for (const Tracker* t : {&spectrum, &gap, &lieb, &orth, &route, &fcr, &structured}) {
    out.checks.push_back(t->done());
  }
  return out;
}

}  // namespace fermigap
