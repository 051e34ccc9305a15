#include "fermigap/quadform.hpp"

#include "fermigap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fermigap {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << what << " must be square, got " << m.rows() << "x" << m.cols();
    throw DimensionError(msg.str());
  }
  if (m.rows() == 0) {
    throw DimensionError(std::string(what) + " must have at least one mode");
  }
}

void require_finite(const Matrix& m, const char* what) {
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      if (!std::isfinite(m(j, k))) {
        std::ostringstream msg;
        msg << what << "[" << j << "][" << k << "] is not finite";
        throw DomainError(msg.str());
      }
    }
  }
}

}  // namespace

CoefficientPair CoefficientPair::from_matrix(const Matrix& c) {
  require_square(c, "coefficient matrix");
  require_finite(c, "c");
  Matrix ct = c.transpose();
  return CoefficientPair((c + ct) / 2.0, (c - ct) / 2.0);
}

CoefficientPair CoefficientPair::from_parts(Matrix a, Matrix b) {
  require_square(a, "a");
  require_square(b, "b");
  if (a.rows() != b.rows()) {
    std::ostringstream msg;
    msg << "a is " << a.rows() << "x" << a.rows() << " but b is " << b.rows()
        << "x" << b.rows();
    throw DimensionError(msg.str());
  }
  require_finite(a, "a");
  require_finite(b, "b");
  const Eigen::Index n = a.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j; k < n; ++k) {
      if (a(j, k) != a(k, j)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "a is not symmetric: a[" << j << "][" << k << "] = " << a(j, k)
            << " but a[" << k << "][" << j << "] = " << a(k, j);
        throw InputError(msg.str());
      }
      if (b(j, k) != -b(k, j)) {
        std::ostringstream msg;
        msg.precision(17);
        if (j == k) {
          msg << "b is not antisymmetric: diagonal entry b[" << j << "][" << j
              << "] = " << b(j, j) << " is nonzero";
        } else {
          msg << "b is not antisymmetric: b[" << j << "][" << k
              << "] = " << b(j, k) << " but b[" << k << "][" << j
              << "] = " << b(k, j);
        }
        throw InputError(msg.str());
      }
    }
  }
  return CoefficientPair(std::move(a), std::move(b));
}

CoefficientPair symmetrize_split(const Matrix& c) {
  return CoefficientPair::from_matrix(c);
}

LiebDecomposition lieb_decompose(const CoefficientPair& pair) {
  const Matrix c = pair.sum();
  Eigen::BDCSVD<Matrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) {
    throw NumericalError("SVD of A+B did not converge (n = " +
                         std::to_string(pair.n()) + ")");
  }
  // A + B = U S V^T. Then U^T (A + B) = S V^T and V^T (A - B) = S U^T, so
  // x = V^T and y = U^T satisfy both defining equations row by row.
  const int n = pair.n();
  LiebDecomposition out;
  out.lambda.resize(n);
  out.x.resize(n, n);
  out.y.resize(n, n);
  const auto& s = svd.singularValues();
  const auto& u = svd.matrixU();
  const auto& v = svd.matrixV();
  for (int j = 0; j < n; ++j) {
    const int src = n - 1 - j;  // Eigen sorts descending
    out.lambda(j) = s(src);
    out.x.row(j) = v.col(src).transpose();
    out.y.row(j) = u.col(src).transpose();
  }
  return out;
}

LiebResiduals lieb_residuals(const CoefficientPair& pair,
                             const LiebDecomposition& decomp) {
  const int n = pair.n();
  const Matrix identity = Matrix::Identity(n, n);
  const auto lam = decomp.lambda.asDiagonal();
  LiebResiduals r;
  r.eq1 = (decomp.x * pair.difference() - lam * decomp.y).norm();
  r.eq2 = (decomp.y * pair.sum() - lam * decomp.x).norm();
  r.orth_x = (decomp.x * decomp.x.transpose() - identity).norm();
  r.orth_y = (decomp.y * decomp.y.transpose() - identity).norm();
  return r;
}

Vector singular_values(const CoefficientPair& pair) {
  Eigen::BDCSVD<Matrix> svd(pair.sum());
  if (svd.info() != Eigen::Success) {
    throw NumericalError("SVD of A+B did not converge (n = " +
                         std::to_string(pair.n()) + ")");
  }
  Vector s = svd.singularValues();
  return s.reverse();
}

double default_zero_tolerance(int n, double sigma_max) {
  return n * std::numeric_limits<double>::epsilon() * sigma_max;
}

GapReport gap_from_singular_values(const Vector& lambda,
                                   std::optional<double> zero_tolerance) {
  if (lambda.size() == 0) {
    throw DimensionError("gap requires at least one singular value");
  }
  const double sigma_max = lambda.maxCoeff();
  GapReport report;
  report.zero_tolerance = zero_tolerance.value_or(
      default_zero_tolerance(static_cast<int>(lambda.size()), sigma_max));
  if (report.zero_tolerance < 0.0 || !std::isfinite(report.zero_tolerance)) {
    throw DomainError("zero tolerance must be a finite nonnegative number");
  }
  report.ground_energy = -lambda.sum();
  double least_nonzero = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < lambda.size(); ++j) {
    if (lambda(j) <= report.zero_tolerance) {
      ++report.num_zero_modes;
    } else {
      least_nonzero = std::min(least_nonzero, lambda(j));
    }
  }
  report.degenerate = report.num_zero_modes > 0;
  report.gap = std::isfinite(least_nonzero) ? 2.0 * least_nonzero : 0.0;
  return report;
}

GapReport ground_gap(const CoefficientPair& pair,
                     std::optional<double> zero_tolerance) {
  return gap_from_singular_values(singular_values(pair), zero_tolerance);
}

double parity_gap(const Vector& lambda) {
  if (lambda.size() < 2) {
    throw DimensionError("parity gap needs at least two modes");
  }
  Vector sorted = lambda;
  std::partial_sort(sorted.data(), sorted.data() + 2,
                    sorted.data() + sorted.size());
  return 2.0 * (sorted(0) + sorted(1));
}

std::vector<double> subset_sum_spectrum(const Vector& lambda, int max_modes) {
  const auto n = static_cast<int>(lambda.size());
  if (n > max_modes) {
    throw CapacityError("spectrum enumeration of " + std::to_string(n) +
                        " modes exceeds the cap of " +
                        std::to_string(max_modes) + " modes");
  }
  // Adding one mode maps the sorted list L to merge(L, L + 2 lambda_j),
  // which keeps everything sorted without a final sort.
  std::vector<double> levels{-lambda.sum()};
  levels.reserve(std::size_t{1} << n);
  std::vector<double> shifted;
  std::vector<double> merged;
  for (int j = 0; j < n; ++j) {
    const double step = 2.0 * lambda(j);
    shifted.resize(levels.size());
    std::transform(levels.begin(), levels.end(), shifted.begin(),
                   [step](double e) { return e + step; });
    merged.resize(levels.size() * 2);
    std::merge(levels.begin(), levels.end(), shifted.begin(), shifted.end(),
               merged.begin());
    levels.swap(merged);
  }
  return levels;
}

std::vector<double> subset_sum_spectrum(const LiebDecomposition& decomp,
                                        int max_modes) {
  return subset_sum_spectrum(decomp.lambda, max_modes);
}

CoefficientPair interpolate(const EvolutionSpec& spec, double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw DomainError("interpolation parameter s = " + std::to_string(s) +
                      " is outside [0, 1]");
  }
  Matrix a = s * spec.target.a();
  a.diagonal().array() += 1.0 - s;
  Matrix b = s * spec.target.b();
  return CoefficientPair::from_parts(std::move(a), std::move(b));
}

std::size_t profile_argmin(const std::vector<ProfilePoint>& points) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].report.gap < points[best].report.gap) best = i;
  }
  return best;
}

GapProfile gap_profile(const EvolutionSpec& spec, std::span<const double> s_grid,
                       std::optional<double> zero_tolerance) {
  if (s_grid.empty()) throw DomainError("gap profile needs a nonempty s grid");
  GapProfile profile;
  profile.points.reserve(s_grid.size());
  for (double s : s_grid) {
    profile.points.push_back({s, ground_gap(interpolate(spec, s), zero_tolerance)});
  }
  profile.argmin = profile_argmin(profile.points);
  return profile;
}

std::vector<double> uniform_grid(int k) {
  if (k < 2) throw DomainError("grid needs at least 2 points");
  std::vector<double> grid(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) grid[i] = static_cast<double>(i) / (k - 1);
  return grid;
}

}  // namespace fermigap
