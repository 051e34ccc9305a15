#pragma once

// Quadratic fermionic Hamiltonians
//
//   H = sum_{j,k} A_jk (c_j^+ c_k - c_j c_k^+) + B_jk (c_j^+ c_k^+ - c_j c_k)
//
// with A real symmetric and B real antisymmetric. Everything about the
// 2^n-dimensional spectrum follows from the singular values lambda of A + B:
// the energies are -sum(lambda) + sum_{j in S} 2 lambda_j over all subsets S.

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fermigap {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

class CoefficientPair {
 public:
  // Canonicalizing constructor: A = (C + C^T)/2, B = (C - C^T)/2.
  static CoefficientPair from_matrix(const Matrix& c);

  // Takes A and B as given. Throws InputError naming the first (j, k) in
  // row-major order where A is not exactly symmetric or B not exactly
  // antisymmetric.
  static CoefficientPair from_parts(Matrix a, Matrix b);

  int n() const { return static_cast<int>(a_.rows()); }
  const Matrix& a() const { return a_; }
  const Matrix& b() const { return b_; }

  Matrix sum() const { return a_ + b_; }         // A + B
  Matrix difference() const { return a_ - b_; }  // A - B = (A + B)^T

 private:
  CoefficientPair(Matrix a, Matrix b) : a_(std::move(a)), b_(std::move(b)) {}

  Matrix a_;
  Matrix b_;
};

CoefficientPair symmetrize_split(const Matrix& c);

// Rows of x and y define the quasiparticle operators
//   eta_j = sum_k ((x+y)_jk c_k + (x-y)_jk c_k^+) / 2
// with x (A - B) = diag(lambda) y and y (A + B) = diag(lambda) x.
struct LiebDecomposition {
  Vector lambda;  // ascending, nonnegative
  Matrix x;
  Matrix y;
};

LiebDecomposition lieb_decompose(const CoefficientPair& pair);

struct LiebResiduals {
  double eq1 = 0.0;     // ||x (A - B) - diag(lambda) y||_F
  double eq2 = 0.0;     // ||y (A + B) - diag(lambda) x||_F
  double orth_x = 0.0;  // ||x x^T - I||_F
  double orth_y = 0.0;  // ||y y^T - I||_F
};

LiebResiduals lieb_residuals(const CoefficientPair& pair,
                             const LiebDecomposition& decomp);

// Singular values of A + B, ascending.
Vector singular_values(const CoefficientPair& pair);

struct GapReport {
  double ground_energy = 0.0;
  double gap = 0.0;
  bool degenerate = false;
  double zero_tolerance = 0.0;
  int num_zero_modes = 0;
};

// n * machine epsilon * sigma_max.
double default_zero_tolerance(int n, double sigma_max);

// Builds a report from ascending singular values. A value counts as a zero
// mode iff it is <= the tolerance.
GapReport gap_from_singular_values(const Vector& lambda,
                                   std::optional<double> zero_tolerance = {});

GapReport ground_gap(const CoefficientPair& pair,
                     std::optional<double> zero_tolerance = {});

// Lowest excitation that preserves fermion parity: 2 (lambda_1 + lambda_2).
// This is the gap an evolution starting from the H0 vacuum actually sees.
double parity_gap(const Vector& lambda);

inline constexpr int kSpectrumModeCap = 22;

// All 2^n energies, ascending, with multiplicity. Throws CapacityError if
// n > max_modes.
std::vector<double> subset_sum_spectrum(const Vector& lambda,
                                        int max_modes = kSpectrumModeCap);
std::vector<double> subset_sum_spectrum(const LiebDecomposition& decomp,
                                        int max_modes = kSpectrumModeCap);

// H(s) = (1-s) H0 + s H_P with H0 = sum_j (c_j^+ c_j - c_j c_j^+).
struct EvolutionSpec {
  CoefficientPair target;
  std::string description;
};

// ((1-s) I + s A, s B). Throws DomainError unless 0 <= s <= 1.
CoefficientPair interpolate(const EvolutionSpec& spec, double s);

struct ProfilePoint {
  double s = 0.0;
  GapReport report;
};

struct GapProfile {
  std::vector<ProfilePoint> points;
  std::size_t argmin = 0;  // index of the smallest gap (first on ties)
};

GapProfile gap_profile(const EvolutionSpec& spec, std::span<const double> s_grid,
                       std::optional<double> zero_tolerance = {});

// k >= 2 equally spaced points covering [0, 1] inclusive.
std::vector<double> uniform_grid(int k);

// Shared by the dense and structured profile paths.
std::size_t profile_argmin(const std::vector<ProfilePoint>& points);

}  // namespace fermigap
