#pragma once

// Spin representations of quadratic fermionic Hamiltonians.
//
// Pauli form:
//   H = sum_j W_jj Z_j
//     + sum_{j<k} W_jk X_j Z_{j+1} ... Z_{k-1} X_k
//               + W_kj Y_j Z_{j+1} ... Z_{k-1} Y_k
//
// Conventions: Z = diag(1, -1), X = [[0,1],[1,0]], Y = [[0,-i],[i,0]].
// Qubit 0 is the leftmost Kronecker factor, i.e. the most significant bit of
// a basis index. Jordan-Wigner annihilators are
//   c_j = (-1)^j Z_0 ... Z_{j-1} (X_j - i Y_j) / 2   (0-based j).

#include "fermigap/lattice.hpp"
#include "fermigap/quadform.hpp"

#include <Eigen/SparseCore>

#include <complex>
#include <string>
#include <vector>

namespace fermigap {

struct PauliTerm {
  double coefficient = 0.0;
  std::string word;  // one letter per qubit from {I, X, Y, Z}
};

class PauliHamiltonian {
 public:
  explicit PauliHamiltonian(Matrix w);

  int n() const { return static_cast<int>(w_.rows()); }
  const Matrix& w() const { return w_; }
  // Diagonal terms first, then (j, k) pairs in row-major order, X string
  // before Y string. Zero coefficients are kept.
  std::vector<PauliTerm> terms() const;

 private:
  Matrix w_;
};

CoefficientPair w_to_ab(const Matrix& w);
Matrix ab_to_w(const CoefficientPair& pair);

inline constexpr int kDenseQubitCap = 13;

// Real 2^n x 2^n matrix of a Pauli word with an even number of Y letters.
Matrix pauli_string_matrix(const std::string& word);

// 2^n x 2^n; memory 8 * 4^n bytes. CapacityError above kDenseQubitCap.
Matrix dense_hamiltonian(const PauliHamiltonian& h);
std::vector<double> dense_spectrum_oracle(const PauliHamiltonian& h);

// <psi| P |psi> for a real state vector.
double pauli_expectation(const Vector& psi, const std::string& word);

// Bulk terms -X_j Z_{j+1} X_{j+2}, j = 0..n-3, closed by the two boundary
// strings Y_{n-2} ... Y_0 and Y_{n-1} ... Y_1 with coefficient (-1)^(n-1).
PauliHamiltonian build_cluster_w(int n);

// <X_j Z_{j+1} X_{j+2}> for j = 0..n-3 in the dense ground state of the
// cluster Hamiltonian. NumericalError if the ground level is degenerate.
std::vector<double> cluster_stabilizer_expectations(int n);

// Open transverse-field chain: W_jj = 1 - s, W_{j,j+1} = s.
PauliHamiltonian build_ising_w(int n, double s);

using ComplexSparse = Eigen::SparseMatrix<std::complex<double>>;

struct FermionOperatorSet {
  int dimension = 0;
  std::vector<ComplexSparse> ops;  // annihilators
};

FermionOperatorSet jw_operators(int n);     // n <= kDenseQubitCap
FermionOperatorSet spin32_operators(int n); // n <= 6, dimension 4^n

struct FcrReport {
  double max_residual = 0.0;  // max-abs entry over all anticommutator defects
  bool pass = false;
};

FcrReport fcr_check(const FermionOperatorSet& set, double tol);

// eta_j = sum_k u_jk c_k + v_jk c_k^+. Requires T = [[u, v], [v, u]]
// orthogonal to 1e-12, else PreconditionError reporting ||T T^T - I||.
FermionOperatorSet unitary_fcr_transform(const FermionOperatorSet& set,
                                         const Matrix& u, const Matrix& v);

// sum A_jk (c_j^+ c_k - c_j c_k^+) + B_jk (c_j^+ c_k^+ - c_j c_k).
ComplexSparse assemble_quadratic(const FermionOperatorSet& set,
                                 const CoefficientPair& pair);

// sum_j 2 lambda_j eta_j^+ eta_j - (sum_j lambda_j) I.
ComplexSparse assemble_lieb_form(const FermionOperatorSet& etas,
                                 const Vector& lambda);

// The quasiparticle operators of a pair: u = (x + y)/2, v = (x - y)/2.
FermionOperatorSet lieb_operators(const FermionOperatorSet& set,
                                  const LiebDecomposition& decomp);

// max |dense - sparse| over all entries.
double max_abs_difference(const Matrix& dense, const ComplexSparse& sparse);

struct MinGapResult {
  int n = 0;
  double s_star = 0.0;
  double min_gap = 0.0;
};

// Minimum over s of the parity gap 2(lambda_1 + lambda_2) of the Ising chain:
// grid scan with `grid_points` points, then Brent refinement on the
// bracketing cell. Also returns the plain ground gap at s_star in
// `raw_gap`. In the ordered phase the open chain has an edge mode with
// lambda_1 ~ exp(-n), so the plain gap collapses to round-off.
struct IsingMinGap : MinGapResult {
  double raw_gap = 0.0;
};
IsingMinGap ising_min_gap(int n, int grid_points = 51);

// Minimum interpolated gap of the cluster Hamiltonian over a uniform grid,
// through the circulant FFT path.
MinGapResult cluster_min_gap(int n, int grid_points = 201);

// The cluster pair as a circulant spec; NumericalError if not circulant.
StructuredSpec cluster_circulant_spec(int n);

}  // namespace fermigap
