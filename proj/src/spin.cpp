#include "fermigap/spin.hpp"

#include "fermigap/errors.hpp"

#include <boost/math/tools/minima.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

namespace fermigap {

namespace {

using Complex = std::complex<double>;
using Triplet = Eigen::Triplet<Complex>;

void require_square_w(const Matrix& w) {
  if (w.rows() != w.cols() || w.rows() == 0) {
    std::ostringstream msg;
    msg << "W must be square and nonempty, got " << w.rows() << "x" << w.cols();
    throw DimensionError(msg.str());
  }
}

void require_qubits(int n, int cap, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + " needs n >= 1");
  if (n > cap) {
    throw CapacityError(std::string(what) + " on " + std::to_string(n) +
                        " sites exceeds the cap of " + std::to_string(cap));
  }
}

// (-1)^(m+1) for the displacement m = k - j.
double jw_sign(Eigen::Index m) { return (m % 2 == 1) ? 1.0 : -1.0; }

// Kronecker product of local operators, site 0 leftmost.
ComplexSparse kron_sites(const std::vector<Matrix>& factors) {
  std::vector<Triplet> current{{0, 0, Complex(1.0)}};
  Eigen::Index dim = 1;
  for (const Matrix& f : factors) {
    const Eigen::Index d = f.rows();
    std::vector<Triplet> next;
    next.reserve(current.size() * static_cast<std::size_t>(d));
    for (const Triplet& t : current) {
      for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
          if (f(r, c) != 0.0) {
            next.emplace_back(t.row() * d + r, t.col() * d + c, t.value() * f(r, c));
          }
        }
      }
    }
    current.swap(next);
    dim *= d;
  }
  ComplexSparse out(dim, dim);
  out.setFromTriplets(current.begin(), current.end());
  return out;
}

double max_abs(const ComplexSparse& m) {
  double best = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (ComplexSparse::InnerIterator it(m, k); it; ++it) {
      best = std::max(best, std::abs(it.value()));
    }
  }
  return best;
}

ComplexSparse identity(int dim) {
  ComplexSparse id(dim, dim);
  id.setIdentity();
  return id;
}

std::vector<ComplexSparse> adjoints(const FermionOperatorSet& set) {
  std::vector<ComplexSparse> out;
  out.reserve(set.ops.size());
  for (const auto& c : set.ops) out.emplace_back(c.adjoint());
  return out;
}

}  // namespace

PauliHamiltonian::PauliHamiltonian(Matrix w) : w_(std::move(w)) {
  require_square_w(w_);
  if (!w_.allFinite()) throw DomainError("W has non-finite entries");
}

std::vector<PauliTerm> PauliHamiltonian::terms() const {
  const int n = this->n();
  std::vector<PauliTerm> out;
  for (int j = 0; j < n; ++j) {
    std::string word(n, 'I');
    word[j] = 'Z';
    out.push_back({w_(j, j), word});
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      std::string word(n, 'I');
      for (int m = j + 1; m < k; ++m) word[m] = 'Z';
      word[j] = word[k] = 'X';
      out.push_back({w_(j, k), word});
      word[j] = word[k] = 'Y';
      out.push_back({w_(k, j), word});
    }
  }
  return out;
}

CoefficientPair w_to_ab(const Matrix& w) {
  require_square_w(w);
  const Eigen::Index n = w.rows();
  Matrix a = Matrix::Zero(n, n);
  Matrix b = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    a(j, j) = w(j, j);
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const double sign = jw_sign(k - j);
      a(j, k) = a(k, j) = sign * (w(j, k) + w(k, j)) / 2.0;
      b(j, k) = sign * (w(j, k) - w(k, j)) / 2.0;
      b(k, j) = -b(j, k);
    }
  }
  return CoefficientPair::from_parts(std::move(a), std::move(b));
}

Matrix ab_to_w(const CoefficientPair& pair) {
  const Eigen::Index n = pair.n();
  const Matrix& a = pair.a();
  const Matrix& b = pair.b();
  Matrix w = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    w(j, j) = a(j, j);
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const double sign = jw_sign(k - j);
      w(j, k) = sign * (a(j, k) + b(j, k));
      w(k, j) = sign * (a(j, k) - b(j, k));
    }
  }
  return w;
}

namespace {

// out += coefficient * P(word), touching one entry per column.
void add_pauli_term(Matrix& out, double coefficient, const std::string& word) {
  const int n = static_cast<int>(word.size());
  std::uint64_t flip = 0;
  int y_count = 0;
  for (int q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
    switch (word[q]) {
      case 'I':
      case 'Z':
        break;
      case 'Y':
        ++y_count;
        [[fallthrough]];
      case 'X':
        flip |= bit;
        break;
      default:
        throw DomainError("Pauli word has invalid letter '" +
                          std::string(1, word[q]) + "'");
    }
  }
  if (y_count % 2 != 0) {
    throw DomainError("Pauli word " + word + " has an odd number of Y letters");
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t col = 0; col < dim; ++col) {
    // Y|0> = i|1>, Y|1> = -i|0>; an even number of Y keeps the phase real.
    int phase = 0;  // power of i
    for (int q = 0; q < n; ++q) {
      const bool set = (col >> (n - 1 - q)) & 1U;
      if (word[q] == 'Z' && set) phase += 2;
      if (word[q] == 'Y') phase += set ? 3 : 1;
    }
    out(static_cast<Eigen::Index>(col ^ flip), static_cast<Eigen::Index>(col)) +=
        (phase % 4 == 0) ? coefficient : -coefficient;
  }
}

}  // namespace

Matrix pauli_string_matrix(const std::string& word) {
  const int n = static_cast<int>(word.size());
  require_qubits(n, kDenseQubitCap, "Pauli string");
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix m = Matrix::Zero(dim, dim);
  add_pauli_term(m, 1.0, word);
  return m;
}

Matrix dense_hamiltonian(const PauliHamiltonian& h) {
  const int n = h.n();
  require_qubits(n, kDenseQubitCap, "dense Hamiltonian");
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix out = Matrix::Zero(dim, dim);
  for (const PauliTerm& term : h.terms()) {
    if (term.coefficient != 0.0) add_pauli_term(out, term.coefficient, term.word);
  }
  return out;
}

std::vector<double> dense_spectrum_oracle(const PauliHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(dense_hamiltonian(h),
                                               Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("dense eigensolver did not converge (n = " +
                         std::to_string(h.n()) + ")");
  }
  const Vector& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

double pauli_expectation(const Vector& psi, const std::string& word) {
  const Matrix p = pauli_string_matrix(word);
  if (p.rows() != psi.size()) {
    throw DimensionError("state has dimension " + std::to_string(psi.size()) +
                         " but the Pauli word acts on " + std::to_string(p.rows()));
  }
  return psi.dot(p * psi);
}

PauliHamiltonian build_cluster_w(int n) {
  if (n < 4) throw DomainError("cluster Hamiltonian needs n >= 4");
  Matrix w = Matrix::Zero(n, n);
  for (int j = 0; j + 2 < n; ++j) w(j, j + 2) = -1.0;
  const double boundary = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^(n-1)
  w(n - 2, 0) = boundary;
  w(n - 1, 1) = boundary;
  return PauliHamiltonian(std::move(w));
}

std::vector<double> cluster_stabilizer_expectations(int n) {
  const PauliHamiltonian h = build_cluster_w(n);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(dense_hamiltonian(h));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("dense eigensolver did not converge (n = " +
                         std::to_string(n) + ")");
  }
  const Vector& ev = solver.eigenvalues();
  if (ev(1) - ev(0) < 1e-8) {
    throw NumericalError("cluster ground level is degenerate at n = " +
                         std::to_string(n));
  }
  const Vector psi = solver.eigenvectors().col(0);
  std::vector<double> out;
  for (int j = 0; j + 2 < n; ++j) {
    std::string word(n, 'I');
    word[j] = 'X';
    word[j + 1] = 'Z';
    word[j + 2] = 'X';
    out.push_back(pauli_expectation(psi, word));
  }
  return out;
}

PauliHamiltonian build_ising_w(int n, double s) {
  if (n < 2) throw DomainError("Ising chain needs n >= 2");
  if (!(s >= 0.0 && s <= 1.0)) {
    throw DomainError("Ising parameter s = " + std::to_string(s) +
                      " is outside [0, 1]");
  }
  Matrix w = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) w(j, j) = 1.0 - s;
  for (int j = 0; j + 1 < n; ++j) w(j, j + 1) = s;
  return PauliHamiltonian(std::move(w));
}

FermionOperatorSet jw_operators(int n) {
  require_qubits(n, kDenseQubitCap, "Jordan-Wigner operators");
  Matrix z(2, 2), lower(2, 2);
  z << 1, 0, 0, -1;
  lower << 0, 0, 1, 0;  // (X - iY)/2
  const Matrix id = Matrix::Identity(2, 2);
  FermionOperatorSet set;
  set.dimension = 1 << n;
  for (int j = 0; j < n; ++j) {
    std::vector<Matrix> factors(n, id);
    for (int k = 0; k < j; ++k) factors[k] = z;
    factors[j] = (j % 2 == 0) ? lower : Matrix(-lower);
    set.ops.push_back(kron_sites(factors));
  }
  return set;
}

FermionOperatorSet spin32_operators(int n) {
  require_qubits(n, 6, "spin-3/2 operators");
  Matrix sz = Matrix::Zero(4, 4);
  sz.diagonal() << 1.5, 0.5, -0.5, -1.5;
  Matrix splus = Matrix::Zero(4, 4);
  splus(0, 1) = std::sqrt(3.0);
  splus(1, 2) = 2.0;
  splus(2, 3) = std::sqrt(3.0);
  const Matrix sminus = splus.transpose();
  const Matrix id = Matrix::Identity(4, 4);
  const Matrix c1 = (-1.0 / std::sqrt(3.0)) * sminus * sz * sminus;
  const Matrix half_plus_sz = 0.5 * id + sz;
  const Matrix c2 = (1.0 / std::sqrt(3.0)) * half_plus_sz * half_plus_sz * sminus;
  const Matrix string = 1.25 * id - sz * sz;

  FermionOperatorSet set;
  set.dimension = 1;
  for (int j = 0; j < n; ++j) set.dimension *= 4;
  for (int j = 0; j < n; ++j) {
    std::vector<Matrix> factors(n, id);
    for (int k = 0; k < j; ++k) factors[k] = string;
    factors[j] = c1;
    set.ops.push_back(kron_sites(factors));
    factors[j] = c2;
    set.ops.push_back(kron_sites(factors));
  }
  return set;
}

FcrReport fcr_check(const FermionOperatorSet& set, double tol) {
  if (set.ops.empty()) throw DimensionError("FCR check needs at least one operator");
  for (std::size_t j = 0; j < set.ops.size(); ++j) {
    const auto& c = set.ops[j];
    if (c.rows() != set.dimension || c.cols() != set.dimension) {
      std::ostringstream msg;
      msg << "operator " << j << " is " << c.rows() << "x" << c.cols()
          << " but the set dimension is " << set.dimension;
      throw DimensionError(msg.str());
    }
  }
  const auto dag = adjoints(set);
  const ComplexSparse id = identity(set.dimension);
  FcrReport report;
  const std::size_t m = set.ops.size();
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      ComplexSparse mixed = set.ops[j] * dag[k] + dag[k] * set.ops[j];
      if (j == k) mixed -= id;
      report.max_residual = std::max(report.max_residual, max_abs(mixed));
      if (k < j) continue;
      const ComplexSparse pure = set.ops[j] * set.ops[k] + set.ops[k] * set.ops[j];
      report.max_residual = std::max(report.max_residual, max_abs(pure));
    }
  }
  report.pass = report.max_residual <= tol;
  return report;
}

FermionOperatorSet unitary_fcr_transform(const FermionOperatorSet& set,
                                         const Matrix& u, const Matrix& v) {
  const Eigen::Index m = static_cast<Eigen::Index>(set.ops.size());
  if (u.rows() != m || u.cols() != m || v.rows() != m || v.cols() != m) {
    std::ostringstream msg;
    msg << "transform blocks must be " << m << "x" << m << ", got u "
        << u.rows() << "x" << u.cols() << " and v " << v.rows() << "x" << v.cols();
    throw DimensionError(msg.str());
  }
  Matrix t(2 * m, 2 * m);
  t << u, v, v, u;
  const double defect = (t * t.transpose() - Matrix::Identity(2 * m, 2 * m)).norm();
  if (defect > 1e-12) {
    std::ostringstream msg;
    msg.precision(3);
    msg << "T = [[U, V], [V, U]] is not orthogonal: ||T T^T - I|| = "
        << std::scientific << defect;
    throw PreconditionError(msg.str());
  }
  const auto dag = adjoints(set);
  FermionOperatorSet out;
  out.dimension = set.dimension;
  for (Eigen::Index j = 0; j < m; ++j) {
    ComplexSparse eta(set.dimension, set.dimension);
    for (Eigen::Index k = 0; k < m; ++k) {
      if (u(j, k) != 0.0) eta += Complex(u(j, k)) * set.ops[k];
      if (v(j, k) != 0.0) eta += Complex(v(j, k)) * dag[k];
    }
    eta.prune(Complex(0.0));
    out.ops.push_back(std::move(eta));
  }
  return out;
}

ComplexSparse assemble_quadratic(const FermionOperatorSet& set,
                                 const CoefficientPair& pair) {
  const int n = pair.n();
  if (static_cast<int>(set.ops.size()) != n) {
    throw DimensionError("pair has " + std::to_string(n) + " modes but the set has " +
                         std::to_string(set.ops.size()) + " operators");
  }
  const auto dag = adjoints(set);
  const auto& c = set.ops;
  ComplexSparse h(set.dimension, set.dimension);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double a = pair.a()(j, k);
      const double b = pair.b()(j, k);
      if (a != 0.0) {
        h += Complex(a) * ComplexSparse(dag[j] * c[k] - c[j] * dag[k]);
      }
      if (b != 0.0) {
        h += Complex(b) * ComplexSparse(dag[j] * dag[k] - c[j] * c[k]);
      }
    }
  }
  return h;
}

ComplexSparse assemble_lieb_form(const FermionOperatorSet& etas,
                                 const Vector& lambda) {
  if (lambda.size() != static_cast<Eigen::Index>(etas.ops.size())) {
    throw DimensionError("lambda has " + std::to_string(lambda.size()) +
                         " entries but the set has " +
                         std::to_string(etas.ops.size()) + " operators");
  }
  ComplexSparse h = Complex(-lambda.sum()) * identity(etas.dimension);
  for (Eigen::Index j = 0; j < lambda.size(); ++j) {
    const ComplexSparse& eta = etas.ops[static_cast<std::size_t>(j)];
    const ComplexSparse eta_dag = eta.adjoint();
    h += Complex(2.0 * lambda(j)) * ComplexSparse(eta_dag * eta);
  }
  return h;
}

FermionOperatorSet lieb_operators(const FermionOperatorSet& set,
                                  const LiebDecomposition& decomp) {
  const Matrix u = (decomp.x + decomp.y) / 2.0;
  const Matrix v = (decomp.x - decomp.y) / 2.0;
  return unitary_fcr_transform(set, u, v);
}

double max_abs_difference(const Matrix& dense, const ComplexSparse& sparse) {
  if (dense.rows() != sparse.rows() || dense.cols() != sparse.cols()) {
    throw DimensionError("matrices differ in shape");
  }
  const Eigen::MatrixXcd diff = dense.cast<Complex>() - Eigen::MatrixXcd(sparse);
  return diff.cwiseAbs().maxCoeff();
}

IsingMinGap ising_min_gap(int n, int grid_points) {
  auto parity = [n](double s) {
    return parity_gap(singular_values(w_to_ab(build_ising_w(n, s).w())));
  };
  const auto grid = uniform_grid(grid_points);
  std::size_t best = 0;
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = parity(grid[i]);
    if (values[i] < values[best]) best = i;
  }
  const double lo = grid[best == 0 ? 0 : best - 1];
  const double hi = grid[std::min(best + 1, grid.size() - 1)];
  const auto [s_star, refined] =
      boost::math::tools::brent_find_minima(parity, lo, hi, 40);

  IsingMinGap out;
  out.n = n;
  if (refined < values[best]) {
    out.s_star = s_star;
    out.min_gap = refined;
  } else {
    out.s_star = grid[best];
    out.min_gap = values[best];
  }
  out.raw_gap = ground_gap(w_to_ab(build_ising_w(n, out.s_star).w())).gap;
  return out;
}

StructuredSpec cluster_circulant_spec(int n) {
  const auto spec = circulant_from_pair(w_to_ab(build_cluster_w(n).w()));
  if (!spec) {
    throw NumericalError("cluster pair for n = " + std::to_string(n) +
                         " is not circulant");
  }
  return *spec;
}

MinGapResult cluster_min_gap(int n, int grid_points) {
  const auto grid = uniform_grid(grid_points);
  const auto profile = structured_gap_profile(cluster_circulant_spec(n), grid);
  const std::size_t best = profile_argmin(profile);
  return {n, profile[best].s, profile[best].report.gap};
}

}  // namespace fermigap
