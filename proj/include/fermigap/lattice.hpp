#pragma once

// Translation-invariant lattices on a ring (circulant), a torus (BCCB) and a
// 3-torus ((BC)^2CB). A lattice is stored by its root arrays: the first row
// of A and of B, laid out row-major over dims so that the root entry for the
// displacement (dz, dy, dx) sits at dz*p*q + dy*p + dx. The expanded matrix
// is M[u][v] = root[(v - u) mod dims], taken axis by axis.
//
// Since every such C = A + B is normal and diagonalized by the
// multidimensional DFT, the singular values of C are |DFT(c_root)| and the
// eigenvalues of G = (A + B)(A - B) are their squares.

#include "fermigap/quadform.hpp"

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fermigap {

enum class LatticeKind { circulant, bccb, bc2cb };

std::string to_string(LatticeKind kind);

class StructuredSpec {
 public:
  // Validates that A is symmetric (root invariant under point reflection)
  // and B antisymmetric (root odd under point reflection, zero at the
  // origin). Throws DomainError naming the first offending root index.
  static StructuredSpec circulant(std::vector<double> a_root,
                                  std::vector<double> b_root);
  static StructuredSpec bccb(int p, int q, std::vector<double> a_root,
                             std::vector<double> b_root);
  static StructuredSpec bc2cb(int p, int q, int r, std::vector<double> a_root,
                              std::vector<double> b_root);

  LatticeKind kind() const { return kind_; }
  // Fastest-varying axis first: [p], [p, q] or [p, q, r].
  const std::vector<int>& dims() const { return dims_; }
  int n() const { return static_cast<int>(a_root_.size()); }
  const std::vector<double>& a_root() const { return a_root_; }
  const std::vector<double>& b_root() const { return b_root_; }
  std::vector<double> c_root() const;  // a_root + b_root

 private:
  StructuredSpec(LatticeKind kind, std::vector<int> dims,
                 std::vector<double> a_root, std::vector<double> b_root);

  LatticeKind kind_;
  std::vector<int> dims_;
  std::vector<double> a_root_;
  std::vector<double> b_root_;
};

// Root index of the point-reflected displacement -d, for each flat index.
int reflected_index(const std::vector<int>& dims, int flat);

// Dense (A, B) with M[u][v] = root[(v - u) mod dims].
CoefficientPair expand(const StructuredSpec& spec);

// Exact inverse of expand: returns the roots if A and B are exactly
// circulant (1D), std::nullopt otherwise.
std::optional<StructuredSpec> circulant_from_pair(const CoefficientPair& pair);

// 1D XY ring: a_root = (0, 1/2, 0, ..., 0, 1/2), b_root = (0, 1/2, ..., -1/2).
StructuredSpec build_xy_cycle(int n);

// 2D torus: diagonal blocks from `site` (site.n() == p), and identity
// couplings of strength `coupling` to the neighbouring rows of blocks,
// +coupling*I / -coupling*I in B for the forward / backward block.
StructuredSpec build_torus_2d(int p, int q, const StructuredSpec& site,
                              double coupling = 1.0);

// 3D torus: same pattern with BCCB diagonal blocks (site.dims() == [p, q]).
StructuredSpec build_torus_3d(int p, int q, int r, const StructuredSpec& site,
                              double coupling = 1.0);

// Unnormalized multidimensional DFT of c_root, sum_d c[d] w^{k.d}.
std::vector<std::complex<double>> structured_symbol(const StructuredSpec& spec);

// Eigenvalues Lambda_k^2 of G as |DFT(c_root)|^2, in frequency order.
Vector g_eigenvalues(const StructuredSpec& spec);
Vector circulant_g_eigenvalues(const StructuredSpec& spec);
Vector bccb_g_eigenvalues(const StructuredSpec& spec);
Vector bc2cb_g_eigenvalues(const StructuredSpec& spec);

// Second route: forms the root of G itself (circular autocorrelation of
// c_root, O(n^2)) and takes the real DFT of that symmetric root.
std::vector<double> g_root(const StructuredSpec& spec);
Vector g_eigenvalues_from_g_root(const StructuredSpec& spec);

// Eigenvalues of a real symmetric structured matrix given its root. Values
// more negative than -1e-12 * max(1, max|root|) raise NumericalError; the
// rest of the negative range is clamped to zero.
Vector symmetric_root_eigenvalues(const std::vector<int>& dims,
                                  const std::vector<double>& root);

// Gap from eigenvalues of G: 2 sqrt(least nonzero eigenvalue).
GapReport gap_from_g_eigenvalues(const Vector& g_eigs,
                                 std::optional<double> zero_tolerance = {});

// Interpolated gap along H(s) for a structured target. The identity is
// itself structured (root e_0, symbol 1), so the symbol of C(s) is
// (1 - s) + s * symbol(C) and one FFT serves the whole grid.
std::vector<ProfilePoint> structured_gap_profile(
    const StructuredSpec& spec, std::span<const double> s_grid,
    std::optional<double> zero_tolerance = {});

// Interpolated root ((1 - s) e_0 + s root) for A and B.
StructuredSpec interpolate(const StructuredSpec& spec, double s);

}  // namespace fermigap
