#pragma once

// Cross-route conformance suite behind `fermigap verify`.
//
// Each check compares two independent computations of the same quantity
// over seeded random instances and records the worst residual together
// with the instance that produced it, so a failure can be replayed.

#include "fermigap/lattice.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fermigap {

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double threshold = 0.0;
  long long cases = 0;
  bool pass = true;
  std::string worst_case;    // replay handle of the largest residual
  std::string failing_case;  // first case over threshold, empty if none
};

struct VerifyOptions {
  int n_max = 8;
  int trials = 25;  // per mode count
  std::uint64_t seed = 0;
  // Negates one B entry pair before fermionic assembly. Negative control.
  bool inject_fault = false;
};

struct VerifyReport {
  VerifyOptions options;
  std::vector<CheckResult> checks;
  bool pass() const;
};

VerifyReport run_verify(const VerifyOptions& options);

// Random lattice spec with valid reflection symmetry; dims fastest first.
StructuredSpec random_structured_spec(const std::vector<int>& dims,
                                      std::uint64_t seed, std::uint64_t index);

// Eigenvalues of G = (A + B)(A - B) of the expanded spec from a dense
// symmetric eigensolver, ascending.
Vector dense_g_eigenvalues(const StructuredSpec& spec);

// max_k |sorted(x)_k - sorted(y)_k|.
double sorted_max_difference(std::vector<double> x, std::vector<double> y);

}  // namespace fermigap
