#include "fermigap/lattice.hpp"

#include "fermigap/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

namespace fermigap {

namespace {

// The FFTW planner is not thread-safe; plan execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPlan {
 public:
  // Unnormalized backward transform, sum_d x[d] exp(+2 pi i k.d / dims).
  FftPlan(const std::vector<int>& dims, std::vector<std::complex<double>>& in,
          std::vector<std::complex<double>>& out) {
    std::vector<int> slowest_first(dims.rbegin(), dims.rend());
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_ = fftw_plan_dft(static_cast<int>(slowest_first.size()),
                          slowest_first.data(),
                          reinterpret_cast<fftw_complex*>(in.data()),
                          reinterpret_cast<fftw_complex*>(out.data()),
                          FFTW_BACKWARD, FFTW_ESTIMATE);
    if (plan_ == nullptr) throw NumericalError("FFTW could not create a plan");
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  ~FftPlan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }

  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_ = nullptr;
};

std::vector<std::complex<double>> dft(const std::vector<int>& dims,
                                      const std::vector<double>& values) {
  std::vector<std::complex<double>> in(values.begin(), values.end());
  std::vector<std::complex<double>> out(values.size());
  FftPlan plan(dims, in, out);
  plan.execute();
  return out;
}

int product(const std::vector<int>& dims) {
  int n = 1;
  for (int d : dims) n *= d;
  return n;
}

std::vector<int> coords_of(const std::vector<int>& dims, int flat) {
  std::vector<int> c(dims.size());
  for (std::size_t axis = 0; axis < dims.size(); ++axis) {
    c[axis] = flat % dims[axis];
    flat /= dims[axis];
  }
  return c;
}

// Flat index of the displacement (to - from) mod dims.
int displacement_index(const std::vector<int>& dims,
                       const std::vector<std::vector<int>>& coords, int from,
                       int to) {
  int flat = 0;
  int stride = 1;
  for (std::size_t axis = 0; axis < dims.size(); ++axis) {
    const int d = dims[axis];
    const int delta = ((coords[to][axis] - coords[from][axis]) % d + d) % d;
    flat += delta * stride;
    stride *= d;
  }
  return flat;
}

std::vector<std::vector<int>> all_coords(const std::vector<int>& dims) {
  const int n = product(dims);
  std::vector<std::vector<int>> coords(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) coords[i] = coords_of(dims, i);
  return coords;
}

void validate_roots(const std::vector<int>& dims, const std::vector<double>& a,
                    const std::vector<double>& b) {
  for (int d : dims) {
    if (d < 1) throw DomainError("lattice dimensions must be positive");
  }
  const auto n = static_cast<std::size_t>(product(dims));
  if (a.size() != n || b.size() != n) {
    std::ostringstream msg;
    msg << "root arrays must have " << n << " entries, got a_root "
        << a.size() << " and b_root " << b.size();
    throw DimensionError(msg.str());
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(a[i]) || !std::isfinite(b[i])) {
      throw DomainError("root entry " + std::to_string(i) + " is not finite");
    }
    const auto mirror = static_cast<std::size_t>(
        reflected_index(dims, static_cast<int>(i)));
    if (a[i] != a[mirror]) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "a_root is not reflection symmetric: a_root[" << i
          << "] = " << a[i] << " but a_root[" << mirror << "] = " << a[mirror];
      throw DomainError(msg.str());
    }
    if (b[i] != -b[mirror]) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "b_root is not reflection antisymmetric: b_root[" << i
          << "] = " << b[i] << " but b_root[" << mirror << "] = " << b[mirror];
      throw DomainError(msg.str());
    }
  }
}

}  // namespace

std::string to_string(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::circulant:
      return "circulant";
    case LatticeKind::bccb:
      return "bccb";
    case LatticeKind::bc2cb:
      return "bc2cb";
  }
  return "unknown";
}

int reflected_index(const std::vector<int>& dims, int flat) {
  int out = 0;
  int stride = 1;
  for (int d : dims) {
    const int c = flat % d;
    flat /= d;
    out += ((d - c) % d) * stride;
    stride *= d;
  }
  return out;
}

StructuredSpec::StructuredSpec(LatticeKind kind, std::vector<int> dims,
                               std::vector<double> a_root,
                               std::vector<double> b_root)
    : kind_(kind),
      dims_(std::move(dims)),
      a_root_(std::move(a_root)),
      b_root_(std::move(b_root)) {
  validate_roots(dims_, a_root_, b_root_);
}

StructuredSpec StructuredSpec::circulant(std::vector<double> a_root,
                                         std::vector<double> b_root) {
  const int n = static_cast<int>(a_root.size());
  if (n < 1) throw DomainError("circulant lattice needs n >= 1");
  return StructuredSpec(LatticeKind::circulant, {n}, std::move(a_root),
                        std::move(b_root));
}

StructuredSpec StructuredSpec::bccb(int p, int q, std::vector<double> a_root,
                                    std::vector<double> b_root) {
  if (p < 1 || q < 1) throw DomainError("BCCB lattice needs p, q >= 1");
  return StructuredSpec(LatticeKind::bccb, {p, q}, std::move(a_root),
                        std::move(b_root));
}

StructuredSpec StructuredSpec::bc2cb(int p, int q, int r,
                                     std::vector<double> a_root,
                                     std::vector<double> b_root) {
  if (p < 1 || q < 1 || r < 1) {
    throw DomainError("(BC)^2CB lattice needs p, q, r >= 1");
  }
  return StructuredSpec(LatticeKind::bc2cb, {p, q, r}, std::move(a_root),
                        std::move(b_root));
}

std::vector<double> StructuredSpec::c_root() const {
  std::vector<double> c(a_root_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a_root_[i] + b_root_[i];
  return c;
}

CoefficientPair expand(const StructuredSpec& spec) {
  const int n = spec.n();
  const auto coords = all_coords(spec.dims());
  Matrix a(n, n);
  Matrix b(n, n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const int d = displacement_index(spec.dims(), coords, u, v);
      a(u, v) = spec.a_root()[d];
      b(u, v) = spec.b_root()[d];
    }
  }
  return CoefficientPair::from_parts(std::move(a), std::move(b));
}

std::optional<StructuredSpec> circulant_from_pair(const CoefficientPair& pair) {
  const int n = pair.n();
  std::vector<double> a_root(pair.a().row(0).begin(), pair.a().row(0).end());
  std::vector<double> b_root(pair.b().row(0).begin(), pair.b().row(0).end());
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const int d = ((k - j) % n + n) % n;
      if (pair.a()(j, k) != a_root[d] || pair.b()(j, k) != b_root[d]) {
        return std::nullopt;
      }
    }
  }
  return StructuredSpec::circulant(std::move(a_root), std::move(b_root));
}

StructuredSpec build_xy_cycle(int n) {
  if (n < 3) throw DomainError("XY ring needs n >= 3, got " + std::to_string(n));
  std::vector<double> a(n, 0.0);
  std::vector<double> b(n, 0.0);
  a[1] = 0.5;
  a[n - 1] = 0.5;
  b[1] = 0.5;
  b[n - 1] = -0.5;
  return StructuredSpec::circulant(std::move(a), std::move(b));
}

StructuredSpec build_torus_2d(int p, int q, const StructuredSpec& site,
                              double coupling) {
  if (site.kind() != LatticeKind::circulant || site.n() != p) {
    throw DimensionError("2D torus needs a circulant site lattice with n = p = " +
                         std::to_string(p) + ", got n = " +
                         std::to_string(site.n()));
  }
  if (p < 3 || q < 3) throw DomainError("2D torus needs p, q >= 3");
  const auto n = static_cast<std::size_t>(p) * q;
  std::vector<double> a(n, 0.0);
  std::vector<double> b(n, 0.0);
  std::copy(site.a_root().begin(), site.a_root().end(), a.begin());
  std::copy(site.b_root().begin(), site.b_root().end(), b.begin());
  const std::size_t forward = static_cast<std::size_t>(p);
  const std::size_t backward = static_cast<std::size_t>(q - 1) * p;
  a[forward] += coupling;
  a[backward] += coupling;
  b[forward] += coupling;
  b[backward] -= coupling;
  return StructuredSpec::bccb(p, q, std::move(a), std::move(b));
}

StructuredSpec build_torus_3d(int p, int q, int r, const StructuredSpec& site,
                              double coupling) {
  if (site.kind() != LatticeKind::bccb || site.dims()[0] != p ||
      site.dims()[1] != q) {
    throw DimensionError("3D torus needs a BCCB site lattice with dims [p, q] = [" +
                         std::to_string(p) + ", " + std::to_string(q) + "]");
  }
  if (p < 3 || q < 3 || r < 3) throw DomainError("3D torus needs p, q, r >= 3");
  const auto slab = static_cast<std::size_t>(p) * q;
  const auto n = slab * r;
  std::vector<double> a(n, 0.0);
  std::vector<double> b(n, 0.0);
  std::copy(site.a_root().begin(), site.a_root().end(), a.begin());
  std::copy(site.b_root().begin(), site.b_root().end(), b.begin());
  const std::size_t forward = slab;
  const std::size_t backward = slab * (r - 1);
  a[forward] += coupling;
  a[backward] += coupling;
  b[forward] += coupling;
  b[backward] -= coupling;
  return StructuredSpec::bc2cb(p, q, r, std::move(a), std::move(b));
}

std::vector<std::complex<double>> structured_symbol(const StructuredSpec& spec) {
  return dft(spec.dims(), spec.c_root());
}

Vector g_eigenvalues(const StructuredSpec& spec) {
  const auto symbol = structured_symbol(spec);
  Vector out(static_cast<Eigen::Index>(symbol.size()));
  for (std::size_t k = 0; k < symbol.size(); ++k) out(k) = std::norm(symbol[k]);
  return out;
}

namespace {

Vector g_eigenvalues_of_kind(const StructuredSpec& spec, LatticeKind kind) {
  if (spec.kind() != kind) {
    throw DomainError("expected a " + to_string(kind) + " lattice, got " +
                      to_string(spec.kind()));
  }
  return g_eigenvalues(spec);
}

}  // namespace

Vector circulant_g_eigenvalues(const StructuredSpec& spec) {
  return g_eigenvalues_of_kind(spec, LatticeKind::circulant);
}

Vector bccb_g_eigenvalues(const StructuredSpec& spec) {
  return g_eigenvalues_of_kind(spec, LatticeKind::bccb);
}

Vector bc2cb_g_eigenvalues(const StructuredSpec& spec) {
  return g_eigenvalues_of_kind(spec, LatticeKind::bc2cb);
}

std::vector<double> g_root(const StructuredSpec& spec) {
  // G = C C^T, so G[0][v] = sum_w C[0][w] C[v][w] = sum_w c[w] c[w - v].
  const int n = spec.n();
  const auto coords = all_coords(spec.dims());
  const auto c = spec.c_root();
  std::vector<double> g(static_cast<std::size_t>(n), 0.0);
  for (int v = 0; v < n; ++v) {
    double acc = 0.0;
    for (int w = 0; w < n; ++w) {
      acc += c[w] * c[displacement_index(spec.dims(), coords, v, w)];
    }
    g[v] = acc;
  }
  return g;
}

Vector g_eigenvalues_from_g_root(const StructuredSpec& spec) {
  return symmetric_root_eigenvalues(spec.dims(), g_root(spec));
}

Vector symmetric_root_eigenvalues(const std::vector<int>& dims,
                                  const std::vector<double>& root) {
  if (static_cast<int>(root.size()) != product(dims)) {
    throw DimensionError("root size does not match lattice dimensions");
  }
  const auto spectrum = dft(dims, root);
  double scale = 1.0;
  for (double x : root) scale = std::max(scale, std::abs(x));
  const double floor = -1e-12 * scale;
  Vector out(static_cast<Eigen::Index>(spectrum.size()));
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const double value = spectrum[k].real();
    if (value < floor) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "eigenvalue " << k << " of a positive semidefinite lattice "
          << "matrix is " << value << ", below the clamp floor " << floor;
      throw NumericalError(msg.str());
    }
    out(k) = std::max(value, 0.0);
  }
  return out;
}

GapReport gap_from_g_eigenvalues(const Vector& g_eigs,
                                 std::optional<double> zero_tolerance) {
  Vector lambda = g_eigs.cwiseMax(0.0).cwiseSqrt();
  std::sort(lambda.data(), lambda.data() + lambda.size());
  return gap_from_singular_values(lambda, zero_tolerance);
}

std::vector<ProfilePoint> structured_gap_profile(
    const StructuredSpec& spec, std::span<const double> s_grid,
    std::optional<double> zero_tolerance) {
  if (s_grid.empty()) throw DomainError("gap profile needs a nonempty s grid");
  for (double s : s_grid) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw DomainError("interpolation parameter s = " + std::to_string(s) +
                        " is outside [0, 1]");
    }
  }
  const auto symbol = structured_symbol(spec);
  std::vector<ProfilePoint> points;
  points.reserve(s_grid.size());
  Vector lambda(static_cast<Eigen::Index>(symbol.size()));
  for (double s : s_grid) {
    for (std::size_t k = 0; k < symbol.size(); ++k) {
      lambda(k) = std::abs((1.0 - s) + s * symbol[k]);
    }
    points.push_back({s, gap_from_singular_values(lambda, zero_tolerance)});
  }
  return points;
}

StructuredSpec interpolate(const StructuredSpec& spec, double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw DomainError("interpolation parameter s = " + std::to_string(s) +
                      " is outside [0, 1]");
  }
  std::vector<double> a(spec.a_root().size());
  std::vector<double> b(spec.b_root().size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = s * spec.a_root()[i];
    b[i] = s * spec.b_root()[i];
  }
  a[0] += 1.0 - s;
  switch (spec.kind()) {
    case LatticeKind::circulant:
      return StructuredSpec::circulant(std::move(a), std::move(b));
    case LatticeKind::bccb:
      return StructuredSpec::bccb(spec.dims()[0], spec.dims()[1], std::move(a),
                                  std::move(b));
    case LatticeKind::bc2cb:
      return StructuredSpec::bc2cb(spec.dims()[0], spec.dims()[1],
                                   spec.dims()[2], std::move(a), std::move(b));
  }
  throw DomainError("unknown lattice kind");
}

}  // namespace fermigap
