#include "fermigap/conformance.hpp"
#include "fermigap/errors.hpp"
#include "fermigap/lattice.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace fermigap;

namespace {

std::vector<double> to_vec(const Vector& v) { return {v.data(), v.data() + v.size()}; }

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Eigenvalues of G for the expanded pair, by dense symmetric solve.
std::vector<double> dense_g(const StructuredSpec& spec) {
  const auto pair = expand(spec);
  return oracle::symmetric_eigenvalues(pair.sum() * pair.difference());
}

}  // namespace

TEST_CASE("build_xy_cycle n = 5 matches the displayed ring matrices") {
  const auto pair = expand(build_xy_cycle(5));
  Matrix a(5, 5), b(5, 5);
  a << 0, .5, 0, 0, .5,
       .5, 0, .5, 0, 0,
       0, .5, 0, .5, 0,
       0, 0, .5, 0, .5,
       .5, 0, 0, .5, 0;
  b << 0, .5, 0, 0, -.5,
       -.5, 0, .5, 0, 0,
       0, -.5, 0, .5, 0,
       0, 0, -.5, 0, .5,
       .5, 0, 0, -.5, 0;
  CHECK(pair.a() == a);
  CHECK(pair.b() == b);
}

TEST_CASE("build_xy_cycle roots") {
  const auto spec = build_xy_cycle(3);
  CHECK(spec.a_root() == std::vector<double>{0, 0.5, 0.5});
  CHECK(spec.b_root() == std::vector<double>{0, 0.5, -0.5});
  CHECK_THROWS_AS(build_xy_cycle(2), DomainError);
}

TEST_CASE("xy cycle n = 4 is a cyclic shift") {
  const auto pair = expand(build_xy_cycle(4));
  Matrix shift = Matrix::Zero(4, 4);
  for (int j = 0; j < 4; ++j) shift(j, (j + 1) % 4) = 1.0;
  CHECK(pair.sum() == shift);
  const auto sv = oracle::augmented_singular_values(pair.sum());
  for (double s : sv) CHECK(s == doctest::Approx(1.0));
  const auto d = lieb_decompose(pair);
  for (int j = 0; j < 4; ++j) CHECK(d.lambda(j) == doctest::Approx(1.0));
}

TEST_CASE("spec validation names the offending root index") {
  CHECK_THROWS_WITH_AS(StructuredSpec::circulant({0, 1, 0, 0}, {0, 0, 0, 0}),
                       doctest::Contains("a_root[1]"), DomainError);
  CHECK_THROWS_AS(StructuredSpec::circulant({0, 0, 0}, {1, 0, 0}), DomainError);
  CHECK_THROWS_AS(StructuredSpec::circulant({0, 0, 0}, {0, 1, 1}), DomainError);
  CHECK_THROWS_AS(StructuredSpec::bccb(2, 2, {1, 0, 0}, {0, 0, 0}), DimensionError);
  CHECK_THROWS_AS(StructuredSpec::circulant({1, 0}, {0, 0, 0}), DimensionError);
}

TEST_CASE("circulant G eigenvalues of a given G root") {
  // First row (2, 1, 0, 1) of G: eigenvalues 4, 2, 0, 2 in frequency order.
  const Vector ev = symmetric_root_eigenvalues({4}, {2, 1, 0, 1});
  CHECK(ev(0) == doctest::Approx(4));
  CHECK(ev(1) == doctest::Approx(2));
  CHECK(ev(2) == doctest::Approx(0));
  CHECK(ev(3) == doctest::Approx(2));
  Matrix g(4, 4);
  g << 2, 1, 0, 1, 1, 2, 1, 0, 0, 1, 2, 1, 1, 0, 1, 2;
  CHECK(oracle::max_diff(sorted(to_vec(ev)), oracle::symmetric_eigenvalues(g)) < 1e-12);
}

TEST_CASE("symmetric_root_eigenvalues rejects clearly negative spectra") {
  CHECK_THROWS_AS(symmetric_root_eigenvalues({3}, {-1, 0, 0}), NumericalError);
}

TEST_CASE("identity circulant has unit G eigenvalues") {
  const auto spec = StructuredSpec::circulant({1, 0, 0, 0, 0}, {0, 0, 0, 0, 0});
  for (double e : to_vec(circulant_g_eigenvalues(spec))) CHECK(e == doctest::Approx(1.0));
}

TEST_CASE("xy cycle n = 6 has unit G eigenvalues") {
  for (double e : to_vec(circulant_g_eigenvalues(build_xy_cycle(6)))) {
    CHECK(e == doctest::Approx(1.0));
  }
}

TEST_CASE("kind-specific wrappers check the kind") {
  CHECK_THROWS_AS(bccb_g_eigenvalues(build_xy_cycle(5)), DomainError);
  const auto torus = build_torus_2d(3, 3, build_xy_cycle(3));
  CHECK_THROWS_AS(circulant_g_eigenvalues(torus), DomainError);
  CHECK_NOTHROW(bccb_g_eigenvalues(torus));
}

TEST_CASE("2D torus p = q = 3 matches direct block assembly") {
  const auto site = build_xy_cycle(3);
  const auto site_pair = expand(site);
  const auto pair = expand(build_torus_2d(3, 3, site));
  Matrix a = Matrix::Zero(9, 9), b = Matrix::Zero(9, 9);
  const Matrix id = Matrix::Identity(3, 3);
  for (int r = 0; r < 3; ++r) {
    a.block(3 * r, 3 * r, 3, 3) = site_pair.a();
    b.block(3 * r, 3 * r, 3, 3) = site_pair.b();
    const int next = (r + 1) % 3;
    a.block(3 * r, 3 * next, 3, 3) += id;
    a.block(3 * next, 3 * r, 3, 3) += id;
    b.block(3 * r, 3 * next, 3, 3) += id;
    b.block(3 * next, 3 * r, 3, 3) -= id;
  }
  CHECK(pair.a() == a);
  CHECK(pair.b() == b);
}

TEST_CASE("2D torus dimension mismatch names p") {
  CHECK_THROWS_WITH_AS(build_torus_2d(4, 3, build_xy_cycle(3)), doctest::Contains("4"),
                       DimensionError);
}

TEST_CASE("zero coupling decouples the torus into ring copies") {
  const auto site = build_xy_cycle(5);
  const auto ring = sorted(to_vec(circulant_g_eigenvalues(site)));
  const auto torus = sorted(to_vec(bccb_g_eigenvalues(build_torus_2d(5, 4, site, 0.0))));
  REQUIRE(torus.size() == 20);
  for (std::size_t i = 0; i < torus.size(); ++i) {
    CHECK(torus[i] == doctest::Approx(ring[i / 4]));
  }
  const auto layer = build_torus_2d(3, 4, build_xy_cycle(3), 0.0);
  const auto cube = sorted(to_vec(bc2cb_g_eigenvalues(build_torus_3d(3, 4, 3, layer, 0.0))));
  const auto flat = sorted(to_vec(bccb_g_eigenvalues(layer)));
  REQUIRE(cube.size() == 36);
  for (std::size_t i = 0; i < cube.size(); ++i) CHECK(cube[i] == doctest::Approx(flat[i / 3]));
}

TEST_CASE("3D torus p = q = r = 3 matches direct block assembly") {
  const auto layer = build_torus_2d(3, 3, build_xy_cycle(3));
  const auto layer_pair = expand(layer);
  const auto pair = expand(build_torus_3d(3, 3, 3, layer));
  Matrix a = Matrix::Zero(27, 27), b = Matrix::Zero(27, 27);
  const Matrix id = Matrix::Identity(9, 9);
  for (int r = 0; r < 3; ++r) {
    a.block(9 * r, 9 * r, 9, 9) = layer_pair.a();
    b.block(9 * r, 9 * r, 9, 9) = layer_pair.b();
    const int next = (r + 1) % 3;
    a.block(9 * r, 9 * next, 9, 9) += id;
    a.block(9 * next, 9 * r, 9, 9) += id;
    b.block(9 * r, 9 * next, 9, 9) += id;
    b.block(9 * next, 9 * r, 9, 9) -= id;
  }
  CHECK(pair.a() == a);
  CHECK(pair.b() == b);
}

TEST_CASE("FFT eigenvalues of G match the dense eigensolver") {
  const std::vector<std::vector<int>> shapes{{7}, {16}, {4, 4}, {5, 3}, {3, 3, 3}, {4, 2, 3}};
  std::uint64_t index = 0;
  for (const auto& dims : shapes) {
    const auto spec = random_structured_spec(dims, 77, index++);
    const auto fast = sorted(to_vec(g_eigenvalues(spec)));
    const auto dense = dense_g(spec);
    const double scale = 1.0 + *std::max_element(dense.begin(), dense.end());
    CHECK(oracle::max_diff(fast, dense) <= 1e-8 * scale);
  }
  const auto torus = build_torus_2d(4, 4, build_xy_cycle(4));
  CHECK(oracle::max_diff(sorted(to_vec(g_eigenvalues(torus))), dense_g(torus)) < 1e-8);
}

TEST_CASE("G-root route agrees with the squared-modulus route") {
  for (const auto& dims : std::vector<std::vector<int>>{{9}, {4, 5}, {3, 2, 4}}) {
    const auto spec = random_structured_spec(dims, 5, 1);
    const auto a = sorted(to_vec(g_eigenvalues(spec)));
    const auto b = sorted(to_vec(g_eigenvalues_from_g_root(spec)));
    CHECK(oracle::max_diff(a, b) < 1e-10 * (1.0 + a.back()));
  }
}

TEST_CASE("reflected_index") {
  CHECK(reflected_index({5}, 0) == 0);
  CHECK(reflected_index({5}, 1) == 4);
  CHECK(reflected_index({4, 3}, 1) == 3);
  CHECK(reflected_index({4, 3}, 5) == 11);  // (x, y) = (1, 1) -> (3, 2)
}

TEST_CASE("circulant_from_pair round trip and rejection") {
  const auto spec = random_structured_spec({6}, 3, 0);
  const auto back = circulant_from_pair(expand(spec));
  REQUIRE(back.has_value());
  CHECK(back->a_root() == spec.a_root());
  CHECK(back->b_root() == spec.b_root());
  CHECK_FALSE(circulant_from_pair(symmetrize_split(oracle::random_matrix(4, 4, 2))).has_value());
}

TEST_CASE("structured profile at s = 0 is 2 for every kind") {
  const std::vector<double> grid{0.0};
  for (const auto& dims : std::vector<std::vector<int>>{{5}, {3, 4}, {2, 3, 2}}) {
    const auto p = structured_gap_profile(random_structured_spec(dims, 9, 0), grid);
    CHECK(p[0].report.gap == doctest::Approx(2.0));
  }
}

TEST_CASE("xy cycle profile follows the closed-form symbol") {
  const int n = 8;
  const auto spec = build_xy_cycle(n);
  const auto grid = uniform_grid(21);
  const auto fast = structured_gap_profile(spec, grid);
  const auto dense = gap_profile({expand(spec), "xy"}, grid).points;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = grid[i];
    double least = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      const double m = std::abs(std::complex<double>(1 - s) +
                                s * std::polar(1.0, 2 * std::numbers::pi * k / n));
      if (m > fast[i].report.zero_tolerance) least = std::min(least, m);
    }
    CHECK(fast[i].report.gap == doctest::Approx(2 * least).epsilon(1e-10));
    CHECK(std::abs(fast[i].report.gap - dense[i].report.gap) <= 1e-9);
    CHECK(fast[i].report.degenerate == dense[i].report.degenerate);
  }
  const std::vector<double> half{0.5};
  CHECK(structured_gap_profile(spec, half)[0].report.degenerate);
  CHECK(gap_profile({expand(spec), "xy"}, half).points[0].report.degenerate);
}

TEST_CASE("random circulant profile matches the dense path at s = 0.7") {
  const auto spec = random_structured_spec({6}, 42, 0);
  const std::vector<double> grid{0.7};
  const double fast = structured_gap_profile(spec, grid)[0].report.gap;
  const double dense = gap_profile({expand(spec), ""}, grid).points[0].report.gap;
  CHECK(std::abs(fast - dense) <= 1e-10);
}

TEST_CASE("interpolated specs stay valid") {
  const auto spec = random_structured_spec({3, 4}, 1, 0);
  for (double s : {0.0, 0.3, 1.0}) {
    const auto mid = interpolate(spec, s);
    CHECK(mid.dims() == spec.dims());
    CHECK(mid.a_root()[0] == doctest::Approx((1 - s) + s * spec.a_root()[0]));
  }
  CHECK_THROWS_AS(interpolate(spec, 1.2), DomainError);
}

TEST_CASE("gap_from_g_eigenvalues") {
  Vector g(3);
  g << 0.0, 0.25, 4.0;
  const auto r = gap_from_g_eigenvalues(g);
  CHECK(r.gap == doctest::Approx(1.0));
  CHECK(r.degenerate);
}

TEST_CASE("large ring through the FFT path") {
  const int n = 1 << 16;
  const auto spec = build_xy_cycle(n);
  const auto ev = circulant_g_eigenvalues(spec);
  CHECK(ev.size() == n);
  CHECK((ev.array() - 1.0).abs().maxCoeff() < 1e-9);
}
