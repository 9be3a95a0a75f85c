#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "stratlab/grid.hpp"

using namespace stratlab;

namespace {

constexpr double kPi = std::numbers::pi;

ScalarField random_field(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ScalarField f(g);
  for (double& v : f.values()) v = u(rng);
  return f;
}

// Smooth trig polynomial of degree < n1/2 with random coefficients.
ScalarField random_trig(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(6), b(6);
  for (int k = 0; k < 6; ++k) {
    a[k] = u(rng);
    b[k] = u(rng);
  }
  return ScalarField::from_function(g, [&](double x, double z) {
    double s = 0.0;
    for (int k = 0; k < 6; ++k) s += (a[k] * std::cos(k * x) + b[k] * std::sin(k * x)) * std::cos((k + 1) * z);
    return s;
  });
}

}  // namespace

TEST_CASE("grid rejects invalid sizes") {
  CHECK_THROWS(Grid(7, 33));
  CHECK_THROWS(Grid(6, 33));
  CHECK_THROWS(Grid(32, 8));
  CHECK_THROWS(Grid(32, 33, 3));
  CHECK_NOTHROW(Grid(8, 9, 2));
}

TEST_CASE("node coordinates are reproducible bit for bit") {
  const Grid a(64, 65), b(64, 65, 2);
  for (std::size_t i = 0; i < 64; ++i) CHECK(a.x1(i) == b.x1(i));
  for (std::size_t j = 0; j < 65; ++j) CHECK(a.x2(j) == b.x2(j));
  CHECK(a.x2(0) == 0.0);
  CHECK(a.x2(64) == 1.0);
  CHECK(a.dx2() == doctest::Approx(1.0 / 64));
}

TEST_CASE("single cosine mode has coefficient one half") {
  const Grid g(32, 9);
  const auto m = to_modal(ScalarField::from_function(g, [](double x, double) { return std::cos(3 * x); }));
  for (std::size_t k = 0; k < g.modes(); ++k)
    for (std::size_t j = 0; j < g.n2(); ++j) {
      const double expect = k == 3 ? 0.5 : 0.0;
      CHECK(std::abs(m(k, j) - std::complex<double>(expect, 0.0)) < 1e-14);
    }
}

TEST_CASE("constant field has only the mean mode") {
  const Grid g(16, 9);
  const auto m = to_modal(ScalarField::from_function(g, [](double, double) { return 1.0; }));
  CHECK(std::abs(m(0, 4) - 1.0) < 1e-15);
  for (std::size_t k = 1; k < g.modes(); ++k) CHECK(std::abs(m(k, 4)) < 1e-15);
}

TEST_CASE("transform roundtrip of random fields") {
  for (std::size_t n1 : {8u, 32u, 128u}) {
    const Grid g(n1, 17);
    const ScalarField f = random_field(g, n1);
    const ScalarField back = to_physical(to_modal(f));
    CHECK(norm_linf(back - f) <= 1e-12 * norm_linf(f));
  }
}

TEST_CASE("spectral x1 derivative") {
  const Grid g(32, 17);
  const ScalarField s = ScalarField::from_function(g, [](double x, double) { return std::sin(x); });
  const ScalarField c = ScalarField::from_function(g, [](double x, double) { return std::cos(x); });
  CHECK(norm_linf(ddx1(s) - c) < 1e-12);

  const ScalarField f = random_trig(g, 7);
  // d/dx1 of the same polynomial, built analytically.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(6), b(6);
  for (int k = 0; k < 6; ++k) {
    a[k] = u(rng);
    b[k] = u(rng);
  }
  const ScalarField df = ScalarField::from_function(g, [&](double x, double z) {
    double v = 0.0;
    for (int k = 0; k < 6; ++k) v += k * (-a[k] * std::sin(k * x) + b[k] * std::cos(k * x)) * std::cos((k + 1) * z);
    return v;
  });
  CHECK(norm_linf(ddx1(f) - df) < 1e-10);
}

TEST_CASE("vertical derivative is exact on quadratics") {
  for (int fd : {2, 4}) {
    const Grid g(8, 17, fd);
    const ScalarField f = ScalarField::from_function(g, [](double, double z) { return z * z; });
    const ScalarField d = ScalarField::from_function(g, [](double, double z) { return 2 * z; });
    CHECK(norm_linf(ddx2(f) - d) < 1e-11);
  }
}

TEST_CASE("vertical derivative converges at its order") {
  for (int fd : {2, 4}) {
    double prev = 0.0;
    for (std::size_t n2 : {33u, 65u, 129u, 257u}) {
      const Grid g(8, n2, fd);
      const ScalarField f = ScalarField::from_function(g, [](double, double z) { return std::sin(kPi * z); });
      const ScalarField d = ScalarField::from_function(g, [](double, double z) { return kPi * std::cos(kPi * z); });
      const double err = norm_linf(ddx2(f) - d);
      if (prev > 0.0) CHECK(std::log2(prev / err) >= fd - 0.1);
      prev = err;
    }
  }
}

TEST_CASE("quadrature") {
  const Grid g(32, 65);
  CHECK(integrate(ScalarField::from_function(g, [](double, double) { return 1.0; })) ==
        doctest::Approx(2 * kPi).epsilon(1e-12));
  CHECK(std::abs(integrate(ScalarField::from_function(g, [](double x, double) { return std::sin(x); }))) < 1e-12);
  const double v = integrate(ScalarField::from_function(g, [](double x, double z) {
    return std::pow(std::sin(x), 2) * std::pow(std::sin(kPi * z), 2);
  }));
  CHECK(v == doctest::Approx(kPi / 2).epsilon(1e-4));
  const ScalarField f = random_field(g, 3);
  CHECK(std::abs(integrate(ddx1(f))) < 1e-10);
}

TEST_CASE("integrate_product matches integrate of the product") {
  const Grid g(16, 33);
  const ScalarField a = random_field(g, 1), b = random_field(g, 2);
  ScalarField p(g);
  for (std::size_t k = 0; k < p.values().size(); ++k) p.values()[k] = a.values()[k] * b.values()[k];
  CHECK(integrate_product(a, b) == doctest::Approx(integrate(p)).epsilon(1e-14));
}

TEST_CASE("norms") {
  const Grid g(32, 129);
  const ScalarField f = ScalarField::from_function(g, [](double x, double z) { return std::sin(x) * std::sin(kPi * z); });
  CHECK(norm_l2(f) == doctest::Approx(std::sqrt(kPi / 2)).epsilon(1e-6));
  const ScalarField zero(g);
  for (auto kind : {NormKind::L2, NormKind::Linf, NormKind::W1inf}) CHECK(norm(zero, kind) == 0.0);
  for (int k = 0; k <= 4; ++k) CHECK(norm_hk(zero, k) == 0.0);
  const ScalarField r = random_field(g, 11);
  CHECK(norm_hk(r, 0) == norm_l2(r));
  const auto all = norm_hk_all(r, 4);
  for (int k = 1; k <= 4; ++k) {
    CHECK(norm_hk(r, k) >= norm_hk(r, k - 1));
    CHECK(all[k] == doctest::Approx(norm_hk(r, k)).epsilon(1e-14));
  }
  CHECK_THROWS(norm(r, NormKind::Hk, 5));
}

TEST_CASE("x1 average and dealiasing") {
  const Grid g(24, 17);
  const Profile p = x1_average(ScalarField::from_function(g, [](double x, double z) { return std::sin(x) + z; }));
  for (std::size_t j = 0; j < g.n2(); ++j) CHECK(p[j] == doctest::Approx(g.x2(j)).epsilon(1e-14));

  const ModalField m = to_modal(random_field(g, 5));
  const ModalField d = dealias(m);
  const ModalField dd = dealias(d);
  CHECK(d.coeffs() == dd.coeffs());
  for (std::size_t k = 0; k < g.modes(); ++k)
    for (std::size_t j = 0; j < g.n2(); ++j) {
      if (3 * k <= g.n1()) {
        CHECK(d(k, j) == m(k, j));
      } else {
        CHECK(d(k, j) == std::complex<double>(0.0, 0.0));
      }
    }
}

TEST_CASE("pairwise sum is exact on integers and order-fixed") {
  std::vector<double> v(1000);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = static_cast<double>(k);
  CHECK(pairwise_sum(v.data(), v.size()) == 499500.0);
  CHECK(pairwise_sum(v.data(), 0) == 0.0);
}

TEST_CASE("mismatched grids are rejected") {
  const Grid a(16, 17), b(16, 33);
  CHECK_THROWS(ScalarField(a) + ScalarField(b));
  CHECK_THROWS(integrate_product(ScalarField(a), ScalarField(b)));
}

TEST_CASE("finite-difference weights") {
  const std::vector<double> x{-1.0, 0.0, 1.0};
  const auto w2 = fd_weights(0.0, x, 2);
  CHECK(w2[0] == doctest::Approx(1.0));
  CHECK(w2[1] == doctest::Approx(-2.0));
  CHECK(w2[2] == doctest::Approx(1.0));
  const std::vector<double> y{-2.0, -1.0, 0.0, 1.0, 2.0};
  const auto w1 = fd_weights(0.0, y, 1);
  CHECK(w1[0] == doctest::Approx(1.0 / 12));
  CHECK(w1[1] == doctest::Approx(-8.0 / 12));
  CHECK(w1[2] == doctest::Approx(0.0));
  // One-sided: exact on cubics.
  const std::vector<double> z{0.0, 1.0, 2.0, 3.0, 4.0};
  const auto w = fd_weights(0.0, z, 1);
  double d = 0.0;
  for (std::size_t s = 0; s < z.size(); ++s) d += w[s] * std::pow(z[s] + 1.0, 3);
  CHECK(d == doctest::Approx(3.0));
}

TEST_CASE("vertical operator rows") {
  const VerticalOperator op(17, 1.0 / 16, 1, 4);
  CHECK(op.radius() == 2);
  CHECK(op.is_interior(2));
  CHECK_FALSE(op.is_interior(1));
  CHECK(op.row(0).first == 0);
  CHECK(op.row(16).first + op.row(16).w.size() == 17);
  std::vector<double> in(17), out(17);
  for (std::size_t j = 0; j < 17; ++j) in[j] = std::pow(j / 16.0, 4);
  op.apply(in.data(), out.data());
  for (std::size_t j = 0; j < 17; ++j) CHECK(out[j] == doctest::Approx(4 * std::pow(j / 16.0, 3)).epsilon(1e-10));
}
