#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kelvin_eit/errors.hpp"
#include "kelvin_eit/harmonics.hpp"

using namespace kelvin_eit;

namespace {

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f) {
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) sum += rule.weights[k] * f(rule.nodes[k]);
  return sum;
}

// int_{-1}^{1} t^k (1 - t^2)^mu dt through the Beta function.
double monomial_moment(int k, double mu) {
  if (k % 2) return 0.0;
  return std::exp(std::lgamma(0.5 * k + 0.5) + std::lgamma(mu + 1.0) - std::lgamma(0.5 * k + mu + 1.5));
}

}  // namespace

TEST_CASE("harmonic dimension") {
  for (int d = 2; d <= 10; ++d) CHECK(harmonic_dimension(0, d) == 1);
  CHECK(harmonic_dimension(2, 3) == 5);
  for (int n = 1; n <= 30; ++n) CHECK(harmonic_dimension(n, 2) == 2);
  CHECK(harmonic_dimension(3, 3) == 7);
  CHECK(harmonic_dimension(2, 4) == 9);
}

TEST_CASE("Laplace-Beltrami eigenvalues") {
  CHECK(beltrami_eigenvalue(0, 5) == 0.0);
  CHECK(beltrami_eigenvalue(2, 3) == -6.0);
  CHECK(beltrami_eigenvalue(1, 2) == -1.0);
}

TEST_CASE("sphere area and ball volume") {
  CHECK(sphere_area(2) == doctest::Approx(2 * std::numbers::pi).epsilon(1e-14));
  CHECK(sphere_area(3) == doctest::Approx(4 * std::numbers::pi).epsilon(1e-14));
  CHECK(ball_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ball_volume(3) == doctest::Approx(4.0 / 3.0 * std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("Gauss-Jacobi rules") {
  const QuadratureRule legendre = gauss_jacobi(0.0, 2);
  CHECK(std::abs(legendre.nodes[1] - 1.0 / std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(legendre.nodes[0] + 1.0 / std::sqrt(3.0)) < 1e-15);
  CHECK(integrate(legendre, [](double t) { return t * t; }) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  const QuadratureRule half = gauss_jacobi(0.5, 5);
  CHECK(std::abs(integrate(half, [](double) { return 1.0; }) - std::numbers::pi / 2) <= 1e-14);

  for (double mu : {-0.5, 0.0, 0.5, 1.5, 3.0, 6.5}) {
    for (int count : {1, 4, 9, 20}) {
      const QuadratureRule rule = gauss_jacobi(mu, count);
      for (int k = 0; k <= 2 * count - 1; ++k) {
        const double exact = monomial_moment(k, mu);
        const double got = integrate(rule, [k](double t) { return std::pow(t, k); });
        CHECK(std::abs(got - exact) <= 1e-13 * std::max(1.0, exact));
      }
      for (double w : rule.weights) CHECK(w > 0.0);
    }
  }
  CHECK_THROWS_AS(gauss_jacobi(-1.0, 3), DomainError);
}

TEST_CASE("sector bases") {
  SUBCASE("d = 3, m = 0 gives orthonormal Legendre polynomials") {
    const SectorBasis basis(3, 0, 5);
    CHECK(basis.evaluate(0, 0.3) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(basis.evaluate(1, 0.3) == doctest::Approx(std::sqrt(1.5) * 0.3).epsilon(1e-14));
    const double p2 = 0.5 * (3 * 0.09 - 1) * std::sqrt(2.5);
    CHECK(basis.evaluate(2, 0.3) == doctest::Approx(p2).epsilon(1e-14));
  }
  SUBCASE("d = 2, m = 0 recovers cos(n theta)") {
    const SectorBasis basis(2, 0, 10);
    const double theta = 0.7;
    const auto p = basis.evaluate_all(std::cos(theta));
    CHECK(p[0] == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)).epsilon(1e-14));
    for (int n = 1; n <= 10; ++n)
      CHECK(p[n] == doctest::Approx(std::cos(n * theta) * std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-12));
  }
  SUBCASE("orthonormality") {
    for (int d = 2; d <= 8; ++d)
      for (int m = 0; m <= (d == 2 ? 1 : 4); ++m) {
        const SectorBasis basis(d, m, m + 200);
        const QuadratureRule rule = gauss_jacobi(basis.mu(), 210);
        Mat gram = Mat::Zero(basis.size(), basis.size());
        for (std::size_t q = 0; q < rule.size(); ++q) {
          const auto p = basis.evaluate_all(rule.nodes[q]);
          const Vec v = Eigen::Map<const Vec>(p.data(), static_cast<Eigen::Index>(p.size()));
          gram.noalias() += rule.weights[q] * v * v.transpose();
        }
        CHECK((gram - Mat::Identity(basis.size(), basis.size())).cwiseAbs().maxCoeff() <= 1e-12);
      }
  }
}

TEST_CASE("multiplication-by-t couplings") {
  const auto b3 = mult_by_t_coefficients(SectorBasis(3, 0, 20));
  CHECK(b3[0] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  for (int n = 0; n < 20; ++n)
    CHECK(b3[n] == doctest::Approx((n + 1.0) / std::sqrt((2.0 * n + 1) * (2.0 * n + 3))).epsilon(1e-14));

  const auto b2 = mult_by_t_coefficients(SectorBasis(2, 0, 20));
  CHECK(b2[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  for (int n = 1; n < 20; ++n) CHECK(b2[n] == doctest::Approx(0.5).epsilon(1e-15));

  for (int d = 2; d <= 10; ++d)
    for (int m = 0; m <= (d == 2 ? 1 : 3); ++m) {
      const SectorBasis basis(d, m, m + 60);
      const auto b = mult_by_t_coefficients(basis);
      const QuadratureRule rule = gauss_jacobi(basis.mu(), 70);
      for (int k = 0; k + 1 < basis.size(); ++k) {
        const double brute = integrate(rule, [&](double t) {
          const auto p = basis.evaluate_all(t);
          return t * p[k] * p[k + 1];
        });
        CHECK(std::abs(brute - b[k]) <= 1e-12);
      }
      const auto long_b = mult_by_t_coefficients(SectorBasis(d, m, m + 500));
      for (double v : long_b) CHECK((v > 0.0 && v < 1.0));
      CHECK(std::abs(long_b.back() - 0.5) < 1e-4);
    }
}

TEST_CASE("surface integral of x1^2") {
  for (int d = 2; d <= 8; ++d) {
    const BoundaryGrid grid = zonal_grid(d, 10, unit_vector(d));
    double sum = 0.0;
    for (std::size_t q = 0; q < grid.size(); ++q) sum += grid.weights[q] * grid.points(0, q) * grid.points(0, q);
    CHECK(std::abs(sum - sphere_area(d) / d) <= 1e-12 * sphere_area(d));
  }
}

TEST_CASE("harmonic basis on dense grids") {
  for (int d : {2, 3}) {
    const Vec axis = d == 2 ? Vec{{0.6, 0.8}} : Vec{{0.0, 0.6, -0.8}};
    const HarmonicBasis basis(d, 12, axis);
    const BoundaryGrid grid = default_grid(d, 12, axis);
    const Mat samples = basis.sample(grid);
    Vec w = Eigen::Map<const Vec>(grid.weights.data(), static_cast<Eigen::Index>(grid.size()));
    const Mat gram = samples.transpose() * w.asDiagonal() * samples;
    CHECK((gram - Mat::Identity(basis.size(), basis.size())).cwiseAbs().maxCoeff() <= 1e-12);
    std::size_t expected = 0;
    for (int n = 0; n <= 12; ++n) expected += harmonic_dimension(n, d);
    CHECK(basis.size() == expected);

    // Coefficients of a basis function recover a unit vector.
    std::vector<double> values(grid.size());
    for (std::size_t q = 0; q < grid.size(); ++q) values[q] = samples(static_cast<Eigen::Index>(q), 7);
    const Vec coeffs = basis.analyze(grid, values);
    CHECK(std::abs(coeffs[7] - 1.0) <= 1e-12);
    CHECK(coeffs.cwiseAbs().sum() - 1.0 <= 1e-10);
  }
  const HarmonicBasis basis(3, 4, unit_vector(3));
  CHECK_THROWS_AS(basis.sample(circle_grid(16)), GridMismatchError);
  CHECK_THROWS_AS(basis.analyze(sphere_grid(6, 12), std::vector<double>(5)), GridMismatchError);
}
