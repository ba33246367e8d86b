#include <doctest.h>

#include <cmath>
#include <random>

#include "kelvin_eit/dnmaps.hpp"
#include "kelvin_eit/errors.hpp"
#include "oracles.hpp"

using namespace kelvin_eit;

namespace {

Vec vec2(double x, double y) { return Vec{{x, y}}; }
Vec vec3(double x, double y, double z) { return Vec{{x, y, z}}; }

}  // namespace

TEST_CASE("DN eigenvalues: closed values") {
  CHECK(lambda_hat(0, 3, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lambda_hat(0, 2, std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(lambda_diff(1, 3, 0.5) - 3.0 / 7.0) <= 1e-15);
  CHECK(std::abs(lambda_diff(0, 3, 0.5) - 1.0) <= 1e-15);
  // r -> 0: lambda_hat_n -> n. For d = 3, n = 0 the gap is r / (1 - r) itself.
  for (int n = 1; n < 10; ++n) CHECK(std::abs(lambda_hat(n, 3, 1e-9) - n) <= 1e-12 * n);
  CHECK(lambda_hat(0, 3, 1e-9) == doctest::Approx(1e-9 / (1.0 - 1e-9)).epsilon(1e-15));
  for (int d = 4; d <= 6; ++d) CHECK(lambda_hat(0, d, 1e-9) <= 1e-12);
  CHECK_THROWS_AS(lambda_diff(0, 3, 1.0), DomainError);
  CHECK_THROWS_AS(lambda_hat(0, 3, 0.0), DomainError);
}

TEST_CASE("DN eigenvalues: printed form, decay and difference") {
  for (int d = 2; d <= 6; ++d)
    for (double r : {0.1, 0.5, 0.9})
      for (int n = 0; n <= 50; ++n) {
        const double lambda = lambda_diff(n, d, r);
        if (n < 50) CHECK(lambda_diff(n + 1, d, r) < lambda);
        const double hat = lambda_hat(n, d, r);
        CHECK(std::abs(lambda - (hat - n)) <= 1e-12 * std::max(hat, 1.0));
        if (std::pow(r, 2.0 - d - 2.0 * n) < 1e250)
          CHECK(std::abs(lambda - oracle::lambda_printed(n, d, r)) <= 1e-13 * lambda);
      }
}

TEST_CASE("DN eigenvalues: overflow safety and limits") {
  for (int d : {2, 3, 7})
    for (double r : {0.3, 0.999, 1.0 - 1e-12})
      for (int n : {0, 1, 100, 5000, 10000}) {
        const double lambda = lambda_diff(n, d, r);
        const double hat = lambda_hat(n, d, r);
        CHECK(std::isfinite(lambda));
        CHECK(std::isfinite(hat));
        CHECK(lambda >= 0.0);
        if (r > 0.99) CHECK(lambda > 0.0);
      }
  for (int d : {2, 3, 5}) {
    CHECK(lambda_ratio(1, d, 1e-6) < 1e-3);
    CHECK(std::abs(lambda_ratio(1, d, 1.0 - 1e-6) - 1.0) < 1e-3);
    for (int n = 0; n < 5; ++n) {
      double previous = 0.0;
      for (double r = 0.05; r < 1.0; r += 0.05) {
        CHECK(lambda_diff(n, d, r) > previous);
        previous = lambda_diff(n, d, r);
      }
    }
  }
}

TEST_CASE("eigenvalue table and convergence degree") {
  const EigenvalueTable table = eigenvalue_table(3, 0.5, 2);
  REQUIRE(table.lambda.size() == 3);
  CHECK(table.multiplicity[0] == 1);
  CHECK(table.multiplicity[1] == 3);
  CHECK(table.multiplicity[2] == 5);
  CHECK(std::abs(table.lambda[1] - 3.0 / 7.0) < 1e-15);
  const int N = convergence_degree(3, 0.5);
  CHECK(lambda_diff(N, 3, 0.5) < 1e-6 * lambda_diff(0, 3, 0.5));
  CHECK(lambda_diff(N - 1, 3, 0.5) >= 1e-6 * lambda_diff(0, 3, 0.5));
}

TEST_CASE("radial profiles") {
  CHECK(radial_profile(0, 3, 0.5)(0.75) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  for (int d = 2; d <= 5; ++d)
    for (double r : {0.1, 0.5, 0.9})
      for (int n = 0; n <= 12; ++n) {
        const RadialProfile profile(n, d, r);
        CHECK(std::abs(profile(1.0) - 1.0) <= 1e-12);
        CHECK(std::abs(profile(r)) <= 1e-12);
        const double h = 1e-5;
        const double fd = (3.0 * profile(1.0) - 4.0 * profile(1.0 - h) + profile(1.0 - 2.0 * h)) / (2.0 * h);
        CHECK(std::abs(fd - lambda_hat(n, d, r)) <= 1e-6 * std::max(1.0, lambda_hat(n, d, r)));
        CHECK(std::abs(profile.derivative(1.0) - lambda_hat(n, d, r)) <= 1e-12 * std::max(1.0, lambda_hat(n, d, r)));
        const auto [value, slope] = oracle::shoot_radial(n, d, r, 0.5 * (1.0 + r));
        CHECK(std::abs(profile(0.5 * (1.0 + r)) - value) <= 1e-9);
        CHECK(std::abs(lambda_hat(n, d, r) - slope) <= 1e-8 * std::max(1.0, slope));
      }
  CHECK_THROWS_AS(radial_profile(1, 3, 0.5)(0.4), DomainError);
  CHECK_THROWS_AS(radial_profile(1, 3, 0.5)(1.1), DomainError);
}

TEST_CASE("concentric forward solver") {
  const HarmonicBasis basis(3, 6, unit_vector(3));
  Vec coeffs = Vec::Zero(static_cast<Eigen::Index>(basis.size()));
  coeffs[0] = std::sqrt(4.0 * std::numbers::pi);  // constant boundary data 1
  CHECK(forward_solve_concentric(3, 0.5, basis, coeffs, vec3(0.75, 0, 0)) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (auto& c : coeffs) c = normal(rng);
  const ConcentricSolution u(0.5, basis, coeffs);
  for (int k = 0; k < 20; ++k) {
    const Vec dir = vec3(normal(rng), normal(rng), normal(rng)).normalized();
    CHECK(std::abs(u(0.5 * dir)) <= 1e-12);
    CHECK(std::abs(u(dir) - basis.synthesize(coeffs, dir)) <= 1e-12);
    const Vec x = 0.75 * dir;
    const double scale = coeffs.cwiseAbs().sum();
    CHECK(std::abs(oracle::fd_laplacian([&](const Vec& y) { return u(y); }, x)) <= 1e-4 * scale);
  }
  CHECK_THROWS_AS(u(vec3(0.1, 0, 0)), DomainError);
}

TEST_CASE("nonconcentric forward solver") {
  for (int d : {2, 3}) {
    const Vec a = d == 2 ? vec2(0.3, 0.4) : vec3(0.1, -0.15, 0.1);
    const BallCorrespondence corr = correspondence_from_concentric(a, 0.4);
    const int L = d == 2 ? 40 : 20;
    const HarmonicBasis basis(d, L, corr.e_a);
    const BoundaryGrid grid = default_grid(d, 2 * L, corr.e_a);
    const ScalarField f = [](const Vec& x) { return 1.0 + x[0] - 0.5 * x[1] * x[1] + x[0] * x[1]; };
    const NonconcentricSolution u(corr, basis, grid, f);
    for (int k = 0; k < 12; ++k) {
      const double t = 0.53 * k;
      Vec dir = Vec::Zero(d);
      dir[0] = std::cos(t);
      dir[1] = std::sin(t) * (d == 2 ? 1.0 : std::cos(2 * t));
      if (d == 3) dir[2] = std::sin(t) * std::sin(2 * t);
      CHECK(std::abs(u(corr.C + corr.R * dir)) <= 1e-10);
      CHECK(std::abs(u(dir) - f(dir)) <= 1e-8);
      const Vec x = corr.C + (corr.R + 0.5 * (1.0 - corr.C.norm() - corr.R)) * dir;
      CHECK(std::abs(oracle::fd_laplacian([&](const Vec& y) { return u(y); }, x)) <= 1e-4 * 4.0);
    }
    CHECK_THROWS_AS(u(corr.C), DomainError);
  }
}

TEST_CASE("DN difference operators") {
  SUBCASE("concentric eigenfunctions") {
    const HarmonicBasis basis(3, 8, unit_vector(3));
    const BoundaryGrid grid = default_grid(3, 8, unit_vector(3));
    const Mat samples = basis.sample(grid);
    for (Eigen::Index i : {0, 3, 10, 40}) {
      const ScalarField f = [&](const Vec& x) { return basis.evaluate_all(x)[i]; };
      const auto out = apply_dn_difference(0.5, basis, grid, f);
      const double lambda = lambda_diff(basis.indices()[static_cast<std::size_t>(i)].degree, 3, 0.5);
      for (std::size_t q = 0; q < grid.size(); ++q)
        CHECK(std::abs(out[q] - lambda * samples(static_cast<Eigen::Index>(q), i)) <= 1e-12);
    }
  }
  SUBCASE("nonconcentric: three routes agree") {
    for (int d : {2, 3}) {
      const Vec a = d == 2 ? vec2(-0.35, 0.2) : vec3(0.2, 0.1, -0.1);
      const BallCorrespondence corr = correspondence_from_concentric(a, 0.45);
      const int L = d == 2 ? 60 : 20;
      const HarmonicBasis basis(d, L, corr.e_a);
      const BoundaryGrid grid = default_grid(d, 2 * L, corr.e_a);
      const ScalarField f = [](const Vec& x) { return std::exp(0.5 * x[0]) * (1.0 + x[1]); };
      const auto direct = apply_dn_difference(corr, basis, grid, f);
      const auto series = apply_dn_difference_series(corr, basis, grid, f);
      std::vector<double> samples(grid.size());
      for (std::size_t q = 0; q < grid.size(); ++q) samples[q] = f(grid.point(q));
      const auto from_samples = apply_dn_difference(corr, basis, grid, samples);
      const auto full = dn_full_nonconcentric(corr, basis, grid, f);
      const auto free = dn_free(basis, grid, f);
      const auto conjugated_free = dn_free_conjugated(corr, basis, grid, f);
      for (std::size_t q = 0; q < grid.size(); ++q) {
        CHECK(std::abs(direct[q] - series[q]) <= 1e-8);
        CHECK(std::abs(direct[q] - from_samples[q]) <= 1e-8);
        CHECK(std::abs(full[q] - free[q] - direct[q]) <= 1e-8);
        CHECK(std::abs(conjugated_free[q] - free[q]) <= 1e-8);
      }
      CHECK_THROWS_AS(apply_dn_difference(corr, basis, grid, std::vector<double>(3)), GridMismatchError);
    }
  }
  SUBCASE("Kelvin-Galerkin matrix is diagonal") {
    const BallCorrespondence corr = correspondence_from_concentric(vec2(0.4, -0.3), 0.6);
    const HarmonicBasis basis(2, 12, corr.e_a);
    const Mat galerkin = kelvin_galerkin_matrix(corr, basis, circle_grid(512));
    for (Eigen::Index i = 0; i < galerkin.rows(); ++i)
      for (Eigen::Index j = 0; j < galerkin.cols(); ++j) {
        const double expected =
            i == j ? lambda_diff(basis.indices()[static_cast<std::size_t>(i)].degree, 2, corr.r) : 0.0;
        CHECK(std::abs(galerkin(i, j) - expected) <= 1e-8);
      }
  }
}
