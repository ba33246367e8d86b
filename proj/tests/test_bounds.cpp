#include <doctest.h>

#include <cmath>

#include "kelvin_eit/bounds.hpp"
#include "kelvin_eit/dnmaps.hpp"
#include "kelvin_eit/errors.hpp"
#include "oracles.hpp"

using namespace kelvin_eit;

TEST_CASE("closed-form bounds") {
  CHECK(lower_bound(0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(upper_bound(0.5) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(std::abs(lower_bound(1e-12) - 1.0) < 1e-11);
  CHECK(std::abs(upper_bound(1e-12) - 1.0) < 1e-11);
  CHECK(lower_bound(1.0 - 1e-12) < 1e-11);
  CHECK(upper_bound(1.0 - 1e-12) < 1e-11);
  CHECK_THROWS_AS(lower_bound(1.0), DomainError);
  CHECK_THROWS_AS(upper_bound(0.0), DomainError);

  CHECK(std::abs(least_upper_bound(0.5, 2) - 3.0 / 7.0) <= 1e-15);
  CHECK(std::abs(least_upper_bound(0.5, 1000000) - 0.6) <= 1e-5);
  CHECK(std::abs(least_upper_bound(1e-9, 3) - 1.0) <= 1e-12);

  CHECK(std::abs(mid_bound(0.5, 3, 1e-9) - upper_bound(0.5)) <= 1e-12);
  CHECK(std::abs(mid_bound(0.5, 2, 1.0 - 1e-9) - 3.0 / 7.0) <= 1e-7);
  for (int d : {2, 3, 4, 5, 8})
    for (int i = 1; i <= 9; ++i)
      for (int j = 1; j <= 9; ++j) {
        const double rho = 0.1 * i;
        const double mid = mid_bound(rho, d, 0.1 * j);
        CHECK(least_upper_bound(rho, d) <= mid + 1e-15);
        CHECK(mid <= upper_bound(rho) + 1e-15);
      }
}

TEST_CASE("worse bound") {
  for (int i = 1; i <= 9; ++i) {
    const double rho = 0.1 * i;
    CHECK(std::abs(worse_bound(rho, 2) - std::sqrt((1 - rho * rho) / (1 + rho * rho))) <= 1e-10);
    double previous = worse_bound(rho, 2);
    for (int d = 3; d <= 50; ++d) {
      const double value = worse_bound(rho, d);
      CHECK(value >= upper_bound(rho) - 1e-12);
      CHECK(value <= previous + 1e-10);
      previous = value;
    }
  }
  CHECK(std::abs(worse_bound(0.5, 2) - std::sqrt(0.6)) <= 1e-12);
}

TEST_CASE("sector operator") {
  const SectorOperator op = sector_operator(0.5, 3, 0.5, 0, 10);
  REQUIRE(op.matrix.size() == 11);
  CHECK(op.matrix.diag[0] == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(op.matrix.diag[1] == doctest::Approx(5.0 / 3.0 * 3.0 / 7.0).epsilon(1e-14));
  // c1' b_0 sqrt(lambda_0 lambda_1) / lambda_0 = -(4/3)(1/sqrt 3) sqrt(3/7)
  CHECK(op.matrix.off[0] == doctest::Approx(-4.0 / 3.0 / std::sqrt(7.0)).epsilon(1e-14));
  const auto spectrum = eigen_first_components(op.matrix);
  for (double v : spectrum.values) CHECK(v > 0.0);
  CHECK(std::abs(spectrum.values.back() - largest_eigenvalue(op.matrix)) <= 1e-13);
  CHECK_THROWS_AS(sector_operator(0.5, 2, 0.5, 2, 10), DomainError);
}

TEST_CASE("numeric norm ratio") {
  SUBCASE("concentric limit") {
    for (int d : {2, 3, 6})
      for (double r : {0.1, 0.5, 0.9}) CHECK(std::abs(numeric_norm_ratio(1e-8, d, r).ratio - 1.0) <= 1e-6);
  }
  SUBCASE("r -> 0 reaches the upper bound") {
    NormRatioConfig config;
    config.truncation = 64;
    CHECK(std::abs(numeric_norm_ratio(0.5, 3, 1e-2, config).ratio - 0.6) <= 1e-3);
  }
  SUBCASE("dense oracle, d = 2") {
    const NormRatioResult result = numeric_norm_ratio(0.4, 2, 0.6);
    CHECK(result.converged);
    CHECK(result.attaining_sector == 0);
    const int L = 60;
    NormRatioConfig fixed;
    fixed.truncation = L;
    const double tridiagonal = 1.0 / numeric_norm_ratio(0.4, 2, 0.6, fixed).ratio;
    CHECK(std::abs(oracle::dense_norm_ratio_denominator(2, 0.4, 0.6, L) - tridiagonal) <= 1e-8);
    CHECK(std::abs(tridiagonal - 1.0 / result.ratio) <= 1e-8);
  }
  SUBCASE("fixed truncation reports convergence against K/2") {
    NormRatioConfig config;
    config.truncation = 4000;
    const NormRatioResult result = numeric_norm_ratio(0.5, 3, 0.999, config);
    CHECK(result.history.size() == 2);
    CHECK(result.truncation == 4000);
  }
  CHECK_THROWS_AS(numeric_norm_ratio(0.5, 3, 1.0), DomainError);
}

TEST_CASE("weighted operator norms") {
  const Vec a{{0.4, 0.0}};
  const BallCorrespondence corr = correspondence_from_concentric(a, 0.6);
  const int L = 48;
  const double lambda0 = lambda_diff(0, 2, 0.6);
  CHECK(std::abs(weighted_operator_norm(corr, 1.0, -1.0, false, L) - lambda0) <= 1e-6);
  const NormRatioResult ratio = numeric_norm_ratio(0.4, 2, 0.6);
  CHECK(std::abs(weighted_operator_norm(corr, 0.0, 0.0, false, L) - ratio.denominator) <= 1e-6);
  for (auto [s, t] : {std::pair{1.0, -1.0}, std::pair{0.0, 0.0}, std::pair{0.5, -0.5}}) {
    const double nonconcentric = weighted_operator_norm(corr, s, t, false, L);
    const double concentric = weighted_operator_norm(corr, 1.0 - s, -1.0 - t, true, L);
    CHECK(std::abs(nonconcentric - concentric) <= 1e-6);
  }
  CHECK_THROWS_AS(weighted_operator_norm(corr, 0.0, 0.0, false, 8, sphere_grid(8, 16)), GridMismatchError);
}

TEST_CASE("sweep") {
  NormRatioConfig config;
  const auto reports = sweep({0.5, 0.2}, {0.7, 0.3}, {3, 2}, config, 2);
  REQUIRE(reports.size() == 8);
  CHECK(reports[0].d == 2);
  CHECK(reports[0].rho == 0.2);
  CHECK(*reports[0].r == 0.3);
  CHECK(*reports[1].r == 0.7);
  CHECK(reports[7].d == 3);
  for (const auto& rep : reports) {
    CHECK(rep.error.empty());
    CHECK(rep.converged);
    CHECK(rep.lower - 1e-8 <= *rep.ratio_numeric);
    CHECK(*rep.ratio_numeric <= *rep.mid + 1e-6);
    CHECK(*rep.mid <= rep.upper + 1e-12);
    CHECK(rep.least_upper <= *rep.mid);
  }
  const auto serial = sweep({0.5, 0.2}, {0.7, 0.3}, {3, 2}, config, 1);
  for (std::size_t i = 0; i < reports.size(); ++i) CHECK(serial[i].ratio_numeric == reports[i].ratio_numeric);

  const auto bounds_only = sweep({0.5}, {}, {2}, config);
  REQUIRE(bounds_only.size() == 1);
  CHECK(!bounds_only[0].ratio_numeric.has_value());
  CHECK(!bounds_only[0].mid.has_value());

  const auto bad = sweep({1.5, 0.5}, {0.5}, {2}, config);
  CHECK(!bad[1].error.empty());
  CHECK(bad[0].error.empty());
}
