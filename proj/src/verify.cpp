#include "kelvin_eit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "kelvin_eit/bounds.hpp"
#include "kelvin_eit/dnmaps.hpp"
#include "kelvin_eit/errors.hpp"
#include "kelvin_eit/geometry.hpp"
#include "kelvin_eit/harmonics.hpp"
#include "kelvin_eit/moebius2d.hpp"

namespace kelvin_eit {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Vec random_unit(Rng& rng, int d) {
  std::normal_distribution<double> normal;
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = normal(rng);
  return v.normalized();
}

Vec random_in_ball(Rng& rng, int d, double lo, double hi) {
  return uniform(rng, lo, hi) * random_unit(rng, d);
}

struct Check {
  std::string name;
  double tol;
  std::function<double(Rng&)> error;
};

SuiteResult run_suite(const std::string& suite, const std::vector<Check>& checks, Rng& rng) {
  SuiteResult result{suite, {}};
  for (const auto& check : checks) {
    CheckResult out;
    out.name = check.name;
    out.tol = check.tol;
    try {
      out.error = check.error(rng);
      out.passed = std::isfinite(out.error) && out.error <= check.tol;
    } catch (const std::exception& e) {
      out.message = e.what();
      out.error = std::numeric_limits<double>::infinity();
    }
    result.checks.push_back(out);
  }
  return result;
}

BallCorrespondence random_correspondence(Rng& rng, int d) {
  return correspondence_from_concentric(random_in_ball(rng, d, 0.05, 0.9), uniform(rng, 0.05, 0.95));
}

std::vector<Check> geometry_checks() {
  return {
      {"inversion is an involution", 1e-12,
       [](Rng& rng) {
         double worst = 0.0;
         for (int i = 0; i < 1000; ++i) {
           const int d = 2 + i % 4;
           const InversionMap map(random_in_ball(rng, d, 0.0, 2.0), uniform(rng, 0.2, 2.0));
           const Vec x = map.center() + random_in_ball(rng, d, 0.3, 3.0);
           worst = std::max(worst, (map.apply(map.apply(x)) - x).norm() / (1.0 + x.norm()));
         }
         return worst;
       }},
      {"product identity |I(x)-c||x-c| = R^2", 1e-12,
       [](Rng& rng) {
         double worst = 0.0;
         for (int i = 0; i < 1000; ++i) {
           const int d = 2 + i % 4;
           const InversionMap map(random_in_ball(rng, d, 0.0, 2.0), uniform(rng, 0.2, 2.0));
           const Vec x = map.center() + random_in_ball(rng, d, 0.3, 3.0);
           const double product = (map.apply(x) - map.center()).norm() * (x - map.center()).norm();
           const double r2 = map.radius() * map.radius();
           worst = std::max(worst, std::abs(product - r2) / r2);
         }
         return worst;
       }},
      {"Jacobian: J^2 = g^4 id and det J = -g^{2d}", 1e-12,
       [](Rng& rng) {
         double worst = 0.0;
         for (int i = 0; i < 1000; ++i) {
           const int d = 2 + i % 4;
           const InversionMap map(random_in_ball(rng, d, 0.0, 2.0), uniform(rng, 0.2, 2.0));
           const Vec x = map.center() + random_in_ball(rng, d, 0.3, 3.0);
           const Mat J = jacobian(map, x);
           const double g = map.factor(x);
           const double g4 = std::pow(g, 4);
           worst = std::max(worst, (J * J - g4 * Mat::Identity(d, d)).norm() / g4);
           worst = std::max(worst, std::abs(J.determinant() + std::pow(g, 2 * d)) / std::pow(g, 2 * d));
           worst = std::max(worst, (J - J.transpose()).norm() / (g * g));
         }
         return worst;
       }},
      {"boundary inversion formula", 1e-12,
       [](Rng& rng) {
         double worst = 0.0;
         for (int i = 0; i < 1000; ++i) {
           const int d = 2 + i % 4;
           const BallCorrespondence corr = random_correspondence(rng, d);
           const Vec x = random_unit(rng, d);
           worst = std::max(worst, (boundary_inversion(corr, x) - corr.apply(x)).norm());
         }
         return worst;
       }},
      {"correspondence round trip", 1e-12,
       [](Rng& rng) {
         double worst = 0.0;
         for (int i = 0; i < 1000; ++i) {
           const int d = 2 + i % 4;
           const BallCorrespondence corr = random_correspondence(rng, d);
           const BallCorrespondence back = correspondence_from_ball(corr.C, corr.R);
           worst = std::max({worst, (back.a - corr.a).norm(), std::abs(back.r - corr.r)});
         }
         return worst;
       }},
      {"zonal identity for g_a^{-2}", 1e-12,
       [](Rng& rng) {
         double worst = 0.0;
         for (int i = 0; i < 1000; ++i) {
           const int d = 2 + i % 4;
           const BallCorrespondence corr = random_correspondence(rng, d);
           const BoundaryMultipliers mult(corr);
           const Vec x = random_unit(rng, d);
           const double g = mult.g(x);
           worst = std::max(worst, std::abs(1.0 / (g * g) - mult.g_inv_sq_zonal(x)) * g * g);
         }
         return worst;
       }},
  };
}

std::vector<Check> harmonics_checks() {
  return {
      {"sector bases are orthonormal", 1e-12,
       [](Rng&) {
         double worst = 0.0;
         for (int d = 2; d <= 6; ++d)
           for (int m = 0; m <= (d == 2 ? 1 : 3); ++m) {
             const SectorBasis basis(d, m, m + 60);
             const QuadratureRule rule = gauss_jacobi(basis.mu(), 70);
             Mat gram = Mat::Zero(basis.size(), basis.size());
             for (std::size_t q = 0; q < rule.size(); ++q) {
               const auto p = basis.evaluate_all(rule.nodes[q]);
               const Vec pv = Eigen::Map<const Vec>(p.data(), static_cast<Eigen::Index>(p.size()));
               gram += rule.weights[q] * pv * pv.transpose();
             }
             worst = std::max(worst, (gram - Mat::Identity(basis.size(), basis.size())).cwiseAbs().maxCoeff());
           }
         return worst;
       }},
      {"Gauss-Jacobi exactness on monomials", 1e-13,
       [](Rng&) {
         double worst = 0.0;
         for (double mu : {-0.5, 0.0, 0.5, 1.0, 2.5}) {
           const int count = 12;
           const QuadratureRule rule = gauss_jacobi(mu, count);
           for (int k = 0; k <= 2 * count - 1; ++k) {
             double sum = 0.0;
             for (std::size_t q = 0; q < rule.size(); ++q) sum += rule.weights[q] * std::pow(rule.nodes[q], k);
             // int t^{2j} (1-t^2)^mu dt = B(j + 1/2, mu + 1)
             const double exact =
                 k % 2 ? 0.0
                       : std::exp(std::lgamma(0.5 * k + 0.5) + std::lgamma(mu + 1.0) - std::lgamma(0.5 * k + mu + 1.5));
             worst = std::max(worst, std::abs(sum - exact) / std::max(1.0, exact));
           }
         }
         return worst;
       }},
      {"surface integral of x1^2", 1e-12,
       [](Rng&) {
         double worst = 0.0;
         for (int d = 2; d <= 8; ++d) {
           const BoundaryGrid grid = zonal_grid(d, 8, unit_vector(d));
           double sum = 0.0;
           for (std::size_t q = 0; q < grid.size(); ++q) sum += grid.weights[q] * std::pow(grid.points(0, q), 2);
           const double exact = sphere_area(d) / d;
           worst = std::max(worst, std::abs(sum - exact) / exact);
         }
         return worst;
       }},
  };
}

std::vector<Check> dnmaps_checks() {
  return {
      {"strict decay of lambda_n", 0.0,
       [](Rng&) {
         double violations = 0.0;
         for (int d = 2; d <= 6; ++d)
           for (double r : {0.1, 0.5, 0.9})
             for (int n = 0; n < 50; ++n)
               if (!(lambda_diff(n + 1, d, r) < lambda_diff(n, d, r))) violations += 1.0;
         return violations;
       }},
      {"lambda_n = lambda_hat_n - n", 1e-12,
       [](Rng&) {
         double worst = 0.0;
         for (int d = 2; d <= 6; ++d)
           for (double r : {0.1, 0.5, 0.9})
             for (int n = 0; n <= 50; ++n) {
               const double hat = lambda_hat(n, d, r);
               worst = std::max(worst, std::abs(lambda_diff(n, d, r) - (hat - n)) / std::max(hat, 1.0));
             }
         return worst;
       }},
      {"radial profile boundary values", 1e-12,
       [](Rng& rng) {
         double worst = 0.0;
         for (int i = 0; i < 200; ++i) {
           const double r = uniform(rng, 0.05, 0.95);
           const RadialProfile profile(i % 20, 2 + i % 5, r);
           worst = std::max({worst, std::abs(profile(1.0) - 1.0), std::abs(profile(r))});
         }
         return worst;
       }},
      {"Galerkin diagonalization (d = 2, degree 8)", 1e-8,
       [](Rng& rng) {
         const BallCorrespondence corr = random_correspondence(rng, 2);
         const HarmonicBasis basis(2, 8, corr.e_a);
         const Mat galerkin = kelvin_galerkin_matrix(corr, basis, circle_grid(256));
         double worst = 0.0;
         for (Eigen::Index i = 0; i < galerkin.rows(); ++i)
           for (Eigen::Index j = 0; j < galerkin.cols(); ++j) {
             const double expected =
                 i == j ? lambda_diff(basis.indices()[static_cast<std::size_t>(i)].degree, 2, corr.r) : 0.0;
             worst = std::max(worst, std::abs(galerkin(i, j) - expected));
           }
         return worst;
       }},
  };
}

std::vector<Check> bounds_checks() {
  return {
      {"bound sandwich", 1e-6,
       [](Rng&) {
         double worst = 0.0;
         for (int d : {2, 3, 5})
           for (double rho : {0.2, 0.5, 0.8})
             for (double r : {0.2, 0.5, 0.8}) {
               const double ratio = numeric_norm_ratio(rho, d, r).ratio;
               worst = std::max(worst, lower_bound(rho) - ratio);
               worst = std::max(worst, ratio - mid_bound(rho, d, r));
               worst = std::max(worst, mid_bound(rho, d, r) - upper_bound(rho));
             }
         return worst;
       }},
      {"C_d increasing in d", 0.0,
       [](Rng&) {
         double violations = 0.0;
         for (int i = 1; i <= 99; ++i)
           for (int d = 2; d < 15; ++d)
             if (!(least_upper_bound(0.01 * i, d) < least_upper_bound(0.01 * i, d + 1))) violations += 1.0;
         return violations;
       }},
      {"worse bound closed form for d = 2", 1e-10,
       [](Rng&) {
         double worst = 0.0;
         for (int i = 1; i <= 9; ++i) {
           const double rho = 0.1 * i;
           worst = std::max(worst, std::abs(worse_bound(rho, 2) -
                                            std::sqrt((1 - rho * rho) / (1 + rho * rho))));
         }
         return worst;
       }},
  };
}

std::vector<Check> moebius_checks() {
  const auto random_pair = [](Rng& rng) {
    const Complex a = std::polar(uniform(rng, 0.05, 0.95), uniform(rng, 0.0, 2.0 * std::numbers::pi));
    const Complex x = std::polar(std::sqrt(uniform(rng, 0.0, 1.0)), uniform(rng, 0.0, 2.0 * std::numbers::pi));
    return std::pair{a, x};
  };
  return {
      {"|I_a(x)| = |M_a(x)|", 1e-13,
       [=](Rng& rng) {
         double worst = 0.0;
         for (int i = 0; i < 1000; ++i) {
           const auto [a, x] = random_pair(rng);
           worst = std::max(worst, std::abs(std::abs(inversion_complex(a, x)) - std::abs(moebius_apply(a, x))));
         }
         return worst;
       }},
      {"I_a = Ref_a o M_a", 1e-13,
       [=](Rng& rng) {
         double worst = 0.0;
         for (int i = 0; i < 1000; ++i) {
           const auto [a, x] = random_pair(rng);
           worst = std::max(worst, reflection_identity_residual(a, x));
         }
         return worst;
       }},
      {"circle intersection report", 1e-12,
       [=](Rng& rng) {
         double worst = 0.0;
         for (int i = 0; i < 1000; ++i) {
           const auto [a, x] = random_pair(rng);
           worst = std::max(worst, intersection_check(a, x).max_residual);
         }
         return worst;
       }},
      {"rotation covariance", 1e-13,
       [=](Rng& rng) {
         double worst = 0.0;
         for (int i = 0; i < 1000; ++i) {
           const auto [a, x] = random_pair(rng);
           worst = std::max(worst, rotation_covariance_residual(std::abs(a), std::arg(a), x));
         }
         return worst;
       }},
  };
}

}  // namespace

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<std::string> suite_names() { return {"geometry", "harmonics", "dnmaps", "bounds", "moebius"}; }

std::vector<SuiteResult> run_verification(std::uint64_t seed, const std::vector<std::string>& only) {
  const auto names = suite_names();
  for (const auto& name : only)
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw DomainError("unknown verification suite: " + name);

  const auto selected = [&](const std::string& name) {
    return only.empty() || std::find(only.begin(), only.end(), name) != only.end();
  };
  const std::vector<std::pair<std::string, std::function<std::vector<Check>()>>> suites = {
      {"geometry", geometry_checks},
      {"harmonics", harmonics_checks},
      {"dnmaps", dnmaps_checks},
      {"bounds", bounds_checks},
      {"moebius", moebius_checks},
  };

  std::vector<SuiteResult> results;
  for (std::size_t i = 0; i < suites.size(); ++i) {
    if (!selected(suites[i].first)) continue;
    // Each suite gets its own stream so --only does not shift the samples.
    Rng rng(seed + 0x9E3779B97F4A7C15ULL * (i + 1));
    results.push_back(run_suite(suites[i].first, suites[i].second(), rng));
  }
  return results;
}

}  // namespace kelvin_eit
