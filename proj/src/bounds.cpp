#include "kelvin_eit/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "kelvin_eit/dnmaps.hpp"
#include "kelvin_eit/errors.hpp"

namespace kelvin_eit {

namespace {

void check_rho(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("depth parameter rho must lie in (0, 1)");
}

void check_dim(int d) {
  if (d < 2) throw DomainError("dimension must be at least 2");
}

// Sector operator with trailing rows whose eigenvalue ratio underflowed
// removed; they form a zero block and do not affect the top eigenvalue.
SymTridiagonal trimmed(SymTridiagonal t) {
  std::size_t n = t.size();
  while (n > 1 && t.diag[n - 1] == 0.0) --n;
  t.diag.resize(n);
  t.off.resize(n - 1);
  return t;
}

struct SectorScan {
  double value = 0.0;
  int sector = 0;
  std::vector<SectorMaximum> sectors;
};

SectorScan scan_sectors(double rho, int d, double r, int K, const NormRatioConfig& config) {
  SectorScan scan;
  const int last = std::min(config.max_sector, max_sector_for_dim(d));
  int decreases = 0;
  double previous = std::numeric_limits<double>::infinity();
  for (int m = 0; m <= last; ++m) {
    const SectorOperator op = sector_operator(rho, d, r, m, K);
    const double top = largest_eigenvalue(trimmed(op.matrix));
    scan.sectors.push_back({m, top});
    if (m == 0 || top > scan.value) {
      scan.value = top;
      scan.sector = m;
    }
    decreases = top < previous ? decreases + 1 : 0;
    previous = top;
    if (config.early_exit && decreases >= 2) break;
  }
  return scan;
}

}  // namespace

double lower_bound(double rho) {
  check_rho(rho);
  return (1.0 - rho) / (1.0 + rho);
}

double upper_bound(double rho) {
  check_rho(rho);
  return (1.0 - rho * rho) / (1.0 + rho * rho);
}

double mid_bound(double rho, int d, double r) {
  check_rho(rho);
  check_dim(d);
  const double x = lambda_ratio(1, d, r);
  const double p = 1.0 - rho * rho;
  const double q = 1.0 + rho * rho;
  return std::sqrt(p * p * d / (q * q * d + 4.0 * rho * rho * x * (x + 2.0)));
}

double least_upper_bound(double rho, int d) {
  check_rho(rho);
  check_dim(d);
  const double p = 1.0 - rho * rho;
  const double q = 1.0 + rho * rho;
  return std::sqrt(p * p * d / (q * q * d + 12.0 * rho * rho));
}

double worse_bound(double rho, int d) {
  check_rho(rho);
  check_dim(d);
  const double mu = 0.5 * (d - 3);
  const auto integral = [&](int count) {
    const QuadratureRule rule = gauss_jacobi(mu, count);
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k)
      sum += rule.weights[k] / (1.0 + rho * rho - 2.0 * rho * rule.nodes[k]);
    return sum;
  };
  double previous = integral(32);
  double value = previous;
  bool converged = false;
  for (int count = 64; count <= 8192; count *= 2) {
    value = integral(count);
    if (std::abs(value - previous) <= 1e-12 * std::abs(value)) {
      converged = true;
      break;
    }
    previous = value;
  }
  if (!converged) throw DomainError("slice integral did not converge");
  const double slice = (d - 1) * ball_volume(d - 1) / (d * ball_volume(d));
  return (1.0 - rho * rho) / std::sqrt(1.0 + rho * rho) * std::sqrt(slice * value);
}

int max_sector_for_dim(int d) { return d == 2 ? 1 : std::numeric_limits<int>::max(); }

SectorOperator sector_operator(double rho, int d, double r, int m, int K) {
  check_rho(rho);
  check_dim(d);
  if (m < 0 || m > max_sector_for_dim(d)) throw DomainError("sector index out of range for d");
  if (K < 0) throw DomainError("truncation must be non-negative");

  const double c0 = (1.0 + rho * rho) / (1.0 - rho * rho);
  const double c1 = -2.0 * rho / (1.0 - rho * rho);
  const SectorBasis basis(d, m, m + K);

  std::vector<double> root(K + 1);
  SectorOperator op;
  op.sector = m;
  op.truncation = K;
  op.matrix.diag.resize(K + 1);
  op.matrix.off.resize(K);
  for (int k = 0; k <= K; ++k) {
    const double ratio = lambda_ratio(m + k, d, r);
    op.matrix.diag[k] = c0 * ratio;
    root[k] = std::sqrt(ratio);
  }
  for (int k = 0; k < K; ++k) op.matrix.off[k] = c1 * basis.couplings()[k] * root[k] * root[k + 1];
  return op;
}

NormRatioResult numeric_norm_ratio(double rho, int d, double r, const NormRatioConfig& config) {
  check_rho(rho);
  check_dim(d);
  if (!(r > 0.0 && r < 1.0)) throw DomainError("inclusion radius r must lie in (0, 1)");

  NormRatioResult result;
  result.lambda0 = lambda_diff(0, d, r);

  SectorScan scan;
  if (config.truncation > 0) {
    const int K = config.truncation;
    scan = scan_sectors(rho, d, r, K, config);
    result.truncation = K;
    result.converged = true;
    if (K >= 2) {
      const double coarse = scan_sectors(rho, d, r, K / 2, config).value;
      result.history.push_back({K / 2, coarse});
      result.converged = std::abs(scan.value - coarse) <= config.tol * scan.value;
    }
    result.history.push_back({K, scan.value});
  } else {
    const int cap = std::max(1, config.max_truncation);
    int K = std::min(cap, std::max(128, static_cast<int>(std::ceil(8.0 / (1.0 - r)))));
    scan = scan_sectors(rho, d, r, K, config);
    result.history.push_back({K, scan.value});
    while (true) {
      const int next = std::min(cap, 2 * K);
      if (next == K) break;
      SectorScan refined = scan_sectors(rho, d, r, next, config);
      result.history.push_back({next, refined.value});
      const bool settled = std::abs(refined.value - scan.value) <= config.tol * refined.value;
      scan = std::move(refined);
      K = next;
      if (settled) {
        result.converged = true;
        break;
      }
    }
    result.truncation = K;
  }

  result.attaining_sector = scan.sector;
  result.sectors = std::move(scan.sectors);
  result.ratio = 1.0 / scan.value;
  result.denominator = result.lambda0 * scan.value;
  return result;
}

double weighted_operator_norm(const BallCorrespondence& corr, double s, double t,
                              bool concentric_operator, int max_degree, const BoundaryGrid& grid) {
  const int d = corr.dim;
  if (d != 2 && d != 3) throw DomainError("weighted operator norm needs d = 2 or 3");
  if (grid.dim != d || grid.zonal) throw GridMismatchError("grid does not match the dimension");
  const HarmonicBasis basis(d, max_degree, corr.e_a);

  const auto q_count = static_cast<Eigen::Index>(grid.size());
  const auto n_count = static_cast<Eigen::Index>(basis.size());
  Mat u(q_count, n_count);
  Mat v(q_count, n_count);
  for (Eigen::Index q = 0; q < q_count; ++q) {
    const Vec x = grid.point(static_cast<std::size_t>(q));
    const double g = corr.factor(x);
    const Vec psi = concentric_operator ? basis.evaluate_all(x)
                                        : Vec(std::pow(g, d) * basis.evaluate_all(corr.apply(x)));
    const double root_w = std::sqrt(grid.weights[static_cast<std::size_t>(q)]);
    u.row(q) = (root_w * std::pow(g, t)) * psi.transpose();
    v.row(q) = (root_w * std::pow(g, -s)) * psi.transpose();
  }

  Vec lambda(n_count);
  for (Eigen::Index i = 0; i < n_count; ++i)
    lambda[i] = lambda_diff(basis.indices()[static_cast<std::size_t>(i)].degree, d, corr.r);

  const Mat gram_u = u.transpose() * u;
  const Mat gram_v = v.transpose() * v;
  const Eigen::LLT<Mat> chol(gram_v);
  if (chol.info() != Eigen::Success) throw DomainError("weighted Gram matrix is not positive definite");
  const Mat factor = chol.matrixL();
  const Mat scaled = lambda.asDiagonal() * factor;
  const Mat product = scaled.transpose() * gram_u * scaled;
  const Eigen::SelfAdjointEigenSolver<Mat> eig(product, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

double weighted_operator_norm(const BallCorrespondence& corr, double s, double t,
                              bool concentric_operator, int max_degree) {
  const BoundaryGrid grid = corr.dim == 2 ? circle_grid(512) : sphere_grid(64, 128);
  return weighted_operator_norm(corr, s, t, concentric_operator, max_degree, grid);
}

BoundReport bound_report(double rho, int d, std::optional<double> r, const NormRatioConfig& config) {
  BoundReport report;
  report.rho = rho;
  report.d = d;
  report.r = r;
  try {
    report.lower = lower_bound(rho);
    report.upper = upper_bound(rho);
    report.least_upper = least_upper_bound(rho, d);
    report.worse = worse_bound(rho, d);
    if (r) {
      report.mid = mid_bound(rho, d, *r);
      const NormRatioResult ratio = numeric_norm_ratio(rho, d, *r, config);
      report.ratio_numeric = ratio.ratio;
      report.sector = ratio.attaining_sector;
      report.sectors_scanned = static_cast<int>(ratio.sectors.size());
      report.truncation = ratio.truncation;
      report.converged = ratio.converged;
    }
  } catch (const std::exception& e) {
    report.error = e.what();
    report.converged = false;
  }
  return report;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("KELVIN_EIT_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<BoundReport> sweep(const std::vector<double>& rho_grid, const std::vector<double>& r_grid,
                               const std::vector<int>& d_list, const NormRatioConfig& config,
                               unsigned threads) {
  if (rho_grid.empty() || d_list.empty()) throw DomainError("sweep needs nonempty rho and d grids");

  auto dims = d_list;
  auto rhos = rho_grid;
  auto radii = r_grid;
  std::sort(dims.begin(), dims.end());
  std::sort(rhos.begin(), rhos.end());
  std::sort(radii.begin(), radii.end());

  struct Tuple {
    int d;
    double rho;
    std::optional<double> r;
  };
  std::vector<Tuple> tuples;
  for (int d : dims)
    for (double rho : rhos) {
      if (radii.empty()) tuples.push_back({d, rho, std::nullopt});
      for (double r : radii) tuples.push_back({d, rho, r});
    }

  std::vector<BoundReport> reports(tuples.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < tuples.size(); i = next++)
      reports[i] = bound_report(tuples[i].rho, tuples[i].d, tuples[i].r, config);
  };
  const unsigned count =
      std::max(1u, std::min<unsigned>(threads == 0 ? default_thread_count() : threads,
                                       static_cast<unsigned>(tuples.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < count; ++i) pool.emplace_back(work);
  work();
  for (auto& thread : pool) thread.join();
  return reports;
}

}  // namespace kelvin_eit
