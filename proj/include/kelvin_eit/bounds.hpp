#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kelvin_eit/geometry.hpp"
#include "kelvin_eit/harmonics.hpp"
#include "kelvin_eit/tridiagonal.hpp"

namespace kelvin_eit {

/// (1 - rho) / (1 + rho).
double lower_bound(double rho);
/// (1 - rho^2) / (1 + rho^2).
double upper_bound(double rho);
/// r-dependent middle bound, with x = lambda_1 / lambda_0:
///   sqrt((1-rho^2)^2 d / ((1+rho^2)^2 d + 4 rho^2 x (x + 2))).
double mid_bound(double rho, int d, double r);
/// C_d(rho) = sqrt((1-rho^2)^2 d / ((1+rho^2)^2 d + 12 rho^2)), the infimum of
/// mid_bound over r.
double least_upper_bound(double rho, int d);
/// Upper bound obtained by slice integration of g_a^{-2} over the sphere.
double worse_bound(double rho, int d);

/// D^{1/2} Mult[g_a^{-2}] D^{1/2} restricted to azimuthal sector m, in the
/// orthonormal sector basis of degrees m .. m + K, divided by lambda_0.
struct SectorOperator {
  int sector = 0;
  int truncation = 0;
  SymTridiagonal matrix;
};

SectorOperator sector_operator(double rho, int d, double r, int m, int K);

/// Highest azimuthal sector that carries harmonics: 1 for d = 2, unbounded otherwise.
int max_sector_for_dim(int d);

struct NormRatioConfig {
  int truncation = 0;  // 0: automatic doubling
  int max_sector = 6;
  double tol = 1e-10;
  int max_truncation = 20000;
  bool early_exit = true;
};

struct SectorMaximum {
  int sector;
  double value;  // top eigenvalue divided by lambda_0
};

struct TruncationStep {
  int truncation;
  double value;  // max over sectors, divided by lambda_0
};

struct NormRatioResult {
  double ratio = 0.0;        // lambda_0 / ||G^{-1} D G^{-1}||
  double lambda0 = 0.0;
  double denominator = 0.0;  // ||G^{-1} D G^{-1}||
  int attaining_sector = 0;
  int truncation = 0;
  bool converged = false;
  std::vector<SectorMaximum> sectors;
  std::vector<TruncationStep> history;
};

NormRatioResult numeric_norm_ratio(double rho, int d, double r, const NormRatioConfig& config = {});

/// Largest singular value of G_a^t T G_a^{-s} where T is Lambda_{C,R} - Lambda_1
/// (or Lambda_{0,r} - Lambda_1 when `concentric_operator` is set), assembled
/// from the harmonic basis of degree <= max_degree on a dense grid. d = 2, 3.
double weighted_operator_norm(const BallCorrespondence& corr, double s, double t,
                              bool concentric_operator, int max_degree, const BoundaryGrid& grid);
/// Same on the default dense grid: 512-point circle or 64 x 128 sphere grid.
double weighted_operator_norm(const BallCorrespondence& corr, double s, double t,
                              bool concentric_operator, int max_degree);

struct BoundReport {
  double rho = 0.0;
  int d = 0;
  std::optional<double> r;
  double lower = 0.0;
  std::optional<double> mid;
  double upper = 0.0;
  double least_upper = 0.0;
  double worse = 0.0;
  std::optional<double> ratio_numeric;
  int sector = 0;
  int sectors_scanned = 0;
  int truncation = 0;
  bool converged = true;
  std::string error;  // empty on success
};

BoundReport bound_report(double rho, int d, std::optional<double> r, const NormRatioConfig& config);

/// One report per (d, rho, r) tuple, ordered lexicographically by (d, rho, r).
/// An empty r_grid gives bounds-only reports. Tuples run on up to `threads`
/// workers (0: KELVIN_EIT_THREADS or the hardware concurrency).
std::vector<BoundReport> sweep(const std::vector<double>& rho_grid, const std::vector<double>& r_grid,
                               const std::vector<int>& d_list, const NormRatioConfig& config,
                               unsigned threads = 0);

/// Worker count from KELVIN_EIT_THREADS, else the hardware concurrency.
unsigned default_thread_count();

}  // namespace kelvin_eit
