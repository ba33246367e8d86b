#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kelvin_eit/geometry.hpp"
#include "kelvin_eit/harmonics.hpp"

namespace kelvin_eit {

/// Eigenvalue of the DN map with a perfectly conducting concentric
/// inclusion B(0, r) on the degree-n harmonics.
double lambda_hat(int n, int d, double r);

/// Eigenvalue of Lambda_{0,r} - Lambda_1 on the degree-n harmonics,
/// evaluated as (2n+d-2) q / (1 - q) with q = r^{2n+d-2} (never a negative
/// power of r); -1/log r for d = 2, n = 0.
double lambda_diff(int n, int d, double r);

/// lambda_n / lambda_0, numerically stable for r near 0 and 1.
double lambda_ratio(int n, int d, double r);

struct EigenvalueTable {
  int dim = 0;
  double r = 0.0;
  int truncation = 0;
  std::vector<double> lambda_hat;
  std::vector<double> lambda;
  std::vector<std::uint64_t> multiplicity;
};

EigenvalueTable eigenvalue_table(int d, double r, int truncation);

/// Smallest n with lambda_n < rel_tol * lambda_0, capped at 10^4.
int convergence_degree(int d, double r, double rel_tol = 1e-6);

/// Radial factor R_n on [r, 1] of the separated solution with R_n(r) = 0,
/// R_n(1) = 1.
class RadialProfile {
 public:
  RadialProfile(int n, int d, double r);

  int degree() const { return n_; }
  double operator()(double eta) const;
  double derivative(double eta) const;

 private:
  void check(double eta) const;

  int n_;
  int d_;
  double r_;
  double log_r_;
  double q_;  // r^{2n+d-2}
};

RadialProfile radial_profile(int n, int d, double r);

/// Solution of the Dirichlet problem in the annulus r < |x| < 1 with zero
/// data on S(0, r) and boundary data given by harmonic coefficients.
class ConcentricSolution {
 public:
  ConcentricSolution(double r, HarmonicBasis basis, Vec coeffs);

  double operator()(const Vec& x) const;
  const HarmonicBasis& basis() const { return basis_; }
  const Vec& coeffs() const { return coeffs_; }

 private:
  double r_;
  HarmonicBasis basis_;
  Vec coeffs_;
  std::vector<RadialProfile> profiles_;
};

double forward_solve_concentric(int d, double r, const HarmonicBasis& basis, const Vec& coeffs,
                                const Vec& x);

/// Solution in B \ closure(B(C, R)) obtained by Kelvin conjugation: the data
/// K_a f is expanded on `grid` in `basis`, solved concentrically, and the
/// result transformed back with K_a.
class NonconcentricSolution {
 public:
  NonconcentricSolution(const BallCorrespondence& corr, const HarmonicBasis& basis,
                        const BoundaryGrid& grid, const ScalarField& f);

  double operator()(const Vec& x) const;
  const ConcentricSolution& transformed() const { return transformed_; }

 private:
  BallCorrespondence corr_;
  ConcentricSolution transformed_;
};

double forward_solve_nonconcentric(const BallCorrespondence& corr, const HarmonicBasis& basis,
                                   const BoundaryGrid& grid, const ScalarField& f, const Vec& x);

/// Multiplier sequence indexed by degree.
using DegreeMultiplier = std::function<double(int)>;

/// Values on `grid` of the operator sum_n m(n) P_n f, with P_n the projection
/// onto degree-n harmonics (truncated at the basis degree).
std::vector<double> apply_spectral(const HarmonicBasis& basis, const BoundaryGrid& grid,
                                   const ScalarField& f, const DegreeMultiplier& multiplier);

/// (Lambda_{C,R} - Lambda_1) f = G_a^2 K_a (Lambda_{0,r} - Lambda_1) K_a f, sampled on `grid`.
std::vector<double> apply_dn_difference(const BallCorrespondence& corr, const HarmonicBasis& basis,
                                        const BoundaryGrid& grid, const ScalarField& f);
/// Same, with f given by its samples on `grid`.
std::vector<double> apply_dn_difference(const BallCorrespondence& corr, const HarmonicBasis& basis,
                                        const BoundaryGrid& grid, const std::vector<double>& f);
/// Concentric case: (Lambda_{0,r} - Lambda_1) f.
std::vector<double> apply_dn_difference(double r, const HarmonicBasis& basis,
                                        const BoundaryGrid& grid, const ScalarField& f);

/// Second route for the same operator: sum_n lambda_n <f, psi_n> psi_n with
/// psi_n = G_a^2 K_a f_n, inner products by quadrature on `grid`.
std::vector<double> apply_dn_difference_series(const BallCorrespondence& corr,
                                               const HarmonicBasis& basis,
                                               const BoundaryGrid& grid, const ScalarField& f);

/// Lambda_{C,R} f = G_a^2 K_a Lambda_{0,r} K_a f + (2 - d) H_a f.
std::vector<double> dn_full_nonconcentric(const BallCorrespondence& corr, const HarmonicBasis& basis,
                                          const BoundaryGrid& grid, const ScalarField& f);
/// Lambda_1 f (eigenvalue n on degree n).
std::vector<double> dn_free(const HarmonicBasis& basis, const BoundaryGrid& grid,
                            const ScalarField& f);
/// G_a^2 K_a Lambda_1 K_a f + (2 - d) H_a f, which equals Lambda_1 f.
std::vector<double> dn_free_conjugated(const BallCorrespondence& corr, const HarmonicBasis& basis,
                                       const BoundaryGrid& grid, const ScalarField& f);

/// Matrix <(Lambda_{C,R} - Lambda_1) phi_j, psi_i>_{a,-1} with phi = K_a f,
/// psi = G_a^2 K_a f over the basis functions f; diagonal lambda_n in exact
/// arithmetic.
Mat kelvin_galerkin_matrix(const BallCorrespondence& corr, const HarmonicBasis& basis,
                           const BoundaryGrid& grid);

}  // namespace kelvin_eit
