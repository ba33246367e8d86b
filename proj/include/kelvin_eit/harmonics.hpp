#pragma once

#include <cstdint>
#include <vector>

#include "kelvin_eit/geometry.hpp"

namespace kelvin_eit {

/// Dimension of the space of degree-n spherical harmonics on the unit
/// sphere in R^d: C(n+d-1, d-1) - C(n+d-3, d-1).
std::uint64_t harmonic_dimension(int n, int d);

/// Eigenvalue -n(n+d-2) of the Laplace-Beltrami operator on the sphere.
double beltrami_eigenvalue(int n, int d);

/// Surface measure of the unit sphere in R^d, 2 pi^{d/2} / Gamma(d/2).
double sphere_area(int d);

/// Volume of the unit ball in R^m, pi^{m/2} / Gamma(m/2 + 1).
double ball_volume(int m);

/// Integral of (1 - t^2)^mu over [-1, 1].
double jacobi_weight_mass(double mu);

struct QuadratureRule {
  double mu = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss rule for the weight (1 - t^2)^mu on [-1, 1] via Golub-Welsch.
/// Exact for polynomials of degree <= 2 count - 1.
QuadratureRule gauss_jacobi(double mu, int count);

/// Off-diagonal entry b_k of the orthonormal three-term recurrence
///   t p_k = b_k p_{k+1} + b_{k-1} p_{k-1}
/// for the symmetric weight (1 - t^2)^mu.
double jacobi_recurrence_coefficient(double mu, int k);

/// Orthonormal polynomials p_0 .. p_{N-m} for the weight
/// (1 - t^2)^{m + (d-3)/2}. Multiplied by (1 - t^2)^{m/2} and a degree-m
/// harmonic on the equatorial sphere, p_k gives a degree (m + k) spherical
/// harmonic in azimuthal sector m.
class SectorBasis {
 public:
  SectorBasis(int dim, int sector, int max_degree);

  int dim() const { return dim_; }
  int sector() const { return sector_; }
  int max_degree() const { return max_degree_; }
  double mu() const { return mu_; }
  /// Number of polynomials, max_degree - sector + 1.
  int size() const { return max_degree_ - sector_ + 1; }
  /// Recurrence couplings b_0 .. b_{size-2}.
  const std::vector<double>& couplings() const { return couplings_; }

  std::vector<double> evaluate_all(double t) const;
  double evaluate(int k, double t) const;

 private:
  int dim_;
  int sector_;
  int max_degree_;
  double mu_;
  double p0_;
  std::vector<double> couplings_;
};

SectorBasis sector_basis(int d, int m, int max_degree);

/// Tridiagonal representation of multiplication by t in the orthonormal
/// sector basis. The diagonal vanishes by parity; returns the couplings.
std::vector<double> mult_by_t_coefficients(const SectorBasis& basis);

/// Quadrature grid on the unit sphere: points are the columns of `points`.
/// Zonal grids (d >= 4) sample one meridian and integrate only functions
/// that depend on x . axis alone.
struct BoundaryGrid {
  int dim = 0;
  bool zonal = false;
  Vec axis;
  Mat points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  Vec point(std::size_t q) const { return points.col(static_cast<Eigen::Index>(q)); }
};

/// Uniform circle grid; exact for trigonometric polynomials of degree < count.
BoundaryGrid circle_grid(int count);
/// Gauss-Legendre (polar, axis e1) x uniform azimuth grid on S^2.
BoundaryGrid sphere_grid(int polar_count, int azimuth_count);
/// Meridian grid for zonal functions about `axis` in R^d.
BoundaryGrid zonal_grid(int d, int count, const Vec& axis);
/// Default grid for dimension d: circle (d = 2), product (d = 3), zonal (d >= 4).
BoundaryGrid default_grid(int d, int max_degree, const Vec& axis);

struct HarmonicIndex {
  int degree;
  int sector;
  int variant;  // 0: cosine-type / even, 1: sine-type / odd
};

/// Real orthonormal spherical harmonics up to a maximum degree, organized
/// by azimuthal sector about `axis`. Full bases for d = 2, 3; the zonal
/// (sector 0) subspace for d >= 4.
class HarmonicBasis {
 public:
  HarmonicBasis(int dim, int max_degree, const Vec& axis);

  int dim() const { return dim_; }
  int max_degree() const { return max_degree_; }
  bool zonal_only() const { return dim_ >= 4; }
  const Vec& axis() const { return axis_; }
  std::size_t size() const { return indices_.size(); }
  const std::vector<HarmonicIndex>& indices() const { return indices_; }

  /// Values of every basis function at a unit vector x.
  Vec evaluate_all(const Vec& x) const;
  /// Grid sample matrix: rows are grid points, columns basis functions.
  Mat sample(const BoundaryGrid& grid) const;

  Vec analyze(const BoundaryGrid& grid, const std::vector<double>& values) const;
  Vec analyze(const BoundaryGrid& grid, const ScalarField& f) const;
  double synthesize(const Vec& coeffs, const Vec& x) const;

 private:
  int dim_;
  int max_degree_;
  Vec axis_;
  Mat frame_;
  std::vector<SectorBasis> sectors_;
  std::vector<HarmonicIndex> indices_;
};

}  // namespace kelvin_eit
