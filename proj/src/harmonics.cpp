#include "kelvin_eit/harmonics.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "kelvin_eit/errors.hpp"
#include "kelvin_eit/tridiagonal.hpp"

namespace kelvin_eit {

namespace {

std::uint64_t binomial(std::int64_t m, std::int64_t k) {
  if (k < 0 || m < k) return 0;
  k = std::min(k, m - k);
  std::uint64_t value = 1;
  for (std::int64_t i = 1; i <= k; ++i) value = value * static_cast<std::uint64_t>(m - k + i) / i;
  return value;
}

}  // namespace

std::uint64_t harmonic_dimension(int n, int d) {
  if (n < 0 || d < 2) throw DomainError("harmonic_dimension needs n >= 0 and d >= 2");
  return binomial(n + d - 1, d - 1) - binomial(n + d - 3, d - 1);
}

double beltrami_eigenvalue(int n, int d) {
  if (n < 0 || d < 2) throw DomainError("beltrami_eigenvalue needs n >= 0 and d >= 2");
  return -static_cast<double>(n) * (n + d - 2);
}

double sphere_area(int d) {
  if (d < 1) throw DomainError("sphere_area needs d >= 1");
  if (d == 1) return 2.0;  // S^0 = {-1, 1}
  return 2.0 * std::exp(0.5 * d * std::log(std::numbers::pi) - std::lgamma(0.5 * d));
}

double ball_volume(int m) {
  if (m < 1) throw DomainError("ball_volume needs m >= 1");
  return std::exp(0.5 * m * std::log(std::numbers::pi) - std::lgamma(0.5 * m + 1.0));
}

double jacobi_weight_mass(double mu) {
  if (!(mu > -1.0)) throw DomainError("weight exponent must exceed -1");
  // Beta(1/2, mu + 1)
  return std::exp(std::lgamma(0.5) + std::lgamma(mu + 1.0) - std::lgamma(mu + 1.5));
}

double jacobi_recurrence_coefficient(double mu, int k) {
  // Monic recurrence beta_n = n (n + 2mu) / ((2n + 2mu + 1)(2n + 2mu - 1)),
  // with the removable 0/0 at n = 1, mu = -1/2 cancelled; b_k = sqrt(beta_{k+1}).
  const double n = k + 1.0;
  const double beta = k == 0 ? 1.0 / (2.0 * mu + 3.0)
                             : n * (n + 2.0 * mu) /
                                   ((2.0 * n + 2.0 * mu + 1.0) * (2.0 * n + 2.0 * mu - 1.0));
  return std::sqrt(beta);
}

QuadratureRule gauss_jacobi(double mu, int count) {
  if (!(mu > -1.0)) throw DomainError("weight exponent must exceed -1");
  if (count < 1) throw DomainError("quadrature needs at least one node");

  SymTridiagonal jacobi;
  jacobi.diag.assign(count, 0.0);
  jacobi.off.resize(count - 1);
  for (int k = 0; k + 1 < count; ++k) jacobi.off[k] = jacobi_recurrence_coefficient(mu, k);

  const TridiagonalSpectrum spectrum = eigen_first_components(jacobi);
  const double p0 = 1.0 / std::sqrt(jacobi_weight_mass(mu));

  QuadratureRule rule;
  rule.mu = mu;
  rule.nodes = spectrum.values;
  rule.weights.resize(count);
  for (int k = 0; k < count; ++k) {
    // Newton polish on p_count, then Christoffel weights 1 / sum_j p_j(t)^2;
    // the eigenvector route loses relative accuracy in the small end weights.
    double t = rule.nodes[k];
    double christoffel = 0.0;
    for (int iter = 0; iter < 3; ++iter) {
      double p_prev = 0.0, p = p0, dp_prev = 0.0, dp = 0.0;
      christoffel = p * p;
      for (int j = 0; j < count; ++j) {
        const double b_prev = j > 0 ? jacobi.off[j - 1] : 0.0;
        const double b = jacobi_recurrence_coefficient(mu, j);
        const double p_next = (t * p - b_prev * p_prev) / b;
        const double dp_next = (p + t * dp - b_prev * dp_prev) / b;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
        if (j + 1 < count) christoffel += p * p;
      }
      if (iter == 2 || dp == 0.0) break;
      t -= p / dp;
    }
    rule.nodes[k] = t;
    rule.weights[k] = 1.0 / christoffel;
  }
  // Symmetrize: the weight is even, so nodes come in +- pairs.
  for (int k = 0; k < count / 2; ++k) {
    const int j = count - 1 - k;
    const double node = 0.5 * (rule.nodes[j] - rule.nodes[k]);
    const double weight = 0.5 * (rule.weights[j] + rule.weights[k]);
    rule.nodes[k] = -node;
    rule.nodes[j] = node;
    rule.weights[k] = rule.weights[j] = weight;
  }
  if (count % 2 == 1) rule.nodes[count / 2] = 0.0;
  return rule;
}

SectorBasis::SectorBasis(int dim, int sector, int max_degree)
    : dim_(dim), sector_(sector), max_degree_(max_degree) {
  if (dim < 2) throw DomainError("sector basis needs d >= 2");
  if (sector < 0) throw DomainError("sector index must be non-negative");
  if (max_degree < sector) throw DomainError("max degree must be at least the sector index");
  mu_ = sector + 0.5 * (dim - 3);
  p0_ = 1.0 / std::sqrt(jacobi_weight_mass(mu_));
  couplings_.resize(size() - 1);
  for (int k = 0; k + 1 < size(); ++k) couplings_[k] = jacobi_recurrence_coefficient(mu_, k);
}

std::vector<double> SectorBasis::evaluate_all(double t) const {
  std::vector<double> p(size());
  p[0] = p0_;
  if (size() > 1) p[1] = t * p[0] / couplings_[0];
  for (int k = 1; k + 1 < size(); ++k)
    p[k + 1] = (t * p[k] - couplings_[k - 1] * p[k - 1]) / couplings_[k];
  return p;
}

double SectorBasis::evaluate(int k, double t) const {
  if (k < 0 || k >= size()) throw DomainError("sector polynomial index out of range");
  return evaluate_all(t)[k];
}

SectorBasis sector_basis(int d, int m, int max_degree) { return SectorBasis(d, m, max_degree); }

std::vector<double> mult_by_t_coefficients(const SectorBasis& basis) { return basis.couplings(); }

BoundaryGrid circle_grid(int count) {
  if (count < 1) throw DomainError("grid needs at least one point");
  BoundaryGrid grid;
  grid.dim = 2;
  grid.axis = unit_vector(2);
  grid.points.resize(2, count);
  grid.weights.assign(count, 2.0 * std::numbers::pi / count);
  for (int q = 0; q < count; ++q) {
    const double theta = 2.0 * std::numbers::pi * q / count;
    grid.points(0, q) = std::cos(theta);
    grid.points(1, q) = std::sin(theta);
  }
  return grid;
}

BoundaryGrid sphere_grid(int polar_count, int azimuth_count) {
  if (polar_count < 1 || azimuth_count < 1) throw DomainError("grid needs at least one point");
  const QuadratureRule legendre = gauss_jacobi(0.0, polar_count);
  BoundaryGrid grid;
  grid.dim = 3;
  grid.axis = unit_vector(3);
  grid.points.resize(3, polar_count * azimuth_count);
  grid.weights.resize(polar_count * azimuth_count);
  const double dphi = 2.0 * std::numbers::pi / azimuth_count;
  int q = 0;
  for (int i = 0; i < polar_count; ++i) {
    const double t = legendre.nodes[i];
    const double s = std::sqrt((1.0 - t) * (1.0 + t));
    for (int j = 0; j < azimuth_count; ++j, ++q) {
      const double phi = dphi * j;
      grid.points(0, q) = t;
      grid.points(1, q) = s * std::cos(phi);
      grid.points(2, q) = s * std::sin(phi);
      grid.weights[q] = legendre.weights[i] * dphi;
    }
  }
  return grid;
}

BoundaryGrid zonal_grid(int d, int count, const Vec& axis) {
  if (d < 2) throw DomainError("zonal grid needs d >= 2");
  if (axis.size() != d) throw DomainError("axis dimension mismatch");
  const QuadratureRule rule = gauss_jacobi(0.5 * (d - 3), count);
  const Mat frame = axis_reflection(axis);
  const Vec along = frame.col(0);
  const Vec across = frame.col(1);
  const double equator = sphere_area(d - 1);

  BoundaryGrid grid;
  grid.dim = d;
  grid.zonal = true;
  grid.axis = along;
  grid.points.resize(d, count);
  grid.weights.resize(count);
  for (int q = 0; q < count; ++q) {
    const double t = rule.nodes[q];
    const double s = std::sqrt((1.0 - t) * (1.0 + t));
    grid.points.col(q) = t * along + s * across;
    grid.weights[q] = rule.weights[q] * equator;
  }
  return grid;
}

BoundaryGrid default_grid(int d, int max_degree, const Vec& axis) {
  switch (d) {
    case 2:
      return circle_grid(2 * max_degree + 16);
    case 3:
      return sphere_grid(max_degree + 8, 2 * max_degree + 16);
    default:
      return zonal_grid(d, max_degree + 8, axis);
  }
}

HarmonicBasis::HarmonicBasis(int dim, int max_degree, const Vec& axis)
    : dim_(dim), max_degree_(max_degree), axis_(axis.normalized()) {
  if (dim < 2) throw DomainError("harmonic basis needs d >= 2");
  if (max_degree < 0) throw DomainError("max degree must be non-negative");
  if (axis.size() != dim) throw DomainError("axis dimension mismatch");
  frame_ = axis_reflection(axis_);

  int sector_count = 1;
  if (dim == 2) sector_count = std::min(2, max_degree + 1);
  if (dim == 3) sector_count = max_degree + 1;
  for (int m = 0; m < sector_count; ++m) sectors_.emplace_back(dim, m, max_degree);

  for (int n = 0; n <= max_degree; ++n) {
    for (int m = 0; m < sector_count && m <= n; ++m) {
      if (dim == 2) {
        indices_.push_back({n, m, m});
      } else if (dim == 3 && m > 0) {
        indices_.push_back({n, m, 0});
        indices_.push_back({n, m, 1});
      } else {
        indices_.push_back({n, m, 0});
      }
    }
  }
}

Vec HarmonicBasis::evaluate_all(const Vec& x) const {
  // H is symmetric and involutory, so H x expresses x in the aligned frame.
  const Vec y = frame_ * x;
  const double t = std::clamp(y[0], -1.0, 1.0);

  std::vector<std::vector<double>> poly;
  poly.reserve(sectors_.size());
  for (const auto& sector : sectors_) poly.push_back(sector.evaluate_all(t));

  Vec out(static_cast<Eigen::Index>(indices_.size()));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
  const double zonal_norm = 1.0 / std::sqrt(sphere_area(dim_ - 1));
  const std::complex<double> azimuth = dim_ == 3 ? std::complex<double>(y[1], y[2]) : 0.0;

  for (std::size_t i = 0; i < indices_.size(); ++i) {
    const auto [n, m, variant] = indices_[i];
    double angular = zonal_norm;
    if (dim_ == 2) {
      angular = m == 0 ? inv_sqrt2 : y[1] * inv_sqrt2;
    } else if (dim_ == 3 && m > 0) {
      const std::complex<double> power = std::pow(azimuth, m);
      angular = (variant == 0 ? power.real() : power.imag()) * inv_sqrt_pi;
    }
    out[static_cast<Eigen::Index>(i)] = angular * poly[m][n - m];
  }
  return out;
}

Mat HarmonicBasis::sample(const BoundaryGrid& grid) const {
  if (grid.dim != dim_) throw GridMismatchError("grid dimension does not match basis");
  if (grid.zonal && (grid.axis - axis_).norm() > 1e-12)
    throw GridMismatchError("zonal grid axis does not match basis axis");
  Mat values(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(size()));
  for (std::size_t q = 0; q < grid.size(); ++q)
    values.row(static_cast<Eigen::Index>(q)) = evaluate_all(grid.point(q)).transpose();
  return values;
}

Vec HarmonicBasis::analyze(const BoundaryGrid& grid, const std::vector<double>& values) const {
  if (values.size() != grid.size())
    throw GridMismatchError("boundary data has " + std::to_string(values.size()) +
                            " samples, grid has " + std::to_string(grid.size()));
  const Mat samples = sample(grid);
  Vec weighted(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t q = 0; q < grid.size(); ++q)
    weighted[static_cast<Eigen::Index>(q)] = grid.weights[q] * values[q];
  return samples.transpose() * weighted;
}

Vec HarmonicBasis::analyze(const BoundaryGrid& grid, const ScalarField& f) const {
  std::vector<double> values(grid.size());
  for (std::size_t q = 0; q < grid.size(); ++q) values[q] = f(grid.point(q));
  return analyze(grid, values);
}

double HarmonicBasis::synthesize(const Vec& coeffs, const Vec& x) const {
  if (coeffs.size() != static_cast<Eigen::Index>(size()))
    throw GridMismatchError("coefficient count does not match basis");
  return coeffs.dot(evaluate_all(x));
}

}  // namespace kelvin_eit
