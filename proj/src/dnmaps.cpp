#include "kelvin_eit/dnmaps.hpp"

#include <cmath>
#include <string>

#include "kelvin_eit/errors.hpp"

namespace kelvin_eit {

namespace {

constexpr double kRadialSlack = 1e-12;

void check_radius(double r) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("inclusion radius r must lie in (0, 1)");
}

void check_degree(int n, int d) {
  if (n < 0) throw DomainError("degree must be non-negative");
  if (d < 2) throw DomainError("dimension must be at least 2");
}

bool is_log_case(int n, int d) { return d == 2 && n == 0; }

// Quadrature weights as an Eigen vector.
Vec grid_weights(const BoundaryGrid& grid) {
  return Eigen::Map<const Vec>(grid.weights.data(), static_cast<Eigen::Index>(grid.size()));
}

// K_a-conjugated multiplier operators G_a^2 K_a M K_a sampled on a grid,
// with the basis evaluated once at the grid points and at their images.
class ConjugatedOperator {
 public:
  ConjugatedOperator(const BallCorrespondence& corr, const HarmonicBasis& basis,
                     const BoundaryGrid& grid)
      : corr_(corr), basis_(basis), grid_(grid), weights_(grid_weights(grid)) {
    const auto q = static_cast<Eigen::Index>(grid.size());
    at_grid_ = basis.sample(grid);
    at_image_.resize(q, static_cast<Eigen::Index>(basis.size()));
    image_points_.resize(grid.dim, q);
    kelvin_factor_.resize(q);
    g_sq_.resize(q);
    for (Eigen::Index i = 0; i < q; ++i) {
      const Vec x = grid.point(static_cast<std::size_t>(i));
      const Vec y = corr.apply(x);
      image_points_.col(i) = y;
      at_image_.row(i) = basis.evaluate_all(y).transpose();
      const double g = corr.factor(x);
      kelvin_factor_[i] = std::pow(g, corr.dim - 2);
      g_sq_[i] = g * g;
    }
  }

  // Samples of f at I_a(x_q).
  Vec sample_at_images(const ScalarField& f) const {
    Vec out(image_points_.cols());
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = f(image_points_.col(i));
    return out;
  }

  // Grid data -> values at I_a(x_q) through the harmonic expansion.
  Vec resample_at_images(const std::vector<double>& values) const {
    if (values.size() != grid_.size())
      throw GridMismatchError("boundary data has " + std::to_string(values.size()) +
                              " samples, grid has " + std::to_string(grid_.size()));
    const Vec f = Eigen::Map<const Vec>(values.data(), static_cast<Eigen::Index>(values.size()));
    const Vec coeffs = at_grid_.transpose() * weights_.cwiseProduct(f);
    return at_image_ * coeffs;
  }

  // G_a^2 K_a M K_a f on the grid, given f at the image points.
  Vec apply(const Vec& f_at_images, const DegreeMultiplier& multiplier) const {
    const Vec kelvin_f = kelvin_factor_.cwiseProduct(f_at_images);
    Vec coeffs = at_grid_.transpose() * weights_.cwiseProduct(kelvin_f);
    const auto& indices = basis_.indices();
    for (std::size_t i = 0; i < indices.size(); ++i)
      coeffs[static_cast<Eigen::Index>(i)] *= multiplier(indices[i].degree);
    const Vec transformed = at_image_ * coeffs;
    return g_sq_.cwiseProduct(kelvin_factor_).cwiseProduct(transformed);
  }

  // psi_i = G_a^2 K_a Y_i on the grid, one column per basis function.
  Mat psi() const {
    return (g_sq_.cwiseProduct(kelvin_factor_)).asDiagonal() * at_image_;
  }

  const Mat& at_grid() const { return at_grid_; }
  const Vec& weights() const { return weights_; }
  const Vec& g_sq() const { return g_sq_; }

 private:
  BallCorrespondence corr_;
  HarmonicBasis basis_;
  BoundaryGrid grid_;
  Vec weights_;
  Mat at_grid_;
  Mat at_image_;
  Mat image_points_;
  Vec kelvin_factor_;
  Vec g_sq_;
};

std::vector<double> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

double lambda_diff(int n, int d, double r) {
  check_degree(n, d);
  check_radius(r);
  if (is_log_case(n, d)) return -1.0 / std::log(r);
  const double k = 2.0 * n + d - 2.0;
  const double exponent = k * std::log(r);
  const double q = std::exp(exponent);
  return k * q / -std::expm1(exponent);
}

double lambda_hat(int n, int d, double r) {
  check_degree(n, d);
  check_radius(r);
  if (is_log_case(n, d)) return -1.0 / std::log(r);
  const double exponent = (2.0 * n + d - 2.0) * std::log(r);
  const double q = std::exp(exponent);
  return (n + (n + d - 2.0) * q) / -std::expm1(exponent);
}

double lambda_ratio(int n, int d, double r) { return lambda_diff(n, d, r) / lambda_diff(0, d, r); }

EigenvalueTable eigenvalue_table(int d, double r, int truncation) {
  if (truncation < 0) throw DomainError("truncation must be non-negative");
  EigenvalueTable table;
  table.dim = d;
  table.r = r;
  table.truncation = truncation;
  for (int n = 0; n <= truncation; ++n) {
    table.lambda_hat.push_back(lambda_hat(n, d, r));
    table.lambda.push_back(lambda_diff(n, d, r));
    table.multiplicity.push_back(harmonic_dimension(n, d));
  }
  return table;
}

int convergence_degree(int d, double r, double rel_tol) {
  const double lambda0 = lambda_diff(0, d, r);
  constexpr int cap = 10000;
  for (int n = 1; n < cap; ++n)
    if (lambda_diff(n, d, r) < rel_tol * lambda0) return n;
  return cap;
}

RadialProfile::RadialProfile(int n, int d, double r) : n_(n), d_(d), r_(r) {
  check_degree(n, d);
  check_radius(r);
  log_r_ = std::log(r);
  q_ = std::exp((2.0 * n + d - 2.0) * log_r_);
}

void RadialProfile::check(double eta) const {
  if (!(eta >= r_ * (1.0 - kRadialSlack) && eta <= 1.0 + kRadialSlack))
    throw DomainError("radial profile evaluated outside [r, 1]");
}

double RadialProfile::operator()(double eta) const {
  check(eta);
  if (is_log_case(n_, d_)) return 1.0 - std::log(eta) / log_r_;
  // eta^n (1 - (r/eta)^k) / (1 - r^k), k = 2n + d - 2
  const double k = 2.0 * n_ + d_ - 2.0;
  return std::pow(eta, n_) * std::expm1(k * std::log(r_ / eta)) / std::expm1(k * log_r_);
}

double RadialProfile::derivative(double eta) const {
  check(eta);
  if (is_log_case(n_, d_)) return -1.0 / (eta * log_r_);
  const double k = 2.0 * n_ + d_ - 2.0;
  const double ratio_power = std::exp(k * std::log(r_ / eta));
  return std::pow(eta, n_ - 1) * (n_ + (n_ + d_ - 2.0) * ratio_power) / -std::expm1(k * log_r_);
}

RadialProfile radial_profile(int n, int d, double r) { return RadialProfile(n, d, r); }

ConcentricSolution::ConcentricSolution(double r, HarmonicBasis basis, Vec coeffs)
    : r_(r), basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
  check_radius(r);
  if (coeffs_.size() != static_cast<Eigen::Index>(basis_.size()))
    throw GridMismatchError("coefficient count does not match basis");
  for (int n = 0; n <= basis_.max_degree(); ++n) profiles_.emplace_back(n, basis_.dim(), r);
}

double ConcentricSolution::operator()(const Vec& x) const {
  const double eta = x.norm();
  if (eta < r_ * (1.0 - kRadialSlack)) throw DomainError("point lies inside the inclusion B(0, r)");
  if (eta > 1.0 + kRadialSlack) throw DomainError("point lies outside the unit ball");
  const Vec values = basis_.evaluate_all(x / eta);
  std::vector<double> radial(profiles_.size());
  for (std::size_t n = 0; n < profiles_.size(); ++n) radial[n] = profiles_[n](eta);
  double u = 0.0;
  const auto& indices = basis_.indices();
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto j = static_cast<Eigen::Index>(i);
    u += coeffs_[j] * radial[indices[i].degree] * values[j];
  }
  return u;
}

double forward_solve_concentric(int d, double r, const HarmonicBasis& basis, const Vec& coeffs,
                                const Vec& x) {
  if (basis.dim() != d) throw DomainError("basis dimension does not match d");
  return ConcentricSolution(r, basis, coeffs)(x);
}

NonconcentricSolution::NonconcentricSolution(const BallCorrespondence& corr,
                                             const HarmonicBasis& basis, const BoundaryGrid& grid,
                                             const ScalarField& f)
    : corr_(corr),
      transformed_(corr.r, basis,
                   basis.analyze(grid, [&](const Vec& x) { return corr.kelvin(f, x); })) {}

double NonconcentricSolution::operator()(const Vec& x) const {
  if ((x - corr_.C).norm() < corr_.R * (1.0 - kRadialSlack))
    throw DomainError("point lies inside the inclusion B(C, R)");
  if (x.norm() > 1.0 + kRadialSlack) throw DomainError("point lies outside the unit ball");
  const double g = corr_.factor(x);
  return std::pow(g, corr_.dim - 2) * transformed_(corr_.apply(x));
}

double forward_solve_nonconcentric(const BallCorrespondence& corr, const HarmonicBasis& basis,
                                   const BoundaryGrid& grid, const ScalarField& f, const Vec& x) {
  return NonconcentricSolution(corr, basis, grid, f)(x);
}

std::vector<double> apply_spectral(const HarmonicBasis& basis, const BoundaryGrid& grid,
                                   const ScalarField& f, const DegreeMultiplier& multiplier) {
  Vec coeffs = basis.analyze(grid, f);
  const auto& indices = basis.indices();
  for (std::size_t i = 0; i < indices.size(); ++i)
    coeffs[static_cast<Eigen::Index>(i)] *= multiplier(indices[i].degree);
  return to_std(basis.sample(grid) * coeffs);
}

std::vector<double> apply_dn_difference(const BallCorrespondence& corr, const HarmonicBasis& basis,
                                        const BoundaryGrid& grid, const ScalarField& f) {
  const ConjugatedOperator op(corr, basis, grid);
  const int d = basis.dim();
  const double r = corr.r;
  return to_std(op.apply(op.sample_at_images(f), [=](int n) { return lambda_diff(n, d, r); }));
}

std::vector<double> apply_dn_difference(const BallCorrespondence& corr, const HarmonicBasis& basis,
                                        const BoundaryGrid& grid, const std::vector<double>& f) {
  const ConjugatedOperator op(corr, basis, grid);
  const int d = basis.dim();
  const double r = corr.r;
  return to_std(op.apply(op.resample_at_images(f), [=](int n) { return lambda_diff(n, d, r); }));
}

std::vector<double> apply_dn_difference(double r, const HarmonicBasis& basis,
                                        const BoundaryGrid& grid, const ScalarField& f) {
  const int d = basis.dim();
  return apply_spectral(basis, grid, f, [=](int n) { return lambda_diff(n, d, r); });
}

std::vector<double> apply_dn_difference_series(const BallCorrespondence& corr,
                                               const HarmonicBasis& basis,
                                               const BoundaryGrid& grid, const ScalarField& f) {
  const ConjugatedOperator op(corr, basis, grid);
  const Mat psi = op.psi();
  Vec samples(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t q = 0; q < grid.size(); ++q)
    samples[static_cast<Eigen::Index>(q)] = f(grid.point(q));
  Vec coeffs = psi.transpose() * op.weights().cwiseProduct(samples);
  const auto& indices = basis.indices();
  for (std::size_t i = 0; i < indices.size(); ++i)
    coeffs[static_cast<Eigen::Index>(i)] *= lambda_diff(indices[i].degree, basis.dim(), corr.r);
  return to_std(psi * coeffs);
}

namespace {

std::vector<double> conjugated_plus_robin(const BallCorrespondence& corr,
                                          const HarmonicBasis& basis, const BoundaryGrid& grid,
                                          const ScalarField& f, const DegreeMultiplier& multiplier) {
  const ConjugatedOperator op(corr, basis, grid);
  Vec out = op.apply(op.sample_at_images(f), multiplier);
  const int d = basis.dim();
  if (d != 2) {
    const BoundaryMultipliers mult(corr);
    for (std::size_t q = 0; q < grid.size(); ++q) {
      const Vec x = grid.point(q);
      out[static_cast<Eigen::Index>(q)] += (2.0 - d) * mult.h(x) * f(x);
    }
  }
  return to_std(out);
}

}  // namespace

std::vector<double> dn_full_nonconcentric(const BallCorrespondence& corr, const HarmonicBasis& basis,
                                          const BoundaryGrid& grid, const ScalarField& f) {
  const int d = basis.dim();
  const double r = corr.r;
  return conjugated_plus_robin(corr, basis, grid, f, [=](int n) { return lambda_hat(n, d, r); });
}

std::vector<double> dn_free(const HarmonicBasis& basis, const BoundaryGrid& grid,
                            const ScalarField& f) {
  return apply_spectral(basis, grid, f, [](int n) { return static_cast<double>(n); });
}

std::vector<double> dn_free_conjugated(const BallCorrespondence& corr, const HarmonicBasis& basis,
                                       const BoundaryGrid& grid, const ScalarField& f) {
  return conjugated_plus_robin(corr, basis, grid, f,
                               [](int n) { return static_cast<double>(n); });
}

Mat kelvin_galerkin_matrix(const BallCorrespondence& corr, const HarmonicBasis& basis,
                           const BoundaryGrid& grid) {
  const ConjugatedOperator op(corr, basis, grid);
  const Mat psi = op.psi();
  const Vec weighted = op.weights().cwiseQuotient(op.g_sq());  // w_q g_a^{-2}(x_q)
  const int d = basis.dim();
  const double r = corr.r;
  const auto lambda = [=](int n) { return lambda_diff(n, d, r); };

  const auto count = static_cast<Eigen::Index>(basis.size());
  Mat galerkin(count, count);
  for (Eigen::Index j = 0; j < count; ++j) {
    // phi_j = K_a Y_j, evaluated pointwise
    const ScalarField basis_fn = [&basis, j](const Vec& y) { return basis.evaluate_all(y)[j]; };
    const ScalarField phi = [&corr, basis_fn](const Vec& x) { return corr.kelvin(basis_fn, x); };
    const Vec image = op.apply(op.sample_at_images(phi), lambda);
    galerkin.col(j) = psi.transpose() * weighted.cwiseProduct(image);
  }
  return galerkin;
}

}  // namespace kelvin_eit
