#include "kelvin_eit/geometry.hpp"

#include <cmath>
#include <string>

#include "kelvin_eit/errors.hpp"

namespace kelvin_eit {

namespace {

constexpr double kCenterGuard = 1e-13;

void require_dim(long d) {
  if (d < 2) throw DomainError("dimension must be at least 2, got " + std::to_string(d));
}

BallCorrespondence identity_correspondence(int d, double radius) {
  BallCorrespondence corr;
  corr.dim = d;
  corr.concentric = true;
  corr.a = Vec::Zero(d);
  corr.rho = 0.0;
  corr.e_a = unit_vector(d);
  corr.a_hat = Vec::Zero(d);
  corr.b = 0.0;
  corr.r = radius;
  corr.C = Vec::Zero(d);
  corr.R = radius;
  return corr;
}

void fill_inversion(BallCorrespondence& corr, const Vec& a) {
  corr.dim = static_cast<int>(a.size());
  corr.concentric = false;
  corr.a = a;
  corr.rho = a.norm();
  corr.e_a = a / corr.rho;
  corr.a_hat = a / (corr.rho * corr.rho);
  corr.b = std::sqrt((1.0 - corr.rho) * (1.0 + corr.rho)) / corr.rho;
}

}  // namespace

InversionMap::InversionMap(Vec center, double radius)
    : center_(std::move(center)), radius_(radius) {
  require_dim(center_.size());
  if (!(radius_ > 0.0) || !std::isfinite(radius_))
    throw DomainError("inversion radius must be positive and finite");
}

void InversionMap::guard(const Vec& x) const {
  if (x.size() != center_.size()) throw DomainError("point dimension does not match inversion");
  if ((x - center_).norm() <= kCenterGuard * (1.0 + center_.norm()))
    throw SingularityError("point coincides with the inversion center");
}

double InversionMap::factor(const Vec& x) const {
  guard(x);
  return radius_ / (x - center_).norm();
}

Vec InversionMap::apply(const Vec& x) const {
  guard(x);
  const Vec v = x - center_;
  return (radius_ * radius_ / v.squaredNorm()) * v + center_;
}

Vec invert_point(const InversionMap& map, const Vec& x) { return map.apply(x); }

Mat jacobian(const InversionMap& map, const Vec& x) {
  const double g = map.factor(x);
  const Vec v = x - map.center();
  const Mat projection = v * v.transpose() / v.squaredNorm();
  return g * g * (Mat::Identity(map.dim(), map.dim()) - 2.0 * projection);
}

double kelvin_apply(const InversionMap& map, const ScalarField& f, const Vec& x) {
  const double g = map.factor(x);
  return std::pow(g, map.dim() - 2) * f(map.apply(x));
}

double kelvin_laplace_residual(const InversionMap& map, const ScalarField& u,
                               const ScalarField& laplacian_u, const Vec& x, double h) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  if ((x - map.center()).norm() <= 2.0 * h * std::sqrt(static_cast<double>(map.dim())))
    throw SingularityError("finite-difference stencil reaches the inversion center");

  const int d = map.dim();
  const double center_value = kelvin_apply(map, u, x);
  double fd_laplacian = 0.0;
  for (int i = 0; i < d; ++i) {
    Vec step = Vec::Zero(d);
    step[i] = h;
    fd_laplacian += kelvin_apply(map, u, x + step) - 2.0 * center_value +
                    kelvin_apply(map, u, x - step);
  }
  fd_laplacian /= h * h;

  const double g = map.factor(x);
  const double rhs = std::pow(g, 4) * kelvin_apply(map, laplacian_u, x);
  return std::abs(fd_laplacian - rhs);
}

InversionMap BallCorrespondence::inversion() const {
  if (concentric) throw DomainError("concentric correspondence has no inversion sphere");
  return InversionMap(a_hat, b);
}

Vec BallCorrespondence::apply(const Vec& x) const {
  if (concentric) return x;
  return inversion().apply(x);
}

double BallCorrespondence::factor(const Vec& x) const {
  if (concentric) return 1.0;
  return b / (x - a_hat).norm();
}

double BallCorrespondence::kelvin(const ScalarField& f, const Vec& x) const {
  if (concentric) return f(x);
  return std::pow(factor(x), dim - 2) * f(apply(x));
}

BallCorrespondence correspondence_from_concentric(const Vec& a, double r) {
  require_dim(a.size());
  const double rho = a.norm();
  if (rho == 0.0) throw DomainError("a = 0 gives the concentric-degenerate correspondence");
  if (!(rho < 1.0)) throw DomainError("|a| must lie in (0, 1)");
  if (!(r > 0.0 && r < 1.0)) throw DomainError("r must lie in (0, 1)");

  BallCorrespondence corr;
  fill_inversion(corr, a);
  corr.r = r;
  const double denom = 1.0 - rho * rho * r * r;
  corr.C = (rho * (1.0 - r) * (1.0 + r) / denom) * corr.e_a;
  corr.R = r * (1.0 - rho) * (1.0 + rho) / denom;
  return corr;
}

BallCorrespondence correspondence_from_ball(const Vec& C, double R) {
  require_dim(C.size());
  const double c = C.norm();
  if (!(R > 0.0)) throw DomainError("R must be positive");
  if (!(c + R < 1.0)) throw DomainError("ball B(C, R) is not strictly inside the unit ball");
  if (c == 0.0) return identity_correspondence(static_cast<int>(C.size()), R);

  // r is the root in (0,1) of R r^2 - (1 + R^2 - c^2) r + R = 0; the other
  // root is 1/r. Rationalized to avoid cancellation for small R.
  const double s = 1.0 + R * R - c * c;
  const double disc = ((1.0 - R) * (1.0 - R) - c * c) * ((1.0 + R) * (1.0 + R) - c * c);
  const double r = 2.0 * R / (s + std::sqrt(disc));

  BallCorrespondence corr;
  fill_inversion(corr, C / (1.0 - R * r));
  corr.r = r;
  corr.C = C;
  corr.R = R;
  return corr;
}

Vec boundary_inversion(const BallCorrespondence& corr, const Vec& x) {
  if (corr.concentric) return x;
  const Vec v = x - corr.a_hat;
  return x - (2.0 * x.dot(v) / v.squaredNorm()) * v;
}

BoundaryMultipliers::BoundaryMultipliers(const BallCorrespondence& corr) : corr_(corr) {
  if (corr.concentric) {
    c0_ = 1.0;
    c1_ = 0.0;
    c1_axial_ = 0.0;
    return;
  }
  const double rho2 = corr.rho * corr.rho;
  const double one_minus = (1.0 - corr.rho) * (1.0 + corr.rho);
  c0_ = (1.0 + rho2) / one_minus;
  c1_ = -2.0 * rho2 / one_minus;
  c1_axial_ = -2.0 * corr.rho / one_minus;
}

double BoundaryMultipliers::g(const Vec& x) const { return corr_.factor(x); }

double BoundaryMultipliers::g_pow(const Vec& x, double s) const {
  if (corr_.concentric) return 1.0;
  return std::pow(g(x), s);
}

double BoundaryMultipliers::g_inv_sq_zonal(const Vec& x) const {
  if (corr_.concentric) return 1.0;
  return c0_ + c1_ * x.dot(corr_.a_hat);
}

double BoundaryMultipliers::h(const Vec& x) const {
  if (corr_.concentric) return 0.0;
  const Vec v = x - corr_.a_hat;
  return x.dot(v) / v.squaredNorm();
}

double BoundaryMultipliers::sup_g_sq() const {
  return corr_.concentric ? 1.0 : (1.0 + corr_.rho) / (1.0 - corr_.rho);
}

double BoundaryMultipliers::inf_g_sq() const {
  return corr_.concentric ? 1.0 : (1.0 - corr_.rho) / (1.0 + corr_.rho);
}

BoundaryMultipliers multipliers(const BallCorrespondence& corr) { return BoundaryMultipliers(corr); }

Mat axis_reflection(const Vec& axis) {
  const auto d = axis.size();
  require_dim(d);
  const Vec unit = axis.normalized();
  Vec v = -unit;
  v[0] += 1.0;
  const double vv = v.squaredNorm();
  if (vv < 1e-30) return Mat::Identity(d, d);
  return Mat::Identity(d, d) - (2.0 / vv) * v * v.transpose();
}

Vec unit_vector(int d, int i) {
  Vec e = Vec::Zero(d);
  e[i] = 1.0;
  return e;
}

}  // namespace kelvin_eit
