#include "kelvin_eit/moebius2d.hpp"

#include <algorithm>
#include <cmath>

#include "kelvin_eit/errors.hpp"
#include "kelvin_eit/geometry.hpp"

namespace kelvin_eit {

namespace {

void check_parameter(Complex a) {
  const double rho = std::abs(a);
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("Moebius parameter must satisfy 0 < |a| < 1");
}

Complex a_hat(Complex a) { return a / std::norm(a); }

void guard_pole(Complex a, Complex x) {
  if (std::abs(x - a_hat(a)) <= 1e-13 * (1.0 + std::abs(a_hat(a))))
    throw SingularityError("point coincides with the pole 1 / conj(a)");
}

Vec to_vec(Complex z) { return Vec{{z.real(), z.imag()}}; }

}  // namespace

Complex moebius_apply(Complex a, Complex x) {
  const Complex denominator = std::conj(a) * x - 1.0;
  if (std::abs(denominator) <= 1e-14) throw SingularityError("point coincides with the pole 1 / conj(a)");
  return (x - a) / denominator;
}

Complex inversion_complex(Complex a, Complex x) {
  check_parameter(a);
  guard_pole(a, x);
  const double rho_sq = std::norm(a);
  const Complex center = a_hat(a);
  const double b_sq = (1.0 - rho_sq) / rho_sq;
  return b_sq * (x - center) / std::norm(x - center) + center;
}

Complex reflect_across(Complex a, Complex z) {
  check_parameter(a);
  return a / std::conj(a) * std::conj(z);
}

double reflection_identity_residual(Complex a, Complex x) {
  check_parameter(a);
  guard_pole(a, x);
  const BallCorrespondence corr = correspondence_from_concentric(to_vec(a), 0.5);
  const Vec image = corr.apply(to_vec(x));
  return std::abs(Complex(image[0], image[1]) - reflect_across(a, moebius_apply(a, x)));
}

IntersectionReport intersection_check(Complex a, Complex x, double tol) {
  check_parameter(a);
  guard_pole(a, x);
  const Complex center = a_hat(a);
  const double rho_sq = std::norm(a);
  const BallCorrespondence corr = correspondence_from_concentric(to_vec(a), 0.5);
  const Vec image = corr.apply(to_vec(x));

  IntersectionReport report;
  report.inversion_image = Complex(image[0], image[1]);
  report.moebius_image = moebius_apply(a, x);
  report.r_xa = std::abs(x - a) / std::abs(std::conj(a) * x - 1.0);
  report.r_tilde = (1.0 - rho_sq) / rho_sq / std::abs(x - center);
  for (const Complex p : {report.inversion_image, report.moebius_image}) {
    report.max_residual = std::max(report.max_residual, std::abs(std::abs(p) - report.r_xa));
    report.max_residual = std::max(report.max_residual, std::abs(std::abs(p - center) - report.r_tilde));
  }
  report.passed = report.max_residual <= tol;
  return report;
}

double rotation_covariance_residual(double rho, double zeta, Complex x) {
  const Complex rotation = std::polar(1.0, zeta);
  const Complex a = rho * rotation;
  const Complex x0 = std::conj(rotation) * x;
  const double moebius = std::abs(moebius_apply(a, x) - rotation * moebius_apply(Complex(rho), x0));
  const double inversion =
      std::abs(inversion_complex(a, x) - rotation * inversion_complex(Complex(rho), x0));
  return std::max(moebius, inversion);
}

}  // namespace kelvin_eit
