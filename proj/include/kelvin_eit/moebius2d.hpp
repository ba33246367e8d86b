#pragma once

#include <complex>

namespace kelvin_eit {

using Complex = std::complex<double>;

/// M_a(x) = (x - a) / (conj(a) x - 1), the disk automorphism exchanging a and 0.
/// Throws SingularityError at the pole x = 1 / conj(a).
Complex moebius_apply(Complex a, Complex x);

/// I_a(x) in complex notation: b^2 (x - a_hat) / |x - a_hat|^2 + a_hat with
/// a_hat = a / |a|^2, b^2 = (1 - |a|^2) / |a|^2. Requires 0 < |a| < 1.
Complex inversion_complex(Complex a, Complex x);

/// Reflection across the line span{a}: (a / conj(a)) conj(z).
Complex reflect_across(Complex a, Complex z);

/// |I_a(x) - Ref_a(M_a(x))| with I_a evaluated by the real-vector geometry
/// code and the right side by complex arithmetic.
double reflection_identity_residual(Complex a, Complex x);

struct IntersectionReport {
  Complex inversion_image;  // I_a(x)
  Complex moebius_image;    // M_a(x)
  double r_xa = 0.0;        // |x - a| / |conj(a) x - 1|
  double r_tilde = 0.0;     // b^2 / |x - a_hat|
  double max_residual = 0.0;
  bool passed = false;
};

/// Checks that I_a(x) and M_a(x) both lie on S(0, r_xa) and on S(a_hat, r_tilde).
IntersectionReport intersection_check(Complex a, Complex x, double tol = 1e-12);

/// max(|M_a(x) - e^{i zeta} M_rho(e^{-i zeta} x)|, same for I_a) with a = rho e^{i zeta}.
double rotation_covariance_residual(double rho, double zeta, Complex x);

}  // namespace kelvin_eit
