#pragma once

#include <functional>

#include <Eigen/Dense>

namespace kelvin_eit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using ScalarField = std::function<double(const Vec&)>;

/// Inversion in the sphere S(center, radius) in R^d:
///   I(x) = radius^2 (x - center) / |x - center|^2 + center.
/// Also carries the conformal factor g(x) = radius / |x - center|.
class InversionMap {
 public:
  InversionMap(Vec center, double radius);

  int dim() const { return static_cast<int>(center_.size()); }
  const Vec& center() const { return center_; }
  double radius() const { return radius_; }

  /// Conformal factor g(x); throws SingularityError at the center.
  double factor(const Vec& x) const;
  Vec apply(const Vec& x) const;

 private:
  void guard(const Vec& x) const;

  Vec center_;
  double radius_;
};

Vec invert_point(const InversionMap& map, const Vec& x);

/// g^2(x) (id - 2 P_{x-center}).
Mat jacobian(const InversionMap& map, const Vec& x);

/// (K f)(x) = g^{d-2}(x) f(I(x)).
double kelvin_apply(const InversionMap& map, const ScalarField& f, const Vec& x);

/// |Delta(K u)(x) - g^4(x) K(Delta u)(x)| with the left Laplacian taken by
/// central second differences of step h.
double kelvin_laplace_residual(const InversionMap& map, const ScalarField& u,
                               const ScalarField& laplacian_u, const Vec& x, double h);

/// Inversion I_a that leaves the closed unit ball invariant and maps the
/// concentric ball B(0, r) onto B(C, R). Built by one of the two
/// correspondence_from_* functions.
///
/// The degenerate case C = 0 is represented by `concentric == true`: the
/// point map is the identity, r == R, rho == 0 and a == 0.
struct BallCorrespondence {
  int dim = 0;
  bool concentric = false;
  Vec a;        // image of the origin
  double rho = 0.0;
  Vec e_a;      // a / |a|; e1 in the concentric case
  Vec a_hat;    // a / rho^2, center of the inversion sphere (outside the ball)
  double b = 0.0;  // inversion radius sqrt(1 - rho^2) / rho
  double r = 0.0;
  Vec C;
  double R = 0.0;

  /// I_a as a general inversion. Throws DomainError for the concentric case.
  InversionMap inversion() const;
  /// I_a(x), or x itself for the concentric case.
  Vec apply(const Vec& x) const;
  /// g_a(x) = b / |x - a_hat|; 1 for the concentric case.
  double factor(const Vec& x) const;
  /// (K_a f)(x) = g_a^{d-2}(x) f(I_a(x)).
  double kelvin(const ScalarField& f, const Vec& x) const;
};

BallCorrespondence correspondence_from_concentric(const Vec& a, double r);
BallCorrespondence correspondence_from_ball(const Vec& C, double R);

/// I_a restricted to the unit sphere: (id - 2 P_{x - a_hat}) x.
Vec boundary_inversion(const BallCorrespondence& corr, const Vec& x);

/// Scalar multipliers on the unit sphere attached to a correspondence.
/// g_a^{-2}(x) = c0 + c1 (x . a_hat) for |x| = 1.
class BoundaryMultipliers {
 public:
  explicit BoundaryMultipliers(const BallCorrespondence& corr);

  double c0() const { return c0_; }
  double c1() const { return c1_; }
  /// Coefficient of t = x . e_a in g_a^{-2}, i.e. c1 / rho.
  double c1_axial() const { return c1_axial_; }

  double g(const Vec& x) const;
  double g_pow(const Vec& x, double s) const;
  /// Zonal form c0 + c1 (x . a_hat).
  double g_inv_sq_zonal(const Vec& x) const;
  /// H_a multiplier x . (x - a_hat) / |x - a_hat|^2; 0 in the concentric case.
  double h(const Vec& x) const;

  double sup_g_sq() const;
  double inf_g_sq() const;

 private:
  BallCorrespondence corr_;
  double c0_;
  double c1_;
  double c1_axial_;
};

BoundaryMultipliers multipliers(const BallCorrespondence& corr);

/// Householder reflection H (symmetric, orthogonal) with H e1 = axis.
/// Maps the canonical frame, with e1 as the symmetry axis, onto the frame
/// aligned with `axis`; H is its own inverse.
Mat axis_reflection(const Vec& axis);

/// Canonical basis vector e_i in R^d.
Vec unit_vector(int d, int i = 0);

}  // namespace kelvin_eit
