#include "kelvin_eit/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace kelvin_eit {

std::size_t sturm_count(const SymTridiagonal& t, double x) {
  const std::size_t n = t.size();
  constexpr double tiny = std::numeric_limits<double>::min();
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double coupling = i == 0 ? 0.0 : t.off[i - 1] * t.off[i - 1];
    q = t.diag[i] - x - (i == 0 ? 0.0 : coupling / q);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

double largest_eigenvalue(const SymTridiagonal& t, double rel_tol) {
  const std::size_t n = t.size();
  if (n == 0) throw std::invalid_argument("empty tridiagonal matrix");
  if (n == 1) return t.diag[0];

  // Gershgorin interval.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double radius = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) +
                          (i + 1 < n ? std::abs(t.off[i]) : 0.0);
    lo = std::min(lo, t.diag[i] - radius);
    hi = std::max(hi, t.diag[i] + radius);
  }
  const double span = hi - lo;
  lo -= 1e-14 * span + std::numeric_limits<double>::min();
  hi += 1e-14 * span + std::numeric_limits<double>::min();

  // Invariant: count(lo) <= n - 1, count(hi) == n.
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(t, mid) == n)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

TridiagonalSpectrum eigen_first_components(const SymTridiagonal& t) {
  const int n = static_cast<int>(t.size());
  std::vector<double> d = t.diag;
  std::vector<double> e(n, 0.0);
  std::copy(t.off.begin(), t.off.end(), e.begin());
  std::vector<double> z(n, 0.0);
  if (n > 0) z[0] = 1.0;

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > 60) throw std::runtime_error("tridiagonal QL did not converge");

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      int i = m - 1;
      bool deflated = false;
      for (; i >= l; --i) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        const double zf = z[i + 1];
        z[i + 1] = s * z[i] + c * zf;
        z[i] = c * z[i] - s * zf;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
  TridiagonalSpectrum out;
  out.values.reserve(n);
  out.first_components.reserve(n);
  for (int k : order) {
    out.values.push_back(d[k]);
    out.first_components.push_back(z[k]);
  }
  return out;
}

}  // namespace kelvin_eit
