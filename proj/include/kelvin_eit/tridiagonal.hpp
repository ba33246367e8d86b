#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kelvin_eit {

/// Symmetric tridiagonal matrix: `diag` has n entries, `off` has n - 1
/// entries with off[i] coupling rows i and i + 1.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const { return diag.size(); }
};

/// Number of eigenvalues strictly less than x (Sturm sequence / LDL^T
/// inertia count).
std::size_t sturm_count(const SymTridiagonal& t, double x);

/// Largest eigenvalue by Sturm bisection, to relative width `rel_tol`.
double largest_eigenvalue(const SymTridiagonal& t, double rel_tol = 1e-15);

struct TridiagonalSpectrum {
  std::vector<double> values;           // ascending
  std::vector<double> first_components;  // first entry of each unit eigenvector
};

/// All eigenvalues plus the first component of every eigenvector, by
/// implicit-shift QL. O(n^2); the full eigenvector matrix is never formed.
TridiagonalSpectrum eigen_first_components(const SymTridiagonal& t);

}  // namespace kelvin_eit
