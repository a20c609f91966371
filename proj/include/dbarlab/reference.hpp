#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "dbarlab/error.hpp"

namespace dbarlab {

/// Number of linearly independent degree-ℓ spherical harmonics on S^{d-1}.
inline long harmonic_dimension(int l, int d) {
  auto choose = [](long n, long k) -> long {
    if (k < 0 || n < k) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  return choose(l + d - 1, d - 1) - choose(l + d - 3, d - 1);
}

/// Ascending roots of f in (lo, hi), bracketed on a uniform scan and refined
/// by bisection to full precision.
inline std::vector<double> bracketed_roots(const std::function<double(double)>& f, double lo, double hi,
                                           double step = 0.05) {
  std::vector<double> out;
  double a = lo, fa = f(a);
  while (a < hi) {
    const double b = std::min(a + step, hi);
    const double fb = f(b);
    if (fa == 0.0) {
      out.push_back(a);
    } else if ((fa < 0) != (fb < 0) && fb != 0.0) {
      double x0 = a, x1 = b, f0 = fa;
      for (int it = 0; it < 200 && x1 - x0 > 4 * std::numeric_limits<double>::epsilon() * x1; ++it) {
        const double mid = 0.5 * (x0 + x1);
        const double fm = f(mid);
        if ((fm < 0) == (f0 < 0)) {
          x0 = mid;
          f0 = fm;
        } else {
          x1 = mid;
        }
      }
      out.push_back(0.5 * (x0 + x1));
    }
    a = b;
    fa = fb;
  }
  return out;
}

/// Positive zeros of J_ν below x_max.
inline std::vector<double> bessel_zeros(double nu, double x_max) {
  return bracketed_roots([nu](double x) { return std::cyl_bessel_j(nu, x); }, 1e-6, x_max);
}

/// Positive roots below x_max of x J'_μ(x) - ν J_μ(x), the radial Neumann
/// condition for r^{-ν} J_μ(kr) on the unit ball.
inline std::vector<double> neumann_radial_roots(double mu, double nu, double x_max) {
  auto f = [mu, nu](double x) {
    // x J'_μ = μ J_μ - x J_{μ+1}, valid at μ = 0 where J_{μ-1} is out of range
    return (mu - nu) * std::cyl_bessel_j(mu, x) - x * std::cyl_bessel_j(mu + 1, x);
  };
  return bracketed_roots(f, 1e-3, x_max);
}

namespace detail {

// Eigenvalues x² (with multiplicity) of the ball of unit radius in ℝ^d,
// where x runs over roots(μ = ν + ℓ) for ℓ = 0, 1, ...; the first k values.
template <class Roots>
std::vector<double> ball_eigs(int d, long k, Roots roots, bool with_zero) {
  if (d < 2) throw InputError("ball eigenvalues: dimension must be >= 2");
  if (k < 1) throw InputError("ball eigenvalues: k must be >= 1");
  const double nu = (d - 2) / 2.0;
  for (double x_max = 16.0;; x_max *= 1.5) {
    std::vector<double> vals;
    if (with_zero) vals.push_back(0.0);
    for (int l = 0;; ++l) {
      auto r = roots(nu + l, nu, x_max);
      if (r.empty()) break;  // roots increase with ℓ
      const long mult = harmonic_dimension(l, d);
      for (double x : r)
        for (long m = 0; m < mult; ++m) vals.push_back(x * x);
    }
    std::sort(vals.begin(), vals.end());
    // every eigenvalue below x_max² is present; accept once k of them are
    if (static_cast<long>(vals.size()) >= k && vals[static_cast<std::size_t>(k - 1)] < x_max * x_max) {
      vals.resize(static_cast<std::size_t>(k));
      return vals;
    }
  }
}

}  // namespace detail

/// First k Dirichlet Laplacian eigenvalues of the ball of the given radius in ℝ^d.
inline std::vector<double> dirichlet_eigs_ball(int d, double radius, long k) {
  if (!(radius > 0)) throw InputError("radius must be positive");
  auto v = detail::ball_eigs(d, k, [](double mu, double, double xm) { return bessel_zeros(mu, xm); }, false);
  for (auto& x : v) x /= radius * radius;
  return v;
}

/// First k Neumann Laplacian eigenvalues (λ₁ = 0) of the ball in ℝ^d.
inline std::vector<double> neumann_eigs_ball(int d, double radius, long k) {
  if (!(radius > 0)) throw InputError("radius must be positive");
  auto v = detail::ball_eigs(
      d, k, [](double mu, double nu, double xm) { return neumann_radial_roots(mu, nu, xm); }, true);
  for (auto& x : v) x /= radius * radius;
  return v;
}

}  // namespace dbarlab
