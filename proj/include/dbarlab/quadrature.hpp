#pragma once

#include <cmath>
#include <utility>
#include <numbers>
#include <vector>

#include "dbarlab/domain.hpp"
#include "dbarlab/error.hpp"
#include "dbarlab/poly.hpp"

namespace dbarlab {

struct GaussRule {
  std::vector<double> nodes;  // on [0, 1]
  std::vector<double> weights;
};

/// m-point Gauss-Legendre rule mapped to [0, 1].
inline GaussRule gauss_legendre(int m) {
  if (m < 1) throw InputError("gauss_legendre: need at least one node");
  GaussRule g{std::vector<double>(m), std::vector<double>(m)};
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int j = 2; j <= m; ++j) {
        const double p2 = ((2.0 * j - 1) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1, p1 = x;
    for (int j = 2; j <= m; ++j) {
      const double p2 = ((2.0 * j - 1) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = m * (x * p1 - p0) / (x * x - 1);
    const double w = 2.0 / ((1 - x * x) * dp * dp);
    g.nodes[i] = 0.5 * (1 - x);
    g.nodes[m - 1 - i] = 0.5 * (1 + x);
    g.weights[i] = g.weights[m - 1 - i] = 0.5 * w;
  }
  return g;
}

/// One ray of the product rule: unit direction, angular weight, boundary
/// radius along it.
struct Ray {
  Point omega;
  double weight;
  double radius;
};

/// Product rule on a star-shaped domain: Gauss-Legendre in s ∈ [0, R(ω)]
/// with Jacobian s^{2n-1}, times a sphere rule in ω. The sphere rule writes
/// ω_k = √u_k e^{iφ_k} with u on the simplex (conical Gauss product) and
/// trapezoid rules in each φ_k.
class Quadrature {
 public:
  Quadrature(const Domain& dom, int n_rad, int n_ang) : n_(dom.dim()), n_rad_(n_rad), n_ang_(n_ang), label_(dom.label()) {
    if (n_rad < 2 || n_ang < 2) throw InputError("quadrature: n_rad and n_ang must be >= 2");
    radial_ = gauss_legendre(n_rad);
    const GaussRule simplex = gauss_legendre(n_ang);
    const int n = n_;
    const double dphi = 2.0 * std::numbers::pi / n_ang;
    const double base = std::pow(dphi, n) / std::pow(2.0, n - 1);

    std::vector<int> si(n - 1, 0), pi(n, 0);
    while (true) {
      // simplex point by the conical (Duffy) map
      std::vector<double> u(n);
      double rest = 1.0, wsx = 1.0;
      for (int j = 0; j < n - 1; ++j) {
        const double x = simplex.nodes[si[j]];
        u[j] = rest * x;
        wsx *= simplex.weights[si[j]] * rest;
        rest *= 1 - x;
      }
      u[n - 1] = rest;
      std::fill(pi.begin(), pi.end(), 0);
      while (true) {
        Point w(n);
        for (int k = 0; k < n; ++k) w[k] = std::sqrt(u[k]) * std::polar(1.0, dphi * pi[k]);
        Ray ray{w, base * wsx, 0.0};
        ray.radius = dom.boundary_radius(ray.omega, 16);
        rays_.push_back(std::move(ray));
        int i = 0;
        while (i < n && ++pi[i] == n_ang) pi[i++] = 0;
        if (i == n) break;
      }
      int j = 0;
      while (j < n - 1 && ++si[j] == n_ang) si[j++] = 0;
      if (j == n - 1) break;
    }
  }

  int dim() const noexcept { return n_; }
  int n_rad() const noexcept { return n_rad_; }
  int n_ang() const noexcept { return n_ang_; }
  const std::string& domain_label() const noexcept { return label_; }
  const std::vector<Ray>& rays() const noexcept { return rays_; }
  const GaussRule& radial() const noexcept { return radial_; }
  std::size_t size() const noexcept { return rays_.size() * radial_.nodes.size(); }

  /// Calls f(point, weight) for every node in a fixed order.
  template <class F>
  void for_each(F&& f) const {
    Point p(n_);
    for (const auto& ray : rays_) {
      for (int j = 0; j < n_rad_; ++j) {
        const double s = ray.radius * radial_.nodes[j];
        for (int k = 0; k < n_; ++k) p[k] = s * ray.omega[k];
        f(std::as_const(p), ray.weight * radial_.weights[j] * ray.radius * std::pow(s, 2 * n_ - 1));
      }
    }
  }

  std::vector<Point> points() const {
    std::vector<Point> out;
    out.reserve(size());
    for_each([&](const Point& p, double) { out.push_back(p); });
    return out;
  }
  std::vector<double> weights() const {
    std::vector<double> out;
    out.reserve(size());
    for_each([&](const Point&, double w) { out.push_back(w); });
    return out;
  }

  template <class F>
  cplx integrate(F&& f) const {
    cplx s{};
    for_each([&](const Point& p, double w) { s += w * cplx(f(p)); });
    return s;
  }

  double volume() const {
    double v = 0;
    for_each([&](const Point&, double w) { v += w; });
    return v;
  }

 private:
  int n_;
  int n_rad_;
  int n_ang_;
  std::string label_;
  GaussRule radial_;
  std::vector<Ray> rays_;
};

inline Quadrature make_quadrature(const Domain& dom, int n_rad, int n_ang) { return Quadrature(dom, n_rad, n_ang); }

/// Table of moments μ(e) = ∫ z^α z̄^β dV for all exponents of total degree
/// ≤ max_degree, computed with the quadrature rule ray by ray.
class MomentTable {
 public:
  MomentTable(const Quadrature& quad, int max_degree) : n_(quad.dim()), max_degree_(max_degree) {
    const int vars = 2 * n_;
    stride_.fill(0);
    std::size_t s = 1;
    for (int i = 0; i < vars; ++i) {
      stride_[i] = s;
      s *= static_cast<std::size_t>(max_degree + 1);
    }
    data_.assign(s, cplx{});
    const auto exps = monomials(n_, max_degree);
    std::vector<std::size_t> offsets;
    offsets.reserve(exps.size());
    for (const auto& e : exps) offsets.push_back(index(e));

    const auto& rad = quad.radial();
    std::vector<double> S(static_cast<std::size_t>(max_degree + 1));
    std::vector<std::vector<cplx>> pw(vars, std::vector<cplx>(static_cast<std::size_t>(max_degree + 1)));
    for (const auto& ray : quad.rays()) {
      const double R = ray.radius;
      std::fill(S.begin(), S.end(), 0.0);
      for (std::size_t j = 0; j < rad.nodes.size(); ++j) {
        const double x = R * rad.nodes[j];
        double p = rad.weights[j] * R * std::pow(x, 2 * n_ - 1);
        for (int m = 0; m <= max_degree; ++m) {
          S[m] += p;
          p *= x;
        }
      }
      for (int k = 0; k < n_; ++k) {
        pw[k][0] = pw[n_ + k][0] = 1.0;
        for (int a = 1; a <= max_degree; ++a) {
          pw[k][a] = pw[k][a - 1] * ray.omega[k];
          pw[n_ + k][a] = pw[n_ + k][a - 1] * std::conj(ray.omega[k]);
        }
      }
      for (std::size_t i = 0; i < exps.size(); ++i) {
        const auto& e = exps[i];
        cplx v = ray.weight * S[total_degree(e)];
        for (int slot = 0; slot < vars; ++slot)
          if (e[slot]) v *= pw[slot][e[slot]];
        data_[offsets[i]] += v;
      }
    }
  }

  int dim() const noexcept { return n_; }
  int max_degree() const noexcept { return max_degree_; }

  std::size_t index(const Exponent& e) const {
    std::size_t i = 0;
    for (int slot = 0; slot < 2 * n_; ++slot) i += e[slot] * stride_[slot];
    return i;
  }
  const std::array<std::size_t, 2 * kMaxDim>& strides() const noexcept { return stride_; }
  cplx operator[](std::size_t i) const { return data_[i]; }
  cplx at(const Exponent& e) const {
    if (total_degree(e) > max_degree_) throw InputError("MomentTable: exponent beyond table degree");
    return data_[index(e)];
  }

  /// ∫ p dV for a polynomial of degree ≤ max_degree.
  cplx integrate(const Poly& p) const {
    cplx s{};
    for (const auto& [e, c] : p.terms()) s += c * at(e);
    return s;
  }

 private:
  int n_;
  int max_degree_;
  std::array<std::size_t, 2 * kMaxDim> stride_{};
  std::vector<cplx> data_;
};

}  // namespace dbarlab
