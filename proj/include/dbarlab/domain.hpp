#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dbarlab/error.hpp"
#include "dbarlab/expr.hpp"
#include "dbarlab/form.hpp"

namespace dbarlab {

using Point = std::vector<cplx>;

/// Star-shaped (about the origin) domain {r < 0} in ℂⁿ with real defining
/// function r given as an Expr.
class Domain {
 public:
  Domain(int n, Expr r, std::string label) : n_(n), r_(std::move(r)), label_(std::move(label)) {
    if (n < 2 || n > kMaxDim) throw InputError("Domain: complex dimension must be in 2.." + std::to_string(kMaxDim));
    for (int k = 0; k < n; ++k) {
      dr_dz_.push_back(r_.diff_z(k));
      dr_dzb_.push_back(r_.diff_zbar(k));
    }
    const Point origin(n, cplx{});
    if (!(r_.value(origin).real() < 0)) throw DegenerateError("Domain " + label_ + ": r must be negative at the star center");
  }

  int dim() const noexcept { return n_; }
  const std::string& label() const noexcept { return label_; }
  const Expr& defining_function() const noexcept { return r_; }
  /// ∂r/∂z_k and ∂r/∂z̄_k as expressions (0-based k).
  const std::vector<Expr>& dr_dz_expr() const noexcept { return dr_dz_; }
  const std::vector<Expr>& dr_dzbar_expr() const noexcept { return dr_dzb_; }

  double r(std::span<const cplx> z) const { return r_.value(z).real(); }

  std::vector<cplx> dr_dz(std::span<const cplx> z) const {
    Jet j = r_.jet(z);
    return {j.dz.begin(), j.dz.begin() + n_};
  }
  /// |∂r|² = Σ_k |∂r/∂z_k|².
  double dr_norm_sq(std::span<const cplx> z) const {
    Jet j = r_.jet(z);
    double s = 0;
    for (int k = 0; k < n_; ++k) s += std::norm(j.dz[k]);
    return s;
  }
  /// Euclidean gradient length in ℝ^{2n}; equals 2|∂r| for real r.
  double grad_norm(std::span<const cplx> z) const { return 2.0 * std::sqrt(dr_norm_sq(z)); }

  /// Distance from the origin to ∂Ω along the unit direction omega.
  double boundary_radius(std::span<const cplx> omega, int sign_checks = 32) const {
    Point p(n_);
    auto g = [&](double s) {
      for (int k = 0; k < n_; ++k) p[k] = s * omega[k];
      return r(p);
    };
    auto dg = [&](double s) {
      for (int k = 0; k < n_; ++k) p[k] = s * omega[k];
      Jet j = r_.jet(p);
      cplx acc{};
      for (int k = 0; k < n_; ++k) acc += j.dz[k] * omega[k] + j.dzb[k] * std::conj(omega[k]);
      return acc.real();
    };
    double hi = 1.0;
    int grow = 0;
    while (g(hi) <= 0) {
      hi *= 2;
      if (++grow > 40) throw DegenerateError("Domain " + label_ + ": ray does not leave the domain");
    }
    // exactly one sign change along the ray
    int changes = 0;
    double prev = g(0.0);
    double lo = 0.0;
    for (int i = 1; i <= sign_checks; ++i) {
      const double s = hi * i / sign_checks;
      const double v = g(s);
      if ((v > 0) != (prev > 0)) {
        ++changes;
        if (changes == 1) {
          lo = hi * (i - 1) / sign_checks;
        }
      }
      prev = v;
    }
    if (changes != 1) throw DegenerateError("Domain " + label_ + ": star-shape violation along a ray");
    hi = lo + hi / sign_checks;
    double s = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
      const double v = g(s);
      if (v == 0.0) return s;
      if (v < 0) lo = s;
      else hi = s;
      const double d = dg(s);
      double next = d != 0.0 ? s - v / d : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - s) <= 1e-16 * std::max(1.0, s) || hi - lo <= 1e-16 * std::max(1.0, s)) return next;
      s = next;
    }
    return s;
  }

  Point boundary_point(std::span<const cplx> omega) const {
    const double R = boundary_radius(omega);
    Point p(n_);
    for (int k = 0; k < n_; ++k) p[k] = R * omega[k];
    return p;
  }

  // provenance for reports
  double delta = 0.0;
  std::string phi_label;

 private:
  int n_;
  Expr r_;
  std::string label_;
  std::vector<Expr> dr_dz_;
  std::vector<Expr> dr_dzb_;
};

/// Unit ball, r = (|z|² - 1)/2, normalized: |∇r| = |z| = 1 on the sphere.
inline Domain make_ball(int n) {
  Expr r(-0.5);
  for (int k = 0; k < n; ++k) r = r + Expr(0.5) * Expr::z(k) * Expr::zbar(k);
  return Domain(n, r, "ball");
}

/// Named pluriharmonic perturbation profiles.
inline Expr pluriharmonic_profile(const std::string& name, int n) {
  if (name == "rez1sq") return Expr(0.5) * (Expr::z(0).pow(2) + Expr::zbar(0).pow(2));
  if (name == "rez1z2") {
    if (n < 2) throw InputError("rez1z2 needs n >= 2");
    return Expr(0.5) * (Expr::z(0) * Expr::z(1) + Expr::zbar(0) * Expr::zbar(1));
  }
  throw InputError("unknown perturbation profile '" + name + "' (expected rez1sq or rez1z2)");
}

namespace detail {

// Radical-inverse (Halton) coordinate.
inline double halton(std::size_t i, int base) {
  double f = 1.0, x = 0.0;
  while (i > 0) {
    f /= base;
    x += f * static_cast<double>(i % static_cast<std::size_t>(base));
    i /= static_cast<std::size_t>(base);
  }
  return x;
}

}  // namespace detail

/// Deterministic low-discrepancy unit directions in ℂⁿ (uniform on S^{2n-1}).
inline std::vector<Point> sphere_directions(int n, int m) {
  static constexpr int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23};
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) {
    std::vector<double> cuts;
    for (int j = 0; j < n - 1; ++j) cuts.push_back(detail::halton(static_cast<std::size_t>(i), primes[j]));
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> u;
    double prev = 0;
    for (double c : cuts) {
      u.push_back(c - prev);
      prev = c;
    }
    u.push_back(1.0 - prev);
    Point w(n);
    for (int k = 0; k < n; ++k) {
      const double ang = 2.0 * std::numbers::pi * detail::halton(static_cast<std::size_t>(i), primes[n - 1 + k]);
      w[k] = std::sqrt(u[k]) * std::polar(1.0, ang);
    }
    out.push_back(std::move(w));
  }
  return out;
}

/// The perturbed ball r_δ = (|z|² - 1)/2 + δ·φ for a real pluriharmonic
/// polynomial φ. Construction fails if the result is not star-shaped.
inline Domain make_perturbed_ball(int n, double delta, const Expr& phi, const std::string& phi_label) {
  if (!(delta >= 0)) throw InputError("make_perturbed_ball: delta must be >= 0");
  auto poly = phi.to_poly(n);
  if (!poly) throw InputError("make_perturbed_ball: profile must be a polynomial");
  if (!(*poly == poly->conj())) {
    // tolerate rounding asymmetry only if it is genuinely negligible
    Poly diff = *poly - poly->conj();
    for (const auto& [e, c] : diff.terms())
      if (std::abs(c) > 1e-14) throw InputError("make_perturbed_ball: profile must be real-valued");
  }
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (!poly->diff_z(j).diff_zbar(k).is_zero())
        throw InputError("make_perturbed_ball: profile is not pluriharmonic");
  Expr r = make_ball(n).defining_function() + Expr(delta) * phi;
  std::ostringstream label;
  label << "pball:delta=" << delta << ",phi=" << phi_label;
  Domain d(n, r, delta == 0.0 ? "ball" : label.str());
  d.delta = delta;
  d.phi_label = phi_label;
  for (const auto& w : sphere_directions(n, 512)) d.boundary_radius(w, 64);
  return d;
}

inline Domain make_perturbed_ball(int n, double delta, const std::string& phi = "rez1sq") {
  return make_perturbed_ball(n, delta, pluriharmonic_profile(phi, n), phi);
}

/// `ball` | `pball:delta=<float>,phi=<rez1sq|rez1z2>`.
inline Domain parse_domain(const std::string& spec, int n = 2) {
  if (spec == "ball") return make_ball(n);
  const std::string prefix = "pball:";
  if (spec.rfind(prefix, 0) != 0) throw InputError("unknown domain spec '" + spec + "'");
  double delta = 0.0;
  std::string phi = "rez1sq";
  std::stringstream ss(spec.substr(prefix.size()));
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("domain spec: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    if (key == "delta") {
      try {
        delta = std::stod(val);
      } catch (const std::exception&) {
        throw InputError("domain spec: bad delta '" + val + "'");
      }
    } else if (key == "phi") {
      phi = val;
    } else {
      throw InputError("domain spec: unknown key '" + key + "'");
    }
  }
  return make_perturbed_ball(n, delta, phi);
}

/// m boundary points along deterministic low-discrepancy rays.
inline std::vector<Point> boundary_samples(const Domain& dom, int m) {
  if (m < 1) throw InputError("boundary_samples: m must be >= 1");
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(m));
  for (const auto& w : sphere_directions(dom.dim(), m)) out.push_back(dom.boundary_point(w));
  return out;
}

/// Sampled diameter: largest pairwise distance among boundary points on m
/// rays and their antipodes.
inline double diameter(const Domain& dom, int m = 2048) {
  std::vector<Point> pts;
  for (const auto& w : sphere_directions(dom.dim(), m)) {
    pts.push_back(dom.boundary_point(w));
    Point neg(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) neg[k] = -w[k];
    pts.push_back(dom.boundary_point(neg));
  }
  double best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double d2 = 0;
      for (std::size_t k = 0; k < pts[i].size(); ++k) d2 += std::norm(pts[i][k] - pts[j][k]);
      best = std::max(best, d2);
    }
  return std::sqrt(best);
}

/// Grid points of [-L, L]^{2n} inside either domain, plus boundary samples of
/// both; L is the largest sampled boundary radius.
inline std::vector<Point> c2_sample_set(const Domain& a, const Domain& b, int grid = 9, int boundary = 256) {
  if (a.dim() != b.dim()) throw InputError("c2_sample_set: dimension mismatch");
  const int n = a.dim();
  std::vector<Point> out = boundary_samples(a, boundary);
  for (auto& p : boundary_samples(b, boundary)) out.push_back(std::move(p));
  double L = 0;
  for (const auto& p : out) {
    double s = 0;
    for (auto v : p) s += std::norm(v);
    L = std::max(L, std::sqrt(s));
  }
  std::vector<int> idx(2 * n, 0);
  while (true) {
    Point p(n);
    for (int k = 0; k < n; ++k) {
      auto coord = [&](int i) { return grid == 1 ? 0.0 : -L + 2.0 * L * idx[i] / (grid - 1); };
      p[k] = cplx(coord(k), coord(n + k));
    }
    if (a.r(p) <= 0 || b.r(p) <= 0) out.push_back(std::move(p));
    int i = 0;
    while (i < 2 * n && ++idx[i] == grid) idx[i++] = 0;
    if (i == 2 * n) break;
  }
  return out;
}

/// Real gradient and Hessian of a real-valued Expr at a point, built from
/// Wirtinger derivatives. Coordinates are ordered (x_1..x_n, y_1..y_n).
struct RealDerivatives {
  std::vector<double> gradient;
  std::vector<std::vector<double>> hessian;
};

class RealDifferentiator {
 public:
  RealDifferentiator(const Expr& f, int n) : f_(f), n_(n) {
    for (int j = 0; j < 2 * n; ++j) {
      const Expr d1 = j < n ? f.diff_z(j) : f.diff_zbar(j - n);
      first_.push_back(d1);
      std::vector<Expr> row;
      for (int k = 0; k < 2 * n; ++k) row.push_back(k < n ? d1.diff_z(k) : d1.diff_zbar(k - n));
      second_.push_back(std::move(row));
    }
  }

  RealDerivatives at(std::span<const cplx> z) const {
    const int m = 2 * n_;
    // real coordinate a: x_k = ∂z_k + ∂z̄_k ; y_k = i(∂z_k - ∂z̄_k)
    auto coef = [&](int a, int w) -> cplx {
      const int k = a % n_;
      const bool is_y = a >= n_;
      if (w == k) return is_y ? cplx(0, 1) : cplx(1);
      if (w == n_ + k) return is_y ? cplx(0, -1) : cplx(1);
      return {};
    };
    std::vector<cplx> w1(m);
    std::vector<std::vector<cplx>> w2(m, std::vector<cplx>(m));
    for (int j = 0; j < m; ++j) {
      w1[j] = first_[j].value(z);
      for (int k = 0; k < m; ++k) w2[j][k] = second_[j][k].value(z);
    }
    RealDerivatives out{std::vector<double>(m), std::vector<std::vector<double>>(m, std::vector<double>(m))};
    for (int a = 0; a < m; ++a) {
      cplx g{};
      for (int w = 0; w < m; ++w) g += coef(a, w) * w1[w];
      out.gradient[a] = g.real();
      for (int b = 0; b < m; ++b) {
        cplx h{};
        for (int w = 0; w < m; ++w)
          for (int v = 0; v < m; ++v) h += coef(a, w) * coef(b, v) * w2[w][v];
        out.hessian[a][b] = h.real();
      }
    }
    return out;
  }

  double value(std::span<const cplx> z) const { return f_.value(z).real(); }

 private:
  Expr f_;
  int n_;
  std::vector<Expr> first_;
  std::vector<std::vector<Expr>> second_;
};

/// Sampled C² distance: max over samples of |f| + |∇f| + max_ab |∂_a∂_b f|
/// for f = r_1 - r_2.
inline double c2_distance(const Domain& a, const Domain& b, std::span<const Point> samples) {
  if (samples.empty()) throw InputError("c2_distance: empty sample set");
  if (a.dim() != b.dim()) throw InputError("c2_distance: dimension mismatch");
  RealDifferentiator diff(a.defining_function() - b.defining_function(), a.dim());
  double best = 0;
  for (const auto& p : samples) {
    auto d = diff.at(p);
    double g = 0, h = 0;
    for (double v : d.gradient) g += v * v;
    for (const auto& row : d.hessian)
      for (double v : row) h = std::max(h, std::abs(v));
    best = std::max(best, std::abs(diff.value(p)) + std::sqrt(g) + h);
  }
  return best;
}

// ---- boundary-condition helpers on a domain ----------------------------------

/// (∂̄r)*⌟u evaluated at z.
inline FormValue normal_trace(const FormExpr& u, const Domain& dom, std::span<const cplx> z) {
  return contract_value(dom.dr_dz(z), evaluate(u, z));
}

inline TangentialNormal split_tangential_normal(const FormValue& u, const Domain& dom, std::span<const cplx> z,
                                                double min_dr_sq = 0.05) {
  return split_tangential_normal_value(dom.dr_dz(z), u, min_dr_sq);
}

}  // namespace dbarlab
