#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dbarlab/domain.hpp"
#include "dbarlab/error.hpp"
#include "dbarlab/form.hpp"
#include "dbarlab/poly.hpp"

namespace dbarlab {

enum class BasisKind { dbar_neumann, dirichlet, neumann };

inline std::string to_string(BasisKind k) {
  switch (k) {
    case BasisKind::dbar_neumann: return "dbar-neumann";
    case BasisKind::dirichlet: return "dirichlet";
    case BasisKind::neumann: return "neumann";
  }
  return "?";
}

/// How the boundary condition is imposed on dbar-neumann elements.
///  polynomial: |∂r|²v - ∂̄r∧((∂̄r)*⌟v) and r·v, polynomial whenever r is.
///  bump:       v - b(r)∂̄r∧((∂̄r)*⌟v)/|∂r|² plus r·∂̄r∧(p dz̄_K).
enum class Projection { polynomial, bump };

inline std::string to_string(Projection p) { return p == Projection::polynomial ? "polynomial" : "bump"; }

inline Projection parse_projection(const std::string& s) {
  if (s == "polynomial" || s == "auto") return Projection::polynomial;
  if (s == "bump") return Projection::bump;
  throw InputError("unknown basis projection '" + s + "' (expected auto, polynomial or bump)");
}

/// Component polynomials of a form, ordered as multi_indices(n, q).
using PolyForm = std::vector<Poly>;

struct TrialBasis {
  std::vector<FormExpr> elements;
  /// Same elements as polynomials, when every coefficient is polynomial.
  std::optional<std::vector<PolyForm>> polys;
  /// Degree of the monomial each element was generated from.
  std::vector<int> generator_degree;
  int n = 0;
  int q = 0;
  int deg_cap = 0;
  BasisKind kind = BasisKind::dbar_neumann;
  Projection projection = Projection::polynomial;
  std::string domain_label;

  std::size_t size() const noexcept { return elements.size(); }

  /// The sub-basis generated by monomials of degree ≤ deg.
  TrialBasis truncated(int deg) const {
    TrialBasis out = *this;
    out.deg_cap = deg;
    out.elements.clear();
    out.generator_degree.clear();
    if (out.polys) out.polys->clear();
    for (std::size_t i = 0; i < size(); ++i)
      if (generator_degree[i] <= deg) {
        out.elements.push_back(elements[i]);
        out.generator_degree.push_back(generator_degree[i]);
        if (polys) out.polys->push_back((*polys)[i]);
      }
    return out;
  }
};

inline FormExpr to_form(const PolyForm& p, int n, int q) {
  FormExpr u(n, q);
  const auto keys = multi_indices(n, q);
  for (std::size_t i = 0; i < keys.size(); ++i)
    if (!p[i].is_zero()) u.set(keys[i], Expr::from_poly(p[i]));
  return u;
}

inline PolyForm to_poly_form(const FormExpr& u) {
  PolyForm out;
  for (const auto& J : multi_indices(u.dim(), u.degree())) {
    auto p = u.coeff(J).to_poly(u.dim());
    if (!p) throw InputError("to_poly_form: coefficient is not polynomial");
    out.push_back(std::move(*p));
  }
  return out;
}

namespace detail {

inline Poly defining_poly(const Domain& dom) {
  auto r = dom.defining_function().to_poly(dom.dim());
  if (!r) throw InputError("polynomial projection needs a polynomial defining function");
  return *r;
}

// Scale-free key: coefficients divided by the leading one, rounded.
inline bool same_up_to_scale(const PolyForm& a, const PolyForm& b) {
  cplx sa{}, sb{};
  bool found = false;
  for (std::size_t i = 0; i < a.size() && !found; ++i) {
    if (a[i].is_zero() != b[i].is_zero()) return false;
    if (!a[i].is_zero()) {
      const auto& [ea, ca] = *a[i].terms().begin();
      const auto& [eb, cb] = *b[i].terms().begin();
      if (ea != eb) return false;
      sa = ca;
      sb = cb;
      found = true;
    }
  }
  if (!found) return true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    auto ib = b[i].terms().begin();
    for (const auto& [e, c] : a[i].terms()) {
      if (e != ib->first) return false;
      if (std::abs(c * sb - ib->second * sa) > 1e-13 * std::abs(c * sb)) return false;
      ++ib;
    }
  }
  return true;
}

inline bool all_zero(const PolyForm& p) {
  for (const auto& c : p)
    if (!c.is_zero()) return false;
  return true;
}

class PolyBasisBuilder {
 public:
  explicit PolyBasisBuilder(TrialBasis& b) : b_(b) { b_.polys.emplace(); }
  void add(PolyForm p, int degree) {
    if (all_zero(p)) return;
    for (const auto& other : *b_.polys)
      if (same_up_to_scale(other, p)) return;
    b_.elements.push_back(to_form(p, b_.n, b_.q));
    b_.generator_degree.push_back(degree);
    b_.polys->push_back(std::move(p));
  }

 private:
  TrialBasis& b_;
};

}  // namespace detail

/// Conforming trial forms for Q_q: smooth (0,q)-forms with (∂̄r)*⌟u = 0 on ∂Ω.
inline TrialBasis build_dbar_neumann_basis(const Domain& dom, int q, int deg,
                                           Projection projection = Projection::polynomial,
                                           BumpShape shape = {}, double eps_n = 0.05) {
  const int n = dom.dim();
  if (q < 1 || q > n - 1) throw DegreeError("dbar-neumann basis needs 1 <= q <= n-1");
  if (deg < 0) throw InputError("basis degree must be >= 0");
  TrialBasis b;
  b.n = n;
  b.q = q;
  b.deg_cap = deg;
  b.kind = BasisKind::dbar_neumann;
  b.projection = projection;
  b.domain_label = dom.label();
  const auto keys = multi_indices(n, q);
  const auto exps = monomials(n, deg);

  if (projection == Projection::polynomial) {
    const Poly r = detail::defining_poly(dom);
    std::vector<Poly> rz, rzb;
    Poly dr2(n);
    for (int k = 0; k < n; ++k) {
      rz.push_back(r.diff_z(k));
      rzb.push_back(r.diff_zbar(k));
      dr2 += rz.back() * rzb.back();
    }
    const auto lower = multi_indices(n, q - 1);
    detail::PolyBasisBuilder add(b);
    std::size_t i = 0;
    for (int d = 0; d <= deg; ++d) {
      std::vector<PolyForm> tangential, normal;
      for (; i < exps.size() && total_degree(exps[i]) == d; ++i) {
        const Poly m = Poly::monomial(n, exps[i]);
        for (std::size_t j = 0; j < keys.size(); ++j) {
          // v = m dz̄_J; contraction ιv has components Σ_k v_{kK} r_{z_k}
          PolyForm p(keys.size(), Poly(n));
          p[j] = dr2 * m;
          for (const auto& K : lower) {
            Poly iv(n);
            for (int k = 1; k <= n; ++k) {
              auto w = wedge_insert(n, k, K);
              if (w.sign && w.index == keys[j]) iv += static_cast<double>(w.sign) * (rz[k - 1] * m);
            }
            if (iv.is_zero()) continue;
            for (int k = 1; k <= n; ++k) {
              auto w = wedge_insert(n, k, K);
              if (w.sign) p[multi_index_rank(n, w.index)] -= static_cast<double>(w.sign) * (rzb[k - 1] * iv);
            }
          }
          tangential.push_back(std::move(p));
          PolyForm rv(keys.size(), Poly(n));
          rv[j] = r * m;
          normal.push_back(std::move(rv));
        }
      }
      for (auto& p : tangential) add.add(std::move(p), d);
      for (auto& p : normal) add.add(std::move(p), d);
    }
    return b;
  }

  // bump projection: check that the bump lives where |∂r|² >= eps_n
  for (const auto& w : sphere_directions(n, 256)) {
    const double R = dom.boundary_radius(w);
    for (int j = 1; j <= 64; ++j) {
      Point p(n);
      for (int k = 0; k < n; ++k) p[k] = (R * j / 64.0) * w[k];
      if (bump_derivative(dom.r(p), shape, 0) != 0.0 && dom.dr_norm_sq(p) < eps_n)
        throw DegenerateError("bump support meets the region |dr|^2 < " + std::to_string(eps_n));
    }
  }
  const auto& dz = dom.dr_dz_expr();
  const auto& dzb = dom.dr_dzbar_expr();
  Expr dr2;
  for (int k = 0; k < n; ++k) dr2 = dr2 + dz[k] * dzb[k];
  const Expr cutoff = Expr::bump(dom.defining_function(), shape) * dr2.pow(-1);
  const Expr& r = dom.defining_function();
  std::size_t i = 0;
  for (int d = 0; d <= deg; ++d) {
    std::vector<FormExpr> fam_a, fam_b;
    for (; i < exps.size() && total_degree(exps[i]) == d; ++i) {
      const Expr m = Expr::from_poly(Poly::monomial(n, exps[i]));
      for (const auto& J : keys) {
        FormExpr v(n, q);
        v.set(J, m);
        fam_a.push_back(v - cutoff * wedge(dzb, contract(dz, v)));
      }
      for (const auto& K : multi_indices(n, q - 1)) {
        FormExpr pk(n, q - 1);
        pk.set(K, m);
        FormExpr e = r * wedge(dzb, pk);
        if (!e.is_zero()) fam_b.push_back(std::move(e));
      }
    }
    for (auto& e : fam_a) {
      b.elements.push_back(std::move(e));
      b.generator_degree.push_back(d);
    }
    for (auto& e : fam_b) {
      b.elements.push_back(std::move(e));
      b.generator_degree.push_back(d);
    }
  }
  return b;
}

/// Zero-trace elements r·m·dz̄_J (scalar r·m when q = 0).
inline TrialBasis build_dirichlet_basis(const Domain& dom, int deg, int q = 0) {
  const int n = dom.dim();
  if (deg < 0) throw InputError("basis degree must be >= 0");
  if (q < 0 || q > n) throw DegreeError("dirichlet basis: bad form degree");
  TrialBasis b;
  b.n = n;
  b.q = q;
  b.deg_cap = deg;
  b.kind = BasisKind::dirichlet;
  b.domain_label = dom.label();
  const Poly r = detail::defining_poly(dom);
  const auto keys = multi_indices(n, q);
  detail::PolyBasisBuilder add(b);
  for (const auto& e : monomials(n, deg))
    for (std::size_t j = 0; j < keys.size(); ++j) {
      PolyForm p(keys.size(), Poly(n));
      p[j] = r * Poly::monomial(n, e);
      add.add(std::move(p), total_degree(e));
    }
  return b;
}

/// Unconstrained real scalars: Re m and Im m for monomials m in (z, z̄).
inline TrialBasis build_neumann_basis(const Domain& dom, int deg) {
  const int n = dom.dim();
  if (deg < 0) throw InputError("basis degree must be >= 0");
  TrialBasis b;
  b.n = n;
  b.q = 0;
  b.deg_cap = deg;
  b.kind = BasisKind::neumann;
  b.domain_label = dom.label();
  detail::PolyBasisBuilder add(b);
  for (const auto& e : monomials(n, deg)) {
    const Poly m = Poly::monomial(n, e);
    const Exponent s = m.swapped(e);
    if (e < s) continue;  // handled with its conjugate partner
    const Poly mc = m.conj();
    add.add({0.5 * (m + mc)}, total_degree(e));
    if (e != s) add.add({cplx(0, -0.5) * (m - mc)}, total_degree(e));
  }
  return b;
}

/// Largest |(∂̄r)*⌟u| over boundary samples, relative to the largest |u| on
/// the samples and their midpoints to the origin (elements with zero trace
/// would otherwise have no scale).
inline double boundary_residual(const FormExpr& u, const Domain& dom, std::span<const Point> samples) {
  double worst = 0, scale = 0;
  for (const auto& z : samples) {
    Point half(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) half[k] = 0.5 * z[k];
    scale = std::max({scale, evaluate(u, z).norm(), evaluate(u, half).norm()});
    worst = std::max(worst, normal_trace(u, dom, z).norm());
  }
  return scale > 0 ? worst / scale : worst;
}

}  // namespace dbarlab
