#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dbarlab/error.hpp"
#include "dbarlab/poly.hpp"

namespace dbarlab {

/// Quintic transition profile: b(s) = 1 for |s| <= inner, 0 for |s| >= outer,
/// C² at both knots.
struct BumpShape {
  double inner = 0.1;
  double outer = 0.35;
};

/// d^order/ds^order of the bump at s; order in {0, 1, 2}.
inline double bump_derivative(double s, const BumpShape& shape, int order) {
  const double a = std::abs(s);
  if (a <= shape.inner || a >= shape.outer) return order == 0 && a <= shape.inner ? 1.0 : 0.0;
  const double w = shape.outer - shape.inner;
  const double x = (a - shape.inner) / w;
  const double sgn = s < 0 ? -1.0 : 1.0;
  switch (order) {
    case 0:
      return 1.0 - x * x * x * (10.0 - 15.0 * x + 6.0 * x * x);
    case 1:
      return -sgn * 30.0 * x * x * (1.0 - x) * (1.0 - x) / w;
    case 2:
      return -60.0 * x * (1.0 - x) * (1.0 - 2.0 * x) / (w * w);
    default:
      throw InputError("bump is only C^2; derivative order " + std::to_string(order) + " requested");
  }
}

/// Value together with all first Wirtinger partials ∂/∂z_k and ∂/∂z̄_k.
struct Jet {
  cplx value{};
  std::array<cplx, kMaxDim> dz{};
  std::array<cplx, kMaxDim> dzb{};
};

/// Immutable expression over (z, z̄) with exact forward-mode first
/// derivatives and symbolic differentiation.
class Expr {
 public:
  Expr() : Expr(cplx{}) {}
  Expr(double c) : Expr(cplx(c)) {}  // NOLINT: implicit by design of the DSL
  Expr(cplx c) : node_(make_const(c)) {}

  static Expr z(int k) { return Expr(std::make_shared<const Node>(Node{Kind::var, {}, k, false})); }
  static Expr zbar(int k) { return Expr(std::make_shared<const Node>(Node{Kind::var, {}, k, true})); }
  static Expr bump(const Expr& arg, BumpShape shape = {}, int order = 0) {
    if (order < 0 || order > 2) throw InputError("bump is only C^2");
    Node n{Kind::bump};
    n.kids = {arg};
    n.shape = shape;
    n.order = order;
    return Expr(std::make_shared<const Node>(std::move(n)));
  }
  static Expr from_poly(const Poly& p) {
    std::vector<Expr> sum;
    for (const auto& [e, c] : p.terms()) {
      Expr m(c);
      for (int k = 0; k < p.dim(); ++k) {
        if (e[k]) m = m * z(k).pow(e[k]);
        if (e[p.dim() + k]) m = m * zbar(k).pow(e[p.dim() + k]);
      }
      sum.push_back(m);
    }
    return make_sum(std::move(sum));
  }

  Expr pow(int m) const {
    if (m == 0) return Expr(1.0);
    if (m == 1) return *this;
    if (is_const()) return Expr(std::pow(node_->c, m));
    Node n{Kind::power};
    n.kids = {*this};
    n.power = m;
    return Expr(std::make_shared<const Node>(std::move(n)));
  }

  friend Expr operator+(const Expr& a, const Expr& b) { return make_sum({a, b}); }
  friend Expr operator-(const Expr& a, const Expr& b) { return make_sum({a, b * Expr(-1.0)}); }
  friend Expr operator-(const Expr& a) { return a * Expr(-1.0); }
  friend Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return Expr();
    if (a.is_const() && b.is_const()) return Expr(a.node_->c * b.node_->c);
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    Node n{Kind::product};
    n.kids = {a, b};
    return Expr(std::make_shared<const Node>(std::move(n)));
  }
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }

  bool is_const() const { return node_->kind == Kind::constant; }
  bool is_zero() const { return is_const() && node_->c == cplx{}; }
  bool is_one() const { return is_const() && node_->c == cplx(1.0); }

  /// Pointwise complex conjugate (bump nodes act on the real part, so they are
  /// self-conjugate when their argument is).
  Expr conj() const {
    const Node& n = *node_;
    switch (n.kind) {
      case Kind::constant: return Expr(std::conj(n.c));
      case Kind::var: return n.conj ? z(n.var) : zbar(n.var);
      case Kind::sum: {
        std::vector<Expr> k;
        for (const auto& e : n.kids) k.push_back(e.conj());
        return make_sum(std::move(k));
      }
      case Kind::product: return n.kids[0].conj() * n.kids[1].conj();
      case Kind::power: return n.kids[0].conj().pow(n.power);
      case Kind::bump: return bump(n.kids[0].conj(), n.shape, n.order);
    }
    return {};
  }

  Expr diff_z(int k) const { return diff(k, false); }
  Expr diff_zbar(int k) const { return diff(k, true); }

  cplx value(std::span<const cplx> pt) const { return jet_impl(pt, false).value; }
  Jet jet(std::span<const cplx> pt) const { return jet_impl(pt, true); }

  /// Polynomial form when the tree has no bump and no negative power.
  std::optional<Poly> to_poly(int n) const {
    const Node& nd = *node_;
    switch (nd.kind) {
      case Kind::constant: return Poly::constant(n, nd.c);
      case Kind::var:
        if (nd.var >= n) throw InputError("Expr::to_poly: variable index exceeds dimension");
        return nd.conj ? Poly::zbar(n, nd.var) : Poly::z(n, nd.var);
      case Kind::sum: {
        Poly acc(n);
        for (const auto& e : nd.kids) {
          auto p = e.to_poly(n);
          if (!p) return std::nullopt;
          acc += *p;
        }
        return acc;
      }
      case Kind::product: {
        auto a = nd.kids[0].to_poly(n);
        if (!a) return std::nullopt;
        auto b = nd.kids[1].to_poly(n);
        if (!b) return std::nullopt;
        return *a * *b;
      }
      case Kind::power: {
        if (nd.power < 0) return std::nullopt;
        auto a = nd.kids[0].to_poly(n);
        if (!a) return std::nullopt;
        Poly acc = Poly::constant(n, 1.0);
        for (int i = 0; i < nd.power; ++i) acc = acc * *a;
        return acc;
      }
      case Kind::bump: return std::nullopt;
    }
    return std::nullopt;
  }

  std::string str() const {
    const Node& n = *node_;
    switch (n.kind) {
      case Kind::constant:
        if (n.c.imag() == 0.0) return std::to_string(n.c.real());
        return "(" + std::to_string(n.c.real()) + "+" + std::to_string(n.c.imag()) + "i)";
      case Kind::var: return (n.conj ? "zb" : "z") + std::to_string(n.var + 1);
      case Kind::sum: {
        std::string s = "(";
        for (std::size_t i = 0; i < n.kids.size(); ++i) s += (i ? " + " : "") + n.kids[i].str();
        return s + ")";
      }
      case Kind::product: return n.kids[0].str() + "*" + n.kids[1].str();
      case Kind::power: return n.kids[0].str() + "^" + std::to_string(n.power);
      case Kind::bump: return "b" + std::string(n.order, '\'') + "(" + n.kids[0].str() + ")";
    }
    return {};
  }

 private:
  enum class Kind { constant, var, sum, product, power, bump };
  struct Node {
    Kind kind = Kind::constant;
    cplx c{};
    int var = 0;
    bool conj = false;
    std::vector<Expr> kids{};
    int power = 1;
    BumpShape shape{};
    int order = 0;
  };

  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static std::shared_ptr<const Node> make_const(cplx c) {
    Node n{Kind::constant};
    n.c = c;
    return std::make_shared<const Node>(std::move(n));
  }

  static Expr make_sum(std::vector<Expr> terms) {
    std::vector<Expr> kept;
    cplx constant{};
    for (auto& t : terms) {
      if (t.is_const()) {
        constant += t.node_->c;
      } else if (t.node_->kind == Kind::sum) {
        for (const auto& k : t.node_->kids) {
          if (k.is_const()) constant += k.node_->c;
          else kept.push_back(k);
        }
      } else {
        kept.push_back(std::move(t));
      }
    }
    if (constant != cplx{}) kept.push_back(Expr(constant));
    if (kept.empty()) return Expr();
    if (kept.size() == 1) return kept.front();
    Node n{Kind::sum};
    n.kids = std::move(kept);
    return Expr(std::make_shared<const Node>(std::move(n)));
  }

  Expr diff(int k, bool wrt_conj) const {
    const Node& n = *node_;
    switch (n.kind) {
      case Kind::constant: return Expr();
      case Kind::var: return (n.var == k && n.conj == wrt_conj) ? Expr(1.0) : Expr();
      case Kind::sum: {
        std::vector<Expr> d;
        for (const auto& e : n.kids) d.push_back(e.diff(k, wrt_conj));
        return make_sum(std::move(d));
      }
      case Kind::product:
        return n.kids[0].diff(k, wrt_conj) * n.kids[1] + n.kids[0] * n.kids[1].diff(k, wrt_conj);
      case Kind::power: {
        Expr inner = n.kids[0].diff(k, wrt_conj);
        if (inner.is_zero()) return Expr();
        return Expr(static_cast<double>(n.power)) * n.kids[0].pow(n.power - 1) * inner;
      }
      case Kind::bump: {
        const Expr& f = n.kids[0];
        // ∂(Re f) = (∂f + conj(∂̄-partner of f)) / 2
        Expr dre = (f.diff(k, wrt_conj) + f.diff(k, !wrt_conj).conj()) * Expr(0.5);
        if (dre.is_zero()) return Expr();
        return bump(f, n.shape, n.order + 1) * dre;
      }
    }
    return {};
  }

  Jet jet_impl(std::span<const cplx> pt, bool with_partials) const {
    const Node& n = *node_;
    Jet j;
    const std::size_t dim = pt.size();
    switch (n.kind) {
      case Kind::constant:
        j.value = n.c;
        return j;
      case Kind::var:
        if (static_cast<std::size_t>(n.var) >= dim) throw InputError("Expr: variable index exceeds point dimension");
        j.value = n.conj ? std::conj(pt[n.var]) : pt[n.var];
        if (n.conj) j.dzb[n.var] = 1.0;
        else j.dz[n.var] = 1.0;
        return j;
      case Kind::sum:
        for (const auto& e : n.kids) {
          Jet a = e.jet_impl(pt, with_partials);
          j.value += a.value;
          if (with_partials)
            for (std::size_t i = 0; i < dim; ++i) {
              j.dz[i] += a.dz[i];
              j.dzb[i] += a.dzb[i];
            }
        }
        return j;
      case Kind::product: {
        Jet a = n.kids[0].jet_impl(pt, with_partials);
        Jet b = n.kids[1].jet_impl(pt, with_partials);
        j.value = a.value * b.value;
        if (with_partials)
          for (std::size_t i = 0; i < dim; ++i) {
            j.dz[i] = a.dz[i] * b.value + a.value * b.dz[i];
            j.dzb[i] = a.dzb[i] * b.value + a.value * b.dzb[i];
          }
        return j;
      }
      case Kind::power: {
        Jet a = n.kids[0].jet_impl(pt, with_partials);
        j.value = std::pow(a.value, n.power);
        if (with_partials) {
          const cplx f = static_cast<double>(n.power) * std::pow(a.value, n.power - 1);
          for (std::size_t i = 0; i < dim; ++i) {
            j.dz[i] = f * a.dz[i];
            j.dzb[i] = f * a.dzb[i];
          }
        }
        return j;
      }
      case Kind::bump: {
        Jet a = n.kids[0].jet_impl(pt, with_partials);
        const double s = a.value.real();
        j.value = bump_derivative(s, n.shape, n.order);
        if (with_partials) {
          const double d = n.order < 2 ? bump_derivative(s, n.shape, n.order + 1) : 0.0;
          if (n.order >= 2 && std::abs(s) > n.shape.inner && std::abs(s) < n.shape.outer)
            throw InputError("bump is only C^2; cannot take partials of b''");
          for (std::size_t i = 0; i < dim; ++i) {
            j.dz[i] = d * 0.5 * (a.dz[i] + std::conj(a.dzb[i]));
            j.dzb[i] = d * 0.5 * (a.dzb[i] + std::conj(a.dz[i]));
          }
        }
        return j;
      }
    }
    return j;
  }

  std::shared_ptr<const Node> node_;
};

}  // namespace dbarlab
