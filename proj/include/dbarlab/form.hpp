#pragma once

#include <cmath>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "dbarlab/error.hpp"
#include "dbarlab/expr.hpp"
#include "dbarlab/multi_index.hpp"

namespace dbarlab {

/// A (0,q)-form on ℂⁿ with Expr coefficients; absent keys are zero.
class FormExpr {
 public:
  FormExpr(int n, int q) : n_(n), q_(q) {
    if (n < 1 || n > kMaxDim) throw InputError("FormExpr: dimension out of range");
    if (q < 0 || q > n) throw DegreeError("FormExpr: degree must satisfy 0 <= q <= n");
  }

  int dim() const noexcept { return n_; }
  int degree() const noexcept { return q_; }
  const std::map<MultiIndex, Expr>& coeffs() const noexcept { return coeffs_; }

  Expr coeff(const MultiIndex& J) const {
    auto it = coeffs_.find(J);
    return it == coeffs_.end() ? Expr() : it->second;
  }

  void set(const MultiIndex& J, Expr e) {
    check_key(J);
    if (e.is_zero()) coeffs_.erase(J);
    else coeffs_[J] = std::move(e);
  }
  void add(const MultiIndex& J, const Expr& e) { set(J, coeff(J) + e); }

  bool is_zero() const { return coeffs_.empty(); }

  FormExpr& operator+=(const FormExpr& o) {
    same_shape(o);
    for (const auto& [J, e] : o.coeffs_) add(J, e);
    return *this;
  }
  FormExpr& operator-=(const FormExpr& o) {
    same_shape(o);
    for (const auto& [J, e] : o.coeffs_) add(J, -e);
    return *this;
  }
  friend FormExpr operator+(FormExpr a, const FormExpr& b) { return a += b; }
  friend FormExpr operator-(FormExpr a, const FormExpr& b) { return a -= b; }
  friend FormExpr operator*(const Expr& f, const FormExpr& u) {
    FormExpr out(u.n_, u.q_);
    for (const auto& [J, e] : u.coeffs_) out.set(J, f * e);
    return out;
  }

  /// u_{kK}: coefficient of dz̄_k ∧ dz̄_K under antisymmetric extension.
  Expr extended_coeff(int k, const MultiIndex& K) const {
    auto w = wedge_insert(n_, k, K);
    if (w.sign == 0) return Expr();
    return Expr(static_cast<double>(w.sign)) * coeff(w.index);
  }

 private:
  void check_key(const MultiIndex& J) const {
    if (static_cast<int>(J.size()) != q_) throw InputError("FormExpr: key " + J.str() + " has wrong length");
    for (int j : J)
      if (j > n_) throw InputError("FormExpr: key " + J.str() + " out of range");
  }
  void same_shape(const FormExpr& o) const {
    if (o.n_ != n_ || o.q_ != q_) throw DegreeError("FormExpr: shape mismatch");
  }

  int n_;
  int q_;
  std::map<MultiIndex, Expr> coeffs_;
};

/// Coefficients of a (0,q)-form at one point, ordered as multi_indices(n, q).
struct FormValue {
  int n = 0;
  int q = 0;
  std::vector<cplx> c;

  FormValue() = default;
  FormValue(int n_, int q_) : n(n_), q(q_), c(binomial(n_, q_)) {}

  cplx& operator[](const MultiIndex& J) { return c[multi_index_rank(n, J)]; }
  cplx operator[](const MultiIndex& J) const { return c[multi_index_rank(n, J)]; }

  double norm() const {
    double s = 0;
    for (auto v : c) s += std::norm(v);
    return std::sqrt(s);
  }
};

/// Pointwise pairing Σ'_J u_J conj(v_J).
inline cplx pairing(const FormValue& u, const FormValue& v) {
  if (u.n != v.n || u.q != v.q) throw DegreeError("pairing: shape mismatch");
  cplx s{};
  for (std::size_t i = 0; i < u.c.size(); ++i) s += u.c[i] * std::conj(v.c[i]);
  return s;
}

inline FormValue evaluate(const FormExpr& u, std::span<const cplx> z) {
  FormValue out(u.dim(), u.degree());
  for (const auto& [J, e] : u.coeffs()) out[J] = e.value(z);
  return out;
}

/// ∂̄u, exact and symbolic.
inline FormExpr dbar(const FormExpr& u) {
  const int n = u.dim(), q = u.degree();
  if (q >= n) throw DegreeError("dbar: form degree " + std::to_string(q) + " is already top degree");
  FormExpr out(n, q + 1);
  for (const auto& [J, e] : u.coeffs())
    for (int k = 1; k <= n; ++k) {
      auto w = wedge_insert(n, k, J);
      if (w.sign == 0) continue;
      Expr d = e.diff_zbar(k - 1);
      if (d.is_zero()) continue;
      out.add(w.index, Expr(static_cast<double>(w.sign)) * d);
    }
  return out;
}

/// Formal adjoint ϑ of ∂̄: (ϑu)_K = -Σ_k ∂u_{kK}/∂z_k.
inline FormExpr theta(const FormExpr& u) {
  const int n = u.dim(), q = u.degree();
  if (q == 0) throw DegreeError("theta: undefined on functions (q = 0)");
  FormExpr out(n, q - 1);
  for (const auto& K : multi_indices(n, q - 1)) {
    Expr acc;
    for (int k = 1; k <= n; ++k) {
      Expr c = u.extended_coeff(k, K);
      if (c.is_zero()) continue;
      acc = acc - c.diff_z(k - 1);
    }
    out.set(K, acc);
  }
  return out;
}

/// Σ_k a_k u_{kK}: contraction with the (0,1)-vector field Σ a_k ∂/∂z̄_k.
inline FormExpr contract(std::span<const Expr> a, const FormExpr& u) {
  const int n = u.dim(), q = u.degree();
  if (q == 0) throw DegreeError("contract: nothing to contract on a function");
  if (static_cast<int>(a.size()) != n) throw InputError("contract: vector field has wrong length");
  FormExpr out(n, q - 1);
  for (const auto& K : multi_indices(n, q - 1)) {
    Expr acc;
    for (int k = 1; k <= n; ++k) {
      Expr c = u.extended_coeff(k, K);
      if (!c.is_zero()) acc = acc + a[k - 1] * c;
    }
    out.set(K, acc);
  }
  return out;
}

/// (Σ_k a_k dz̄_k) ∧ w.
inline FormExpr wedge(std::span<const Expr> a, const FormExpr& w) {
  const int n = w.dim(), q = w.degree();
  if (q >= n) throw DegreeError("wedge: result would exceed top degree");
  if (static_cast<int>(a.size()) != n) throw InputError("wedge: one-form has wrong length");
  FormExpr out(n, q + 1);
  for (const auto& [K, e] : w.coeffs())
    for (int k = 1; k <= n; ++k) {
      auto r = wedge_insert(n, k, K);
      if (r.sign == 0 || a[k - 1].is_zero()) continue;
      out.add(r.index, Expr(static_cast<double>(r.sign)) * a[k - 1] * e);
    }
  return out;
}

// ---- pointwise versions -----------------------------------------------------

/// (∂̄r)*⌟u at a point, given dr_dz[k] = ∂r/∂z_k there.
inline FormValue contract_value(std::span<const cplx> dr_dz, const FormValue& u) {
  if (u.q == 0) throw DegreeError("normal trace of a function is undefined");
  FormValue out(u.n, u.q - 1);
  for (const auto& K : multi_indices(u.n, u.q - 1)) {
    cplx acc{};
    for (int k = 1; k <= u.n; ++k) {
      auto w = wedge_insert(u.n, k, K);
      if (w.sign) acc += static_cast<double>(w.sign) * u[w.index] * dr_dz[k - 1];
    }
    out[K] = acc;
  }
  return out;
}

/// ∂̄r ∧ w at a point, given dr_dzb[k] = ∂r/∂z̄_k there.
inline FormValue wedge_value(std::span<const cplx> dr_dzb, const FormValue& w) {
  FormValue out(w.n, w.q + 1);
  for (const auto& K : multi_indices(w.n, w.q))
    for (int k = 1; k <= w.n; ++k) {
      auto r = wedge_insert(w.n, k, K);
      if (r.sign) out[r.index] += static_cast<double>(r.sign) * dr_dzb[k - 1] * w[K];
    }
  return out;
}

struct TangentialNormal {
  FormValue tangential;
  FormValue normal;
};

/// u = u^τ + u^ν with u^ν = ∂̄r ∧ ((∂̄r)*⌟u) / |∂r|². Requires real r, so that
/// ∂r/∂z̄_k = conj(∂r/∂z_k).
inline TangentialNormal split_tangential_normal_value(std::span<const cplx> dr_dz, const FormValue& u,
                                                      double min_dr_sq = 0.05) {
  double dr_sq = 0;
  std::vector<cplx> dr_dzb(dr_dz.size());
  for (std::size_t k = 0; k < dr_dz.size(); ++k) {
    dr_sq += std::norm(dr_dz[k]);
    dr_dzb[k] = std::conj(dr_dz[k]);
  }
  if (dr_sq < min_dr_sq)
    throw DegenerateError("split_tangential_normal: |dr|^2 = " + std::to_string(dr_sq) + " below threshold " +
                          std::to_string(min_dr_sq));
  TangentialNormal out;
  out.normal = wedge_value(dr_dzb, contract_value(dr_dz, u));
  for (auto& v : out.normal.c) v /= dr_sq;
  out.tangential = u;
  for (std::size_t i = 0; i < u.c.size(); ++i) out.tangential.c[i] -= out.normal.c[i];
  return out;
}

}  // namespace dbarlab
