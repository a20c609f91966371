#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dbarlab/error.hpp"

namespace dbarlab {

using cplx = std::complex<double>;

/// Largest complex dimension supported by the fixed-size containers below.
inline constexpr int kMaxDim = 4;

/// Exponents of z_1..z_n in slots [0, n) and of z̄_1..z̄_n in slots [n, 2n).
using Exponent = std::array<std::uint8_t, 2 * kMaxDim>;

inline int total_degree(const Exponent& e) {
  int d = 0;
  for (auto v : e) d += v;
  return d;
}

/// Sparse polynomial in (z, z̄) with complex coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(int n) : n_(n) { check_dim(n); }

  static Poly constant(int n, cplx c) {
    Poly p(n);
    p.add_term(Exponent{}, c);
    return p;
  }
  static Poly monomial(int n, const Exponent& e, cplx c = 1.0) {
    Poly p(n);
    p.add_term(e, c);
    return p;
  }
  static Poly z(int n, int k) {
    Exponent e{};
    e.at(static_cast<std::size_t>(k)) = 1;
    return monomial(n, e);
  }
  static Poly zbar(int n, int k) {
    Exponent e{};
    e.at(static_cast<std::size_t>(n + k)) = 1;
    return monomial(n, e);
  }

  int dim() const noexcept { return n_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::map<Exponent, cplx>& terms() const noexcept { return terms_; }

  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  Poly& operator+=(const Poly& o) {
    match(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    match(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Poly& operator*=(cplx s) {
    if (s == cplx{}) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, cplx s) { return a *= s; }
  friend Poly operator*(cplx s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out(a.n_ ? a.n_ : b.n_);
    a.match(b);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
        out.add_term(e, ca * cb);
      }
    return out;
  }

  /// Complex conjugate: swaps z and z̄ exponents.
  Poly conj() const {
    Poly out(n_);
    for (const auto& [e, c] : terms_) out.add_term(swapped(e), std::conj(c));
    return out;
  }

  Poly diff_z(int k) const { return diff_slot(k); }
  Poly diff_zbar(int k) const { return diff_slot(n_ + k); }

  cplx eval(std::span<const cplx> z) const {
    if (static_cast<int>(z.size()) < n_) throw InputError("Poly::eval: point has wrong dimension");
    cplx sum{};
    for (const auto& [e, c] : terms_) {
      cplx m = c;
      for (int k = 0; k < n_; ++k) {
        for (int a = 0; a < e[k]; ++a) m *= z[k];
        for (int a = 0; a < e[n_ + k]; ++a) m *= std::conj(z[k]);
      }
      sum += m;
    }
    return sum;
  }

  Exponent swapped(const Exponent& e) const {
    Exponent s{};
    for (int k = 0; k < n_; ++k) {
      s[k] = e[n_ + k];
      s[n_ + k] = e[k];
    }
    return s;
  }

  bool operator==(const Poly& o) const { return n_ == o.n_ && terms_ == o.terms_; }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + std::to_string(c.real()) + (c.imag() < 0 ? "" : "+") + std::to_string(c.imag()) + "i)";
      for (int k = 0; k < n_; ++k) {
        if (e[k]) s += "*z" + std::to_string(k + 1) + (e[k] > 1 ? "^" + std::to_string(e[k]) : "");
        if (e[n_ + k]) s += "*zb" + std::to_string(k + 1) + (e[n_ + k] > 1 ? "^" + std::to_string(e[n_ + k]) : "");
      }
    }
    return s;
  }

 private:
  static void check_dim(int n) {
    if (n < 1 || n > kMaxDim) throw InputError("Poly: dimension must be in 1.." + std::to_string(kMaxDim));
  }
  void match(const Poly& o) const {
    if (n_ != o.n_ && n_ != 0 && o.n_ != 0) throw InputError("Poly: dimension mismatch");
  }
  void add_term(const Exponent& e, cplx c) {
    if (c == cplx{}) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == cplx{}) terms_.erase(it);
    }
  }
  Poly diff_slot(int slot) const {
    Poly out(n_);
    for (const auto& [e, c] : terms_) {
      if (e[slot] == 0) continue;
      Exponent d = e;
      --d[slot];
      out.add_term(d, c * static_cast<double>(e[slot]));
    }
    return out;
  }

  int n_ = 0;
  std::map<Exponent, cplx> terms_;
};

/// All exponents of total degree <= deg in 2n variables, ordered by total
/// degree and then lexicographically.
inline std::vector<Exponent> monomials(int n, int deg) {
  std::vector<Exponent> out;
  const int vars = 2 * n;
  for (int d = 0; d <= deg; ++d) {
    Exponent e{};
    // enumerate compositions of d into `vars` parts, lexicographically descending in slot 0
    std::vector<int> parts(vars, 0);
    parts[0] = d;
    while (true) {
      for (int i = 0; i < vars; ++i) e[i] = static_cast<std::uint8_t>(parts[i]);
      out.push_back(e);
      // next composition
      int i = vars - 2;
      while (i >= 0 && parts[i] == 0) --i;
      if (i < 0) break;
      --parts[i];
      int rest = parts[vars - 1] + 1;
      parts[vars - 1] = 0;
      parts[i + 1] = rest;
    }
  }
  return out;
}

}  // namespace dbarlab
