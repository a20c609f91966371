#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <string>
#include <vector>

#include "dbarlab/error.hpp"
#include "dbarlab/form.hpp"
#include "dbarlab/quadrature.hpp"
#include "dbarlab/trialspace.hpp"

namespace dbarlab {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct ProblemMeta {
  std::string domain;
  int q = 0;
  int deg = 0;
  int n_rad = 0;
  int n_ang = 0;
  std::string kind;
  std::string projection;
  std::size_t basis_size = 0;
  double filter_tol = 0;  // 0 when unfiltered
};

/// Gram triple of a trial space: mass M, ∂̄-Neumann form A_Q and gradient
/// form A_G. The pencil of interest is (A_Q + t·A_G, M).
struct DiscreteProblem {
  CMatrix M;
  CMatrix AQ;
  CMatrix AG;
  double t = 0;
  ProblemMeta meta;
  /// Columns express the current coordinates in the original basis
  /// (identity before filtering).
  CMatrix transform;

  Eigen::Index dim() const { return M.rows(); }
  CMatrix stiffness() const { return t == 0.0 ? AQ : CMatrix(AQ + t * AG); }
};

inline DiscreteProblem with_t(DiscreteProblem p, double t) {
  if (!(t >= 0)) throw InputError("with_t: t must be >= 0");
  p.t = t;
  return p;
}

inline void hermitianize(CMatrix& X) { X = (0.5 * (X + X.adjoint())).eval(); }

enum class AssemblyMethod { automatic, moments, pointwise };

namespace detail {

// Per-element polynomial features: slot s holds one scalar polynomial whose
// weighted Gram contributes to one of the three matrices.
struct PolyFeatures {
  std::vector<Poly> mass, form, grad;
};

inline PolyFeatures poly_features(const FormExpr& u, const PolyForm& comps) {
  const int n = u.dim(), q = u.degree();
  PolyFeatures f;
  f.mass = comps;
  if (q < n) {
    auto d = to_poly_form(dbar(u));
    f.form.insert(f.form.end(), d.begin(), d.end());
  }
  if (q >= 1) {
    auto th = to_poly_form(theta(u));
    f.form.insert(f.form.end(), th.begin(), th.end());
  }
  for (const auto& c : comps)
    for (int k = 0; k < n; ++k) {
      f.grad.push_back(c.diff_z(k));
      f.grad.push_back(c.diff_zbar(k));
    }
  return f;
}

// Σ_s weight · conj(C_s) H_s C_sᵀ with H_s[a][b] = ∫ conj(x^a) x^b.
inline CMatrix gram_from_moments(const std::vector<std::vector<const Poly*>>& slots, const MomentTable& mt, int n,
                                 double weight) {
  const std::size_t N = slots.size();
  CMatrix G = CMatrix::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  if (N == 0) return G;
  const std::size_t S = slots.front().size();
  for (std::size_t s = 0; s < S; ++s) {
    int deg = -1;
    for (const auto& el : slots) deg = std::max(deg, el[s]->is_zero() ? -1 : el[s]->degree());
    if (deg < 0) continue;
    if (2 * deg > mt.max_degree()) throw InputError("moment table degree too small for this basis");
    const auto exps = monomials(n, deg);
    const auto E = static_cast<Eigen::Index>(exps.size());
    std::map<Exponent, Eigen::Index> pos;
    for (Eigen::Index i = 0; i < E; ++i) pos[exps[i]] = i;
    CMatrix C = CMatrix::Zero(static_cast<Eigen::Index>(N), E);
    for (std::size_t i = 0; i < N; ++i)
      for (const auto& [e, c] : slots[i][s]->terms()) C(static_cast<Eigen::Index>(i), pos.at(e)) = c;
    CMatrix H(E, E);
    std::vector<std::size_t> idx(exps.size()), idx_conj(exps.size());
    Poly probe(n);
    for (Eigen::Index a = 0; a < E; ++a) {
      idx[a] = mt.index(exps[a]);
      idx_conj[a] = mt.index(probe.swapped(exps[a]));
    }
    for (Eigen::Index a = 0; a < E; ++a)
      for (Eigen::Index b = 0; b < E; ++b) H(a, b) = mt[idx_conj[a] + idx[b]];
    G.noalias() += weight * (C.conjugate() * H * C.transpose());
  }
  return G;
}

inline CMatrix assemble_moments_one(const std::vector<std::vector<Poly>>& feats, const MomentTable& mt, int n,
                                    double weight) {
  std::vector<std::vector<const Poly*>> slots;
  for (const auto& f : feats) {
    std::vector<const Poly*> row;
    for (const auto& p : f) row.push_back(&p);
    slots.push_back(std::move(row));
  }
  return gram_from_moments(slots, mt, n, weight);
}

}  // namespace detail

/// Moments needed to integrate every product of features exactly on a
/// polynomial basis.
inline int required_moment_degree(const TrialBasis& basis) {
  int d = 0;
  if (basis.polys)
    for (const auto& pf : *basis.polys)
      for (const auto& c : pf) d = std::max(d, c.is_zero() ? 0 : c.degree());
  return 2 * d;
}

/// Gram matrices by quadrature. `moments` integrates polynomial features
/// through a moment table built from the same rule; `pointwise` evaluates
/// every element and its derivatives at each node.
inline DiscreteProblem assemble(const Domain& dom, const TrialBasis& basis, const Quadrature& quad,
                                AssemblyMethod method = AssemblyMethod::automatic) {
  if (basis.domain_label != dom.label() || quad.domain_label() != dom.label())
    throw InputError("assemble: basis, quadrature and domain labels differ (" + basis.domain_label + ", " +
                     quad.domain_label() + ", " + dom.label() + ")");
  if (basis.size() == 0) throw InputError("assemble: empty basis");
  const int n = dom.dim(), q = basis.q;
  if (method == AssemblyMethod::automatic)
    method = basis.polys ? AssemblyMethod::moments : AssemblyMethod::pointwise;
  if (method == AssemblyMethod::moments && !basis.polys)
    throw InputError("assemble: moment assembly needs a polynomial basis");

  DiscreteProblem p;
  p.meta = {dom.label(), q, basis.deg_cap, quad.n_rad(), quad.n_ang(), to_string(basis.kind),
            basis.kind == BasisKind::dbar_neumann ? to_string(basis.projection) : "none", basis.size(), 0.0};
  const auto N = static_cast<Eigen::Index>(basis.size());
  p.transform = CMatrix::Identity(N, N);

  if (method == AssemblyMethod::moments) {
    std::vector<std::vector<Poly>> mass, form, grad;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      auto f = detail::poly_features(basis.elements[i], (*basis.polys)[i]);
      mass.push_back(std::move(f.mass));
      form.push_back(std::move(f.form));
      grad.push_back(std::move(f.grad));
    }
    const MomentTable mt(quad, std::max(required_moment_degree(basis), 0));
    p.M = detail::assemble_moments_one(mass, mt, n, 1.0);
    p.AQ = detail::assemble_moments_one(form, mt, n, 1.0);
    p.AG = detail::assemble_moments_one(grad, mt, n, 2.0);
  } else {
    // symbolic ∂̄u and ϑu once per element
    std::vector<FormExpr> d, th;
    for (const auto& u : basis.elements) {
      if (q < n) d.push_back(dbar(u));
      if (q >= 1) th.push_back(theta(u));
    }
    const auto keys = multi_indices(n, q);
    const Eigen::Index nc = static_cast<Eigen::Index>(keys.size());
    const Eigen::Index nd = q < n ? static_cast<Eigen::Index>(binomial(n, q + 1)) : 0;
    const Eigen::Index nt = q >= 1 ? static_cast<Eigen::Index>(binomial(n, q - 1)) : 0;
    const auto dkeys = q < n ? multi_indices(n, q + 1) : std::vector<MultiIndex>{};
    const auto tkeys = q >= 1 ? multi_indices(n, q - 1) : std::vector<MultiIndex>{};

    p.M = CMatrix::Zero(N, N);
    p.AQ = CMatrix::Zero(N, N);
    p.AG = CMatrix::Zero(N, N);
    const std::vector<Point> pts = quad.points();
    const std::vector<double> wts = quad.weights();
    const Eigen::Index chunk = 2048;
    for (Eigen::Index start = 0; start < static_cast<Eigen::Index>(pts.size()); start += chunk) {
      const Eigen::Index P = std::min<Eigen::Index>(chunk, static_cast<Eigen::Index>(pts.size()) - start);
      CMatrix FM(P * nc, N), FQ(P * (nd + nt), N), FG(P * nc * 2 * n, N);
      for (Eigen::Index i = 0; i < N; ++i) {
        const auto& u = basis.elements[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < P; ++j) {
          const Point& z = pts[static_cast<std::size_t>(start + j)];
          const double sw = std::sqrt(wts[static_cast<std::size_t>(start + j)]);
          for (Eigen::Index c = 0; c < nc; ++c) {
            const Jet jt = u.coeff(keys[static_cast<std::size_t>(c)]).jet(z);
            FM(j * nc + c, i) = sw * jt.value;
            for (int k = 0; k < n; ++k) {
              FG((j * nc + c) * 2 * n + 2 * k, i) = std::sqrt(2.0) * sw * jt.dz[k];
              FG((j * nc + c) * 2 * n + 2 * k + 1, i) = std::sqrt(2.0) * sw * jt.dzb[k];
            }
          }
          for (Eigen::Index c = 0; c < nd; ++c)
            FQ(j * (nd + nt) + c, i) = sw * d[static_cast<std::size_t>(i)].coeff(dkeys[static_cast<std::size_t>(c)]).value(z);
          for (Eigen::Index c = 0; c < nt; ++c)
            FQ(j * (nd + nt) + nd + c, i) =
                sw * th[static_cast<std::size_t>(i)].coeff(tkeys[static_cast<std::size_t>(c)]).value(z);
        }
      }
      p.M.noalias() += FM.adjoint() * FM;
      if (nd + nt > 0) p.AQ.noalias() += FQ.adjoint() * FQ;
      p.AG.noalias() += FG.adjoint() * FG;
    }
  }
  hermitianize(p.M);
  hermitianize(p.AQ);
  hermitianize(p.AG);
  return p;
}

inline DiscreteProblem assemble(const Domain& dom, const TrialBasis& basis, int n_rad, int n_ang,
                                AssemblyMethod method = AssemblyMethod::automatic) {
  return assemble(dom, basis, make_quadrature(dom, n_rad, n_ang), method);
}

/// The sub-problem on the first m basis elements.
inline DiscreteProblem leading_block(const DiscreteProblem& p, Eigen::Index m) {
  if (m < 1 || m > p.dim()) throw InputError("leading_block: size out of range");
  DiscreteProblem out = p;
  out.M = p.M.topLeftCorner(m, m);
  out.AQ = p.AQ.topLeftCorner(m, m);
  out.AG = p.AG.topLeftCorner(m, m);
  out.transform = CMatrix::Identity(m, m);
  out.meta.basis_size = static_cast<std::size_t>(m);
  return out;
}

}  // namespace dbarlab
