#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "dbarlab/assembly.hpp"
#include "dbarlab/error.hpp"

namespace dbarlab {

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> residuals;    // relative, see relative_residual
  CMatrix vectors;                  // columns, in the pencil's coordinates
  ProblemMeta meta;
  double t = 0;
  std::size_t dim = 0;
};

/// ‖Ax - λMx‖ / ((‖A‖ + |λ|‖M‖)‖x‖), Frobenius matrix norms.
inline double relative_residual(const CMatrix& A, const CMatrix& M, double lambda, const CVector& x) {
  const double scale = (A.norm() + std::abs(lambda) * M.norm()) * x.norm();
  return scale > 0 ? (A * x - lambda * (M * x)).norm() / scale : 0.0;
}

inline double min_eigenvalue(const CMatrix& H) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

inline NotPositiveDefinite not_positive_definite(const CMatrix& M) {
  const double lo = min_eigenvalue(M);
  return NotPositiveDefinite("mass matrix is not positive definite: smallest eigenvalue " + std::to_string(lo), lo);
}

/// Compresses the problem onto the M-eigendirections with eigenvalue above
/// tol·λ_max (after unit-diagonal scaling). The new mass matrix is computed
/// as XᴴMX and is close to, not assumed to be, the identity.
inline DiscreteProblem filter_basis(const DiscreteProblem& p, double tol = 1e-10) {
  if (!(tol > 0 && tol < 1)) throw InputError("filter_basis: tol must lie in (0, 1)");
  const Eigen::Index N = p.dim();
  std::vector<Eigen::Index> live;
  for (Eigen::Index i = 0; i < N; ++i)
    if (p.M(i, i).real() > 0) live.push_back(i);
  if (live.empty()) throw DegenerateError("filter_basis: every basis element has zero mass");
  const auto L = static_cast<Eigen::Index>(live.size());
  CMatrix S = CMatrix::Zero(N, L);
  for (Eigen::Index j = 0; j < L; ++j) S(live[j], j) = 1.0 / std::sqrt(p.M(live[j], live[j]).real());
  CMatrix Ms = S.adjoint() * p.M * S;
  hermitianize(Ms);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(Ms);
  const auto& ev = es.eigenvalues();
  const double top = ev(L - 1);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < L; ++j)
    if (ev(j) > tol * top) keep.push_back(j);
  if (keep.empty() || !(top > 0)) throw DegenerateError("filter_basis: everything was filtered out");
  CMatrix X(N, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    X.col(static_cast<Eigen::Index>(j)) = S * es.eigenvectors().col(keep[j]) / std::sqrt(ev(keep[j]));
  DiscreteProblem out = p;
  out.M = X.adjoint() * p.M * X;
  out.AQ = X.adjoint() * p.AQ * X;
  out.AG = X.adjoint() * p.AG * X;
  hermitianize(out.M);
  hermitianize(out.AQ);
  hermitianize(out.AG);
  out.transform = p.transform * X;
  out.meta.filter_tol = tol;
  return out;
}

/// k smallest eigenpairs of the pencil (A, M) by Cholesky reduction and a
/// dense Hermitian eigensolve.
inline SpectrumResult solve_dense(const CMatrix& A, const CMatrix& M, Eigen::Index k) {
  const Eigen::Index N = M.rows();
  if (A.rows() != N || A.cols() != N || M.cols() != N) throw InputError("solve_dense: shape mismatch");
  if (k < 1 || k > N) throw InputError("solve_dense: k must satisfy 1 <= k <= dim");
  Eigen::LLT<CMatrix> llt(M);
  if (llt.info() != Eigen::Success) throw not_positive_definite(M);
  const CMatrix Lmat = llt.matrixL();
  CMatrix C = Lmat.triangularView<Eigen::Lower>().solve(A);
  C = Lmat.triangularView<Eigen::Lower>().solve(C.adjoint().eval()).adjoint().eval();
  hermitianize(C);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(C);
  if (es.info() != Eigen::Success) throw NoConvergence("solve_dense: eigensolver failed", 1.0);
  SpectrumResult r;
  r.dim = static_cast<std::size_t>(N);
  r.vectors = Lmat.adjoint().triangularView<Eigen::Upper>().solve(es.eigenvectors().leftCols(k));
  for (Eigen::Index j = 0; j < k; ++j) {
    r.eigenvalues.push_back(es.eigenvalues()(j));
    r.residuals.push_back(relative_residual(A, M, es.eigenvalues()(j), r.vectors.col(j)));
  }
  return r;
}

inline SpectrumResult solve_dense(const DiscreteProblem& p, Eigen::Index k) {
  auto r = solve_dense(p.stiffness(), p.M, k);
  r.meta = p.meta;
  r.t = p.t;
  return r;
}

struct IterativeOptions {
  double tol = 1e-10;
  int max_restarts = 200;
  int blocks = 4;  // Krylov blocks per restart cycle
  std::uint64_t seed = 20240611;
};

/// k smallest eigenpairs by restarted block shift-invert Krylov iteration
/// with Rayleigh-Ritz extraction on A. Every new block is M-orthogonalized
/// twice against the whole basis.
inline SpectrumResult solve_iterative(const CMatrix& A, const CMatrix& M, Eigen::Index k,
                                      const IterativeOptions& opt = {}) {
  const Eigen::Index N = M.rows();
  if (A.rows() != N || A.cols() != N || M.cols() != N) throw InputError("solve_iterative: shape mismatch");
  if (k < 1 || k > N) throw InputError("solve_iterative: k must satisfy 1 <= k <= dim");
  {
    Eigen::LLT<CMatrix> llt(M);
    if (llt.info() != Eigen::Success) throw not_positive_definite(M);
  }
  // shift below the spectrum so that A - σM is positive definite
  double sigma = 0;
  const double scale = std::max(A.norm() / std::max(M.norm(), 1e-300), 1e-300);
  Eigen::LLT<CMatrix> op;
  for (int attempt = 0;; ++attempt) {
    op.compute(A - sigma * M);
    if (op.info() == Eigen::Success) break;
    if (attempt > 30) throw NoConvergence("solve_iterative: no positive definite shift found", 1.0);
    sigma = -scale * 1e-12 * std::pow(10.0, attempt);
  }
  const Eigen::Index b = std::min(N, k + std::max<Eigen::Index>(k, 6));
  const Eigen::Index cap = std::min(N, b * opt.blocks);

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss;
  auto random_block = [&](Eigen::Index cols) {
    CMatrix R(N, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < N; ++i) R(i, j) = cplx(gauss(rng), gauss(rng));
    return R;
  };

  CMatrix V(N, cap), MV(N, cap);
  Eigen::Index m = 0;
  // M-orthonormalize columns of W against V[:, :m] and each other, appending survivors.
  auto append = [&](CMatrix W) {
    for (Eigen::Index j = 0; j < W.cols() && m < cap; ++j) {
      CVector w = W.col(j);
      for (int tries = 0; tries < 4; ++tries) {
        const double before = std::sqrt(std::abs(w.dot(M * w)));
        for (int pass = 0; pass < 2; ++pass)
          if (m > 0) w -= V.leftCols(m) * (MV.leftCols(m).adjoint() * w);
        const CVector Mw = M * w;
        const double nrm = std::sqrt(std::abs(w.dot(Mw)));
        if (nrm > 1e-10 * before && nrm > 0) {
          V.col(m) = w / nrm;
          MV.col(m) = Mw / nrm;
          ++m;
          break;
        }
        w = random_block(1).col(0);  // breakdown: inject a fresh direction
      }
    }
  };

  CMatrix start = random_block(b);
  SpectrumResult best;
  double worst = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart <= opt.max_restarts; ++restart) {
    m = 0;
    append(start);
    Eigen::Index block_begin = 0;
    while (m < cap) {
      const Eigen::Index block_end = m;
      if (block_end == block_begin) {
        append(random_block(std::min(b, cap - m)));
        block_begin = block_end;
        continue;
      }
      CMatrix W = op.solve(MV.middleCols(block_begin, block_end - block_begin));
      block_begin = block_end;
      append(W);
      if (m == block_end) append(random_block(std::min(b, cap - m)));
    }
    // Rayleigh-Ritz on span(V)
    CMatrix Ar = V.leftCols(m).adjoint() * A * V.leftCols(m);
    CMatrix Mr = V.leftCols(m).adjoint() * MV.leftCols(m);
    hermitianize(Ar);
    hermitianize(Mr);
    SpectrumResult rr = solve_dense(Ar, Mr, std::min(m, std::max(b, k)));
    CMatrix X = V.leftCols(m) * rr.vectors;
    SpectrumResult out;
    out.dim = static_cast<std::size_t>(N);
    out.vectors = X.leftCols(k);
    double w = 0;
    for (Eigen::Index j = 0; j < k; ++j) {
      out.eigenvalues.push_back(rr.eigenvalues[static_cast<std::size_t>(j)]);
      out.residuals.push_back(relative_residual(A, M, out.eigenvalues.back(), X.col(j)));
      w = std::max(w, out.residuals.back());
    }
    if (w < worst) {
      worst = w;
      best = out;
    }
    if (w <= opt.tol || m == N) return out;
    start = X.leftCols(std::min<Eigen::Index>(b, X.cols()));
  }
  throw NoConvergence("solve_iterative: residual target not reached", worst);
}

inline SpectrumResult solve_iterative(const DiscreteProblem& p, Eigen::Index k, const IterativeOptions& opt = {}) {
  auto r = solve_iterative(p.stiffness(), p.M, k, opt);
  r.meta = p.meta;
  r.t = p.t;
  return r;
}

namespace detail {

// Â = L⁻¹ X L⁻ᴴ with M = LLᴴ.
inline CMatrix m_orthonormal(const CMatrix& X, const Eigen::LLT<CMatrix>& llt) {
  const CMatrix Lmat = llt.matrixL();
  CMatrix C = Lmat.triangularView<Eigen::Lower>().solve(X);
  C = Lmat.triangularView<Eigen::Lower>().solve(C.adjoint().eval()).adjoint().eval();
  hermitianize(C);
  return C;
}

inline CMatrix hpd_inverse(const CMatrix& A) {
  Eigen::LLT<CMatrix> llt(A);
  if (llt.info() != Eigen::Success)
    throw DegenerateError("resolvent: stiffness matrix is singular (min eigenvalue " +
                          std::to_string(min_eigenvalue(A)) + ")");
  CMatrix inv = llt.solve(CMatrix::Identity(A.rows(), A.cols()));
  hermitianize(inv);
  return inv;
}

inline double spectral_norm_hermitian(const CMatrix& H) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(H, Eigen::EigenvaluesOnly);
  return std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(H.rows() - 1)));
}

}  // namespace detail

/// ‖N^t - N‖ in the M-norm, where N^t = (A_Q + tA_G)⁻¹M on the trial space,
/// for several t sharing one factorization of M.
inline std::vector<double> resolvent_gaps(const DiscreteProblem& p, const std::vector<double>& ts) {
  for (double t : ts)
    if (!(t >= 0)) throw InputError("resolvent_gap: t must be >= 0");
  Eigen::LLT<CMatrix> llt(p.M);
  if (llt.info() != Eigen::Success) throw not_positive_definite(p.M);
  const CMatrix A = detail::m_orthonormal(p.AQ, llt);
  const CMatrix G = detail::m_orthonormal(p.AG, llt);
  const CMatrix N0 = detail::hpd_inverse(A);
  std::vector<double> out;
  for (double t : ts) out.push_back(detail::spectral_norm_hermitian(detail::hpd_inverse(A + t * G) - N0));
  return out;
}

inline double resolvent_gap(const DiscreteProblem& p, double t) { return resolvent_gaps(p, {t}).front(); }

/// First-order bound t·‖Â⁻¹ĜÂ⁻¹‖ for resolvent_gap.
inline double resolvent_bound(const DiscreteProblem& p, double t) {
  Eigen::LLT<CMatrix> llt(p.M);
  if (llt.info() != Eigen::Success) throw not_positive_definite(p.M);
  const CMatrix A = detail::m_orthonormal(p.AQ, llt);
  const CMatrix G = detail::m_orthonormal(p.AG, llt);
  const CMatrix N0 = detail::hpd_inverse(A);
  CMatrix X = N0 * G * N0;
  hermitianize(X);
  return t * detail::spectral_norm_hermitian(X);
}

/// Largest generalized eigenvalue of (A_G, M).
inline double gradient_form_bound(const DiscreteProblem& p) {
  auto r = solve_dense(p.AG, p.M, p.dim());
  return r.eigenvalues.back();
}

/// q/(e·D²): lower bound for λ₁ of □_q on a pseudoconvex domain of diameter D.
inline double hormander_bound(int q, double diameter) { return q / (std::numbers::e * diameter * diameter); }

}  // namespace dbarlab
