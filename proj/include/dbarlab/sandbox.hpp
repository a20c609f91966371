#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <random>
#include <vector>

#include "dbarlab/error.hpp"

namespace dbarlab {

using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Two quadratic-form pencils (A_i, M_i) and a transition map T: S₁ → S₂.
struct TransitionInstance {
  RMatrix A1, M1, A2, M2, T;
  int k = 1;
  double eps = 0;
  std::uint64_t seed = 0;
};

namespace detail {

class Gaussian {
 public:
  explicit Gaussian(std::uint64_t seed) : rng_(seed) {}
  double operator()() { return dist_(rng_); }
  RMatrix matrix(Eigen::Index r, Eigen::Index c) {
    RMatrix X(r, c);
    for (Eigen::Index j = 0; j < c; ++j)
      for (Eigen::Index i = 0; i < r; ++i) X(i, j) = (*this)();
    return X;
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> dist_;
};

inline RMatrix random_hpd(Gaussian& g, Eigen::Index d) {
  RMatrix B = g.matrix(d, d);
  return B.transpose() * B / static_cast<double>(d) + 0.5 * RMatrix::Identity(d, d);
}

inline RMatrix random_symmetric(Gaussian& g, Eigen::Index d) {
  RMatrix B = g.matrix(d, d);
  return (B + B.transpose()) / (2.0 * std::sqrt(static_cast<double>(d)));
}

// Eigenvalues of the pencil (X, B) for symmetric X and SPD B, ascending.
inline RVector pencil_eigenvalues(const RMatrix& X, const RMatrix& B) {
  Eigen::GeneralizedSelfAdjointEigenSolver<RMatrix> es(X, B, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw DegenerateError("sandbox: pencil is not definite");
  return es.eigenvalues();
}

inline double pencil_abs_max(const RMatrix& X, const RMatrix& B) {
  const RVector ev = pencil_eigenvalues(X, B);
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

inline void keep_positive(RMatrix& H) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(H, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0);
  if (lo < 0.1) H += (0.1 - lo) * RMatrix::Identity(H.rows(), H.cols());
}

}  // namespace detail

/// Random pencils with S₂ extending S₁ through the embedding E (or
/// truncation when dim₂ < dim₁), perturbed at scale eps; T = E + eps·R.
inline TransitionInstance make_random_instance(int dim1, int dim2, double eps, std::uint64_t seed, int k = 1) {
  if (dim1 < 1 || dim2 < 1) throw InputError("make_random_instance: dimensions must be >= 1");
  if (!(eps >= 0)) throw InputError("make_random_instance: eps must be >= 0");
  if (k < 1 || k > std::min(dim1, dim2)) throw InputError("make_random_instance: need 1 <= k <= min(dim1, dim2)");
  detail::Gaussian g(seed);
  TransitionInstance in;
  in.k = k;
  in.eps = eps;
  in.seed = seed;
  in.M1 = detail::random_hpd(g, dim1);
  in.A1 = detail::random_hpd(g, dim1);
  const int m = std::min(dim1, dim2);
  RMatrix E = RMatrix::Zero(dim2, dim1);
  E.topLeftCorner(m, m).setIdentity();
  in.M2 = RMatrix::Zero(dim2, dim2);
  in.A2 = RMatrix::Zero(dim2, dim2);
  in.M2.topLeftCorner(m, m) = in.M1.topLeftCorner(m, m);
  in.A2.topLeftCorner(m, m) = in.A1.topLeftCorner(m, m);
  if (dim2 > dim1) {
    in.M2.bottomRightCorner(dim2 - dim1, dim2 - dim1) = detail::random_hpd(g, dim2 - dim1);
    in.A2.bottomRightCorner(dim2 - dim1, dim2 - dim1) = detail::random_hpd(g, dim2 - dim1);
  }
  if (eps > 0) {
    in.M2 += eps * detail::random_symmetric(g, dim2);
    in.A2 += eps * detail::random_symmetric(g, dim2);
    detail::keep_positive(in.M2);
    detail::keep_positive(in.A2);
    in.T = E + eps * g.matrix(dim2, dim1) / std::sqrt(static_cast<double>(dim2));
  } else {
    in.T = E;
  }
  return in;
}

struct LemmaCheck {
  bool applicable = false;
  bool holds = true;
  double alpha = 0;
  double beta = 0;
  double lambda1 = 0;  // λ_k(S₁)
  double lambda2 = 0;  // λ_k(S₂)
  double bound = 0;    // λ_k(S₁) + 2k(αλ_k(S₁) + β)
  double slack = 0;
  double normalized_slack = 0;
};

/// α_k = ‖TᵀM₂T - M₁‖ and β_k = ‖TᵀA₂T - A₁‖, operator norms relative to M₁.
inline double transition_alpha(const TransitionInstance& in) {
  return detail::pencil_abs_max(in.T.transpose() * in.M2 * in.T - in.M1, in.M1);
}
inline double transition_beta(const TransitionInstance& in) {
  return detail::pencil_abs_max(in.T.transpose() * in.A2 * in.T - in.A1, in.M1);
}

namespace detail {

inline LemmaCheck conclude(const TransitionInstance& in, double alpha, double beta) {
  LemmaCheck c;
  c.alpha = alpha;
  c.beta = beta;
  c.lambda1 = pencil_eigenvalues(in.A1, in.M1)(in.k - 1);
  c.lambda2 = pencil_eigenvalues(in.A2, in.M2)(in.k - 1);
  c.applicable = alpha < 1.0 / (2.0 * in.k);
  c.bound = c.lambda1 + 2.0 * in.k * (alpha * c.lambda1 + beta);
  c.slack = c.bound - c.lambda2;
  const double scale = 1.0 + std::max(std::abs(c.lambda1), std::abs(c.lambda2));
  c.normalized_slack = c.slack / scale;
  c.holds = !c.applicable || c.normalized_slack >= -1e-10;
  return c;
}

}  // namespace detail

/// λ_k(S₂) ≤ λ_k(S₁) + 2k(α_kλ_k(S₁) + β_k) whenever α_k < 1/(2k).
inline LemmaCheck check_lemma(const TransitionInstance& in) {
  return detail::conclude(in, transition_alpha(in), transition_beta(in));
}

struct RemarkCheck {
  bool hypotheses_hold = true;  // sampled ‖Tu‖² and Q₂(Tu) inequalities
  double worst_mass_margin = 0;  // min over samples of ‖Tu‖² - (1-kα)‖u‖², relative
  double worst_form_margin = 0;  // min over samples of Q₁(u) + kβ‖u‖² - Q₂(Tu), relative
  LemmaCheck conclusion;         // with the sharp one-sided constants
};

/// The subspace form of the hypotheses: ‖Tu‖² ≥ (1-kα)‖u‖² and
/// Q₂(Tu,Tu) ≤ Q₁(u,u) + kβ‖u‖², sampled on random u; the conclusion is then
/// re-checked with the smallest α, β satisfying these two inequalities.
inline RemarkCheck check_remark(const TransitionInstance& in, int samples, std::uint64_t seed) {
  const double alpha = transition_alpha(in), beta = transition_beta(in);
  const int k = in.k;
  detail::Gaussian g(seed);
  RemarkCheck rc;
  rc.worst_mass_margin = rc.worst_form_margin = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const RVector u = g.matrix(in.M1.rows(), 1);
    const RVector Tu = in.T * u;
    const double n1 = u.dot(in.M1 * u), n2 = Tu.dot(in.M2 * Tu);
    const double q1 = u.dot(in.A1 * u), q2 = Tu.dot(in.A2 * Tu);
    const double mass = (n2 - (1 - k * alpha) * n1) / n1;
    const double form = (q1 + k * beta * n1 - q2) / (std::abs(q1) + n1);
    rc.worst_mass_margin = std::min(rc.worst_mass_margin, mass);
    rc.worst_form_margin = std::min(rc.worst_form_margin, form);
  }
  rc.hypotheses_hold = rc.worst_mass_margin >= -1e-12 && rc.worst_form_margin >= -1e-12;
  const RVector mass_ev = detail::pencil_eigenvalues(in.T.transpose() * in.M2 * in.T, in.M1);
  const RVector form_ev = detail::pencil_eigenvalues(in.T.transpose() * in.A2 * in.T - in.A1, in.M1);
  const double alpha_r = std::max(0.0, 1.0 - mass_ev(0)) / k;
  const double beta_r = std::max(0.0, form_ev(form_ev.size() - 1)) / k;
  rc.conclusion = detail::conclude(in, alpha_r, beta_r);
  return rc;
}

/// Largest sampled |⟨Tu_h,Tu_l⟩₂ - δ_hl| and |Q₂(Tu_h,Tu_l) - Q₁(u_h,u_l)| over
/// random M₁-orthonormal k-sets.
inline std::pair<double, double> sampled_deviation(const TransitionInstance& in, int sets, std::uint64_t seed) {
  detail::Gaussian g(seed);
  const Eigen::LLT<RMatrix> llt(in.M1);
  const RMatrix L = llt.matrixL();
  double dm = 0, dq = 0;
  for (int s = 0; s < sets; ++s) {
    // orthonormal in the M₁ inner product: U = L⁻ᵀ Q with Q orthonormal
    Eigen::HouseholderQR<RMatrix> qr(g.matrix(in.M1.rows(), in.k));
    const RMatrix Q = qr.householderQ() * RMatrix::Identity(in.M1.rows(), in.k);
    const RMatrix U = L.transpose().triangularView<Eigen::Upper>().solve(Q);
    const RMatrix TU = in.T * U;
    const RMatrix gm = TU.transpose() * in.M2 * TU - RMatrix::Identity(in.k, in.k);
    const RMatrix gq = TU.transpose() * in.A2 * TU - U.transpose() * in.A1 * U;
    dm = std::max(dm, gm.cwiseAbs().maxCoeff());
    dq = std::max(dq, gq.cwiseAbs().maxCoeff());
  }
  return {dm, dq};
}

struct CampaignSummary {
  int requested = 0;
  int generated = 0;
  int applicable = 0;
  int violations = 0;
  int remark_violations = 0;
  double worst_normalized_slack = std::numeric_limits<double>::infinity();
  double worst_remark_slack = std::numeric_limits<double>::infinity();
  std::vector<double> alphas;
  std::vector<double> betas;
};

/// Draws seeded instances (dims ≤ max_dim, k ≤ max_k) until `instances`
/// applicable ones have been checked.
inline CampaignSummary run_lemma_campaign(int instances, int max_dim, double eps, std::uint64_t seed, int max_k = 4,
                                          int remark_samples = 1000) {
  if (instances < 1 || max_dim < 1 || !(eps >= 0)) throw InputError("lemma campaign: bad parameters");
  CampaignSummary s;
  s.requested = instances;
  std::mt19937_64 meta(seed);
  const int cap = 100 * instances + 1000;
  while (s.applicable < instances) {
    if (s.generated >= cap) throw DegenerateError("lemma campaign: too few applicable instances; lower eps");
    const int d1 = 1 + static_cast<int>(meta() % static_cast<std::uint64_t>(max_dim));
    const int d2 = d1 + static_cast<int>(meta() % static_cast<std::uint64_t>(max_dim - d1 + 1));
    const int k = 1 + static_cast<int>(meta() % static_cast<std::uint64_t>(std::min(max_k, d1)));
    const double e = eps * std::generate_canonical<double, 53>(meta);
    const std::uint64_t inst_seed = meta();
    ++s.generated;
    const auto in = make_random_instance(d1, d2, e, inst_seed, k);
    const auto c = check_lemma(in);
    if (!c.applicable) continue;
    ++s.applicable;
    s.alphas.push_back(c.alpha);
    s.betas.push_back(c.beta);
    if (!c.holds) ++s.violations;
    s.worst_normalized_slack = std::min(s.worst_normalized_slack, c.normalized_slack);
    const auto rc = check_remark(in, remark_samples, inst_seed ^ 0x9e3779b97f4a7c15ULL);
    if (!rc.hypotheses_hold || !rc.conclusion.holds) ++s.remark_violations;
    if (rc.conclusion.applicable)
      s.worst_remark_slack = std::min(s.worst_remark_slack, rc.conclusion.normalized_slack);
  }
  return s;
}

}  // namespace dbarlab
