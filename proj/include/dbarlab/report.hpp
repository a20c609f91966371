#pragma once

#include <string>
#include <vector>

#include "dbarlab/eig.hpp"
#include "json.hpp"

namespace dbarlab {

using json = nlohmann::ordered_json;

inline json to_json(const ProblemMeta& m) {
  return {{"domain", m.domain},         {"q", m.q},         {"deg", m.deg},
          {"n_rad", m.n_rad},           {"n_ang", m.n_ang}, {"kind", m.kind},
          {"projection", m.projection}, {"basis_size", m.basis_size}, {"filter_tol", m.filter_tol}};
}

/// Row-major [re, im] pairs.
inline json matrix_to_json(const CMatrix& X) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j) rows.push_back({X(i, j).real(), X(i, j).imag()});
  return {{"dims", {X.rows(), X.cols()}}, {"data", rows}};
}

inline CMatrix matrix_from_json(const json& j) {
  const auto r = j.at("dims").at(0).get<Eigen::Index>(), c = j.at("dims").at(1).get<Eigen::Index>();
  const auto& d = j.at("data");
  if (static_cast<Eigen::Index>(d.size()) != r * c) throw InputError("matrix json: size does not match dims");
  CMatrix X(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index k = 0; k < c; ++k) {
      const auto& e = d.at(static_cast<std::size_t>(i * c + k));
      X(i, k) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return X;
}

inline json to_json(const DiscreteProblem& p) {
  return {{"dims", {p.dim(), p.dim()}},
          {"t", p.t},
          {"M", matrix_to_json(p.M)},
          {"A_Q", matrix_to_json(p.AQ)},
          {"A_G", matrix_to_json(p.AG)},
          {"meta", to_json(p.meta)}};
}

inline json to_json(const SpectrumResult& r) {
  return {{"eigenvalues", r.eigenvalues}, {"residuals", r.residuals}, {"t", r.t}, {"dim", r.dim},
          {"meta", to_json(r.meta)}};
}

}  // namespace dbarlab
