#include <gtest/gtest.h>

#include <set>

#include "dbarlab/trialspace.hpp"

using namespace dbarlab;

namespace {

// exponent slots are (z₁..z_n, z̄₁..z̄_n)
std::size_t tangential_count_oracle(int deg) {
  std::set<Exponent> s;
  for (const auto& e : monomials(2, deg))
    for (int k : {0, 1}) {
      Exponent f = e;
      ++f[k];
      s.insert(f);
    }
  return s.size();
}

std::size_t monomial_count(int vars, int deg) {
  std::size_t c = 1;
  for (int i = 1; i <= vars; ++i) c = c * (deg + i) / i;
  return c;
}

}  // namespace

TEST(DbarNeumannBasis, FirstElementIsTheTangentialProjectionOfDzbar1) {
  const Domain ball = make_ball(2);
  const auto b = build_dbar_neumann_basis(ball, 1, 0);
  ASSERT_EQ(b.size(), 4u);
  ASSERT_TRUE(b.polys);
  // 4P(dz̄₁) - 2r dz̄₁ = (1 - |z₁|²)dz̄₁ - z̄₁z₂ dz̄₂
  const Poly r = *ball.defining_function().to_poly(2);
  const PolyForm& p = b.polys->front();
  const Poly z1 = Poly::z(2, 0), z2 = Poly::z(2, 1), w1 = Poly::zbar(2, 0);
  EXPECT_EQ(4.0 * p[0] - 2.0 * r, Poly::constant(2, 1.0) - z1 * w1);
  EXPECT_EQ(4.0 * p[1], -1.0 * (w1 * z2));
  // then the normal family r dz̄₁, r dz̄₂
  EXPECT_EQ((*b.polys)[2], (PolyForm{r, Poly(2)}));
  EXPECT_EQ((*b.polys)[3], (PolyForm{Poly(2), r}));
  EXPECT_EQ(b.generator_degree, (std::vector<int>{0, 0, 0, 0}));
}

TEST(DbarNeumannBasis, SizeMatchesCountingOracle) {
  const Domain ball = make_ball(2);
  for (int deg : {0, 1, 2, 4, 6}) {
    const auto b = build_dbar_neumann_basis(ball, 1, deg);
    EXPECT_EQ(b.size(), tangential_count_oracle(deg) + 2 * monomial_count(4, deg)) << deg;
  }
  EXPECT_EQ(build_dbar_neumann_basis(ball, 1, 2).size(), 55u);
  EXPECT_EQ(build_dbar_neumann_basis(ball, 1, 6).size(), 714u);
}

TEST(DbarNeumannBasis, SatisfiesTheBoundaryCondition) {
  for (const auto& spec : {"ball", "pball:delta=0.05,phi=rez1sq", "pball:delta=0.08,phi=rez1z2"}) {
    const Domain d = parse_domain(spec);
    const auto pts = boundary_samples(d, 400);
    for (auto proj : {Projection::polynomial, Projection::bump}) {
      const auto b = build_dbar_neumann_basis(d, 1, 3, proj);
      for (const auto& u : b.elements) EXPECT_LE(boundary_residual(u, d, pts), 1e-10) << spec;
    }
  }
  const Domain b3 = make_ball(3);
  const auto pts = boundary_samples(b3, 200);
  for (int q : {1, 2}) {
    const auto b = build_dbar_neumann_basis(b3, q, 2);
    EXPECT_GT(b.size(), 0u);
    for (const auto& u : b.elements) EXPECT_LE(boundary_residual(u, b3, pts), 1e-10) << q;
  }
}

TEST(DbarNeumannBasis, BumpElementsReduceToTheNormalizedProjectionOnTheBoundary) {
  const Domain d = make_perturbed_ball(2, 0.04, "rez1sq");
  const auto poly = build_dbar_neumann_basis(d, 1, 1, Projection::polynomial);
  const auto bump = build_dbar_neumann_basis(d, 1, 1, Projection::bump);
  EXPECT_FALSE(bump.polys);
  // first element of each: generated by dz̄₁ at degree 0
  for (const auto& z : boundary_samples(d, 300)) {
    const auto a = evaluate(poly.elements[0], z), b = evaluate(bump.elements[0], z);
    const double s = d.dr_norm_sq(z);
    for (std::size_t i = 0; i < a.c.size(); ++i) EXPECT_LT(std::abs(a.c[i] / s - b.c[i]), 1e-13);
  }
}

TEST(DbarNeumannBasis, IsNestedInDegree) {
  const Domain d = make_perturbed_ball(2, 0.03, "rez1z2");
  const auto big = build_dbar_neumann_basis(d, 1, 5);
  for (int deg : {1, 3, 4}) {
    const auto small = build_dbar_neumann_basis(d, 1, deg);
    const auto cut = big.truncated(deg);
    ASSERT_EQ(cut.size(), small.size()) << deg;
    EXPECT_EQ(*cut.polys, *small.polys) << deg;
    EXPECT_EQ(cut.deg_cap, deg);
  }
}

TEST(DbarNeumannBasis, Errors) {
  const Domain ball = make_ball(2);
  EXPECT_THROW(build_dbar_neumann_basis(ball, 0, 2), DegreeError);
  EXPECT_THROW(build_dbar_neumann_basis(ball, 2, 2), DegreeError);
  EXPECT_THROW(build_dbar_neumann_basis(ball, 1, -1), InputError);
  // |∂r|² = (2r + 1)/4 drops below 0.05 once r < -0.4
  EXPECT_THROW(build_dbar_neumann_basis(ball, 1, 1, Projection::bump, BumpShape{0.1, 0.45}), DegenerateError);
  EXPECT_NO_THROW(build_dbar_neumann_basis(ball, 1, 1, Projection::bump, BumpShape{0.1, 0.35}));
  EXPECT_EQ(parse_projection("auto"), Projection::polynomial);
  EXPECT_EQ(parse_projection("bump"), Projection::bump);
  EXPECT_THROW(parse_projection("smooth"), InputError);
}

TEST(DirichletBasis, VanishesOnTheBoundary) {
  const Domain d = make_perturbed_ball(2, 0.05, "rez1sq");
  const auto b = build_dirichlet_basis(d, 2);
  EXPECT_EQ(b.size(), monomial_count(4, 2));
  EXPECT_EQ(b.kind, BasisKind::dirichlet);
  for (const auto& z : boundary_samples(d, 300))
    for (const auto& u : b.elements) EXPECT_LE(evaluate(u, z).norm(), 1e-12);
  EXPECT_EQ(build_dirichlet_basis(d, 1, 1).size(), 2 * monomial_count(4, 1));
}

TEST(NeumannBasis, RealPartsAndImaginaryParts) {
  const Domain ball = make_ball(2);
  const auto b = build_neumann_basis(ball, 1);
  ASSERT_EQ(b.size(), 5u);
  const Point z{cplx(0.3, -0.7), cplx(0.2, 0.1)};
  std::multiset<double> vals;
  for (const auto& u : b.elements) {
    const cplx v = evaluate(u, z).c[0];
    EXPECT_EQ(v.imag(), 0.0);
    vals.insert(v.real());
  }
  EXPECT_EQ(vals, (std::multiset<double>{1.0, 0.3, -0.7, 0.2, 0.1}));
  EXPECT_EQ(build_neumann_basis(ball, 3).size(), monomial_count(4, 3));
}

TEST(PolyForm, RoundTrip) {
  const Domain ball = make_ball(2);
  const auto b = build_dbar_neumann_basis(ball, 1, 2);
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(to_poly_form(b.elements[i]), (*b.polys)[i]);
  const auto bump = build_dbar_neumann_basis(ball, 1, 0, Projection::bump);
  EXPECT_THROW(to_poly_form(bump.elements[0]), InputError);
}
