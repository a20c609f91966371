#include <gtest/gtest.h>

#include <random>

#include "dbarlab/domain.hpp"
#include "dbarlab/form.hpp"
#include "dbarlab/quadrature.hpp"

using namespace dbarlab;

namespace {

FormExpr form1(int n, int q, const MultiIndex& J, const Expr& c) {
  FormExpr u(n, q);
  u.set(J, c);
  return u;
}

bool poly_zero(const FormExpr& u) {
  for (const auto& [J, e] : u.coeffs()) {
    auto p = e.to_poly(u.dim());
    if (!p || !p->is_zero()) return false;
  }
  return true;
}

Expr random_poly_expr(int n, int deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 3);
  std::uniform_int_distribution<int> small(-3, 3);
  Poly p(n);
  for (const auto& e : monomials(n, deg))
    if (coin(rng) == 0) p += Poly::monomial(n, e, cplx(small(rng), small(rng)));
  return Expr::from_poly(p);
}

FormExpr random_form(int n, int q, int deg, std::mt19937_64& rng) {
  FormExpr u(n, q);
  for (const auto& J : multi_indices(n, q)) u.set(J, random_poly_expr(n, deg, rng));
  return u;
}

}  // namespace

TEST(MultiIndex, WedgeInsertExamples) {
  auto a = wedge_insert(2, 1, MultiIndex{2});
  EXPECT_EQ(a.sign, 1);
  EXPECT_EQ(a.index, (MultiIndex{1, 2}));
  auto b = wedge_insert(2, 2, MultiIndex{1});
  EXPECT_EQ(b.sign, -1);
  EXPECT_EQ(b.index, (MultiIndex{1, 2}));
  EXPECT_EQ(wedge_insert(2, 1, MultiIndex{1, 2}).sign, 0);
  EXPECT_THROW(wedge_insert(2, 3, MultiIndex{1}), InputError);
  EXPECT_THROW(wedge_insert(2, 0, MultiIndex{1}), InputError);
}

TEST(MultiIndex, RejectsUnsortedOrRepeated) {
  EXPECT_THROW(MultiIndex({2, 1}), InputError);
  EXPECT_THROW(MultiIndex({1, 1}), InputError);
  EXPECT_THROW(MultiIndex({0}), InputError);
}

TEST(MultiIndex, ComponentCount) {
  for (int n = 1; n <= 5; ++n)
    for (int q = 0; q <= n; ++q) {
      long expect = 1;
      for (int i = 1; i <= q; ++i) expect = expect * (n - q + i) / i;  // n!/(q!(n-q)!)
      const auto all = multi_indices(n, q);
      EXPECT_EQ(static_cast<long>(all.size()), expect) << n << ' ' << q;
      for (std::size_t i = 0; i < all.size(); ++i) {
        EXPECT_EQ(multi_index_rank(n, all[i]), i);
        if (i > 0) { EXPECT_LT(all[i - 1], all[i]); }
      }
    }
}

TEST(Dbar, Examples) {
  // z̄₂ dz̄₁ -> ∂z̄₂/∂z̄₂ dz̄₂∧dz̄₁ = -dz̄₁∧dz̄₂
  auto d = dbar(form1(2, 1, {1}, Expr::zbar(1)));
  EXPECT_EQ(d.coeff({1, 2}).value(std::vector<cplx>{0.3, 0.7}), cplx(-1.0));
  EXPECT_TRUE(dbar(form1(2, 1, {1}, Expr::z(0))).is_zero());
  // ∂̄∂̄ of a scalar in ℂ³
  FormExpr f(3, 0);
  f.set({}, Expr::zbar(0) * Expr::zbar(1));
  EXPECT_TRUE(poly_zero(dbar(dbar(f))));
  EXPECT_THROW(dbar(FormExpr(2, 2)), DegreeError);
}

TEST(Dbar, SquaresToZeroOnRandomPolynomialForms) {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 3; ++n)
    for (int q = 0; q + 2 <= n; ++q)
      for (int deg = 1; deg <= 6; ++deg) {
        const auto u = random_form(n, q, deg, rng);
        EXPECT_TRUE(poly_zero(dbar(dbar(u)))) << n << ' ' << q << ' ' << deg;
      }
}

TEST(Theta, Examples) {
  auto t = theta(form1(2, 1, {1}, Expr::z(0)));
  EXPECT_EQ(t.coeff({}).value(std::vector<cplx>{0.2, 0.1}), cplx(-1.0));
  EXPECT_TRUE(theta(form1(2, 1, {1}, Expr::zbar(0))).is_zero());
  EXPECT_THROW(theta(FormExpr(2, 0)), DegreeError);
}

TEST(Theta, IsFormalAdjointOnTheBall) {
  // ⟨∂̄f, u⟩ = ⟨f, ϑu⟩ for zero-trace f = r·p; integrands are polynomials the
  // rule integrates exactly, so the two sides agree to rounding
  const Domain ball = make_ball(2);
  const Quadrature quad(ball, 12, 24);
  auto pair = [&](const FormExpr& a, const FormExpr& b) {
    return quad.integrate([&](const Point& z) { return pairing(evaluate(a, z), evaluate(b, z)); });
  };
  // spec example
  FormExpr f(2, 0);
  f.set({}, ball.defining_function() * Expr::zbar(1));
  const auto u = form1(2, 1, {1}, Expr(1.0));
  EXPECT_NEAR(std::abs(pair(dbar(f), u) - pair(f, theta(u))), 0.0, 1e-12);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    FormExpr g(2, 0);
    g.set({}, ball.defining_function() * random_poly_expr(2, 1 + trial % 4, rng));
    const auto v = random_form(2, 1, 1 + trial % 3, rng);
    const cplx lhs = pair(dbar(g), v), rhs = pair(g, theta(v));
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * (1 + std::abs(lhs))) << trial;
  }
}

TEST(Expr, WirtingerConsistencyForRealExpressions) {
  const Domain d = make_perturbed_ball(2, 0.03, "rez1z2");
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int i = 0; i < 50; ++i) {
    Point z{cplx(g(rng), g(rng)), cplx(g(rng), g(rng))};
    const Jet j = d.defining_function().jet(z);
    EXPECT_NEAR(j.value.imag(), 0.0, 1e-15);
    for (int k = 0; k < 2; ++k) EXPECT_LT(std::abs(j.dzb[k] - std::conj(j.dz[k])), 1e-14);
  }
}

TEST(Expr, ForwardJetsMatchFiniteDifferences) {
  // bump composed with a real polynomial: chain rule through b(Re f)
  const Expr r = make_ball(2).defining_function();
  const Expr e = Expr::bump(r) * Expr::zbar(0) * Expr::z(1) + Expr::z(0).pow(3);
  const Point z{cplx(0.55, 0.2), cplx(-0.3, 0.5)};
  const Jet j = e.jet(z);
  const double h = 1e-6;
  for (int k = 0; k < 2; ++k) {
    Point xp = z, xm = z, yp = z, ym = z;
    xp[k] += h, xm[k] -= h, yp[k] += cplx(0, h), ym[k] -= cplx(0, h);
    const cplx dx = (e.value(xp) - e.value(xm)) / (2 * h);
    const cplx dy = (e.value(yp) - e.value(ym)) / (2 * h);
    EXPECT_LT(std::abs(j.dz[k] - 0.5 * (dx - cplx(0, 1) * dy)), 1e-8);
    EXPECT_LT(std::abs(j.dzb[k] - 0.5 * (dx + cplx(0, 1) * dy)), 1e-8);
    EXPECT_LT(std::abs(e.diff_z(k).value(z) - j.dz[k]), 1e-13);
    EXPECT_LT(std::abs(e.diff_zbar(k).value(z) - j.dzb[k]), 1e-13);
  }
}

TEST(Expr, BumpIsOnlyTwiceDifferentiable) {
  EXPECT_EQ(bump_derivative(0.0, {}, 0), 1.0);
  EXPECT_EQ(bump_derivative(0.5, {}, 0), 0.0);
  EXPECT_THROW(bump_derivative(0.2, {}, 3), InputError);
  const Expr b = Expr::bump(make_ball(2).defining_function());
  EXPECT_THROW(b.diff_z(0).diff_z(0).diff_z(0), InputError);
}

TEST(NormalTrace, Examples) {
  const Domain ball = make_ball(2);
  const Point e1{1.0, 0.0};
  EXPECT_LT(std::abs(normal_trace(form1(2, 1, {1}, Expr(1.0)), ball, e1).c[0] - 0.5), 1e-15);
  EXPECT_LT(std::abs(normal_trace(form1(2, 1, {2}, Expr(1.0)), ball, e1).c[0]), 1e-15);

  FormExpr u(2, 1);
  u.set({1}, Expr(1.0) - Expr::z(0) * Expr::zbar(0));
  u.set({2}, -(Expr::zbar(0) * Expr::z(1)));
  for (const auto& z : boundary_samples(ball, 1000)) EXPECT_LE(normal_trace(u, ball, z).norm(), 1e-12);
}

TEST(Split, Examples) {
  const Domain ball = make_ball(2);
  const Point e1{1.0, 0.0};
  FormValue dz1(2, 1), dz2(2, 1);
  dz1[{1}] = 1.0;
  dz2[{2}] = 1.0;
  auto s1 = split_tangential_normal(dz1, ball, e1);
  EXPECT_LT(s1.tangential.norm(), 1e-15);
  EXPECT_LT(std::abs(s1.normal[{1}] - 1.0), 1e-15);
  auto s2 = split_tangential_normal(dz2, ball, e1);
  EXPECT_LT(s2.normal.norm(), 1e-15);
  EXPECT_LT(std::abs(s2.tangential[{2}] - 1.0), 1e-15);
  EXPECT_THROW(split_tangential_normal(dz1, ball, Point{0.1, 0.0}), DegenerateError);
}

TEST(Split, ProjectionPropertiesOnRandomBoundarySamples) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (int n : {2, 3}) {
    const Domain dom = n == 2 ? make_perturbed_ball(2, 0.04, "rez1sq") : make_ball(3);
    const auto pts = boundary_samples(dom, n == 2 ? 10000 : 2000);
    for (int q = 1; q <= n; ++q)
      for (const auto& z : pts) {
        FormValue u(n, q);
        for (auto& c : u.c) c = cplx(g(rng), g(rng));
        const auto s = split_tangential_normal(u, dom, z);
        const double scale = u.norm();
        EXPECT_LE(contract_value(dom.dr_dz(z), s.tangential).norm(), 1e-12 * scale);
        EXPECT_LE(std::abs(pairing(s.tangential, s.normal)), 1e-12 * scale * scale);
        double rec = 0;
        for (std::size_t i = 0; i < u.c.size(); ++i) rec = std::max(rec, std::abs(s.tangential.c[i] + s.normal.c[i] - u.c[i]));
        EXPECT_LE(rec, 1e-12 * scale);
        const auto again = split_tangential_normal(s.tangential, dom, z);
        EXPECT_LE(again.normal.norm(), 1e-12 * scale);
      }
  }
}
