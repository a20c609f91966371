#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dbarlab/domain.hpp"
#include "dbarlab/quadrature.hpp"

using namespace dbarlab;

namespace {
constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
}

TEST(Domain, BallValues) {
  const Domain ball = make_ball(2);
  EXPECT_EQ(ball.dim(), 2);
  EXPECT_EQ(ball.label(), "ball");
  EXPECT_DOUBLE_EQ(ball.r(Point{0.0, 0.0}), -0.5);
  EXPECT_DOUBLE_EQ(ball.r(Point{cplx(0.6, 0.0), cplx(0.0, 0.8)}), 0.0);
  const auto d = ball.dr_dz(Point{cplx(0.6, 0.0), cplx(0.0, 0.8)});
  EXPECT_LT(std::abs(d[0] - cplx(0.3, 0.0)), 1e-15);
  EXPECT_LT(std::abs(d[1] - cplx(0.0, -0.4)), 1e-15);
  EXPECT_NEAR(ball.grad_norm(Point{cplx(0.6, 0.0), cplx(0.0, 0.8)}), 1.0, 1e-15);
  EXPECT_NEAR(ball.boundary_radius(Point{cplx(0.6, 0.0), cplx(0.0, 0.8)}), 1.0, 1e-14);
}

TEST(Domain, PerturbedBallAlongAxes) {
  const Domain d = make_perturbed_ball(2, 0.05, "rez1sq");
  EXPECT_NEAR(d.boundary_radius(Point{1.0, 0.0}), std::sqrt(1 / 1.1), 1e-14);
  EXPECT_NEAR(d.boundary_radius(Point{cplx(0, 1), 0.0}), std::sqrt(1 / 0.9), 1e-14);
  EXPECT_NEAR(d.boundary_radius(Point{0.0, 1.0}), 1.0, 1e-14);
  EXPECT_EQ(d.delta, 0.05);
  EXPECT_EQ(d.phi_label, "rez1sq");
}

TEST(Domain, PluriharmonicPerturbationKeepsLeviForm) {
  for (const std::string phi : {"rez1sq", "rez1z2"}) {
    const Domain d = make_perturbed_ball(2, 0.07, phi);
    const Point z{cplx(0.3, -0.2), cplx(0.1, 0.4)};
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const cplx h = d.defining_function().diff_z(j).diff_zbar(k).value(z);
        EXPECT_LT(std::abs(h - cplx(j == k ? 0.5 : 0.0)), 1e-15) << phi;
      }
  }
}

TEST(Domain, ConstructionErrors) {
  EXPECT_THROW(make_perturbed_ball(2, -0.1, "rez1sq"), InputError);
  EXPECT_THROW(make_perturbed_ball(2, 0.1, "nope"), InputError);
  // not real
  EXPECT_THROW(make_perturbed_ball(2, 0.1, Expr::z(0) * Expr::z(0), "z1sq"), InputError);
  // real but not pluriharmonic
  EXPECT_THROW(make_perturbed_ball(2, 0.1, Expr::z(0) * Expr::zbar(0), "abs"), InputError);
  // r >= 0 at the origin
  EXPECT_THROW(Domain(2, Expr::z(0) * Expr::zbar(0), "bad"), DegenerateError);
  // ellipse axis 1/sqrt(1 - 2δ) blows up at δ = 1/2
  EXPECT_THROW(make_perturbed_ball(2, 0.6, "rez1sq"), DegenerateError);
  EXPECT_THROW(make_ball(1), InputError);
}

TEST(Domain, ParseDomain) {
  EXPECT_EQ(parse_domain("ball").label(), "ball");
  const Domain d = parse_domain("pball:delta=0.02,phi=rez1z2");
  EXPECT_EQ(d.delta, 0.02);
  EXPECT_EQ(d.phi_label, "rez1z2");
  EXPECT_EQ(parse_domain("pball:delta=0.03").phi_label, "rez1sq");
  EXPECT_EQ(parse_domain("pball:delta=0").label(), "ball");
  EXPECT_THROW(parse_domain("cube"), InputError);
  EXPECT_THROW(parse_domain("pball:delta=abc"), InputError);
  EXPECT_THROW(parse_domain("pball:eps=0.1"), InputError);
  EXPECT_THROW(parse_domain("pball:delta"), InputError);
}

TEST(Domain, BoundarySamplesLieOnTheBoundary) {
  for (const auto& spec : {"ball", "pball:delta=0.05,phi=rez1sq", "pball:delta=0.1,phi=rez1z2"}) {
    const Domain d = parse_domain(spec);
    for (const auto& z : boundary_samples(d, 2000)) EXPECT_LE(std::abs(d.r(z)), 1e-12) << spec;
  }
  const Domain b3 = make_ball(3);
  for (const auto& z : boundary_samples(b3, 500)) EXPECT_LE(std::abs(b3.r(z)), 1e-12);
}

TEST(Domain, Diameter) {
  EXPECT_NEAR(diameter(make_ball(2)), 2.0, 1e-12);
  // centrally symmetric domain: the sampled diameter is at least the longest
  // sampled antipodal chord and at most the true major axis
  const double delta = 0.08;
  const Domain d = make_perturbed_ball(2, delta, "rez1sq");
  double chord = 0;
  for (const auto& w : sphere_directions(2, 2048)) chord = std::max(chord, 2 * d.boundary_radius(w));
  const double D = diameter(d);
  EXPECT_GE(D, chord - 1e-12);
  EXPECT_LE(D, 2 / std::sqrt(1 - 2 * delta) + 1e-12);
  EXPECT_NEAR(D, 2 / std::sqrt(1 - 2 * delta), 5e-3);
}

TEST(C2Distance, ClosedFormForRez1sq) {
  // f = δ(x₁² - y₁²): |f| + |∇f| + max|Hess f| = δ(|x₁² - y₁²| + 2|z₁| + 2)
  const double delta = 0.04;
  const Domain ball = make_ball(2), d = make_perturbed_ball(2, delta, "rez1sq");
  const auto samples = c2_sample_set(ball, d);
  double oracle = 0;
  for (const auto& p : samples) {
    const double x = p[0].real(), y = p[0].imag();
    oracle = std::max(oracle, delta * (std::abs(x * x - y * y) + 2 * std::hypot(x, y) + 2));
  }
  EXPECT_NEAR(c2_distance(ball, d, samples), oracle, 1e-13);
  EXPECT_EQ(c2_distance(d, d, samples), 0.0);
}

TEST(C2Distance, LinearInDeltaOnSharedSamples) {
  const Domain ball = make_ball(2);
  const auto samples = c2_sample_set(ball, make_perturbed_ball(2, 0.1, "rez1z2"));
  const double unit = c2_distance(ball, make_perturbed_ball(2, 0.01, "rez1z2"), samples) / 0.01;
  for (double delta : {0.02, 0.05, 0.1})
    EXPECT_NEAR(c2_distance(ball, make_perturbed_ball(2, delta, "rez1z2"), samples), unit * delta, 1e-12);
}

TEST(C2Distance, SymmetricAndTriangle) {
  const Domain a = make_ball(2), b = make_perturbed_ball(2, 0.03, "rez1sq"),
               c = make_perturbed_ball(2, 0.05, "rez1z2");
  auto samples = c2_sample_set(a, b);
  for (auto& p : c2_sample_set(b, c)) samples.push_back(p);
  const double ab = c2_distance(a, b, samples), bc = c2_distance(b, c, samples), ac = c2_distance(a, c, samples);
  EXPECT_NEAR(ab, c2_distance(b, a, samples), 1e-15);
  EXPECT_LE(ac, ab + bc + 1e-15);
  EXPECT_THROW(c2_distance(a, b, std::vector<Point>{}), InputError);
}

TEST(Quadrature, BallMomentsAreExact) {
  const Domain ball = make_ball(2);
  const Quadrature quad(ball, 8, 16);
  EXPECT_NEAR(quad.volume(), kPi2 / 2, 1e-12);
  const cplx m2 = quad.integrate([](const Point& z) { return std::norm(z[0]) + std::norm(z[1]); });
  EXPECT_NEAR(m2.real(), kPi2 / 3, 1e-12);
  EXPECT_NEAR(m2.imag(), 0.0, 1e-15);
  // ∫|z₁|⁴ = π²/12 and odd moments vanish
  EXPECT_NEAR(quad.integrate([](const Point& z) { return std::pow(std::norm(z[0]), 2); }).real(), kPi2 / 12, 1e-12);
  EXPECT_LT(std::abs(quad.integrate([](const Point& z) { return z[0] * z[1]; })), 1e-14);
  EXPECT_EQ(quad.domain_label(), "ball");
}

TEST(Quadrature, PerturbedVolumeConverges) {
  const double delta = 0.1;
  const Domain d = make_perturbed_ball(2, delta, "rez1sq");
  const double exact = kPi2 / (2 * std::sqrt(1 - 4 * delta * delta));
  double prev = 1;
  for (int a : {8, 12, 16, 24}) {
    const double err = std::abs(Quadrature(d, 8, a).volume() - exact);
    EXPECT_LE(err, prev + 1e-15) << a;
    prev = err;
  }
  EXPECT_LE(prev, 1e-10);
}

TEST(Quadrature, ZeroDeltaMatchesBallBitwise) {
  const Quadrature a(make_ball(2), 6, 10), b(make_perturbed_ball(2, 0.0, "rez1sq"), 6, 10);
  EXPECT_EQ(a.points(), b.points());
  EXPECT_EQ(a.weights(), b.weights());
}

TEST(Quadrature, MomentTableMatchesDirectIntegration) {
  const Domain d = make_perturbed_ball(2, 0.05, "rez1z2");
  const Quadrature quad(d, 8, 16);
  const MomentTable mt(quad, 4);
  const Poly p = Poly::z(2, 0) * Poly::zbar(2, 1) * Poly::z(2, 1) + Poly::zbar(2, 0) * Poly::zbar(2, 0) + Poly::constant(2, 2.0);
  const cplx direct = quad.integrate([&](const Point& z) { return p.eval(z); });
  EXPECT_LT(std::abs(mt.integrate(p) - direct), 1e-13);
  EXPECT_THROW(mt.integrate(p * p), InputError);
}

TEST(Quadrature, GaussLegendreIsExact) {
  const auto g = gauss_legendre(7);
  for (int k = 0; k <= 13; ++k) {
    double s = 0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], k);
    EXPECT_NEAR(s, 1.0 / (k + 1), 1e-15) << k;
  }
  EXPECT_THROW(gauss_legendre(0), InputError);
}

TEST(Domain, BoundaryPointAlongE1) {
  const Point p = make_ball(2).boundary_point(Point{1.0, 0.0});
  EXPECT_NEAR(std::abs(p[0] - cplx(1.0)), 0.0, 1e-15);
  EXPECT_EQ(p[1], cplx(0.0));
  const Point q = make_perturbed_ball(2, 0.05, "rez1sq").boundary_point(Point{1.0, 0.0});
  EXPECT_NEAR(std::abs(q[0]), 0.95346258924559, 1e-12);
}

TEST(Domain, GradientNormalizationUpToPerturbation) {
  // |∇r| = |z + δ∇φ| on ∂Ω_δ, within 2δ‖φ‖_C¹ of 1
  const double delta = 0.05;
  for (const std::string phi : {"rez1sq", "rez1z2"}) {
    const Domain d = make_perturbed_ball(2, delta, phi);
    const Expr f = pluriharmonic_profile(phi, 2);
    const RealDifferentiator D(f, 2);
    const auto pts = boundary_samples(d, 2000);
    double c1 = 0;
    for (const auto& z : pts) {
      double g = 0;
      for (double v : D.at(z).gradient) g += v * v;
      c1 = std::max(c1, std::abs(D.value(z)) + std::sqrt(g));
    }
    for (const auto& z : pts) EXPECT_LE(std::abs(d.grad_norm(z) - 1), 2 * delta * c1) << phi;
  }
  for (const auto& z : boundary_samples(make_ball(2), 500)) EXPECT_NEAR(make_ball(2).grad_norm(z), 1.0, 1e-14);
}

TEST(Domain, DiameterAgainstDenseAntipodalOracle) {
  const Domain d = make_perturbed_ball(2, 0.05, "rez1sq");
  double oracle = 0;
  for (const auto& w : sphere_directions(2, 10000)) oracle = std::max(oracle, 2 * d.boundary_radius(w));
  EXPECT_NEAR(diameter(d), oracle, 2e-3);
  EXPECT_NEAR(diameter(make_perturbed_ball(2, 0.0, "rez1sq")), 2.0, 1e-12);
}
