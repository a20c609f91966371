#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <boost/math/tools/roots.hpp>

#include "dbarlab/assembly.hpp"
#include "dbarlab/eig.hpp"
#include "dbarlab/reference.hpp"

using namespace dbarlab;

TEST(Reference, BesselZerosMatchBoost) {
  for (double nu : {0.0, 0.5, 1.0, 1.5, 2.0, 3.5}) {
    const auto z = bessel_zeros(nu, 30.0);
    ASSERT_GE(z.size(), 5u) << nu;
    for (std::size_t m = 0; m < z.size(); ++m) {
      const double oracle = boost::math::cyl_bessel_j_zero(nu, static_cast<int>(m) + 1);
      EXPECT_NEAR(z[m], oracle, 1e-12 * oracle) << nu << ' ' << m;
    }
  }
}

TEST(Reference, HarmonicDimensions) {
  for (int l = 0; l < 6; ++l) {
    EXPECT_EQ(harmonic_dimension(l, 2), l == 0 ? 1 : 2);
    EXPECT_EQ(harmonic_dimension(l, 3), 2 * l + 1);
    EXPECT_EQ(harmonic_dimension(l, 4), (l + 1) * (l + 1));
  }
}

TEST(Reference, DirichletBallInThreeDimensions) {
  const auto v = dirichlet_eigs_ball(3, 1.0, 5);
  EXPECT_NEAR(v[0], M_PI * M_PI, 1e-11);
  const double j32 = boost::math::cyl_bessel_j_zero(1.5, 1);
  for (int i = 1; i <= 3; ++i) EXPECT_NEAR(v[i], j32 * j32, 1e-10);
  EXPECT_NEAR(v[1], 20.1907, 1e-4);
}

TEST(Reference, DirichletBallInFourDimensions) {
  // ν = 1: j_{1,1}² once, then j_{2,1}² four times
  const auto v = dirichlet_eigs_ball(4, 1.0, 6);
  const double j11 = boost::math::cyl_bessel_j_zero(1.0, 1), j21 = boost::math::cyl_bessel_j_zero(2.0, 1);
  EXPECT_NEAR(v[0], j11 * j11, 1e-10);
  EXPECT_NEAR(v[0], 14.6819706, 1e-6);
  for (int i = 1; i <= 4; ++i) EXPECT_NEAR(v[i], j21 * j21, 1e-10);
  EXPECT_GT(v[5], v[4] + 1);
}

TEST(Reference, ScalesWithRadius) {
  const auto a = dirichlet_eigs_ball(4, 1.0, 10), b = dirichlet_eigs_ball(4, 2.0, 10);
  const auto c = neumann_eigs_ball(4, 1.0, 10), d = neumann_eigs_ball(4, 0.5, 10);
  for (int i = 0; i < 10; ++i) {
    EXPECT_NEAR(b[i], a[i] / 4, 1e-12 * a[i]);
    EXPECT_NEAR(d[i], 4 * c[i], 1e-12 * (1 + c[i]));
  }
  EXPECT_THROW(dirichlet_eigs_ball(4, 0.0, 1), InputError);
  EXPECT_THROW(dirichlet_eigs_ball(1, 1.0, 1), InputError);
  EXPECT_THROW(neumann_eigs_ball(4, 1.0, 0), InputError);
}

TEST(Reference, NeumannBallAgainstBoostBisection) {
  // radial condition d/dr (r^{-ν} J_{ν+ℓ}(xr)) = 0 at r = 1
  auto root = [](double nu, int l, double lo, double hi) {
    const double mu = nu + l;
    auto f = [&](double x) { return x * boost::math::cyl_bessel_j_prime(mu, x) - nu * boost::math::cyl_bessel_j(mu, x); };
    auto r = boost::math::tools::bisect(f, lo, hi, boost::math::tools::eps_tolerance<double>(50));
    return 0.5 * (r.first + r.second);
  };
  // disk: j'_{1,1}² twice
  const auto v2 = neumann_eigs_ball(2, 1.0, 3);
  EXPECT_EQ(v2[0], 0.0);
  const double x2 = root(0.0, 1, 1.0, 3.0);
  EXPECT_NEAR(v2[1], x2 * x2, 1e-10);
  EXPECT_NEAR(v2[2], x2 * x2, 1e-10);
  EXPECT_NEAR(x2, 1.8411837813, 1e-9);
  // ℝ⁴: ℓ = 1 gives four copies, then ℓ = 2 nine copies
  const auto v4 = neumann_eigs_ball(4, 1.0, 14);
  const double x41 = root(1.0, 1, 1.0, 3.0), x42 = root(1.0, 2, 2.0, 4.5);
  for (int i = 1; i <= 4; ++i) EXPECT_NEAR(v4[i], x41 * x41, 1e-10);
  for (int i = 5; i <= 13; ++i) EXPECT_NEAR(v4[i], x42 * x42, 1e-10);
  EXPECT_NEAR(v4[1], 5.2895875, 1e-6);
}

TEST(Reference, GalerkinGivesCloseUpperBounds) {
  // ℂ² as ℝ⁴: A_G is the Dirichlet integral, so Rayleigh-Ritz bounds each
  // reference eigenvalue from above
  const Domain ball = make_ball(2);
  const auto pd = filter_basis(assemble(ball, build_dirichlet_basis(ball, 4), 10, 20));
  const auto dir = solve_dense(pd.AG, pd.M, 5);
  const auto ref_d = dirichlet_eigs_ball(4, 1.0, 5);
  for (int i = 0; i < 5; ++i) {
    EXPECT_GE(dir.eigenvalues[i], ref_d[i] * (1 - 1e-9)) << i;
    EXPECT_LE(dir.eigenvalues[i], ref_d[i] * 1.05) << i;
  }
  const auto pn = filter_basis(assemble(ball, build_neumann_basis(ball, 6), 12, 24));
  const auto neu = solve_dense(pn.AG, pn.M, 6);
  const auto ref_n = neumann_eigs_ball(4, 1.0, 6);
  EXPECT_LE(std::abs(neu.eigenvalues[0]), 1e-9);
  for (int i = 1; i < 6; ++i) {
    EXPECT_GE(neu.eigenvalues[i], ref_n[i] * (1 - 1e-9)) << i;
    EXPECT_LE(neu.eigenvalues[i], ref_n[i] * 1.05) << i;
  }
}

TEST(Reference, DiscreteNeumannEigenvalueDecreasesWithDegree) {
  const Domain ball = make_ball(2);
  const auto ref = neumann_eigs_ball(4, 1.0, 2)[1];
  double prev = std::numeric_limits<double>::infinity();
  for (int deg : {1, 2, 3, 4, 5}) {
    const auto p = filter_basis(assemble(ball, build_neumann_basis(ball, deg), 10, 20));
    const double l2 = solve_dense(p.AG, p.M, 2).eigenvalues[1];
    EXPECT_LE(l2, prev + 1e-10) << deg;
    EXPECT_GE(l2, ref * (1 - 1e-9)) << deg;
    prev = l2;
  }
}
