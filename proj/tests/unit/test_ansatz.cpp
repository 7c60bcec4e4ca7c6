#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "common.hpp"
#include "relaxlab/ansatz.hpp"
#include "relaxlab/diagnostics.hpp"

using namespace relaxlab;
using relaxlab::testing::default_profile;
using relaxlab::testing::default_wave;
using relaxlab::testing::oracle_rarefaction_u;
using relaxlab::testing::shock_profile;

namespace {

// f(u~) - f(u^S) - f(u^R) at one point, from plain evaluations.
double bracket(double t, double xi, double X, const ShockProfile& p) {
  const auto& c = p.config();
  const double s = p.eval(xi + X).u;
  const double r = rarefaction_smooth(1.0 + t, xi + c.sigma() * t + X, c, 0).u;
  const double u = s + r - c.u_m();
  return u * u * u - s * s * s - r * r * r;
}

}  // namespace

TEST(Ansatz, PureShockReducesToProfile) {
  const auto& p = shock_profile();
  for (double xi : {-20.0, -1.0, 0.0, 3.0, 40.0}) {
    const auto a = ansatz_eval(2.5, xi, 0.4, p);
    const auto s = p.eval(xi + 0.4);
    EXPECT_DOUBLE_EQ(a.u_tilde, s.u);
    EXPECT_DOUBLE_EQ(a.q_tilde, s.q);
    EXPECT_EQ(a.F, 0.0);
    const auto F = error_term_F(7.0, xi, 0.4, p, 2);
    EXPECT_EQ(F.F, 0.0);
    EXPECT_EQ(F.F_xi, 0.0);
    EXPECT_EQ(F.F_xixi, 0.0);
  }
}

TEST(Ansatz, FarFieldLimits) {
  const auto& p = default_profile();
  const auto left = ansatz_eval(0.0, -200.0, 0.0, p);
  EXPECT_NEAR(left.u_tilde, -1.0, 1e-12);
  EXPECT_NEAR(left.q_tilde, 0.0, 1e-12);
  const auto right = ansatz_eval(0.0, 1e4, 0.0, p);
  EXPECT_NEAR(right.u_tilde, 0.75, 1e-3);
  EXPECT_NEAR(right.q_tilde, 0.0, 1e-8);
}

TEST(Ansatz, ComposedValueAtOrigin) {
  const auto& p = default_profile();
  const auto& c = default_wave();
  const double want = -0.25 + oracle_rarefaction_u(1.0, 0.0, c) - 0.5;
  EXPECT_NEAR(ansatz_eval(0.0, 0.0, 0.0, p).u_tilde, want, 1e-13);
}

TEST(Ansatz, DerivativesMatchDifferences) {
  const auto& p = default_profile();
  const double h = 1e-5;
  for (double xi : {-3.0, 0.5, 6.0}) {
    const auto a = ansatz_eval(4.0, xi, 0.2, p);
    const auto f = ansatz_eval(4.0, xi + h, 0.2, p), b = ansatz_eval(4.0, xi - h, 0.2, p);
    EXPECT_NEAR(a.u_tilde_xi, (f.u_tilde - b.u_tilde) / (2 * h), 1e-7);
    EXPECT_NEAR(a.q_tilde_xi, (f.q_tilde - b.q_tilde) / (2 * h), 1e-7);
  }
}

TEST(ErrorTerm, MatchesDifferenceOfFluxBracket) {
  const auto& p = default_profile();
  const auto& c = default_wave();
  const double h = 1e-5;
  for (double t : {0.0, 1.0, 10.0}) {
    for (double xi : {-4.0, -0.5, 0.3, 2.0, 0.9 * t}) {
      const double X = 0.1;
      const auto F = error_term_F(t, xi, X, p, 2);
      const auto R = rarefaction_smooth(1.0 + t, xi + c.sigma() * t + X, c, 2);
      const double fd = (bracket(t, xi + h, X, p) - bracket(t, xi - h, X, p)) / (2 * h) - R.d2u_dx2;
      EXPECT_NEAR(F.F, fd, 1e-8) << "t=" << t << " xi=" << xi;
      const double dF = (error_term_F(t, xi + h, X, p, 0).F - error_term_F(t, xi - h, X, p, 0).F) / (2 * h);
      EXPECT_NEAR(F.F_xi, dF, 1e-7 * std::max(1.0, std::fabs(dF)));
      const double d2F = (error_term_F(t, xi + h, X, p, 1).F_xi - error_term_F(t, xi - h, X, p, 1).F_xi) / (2 * h);
      EXPECT_NEAR(F.F_xixi, d2F, 1e-6 * std::max(1.0, std::fabs(d2F)));
    }
  }
}

TEST(ErrorTerm, FrozenShockLeavesOnlyCurvature) {
  const auto& c = default_wave();
  ProfileJet S{};
  S.u = c.u_m();
  S.d_left = c.delta_s();
  S.d_right = 0.0;
  for (double x : {-2.0, 1.0, 3.0}) {
    const auto R = rarefaction_smooth(3.0, x, c, 4);
    const auto F = error_term_F(S, R, c.u_m(), 2);
    EXPECT_NEAR(F.F, -R.d2u_dx2, 1e-15);
    EXPECT_NEAR(F.F_xi, -R.d3u_dx3, 1e-15);
    EXPECT_NEAR(F.F_xixi, -R.d4u_dx4, 1e-15);
  }
}

TEST(ErrorTerm, RejectsBadOrder) {
  EXPECT_THROW(error_term_F(1.0, 0.0, 0.0, default_profile(), 3), std::invalid_argument);
}

namespace {

SimState ansatz_state(const Grid1D& g, const ShockProfile& p, double t, double X) {
  SimState s(g);
  s.t = t;
  s.shift.X = X;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto a = ansatz_eval(t, g.center(i), X, p);
    s.u[i] = a.u_tilde;
    s.q[i] = a.q_tilde;
  }
  return s;
}

}  // namespace

TEST(Perturbation, ZeroOnAnsatz) {
  const auto& p = default_profile();
  const Grid1D g(-20.0, 40.0, 0.1);
  const auto s = ansatz_state(g, p, 3.0, 0.25);
  const auto pr = perturbation(s, p, g);
  for (std::size_t j = 0; j < g.n_cells; ++j) {
    EXPECT_EQ(pr.phi[j], 0.0);
    EXPECT_EQ(pr.r[j], 0.0);
  }
}

TEST(Perturbation, LinearInBumpAndRoundTrips) {
  const auto& p = default_profile();
  const Grid1D g(-20.0, 40.0, 0.1);
  auto s = ansatz_state(g, p, 3.0, 0.25);
  std::vector<double> b(g.n_cells);
  for (std::size_t j = 0; j < g.n_cells; ++j) {
    b[j] = 0.01 * std::exp(-std::pow(g.interior_center(j) - 2.0, 2));
    s.u[j + Grid1D::ghost] += b[j];
  }
  const auto pr = perturbation(s, p, g);
  for (std::size_t j = 0; j < g.n_cells; ++j) {
    EXPECT_NEAR(pr.phi[j], b[j], 1e-15);
    EXPECT_EQ(pr.r[j], 0.0);
    const auto a = ansatz_eval(3.0, g.interior_center(j), 0.25, p);
    EXPECT_NEAR(a.u_tilde + pr.phi[j], s.u[j + Grid1D::ghost], 1e-14);
    EXPECT_NEAR(a.q_tilde + pr.r[j], s.q[j + Grid1D::ghost], 1e-14);
  }
}

TEST(InitialData, ZeroAmplitudeIsAnsatz) {
  const auto& p = default_profile();
  const Grid1D g(-30.0, 60.0, 0.1);
  Scenario sc;
  sc.amplitude = 0.0;
  InitialDataInfo info;
  const auto s = initial_data(sc, g, p, &info);
  const auto pr = perturbation(s, p, g);
  for (std::size_t j = 0; j < g.n_cells; ++j) EXPECT_EQ(pr.phi[j], 0.0);
  EXPECT_EQ(info.phi0_h2, 0.0);
}

TEST(InitialData, GaussianSobolevNormMatchesClosedForm) {
  const auto& p = default_profile();
  const Grid1D g(-40.0, 40.0, 0.01);
  Scenario sc;  // a = 0.05, c = 0, s = 2
  InitialDataInfo info;
  initial_data(sc, g, p, &info);
  const double a = sc.amplitude, s = sc.width;
  // int g^2 + g'^2 + g''^2 for g = a exp(-(x/s)^2)
  const double h2_sq = a * a * std::sqrt(M_PI / 2.0) * (s + 1.0 / s + 3.0 / (s * s * s));
  EXPECT_NEAR(info.phi0_h2, std::sqrt(h2_sq), 0.01 * std::sqrt(h2_sq));
  EXPECT_EQ(info.r0_h2, 0.0);
  EXPECT_GT(info.c1_norm, 0.0);
}

TEST(InitialData, FarField) {
  const auto& p = default_profile();
  const Grid1D g(-100.0, 300.0, 0.05);
  const auto s = initial_data(Scenario{}, g, p);
  EXPECT_NEAR(s.u.front(), -1.0, 1e-12);
  EXPECT_NEAR(s.q.front(), 0.0, 1e-12);
  // the shock's algebraic right tail: u_m - u^S(300) is about 1/(delta_S 300)
  EXPECT_NEAR(s.u.back(), 0.75, 3e-3);
  EXPECT_NEAR(s.q.back(), 0.0, 1e-5);
}

TEST(InitialData, MultiGaussianIsSeeded) {
  const auto& p = default_profile();
  const Grid1D g(-30.0, 60.0, 0.1);
  Scenario sc;
  sc.family = PerturbationFamily::multi_gaussian;
  const auto a = initial_data(sc, g, p), b = initial_data(sc, g, p);
  EXPECT_EQ(a.u, b.u);
  sc.seed += 1;
  EXPECT_NE(initial_data(sc, g, p).u, a.u);
}

TEST(InitialData, Rejections) {
  const auto& p = default_profile();
  const Grid1D g(-30.0, 60.0, 0.1);
  Scenario big;
  big.amplitude = 2.0;
  EXPECT_THROW(initial_data(big, g, p), std::invalid_argument);
  Scenario eps;
  eps.epsilon = 1e-6;
  EXPECT_THROW(initial_data(eps, g, p), std::invalid_argument);
  Scenario w;
  w.width = 0.0;
  EXPECT_THROW(initial_data(w, g, p), std::invalid_argument);
}

TEST(PerturbationFamily, RoundTrip) {
  for (auto f : {PerturbationFamily::none, PerturbationFamily::gaussian, PerturbationFamily::multi_gaussian})
    EXPECT_EQ(parse_perturbation_family(to_string(f)), f);
  EXPECT_THROW(parse_perturbation_family("box"), std::invalid_argument);
}
