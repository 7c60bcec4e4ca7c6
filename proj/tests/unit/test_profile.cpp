#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <vector>

#include "common.hpp"
#include "relaxlab/numerics.hpp"
#include "relaxlab/shock_profile.hpp"

using namespace relaxlab;
using relaxlab::testing::default_profile;
using relaxlab::testing::default_wave;
using relaxlab::testing::deep_profile;
using relaxlab::testing::find_check;

namespace {

double denom(const WaveConfig& c, double v) {
  return 1.0 + 3.0 * c.tau() * c.sigma() * (v * v - c.u_m() * c.u_m());
}

// xi(u) by adaptive Gauss-Kronrod on dxi/du.
double oracle_xi(const WaveConfig& c, double u) {
  const double um = c.u_m(), ul = c.u_minus();
  auto g = [&](double v) { return denom(c, v) / ((v - ul) * (v - um) * (v - um)); };
  const double u0 = 0.5 * (ul + um);
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, u0, u, 15, 1e-14);
}

// xi at u = u_minus + e^p, integrating in p so the log singularity is smooth.
double oracle_xi_left(const WaveConfig& c, double p) {
  const double um = c.u_m(), ul = c.u_minus();
  auto g = [&](double s) {
    const double v = ul + std::exp(s);
    return denom(c, v) / ((v - um) * (v - um));
  };
  const double p0 = std::log(0.5 * (um - ul));
  return -boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, p, p0, 15, 1e-14);
}

}  // namespace

TEST(Profile, Normalization) {
  const auto& p = default_profile();
  EXPECT_DOUBLE_EQ(p.anchor_u(), -0.25);
  EXPECT_NEAR(p.eval(0.0).u, -0.25, 1e-14);
}

TEST(Profile, XiOfZeroMatchesQuadratureOracle) {
  const auto& p = default_profile();
  const double want = oracle_xi(default_wave(), 0.0);
  EXPECT_GT(want, 0.0);
  EXPECT_NEAR(p.xi_of_u(0.0), want, 1e-8 * std::fabs(want));
  EXPECT_NEAR(p.eval(want).u, 0.0, 1e-10);
}

TEST(Profile, XiOfUMatchesOracleAcrossRange) {
  const auto& p = default_profile();
  for (double u : {-0.99, -0.9, -0.6, -0.4, -0.1, 0.1, 0.25, 0.4, 0.49, 0.499}) {
    const double want = oracle_xi(default_wave(), u);
    EXPECT_NEAR(p.xi_of_u(u), want, 1e-8 * std::max(1.0, std::fabs(want))) << "u = " << u;
  }
}

TEST(Profile, RankineHugoniotAtBothEnds) {
  const auto& c = default_wave();
  const double um = c.u_m(), ul = c.u_minus();
  const double q_end = um * um * um - ul * ul * ul - c.sigma() * (um - ul);
  EXPECT_DOUBLE_EQ(q_end, 0.0);
  const auto& p = default_profile();
  EXPECT_NEAR(p.eval(p.trunc_right() + 10.0).q, 0.0, 1e-12);
  EXPECT_NEAR(p.eval(p.trunc_left() - 10.0).q, 0.0, 1e-12);
}

TEST(Profile, ClosedFormQAndOdeIdentityAtNodes) {
  const auto& c = default_wave();
  const auto& p = default_profile();
  for (const auto& n : p.table()) {
    const auto s = p.eval(n.xi);
    const double q = s.u * s.u * s.u - c.u_minus() * c.u_minus() * c.u_minus() - c.sigma() * (s.u - c.u_minus());
    EXPECT_NEAR(s.q, q, 1e-12);
    const double lhs = s.u_xi * denom(c, s.u);
    const double rhs = n.d_left * n.d_right * n.d_right;
    EXPECT_NEAR(lhs, rhs, 1e-10 * std::max(rhs, 1e-300));
    EXPECT_NEAR(s.q_xi, (3.0 * s.u * s.u - c.sigma()) * s.u_xi, 1e-12 * std::max(s.u_xi, 1e-300) + 1e-300);
  }
}

TEST(Profile, SlopeRatioAtZero) {
  const auto& p = default_profile();
  const auto s = p.eval(p.xi_of_u(0.0));
  EXPECT_NEAR(s.q_xi / s.u_xi, -0.75, 1e-9);
}

TEST(Profile, MonotoneAndInsideStates) {
  const auto& c = default_wave();
  const auto& p = default_profile();
  double prev_xi = -1e300;
  for (const auto& n : p.table()) {
    EXPECT_GT(n.xi, prev_xi);
    EXPECT_GT(n.u, c.u_minus());
    EXPECT_LT(n.u, c.u_m());
    prev_xi = n.xi;
  }
  double prev_u = -2.0;
  for (double xi = -60.0; xi <= 200.0; xi += 0.37) {
    const auto s = p.eval(xi);
    EXPECT_GE(s.u, prev_u);
    EXPECT_GE(s.u_xi, 0.0);
    prev_u = s.u;
  }
}

TEST(Profile, JetMatchesFiniteDifferences) {
  const auto& p = default_profile();
  const double h = 1e-4;
  for (double xi : {-5.0, -1.0, 0.0, 0.7, 3.0, 20.0}) {
    const auto j = p.jet(xi);
    const auto a = p.jet(xi + h), b = p.jet(xi - h);
    EXPECT_NEAR(j.u_xi, (a.u - b.u) / (2 * h), 1e-7 * std::max(1.0, std::fabs(j.u_xi)));
    EXPECT_NEAR(j.u_xixi, (a.u_xi - b.u_xi) / (2 * h), 1e-6 * std::max(1.0, std::fabs(j.u_xixi)));
    EXPECT_NEAR(j.u_xixixi, (a.u_xixi - b.u_xixi) / (2 * h), 1e-6 * std::max(1.0, std::fabs(j.u_xixixi)));
    EXPECT_NEAR(j.q_xi, (a.q - b.q) / (2 * h), 1e-7 * std::max(1.0, std::fabs(j.q_xi)));
  }
}

TEST(Profile, InverseOutsideRangeThrows) {
  const auto& p = default_profile();
  EXPECT_THROW(p.xi_of_u(-1.5), std::out_of_range);
  EXPECT_THROW(p.xi_of_u(0.6), std::out_of_range);
}

TEST(Profile, BuildRejectsBadArguments) {
  const WaveConfig c(-1.0, 0.75, 0.001);
  EXPECT_THROW(ShockProfile::build(c, 50), std::invalid_argument);
  EXPECT_THROW(ShockProfile::build(c, 2000, 0.7), std::invalid_argument);
  const WaveConfig fast(-1.0, 0.75, 1.0);
  EXPECT_THROW(ShockProfile::build(fast), std::invalid_argument);
}

TEST(Profile, NearProfileBoundStillMonotone) {
  const WaveConfig probe(-1.0, 0.75, 0.001);
  const WaveConfig c(-1.0, 0.75, 0.99 * probe.profile_tau_bound());
  const auto p = ShockProfile::build(c);
  const auto rep = verify_shock_bounds(p, {.left_window_lo = p.trunc_left() + 1.0,
                                           .left_window_hi = p.trunc_left() + 5.0,
                                           .right_window_lo = 50.0,
                                           .right_window_hi = p.trunc_right()});
  EXPECT_EQ(find_check(rep, "slope_positive").status, CheckStatus::pass);
  EXPECT_EQ(find_check(rep, "denominator_lower").status, CheckStatus::pass);
  EXPECT_EQ(find_check(rep, "denominator_upper").status, CheckStatus::pass);
  for (const auto& n : p.table()) {
    const double d = p.denominator(n.u);
    EXPECT_GT(d, 2.0 / 3.0);
    EXPECT_LT(d, 2.0);
  }
}

TEST(ProfileBounds, AllChecksPassOnDeepTable) {
  const auto rep = verify_shock_bounds(deep_profile());
  for (const auto& c : rep.checks()) EXPECT_EQ(c.status, CheckStatus::pass) << c.name << " " << c.value;
  const auto cons = verify_profile_consistency(deep_profile());
  EXPECT_TRUE(cons.all_passed());
}

TEST(ProfileBounds, LeftTailRateMatchesQuadratureOracle) {
  const auto& c = default_wave();
  const auto rep = verify_shock_bounds(deep_profile());
  std::vector<double> xs, ys;
  for (double p = -120.0; p <= -5.0; p += 0.5) {
    const double xi = oracle_xi_left(c, p);
    if (xi >= -40.0 && xi <= -10.0) {
      xs.push_back(xi);
      ys.push_back(p);
    }
  }
  ASSERT_GE(xs.size(), 20u);
  const auto fit = numerics::fit_line(xs, ys);
  EXPECT_GT(fit.slope, 0.0);
  EXPECT_NEAR(rep.value("c_left"), fit.slope, 0.01 * fit.slope);
  // linearization at u_minus: rate delta_S^2 / denominator
  EXPECT_NEAR(fit.slope, c.delta_s() * c.delta_s() / denom(c, c.u_minus()), 0.01 * fit.slope);
}

TEST(ProfileBounds, RightTailAlgebraic) {
  const auto& p = deep_profile();
  // |u^S - u_m| ~ 1 / (delta_S^2 xi / D(u_m)) far right
  const auto a = p.jet(200.0), b = p.jet(400.0);
  EXPECT_NEAR(a.d_right / b.d_right, 2.0, 0.02);
}
