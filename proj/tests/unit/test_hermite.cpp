#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ssgauss/errors.hpp"
#include "ssgauss/hermite.hpp"

using namespace ssgauss;

TEST(Hermite, EvalMatchesExplicitSum) {
  for (int q = 0; q <= 14; ++q) {
    for (double x : {-3.1, -1.0, 0.0, 0.4, 2.5}) {
      const double ref = static_cast<double>(oracle::hermite(q, x));
      EXPECT_NEAR(hermite_eval(q, x), ref, 1e-12 * std::max(1.0, std::abs(ref))) << q << ' ' << x;
    }
  }
  std::vector<double> all(9);
  hermite_all(1.3, all);
  for (int q = 0; q < 9; ++q) EXPECT_DOUBLE_EQ(all[q], hermite_eval(q, 1.3));
}

TEST(Hermite, GaussRuleOrthogonality) {
  const auto rule = gauss_hermite_rule(30);
  for (int p = 0; p <= 10; ++p) {
    for (int q = 0; q <= 10; ++q) {
      const double v = rule.expect([&](double x) { return hermite_eval(p, x) * hermite_eval(q, x); });
      const double ref = p == q ? std::tgamma(q + 1.0) : 0.0;
      // the sum cancels terms of size up to |w He_p He_q|, so scale by their total
      double mass = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        mass += std::abs(rule.weights[i] * hermite_eval(p, rule.nodes[i]) * hermite_eval(q, rule.nodes[i]));
      }
      EXPECT_NEAR(v, ref, 1e-13 * std::max(1.0, mass)) << p << ' ' << q;
    }
  }
}

TEST(Hermite, FoldedRuleMoments) {
  const auto rule = folded_gauss_rule(20);
  double dfact = 1.0;
  for (int k = 1; k <= 10; ++k) {
    dfact *= 2 * k - 1;
    const double m = rule.expect([&](double x) { return std::pow(x, 2 * k); });
    EXPECT_NEAR(m, dfact, 1e-11 * dfact) << k;
  }
  EXPECT_NEAR(rule.expect([](double x) { return std::pow(std::abs(x), 3); }),
              2.0 * std::sqrt(2.0 / std::numbers::pi), 1e-13);
}

TEST(Hermite, OddAbsPowerCoefficients) {
  const auto f = builtin_family(BuiltinKind::odd_abs_power, 1, 12);
  const double m3 = 2.0 * std::sqrt(2.0 / std::numbers::pi);
  const auto g = [m3](oracle::ld x) { return std::fabs(x * x * x) - m3; };
  for (int q = 0; q <= 12; ++q) {
    const double ref = static_cast<double>(oracle::hermite_coeff(g, q));
    EXPECT_NEAR(f.coeff(q), ref, 1e-10) << q;
  }
  // c_2 = (E|Z|^5 - E|Z|^3) / 2 = 3 sqrt(2/pi)
  EXPECT_NEAR(f.coeff(2), 3.0 * std::sqrt(2.0 / std::numbers::pi), 1e-13);
  EXPECT_EQ(f.rank(), 2);
  EXPECT_GT(f.chaos_tail(), 0.0);
  EXPECT_EQ(f.label(), "odd_abs_power:1");
}

TEST(Hermite, EvenPowerIsExact) {
  const auto f = builtin_family(BuiltinKind::even_power, 2);
  EXPECT_NEAR(f.coeff(2), 6.0, 1e-12);
  EXPECT_NEAR(f.coeff(4), 1.0, 1e-12);
  for (int q : {0, 1, 3, 5, 6, 7, 8})
    EXPECT_NEAR(f.coeff(q), 0.0, 1e-12) << q;
  EXPECT_EQ(f.rank(), 2);
  EXPECT_NEAR(f.l2_norm_sq(), 96.0, 1e-10);  // Var(Z^4)
  EXPECT_NEAR(f.chaos_tail(), 0.0, 1e-9);
  for (double x : {-2.0, 0.3, 1.7}) EXPECT_NEAR(f(x), std::pow(x, 4) - 3.0, 1e-11);

  const auto g = builtin_family(BuiltinKind::even_power, 3);
  const auto h = [](oracle::ld x) { return std::pow(x, 6) - 15; };
  for (int q = 0; q <= 12; ++q)
    EXPECT_NEAR(g.coeff(q), static_cast<double>(oracle::hermite_coeff(h, q)), 1e-9) << q;
}

TEST(Hermite, PrintedCoefficientsDifferFromProjection) {
  // closed form (2p)!(2p-q-1)!!/(q!(2p-q-1)!) is undefined at q = 2p
  const auto printed = printed_coefficients(BuiltinKind::even_power, 2, 4);
  EXPECT_DOUBLE_EQ(printed[2], 12.0);
  EXPECT_TRUE(std::isnan(printed[4]));
  const auto f = builtin_family(BuiltinKind::even_power, 2);
  EXPECT_NEAR(f.coeff(2), 6.0, 1e-12);  // x^4 - 3 = H_4 + 6 H_2
  EXPECT_NEAR(f.coeff(4), 1.0, 1e-12);
  const auto p3 = printed_coefficients(BuiltinKind::even_power, 3, 6);
  EXPECT_DOUBLE_EQ(p3[2], 180.0);
  EXPECT_DOUBLE_EQ(p3[4], 30.0);
  const auto g = builtin_family(BuiltinKind::even_power, 3);
  EXPECT_NEAR(g.coeff(2), 45.0, 1e-10);
  EXPECT_NEAR(g.coeff(4), 15.0, 1e-10);
}

TEST(Hermite, SingleAndRank) {
  const auto h3 = HermiteFunction::single(3);
  EXPECT_EQ(h3.rank(), 3);
  EXPECT_TRUE(h3.is_single_hermite());
  EXPECT_EQ(h3.label(), "hermite:3");
  EXPECT_NEAR(h3(1.5), 1.5 * 1.5 * 1.5 - 4.5, 1e-14);
  EXPECT_FALSE(HermiteFunction::single(1).clt_applicable());

  const auto odd = expand([](double x) { return std::sin(x); }, 9);
  EXPECT_EQ(odd.rank(), 1);
  EXPECT_NEAR(odd.coeff(1), std::exp(-0.5), 1e-12);  // E[sin(Z) Z]
}

TEST(Hermite, ExpandRejectsBadInput) {
  EXPECT_THROW(expand([](double x) { return x * x; }), DomainError);  // mean 1
  EXPECT_THROW(expand([](double) { return 0.0; }), DomainError);
  EXPECT_THROW(expand([](double x) { return x; }, 1), DomainError);
  EXPECT_THROW(expand([](double x) { return x; }, 6, 12), DomainError);
}

TEST(Hermite, NormalMoments) {
  EXPECT_NEAR(normal_abs_moment(4), 3.0, 1e-14);
  EXPECT_NEAR(normal_abs_moment(1), std::sqrt(2.0 / std::numbers::pi), 1e-15);
  EXPECT_NEAR(normal_abs_moment(3), 2.0 * std::sqrt(2.0 / std::numbers::pi), 1e-14);
}
