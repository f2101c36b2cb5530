#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "ssgauss/errors.hpp"
#include "ssgauss/limitvar.hpp"

using namespace ssgauss;

TEST(Limitvar, SecondDifference) {
  EXPECT_EQ(second_difference(0, 0.7), 2.0);
  EXPECT_NEAR(second_difference(1, 0.7), std::pow(2.0, 0.7) - 2.0, 1e-15);
  EXPECT_EQ(second_difference(5, 1.3), second_difference(-5, 1.3));
  EXPECT_NEAR(second_difference(1000, 0.6),
              2.0 * static_cast<double>(oracle::rho_stationary(0.6, 1000)), 1e-17);
  EXPECT_THROW(second_difference(3, 2.0), DomainError);
  EXPECT_THROW(second_difference(3, 0.0), DomainError);
}

TEST(Limitvar, AlphaOneIsFactorial) {
  for (int q = 2; q <= 8; ++q) {
    EXPECT_EQ(sigma_q_sq(1.0, q).value, std::tgamma(q + 1.0)) << q;
  }
}

TEST(Limitvar, AgreesWithLongDoubleOracle) {
  struct P {
    double a;
    int q;
  };
  for (const P p : {P{0.5, 2}, P{0.3, 2}, P{0.8, 3}, P{1.2, 2}, P{1.4, 2}, P{1.6, 3},
                    P{0.5, 4}, P{1.7, 4}}) {
    const auto s = sigma_q_sq(p.a, p.q);
    const double ref = static_cast<double>(oracle::sigma_q_sq(p.a, p.q));
    EXPECT_NEAR(s.value, ref, 1e-10 * ref) << "alpha=" << p.a << " q=" << p.q;
    EXPECT_LE(std::abs(s.value - ref), s.error_bound + 1e-14 * ref);
    EXPECT_LE(s.error_bound, 1e-10 * s.value);
  }
  // 50-digit summation with an analytic tail
  EXPECT_NEAR(sigma_q_sq(0.5, 2).value, 2.357487448313, 1e-10);
}

TEST(Limitvar, Gate) {
  EXPECT_TRUE(gate_allows(1.49, 2));
  EXPECT_FALSE(gate_allows(1.5, 2));
  EXPECT_TRUE(gate_allows(1.6, 3));
  EXPECT_FALSE(gate_allows(1.7, 3));
  try {
    sigma_q_sq(1.6, 2);
    FAIL() << "expected GateError";
  } catch (const GateError& e) {
    EXPECT_NE(std::string(e.what()).find("alpha < 2 - 1/d"), std::string::npos) << e.what();
  }
}

TEST(Limitvar, SigmaSqCombinesChaoses) {
  // x^4 - 3 = 6 H_2 + H_4
  const HermiteFunction f({0.0, 0.0, 6.0, 0.0, 1.0}, "x4");
  const auto lv = sigma_sq(f, 0.6);
  const double ref = static_cast<double>(36 * oracle::sigma_q_sq(0.6, 2) + oracle::sigma_q_sq(0.6, 4));
  EXPECT_NEAR(lv.sigma_sq, ref, 1e-10 * ref);
  EXPECT_EQ(lv.per_chaos.size(), 2u);
  EXPECT_NEAR(sigma_sq(HermiteFunction::single(2), 1.0).sigma_sq, 2.0, 0.0);
}

TEST(Limitvar, RankGate) {
  try {
    sigma_sq(HermiteFunction::single(1), 0.5);
    FAIL() << "expected GateError";
  } catch (const GateError& e) {
    EXPECT_NE(std::string(e.what()).find("d >= 2"), std::string::npos) << e.what();
  }
  // rank 3 opens the gate further than rank 2
  EXPECT_NO_THROW(sigma_sq(HermiteFunction::single(3), 1.6));
  EXPECT_THROW(sigma_sq(HermiteFunction::single(2), 1.6), GateError);
  EXPECT_THROW(require_gate(HermiteFunction({0.0, 0.0, 1.0, 1.0}), 1.55), GateError);
}
