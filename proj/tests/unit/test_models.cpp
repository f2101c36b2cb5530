#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ssgauss/errors.hpp"
#include "ssgauss/models.hpp"

using namespace ssgauss;

namespace {

struct Case {
  ModelSpec model;
  oracle::Cov R;
};

std::vector<Case> all_cases() {
  return {
      {ModelSpec::fbm(0.3), oracle::fbm(0.3)},
      {ModelSpec::fbm(0.5), oracle::fbm(0.5)},
      {ModelSpec::fbm(0.85), oracle::fbm(0.85)},
      {ModelSpec::bifbm(0.6, 0.5), oracle::bifbm(0.6, 0.5)},
      {ModelSpec::bifbm(0.4, 0.9), oracle::bifbm(0.4, 0.9)},
      {ModelSpec::bifbm(0.7, 1.0), oracle::bifbm(0.7, 1.0)},
      {ModelSpec::subfbm(0.35), oracle::subfbm(0.35)},
      {ModelSpec::subfbm(0.8), oracle::subfbm(0.8)},
      {ModelSpec::swanson(), oracle::swanson()},
      {ModelSpec::durieu_wang_z1(0.5), oracle::dw_z1(0.5)},
      {ModelSpec::durieu_wang_z2(0.5), oracle::dw_z2(0.5)},
      {ModelSpec::durieu_wang_z2(0.2), oracle::dw_z2(0.2)},
  };
}

double central_diff(const std::function<double(double)>& g, double x, double h) {
  return (g(x + h) - g(x - h)) / (2 * h);
}

}  // namespace

TEST(Models, CovarianceMatchesClosedForm) {
  const double pts[] = {0.05, 0.3, 1.0, 1.7, 4.0, 25.0};
  for (const auto& c : all_cases()) {
    for (double s : pts) {
      for (double t : pts) {
        const double ref = static_cast<double>(c.R(s, t));
        EXPECT_NEAR(c.model.covariance(s, t), ref, 1e-12 * std::max(1.0, std::abs(ref)))
            << c.model.label() << " s=" << s << " t=" << t;
      }
    }
  }
}

TEST(Models, CovarianceVanishesAtZero) {
  for (const auto& c : all_cases()) {
    EXPECT_EQ(c.model.covariance(0.0, 2.0), 0.0) << c.model.label();
    EXPECT_EQ(c.model.covariance(0.0, 0.0), 0.0) << c.model.label();
  }
}

TEST(Models, SelfSimilarScaling) {
  for (const auto& c : all_cases()) {
    const double b = c.model.beta();
    for (double k : {0.25, 3.0}) {
      const double lhs = c.model.covariance(k * 0.7, k * 1.9);
      const double rhs = std::pow(k, 2 * b) * c.model.covariance(0.7, 1.9);
      EXPECT_NEAR(lhs, rhs, 1e-12 * std::abs(rhs)) << c.model.label();
    }
  }
}

TEST(Models, PhiIsCovarianceOnTheDiagonalRay) {
  for (const auto& c : all_cases()) {
    for (double x : {1.0, 1.3, 2.0, 9.0, 300.0}) {
      EXPECT_NEAR(c.model.phi(x), static_cast<double>(c.R(1.0L, x)), 1e-12 * std::max(1.0, x))
          << c.model.label() << " x=" << x;
    }
  }
}

TEST(Models, DecompositionPhiEqualsMinusLambdaPowerPlusPsi) {
  for (const auto& c : all_cases()) {
    const auto& m = c.model;
    for (double x : {1.0, 1.0001, 1.5, 3.0, 50.0, 4000.0}) {
      const double lhs = m.phi(x);
      const double power = m.lambda() * std::pow(x - 1.0, m.alpha());
      const double rhs = -power + m.psi(x);
      // the two terms on the right are each of size lambda x^alpha
      EXPECT_NEAR(lhs, rhs, 1e-13 * std::max(1.0, power)) << m.label() << " x=" << x;
    }
  }
}

TEST(Models, DerivativesAgreeWithFiniteDifferences) {
  for (const auto& c : all_cases()) {
    const auto& m = c.model;
    for (double x : {1.7, 3.0, 12.0}) {
      const double h = 1e-4 * x;
      const auto phi0 = [&](double y) { return m.phi(y); };
      const auto phi1 = [&](double y) { return m.phi(y, 1); };
      const auto psi0 = [&](double y) { return m.psi(y); };
      const auto psi1 = [&](double y) { return m.psi(y, 1); };
      auto check = [&](double got, double fd, const char* what) {
        EXPECT_NEAR(got, fd, 1e-6 * std::max(1e-3, std::abs(fd)))
            << m.label() << ' ' << what << " x=" << x;
      };
      check(m.phi(x, 1), central_diff(phi0, x, h), "phi'");
      check(m.phi(x, 2), central_diff(phi1, x, h), "phi''");
      check(m.psi(x, 1), central_diff(psi0, x, h), "psi'");
      check(m.psi(x, 2), central_diff(psi1, x, h), "psi''");
    }
  }
}

TEST(Models, SwansonPsiPrimeAgainstHandDerivative) {
  // psi(x) = sqrt(x) asin(x^{-1/2}) + sqrt(x - 1)
  const auto m = ModelSpec::swanson();
  for (double x : {1.2, 2.0, 10.0, 1e3}) {
    const double d = std::asin(1.0 / std::sqrt(x)) / (2 * std::sqrt(x)) -
                     1.0 / (2 * std::sqrt(x) * std::sqrt(x - 1.0)) + 1.0 / (2 * std::sqrt(x - 1.0));
    EXPECT_NEAR(m.psi(x, 1), d, 1e-12 * std::abs(d) + 1e-15) << x;
  }
}

TEST(Models, Exponents) {
  auto expect = [](const ModelSpec& m, double a, double b, double l, std::optional<double> nu) {
    EXPECT_NEAR(m.alpha(), a, 1e-15) << m.label();
    EXPECT_NEAR(m.beta(), b, 1e-15) << m.label();
    EXPECT_NEAR(m.lambda(), l, 1e-14) << m.label();
    ASSERT_EQ(m.nu().has_value(), nu.has_value()) << m.label();
    if (nu) {
      EXPECT_NEAR(*m.nu(), *nu, 1e-15) << m.label();
    }
  };
  expect(ModelSpec::fbm(0.3), 0.6, 0.3, 0.5, 1.4);
  expect(ModelSpec::fbm(0.7), 1.4, 0.7, 0.5, std::nullopt);
  expect(ModelSpec::bifbm(0.6, 0.5), 0.6, 0.3, std::pow(2.0, -0.5), std::min(1.6, 1.4));
  expect(ModelSpec::subfbm(0.35), 0.7, 0.35, 0.5, 1.3);
  expect(ModelSpec::swanson(), 0.5, 0.5, 1.0, 2.0);
  expect(ModelSpec::durieu_wang_z1(0.5), 0.5, 0.25, std::sqrt(std::numbers::pi), 1.5);
  expect(ModelSpec::durieu_wang_z2(0.5), 0.5, 0.25, std::sqrt(std::numbers::pi), 1.5);
}

TEST(Models, SingularDerivativeAtOneThrows) {
  EXPECT_THROW(ModelSpec::swanson().phi(1.0, 1), SingularityError);
  EXPECT_THROW(ModelSpec::fbm(0.3).phi(1.0, 2), SingularityError);
  EXPECT_NO_THROW(ModelSpec::fbm(0.3).psi(1.0, 2));  // psi = (1 + x^{2H}) / 2 is smooth
  EXPECT_NO_THROW(ModelSpec::fbm(0.7).phi(1.0, 1));
}

TEST(Models, FromIdAndValidation) {
  const auto m = ModelSpec::from_id("bifbm", {{"H", 0.6}, {"K", 0.8}});
  EXPECT_EQ(m.label(), "bifbm(H=0.6,K=0.8)");
  EXPECT_NEAR(m.alpha(), 0.96, 1e-15);
  EXPECT_EQ(ModelSpec::from_id("subfbm").params().at("H"), 0.35);
  EXPECT_THROW(ModelSpec::from_id("nope"), DomainError);
  EXPECT_THROW(ModelSpec::from_id("fbm", {{"K", 0.5}}), DomainError);
  EXPECT_THROW(ModelSpec::fbm(1.0), DomainError);
  EXPECT_THROW(ModelSpec::fbm(0.0), DomainError);
  EXPECT_THROW(ModelSpec::bifbm(0.5, 1.2), DomainError);
  EXPECT_THROW(ModelSpec::durieu_wang_z1(1.0), DomainError);
  EXPECT_THROW(ModelSpec::fbm(0.5).phi(0.5), DomainError);
}

TEST(Models, Catalog) {
  const auto models = list_models();
  ASSERT_EQ(models.size(), 6u);
  for (const auto& t : models) {
    EXPECT_NO_THROW(t.instantiate()) << t.id;
    EXPECT_EQ(&find_model(t.id), &t);
  }
  EXPECT_THROW(find_model("bm"), DomainError);
}
