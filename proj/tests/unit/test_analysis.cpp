#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "ssgauss/analysis.hpp"
#include "ssgauss/errors.hpp"
#include "ssgauss/montecarlo.hpp"

using namespace ssgauss;

TEST(Analysis, ContractionMatchesQuadrupleSum) {
  struct C {
    ModelSpec m;
    oracle::Cov R;
  };
  for (const auto& c : {C{ModelSpec::fbm(0.3), oracle::fbm(0.3)},
                        C{ModelSpec::swanson(), oracle::swanson()},
                        C{ModelSpec::bifbm(0.6, 0.5), oracle::bifbm(0.6, 0.5)},
                        C{ModelSpec::durieu_wang_z2(0.5), oracle::dw_z2(0.5)}}) {
    const int n = 8;
    const auto ic = increment_cov(c.m, n, n);
    const auto rho = oracle::correlation(oracle::increment_cov(c.R, n, n));
    for (int q : {2, 3, 4}) {
      for (int r = 1; r < q; ++r) {
        for (double t : {0.5, 1.0}) {
          const double got = contraction_norm(ic, q, r, 1.3, t);
          const double ref =
              static_cast<double>(oracle::contraction_brute(rho, q, r, 1.3L, n, grid_steps(n, t)));
          EXPECT_NEAR(got, ref, 1e-12 * ref) << c.m.label() << " q=" << q << " r=" << r;
        }
      }
    }
  }
}

TEST(Analysis, BrownianContractionIsOneOverN) {
  const auto rep = contraction_report(ModelSpec::fbm(0.5), 2, 1, {64, 128, 256});
  ASSERT_EQ(rep.norms.size(), 3u);
  EXPECT_NEAR(rep.norms[0], 1.0 / 64, 1e-15);
  EXPECT_NEAR(rep.norms[1], 1.0 / 128, 1e-15);
  EXPECT_NEAR(rep.norms[2], 1.0 / 256, 1e-15);
  EXPECT_TRUE(rep.verdict());
  EXPECT_THROW(contraction_report(ModelSpec::fbm(0.8), 2, 1, {64}), GateError);
}

TEST(Analysis, TvBound) {
  const auto ic = increment_cov(ModelSpec::fbm(0.5), 64, 64);
  EXPECT_GT(tv_bound(ic, 1.0, 2, 1.0), 0.0);
  EXPECT_THROW(tv_bound(ic, 1.0, HermiteFunction({0.0, 0.0, 1.0, 1.0}), 1.0), DomainError);
  EXPECT_EQ(tv_bound(ic, 1.0, HermiteFunction::single(2), 1.0), tv_bound(ic, 1.0, 2, 1.0));
}

TEST(Analysis, BrownianResidualsVanish) {
  for (double H : {0.2, 0.5, 0.7}) {
    const auto m = ModelSpec::fbm(H);
    EXPECT_LE(check_lemma31(m).max_abs_quantity, 1e-12) << H;
    for (const auto& r : check_lemma32(m)) EXPECT_LE(r.max_abs_quantity, 1e-12) << r.target;
  }
}

TEST(Analysis, HypothesisAuditsPassForCatalog) {
  for (const auto& t : list_models()) {
    const auto m = t.instantiate();
    auto reps = check_h1(m);
    const auto h2 = check_h2(m);
    reps.insert(reps.end(), h2.begin(), h2.end());
    for (const auto& r : reps) {
      EXPECT_TRUE(r.verdict) << m.label() << ' ' << r.target << " slope=" << r.trend_slope;
      EXPECT_FALSE(r.points.empty());
    }
  }
}

TEST(Analysis, SwansonLemmaAudits) {
  const auto m = ModelSpec::swanson();
  EXPECT_TRUE(check_lemma31(m).verdict);
  for (const auto& r : check_lemma32(m)) EXPECT_TRUE(r.verdict) << r.target;
  EXPECT_TRUE(check_lemma51(m).verdict);
}

TEST(Analysis, ReportsCarryGrids) {
  const auto all = check_all(ModelSpec::subfbm(0.35));
  EXPECT_EQ(all.size(), 9u);
  for (const auto& r : all) {
    EXPECT_FALSE(r.target.empty());
    EXPECT_FALSE(r.envelope.empty());
    EXPECT_FALSE(r.coord_names.empty());
    for (const auto& p : r.points) EXPECT_EQ(p.coords.size(), r.coord_names.size()) << r.target;
  }
}
