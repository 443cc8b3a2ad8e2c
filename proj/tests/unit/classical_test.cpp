#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "oracle/fixture.hpp"
#include "oracle/linalg.hpp"
#include "oracle/random.hpp"
#include "roblev/classical.hpp"
#include "roblev/design.hpp"
#include "roblev/error.hpp"
#include "roblev/reproduce.hpp"

using roblev::Matrix;

namespace {

double sum(const roblev::Vector& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

roblev::PartitionedDesign epilepsy_design() {
  return roblev::build_design(roblev::parse_formula(roblev::kEpilepsyFormula), oracle::epilepsy());
}

}  // namespace

TEST(HatValues, InterceptOnly) {
  const auto h = roblev::hat_values(Matrix(4, 1, 1.0));
  for (double v : h) EXPECT_DOUBLE_EQ(v, 0.25);
}

TEST(HatValues, SimpleLine) {
  const Matrix x{{1, 0}, {1, 1}, {1, 2}, {1, 3}};
  const auto h = roblev::hat_values(x);
  const std::vector<double> ref{0.7, 0.3, 0.3, 0.7};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(h[i], ref[i], 1e-14);
  const auto d = roblev::classical_diagnostics(x);
  EXPECT_LE(roblev::hat_md_relation_check(d), 1e-15);
}

TEST(HatValues, RankDeficientThrows) {
  EXPECT_THROW(roblev::hat_values(Matrix{{1, 2}, {2, 4}, {3, 6}}), roblev::DesignError);
}

TEST(HatValues, EpilepsyMatchesNormalEquationsOracle) {
  const auto d = epilepsy_design();
  const auto h = roblev::hat_values(d.x);
  const auto ref = oracle::hat_values(oracle::to_dense(d.x));
  for (std::size_t i = 0; i < h.size(); ++i) {
    EXPECT_GT(h[i], 0.0);
    EXPECT_LT(h[i], 1.0);
    EXPECT_NEAR(h[i], ref[i], 1e-12);
  }
  EXPECT_NEAR(sum(h), 5.0, 1e-10);
}

TEST(HatValues, PublishedLeverageListEqualsClassicalHats) {
  // The printed leverage list for the epilepsy example coincides with the
  // plain hat values of the design.
  const auto h = roblev::hat_values(epilepsy_design().x);
  for (std::size_t i = 0; i < h.size(); ++i)
    EXPECT_NEAR(h[i], roblev::kPublishedEpilepsyLeverage[i], 1e-8) << "obs " << i + 1;
}

TEST(StripConstant, Behaviour) {
  const auto d = epilepsy_design();
  const auto r = roblev::strip_constant(d.x);
  EXPECT_EQ(r.x.cols(), 4u);
  EXPECT_EQ(r.removed, (std::vector<std::size_t>{0}));
  const Matrix plain{{1, 2}, {3, 4}, {5, 7}};
  const auto same = roblev::strip_constant(plain);
  EXPECT_EQ(same.x, plain);
  EXPECT_TRUE(same.removed.empty());
  EXPECT_THROW(roblev::strip_constant(Matrix(3, 1, 1.0)), roblev::DesignError);
}

TEST(Mahalanobis, TwoPoints) {
  const auto md = roblev::mahalanobis(Matrix{{-1}, {1}});
  EXPECT_NEAR(md[0], 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(md[1], 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Mahalanobis, StandardizationIdentityAndOracle) {
  oracle::Gen g(21);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = g.index(6, 60), p = g.index(1, 5);
    const Matrix x = g.normal_matrix(n, p, 2.0);
    const auto md = roblev::mahalanobis(x);
    double s2 = 0.0;
    for (double v : md) s2 += v * v;
    EXPECT_NEAR(s2, static_cast<double>((n - 1) * p), 1e-9 * n * p);
    const auto dense = oracle::to_dense(x);
    const auto m = oracle::moments(dense);
    const auto ref = oracle::distances(dense, m.mean, m.cov);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(md[i], ref[i], 1e-9);
  }
}

TEST(Mahalanobis, SingularCovarianceThrows) {
  EXPECT_THROW(roblev::mahalanobis(Matrix{{1, 2}, {2, 4}, {3, 6}, {4, 8}}), roblev::DesignError);
}

TEST(HatMdRelation, EpilepsyAndRandomDesigns) {
  const auto d = roblev::classical_diagnostics(epilepsy_design().x);
  EXPECT_LE(roblev::hat_md_relation_check(d), 1e-10);
  oracle::Gen g(22);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = g.index(10, 200), p = g.index(2, 8);
    const auto cd = roblev::classical_diagnostics(g.design_with_intercept(n, p));
    EXPECT_LE(roblev::hat_md_relation_check(cd), 1e-10);
    EXPECT_NEAR(sum(cd.hat), static_cast<double>(p), 1e-10 * p);
    for (double h : cd.hat) {
      EXPECT_GE(h, 1.0 / n - 1e-12);
      EXPECT_LE(h, 1.0 + 1e-12);
    }
  }
}

TEST(HatMdRelation, RefusesWithoutIntercept) {
  const auto d = roblev::classical_diagnostics(Matrix{{1, 2}, {3, 1}, {2, 5}, {4, 4}});
  EXPECT_FALSE(d.has_intercept);
  EXPECT_THROW(roblev::hat_md_relation_check(d), std::logic_error);
}

TEST(HatValues, InvariantUnderReparametrization) {
  oracle::Gen g(23);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = g.index(10, 80), p = g.index(2, 6);
    const Matrix x = g.design_with_intercept(n, p);
    Matrix r = g.normal_matrix(p, p);
    for (std::size_t j = 0; j < p; ++j) r(j, j) += 3.0;  // comfortably invertible
    const auto h = roblev::hat_values(x);
    const auto hr = roblev::hat_values(x * r);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(h[i], hr[i], 1e-8);
  }
}

TEST(HatValues, DuplicatingARowNeverIncreasesItsLeverage) {
  oracle::Gen g(24);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = g.index(8, 40), p = g.index(2, 5);
    const Matrix x = g.design_with_intercept(n, p);
    const std::size_t i = g.index(0, n - 1);
    std::vector<std::size_t> rows(n);
    std::iota(rows.begin(), rows.end(), 0);
    rows.push_back(i);
    const auto h = roblev::hat_values(x);
    const auto hd = roblev::hat_values(x.select_rows(rows));
    EXPECT_LE(hd[i], h[i] + 1e-12);
  }
}

TEST(ClassicalDiagnostics, InterceptOnlyDistancesAreZero) {
  const auto d = roblev::classical_diagnostics(Matrix(5, 1, 1.0));
  for (double v : d.md) EXPECT_EQ(v, 0.0);
  for (double v : d.hat) EXPECT_DOUBLE_EQ(v, 0.2);
}
