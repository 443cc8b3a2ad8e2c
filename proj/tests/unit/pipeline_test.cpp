#include <gtest/gtest.h>

#include <sstream>

#include "oracle/fixture.hpp"
#include "oracle/random.hpp"
#include "roblev/error.hpp"
#include "roblev/pipeline.hpp"
#include "roblev/reproduce.hpp"

namespace {

roblev::RunConfig unit_weights(const std::string& formula) {
  roblev::RunConfig cfg;
  cfg.formula = formula;
  cfg.mcd.alpha = 1.0;
  cfg.mcd.c_override = 1.0;
  return cfg;
}

void expect_classical(const roblev::Analysis& a, double tol) {
  for (std::size_t i = 0; i < a.design.n(); ++i) {
    EXPECT_NEAR(a.robust_hat[i], a.classical.hat[i], tol) << "obs " << i + 1;
    EXPECT_NEAR(a.robust_rd[i], a.classical.md[i], tol) << "obs " << i + 1;
  }
}

}  // namespace

TEST(Analyze, EpilepsyHeader) {
  roblev::RunConfig cfg;
  cfg.formula = roblev::kEpilepsyFormula;
  const auto a = roblev::analyze(cfg, oracle::epilepsy());
  const auto& h = a.report.header;
  EXPECT_EQ(h.formula, "~ Age10 + Base4 + Trt + Base4:Trt");
  EXPECT_EQ(h.n, 59u);
  EXPECT_EQ(h.p, 5u);
  EXPECT_EQ(h.h, 31u);
  EXPECT_DOUBLE_EQ(h.sum_w, 42.0);
  EXPECT_EQ(h.seed, roblev::kDefaultSeed);
  EXPECT_EQ(h.blocks, (std::vector<std::string>{"intercept", "X2", "X2", "X1", "X3"}));
}

TEST(Analyze, NoTrimmingReducesToClassical) {
  expect_classical(roblev::analyze(unit_weights(roblev::kEpilepsyFormula), oracle::epilepsy()),
                   1e-10);
  oracle::Gen g(51);
  for (int trial = 0; trial < 20; ++trial) {
    std::ostringstream s;
    s.precision(17);
    s << "a,b,c,grp\n";
    const std::size_t n = g.index(12, 100);
    for (std::size_t i = 0; i < n; ++i)
      s << g.normal() * 3 << "," << g.uniform(0, 9) << "," << g.normal() << ","
        << "lvl" << (i % 3) << "\n";
    std::istringstream in(s.str());
    const auto data = roblev::parse_csv(in);
    expect_classical(roblev::analyze(unit_weights("~ a + b * grp + c"), data), 1e-10);
  }
}

TEST(Analyze, InterceptOnlyFormula) {
  const auto a = roblev::analyze(unit_weights("~ 1"), oracle::epilepsy());
  EXPECT_FALSE(a.fit.has_value());
  for (const auto& r : a.report.rows) {
    EXPECT_NEAR(r.robust_hat, 1.0 / 59.0, 1e-15);
    EXPECT_NEAR(r.classical_hat, 1.0 / 59.0, 1e-15);
  }
}

TEST(Analyze, CategoricalOverride) {
  oracle::Gen g(52);
  std::ostringstream s;
  s << "x,z,grp\n";
  for (int i = 0; i < 30; ++i) s << g.normal() << "," << g.normal() << "," << 1 + i % 3 << "\n";
  std::istringstream in(s.str());
  const auto data = roblev::parse_csv(in);
  roblev::RunConfig cfg;
  cfg.formula = "~ x + z + grp";
  EXPECT_EQ(roblev::analyze(cfg, data).design.p(), 4u);
  cfg.categorical = {"grp"};
  const auto a = roblev::analyze(cfg, data);
  EXPECT_EQ(a.design.p(), 5u);
  EXPECT_EQ(a.design.p1, 3u);
  EXPECT_EQ(a.design.column_names().back(), "grp3");
}

TEST(Analyze, PropagatesErrors) {
  roblev::RunConfig cfg;
  cfg.formula = "~ Age10 +";
  EXPECT_THROW(roblev::analyze(cfg, oracle::epilepsy()), roblev::FormulaError);
  cfg.formula = "~ Age10 + Missing";
  EXPECT_THROW(roblev::analyze(cfg, oracle::epilepsy()), roblev::FormulaError);
}
