#include "roblev/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "roblev/classical.hpp"

namespace roblev {

const std::array<std::array<double, 2>, 2> kPublishedEpilepsyScatter = {{
    {0.7463740, -0.3267283},
    {-0.3267283, 10.0194113},
}};

const std::array<double, 59> kPublishedEpilepsyLeverage = {
    0.05918398, 0.05761964, 0.07597885, 0.08831037, 0.12814167,
    0.03649363, 0.05707197, 0.13821982, 0.06977150, 0.05953140,
    0.08231479, 0.04790064, 0.06109578, 0.06518841, 0.21304208,
    0.06047114, 0.04498471, 0.38633944, 0.04914452, 0.07172279,
    0.05490496, 0.09056742, 0.05061124, 0.04363259, 0.06789648,
    0.12056569, 0.10505741, 0.07403980, 0.13316337, 0.04489245,
    0.07575642, 0.05223374, 0.09433237, 0.04382864, 0.03457940,
    0.06124138, 0.05326251, 0.09628077, 0.04761239, 0.05961493,
    0.05079567, 0.10109938, 0.06090713, 0.05230413, 0.06278511,
    0.06904524, 0.03396855, 0.05985715, 0.64794379, 0.04181870,
    0.03780989, 0.05743717, 0.06796775, 0.11009718, 0.04673072,
    0.03927901, 0.05935622, 0.06818611, 0.07601004,
};

bool Reproduction::pass() const {
  return top_two_in_order && all_positive &&
         std::all_of(comparisons.begin(), comparisons.end(),
                     [](const Comparison& c) { return c.pass; });
}

namespace {

Comparison compare(std::string name, double expected, double actual, double rel_tol) {
  const bool ok = std::abs(actual - expected) <= rel_tol * std::abs(expected);
  return {std::move(name), expected, actual, rel_tol, ok};
}

}  // namespace

Reproduction reproduce_epilepsy(const Dataset& epilepsy, const McdConfig& cfg) {
  constexpr double kTol = 0.05;
  RunConfig run;
  run.formula = kEpilepsyFormula;
  run.mcd = cfg;

  Reproduction r;
  r.analysis = analyze(run, epilepsy);
  const auto& a = r.analysis;
  const Matrix& s = a.fit->scatter;
  r.comparisons.push_back(compare("C_rob[Age10,Age10]", kPublishedEpilepsyScatter[0][0], s(0, 0), kTol));
  r.comparisons.push_back(compare("C_rob[Age10,Base4]", kPublishedEpilepsyScatter[0][1], s(0, 1), kTol));
  r.comparisons.push_back(compare("C_rob[Base4,Base4]", kPublishedEpilepsyScatter[1][1], s(1, 1), kTol));
  r.comparisons.push_back(compare("robust_hat[49]", kPublishedEpilepsyLeverage[48], a.robust_hat[48], kTol));
  r.comparisons.push_back(compare("robust_hat[18]", kPublishedEpilepsyLeverage[17], a.robust_hat[17], kTol));

  std::vector<std::size_t> order(a.robust_hat.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a.robust_hat[x] > a.robust_hat[y];
  });
  r.top_two_in_order = order.size() >= 2 && order[0] == 48 && order[1] == 17;
  r.all_positive = std::all_of(a.robust_hat.begin(), a.robust_hat.end(),
                               [](double v) { return v > 0.0; });
  for (std::size_t i = 0; i < kPublishedEpilepsyLeverage.size() && i < a.classical.hat.size(); ++i) {
    r.published_vs_classical = std::max(
        r.published_vs_classical, std::abs(kPublishedEpilepsyLeverage[i] - a.classical.hat[i]));
  }
  return r;
}

void print_reproduction(const Reproduction& r, std::ostream& out) {
  char line[256];
  const auto& fit = *r.analysis.fit;
  std::snprintf(line, sizeof line, "epilepsy example: %s  (n = %zu, h = %zu, sum(w) = %g, c = %.10g)\n",
                kEpilepsyFormula, r.analysis.design.n(), fit.h, fit.weight_sum(), fit.c);
  out << line;
  for (const auto& c : r.comparisons) {
    std::snprintf(line, sizeof line, "%-4s %-20s expected %-12.8g got %-12.8g (rel. tol %.0f%%)\n",
                  c.pass ? "PASS" : "FAIL", c.name.c_str(), c.expected, c.actual, 100.0 * c.rel_tol);
    out << line;
  }
  out << (r.top_two_in_order ? "PASS" : "FAIL")
      << " largest two robust hats are obs 49 then obs 18\n";
  out << (r.all_positive ? "PASS" : "FAIL") << " all robust hats positive\n";
  std::snprintf(line, sizeof line,
                "note published leverage values vs classical hat values: max |diff| = %.3g\n",
                r.published_vs_classical);
  out << line;
  out << (r.pass() ? "overall: PASS" : "overall: FAIL") << '\n';
}

}  // namespace roblev
