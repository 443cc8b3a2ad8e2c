#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "roblev/dataset.hpp"
#include "roblev/mcd.hpp"
#include "roblev/pipeline.hpp"

namespace roblev {

// Published epilepsy example: formula, robust covariance of (Age10, Base4)
// and the 59 reported leverage values.
inline constexpr const char* kEpilepsyFormula = "~ Age10 + Base4 * Trt";
extern const std::array<std::array<double, 2>, 2> kPublishedEpilepsyScatter;
extern const std::array<double, 59> kPublishedEpilepsyLeverage;

struct Comparison {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double rel_tol = 0.0;
  bool pass = false;
};

struct Reproduction {
  Analysis analysis;
  std::vector<Comparison> comparisons;
  bool top_two_in_order = false;  // obs 49 then obs 18 are the two largest robust hats
  bool all_positive = false;
  // max |published − classical hat|: the reported leverage values coincide
  // with the classical hat values of the same design.
  double published_vs_classical = 0.0;

  bool pass() const;
};

// Run the epilepsy example with the given MCD settings (defaults: alpha 0.5,
// reweighting at 0.975, small-sample correction on) and compare against the
// published numbers at 5% relative tolerance.
Reproduction reproduce_epilepsy(const Dataset& epilepsy, const McdConfig& cfg = {});

void print_reproduction(const Reproduction& r, std::ostream& out);

}  // namespace roblev
