#pragma once

#include <optional>
#include <string>
#include <vector>

#include "roblev/classical.hpp"
#include "roblev/dataset.hpp"
#include "roblev/design.hpp"
#include "roblev/formula.hpp"
#include "roblev/mcd.hpp"
#include "roblev/report.hpp"
#include "roblev/robust_leverage.hpp"

namespace roblev {

struct RunConfig {
  std::string formula;
  std::vector<std::string> categorical;  // columns forced to label kind
  McdConfig mcd;
  ReportFormat format = ReportFormat::csv;
  double flag_cutoff = 0.0;  // <= 0 selects 2p/n
  std::string out;           // empty or "-" writes to stdout
};

// Everything computed for one run, kept for callers that want more than the
// report.
struct Analysis {
  ModelSpec spec;
  PartitionedDesign design;
  ClassicalDiagnostics classical;
  std::optional<McdFit> fit;  // empty when the design has no continuous block
  ModifiedDesign modified;
  Vector robust_hat;
  Vector robust_rd;
  LeverageReport report;
};

// formula -> design -> classical -> MCD on X2 -> X̃ -> robust hat/RD -> report.
Analysis analyze(const RunConfig& config, const Dataset& data);

}  // namespace roblev
