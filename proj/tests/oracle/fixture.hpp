#pragma once

#include <string>

#include "roblev/dataset.hpp"

namespace oracle {

inline std::string fixture_path(const std::string& name) {
  return std::string(ROBLEV_FIXTURE_DIR) + "/" + name;
}

inline roblev::Dataset epilepsy() { return roblev::ingest_csv(fixture_path("epilepsy.csv")); }

}  // namespace oracle
