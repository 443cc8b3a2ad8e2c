#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "roblev/dataset.hpp"
#include "roblev/formula.hpp"
#include "roblev/matrix.hpp"

namespace roblev {

// Column partition of X = [X1 X2 X3]. The intercept belongs to X1.
enum class Block { intercept, categorical, continuous, mixed };

const char* block_name(Block b);

// How one variable enters a column: a treatment indicator for one
// non-reference level, or the raw continuous value.
struct FactorCoding {
  std::string variable;
  bool categorical = false;
  std::size_t level = 0;  // index into the variable's levels; categorical only
};

struct ColumnInfo {
  std::string name;                    // "(Intercept)", "Age10", "Base4:Trtprogabide"
  std::optional<std::size_t> term;     // index into ModelSpec::terms; empty for the intercept
  std::vector<FactorCoding> factors;   // in term order; empty for the intercept
  Block block = Block::intercept;
};

struct FactorLevels {
  std::string variable;
  std::vector<std::string> levels;  // sorted; levels[0] is the reference
  std::vector<std::size_t> codes;   // level index of each row
};

struct PartitionedDesign {
  Matrix x;
  std::vector<ColumnInfo> columns;
  std::vector<FactorLevels> factors;
  std::size_t p1 = 0, p2 = 0, p3 = 0;
  bool has_intercept = false;

  std::size_t n() const noexcept { return x.rows(); }
  std::size_t p() const noexcept { return x.cols(); }

  // Column indices of X1 (intercept + categorical), X2, X3, in design order.
  std::vector<std::size_t> indices(Block b) const;
  std::vector<std::size_t> x1_indices() const;
  std::vector<std::size_t> x2_indices() const { return indices(Block::continuous); }
  std::vector<std::size_t> x3_indices() const { return indices(Block::mixed); }

  Matrix x2() const;
  const FactorLevels& factor(const std::string& variable) const;
  std::vector<std::string> column_names() const;
};

// Intercept and all-categorical terms -> X1; all-continuous terms (including
// continuous products) -> X2; terms mixing both kinds -> X3.
std::vector<Block> classify_columns(const std::vector<ColumnInfo>& coding);

// Treatment-contrast design for `spec` over `data`. A variable is categorical
// iff its column has label kind. Throws FormulaError for unknown variables,
// DataError for missing values, single-level factors or n <= p, and
// DesignError naming the first linearly dependent column.
PartitionedDesign build_design(const ModelSpec& spec, const Dataset& data);

}  // namespace roblev
