#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace roblev {

// Base of every error raised by the library. The CLI maps each concrete
// subclass onto its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data could not be read or is unusable (ragged CSV, missing values,
// single-level factors, too few rows).
class DataError : public Error {
 public:
  explicit DataError(const std::string& what, std::vector<std::size_t> rows = {})
      : Error(what), rows_(std::move(rows)) {}
  // 1-based data row numbers involved, when known.
  const std::vector<std::size_t>& rows() const noexcept { return rows_; }

 private:
  std::vector<std::size_t> rows_;
};

class FormulaError : public Error {
 public:
  explicit FormulaError(const std::string& what,
                        std::optional<std::size_t> position = std::nullopt)
      : Error(what), position_(position) {}
  // 0-based character offset into the formula text.
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  std::optional<std::size_t> position_;
};

// The design matrix (or a covariance derived from it) is singular.
class DesignError : public Error {
 public:
  explicit DesignError(const std::string& what,
                       std::optional<std::size_t> column = std::nullopt)
      : Error(what), column_(column) {}
  std::optional<std::size_t> column() const noexcept { return column_; }

 private:
  std::optional<std::size_t> column_;
};

// MCD failure: exact fit of an h-subset, or a degenerate input block.
class McdError : public Error {
 public:
  explicit McdError(const std::string& what, std::vector<std::size_t> subset = {})
      : Error(what), subset_(std::move(subset)) {}
  // 0-based rows of the degenerate h-subset for exact-fit failures.
  const std::vector<std::size_t>& subset() const noexcept { return subset_; }

 private:
  std::vector<std::size_t> subset_;
};

// The modified design X̃ (or the covariance of its non-constant part) is
// singular, or too few observations kept weight 1.
class ModifiedDesignError : public Error {
 public:
  explicit ModifiedDesignError(const std::string& what,
                               std::optional<std::size_t> column = std::nullopt)
      : Error(what), column_(column) {}
  std::optional<std::size_t> column() const noexcept { return column_; }

 private:
  std::optional<std::size_t> column_;
};

// A report destination could not be written.
class OutputError : public Error {
 public:
  using Error::Error;
};

}  // namespace roblev
