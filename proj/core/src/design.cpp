#include "roblev/design.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "roblev/error.hpp"

namespace roblev {

const char* block_name(Block b) {
  switch (b) {
    case Block::intercept: return "intercept";
    case Block::categorical: return "X1";
    case Block::continuous: return "X2";
    case Block::mixed: return "X3";
  }
  return "?";
}

std::vector<std::size_t> PartitionedDesign::indices(Block b) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < columns.size(); ++j)
    if (columns[j].block == b) out.push_back(j);
  return out;
}

std::vector<std::size_t> PartitionedDesign::x1_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < columns.size(); ++j)
    if (columns[j].block == Block::intercept || columns[j].block == Block::categorical)
      out.push_back(j);
  return out;
}

Matrix PartitionedDesign::x2() const {
  const auto idx = x2_indices();
  return x.select_columns(idx);
}

const FactorLevels& PartitionedDesign::factor(const std::string& variable) const {
  for (const auto& f : factors)
    if (f.variable == variable) return f;
  throw std::out_of_range("no categorical variable '" + variable + "' in design");
}

std::vector<std::string> PartitionedDesign::column_names() const {
  std::vector<std::string> out;
  out.reserve(columns.size());
  for (const auto& c : columns) out.push_back(c.name);
  return out;
}

std::vector<Block> classify_columns(const std::vector<ColumnInfo>& coding) {
  std::vector<Block> out;
  out.reserve(coding.size());
  for (const auto& col : coding) {
    if (col.factors.empty()) {
      out.push_back(Block::intercept);
      continue;
    }
    const bool any_cat = std::any_of(col.factors.begin(), col.factors.end(),
                                     [](const FactorCoding& f) { return f.categorical; });
    const bool any_cont = std::any_of(col.factors.begin(), col.factors.end(),
                                      [](const FactorCoding& f) { return !f.categorical; });
    out.push_back(any_cat && any_cont ? Block::mixed
                  : any_cat           ? Block::categorical
                                      : Block::continuous);
  }
  return out;
}

namespace {

std::vector<std::string> sorted_levels(const Column& col) {
  std::vector<std::string> levels(col.text.begin(), col.text.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  // Numeric-looking labels (a numeric column forced categorical) sort by value.
  std::vector<double> keys;
  for (const auto& l : levels) {
    auto v = parse_number(l);
    if (!v) return levels;
    keys.push_back(*v);
  }
  std::vector<std::size_t> order(levels.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  std::vector<std::string> out;
  for (auto k : order) out.push_back(levels[k]);
  return out;
}

struct BoundVariable {
  const Column* column;
  bool categorical;
  std::vector<std::string> levels;
  std::vector<std::size_t> codes;  // per row level index
};

}  // namespace

PartitionedDesign build_design(const ModelSpec& spec, const Dataset& data) {
  const std::size_t n = data.rows;

  if (spec.response && !data.find(*spec.response)) {
    throw FormulaError("response '" + *spec.response + "' is not a column of the data");
  }
  std::map<std::string, BoundVariable> vars;
  std::vector<std::size_t> missing_rows;
  for (const auto& name : spec.variables()) {
    const Column* col = data.find(name);
    if (!col) throw FormulaError("formula variable '" + name + "' is not a column of the data");
    for (std::size_t i = 0; i < n; ++i)
      if (col->is_missing(i)) missing_rows.push_back(i + 1);
    vars.emplace(name, BoundVariable{col, col->kind == ColumnKind::label, {}, {}});
  }
  if (!missing_rows.empty()) {
    std::sort(missing_rows.begin(), missing_rows.end());
    missing_rows.erase(std::unique(missing_rows.begin(), missing_rows.end()), missing_rows.end());
    std::ostringstream msg;
    msg << "missing values in model variables at row(s)";
    for (std::size_t k = 0; k < missing_rows.size(); ++k) {
      if (k == 20) {
        msg << " ...";
        break;
      }
      msg << ' ' << missing_rows[k];
    }
    throw DataError(msg.str(), missing_rows);
  }

  PartitionedDesign design;
  for (auto& [name, v] : vars) {
    if (!v.categorical) continue;
    v.levels = sorted_levels(*v.column);
    if (v.levels.size() < 2) {
      throw DataError("categorical variable '" + name + "' has a single observed level");
    }
    v.codes.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      v.codes[i] = static_cast<std::size_t>(
          std::find(v.levels.begin(), v.levels.end(), v.column->text[i]) - v.levels.begin());
    }
  }
  for (const auto& name : spec.variables()) {
    const auto& v = vars.at(name);
    if (v.categorical) design.factors.push_back({name, v.levels, v.codes});
  }

  // Column layout: intercept, then each term's coded columns. Within a term
  // the first factor's levels vary fastest.
  std::vector<ColumnInfo> columns;
  if (spec.intercept) columns.push_back({"(Intercept)", std::nullopt, {}, Block::intercept});
  for (std::size_t t = 0; t < spec.terms.size(); ++t) {
    const auto& factors = spec.terms[t].factors;
    std::vector<std::size_t> radix;
    for (const auto& f : factors) {
      const auto& v = vars.at(f);
      radix.push_back(v.categorical ? v.levels.size() - 1 : 1);
    }
    std::vector<std::size_t> digit(factors.size(), 0);
    while (true) {
      ColumnInfo info;
      info.term = t;
      for (std::size_t k = 0; k < factors.size(); ++k) {
        const auto& v = vars.at(factors[k]);
        FactorCoding fc{factors[k], v.categorical, v.categorical ? digit[k] + 1 : 0};
        if (k) info.name += ':';
        info.name += v.categorical ? factors[k] + v.levels[fc.level] : factors[k];
        info.factors.push_back(std::move(fc));
      }
      columns.push_back(std::move(info));
      std::size_t k = 0;
      while (k < digit.size() && ++digit[k] == radix[k]) digit[k++] = 0;
      if (k == digit.size()) break;
    }
  }

  const auto blocks = classify_columns(columns);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    columns[j].block = blocks[j];
    switch (blocks[j]) {
      case Block::intercept:
      case Block::categorical: ++design.p1; break;
      case Block::continuous: ++design.p2; break;
      case Block::mixed: ++design.p3; break;
    }
  }
  const std::size_t p = columns.size();
  if (p == 0) throw FormulaError("model has no columns (no terms and no intercept)");
  if (n <= p) {
    throw DataError("need more observations than design columns (n = " + std::to_string(n) +
                    ", p = " + std::to_string(p) + ")");
  }

  Matrix x(n, p);
  for (std::size_t j = 0; j < p; ++j) {
    const auto& col = columns[j];
    for (std::size_t i = 0; i < n; ++i) {
      double v = 1.0;
      for (const auto& fc : col.factors) {
        const auto& bv = vars.at(fc.variable);
        v *= fc.categorical ? (bv.codes[i] == fc.level ? 1.0 : 0.0) : bv.column->values[i];
      }
      x(i, j) = v;
    }
  }

  // Full-rank check on the column-normalized Gram matrix so the tolerance
  // does not depend on column scale.
  Vector norm(p, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) norm[j] += x(i, j) * x(i, j);
  for (std::size_t j = 0; j < p; ++j) {
    if (norm[j] == 0.0) {
      throw DesignError("design column " + std::to_string(j + 1) + " ('" + columns[j].name +
                            "') is identically zero",
                        j);
    }
    norm[j] = std::sqrt(norm[j]);
  }
  Matrix scaled_gram = x.gram();
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b) scaled_gram(a, b) /= norm[a] * norm[b];
  auto chol = try_cholesky(scaled_gram);
  if (auto* bad = std::get_if<RankDeficiency>(&chol)) {
    throw DesignError("design matrix is rank deficient: column " + std::to_string(bad->column + 1) +
                          " ('" + columns[bad->column].name +
                          "') is a linear combination of earlier columns",
                      bad->column);
  }

  design.x = std::move(x);
  design.columns = std::move(columns);
  design.has_intercept = spec.intercept;
  return design;
}

}  // namespace roblev
