#include "roblev/robust_leverage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "roblev/error.hpp"

namespace roblev {

namespace {

const char* kWeightAdvice =
    "; too few observations kept weight 1 to span the design - try a larger --alpha or a "
    "higher --reweight-prob";

std::vector<std::string> sorted_names(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<std::string> continuous_variables(const ColumnInfo& col) {
  std::vector<std::string> out;
  for (const auto& f : col.factors)
    if (!f.categorical) out.push_back(f.variable);
  return out;
}

}  // namespace

ModifiedX2 modify_x2(const Matrix& x2, std::span<const double> weights, double c) {
  const std::size_t n = x2.rows();
  const std::size_t p2 = x2.cols();
  if (weights.size() != n) throw std::invalid_argument("weight vector length mismatch");
  if (!(c > 0.0)) throw std::invalid_argument("rescale factor c must be positive");
  const double sum_w = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (sum_w < static_cast<double>(p2 + 2)) {
    throw ModifiedDesignError("only " + std::to_string(static_cast<long long>(sum_w)) +
                              " observations have weight 1; need at least p2 + 2 = " +
                              std::to_string(p2 + 2));
  }
  const Moments wm = weighted_moments(x2, weights);

  ModifiedX2 out;
  out.m_row = wm.mean;
  out.scale = std::sqrt(c * static_cast<double>(n - 1) / (sum_w - 1.0));
  out.x2_tilde = Matrix(n, p2);
  for (std::size_t i = 0; i < n; ++i) {
    auto src = x2.row(i);
    auto dst = out.x2_tilde.row(i);
    const double f = out.scale * weights[i];
    for (std::size_t j = 0; j < p2; ++j) dst[j] = f * (src[j] - out.m_row[j]) + out.m_row[j];
  }
  return out;
}

ModifiedX2 modify_x2(const Matrix& x2, const McdFit& fit) { return modify_x2(x2, fit.weights, fit.c); }

EquivalenceGap verify_equivalence(const Matrix& x2_tilde, std::span<const double> location,
                                  const Matrix& scatter) {
  const Moments m = sample_moments(x2_tilde);
  if (location.size() != m.mean.size()) throw std::invalid_argument("location length mismatch");
  EquivalenceGap gap;
  for (std::size_t j = 0; j < location.size(); ++j)
    gap.mean_gap = std::max(gap.mean_gap, std::abs(m.mean[j] - location[j]));
  gap.cov_gap = max_abs_diff(m.covariance, scatter);
  return gap;
}

Matrix rebuild_interactions(const PartitionedDesign& design, const Matrix& x2_tilde) {
  const auto x2_idx = design.x2_indices();
  const auto x3_idx = design.x3_indices();
  if (x2_tilde.cols() != x2_idx.size() || x2_tilde.rows() != design.n()) {
    throw std::invalid_argument("modified X2 does not match the design");
  }
  Matrix out(design.n(), x3_idx.size());
  for (std::size_t k = 0; k < x3_idx.size(); ++k) {
    const ColumnInfo& col = design.columns[x3_idx[k]];
    const auto wanted = sorted_names(continuous_variables(col));
    std::optional<std::size_t> source;
    for (std::size_t m = 0; m < x2_idx.size(); ++m) {
      if (sorted_names(continuous_variables(design.columns[x2_idx[m]])) == wanted) {
        source = m;
        break;
      }
    }
    if (!source) {
      throw FormulaError("interaction '" + col.name +
                         "' needs its continuous part as a separate term for the robust "
                         "modification");
    }
    for (std::size_t i = 0; i < design.n(); ++i) {
      double v = x2_tilde(i, *source);
      for (const auto& f : col.factors) {
        if (!f.categorical) continue;
        if (design.factor(f.variable).codes[i] != f.level) v = 0.0;
      }
      out(i, k) = v;
    }
  }
  return out;
}

ModifiedDesign build_modified_design(const PartitionedDesign& design,
                                     std::span<const double> weights, double c) {
  ModifiedDesign mod;
  mod.x_tilde = design.x;
  if (design.p2 == 0) return mod;

  const auto x2_idx = design.x2_indices();
  const auto x3_idx = design.x3_indices();
  ModifiedX2 m2 = modify_x2(design.x2(), weights, c);
  const Matrix x3_tilde = rebuild_interactions(design, m2.x2_tilde);
  for (std::size_t i = 0; i < design.n(); ++i) {
    for (std::size_t k = 0; k < x2_idx.size(); ++k) mod.x_tilde(i, x2_idx[k]) = m2.x2_tilde(i, k);
    for (std::size_t k = 0; k < x3_idx.size(); ++k) mod.x_tilde(i, x3_idx[k]) = x3_tilde(i, k);
  }
  mod.scale = m2.scale;
  mod.m_row = std::move(m2.m_row);
  return mod;
}

ModifiedDesign build_modified_design(const PartitionedDesign& design, const McdFit& fit) {
  return build_modified_design(design, fit.weights, fit.c);
}

Vector robust_hat(const PartitionedDesign& design, const ModifiedDesign& mod) {
  try {
    return leverage_against(design.x, mod.x_tilde);
  } catch (const DesignError& e) {
    throw ModifiedDesignError(std::string("modified design is rank deficient") +
                                  (e.column() ? " at column '" +
                                                    design.columns[*e.column()].name + "'"
                                              : std::string()) +
                                  kWeightAdvice,
                              e.column());
  }
}

Vector robust_distance(const PartitionedDesign& design, const ModifiedDesign& mod) {
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < design.p(); ++j)
    if (!is_constant_column(design.x, j)) kept.push_back(j);
  if (kept.empty()) return Vector(design.n(), 0.0);
  try {
    return mahalanobis_against(design.x.select_columns(kept), mod.x_tilde.select_columns(kept));
  } catch (const DesignError& e) {
    throw ModifiedDesignError(std::string("covariance of the modified design is singular") +
                                  kWeightAdvice,
                              e.column() ? std::optional<std::size_t>(kept[*e.column()])
                                         : std::nullopt);
  }
}

LeverageReport assemble_report(const PartitionedDesign& design, const ClassicalDiagnostics& classical,
                               std::span<const double> weights, std::span<const double> robust_hats,
                               std::span<const double> robust_rd, double flag_cutoff) {
  const std::size_t n = design.n();
  if (classical.hat.size() != n || classical.md.size() != n || weights.size() != n ||
      robust_hats.size() != n || robust_rd.size() != n) {
    throw std::invalid_argument("report inputs disagree on the number of observations");
  }
  LeverageReport report;
  auto& hd = report.header;
  hd.n = n;
  hd.p = design.p();
  hd.p1 = design.p1;
  hd.p2 = design.p2;
  hd.p3 = design.p3;
  hd.sum_w = std::accumulate(weights.begin(), weights.end(), 0.0);
  hd.flag_cutoff = flag_cutoff > 0.0
                       ? flag_cutoff
                       : 2.0 * static_cast<double>(design.p()) / static_cast<double>(n);
  hd.columns = design.column_names();
  for (const auto& c : design.columns) hd.blocks.push_back(block_name(c.block));

  report.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ObservationRow r;
    r.obs = i + 1;
    r.robust_hat = robust_hats[i];
    r.robust_rd = robust_rd[i];
    r.classical_hat = classical.hat[i];
    r.classical_md = classical.md[i];
    r.mcd_weight = weights[i] != 0.0 ? 1 : 0;
    r.flagged = robust_hats[i] > hd.flag_cutoff;
    report.rows.push_back(r);
  }
  return report;
}

}  // namespace roblev
