#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "roblev/classical.hpp"
#include "roblev/design.hpp"
#include "roblev/matrix.hpp"
#include "roblev/mcd.hpp"

namespace roblev {

struct ModifiedX2 {
  Matrix x2_tilde;
  double scale = 1.0;  // sqrt(c(n − 1)/(Σw − 1))
  Vector m_row;        // T_rob, the common row of M
};

// X̃2 = scale · diag(w)(X2 − M) + M. Rows with w_i = 0 collapse onto T_rob.
// Throws ModifiedDesignError if Σw < p2 + 2.
ModifiedX2 modify_x2(const Matrix& x2, std::span<const double> weights, double c);
ModifiedX2 modify_x2(const Matrix& x2, const McdFit& fit);

struct EquivalenceGap {
  double mean_gap = 0.0;  // max |T(X̃2) − T_rob|
  double cov_gap = 0.0;   // max |C(X̃2) − C_rob|
};

// Plain moments of X̃2 against the robust ones they must reproduce.
EquivalenceGap verify_equivalence(const Matrix& x2_tilde, std::span<const double> location,
                                  const Matrix& scatter);

// X3 columns recomputed with their continuous part taken from X̃2. Each mixed
// column's continuous factors must match some X2 column exactly; otherwise
// FormulaError. Result is n × p3 in design order.
Matrix rebuild_interactions(const PartitionedDesign& design, const Matrix& x2_tilde);

struct ModifiedDesign {
  Matrix x_tilde;  // [X1 X̃2 X̃3] in the original column order
  double scale = 1.0;
  Vector m_row;
};

// X̃ for a design and an MCD fit of its X2 block. A design without
// continuous columns is returned unchanged.
ModifiedDesign build_modified_design(const PartitionedDesign& design, const McdFit& fit);
ModifiedDesign build_modified_design(const PartitionedDesign& design,
                                     std::span<const double> weights, double c);

// x_iᵀ(X̃ᵀX̃)⁻¹x_i, original rows against the modified Gram matrix. May
// exceed 1. Throws ModifiedDesignError when X̃ is rank deficient.
Vector robust_hat(const PartitionedDesign& design, const ModifiedDesign& mod);

// Distances of the original non-constant rows x*_i under the plain mean and
// covariance of X̃*. Constant columns are those of X. Throws
// ModifiedDesignError if C(X̃*) is singular.
Vector robust_distance(const PartitionedDesign& design, const ModifiedDesign& mod);

struct ObservationRow {
  std::size_t obs = 0;  // 1-based
  double robust_hat = 0.0;
  double robust_rd = 0.0;
  double classical_hat = 0.0;
  double classical_md = 0.0;
  int mcd_weight = 1;
  bool flagged = false;
};

struct ReportHeader {
  std::string formula;
  std::size_t n = 0, p = 0, p1 = 0, p2 = 0, p3 = 0;
  std::size_t h = 0;  // 0 when no MCD was run
  double sum_w = 0.0;
  double c = 1.0;
  double flag_cutoff = 0.0;
  std::uint64_t seed = 0;
  double alpha = 0.5;
  std::size_t n_trials = 0;
  double reweight_prob = 0.975;
  bool small_sample = true;
  bool enumerated = false;
  std::vector<std::string> columns;
  std::vector<std::string> blocks;
};

struct LeverageReport {
  ReportHeader header;
  std::vector<ObservationRow> rows;
};

// Merge per-observation diagnostics in observation order; rows with
// robust_hat > flag_cutoff are flagged. Default cutoff (when flag_cutoff
// <= 0) is 2p/n. Throws std::invalid_argument on length mismatches.
LeverageReport assemble_report(const PartitionedDesign& design, const ClassicalDiagnostics& classical,
                               std::span<const double> weights, std::span<const double> robust_hats,
                               std::span<const double> robust_rd, double flag_cutoff = 0.0);

}  // namespace roblev
