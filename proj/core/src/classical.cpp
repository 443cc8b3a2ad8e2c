#include "roblev/classical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "roblev/error.hpp"

namespace roblev {

Vector leverage_against(const Matrix& query, const Matrix& basis) {
  if (query.cols() != basis.cols()) throw std::invalid_argument("leverage column mismatch");
  if (basis.rows() <= basis.cols()) {
    throw DesignError("hat values need more rows than columns");
  }
  auto result = try_cholesky(basis.gram());
  if (auto* bad = std::get_if<RankDeficiency>(&result)) {
    throw DesignError("design matrix is rank deficient at column " +
                          std::to_string(bad->column + 1),
                      bad->column);
  }
  const auto& spd = std::get<SymmetricPosDef>(result);
  Vector h(query.rows());
  for (std::size_t i = 0; i < query.rows(); ++i) h[i] = quad_form(spd, query.row(i));
  return h;
}

Vector hat_values(const Matrix& x) { return leverage_against(x, x); }

bool is_constant_column(const Matrix& x, std::size_t j) {
  double lo = x(0, j), hi = x(0, j);
  for (std::size_t i = 1; i < x.rows(); ++i) {
    lo = std::min(lo, x(i, j));
    hi = std::max(hi, x(i, j));
  }
  return hi - lo <= 1e-12 * (1.0 + std::abs(hi));
}

ReducedMatrix strip_constant(const Matrix& x) {
  ReducedMatrix out;
  for (std::size_t j = 0; j < x.cols(); ++j)
    (is_constant_column(x, j) ? out.removed : out.kept).push_back(j);
  if (out.kept.empty()) throw DesignError("no non-constant columns remain for the distance");
  out.x = x.select_columns(out.kept);
  return out;
}

Vector mahalanobis_against(const Matrix& query, const Matrix& reference) {
  const std::size_t p = reference.cols();
  if (query.cols() != p) throw std::invalid_argument("mahalanobis column mismatch");
  if (reference.rows() < p + 1) {
    throw DesignError("Mahalanobis distance needs at least p + 1 rows");
  }
  const Moments m = sample_moments(reference);
  auto result = try_cholesky(m.covariance);
  if (auto* bad = std::get_if<RankDeficiency>(&result)) {
    throw DesignError("sample covariance is singular at column " +
                          std::to_string(bad->column + 1),
                      bad->column);
  }
  const auto& spd = std::get<SymmetricPosDef>(result);
  Vector d(query.rows());
  Vector centered(p);
  for (std::size_t i = 0; i < query.rows(); ++i) {
    auto r = query.row(i);
    for (std::size_t j = 0; j < p; ++j) centered[j] = r[j] - m.mean[j];
    d[i] = std::sqrt(quad_form(spd, centered));
  }
  return d;
}

Vector mahalanobis(const Matrix& xstar) { return mahalanobis_against(xstar, xstar); }

ClassicalDiagnostics classical_diagnostics(const Matrix& x) {
  ClassicalDiagnostics out;
  out.hat = hat_values(x);
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    if (is_constant_column(x, j)) {
      out.has_intercept = true;
    } else {
      kept.push_back(j);
    }
  }
  if (kept.empty()) {
    out.md.assign(x.rows(), 0.0);
  } else {
    out.md = mahalanobis(x.select_columns(kept));
  }
  return out;
}

double hat_md_relation_check(std::span<const double> hat, std::span<const double> md,
                             bool has_intercept) {
  if (!has_intercept) {
    throw std::logic_error("hat/distance relation requires a constant column in the design");
  }
  if (hat.size() != md.size()) throw std::invalid_argument("hat/distance length mismatch");
  const double n = static_cast<double>(hat.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < hat.size(); ++i) {
    worst = std::max(worst, std::abs(hat[i] - (md[i] * md[i] / (n - 1.0) + 1.0 / n)));
  }
  return worst;
}

double hat_md_relation_check(const ClassicalDiagnostics& d) {
  return hat_md_relation_check(d.hat, d.md, d.has_intercept);
}

}  // namespace roblev
