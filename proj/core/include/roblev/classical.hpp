#pragma once

#include <cstddef>
#include <vector>

#include "roblev/matrix.hpp"

namespace roblev {

// h_i = x_iᵀ(XᵀX)⁻¹x_i. Throws DesignError when X lacks full column rank.
Vector hat_values(const Matrix& x);

// Hat values of arbitrary query rows against the Gram matrix of `basis`:
// q_iᵀ(BᵀB)⁻¹q_i. hat_values(x) == leverage_against(x, x).
Vector leverage_against(const Matrix& query, const Matrix& basis);

// A column is constant when max − min <= 1e-12 · (1 + |max|).
bool is_constant_column(const Matrix& x, std::size_t j);

struct ReducedMatrix {
  Matrix x;                          // X with constant columns removed
  std::vector<std::size_t> kept;     // original indices of the remaining columns
  std::vector<std::size_t> removed;  // original indices of the constant columns
};

// X* of the Mahalanobis form. Throws DesignError if every column is constant.
ReducedMatrix strip_constant(const Matrix& x);

// sqrt((x_i − T(X*))ᵀ C(X*)⁻¹ (x_i − T(X*))) with the plain mean and sample
// covariance. Throws DesignError if the covariance is singular or n < p* + 1.
Vector mahalanobis(const Matrix& xstar);

// Distances of the rows of `query` under the plain moments of `reference`.
Vector mahalanobis_against(const Matrix& query, const Matrix& reference);

struct ClassicalDiagnostics {
  Vector hat;
  Vector md;
  bool has_intercept = false;
};

// Hat values and Mahalanobis distances of a design. An intercept-only design
// has no X* columns; its distances are all zero.
ClassicalDiagnostics classical_diagnostics(const Matrix& x);

// max_i |h_i − (MD_i²/(n−1) + 1/n)|. Throws std::logic_error unless the
// design had a constant column.
double hat_md_relation_check(const ClassicalDiagnostics& d);
double hat_md_relation_check(std::span<const double> hat, std::span<const double> md,
                             bool has_intercept);

}  // namespace roblev
