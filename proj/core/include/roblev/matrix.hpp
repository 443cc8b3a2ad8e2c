#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <variant>
#include <vector>

namespace roblev {

using Vector = std::vector<double>;

// Pivot <= kRankTolerance * max diagonal declares rank deficiency.
inline constexpr double kRankTolerance = 1e-12;

// Dense row-major real matrix. Entries are finite; construction from
// external values rejects NaN and infinities.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t order);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * cols_ + j];
  }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  Vector column(std::size_t j) const;
  std::span<const double> data() const noexcept { return data_; }

  Matrix transpose() const;
  // Columns in the given order.
  Matrix select_columns(std::span<const std::size_t> cols) const;
  Matrix select_rows(std::span<const std::size_t> rows) const;

  // XᵀX
  Matrix gram() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> v);

struct RankDeficiency {
  std::size_t column;  // 0-based index of the first failing pivot
  double pivot;
};

class SymmetricPosDef;
using CholeskyResult = std::variant<SymmetricPosDef, RankDeficiency>;

// Cholesky factor of a symmetric positive-definite matrix. Immutable.
class SymmetricPosDef {
 public:
  std::size_t order() const noexcept { return lower_.rows(); }
  const Matrix& matrix() const noexcept { return matrix_; }
  const Matrix& lower() const noexcept { return lower_; }

 private:
  friend CholeskyResult try_cholesky(const Matrix& a, double tol);
  SymmetricPosDef(Matrix a, Matrix l) : matrix_(std::move(a)), lower_(std::move(l)) {}
  Matrix matrix_;
  Matrix lower_;
};

// Factor `a` (only its lower triangle is read). The first column whose pivot
// is <= tol * max(diag(a)) is reported instead of a factor.
CholeskyResult try_cholesky(const Matrix& a, double tol = kRankTolerance);

// As try_cholesky, but throws DesignError naming the failing column.
SymmetricPosDef cholesky(const Matrix& a, double tol = kRankTolerance);

// vᵀA⁻¹v = ‖L⁻¹v‖², one forward substitution.
double quad_form(const SymmetricPosDef& spd, std::span<const double> v);

// A⁻¹v by forward and back substitution.
Vector solve(const SymmetricPosDef& spd, std::span<const double> v);

// Σ 2·log L_ii
double log_det(const SymmetricPosDef& spd);

struct Moments {
  Vector mean;
  Matrix covariance;
};

// Mean Xᵀw/Σw and covariance (X−M)ᵀdiag(w)(X−M)/(Σw−1) for binary w.
// Throws std::invalid_argument on non-binary weights, a length mismatch,
// or fewer than two active weights.
Moments weighted_moments(const Matrix& x, std::span<const double> w);

// Plain sample mean and covariance (divisor n − 1).
Moments sample_moments(const Matrix& x);

// Moments of the listed rows only.
Moments subset_moments(const Matrix& x, std::span<const std::size_t> rows);

double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs(const Matrix& a);

}  // namespace roblev
