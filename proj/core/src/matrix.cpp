#include "roblev/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "roblev/error.hpp"

namespace roblev {

namespace {

void require_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("matrix entries must be finite");
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (!std::isfinite(fill)) throw std::invalid_argument("matrix entries must be finite");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw std::invalid_argument("matrix entry count does not match its shape");
  }
  require_finite(data_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_);
}

Matrix Matrix::identity(std::size_t order) {
  Matrix m(order, order);
  for (std::size_t i = 0; i < order; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  require_finite(diag);
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
  Matrix out(rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols.size(); ++k) out(i, k) = (*this)(i, cols[k]);
  return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix out(rows.size(), cols_);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    auto src = row(rows[k]);
    std::copy(src.begin(), src.end(), out.row(k).begin());
  }
  return out;
}

Matrix Matrix::gram() const {
  Matrix g(cols_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    auto r = row(i);
    for (std::size_t a = 0; a < cols_; ++a) {
      const double ra = r[a];
      for (std::size_t b = 0; b <= a; ++b) g(a, b) += ra * r[b];
    }
  }
  for (std::size_t a = 0; a < cols_; ++a)
    for (std::size_t b = 0; b < a; ++b) g(b, a) = g(a, b);
  return g;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

Vector operator*(const Matrix& a, std::span<const double> v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
  Vector out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) s += r[j] * v[j];
    out[i] = s;
  }
  return out;
}

CholeskyResult try_cholesky(const Matrix& a, double tol) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw std::invalid_argument("cholesky requires a non-empty square matrix");
  }
  if (!(tol >= 0.0)) throw std::invalid_argument("cholesky tolerance must be >= 0");
  const std::size_t n = a.rows();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, a(i, i));
  const double threshold = tol * max_diag;

  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = a(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (!(pivot > threshold) || pivot <= 0.0) return RankDeficiency{j, pivot};
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  Matrix sym(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) sym(i, j) = sym(j, i) = a(i, j);
  return SymmetricPosDef(std::move(sym), std::move(l));
}

SymmetricPosDef cholesky(const Matrix& a, double tol) {
  auto result = try_cholesky(a, tol);
  if (auto* bad = std::get_if<RankDeficiency>(&result)) {
    throw DesignError("matrix is rank deficient at column " + std::to_string(bad->column + 1),
                      bad->column);
  }
  return std::get<SymmetricPosDef>(std::move(result));
}

namespace {

Vector forward_solve(const Matrix& l, std::span<const double> v) {
  const std::size_t n = l.rows();
  Vector z(v.begin(), v.end());
  for (std::size_t i = 0; i < n; ++i) {
    double s = z[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * z[k];
    z[i] = s / l(i, i);
  }
  return z;
}

}  // namespace

double quad_form(const SymmetricPosDef& spd, std::span<const double> v) {
  if (v.size() != spd.order()) throw std::invalid_argument("quad_form length mismatch");
  const Vector z = forward_solve(spd.lower(), v);
  double s = 0.0;
  for (double zi : z) s += zi * zi;
  return s;
}

Vector solve(const SymmetricPosDef& spd, std::span<const double> v) {
  if (v.size() != spd.order()) throw std::invalid_argument("solve length mismatch");
  const Matrix& l = spd.lower();
  Vector z = forward_solve(l, v);
  for (std::size_t ii = z.size(); ii-- > 0;) {
    double s = z[ii];
    for (std::size_t k = ii + 1; k < z.size(); ++k) s -= l(k, ii) * z[k];
    z[ii] = s / l(ii, ii);
  }
  return z;
}

double log_det(const SymmetricPosDef& spd) {
  double s = 0.0;
  for (std::size_t i = 0; i < spd.order(); ++i) s += std::log(spd.lower()(i, i));
  return 2.0 * s;
}

Moments weighted_moments(const Matrix& x, std::span<const double> w) {
  if (w.size() != x.rows()) throw std::invalid_argument("weight vector length mismatch");
  double total = 0.0;
  for (double wi : w) {
    if (wi != 0.0 && wi != 1.0) throw std::invalid_argument("weights must be 0 or 1");
    total += wi;
  }
  if (total < 2.0) throw std::invalid_argument("fewer than two active weights");

  const std::size_t p = x.cols();
  Vector mean(p, 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    if (w[i] == 0.0) continue;
    auto r = x.row(i);
    for (std::size_t j = 0; j < p; ++j) mean[j] += r[j];
  }
  for (double& m : mean) m /= total;

  Matrix cov(p, p);
  Vector d(p);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    if (w[i] == 0.0) continue;
    auto r = x.row(i);
    for (std::size_t j = 0; j < p; ++j) d[j] = r[j] - mean[j];
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = 0; b <= a; ++b) cov(a, b) += d[a] * d[b];
  }
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b <= a; ++b) {
      cov(a, b) /= (total - 1.0);
      cov(b, a) = cov(a, b);
    }
  return {std::move(mean), std::move(cov)};
}

Moments sample_moments(const Matrix& x) {
  const Vector ones(x.rows(), 1.0);
  return weighted_moments(x, ones);
}

Moments subset_moments(const Matrix& x, std::span<const std::size_t> rows) {
  Vector w(x.rows(), 0.0);
  for (std::size_t r : rows) {
    if (r >= x.rows()) throw std::out_of_range("subset row out of range");
    w[r] = 1.0;
  }
  return weighted_moments(x, w);
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff shape mismatch");
  }
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace roblev
