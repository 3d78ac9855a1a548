#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace corruptlab {

/// Dense row-major matrix of doubles. Sized for the tiny spaces this library
/// works with; no blocking, no expression templates.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  /// Builds from nested rows. All rows must have equal length.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::vector<double> col(std::size_t c) const;
  std::span<const double> data() const noexcept { return data_; }

  Matrix transpose() const;
  std::vector<std::vector<double>> to_rows() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

/// Aᵀ·x without materializing the transpose.
std::vector<double> transpose_times(const Matrix& a, std::span<const double> x);

/// Kronecker product a ⊗ b.
Matrix kronecker(const Matrix& a, const Matrix& b);

/// max |a_ij - b_ij|; matrices must share a shape.
double max_abs_diff(const Matrix& a, const Matrix& b);

double dot(std::span<const double> a, std::span<const double> b);

/// LU factorization with partial pivoting of a square matrix.
///
/// `singular()` reports whether any pivot fell below `relative_tol` times the
/// largest absolute diagonal entry of the input.
class LuDecomposition {
 public:
  explicit LuDecomposition(const Matrix& a, double relative_tol = 1e-10);

  bool singular() const noexcept { return singular_; }
  double min_pivot_ratio() const noexcept { return min_pivot_ratio_; }

  /// Solves A·X = B. Requires !singular().
  Matrix solve(const Matrix& b) const;

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  bool singular_ = false;
  double min_pivot_ratio_ = 0.0;
};

}  // namespace corruptlab
