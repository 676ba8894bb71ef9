#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace egta {

// Dense row-major matrix. Meta-games are tiny (k <= 9), so no attempt at
// anything clever.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Matrix transposed() const;

  /// A x
  std::vector<double> times(const std::vector<double>& x) const;
  /// x^T A
  std::vector<double> left_times(const std::vector<double>& x) const;
  /// x^T A y
  double quad(const std::vector<double>& x, const std::vector<double>& y) const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace egta
