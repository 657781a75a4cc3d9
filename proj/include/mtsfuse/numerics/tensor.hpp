#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace mtsfuse::num {

/// Dense row-major matrix of doubles. A column vector is an n x 1 Tensor2.
class Tensor2 {
 public:
  Tensor2() = default;
  Tensor2(std::size_t rows, std::size_t cols, double fill = 0.0);

  /// Builds from a nested brace list, e.g. {{1,2},{3,4}}.
  Tensor2(std::initializer_list<std::initializer_list<double>> rows);

  static Tensor2 from_row_major(std::size_t rows, std::size_t cols, std::vector<double> values);
  static Tensor2 column(std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return v_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return v_[r * cols_ + c]; }
  double& at(std::size_t r, std::size_t c);
  double at(std::size_t r, std::size_t c) const;

  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  std::vector<double>& values() { return v_; }
  const std::vector<double>& values() const { return v_; }

  bool same_shape(const Tensor2& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  bool all_finite() const;

  void fill(double value);
  void resize(std::size_t rows, std::size_t cols);

  Tensor2& operator+=(const Tensor2& other);
  Tensor2& operator-=(const Tensor2& other);
  Tensor2& operator*=(double s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> v_;
};

Tensor2 matmul(const Tensor2& a, const Tensor2& b);
Tensor2 transpose(const Tensor2& a);
double dot_all(const Tensor2& a, const Tensor2& b);
double sum_all(const Tensor2& a);

/// Throws if any entry is NaN or infinite; `what` names the offending value.
void check_finite(const Tensor2& a, const char* what);

}  // namespace mtsfuse::num
