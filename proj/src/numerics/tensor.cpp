#include "mtsfuse/numerics/tensor.hpp"

#include <cmath>

#include "mtsfuse/error.hpp"

namespace mtsfuse::num {

Tensor2::Tensor2(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), v_(rows * cols, fill) {}

Tensor2::Tensor2(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  v_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, "Tensor2: ragged initializer list");
    v_.insert(v_.end(), r.begin(), r.end());
  }
}

Tensor2 Tensor2::from_row_major(std::size_t rows, std::size_t cols, std::vector<double> values) {
  require(values.size() == rows * cols, "Tensor2: ", rows, "x", cols, " needs ", rows * cols,
          " values, got ", values.size());
  Tensor2 t;
  t.rows_ = rows;
  t.cols_ = cols;
  t.v_ = std::move(values);
  return t;
}

Tensor2 Tensor2::column(std::vector<double> values) {
  const std::size_t n = values.size();
  return from_row_major(n, 1, std::move(values));
}

double& Tensor2::at(std::size_t r, std::size_t c) {
  require(r < rows_ && c < cols_, "Tensor2: index (", r, ",", c, ") out of range for ", rows_, "x",
          cols_);
  return v_[r * cols_ + c];
}

double Tensor2::at(std::size_t r, std::size_t c) const {
  require(r < rows_ && c < cols_, "Tensor2: index (", r, ",", c, ") out of range for ", rows_, "x",
          cols_);
  return v_[r * cols_ + c];
}

bool Tensor2::all_finite() const {
  for (double x : v_)
    if (!std::isfinite(x)) return false;
  return true;
}

void Tensor2::fill(double value) {
  for (double& x : v_) x = value;
}

void Tensor2::resize(std::size_t rows, std::size_t cols) {
  rows_ = rows;
  cols_ = cols;
  v_.assign(rows * cols, 0.0);
}

Tensor2& Tensor2::operator+=(const Tensor2& other) {
  require(same_shape(other), "Tensor2 +=: shape mismatch");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += other.v_[i];
  return *this;
}

Tensor2& Tensor2::operator-=(const Tensor2& other) {
  require(same_shape(other), "Tensor2 -=: shape mismatch");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= other.v_[i];
  return *this;
}

Tensor2& Tensor2::operator*=(double s) {
  for (double& x : v_) x *= s;
  return *this;
}

Tensor2 matmul(const Tensor2& a, const Tensor2& b) {
  require(a.cols() == b.rows(), "matmul: inner dimensions ", a.cols(), " vs ", b.rows());
  Tensor2 c(a.rows(), b.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Tensor2 transpose(const Tensor2& a) {
  Tensor2 t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

double dot_all(const Tensor2& a, const Tensor2& b) {
  require(a.size() == b.size(), "dot_all: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a.data()[i] * b.data()[i];
  return s;
}

double sum_all(const Tensor2& a) {
  double s = 0.0;
  for (double x : a.values()) s += x;
  return s;
}

void check_finite(const Tensor2& a, const char* what) {
  require(a.all_finite(), what, ": non-finite value");
}

}  // namespace mtsfuse::num
