#ifndef UCFLM_MATRIX_HPP
#define UCFLM_MATRIX_HPP

#include <cstddef>
#include <vector>

namespace ucflm {

// Dense row-major matrix of doubles. Deliberately minimal: the network and
// count kernels below want explicit loops, not an expression library.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(size_t rows, size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  double* operator[](size_t r) { return data_.data() + r * cols_; }
  const double* operator[](size_t r) const { return data_.data() + r * cols_; }

  double& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  double operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  size_t size() const { return data_.size(); }

  void fill(double v) { data_.assign(data_.size(), v); }

  bool same_shape(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  size_t rows_, cols_;
  std::vector<double> data_;
};

}  // namespace ucflm

#endif  // UCFLM_MATRIX_HPP
