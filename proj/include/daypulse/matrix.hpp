#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace daypulse {

// Dense row-major matrix, just enough for count tables and distributions.
template <typename T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T* operator[](std::size_t r) { return data_.data() + r * cols_; }
  const T* operator[](std::size_t r) const { return data_.data() + r * cols_; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_, cols_;
  std::vector<T> data_;
};

using DMatrix = Matrix<double>;
using IMatrix = Matrix<int32_t>;

}  // namespace daypulse
