#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ppsum {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<const double> data() const noexcept { return data_; }

  static Matrix identity(std::size_t n);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct SymmetricEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // row i is the unit eigenvector of values[i]
  int sweeps = 0;
};

struct JacobiOptions {
  double relative_tolerance = 1e-10;  // stop when off-diagonal norm < tol * initial off-diagonal norm
  int max_sweeps = 100;
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Eigenpairs are
/// sorted by descending eigenvalue (ties keep their diagonal order).
SymmetricEigen jacobi_eigen(const Matrix& symmetric, const JacobiOptions& options = {});

/// Frobenius norm of the strictly off-diagonal part.
double off_diagonal_norm(const Matrix& m);

}  // namespace ppsum
