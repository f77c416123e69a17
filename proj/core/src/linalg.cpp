#include "ppsum/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ppsum/error.hpp"

namespace ppsum {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double off_diagonal_norm(const Matrix& m) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i != j) sum += m(i, j) * m(i, j);
    }
  }
  return std::sqrt(sum);
}

namespace {

// Zeroes a(p,q) with one plane rotation; v accumulates rotations as rows.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t n = a.rows();

  for (std::size_t k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  auto vp = v.row(p);
  auto vq = v.row(q);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = vp[k];
    const double y = vq[k];
    vp[k] = c * x - s * y;
    vq[k] = s * x + c * y;
  }
}

}  // namespace

SymmetricEigen jacobi_eigen(const Matrix& symmetric, const JacobiOptions& options) {
  const std::size_t n = symmetric.rows();
  require(n == symmetric.cols(), ErrorKind::kArgument, "jacobi_eigen needs a square matrix");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      require(std::isfinite(symmetric(i, j)), ErrorKind::kArgument, "matrix holds a non-finite entry");
    }
  }

  Matrix a = symmetric;
  // Symmetrize so rounding noise in the input cannot bias the rotations.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = m;
      a(j, i) = m;
    }
  }
  Matrix v = Matrix::identity(n);

  const double initial = off_diagonal_norm(a);
  const double threshold = options.relative_tolerance * initial;
  int sweeps = 0;
  while (initial > 0.0 && off_diagonal_norm(a) > threshold && sweeps < options.max_sweeps) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    }
    ++sweeps;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  SymmetricEigen out;
  out.sweeps = sweeps;
  out.values.reserve(n);
  out.vectors = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    out.values.push_back(a(order[i], order[i]));
    std::copy_n(v.row(order[i]).begin(), n, out.vectors.row(i).begin());
  }
  return out;
}

}  // namespace ppsum
