#include "gpw/matrix.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "gpw/errors.hpp"

namespace gpw {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(fmt::format("{}: {}x{} vs {}x{}", op, a.rows(), a.cols(), b.rows(),
                                        b.cols()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : ComplexMatrix(rows, cols, std::vector<Complex>(rows * cols)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    throw DimensionMismatch(fmt::format("matrix dimensions must be positive, got {}x{}", rows, cols));
  }
  if (data_.size() != rows * cols) {
    throw DimensionMismatch(fmt::format("{}x{} matrix given {} entries", rows, cols, data_.size()));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::block_diagonal(std::span<const ComplexMatrix> blocks) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  ComplexMatrix m(rows, cols);
  std::size_t r0 = 0;
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i) {
      for (std::size_t j = 0; j < b.cols(); ++j) m(r0 + i, c0 + j) = b(i, j);
    }
    r0 += b.rows();
    c0 += b.cols();
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  }
  return m;
}

double ComplexMatrix::max_abs() const {
  double out = 0.0;
  for (const auto& z : data_) out = std::max(out, std::abs(z));
  return out;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "matrix sum");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "matrix difference");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch(fmt::format("matrix product: {}x{} times {}x{}", a.rows(), a.cols(),
                                        b.rows(), b.cols()));
  }
  ComplexMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
    }
  }
  return m;
}

std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size()) {
    throw DimensionMismatch(fmt::format("matrix-vector product: {}x{} times vector of length {}",
                                        a.rows(), a.cols(), v.size()));
  }
  std::vector<Complex> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  }
  return out;
}

ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double out = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    out = std::max(out, std::abs(a.data()[i] - b.data()[i]));
  }
  return out;
}

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) {
    throw DimensionMismatch(fmt::format("inner product of lengths {} and {}", u.size(), v.size()));
  }
  Complex s{};
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
  return s;
}

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace gpw
