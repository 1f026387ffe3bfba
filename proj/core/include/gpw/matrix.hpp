#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gpw {

using Complex = std::complex<double>;

// Dense row-major complex matrix with positive dimensions.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix block_diagonal(std::span<const ComplexMatrix> blocks);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Complex> data() const { return data_; }

  ComplexMatrix adjoint() const;
  double max_abs() const;
  double frobenius_norm() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> v);

ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b);

// max_ij |a_ij - b_ij|; throws DimensionMismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// <u, v> = sum_i u_i conj(v_i), linear in the first slot.
Complex inner(std::span<const Complex> u, std::span<const Complex> v);
double norm2(std::span<const Complex> v);

}  // namespace gpw
