#include "gpw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include <fmt/format.h>

#include "gpw/errors.hpp"

namespace gpw {

namespace {

double off_diagonal_mass(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return std::sqrt(s);
}

void require_hermitian(const ComplexMatrix& a) {
  if (!a.square()) {
    throw DimensionMismatch(fmt::format("matrix is {}x{}, not square", a.rows(), a.cols()));
  }
  if (!a.all_finite()) throw NotHermitian("matrix has non-finite entries");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i; j < a.cols(); ++j) {
      worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
    }
  }
  if (worst > kHermitianTolerance) {
    throw NotHermitian(fmt::format("||A - A^dagger||_max = {:.3e} exceeds {:.0e}", worst,
                                   kHermitianTolerance));
  }
}

// Diagonalizes a (already Hermitian-checked) matrix in place. When `vectors`
// is given it accumulates the rotations.
void jacobi(ComplexMatrix& a, ComplexMatrix* vectors, const JacobiOptions& opts) {
  const std::size_t n = a.rows();
  // Symmetrize so the off-diagonal bookkeeping below is exact.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  const double threshold = opts.rel_tol * a.frobenius_norm();

  for (int sweep = 0;; ++sweep) {
    const double off = off_diagonal_mass(a);
    if (off <= threshold) return;
    if (sweep == opts.max_sweeps) {
      throw NoConvergence(fmt::format(
          "Jacobi: off-diagonal mass {:.3e} still above {:.3e} after {} sweeps", off, threshold,
          opts.max_sweeps));
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;
        const Complex phase = apq / g;
        const Complex phase_bar = std::conj(phase);

        // A <- A V with V = [[c, s], [-s conj(e), c conj(e)]] on (p, q).
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * phase_bar * akq;
          a(k, q) = s * akp + c * phase_bar * akq;
        }
        // A <- V^dagger A.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        if (vectors != nullptr) {
          ComplexMatrix& v = *vectors;
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = v(k, p);
            const Complex vkq = v(k, q);
            v(k, p) = c * vkp - s * phase_bar * vkq;
            v(k, q) = s * vkp + c * phase_bar * vkq;
          }
        }
      }
    }
  }
}

std::vector<double> sorted_diagonal(const ComplexMatrix& a) {
  std::vector<double> values(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) values[i] = a(i, i).real();
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, JacobiOptions opts) {
  require_hermitian(a);
  ComplexMatrix work = a;
  jacobi(work, nullptr, opts);
  return sorted_diagonal(work);
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& a, JacobiOptions opts) {
  require_hermitian(a);
  ComplexMatrix work = a;
  ComplexMatrix vectors = ComplexMatrix::identity(a.rows());
  jacobi(work, &vectors, opts);

  const std::size_t n = a.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return work(i, i).real() < work(j, j).real();
  });
  EigenSystem out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t col = 0; col < n; ++col) {
    out.values[col] = work(order[col], order[col]).real();
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, col) = vectors(k, order[col]);
  }
  return out;
}

ComplexMatrix gram(const ComplexMatrix& a) {
  const std::size_t n = a.cols();
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < a.rows(); ++k) s += std::conj(a(k, i)) * a(k, j);
      g(i, j) = s;
      g(j, i) = std::conj(s);
    }
    g(i, i) = g(i, i).real();
  }
  return g;
}

double spectral_norm(const ComplexMatrix& a, JacobiOptions opts) {
  if (!a.all_finite()) throw NotHermitian("matrix has non-finite entries");
  const ComplexMatrix h = a.rows() < a.cols() ? gram(a.adjoint()) : gram(a);
  ComplexMatrix work = h;
  jacobi(work, nullptr, opts);
  const std::vector<double> values = sorted_diagonal(work);
  return std::sqrt(std::max(0.0, values.back()));
}

double min_singular_value(const ComplexMatrix& a, JacobiOptions opts) {
  if (!a.square()) {
    throw DimensionMismatch(fmt::format("min_singular_value needs a square matrix, got {}x{}",
                                        a.rows(), a.cols()));
  }
  if (!a.all_finite()) throw NotHermitian("matrix has non-finite entries");
  const std::size_t n = a.rows();
  ComplexMatrix dilation(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      dilation(i, n + j) = a(i, j);
      dilation(n + j, i) = std::conj(a(i, j));
    }
  }
  jacobi(dilation, nullptr, opts);
  const std::vector<double> values = sorted_diagonal(dilation);
  // values[n-1] = -sigma_min and values[n] = +sigma_min.
  return std::max(0.0, 0.5 * (values[n] - values[n - 1]));
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  if (!a.square()) {
    throw DimensionMismatch(fmt::format("inverse of a {}x{} matrix", a.rows(), a.cols()));
  }
  const std::size_t n = a.rows();
  ComplexMatrix lu = a;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) pivot = r;
    }
    if (lu(pivot, col) == Complex{}) {
      throw SingularMatrix(fmt::format("zero pivot in column {}", col));
    }
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(lu(pivot, k), lu(col, k));
        std::swap(inv(pivot, k), inv(col, k));
      }
    }
    const Complex d = lu(col, col);
    for (std::size_t k = 0; k < n; ++k) {
      lu(col, k) /= d;
      inv(col, k) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex factor = lu(r, col);
      if (factor == Complex{}) continue;
      for (std::size_t k = 0; k < n; ++k) {
        lu(r, k) -= factor * lu(col, k);
        inv(r, k) -= factor * inv(col, k);
      }
    }
  }
  return inv;
}

}  // namespace gpw
