#pragma once

// Reference computations used only by the tests. They share no code with the
// library beyond the data types: eigenvalues come from Householder reduction
// and Sturm-sequence bisection, products from brute force over all arrow pairs.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "gpw/algebra.hpp"
#include "gpw/groupoid.hpp"
#include "gpw/induction.hpp"
#include "gpw/matrix.hpp"

namespace oracle {

using gpw::ArrowId;
using gpw::Complex;
using gpw::ComplexMatrix;

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // |subdiagonal|
};

// Unitary similarity to tridiagonal form by Householder reflections. The
// complex subdiagonal can be made real by a diagonal phase, so only its
// modulus is kept.
inline Tridiagonal householder(ComplexMatrix a) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(a(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const Complex x0 = a(k + 1, k);
    const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    std::vector<Complex> v(n, 0.0);
    v[k + 1] = x0 + phase * xnorm;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = a(i, k);
    double vnorm = 0.0;
    for (const Complex& c : v) vnorm += std::norm(c);
    vnorm = std::sqrt(vnorm);
    for (Complex& c : v) c /= vnorm;
    // A <- H A H with H = I - 2 v v^H.
    std::vector<Complex> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += a(i, j) * v[j];
      w[i] = s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a(i, j) -= 2.0 * w[i] * std::conj(v[j]);
    }
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += std::conj(v[i]) * a(i, j);
      w[j] = s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a(i, j) -= 2.0 * v[i] * w[j];
    }
  }
  Tridiagonal t;
  for (std::size_t i = 0; i < n; ++i) t.diag.push_back(a(i, i).real());
  for (std::size_t i = 0; i + 1 < n; ++i) t.off.push_back(std::abs(a(i + 1, i)));
  return t;
}

// Number of eigenvalues strictly below mu.
inline std::size_t sturm_count(const Tridiagonal& t, double mu) {
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    const double b2 = i == 0 ? 0.0 : t.off[i - 1] * t.off[i - 1];
    q = t.diag[i] - mu - (i == 0 ? 0.0 : b2 / q);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

// Ascending eigenvalues of a Hermitian matrix (upper triangle ignored).
inline std::vector<double> eigenvalues(const ComplexMatrix& a) {
  const Tridiagonal t = householder(a);
  const std::size_t n = t.diag.size();
  double lo = 0.0;
  double hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? t.off[i - 1] : 0.0) + (i + 1 < n ? t.off[i] : 0.0);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  const double pad = 1e-12 * std::max(1.0, hi - lo);
  lo -= pad;
  hi += pad;
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Smallest mu with more than k eigenvalues below it.
    double a_lo = lo;
    double a_hi = hi;
    for (int it = 0; it < 200 && a_hi - a_lo > 1e-15 * std::max(1.0, std::abs(a_hi)); ++it) {
      const double mid = 0.5 * (a_lo + a_hi);
      if (sturm_count(t, mid) > k) {
        a_hi = mid;
      } else {
        a_lo = mid;
      }
    }
    out[k] = 0.5 * (a_lo + a_hi);
  }
  return out;
}

// Singular values are the non-negative eigenvalues of [[0, A], [A^H, 0]],
// which keeps small singular values accurate.
inline std::vector<double> dilation_eigenvalues(const ComplexMatrix& a) {
  const std::size_t r = a.rows();
  const std::size_t c = a.cols();
  ComplexMatrix d(r + c, r + c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      d(i, r + j) = a(i, j);
      d(r + j, i) = std::conj(a(i, j));
    }
  }
  return eigenvalues(d);
}

inline double spectral_norm(const ComplexMatrix& a) {
  return std::max(0.0, dilation_eigenvalues(a).back());
}

inline double min_singular_value(const ComplexMatrix& a) {
  return std::max(0.0, dilation_eigenvalues(a)[a.rows()]);
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  }
  return m;
}

// (f * h)(g) summed over every composable pair of arrows.
inline std::vector<Complex> convolve(const gpw::FiniteGroupoid& g, std::span<const Complex> f,
                                     std::span<const Complex> h) {
  std::vector<Complex> out(g.size(), 0.0);
  for (ArrowId a = 0; a < g.size(); ++a) {
    for (ArrowId b = 0; b < g.size(); ++b) {
      if (g.source(a) != g.range(b)) continue;
      out[g.compose(a, b)] += f[a] * h[b];
    }
  }
  return out;
}

// The sorted source fiber, found by scanning all arrows.
inline std::vector<ArrowId> fiber(const gpw::FiniteGroupoid& g, ArrowId x) {
  std::vector<ArrowId> out;
  for (ArrowId a = 0; a < g.size(); ++a) {
    if (g.source(a) == x) out.push_back(a);
  }
  return out;
}

// lambda_x(f) applied to each basis vector of l2(G_x) by the defining sum
// (lambda_x(f) xi)(c) = sum over a b = c of f(a) xi(b).
inline ComplexMatrix lambda(const gpw::FiniteGroupoid& g, ArrowId x, std::span<const Complex> f) {
  const auto basis = fiber(g, x);
  const std::size_t n = basis.size();
  ComplexMatrix m(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<Complex> image(g.size(), 0.0);
    for (ArrowId a = 0; a < g.size(); ++a) {
      if (g.source(a) == g.range(basis[col])) image[g.compose(a, basis[col])] += f[a];
    }
    for (std::size_t row = 0; row < n; ++row) m(row, col) = image[basis[row]];
  }
  return m;
}

// Direct sum of lambda over units in ascending order.
inline ComplexMatrix full_regular(const gpw::FiniteGroupoid& g, std::span<const Complex> f) {
  std::vector<ComplexMatrix> blocks;
  std::size_t dim = 0;
  for (ArrowId u = 0; u < g.size(); ++u) {
    if (!g.is_unit(u)) continue;
    blocks.push_back(lambda(g, u, f));
    dim += blocks.back().rows();
  }
  ComplexMatrix m(dim, dim);
  std::size_t at = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i) {
      for (std::size_t j = 0; j < b.cols(); ++j) m(at + i, at + j) = b(i, j);
    }
    at += b.rows();
  }
  return m;
}

// Both sides of <phi, a psi>_*(zeta) = <lambda_x(a) R_zeta psi, phi>, each
// evaluated straight from its defining sum.
inline std::pair<Complex, Complex> main_identity_sides(const gpw::FiniteGroupoid& g,
                                                       const gpw::Element& a,
                                                       const gpw::ModuleVector& phi,
                                                       const gpw::ModuleVector& psi, ArrowId zeta) {
  std::vector<Complex> phi_full(g.size(), 0.0);
  std::vector<Complex> psi_full(g.size(), 0.0);
  for (ArrowId c = 0; c < g.size(); ++c) {
    if (g.source(c) == phi.base()) {
      phi_full[c] = phi.value(c);
      psi_full[c] = psi.value(c);
    }
  }
  const auto a_psi = convolve(g, a.coeffs(), psi_full);
  Complex left = 0.0;
  for (ArrowId c1 = 0; c1 < g.size(); ++c1) {
    for (ArrowId c2 = 0; c2 < g.size(); ++c2) {
      if (g.source(c1) == g.range(c2) && g.compose(c1, c2) == zeta) {
        left += std::conj(phi_full[g.inverse(c1)]) * a_psi[c2];
      }
    }
  }
  std::vector<Complex> shifted(g.size(), 0.0);  // (R_zeta psi)(c) = psi(c zeta)
  for (ArrowId c = 0; c < g.size(); ++c) {
    if (g.source(c) == phi.base()) shifted[c] = psi_full[g.compose(c, zeta)];
  }
  const auto moved = convolve(g, a.coeffs(), shifted);
  Complex right = 0.0;
  for (ArrowId c = 0; c < g.size(); ++c) right += moved[c] * std::conj(phi_full[c]);
  return {left, right};
}

}  // namespace oracle
