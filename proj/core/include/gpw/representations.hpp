#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpw/algebra.hpp"
#include "gpw/groupoid.hpp"
#include "gpw/matrix.hpp"

namespace gpw {

// Label of one basis vector of a represented Hilbert space.
struct BasisLabel {
  enum class Kind : std::uint8_t { kArrow, kTensor, kQuotient };

  Kind kind = Kind::kArrow;
  std::uint32_t first = 0;   // arrow id, or quotient index
  std::uint32_t second = 0;  // tensor factor index (kTensor only)

  static BasisLabel arrow(ArrowId a) { return {Kind::kArrow, a, 0}; }
  static BasisLabel tensor(ArrowId a, std::uint32_t k) { return {Kind::kTensor, a, k}; }
  static BasisLabel quotient(std::uint32_t i) { return {Kind::kQuotient, i, 0}; }

  std::string to_string() const;
  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

// A matrix together with the ordered basis it is written in. Columns are
// inputs, rows are outputs: entry (i, j) = <T e_j, e_i>.
struct MatrixRep {
  std::vector<BasisLabel> basis;
  ComplexMatrix matrix;
};

// lambda_x(f) on l2(G_x), basis G_x ascending. Entry (row g2, col g1) is
// f(g2 g1^-1). Throws NotAUnit, GroupoidMismatch.
MatrixRep lambda_x(const FiniteGroupoid& g, ArrowId x, const Element& f);

// Same operator assembled from the defining action
// (lambda_x(f) xi)(g) = sum over g' g'' = g of f(g') xi(g'').
MatrixRep lambda_x_by_action(const FiniteGroupoid& g, ArrowId x, const Element& f);

// Block diagonal sum of lambda_x over all units, ascending.
MatrixRep full_regular(const FiniteGroupoid& g, const Element& f);

// Left regular representation of the isotropy group algebra on l2(G(x)):
// entry (row h2, col h1) = b(h2 h1^-1). Throws SupportOutsideIsotropy.
MatrixRep isotropy_left_regular(const FiniteGroupoid& g, ArrowId x, const Element& b);

// R_zeta on l2(G_x): (R_zeta xi)(g) = xi(g zeta). Throws NotInIsotropy.
MatrixRep translation_unitary(const FiniteGroupoid& g, ArrowId x, ArrowId zeta);

// For an arrow c with s(c) = x, r(c) = y, the permutation W: l2(G_x) -> l2(G_y),
// e_g -> e_{g c^-1}. It satisfies W lambda_x(f) W^dagger = lambda_y(f).
ComplexMatrix orbit_intertwiner(const FiniteGroupoid& g, ArrowId connecting);

// Throws SupportOutsideIsotropy unless supp(b) is inside G(x).
void require_isotropy_support(const FiniteGroupoid& g, ArrowId x, const Element& b);

}  // namespace gpw
