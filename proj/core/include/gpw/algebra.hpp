#pragma once

#include <span>
#include <vector>

#include "gpw/groupoid.hpp"
#include "gpw/matrix.hpp"

namespace gpw {

// A finitely supported complex function on the arrows of a groupoid, i.e. an
// element of C_c(G), which is all of C*(G) for finite G. Coefficients are
// stored densely, indexed by arrow id.
class Element {
 public:
  explicit Element(GroupoidPtr g);
  Element(GroupoidPtr g, std::vector<Complex> coeffs);

  static Element zero(GroupoidPtr g) { return Element(std::move(g)); }
  // Point mass at arrow a. Throws UnknownArrow.
  static Element delta(GroupoidPtr g, ArrowId a);
  // Sum of the point masses at the units.
  static Element unit(GroupoidPtr g);

  const FiniteGroupoid& groupoid() const { return *groupoid_; }
  const GroupoidPtr& groupoid_ptr() const { return groupoid_; }
  std::span<const Complex> coeffs() const { return coeffs_; }

  Complex operator[](ArrowId a) const { return coeffs_[a]; }
  Complex& operator[](ArrowId a) { return coeffs_[a]; }
  Complex at(ArrowId a) const;

  // f*(g) = conj f(g^-1).
  Element adjoint() const;
  bool is_self_adjoint(double tol = 0.0) const;
  std::vector<ArrowId> support() const;

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(Complex s);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, Complex s) { return a *= s; }
  friend Element operator*(Complex s, Element a) { return a *= s; }

 private:
  GroupoidPtr groupoid_;
  std::vector<Complex> coeffs_;
};

// Pointer identity, falling back to structural equality.
bool same_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b);
void require_same_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b);

// (f*h)(g) = sum over g1 g2 = g of f(g1) h(g2). Throws GroupoidMismatch.
Element convolve(const Element& f, const Element& h);
inline Element operator*(const Element& f, const Element& h) { return convolve(f, h); }

inline Element adjoint(const Element& f) { return f.adjoint(); }

// max_g |f(g) - h(g)|.
double max_abs_diff(const Element& f, const Element& h);

}  // namespace gpw
