#include "gpw/algebra.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "gpw/errors.hpp"

namespace gpw {

Element::Element(GroupoidPtr g) : groupoid_(std::move(g)) {
  if (!groupoid_) throw GroupoidMismatch("element needs a groupoid");
  coeffs_.assign(groupoid_->size(), Complex{});
}

Element::Element(GroupoidPtr g, std::vector<Complex> coeffs)
    : groupoid_(std::move(g)), coeffs_(std::move(coeffs)) {
  if (!groupoid_) throw GroupoidMismatch("element needs a groupoid");
  if (coeffs_.size() != groupoid_->size()) {
    throw GroupoidMismatch(fmt::format("{} coefficients for a groupoid with {} arrows",
                                       coeffs_.size(), groupoid_->size()));
  }
}

Element Element::delta(GroupoidPtr g, ArrowId a) {
  Element out(std::move(g));
  out.groupoid().require_arrow(a);
  out.coeffs_[a] = 1.0;
  return out;
}

Element Element::unit(GroupoidPtr g) {
  Element out(std::move(g));
  for (ArrowId u : out.groupoid().units()) out.coeffs_[u] = 1.0;
  return out;
}

Complex Element::at(ArrowId a) const {
  groupoid_->require_arrow(a);
  return coeffs_[a];
}

Element Element::adjoint() const {
  Element out(groupoid_);
  for (ArrowId a = 0; a < coeffs_.size(); ++a) {
    out.coeffs_[a] = std::conj(coeffs_[groupoid_->inverse(a)]);
  }
  return out;
}

bool Element::is_self_adjoint(double tol) const {
  return max_abs_diff(*this, adjoint()) <= tol;
}

std::vector<ArrowId> Element::support() const {
  std::vector<ArrowId> out;
  for (ArrowId a = 0; a < coeffs_.size(); ++a) {
    if (coeffs_[a] != Complex{}) out.push_back(a);
  }
  return out;
}

Element& Element::operator+=(const Element& other) {
  require_same_groupoid(*groupoid_, *other.groupoid_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Element& Element::operator-=(const Element& other) {
  require_same_groupoid(*groupoid_, *other.groupoid_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Element& Element::operator*=(Complex s) {
  for (auto& z : coeffs_) z *= s;
  return *this;
}

bool same_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  return &a == &b || a == b;
}

void require_same_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  if (!same_groupoid(a, b)) {
    throw GroupoidMismatch(fmt::format(
        "operands live on different groupoids ({} and {} arrows)", a.size(), b.size()));
  }
}

Element convolve(const Element& f, const Element& h) {
  require_same_groupoid(f.groupoid(), h.groupoid());
  const FiniteGroupoid& g = f.groupoid();
  Element out(f.groupoid_ptr());
  // Every factorization g1 g2 has g1 in G_{r(g2)}.
  for (ArrowId g2 = 0; g2 < g.size(); ++g2) {
    const Complex h2 = h[g2];
    if (h2 == Complex{}) continue;
    for (ArrowId g1 : g.source_fiber(g.range(g2))) {
      out[g.tables().product(g1, g2)] += f[g1] * h2;
    }
  }
  return out;
}

double max_abs_diff(const Element& f, const Element& h) {
  require_same_groupoid(f.groupoid(), h.groupoid());
  double out = 0.0;
  for (ArrowId a = 0; a < f.coeffs().size(); ++a) out = std::max(out, std::abs(f[a] - h[a]));
  return out;
}

}  // namespace gpw
