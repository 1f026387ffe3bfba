#include "gpw/representations.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "gpw/errors.hpp"

namespace gpw {

namespace {

std::vector<BasisLabel> arrow_basis(std::span<const ArrowId> arrows) {
  std::vector<BasisLabel> out;
  out.reserve(arrows.size());
  for (ArrowId a : arrows) out.push_back(BasisLabel::arrow(a));
  return out;
}

std::size_t index_in(std::span<const ArrowId> sorted, ArrowId a) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), a) -
                                  sorted.begin());
}

void require_in_isotropy(const FiniteGroupoid& g, ArrowId x, ArrowId zeta) {
  g.require_unit(x);
  g.require_arrow(zeta);
  if (g.source(zeta) != x || g.range(zeta) != x) {
    throw NotInIsotropy(fmt::format("arrow {} is not in the isotropy group of unit {}", zeta, x));
  }
}

}  // namespace

std::string BasisLabel::to_string() const {
  switch (kind) {
    case Kind::kArrow:
      return fmt::format("{}", first);
    case Kind::kTensor:
      return fmt::format("{}x{}", first, second);
    case Kind::kQuotient:
      return fmt::format("q{}", first);
  }
  return {};
}

MatrixRep lambda_x(const FiniteGroupoid& g, ArrowId x, const Element& f) {
  require_same_groupoid(g, f.groupoid());
  const auto fiber = g.source_fiber(x);
  const std::size_t n = fiber.size();
  ComplexMatrix m(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    const ArrowId inv = g.inverse(fiber[col]);
    for (std::size_t row = 0; row < n; ++row) {
      // s(g2) = x = r(g1^-1), so the product is always defined.
      m(row, col) = f[g.tables().product(fiber[row], inv)];
    }
  }
  return {arrow_basis(fiber), std::move(m)};
}

MatrixRep lambda_x_by_action(const FiniteGroupoid& g, ArrowId x, const Element& f) {
  require_same_groupoid(g, f.groupoid());
  const auto fiber = g.source_fiber(x);
  const std::size_t n = fiber.size();
  ComplexMatrix m(n, n);
  // Column g'' is lambda_x(f) e_{g''}; it collects f(g') at row g' g''.
  for (std::size_t col = 0; col < n; ++col) {
    const ArrowId inner_arrow = fiber[col];
    for (ArrowId outer = 0; outer < g.size(); ++outer) {
      if (auto prod = g.product(outer, inner_arrow)) {
        m(g.position_in_source_fiber(*prod), col) += f[outer];
      }
    }
  }
  return {arrow_basis(fiber), std::move(m)};
}

MatrixRep full_regular(const FiniteGroupoid& g, const Element& f) {
  require_same_groupoid(g, f.groupoid());
  std::vector<ComplexMatrix> blocks;
  std::vector<BasisLabel> basis;
  for (ArrowId x : g.units()) {
    MatrixRep block = lambda_x(g, x, f);
    basis.insert(basis.end(), block.basis.begin(), block.basis.end());
    blocks.push_back(std::move(block.matrix));
  }
  return {std::move(basis), ComplexMatrix::block_diagonal(blocks)};
}

void require_isotropy_support(const FiniteGroupoid& g, ArrowId x, const Element& b) {
  require_same_groupoid(g, b.groupoid());
  g.require_unit(x);
  for (ArrowId a : b.support()) {
    if (g.source(a) != x || g.range(a) != x) {
      throw SupportOutsideIsotropy(fmt::format(
          "coefficient at arrow {} lies outside the isotropy group of unit {}", a, x));
    }
  }
}

MatrixRep isotropy_left_regular(const FiniteGroupoid& g, ArrowId x, const Element& b) {
  require_isotropy_support(g, x, b);
  const auto group = g.isotropy(x);
  const std::size_t n = group.size();
  ComplexMatrix m(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    const ArrowId inv = g.inverse(group[col]);
    for (std::size_t row = 0; row < n; ++row) {
      m(row, col) = b[g.tables().product(group[row], inv)];
    }
  }
  return {arrow_basis(group), std::move(m)};
}

MatrixRep translation_unitary(const FiniteGroupoid& g, ArrowId x, ArrowId zeta) {
  require_in_isotropy(g, x, zeta);
  const auto fiber = g.source_fiber(x);
  const std::size_t n = fiber.size();
  ComplexMatrix m(n, n);
  for (std::size_t row = 0; row < n; ++row) {
    const ArrowId shifted = g.tables().product(fiber[row], zeta);
    m(row, index_in(fiber, shifted)) = 1.0;
  }
  return {arrow_basis(fiber), std::move(m)};
}

ComplexMatrix orbit_intertwiner(const FiniteGroupoid& g, ArrowId connecting) {
  const ArrowId x = g.source(connecting);
  const ArrowId y = g.range(connecting);
  const ArrowId back = g.inverse(connecting);
  const auto from = g.source_fiber(x);
  const auto to = g.source_fiber(y);
  ComplexMatrix w(to.size(), from.size());
  for (std::size_t col = 0; col < from.size(); ++col) {
    const ArrowId image = g.tables().product(from[col], back);
    w(index_in(to, image), col) = 1.0;
  }
  return w;
}

}  // namespace gpw
