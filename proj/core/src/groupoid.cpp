#include "gpw/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include <fmt/format.h>

#include "gpw/errors.hpp"

namespace gpw {

namespace {

void check_shape(const GroupoidTables& t) {
  const std::size_t m = t.size();
  if (m == 0) throw MalformedSpec("groupoid has no arrows");
  if (m >= kNoArrow) throw MalformedSpec("too many arrows");
  if (t.range.size() != m || t.is_unit.size() != m || t.inverse.size() != m ||
      t.compose.size() != m * m) {
    throw MalformedSpec(fmt::format(
        "table sizes disagree: {} sources, {} ranges, {} unit flags, {} inverses, "
        "{} composition entries",
        m, t.range.size(), t.is_unit.size(), t.inverse.size(), t.compose.size()));
  }
}

[[noreturn]] void violation(std::string_view law, const std::string& detail) {
  throw AxiomViolation(fmt::format("{}: {}", law, detail));
}

void check_axioms(const GroupoidTables& t) {
  const auto m = static_cast<ArrowId>(t.size());
  auto in_range = [m](ArrowId a) { return a < m; };

  for (ArrowId a = 0; a < m; ++a) {
    if (!in_range(t.source[a]) || !in_range(t.range[a])) {
      violation("source/range", fmt::format("arrow {} has source {} and range {} outside 0..{}",
                                            a, t.source[a], t.range[a], m - 1));
    }
    if (!t.is_unit[t.source[a]] || !t.is_unit[t.range[a]]) {
      violation("source/range",
                fmt::format("arrow {} has source {} and range {}, which must both be units", a,
                            t.source[a], t.range[a]));
    }
    if (t.is_unit[a] && (t.source[a] != a || t.range[a] != a)) {
      violation("unit law", fmt::format("unit {} must satisfy s(u) = r(u) = u, got s = {}, r = {}",
                                        a, t.source[a], t.range[a]));
    }
  }

  for (ArrowId a = 0; a < m; ++a) {
    for (ArrowId b = 0; b < m; ++b) {
      const ArrowId ab = t.product(a, b);
      const bool composable = t.source[a] == t.range[b];
      if (composable && ab == kNoArrow) {
        violation("definedness", fmt::format("product {}*{} missing although s({}) = r({})", a, b,
                                             a, b));
      }
      if (!composable && ab != kNoArrow) {
        violation("definedness",
                  fmt::format("product {}*{} = {} defined although s({}) = {} != r({}) = {}", a, b,
                              ab, a, t.source[a], b, t.range[b]));
      }
      if (!composable) continue;
      if (!in_range(ab)) {
        violation("closure", fmt::format("product {}*{} = {} is not an arrow", a, b, ab));
      }
      if (t.source[ab] != t.source[b] || t.range[ab] != t.range[a]) {
        violation("source/range of products",
                  fmt::format("product {}*{} = {} has (s, r) = ({}, {}), expected ({}, {})", a, b,
                              ab, t.source[ab], t.range[ab], t.source[b], t.range[a]));
      }
    }
  }

  for (ArrowId a = 0; a < m; ++a) {
    const ArrowId left = t.product(t.range[a], a);
    const ArrowId right = t.product(a, t.source[a]);
    if (left != a) {
      violation("unit law", fmt::format("r({})*{} = {}*{} = {}, expected {}", a, a, t.range[a], a,
                                        left, a));
    }
    if (right != a) {
      violation("unit law", fmt::format("{}*s({}) = {}*{} = {}, expected {}", a, a, a,
                                        t.source[a], right, a));
    }
  }

  for (ArrowId a = 0; a < m; ++a) {
    const ArrowId inv = t.inverse[a];
    if (!in_range(inv)) {
      violation("inverse law", fmt::format("inverse of {} is {}, not an arrow", a, inv));
    }
    if (t.inverse[inv] != a) {
      violation("inverse law", fmt::format("inverse of inverse of {} is {}", a, t.inverse[inv]));
    }
    if (t.source[inv] != t.range[a] || t.range[inv] != t.source[a]) {
      violation("inverse law", fmt::format("inverse {} of {} does not swap source and range", inv,
                                           a));
    }
    if (t.product(a, inv) != t.range[a]) {
      violation("inverse law", fmt::format("{}*{} = {}, expected r({}) = {}", a, inv,
                                           t.product(a, inv), a, t.range[a]));
    }
    if (t.product(inv, a) != t.source[a]) {
      violation("inverse law", fmt::format("{}*{} = {}, expected s({}) = {}", inv, a,
                                           t.product(inv, a), a, t.source[a]));
    }
  }

  // Arrows grouped by range so composable triples are enumerated directly.
  std::vector<std::vector<ArrowId>> by_range(m);
  for (ArrowId a = 0; a < m; ++a) by_range[t.range[a]].push_back(a);

  for (ArrowId a = 0; a < m; ++a) {
    for (ArrowId b : by_range[t.source[a]]) {
      const ArrowId ab = t.product(a, b);
      for (ArrowId c : by_range[t.source[b]]) {
        const ArrowId lhs = t.product(ab, c);
        const ArrowId rhs = t.product(a, t.product(b, c));
        if (lhs != rhs) {
          violation("associativity", fmt::format("({}*{})*{} = {} but {}*({}*{}) = {}", a, b, c,
                                                 lhs, a, b, c, rhs));
        }
      }
    }
  }
}

}  // namespace

FiniteGroupoid FiniteGroupoid::from_tables(GroupoidTables tables) {
  check_shape(tables);
  check_axioms(tables);
  return FiniteGroupoid(std::move(tables));
}

FiniteGroupoid::FiniteGroupoid(GroupoidTables tables) : tables_(std::move(tables)) {
  const std::size_t m = tables_.size();
  source_fibers_.resize(m);
  range_fibers_.resize(m);
  isotropy_.resize(m);
  source_pos_.resize(m);
  for (ArrowId a = 0; a < m; ++a) {
    if (tables_.is_unit[a]) units_.push_back(a);
    auto& fiber = source_fibers_[tables_.source[a]];
    source_pos_[a] = fiber.size();
    fiber.push_back(a);
    range_fibers_[tables_.range[a]].push_back(a);
    if (tables_.source[a] == tables_.range[a]) isotropy_[tables_.source[a]].push_back(a);
  }
}

void FiniteGroupoid::require_arrow(ArrowId a) const {
  if (a >= size()) {
    throw UnknownArrow(fmt::format("arrow {} does not exist (groupoid has {} arrows)", a, size()));
  }
}

void FiniteGroupoid::require_unit(ArrowId x) const {
  if (x >= size() || !tables_.is_unit[x]) throw NotAUnit(fmt::format("{} is not a unit", x));
}

bool FiniteGroupoid::is_unit(ArrowId a) const {
  require_arrow(a);
  return tables_.is_unit[a] != 0;
}

ArrowId FiniteGroupoid::source(ArrowId a) const {
  require_arrow(a);
  return tables_.source[a];
}

ArrowId FiniteGroupoid::range(ArrowId a) const {
  require_arrow(a);
  return tables_.range[a];
}

ArrowId FiniteGroupoid::inverse(ArrowId a) const {
  require_arrow(a);
  return tables_.inverse[a];
}

Arrow FiniteGroupoid::arrow(ArrowId a) const {
  require_arrow(a);
  return {a, tables_.source[a], tables_.range[a]};
}

std::optional<ArrowId> FiniteGroupoid::product(ArrowId a, ArrowId b) const {
  require_arrow(a);
  require_arrow(b);
  const ArrowId ab = tables_.product(a, b);
  if (ab == kNoArrow) return std::nullopt;
  return ab;
}

ArrowId FiniteGroupoid::compose(ArrowId a, ArrowId b) const {
  if (auto ab = product(a, b)) return *ab;
  throw UndefinedComposition(fmt::format("{}*{} undefined: s({}) = {} but r({}) = {}", a, b, a,
                                         tables_.source[a], b, tables_.range[b]));
}

Fibers FiniteGroupoid::fibers(ArrowId x) const {
  require_unit(x);
  return {source_fibers_[x], range_fibers_[x], isotropy_[x]};
}

std::span<const ArrowId> FiniteGroupoid::source_fiber(ArrowId x) const {
  require_unit(x);
  return source_fibers_[x];
}

std::span<const ArrowId> FiniteGroupoid::range_fiber(ArrowId x) const {
  require_unit(x);
  return range_fibers_[x];
}

std::span<const ArrowId> FiniteGroupoid::isotropy(ArrowId x) const {
  require_unit(x);
  return isotropy_[x];
}

std::size_t OrbitDecomposition::class_of(ArrowId x) const {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (std::binary_search(classes[i].begin(), classes[i].end(), x)) return i;
  }
  throw NotAUnit(fmt::format("{} is not a unit", x));
}

OrbitDecomposition orbits(const FiniteGroupoid& g) {
  // Union-find over units; every arrow joins its source and range.
  std::vector<ArrowId> parent(g.size());
  std::iota(parent.begin(), parent.end(), ArrowId{0});
  auto find = [&](ArrowId u) {
    while (parent[u] != u) u = parent[u] = parent[parent[u]];
    return u;
  };
  for (ArrowId a = 0; a < g.size(); ++a) {
    ArrowId s = find(g.source(a));
    ArrowId r = find(g.range(a));
    if (s != r) parent[std::max(s, r)] = std::min(s, r);
  }

  OrbitDecomposition out;
  std::vector<std::size_t> slot(g.size(), SIZE_MAX);
  for (ArrowId u : g.units()) {
    const ArrowId root = find(u);
    if (slot[root] == SIZE_MAX) {
      slot[root] = out.classes.size();
      out.classes.emplace_back();
      out.representatives.push_back(u);
    }
    out.classes[slot[root]].push_back(u);
  }
  return out;
}

std::optional<ArrowId> connecting_arrow(const FiniteGroupoid& g, ArrowId from, ArrowId to) {
  for (ArrowId a : g.source_fiber(from)) {
    if (g.range(a) == to) return a;
  }
  g.require_unit(to);
  return std::nullopt;
}

namespace build {

namespace {

GroupoidTables blank_tables(std::size_t m) {
  GroupoidTables t;
  t.source.assign(m, kNoArrow);
  t.range.assign(m, kNoArrow);
  t.is_unit.assign(m, 0);
  t.compose.assign(m * m, kNoArrow);
  t.inverse.assign(m, kNoArrow);
  return t;
}

}  // namespace

FiniteGroupoid pair(std::size_t n) {
  if (n == 0) throw MalformedSpec("pair groupoid needs at least one point");
  const std::size_t m = n * n;
  auto id = [n](std::size_t r, std::size_t s) { return static_cast<ArrowId>(r * n + s); };
  GroupoidTables t = blank_tables(m);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      const ArrowId a = id(r, s);
      t.source[a] = id(s, s);
      t.range[a] = id(r, r);
      t.is_unit[a] = r == s;
      t.inverse[a] = id(s, r);
      for (std::size_t k = 0; k < n; ++k) t.product(a, id(s, k)) = id(r, k);
    }
  }
  return FiniteGroupoid::from_tables(std::move(t));
}

FiniteGroupoid group(std::size_t n, std::span<const ArrowId> cayley) {
  if (n == 0) throw MalformedSpec("group must have at least one element");
  if (cayley.size() != n * n) {
    throw MalformedSpec(fmt::format("Cayley table of a group of order {} needs {} entries, got {}",
                                    n, n * n, cayley.size()));
  }
  for (std::size_t i = 0; i < cayley.size(); ++i) {
    if (cayley[i] >= n) {
      throw MalformedSpec(fmt::format("Cayley entry {} = {} is not an element", i, cayley[i]));
    }
  }
  auto mul = [&](std::size_t a, std::size_t b) { return cayley[a * n + b]; };

  std::optional<ArrowId> identity;
  for (ArrowId e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (ArrowId g = 0; g < n && ok; ++g) ok = mul(e, g) == g && mul(g, e) == g;
    if (ok) identity = e;
  }
  if (!identity) throw AxiomViolation("unit law: Cayley table has no identity element");

  GroupoidTables t = blank_tables(n);
  for (ArrowId a = 0; a < n; ++a) {
    t.source[a] = t.range[a] = *identity;
    t.is_unit[a] = a == *identity;
    for (ArrowId b = 0; b < n; ++b) {
      t.product(a, b) = mul(a, b);
      if (mul(a, b) == *identity && mul(b, a) == *identity) t.inverse[a] = b;
    }
    if (t.inverse[a] == kNoArrow) {
      throw AxiomViolation(fmt::format("inverse law: element {} has no inverse", a));
    }
  }
  return FiniteGroupoid::from_tables(std::move(t));
}

FiniteGroupoid cyclic(std::size_t n) {
  std::vector<ArrowId> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<ArrowId>((a + b) % n);
  }
  return group(n, table);
}

FiniteGroupoid action(const FiniteGroupoid& grp, std::size_t set_size,
                      std::span<const Generator> generators) {
  if (grp.units().size() != 1) {
    throw MalformedSpec(fmt::format("acting groupoid must be a group, it has {} units",
                                    grp.units().size()));
  }
  if (set_size == 0) throw MalformedSpec("action needs a non-empty set");
  const std::size_t n = grp.size();
  const ArrowId identity = grp.units()[0];

  std::vector<std::vector<std::size_t>> acts(n);
  acts[identity].resize(set_size);
  std::iota(acts[identity].begin(), acts[identity].end(), std::size_t{0});

  for (const Generator& gen : generators) {
    grp.require_arrow(gen.element);
    if (gen.permutation.size() != set_size) {
      throw MalformedSpec(fmt::format("permutation for generator {} has {} entries, expected {}",
                                      gen.element, gen.permutation.size(), set_size));
    }
    std::vector<std::uint8_t> seen(set_size, 0);
    for (std::size_t p : gen.permutation) {
      if (p >= set_size || seen[p]) {
        throw MalformedSpec(
            fmt::format("generator {} does not act by a permutation of 0..{}", gen.element,
                        set_size - 1));
      }
      seen[p] = 1;
    }
  }

  // Breadth-first closure: act(s.g) = act(s) o act(g).
  std::queue<ArrowId> pending;
  pending.push(identity);
  while (!pending.empty()) {
    const ArrowId g = pending.front();
    pending.pop();
    for (const Generator& gen : generators) {
      const ArrowId sg = grp.compose(gen.element, g);
      std::vector<std::size_t> composed(set_size);
      for (std::size_t p = 0; p < set_size; ++p) composed[p] = gen.permutation[acts[g][p]];
      if (acts[sg].empty()) {
        acts[sg] = std::move(composed);
        pending.push(sg);
      } else if (acts[sg] != composed) {
        throw AxiomViolation(fmt::format(
            "action: generator permutations are inconsistent with the group law at element {}",
            sg));
      }
    }
  }
  for (ArrowId g = 0; g < n; ++g) {
    if (acts[g].empty()) {
      throw MalformedSpec(fmt::format("action: generators do not reach group element {}", g));
    }
  }

  const std::size_t m = n * set_size;
  auto id = [set_size](std::size_t g, std::size_t p) { return static_cast<ArrowId>(g * set_size + p); };
  GroupoidTables t = blank_tables(m);
  for (ArrowId g = 0; g < n; ++g) {
    for (std::size_t p = 0; p < set_size; ++p) {
      const ArrowId a = id(g, p);
      t.source[a] = id(identity, p);
      t.range[a] = id(identity, acts[g][p]);
      t.is_unit[a] = g == identity;
      t.inverse[a] = id(grp.inverse(g), acts[g][p]);
      // (h, g.p)(g, p) = (hg, p)
      for (ArrowId h = 0; h < n; ++h) t.product(id(h, acts[g][p]), a) = id(grp.compose(h, g), p);
    }
  }
  return FiniteGroupoid::from_tables(std::move(t));
}

FiniteGroupoid disjoint_union(std::span<const FiniteGroupoid> parts) {
  if (parts.empty()) throw MalformedSpec("union of no groupoids");
  std::size_t m = 0;
  for (const auto& p : parts) m += p.size();
  GroupoidTables t = blank_tables(m);
  std::size_t offset = 0;
  for (const auto& p : parts) {
    const auto& src = p.tables();
    auto shift = [offset](ArrowId a) { return a == kNoArrow ? kNoArrow : static_cast<ArrowId>(a + offset); };
    for (ArrowId a = 0; a < p.size(); ++a) {
      t.source[offset + a] = shift(src.source[a]);
      t.range[offset + a] = shift(src.range[a]);
      t.is_unit[offset + a] = src.is_unit[a];
      t.inverse[offset + a] = shift(src.inverse[a]);
      for (ArrowId b = 0; b < p.size(); ++b) {
        t.product(shift(a), shift(b)) = shift(src.product(a, b));
      }
    }
    offset += p.size();
  }
  return FiniteGroupoid::from_tables(std::move(t));
}

}  // namespace build

}  // namespace gpw
