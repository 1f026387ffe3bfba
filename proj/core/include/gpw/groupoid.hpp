#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace gpw {

using ArrowId = std::uint32_t;
inline constexpr ArrowId kNoArrow = std::numeric_limits<ArrowId>::max();

struct Arrow {
  ArrowId id;
  ArrowId source;
  ArrowId range;
};

// Raw, unvalidated description of a finite groupoid on arrows 0..m-1.
// `compose` is row-major m x m; entry (a, b) holds the product ab (first b,
// then a) or kNoArrow when the pair is not composable.
struct GroupoidTables {
  std::vector<ArrowId> source;
  std::vector<ArrowId> range;
  std::vector<std::uint8_t> is_unit;
  std::vector<ArrowId> compose;
  std::vector<ArrowId> inverse;

  std::size_t size() const { return source.size(); }
  ArrowId& product(ArrowId a, ArrowId b) { return compose[std::size_t{a} * size() + b]; }
  ArrowId product(ArrowId a, ArrowId b) const { return compose[std::size_t{a} * size() + b]; }

  friend bool operator==(const GroupoidTables&, const GroupoidTables&) = default;
};

struct Fibers {
  std::vector<ArrowId> source_fiber;  // G_x, ascending
  std::vector<ArrowId> range_fiber;   // G^x, ascending
  std::vector<ArrowId> isotropy;      // G(x), ascending
};

// A validated finite groupoid. Immutable once constructed.
class FiniteGroupoid {
 public:
  // Checks every groupoid law exhaustively; throws AxiomViolation naming the
  // failed law and the arrows involved, or MalformedSpec for shape errors.
  static FiniteGroupoid from_tables(GroupoidTables tables);

  std::size_t size() const { return tables_.size(); }
  std::span<const ArrowId> units() const { return units_; }

  bool is_unit(ArrowId a) const;
  ArrowId source(ArrowId a) const;
  ArrowId range(ArrowId a) const;
  ArrowId inverse(ArrowId a) const;
  Arrow arrow(ArrowId a) const;

  // ab when s(a) = r(b), nullopt otherwise.
  std::optional<ArrowId> product(ArrowId a, ArrowId b) const;
  // ab; throws UndefinedComposition when s(a) != r(b).
  ArrowId compose(ArrowId a, ArrowId b) const;

  // Throws NotAUnit.
  Fibers fibers(ArrowId x) const;
  std::span<const ArrowId> source_fiber(ArrowId x) const;
  std::span<const ArrowId> range_fiber(ArrowId x) const;
  std::span<const ArrowId> isotropy(ArrowId x) const;
  // Index of `a` inside G_{s(a)}.
  std::size_t position_in_source_fiber(ArrowId a) const { return source_pos_[a]; }

  const GroupoidTables& tables() const { return tables_; }

  void require_arrow(ArrowId a) const;
  void require_unit(ArrowId x) const;

  friend bool operator==(const FiniteGroupoid& a, const FiniteGroupoid& b) {
    return a.tables_ == b.tables_;
  }

 private:
  explicit FiniteGroupoid(GroupoidTables tables);

  GroupoidTables tables_;
  std::vector<ArrowId> units_;
  std::vector<std::vector<ArrowId>> source_fibers_;
  std::vector<std::vector<ArrowId>> range_fibers_;
  std::vector<std::vector<ArrowId>> isotropy_;
  std::vector<std::size_t> source_pos_;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

struct OrbitDecomposition {
  std::vector<std::vector<ArrowId>> classes;  // each ascending, ordered by least member
  std::vector<ArrowId> representatives;       // least unit id of each class

  // Index into `classes` of the orbit containing unit x.
  std::size_t class_of(ArrowId x) const;
};

OrbitDecomposition orbits(const FiniteGroupoid& g);

// Some arrow with source `from` and range `to`, if the two units share an orbit.
std::optional<ArrowId> connecting_arrow(const FiniteGroupoid& g, ArrowId from, ArrowId to);

// Constructors for the standard families. All results are validated.
namespace build {

// Pair groupoid on n points: arrow (i <- j) has id i*n + j, range i, source j.
FiniteGroupoid pair(std::size_t n);

// A group as a one-unit groupoid. `cayley` is row-major n x n with entry
// (a, b) = ab. The identity element is located from the table.
FiniteGroupoid group(std::size_t n, std::span<const ArrowId> cayley);

// Cyclic group Z/n with element k at id k.
FiniteGroupoid cyclic(std::size_t n);

struct Generator {
  ArrowId element;
  std::vector<std::size_t> permutation;  // p -> element . p
};

// Transformation groupoid of a left action of `grp` on {0..set_size-1}. The
// action is given on generators and extended by closure. Arrow (g, p) has id
// g*set_size + p, source p, range g.p.
FiniteGroupoid action(const FiniteGroupoid& grp, std::size_t set_size,
                      std::span<const Generator> generators);

// Arrow ids of later components are shifted by the sizes of earlier ones.
FiniteGroupoid disjoint_union(std::span<const FiniteGroupoid> parts);

}  // namespace build

}  // namespace gpw
