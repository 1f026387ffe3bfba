#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "gpw/algebra.hpp"
#include "gpw/groupoid.hpp"
#include "gpw/matrix.hpp"

namespace gpw {

// Groupoid files. Line based, '#' starts a comment. After the header
// `groupoid v1` comes either an explicit table
//
//   unit <id>
//   arrow <id> <source> <range>
//   compose <a> <b> <ab>
//   inverse <a> <a^-1>
//
// listing every arrow and every defined product, or exactly one constructor:
//
//   pair <n>
//   group <n> <n*n Cayley entries, row major>
//   action <group-file> <set-size> (<element> <image of 0> ... <image of set-size-1>)*
//   union <file> <file> ...
//
// A constructor's arguments may continue over several lines. File names are
// resolved against `base_dir`. Errors are MalformedSpec naming the line, or
// AxiomViolation from validation.
FiniteGroupoid parse_groupoid(std::string_view text, const std::filesystem::path& base_dir = {});
FiniteGroupoid load_groupoid(const std::filesystem::path& path);

// Canonical explicit form: sorted units, non-unit arrows, products in (a, b)
// order, inverses. Parsing the output reproduces the same tables.
std::string serialize_groupoid(const FiniteGroupoid& g);

// Element files: `element v1 <groupoid-file>` then `<arrow> <re> <im>` lines.
// Omitted arrows are zero.
struct ElementFile {
  std::string groupoid_ref;
  Element element;
};

ElementFile parse_element(std::string_view text, GroupoidPtr g);

// Also loads the declared groupoid (relative to the element file) and throws
// GroupoidMismatch unless its arrow count and unit set agree with g.
ElementFile load_element(const std::filesystem::path& path, GroupoidPtr g);

std::string serialize_element(const Element& a, std::string_view groupoid_ref);

// "<rows> <cols>" then one line per row of "re im" pairs, 17 significant digits.
std::string format_matrix(const ComplexMatrix& m);

std::string read_file(const std::filesystem::path& path);

}  // namespace gpw
