#include "gpw/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "gpw/errors.hpp"

namespace gpw {

namespace {

struct Token {
  std::string text;
  std::size_t line;
};

struct Line {
  std::size_t number;
  std::vector<std::string> words;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream words{std::string(raw)};
    Line line{number, {}};
    for (std::string w; words >> w;) line.words.push_back(std::move(w));
    if (!line.words.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw MalformedSpec(fmt::format("line {}: {}", line, what));
}

std::uint64_t parse_uint(const std::string& s, std::size_t line) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(line, fmt::format("expected a non-negative integer, got '{}'", s));
  }
  return v;
}

ArrowId parse_id(const std::string& s, std::size_t line) {
  const std::uint64_t v = parse_uint(s, line);
  if (v >= kNoArrow) fail(line, fmt::format("arrow id {} out of range", s));
  return static_cast<ArrowId>(v);
}

double parse_real(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    fail(line, fmt::format("expected a finite real number, got '{}'", s));
  }
  return v;
}

void expect_arity(const Line& l, std::size_t n) {
  if (l.words.size() != n) {
    fail(l.number, fmt::format("'{}' takes {} arguments, got {}", l.words[0], n - 1,
                               l.words.size() - 1));
  }
}

constexpr int kMaxNesting = 32;

FiniteGroupoid parse_groupoid_at(std::string_view text, const std::filesystem::path& base_dir,
                                 int depth);

FiniteGroupoid load_groupoid_at(const std::filesystem::path& path, int depth) {
  if (depth > kMaxNesting) {
    throw MalformedSpec(fmt::format("{}: file references nest deeper than {}", path.string(),
                                    kMaxNesting));
  }
  const std::string text = read_file(path);
  try {
    return parse_groupoid_at(text, path.parent_path(), depth);
  } catch (const MalformedSpec& e) {
    throw MalformedSpec(fmt::format("{}: {}", path.string(), e.what()));
  } catch (const AxiomViolation& e) {
    throw AxiomViolation(fmt::format("{}: {}", path.string(), e.what()));
  }
}

FiniteGroupoid explicit_table(const std::vector<Line>& lines) {
  struct Declared {
    ArrowId source;
    ArrowId range;
    bool unit;
    std::size_t line;
  };
  std::map<ArrowId, Declared> arrows;
  struct Entry {
    ArrowId value;
    std::size_t line;
  };
  std::map<std::pair<ArrowId, ArrowId>, Entry> products;
  std::map<ArrowId, Entry> inverses;

  for (const Line& l : lines) {
    const std::string& kw = l.words[0];
    if (kw == "unit") {
      expect_arity(l, 2);
      const ArrowId id = parse_id(l.words[1], l.number);
      auto [it, fresh] = arrows.try_emplace(id, Declared{id, id, true, l.number});
      if (!fresh) {
        if (it->second.unit) fail(l.number, fmt::format("unit {} declared twice", id));
        if (it->second.source != id || it->second.range != id) {
          fail(l.number, fmt::format("unit {} was declared on line {} with source {} and range {}",
                                     id, it->second.line, it->second.source, it->second.range));
        }
        it->second.unit = true;
      }
    } else if (kw == "arrow") {
      expect_arity(l, 4);
      const ArrowId id = parse_id(l.words[1], l.number);
      const ArrowId s = parse_id(l.words[2], l.number);
      const ArrowId r = parse_id(l.words[3], l.number);
      auto [it, fresh] = arrows.try_emplace(id, Declared{s, r, false, l.number});
      if (!fresh) {
        if (!it->second.unit || s != id || r != id) {
          fail(l.number, fmt::format("arrow {} already declared on line {}", id, it->second.line));
        }
      }
    } else if (kw == "compose") {
      expect_arity(l, 4);
      const ArrowId a = parse_id(l.words[1], l.number);
      const ArrowId b = parse_id(l.words[2], l.number);
      const ArrowId c = parse_id(l.words[3], l.number);
      auto [it, fresh] = products.try_emplace({a, b}, Entry{c, l.number});
      if (!fresh) {
        fail(l.number, fmt::format("product {} {} already given on line {}", a, b, it->second.line));
      }
    } else if (kw == "inverse") {
      expect_arity(l, 3);
      const ArrowId a = parse_id(l.words[1], l.number);
      const ArrowId b = parse_id(l.words[2], l.number);
      auto [it, fresh] = inverses.try_emplace(a, Entry{b, l.number});
      if (!fresh) {
        fail(l.number, fmt::format("inverse of {} already given on line {}", a, it->second.line));
      }
    } else {
      fail(l.number, fmt::format("unknown keyword '{}'", kw));
    }
  }

  if (arrows.empty()) throw MalformedSpec("no arrows declared");
  const std::size_t m = arrows.size();
  if (arrows.rbegin()->first != m - 1) {
    ArrowId missing = 0;
    while (arrows.count(missing)) ++missing;
    throw MalformedSpec(fmt::format("arrow ids must be 0..{} without gaps; {} is missing", m - 1,
                                    missing));
  }
  auto require_declared = [&](ArrowId id, std::size_t line) {
    if (id >= m) fail(line, fmt::format("arrow {} is not declared", id));
  };

  GroupoidTables t;
  t.source.resize(m);
  t.range.resize(m);
  t.is_unit.assign(m, 0);
  t.compose.assign(m * m, kNoArrow);
  t.inverse.assign(m, kNoArrow);
  for (const auto& [id, d] : arrows) {
    require_declared(d.source, d.line);
    require_declared(d.range, d.line);
    t.source[id] = d.source;
    t.range[id] = d.range;
    t.is_unit[id] = d.unit ? 1 : 0;
  }
  for (const auto& [ab, e] : products) {
    require_declared(ab.first, e.line);
    require_declared(ab.second, e.line);
    require_declared(e.value, e.line);
    t.compose[ab.first * m + ab.second] = e.value;
  }
  for (const auto& [a, e] : inverses) {
    require_declared(a, e.line);
    require_declared(e.value, e.line);
    t.inverse[a] = e.value;
  }
  for (ArrowId a = 0; a < m; ++a) {
    if (t.inverse[a] == kNoArrow) {
      throw MalformedSpec(fmt::format("no inverse given for arrow {} (line {})", a,
                                      arrows.at(a).line));
    }
  }
  return FiniteGroupoid::from_tables(std::move(t));
}

FiniteGroupoid constructor(const std::vector<Line>& lines, const std::filesystem::path& base_dir,
                           int depth) {
  const std::string kw = lines.front().words[0];
  const std::size_t at = lines.front().number;
  std::vector<Token> args;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = (i == 0 ? 1 : 0); j < lines[i].words.size(); ++j) {
      args.push_back({lines[i].words[j], lines[i].number});
    }
  }
  auto resolve = [&](const std::string& name) { return base_dir / name; };
  auto wrap = [&](auto&& build_fn) -> FiniteGroupoid {
    try {
      return build_fn();
    } catch (const MalformedSpec& e) {
      fail(at, e.what());
    }
  };

  if (kw == "pair") {
    if (args.size() != 1) fail(at, "'pair' takes one argument");
    const std::uint64_t n = parse_uint(args[0].text, args[0].line);
    if (n == 0) fail(at, "'pair' needs at least one point");
    return wrap([&] { return build::pair(n); });
  }
  if (kw == "group") {
    if (args.empty()) fail(at, "'group' needs an order");
    const std::uint64_t n = parse_uint(args[0].text, args[0].line);
    if (n == 0) fail(at, "a group has at least one element");
    if (args.size() != 1 + n * n) {
      fail(at, fmt::format("'group {}' needs {} table entries, got {}", n, n * n, args.size() - 1));
    }
    std::vector<ArrowId> table;
    for (std::size_t i = 1; i < args.size(); ++i) table.push_back(parse_id(args[i].text, args[i].line));
    return wrap([&] { return build::group(n, table); });
  }
  if (kw == "action") {
    if (args.size() < 2) fail(at, "'action' needs a group file and a set size");
    const FiniteGroupoid grp = load_groupoid_at(resolve(args[0].text), depth + 1);
    const std::uint64_t set_size = parse_uint(args[1].text, args[1].line);
    if (set_size == 0) fail(at, "the acted-on set must be non-empty");
    const std::size_t rest = args.size() - 2;
    if (rest % (set_size + 1) != 0) {
      fail(args.back().line, fmt::format("each generator is an element followed by {} images",
                                         set_size));
    }
    std::vector<build::Generator> gens;
    for (std::size_t i = 2; i < args.size(); i += set_size + 1) {
      build::Generator gen;
      gen.element = parse_id(args[i].text, args[i].line);
      for (std::size_t p = 0; p < set_size; ++p) {
        gen.permutation.push_back(parse_uint(args[i + 1 + p].text, args[i + 1 + p].line));
      }
      gens.push_back(std::move(gen));
    }
    return wrap([&] { return build::action(grp, set_size, gens); });
  }
  if (kw == "union") {
    if (args.empty()) fail(at, "'union' needs at least one file");
    std::vector<FiniteGroupoid> parts;
    for (const Token& t : args) parts.push_back(load_groupoid_at(resolve(t.text), depth + 1));
    return wrap([&] { return build::disjoint_union(parts); });
  }
  fail(at, fmt::format("unknown keyword '{}'", kw));
}

FiniteGroupoid parse_groupoid_at(std::string_view text, const std::filesystem::path& base_dir,
                                 int depth) {
  std::vector<Line> lines = split_lines(text);
  if (lines.empty()) throw MalformedSpec("empty file; expected header 'groupoid v1'");
  const Line& header = lines.front();
  if (header.words.size() != 2 || header.words[0] != "groupoid" || header.words[1] != "v1") {
    fail(header.number, "expected header 'groupoid v1'");
  }
  lines.erase(lines.begin());
  if (lines.empty()) throw MalformedSpec("no groupoid data after the header");

  static const std::set<std::string> kConstructors = {"pair", "group", "action", "union"};
  if (kConstructors.count(lines.front().words[0])) {
    return constructor(lines, base_dir, depth);
  }
  for (const Line& l : lines) {
    if (kConstructors.count(l.words[0])) {
      fail(l.number, fmt::format("'{}' cannot be mixed with explicit table lines", l.words[0]));
    }
  }
  return explicit_table(lines);
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedSpec(fmt::format("cannot read '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FiniteGroupoid parse_groupoid(std::string_view text, const std::filesystem::path& base_dir) {
  return parse_groupoid_at(text, base_dir, 0);
}

FiniteGroupoid load_groupoid(const std::filesystem::path& path) {
  return load_groupoid_at(path, 0);
}

std::string serialize_groupoid(const FiniteGroupoid& g) {
  std::string out = "groupoid v1\n";
  for (ArrowId u : g.units()) out += fmt::format("unit {}\n", u);
  for (ArrowId a = 0; a < g.size(); ++a) {
    if (!g.is_unit(a)) out += fmt::format("arrow {} {} {}\n", a, g.source(a), g.range(a));
  }
  for (ArrowId a = 0; a < g.size(); ++a) {
    for (ArrowId b = 0; b < g.size(); ++b) {
      if (const auto ab = g.product(a, b)) out += fmt::format("compose {} {} {}\n", a, b, *ab);
    }
  }
  for (ArrowId a = 0; a < g.size(); ++a) out += fmt::format("inverse {} {}\n", a, g.inverse(a));
  return out;
}

namespace {

const std::string& element_header(const std::vector<Line>& lines) {
  if (lines.empty()) throw MalformedSpec("empty file; expected header 'element v1 <groupoid-file>'");
  const Line& header = lines.front();
  if (header.words.size() != 3 || header.words[0] != "element" || header.words[1] != "v1") {
    fail(header.number, "expected header 'element v1 <groupoid-file>'");
  }
  return header.words[2];
}

ElementFile element_body(const std::vector<Line>& lines, GroupoidPtr g) {
  ElementFile out{element_header(lines), Element(g)};
  std::vector<std::size_t> seen(g->size(), 0);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.words.size() != 3) fail(l.number, "expected '<arrow> <re> <im>'");
    const ArrowId id = parse_id(l.words[0], l.number);
    if (id >= g->size()) {
      throw UnknownArrow(fmt::format("line {}: arrow {} is not in the groupoid ({} arrows)",
                                     l.number, id, g->size()));
    }
    if (seen[id]) fail(l.number, fmt::format("arrow {} already given on line {}", id, seen[id]));
    seen[id] = l.number;
    out.element[id] = Complex(parse_real(l.words[1], l.number), parse_real(l.words[2], l.number));
  }
  return out;
}

}  // namespace

ElementFile parse_element(std::string_view text, GroupoidPtr g) {
  return element_body(split_lines(text), std::move(g));
}

ElementFile load_element(const std::filesystem::path& path, GroupoidPtr g) {
  const std::vector<Line> lines = split_lines(read_file(path));
  std::string ref;
  try {
    ref = element_header(lines);
  } catch (const MalformedSpec& e) {
    throw MalformedSpec(fmt::format("{}: {}", path.string(), e.what()));
  }
  const FiniteGroupoid declared = load_groupoid(path.parent_path() / ref);
  const bool same_units = std::equal(declared.units().begin(), declared.units().end(),
                                     g->units().begin(), g->units().end());
  if (declared.size() != g->size() || !same_units) {
    throw GroupoidMismatch(fmt::format(
        "{}: declared groupoid '{}' has {} arrows and {} units; the loaded groupoid has {} arrows "
        "and {} units",
        path.string(), ref, declared.size(), declared.units().size(), g->size(),
        g->units().size()));
  }
  try {
    return element_body(lines, std::move(g));
  } catch (const MalformedSpec& e) {
    throw MalformedSpec(fmt::format("{}: {}", path.string(), e.what()));
  } catch (const UnknownArrow& e) {
    throw UnknownArrow(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::string serialize_element(const Element& a, std::string_view groupoid_ref) {
  std::string out = fmt::format("element v1 {}\n", groupoid_ref);
  for (ArrowId id : a.support()) {
    out += fmt::format("{} {:.17g} {:.17g}\n", id, a[id].real(), a[id].imag());
  }
  return out;
}

std::string format_matrix(const ComplexMatrix& m) {
  std::string out = fmt::format("{} {}\n", m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out += fmt::format("{}{:.17g} {:.17g}", j ? "  " : "", m(i, j).real(), m(i, j).imag());
    }
    out += '\n';
  }
  return out;
}

}  // namespace gpw
