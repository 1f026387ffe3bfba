#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "gpw/analysis.hpp"
#include "gpw/checks.hpp"
#include "gpw/errors.hpp"
#include "gpw/io.hpp"
#include "gpw/representations.hpp"
#include "gpw/spectral.hpp"

namespace gpw::cli {

namespace {

using nlohmann::json;

struct Invocation {
  std::string command;
  std::string groupoid_path;
  std::string element_path;
  double tol = kDefaultInvertibilityTol;
  bool orbit_reps = false;
  std::uint64_t seed = 0;
  std::size_t trials = 200;
  bool json = false;
  std::optional<ArrowId> unit;
};

// Human output: 6 significant digits, and integral values keep a ".0".
std::string num(double v) {
  std::string s = fmt::format("{:.6g}", v);
  if (std::isfinite(v) && s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

// nlohmann prints the shortest round-trip form; structured output is fixed at
// 17 significant digits instead, so the emitter is ours.
void emit(const json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + json(it.key()).dump() + ": ";
        emit(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        emit(j[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? fmt::format("{:.17g}", v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

std::string dump(const json& j) {
  std::string out;
  emit(j, out, 0);
  return out + "\n";
}

json to_json(const PropertyResult& r) {
  json j;
  j["name"] = r.name;
  j["passed"] = r.passed;
  j["cases"] = r.cases;
  j["skipped"] = r.skipped;
  j["worst"] = r.worst;
  j["tolerance"] = r.tolerance;
  if (!r.passed) j["counterexample"] = r.counterexample;
  return j;
}

struct Context {
  const Invocation& inv;
  std::ostream& out;
  GroupoidPtr g;
};

Element load_element_for(const Context& c) {
  return load_element(c.inv.element_path, c.g).element;
}

int cmd_validate(const Context& c) {
  const PropertyResult r = checks::axioms(*c.g);
  if (c.inv.json) {
    c.out << dump({{"valid", r.passed}, {"arrows", c.g->size()}, {"units", c.g->units().size()}});
  } else {
    c.out << fmt::format("valid: {} arrows, {} units; composition closed and associative, "
                         "units and inverses verified\n",
                         c.g->size(), c.g->units().size());
  }
  return r.passed ? kOk : kInputError;
}

int cmd_info(const Context& c) {
  const FiniteGroupoid& g = *c.g;
  const OrbitDecomposition orb = orbits(g);
  if (c.inv.json) {
    json j;
    j["arrows"] = g.size();
    j["units"] = std::vector<ArrowId>(g.units().begin(), g.units().end());
    json classes = json::array();
    for (const auto& members : orb.classes) {
      classes.push_back({{"units", members},
                         {"isotropy_order", g.isotropy(members.front()).size()},
                         {"fiber_size", g.source_fiber(members.front()).size()}});
    }
    j["orbits"] = classes;
    c.out << dump(j);
    return kOk;
  }
  c.out << fmt::format("arrows {}\n", g.size());
  c.out << fmt::format("units {}:", g.units().size());
  for (ArrowId u : g.units()) c.out << ' ' << u;
  c.out << fmt::format("\norbits {}\n", orb.classes.size());
  for (std::size_t i = 0; i < orb.classes.size(); ++i) {
    const auto& members = orb.classes[i];
    c.out << fmt::format("orbit {}: units", i);
    for (ArrowId u : members) c.out << ' ' << u;
    c.out << fmt::format("; isotropy order {}; |G_x| = {}\n", g.isotropy(members.front()).size(),
                         g.source_fiber(members.front()).size());
  }
  return kOk;
}

int cmd_norm(const Context& c) {
  const NormProfile p = norm(load_element_for(c), {c.inv.orbit_reps});
  if (c.inv.json) {
    json rows = json::array();
    for (const auto& [u, v] : p.per_unit) rows.push_back({{"unit", u}, {"norm", v}});
    c.out << dump({{"per_unit", rows}, {"max_unit", p.max_unit}, {"norm", p.value}});
    return kOk;
  }
  c.out << "unit  norm\n";
  for (const auto& [u, v] : p.per_unit) c.out << fmt::format("{:<5} {}\n", u, num(v));
  c.out << fmt::format("norm {} attained at unit {}\n", num(p.value), p.max_unit);
  return kOk;
}

int cmd_profile(const Context& c) {
  const NormProfile p = norm(load_element_for(c), {c.inv.orbit_reps});
  if (c.inv.json) {
    json rows = json::array();
    for (const auto& [u, v] : p.per_unit) rows.push_back({{"unit", u}, {"value", v}});
    c.out << dump(rows);
    return kOk;
  }
  for (const auto& [u, v] : p.per_unit) c.out << fmt::format("{} {}\n", u, num(v));
  return kOk;
}

int cmd_spectrum(const Context& c, std::ostream& err) {
  const Element a = load_element_for(c);
  if (!a.is_self_adjoint(kHermitianTolerance)) {
    err << fmt::format("error: spectrum needs a self-adjoint element; {} has a(g) != conj a(g^-1)\n",
                       c.inv.element_path);
    return kInputError;
  }
  const auto values = hermitian_eigenvalues(full_regular(*c.g, a).matrix);
  if (c.inv.json) {
    c.out << dump({{"eigenvalues", values}});
    return kOk;
  }
  for (double v : values) c.out << num(v) << '\n';
  return kOk;
}

int cmd_invert(const Context& c) {
  const InvertibilityReport r = invertible_family(load_element_for(c), c.inv.tol, {c.inv.orbit_reps});
  double lowest = INFINITY;
  for (const auto& u : r.per_unit) lowest = std::min(lowest, u.value);
  if (c.inv.json) {
    json rows = json::array();
    for (const auto& [u, v] : r.per_unit) rows.push_back({{"unit", u}, {"sigma_min", v}});
    json j{{"invertible", r.invertible}, {"tol", r.tol}, {"min_sigma", lowest}, {"per_unit", rows}};
    if (!r.invertible) j["witness"] = r.witness;
    c.out << dump(j);
  } else {
    if (r.invertible) {
      c.out << fmt::format("invertible, min σ = {}\n", num(lowest));
    } else {
      c.out << fmt::format("singular, min σ = {} at witness unit {} (tol {})\n", num(lowest),
                           r.witness, num(r.tol));
    }
    for (const auto& [u, v] : r.per_unit) c.out << fmt::format("unit {}  σ_min {}\n", u, num(v));
  }
  return r.invertible ? kOk : kSingular;
}

int cmd_matrix(const Context& c) {
  const Element a = load_element_for(c);
  const MatrixRep rep = c.inv.unit ? lambda_x(*c.g, *c.inv.unit, a) : full_regular(*c.g, a);
  if (c.inv.json) {
    json basis = json::array();
    for (const auto& b : rep.basis) basis.push_back(b.to_string());
    json rows = json::array();
    for (std::size_t i = 0; i < rep.matrix.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < rep.matrix.cols(); ++j) {
        row.push_back({rep.matrix(i, j).real(), rep.matrix(i, j).imag()});
      }
      rows.push_back(row);
    }
    c.out << dump({{"basis", basis}, {"entries", rows}});
    return kOk;
  }
  c.out << format_matrix(rep.matrix);
  return kOk;
}

int report_properties(const Context& c, const std::vector<PropertyResult>& results) {
  const bool ok = std::all_of(results.begin(), results.end(),
                              [](const PropertyResult& r) { return r.passed; });
  if (c.inv.json) {
    json rows = json::array();
    for (const auto& r : results) rows.push_back(to_json(r));
    c.out << dump({{"passed", ok}, {"properties", rows}});
  } else {
    for (const auto& r : results) {
      c.out << fmt::format("{} {:<30} max residual {:.3e}  tol {:.0e}\n", r.passed ? "PASS" : "FAIL",
                           r.name, r.worst, r.tolerance);
      if (!r.passed) c.out << fmt::format("     counterexample: {}\n", r.counterexample);
    }
  }
  return ok ? kOk : kPropertyFailure;
}

int cmd_induce_check(const Context& c) {
  std::vector<PropertyResult> results;
  std::uint64_t stream = 0;
  auto next = [&] { return Sampler(derive_seed(c.inv.seed, stream++)); };
  results.push_back(checks::basis_inner_products(c.g));
  results.push_back(checks::gram_boolean(c.g));
  {
    Sampler s = next();
    results.push_back(checks::induced_regular_equivalence(c.g, s, c.inv.trials));
  }
  {
    Sampler s = next();
    results.push_back(checks::j_bounded(c.g, s, c.inv.trials));
  }
  {
    Sampler s = next();
    results.push_back(checks::main_identity(c.g, s, c.inv.trials));
  }
  return report_properties(c, results);
}

int cmd_verify(const Context& c) {
  const SuiteReport report = verify_suite(c.g, c.inv.trials, c.inv.seed);
  if (c.inv.json) {
    json rows = json::array();
    for (const auto& r : report.results) rows.push_back(to_json(r));
    c.out << dump({{"arrows", report.arrows},
                   {"units", report.units},
                   {"orbits", report.orbit_count},
                   {"trials", report.trials},
                   {"seed", report.seed},
                   {"passed", report.passed()},
                   {"properties", rows}});
  } else {
    c.out << report.to_text();
  }
  return report.passed() ? kOk : kPropertyFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Invocation inv;
  CLI::App app{"Finite groupoid C*-algebra toolkit", "gpw"};
  app.require_subcommand(1);

  struct Spec {
    const char* name;
    const char* help;
    bool element;
  };
  const Spec specs[] = {
      {"validate", "check the groupoid axioms", false},
      {"info", "units, arrows, orbits and isotropy orders", false},
      {"norm", "per-unit norms ||lambda_x(a)|| and their maximum", true},
      {"spectrum", "eigenvalues of a self-adjoint element in the regular representation", true},
      {"invert", "invertibility verdict from the family lambda_x", true},
      {"profile", "two-column listing: unit, ||lambda_x(a)||", true},
      {"induce-check", "residuals of the induced-representation identities", false},
      {"verify", "run the full property suite", false},
      {"matrix", "print lambda_x(a), or the full regular representation", true},
  };
  for (const Spec& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("groupoid", inv.groupoid_path, "groupoid file")->required();
    if (s.element) sub->add_option("element", inv.element_path, "element file")->required();
    sub->add_flag("--json", inv.json, "machine-readable output");
    const std::string name = s.name;
    if (name == "norm" || name == "invert" || name == "profile") {
      sub->add_flag("--orbit-reps", inv.orbit_reps, "evaluate one unit per orbit");
    }
    if (name == "invert") {
      sub->add_option("--tol", inv.tol, "singular-value threshold")->check(CLI::PositiveNumber);
    }
    if (name == "verify" || name == "induce-check") {
      sub->add_option("--seed", inv.seed, "random seed");
      sub->add_option("--trials", inv.trials, "samples per property")->check(CLI::PositiveNumber);
    }
    if (name == "matrix") sub->add_option("--unit", inv.unit, "unit x for lambda_x");
    sub->callback([&inv, name] { inv.command = name; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    Context c{inv, out, std::make_shared<const FiniteGroupoid>(load_groupoid(inv.groupoid_path))};
    if (inv.unit) c.g->require_unit(*inv.unit);
    if (inv.command == "validate") return cmd_validate(c);
    if (inv.command == "info") return cmd_info(c);
    if (inv.command == "norm") return cmd_norm(c);
    if (inv.command == "spectrum") return cmd_spectrum(c, err);
    if (inv.command == "invert") return cmd_invert(c);
    if (inv.command == "profile") return cmd_profile(c);
    if (inv.command == "induce-check") return cmd_induce_check(c);
    if (inv.command == "verify") return cmd_verify(c);
    return cmd_matrix(c);
  } catch (const AxiomViolation& e) {
    err << "invalid groupoid: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  }
  return kInputError;
}

}  // namespace gpw::cli
