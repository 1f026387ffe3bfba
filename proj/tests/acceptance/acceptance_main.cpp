// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "gpw/analysis.hpp"
#include "gpw/checks.hpp"
#include "gpw/errors.hpp"
#include "gpw/induction.hpp"
#include "gpw/representations.hpp"
#include "gpw/sampling.hpp"
#include "gpw/spectral.hpp"

#include "../../tools/cli.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace gpw;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Fixture {
  std::string name;
  GroupoidPtr g;
};

// Largest residual seen; NaN counts as infinite.
struct Worst {
  double value = 0.0;
  void see(double r) {
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    value = std::max(value, r);
  }
};

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = [] {
    std::vector<Fixture> out;
    for (const auto& name : testing_support::fixture_names()) out.push_back({name, testing_support::load(name)});
    return out;
  }();
  return all;
}

std::uint64_t seed_for(std::uint64_t criterion, std::size_t fixture) {
  return derive_seed(20240601, criterion * 100 + fixture);
}

ComplexMatrix random_hermitian(Sampler& s, std::size_t n) {
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = s.gaussian().real();
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = s.gaussian();
      a(j, i) = std::conj(a(i, j));
    }
  }
  return a;
}

// Every law checked straight on the raw tables.
std::size_t table_violations(const GroupoidTables& t) {
  const std::size_t m = t.size();
  std::size_t bad = 0;
  auto arrow = [&](ArrowId c) { return c < m; };
  for (ArrowId a = 0; a < m; ++a) {
    if (!arrow(t.source[a]) || !arrow(t.range[a]) || !arrow(t.inverse[a])) return bad + 1;
    if (t.is_unit[a] && (t.source[a] != a || t.range[a] != a || t.inverse[a] != a)) ++bad;
    if (!t.is_unit[t.source[a]] || !t.is_unit[t.range[a]]) ++bad;
  }
  for (ArrowId a = 0; a < m; ++a) {
    for (ArrowId b = 0; b < m; ++b) {
      const ArrowId c = t.product(a, b);
      const bool composable = t.source[a] == t.range[b];
      if (composable != (c != kNoArrow)) {
        ++bad;
        continue;
      }
      if (!composable) continue;
      if (!arrow(c)) return bad + 1;
      if (t.source[c] != t.source[b] || t.range[c] != t.range[a]) ++bad;
    }
  }
  if (bad) return bad;
  for (ArrowId a = 0; a < m; ++a) {
    if (t.product(t.range[a], a) != a || t.product(a, t.source[a]) != a) ++bad;
    const ArrowId inv = t.inverse[a];
    if (t.source[inv] != t.range[a] || t.range[inv] != t.source[a]) {
      ++bad;
      continue;
    }
    if (t.product(a, inv) != t.range[a] || t.product(inv, a) != t.source[a]) ++bad;
  }
  for (ArrowId a = 0; a < m; ++a) {
    for (ArrowId b = 0; b < m; ++b) {
      if (t.source[a] != t.range[b]) continue;
      for (ArrowId c = 0; c < m; ++c) {
        if (t.source[b] != t.range[c]) continue;
        if (t.product(t.product(a, b), c) != t.product(a, t.product(b, c))) ++bad;
      }
    }
  }
  return bad;
}

GroupoidTables corrupt(const GroupoidTables& base, Sampler& s, int kind) {
  GroupoidTables t = base;
  const std::size_t m = t.size();
  std::vector<std::pair<ArrowId, ArrowId>> defined;
  std::vector<std::pair<ArrowId, ArrowId>> undefined;
  for (ArrowId a = 0; a < m; ++a) {
    for (ArrowId b = 0; b < m; ++b) (t.product(a, b) == kNoArrow ? undefined : defined).push_back({a, b});
  }
  if (kind == 2 && undefined.empty()) kind = 0;
  auto other_than = [&](ArrowId c) {
    const ArrowId shift = static_cast<ArrowId>(1 + s.index(m - 1));
    return static_cast<ArrowId>((c + shift) % m);
  };
  switch (kind) {
    case 0: {  // wrong product
      const auto [a, b] = defined[s.index(defined.size())];
      t.product(a, b) = other_than(t.product(a, b));
      break;
    }
    case 1: {  // composable pair left undefined
      const auto [a, b] = defined[s.index(defined.size())];
      t.product(a, b) = kNoArrow;
      break;
    }
    case 2: {  // non-composable pair given a product
      const auto [a, b] = undefined[s.index(undefined.size())];
      t.product(a, b) = static_cast<ArrowId>(s.index(m));
      break;
    }
    default: {  // wrong inverse
      const ArrowId a = static_cast<ArrowId>(s.index(m));
      t.inverse[a] = other_than(t.inverse[a]);
      break;
    }
  }
  return t;
}

Outcome axioms() {
  Outcome o;
  std::size_t corruptions = 0;
  std::size_t detected = 0;
  for (std::size_t i = 0; i < fixtures().size(); ++i) {
    const auto& [name, g] = fixtures()[i];
    if (!checks::axioms(*g).passed || table_violations(g->tables()) != 0) {
      o.pass = false;
      o.detail += name + " fails the laws; ";
    }
    Sampler s(seed_for(1, i));
    for (int k = 0; k < 40; ++k) {
      const GroupoidTables bad = corrupt(g->tables(), s, k % 4);
      ++corruptions;
      bool thrown = false;
      try {
        (void)FiniteGroupoid::from_tables(bad);
      } catch (const AxiomViolation&) {
        thrown = true;
      }
      // The corruption must really break a law, and the library must notice.
      if (thrown && table_violations(bad) > 0) ++detected;
    }
  }
  if (detected != corruptions) o.pass = false;
  o.detail += fmt::format("exhaustive laws hold on {} fixtures; {}/{} corruptions detected", fixtures().size(),
                          detected, corruptions);
  return o;
}

Outcome entry_formula() {
  Worst w;
  std::size_t cases = 0;
  for (std::size_t i = 0; i < fixtures().size(); ++i) {
    const auto& [name, g] = fixtures()[i];
    Sampler s(seed_for(2, i));
    for (int k = 0; k < 50; ++k) {
      const Element f = s.gaussian_element(g);
      for (ArrowId x : g->units()) {
        const ComplexMatrix formula = lambda_x(*g, x, f).matrix;
        w.see(oracle::max_abs_diff(formula, oracle::lambda(*g, x, f.coeffs())));
        w.see(oracle::max_abs_diff(formula, lambda_x_by_action(*g, x, f).matrix));
        ++cases;
      }
    }
  }
  return {w.value <= 1e-15, fmt::format("{} (f, x) cases, worst {:.3e} (tol 1e-15)", cases, w.value)};
}

Outcome star_homomorphism() {
  Worst mult;
  Worst adj;
  std::size_t cases = 0;
  for (std::size_t i = 0; i < fixtures().size(); ++i) {
    const auto& [name, g] = fixtures()[i];
    Sampler s(seed_for(3, i));
    for (int k = 0; k < 50; ++k) {
      const Element f = s.gaussian_element(g);
      const Element h = s.gaussian_element(g);
      const Element fh = f * h;
      const Element fs = f.adjoint();
      for (ArrowId x : g->units()) {
        const ComplexMatrix lf = lambda_x(*g, x, f).matrix;
        mult.see(oracle::spectral_norm(lambda_x(*g, x, fh).matrix - lf * lambda_x(*g, x, h).matrix));
        adj.see(oracle::spectral_norm(lambda_x(*g, x, fs).matrix - lf.adjoint()));
        ++cases;
      }
    }
  }
  return {mult.value <= 1e-11 && adj.value <= 1e-12,
          fmt::format("{} cases, product worst {:.3e} (tol 1e-11), adjoint worst {:.3e} (tol 1e-12)", cases,
                      mult.value, adj.value)};
}

Outcome basis_inner_products() {
  std::size_t cases = 0;
  std::size_t mismatches = 0;
  for (const auto& [name, g] : fixtures()) {
    for (ArrowId x : g->units()) {
      for (ArrowId a : g->source_fiber(x)) {
        for (ArrowId b : g->source_fiber(x)) {
          const Element got = star_inner(ModuleVector::basis(g, x, a), ModuleVector::basis(g, x, b));
          Element want = Element::zero(g);
          if (g->range(a) == g->range(b)) want[g->compose(g->inverse(a), b)] = 1.0;
          if (max_abs_diff(got, want) != 0.0) ++mismatches;
          ++cases;
        }
      }
    }
  }
  return {mismatches == 0, fmt::format("{} basis pairs, {} mismatches (exact)", cases, mismatches)};
}

Outcome induced_regular() {
  Worst w;
  std::size_t cases = 0;
  std::size_t gram_entries = 0;
  std::size_t gram_bad = 0;
  for (std::size_t i = 0; i < fixtures().size(); ++i) {
    const auto& [name, g] = fixtures()[i];
    Sampler s(seed_for(5, i));
    for (ArrowId x : g->units()) {
      const InducedSpace space(IsotropyRep::left_regular(g, x));
      const ComplexMatrix u = equivalence_unitary(g, x).matrix;
      w.see(oracle::max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.cols())));
      for (int k = 0; k < 20; ++k) {
        const Element f = s.gaussian_element(g);
        const ComplexMatrix back = u.adjoint() * space.represent(f).matrix * u;
        w.see(oracle::spectral_norm(back - oracle::lambda(*g, x, f.coeffs())));
        ++cases;
      }
      const auto group = g->isotropy(x);
      for (ArrowId a : g->source_fiber(x)) {
        for (std::size_t k = 0; k < group.size(); ++k) {
          for (ArrowId b : g->source_fiber(x)) {
            for (std::size_t l = 0; l < group.size(); ++l) {
              const bool same = g->compose(a, group[k]) == g->compose(b, group[l]);
              if (space.raw_inner(a, k, b, l) != Complex(same ? 1.0 : 0.0)) ++gram_bad;
              ++gram_entries;
            }
          }
        }
      }
    }
  }
  return {w.value <= 1e-10 && gram_bad == 0,
          fmt::format("{} (f, x) cases, worst {:.3e} (tol 1e-10); Gram {}/{} entries Boolean-exact", cases, w.value,
                      gram_entries - gram_bad, gram_entries)};
}

// ||<phi, phi>_*|| in the left regular representation of G(x), built by hand.
double module_norm_oracle(const FiniteGroupoid& g, ArrowId x, const Element& b) {
  const auto group = g.isotropy(x);
  ComplexMatrix m(group.size(), group.size());
  for (std::size_t r = 0; r < group.size(); ++r) {
    for (std::size_t c = 0; c < group.size(); ++c) m(r, c) = b[g.compose(group[r], g.inverse(group[c]))];
  }
  return std::sqrt(oracle::spectral_norm(m));
}

Outcome j_bounded() {
  Worst excess;
  Worst agreement;
  for (std::size_t i = 0; i < fixtures().size(); ++i) {
    const auto& [name, g] = fixtures()[i];
    Sampler s(seed_for(6, i));
    const auto units = g->units();
    for (int k = 0; k < 1000; ++k) {
      const ArrowId x = units[k % units.size()];
      const ModuleVector phi = s.gaussian_vector(g, x);
      const double m = module_norm(phi);
      excess.see(norm2(embed_j(phi)) - m);
      agreement.see(std::abs(m - module_norm_oracle(*g, x, star_inner(phi, phi))));
    }
  }
  const GroupoidPtr z2 = testing_support::load("z2.gpd");
  const ModuleVector spread = ModuleVector::basis(z2, 0, 0) + ModuleVector::basis(z2, 0, 1);
  const double l2 = norm2(embed_j(spread));
  const double mn = module_norm(spread);
  const bool example = std::abs(l2 - std::sqrt(2.0)) <= 1e-12 && std::abs(mn - 2.0) <= 1e-12;
  return {excess.value <= 1e-10 && agreement.value <= 1e-12 && example,
          fmt::format("7000 vectors, max(||j phi|| - ||phi||_M) = {:.3e} (tol 1e-10), module norm vs oracle {:.3e}; "
                      "Z/2 example ||j phi|| = {:.15g}, ||phi||_M = {:.15g}",
                      excess.value, agreement.value, l2, mn)};
}

Outcome translations() {
  std::size_t pairs = 0;
  std::size_t bad = 0;
  for (const auto& [name, g] : fixtures()) {
    for (ArrowId x : g->units()) {
      for (ArrowId z1 : g->isotropy(x)) {
        const ComplexMatrix r1 = translation_unitary(*g, x, z1).matrix;
        if (r1 * r1.adjoint() != ComplexMatrix::identity(r1.rows()) ||
            r1.adjoint() * r1 != ComplexMatrix::identity(r1.rows())) {
          ++bad;
        }
        for (ArrowId z2 : g->isotropy(x)) {
          const ComplexMatrix r2 = translation_unitary(*g, x, z2).matrix;
          if (translation_unitary(*g, x, g->compose(z1, z2)).matrix != r1 * r2) ++bad;
          ++pairs;
        }
      }
    }
  }
  return {bad == 0, fmt::format("{} isotropy pairs, {} failures (exact)", pairs, bad)};
}

Outcome main_identity() {
  Worst lib;
  Worst direct;
  std::size_t evaluations = 0;
  for (std::size_t i = 0; i < fixtures().size(); ++i) {
    const auto& [name, g] = fixtures()[i];
    Sampler s(seed_for(8, i));
    const auto units = g->units();
    for (int k = 0; k < 200; ++k) {
      const ArrowId x = units[s.index(units.size())];
      const Element a = s.gaussian_element(g);
      const ModuleVector phi = s.gaussian_vector(g, x);
      const ModuleVector psi = s.gaussian_vector(g, x);
      for (ArrowId z : g->isotropy(x)) {
        lib.see(main_identity_residual(a, phi, psi, z));
        const auto [l, r] = oracle::main_identity_sides(*g, a, phi, psi, z);
        direct.see(std::abs(l - r));
        ++evaluations;
      }
    }
  }
  return {lib.value <= 1e-10 && direct.value <= 1e-10,
          fmt::format("1400 draws, {} (draw, zeta) evaluations, worst {:.3e}, direct sums {:.3e} (tol 1e-10)",
                      evaluations, lib.value, direct.value)};
}

Outcome comparison() {
  Worst lambda_size;
  Worst induced;
  std::size_t cases = 0;
  bool library_agrees = true;
  std::size_t index = 0;
  for (const auto& [name, g] : fixtures()) {
    const OrbitDecomposition orb = orbits(*g);
    ++index;
    if (orb.classes.size() < 2) continue;
    Sampler s(seed_for(9, index));
    for (ArrowId x : g->units()) {
      const std::size_t own = orb.class_of(x);
      const IsotropyRep regular = IsotropyRep::left_regular(g, x);
      for (int k = 0; k < 50; ++k) {
        std::size_t other = s.index(orb.classes.size() - 1);
        if (other >= own) ++other;
        const Element a = s.orbit_supported(g, other);
        lambda_size.see(oracle::spectral_norm(oracle::lambda(*g, x, a.coeffs())));
        induced.see(oracle::spectral_norm(induce(regular, a).matrix));
        induced.see(oracle::spectral_norm(induce(s.isotropy_rep(g, x), a).matrix));
        library_agrees = library_agrees && comparison_check(regular, a);
        ++cases;
      }
    }
  }
  return {lambda_size.value <= kVanishingTolerance && induced.value <= 1e-9 && library_agrees && cases > 0,
          fmt::format("{} off-orbit elements on union fixtures, ||lambda_x(a)|| <= {:.3e}, ||Ind(a)|| <= {:.3e} "
                      "(tol 1e-9)",
                      cases, lambda_size.value, induced.value)};
}

// The element set shared by the sufficiency, norming and reverse criteria,
// with oracle singular values of the full regular representation.
struct Sample {
  const Fixture* fixture;
  Element a;
  double sigma_min;
  double sigma_max;
};

const std::vector<Sample>& samples() {
  static const std::vector<Sample> all = [] {
    std::vector<Sample> out;
    for (std::size_t i = 0; i < fixtures().size(); ++i) {
      const Fixture& f = fixtures()[i];
      Sampler s(seed_for(10, i));
      for (Element& a : sample_elements(f.g, s, 500, 50)) {
        const ComplexMatrix full = oracle::full_regular(*f.g, a.coeffs());
        const auto sv = oracle::dilation_eigenvalues(full);
        out.push_back({&f, std::move(a), std::max(0.0, sv[full.rows()]), std::max(0.0, sv.back())});
      }
    }
    return out;
  }();
  return all;
}

Outcome sufficiency() {
  const double tol = kDefaultInvertibilityTol;
  std::size_t compared = 0;
  std::size_t skipped = 0;
  std::size_t singular = 0;
  std::size_t disagreements = 0;
  for (const Sample& x : samples()) {
    const bool decisive = std::abs(x.sigma_min - tol) > 10 * tol || x.sigma_min <= tol / 10;
    if (!decisive) {
      ++skipped;
      continue;
    }
    const bool family = invertible_family(x.a, tol).invertible;
    const bool whole = invertible_oracle(x.a, tol);
    if (family != whole || whole != (x.sigma_min > tol)) ++disagreements;
    if (!whole) ++singular;
    ++compared;
  }
  return {disagreements == 0,
          fmt::format("{} elements, {} compared ({} singular), {} inside the margin, {} disagreements",
                      samples().size(), compared, singular, skipped, disagreements)};
}

Outcome strict_norming() {
  Worst max_vs_full;
  Worst argmax;
  Worst library;
  for (const Sample& x : samples()) {
    const NormProfile p = norm(x.a);
    const FiniteGroupoid& g = *x.fixture->g;
    max_vs_full.see(std::abs(p.value - x.sigma_max));
    argmax.see(std::abs(oracle::spectral_norm(oracle::lambda(g, p.max_unit, x.a.coeffs())) - x.sigma_max));
    library.see(std::abs(oracle_norm(x.a) - x.sigma_max));
  }
  const double worst = std::max({max_vs_full.value, argmax.value, library.value});
  return {worst <= 1e-9, fmt::format("{} elements, |max_x - full| {:.3e}, arg max unit {:.3e}, oracle_norm {:.3e} "
                                     "(tol 1e-9)",
                                     samples().size(), max_vs_full.value, argmax.value, library.value)};
}

Outcome roch() {
  std::size_t forward_cases = 0;
  std::size_t forward_bad = 0;
  std::size_t attaining = 0;
  std::size_t blocks = 0;
  for (std::size_t i = 0; i < fixtures().size(); ++i) {
    const auto& [name, g] = fixtures()[i];
    Sampler s(seed_for(12, i));
    const std::size_t orbit_count = orbits(*g).classes.size();
    for (int k = 0; k < 50; ++k) {
      Element a = s.positive(g);
      if (k % 2 == 1) {
        // Lift one orbit well above the rest so attainment is not uniform.
        const Element e = s.orbit_supported(g, s.index(orbit_count));
        a += Complex(3.0) * (e.adjoint() * e);
      }
      const double n = oracle::spectral_norm(oracle::full_regular(*g, a.coeffs()));
      const double slack = 1e-9 * std::max(1.0, n);
      const Element b = a - Complex(n) * Element::unit(g);
      const RochForward lib = roch_forward(a);
      bool ok = lib.holds();
      for (std::size_t u = 0; u < g->units().size(); ++u) {
        const ArrowId x = g->units()[u];
        const auto ev = oracle::eigenvalues(oracle::lambda(*g, x, b.coeffs()));
        double smallest = std::numeric_limits<double>::infinity();
        for (double e : ev) smallest = std::min(smallest, std::abs(e));
        const bool attains = n - oracle::spectral_norm(oracle::lambda(*g, x, a.coeffs())) <= slack;
        const bool singular = smallest <= slack;
        ok = ok && ev.front() >= -n - slack && ev.back() <= slack && attains == singular;
        ok = ok && lib.units[u].attains == attains && lib.units[u].singular == singular;
        attaining += attains;
        ++blocks;
      }
      forward_bad += !ok;
      ++forward_cases;
    }
  }

  std::size_t reverse_cases = 0;
  std::size_t reverse_bad = 0;
  Worst witness_sigma;
  for (const Sample& x : samples()) {
    if (invertible_oracle(x.a)) continue;
    ++reverse_cases;
    const auto w = roch_witness(x.a);
    if (!w) {
      ++reverse_bad;
      continue;
    }
    const double sigma = oracle::min_singular_value(oracle::lambda(*x.fixture->g, *w, x.a.coeffs()));
    witness_sigma.see(sigma);
    if (!(sigma <= kDefaultInvertibilityTol)) ++reverse_bad;
  }
  return {forward_bad == 0 && reverse_bad == 0 && reverse_cases > 0,
          fmt::format("forward {}/{} positive elements ({} of {} blocks attain); reverse {}/{} singular samples, "
                      "witness sigma_min <= {:.3e} (tol 1e-8)",
                      forward_cases - forward_bad, forward_cases, attaining, blocks, reverse_cases - reverse_bad,
                      reverse_cases, witness_sigma.value)};
}

Outcome spectral_kernel() {
  Sampler s(seed_for(13, 0));
  Worst eig;
  for (int k = 0; k < 100; ++k) {
    const ComplexMatrix a = random_hermitian(s, 6);
    const auto got = hermitian_eigenvalues(a);
    const auto want = oracle::eigenvalues(a);
    for (std::size_t i = 0; i < 6; ++i) eig.see(std::abs(got[i] - want[i]));
  }
  Worst law;
  std::size_t law_cases = 0;
  for (std::size_t i = 0; i < fixtures().size(); ++i) {
    const auto& [name, g] = fixtures()[i];
    Sampler t(seed_for(13, i + 1));
    for (int k = 0; k < 50; ++k) {
      const Element a = t.gaussian_element(g);
      double block_max = 0.0;
      for (ArrowId x : g->units()) block_max = std::max(block_max, spectral_norm(lambda_x(*g, x, a).matrix));
      law.see(std::abs(spectral_norm(full_regular(*g, a).matrix) - block_max));
      ++law_cases;
    }
  }
  return {eig.value <= 1e-9 && law.value <= 1e-12,
          fmt::format("100 Hermitian 6x6, worst eigenvalue error {:.3e} (tol 1e-9); block-max law on {} elements, "
                      "worst {:.3e} (tol 1e-12)",
                      eig.value, law_cases, law.value)};
}

int cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o;
  std::ostringstream e;
  const int code = cli::run(args, o, e);
  if (out) *out = o.str();
  return code;
}

Outcome cli_contract() {
  using testing_support::fixture_path;
  const int unit = cli({"invert", fixture_path("pair2.gpd"), fixture_path("unit.elem")});
  const int e12 = cli({"invert", fixture_path("pair2.gpd"), fixture_path("e12.elem")});
  const int shift = cli({"invert", fixture_path("z2.gpd"), fixture_path("z2shift.elem")});
  const std::vector<std::string> verify{"verify", fixture_path("z2action.gpd"), "--trials", "100", "--seed", "42"};
  std::string first;
  std::string second;
  const int v1 = cli(verify, &first);
  const int v2 = cli(verify, &second);
  const bool ok = unit == 0 && e12 == 3 && shift == 0 && v1 == 0 && v2 == 0 && first == second && !first.empty();
  return {ok, fmt::format("invert exits {}/{}/{} (want 0/3/0); verify exits {}/{}, reports {} ({} bytes)", unit, e12,
                          shift, v1, v2, first == second ? "identical" : "differ", first.size())};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"groupoid axioms", axioms},
      {"entry formula", entry_formula},
      {"*-homomorphism", star_homomorphism},
      {"basis inner products", basis_inner_products},
      {"induced regular", induced_regular},
      {"j bounded", j_bounded},
      {"translations", translations},
      {"main identity", main_identity},
      {"comparison", comparison},
      {"sufficiency", sufficiency},
      {"strict norming", strict_norming},
      {"shift constructions", roch},
      {"spectral kernel", spectral_kernel},
      {"cli", cli_contract},
  };
  const auto start = std::chrono::steady_clock::now();
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    fmt::print("{} {:>2} {:<22} {}\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail);
    std::fflush(stdout);
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  fmt::print("{} of {} criteria passed in {:.1f} s\n", criteria.size() - failures, criteria.size(), seconds);
  return failures == 0 ? 0 : 1;
}
