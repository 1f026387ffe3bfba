#include "gpw/checks.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "gpw/analysis.hpp"
#include "gpw/errors.hpp"
#include "gpw/induction.hpp"
#include "gpw/representations.hpp"
#include "gpw/spectral.hpp"

namespace gpw {

void PropertyResult::observe(double residual, const std::function<std::string()>& describe) {
  ++cases;
  if (std::isnan(residual)) residual = INFINITY;
  worst = std::max(worst, residual);
  if (residual > tolerance && passed) {
    passed = false;
    counterexample = describe();
  }
}

bool SuiteReport::passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const PropertyResult& r) { return r.passed; });
}

std::string SuiteReport::to_text() const {
  std::string out = fmt::format("verify: {} arrows, {} units, {} orbits; trials {}, seed {}\n",
                                arrows, units, orbit_count, trials, seed);
  std::size_t failed = 0;
  for (const auto& r : results) {
    out += fmt::format("{} {:<32} cases {:>6}  skipped {:>4}  worst {:.3e}  tol {:.0e}\n",
                       r.passed ? "PASS" : "FAIL", r.name, r.cases, r.skipped, r.worst,
                       r.tolerance);
    if (!r.passed) {
      ++failed;
      out += fmt::format("     counterexample: {}\n", r.counterexample);
    }
  }
  if (failed == 0) {
    out += fmt::format("result: all {} properties passed\n", results.size());
  } else {
    out += fmt::format("result: {} of {} properties failed\n", failed, results.size());
  }
  return out;
}

std::string describe(const Element& a) {
  std::string out = "{";
  bool first = true;
  for (ArrowId id : a.support()) {
    out += fmt::format("{}{}: {:.17g}{:+.17g}i", first ? "" : ", ", id, a[id].real(),
                       a[id].imag());
    first = false;
  }
  return out + "}";
}

namespace {

PropertyResult named(std::string name, double tolerance) {
  PropertyResult r;
  r.name = std::move(name);
  r.tolerance = tolerance;
  return r;
}

double op_norm_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return spectral_norm(a - b);
}

std::string describe(const ModuleVector& v) {
  std::string out = fmt::format("base {} [", v.base());
  for (std::size_t i = 0; i < v.coeffs().size(); ++i) {
    out += fmt::format("{}{:.17g}{:+.17g}i", i ? ", " : "", v[i].real(), v[i].imag());
  }
  return out + "]";
}

// Arrows whose source lies outside the orbit of x.
std::vector<ArrowId> off_orbit_arrows(const FiniteGroupoid& g, const OrbitDecomposition& orb,
                                      ArrowId x) {
  const auto& members = orb.classes[orb.class_of(x)];
  std::vector<ArrowId> out;
  for (ArrowId a = 0; a < g.size(); ++a) {
    if (!std::binary_search(members.begin(), members.end(), g.source(a))) out.push_back(a);
  }
  return out;
}

}  // namespace

namespace checks {

PropertyResult axioms(const FiniteGroupoid& g) {
  PropertyResult r = named("groupoid axioms", 0.0);
  std::string failure;
  try {
    (void)FiniteGroupoid::from_tables(g.tables());
  } catch (const Error& e) {
    failure = e.what();
  }
  r.observe(failure.empty() ? 0.0 : 1.0, [&] { return failure; });
  return r;
}

PropertyResult convolution_associative(const GroupoidPtr& g, Sampler& s, std::size_t count) {
  PropertyResult r = named("convolution associativity", 1e-12);
  for (std::size_t i = 0; i < count; ++i) {
    const Element f = s.gaussian_element(g);
    const Element h = s.gaussian_element(g);
    const Element k = s.gaussian_element(g);
    r.observe(max_abs_diff((f * h) * k, f * (h * k)),
              [&] { return fmt::format("f={} h={} k={}", describe(f), describe(h), describe(k)); });
  }
  return r;
}

PropertyResult involution(const GroupoidPtr& g, Sampler& s, std::size_t count) {
  PropertyResult r = named("involution", 1e-12);
  for (std::size_t i = 0; i < count; ++i) {
    const Element f = s.gaussian_element(g);
    const Element h = s.gaussian_element(g);
    const double twice = max_abs_diff(f.adjoint().adjoint(), f);
    const double anti = max_abs_diff((f * h).adjoint(), h.adjoint() * f.adjoint());
    r.observe(std::max(twice, anti),
              [&] { return fmt::format("f={} h={}", describe(f), describe(h)); });
  }
  return r;
}

PropertyResult lambda_unital(const GroupoidPtr& g) {
  PropertyResult r = named("lambda unital", 0.0);
  const Element one = Element::unit(g);
  for (ArrowId x : g->units()) {
    const ComplexMatrix m = lambda_x(*g, x, one).matrix;
    r.observe(max_abs_diff(m, ComplexMatrix::identity(m.rows())),
              [&] { return fmt::format("unit {}", x); });
  }
  return r;
}

PropertyResult entry_formula(const GroupoidPtr& g, Sampler& s, std::size_t count) {
  PropertyResult r = named("lambda entry formula", 1e-15);
  for (std::size_t i = 0; i < count; ++i) {
    const Element f = s.gaussian_element(g);
    for (ArrowId x : g->units()) {
      r.observe(max_abs_diff(lambda_x(*g, x, f).matrix, lambda_x_by_action(*g, x, f).matrix),
                [&] { return fmt::format("unit {} f={}", x, describe(f)); });
    }
  }
  return r;
}

PropertyResult lambda_multiplicative(const GroupoidPtr& g, Sampler& s, std::size_t count) {
  PropertyResult r = named("lambda multiplicative", 1e-11);
  for (std::size_t i = 0; i < count; ++i) {
    const Element f = s.gaussian_element(g);
    const Element h = s.gaussian_element(g);
    const Element fh = f * h;
    for (ArrowId x : g->units()) {
      r.observe(op_norm_diff(lambda_x(*g, x, fh).matrix,
                             lambda_x(*g, x, f).matrix * lambda_x(*g, x, h).matrix),
                [&] { return fmt::format("unit {} f={} h={}", x, describe(f), describe(h)); });
    }
  }
  return r;
}

PropertyResult lambda_adjoint(const GroupoidPtr& g, Sampler& s, std::size_t count) {
  PropertyResult r = named("lambda adjoint", 1e-12);
  for (std::size_t i = 0; i < count; ++i) {
    const Element f = s.gaussian_element(g);
    const Element fs = f.adjoint();
    for (ArrowId x : g->units()) {
      r.observe(op_norm_diff(lambda_x(*g, x, fs).matrix, lambda_x(*g, x, f).matrix.adjoint()),
                [&] { return fmt::format("unit {} f={}", x, describe(f)); });
    }
  }
  return r;
}

PropertyResult orbit_equivalence(const GroupoidPtr& g, Sampler& s, std::size_t count) {
  PropertyResult r = named("orbit unitary equivalence", 1e-12);
  const OrbitDecomposition orb = orbits(*g);
  for (std::size_t i = 0; i < count; ++i) {
    const Element f = s.gaussian_element(g);
    for (const auto& members : orb.classes) {
      const ArrowId x = members.front();
      const ComplexMatrix lx = lambda_x(*g, x, f).matrix;
      for (ArrowId y : members) {
        const ArrowId c = *connecting_arrow(*g, x, y);
        const ComplexMatrix w = orbit_intertwiner(*g, c);
        r.observe(op_norm_diff(w * lx * w.adjoint(), lambda_x(*g, y, f).matrix), [&] {
          return fmt::format("units {} -> {} via {} f={}", x, y, c, describe(f));
        });
      }
    }
  }
  return r;
}

PropertyResult isotropy_regular(const GroupoidPtr& g, Sampler& s, std::size_t count) {
  PropertyResult r = named("isotropy regular multiplicative", 1e-11);
  for (std::size_t i = 0; i < count; ++i) {
    for (ArrowId x : g->units()) {
      const Element b = s.isotropy_element(g, x);
      const Element c = s.isotropy_element(g, x);
      r.observe(op_norm_diff(isotropy_left_regular(*g, x, b * c).matrix,
                             isotropy_left_regular(*g, x, b).matrix *
                                 isotropy_left_regular(*g, x, c).matrix),
                [&] { return fmt::format("unit {} b={} c={}", x, describe(b), describe(c)); });
    }
  }
  return r;
}

PropertyResult translation_representation(const GroupoidPtr& g) {
  PropertyResult r = named("translation representation", 0.0);
  for (ArrowId x : g->units()) {
    const auto group = g->isotropy(x);
    for (ArrowId z1 : group) {
      const ComplexMatrix r1 = translation_unitary(*g, x, z1).matrix;
      const ComplexMatrix id = ComplexMatrix::identity(r1.rows());
      r.observe(r1 * r1.adjoint() == id && r1.adjoint() * r1 == id ? 0.0 : 1.0,
                [&] { return fmt::format("R_{} at unit {} is not unitary", z1, x); });
      for (ArrowId z2 : group) {
        const ComplexMatrix lhs = translation_unitary(*g, x, g->compose(z1, z2)).matrix;
        const ComplexMatrix rhs = r1 * translation_unitary(*g, x, z2).matrix;
        r.observe(lhs == rhs ? 0.0 : 1.0,
                  [&] { return fmt::format("R_({}*{}) != R_{} R_{} at unit {}", z1, z2, z1, z2, x); });
      }
    }
  }
  return r;
}

PropertyResult basis_inner_products(const GroupoidPtr& g) {
  PropertyResult r = named("basis inner products", 0.0);
  for (ArrowId x : g->units()) {
    const auto fiber = g->source_fiber(x);
    for (ArrowId a : fiber) {
      for (ArrowId b : fiber) {
        Element expected(g);
        if (g->range(a) == g->range(b)) expected = Element::delta(g, g->compose(g->inverse(a), b));
        const Element got =
            star_inner(ModuleVector::basis(g, x, a), ModuleVector::basis(g, x, b));
        const bool exact = std::equal(got.coeffs().begin(), got.coeffs().end(),
                                      expected.coeffs().begin());
        r.observe(exact ? 0.0 : 1.0, [&] {
          return fmt::format("<e_{}, e_{}> = {} at unit {}", a, b, gpw::describe(got), x);
        });
      }
    }
  }
  return r;
}

PropertyResult gram_boolean(const GroupoidPtr& g) {
  PropertyResult r = named("induced gram boolean", 0.0);
  for (ArrowId x : g->units()) {
    const InducedSpace space(IsotropyRep::left_regular(g, x));
    const auto fiber = g->source_fiber(x);
    const auto group = g->isotropy(x);
    for (ArrowId a : fiber) {
      for (std::size_t k = 0; k < group.size(); ++k) {
        for (ArrowId b : fiber) {
          for (std::size_t l = 0; l < group.size(); ++l) {
            const bool same = g->compose(a, group[k]) == g->compose(b, group[l]);
            const Complex got = space.raw_inner(a, k, b, l);
            r.observe(got == Complex(same ? 1.0 : 0.0) ? 0.0 : 1.0, [&] {
              return fmt::format("<phi({},{}), phi({},{})> = {}{:+}i at unit {}", a, group[k], b,
                                 group[l], got.real(), got.imag(), x);
            });
          }
        }
      }
    }
  }
  return r;
}

PropertyResult quotient_identification(const GroupoidPtr& g) {
  PropertyResult r = named("quotient identification", 1e-10);
  for (ArrowId x : g->units()) {
    const InducedSpace space(IsotropyRep::left_regular(g, x));
    const auto group = g->isotropy(x);
    const std::size_t unit_slot =
        static_cast<std::size_t>(std::find(group.begin(), group.end(), x) - group.begin());
    for (ArrowId a : g->source_fiber(x)) {
      for (std::size_t k = 0; k < group.size(); ++k) {
        const auto lhs = space.coordinates(a, k);
        const auto rhs = space.coordinates(g->compose(a, group[k]), unit_slot);
        double diff = 0.0;
        for (std::size_t i = 0; i < lhs.size(); ++i) diff = std::max(diff, std::abs(lhs[i] - rhs[i]));
        r.observe(diff, [&] { return fmt::format("phi({},{}) vs phi({}*{},{}) at unit {}", a,
                                                 group[k], a, group[k], x, x); });
      }
    }
  }
  return r;
}

PropertyResult induced_regular_equivalence(const GroupoidPtr& g, Sampler& s, std::size_t count) {
  PropertyResult r = named("induced regular equivalence", 1e-10);
  for (ArrowId x : g->units()) {
    const InducedSpace space(IsotropyRep::left_regular(g, x));
    const ComplexMatrix u = equivalence_unitary(g, x).matrix;
    r.observe(std::max(max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.cols())),
                       max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(u.rows()))),
              [&] { return fmt::format("U at unit {} is not unitary", x); });
    for (std::size_t i = 0; i < count; ++i) {
      const Element f = s.gaussian_element(g);
      r.observe(op_norm_diff(u.adjoint() * space.represent(f).matrix * u, lambda_x(*g, x, f).matrix),
                [&] { return fmt::format("unit {} f={}", x, describe(f)); });
    }
  }
  return r;
}

PropertyResult j_bounded(const GroupoidPtr& g, Sampler& s, std::size_t count) {
  PropertyResult r = named("j bounded", 1e-10);
  for (ArrowId x : g->units()) {
    for (std::size_t i = 0; i < count; ++i) {
      const ModuleVector phi = s.gaussian_vector(g, x);
      r.observe(std::max(0.0, norm2(embed_j(phi)) - module_norm(phi)),
                [&] { return describe(phi); });
    }
  }
  return r;
}

PropertyResult main_identity(const GroupoidPtr& g, Sampler& s, std::size_t count) {
  PropertyResult r = named("main identity", 1e-10);
  for (ArrowId x : g->units()) {
    for (std::size_t i = 0; i < count; ++i) {
      const Element a = s.gaussian_element(g);
      const ModuleVector phi = s.gaussian_vector(g, x);
      const ModuleVector psi = s.gaussian_vector(g, x);
      for (ArrowId zeta : g->isotropy(x)) {
        r.observe(main_identity_residual(a, phi, psi, zeta), [&] {
          return fmt::format("zeta {} a={} phi={} psi={}", zeta, gpw::describe(a), describe(phi),
                             describe(psi));
        });
      }
    }
  }
  return r;
}

PropertyResult fourier_bound(const GroupoidPtr& g, Sampler& s, std::size_t count) {
  PropertyResult r = named("fourier coefficient bound", 1e-12);
  for (ArrowId x : g->units()) {
    for (std::size_t i = 0; i < count; ++i) {
      const Element b = s.isotropy_element(g, x);
      const double bound = spectral_norm(isotropy_left_regular(*g, x, b).matrix);
      for (ArrowId zeta : g->isotropy(x)) {
        r.observe(std::max(0.0, std::abs(fourier(b, x, zeta)) - bound),
                  [&] { return fmt::format("unit {} zeta {} b={}", x, zeta, describe(b)); });
      }
    }
  }
  return r;
}

PropertyResult comparison(const GroupoidPtr& g, Sampler& s, std::size_t count) {
  PropertyResult r = named("comparison", kInducedVanishingTolerance);
  const OrbitDecomposition orb = orbits(*g);
  for (ArrowId x : g->units()) {
    const auto off = off_orbit_arrows(*g, orb, x);
    const IsotropyRep regular = IsotropyRep::left_regular(g, x);
    for (std::size_t i = 0; i < count; ++i) {
      Element a(g);
      for (ArrowId id : off) a[id] = s.gaussian();
      const IsotropyRep other = s.isotropy_rep(g, x);
      if (spectral_norm(lambda_x(*g, x, a).matrix) > kVanishingTolerance) {
        r.observe(INFINITY, [&] { return fmt::format("lambda_{} does not vanish on {}", x, describe(a)); });
        continue;
      }
      const double ind = std::max(spectral_norm(induce(regular, a).matrix),
                                  spectral_norm(induce(other, a).matrix));
      r.observe(ind, [&] { return fmt::format("unit {} a={}", x, describe(a)); });
    }
  }
  return r;
}

PropertyResult induced_homomorphism(const GroupoidPtr& g, Sampler& s, std::size_t count) {
  PropertyResult r = named("induced homomorphism", 1e-10);
  for (ArrowId x : g->units()) {
    const InducedSpace space(s.isotropy_rep(g, x));
    for (std::size_t i = 0; i < count; ++i) {
      const Element f = s.gaussian_element(g);
      const Element h = s.gaussian_element(g);
      const ComplexMatrix tf = space.represent(f).matrix;
      const double mult = op_norm_diff(space.represent(f * h).matrix, tf * space.represent(h).matrix);
      const double adj = op_norm_diff(space.represent(f.adjoint()).matrix, tf.adjoint());
      r.observe(std::max(mult, adj), [&] {
        return fmt::format("unit {} rep dim {} f={} h={}", x, space.rep().dim(), describe(f),
                           describe(h));
      });
    }
    const ComplexMatrix one = space.represent(Element::unit(g)).matrix;
    r.observe(max_abs_diff(one, ComplexMatrix::identity(one.rows())),
              [&] { return fmt::format("Ind L(1) is not the identity at unit {}", x); });
  }
  return r;
}

PropertyResult sufficiency(std::span<const Element> elements, double tol) {
  PropertyResult r = named("sufficiency", 0.0);
  for (const Element& a : elements) {
    const double sigma = min_singular_value(full_regular(a.groupoid(), a).matrix);
    const bool decisive = std::abs(sigma - tol) > 10.0 * tol || sigma <= 0.1 * tol;
    if (!decisive) {
      ++r.skipped;
      continue;
    }
    const bool oracle = sigma > tol;
    const InvertibilityReport family = invertible_family(a, tol);
    r.observe(family.invertible == oracle ? 0.0 : 1.0, [&] {
      return fmt::format("family says {}, oracle sigma_min {:.3e}; a={}",
                         family.invertible ? "invertible" : "singular", sigma, describe(a));
    });
  }
  return r;
}

PropertyResult strict_norming(std::span<const Element> elements) {
  PropertyResult r = named("strict norming", 1e-9);
  for (const Element& a : elements) {
    const NormProfile profile = norm(a);
    const double oracle = oracle_norm(a);
    const double attained =
        spectral_norm(lambda_x(a.groupoid(), profile.max_unit, a).matrix);
    r.observe(std::max(std::abs(profile.value - oracle), std::abs(attained - oracle)), [&] {
      return fmt::format("max {} at unit {}, oracle {}; a={}", profile.value, profile.max_unit,
                         oracle, describe(a));
    });
  }
  return r;
}

PropertyResult roch_forward(const GroupoidPtr& g, Sampler& s, std::size_t count) {
  PropertyResult r = named("shift construction", 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    Element a = s.positive(g);
    // Every other sample is made to attain its norm on one orbit only.
    if (i % 2 == 1) {
      const Element extra = s.orbit_supported(g, s.index(orbits(*g).classes.size()));
      a += convolve(extra.adjoint(), extra);
    }
    const RochForward rf = gpw::roch_forward(a);
    r.observe(rf.holds() ? 0.0 : 1.0, [&] {
      std::string units;
      for (const auto& u : rf.units) {
        units += fmt::format(" [{}: norm {:.17g} spec [{:.3e}, {:.3e}] smin {:.3e}]", u.unit,
                             u.block_norm, u.lowest, u.highest, u.sigma_min_shift);
      }
      return fmt::format("N {:.17g}{} a={}", rf.norm, units, describe(a));
    });
  }
  return r;
}

PropertyResult roch_reverse(std::span<const Element> elements, double tol) {
  PropertyResult r = named("witness localization", tol);
  for (const Element& a : elements) {
    const auto witness = roch_witness(a, tol);
    if (invertible_oracle(a, tol)) {
      r.observe(witness ? INFINITY : 0.0, [&] { return "witness for invertible " + describe(a); });
      continue;
    }
    if (!witness) {
      r.observe(INFINITY, [&] { return "no witness for singular " + describe(a); });
      continue;
    }
    const double sigma = min_singular_value(lambda_x(a.groupoid(), *witness, a).matrix);
    r.observe(sigma, [&] {
      return fmt::format("witness {} has sigma_min {:.3e}; a={}", *witness, sigma, describe(a));
    });
  }
  return r;
}

PropertyResult spectrum_consistency(const GroupoidPtr& g, Sampler& s, std::size_t count) {
  PropertyResult r = named("spectrum consistency", 1e-9);
  for (std::size_t i = 0; i < count; ++i) {
    const Element a = s.self_adjoint(g);
    std::vector<double> pooled;
    for (ArrowId x : g->units()) {
      const auto block = hermitian_eigenvalues(lambda_x(*g, x, a).matrix);
      pooled.insert(pooled.end(), block.begin(), block.end());
    }
    std::sort(pooled.begin(), pooled.end());
    const auto whole = hermitian_eigenvalues(full_regular(*g, a).matrix);
    double diff = 0.0;
    for (std::size_t k = 0; k < whole.size(); ++k) diff = std::max(diff, std::abs(whole[k] - pooled[k]));
    r.observe(diff, [&] { return describe(a); });
  }
  return r;
}

}  // namespace checks

SuiteReport verify_suite(const GroupoidPtr& g, std::size_t trials, std::uint64_t seed) {
  SuiteReport report;
  report.arrows = g->size();
  report.units = g->units().size();
  report.orbit_count = orbits(*g).classes.size();
  report.trials = trials;
  report.seed = seed;

  std::uint64_t stream = 0;
  auto next = [&] { return Sampler(derive_seed(seed, stream++)); };
  auto& out = report.results;

  out.push_back(checks::axioms(*g));
  {
    Sampler s = next();
    out.push_back(checks::convolution_associative(g, s, trials));
  }
  {
    Sampler s = next();
    out.push_back(checks::involution(g, s, trials));
  }
  out.push_back(checks::lambda_unital(g));
  {
    Sampler s = next();
    out.push_back(checks::entry_formula(g, s, trials));
  }
  {
    Sampler s = next();
    out.push_back(checks::lambda_multiplicative(g, s, trials));
  }
  {
    Sampler s = next();
    out.push_back(checks::lambda_adjoint(g, s, trials));
  }
  {
    Sampler s = next();
    out.push_back(checks::orbit_equivalence(g, s, trials));
  }
  {
    Sampler s = next();
    out.push_back(checks::isotropy_regular(g, s, trials));
  }
  out.push_back(checks::translation_representation(g));
  out.push_back(checks::basis_inner_products(g));
  out.push_back(checks::gram_boolean(g));
  out.push_back(checks::quotient_identification(g));
  {
    Sampler s = next();
    out.push_back(checks::induced_regular_equivalence(g, s, trials));
  }
  {
    Sampler s = next();
    out.push_back(checks::j_bounded(g, s, trials));
  }
  {
    Sampler s = next();
    out.push_back(checks::main_identity(g, s, trials));
  }
  {
    Sampler s = next();
    out.push_back(checks::fourier_bound(g, s, trials));
  }
  {
    Sampler s = next();
    out.push_back(checks::comparison(g, s, trials));
  }
  {
    Sampler s = next();
    out.push_back(checks::induced_homomorphism(g, s, trials));
  }
  {
    Sampler s = next();
    const auto elements = sample_elements(g, s, trials, std::max<std::size_t>(6, trials / 4));
    out.push_back(checks::sufficiency(elements, kDefaultInvertibilityTol));
    out.push_back(checks::strict_norming(elements));
    out.push_back(checks::roch_reverse(elements, kDefaultInvertibilityTol));
  }
  {
    Sampler s = next();
    out.push_back(checks::roch_forward(g, s, trials));
  }
  {
    Sampler s = next();
    out.push_back(checks::spectrum_consistency(g, s, trials));
  }
  return report;
}

}  // namespace gpw
