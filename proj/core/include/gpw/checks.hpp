#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gpw/algebra.hpp"
#include "gpw/groupoid.hpp"
#include "gpw/sampling.hpp"

namespace gpw {

// Outcome of one property over many cases. A residual above `tolerance`
// fails the property; the first failing case is kept as the counterexample.
struct PropertyResult {
  std::string name;
  double tolerance = 0.0;
  std::size_t cases = 0;
  std::size_t skipped = 0;
  double worst = 0.0;
  bool passed = true;
  std::string counterexample;

  void observe(double residual, const std::function<std::string()>& describe);
};

struct SuiteReport {
  std::size_t arrows = 0;
  std::size_t units = 0;
  std::size_t orbit_count = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> results;

  bool passed() const;
  std::string to_text() const;
};

std::string describe(const Element& a);

// Each check draws its own randomness from `sampler`; `count` is per unit
// where the property is stated per unit.
namespace checks {

PropertyResult axioms(const FiniteGroupoid& g);
PropertyResult convolution_associative(const GroupoidPtr& g, Sampler& s, std::size_t count);
PropertyResult involution(const GroupoidPtr& g, Sampler& s, std::size_t count);
PropertyResult lambda_unital(const GroupoidPtr& g);
PropertyResult entry_formula(const GroupoidPtr& g, Sampler& s, std::size_t count);
PropertyResult lambda_multiplicative(const GroupoidPtr& g, Sampler& s, std::size_t count);
PropertyResult lambda_adjoint(const GroupoidPtr& g, Sampler& s, std::size_t count);
PropertyResult orbit_equivalence(const GroupoidPtr& g, Sampler& s, std::size_t count);
PropertyResult isotropy_regular(const GroupoidPtr& g, Sampler& s, std::size_t count);
PropertyResult translation_representation(const GroupoidPtr& g);
PropertyResult basis_inner_products(const GroupoidPtr& g);
PropertyResult gram_boolean(const GroupoidPtr& g);
PropertyResult quotient_identification(const GroupoidPtr& g);
PropertyResult induced_regular_equivalence(const GroupoidPtr& g, Sampler& s, std::size_t count);
PropertyResult j_bounded(const GroupoidPtr& g, Sampler& s, std::size_t count);
PropertyResult main_identity(const GroupoidPtr& g, Sampler& s, std::size_t count);
PropertyResult fourier_bound(const GroupoidPtr& g, Sampler& s, std::size_t count);
PropertyResult comparison(const GroupoidPtr& g, Sampler& s, std::size_t count);
PropertyResult induced_homomorphism(const GroupoidPtr& g, Sampler& s, std::size_t count);

// Verdicts are compared where sigma_min(full_regular(a)) is decisive:
// |sigma - tol| > 10 tol, or sigma <= tol / 10. Other elements are skipped.
PropertyResult sufficiency(std::span<const Element> elements, double tol);
PropertyResult strict_norming(std::span<const Element> elements);
PropertyResult roch_forward(const GroupoidPtr& g, Sampler& s, std::size_t count);
PropertyResult roch_reverse(std::span<const Element> elements, double tol);
PropertyResult spectrum_consistency(const GroupoidPtr& g, Sampler& s, std::size_t count);

}  // namespace checks

// Runs every property above on g with `trials` samples each. Deterministic
// for a given seed.
SuiteReport verify_suite(const GroupoidPtr& g, std::size_t trials, std::uint64_t seed);

}  // namespace gpw
