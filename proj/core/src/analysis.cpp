#include "gpw/analysis.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

#include "gpw/representations.hpp"
#include "gpw/spectral.hpp"

namespace gpw {

namespace {

std::vector<ArrowId> evaluated_units(const FiniteGroupoid& g, const EvalOptions& opts) {
  if (opts.orbit_reps) return orbits(g).representatives;
  return {g.units().begin(), g.units().end()};
}

void require_positive_tol(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument(fmt::format("tolerance must be positive, got {}", tol));
}

}  // namespace

NormProfile norm(const Element& a, EvalOptions opts) {
  const FiniteGroupoid& g = a.groupoid();
  NormProfile out;
  for (ArrowId x : evaluated_units(g, opts)) {
    const double v = spectral_norm(lambda_x(g, x, a).matrix);
    out.per_unit.push_back({x, v});
    if (out.max_unit == kNoArrow || v > out.value) {
      out.max_unit = x;
      out.value = v;
    }
  }
  return out;
}

double oracle_norm(const Element& a) {
  return spectral_norm(full_regular(a.groupoid(), a).matrix);
}

InvertibilityReport invertible_family(const Element& a, double tol, EvalOptions opts) {
  require_positive_tol(tol);
  const FiniteGroupoid& g = a.groupoid();
  InvertibilityReport out;
  out.tol = tol;
  double lowest = 0.0;
  for (ArrowId x : evaluated_units(g, opts)) {
    const double s = min_singular_value(lambda_x(g, x, a).matrix);
    out.per_unit.push_back({x, s});
    if (out.witness == kNoArrow || s < lowest) {
      out.witness = x;
      lowest = s;
    }
  }
  out.invertible = lowest > tol;
  return out;
}

bool invertible_oracle(const Element& a, double tol) {
  require_positive_tol(tol);
  return min_singular_value(full_regular(a.groupoid(), a).matrix) > tol;
}

std::optional<ArrowId> roch_witness(const Element& a, double tol) {
  if (invertible_oracle(a, tol)) return std::nullopt;
  const Element c = convolve(a.adjoint(), a);
  const Element b = oracle_norm(c) * Element::unit(a.groupoid_ptr()) - c;
  return norm(b).max_unit;
}

bool RochForward::holds() const {
  return std::all_of(units.begin(), units.end(), [this](const RochForwardUnit& u) {
    return u.lowest >= -norm - slack && u.highest <= slack && u.attains == u.singular;
  });
}

RochForward roch_forward(const Element& positive) {
  const FiniteGroupoid& g = positive.groupoid();
  RochForward out;
  const NormProfile profile = norm(positive);
  out.norm = profile.value;
  out.slack = 1e-9 * std::max(1.0, out.norm);
  const Element shifted = positive - out.norm * Element::unit(positive.groupoid_ptr());
  for (const auto& [x, block_norm] : profile.per_unit) {
    const ComplexMatrix block = lambda_x(g, x, shifted).matrix;
    const auto spectrum = hermitian_eigenvalues(block);
    RochForwardUnit u{};
    u.unit = x;
    u.block_norm = block_norm;
    u.lowest = spectrum.front();
    u.highest = spectrum.back();
    u.sigma_min_shift = min_singular_value(block);
    u.attains = out.norm - block_norm <= out.slack;
    u.singular = u.sigma_min_shift <= out.slack;
    out.units.push_back(u);
  }
  return out;
}

}  // namespace gpw
