#pragma once

#include <optional>
#include <vector>

#include "gpw/algebra.hpp"
#include "gpw/groupoid.hpp"

namespace gpw {

inline constexpr double kDefaultInvertibilityTol = 1e-8;

struct EvalOptions {
  // Evaluate one unit per orbit (the least id). lambda_x and lambda_y are
  // unitarily equivalent along an orbit, so norms and verdicts are unchanged.
  bool orbit_reps = false;
};

struct UnitValue {
  ArrowId unit;
  double value;
};

struct NormProfile {
  std::vector<UnitValue> per_unit;  // ascending unit id
  ArrowId max_unit = kNoArrow;      // least unit attaining the maximum
  double value = 0.0;
};

struct InvertibilityReport {
  bool invertible = false;
  std::vector<UnitValue> per_unit;  // sigma_min(lambda_x(a))
  ArrowId witness = kNoArrow;       // least unit attaining the minimum
  double tol = kDefaultInvertibilityTol;
};

// ||lambda_x(a)|| for every unit and the attained maximum.
NormProfile norm(const Element& a, EvalOptions opts = {});

// ||full_regular(a)||, the norm in a faithful representation.
double oracle_norm(const Element& a);

// Invertible iff every sigma_min(lambda_x(a)) exceeds tol. Throws
// std::invalid_argument when tol <= 0.
InvertibilityReport invertible_family(const Element& a, double tol = kDefaultInvertibilityTol,
                                      EvalOptions opts = {});

// sigma_min(full_regular(a)) > tol.
bool invertible_oracle(const Element& a, double tol = kDefaultInvertibilityTol);

// For a singular element: with c = a* a and b = ||c|| - c, the least unit
// maximizing ||lambda_x(b)||. That unit has a non-invertible lambda_x(a).
// nullopt when a is invertible.
std::optional<ArrowId> roch_witness(const Element& a, double tol = kDefaultInvertibilityTol);

struct RochForwardUnit {
  ArrowId unit;
  double block_norm;       // ||lambda_x(a)||
  double lowest;           // extreme eigenvalues of lambda_x(a - N)
  double highest;
  double sigma_min_shift;  // sigma_min(lambda_x(a - N))
  bool attains;
  bool singular;
};

struct RochForward {
  double norm = 0.0;  // N
  double slack = 0.0;
  std::vector<RochForwardUnit> units;

  // Every block spectrum of a - N lies in [-N, 0] and the singular blocks are
  // exactly those at norm-attaining units.
  bool holds() const;
};

// Shift construction for a positive element. Attainment and singularity are
// both decided against slack = 1e-9 * max(1, N). Throws NotHermitian if a is
// not self-adjoint.
RochForward roch_forward(const Element& positive);

}  // namespace gpw
