#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gpw/algebra.hpp"
#include "gpw/induction.hpp"
#include "gpw/matrix.hpp"

namespace gpw {

// Seeded source of random algebra elements, module vectors and unitaries.
// Sequences are reproducible for a given seed and build.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  // Complex Gaussian with E|z|^2 = 1.
  Complex gaussian();
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  std::size_t index(std::size_t n);

  Element gaussian_element(const GroupoidPtr& g);
  Element self_adjoint(const GroupoidPtr& g);
  // f* f for Gaussian f.
  Element positive(const GroupoidPtr& g);
  // Gaussian coefficients on the arrows of one orbit, zero elsewhere.
  Element orbit_supported(const GroupoidPtr& g, std::size_t orbit_index);
  Element isotropy_element(const GroupoidPtr& g, ArrowId x);
  ModuleVector gaussian_vector(const GroupoidPtr& g, ArrowId x);
  // Haar-like unitary from Gram-Schmidt on a Gaussian matrix.
  ComplexMatrix unitary(std::size_t n);
  // A random representation of G(x) assembled from the built-in ones.
  IsotropyRep isotropy_rep(const GroupoidPtr& g, ArrowId x);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Adversarial families: point masses, shifted positives, orbit-supported and
// spectrally shifted (numerically singular) elements, zero and scaled units.
std::vector<Element> structured_elements(const GroupoidPtr& g, Sampler& sampler,
                                         std::size_t count);

// `random_count` Gaussian elements followed by `structured_count` structured ones.
std::vector<Element> sample_elements(const GroupoidPtr& g, Sampler& sampler,
                                     std::size_t random_count, std::size_t structured_count);

// Seed for an independent stream derived from a base seed and a stream tag.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace gpw
