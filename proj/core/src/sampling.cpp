#include "gpw/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "gpw/errors.hpp"
#include "gpw/representations.hpp"
#include "gpw/spectral.hpp"

namespace gpw {

Complex Sampler::gaussian() {
  std::normal_distribution<double> half(0.0, std::sqrt(0.5));
  const double re = half(engine_);
  const double im = half(engine_);
  return {re, im};
}

std::size_t Sampler::index(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

Element Sampler::gaussian_element(const GroupoidPtr& g) {
  Element out(g);
  for (ArrowId a = 0; a < g->size(); ++a) out[a] = gaussian();
  return out;
}

Element Sampler::self_adjoint(const GroupoidPtr& g) {
  const Element f = gaussian_element(g);
  return 0.5 * (f + f.adjoint());
}

Element Sampler::positive(const GroupoidPtr& g) {
  const Element f = gaussian_element(g);
  return convolve(f.adjoint(), f);
}

Element Sampler::orbit_supported(const GroupoidPtr& g, std::size_t orbit_index) {
  const OrbitDecomposition orb = orbits(*g);
  const auto& members = orb.classes.at(orbit_index % orb.classes.size());
  Element out(g);
  for (ArrowId a = 0; a < g->size(); ++a) {
    if (std::binary_search(members.begin(), members.end(), g->source(a))) out[a] = gaussian();
  }
  return out;
}

Element Sampler::isotropy_element(const GroupoidPtr& g, ArrowId x) {
  Element out(g);
  for (ArrowId h : g->isotropy(x)) out[h] = gaussian();
  return out;
}

ModuleVector Sampler::gaussian_vector(const GroupoidPtr& g, ArrowId x) {
  ModuleVector out(g, x);
  for (std::size_t i = 0; i < out.coeffs().size(); ++i) out[i] = gaussian();
  return out;
}

ComplexMatrix Sampler::unitary(std::size_t n) {
  ComplexMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) q(i, j) = gaussian();
  }
  // Modified Gram-Schmidt on the columns, run twice for orthogonality.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex proj{};
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, k)) * q(i, j);
        for (std::size_t i = 0; i < n; ++i) q(i, j) -= proj * q(i, k);
      }
      double norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, j));
      norm = std::sqrt(norm);
      for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
    }
  }
  return q;
}

IsotropyRep Sampler::isotropy_rep(const GroupoidPtr& g, ArrowId x) {
  const auto group = g->isotropy(x);
  IsotropyRep rep = IsotropyRep::trivial(g, x);
  switch (index(4)) {
    case 0:
      rep = IsotropyRep::left_regular(g, x);
      break;
    case 1:
      rep = IsotropyRep::translations(g, x);
      break;
    case 2: {
      // A character if some element generates the group, else the regular rep.
      bool found = false;
      for (ArrowId h : group) {
        try {
          rep = IsotropyRep::character(g, x, h, static_cast<long>(index(group.size())));
          found = true;
          break;
        } catch (const Error&) {
        }
      }
      if (!found) rep = IsotropyRep::left_regular(g, x);
      break;
    }
    default:
      rep = IsotropyRep::trivial(g, x).direct_sum(IsotropyRep::left_regular(g, x));
      break;
  }
  return rep.conjugated(unitary(rep.dim()));
}

std::vector<Element> structured_elements(const GroupoidPtr& g, Sampler& sampler,
                                         std::size_t count) {
  const OrbitDecomposition orb = orbits(*g);
  std::vector<ArrowId> loops;  // non-unit arrows with r = s
  for (ArrowId a = 0; a < g->size(); ++a) {
    if (!g->is_unit(a) && g->source(a) == g->range(a)) loops.push_back(a);
  }

  std::vector<Element> out;
  out.reserve(count);
  for (std::size_t k = 0; out.size() < count; ++k) {
    switch (k % 6) {
      case 0:
        out.push_back(Element::delta(g, static_cast<ArrowId>(sampler.index(g->size()))));
        break;
      case 1: {
        const double shifts[] = {0.0, 0.25, 2.0};
        out.push_back(sampler.positive(g) + shifts[(k / 6) % 3] * Element::unit(g));
        break;
      }
      case 2:
        out.push_back(sampler.orbit_supported(g, sampler.index(orb.classes.size())));
        break;
      case 3: {
        const ArrowId loop = loops.empty() ? g->units()[sampler.index(g->units().size())]
                                           : loops[sampler.index(loops.size())];
        out.push_back(2.0 * Element::unit(g) + Element::delta(g, loop));
        break;
      }
      case 4: {
        // c - mu with mu an eigenvalue of one block: singular up to rounding.
        const Element c = sampler.self_adjoint(g);
        const ArrowId x = g->units()[sampler.index(g->units().size())];
        const auto values = hermitian_eigenvalues(lambda_x(*g, x, c).matrix);
        const double mu = values[sampler.index(values.size())];
        out.push_back(c - mu * Element::unit(g));
        break;
      }
      default:
        if ((k / 6) % 2 == 0) {
          out.push_back(Element::zero(g));
        } else {
          out.push_back(sampler.gaussian() * Element::unit(g));
        }
        break;
    }
  }
  return out;
}

std::vector<Element> sample_elements(const GroupoidPtr& g, Sampler& sampler,
                                     std::size_t random_count, std::size_t structured_count) {
  std::vector<Element> out;
  out.reserve(random_count + structured_count);
  for (std::size_t i = 0; i < random_count; ++i) out.push_back(sampler.gaussian_element(g));
  auto structured = structured_elements(g, sampler, structured_count);
  out.insert(out.end(), std::make_move_iterator(structured.begin()),
             std::make_move_iterator(structured.end()));
  return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined value.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace gpw
