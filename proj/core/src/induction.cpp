#include "gpw/induction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "gpw/errors.hpp"
#include "gpw/spectral.hpp"

namespace gpw {

namespace {

constexpr double kRepTolerance = 1e-10;

void require_same_base(const ModuleVector& a, const ModuleVector& b) {
  require_same_groupoid(a.groupoid(), b.groupoid());
  if (a.base() != b.base()) {
    throw BaseUnitMismatch(
        fmt::format("module vectors based at units {} and {}", a.base(), b.base()));
  }
}

void require_in_isotropy(const FiniteGroupoid& g, ArrowId x, ArrowId zeta) {
  g.require_unit(x);
  g.require_arrow(zeta);
  if (g.source(zeta) != x || g.range(zeta) != x) {
    throw NotInIsotropy(fmt::format("arrow {} is not in the isotropy group of unit {}", zeta, x));
  }
}

bool is_unitary(const ComplexMatrix& m) {
  return m.square() &&
         max_abs_diff(m * m.adjoint(), ComplexMatrix::identity(m.rows())) <= kRepTolerance;
}

}  // namespace

ModuleVector::ModuleVector(GroupoidPtr g, ArrowId base) : groupoid_(std::move(g)), base_(base) {
  if (!groupoid_) throw GroupoidMismatch("module vector needs a groupoid");
  coeffs_.assign(groupoid_->source_fiber(base).size(), Complex{});
}

ModuleVector::ModuleVector(GroupoidPtr g, ArrowId base, std::vector<Complex> coeffs)
    : ModuleVector(std::move(g), base) {
  if (coeffs.size() != coeffs_.size()) {
    throw DimensionMismatch(fmt::format("{} coefficients for a fiber of size {}", coeffs.size(),
                                        coeffs_.size()));
  }
  coeffs_ = std::move(coeffs);
}

ModuleVector ModuleVector::basis(GroupoidPtr g, ArrowId base, ArrowId a) {
  ModuleVector out(std::move(g), base);
  const FiniteGroupoid& gr = out.groupoid();
  if (gr.source(a) != base) {
    throw BaseUnitMismatch(fmt::format("arrow {} has source {}, not {}", a, gr.source(a), base));
  }
  out.coeffs_[gr.position_in_source_fiber(a)] = 1.0;
  return out;
}

Complex ModuleVector::value(ArrowId a) const {
  if (groupoid_->source(a) != base_) return {};
  return coeffs_[groupoid_->position_in_source_fiber(a)];
}

ModuleVector& ModuleVector::operator+=(const ModuleVector& other) {
  require_same_base(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

ModuleVector& ModuleVector::operator*=(Complex s) {
  for (auto& z : coeffs_) z *= s;
  return *this;
}

Element star_inner(const ModuleVector& phi, const ModuleVector& psi) {
  require_same_base(phi, psi);
  const FiniteGroupoid& g = phi.groupoid();
  const ArrowId x = phi.base();
  Element out(phi.groupoid_ptr());
  // g2 ranges over G_x (the domain of psi); g1 g2 lands in G(x) exactly when
  // r(g1) = x, which also puts g1^-1 in G_x.
  for (ArrowId g2 : g.source_fiber(x)) {
    const Complex right = psi.value(g2);
    for (ArrowId g1 : g.source_fiber(g.range(g2))) {
      if (g.range(g1) != x) continue;
      const ArrowId zeta = g.tables().product(g1, g2);
      out[zeta] += std::conj(phi.value(g.inverse(g1))) * right;
    }
  }
  return out;
}

ModuleVector act(const Element& f, const ModuleVector& phi) {
  require_same_groupoid(f.groupoid(), phi.groupoid());
  const FiniteGroupoid& g = phi.groupoid();
  ModuleVector out(phi.groupoid_ptr(), phi.base());
  for (ArrowId g2 : g.source_fiber(phi.base())) {
    const Complex right = phi.value(g2);
    if (right == Complex{}) continue;
    for (ArrowId g1 : g.source_fiber(g.range(g2))) {
      const ArrowId prod = g.tables().product(g1, g2);
      out[g.position_in_source_fiber(prod)] += f[g1] * right;
    }
  }
  return out;
}

double module_norm(const ModuleVector& phi) {
  const Element self = star_inner(phi, phi);
  const MatrixRep rep = isotropy_left_regular(phi.groupoid(), phi.base(), self);
  return std::sqrt(spectral_norm(rep.matrix));
}

std::vector<Complex> embed_j(const ModuleVector& phi) {
  return {phi.coeffs().begin(), phi.coeffs().end()};
}

IsotropyRep IsotropyRep::create(GroupoidPtr g, ArrowId x, std::map<ArrowId, ComplexMatrix> images) {
  if (!g) throw InvalidRep("representation needs a groupoid");
  const auto group = g->isotropy(x);
  if (images.size() != group.size()) {
    throw InvalidRep(fmt::format("{} images given for an isotropy group of order {}",
                                 images.size(), group.size()));
  }
  for (ArrowId h : group) {
    if (!images.contains(h)) throw InvalidRep(fmt::format("no image for group element {}", h));
  }
  const std::size_t dim = images.begin()->second.rows();
  for (const auto& [h, m] : images) {
    if (m.rows() != dim || m.cols() != dim) {
      throw InvalidRep(fmt::format("image of {} is {}x{}, expected {}x{}", h, m.rows(), m.cols(),
                                   dim, dim));
    }
    if (!is_unitary(m)) throw InvalidRep(fmt::format("image of {} is not unitary", h));
  }
  if (max_abs_diff(images.at(x), ComplexMatrix::identity(dim)) > kRepTolerance) {
    throw InvalidRep(fmt::format("identity {} is not sent to the identity matrix", x));
  }
  for (ArrowId a : group) {
    for (ArrowId b : group) {
      const ArrowId ab = g->tables().product(a, b);
      if (max_abs_diff(images.at(ab), images.at(a) * images.at(b)) > kRepTolerance) {
        throw InvalidRep(fmt::format("L({}*{}) != L({}) L({})", a, b, a, b));
      }
    }
  }
  return IsotropyRep(std::move(g), x, dim, std::move(images));
}

IsotropyRep IsotropyRep::left_regular(GroupoidPtr g, ArrowId x) {
  std::map<ArrowId, ComplexMatrix> images;
  for (ArrowId h : g->isotropy(x)) {
    images.emplace(h, isotropy_left_regular(*g, x, Element::delta(g, h)).matrix);
  }
  return create(std::move(g), x, std::move(images));
}

IsotropyRep IsotropyRep::trivial(GroupoidPtr g, ArrowId x) {
  std::map<ArrowId, ComplexMatrix> images;
  for (ArrowId h : g->isotropy(x)) images.emplace(h, ComplexMatrix::identity(1));
  return create(std::move(g), x, std::move(images));
}

IsotropyRep IsotropyRep::character(GroupoidPtr g, ArrowId x, ArrowId generator, long k) {
  require_in_isotropy(*g, x, generator);
  const std::size_t order = g->isotropy(x).size();
  std::map<ArrowId, ComplexMatrix> images;
  ArrowId power = x;
  for (std::size_t j = 0; j < order; ++j) {
    if (images.contains(power)) {
      throw InvalidRep(fmt::format("{} does not generate the isotropy group of {}", generator, x));
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) *
                         static_cast<double>(k) / static_cast<double>(order);
    images.emplace(power, ComplexMatrix(1, 1, {std::polar(1.0, angle)}));
    power = g->tables().product(generator, power);
  }
  return create(std::move(g), x, std::move(images));
}

IsotropyRep IsotropyRep::translations(GroupoidPtr g, ArrowId x) {
  std::map<ArrowId, ComplexMatrix> images;
  for (ArrowId h : g->isotropy(x)) images.emplace(h, translation_unitary(*g, x, h).matrix);
  return create(std::move(g), x, std::move(images));
}

IsotropyRep IsotropyRep::direct_sum(const IsotropyRep& other) const {
  require_same_groupoid(*groupoid_, *other.groupoid_);
  if (base_ != other.base_) {
    throw BaseUnitMismatch(fmt::format("representations of G({}) and G({})", base_, other.base_));
  }
  std::map<ArrowId, ComplexMatrix> images;
  for (const auto& [h, m] : images_) {
    const ComplexMatrix blocks[] = {m, other.images_.at(h)};
    images.emplace(h, ComplexMatrix::block_diagonal(blocks));
  }
  return create(groupoid_, base_, std::move(images));
}

IsotropyRep IsotropyRep::conjugated(const ComplexMatrix& q) const {
  if (q.rows() != dim_ || !is_unitary(q)) {
    throw InvalidRep(fmt::format("conjugating matrix must be a {}x{} unitary", dim_, dim_));
  }
  std::map<ArrowId, ComplexMatrix> images;
  for (const auto& [h, m] : images_) images.emplace(h, q * m * q.adjoint());
  return create(groupoid_, base_, std::move(images));
}

const ComplexMatrix& IsotropyRep::image(ArrowId h) const {
  auto it = images_.find(h);
  if (it == images_.end()) {
    throw NotInIsotropy(fmt::format("arrow {} is not in the isotropy group of unit {}", h, base_));
  }
  return it->second;
}

ComplexMatrix IsotropyRep::apply(const Element& b) const {
  require_isotropy_support(*groupoid_, base_, b);
  ComplexMatrix out(dim_, dim_);
  for (const auto& [h, m] : images_) {
    if (b[h] != Complex{}) out += b[h] * m;
  }
  return out;
}

InducedSpace::InducedSpace(IsotropyRep rep)
    : rep_(std::move(rep)),
      fiber_(rep_.groupoid_ptr()->source_fiber(rep_.base()).begin(),
             rep_.groupoid_ptr()->source_fiber(rep_.base()).end()),
      raw_dim_(fiber_.size() * rep_.dim()),
      form_(raw_dim_, raw_dim_),
      reduction_(1, 1) {
  const GroupoidPtr& g = rep_.groupoid_ptr();
  const ArrowId x = rep_.base();
  const std::size_t d = rep_.dim();
  std::vector<ModuleVector> basis;
  for (ArrowId a : fiber_) basis.push_back(ModuleVector::basis(g, x, a));

  // K(j, i) = <v_i, v_j> with v_i = e_a (x) xi_k and v_j = e_b (x) xi_l equals
  // <L(<e_b, e_a>_*) xi_k, xi_l> = L(<e_b, e_a>_*)(l, k).
  for (std::size_t ib = 0; ib < fiber_.size(); ++ib) {
    for (std::size_t ia = 0; ia < fiber_.size(); ++ia) {
      const ComplexMatrix block = rep_.apply(star_inner(basis[ib], basis[ia]));
      for (std::size_t l = 0; l < d; ++l) {
        for (std::size_t k = 0; k < d; ++k) form_(ib * d + l, ia * d + k) = block(l, k);
      }
    }
  }

  // Gram-Schmidt in the form K over the raw basis, in order. A raw vector
  // whose residual has squared length below the cutoff lies in the span of the
  // earlier ones (up to the null space) and is dropped.
  double scale = 0.0;
  for (std::size_t i = 0; i < raw_dim_; ++i) scale = std::max(scale, form_(i, i).real());
  if (!(scale > 0.0)) throw InvalidRep("induced inner product vanishes identically");
  auto form_inner = [this](const std::vector<Complex>& u, const std::vector<Complex>& w) {
    // <u, w> = w^H K u
    Complex s{};
    for (std::size_t j = 0; j < raw_dim_; ++j) {
      if (w[j] == Complex{}) continue;
      Complex row{};
      for (std::size_t i = 0; i < raw_dim_; ++i) row += form_(j, i) * u[i];
      s += std::conj(w[j]) * row;
    }
    return s;
  };
  std::vector<std::vector<Complex>> kept;
  for (std::size_t i = 0; i < raw_dim_; ++i) {
    std::vector<Complex> v(raw_dim_);
    v[i] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : kept) {
        const Complex c = form_inner(v, q);
        for (std::size_t r = 0; r < raw_dim_; ++r) v[r] -= c * q[r];
      }
    }
    const double len2 = form_inner(v, v).real();
    if (len2 <= kQuotientCutoff * scale) continue;
    const double inv = 1.0 / std::sqrt(len2);
    for (Complex& c : v) c *= inv;
    kept.push_back(std::move(v));
  }
  reduction_ = ComplexMatrix(raw_dim_, kept.size());
  for (std::size_t c = 0; c < kept.size(); ++c) {
    for (std::size_t r = 0; r < raw_dim_; ++r) reduction_(r, c) = kept[c][r];
  }
}

std::size_t InducedSpace::raw_index(ArrowId a, std::size_t k) const {
  auto it = std::lower_bound(fiber_.begin(), fiber_.end(), a);
  if (it == fiber_.end() || *it != a) {
    throw BaseUnitMismatch(fmt::format("arrow {} is not in G_{}", a, rep_.base()));
  }
  if (k >= rep_.dim()) {
    throw DimensionMismatch(fmt::format("index {} out of range for a {}-dimensional representation",
                                        k, rep_.dim()));
  }
  return static_cast<std::size_t>(it - fiber_.begin()) * rep_.dim() + k;
}

Complex InducedSpace::raw_inner(ArrowId a, std::size_t k, ArrowId b, std::size_t l) const {
  return form_(raw_index(b, l), raw_index(a, k));
}

std::vector<Complex> InducedSpace::coordinates(ArrowId a, std::size_t k) const {
  const std::size_t idx = raw_index(a, k);
  std::vector<Complex> out(dimension());
  for (std::size_t c = 0; c < dimension(); ++c) {
    Complex s{};
    for (std::size_t r = 0; r < raw_dim_; ++r) s += std::conj(reduction_(r, c)) * form_(r, idx);
    out[c] = s;
  }
  return out;
}

MatrixRep InducedSpace::represent(const Element& f) const {
  const GroupoidPtr& g = rep_.groupoid_ptr();
  require_same_groupoid(*g, f.groupoid());
  const std::size_t d = rep_.dim();
  // Raw action: (f * e_a) (x) xi_k, expanded over the spanning family.
  ComplexMatrix action(raw_dim_, raw_dim_);
  for (std::size_t ia = 0; ia < fiber_.size(); ++ia) {
    const ModuleVector moved = act(f, ModuleVector::basis(g, rep_.base(), fiber_[ia]));
    for (std::size_t ie = 0; ie < fiber_.size(); ++ie) {
      for (std::size_t k = 0; k < d; ++k) action(ie * d + k, ia * d + k) = moved[ie];
    }
  }
  MatrixRep out{{}, reduction_.adjoint() * form_ * action * reduction_};
  for (std::size_t i = 0; i < dimension(); ++i) {
    out.basis.push_back(BasisLabel::quotient(static_cast<std::uint32_t>(i)));
  }
  return out;
}

MatrixRep induce(const IsotropyRep& rep, const Element& f) {
  return InducedSpace(rep).represent(f);
}

MatrixRep equivalence_unitary(GroupoidPtr g, ArrowId x) {
  const InducedSpace space(IsotropyRep::left_regular(g, x));
  const auto group = g->isotropy(x);
  const auto identity_slot =
      static_cast<std::size_t>(std::lower_bound(group.begin(), group.end(), x) - group.begin());
  const auto fiber = g->source_fiber(x);
  ComplexMatrix u(space.dimension(), fiber.size());
  for (std::size_t col = 0; col < fiber.size(); ++col) {
    const auto coords = space.coordinates(fiber[col], identity_slot);
    for (std::size_t r = 0; r < coords.size(); ++r) u(r, col) = coords[r];
  }
  MatrixRep out{{}, std::move(u)};
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    out.basis.push_back(BasisLabel::quotient(static_cast<std::uint32_t>(i)));
  }
  return out;
}

Complex fourier(const Element& b, ArrowId x, ArrowId zeta) {
  require_in_isotropy(b.groupoid(), x, zeta);
  require_isotropy_support(b.groupoid(), x, b);
  return b[zeta];
}

double main_identity_residual(const Element& a, const ModuleVector& phi, const ModuleVector& psi,
                              ArrowId zeta) {
  require_same_base(phi, psi);
  require_same_groupoid(a.groupoid(), phi.groupoid());
  const FiniteGroupoid& g = phi.groupoid();
  const ArrowId x = phi.base();
  require_in_isotropy(g, x, zeta);

  const Complex lhs = fourier(star_inner(phi, act(a, psi)), x, zeta);
  const auto shifted = translation_unitary(g, x, zeta).matrix * embed_j(psi);
  const auto moved = lambda_x(g, x, a).matrix * shifted;
  const Complex rhs = inner(moved, embed_j(phi));
  return std::abs(lhs - rhs);
}

bool comparison_check(const IsotropyRep& rep, const Element& a) {
  const GroupoidPtr& g = rep.groupoid_ptr();
  if (spectral_norm(lambda_x(*g, rep.base(), a).matrix) > kVanishingTolerance) return true;
  return spectral_norm(induce(rep, a).matrix) <= kInducedVanishingTolerance;
}

bool comparison_check(GroupoidPtr g, ArrowId x, const Element& a) {
  return comparison_check(IsotropyRep::left_regular(std::move(g), x), a);
}

}  // namespace gpw
