#pragma once

#include <map>
#include <span>
#include <vector>

#include "gpw/algebra.hpp"
#include "gpw/groupoid.hpp"
#include "gpw/matrix.hpp"
#include "gpw/representations.hpp"

namespace gpw {

// An element of the module M = C_c(G_x) over the isotropy group algebra.
// Coefficients follow the canonical G_x order.
class ModuleVector {
 public:
  ModuleVector(GroupoidPtr g, ArrowId base);
  ModuleVector(GroupoidPtr g, ArrowId base, std::vector<Complex> coeffs);

  // e_a for a in G_x. Throws BaseUnitMismatch if s(a) != base.
  static ModuleVector basis(GroupoidPtr g, ArrowId base, ArrowId a);

  const FiniteGroupoid& groupoid() const { return *groupoid_; }
  const GroupoidPtr& groupoid_ptr() const { return groupoid_; }
  ArrowId base() const { return base_; }
  std::span<const Complex> coeffs() const { return coeffs_; }

  // Value at arrow a; zero off G_x.
  Complex value(ArrowId a) const;
  Complex& operator[](std::size_t i) { return coeffs_[i]; }
  Complex operator[](std::size_t i) const { return coeffs_[i]; }

  double norm2() const { return gpw::norm2(coeffs_); }

  ModuleVector& operator+=(const ModuleVector& other);
  ModuleVector& operator*=(Complex s);
  friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) { return a += b; }
  friend ModuleVector operator*(Complex s, ModuleVector a) { return a *= s; }

 private:
  GroupoidPtr groupoid_;
  ArrowId base_;
  std::vector<Complex> coeffs_;
};

// <phi, psi>_*(zeta) = sum over g1 g2 = zeta of conj(phi(g1^-1)) psi(g2),
// an element of C_c(G) supported on G(x). Throws BaseUnitMismatch.
Element star_inner(const ModuleVector& phi, const ModuleVector& psi);

// Left module action (f * phi)(g) = sum over g1 g2 = g of f(g1) phi(g2).
ModuleVector act(const Element& f, const ModuleVector& phi);

// ||phi||_M = ||<phi, phi>_*||^(1/2), the norm taken in the left regular
// representation of the isotropy group.
double module_norm(const ModuleVector& phi);

// The inclusion j: M -> H_x = l2(G_x); the identity on coefficients.
std::vector<Complex> embed_j(const ModuleVector& phi);

// A finite-dimensional unitary representation of the isotropy group G(x).
class IsotropyRep {
 public:
  // Throws InvalidRep unless every element of G(x) has a unitary image of the
  // common dimension, the identity maps to the identity and the map is
  // multiplicative (all to 1e-10).
  static IsotropyRep create(GroupoidPtr g, ArrowId x, std::map<ArrowId, ComplexMatrix> images);

  static IsotropyRep left_regular(GroupoidPtr g, ArrowId x);
  static IsotropyRep trivial(GroupoidPtr g, ArrowId x);
  // zeta^j -> exp(2 pi i j k / n) for G(x) cyclic of order n generated by zeta.
  // Throws InvalidRep if zeta does not generate G(x).
  static IsotropyRep character(GroupoidPtr g, ArrowId x, ArrowId generator, long k);
  // The permutation representation zeta -> R_zeta on l2(G_x).
  static IsotropyRep translations(GroupoidPtr g, ArrowId x);

  IsotropyRep direct_sum(const IsotropyRep& other) const;
  // h -> Q L(h) Q^dagger for unitary Q.
  IsotropyRep conjugated(const ComplexMatrix& q) const;

  std::size_t dim() const { return dim_; }
  ArrowId base() const { return base_; }
  const GroupoidPtr& groupoid_ptr() const { return groupoid_; }
  const ComplexMatrix& image(ArrowId h) const;
  const std::map<ArrowId, ComplexMatrix>& images() const { return images_; }

  // L(b) = sum_h b(h) L(h). Throws SupportOutsideIsotropy.
  ComplexMatrix apply(const Element& b) const;

 private:
  IsotropyRep(GroupoidPtr g, ArrowId x, std::size_t dim, std::map<ArrowId, ComplexMatrix> images)
      : groupoid_(std::move(g)), base_(x), dim_(dim), images_(std::move(images)) {}

  GroupoidPtr groupoid_;
  ArrowId base_;
  std::size_t dim_;
  std::map<ArrowId, ComplexMatrix> images_;
};

// A raw vector whose residual against the earlier ones has squared length
// below this fraction of max K(i, i) is treated as null.
inline constexpr double kQuotientCutoff = 1e-10;

// The space of the induced representation: C_c(G_x) (x) H_L with the form
// <phi (x) xi, psi (x) eta> = <L(<psi, phi>_*) xi, eta>, quotiented by its null
// space. The raw spanning family is e_g (x) xi_k in lexicographic (g, k) order;
// the quotient basis is its Gram-Schmidt orthonormalization in that order.
class InducedSpace {
 public:
  explicit InducedSpace(IsotropyRep rep);

  std::size_t raw_dimension() const { return raw_dim_; }
  std::size_t dimension() const { return reduction_.cols(); }
  const IsotropyRep& rep() const { return rep_; }

  // Hermitian K with K(j, i) = <v_i, v_j> for raw spanning vectors v.
  const ComplexMatrix& form() const { return form_; }
  // <e_a (x) xi_k, e_b (x) xi_l>.
  Complex raw_inner(ArrowId a, std::size_t k, ArrowId b, std::size_t l) const;
  std::size_t raw_index(ArrowId a, std::size_t k) const;

  // Coordinates of the class of e_a (x) xi_k in the orthonormal quotient basis.
  std::vector<Complex> coordinates(ArrowId a, std::size_t k) const;

  // Ind L(f), written in the orthonormal quotient basis.
  MatrixRep represent(const Element& f) const;

 private:
  IsotropyRep rep_;
  std::vector<ArrowId> fiber_;
  std::size_t raw_dim_;
  ComplexMatrix form_;
  // Columns: orthonormal quotient basis vectors in raw coordinates.
  ComplexMatrix reduction_;
};

MatrixRep induce(const IsotropyRep& rep, const Element& f);

// U: H_x -> H_{Ind Lambda}, e_g -> class of e_g (x) e_x, as a square matrix
// in the quotient basis of InducedSpace(IsotropyRep::left_regular(g, x)).
MatrixRep equivalence_unitary(GroupoidPtr g, ArrowId x);

// The coefficient b(zeta) for b in the isotropy group algebra of x.
// Throws NotInIsotropy, SupportOutsideIsotropy.
Complex fourier(const Element& b, ArrowId x, ArrowId zeta);

// | fourier(<phi, a psi>_*, zeta) - <lambda_x(a) R_zeta j(psi), j(phi)> |.
double main_identity_residual(const Element& a, const ModuleVector& phi, const ModuleVector& psi,
                              ArrowId zeta);

inline constexpr double kVanishingTolerance = 1e-10;
inline constexpr double kInducedVanishingTolerance = 1e-9;

// True unless lambda_x(a) vanishes (to 1e-10) while Ind L(a) does not (to 1e-9).
bool comparison_check(const IsotropyRep& rep, const Element& a);
bool comparison_check(GroupoidPtr g, ArrowId x, const Element& a);

}  // namespace gpw
