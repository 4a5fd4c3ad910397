#pragma once

// Germ presentations, Jacobian modules, hyperplane restrictions, fiber
// specialization, the Grassmann modification and structure witnesses.

#include <optional>
#include <string>
#include <vector>

#include "equising/groebner.hpp"
#include "equising/verdict.hpp"

namespace equising {

struct GermPresentation {
  // Variables laid out as [y | z]; the y-block spans the parameter space Y.
  RingPtr ring;
  std::vector<Polynomial> f;
  // Auxiliary function for the relative conditions.
  std::optional<Polynomial> F;
  // Local dimension of X; defaults to arity - p (complete intersection).
  std::optional<unsigned> dimension;
  bool equidimensional = true;
  bool wa = false;

  std::size_t k() const { return ring->y_count(); }
  std::size_t n() const { return ring->z_count(); }
  std::size_t p() const { return f.size(); }
  unsigned dim() const;
  // Every component vanishes on Y (no pure-y terms). Throws otherwise.
  void validate() const;
  std::vector<std::string> assumptions() const;
};

struct JacobianModules {
  SubmoduleSpec jm;
  SubmoduleSpec jm_z;
  SubmoduleSpec jm_y;
  SubmoduleSpec my_jm_z;
};

// Partial-derivative columns of `components`, over the ring modulo `relations`.
JacobianModules jacobian_modules(const RingPtr& ring, const std::vector<Polynomial>& components,
                                 const std::vector<Polynomial>& relations);
JacobianModules jacobian_modules(const GermPresentation& germ);

// Columns d(components)/dy_i, one vector per y variable.
std::vector<PolyVector> y_columns(const RingPtr& ring, const std::vector<Polynomial>& components);

struct Hyperplane {
  std::vector<Rational> y_coeffs;
  std::vector<Rational> z_coeffs;

  bool contains_Y() const;
  bool is_zero() const;
  // The linear form as a polynomial in the ring.
  Polynomial form(const RingPtr& ring) const;
  std::string to_string(const RingPtr& ring) const;
  // The same z-coefficients read in the fiber.
  Hyperplane iota() const { return Hyperplane{{}, z_coeffs}; }
};

// Deterministic kernel basis of L: the pivot is the nonzero coefficient of
// largest index, each other coordinate contributes e_j - (a_j / a_pivot) e_pivot.
std::vector<std::vector<Rational>> kernel_basis(const std::vector<Rational>& coeffs);

// JM(f)_H: derivatives of f in the directions of ker L (all variables).
SubmoduleSpec hyperplane_restricted(const GermPresentation& germ, const Hyperplane& h);
// JM_z(f)_H: derivatives in the z-directions of ker L; requires H to contain Y.
SubmoduleSpec hyperplane_restricted_z(const GermPresentation& germ, const Hyperplane& h);

// f(y0, z) as a germ with an empty y-block.
GermPresentation specialize_fiber(const GermPresentation& germ, const std::vector<Rational>& y0);

struct IdentityCheck {
  std::string identity;
  bool holds = false;
};

struct GrassmannModification {
  GermPresentation G;
  std::size_t chart = 0;
  std::vector<std::string> a_names;
  std::vector<IdentityCheck> identities;
};

// G = f o beta with beta(y, z', a) = (y, z', sum a_i z_i) substituted for the
// chart variable. The a-coordinates form the auxiliary block.
GrassmannModification grassmann_modification(const GermPresentation& germ, std::size_t chart);

struct WitnessMatrices {
  // g = H0 f, H1 g = H2 f, K^r J inside I.
  std::vector<PolyVector> H0;
  std::vector<PolyVector> H1;
  std::vector<PolyVector> H2;
  unsigned r = 0;
  std::vector<Polynomial> K;
};

struct WitnessOptions {
  std::optional<std::vector<Polynomial>> K;
  unsigned r_cap = 8;
};

// f generates J, g generates I inside J with the same zero set.
WitnessMatrices structure_witnesses(const GermPresentation& f_germ, const GermPresentation& g_germ,
                                    const WitnessOptions& options = {});

// All size x size minors of a polynomial matrix given by rows, zeros and repeats dropped.
std::vector<Polynomial> minors(const std::vector<PolyVector>& rows, std::size_t size, const RingPtr& ring);

// f together with the c x c minors of Df, c = arity - dim.
std::vector<Polynomial> jacobian_singular_ideal(const GermPresentation& germ);

}  // namespace equising
