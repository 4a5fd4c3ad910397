#pragma once

// Ideals and submodules of free modules over a polynomial ring modulo
// ambient relations, with Gröbner bases and the ideal calculus built on them.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "equising/kernel.hpp"
#include "equising/polynomial.hpp"

namespace equising {

struct Basis {
  RingPtr ring;
  std::size_t rank = 1;
  MonomialOrder order = MonomialOrder::degrevlex();
  std::vector<PolyVector> elements;
  // cofactors[i][j] is the coefficient of input j in elements[i]; inputs are
  // the generators followed by the relation syzygies. Empty unless tracked.
  std::vector<std::vector<Polynomial>> cofactors;

  bool is_unit_ideal() const;
  std::vector<std::string> to_strings() const;
};

class IdealSpec {
 public:
  IdealSpec(RingPtr ring, std::vector<Polynomial> generators);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }

  // Reduced degrevlex basis, computed once.
  const Basis& basis() const;

 private:
  struct Cache;
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

class SubmoduleSpec {
 public:
  SubmoduleSpec(RingPtr ring, std::size_t rank, std::vector<PolyVector> generators,
                std::vector<Polynomial> relations = {});
  // The ideal as a rank-one submodule.
  static SubmoduleSpec from_ideal(const IdealSpec& ideal, std::vector<Polynomial> relations = {});

  const RingPtr& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  const std::vector<PolyVector>& generators() const { return gens_; }
  const std::vector<Polynomial>& relations() const { return relations_; }

  // Generators followed by r * e_k for every relation r and component k.
  std::vector<PolyVector> presentation() const;
  SubmoduleSpec with_generator(PolyVector h) const;
  SubmoduleSpec with_relations(std::vector<Polynomial> relations) const;

 private:
  RingPtr ring_;
  std::size_t rank_;
  std::vector<PolyVector> gens_;
  std::vector<Polynomial> relations_;
};

Basis groebner_basis(const IdealSpec& ideal, const MonomialOrder& order = MonomialOrder::degrevlex(),
                     bool track = false);
Basis groebner_basis(const SubmoduleSpec& module, const MonomialOrder& order = MonomialOrder::degrevlex(),
                     bool track = false);

struct DivisionResult {
  std::vector<Polynomial> quotients;
  PolyVector remainder;
};

// Full multivariate division. v = sum quotients[i] * reducers[i] + remainder.
DivisionResult divide(const PolyVector& v, const std::vector<PolyVector>& reducers,
                      const MonomialOrder& order = MonomialOrder::degrevlex());
Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& reducers,
                       const MonomialOrder& order = MonomialOrder::degrevlex());
PolyVector normal_form(const PolyVector& v, const std::vector<PolyVector>& reducers,
                       const MonomialOrder& order = MonomialOrder::degrevlex());

// h = sum generator_coefficients[i] * gen_i + sum_r relation_coefficients[r] * relation_r,
// where relation_coefficients[r] is a vector of the module's rank.
struct MembershipCertificate {
  std::vector<Polynomial> generator_coefficients;
  std::vector<PolyVector> relation_coefficients;
};

struct MembershipResult {
  bool member = false;
  std::optional<MembershipCertificate> certificate;
  PolyVector remainder;
};

MembershipResult membership(const PolyVector& h, const SubmoduleSpec& module, bool certify = true);
MembershipResult membership(const Polynomial& h, const IdealSpec& ideal, bool certify = true);
// Replays a certificate exactly.
bool verify_certificate(const PolyVector& h, const SubmoduleSpec& module, const MembershipCertificate& cert);

// Every generator of `inner` lies in `outer` (modulo outer's relations).
bool contains(const SubmoduleSpec& outer, const SubmoduleSpec& inner);
bool contains(const IdealSpec& outer, const IdealSpec& inner);

IdealSpec ideal_sum(const IdealSpec& a, const IdealSpec& b);
// Generator-pairwise products, no minimization.
IdealSpec ideal_product(const IdealSpec& a, const IdealSpec& b);
IdealSpec ideal_power(const IdealSpec& a, unsigned n);
IdealSpec ideal_intersection(const IdealSpec& a, const IdealSpec& b);
// a : b
IdealSpec ideal_quotient(const IdealSpec& a, const IdealSpec& b);

struct RadicalMembership {
  bool member = false;
  // Least m <= bound with h^m in the ideal; empty when the exponent exceeds the bound.
  std::optional<unsigned> exponent;
  unsigned bound = 0;
};

RadicalMembership radical_membership(const Polynomial& h, const IdealSpec& ideal, unsigned bound = 32);

// Exact quotient p / q; throws when q does not divide p.
Polynomial exact_divide(const Polynomial& p, const Polynomial& q);

// A variable name not used by the ring, derived from `base`.
std::string fresh_name(const RingContext& ring, const std::string& base);

// Rational roots of a univariate polynomial, coefficients indexed by degree,
// sorted ascending. Roots whose numerator or denominator bound exceeds 10^5 are not searched.
std::vector<Rational> rational_roots(std::vector<Rational> coeffs);

// Rational solutions of a zero-dimensional system by lex back-substitution.
// Empty optional when some elimination step is positive-dimensional.
std::optional<std::vector<std::vector<Rational>>> rational_points(const IdealSpec& ideal);

}  // namespace equising
