#pragma once

// Arcs through the origin, pullbacks to the power-series ring in one
// variable, and membership decisions there.

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "equising/groebner.hpp"
#include "equising/verdict.hpp"

namespace equising {

// A power series in t known modulo t^precision. Exact series are
// polynomials known to every order.
class Series {
 public:
  static constexpr std::size_t kExact = std::numeric_limits<std::size_t>::max();

  Series() = default;
  Series(std::vector<Rational> coeffs, std::size_t precision);
  static Series monomial(const Rational& c, std::size_t power, std::size_t precision = kExact);
  // Univariate polynomial in the ring's only variable.
  static Series from_polynomial(const Polynomial& p, std::size_t precision = kExact);

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  std::size_t precision() const { return prec_; }
  bool exact() const { return prec_ == kExact; }
  Rational coefficient(std::size_t i) const;
  // Index of the first nonzero coefficient; empty when zero to the known precision.
  std::optional<std::size_t> valuation() const;
  bool known_zero() const { return coeffs_.empty(); }
  // Lower bound on the valuation: the valuation, or the precision when zero to it.
  std::size_t order_bound() const;

  Series operator-() const;
  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const Series& b);
  Series scaled(const Rational& c) const;
  // Multiply by t^k.
  Series shift_up(std::size_t k) const;
  // Divide by t^k; requires order_bound() >= k.
  Series shift_down(std::size_t k) const;
  Series truncated(std::size_t precision) const;
  // Inverse of a unit (nonzero constant term) to the given precision.
  Series inverse(std::size_t precision) const;

  bool operator==(const Series& other) const = default;
  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
  std::size_t prec_ = kExact;
};

struct NewtonData;

struct CurveGerm {
  // One series per ambient variable of `ring`.
  RingPtr ring;
  std::vector<Series> components;
  std::string origin;
  // Present for lifted curves; lets the lift be recomputed at higher precision.
  std::shared_ptr<const NewtonData> newton;

  bool exact() const;
  std::size_t precision() const;
  std::string to_string() const;
};

class CurveError : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

// Checks the germ invariants: arity, no constant terms, not identically zero.
void validate_curve(const CurveGerm& curve);

struct DVRModule {
  std::size_t rank = 0;
  // columns[j][i] is row i of the j-th pulled-back generator.
  std::vector<std::vector<Series>> columns;
};

Series pullback(const CurveGerm& curve, const Polynomial& p);
std::vector<Series> pullback(const CurveGerm& curve, const PolyVector& v);
// Throws CurveError("curve not on variety ...") unless every relation pulls back to zero.
DVRModule pullback(const CurveGerm& curve, const SubmoduleSpec& module);

enum class DVROutcome { Member, NonMember, InsufficientPrecision };

struct DVRMembership {
  DVROutcome outcome = DVROutcome::InsufficientPrecision;
  // (row, valuation) of each pivot in elimination order.
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  // For a non-member: the deciding row, the element's order there and the
  // order the module requires (pivot valuation, or the known precision of
  // zero rows; plus one when strict).
  std::size_t row = 0;
  long element_order = -1;
  long module_order = -1;

  bool member() const { return outcome == DVROutcome::Member; }
};

// Decides v in M O_1 (or in t M O_1 when strict) by fraction-free column
// elimination with minimal-valuation pivots.
DVRMembership dvr_membership(const std::vector<Series>& v, const DVRModule& module, bool strict = false);

struct ProbeOptions {
  std::size_t precision = 24;
  std::size_t max_precision = 96;
  unsigned exponent_bound = 4;
  std::size_t probe_count = 200;
  std::uint64_t seed = 1;
  // Number of lifted curves built per exact seed curve.
  unsigned lifts_per_seed = 2;
};

// Layered probe set on V(relations): user curves, monomial curves, lifted
// curves, reparametrizations, and lines through rational points. Deterministic for a seed.
std::vector<CurveGerm> generate_probes(const RingPtr& ring, const std::vector<Polynomial>& relations,
                                       const std::vector<CurveGerm>& user, const ProbeOptions& options);

// Recomputes a lifted curve at a higher precision; exact curves are returned unchanged.
CurveGerm refine(const CurveGerm& curve, std::size_t precision);

// True when the curve's image avoids the singular locus of V(relations)
// away from the origin, tested by the Jacobian rank at a sample value of t.
bool on_smooth_part(const CurveGerm& curve, const std::vector<Polynomial>& relations, std::size_t codimension);

// Membership of h in M along one curve, raising precision on demand.
DVRMembership curve_membership(const PolyVector& h, const SubmoduleSpec& module, CurveGerm& curve, bool strict,
                               std::size_t max_precision);

// REFUTED with the first failing probe, otherwise NOT-REFUTED.
Verdict icl_refute(const PolyVector& h, const SubmoduleSpec& module, const std::vector<CurveGerm>& probes,
                   const ProbeOptions& options, bool strict = false);

struct SecantResult {
  // Normalized direction in the z-block: first nonzero entry is one.
  std::vector<Rational> direction;
  std::size_t order = 0;
};

SecantResult limiting_Y_secant(const CurveGerm& curve);
// Whether the hyperplane sum a_i z_i = 0 contains the limiting secant line,
// i.e. whether the curve lifts to the incidence variety at H.
bool secant_in_hyperplane(const SecantResult& secant, const std::vector<Rational>& z_coefficients);

// Parses `var = <polynomial in t>` lines; variables not listed are zero.
CurveGerm parse_curve(const std::string& text, const RingPtr& ring, std::size_t first_line = 1);

}  // namespace equising
