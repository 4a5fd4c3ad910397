#pragma once

// Sparse term vectors and the Buchberger kernel shared by the ideal,
// module and truncated-local computations.

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "equising/polynomial.hpp"

namespace equising {

class MonomialOrder {
 public:
  enum class Kind {
    DegRevLex,
    Lex,
    // Degree in the marked variables first, then degrevlex.
    Elimination,
    // Lower total degree is bigger, ties by degrevlex. Only meaningful
    // modulo a power of the maximal ideal.
    LocalDegRevLex,
    // Homogenized local order: the last variable is the homogenizing one.
    // Total degree, then higher power of it, then degrevlex.
    HomogenizedLocal,
  };
  enum class Module { PositionOverTerm, TermOverPosition };

  static MonomialOrder degrevlex() { return MonomialOrder(Kind::DegRevLex); }
  static MonomialOrder lex() { return MonomialOrder(Kind::Lex); }
  static MonomialOrder elimination(std::vector<bool> eliminate);
  static MonomialOrder local() { return MonomialOrder(Kind::LocalDegRevLex); }
  static MonomialOrder homogenized_local() { return MonomialOrder(Kind::HomogenizedLocal); }

  MonomialOrder with_module(Module m) const {
    MonomialOrder o(*this);
    o.module_ = m;
    return o;
  }

  Kind kind() const { return kind_; }
  Module module() const { return module_; }
  bool is_global() const { return kind_ != Kind::LocalDegRevLex; }
  const std::vector<bool>& eliminated() const { return eliminate_; }

  // Sign of a - b.
  int compare(const Monomial& a, const Monomial& b) const;
  int compare(const Monomial& a, std::uint32_t ca, const Monomial& b, std::uint32_t cb) const;

  std::string name() const;

  bool operator==(const MonomialOrder&) const = default;

 private:
  explicit MonomialOrder(Kind k) : kind_(k) {}
  Kind kind_;
  Module module_ = Module::PositionOverTerm;
  std::vector<bool> eliminate_;
};

namespace kernel {

struct Term {
  Monomial mono;
  std::uint32_t comp = 0;
  Rational coef;
};

// Terms sorted ascending in the order; the leading term is back().
using Vec = std::vector<Term>;

// Sorts and merges equal monomials. Drops zero coefficients and, when
// truncation > 0, every term of degree >= truncation.
void canonicalize(Vec& v, const MonomialOrder& order, unsigned truncation = 0);

Vec from_polynomial(const Polynomial& p, const MonomialOrder& order, std::uint32_t comp = 0,
                    unsigned truncation = 0);
Vec from_vector(const PolyVector& v, const MonomialOrder& order, unsigned truncation = 0);
Polynomial to_polynomial(const Vec& v, const RingPtr& ring);
PolyVector to_vector(const Vec& v, const RingPtr& ring, std::size_t rank);

// a + c * m * b, where m * b keeps b's component indices.
Vec add_scaled(const Vec& a, const Rational& c, const Monomial& m, const Vec& b,
               const MonomialOrder& order, unsigned truncation = 0);
// c * m * b.
Vec scaled(const Vec& b, const Rational& c, const Monomial& m, const MonomialOrder& order,
           unsigned truncation = 0);

// Divides through by the leading coefficient.
void make_monic(Vec& v);

struct DivisionStep {
  std::size_t reducer;
  Rational coef;
  Monomial mono;
};

// Reduces f by the reducers. With `full` every term is reduced, otherwise
// only the leading term. Each step f -= coef * mono * reducers[reducer] is
// appended to `steps` when requested.
Vec reduce(Vec f, const std::vector<const Vec*>& reducers, const MonomialOrder& order,
           unsigned truncation, bool full, std::vector<DivisionStep>* steps = nullptr);

struct BuchbergerConfig {
  MonomialOrder order = MonomialOrder::degrevlex();
  // Work modulo the power m^truncation of the maximal ideal (0 = off).
  unsigned truncation = 0;
  // Track each basis element as a combination of the inputs.
  bool track = false;
  // Buchberger's coprime-leading-term criterion; valid only for ideals
  // under a global order.
  bool product_criterion = true;
};

struct BasisElement {
  Vec poly;
  // Coefficients on the inputs, encoded as a vector whose component index
  // is the input index. Empty unless tracking.
  Vec cofactor;
};

// Reduced, monic basis sorted ascending by leading term.
std::vector<BasisElement> buchberger(const std::vector<Vec>& inputs, const BuchbergerConfig& config);

// Order used for cofactor vectors.
const MonomialOrder& cofactor_order();

}  // namespace kernel
}  // namespace equising
