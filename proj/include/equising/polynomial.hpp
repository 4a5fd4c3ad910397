#pragma once

// Exact sparse multivariate polynomials over the rationals.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace equising {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Rational& q);

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t arity) : exps_(arity, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  static Monomial variable(std::size_t arity, std::size_t var, std::uint32_t power = 1);

  std::size_t arity() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }
  std::uint64_t degree() const;
  bool is_one() const;

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  // Precondition: other.divides(*this).
  Monomial operator/(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<std::uint32_t> exps_;
};

// Degree-reverse-lexicographic comparison, the display and default order.
bool degrevlex_greater(const Monomial& a, const Monomial& b);

enum class OrderTag { DegRevLex, Lex, LocalTruncation };

class RingContext;
using RingPtr = std::shared_ptr<const RingContext>;

// Variables are laid out as [y-block | z-block | aux-block].
class RingContext {
 public:
  static RingPtr make(std::vector<std::string> y, std::vector<std::string> z,
                      std::vector<std::string> aux = {}, OrderTag order = OrderTag::DegRevLex);
  // A ring without a parameter block: every variable sits in the z-block.
  static RingPtr plain(std::vector<std::string> names);

  std::size_t arity() const { return names_.size(); }
  std::size_t y_count() const { return k_; }
  std::size_t z_count() const { return n_; }
  std::size_t aux_count() const { return names_.size() - k_ - n_; }
  std::size_t y_var(std::size_t i) const { return i; }
  std::size_t z_var(std::size_t j) const { return k_ + j; }
  std::size_t aux_var(std::size_t a) const { return k_ + n_ + a; }
  bool is_y(std::size_t v) const { return v < k_; }
  bool is_z(std::size_t v) const { return v >= k_ && v < k_ + n_; }

  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  OrderTag order() const { return order_; }

  // Same variables, same blocks.
  bool compatible(const RingContext& other) const;

  // A copy of this ring with extra auxiliary variables appended.
  RingPtr with_aux(const std::vector<std::string>& extra) const;

 private:
  RingContext() = default;
  std::vector<std::string> names_;
  std::size_t k_ = 0;
  std::size_t n_ = 0;
  OrderTag order_ = OrderTag::DegRevLex;
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  explicit Polynomial(RingPtr ring);
  static Polynomial constant(RingPtr ring, const Rational& c);
  static Polynomial variable(RingPtr ring, std::size_t var);
  static Polynomial term(RingPtr ring, const Monomial& m, const Rational& c);

  const RingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::optional<Rational> constant_value() const;
  Rational coefficient(const Monomial& m) const;
  // -1 for the zero polynomial.
  long total_degree() const;
  // Lowest total degree of a term (order of vanishing at the origin); -1 for zero.
  long order() const;
  // Largest exponent of var, 0 for the zero polynomial.
  std::uint32_t degree_in(std::size_t var) const;

  void add_term(const Monomial& m, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial pow(unsigned e) const;

  bool operator==(const Polynomial& other) const;

  Rational evaluate(std::span<const Rational> point) const;

  // Terms printed in descending degrevlex order, e.g. "3*x^2*y - 1/2*z + 1".
  std::string to_string() const;

 private:
  void require_same_ring(const Polynomial& other) const;
  RingPtr ring_;
  TermMap terms_;
};

using PolyVector = std::vector<Polynomial>;

PolyVector zero_vector(const RingPtr& ring, std::size_t rank);
bool is_zero(const PolyVector& v);
std::string to_string(const PolyVector& v);

Polynomial partial_derivative(const Polynomial& p, std::size_t var);

// Simultaneous substitution. Variables without an entry in `assignment`
// map to the variable of the same name in `target`.
using Substitution = std::map<std::size_t, Polynomial>;
Polynomial substitute(const Polynomial& p, const Substitution& assignment, const RingPtr& target);
Polynomial substitute(const Polynomial& p, const Substitution& assignment);

// Re-expresses p in a ring that has every variable p uses (matched by name).
Polynomial change_ring(const Polynomial& p, const RingPtr& target);

}  // namespace equising
