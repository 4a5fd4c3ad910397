#include "equising/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

namespace equising {

std::string to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::size_t arity, std::size_t var, std::uint32_t power) {
  Monomial m(arity);
  m.exps_.at(var) = power;
  return m;
}

std::uint64_t Monomial::degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
}

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= other.exps_[i];
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::max(r.exps_[i], other.exps_[i]);
  return r;
}

bool degrevlex_greater(const Monomial& a, const Monomial& b) {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) return da > db;
  for (std::size_t i = a.arity(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

// ---------------------------------------------------------------- RingContext

RingPtr RingContext::make(std::vector<std::string> y, std::vector<std::string> z,
                          std::vector<std::string> aux, OrderTag order) {
  auto ring = std::shared_ptr<RingContext>(new RingContext());
  ring->k_ = y.size();
  ring->n_ = z.size();
  ring->order_ = order;
  for (auto* block : {&y, &z, &aux})
    for (auto& name : *block) ring->names_.push_back(std::move(name));
  std::set<std::string> seen;
  for (const auto& name : ring->names_) {
    if (name.empty()) throw AlgebraError("empty variable name");
    if (!seen.insert(name).second) throw AlgebraError("duplicate variable name '" + name + "'");
  }
  return ring;
}

RingPtr RingContext::plain(std::vector<std::string> names) { return make({}, std::move(names)); }

std::optional<std::size_t> RingContext::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

bool RingContext::compatible(const RingContext& other) const {
  return k_ == other.k_ && n_ == other.n_ && names_ == other.names_;
}

RingPtr RingContext::with_aux(const std::vector<std::string>& extra) const {
  std::vector<std::string> y(names_.begin(), names_.begin() + static_cast<long>(k_));
  std::vector<std::string> z(names_.begin() + static_cast<long>(k_),
                             names_.begin() + static_cast<long>(k_ + n_));
  std::vector<std::string> aux(names_.begin() + static_cast<long>(k_ + n_), names_.end());
  aux.insert(aux.end(), extra.begin(), extra.end());
  return make(std::move(y), std::move(z), std::move(aux), order_);
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw AlgebraError("polynomial without a ring");
}

Polynomial Polynomial::constant(RingPtr ring, const Rational& c) {
  Polynomial p(std::move(ring));
  p.add_term(Monomial(p.ring_->arity()), c);
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t var) {
  if (var >= ring->arity()) throw AlgebraError("variable index out of range");
  Polynomial p(std::move(ring));
  p.add_term(Monomial::variable(p.ring_->arity(), var), Rational(1));
  return p;
}

Polynomial Polynomial::term(RingPtr ring, const Monomial& m, const Rational& c) {
  Polynomial p(std::move(ring));
  p.add_term(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

std::optional<Rational> Polynomial::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (is_constant()) return terms_.begin()->second;
  return std::nullopt;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

long Polynomial::total_degree() const {
  long d = -1;
  for (const auto& [m, c] : terms_) d = std::max<long>(d, static_cast<long>(m.degree()));
  return d;
}

long Polynomial::order() const {
  if (terms_.empty()) return -1;
  long d = static_cast<long>(terms_.begin()->first.degree());
  for (const auto& [m, c] : terms_) d = std::min<long>(d, static_cast<long>(m.degree()));
  return d;
}

std::uint32_t Polynomial::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (m.arity() != ring_->arity()) throw AlgebraError("monomial arity does not match ring");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::require_same_ring(const Polynomial& other) const {
  if (ring_ != other.ring_ && !ring_->compatible(*other.ring_))
    throw AlgebraError("polynomials live in different rings");
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_ring(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_ring(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_ring(b);
  Polynomial r(a.ring_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

bool Polynomial::operator==(const Polynomial& other) const {
  return ring_->compatible(*other.ring_) && terms_ == other.terms_;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != ring_->arity()) throw AlgebraError("evaluation point has wrong arity");
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < m.arity(); ++i)
      for (std::uint32_t k = 0; k < m[i]; ++k) t *= point[i];
    sum += t;
  }
  return sum;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const TermMap::value_type*> ordered;
  ordered.reserve(terms_.size());
  for (const auto& t : terms_) ordered.push_back(&t);
  std::sort(ordered.begin(), ordered.end(),
            [](auto* a, auto* b) { return degrevlex_greater(a->first, b->first); });
  std::ostringstream out;
  bool first = true;
  for (const auto* t : ordered) {
    const auto& [m, c] = *t;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || m.is_one()) {
      out << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < m.arity(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) out << '*';
      out << ring_->name(i);
      if (m[i] > 1) out << '^' << m[i];
      wrote = true;
    }
  }
  return out.str();
}

PolyVector zero_vector(const RingPtr& ring, std::size_t rank) {
  return PolyVector(rank, Polynomial(ring));
}

bool is_zero(const PolyVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Polynomial& p) { return p.is_zero(); });
}

std::string to_string(const PolyVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].to_string();
  }
  return s + "]";
}

Polynomial partial_derivative(const Polynomial& p, std::size_t var) {
  if (var >= p.ring()->arity()) throw AlgebraError("derivative variable index out of range");
  Polynomial r(p.ring());
  for (const auto& [m, c] : p.terms()) {
    if (m[var] == 0) continue;
    auto exps = m.exponents();
    const auto e = exps[var];
    exps[var] -= 1;
    r.add_term(Monomial(std::move(exps)), c * e);
  }
  return r;
}

Polynomial substitute(const Polynomial& p, const Substitution& assignment, const RingPtr& target) {
  const auto& source = *p.ring();
  std::vector<Polynomial> images;
  images.reserve(source.arity());
  for (std::size_t v = 0; v < source.arity(); ++v) {
    if (auto it = assignment.find(v); it != assignment.end()) {
      if (!it->second.ring()->compatible(*target))
        throw AlgebraError("substituted polynomial for '" + source.name(v) + "' is not in the target ring");
      images.push_back(it->second);
      continue;
    }
    auto idx = target->index_of(source.name(v));
    if (!idx) throw AlgebraError("variable '" + source.name(v) + "' has no image in the target ring");
    images.push_back(Polynomial::variable(target, *idx));
  }
  // Cache powers per variable; exponents are small at desk scale.
  std::vector<std::vector<Polynomial>> powers(source.arity());
  auto power = [&](std::size_t v, std::uint32_t e) -> const Polynomial& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
    return cache[e];
  };
  Polynomial result(target);
  for (const auto& [m, c] : p.terms()) {
    Polynomial t = Polynomial::constant(target, c);
    for (std::size_t v = 0; v < m.arity(); ++v)
      if (m[v] > 0) t = t * power(v, m[v]);
    result += t;
  }
  return result;
}

Polynomial substitute(const Polynomial& p, const Substitution& assignment) {
  return substitute(p, assignment, p.ring());
}

Polynomial change_ring(const Polynomial& p, const RingPtr& target) {
  if (p.ring() == target) return p;
  std::vector<std::size_t> map(p.ring()->arity());
  for (std::size_t v = 0; v < map.size(); ++v) {
    auto idx = target->index_of(p.ring()->name(v));
    if (!idx) {
      if (p.degree_in(v) == 0) {
        map[v] = SIZE_MAX;
        continue;
      }
      throw AlgebraError("variable '" + p.ring()->name(v) + "' missing from target ring");
    }
    map[v] = *idx;
  }
  Polynomial r(target);
  for (const auto& [m, c] : p.terms()) {
    Monomial out(target->arity());
    std::vector<std::uint32_t> e(target->arity(), 0);
    for (std::size_t v = 0; v < map.size(); ++v)
      if (map[v] != SIZE_MAX) e[map[v]] = m[v];
    r.add_term(Monomial(std::move(e)), c);
  }
  return r;
}

}  // namespace equising
