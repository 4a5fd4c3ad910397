#pragma once

#include <random>
#include <string>
#include <vector>

#include "equising/parse.hpp"
#include "equising/polynomial.hpp"

namespace equising::test {

inline Polynomial P(const RingPtr& ring, const std::string& text) { return parse_polynomial(text, ring); }

inline std::vector<Polynomial> Ps(const RingPtr& ring, const std::vector<std::string>& texts) {
  std::vector<Polynomial> out;
  for (const auto& t : texts) out.push_back(P(ring, t));
  return out;
}

// Small random polynomial with integer coefficients in [-3, 3].
inline Polynomial random_polynomial(const RingPtr& ring, std::mt19937_64& rng, unsigned terms, unsigned max_exp) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<unsigned> exp(0, max_exp);
  Polynomial p(ring);
  for (unsigned i = 0; i < terms; ++i) {
    std::vector<std::uint32_t> e(ring->arity());
    for (auto& x : e) x = exp(rng);
    p.add_term(Monomial(std::move(e)), Rational(coef(rng)));
  }
  return p;
}

}  // namespace equising::test
