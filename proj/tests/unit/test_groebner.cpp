#include <doctest.h>

#include <random>

#include "equising/groebner.hpp"
#include "test_support.hpp"

using namespace equising;
using equising::test::P;
using equising::test::Ps;

namespace {

std::vector<std::string> basis_strings(const IdealSpec& i) { return groebner_basis(i).to_strings(); }

IdealSpec random_monomialish_ideal(const RingPtr& r, std::mt19937_64& rng) {
  std::vector<Polynomial> gens;
  const int n = 1 + static_cast<int>(rng() % 3);
  for (int k = 0; k < n; ++k) gens.push_back(test::random_polynomial(r, rng, 2, 2));
  return IdealSpec(r, gens);
}

}  // namespace

TEST_SUITE("groebner") {
  TEST_CASE("small bases") {
    auto r = RingContext::plain({"x", "y"});
    CHECK(basis_strings(IdealSpec(r, Ps(r, {"x^2", "x*y"}))) == std::vector<std::string>{"x*y", "x^2"});
    CHECK(basis_strings(IdealSpec(r, Ps(r, {"x - y", "y"}))) == std::vector<std::string>{"y", "x"});
  }

  TEST_CASE("basis generates the same ideal and is deterministic") {
    auto r = RingContext::plain({"x", "y", "z"});
    std::mt19937_64 rng(17);
    for (int i = 0; i < 20; ++i) {
      auto I = random_monomialish_ideal(r, rng);
      auto b1 = groebner_basis(I);
      auto b2 = groebner_basis(I);
      CHECK(b1.to_strings() == b2.to_strings());
      std::vector<Polynomial> elems;
      for (auto& e : b1.elements) elems.push_back(e[0]);
      IdealSpec B(r, elems);
      CHECK(contains(I, B));
      CHECK(contains(B, I));
      for (auto& e : b1.elements) CHECK(e[0].terms().size() > 0);
    }
  }

  TEST_CASE("S-polynomials reduce to zero") {
    auto r = RingContext::plain({"x", "y", "z"});
    IdealSpec I(r, Ps(r, {"x^2*y - z", "x*y^2 - x", "y*z - 1"}));
    auto b = groebner_basis(I);
    for (std::size_t i = 0; i < b.elements.size(); ++i) {
      for (std::size_t j = i + 1; j < b.elements.size(); ++j) {
        const auto& f = b.elements[i][0];
        const auto& g = b.elements[j][0];
        auto lead = [](const Polynomial& p) {
          const Monomial* best = nullptr;
          for (const auto& [m, c] : p.terms())
            if (!best || degrevlex_greater(m, *best)) best = &m;
          return *best;
        };
        auto lf = lead(f), lg = lead(g);
        auto l = lf.lcm(lg);
        auto s = Polynomial::term(r, l / lf, 1) * f - Polynomial::term(r, l / lg, 1) * g;
        CHECK(is_zero(normal_form(PolyVector{s}, b.elements)));
      }
    }
  }

  TEST_CASE("membership with certificates") {
    auto r = RingContext::plain({"x", "y"});
    IdealSpec I(r, Ps(r, {"x^2", "x*y"}));
    auto m = membership(P(r, "x^2*y + 3*x*y^5"), I);
    CHECK(m.member);
    REQUIRE(m.certificate);
    CHECK(verify_certificate({P(r, "x^2*y + 3*x*y^5")}, SubmoduleSpec::from_ideal(I), *m.certificate));
    CHECK_FALSE(membership(P(r, "y^3"), I).member);
  }

  TEST_CASE("membership modulo relations") {
    auto r = RingContext::plain({"x", "y"});
    SubmoduleSpec M(r, 1, {{P(r, "x")}}, Ps(r, {"y^2 - x^3"}));
    auto m = membership({P(r, "y^2")}, M);
    CHECK(m.member);
    REQUIRE(m.certificate);
    CHECK(m.certificate->relation_coefficients.size() == 1);
    CHECK_FALSE(membership({P(r, "y")}, M).member);
  }

  TEST_CASE("module membership and rank mismatch") {
    auto r = RingContext::plain({"x", "y"});
    SubmoduleSpec M(r, 2, {{P(r, "x"), P(r, "y")}, {P(r, "y"), P(r, "0")}});
    CHECK(membership({P(r, "x*y + y^2"), P(r, "y^2")}, M).member);
    CHECK_FALSE(membership({P(r, "1"), P(r, "0")}, M).member);
    CHECK_THROWS_AS(membership({P(r, "x")}, M), AlgebraError);
  }

  TEST_CASE("intersection") {
    auto r = RingContext::plain({"x", "y"});
    CHECK(basis_strings(ideal_intersection(IdealSpec(r, {P(r, "x")}), IdealSpec(r, {P(r, "y")}))) ==
          std::vector<std::string>{"x*y"});
    IdealSpec I(r, Ps(r, {"x^2 + y", "x*y"}));
    CHECK(basis_strings(ideal_intersection(I, I)) == basis_strings(I));
  }

  TEST_CASE("the two-plane section ideals") {
    auto s = RingContext::make({"t"}, {"y", "z", "w"});
    IdealSpec i1(s, Ps(s, {"z+w", "y"}));
    IdealSpec i2(s, Ps(s, {"w+t*y", "z"}));
    auto inter = ideal_intersection(i1, i2);
    auto prod = ideal_product(i1, i2);
    auto h = P(s, "z+w+t*y");
    CHECK(membership(h, inter).member);
    CHECK_FALSE(membership(h, prod).member);
    auto rad = radical_membership(h, prod);
    CHECK(rad.member);
    CHECK(rad.exponent == 2u);
    // Some intersection generator has leading term z in the local order.
    bool has_z = false;
    for (auto& g : groebner_basis(inter).elements) {
      auto v = kernel::from_polynomial(g[0], MonomialOrder::local());
      if (v.back().mono == Monomial::variable(4, 2)) has_z = true;
    }
    CHECK(has_z);
  }

  TEST_CASE("radical membership") {
    auto r = RingContext::plain({"x", "y"});
    CHECK_FALSE(radical_membership(P(r, "1"), IdealSpec(r, {P(r, "x")})).member);
    auto x = radical_membership(P(r, "x"), IdealSpec(r, {P(r, "x^2")}));
    CHECK(x.member);
    CHECK(x.exponent == 2u);
    CHECK_FALSE(radical_membership(P(r, "y"), IdealSpec(r, {P(r, "x^2")})).member);
  }

  TEST_CASE("quotient") {
    auto r = RingContext::plain({"x", "y"});
    auto q = ideal_quotient(IdealSpec(r, Ps(r, {"x^2", "x*y"})), IdealSpec(r, {P(r, "x")}));
    CHECK(basis_strings(q) == std::vector<std::string>{"y", "x"});
    CHECK(exact_divide(P(r, "x^2 - y^2"), P(r, "x - y")) == P(r, "x + y"));
    CHECK_THROWS_AS(exact_divide(P(r, "x^2 + 1"), P(r, "x")), AlgebraError);
  }

  TEST_CASE("ideal calculus properties on random ideals") {
    auto r = RingContext::plain({"x", "y", "z"});
    std::mt19937_64 rng(29);
    for (int i = 0; i < 50; ++i) {
      auto I = random_monomialish_ideal(r, rng);
      auto J = random_monomialish_ideal(r, rng);
      auto inter = ideal_intersection(I, J);
      auto prod = ideal_product(I, J);
      CHECK(contains(I, inter));
      CHECK(contains(J, inter));
      CHECK(contains(inter, prod));
      for (const auto& g : I.generators()) {
        if (membership(g, J, false).member) CHECK(radical_membership(g, J).member);
      }
    }
  }

  TEST_CASE("rational points of zero-dimensional systems") {
    auto r = RingContext::plain({"x", "y"});
    auto pts = rational_points(IdealSpec(r, Ps(r, {"x^2 - 1", "y - x"})));
    REQUIRE(pts);
    CHECK(*pts == std::vector<std::vector<Rational>>{{-1, -1}, {1, 1}});
    auto none = rational_points(IdealSpec(r, Ps(r, {"x^2 + 1", "y"})));
    REQUIRE(none);
    CHECK(none->empty());
    CHECK_FALSE(rational_points(IdealSpec(r, Ps(r, {"x*y"}))));
    CHECK(rational_roots({-6, 1, 1}) == std::vector<Rational>{-3, 2});
  }
}
