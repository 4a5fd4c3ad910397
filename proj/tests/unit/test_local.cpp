#include <doctest.h>

#include <random>

#include "equising/local.hpp"
#include "test_support.hpp"

using namespace equising;
using equising::test::P;
using equising::test::Ps;

namespace {

// Lattice points outside the staircase of a monomial ideal in two variables.
std::uint64_t staircase_count(const std::vector<std::pair<unsigned, unsigned>>& gens) {
  std::uint64_t count = 0;
  for (unsigned a = 0; a < 64; ++a)
    for (unsigned b = 0; b < 64; ++b) {
      bool in = false;
      for (auto [p, q] : gens) in = in || (a >= p && b >= q);
      if (!in) ++count;
    }
  return count;
}

std::uint64_t colength(const RingPtr& r, const std::vector<std::string>& gens) {
  auto res = local_colength(IdealSpec(r, Ps(r, gens)));
  REQUIRE(res.finite());
  return res.value;
}

}  // namespace

TEST_SUITE("local") {
  TEST_CASE("square of the maximal ideal") {
    auto r = RingContext::plain({"x", "y"});
    auto res = local_colength(IdealSpec(r, Ps(r, {"x^2", "x*y", "y^2"})));
    REQUIRE(res.finite());
    CHECK(res.value == 3);
    CHECK(res.basis.size() == 3);
    CHECK(res.stabilized_at == 2);
  }

  TEST_CASE("truncation localizes at the origin") {
    auto r = RingContext::plain({"x"});
    CHECK(colength(r, {"x*(x-1)"}) == 1);
    CHECK(colength(r, {"x - 1"}) == 0);
  }

  TEST_CASE("Milnor numbers of A_k") {
    auto r = RingContext::plain({"x", "y"});
    for (unsigned k = 1; k <= 5; ++k) {
      auto f = P(r, "x^" + std::to_string(k + 1) + " + y^2");
      IdealSpec jac(r, {partial_derivative(f, 0), partial_derivative(f, 1)});
      auto res = local_colength(jac);
      REQUIRE(res.finite());
      CHECK(res.value == k);
    }
  }

  TEST_CASE("hand-localized oracles") {
    auto r = RingContext::plain({"x", "y"});
    struct Case {
      std::vector<std::string> gens;
      std::vector<std::pair<unsigned, unsigned>> localized;
    };
    const std::vector<Case> cases{
        {{"x*(x-1)", "y"}, {{1, 0}, {0, 1}}},
        {{"x^2*(1+y)", "y*(y-2)"}, {{2, 0}, {0, 1}}},
        {{"(x-1)*(y-1)*x^2", "y^3*(x+2)"}, {{2, 0}, {0, 3}}},
        {{"x^3 - x^2", "y^2"}, {{2, 0}, {0, 2}}},
        {{"x*(x-1)*(x-2)", "y^4 - y^5"}, {{1, 0}, {0, 4}}},
        {{"(1+x+y)*x", "(1-y)*y^2"}, {{1, 0}, {0, 2}}},
        {{"x^2*(1-x)", "y"}, {{2, 0}, {0, 1}}},
        {{"x*(x-1)", "y*(y-1)"}, {{1, 0}, {0, 1}}},
        {{"x^2*(3+x*y)", "x*y*(1-x)", "y^3*(2+y)"}, {{2, 0}, {1, 1}, {0, 3}}},
        {{"x^4 - x^5*y", "y^2*(1+x^3)"}, {{4, 0}, {0, 2}}},
    };
    for (const auto& c : cases) CHECK(colength(r, c.gens) == staircase_count(c.localized));
  }

  TEST_CASE("monomial ideals match the staircase count") {
    auto r = RingContext::plain({"x", "y"});
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
      std::vector<std::pair<unsigned, unsigned>> gens{{1 + rng() % 6, 0}, {0, 1 + rng() % 6}};
      for (int k = 0; k < 2; ++k) gens.push_back({rng() % 5, rng() % 5});
      std::vector<std::string> text;
      for (auto [a, b] : gens) text.push_back("x^" + std::to_string(a) + "*y^" + std::to_string(b));
      CHECK(colength(r, text) == staircase_count(gens));
    }
  }

  TEST_CASE("dims are monotone and the certificate is minimal") {
    auto r = RingContext::plain({"x", "y"});
    auto res = local_colength(IdealSpec(r, Ps(r, {"x^3 + y^2", "x*y"})));
    REQUIRE(res.finite());
    for (std::size_t n = 1; n < res.dims.size(); ++n) CHECK(res.dims[n - 1] <= res.dims[n]);
    for (unsigned n = 0; n < res.stabilized_at; ++n) CHECK(res.dims[n] != res.dims[n + 1]);
    CHECK(res.dims[res.stabilized_at] == res.dims[res.stabilized_at + 1]);
  }

  TEST_CASE("infinite colength is certified") {
    auto r = RingContext::plain({"x", "y"});
    auto line = local_colength(IdealSpec(r, {P(r, "x")}));
    CHECK(line.status == ColengthStatus::Infinite);
    REQUIRE(line.free_direction);
    CHECK(line.free_direction->second == 1);

    auto cone = RingContext::plain({"z1", "z2", "z3"});
    SubmoduleSpec tangent(cone, 1, {{P(cone, "z1 + z2")}, {P(cone, "z3")}}, {P(cone, "z1^2 - z2^2 + z3^2")});
    CHECK(local_colength(tangent).status == ColengthStatus::Infinite);
    SubmoduleSpec transverse(cone, 1, {{P(cone, "z1")}, {P(cone, "z3")}}, {P(cone, "z1^2 - z2^2 + z3^2")});
    auto t = local_colength(transverse);
    REQUIRE(t.finite());
    CHECK(t.value == 2);
  }

  TEST_CASE("small cap is reported as undetermined") {
    auto r = RingContext::plain({"x", "y"});
    LocalOptions opts;
    opts.cap = 4;
    auto res = local_colength(IdealSpec(r, Ps(r, {"x^9", "y^9"})), opts);
    CHECK(res.status == ColengthStatus::Undetermined);
  }

  TEST_CASE("modules over a quotient ring") {
    auto r = RingContext::plain({"x", "y"});
    // m * R^2 has colength 2.
    SubmoduleSpec m2(r, 2, {{P(r, "x"), P(r, "0")}, {P(r, "y"), P(r, "0")}, {P(r, "0"), P(r, "x")}, {P(r, "0"), P(r, "y")}});
    auto res = local_colength(m2);
    REQUIRE(res.finite());
    CHECK(res.value == 2);
  }
}
