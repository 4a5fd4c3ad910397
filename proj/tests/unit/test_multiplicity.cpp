#include <doctest.h>

#include <random>

#include "equising/multiplicity.hpp"
#include "test_support.hpp"

using namespace equising;
using equising::test::P;
using equising::test::Ps;

namespace {

std::uint64_t hs(const RingPtr& r, const std::vector<std::string>& gens, unsigned d = 2) {
  return hilbert_samuel(IdealSpec(r, Ps(r, gens)), d).e;
}

SubmoduleSpec ideal_module(const RingPtr& r, const std::vector<std::string>& gens) {
  return SubmoduleSpec::from_ideal(IdealSpec(r, Ps(r, gens)));
}

}  // namespace

TEST_SUITE("multiplicity") {
  TEST_CASE("Hilbert-Samuel examples agree with generic reductions") {
    auto r = RingContext::plain({"x", "y"});
    for (auto [gens, e] : std::vector<std::pair<std::vector<std::string>, std::uint64_t>>{
             {{"x", "y"}, 1}, {{"x^2", "y^3"}, 6}, {{"x^2", "x*y", "y^2"}, 4}}) {
      auto res = hilbert_samuel(IdealSpec(r, Ps(r, gens)), 2);
      CHECK(res.e == e);
      REQUIRE(res.generic_value);
      CHECK(*res.generic_value == e);
    }
  }

  TEST_CASE("finite differences of the square of the maximal ideal") {
    auto r = RingContext::plain({"x", "y"});
    auto res = hilbert_samuel(IdealSpec(r, Ps(r, {"x^2", "x*y", "y^2"})), 2);
    for (auto [n, c] : res.samples) CHECK(c == (2 * n + 1) * (2 * n) / 2);
  }

  TEST_CASE("Buchsbaum-Rim of m R^2") {
    auto r = RingContext::plain({"x", "y"});
    SubmoduleSpec m2(r, 2,
                     {{P(r, "x"), P(r, "0")}, {P(r, "y"), P(r, "0")}, {P(r, "0"), P(r, "x")}, {P(r, "0"), P(r, "y")}});
    auto res = buchsbaum_rim(m2, 2);
    CHECK(res.e == 3);
    for (auto [n, c] : res.samples) CHECK(c == (n + 1) * (n + 1) * n / 2);
    SubmoduleSpec full(r, 2, {{P(r, "1"), P(r, "0")}, {P(r, "0"), P(r, "1")}});
    CHECK(buchsbaum_rim(full, 2).e == 0);
  }

  TEST_CASE("rank one Buchsbaum-Rim equals Hilbert-Samuel on monomial ideals") {
    auto r = RingContext::plain({"x", "y"});
    std::mt19937_64 rng(11);
    for (int i = 0; i < 10; ++i) {
      std::vector<std::string> gens{"x^" + std::to_string(1 + rng() % 4), "y^" + std::to_string(1 + rng() % 4),
                                    "x^" + std::to_string(rng() % 3) + "*y^" + std::to_string(rng() % 3)};
      IdealSpec I(r, Ps(r, gens));
      CHECK(buchsbaum_rim(SubmoduleSpec::from_ideal(I), 2).e == hilbert_samuel(I, 2).e);
    }
  }

  TEST_CASE("widening the window does not change e") {
    auto r = RingContext::plain({"x", "y"});
    for (auto gens : std::vector<std::vector<std::string>>{{"x^2", "y^3"}, {"x^3", "x*y", "y^2"}, {"x^2", "y^2"}}) {
      MultiplicityOptions narrow, wide;
      narrow.window = 2;
      wide.window = 4;
      IdealSpec I(r, Ps(r, gens));
      CHECK(hilbert_samuel(I, 2, {}, narrow).e == hilbert_samuel(I, 2, {}, wide).e);
    }
  }

  TEST_CASE("non-finite colength is an error") {
    auto r = RingContext::plain({"x", "y"});
    CHECK_THROWS_AS(hilbert_samuel(IdealSpec(r, {P(r, "x")}), 2), MultiplicityError);
  }

  TEST_CASE("reduction examples") {
    auto r = RingContext::plain({"x", "y"});
    ReductionContext ctx;
    ctx.dimension = 2;
    auto sq = ideal_module(r, {"x^2", "y^2"});
    CHECK(is_reduction(sq, ideal_module(r, {"x^2", "x*y", "y^2"}), ctx).status == Status::CertifiedTrue);
    auto v = is_reduction(sq, ideal_module(r, {"x", "y"}), ctx);
    CHECK(v.status == Status::CertifiedFalse);
    REQUIRE(v.multiplicity_witness);
    CHECK(v.multiplicity_witness->small_e == std::uint64_t{4});
    CHECK(v.multiplicity_witness->large_e == std::uint64_t{1});
    CHECK(is_reduction(sq, sq, ctx).status == Status::CertifiedTrue);
    CHECK(is_reduction(ideal_module(r, {"x^2"}), ideal_module(r, {"x^2", "y"}), ctx).status ==
          Status::CertifiedFalse);
    CHECK_THROWS_AS(is_reduction(ideal_module(r, {"x"}), sq, ctx), AlgebraError);
  }

  TEST_CASE("integral closure certification") {
    auto r = RingContext::plain({"x", "y"});
    ClosureContext ctx;
    ctx.reduction.dimension = 2;
    auto sq = ideal_module(r, {"x^2", "y^2"});
    CHECK(icl_certify({P(r, "x*y")}, sq, ctx).status == Status::CertifiedTrue);
    auto no = icl_certify({P(r, "x")}, sq, ctx);
    CHECK(no.status == Status::CertifiedFalse);
    CHECK(no.multiplicity_witness->large_e == std::uint64_t{2});

    auto s = RingContext::make({"t"}, {"y", "z", "w"});
    SubmoduleSpec zero(s, 1, {}, Ps(s, {"(z+w)*(w+t*y)", "(z+w)*z", "y*(w+t*y)", "y*z"}));
    auto nil = icl_certify({P(s, "z + w + t*y")}, zero, ctx);
    CHECK(nil.status == Status::CertifiedTrue);
    CHECK(nil.provenance.front().criterion == "nilpotent");
  }

  TEST_CASE("multiplicity is blind to nilpotents") {
    auto s = RingContext::make({"t"}, {"y", "z", "w"});
    auto product = Ps(s, {"(z+w)*(w+t*y)", "(z+w)*z", "y*(w+t*y)", "y*z"});
    auto intersection = Ps(s, {"z^2 + z*w", "y*z", "t*y + z + w"});
    MultiplicityOptions opts;
    IdealSpec m(s, Ps(s, {"t", "y", "z", "w"}));
    CHECK(hilbert_samuel(m, 2, product, opts).e == hilbert_samuel(m, 2, intersection, opts).e);
  }
}
