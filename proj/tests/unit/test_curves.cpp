#include <doctest.h>

#include "equising/curves.hpp"
#include "test_support.hpp"

using namespace equising;
using equising::test::P;
using equising::test::Ps;

namespace {

CurveGerm curve(const RingPtr& r, const std::string& text) { return parse_curve(text, r); }

DVRModule column(std::vector<Series> entries) {
  DVRModule m;
  m.rank = entries.size();
  m.columns.push_back(std::move(entries));
  return m;
}

}  // namespace

TEST_SUITE("curves") {
  TEST_CASE("series arithmetic and precision") {
    Series a(std::vector<Rational>{0, 1, 2}, 5);
    Series b(std::vector<Rational>{0, 0, 3}, Series::kExact);
    CHECK((a * b).precision() == 7);
    CHECK((a * b).valuation() == std::size_t{3});
    CHECK((a + b).precision() == 5);
    Series u(std::vector<Rational>{1, 1}, Series::kExact);
    auto inv = u.inverse(6);
    CHECK((u * inv).truncated(6) == Series::monomial(1, 0, 6));
    CHECK(Series(std::vector<Rational>{0, -1, 0, 2}, Series::kExact).to_string() == "-t + 2*t^3");
    CHECK(Series(std::vector<Rational>{0, 1}, 4).to_string() == "t + O(t^4)");
  }

  TEST_CASE("pullback examples") {
    auto r = RingContext::plain({"x", "y"});
    auto cusp = curve(r, "x = t^2\ny = t^3");
    CHECK(pullback(cusp, P(r, "y^2 - x^3")).known_zero());
    CHECK(pullback(cusp, P(r, "x*y")) == Series::monomial(1, 5));
    auto w = RingContext::make({"y"}, {"z1", "z2"});
    auto phi = curve(w, "y = -t^2\nz1 = t");
    CHECK(pullback(phi, P(w, "z1^3 + y*z1 - z2^2")).known_zero());
    for (const auto& s : pullback(phi, zero_vector(w, 3))) CHECK(s.known_zero());
  }

  TEST_CASE("curve not on the variety") {
    auto r = RingContext::plain({"x", "y"});
    SubmoduleSpec m(r, 1, {{P(r, "x")}}, {P(r, "y^2 - x^3")});
    CHECK_THROWS_AS(pullback(curve(r, "x = t\ny = t"), m), CurveError);
    CHECK_THROWS_AS(curve(r, "x = 1 + t"), CurveError);
    CHECK_THROWS_AS(curve(r, "q = t"), ParseError);
  }

  TEST_CASE("dvr membership examples") {
    auto t = [](std::size_t k) { return Series::monomial(1, k); };
    CHECK(dvr_membership({t(3)}, column({t(2)})).member());
    CHECK(dvr_membership({t(3)}, column({t(2)}), true).member());
    CHECK_FALSE(dvr_membership({t(2)}, column({t(2)}), true).member());
    auto res = dvr_membership({t(1)}, column({t(3)}));
    CHECK(res.outcome == DVROutcome::NonMember);
    CHECK(res.element_order == 1);
    CHECK(res.module_order == 3);
    CHECK(dvr_membership({Series()}, column({t(5)})).member());
    // Rank two: (t, t^2) against columns (t, 0) and (0, t^3).
    DVRModule m;
    m.rank = 2;
    m.columns = {{t(1), Series()}, {Series(), t(3)}};
    auto two = dvr_membership({t(1), t(2)}, m);
    CHECK(two.outcome == DVROutcome::NonMember);
    CHECK(two.row == 1);
    CHECK(dvr_membership({t(1), t(4)}, m).member());
  }

  TEST_CASE("low precision is reported") {
    Series approx(std::vector<Rational>{0, 0, 0, 1}, 4);
    auto res = dvr_membership({Series::monomial(1, 5)}, column({approx}));
    CHECK(res.outcome == DVROutcome::InsufficientPrecision);
  }

  TEST_CASE("refutation examples") {
    auto r = RingContext::plain({"x", "y"});
    SubmoduleSpec M(r, 1, {{P(r, "x^2")}, {P(r, "y^2")}});
    ProbeOptions opts;
    auto v = icl_refute({P(r, "x")}, M, {curve(r, "x = t")}, opts);
    CHECK(v.status == Status::Refuted);
    REQUIRE(v.curve_witness);
    CHECK(v.curve_witness->element_order == 1);
    CHECK(v.curve_witness->module_order == 2);

    opts.exponent_bound = 4;
    opts.probe_count = 1000;
    auto probes = generate_probes(r, {}, {}, opts);
    CHECK(probes.size() >= 80);
    CHECK(icl_refute({P(r, "x*y")}, M, probes, opts).status == Status::NotRefuted);
  }

  TEST_CASE("refutations replay") {
    auto r = RingContext::plain({"x", "y"});
    SubmoduleSpec M(r, 1, {{P(r, "x^3")}, {P(r, "y^2")}});
    ProbeOptions opts;
    opts.exponent_bound = 3;
    auto probes = generate_probes(r, {}, {}, opts);
    auto v = icl_refute({P(r, "x*y")}, M, probes, opts);
    REQUIRE(v.status == Status::Refuted);
    CurveGerm c = probes[v.curve_witness->probe_index];
    auto again = dvr_membership(pullback(c, PolyVector{P(r, "x*y")}), pullback(c, M));
    CHECK(again.outcome == DVROutcome::NonMember);
    CHECK(again.element_order == v.curve_witness->element_order);
    CHECK(again.module_order == v.curve_witness->module_order);
    CHECK(again.element_order < again.module_order);
  }

  TEST_CASE("nilpotents are never refuted") {
    auto s = RingContext::make({"t"}, {"y", "z", "w"});
    auto rels = Ps(s, {"(z+w)*(w+t*y)", "(z+w)*z", "y*(w+t*y)", "y*z"});
    SubmoduleSpec zero(s, 1, {}, rels);
    ProbeOptions opts;
    opts.exponent_bound = 3;
    opts.probe_count = 60;
    auto probes = generate_probes(s, rels, {}, opts);
    CHECK(probes.size() >= 50);
    CHECK(icl_refute({P(s, "z + w + t*y")}, zero, probes, opts).status == Status::NotRefuted);
  }

  TEST_CASE("lifted curves lie on the variety to their precision") {
    auto r = RingContext::make({"y"}, {"z1", "z2"});
    auto rels = Ps(r, {"z1^3 + y*z1 - z2^2"});
    ProbeOptions opts;
    opts.exponent_bound = 2;
    opts.probe_count = 40;
    auto probes = generate_probes(r, rels, {}, opts);
    std::size_t lifted = 0;
    for (const auto& c : probes) {
      if (c.exact()) continue;
      ++lifted;
      CHECK(pullback(c, rels[0]).known_zero());
      auto finer = refine(c, 2 * c.precision());
      CHECK(pullback(finer, rels[0]).known_zero());
      for (std::size_t v = 0; v < 3; ++v)
        CHECK(finer.components[v].truncated(c.precision()) == c.components[v]);
    }
    CHECK(lifted > 0);
  }

  TEST_CASE("raising precision never flips a decided verdict") {
    auto r = RingContext::make({"y"}, {"z1", "z2"});
    auto rels = Ps(r, {"z1^3 + y*z1 - z2^2"});
    SubmoduleSpec M(r, 1, {{P(r, "z1*(3*z1^2 + y)")}, {P(r, "z2*z1")}, {P(r, "z2^2")}, {P(r, "z1*z2")}}, rels);
    ProbeOptions opts;
    opts.exponent_bound = 2;
    opts.probe_count = 40;
    for (auto c : generate_probes(r, rels, {}, opts)) {
      if (c.exact()) continue;
      auto low = dvr_membership(pullback(c, PolyVector{P(r, "z1")}), pullback(c, M));
      auto fine = refine(c, 4 * c.precision());
      auto high = dvr_membership(pullback(fine, PolyVector{P(r, "z1")}), pullback(fine, M));
      if (low.outcome != DVROutcome::InsufficientPrecision) CHECK(low.outcome == high.outcome);
    }
  }

  TEST_CASE("limiting secants") {
    auto r = RingContext::make({"y"}, {"z1", "z2"});
    auto s = limiting_Y_secant(curve(r, "y = t\nz1 = t^2\nz2 = t^3"));
    CHECK(s.direction == std::vector<Rational>{1, 0});
    CHECK(secant_in_hyperplane(s, {0, 1}));
    CHECK_FALSE(secant_in_hyperplane(s, {1, 1}));
    CHECK(limiting_Y_secant(curve(r, "z1 = t\nz2 = t")).direction == std::vector<Rational>{1, 1});
    CHECK_THROWS_AS(limiting_Y_secant(curve(r, "y = t")), CurveError);
  }

  TEST_CASE("smooth part filter") {
    auto s = RingContext::make({"t"}, {"y", "z", "w"});
    auto rels = Ps(s, {"z^2 + z*w", "y*z", "t*y + z + w"});
    CHECK_FALSE(on_smooth_part(curve(s, "t = t"), rels, 2));
    CHECK(on_smooth_part(curve(s, "t = t\nz = -t\nw = t"), rels, 2));
  }
}
