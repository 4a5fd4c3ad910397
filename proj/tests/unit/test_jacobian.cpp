#include <doctest.h>

#include "equising/jacobian.hpp"
#include "test_support.hpp"

using namespace equising;
using equising::test::P;
using equising::test::Ps;

namespace {

GermPresentation germ(const RingPtr& r, const std::vector<std::string>& f) {
  GermPresentation g;
  g.ring = r;
  g.f = Ps(r, f);
  return g;
}

std::vector<std::string> strings(const PolyVector& v) {
  std::vector<std::string> out;
  for (const auto& p : v) out.push_back(p.to_string());
  return out;
}

}  // namespace

TEST_SUITE("jacobian") {
  TEST_CASE("parameter column of the product structure") {
    auto r = RingContext::make({"t"}, {"x", "y", "z", "w"});
    auto g = germ(r, {"x*(w + t*y)", "x*z", "y*(w + t*y)", "y*z"});
    auto jm = jacobian_modules(g);
    REQUIRE(jm.jm_y.generators().size() == 1);
    CHECK(strings(jm.jm_y.generators()[0]) == std::vector<std::string>{"x*y", "0", "y^2", "0"});
    CHECK(jm.jm_z.generators().size() == 4);
    CHECK(jm.jm.generators().size() == 5);
    CHECK(jm.my_jm_z.generators().size() == 16);
  }

  TEST_CASE("validation rejects components not vanishing on Y") {
    auto r = RingContext::make({"y"}, {"z"});
    CHECK_NOTHROW(germ(r, {"z^2 + y*z"}).validate());
    CHECK_THROWS_AS(germ(r, {"z^2 + y"}).validate(), AlgebraError);
  }

  TEST_CASE("kernel basis convention") {
    auto b = kernel_basis({1, 1, 0});
    REQUIRE(b.size() == 2);
    CHECK(b[0] == std::vector<Rational>{1, -1, 0});
    CHECK(b[1] == std::vector<Rational>{0, 0, 1});
    auto c = kernel_basis({0, 2, 0});
    CHECK(c[0] == std::vector<Rational>{1, 0, 0});
    CHECK(c[1] == std::vector<Rational>{0, 0, 1});
  }

  TEST_CASE("hyperplane restriction on the cone") {
    auto r = RingContext::plain({"z1", "z2", "z3"});
    auto cone = germ(r, {"z1^2 - z2^2 + z3^2"});
    auto m = hyperplane_restricted(cone, Hyperplane{{}, {1, 1, 0}});
    REQUIRE(m.generators().size() == 2);
    CHECK(m.generators()[0][0].to_string() == "2*z1 + 2*z2");
    CHECK(m.generators()[1][0].to_string() == "2*z3");
    CHECK(hyperplane_restricted_z(cone, Hyperplane{{}, {1, 1, 0}}).generators().size() == 2);
    CHECK_THROWS_AS(hyperplane_restricted(cone, Hyperplane{{}, {0, 0, 0}}), AlgebraError);
  }

  TEST_CASE("z-restriction needs a hyperplane containing Y") {
    auto r = RingContext::make({"y"}, {"z1", "z2"});
    auto g = germ(r, {"z1^3 + y*z1 - z2^2"});
    CHECK_THROWS_AS(hyperplane_restricted_z(g, Hyperplane{{1}, {1, 0}}), AlgebraError);
    auto full = hyperplane_restricted(g, Hyperplane{{1}, {1, 0}});
    CHECK(full.generators().size() == 2);
  }

  TEST_CASE("fiber specialization") {
    auto r = RingContext::make({"t"}, {"x", "y", "z", "w"});
    auto fib = specialize_fiber(germ(r, {"x*(w + t*y)", "x*z", "y*(w + t*y)", "y*z"}), {0});
    CHECK(fib.k() == 0);
    CHECK(strings(fib.f) == std::vector<std::string>{"x*w", "x*z", "y*w", "y*z"});
    auto one = specialize_fiber(germ(r, {"x*(w + t*y)"}), {2});
    CHECK(one.f[0].to_string() == "2*x*y + x*w");
    CHECK_THROWS_AS(specialize_fiber(germ(r, {"x*z"}), {}), AlgebraError);
  }

  TEST_CASE("Grassmann modification") {
    auto r = RingContext::plain({"z1", "z2"});
    auto mod = grassmann_modification(germ(r, {"z1*z2"}), 1);
    CHECK(mod.G.f[0].to_string() == "z1^2*a1");
    CHECK(mod.a_names == std::vector<std::string>{"a1"});
    for (const auto& id : mod.identities) CHECK(id.holds);

    auto w = RingContext::make({"y"}, {"z1", "z2", "z3"});
    auto mw = grassmann_modification(germ(w, {"z1^3 + y*z1*z3 - z2^2 + z3^2"}), 0);
    CHECK(mw.G.ring->aux_count() == 2);
    CHECK(mw.identities.size() == 3);
    for (const auto& id : mw.identities) CHECK(id.holds);
  }

  TEST_CASE("structure witnesses") {
    auto r = RingContext::plain({"x", "y"});
    WitnessOptions opts;
    opts.K = Ps(r, {"x"});
    auto w = structure_witnesses(germ(r, {"x"}), germ(r, {"x^2"}), opts);
    CHECK(w.r == 1);
    CHECK(w.H0[0][0].to_string() == "x");
    auto same = structure_witnesses(germ(r, {"x", "y"}), germ(r, {"x", "y"}), opts);
    CHECK(same.r == 0);
    CHECK(same.H0[1][1].to_string() == "1");
  }

  TEST_CASE("witnesses for the section pair") {
    auto s = RingContext::make({"t"}, {"y", "z", "w"});
    auto J = germ(s, {"z^2 + z*w", "y*z", "t*y + z + w"});
    auto I = germ(s, {"(z+w)*(w+t*y)", "(z+w)*z", "y*(w+t*y)", "y*z"});
    J.dimension = I.dimension = 2;
    WitnessOptions opts;
    opts.K = Ps(s, {"y", "z", "w"});
    auto w = structure_witnesses(J, I, opts);
    CHECK(w.r == 1);
    CHECK(w.H0.size() == 4);
    CHECK(w.H1.size() == 9);
    CHECK(w.H2.size() == 9);
  }

  TEST_CASE("Jacobian criterion ideal of a node") {
    auto r = RingContext::plain({"x", "y"});
    auto node = germ(r, {"x*y"});
    auto k = jacobian_singular_ideal(node);
    CHECK(k.size() == 3);
    auto w = structure_witnesses(node, germ(r, {"x^2*y", "x*y^2"}));
    CHECK(w.r == 1);
  }
}
