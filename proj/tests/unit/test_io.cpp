#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "equising/io.hpp"

using namespace equising;

namespace {

const char* kSample = R"(equising 1
# cubic family with a bundled probe
y: y
z: z1, z2
f: z1^3 + y*z1 - z2^2
F: z2
dimension: 2
ideal I: z1^2, z2
module M 2: (z1, z2); (y, 0)
element: (z1*z2, 1/2*y)
hyperplane: z2
hyperplane: 3*z1 - z2
curve
  y = -t^2
  z1 = t
end
assert: equidimensional, wa
)";

std::size_t error_line(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("problem files round-trip") {
    auto pf = parse_problem(kSample);
    CHECK(pf.ring->y_count() == 1);
    CHECK(pf.ring->z_count() == 2);
    CHECK(pf.f.size() == 1);
    CHECK(pf.F->to_string() == "z2");
    CHECK(pf.dimension == 2u);
    REQUIRE(pf.modules.size() == 2);
    CHECK(pf.modules[0].ideal);
    CHECK(pf.modules[1].rank == 2);
    CHECK(pf.element->size() == 2);
    REQUIRE(pf.hyperplanes.size() == 2);
    CHECK(pf.hyperplanes[1].z_coeffs[0] == 3);
    REQUIRE(pf.curves.size() == 1);
    CHECK(pf.curves[0].to_string() == "(-t^2, t, 0)");
    CHECK(pf.equidimensional);
    CHECK(pf.wa);

    std::string once = serialize(pf);
    auto again = parse_problem(once);
    CHECK(equivalent(pf, again));
    CHECK(serialize(again) == once);
  }

  TEST_CASE("plain rings and scalar elements") {
    auto pf = parse_problem("equising 1\nvars: x, y\nrelations: x*y\nideal m: x, y\nelement: (x + y)*(x - y)\n");
    CHECK(pf.ring->y_count() == 0);
    CHECK(pf.element->size() == 1);
    CHECK((*pf.element)[0].to_string() == "x^2 - y^2");
    CHECK(pf.ideal(0).generators().size() == 2);
    CHECK(pf.module(0).relations().size() == 1);
    CHECK(equivalent(pf, parse_problem(serialize(pf))));
    CHECK_THROWS_AS(pf.germ(), AlgebraError);
  }

  TEST_CASE("parse errors carry positions") {
    CHECK(error_line("vars: x\n") == 1);
    CHECK(error_line("equising 2\nvars: x\n") == 1);
    CHECK(error_line("equising 1\nvars: x\nf: x +* 1\n") == 3);
    CHECK(error_line("equising 1\nvars: x\nf: q\n") == 3);
    CHECK(error_line("equising 1\nvars: x, x\n") == 2);
    CHECK(error_line("equising 1\nvars: x\nhyperplane: x^2\n") == 3);
    CHECK(error_line("equising 1\nvars: x\nmodule M 2: (x, 1); (x)\n") == 3);
    CHECK(error_line("equising 1\nvars: x\ncurve\n  x = t\n") == 3);
    CHECK(error_line("equising 1\nvars: x\ncurve\n  w = t\nend\n") == 4);
    CHECK(error_line("equising 1\nvars: x\nbogus: 1\n") == 3);
    try {
      parse_problem("equising 1\nvars: x, y\nf: x + y, x +* y\n");
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() > 12);
    }
  }

  TEST_CASE("inputs resolve against the corpus") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "equising_io_test";
    fs::create_directories(dir);
    {
      std::ofstream(dir / "toy.eq") << "equising 1\nvars: x\nideal I: x^2\n";
    }
    setenv("EQUISING_CORPUS", dir.c_str(), 1);
    CHECK(load_problem("toy").modules.size() == 1);
    CHECK(load_problem("toy.eq").modules.size() == 1);
    CHECK_THROWS_AS(load_problem("missing"), InputError);
    unsetenv("EQUISING_CORPUS");
    fs::remove_all(dir);
  }
}
