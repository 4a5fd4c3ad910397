#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "equising/cli.hpp"
#include "equising/io.hpp"

using namespace equising;

namespace {

JobResult run(const std::string& command, std::vector<std::string> inputs = {}) {
  JobSpec job;
  job.command = command;
  job.inputs = std::move(inputs);
  return run_job(job);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("every bundled problem file round-trips") {
    std::size_t count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(EQUISING_CORPUS_DIR)) {
      if (entry.path().extension() != ".eq") continue;
      CAPTURE(entry.path().string());
      auto pf = parse_problem(read_file(entry.path()));
      auto again = parse_problem(serialize(pf));
      CHECK(equivalent(pf, again));
      ++count;
    }
    CHECK(count >= 10);
  }

  TEST_CASE("the two-planes scenario") {
    auto r = run("example-1-1");
    REQUIRE(r.exit_code == kExitOk);
    CHECK(r.result["in_intersection"] == true);
    CHECK(r.result["certificate_verified"] == true);
    CHECK(r.result["in_product"] == false);
    CHECK(r.result["nilpotent_exponent"] == 2);
    CHECK(r.result["section_is_product"] == true);
    CHECK(r.result["fiber_t0"] == Json::array({"x*w", "x*z", "y*w", "y*z"}));
    CHECK(r.result["e_product"] == r.result["e_radical"]);
  }

  TEST_CASE("corpus commands") {
    CHECK(run("mult", {"monomial"}).result["e"] == 6);
    CHECK(run("colength", {"a4"}).result["value"] == 4);
    CHECK(run("br-mult", {"free_module"}).result["e"] == 3);
    auto w = run("whitney-w", {"cubic"});
    CHECK(w.result["status"] == "REFUTED");
    CHECK(w.result["witness"]["curve"] == "(-t^2, t, 0)");
    CHECK(run("radical-member", {"product_structure"}).result["exponent"] == 2);
    CHECK(run("intersect", {"axes"}).result["intersection"] == Json::array({"x*y"}));
    auto sec = run("secant", {"secant"});
    CHECK(sec.result["curves"][0]["direction"] == "(1, 1, 0)");
    CHECK(sec.result["curves"][0]["hyperplanes"][0]["lifts"] == true);
  }

  TEST_CASE("reports are deterministic and record the seed") {
    JobSpec job;
    job.command = "whitney-w";
    job.inputs = {"cone_family"};
    job.seed = 17;
    job.probe_count = 40;
    auto a = run_job(job);
    auto b = run_job(job);
    CHECK(a.report == b.report);
    CHECK(a.report.find("\"seed\": 17") != std::string::npos);
    CHECK(a.report.find("\"format\": \"equising-report 1\"") != std::string::npos);
  }

  TEST_CASE("input errors exit with code 2") {
    CHECK(run("nonsense").exit_code == kExitInputError);
    CHECK(run("gb").exit_code == kExitInputError);
    CHECK(run("gb", {"no_such_file"}).exit_code == kExitInputError);
    CHECK(run("whitney-w", {"monomial"}).exit_code == kExitInputError);
    auto path = std::filesystem::temp_directory_path() / "equising_bad.eq";
    std::ofstream(path) << "equising 1\nvars: x\nideal I: x +* 2\n";
    auto bad = run("gb", {path.string()});
    CHECK(bad.exit_code == kExitInputError);
    CHECK(bad.error.find(":3:") != std::string::npos);
    CHECK(bad.report.empty());
    std::filesystem::remove(path);
  }

  TEST_CASE("reports are written atomically") {
    auto path = std::filesystem::temp_directory_path() / "equising_report.txt";
    write_atomically(path.string(), "first\n");
    write_atomically(path.string(), "second\n");
    CHECK(read_file(path) == "second\n");
    CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
    std::filesystem::remove(path);
  }
}
