#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <sstream>

#include "cournot/cli.hpp"
#include "json.hpp"

using namespace cournot;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "cournot-test-cli";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST_CASE("analyze prints a JSON report") {
  auto r = run({"analyze", "--model", "LL", "--costs", "quadratic"});
  REQUIRE(r.code == kExitOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "unique-stable-everywhere");
  CHECK(j["model"] == "LL");
}

TEST_CASE("analyze writes to a file") {
  auto path = tmp("ll.json");
  auto r = run({"analyze", "--model", "LL", "--costs", "linear", "--out", path});
  CHECK(r.code == kExitOk);
  CHECK(std::filesystem::file_size(path) > 0);
}

TEST_CASE("unknown model") {
  CHECK(run({"analyze", "--model", "XX", "--costs", "quadratic"}).code == kExitUnknownModel);
  CHECK(run({"regions", "--model", "ZZ", "--costs", "quadratic"}).code == kExitUnknownModel);
}

TEST_CASE("bad arguments") {
  CHECK(run({}).code == kExitError);
  CHECK(run({"analyze", "--model", "LL", "--costs", "cubic"}).code == kExitError);
  CHECK(run({"nonsense"}).code == kExitError);
}

TEST_CASE("regions") {
  auto r = run({"regions", "--model", "LL", "--costs", "quadratic"});
  CHECK(r.code == kExitOk);
  CHECK_FALSE(r.out.empty());
}

TEST_CASE("simulate exit codes") {
  auto ok = run({"simulate", "--model", "LL", "--costs", "quadratic", "--params", "c1=1,c2=1", "--q0", "0.1,0.9"});
  CHECK(ok.code == kExitOk);
  auto csv = tmp("orbit.csv");
  auto div = run({"simulate", "--model", "BB", "--costs", "linear", "--params", "c1=1,c2=10", "--q0", "0.2,0.2",
                  "--csv", csv});
  CHECK(div.code == kExitNotConverged);
  CHECK(std::filesystem::exists(csv));
  auto neg = run({"simulate", "--model", "LL", "--costs", "quadratic", "--params", "1,1", "--q0", "-1,1"});
  CHECK(neg.code == kExitError);
  auto speed = run({"simulate", "--model", "AR", "--costs", "quadratic", "--params", "c1=1,c2=1,K=1.5", "--q0",
                    "0.3,0.3"});
  CHECK(speed.code == kExitError);
}

TEST_CASE("plane") {
  auto svg = tmp("plane.svg");
  auto r = run({"plane", "--sp", "c1*c2*(c1-c2)*(c1+c2)", "--grid", "30", "--out", svg});
  CHECK(r.code == kExitOk);
  CHECK(std::filesystem::exists(svg));
}

TEST_CASE("verify-paper subsets") {
  auto five = run({"verify-paper", "--only", "5"});
  CHECK(five.code == kExitOk);
  CHECK(five.out.find("PASS 5") != std::string::npos);
  auto ll = run({"verify-paper", "--only", "LL", "--out-dir", tmp("figs")});
  CHECK(ll.code == kExitOk);
  CHECK(ll.out.find("FAIL") == std::string::npos);
}
