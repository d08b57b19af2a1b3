#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path root = fs::temp_directory_path() / "lpath_cli_test";

int cli(const std::string& args) {
  const std::string cmd = std::string(LPATH_CLI) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string dir(const std::string& name) { return (root / name).string(); }

}  // namespace

TEST_CASE("crystal export") {
  fs::remove_all(root);
  CHECK(cli("crystal -o " + dir("c")) == 0);
  CHECK(fs::exists(root / "c" / "crystal.dot"));
  const auto report = json::parse(slurp(root / "c" / "report.json"));
  CHECK(report["nodes"] == 4);
  const auto manifest = json::parse(slurp(root / "c" / "manifest.json"));
  CHECK(manifest["command"] == "crystal");
  CHECK(manifest["config"]["kappa"] == json::array({1, 0}));
  CHECK(manifest.contains("timestamp"));

  CHECK(cli("crystal --kappa 0,0 -o " + dir("z")) == 0);
  CHECK(json::parse(slurp(root / "z" / "report.json"))["nodes"] == 1);
  CHECK(cli("crystal --kappa 1,1 -o " + dir("g")) == 0);
  CHECK(json::parse(slurp(root / "g" / "report.json"))["nodes"] == 16);
}

TEST_CASE("exit codes") {
  CHECK(cli("psi --tau 1/2,1/2 -o " + dir("p")) == 0);
  CHECK(cli("psi --tau 1,1/2 -o " + dir("p2")) == 2);
  CHECK(cli("psi -o " + dir("p3")) == 2);
  CHECK(cli("frobnicate") == 2);
  CHECK(cli("verify --tau 2,1/2 -o " + dir("v")) == 2);
  CHECK(cli("ratio --tau 1/2,1/2 --mu 2,0 --ells 14,6 -o " + dir("r")) == 3);
  CHECK(cli("crystal --kappa 4,4 --config " + (root / "missing.json").string()) == 2);
  {
    std::ofstream f(root / "budget.json");
    f << R"({"kappa":[3,3],"budget":10})";
  }
  CHECK(cli("crystal --config " + (root / "budget.json").string() + " -o " + dir("b")) == 4);
}

TEST_CASE("same seed gives identical outputs and manifests replay") {
  const std::string args = "simulate --tau 1/2,1/2 --horizons 3,6 -N 2000 --seed 5 --threads 2 -q -o ";
  CHECK(cli(args + dir("s1")) == 0);
  CHECK(cli(args + dir("s2")) == 0);
  CHECK(slurp(root / "s1" / "report.json") == slurp(root / "s2" / "report.json"));
  CHECK(slurp(root / "s1" / "estimates.csv") == slurp(root / "s2" / "estimates.csv"));

  CHECK(cli("simulate -q --config " + (root / "s1" / "manifest.json").string() + " -o " + dir("s3")) == 0);
  CHECK(slurp(root / "s1" / "report.json") == slurp(root / "s3" / "report.json"));

  // flags override the file
  CHECK(cli("simulate -q --config " + (root / "s1" / "manifest.json").string() + " --seed 6 -o " + dir("s4")) == 0);
  const auto m = json::parse(slurp(root / "s4" / "manifest.json"));
  CHECK(m["config"]["seed"] == 6);
  fs::remove_all(root);
}
