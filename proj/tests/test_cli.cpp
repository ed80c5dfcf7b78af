// Integration checks for the command-line front end: exit codes, file
// outputs and byte-identical reruns. Invoked by ctest with the binary
// path as argv[1].

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "[cli-test] FAILED: " << what << "\n";
  }
}

int run(const std::string& cmd) {
  int rc = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: entlab_cli_tests <path-to-entlab>\n";
    return 2;
  }
  const std::string exe = argv[1];
  fs::path dir = fs::temp_directory_path() / "entlab_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string out = " --out " + dir.string();

  const std::string u1 =
      " --space '{\"group\":{\"family\":\"U\",\"n\":1},"
      "\"subgroup\":{\"variant\":\"Trivial\"}}'";
  const std::string g31 =
      " --space '{\"group\":{\"family\":\"SO\",\"n\":3},"
      "\"subgroup\":{\"variant\":\"Grassmann\",\"k\":1}}'";
  const std::string g21 =
      " --space '{\"group\":{\"family\":\"SO\",\"n\":2},"
      "\"subgroup\":{\"variant\":\"Grassmann\",\"k\":1}}'";

  // validation paths
  check(run(exe + " pack" + u1 + " --eps 0.5" + out) == 4,
        "pack without seed exits 4");
  check(run(exe + " profile" + u1 + " --eps 0.3,0.5 --seed 3" + out) == 4,
        "profile with two epsilons exits 4");
  check(run(exe + " dist --pairs /missing.json" + u1 + " --seed 3" + out) == 2,
        "missing pairs file exits 2");
  check(run(exe + " net" + u1 + " --eps 9 --seed 3" + out) == 4,
        "net beyond the diameter exits 4");

  // greedy pack on the circle: exact packing number 3 at eps = pi/2
  check(run(exe + " pack" + u1 + " --eps 1.5707963267948966 --seed 3" + out) == 0,
        "pack runs");
  {
    Json j = Json::parse(slurp(dir / "pack.json"));
    check(j.at("reports").at(0).at("cardinality").get<int>() == 3,
          "circle pack cardinality is 3");
  }

  // invariants on the projective plane: the catalog row
  check(run(exe + " invariants" + g31 + " --seed 5" + out) == 0,
        "invariants run");
  {
    Json j = Json::parse(slurp(dir / "invariants.json"));
    const Json& inv = j.at("invariants");
    check(inv.at("dim").get<int>() == 2, "dim 2");
    check(inv.at("kappa").at("lower").get<double>() == 1.0, "kappa 1");
    check(std::abs(inv.at("theta").at("value").get<double>() -
                   3.141592653589793) < 1e-12,
          "theta pi");
    check(std::abs(inv.at("diameter").at("value").get<double>() -
                   1.5707963267948966) < 1e-12,
          "diam pi/2");
  }

  // distance batch on a fixture pair of 45-degree lines
  {
    const double c = 0.70710678118654752;
    Json mat_i;
    mat_i["n"] = 2;
    mat_i["field"] = "real";
    mat_i["re"] = {{1.0, 0.0}, {0.0, 1.0}};
    mat_i["im"] = {{0.0, 0.0}, {0.0, 0.0}};
    Json mat_r;
    mat_r["n"] = 2;
    mat_r["field"] = "real";
    mat_r["re"] = {{c, -c}, {c, c}};
    mat_r["im"] = {{0.0, 0.0}, {0.0, 0.0}};
    Json doc;
    doc["pairs"] = Json::array({Json::array({mat_i, mat_i}),
                                Json::array({mat_i, mat_r})});
    std::ofstream f(dir / "pairs.json");
    f << doc.dump();
    f.close();
    check(run(exe + " dist --pairs " + (dir / "pairs.json").string() + g21 +
              " --seed 5" + out) == 0,
          "dist runs");
    Json j = Json::parse(slurp(dir / "dist.json"));
    check(j.at("rows").at(0).at("quotient").get<double>() == 0.0,
          "identical pair has zero distance");
    double q = j.at("rows").at(1).at("quotient").get<double>();
    check(std::abs(q - 0.7853981633974483) < 1e-12,
          "45-degree line pair sits at pi/4");
  }

  // byte-identical reruns with the same config and seed
  {
    std::string profile_cmd = exe + " profile" + u1 +
                              " --eps 0.2,0.3,0.45,0.675 --seed 11 "
                              "--budget-greedy 2000";
    check(run(profile_cmd + out) == 0, "profile runs");
    std::string first = slurp(dir / "profile.json");
    fs::path dir2 = dir / "second";
    fs::create_directories(dir2);
    check(run(profile_cmd + " --out " + dir2.string()) == 0, "profile reruns");
    check(!first.empty() && first == slurp(dir2 / "profile.json"),
          "profile JSON reruns byte-identical");

    std::string verify_cmd =
        exe + " verify --suite log_ball --trials 40 --seed 11" + out;
    check(run(verify_cmd) == 0, "verify suite passes");
    std::string v1 = slurp(dir / "verify_log_ball.json");
    check(run(verify_cmd) == 0, "verify rerun");
    check(!v1.empty() && v1 == slurp(dir / "verify_log_ball.json"),
          "verify JSON reruns byte-identical");
  }

  // all verify suites pass end to end at reduced scale
  check(run(exe + " verify --trials 25 --seed 42" + out) == 0,
        "cmd_verify with all suites exits 0");

  // unsupported invariant on a Custom subgroup surfaces as exit 3
  {
    Json j;
    j["n"] = 3;
    j["field"] = "real";
    j["re"] = {{0.0, -1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
    j["im"] = {{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
    Json space;
    space["group"] = {{"family", "SO"}, {"n", 3}};
    space["subgroup"] = {{"variant", "Custom"}, {"basis", Json::array({j})}};
    std::ofstream f(dir / "custom_space.json");
    f << space.dump();
    f.close();
    check(run(exe + " invariants --space " +
              (dir / "custom_space.json").string() + " --seed 5" + out) == 3,
          "Custom-subgroup invariants exit 3 (unsupported invariant)");
  }

  // unsorted epsilon list is rejected up front
  check(run(exe + " pack" + u1 + " --eps 0.5,0.3 --seed 3" + out) == 4,
        "unsorted epsilon list exits 4");

  // net elements dump re-parses through the fixture schema
  check(run(exe + " net" + u1 +
            " --eps 1.5707963267948966 --seed 7 --dump-elements" + out) == 0,
        "net with element dump runs");
  {
    Json j = Json::parse(slurp(dir / "net.json"));
    const Json& rep = j.at("reports").at(0);
    check(rep.at("elements").size() ==
              static_cast<std::size_t>(rep.at("cardinality").get<int>()),
          "dumped element list matches cardinality");
    check(rep.at("elements").at(0).contains("re"), "elements use the matrix schema");
  }

  // config file merged under flags
  {
    std::ofstream f(dir / "run.cfg");
    f << "seed=21\n";
    f << "eps=0.5\n";
    f.close();
    check(run(exe + " pack" + u1 + " --config " + (dir / "run.cfg").string() +
              out) == 0,
          "config file supplies seed and eps");
    Json j = Json::parse(slurp(dir / "pack.json"));
    check(j.at("config").at("seed").get<std::uint64_t>() == 21,
          "config seed lands in the report");
  }

  if (failures == 0) {
    std::cout << "[cli-test] all checks passed\n";
    return 0;
  }
  std::cerr << "[cli-test] " << failures << " check(s) failed\n";
  return 1;
}
