#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string err;
};

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / ("tbrw_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

Result run(const std::string& args) {
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = std::string(TBRW_CLI) + " " + args + " 2> " + err.string() + " > /dev/null";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(err);
  std::stringstream ss;
  ss << in.rdbuf();
  r.err = ss.str();
  return r;
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("generate writes a graph file and a sidecar") {
  const fs::path g = scratch() / "layered.txt";
  CHECK(run("generate layered --n 14 -o " + g.string()).code == 0);
  std::ifstream in(g);
  std::size_t n = 0, m = 0;
  in >> n >> m;
  CHECK(n == 14);
  CHECK(m == 40);
  nlohmann::json side = read_json(g.string() + ".json");
  CHECK(side["k"] == 4);
  CHECK(side["layer"].size() == 14);
  CHECK(side["meta"]["seed"] == 7);
  CHECK(side["meta"].contains("config_hash"));
  CHECK(side["meta"].contains("version"));
}

TEST_CASE("malformed graph file exits 2 with the line number") {
  const fs::path bad = scratch() / "bad.txt";
  std::ofstream(bad) << "4 3\n0 1\n1 2\n2 q\n";
  Result r = run("simulate --graph " + bad.string() + " --strategy uniform");
  CHECK(r.code == 2);
  CHECK(r.err.find("line 4") != std::string::npos);
  CHECK(run("simulate --graph " + bad.string() + " --bogus").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("simulate, analyze, cover and explore produce versioned artifacts") {
  const fs::path dir = scratch();
  const std::string graph = (dir / "cycle.txt").string();
  REQUIRE(run("generate cycle --n 16 -o " + graph).code == 0);

  const fs::path sim = dir / "sim.json";
  const fs::path csv = dir / "sim.csv";
  CHECK(run("simulate --graph " + graph + " --eps 0.5 --strategy phi_U --target 8 --mode hit --trials 50 -o " +
            sim.string() + " --csv " + csv.string())
            .code == 0);
  nlohmann::json s = read_json(sim);
  CHECK(s["meta"]["schema"] == "tbrw.simulate/1");
  CHECK(s["statistics"]["trials"] == 50);
  std::ifstream c(csv);
  std::string first;
  std::getline(c, first);
  CHECK(first.rfind("# tbrw.trials/1", 0) == 0);
  CHECK(run("simulate --graph " + graph + " --strategy phi_U").code == 2);

  const fs::path an = dir / "an.json";
  CHECK(run("analyze --graph " + graph + " --u 0 --eps 0.5 --hit 8 --pair 0,8 -o " + an.string()).code == 0);
  nlohmann::json a = read_json(an);
  CHECK(a["stationary"].size() == 16);
  CHECK(a["hitting"]["times"][8] == 0.0);
  CHECK(a["pairs"][0]["resistance"].get<double>() > 0.0);

  const fs::path cov = dir / "cover.json";
  CHECK(run("cover --graph " + graph + " --eps 0.9 -o " + cov.string()).code == 0);
  const fs::path ex = dir / "ex.json";
  CHECK(run("explore --graph " + graph + " --eps 0.9 --cover " + cov.string() + " --trials 20 -o " + ex.string())
            .code == 0);
  nlohmann::json e = read_json(ex);
  CHECK(e["meta"]["schema"] == "tbrw.explore/1");
  CHECK(e["bounds"][0]["holds"] == true);
}

TEST_CASE("bench exits 3 on a tampered row and lists it") {
  const fs::path out = scratch() / "bench.json";
  Result ok = run("bench --only 1 -o " + out.string());
  CHECK(ok.code == 0);
  Result bad = run("bench --only 1 --tamper emulation/total-variation=-1 -o " + out.string());
  CHECK(bad.code == 3);
  CHECK(bad.err.find("emulation/total-variation") != std::string::npos);
  CHECK(run("bench --suite other").code == 2);
}
