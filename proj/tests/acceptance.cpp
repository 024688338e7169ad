// Runs the paper-bounds suite through the CLI twice and prints one line per
// acceptance criterion.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_bench(const fs::path& out) {
  const std::string cmd = std::string(TBRW_CLI) + " bench --suite paper-bounds --seed 7 --quiet -o " + out.string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kTitles[] = {"",
                         "emulation equivalence",
                         "hitting bound",
                         "localized hitting bound",
                         "layered closed form",
                         "layer-by-layer bound",
                         "cover construction",
                         "Cayley lower-bound inequalities",
                         "global strategy",
                         "polynomial-growth strategy",
                         "oracle cross-check",
                         "reproducibility"};

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / ("tbrw_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path first = dir / "report1.json";
  const fs::path second = dir / "report2.json";

  const int code1 = run_bench(first);
  const int code2 = run_bench(second);

  std::map<int, std::pair<int, int>> tally;  // criterion -> (rows, failures)
  std::map<int, std::string> first_failure;
  bool parsed = false;
  try {
    nlohmann::json report = nlohmann::json::parse(slurp(first));
    for (const auto& row : report.at("rows")) {
      const int c = row.at("criterion").get<int>();
      auto& t = tally[c];
      ++t.first;
      if (!row.at("pass").get<bool>()) {
        ++t.second;
        if (!first_failure.count(c)) first_failure[c] = row.at("name").get<std::string>();
      }
    }
    parsed = true;
  } catch (const std::exception& e) {
    std::cout << "could not read report: " << e.what() << "\n";
  }

  bool all = parsed;
  for (int c = 1; c <= 10; ++c) {
    const auto t = tally[c];
    const bool pass = parsed && t.first > 0 && t.second == 0;
    all = all && pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c << " (" << kTitles[c] << "): " << t.first - t.second
              << "/" << t.first << " rows";
    if (!pass && first_failure.count(c)) std::cout << ", first failing row " << first_failure[c];
    std::cout << "\n";
  }
  const std::string a = slurp(first);
  const std::string b = slurp(second);
  const bool same = !a.empty() && a == b && code1 == code2;
  all = all && same;
  std::cout << (same ? "PASS" : "FAIL") << "  criterion 11 (" << kTitles[11] << "): two runs with seed 7 "
            << (same ? "are byte-identical" : "differ") << " (" << a.size() << " bytes)\n";
  std::cout << "bench exit codes: " << code1 << ", " << code2 << "\n";
  fs::remove_all(dir);
  return all ? 0 : 1;
}
