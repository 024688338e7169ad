#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tbrw/artifact.hpp"
#include "tbrw/bench.hpp"
#include "tbrw/error.hpp"
#include "tbrw/generators.hpp"

using namespace tbrw;

namespace {

template <class F>
std::size_t parse_line(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("artifact meta carries schema, version, seed and config hash") {
  nlohmann::json config = {{"eps", 0.5}, {"trials", 10}};
  nlohmann::json meta = artifact_meta("tbrw.x/1", config, 9);
  CHECK(meta["schema"] == "tbrw.x/1");
  CHECK(meta["version"] == kVersion);
  CHECK(meta["seed"] == 9);
  CHECK(meta["config_hash"] == hex64(config_hash(config)));
  CHECK(config_hash(config) != config_hash({{"eps", 0.5}, {"trials", 11}}));
  CHECK(hex64(0xabc) == "0000000000000abc");

  nlohmann::json doc = {{"meta", meta}};
  CHECK_NOTHROW(check_schema(doc, "tbrw.x/1"));
  CHECK_THROWS_AS(check_schema(doc, "tbrw.x/2"), ParseError);
  CHECK_THROWS_AS(check_schema(nlohmann::json::object(), "tbrw.x/1"), ParseError);
}

TEST_CASE("trials CSV round trip") {
  std::vector<double> samples{3.0, std::nan(""), 17.5};
  std::stringstream ss;
  write_trials_csv(ss, samples, artifact_meta("tbrw.simulate/1", {}, 4));
  auto rows = read_trials_csv(ss);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].value == 3.0);
  CHECK(std::isnan(rows[1].value));
  CHECK(rows[2].trial == 2);
  CHECK(rows[2].value == 17.5);

  std::istringstream old("# tbrw.trials/0 version=0\ntrial,value,capped\n0,1,0\n");
  CHECK(parse_line([&] { read_trials_csv(old); }) == 1);
  std::istringstream broken("# tbrw.trials/1\ntrial,value,capped\n0,1,0\n1,zz,0\n");
  CHECK(parse_line([&] { read_trials_csv(broken); }) == 4);
}

TEST_CASE("vertex set files") {
  std::istringstream in("# target\n1 2\n\n5 # trailing\n");
  CHECK(read_vertex_set(in, 8).sorted() == std::vector<Vertex>{1, 2, 5});
  CHECK(parse_vertex_list("0,3,3", 4).sorted() == std::vector<Vertex>{0, 3});
  std::istringstream range("1\n2\n9\n");
  CHECK(parse_line([&] { read_vertex_set(range, 5); }) == 3);
  std::istringstream junk("1 2x\n");
  CHECK(parse_line([&] { read_vertex_set(junk, 5); }) == 1);
}

TEST_CASE("weighted graph files") {
  Graph g = make_cycle(5);
  std::vector<double> slots;
  for (Vertex v = 0; v < 5; ++v)
    for (Vertex x : g.neighbors(v)) slots.push_back(1.0 + std::min(v, x) + 0.25);
  WeightedGraph wg(g, slots);
  std::stringstream ss;
  write_weighted_graph(ss, wg);
  WeightedGraph back = read_weighted_graph(ss);
  CHECK(back.base() == g);
  CHECK(back.hash() == wg.hash());

  std::istringstream negative("2 1\n0 1 -3\n");
  CHECK(parse_line([&] { read_weighted_graph(negative); }) == 2);
  std::istringstream missing("3 2\n0 1 1\n");
  CHECK(parse_line([&] { read_weighted_graph(missing); }) == 2);
  std::istringstream dup("3 2\n0 1 1\n1 0 2\n");
  CHECK(parse_line([&] { read_weighted_graph(dup); }) == 3);
}

TEST_CASE("bench report JSON round trip") {
  BoundReport r;
  r.suite = "paper-bounds";
  r.seed = 7;
  r.config_hash = 0x1234;
  r.rows.push_back({1, "a", "tag a", 0.5, 1.0, 0.0, true, "d"});
  r.rows.push_back({2, "b", "tag b", std::numeric_limits<double>::infinity(), 1.0, 0.0, false, ""});
  nlohmann::json j = report_to_json(r);
  BoundReport back = report_from_json(j);
  CHECK(back.suite == r.suite);
  CHECK(back.seed == 7);
  CHECK(back.config_hash == 0x1234);
  REQUIRE(back.rows.size() == 2);
  CHECK(back.rows[0].name == "a");
  CHECK(back.rows[0].pass);
  CHECK(std::isinf(back.rows[1].lhs));
  CHECK_FALSE(back.all_pass());
  CHECK(back.failures().size() == 1);
  CHECK(report_to_json(back).dump() == j.dump());

  nlohmann::json wrong = j;
  wrong["schema"] = "tbrw.bench/2";
  CHECK_THROWS_AS(report_from_json(wrong), ParseError);
}

TEST_CASE("bench subset is deterministic and the negative control fails") {
  BenchOptions opts;
  opts.only = {1, 5};
  BoundReport a = paper_bounds_suite(opts);
  BoundReport b = paper_bounds_suite(opts);
  CHECK(report_to_json(a).dump() == report_to_json(b).dump());
  CHECK(a.all_pass());
  for (const BoundRow& r : a.rows) CHECK((r.criterion == 1 || r.criterion == 5));

  BenchOptions other = opts;
  other.seed = 8;
  CHECK(bench_config_hash("paper-bounds", other) != bench_config_hash("paper-bounds", opts));

  BenchOptions tampered = opts;
  tampered.tolerance_overrides["emulation/total-variation"] = -1.0;
  BoundReport t = paper_bounds_suite(tampered);
  auto fails = t.failures();
  REQUIRE(fails.size() == 1);
  CHECK(fails[0]->name == "emulation/total-variation");
  CHECK(t.config_hash != a.config_hash);
}
