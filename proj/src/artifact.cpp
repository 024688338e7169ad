#include "tbrw/artifact.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "tbrw/bench.hpp"
#include "tbrw/error.hpp"
#include "tbrw/hash.hpp"

namespace tbrw {

std::uint64_t config_hash(const nlohmann::json& config) {
  Fnv1a h;
  h.text(config.dump());
  return h.digest();
}

nlohmann::json artifact_meta(const std::string& schema, const nlohmann::json& config, std::uint64_t seed) {
  return {{"schema", schema},
          {"version", kVersion},
          {"seed", seed},
          {"config_hash", hex64(config_hash(config))},
          {"config", config}};
}

void check_schema(const nlohmann::json& j, const std::string& schema) {
  if (!j.is_object() || !j.contains("meta") || !j["meta"].is_object() ||
      j["meta"].value("schema", std::string()) != schema) {
    throw ParseError("unknown or missing schema (expected " + schema + ")", 0);
  }
}

void write_trials_csv(std::ostream& out, const std::vector<double>& samples, const nlohmann::json& meta) {
  out << "# " << kTrialsSchema << " version=" << meta.value("version", std::string(kVersion))
      << " seed=" << meta.value("seed", std::uint64_t{0})
      << " config_hash=" << meta.value("config_hash", std::string()) << '\n';
  out << "trial,value,capped\n";
  out << std::setprecision(17);
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const bool capped = std::isnan(samples[j]);
    out << j << ',';
    if (!capped) out << samples[j];
    out << ',' << (capped ? 1 : 0) << '\n';
  }
}

std::vector<TrialRow> read_trials_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty trials file", 0);
  ++lineno;
  std::istringstream first(line);
  std::string hash_mark;
  std::string schema;
  first >> hash_mark >> schema;
  if (hash_mark != "#" || schema != kTrialsSchema) {
    throw ParseError("unknown trials schema (expected " + std::string(kTrialsSchema) + ")", lineno);
  }
  if (!std::getline(in, line) || line != "trial,value,capped") {
    throw ParseError("expected header \"trial,value,capped\"", lineno + 1);
  }
  ++lineno;
  std::vector<TrialRow> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string trial;
    std::string value;
    std::string capped;
    if (!std::getline(ls, trial, ',') || !std::getline(ls, value, ',') || !std::getline(ls, capped)) {
      throw ParseError("expected three comma-separated fields", lineno);
    }
    try {
      TrialRow row;
      row.trial = std::stoull(trial);
      row.value = capped == "1" ? std::nan("") : std::stod(value);
      rows.push_back(row);
    } catch (const std::exception&) {
      throw ParseError("malformed number", lineno);
    }
  }
  return rows;
}

VertexSet read_vertex_set(std::istream& in, std::size_t n) {
  VertexSet out(n);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string token;
    while (ls >> token) {
      std::size_t used = 0;
      long long v = -1;
      try {
        v = std::stoll(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) throw ParseError("expected a vertex id, got \"" + token + "\"", lineno);
      if (v < 0 || static_cast<std::size_t>(v) >= n) throw ParseError("vertex " + token + " out of range", lineno);
      out.insert(static_cast<Vertex>(v));
    }
  }
  return out;
}

VertexSet load_vertex_set(const std::string& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open vertex set file " + path, 0);
  return read_vertex_set(in, n);
}

VertexSet parse_vertex_list(const std::string& text, std::size_t n) {
  std::string spaced = text;
  for (char& c : spaced) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(spaced);
  return read_vertex_set(in, n);
}

WeightedGraph read_weighted_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("empty weighted graph file", 0);
  long long n = -1;
  long long m = -1;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> n >> m) || n < 0 || m < 0 || (hs >> extra)) throw ParseError("expected header \"n m\"", lineno);
  }
  std::map<Edge, double> weights;
  for (long long i = 0; i < m; ++i) {
    if (!next_line()) throw ParseError("expected " + std::to_string(m) + " edges, file ended", lineno);
    std::istringstream es(line);
    long long a = -1;
    long long b = -1;
    double w = 0.0;
    std::string extra;
    if (!(es >> a >> b >> w) || (es >> extra)) throw ParseError("expected edge \"u v w\"", lineno);
    if (a < 0 || b < 0 || a >= n || b >= n) throw ParseError("edge endpoint out of range", lineno);
    if (a == b) throw ParseError("self-loop", lineno);
    if (!(w > 0.0) || !std::isfinite(w)) throw ParseError("weight must be positive and finite", lineno);
    if (!weights.emplace(Edge(static_cast<Vertex>(a), static_cast<Vertex>(b)), w).second) {
      throw ParseError("duplicate edge", lineno);
    }
  }
  if (next_line()) throw ParseError("trailing content after last edge", lineno);
  std::vector<Edge> edges;
  for (const auto& [e, w] : weights) edges.push_back(e);
  Graph g(static_cast<std::size_t>(n), edges);
  std::vector<double> slots;
  for (Vertex v = 0; v < g.size(); ++v) {
    for (Vertex w : g.neighbors(v)) slots.push_back(weights.at(Edge(v, w)));
  }
  return WeightedGraph(std::move(g), std::move(slots));
}

WeightedGraph load_weighted_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open weighted graph file " + path, 0);
  return read_weighted_graph(in);
}

void write_weighted_graph(std::ostream& out, const WeightedGraph& wg) {
  const Graph& g = wg.base();
  out << g.size() << ' ' << g.edge_count() << '\n' << std::setprecision(17);
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << wg.weight(e.u, e.v) << '\n';
}

}  // namespace tbrw
