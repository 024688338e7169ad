#ifndef TBRW_ARTIFACT_HPP
#define TBRW_ARTIFACT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "tbrw/graph.hpp"

namespace tbrw {

/// FNV-1a of the compact dump of `config`.
std::uint64_t config_hash(const nlohmann::json& config);

/// {"schema", "version", "seed", "config_hash", "config"} block embedded in
/// every artifact.
nlohmann::json artifact_meta(const std::string& schema, const nlohmann::json& config, std::uint64_t seed);

/// Throws ParseError unless j["meta"]["schema"] == schema.
void check_schema(const nlohmann::json& j, const std::string& schema);

/// Per-trial CSV: a "# <schema> ..." line, a header, then one row per trial.
inline constexpr const char* kTrialsSchema = "tbrw.trials/1";
struct TrialRow {
  std::size_t trial = 0;
  double value = 0.0;  ///< NaN when the trial hit the step cap
};
void write_trials_csv(std::ostream& out, const std::vector<double>& samples, const nlohmann::json& meta);
std::vector<TrialRow> read_trials_csv(std::istream& in);

/// Whitespace-separated vertex ids, '#' starts a comment.
VertexSet read_vertex_set(std::istream& in, std::size_t n);
VertexSet load_vertex_set(const std::string& path, std::size_t n);
/// "1,2,5" or "1 2 5".
VertexSet parse_vertex_list(const std::string& text, std::size_t n);

/// Graph format with a third column: "n m" then m lines "u v w".
WeightedGraph read_weighted_graph(std::istream& in);
WeightedGraph load_weighted_graph(const std::string& path);
void write_weighted_graph(std::ostream& out, const WeightedGraph& wg);

}  // namespace tbrw

#endif  // TBRW_ARTIFACT_HPP
