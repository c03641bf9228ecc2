#pragma once
// JSON file formats: interaction graphs, pairwise attack-score streams,
// ranking exports, rank-metric reports and the testbed report. All files are
// UTF-8 JSON with a "format_version" field on outputs.

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "grasp/graph.hpp"
#include "grasp/grasp_operator.hpp"
#include "grasp/rank_metrics.hpp"
#include "grasp/testbed.hpp"

namespace grasp {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

// A graph plus the opaque per-argument metadata carried through rewrites.
struct GraphDocument {
    WeightedInteractionGraph graph;
    std::map<ArgumentId, Json> argument_meta;
};

Json graph_to_json(const GraphDocument& doc);

// Accepts {"arguments": [...], "attacks": [...], "defenses": [...]}. Unlisted
// pairs are weight 0; duplicate (from, to) pairs are an error; an absent
// "defenses" block derives D under "defense_mode" (default w_squared).
GraphDocument graph_from_json(const Json& j);

GraphDocument load_graph_file(const std::string& path);
Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

struct PairwiseIngestResult {
    WeightedInteractionGraph graph;
    std::size_t records = 0;
    std::size_t dropped_self_pairs = 0;
};

// JSONL stream of {"attacker", "target", "attack_score"} records. Errors
// carry the 1-based line number; self-pairs are dropped and counted.
PairwiseIngestResult ingest_pairwise_scores(std::istream& stream,
                                            const std::vector<ArgumentId>& arguments);

PairwiseIngestResult ingest_pairwise_file(const std::string& path,
                                          const std::vector<ArgumentId>& arguments);

struct RankingDocument {
    std::string method;
    std::vector<ArgumentId> arguments;  // graph order
    Vector scores;
    std::vector<ArgumentId> ranking;    // strongest first
    std::optional<IterationTrace> trace;
    bool include_trajectory = false;
};

Json ranking_to_json(const RankingDocument& doc);

// Reads {"ranking": [...]} with an optional "source"; the fallback source is
// the supplied label (normally the file name).
Ranking load_ranking_file(const std::string& path, const std::string& fallback_source);

struct DebateSpec {
    std::string id;
    std::vector<std::string> graph_paths;  // resolved against the manifest dir
};

// {"debates": [{"id": ..., "graphs": [...]}]}, sorted by debate id.
std::vector<DebateSpec> load_debate_manifest(const std::string& path);

Json agreement_report_to_json(const AgreementReport& report);
Json consensus_report_to_json(const ConsensusReport& report);

Json stats_to_json(const GraphStats& stats);

Json testbed_report_to_json(const TestbedReport& report);
std::string testbed_report_to_text(const TestbedReport& report);

// Testbed configuration: {"suite": {...}, "methods": [...]}; either block may
// be omitted to get the defaults.
SuiteConfig suite_config_from_json(const Json& j);
std::vector<MethodSpec> methods_from_json(const Json& j);
std::vector<MethodSpec> default_testbed_methods();

} // namespace grasp
