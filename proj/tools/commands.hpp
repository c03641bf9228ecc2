#pragma once
// CLI subcommand implementations. Each command reads files, calls into the
// library and writes a JSON report; main() maps thrown errors to exit codes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grasp/serialize.hpp"

namespace grasp::cli {

struct OperatorFlags {
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> gamma;
    std::optional<double> tol;
    std::optional<int> max_iters;
    std::string preset = "default";  // "default" or "sweep-optimum"

    GraspConfig to_config() const;
};

struct RankOptions {
    std::string graph_path;
    std::string variant = "grasp";    // grasp | grasp_w_inf | grasp_w_1 |
                                      // grasp_w_inf_dbar | grasp_w_1_dbar
    std::string baseline;             // set instead of variant for baselines
    std::optional<std::string> defense_mode;
    OperatorFlags op;
    bool include_trajectory = false;
    std::string out;  // empty = stdout
};

struct BaselinesOptions {
    std::string graph_path;
    std::optional<double> katz_lambda;
    std::string out;
};

struct StatsOptions {
    std::string graph_path;
    double threshold = 0.6;
    std::string compare_path;  // optional second graph for matrix Pearson
    std::string out;
};

struct TestbedOptions {
    std::string config_path;  // optional; defaults when empty
    std::uint64_t seed = 42;
    std::string out;
    bool print_table = true;
};

struct AgreeOptions {
    std::vector<std::string> ranking_paths;  // mode 1: ranking files, one debate
    std::string manifest_path;               // mode 2: graphs per debate
    std::string variant = "grasp";
    std::string baseline;
    std::optional<std::string> defense_mode;
    OperatorFlags op;
    std::string out;
};

struct ConsensusOptions {
    std::vector<std::string> ranking_paths;
    std::string manifest_path;
    std::string variant = "grasp";
    std::string baseline;
    std::optional<std::string> defense_mode;
    OperatorFlags op;
    std::string out;
};

struct SweepOptions {
    std::string manifest_path;
    std::vector<double> alphas = {0.1, 0.25, 0.5, 1.0};
    std::vector<double> betas = {0.1, 0.25, 0.5, 0.75};
    std::vector<double> gammas = {0.6, 0.8, 0.9, 1.0};
    std::string variant = "grasp";
    std::optional<double> tol;
    std::optional<int> max_iters;
    std::string out;
};

struct IngestOptions {
    std::string arguments_path;  // any graph file; only the ids are used
    std::string scores_path;     // JSONL pairwise attack scores
    std::optional<std::string> defense_mode;
    std::string out;
};

int cmd_rank(const RankOptions& options);
int cmd_baselines(const BaselinesOptions& options);
int cmd_stats(const StatsOptions& options);
int cmd_testbed(const TestbedOptions& options);
int cmd_agree(const AgreeOptions& options);
int cmd_consensus(const ConsensusOptions& options);
int cmd_sweep(const SweepOptions& options);
int cmd_ingest(const IngestOptions& options);

// Distinct nonzero exit code per error class.
int exit_code_for(ErrorCode code);

} // namespace grasp::cli
