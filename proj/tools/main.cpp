// grasp: rank arguments in weighted attack-defense graphs, evaluate the
// rankings against structural baselines and agreement metrics, and run the
// synthetic structural testbed.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "commands.hpp"

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("GRASP_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 42;
}

void add_operator_flags(CLI::App* cmd, grasp::cli::OperatorFlags& flags) {
    cmd->add_option("--alpha", flags.alpha, "Attack gain");
    cmd->add_option("--beta", flags.beta, "Defense gain");
    cmd->add_option("--gamma", flags.gamma, "Damping factor in (0,1]");
    cmd->add_option("--tol", flags.tol, "Sup-norm convergence tolerance");
    cmd->add_option("--max-iters", flags.max_iters, "Iteration budget");
    cmd->add_option("--preset", flags.preset,
                    "Gain preset: default (1.0,0.6,0.9) or sweep-optimum (1.0,0.25,0.6)")
        ->check(CLI::IsMember({"default", "sweep-optimum"}));
}

constexpr const char* kVariants[] = {"grasp", "grasp_w_inf", "grasp_w_1",
                                     "grasp_w_inf_dbar", "grasp_w_1_dbar"};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"GRASP argument ranking toolkit"};
    app.require_subcommand(1);

    grasp::cli::RankOptions rank_options;
    grasp::cli::RankOptions trajectory_options;
    grasp::cli::BaselinesOptions baselines_options;
    grasp::cli::StatsOptions stats_options;
    grasp::cli::TestbedOptions testbed_options;
    grasp::cli::AgreeOptions agree_options;
    grasp::cli::ConsensusOptions consensus_options;
    grasp::cli::SweepOptions sweep_options;
    grasp::cli::IngestOptions ingest_options;

    auto add_rank_like = [&](CLI::App* cmd, grasp::cli::RankOptions& options) {
        cmd->add_option("graph", options.graph_path, "Graph JSON file")->required();
        cmd->add_option("--variant", options.variant, "GRASP preprocessing variant")
            ->check(CLI::IsMember(std::vector<std::string>(std::begin(kVariants),
                                                           std::end(kVariants))));
        cmd->add_option("--baseline", options.baseline,
                        "Score with a closed-form baseline instead of GRASP");
        cmd->add_option("--defense-mode", options.defense_mode,
                        "Defense derivation: w_squared, w_transpose, w_fourth, "
                        "w2_plus_half_w4");
        add_operator_flags(cmd, options.op);
        cmd->add_option("--out", options.out, "Output path (stdout when omitted)");
    };

    CLI::App* rank = app.add_subcommand("rank", "Rank the arguments of one graph");
    add_rank_like(rank, rank_options);
    rank->add_flag("--trajectory", rank_options.include_trajectory,
                   "Include per-iteration scores in the output");

    CLI::App* trajectory = app.add_subcommand(
        "trajectory", "Rank and always include per-iteration scores");
    add_rank_like(trajectory, trajectory_options);

    CLI::App* baselines =
        app.add_subcommand("baselines", "Run all closed-form baselines on a graph");
    baselines->add_option("graph", baselines_options.graph_path, "Graph JSON file")
        ->required();
    baselines->add_option("--katz-lambda", baselines_options.katz_lambda,
                          "Katz discount (default 0.9 / ||W||_1)");
    baselines->add_option("--out", baselines_options.out, "Output path");

    CLI::App* stats = app.add_subcommand("stats", "Graph geometry statistics");
    stats->add_option("graph", stats_options.graph_path, "Graph JSON file")->required();
    stats->add_option("--threshold", stats_options.threshold,
                      "Visualization threshold tau in [0,1]");
    stats->add_option("--compare", stats_options.compare_path,
                      "Second graph for off-diagonal Pearson correlation");
    stats->add_option("--out", stats_options.out, "Output path");

    CLI::App* testbed =
        app.add_subcommand("testbed", "Structural-sufficiency testbed evaluation");
    testbed->add_option("--config", testbed_options.config_path,
                        "Suite/methods JSON (defaults when omitted)");
    testbed->add_option("--seed", testbed_options.seed, "Suite generation seed");
    testbed->add_option("--out", testbed_options.out, "Report JSON path");
    testbed->add_flag("!--no-table", testbed_options.print_table,
                      "Suppress the aligned text table on stdout");

    CLI::App* agree = app.add_subcommand("agree", "Pairwise agreement between rankings");
    agree->add_option("rankings", agree_options.ranking_paths,
                      "Ranking JSON files (one debate)");
    agree->add_option("--manifest", agree_options.manifest_path,
                      "Debate manifest with graph files per debate");
    agree->add_option("--variant", agree_options.variant, "GRASP variant for graphs")
        ->check(CLI::IsMember(std::vector<std::string>(std::begin(kVariants),
                                                       std::end(kVariants))));
    agree->add_option("--baseline", agree_options.baseline, "Baseline instead of GRASP");
    agree->add_option("--defense-mode", agree_options.defense_mode, "Defense derivation");
    add_operator_flags(agree, agree_options.op);
    agree->add_option("--out", agree_options.out, "Output path");

    CLI::App* consensus =
        app.add_subcommand("consensus", "Borda/Kemeny consensus and divergence");
    consensus->add_option("rankings", consensus_options.ranking_paths,
                          "Ranking JSON files");
    consensus->add_option("--manifest", consensus_options.manifest_path,
                          "Debate manifest with graph files per debate");
    consensus->add_option("--variant", consensus_options.variant, "GRASP variant")
        ->check(CLI::IsMember(std::vector<std::string>(std::begin(kVariants),
                                                       std::end(kVariants))));
    consensus->add_option("--baseline", consensus_options.baseline,
                          "Baseline instead of GRASP");
    consensus->add_option("--defense-mode", consensus_options.defense_mode,
                          "Defense derivation");
    add_operator_flags(consensus, consensus_options.op);
    consensus->add_option("--out", consensus_options.out, "Output path");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Grid sweep of (alpha, beta, gamma) by cross-source agreement");
    sweep->add_option("--manifest", sweep_options.manifest_path, "Debate manifest")
        ->required();
    sweep->add_option("--alphas", sweep_options.alphas, "Alpha grid values")
        ->delimiter(',');
    sweep->add_option("--betas", sweep_options.betas, "Beta grid values")
        ->delimiter(',');
    sweep->add_option("--gammas", sweep_options.gammas, "Gamma grid values")
        ->delimiter(',');
    sweep->add_option("--variant", sweep_options.variant, "GRASP variant")
        ->check(CLI::IsMember(std::vector<std::string>(std::begin(kVariants),
                                                       std::end(kVariants))));
    sweep->add_option("--tol", sweep_options.tol, "Convergence tolerance");
    sweep->add_option("--max-iters", sweep_options.max_iters, "Iteration budget");
    sweep->add_option("--out", sweep_options.out, "Output path");

    CLI::App* ingest =
        app.add_subcommand("ingest", "Build a graph from pairwise attack scores");
    ingest->add_option("--args", ingest_options.arguments_path,
                       "JSON file with the argument id list")
        ->required();
    ingest->add_option("--scores", ingest_options.scores_path,
                       "JSONL pairwise attack-score file")
        ->required();
    ingest->add_option("--defense-mode", ingest_options.defense_mode,
                       "Defense derivation for the output graph");
    ingest->add_option("--out", ingest_options.out, "Output path");

    testbed_options.seed = default_seed();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (rank->parsed()) return grasp::cli::cmd_rank(rank_options);
        if (trajectory->parsed()) {
            trajectory_options.include_trajectory = true;
            return grasp::cli::cmd_rank(trajectory_options);
        }
        if (baselines->parsed()) return grasp::cli::cmd_baselines(baselines_options);
        if (stats->parsed()) return grasp::cli::cmd_stats(stats_options);
        if (testbed->parsed()) return grasp::cli::cmd_testbed(testbed_options);
        if (agree->parsed()) {
            if (agree_options.manifest_path.empty() &&
                agree_options.ranking_paths.size() < 2) {
                std::cerr << "agree needs --manifest or at least two ranking files\n";
                return 2;
            }
            return grasp::cli::cmd_agree(agree_options);
        }
        if (consensus->parsed()) {
            if (consensus_options.manifest_path.empty() &&
                consensus_options.ranking_paths.size() < 2) {
                std::cerr << "consensus needs --manifest or at least two ranking files\n";
                return 2;
            }
            return grasp::cli::cmd_consensus(consensus_options);
        }
        if (sweep->parsed()) return grasp::cli::cmd_sweep(sweep_options);
        if (ingest->parsed()) return grasp::cli::cmd_ingest(ingest_options);
    } catch (const grasp::Error& e) {
        std::cerr << "error [" << grasp::error_code_name(e.code()) << "]";
        if (e.line()) std::cerr << " line " << *e.line();
        std::cerr << ": " << e.what() << '\n';
        return grasp::cli::exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
