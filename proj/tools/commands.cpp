#include "commands.hpp"

#include <filesystem>
#include <iostream>

namespace grasp::cli {

namespace {

struct VariantSpec {
    NormScheme norm = NormScheme::None;
    bool rescale_dbar = false;
};

VariantSpec parse_variant(const std::string& name) {
    if (name == "grasp") return {NormScheme::None, false};
    if (name == "grasp_w_inf") return {NormScheme::LInf, false};
    if (name == "grasp_w_1") return {NormScheme::L1, false};
    if (name == "grasp_w_inf_dbar") return {NormScheme::LInf, true};
    if (name == "grasp_w_1_dbar") return {NormScheme::L1, true};
    throw Error(ErrorCode::InvalidConfig, "unknown variant: " + name);
}

DefenseMode parse_defense_mode(const std::string& name) {
    const auto mode = defense_mode_from_name(name);
    if (!mode || *mode == DefenseMode::Explicit) {
        throw Error(ErrorCode::InvalidConfig, "unknown defense mode: " + name);
    }
    return *mode;
}

BaselineKind parse_baseline(const std::string& name) {
    const auto kind = baseline_kind_from_name(name);
    if (!kind) {
        throw Error(ErrorCode::InvalidConfig, "unknown baseline: " + name);
    }
    return *kind;
}

void emit(const Json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        write_json_file(out, j);
    }
}

// Variant preprocessing: normalize W, then derive D, then optionally rescale
// it. Explicit defenses from the input file are honored only for the plain
// variant with no defense-mode override.
WeightedInteractionGraph prepare_graph(const GraphDocument& doc,
                                       const VariantSpec& variant,
                                       const std::optional<std::string>& defense_mode) {
    WeightedInteractionGraph graph = doc.graph;
    graph.attacks = normalize_attacks(graph.attacks, variant.norm);

    const bool keep_explicit = graph.defense_provenance == DefenseMode::Explicit &&
                               variant.norm == NormScheme::None && !defense_mode &&
                               !variant.rescale_dbar;
    if (!keep_explicit) {
        const DefenseMode mode =
            defense_mode ? parse_defense_mode(*defense_mode) : DefenseMode::WSquared;
        graph.defenses = derive_defense(graph.attacks, mode);
        graph.defense_provenance = mode;
    }
    if (variant.rescale_dbar) graph.defenses = rescale_defense(graph.defenses);
    return validate_graph(std::move(graph));
}

std::string source_label(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

// Rankings for one debate's graph files under a shared method.
std::vector<Ranking> rank_debate(const DebateSpec& debate, const std::string& variant,
                                 const std::string& baseline,
                                 const std::optional<std::string>& defense_mode,
                                 const GraspConfig& config) {
    std::vector<Ranking> rankings;
    for (const std::string& path : debate.graph_paths) {
        const GraphDocument doc = load_graph_file(path);
        Ranking ranking;
        ranking.source = source_label(path);
        if (!baseline.empty()) {
            const Vector scores = baseline_scores(doc.graph, parse_baseline(baseline));
            ranking.order = scores_to_ranking(scores, doc.graph.arguments);
        } else {
            const WeightedInteractionGraph graph =
                prepare_graph(doc, parse_variant(variant), defense_mode);
            const FixedPointResult fixed = iterate_to_fixed_point(graph, config);
            ranking.order = scores_to_ranking(fixed.scores, graph.arguments);
        }
        rankings.push_back(std::move(ranking));
    }
    return rankings;
}

std::vector<Ranking> load_rankings(const std::vector<std::string>& paths) {
    std::vector<Ranking> rankings;
    for (const std::string& path : paths) {
        rankings.push_back(load_ranking_file(path, source_label(path)));
    }
    return rankings;
}

} // namespace

GraspConfig OperatorFlags::to_config() const {
    GraspConfig config;
    if (preset == "default") {
        config = GraspConfig::defaults();
    } else if (preset == "sweep-optimum") {
        config = GraspConfig::sweep_optimum();
    } else {
        throw Error(ErrorCode::InvalidConfig, "unknown preset: " + preset);
    }
    if (alpha) config.alpha = *alpha;
    if (beta) config.beta = *beta;
    if (gamma) config.gamma = *gamma;
    if (tol) config.tol = *tol;
    if (max_iters) config.max_iters = *max_iters;
    return config;
}

int cmd_rank(const RankOptions& options) {
    const GraphDocument doc = load_graph_file(options.graph_path);

    RankingDocument result;
    WeightedInteractionGraph scored = doc.graph;
    if (!options.baseline.empty()) {
        const BaselineKind kind = parse_baseline(options.baseline);
        result.method = baseline_kind_name(kind);
        result.arguments = doc.graph.arguments;
        result.scores = baseline_scores(doc.graph, kind);
    } else {
        scored = prepare_graph(doc, parse_variant(options.variant),
                               options.defense_mode);
        const FixedPointResult fixed =
            iterate_to_fixed_point(scored, options.op.to_config());
        result.method = options.variant;
        result.arguments = scored.arguments;
        result.scores = fixed.scores;
        result.trace = fixed.trace;
        result.include_trajectory = options.include_trajectory;
    }
    result.ranking = scores_to_ranking(result.scores, result.arguments);

    Json j = ranking_to_json(result);
    const CentralityAlignment alignment = centrality_alignment(scored, result.ranking);
    auto rho = [](const std::optional<double>& value) {
        return value ? Json(*value) : Json(nullptr);
    };
    j["centrality_alignment"] = {{"in_strength_rho", rho(alignment.in_strength_rho)},
                                 {"out_strength_rho", rho(alignment.out_strength_rho)},
                                 {"net_strength_rho", rho(alignment.net_strength_rho)}};
    emit(j, options.out);
    return 0;
}

int cmd_baselines(const BaselinesOptions& options) {
    const GraphDocument doc = load_graph_file(options.graph_path);
    BaselineOptions baseline_options;
    baseline_options.katz_lambda = options.katz_lambda;

    Json j;
    j["format_version"] = kFormatVersion;
    Json methods = Json::array();
    for (BaselineKind kind :
         {BaselineKind::HCategorizer, BaselineKind::KatzAttack,
          BaselineKind::DefenseRatio, BaselineKind::BinaryIndegree,
          BaselineKind::MaxIncomingAttack}) {
        RankingDocument entry;
        entry.method = baseline_kind_name(kind);
        entry.arguments = doc.graph.arguments;
        entry.scores = baseline_scores(doc.graph, kind, baseline_options);
        entry.ranking = scores_to_ranking(entry.scores, entry.arguments);
        methods.push_back(ranking_to_json(entry));
    }
    j["methods"] = std::move(methods);
    emit(j, options.out);
    return 0;
}

int cmd_stats(const StatsOptions& options) {
    if (options.threshold < 0.0 || options.threshold > 1.0) {
        throw Error(ErrorCode::InvalidConfig, "threshold must lie in [0, 1]");
    }
    const GraphDocument doc = load_graph_file(options.graph_path);
    const GraphStats stats = graph_stats(doc.graph.attacks, options.threshold);

    Json j;
    j["format_version"] = kFormatVersion;
    j["stats"] = stats_to_json(stats);

    Json edges = Json::array();
    const Matrix& w = doc.graph.attacks;
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
        for (Eigen::Index jcol = 0; jcol < w.cols(); ++jcol) {
            if (i == jcol || w(i, jcol) <= options.threshold) continue;
            edges.push_back(
                {{"from", doc.graph.arguments[static_cast<std::size_t>(i)]},
                 {"to", doc.graph.arguments[static_cast<std::size_t>(jcol)]},
                 {"weight", w(i, jcol)}});
        }
    }
    j["thresholded_edges"] = std::move(edges);

    if (!options.compare_path.empty()) {
        const GraphDocument other = load_graph_file(options.compare_path);
        const auto pearson = matrix_pearson(doc.graph.attacks, other.graph.attacks);
        j["pearson_vs"] = source_label(options.compare_path);
        j["pearson"] = pearson ? Json(*pearson) : Json(nullptr);
    }
    emit(j, options.out);
    return 0;
}

int cmd_testbed(const TestbedOptions& options) {
    SuiteConfig suite;
    std::vector<MethodSpec> methods = default_testbed_methods();
    if (!options.config_path.empty()) {
        const Json config = load_json_file(options.config_path);
        if (config.contains("suite")) suite = suite_config_from_json(config["suite"]);
        if (config.contains("methods")) methods = methods_from_json(config["methods"]);
    }

    const TestbedReport report = run_testbed(methods, suite, options.seed);
    if (options.print_table) std::cout << testbed_report_to_text(report);
    emit(testbed_report_to_json(report), options.out);
    return 0;
}

namespace {

Json debate_agreement_json(const std::string& id, const AgreementReport& report) {
    Json j = agreement_report_to_json(report);
    j.erase("format_version");
    Json entry;
    entry["id"] = id;
    entry["pairs"] = j["pairs"];
    entry["mean"] = j["mean"];
    return entry;
}

} // namespace

int cmd_agree(const AgreeOptions& options) {
    Json j;
    j["format_version"] = kFormatVersion;
    Json debates = Json::array();

    double tau = 0.0, rho = 0.0, swap = 0.0, top3 = 0.0, top5 = 0.0;
    std::size_t count = 0;
    auto accumulate = [&](const AgreementReport& report) {
        tau += report.mean_kendall_tau;
        rho += report.mean_spearman_rho;
        swap += report.mean_swap_norm;
        top3 += report.mean_top3_overlap;
        top5 += report.mean_top5_overlap;
        ++count;
    };

    if (!options.manifest_path.empty()) {
        const GraspConfig config = options.op.to_config();
        const std::vector<DebateSpec> manifest =
            load_debate_manifest(options.manifest_path);
        if (manifest.empty()) {
            throw Error(ErrorCode::InvalidConfig, "manifest lists no debates");
        }
        for (const DebateSpec& debate : manifest) {
            const std::vector<Ranking> rankings =
                rank_debate(debate, options.variant, options.baseline,
                            options.defense_mode, config);
            try {
                const AgreementReport report = agreement_report(rankings);
                accumulate(report);
                debates.push_back(debate_agreement_json(debate.id, report));
            } catch (const Error& e) {
                throw Error(e.code(),
                            std::string(e.what()) + " (debate " + debate.id + ")");
            }
        }
    } else {
        const AgreementReport report =
            agreement_report(load_rankings(options.ranking_paths));
        accumulate(report);
        debates.push_back(debate_agreement_json("debate", report));
    }

    j["debates"] = std::move(debates);
    const double n = static_cast<double>(count);
    j["aggregate"] = {{"kendall_tau", tau / n},
                      {"spearman_rho", rho / n},
                      {"swap_norm", swap / n},
                      {"top3_overlap", top3 / n},
                      {"top5_overlap", top5 / n},
                      {"debates", count}};
    emit(j, options.out);
    return 0;
}

int cmd_consensus(const ConsensusOptions& options) {
    Json j;
    j["format_version"] = kFormatVersion;

    if (!options.manifest_path.empty()) {
        const GraspConfig config = options.op.to_config();
        Json debates = Json::array();
        std::map<std::string, std::pair<double, std::size_t>> kemeny_sums;
        std::map<std::string, double> borda_sums;
        const std::vector<DebateSpec> manifest =
            load_debate_manifest(options.manifest_path);
        if (manifest.empty()) {
            throw Error(ErrorCode::InvalidConfig, "manifest lists no debates");
        }
        for (const DebateSpec& debate : manifest) {
            const std::vector<Ranking> rankings =
                rank_debate(debate, options.variant, options.baseline,
                            options.defense_mode, config);
            const ConsensusReport report = consensus_divergence(rankings);
            Json entry = consensus_report_to_json(report);
            entry.erase("format_version");
            entry["id"] = debate.id;
            debates.push_back(std::move(entry));
            for (const SourceDivergence& d : report.per_source) {
                kemeny_sums[d.source].first += d.kemeny_distance;
                kemeny_sums[d.source].second += 1;
                borda_sums[d.source] += d.borda_distance;
            }
        }
        j["debates"] = std::move(debates);

        Json sources = Json::array();
        std::string outlier;
        double outlier_distance = -1.0;
        for (const auto& [source, sum] : kemeny_sums) {
            const double mean_kemeny = sum.first / static_cast<double>(sum.second);
            const double mean_borda =
                borda_sums[source] / static_cast<double>(sum.second);
            sources.push_back({{"source", source},
                               {"mean_borda_distance", mean_borda},
                               {"mean_kemeny_distance", mean_kemeny}});
            if (mean_kemeny > outlier_distance) {
                outlier_distance = mean_kemeny;
                outlier = source;
            }
        }
        j["per_source_mean"] = std::move(sources);
        j["outlier"] = outlier;
    } else {
        const ConsensusReport report =
            consensus_divergence(load_rankings(options.ranking_paths));
        j = consensus_report_to_json(report);
    }
    emit(j, options.out);
    return 0;
}

int cmd_sweep(const SweepOptions& options) {
    if (options.alphas.empty() || options.betas.empty() || options.gammas.empty()) {
        throw Error(ErrorCode::InvalidConfig, "sweep grid must not be empty");
    }
    const std::vector<DebateSpec> debates = load_debate_manifest(options.manifest_path);
    if (debates.empty()) {
        throw Error(ErrorCode::InvalidConfig, "manifest lists no debates");
    }

    struct Row {
        double alpha, beta, gamma, agreement;
    };
    std::vector<Row> rows;
    for (double alpha : options.alphas) {
        for (double beta : options.betas) {
            for (double gamma : options.gammas) {
                GraspConfig config;
                config.alpha = alpha;
                config.beta = beta;
                config.gamma = gamma;
                if (options.tol) config.tol = *options.tol;
                if (options.max_iters) config.max_iters = *options.max_iters;

                double tau_sum = 0.0;
                for (const DebateSpec& debate : debates) {
                    const std::vector<Ranking> rankings = rank_debate(
                        debate, options.variant, "", std::nullopt, config);
                    tau_sum += agreement_report(rankings).mean_kendall_tau;
                }
                rows.push_back(
                    {alpha, beta, gamma, tau_sum / static_cast<double>(debates.size())});
            }
        }
    }

    // Stable sort keeps grid order among ties.
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.agreement > b.agreement; });

    Json j;
    j["format_version"] = kFormatVersion;
    j["metric"] = "mean_pairwise_kendall_tau";
    j["debates"] = debates.size();
    Json table = Json::array();
    for (const Row& row : rows) {
        table.push_back({{"alpha", row.alpha},
                         {"beta", row.beta},
                         {"gamma", row.gamma},
                         {"agreement", row.agreement}});
    }
    j["grid"] = std::move(table);
    j["best"] = {{"alpha", rows.front().alpha},
                 {"beta", rows.front().beta},
                 {"gamma", rows.front().gamma},
                 {"agreement", rows.front().agreement}};
    emit(j, options.out);
    return 0;
}

int cmd_ingest(const IngestOptions& options) {
    const Json args_json = load_json_file(options.arguments_path);
    if (!args_json.is_object() || !args_json.contains("arguments")) {
        throw Error(ErrorCode::ParseError, "arguments file needs an \"arguments\" array");
    }
    std::vector<ArgumentId> arguments;
    std::map<ArgumentId, Json> metas;
    for (const Json& entry : args_json["arguments"]) {
        if (entry.is_string()) {
            arguments.push_back(entry.get<std::string>());
        } else if (entry.is_object() && entry.contains("id")) {
            arguments.push_back(entry["id"].get<std::string>());
            if (entry.contains("meta")) metas[arguments.back()] = entry["meta"];
        } else {
            throw Error(ErrorCode::ParseError, "argument entries need an id");
        }
    }

    PairwiseIngestResult result = ingest_pairwise_file(options.scores_path, arguments);
    if (options.defense_mode) {
        const DefenseMode mode = parse_defense_mode(*options.defense_mode);
        result.graph.defenses = derive_defense(result.graph.attacks, mode);
        result.graph.defense_provenance = mode;
    }
    if (result.dropped_self_pairs > 0) {
        std::cerr << "warning: dropped " << result.dropped_self_pairs
                  << " self-pair record(s)\n";
    }

    GraphDocument doc;
    doc.graph = std::move(result.graph);
    doc.argument_meta = std::move(metas);
    emit(graph_to_json(doc), options.out);
    return 0;
}

int exit_code_for(ErrorCode code) {
    return 10 + static_cast<int>(code);
}

} // namespace grasp::cli
