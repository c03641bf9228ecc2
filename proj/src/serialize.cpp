#include "grasp/serialize.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <unordered_map>

namespace grasp {

namespace {

std::unordered_map<ArgumentId, Eigen::Index> index_map(
    const std::vector<ArgumentId>& arguments) {
    std::unordered_map<ArgumentId, Eigen::Index> map;
    map.reserve(arguments.size());
    for (std::size_t i = 0; i < arguments.size(); ++i) {
        map.emplace(arguments[i], static_cast<Eigen::Index>(i));
    }
    return map;
}

Json edges_to_json(const std::vector<ArgumentId>& arguments, const Matrix& m) {
    Json edges = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i == j || m(i, j) == 0.0) continue;
            edges.push_back({{"from", arguments[static_cast<std::size_t>(i)]},
                             {"to", arguments[static_cast<std::size_t>(j)]},
                             {"weight", m(i, j)}});
        }
    }
    return edges;
}

Matrix edges_from_json(const Json& edges, const char* label,
                       const std::unordered_map<ArgumentId, Eigen::Index>& index,
                       Eigen::Index n) {
    Matrix m = Matrix::Zero(n, n);
    std::set<std::pair<Eigen::Index, Eigen::Index>> seen;
    for (const Json& edge : edges) {
        if (!edge.is_object() || !edge.contains("from") || !edge.contains("to") ||
            !edge.contains("weight") || !edge["from"].is_string() ||
            !edge["to"].is_string() || !edge["weight"].is_number()) {
            throw Error(ErrorCode::MalformedRecord,
                        std::string(label) + " entries need from/to/weight");
        }
        const auto from = index.find(edge["from"].get<std::string>());
        const auto to = index.find(edge["to"].get<std::string>());
        if (from == index.end() || to == index.end()) {
            throw Error(ErrorCode::UnknownArgument,
                        std::string(label) + " entry references an unknown argument");
        }
        if (!seen.emplace(from->second, to->second).second) {
            throw Error(ErrorCode::DuplicatePair,
                        "duplicate " + std::string(label) + " pair (" +
                            edge["from"].get<std::string>() + ", " +
                            edge["to"].get<std::string>() + ")");
        }
        m(from->second, to->second) = edge["weight"].get<double>();
    }
    return m;
}

} // namespace

Json graph_to_json(const GraphDocument& doc) {
    Json j;
    j["format_version"] = kFormatVersion;
    Json arguments = Json::array();
    for (const ArgumentId& id : doc.graph.arguments) {
        Json entry{{"id", id}};
        auto meta = doc.argument_meta.find(id);
        if (meta != doc.argument_meta.end()) entry["meta"] = meta->second;
        arguments.push_back(std::move(entry));
    }
    j["arguments"] = std::move(arguments);
    j["attacks"] = edges_to_json(doc.graph.arguments, doc.graph.attacks);
    j["defenses"] = edges_to_json(doc.graph.arguments, doc.graph.defenses);
    j["defense_mode"] = defense_mode_name(doc.graph.defense_provenance);
    return j;
}

GraphDocument graph_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("arguments") || !j["arguments"].is_array()) {
        throw Error(ErrorCode::ParseError, "graph file needs an \"arguments\" array");
    }

    GraphDocument doc;
    for (const Json& entry : j["arguments"]) {
        if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_string()) {
            throw Error(ErrorCode::ParseError, "argument entries need an \"id\" string");
        }
        const auto id = entry["id"].get<std::string>();
        doc.graph.arguments.push_back(id);
        if (entry.contains("meta")) doc.argument_meta[id] = entry["meta"];
    }

    const auto index = index_map(doc.graph.arguments);
    if (index.size() != doc.graph.arguments.size()) {
        throw Error(ErrorCode::DuplicateArgumentId, "duplicate argument id in file");
    }
    const Eigen::Index n = doc.graph.size();

    doc.graph.attacks = j.contains("attacks")
                            ? edges_from_json(j["attacks"], "attack", index, n)
                            : Matrix::Zero(n, n);

    DefenseMode mode = DefenseMode::WSquared;
    if (j.contains("defense_mode")) {
        const auto parsed = defense_mode_from_name(j["defense_mode"].get<std::string>());
        if (!parsed) {
            throw Error(ErrorCode::ParseError, "unknown defense_mode");
        }
        mode = *parsed;
    }

    if (j.contains("defenses")) {
        doc.graph.defenses = edges_from_json(j["defenses"], "defense", index, n);
        doc.graph.defense_provenance =
            j.contains("defense_mode") ? mode : DefenseMode::Explicit;
    } else {
        const DefenseMode derive_mode =
            mode == DefenseMode::Explicit ? DefenseMode::WSquared : mode;
        doc.graph.attacks.diagonal().setZero();
        doc.graph.defenses = derive_defense(doc.graph.attacks, derive_mode);
        doc.graph.defense_provenance = derive_mode;
    }

    doc.graph = validate_graph(std::move(doc.graph));
    return doc;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open " + path);
    }
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) {
        throw Error(ErrorCode::ParseError, "invalid JSON in " + path);
    }
    return j;
}

GraphDocument load_graph_file(const std::string& path) {
    return graph_from_json(load_json_file(path));
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write " + path);
    }
    out << j.dump(2) << '\n';
}

PairwiseIngestResult ingest_pairwise_scores(std::istream& stream,
                                            const std::vector<ArgumentId>& arguments) {
    PairwiseIngestResult result;
    result.graph.arguments = arguments;
    const auto index = index_map(arguments);
    if (index.size() != arguments.size()) {
        throw Error(ErrorCode::DuplicateArgumentId, "duplicate argument id");
    }
    const Eigen::Index n = result.graph.size();
    result.graph.attacks = Matrix::Zero(n, n);

    std::set<std::pair<Eigen::Index, Eigen::Index>> seen;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

        const Json record = Json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            throw Error(ErrorCode::MalformedRecord, "invalid JSON record", line_number);
        }
        if (!record.contains("attacker") || !record["attacker"].is_string() ||
            !record.contains("target") || !record["target"].is_string() ||
            !record.contains("attack_score") || !record["attack_score"].is_number()) {
            throw Error(ErrorCode::MalformedRecord,
                        "record needs attacker/target/attack_score", line_number);
        }

        const auto attacker = record["attacker"].get<std::string>();
        const auto target = record["target"].get<std::string>();
        const double score = record["attack_score"].get<double>();

        const auto from = index.find(attacker);
        const auto to = index.find(target);
        if (from == index.end() || to == index.end()) {
            throw Error(ErrorCode::UnknownArgument,
                        "unknown argument in record: " + attacker + " -> " + target,
                        line_number);
        }
        if (score < 0.0 || score > 1.0) {
            throw Error(ErrorCode::ScoreOutOfRange,
                        "attack_score outside [0, 1]", line_number);
        }
        if (from->second == to->second) {
            ++result.dropped_self_pairs;  // self-attacks are disallowed
            continue;
        }
        if (!seen.emplace(from->second, to->second).second) {
            throw Error(ErrorCode::DuplicatePair,
                        "duplicate pair (" + attacker + ", " + target + ")", line_number);
        }
        result.graph.attacks(from->second, to->second) = score;
        ++result.records;
    }

    result.graph.defenses = derive_defense(result.graph.attacks, DefenseMode::WSquared);
    result.graph.defense_provenance = DefenseMode::WSquared;
    result.graph = validate_graph(std::move(result.graph));
    return result;
}

PairwiseIngestResult ingest_pairwise_file(const std::string& path,
                                          const std::vector<ArgumentId>& arguments) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open " + path);
    }
    return ingest_pairwise_scores(in, arguments);
}

Json ranking_to_json(const RankingDocument& doc) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["method"] = doc.method;
    Json scores = Json::object();
    for (std::size_t i = 0; i < doc.arguments.size(); ++i) {
        scores[doc.arguments[i]] = doc.scores(static_cast<Eigen::Index>(i));
    }
    j["scores"] = std::move(scores);
    j["ranking"] = doc.ranking;
    if (doc.trace) {
        j["converged"] = doc.trace->converged;
        j["iterations"] = doc.trace->iterations_used;
        j["residual"] = doc.trace->final_residual;
        if (doc.include_trajectory) {
            Json trajectory = Json::array();
            for (const Vector& s : doc.trace->per_iteration_scores) {
                Json row = Json::array();
                for (Eigen::Index i = 0; i < s.size(); ++i) row.push_back(s(i));
                trajectory.push_back(std::move(row));
            }
            j["trajectory"] = std::move(trajectory);
        }
    }
    return j;
}

Ranking load_ranking_file(const std::string& path, const std::string& fallback_source) {
    const Json j = load_json_file(path);
    if (!j.is_object() || !j.contains("ranking") || !j["ranking"].is_array()) {
        throw Error(ErrorCode::ParseError,
                    "ranking file needs a \"ranking\" array: " + path);
    }
    Ranking ranking;
    for (const Json& id : j["ranking"]) {
        if (!id.is_string()) {
            throw Error(ErrorCode::ParseError, "ranking entries must be strings");
        }
        ranking.order.push_back(id.get<std::string>());
    }
    if (j.contains("source") && j["source"].is_string()) {
        ranking.source = j["source"].get<std::string>();
    } else if (j.contains("method") && j["method"].is_string()) {
        ranking.source = j["method"].get<std::string>();
    } else {
        ranking.source = fallback_source;
    }
    return ranking;
}

std::vector<DebateSpec> load_debate_manifest(const std::string& path) {
    const Json j = load_json_file(path);
    if (!j.is_object() || !j.contains("debates") || !j["debates"].is_array()) {
        throw Error(ErrorCode::ParseError, "manifest needs a \"debates\" array");
    }
    const std::filesystem::path base = std::filesystem::path(path).parent_path();

    std::vector<DebateSpec> debates;
    for (const Json& entry : j["debates"]) {
        if (!entry.is_object() || !entry.contains("id") || !entry.contains("graphs") ||
            !entry["graphs"].is_array()) {
            throw Error(ErrorCode::ParseError, "debate entries need id and graphs");
        }
        DebateSpec spec;
        spec.id = entry["id"].get<std::string>();
        for (const Json& p : entry["graphs"]) {
            spec.graph_paths.push_back((base / p.get<std::string>()).string());
        }
        debates.push_back(std::move(spec));
    }
    std::sort(debates.begin(), debates.end(),
              [](const DebateSpec& a, const DebateSpec& b) { return a.id < b.id; });
    return debates;
}

Json agreement_report_to_json(const AgreementReport& report) {
    Json j;
    j["format_version"] = kFormatVersion;
    Json pairs = Json::array();
    for (const PairAgreement& p : report.pairs) {
        pairs.push_back({{"source_a", p.source_a},
                         {"source_b", p.source_b},
                         {"metrics",
                          {{"kendall_tau", p.kendall_tau},
                           {"spearman_rho", p.spearman_rho},
                           {"swap_norm", p.swap_norm},
                           {"top3_overlap", p.top3_overlap},
                           {"top5_overlap", p.top5_overlap}}}});
    }
    j["pairs"] = std::move(pairs);
    j["mean"] = {{"kendall_tau", report.mean_kendall_tau},
                 {"spearman_rho", report.mean_spearman_rho},
                 {"swap_norm", report.mean_swap_norm},
                 {"top3_overlap", report.mean_top3_overlap},
                 {"top5_overlap", report.mean_top5_overlap}};
    return j;
}

Json consensus_report_to_json(const ConsensusReport& report) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["borda_ranking"] = report.borda_ranking;
    j["kemeny_greedy_ranking"] = report.kemeny_greedy_ranking;
    Json sources = Json::array();
    for (const SourceDivergence& d : report.per_source) {
        sources.push_back({{"source", d.source},
                           {"borda_distance", d.borda_distance},
                           {"kemeny_distance", d.kemeny_distance}});
    }
    j["per_source"] = std::move(sources);
    j["outlier"] = report.outlier;
    return j;
}

Json stats_to_json(const GraphStats& stats) {
    return {{"density_d", stats.density_d},
            {"mean_mu", stats.mean_mu},
            {"threshold_tau", stats.threshold_tau},
            {"thresholded_edge_count", stats.thresholded_edge_count}};
}

Json testbed_report_to_json(const TestbedReport& report) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["seed"] = report.seed;
    j["graphs"] = report.graph_count;
    Json methods = Json::array();
    for (const MethodResult& m : report.methods) {
        Json entry;
        entry["method"] = m.method;
        entry["violation_rate"] = m.violation_rate;
        entry["severity"] = m.severity;
        entry["total_crcs"] = m.total_crcs;
        entry["violated"] = m.violated;
        Json per_axiom = Json::object();
        for (const auto& [axiom, tally] : m.per_axiom) {
            per_axiom[axiom_name(axiom)] = {{"total", tally.total},
                                            {"violated", tally.violated}};
        }
        entry["per_axiom"] = std::move(per_axiom);
        if (m.iterative) {
            entry["mean_iterations"] = m.mean_iterations;
            entry["convergence_fraction"] = m.convergence_fraction;
        }
        methods.push_back(std::move(entry));
    }
    j["methods"] = std::move(methods);
    return j;
}

std::string testbed_report_to_text(const TestbedReport& report) {
    std::ostringstream out;
    out << std::left << std::setw(28) << "method" << std::right << std::setw(10)
        << "viol_rate" << std::setw(10) << "severity" << std::setw(10) << "iters"
        << std::setw(10) << "conv" << '\n';
    out << std::string(68, '-') << '\n';
    out << std::fixed;
    for (const MethodResult& m : report.methods) {
        out << std::left << std::setw(28) << m.method << std::right
            << std::setprecision(4) << std::setw(10) << m.violation_rate
            << std::setw(10) << m.severity;
        if (m.iterative) {
            out << std::setprecision(1) << std::setw(10) << m.mean_iterations
                << std::setprecision(3) << std::setw(10) << m.convergence_fraction;
        } else {
            out << std::setw(10) << "--" << std::setw(10) << "--";
        }
        out << '\n';
    }
    return out.str();
}

SuiteConfig suite_config_from_json(const Json& j) {
    SuiteConfig config;
    if (!j.is_object()) return config;
    if (j.contains("motif_kinds")) {
        config.motif_kinds.clear();
        for (const Json& name : j["motif_kinds"]) {
            const auto kind = motif_kind_from_name(name.get<std::string>());
            if (!kind || *kind == MotifKind::RandomDag) {
                throw Error(ErrorCode::ParseError, "unknown motif kind in suite");
            }
            config.motif_kinds.push_back(*kind);
        }
    }
    if (j.contains("motif_count")) config.motif_count = j["motif_count"].get<int>();
    if (j.contains("motif_sizes")) {
        config.motif_sizes = j["motif_sizes"].get<std::vector<int>>();
        if (config.motif_sizes.empty()) {
            throw Error(ErrorCode::ParseError, "motif_sizes must not be empty");
        }
    }
    if (j.contains("noise")) config.noise = j["noise"].get<bool>();
    if (j.contains("dag_count")) config.dag_count = j["dag_count"].get<int>();
    if (j.contains("dag_n")) config.dag_n = j["dag_n"].get<int>();
    if (j.contains("dag_edge_probs")) {
        config.dag_edge_probs = j["dag_edge_probs"].get<std::vector<double>>();
    }
    return config;
}

std::vector<MethodSpec> methods_from_json(const Json& j) {
    std::vector<MethodSpec> methods;
    for (const Json& entry : j) {
        MethodSpec spec;
        if (!entry.is_object() || !entry.contains("type")) {
            throw Error(ErrorCode::ParseError, "method entries need a type");
        }
        const auto type = entry["type"].get<std::string>();
        spec.name = entry.contains("name") ? entry["name"].get<std::string>() : type;
        if (type == "grasp") {
            spec.is_grasp = true;
            if (entry.contains("defense_mode")) {
                const auto mode =
                    defense_mode_from_name(entry["defense_mode"].get<std::string>());
                if (!mode) throw Error(ErrorCode::ParseError, "unknown defense_mode");
                spec.defense_mode = *mode;
            }
            if (entry.contains("norm")) {
                const auto scheme = norm_scheme_from_name(entry["norm"].get<std::string>());
                if (!scheme) throw Error(ErrorCode::ParseError, "unknown norm scheme");
                spec.norm_scheme = *scheme;
            }
            if (entry.contains("rescale_dbar")) {
                spec.rescale_dbar = entry["rescale_dbar"].get<bool>();
            }
            if (entry.contains("gains") &&
                entry["gains"].get<std::string>() == "theorem_bound") {
                spec.gain_policy = GainPolicy::TheoremBound;
            }
            if (entry.contains("alpha")) spec.config.alpha = entry["alpha"].get<double>();
            if (entry.contains("beta")) spec.config.beta = entry["beta"].get<double>();
            if (entry.contains("gamma")) spec.config.gamma = entry["gamma"].get<double>();
            if (entry.contains("tol")) spec.config.tol = entry["tol"].get<double>();
            if (entry.contains("max_iters")) {
                spec.config.max_iters = entry["max_iters"].get<int>();
            }
        } else if (type == "baseline") {
            spec.is_grasp = false;
            if (!entry.contains("kind")) {
                throw Error(ErrorCode::ParseError, "baseline methods need a kind");
            }
            const auto kind = baseline_kind_from_name(entry["kind"].get<std::string>());
            if (!kind) throw Error(ErrorCode::ParseError, "unknown baseline kind");
            spec.baseline = *kind;
            if (spec.name == "baseline") spec.name = entry["kind"].get<std::string>();
            if (entry.contains("katz_lambda")) {
                spec.baseline_options.katz_lambda = entry["katz_lambda"].get<double>();
            }
        } else {
            throw Error(ErrorCode::ParseError, "method type must be grasp or baseline");
        }
        methods.push_back(std::move(spec));
    }
    if (methods.empty()) {
        throw Error(ErrorCode::InvalidConfig, "at least one method required");
    }
    return methods;
}

std::vector<MethodSpec> default_testbed_methods() {
    std::vector<MethodSpec> methods;

    MethodSpec grasp_w2;
    grasp_w2.name = "grasp_w2";
    grasp_w2.is_grasp = true;
    grasp_w2.defense_mode = DefenseMode::WSquared;
    grasp_w2.config = GraspConfig::sweep_optimum();
    methods.push_back(grasp_w2);

    for (BaselineKind kind :
         {BaselineKind::DefenseRatio, BaselineKind::HCategorizer,
          BaselineKind::KatzAttack, BaselineKind::BinaryIndegree,
          BaselineKind::MaxIncomingAttack}) {
        MethodSpec spec;
        spec.is_grasp = false;
        spec.baseline = kind;
        spec.name = baseline_kind_name(kind);
        methods.push_back(std::move(spec));
    }
    return methods;
}

} // namespace grasp
