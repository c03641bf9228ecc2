#include "grasp/testbed.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "grasp/rng.hpp"
#include "grasp/sufficiency.hpp"

namespace grasp {

const char* axiom_name(Axiom axiom) {
    switch (axiom) {
        case Axiom::S1: return "S1";
        case Axiom::S2: return "S2";
        case Axiom::S3: return "S3";
        case Axiom::S4: return "S4";
    }
    return "?";
}

const char* motif_kind_name(MotifKind kind) {
    switch (kind) {
        case MotifKind::Chain: return "chain";
        case MotifKind::Fork: return "fork";
        case MotifKind::Diamond: return "diamond";
        case MotifKind::Bipolar: return "bipolar";
        case MotifKind::RandomDag: return "random_dag";
    }
    return "unknown";
}

std::optional<MotifKind> motif_kind_from_name(const std::string& name) {
    if (name == "chain") return MotifKind::Chain;
    if (name == "fork") return MotifKind::Fork;
    if (name == "diamond") return MotifKind::Diamond;
    if (name == "bipolar") return MotifKind::Bipolar;
    if (name == "random_dag") return MotifKind::RandomDag;
    return std::nullopt;
}

namespace {

std::vector<ArgumentId> numbered_ids(int n) {
    const int width = n >= 10 ? 2 : 1;
    std::vector<ArgumentId> ids;
    ids.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        std::string num = std::to_string(i);
        while (static_cast<int>(num.size()) < width) num.insert(num.begin(), '0');
        ids.push_back("a" + num);
    }
    return ids;
}

// Core motif edges as (attacker index, target index), unit weight.
std::vector<std::pair<int, int>> motif_core_edges(MotifKind kind, int n) {
    std::vector<std::pair<int, int>> edges;
    switch (kind) {
        case MotifKind::Chain:
            // a_{k+1} attacks a_k; a_n is the unattacked top.
            for (int k = 0; k + 1 < n; ++k) edges.emplace_back(k + 1, k);
            break;
        case MotifKind::Fork:
            // every other node attacks the single target a_1.
            for (int k = 1; k < n; ++k) edges.emplace_back(k, 0);
            break;
        case MotifKind::Diamond:
            // parallel attackers a_2..a_{n-1} on a_1, all counter-attacked
            // by a_n.
            for (int k = 1; k + 1 < n; ++k) {
                edges.emplace_back(k, 0);
                edges.emplace_back(n - 1, k);
            }
            break;
        case MotifKind::Bipolar:
            // attackers a_2..a_{n-1} on the claim a_1; a_n counter-attacks
            // only the first of them.
            for (int k = 1; k + 1 < n; ++k) edges.emplace_back(k, 0);
            edges.emplace_back(n - 1, 1);
            break;
        case MotifKind::RandomDag:
            throw Error(ErrorCode::InvalidConfig, "random_dag is not an archetype");
    }
    return edges;
}

// CRCs from the core structure. S2 pairs compare a sufficient target with
// its insufficient counter-attacked attacker; S1 pairs compare unattacked
// attackers with their target; S4 pairs compare unattacked arguments with
// attacked arguments that are not sufficient.
std::vector<CriticalRankingCondition> motif_crcs(MotifKind kind,
                                                 const ArgumentationStructure& core) {
    std::vector<CriticalRankingCondition> crcs;
    std::set<std::pair<ArgumentId, ArgumentId>> emitted;
    auto emit = [&](const ArgumentId& stronger, const ArgumentId& weaker, Axiom axiom) {
        if (emitted.emplace(stronger, weaker).second) {
            crcs.push_back({stronger, weaker, axiom, kind});
        }
    };

    std::map<ArgumentId, bool> sufficient, attacked;
    for (const ArgumentId& id : core.arguments) {
        sufficient[id] = is_structurally_sufficient(core, id);
        attacked[id] = false;
    }
    for (const AttackPair& attack : core.attacks) attacked[attack.second] = true;

    if (kind == MotifKind::Chain || kind == MotifKind::Diamond) {
        for (const AttackPair& attack : core.attacks) {
            const ArgumentId& b = attack.first;
            const ArgumentId& a = attack.second;
            if (sufficient[a] && !sufficient[b]) emit(a, b, Axiom::S2);
        }
    }
    if (kind == MotifKind::Fork) {
        for (const AttackPair& attack : core.attacks) {
            if (!attacked[attack.first]) emit(attack.first, attack.second, Axiom::S1);
        }
    }
    for (const ArgumentId& u : core.arguments) {
        if (attacked[u]) continue;
        for (const ArgumentId& v : core.arguments) {
            if (attacked[v] && !sufficient[v]) emit(u, v, Axiom::S4);
        }
    }
    return crcs;
}

} // namespace

TestbedGraph generate_archetype(MotifKind kind, int size, bool noise,
                                std::uint64_t seed) {
    if (kind == MotifKind::RandomDag) {
        throw Error(ErrorCode::InvalidConfig, "use generate_random_dag for DAGs");
    }
    if (size < 3 || size > 6) {
        throw Error(ErrorCode::InvalidConfig, "archetype size must lie in [3, 6]");
    }

    TestbedGraph result;
    result.kind = kind;
    result.graph.arguments = numbered_ids(size);
    result.graph.attacks = Matrix::Zero(size, size);
    for (auto [from, to] : motif_core_edges(kind, size)) {
        result.graph.attacks(from, to) = 1.0;
    }

    const ArgumentationStructure core =
        ArgumentationStructure::from_graph(result.graph);
    result.crcs = motif_crcs(kind, core);

    if (noise) {
        std::vector<bool> core_attacked(static_cast<std::size_t>(size), false);
        for (const AttackPair& attack : core.attacks) {
            core_attacked[static_cast<std::size_t>(
                result.graph.index_of(attack.second))] = true;
        }

        Rng rng(mix_seed(seed, 0x6e6f6973));
        const int wanted = (size + 1) / 2;
        int added = 0;
        // Targets must already be attacked in the core so every CRC premise
        // survives; duplicates and self-attacks are rejected.
        for (int attempt = 0; attempt < 100 * wanted && added < wanted; ++attempt) {
            const auto from = static_cast<Eigen::Index>(rng.below(size));
            const auto to = static_cast<Eigen::Index>(rng.below(size));
            if (from == to) continue;
            if (!core_attacked[static_cast<std::size_t>(to)]) continue;
            if (result.graph.attacks(from, to) > 0.0) continue;
            result.graph.attacks(from, to) = rng.uniform(0.05, 0.15);
            ++added;
        }
    }

    result.graph.defenses = derive_defense(result.graph.attacks, DefenseMode::WSquared);
    result.graph.defense_provenance = DefenseMode::WSquared;
    result.graph = validate_graph(std::move(result.graph));
    return result;
}

TestbedGraph generate_random_dag(int n, double edge_prob, std::uint64_t seed) {
    if (n < 2) {
        throw Error(ErrorCode::InvalidConfig, "random DAGs need at least two nodes");
    }
    if (!(edge_prob > 0.0) || !(edge_prob < 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "edge probability must lie in (0, 1)");
    }

    TestbedGraph result;
    result.kind = MotifKind::RandomDag;
    result.graph.arguments = numbered_ids(n);
    result.graph.attacks = Matrix::Zero(n, n);

    Rng rng(mix_seed(seed, 0x646167));
    // Index order is the topological order: edges only run forward, so the
    // graph is acyclic by construction.
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng.bernoulli(edge_prob)) {
                result.graph.attacks(i, j) = rng.uniform(0.2, 1.0);
            }
        }
    }

    std::vector<bool> is_attacked(static_cast<std::size_t>(n), false);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (result.graph.attacks(i, j) > 0.0) is_attacked[static_cast<std::size_t>(j)] = true;
        }
    }
    for (int u = 0; u < n; ++u) {
        if (is_attacked[static_cast<std::size_t>(u)]) continue;
        for (int v = 0; v < n; ++v) {
            if (is_attacked[static_cast<std::size_t>(v)]) {
                result.crcs.push_back({result.graph.arguments[static_cast<std::size_t>(u)],
                                       result.graph.arguments[static_cast<std::size_t>(v)],
                                       Axiom::S4, MotifKind::RandomDag});
            }
        }
    }

    result.graph.defenses = derive_defense(result.graph.attacks, DefenseMode::WSquared);
    result.graph.defense_provenance = DefenseMode::WSquared;
    result.graph = validate_graph(std::move(result.graph));
    return result;
}

ViolationReport evaluate_crcs(const Vector& scores,
                              const std::vector<ArgumentId>& arguments,
                              const std::vector<CriticalRankingCondition>& crcs) {
    if (scores.size() != static_cast<Eigen::Index>(arguments.size())) {
        throw Error(ErrorCode::DimensionMismatch,
                    "score vector length does not match argument list");
    }
    std::map<ArgumentId, double> score_of;
    for (std::size_t i = 0; i < arguments.size(); ++i) {
        score_of[arguments[i]] = scores(static_cast<Eigen::Index>(i));
    }

    const double range =
        scores.size() > 0 ? scores.maxCoeff() - scores.minCoeff() : 0.0;

    ViolationReport report;
    report.total_crcs = crcs.size();
    double severity_sum = 0.0;
    for (const CriticalRankingCondition& crc : crcs) {
        auto strong = score_of.find(crc.stronger);
        auto weak = score_of.find(crc.weaker);
        if (strong == score_of.end() || weak == score_of.end()) {
            throw Error(ErrorCode::UnknownArgument,
                        "CRC references an unscored argument");
        }
        AxiomTally& tally = report.per_axiom[crc.axiom];
        ++tally.total;
        if (strong->second <= weak->second) {  // ties count as violations
            ++report.violated;
            ++tally.violated;
            severity_sum +=
                range > 0.0 ? (weak->second - strong->second) / range : 1.0;
        }
    }
    if (report.total_crcs > 0) {
        report.violation_rate =
            static_cast<double>(report.violated) / static_cast<double>(report.total_crcs);
    }
    if (report.violated > 0) {
        report.mean_severity = severity_sum / static_cast<double>(report.violated);
    }
    return report;
}

MethodRun run_method(const MethodSpec& method, const WeightedInteractionGraph& graph) {
    MethodRun run;
    if (!method.is_grasp) {
        run.scores = baseline_scores(graph, method.baseline, method.baseline_options);
        return run;
    }

    WeightedInteractionGraph prepared = graph;
    prepared.attacks = normalize_attacks(graph.attacks, method.norm_scheme);
    prepared.defenses = derive_defense(prepared.attacks, method.defense_mode);
    prepared.defense_provenance = method.defense_mode;
    if (method.rescale_dbar) prepared.defenses = rescale_defense(prepared.defenses);
    prepared = validate_graph(std::move(prepared));

    GraspConfig config = method.config;
    if (method.gain_policy == GainPolicy::TheoremBound) {
        const double w_norm = induced_one_norm(prepared.attacks);
        const double d_norm = induced_one_norm(prepared.defenses);
        const double largest = std::max(w_norm, d_norm);
        const double gain = largest > 0.0 ? 1.0 / (4.0 * largest) : 0.25;
        config.alpha = gain;
        config.beta = gain;
    }

    const FixedPointResult fixed = iterate_to_fixed_point(prepared, config);
    run.scores = fixed.scores;
    run.iterative = true;
    run.iterations = fixed.trace.iterations_used;
    run.converged = fixed.trace.converged;
    return run;
}

std::vector<TestbedGraph> generate_suite(const SuiteConfig& config, std::uint64_t seed) {
    std::vector<TestbedGraph> graphs;
    std::uint64_t index = 0;
    for (MotifKind kind : config.motif_kinds) {
        for (int i = 0; i < config.motif_count; ++i) {
            const int size =
                config.motif_sizes[static_cast<std::size_t>(i) % config.motif_sizes.size()];
            graphs.push_back(
                generate_archetype(kind, size, config.noise, mix_seed(seed, index)));
            ++index;
        }
    }
    for (double prob : config.dag_edge_probs) {
        for (int i = 0; i < config.dag_count; ++i) {
            graphs.push_back(generate_random_dag(config.dag_n, prob, mix_seed(seed, index)));
            ++index;
        }
    }
    return graphs;
}

TestbedReport run_testbed(const std::vector<MethodSpec>& methods,
                          const SuiteConfig& config, std::uint64_t seed) {
    const std::vector<TestbedGraph> graphs = generate_suite(config, seed);

    TestbedReport report;
    report.seed = seed;
    report.graph_count = graphs.size();

    for (const MethodSpec& method : methods) {
        MethodResult result;
        result.method = method.name;
        result.iterative = method.is_grasp;

        double rate_sum = 0.0;
        std::size_t graphs_with_crcs = 0;
        double severity_sum = 0.0;
        std::size_t iterations_sum = 0;
        std::size_t converged_count = 0;

        for (const TestbedGraph& instance : graphs) {
            const MethodRun run = run_method(method, instance.graph);
            if (run.iterative) {
                iterations_sum += static_cast<std::size_t>(run.iterations);
                if (run.converged) ++converged_count;
            }

            const ViolationReport violation =
                evaluate_crcs(run.scores, instance.graph.arguments, instance.crcs);
            result.total_crcs += violation.total_crcs;
            result.violated += violation.violated;
            for (const auto& [axiom, tally] : violation.per_axiom) {
                result.per_axiom[axiom].total += tally.total;
                result.per_axiom[axiom].violated += tally.violated;
            }
            if (violation.total_crcs > 0) {
                ++graphs_with_crcs;
                rate_sum += violation.violation_rate;
                severity_sum +=
                    violation.mean_severity * static_cast<double>(violation.violated);
            }
        }

        // Rate is the mean of per-graph rates so that the dense DAG CRC sets
        // do not drown out the motif constraints.
        if (graphs_with_crcs > 0) {
            result.violation_rate = rate_sum / static_cast<double>(graphs_with_crcs);
        }
        if (result.violated > 0) {
            result.severity = severity_sum / static_cast<double>(result.violated);
        }
        if (result.iterative && !graphs.empty()) {
            result.mean_iterations =
                static_cast<double>(iterations_sum) / static_cast<double>(graphs.size());
            result.convergence_fraction =
                static_cast<double>(converged_count) / static_cast<double>(graphs.size());
        }
        report.methods.push_back(std::move(result));
    }
    return report;
}

} // namespace grasp
