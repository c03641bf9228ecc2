#pragma once
// Agreement statistics between rankings, consensus construction and
// centrality-alignment diagnostics. Rankings are strict total orders over a
// common argument set; ties are resolved upstream.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grasp/graph.hpp"

namespace grasp {

struct Ranking {
    std::vector<ArgumentId> order;  // strongest first
    std::string source;             // method + judge label
};

struct PairAgreement {
    std::string source_a;
    std::string source_b;
    double kendall_tau = 0.0;
    double spearman_rho = 0.0;
    double swap_norm = 0.0;
    double top3_overlap = 0.0;
    double top5_overlap = 0.0;
};

struct AgreementReport {
    std::vector<PairAgreement> pairs;
    double mean_kendall_tau = 0.0;
    double mean_spearman_rho = 0.0;
    double mean_swap_norm = 0.0;
    double mean_top3_overlap = 0.0;
    double mean_top5_overlap = 0.0;
};

struct SourceDivergence {
    std::string source;
    double borda_distance = 0.0;   // raw swap distance to the Borda consensus
    double kemeny_distance = 0.0;  // raw swap distance to the greedy Kemeny consensus
};

struct ConsensusReport {
    std::vector<ArgumentId> borda_ranking;
    std::vector<ArgumentId> kemeny_greedy_ranking;
    std::vector<SourceDivergence> per_source;
    std::string outlier;  // source with the largest distance to consensus
};

struct CentralityAlignment {
    std::optional<double> in_strength_rho;
    std::optional<double> out_strength_rho;
    std::optional<double> net_strength_rho;
};

// Kendall tau-a over all unordered pairs: (concordant - discordant) / C(n,2).
double kendall_tau(const std::vector<ArgumentId>& r1, const std::vector<ArgumentId>& r2);

// Spearman rho via the no-tie closed form 1 - 6 sum d^2 / (n (n^2 - 1)).
double spearman_rho(const std::vector<ArgumentId>& r1, const std::vector<ArgumentId>& r2);

// Discordant pair count; normalized divides by C(n,2).
double swap_distance(const std::vector<ArgumentId>& r1, const std::vector<ArgumentId>& r2,
                     bool normalized);

// |top-k(r1) intersect top-k(r2)| / k.
double top_k_overlap(const std::vector<ArgumentId>& r1, const std::vector<ArgumentId>& r2,
                     std::size_t k);

// All pairwise metrics plus their means over the C(m,2) source pairs.
AgreementReport agreement_report(const std::vector<Ranking>& rankings);

// Borda aggregation: item score = sum over rankings of (n - position),
// descending, ties broken by ascending id.
std::vector<ArgumentId> borda_consensus(const std::vector<Ranking>& rankings);

// Greedy Kemeny: repeatedly appends the unplaced item that adds the fewest
// pairwise disagreements against the inputs.
std::vector<ArgumentId> kemeny_greedy(const std::vector<Ranking>& rankings);

// Exhaustive Kemeny optimum; guarded to n <= 8. Ties broken by lexicographic
// permutation order.
std::vector<ArgumentId> kemeny_exact(const std::vector<Ranking>& rankings);

// Summed raw swap distance from a candidate ranking to every input.
double total_kendall_distance(const std::vector<ArgumentId>& candidate,
                              const std::vector<Ranking>& rankings);

// Distances of each source to the Borda and greedy Kemeny consensus; the
// outlier is the source farthest from the Kemeny consensus.
ConsensusReport consensus_divergence(const std::vector<Ranking>& rankings);

// Spearman rho between the ranking order and the descending in-, out- and
// net-strength orderings of the graph; nullopt where strength is constant.
CentralityAlignment centrality_alignment(const WeightedInteractionGraph& graph,
                                         const std::vector<ArgumentId>& ranking);

} // namespace grasp
