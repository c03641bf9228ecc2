#include "grasp/rank_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "grasp/grasp_operator.hpp"

namespace grasp {

namespace {

using PositionMap = std::unordered_map<ArgumentId, std::size_t>;

PositionMap positions_of(const std::vector<ArgumentId>& ranking) {
    PositionMap positions;
    positions.reserve(ranking.size());
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        if (!positions.emplace(ranking[i], i).second) {
            throw Error(ErrorCode::MismatchedItems,
                        "ranking contains duplicate id: " + ranking[i]);
        }
    }
    return positions;
}

// Positions of r2's items aligned to r1's order; throws when the item sets
// differ.
std::vector<std::size_t> aligned_positions(const std::vector<ArgumentId>& r1,
                                           const std::vector<ArgumentId>& r2) {
    if (r1.size() != r2.size()) {
        throw Error(ErrorCode::MismatchedItems, "rankings have different lengths");
    }
    const PositionMap pos2 = positions_of(r2);
    positions_of(r1);  // duplicate check on r1
    std::vector<std::size_t> aligned(r1.size());
    for (std::size_t i = 0; i < r1.size(); ++i) {
        auto it = pos2.find(r1[i]);
        if (it == pos2.end()) {
            throw Error(ErrorCode::MismatchedItems,
                        "rankings cover different argument sets (" + r1[i] + ")");
        }
        aligned[i] = it->second;
    }
    return aligned;
}

std::int64_t discordant_pairs(const std::vector<ArgumentId>& r1,
                              const std::vector<ArgumentId>& r2) {
    const std::vector<std::size_t> pos = aligned_positions(r1, r2);
    std::int64_t discordant = 0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
            if (pos[i] > pos[j]) ++discordant;
        }
    }
    return discordant;
}

std::int64_t pair_count(std::size_t n) {
    return static_cast<std::int64_t>(n) * (static_cast<std::int64_t>(n) - 1) / 2;
}

std::vector<ArgumentId> sorted_item_set(const std::vector<Ranking>& rankings) {
    if (rankings.empty()) {
        throw Error(ErrorCode::MismatchedItems, "no rankings given");
    }
    std::vector<ArgumentId> items = rankings.front().order;
    std::sort(items.begin(), items.end());
    for (const Ranking& r : rankings) {
        std::vector<ArgumentId> other = r.order;
        std::sort(other.begin(), other.end());
        if (other != items) {
            throw Error(ErrorCode::MismatchedItems,
                        "rankings cover different argument sets (source " + r.source + ")");
        }
    }
    return items;
}

} // namespace

double kendall_tau(const std::vector<ArgumentId>& r1, const std::vector<ArgumentId>& r2) {
    const std::size_t n = r1.size();
    if (n < 2) {
        aligned_positions(r1, r2);
        return 1.0;
    }
    const std::int64_t total = pair_count(n);
    const std::int64_t discordant = discordant_pairs(r1, r2);
    return static_cast<double>(total - 2 * discordant) / static_cast<double>(total);
}

double spearman_rho(const std::vector<ArgumentId>& r1, const std::vector<ArgumentId>& r2) {
    const std::vector<std::size_t> pos = aligned_positions(r1, r2);
    const std::size_t n = pos.size();
    if (n < 2) return 1.0;
    std::int64_t sum_d2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t d =
            static_cast<std::int64_t>(i) - static_cast<std::int64_t>(pos[i]);
        sum_d2 += d * d;
    }
    const double nn = static_cast<double>(n);
    return 1.0 - 6.0 * static_cast<double>(sum_d2) / (nn * (nn * nn - 1.0));
}

double swap_distance(const std::vector<ArgumentId>& r1, const std::vector<ArgumentId>& r2,
                     bool normalized) {
    const std::int64_t discordant = discordant_pairs(r1, r2);
    if (!normalized) return static_cast<double>(discordant);
    const std::int64_t total = pair_count(r1.size());
    return total > 0 ? static_cast<double>(discordant) / static_cast<double>(total) : 0.0;
}

double top_k_overlap(const std::vector<ArgumentId>& r1, const std::vector<ArgumentId>& r2,
                     std::size_t k) {
    if (k == 0 || k > r1.size() || k > r2.size()) {
        throw Error(ErrorCode::KTooLarge, "k must lie in [1, n]");
    }
    const std::unordered_set<ArgumentId> top1(r1.begin(), r1.begin() + k);
    std::size_t shared = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (top1.count(r2[i])) ++shared;
    }
    return static_cast<double>(shared) / static_cast<double>(k);
}

AgreementReport agreement_report(const std::vector<Ranking>& rankings) {
    if (rankings.size() < 2) {
        throw Error(ErrorCode::MismatchedItems, "agreement needs at least two rankings");
    }
    sorted_item_set(rankings);

    AgreementReport report;
    const std::size_t n = rankings.front().order.size();
    const std::size_t k3 = std::min<std::size_t>(3, n);
    const std::size_t k5 = std::min<std::size_t>(5, n);
    for (std::size_t a = 0; a < rankings.size(); ++a) {
        for (std::size_t b = a + 1; b < rankings.size(); ++b) {
            PairAgreement pair;
            pair.source_a = rankings[a].source;
            pair.source_b = rankings[b].source;
            pair.kendall_tau = kendall_tau(rankings[a].order, rankings[b].order);
            pair.spearman_rho = spearman_rho(rankings[a].order, rankings[b].order);
            pair.swap_norm = swap_distance(rankings[a].order, rankings[b].order, true);
            pair.top3_overlap = top_k_overlap(rankings[a].order, rankings[b].order, k3);
            pair.top5_overlap = top_k_overlap(rankings[a].order, rankings[b].order, k5);
            report.pairs.push_back(std::move(pair));
        }
    }

    const double count = static_cast<double>(report.pairs.size());
    for (const PairAgreement& p : report.pairs) {
        report.mean_kendall_tau += p.kendall_tau / count;
        report.mean_spearman_rho += p.spearman_rho / count;
        report.mean_swap_norm += p.swap_norm / count;
        report.mean_top3_overlap += p.top3_overlap / count;
        report.mean_top5_overlap += p.top5_overlap / count;
    }
    return report;
}

std::vector<ArgumentId> borda_consensus(const std::vector<Ranking>& rankings) {
    const std::vector<ArgumentId> items = sorted_item_set(rankings);
    const std::size_t n = items.size();

    std::map<ArgumentId, std::int64_t> scores;
    for (const ArgumentId& id : items) scores[id] = 0;
    for (const Ranking& r : rankings) {
        for (std::size_t pos = 0; pos < r.order.size(); ++pos) {
            scores[r.order[pos]] += static_cast<std::int64_t>(n - pos - 1);
        }
    }

    std::vector<ArgumentId> result = items;
    std::sort(result.begin(), result.end(), [&](const ArgumentId& a, const ArgumentId& b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    return result;
}

std::vector<ArgumentId> kemeny_greedy(const std::vector<Ranking>& rankings) {
    std::vector<ArgumentId> remaining = sorted_item_set(rankings);

    std::vector<PositionMap> positions;
    positions.reserve(rankings.size());
    for (const Ranking& r : rankings) positions.push_back(positions_of(r.order));

    std::vector<ArgumentId> result;
    result.reserve(remaining.size());
    while (!remaining.empty()) {
        // Appending x now places it above every other unplaced item; the cost
        // is the number of input pairs that prefer one of those items over x.
        ArgumentId best;
        std::int64_t best_cost = -1;
        for (const ArgumentId& x : remaining) {
            std::int64_t cost = 0;
            for (const PositionMap& pos : positions) {
                const std::size_t px = pos.at(x);
                for (const ArgumentId& y : remaining) {
                    if (y != x && pos.at(y) < px) ++cost;
                }
            }
            if (best_cost < 0 || cost < best_cost || (cost == best_cost && x < best)) {
                best_cost = cost;
                best = x;
            }
        }
        result.push_back(best);
        remaining.erase(std::find(remaining.begin(), remaining.end(), best));
    }
    return result;
}

std::vector<ArgumentId> kemeny_exact(const std::vector<Ranking>& rankings) {
    std::vector<ArgumentId> items = sorted_item_set(rankings);
    if (items.size() > 8) {
        throw Error(ErrorCode::TooLarge, "exact Kemeny is guarded to n <= 8");
    }

    std::vector<ArgumentId> best;
    double best_distance = 0.0;
    std::vector<ArgumentId> candidate = items;  // starts at the lexicographic minimum
    do {
        const double distance = total_kendall_distance(candidate, rankings);
        if (best.empty() || distance < best_distance) {
            best = candidate;
            best_distance = distance;
        }
    } while (std::next_permutation(candidate.begin(), candidate.end()));
    return best;
}

double total_kendall_distance(const std::vector<ArgumentId>& candidate,
                              const std::vector<Ranking>& rankings) {
    double total = 0.0;
    for (const Ranking& r : rankings) {
        total += swap_distance(candidate, r.order, false);
    }
    return total;
}

ConsensusReport consensus_divergence(const std::vector<Ranking>& rankings) {
    if (rankings.size() < 2) {
        throw Error(ErrorCode::MismatchedItems, "consensus needs at least two rankings");
    }

    ConsensusReport report;
    report.borda_ranking = borda_consensus(rankings);
    report.kemeny_greedy_ranking = kemeny_greedy(rankings);

    for (const Ranking& r : rankings) {
        SourceDivergence d;
        d.source = r.source;
        d.borda_distance = swap_distance(r.order, report.borda_ranking, false);
        d.kemeny_distance = swap_distance(r.order, report.kemeny_greedy_ranking, false);
        report.per_source.push_back(std::move(d));
    }

    const SourceDivergence* outlier = &report.per_source.front();
    for (const SourceDivergence& d : report.per_source) {
        if (d.kemeny_distance > outlier->kemeny_distance ||
            (d.kemeny_distance == outlier->kemeny_distance &&
             d.borda_distance > outlier->borda_distance)) {
            outlier = &d;
        }
    }
    report.outlier = outlier->source;
    return report;
}

CentralityAlignment centrality_alignment(const WeightedInteractionGraph& graph,
                                         const std::vector<ArgumentId>& ranking) {
    if (ranking.size() != graph.arguments.size()) {
        throw Error(ErrorCode::MismatchedItems,
                    "ranking does not cover the graph's argument set");
    }

    const Vector in_strength = graph.attacks.colwise().sum();
    const Vector out_strength = graph.attacks.rowwise().sum();
    const Vector net_strength = out_strength - in_strength;

    auto alignment = [&](const Vector& strength) -> std::optional<double> {
        if (strength.size() == 0 || strength.maxCoeff() == strength.minCoeff()) {
            return std::nullopt;  // constant strength: correlation undefined
        }
        const std::vector<ArgumentId> strength_order =
            scores_to_ranking(strength, graph.arguments);
        return spearman_rho(ranking, strength_order);
    };

    CentralityAlignment result;
    result.in_strength_rho = alignment(in_strength);
    result.out_strength_rho = alignment(out_strength);
    result.net_strength_rho = alignment(net_strength);
    return result;
}

} // namespace grasp
