#pragma once
// Closed-form structural ranking baselines. All of them score arguments from
// the attack matrix alone; none of them iterate.

#include <optional>
#include <string>

#include "grasp/graph.hpp"

namespace grasp {

enum class BaselineKind {
    HCategorizer,       // s_j = 1 / (1 + sum_i W_ij)
    KatzAttack,         // c = (I - lambda W^T)^{-1} 1,  s_j = 1 / c_j
    DefenseRatio,       // s_j = (1 + sum_k (W^2)_kj) / (1 + sum_i W_ij)
    BinaryIndegree,     // s_j = 1 / (1 + #{i : W_ij > 0})
    MaxIncomingAttack,  // s_j = 1 / (1 + max_i W_ij)
};

const char* baseline_kind_name(BaselineKind kind);
std::optional<BaselineKind> baseline_kind_from_name(const std::string& name);

struct BaselineOptions {
    // Katz discount; when absent, 0.9 / ||W||_1 is used, which keeps the
    // Neumann series of (I - lambda W^T)^{-1} convergent.
    std::optional<double> katz_lambda;
};

Vector baseline_scores(const WeightedInteractionGraph& graph, BaselineKind kind,
                       const BaselineOptions& options = {});

} // namespace grasp
