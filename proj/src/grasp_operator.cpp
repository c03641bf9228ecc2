#include "grasp/grasp_operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "grasp/rng.hpp"

namespace grasp {

void GraspConfig::validate(Eigen::Index n) const {
    if (!(alpha >= 0.0) || !(beta >= 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "alpha and beta must be >= 0");
    }
    if (!(gamma > 0.0) || gamma > 1.0) {
        throw Error(ErrorCode::InvalidConfig, "gamma must lie in (0, 1]");
    }
    if (max_iters < 1) {
        throw Error(ErrorCode::InvalidConfig, "max_iters must be >= 1");
    }
    if (!(tol > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "tol must be > 0");
    }
    if (s0) {
        if (s0->size() != n) {
            throw Error(ErrorCode::DimensionMismatch,
                        "initial strength vector length does not match graph");
        }
        if ((s0->array() < 0.0).any() || !s0->allFinite()) {
            throw Error(ErrorCode::InvalidConfig,
                        "initial strengths must be finite and >= 0");
        }
    }
}

Vector apply_G(const WeightedInteractionGraph& graph, const Vector& s,
               double alpha, double beta) {
    if (s.size() != graph.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "strength vector length does not match graph");
    }
    if (!s.allFinite() || (s.array() < 0.0).any()) {
        throw Error(ErrorCode::NonFiniteInput,
                    "strength vector must be finite and >= 0");
    }
    const Vector attack = graph.attacks.transpose() * s;
    const Vector defense = graph.defenses.transpose() * s;
    const Eigen::ArrayXd numerator = 1.0 + beta * defense.array();
    const Eigen::ArrayXd denominator = 1.0 + alpha * attack.array();
    return numerator / (denominator + kDenominatorEpsilon);
}

Vector apply_damped(const WeightedInteractionGraph& graph, const Vector& s,
                    const GraspConfig& config) {
    config.validate(graph.size());
    return (1.0 - config.gamma) * s + config.gamma * apply_G(graph, s, config.alpha, config.beta);
}

FixedPointResult iterate_to_fixed_point(const WeightedInteractionGraph& graph,
                                        const GraspConfig& config) {
    config.validate(graph.size());

    FixedPointResult result;
    Vector s = config.s0 ? *config.s0 : Vector::Ones(graph.size());
    result.trace.per_iteration_scores.push_back(s);
    result.trace.per_iteration_ranks.push_back(scores_to_rank_positions(s, graph.arguments));

    double residual = std::numeric_limits<double>::infinity();
    int iterations = 0;
    while (iterations < config.max_iters) {
        const Vector next = apply_damped(graph, s, config);
        residual = (next - s).cwiseAbs().maxCoeff();
        s = next;
        ++iterations;
        result.trace.per_iteration_scores.push_back(s);
        result.trace.per_iteration_ranks.push_back(
            scores_to_rank_positions(s, graph.arguments));
        if (residual < config.tol) break;
    }

    result.trace.iterations_used = iterations;
    result.trace.final_residual = residual;
    result.trace.converged = residual < config.tol;
    result.scores = std::move(s);
    return result;
}

namespace {

// Uniform draw from S = {s : ||s - 1||_inf <= 1} intersected with the
// nonnegative orthant; coordinates lie in [0, 2].
Vector sample_invariant_set(Rng& rng, Eigen::Index n) {
    Vector s(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        s(i) = std::max(0.0, rng.uniform(0.0, 2.0));
    }
    return s;
}

} // namespace

ContractionReport contraction_check(const WeightedInteractionGraph& graph,
                                    double alpha, double beta,
                                    std::size_t samples, std::uint64_t seed) {
    if (samples < 1) {
        throw Error(ErrorCode::InvalidConfig, "at least one sample required");
    }

    ContractionReport report;
    report.w_norm_1 = induced_one_norm(graph.attacks);
    report.d_norm_1 = induced_one_norm(graph.defenses);
    report.alpha_bound = report.w_norm_1 > 0.0
                             ? 1.0 / (4.0 * report.w_norm_1)
                             : std::numeric_limits<double>::infinity();
    report.beta_bound = report.d_norm_1 > 0.0
                            ? 1.0 / (4.0 * report.d_norm_1)
                            : std::numeric_limits<double>::infinity();
    report.within_theorem_bounds =
        alpha <= report.alpha_bound && beta <= report.beta_bound;
    report.samples = samples;

    Rng rng(seed);
    const Eigen::Index n = graph.size();
    for (std::size_t k = 0; k < samples; ++k) {
        const Vector x = sample_invariant_set(rng, n);
        const Vector y = sample_invariant_set(rng, n);
        const Vector gx = apply_G(graph, x, alpha, beta);
        const Vector gy = apply_G(graph, y, alpha, beta);

        const double dist = (x - y).cwiseAbs().maxCoeff();
        if (dist > 0.0) {
            const double ratio = (gx - gy).cwiseAbs().maxCoeff() / dist;
            report.empirical_lipschitz = std::max(report.empirical_lipschitz, ratio);
        }
        const double defect_x = (gx.array() - 1.0).abs().maxCoeff();
        const double defect_y = (gy.array() - 1.0).abs().maxCoeff();
        report.max_invariance_defect =
            std::max({report.max_invariance_defect, defect_x, defect_y});
    }
    return report;
}

double fixed_point_agreement_damped_vs_undamped(const WeightedInteractionGraph& graph,
                                                const GraspConfig& config) {
    GraspConfig undamped = config;
    undamped.gamma = 1.0;

    const FixedPointResult a = iterate_to_fixed_point(graph, undamped);
    const FixedPointResult b = iterate_to_fixed_point(graph, config);
    if (!a.trace.converged || !b.trace.converged) {
        throw Error(ErrorCode::NonConvergence,
                    "fixed-point iteration did not converge within budget");
    }
    return (a.scores - b.scores).cwiseAbs().maxCoeff();
}

namespace {

std::vector<std::size_t> ranked_indices(const Vector& scores,
                                        const std::vector<ArgumentId>& arguments) {
    if (scores.size() != static_cast<Eigen::Index>(arguments.size())) {
        throw Error(ErrorCode::DimensionMismatch,
                    "score vector length does not match argument list");
    }
    std::vector<std::size_t> order(arguments.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double sa = scores(static_cast<Eigen::Index>(a));
        const double sb = scores(static_cast<Eigen::Index>(b));
        if (sa != sb) return sa > sb;
        return arguments[a] < arguments[b];
    });
    return order;
}

} // namespace

std::vector<ArgumentId> scores_to_ranking(const Vector& scores,
                                          const std::vector<ArgumentId>& arguments) {
    std::vector<ArgumentId> ranking;
    ranking.reserve(arguments.size());
    for (std::size_t idx : ranked_indices(scores, arguments)) {
        ranking.push_back(arguments[idx]);
    }
    return ranking;
}

std::vector<int> scores_to_rank_positions(const Vector& scores,
                                          const std::vector<ArgumentId>& arguments) {
    const std::vector<std::size_t> order = ranked_indices(scores, arguments);
    std::vector<int> positions(arguments.size(), 0);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        positions[order[pos]] = static_cast<int>(pos) + 1;
    }
    return positions;
}

} // namespace grasp
