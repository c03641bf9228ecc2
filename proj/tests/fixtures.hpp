#pragma once
// Shared fixtures and independent oracles for the test suites. Oracles are
// deliberately written against the textbook definitions (triple-loop products,
// bubble-sort swap counting, brute-force enumeration) so they share no code
// with the implementation paths they check.

#include <cstdint>
#include <string>
#include <vector>

#include "grasp/graph.hpp"
#include "grasp/rng.hpp"

namespace grasp::test {

// Four arguments: a3 attacks a1 with weight 1, a4 attacks a3 with weight 1,
// a2 weakly attacks a4 with weight 0.3. The induced two-hop defense matrix
// has d41 = 1 (a4 defends a1) and d23 = 0.3 (a2 weakly defends a3). The
// graph exhibits a rank reversal between the first two iterations of the
// undamped operator.
inline WeightedInteractionGraph four_node_reinstatement_graph() {
    WeightedInteractionGraph graph;
    graph.arguments = {"a1", "a2", "a3", "a4"};
    graph.attacks = Matrix::Zero(4, 4);
    graph.attacks(2, 0) = 1.0;  // a3 -> a1
    graph.attacks(3, 2) = 1.0;  // a4 -> a3
    graph.attacks(1, 3) = 0.3;  // a2 -> a4
    graph.defenses = derive_defense(graph.attacks, DefenseMode::WSquared);
    graph.defense_provenance = DefenseMode::WSquared;
    return validate_graph(std::move(graph));
}

inline std::vector<ArgumentId> numbered_arguments(int n) {
    std::vector<ArgumentId> ids;
    for (int i = 1; i <= n; ++i) ids.push_back("a" + std::to_string(i));
    return ids;
}

// Random attack matrix with entries in [0, 1], zero diagonal.
inline Matrix random_attack_matrix(Rng& rng, int n, double density = 0.7) {
    Matrix w = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && rng.bernoulli(density)) w(i, j) = rng.uniform();
        }
    }
    return w;
}

inline WeightedInteractionGraph random_graph(Rng& rng, int n, double density = 0.7) {
    WeightedInteractionGraph graph;
    graph.arguments = numbered_arguments(n);
    graph.attacks = random_attack_matrix(rng, n, density);
    graph.defenses = derive_defense(graph.attacks, DefenseMode::WSquared);
    graph.defense_provenance = DefenseMode::WSquared;
    return validate_graph(std::move(graph));
}

// O(n^3) triple-loop product oracle.
inline Matrix matmul_oracle(const Matrix& a, const Matrix& b) {
    Matrix c = Matrix::Zero(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            double sum = 0.0;
            for (Eigen::Index k = 0; k < a.cols(); ++k) sum += a(i, k) * b(k, j);
            c(i, j) = sum;
        }
    }
    return c;
}

// Textbook Pearson correlation of two equally long vectors.
inline double pearson_oracle(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double cov = 0.0, vx = 0.0, vy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        cov += (x[i] - mx) * (y[i] - my);
        vx += (x[i] - mx) * (x[i] - mx);
        vy += (y[i] - my) * (y[i] - my);
    }
    return cov / std::sqrt(vx * vy);
}

// Bubble-sort swap count: the number of adjacent transpositions needed to
// sort the position sequence, which equals the discordant pair count.
inline std::int64_t bubble_swap_oracle(std::vector<std::size_t> positions) {
    std::int64_t swaps = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < positions.size(); ++i) {
            if (positions[i] > positions[i + 1]) {
                std::swap(positions[i], positions[i + 1]);
                ++swaps;
                changed = true;
            }
        }
    }
    return swaps;
}

// Kahn's algorithm; true when the positive entries of W form a DAG.
inline bool is_acyclic_oracle(const Matrix& w) {
    const Eigen::Index n = w.rows();
    std::vector<int> indegree(static_cast<std::size_t>(n), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (w(i, j) > 0.0) ++indegree[static_cast<std::size_t>(j)];
        }
    }
    std::vector<Eigen::Index> queue;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (indegree[static_cast<std::size_t>(j)] == 0) queue.push_back(j);
    }
    Eigen::Index removed = 0;
    while (!queue.empty()) {
        const Eigen::Index u = queue.back();
        queue.pop_back();
        ++removed;
        for (Eigen::Index v = 0; v < n; ++v) {
            if (w(u, v) > 0.0 && --indegree[static_cast<std::size_t>(v)] == 0) {
                queue.push_back(v);
            }
        }
    }
    return removed == n;
}

// Random permutation of 1-based ids a1..an.
inline std::vector<ArgumentId> random_ranking(Rng& rng, int n) {
    std::vector<ArgumentId> ids = numbered_arguments(n);
    for (int i = n - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i + 1)));
        std::swap(ids[static_cast<std::size_t>(i)], ids[j]);
    }
    return ids;
}

} // namespace grasp::test
