#pragma once
// Weighted interaction graphs: the attack matrix W, the defense matrix D,
// validation, defense derivation, normalization variants and geometry stats.

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "grasp/error.hpp"

namespace grasp {

using ArgumentId = std::string;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// How the defense matrix was obtained from the attack matrix.
enum class DefenseMode {
    Explicit,      // D supplied by the caller / input file
    WSquared,      // D = W*W, two-hop counter-attack paths (default)
    WTranspose,    // D = W^T, reciprocal attacks as defense
    WFourth,       // D = W^4, even-length reinstatement chains
    W2PlusHalfW4,  // D = W^2 + 0.5*W^4
};

const char* defense_mode_name(DefenseMode mode);
std::optional<DefenseMode> defense_mode_from_name(const std::string& name);

enum class NormScheme {
    None,
    LInf,  // divide W by its maximum entry
    L1,    // divide W by the induced 1-norm (maximum column sum)
};

const char* norm_scheme_name(NormScheme scheme);
std::optional<NormScheme> norm_scheme_from_name(const std::string& name);

// Arguments plus dense attack/defense matrices. Row i attacks column j:
// attacks(i, j) is the strength with which arguments[i] attacks arguments[j].
struct WeightedInteractionGraph {
    std::vector<ArgumentId> arguments;
    Matrix attacks;   // entries in [0, 1], zero diagonal
    Matrix defenses;  // entries >= 0, zero diagonal
    DefenseMode defense_provenance = DefenseMode::WSquared;

    Eigen::Index size() const { return static_cast<Eigen::Index>(arguments.size()); }

    // Index of an argument id; throws UnknownArgument if absent.
    Eigen::Index index_of(const ArgumentId& id) const;
};

struct GraphStats {
    double density_d = 0.0;          // fraction of positive off-diagonal entries
    double mean_mu = 0.0;            // mean positive off-diagonal attack strength
    double threshold_tau = 0.0;
    std::size_t thresholded_edge_count = 0;  // off-diagonal entries > tau
};

// Checks all type invariants and returns the graph with both diagonals
// clamped to zero. Self-attack weights are clamped, not rejected.
WeightedInteractionGraph validate_graph(WeightedInteractionGraph graph);

// D from W under the given mode; the diagonal of the result is zeroed.
// Explicit is not a derivation and is rejected here.
Matrix derive_defense(const Matrix& attacks, DefenseMode mode);

// Global normalization of W. An all-zero matrix passes through unchanged.
Matrix normalize_attacks(const Matrix& attacks, NormScheme scheme);

// The "+D-bar" rescale: divide D by its maximum entry when that maximum
// exceeds 1, otherwise leave it unchanged.
Matrix rescale_defense(const Matrix& defenses);

// Induced 1-norm, max_j sum_i |a_ij| (maximum absolute column sum).
double induced_one_norm(const Matrix& m);

// Density, mean positive strength and thresholded edge count; density and
// mean are computed before thresholding.
GraphStats graph_stats(const Matrix& attacks, double threshold_tau);

// Pearson correlation of the vectorized off-diagonal entries of two equally
// sized matrices; nullopt when either vector has zero variance.
std::optional<double> matrix_pearson(const Matrix& a, const Matrix& b);

} // namespace grasp
