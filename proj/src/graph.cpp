#include "grasp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace grasp {

const char* defense_mode_name(DefenseMode mode) {
    switch (mode) {
        case DefenseMode::Explicit: return "explicit";
        case DefenseMode::WSquared: return "w_squared";
        case DefenseMode::WTranspose: return "w_transpose";
        case DefenseMode::WFourth: return "w_fourth";
        case DefenseMode::W2PlusHalfW4: return "w2_plus_half_w4";
    }
    return "unknown";
}

std::optional<DefenseMode> defense_mode_from_name(const std::string& name) {
    if (name == "explicit") return DefenseMode::Explicit;
    if (name == "w_squared") return DefenseMode::WSquared;
    if (name == "w_transpose") return DefenseMode::WTranspose;
    if (name == "w_fourth") return DefenseMode::WFourth;
    if (name == "w2_plus_half_w4") return DefenseMode::W2PlusHalfW4;
    return std::nullopt;
}

const char* norm_scheme_name(NormScheme scheme) {
    switch (scheme) {
        case NormScheme::None: return "none";
        case NormScheme::LInf: return "l_inf";
        case NormScheme::L1: return "l_1";
    }
    return "unknown";
}

std::optional<NormScheme> norm_scheme_from_name(const std::string& name) {
    if (name == "none") return NormScheme::None;
    if (name == "l_inf") return NormScheme::LInf;
    if (name == "l_1") return NormScheme::L1;
    return std::nullopt;
}

Eigen::Index WeightedInteractionGraph::index_of(const ArgumentId& id) const {
    auto it = std::find(arguments.begin(), arguments.end(), id);
    if (it == arguments.end()) {
        throw Error(ErrorCode::UnknownArgument, "unknown argument id: " + id);
    }
    return static_cast<Eigen::Index>(it - arguments.begin());
}

WeightedInteractionGraph validate_graph(WeightedInteractionGraph graph) {
    const Eigen::Index n = graph.size();

    std::unordered_set<std::string> seen;
    for (const auto& id : graph.arguments) {
        if (id.empty()) {
            throw Error(ErrorCode::InvalidConfig, "empty argument id");
        }
        if (!seen.insert(id).second) {
            throw Error(ErrorCode::DuplicateArgumentId, "duplicate argument id: " + id);
        }
    }

    auto check_square = [n](const Matrix& m, const char* label) {
        if (m.rows() != m.cols()) {
            throw Error(ErrorCode::NonSquareMatrix,
                        std::string(label) + " matrix is not square");
        }
        if (m.rows() != n) {
            throw Error(ErrorCode::DimensionMismatch,
                        std::string(label) + " matrix size does not match argument count");
        }
    };
    check_square(graph.attacks, "attack");
    check_square(graph.defenses, "defense");

    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double w = graph.attacks(i, j);
            const double d = graph.defenses(i, j);
            if (!std::isfinite(w) || !std::isfinite(d)) {
                throw Error(ErrorCode::NonFiniteInput, "non-finite matrix entry");
            }
            if (i == j) continue;  // diagonal is clamped below
            if (w < 0.0) {
                throw Error(ErrorCode::NegativeWeight,
                            "attack weight below zero at (" + graph.arguments[i] + ", " +
                                graph.arguments[j] + ")");
            }
            if (w > 1.0) {
                throw Error(ErrorCode::WeightAboveOne,
                            "attack weight above one at (" + graph.arguments[i] + ", " +
                                graph.arguments[j] + ")");
            }
            if (d < 0.0) {
                throw Error(ErrorCode::NegativeWeight,
                            "defense weight below zero at (" + graph.arguments[i] + ", " +
                                graph.arguments[j] + ")");
            }
        }
    }

    graph.attacks.diagonal().setZero();
    graph.defenses.diagonal().setZero();
    return graph;
}

Matrix derive_defense(const Matrix& attacks, DefenseMode mode) {
    Matrix d;
    switch (mode) {
        case DefenseMode::WSquared:
            d = attacks * attacks;
            break;
        case DefenseMode::WTranspose:
            d = attacks.transpose();
            break;
        case DefenseMode::WFourth: {
            const Matrix w2 = attacks * attacks;
            d = w2 * w2;
            break;
        }
        case DefenseMode::W2PlusHalfW4: {
            const Matrix w2 = attacks * attacks;
            d = w2 + 0.5 * (w2 * w2);
            break;
        }
        case DefenseMode::Explicit:
            throw Error(ErrorCode::InvalidConfig,
                        "explicit defense mode has nothing to derive");
    }
    d.diagonal().setZero();
    return d;
}

double induced_one_norm(const Matrix& m) {
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

Matrix normalize_attacks(const Matrix& attacks, NormScheme scheme) {
    switch (scheme) {
        case NormScheme::None:
            return attacks;
        case NormScheme::LInf: {
            const double max = attacks.maxCoeff();
            return max > 0.0 ? Matrix(attacks / max) : attacks;
        }
        case NormScheme::L1: {
            const double norm = induced_one_norm(attacks);
            return norm > 0.0 ? Matrix(attacks / norm) : attacks;
        }
    }
    return attacks;
}

Matrix rescale_defense(const Matrix& defenses) {
    if (defenses.size() == 0) return defenses;
    const double max = defenses.maxCoeff();
    return max > 1.0 ? Matrix(defenses / max) : defenses;
}

GraphStats graph_stats(const Matrix& attacks, double threshold_tau) {
    GraphStats stats;
    stats.threshold_tau = threshold_tau;

    const Eigen::Index n = attacks.rows();
    std::size_t positive = 0;
    double positive_sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) continue;
            const double w = attacks(i, j);
            if (w > 0.0) {
                ++positive;
                positive_sum += w;
            }
            if (w > threshold_tau) ++stats.thresholded_edge_count;
        }
    }

    const std::size_t off_diagonal = n > 1 ? static_cast<std::size_t>(n) * (n - 1) : 0;
    stats.density_d = off_diagonal > 0 ? static_cast<double>(positive) / off_diagonal : 0.0;
    // A graph with no positive off-diagonal entry has mean strength 0.
    stats.mean_mu = positive > 0 ? positive_sum / static_cast<double>(positive) : 0.0;
    return stats;
}

std::optional<double> matrix_pearson(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "matrices must have identical dimensions");
    }

    std::vector<double> x, y;
    const Eigen::Index n = a.rows();
    x.reserve(static_cast<std::size_t>(n) * n);
    y.reserve(static_cast<std::size_t>(n) * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (i == j) continue;
            x.push_back(a(i, j));
            y.push_back(b(i, j));
        }
    }
    if (x.size() < 2) return std::nullopt;

    const double count = static_cast<double>(x.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        mean_x += x[k];
        mean_y += y[k];
    }
    mean_x /= count;
    mean_y /= count;

    double cov = 0.0, var_x = 0.0, var_y = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double dx = x[k] - mean_x;
        const double dy = y[k] - mean_y;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    if (var_x == 0.0 || var_y == 0.0) return std::nullopt;
    return cov / std::sqrt(var_x * var_y);
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NegativeWeight: return "NegativeWeight";
        case ErrorCode::WeightAboveOne: return "WeightAboveOne";
        case ErrorCode::NonSquareMatrix: return "NonSquareMatrix";
        case ErrorCode::DuplicateArgumentId: return "DuplicateArgumentId";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NonFiniteInput: return "NonFiniteInput";
        case ErrorCode::UnknownArgument: return "UnknownArgument";
        case ErrorCode::ScoreOutOfRange: return "ScoreOutOfRange";
        case ErrorCode::DuplicatePair: return "DuplicatePair";
        case ErrorCode::MalformedRecord: return "MalformedRecord";
        case ErrorCode::MismatchedItems: return "MismatchedItems";
        case ErrorCode::KTooLarge: return "KTooLarge";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

} // namespace grasp
