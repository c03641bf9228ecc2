#include "grasp/baselines.hpp"

#include <Eigen/LU>
#include <cmath>

#include "grasp/grasp_operator.hpp"

namespace grasp {

const char* baseline_kind_name(BaselineKind kind) {
    switch (kind) {
        case BaselineKind::HCategorizer: return "h_categorizer";
        case BaselineKind::KatzAttack: return "katz_attack";
        case BaselineKind::DefenseRatio: return "defense_ratio";
        case BaselineKind::BinaryIndegree: return "binary_indegree";
        case BaselineKind::MaxIncomingAttack: return "max_incoming_attack";
    }
    return "unknown";
}

std::optional<BaselineKind> baseline_kind_from_name(const std::string& name) {
    if (name == "h_categorizer") return BaselineKind::HCategorizer;
    if (name == "katz_attack") return BaselineKind::KatzAttack;
    if (name == "defense_ratio") return BaselineKind::DefenseRatio;
    if (name == "binary_indegree") return BaselineKind::BinaryIndegree;
    if (name == "max_incoming_attack") return BaselineKind::MaxIncomingAttack;
    return std::nullopt;
}

namespace {

Vector katz_attack_scores(const Matrix& w, std::optional<double> lambda_opt) {
    const Eigen::Index n = w.rows();
    const double norm = induced_one_norm(w);
    double lambda;
    if (lambda_opt) {
        lambda = *lambda_opt;
        if (!(lambda > 0.0)) {
            throw Error(ErrorCode::InvalidConfig, "katz lambda must be > 0");
        }
    } else {
        lambda = norm > 0.0 ? 0.9 / norm : 0.9;
    }

    const Matrix system = Matrix::Identity(n, n) - lambda * w.transpose();
    const Vector ones = Vector::Ones(n);
    Eigen::PartialPivLU<Matrix> lu(system);
    const Vector c = lu.solve(ones);

    const double residual = (system * c - ones).cwiseAbs().maxCoeff();
    if (!c.allFinite() || residual >= 1e-8) {
        throw Error(ErrorCode::SingularSystem,
                    "katz linear system is singular or ill-conditioned");
    }
    return (1.0 / c.array()).matrix();
}

} // namespace

Vector baseline_scores(const WeightedInteractionGraph& graph, BaselineKind kind,
                       const BaselineOptions& options) {
    const Matrix& w = graph.attacks;
    const Eigen::Index n = w.rows();

    switch (kind) {
        case BaselineKind::HCategorizer: {
            const Vector incoming = w.colwise().sum();
            return (1.0 / (1.0 + incoming.array())).matrix();
        }
        case BaselineKind::KatzAttack:
            return katz_attack_scores(w, options.katz_lambda);
        case BaselineKind::DefenseRatio: {
            // One evaluation of the propagation update at the unit start with
            // unit gains; shares the zero-diagonal W^2 and the guarded divide.
            Matrix w2 = w * w;
            w2.diagonal().setZero();
            const Vector defense = w2.colwise().sum();
            const Vector incoming = w.colwise().sum();
            return ((1.0 + defense.array()) /
                    (1.0 + incoming.array() + kDenominatorEpsilon))
                .matrix();
        }
        case BaselineKind::BinaryIndegree: {
            Vector scores(n);
            for (Eigen::Index j = 0; j < n; ++j) {
                const double indegree = (w.col(j).array() > 0.0).count();
                scores(j) = 1.0 / (1.0 + indegree);
            }
            return scores;
        }
        case BaselineKind::MaxIncomingAttack: {
            Vector scores(n);
            for (Eigen::Index j = 0; j < n; ++j) {
                scores(j) = 1.0 / (1.0 + w.col(j).maxCoeff());
            }
            return scores;
        }
    }
    throw Error(ErrorCode::InvalidConfig, "unknown baseline kind");
}

} // namespace grasp
