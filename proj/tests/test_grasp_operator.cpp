#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "grasp/grasp_operator.hpp"
#include "grasp/testbed.hpp"

using namespace grasp;
using namespace grasp::test;

namespace {

GraspConfig undamped(double alpha, double beta) {
    GraspConfig config;
    config.alpha = alpha;
    config.beta = beta;
    config.gamma = 1.0;
    return config;
}

// Per-graph gains satisfying the contraction theorem's hypotheses.
std::pair<double, double> theorem_gains(const WeightedInteractionGraph& graph) {
    const double wn = induced_one_norm(graph.attacks);
    const double dn = induced_one_norm(graph.defenses);
    return {wn > 0.0 ? 1.0 / (4.0 * wn) : 0.0, dn > 0.0 ? 1.0 / (4.0 * dn) : 0.0};
}

} // namespace

TEST_CASE("golden trajectory of the reinstatement graph") {
    const auto graph = four_node_reinstatement_graph();
    GraspConfig config = undamped(1.0, 0.5);

    const FixedPointResult result = iterate_to_fixed_point(graph, config);
    const auto& scores = result.trace.per_iteration_scores;
    REQUIRE(scores.size() >= 4);

    const double expected[3][4] = {
        {0.750, 1.000, 0.575, 0.769},
        {0.879, 1.000, 0.650, 0.769},
        {0.839, 1.000, 0.650, 0.769},
    };
    for (int iter = 0; iter < 3; ++iter) {
        for (int j = 0; j < 4; ++j) {
            CHECK(std::abs(scores[static_cast<std::size_t>(iter + 1)](j) -
                           expected[iter][j]) < 5e-4);
        }
    }

    // a1 overtakes a4 between the first and second iterations.
    const auto& ranks = result.trace.per_iteration_ranks;
    CHECK(ranks[1] == std::vector<int>{3, 1, 4, 2});  // a2 > a4 > a1 > a3
    CHECK(ranks[2] == std::vector<int>{2, 1, 4, 3});  // a2 > a1 > a4 > a3
    CHECK(result.trace.converged);
    CHECK(scores_to_ranking(result.scores, graph.arguments) ==
          std::vector<ArgumentId>{"a2", "a1", "a4", "a3"});
}

TEST_CASE("single applications of the operator") {
    const auto graph = four_node_reinstatement_graph();

    SUBCASE("zero interaction matrices map everything to one") {
        WeightedInteractionGraph empty;
        empty.arguments = numbered_arguments(3);
        empty.attacks = Matrix::Zero(3, 3);
        empty.defenses = Matrix::Zero(3, 3);
        empty = validate_graph(std::move(empty));

        Vector s(3);
        s << 2.0, 0.0, 0.7;
        const Vector g = apply_G(empty, s, 1.0, 0.5);
        CHECK((g.array() - 1.0).abs().maxCoeff() < 1e-11);
    }

    SUBCASE("second iterate from the first") {
        Vector s(4);
        s << 0.75, 1.0, 0.575, 1.0 / 1.3;
        const Vector g = apply_G(graph, s, 1.0, 0.5);
        CHECK(std::abs(g(0) - 0.879) < 5e-4);
        CHECK(std::abs(g(1) - 1.000) < 5e-4);
        CHECK(std::abs(g(2) - 0.650) < 5e-4);
        CHECK(std::abs(g(3) - 0.769) < 5e-4);
    }

    SUBCASE("non-finite input is rejected") {
        Vector s(4);
        s << 1.0, std::numeric_limits<double>::quiet_NaN(), 1.0, 1.0;
        CHECK_THROWS_AS(apply_G(graph, s, 1.0, 0.5), Error);
        s << -1.0, 1.0, 1.0, 1.0;
        CHECK_THROWS_AS(apply_G(graph, s, 1.0, 0.5), Error);
    }
}

TEST_CASE("damping") {
    const auto graph = four_node_reinstatement_graph();

    SUBCASE("gamma = 1 equals the undamped operator") {
        Vector s(4);
        s << 0.4, 1.3, 0.8, 1.1;
        const Vector g = apply_G(graph, s, 1.0, 0.5);
        const Vector damped = apply_damped(graph, s, undamped(1.0, 0.5));
        CHECK((g - damped).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("gamma = 0.5 on zero matrices averages with one") {
        WeightedInteractionGraph empty;
        empty.arguments = {"a1", "a2"};
        empty.attacks = Matrix::Zero(2, 2);
        empty.defenses = Matrix::Zero(2, 2);
        empty = validate_graph(std::move(empty));

        GraspConfig config;
        config.gamma = 0.5;
        Vector s(2);
        s << 2.0, 0.0;
        const Vector out = apply_damped(empty, s, config);
        CHECK(out(0) == doctest::Approx(1.5).epsilon(1e-9));
        CHECK(out(1) == doctest::Approx(0.5).epsilon(1e-9));
    }

    SUBCASE("damped first step mixes the undamped image") {
        GraspConfig config = undamped(1.0, 0.5);
        config.gamma = 0.9;
        const Vector ones = Vector::Ones(4);
        const Vector g = apply_G(graph, ones, 1.0, 0.5);
        const Vector damped = apply_damped(graph, ones, config);
        const Vector expected = 0.1 * ones + 0.9 * g;
        CHECK((damped - expected).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("fixed-point iteration control") {
    SUBCASE("zero-interaction graph converges in one step to all ones") {
        WeightedInteractionGraph empty;
        empty.arguments = numbered_arguments(5);
        empty.attacks = Matrix::Zero(5, 5);
        empty.defenses = Matrix::Zero(5, 5);
        empty = validate_graph(std::move(empty));

        const FixedPointResult result = iterate_to_fixed_point(empty, GraspConfig{});
        CHECK(result.trace.converged);
        CHECK(result.trace.iterations_used == 1);
        CHECK((result.scores.array() - 1.0).abs().maxCoeff() < 1e-11);
    }

    SUBCASE("unattacked undefended arguments stay at the neutral baseline") {
        const auto graph = four_node_reinstatement_graph();
        const FixedPointResult result =
            iterate_to_fixed_point(graph, undamped(1.0, 0.5));
        // a2 is neither attacked nor defended.
        CHECK(std::abs(result.scores(1) - 1.0) < 1e-11);
    }

    SUBCASE("trace bookkeeping") {
        const auto graph = four_node_reinstatement_graph();
        GraspConfig config = undamped(1.0, 0.5);
        config.max_iters = 3;
        const FixedPointResult result = iterate_to_fixed_point(graph, config);
        CHECK(!result.trace.converged);
        CHECK(result.trace.iterations_used == 3);
        CHECK(result.trace.per_iteration_scores.size() == 4);
        CHECK(result.trace.final_residual >= config.tol);
    }

    SUBCASE("uniqueness: distinct starts reach the same fixed point") {
        Rng rng(907);
        for (int trial = 0; trial < 10; ++trial) {
            const auto graph = random_graph(rng, 10);
            const auto [alpha, beta] = theorem_gains(graph);
            GraspConfig config = undamped(alpha, beta);

            config.s0 = Vector::Ones(10) * 0.5;
            const Vector a = iterate_to_fixed_point(graph, config).scores;
            Vector start(10);
            for (int i = 0; i < 10; ++i) start(i) = rng.uniform(0.0, 2.0);
            config.s0 = start;
            const Vector b = iterate_to_fixed_point(graph, config).scores;
            CHECK((a - b).cwiseAbs().maxCoeff() < 1e-8);
        }
    }

    SUBCASE("positivity of all iterates") {
        Rng rng(911);
        const auto graph = random_graph(rng, 8);
        GraspConfig config;
        config.max_iters = 50;
        const FixedPointResult result = iterate_to_fixed_point(graph, config);
        for (const Vector& s : result.trace.per_iteration_scores) {
            CHECK(s.minCoeff() >= 0.0);
        }
    }
}

TEST_CASE("contraction and invariance checks") {
    SUBCASE("norm bounds of the reinstatement graph") {
        const auto graph = four_node_reinstatement_graph();
        const ContractionReport report = contraction_check(graph, 0.25, 0.25, 10, 5);
        CHECK(report.w_norm_1 == doctest::Approx(1.0));
        CHECK(report.d_norm_1 == doctest::Approx(1.0));
        CHECK(report.alpha_bound == doctest::Approx(0.25));
        CHECK(report.beta_bound == doctest::Approx(0.25));
        CHECK(report.within_theorem_bounds);
    }

    SUBCASE("a constant map has zero empirical Lipschitz ratio") {
        WeightedInteractionGraph empty;
        empty.arguments = {"a1", "a2", "a3"};
        empty.attacks = Matrix::Zero(3, 3);
        empty.defenses = Matrix::Zero(3, 3);
        empty = validate_graph(std::move(empty));
        const ContractionReport report = contraction_check(empty, 1.0, 1.0, 100, 7);
        CHECK(report.empirical_lipschitz < 1e-9);
    }

    SUBCASE("sampled ratios respect the proof bound at the theorem gains") {
        Rng rng(1013);
        for (int trial = 0; trial < 20; ++trial) {
            const auto graph = random_graph(rng, 8);
            const auto [alpha, beta] = theorem_gains(graph);
            const ContractionReport report =
                contraction_check(graph, alpha, beta, 1000, 1000 + trial);
            CHECK(report.within_theorem_bounds);
            CHECK(report.empirical_lipschitz <= 0.75 + 1e-9);
            CHECK(report.max_invariance_defect <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("damping preserves the fixed point") {
    SUBCASE("reinstatement graph at theorem gains") {
        const auto graph = four_node_reinstatement_graph();
        GraspConfig config = undamped(0.25, 0.25);
        config.gamma = 0.6;
        CHECK(fixed_point_agreement_damped_vs_undamped(graph, config) < 1e-8);
    }

    SUBCASE("zero graph agrees exactly") {
        WeightedInteractionGraph empty;
        empty.arguments = {"a1", "a2"};
        empty.attacks = Matrix::Zero(2, 2);
        empty.defenses = Matrix::Zero(2, 2);
        empty = validate_graph(std::move(empty));
        GraspConfig config;
        config.gamma = 0.3;
        CHECK(fixed_point_agreement_damped_vs_undamped(empty, config) < 1e-12);
    }

    SUBCASE("random graphs at theorem gains") {
        Rng rng(1201);
        for (int trial = 0; trial < 10; ++trial) {
            const auto graph = random_graph(rng, 20, 0.2);
            const auto [alpha, beta] = theorem_gains(graph);
            GraspConfig config = undamped(alpha, beta);
            config.gamma = 0.9;
            CHECK(fixed_point_agreement_damped_vs_undamped(graph, config) < 1e-8);
        }
    }

    SUBCASE("twenty-node random DAG at theorem gains") {
        const TestbedGraph dag = generate_random_dag(20, 0.3, 4242);
        const auto [alpha, beta] = theorem_gains(dag.graph);
        GraspConfig config = undamped(alpha, beta);
        config.gamma = 0.9;
        CHECK(fixed_point_agreement_damped_vs_undamped(dag.graph, config) < 1e-8);
    }
}

TEST_CASE("score ranking determinism") {
    const std::vector<ArgumentId> args = {"a1", "a2", "a3", "a4"};

    SUBCASE("descending scores with the golden ordering") {
        Vector scores(4);
        scores << 0.839, 1.0, 0.65, 0.769;
        CHECK(scores_to_ranking(scores, args) ==
              std::vector<ArgumentId>{"a2", "a1", "a4", "a3"});
    }

    SUBCASE("all-equal scores fall back to id order") {
        const Vector scores = Vector::Constant(4, 0.5);
        CHECK(scores_to_ranking(scores, args) ==
              std::vector<ArgumentId>{"a1", "a2", "a3", "a4"});
    }

    SUBCASE("stable under permutation of the argument list") {
        Vector scores(4);
        scores << 0.7, 0.7, 0.2, 0.2;
        const auto base = scores_to_ranking(scores, args);

        const std::vector<ArgumentId> shuffled = {"a3", "a1", "a4", "a2"};
        Vector shuffled_scores(4);
        shuffled_scores << 0.2, 0.7, 0.2, 0.7;
        CHECK(scores_to_ranking(shuffled_scores, shuffled) == base);
    }
}

TEST_CASE("config validation") {
    const auto graph = four_node_reinstatement_graph();
    GraspConfig config;

    config.gamma = 0.0;
    CHECK_THROWS_AS(iterate_to_fixed_point(graph, config), Error);
    config.gamma = 1.5;
    CHECK_THROWS_AS(iterate_to_fixed_point(graph, config), Error);
    config = {};
    config.tol = 0.0;
    CHECK_THROWS_AS(iterate_to_fixed_point(graph, config), Error);
    config = {};
    config.max_iters = 0;
    CHECK_THROWS_AS(iterate_to_fixed_point(graph, config), Error);
    config = {};
    config.s0 = Vector::Ones(3);
    CHECK_THROWS_AS(iterate_to_fixed_point(graph, config), Error);
}
