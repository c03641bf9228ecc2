#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "grasp/serialize.hpp"

using namespace grasp;
using namespace grasp::test;

TEST_CASE("graph json round-trip preserves both matrices exactly") {
    Rng rng(501);
    for (int trial = 0; trial < 20; ++trial) {
        GraphDocument doc;
        doc.graph = random_graph(rng, 6, 0.5);
        doc.argument_meta["a1"] = {{"note", "claim"}, {"turn", 3}};

        const Json j = graph_to_json(doc);
        const GraphDocument back = graph_from_json(j);
        CHECK(back.graph.arguments == doc.graph.arguments);
        CHECK((back.graph.attacks - doc.graph.attacks).cwiseAbs().maxCoeff() <= 1e-15);
        CHECK((back.graph.defenses - doc.graph.defenses).cwiseAbs().maxCoeff() <= 1e-15);
        CHECK(back.argument_meta.at("a1")["turn"] == 3);
    }
}

TEST_CASE("graph parsing") {
    SUBCASE("absent defenses derive the default two-hop matrix") {
        const Json j = {{"arguments", {{{"id", "a1"}}, {{"id", "a2"}}, {{"id", "a3"}}}},
                        {"attacks",
                         {{{"from", "a3"}, {"to", "a2"}, {"weight", 1.0}},
                          {{"from", "a2"}, {"to", "a1"}, {"weight", 0.5}}}}};
        const GraphDocument doc = graph_from_json(j);
        CHECK(doc.graph.defense_provenance == DefenseMode::WSquared);
        CHECK(doc.graph.defenses(2, 0) == doctest::Approx(0.5));  // a3 defends a1
    }
    SUBCASE("defense_mode selects the derivation") {
        const Json j = {{"arguments", {{{"id", "a1"}}, {{"id", "a2"}}}},
                        {"attacks", {{{"from", "a1"}, {"to", "a2"}, {"weight", 0.7}}}},
                        {"defense_mode", "w_transpose"}};
        const GraphDocument doc = graph_from_json(j);
        CHECK(doc.graph.defense_provenance == DefenseMode::WTranspose);
        CHECK(doc.graph.defenses(1, 0) == doctest::Approx(0.7));
    }
    SUBCASE("explicit defenses are kept and tagged") {
        const Json j = {{"arguments", {{{"id", "a1"}}, {{"id", "a2"}}}},
                        {"attacks", Json::array()},
                        {"defenses", {{{"from", "a1"}, {"to", "a2"}, {"weight", 2.5}}}}};
        const GraphDocument doc = graph_from_json(j);
        CHECK(doc.graph.defense_provenance == DefenseMode::Explicit);
        CHECK(doc.graph.defenses(0, 1) == 2.5);
    }
    SUBCASE("duplicate pairs are rejected") {
        const Json j = {{"arguments", {{{"id", "a1"}}, {{"id", "a2"}}}},
                        {"attacks",
                         {{{"from", "a1"}, {"to", "a2"}, {"weight", 0.2}},
                          {{"from", "a1"}, {"to", "a2"}, {"weight", 0.3}}}}};
        CHECK_THROWS_AS(graph_from_json(j), Error);
    }
    SUBCASE("unknown endpoints are rejected") {
        const Json j = {{"arguments", {{{"id", "a1"}}}},
                        {"attacks", {{{"from", "a1"}, {"to", "zz"}, {"weight", 0.2}}}}};
        CHECK_THROWS_AS(graph_from_json(j), Error);
    }
    SUBCASE("file diagonal entries are clamped, not rejected") {
        const Json j = {{"arguments", {{{"id", "a1"}}, {{"id", "a2"}}}},
                        {"attacks", {{{"from", "a1"}, {"to", "a1"}, {"weight", 0.9}}}}};
        const GraphDocument doc = graph_from_json(j);
        CHECK(doc.graph.attacks(0, 0) == 0.0);
    }
}

TEST_CASE("pairwise ingestion") {
    const std::vector<ArgumentId> args = {"a1", "a2", "a3", "a4"};

    SUBCASE("records fill exactly the listed cells") {
        std::istringstream in(
            R"({"attacker": "a3", "target": "a1", "attack_score": 0.85})"
            "\n"
            R"({"attacker": "a4", "target": "a3", "attack_score": 1.0})"
            "\n\n"
            R"({"attacker": "a2", "target": "a4", "attack_score": 0.3})"
            "\n");
        const PairwiseIngestResult result = ingest_pairwise_scores(in, args);
        CHECK(result.records == 3);
        CHECK(result.graph.attacks(2, 0) == 0.85);
        CHECK(result.graph.attacks(3, 2) == 1.0);
        CHECK(result.graph.attacks(1, 3) == 0.3);
        CHECK((result.graph.attacks.array() > 0.0).count() == 3);
        // The derived defense is the two-hop product of the filled matrix.
        CHECK(result.graph.defenses(3, 0) == doctest::Approx(0.85));
    }

    SUBCASE("out-of-range score reports its line") {
        std::istringstream in(
            R"({"attacker": "a1", "target": "a2", "attack_score": 0.5})"
            "\n"
            R"({"attacker": "a1", "target": "a3", "attack_score": 1.3})"
            "\n");
        try {
            ingest_pairwise_scores(in, args);
            FAIL("expected ScoreOutOfRange");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ScoreOutOfRange);
            REQUIRE(e.line().has_value());
            CHECK(*e.line() == 2);
        }
    }

    SUBCASE("malformed records report their line") {
        std::istringstream in("{\"attacker\": \"a1\"\n");
        try {
            ingest_pairwise_scores(in, args);
            FAIL("expected MalformedRecord");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::MalformedRecord);
            CHECK(*e.line() == 1);
        }
    }

    SUBCASE("self-pairs are dropped and counted") {
        std::istringstream in(
            R"({"attacker": "a1", "target": "a1", "attack_score": 0.9})"
            "\n"
            R"({"attacker": "a1", "target": "a2", "attack_score": 0.4})"
            "\n");
        const PairwiseIngestResult result = ingest_pairwise_scores(in, args);
        CHECK(result.dropped_self_pairs == 1);
        CHECK(result.records == 1);
    }

    SUBCASE("duplicate pairs are an error") {
        std::istringstream in(
            R"({"attacker": "a1", "target": "a2", "attack_score": 0.4})"
            "\n"
            R"({"attacker": "a1", "target": "a2", "attack_score": 0.6})"
            "\n");
        CHECK_THROWS_AS(ingest_pairwise_scores(in, args), Error);
    }

    SUBCASE("unknown ids are an error") {
        std::istringstream in(
            R"({"attacker": "zz", "target": "a2", "attack_score": 0.4})"
            "\n");
        CHECK_THROWS_AS(ingest_pairwise_scores(in, args), Error);
    }

    SUBCASE("a full record set yields unit density") {
        std::ostringstream lines;
        Rng rng(509);
        for (const ArgumentId& from : args) {
            for (const ArgumentId& to : args) {
                if (from == to) continue;
                lines << R"({"attacker": ")" << from << R"(", "target": ")" << to
                      << R"(", "attack_score": )" << rng.uniform(0.1, 1.0) << "}\n";
            }
        }
        std::istringstream in(lines.str());
        const PairwiseIngestResult result = ingest_pairwise_scores(in, args);
        const GraphStats stats = graph_stats(result.graph.attacks, 0.5);
        CHECK(stats.density_d == 1.0);
        CHECK(static_cast<double>(result.records) /
                  static_cast<double>(args.size() * (args.size() - 1)) ==
              stats.density_d);
    }
}

TEST_CASE("ranking export shape") {
    const auto graph = four_node_reinstatement_graph();
    GraspConfig config;
    config.alpha = 1.0;
    config.beta = 0.5;
    config.gamma = 1.0;
    const FixedPointResult fixed = iterate_to_fixed_point(graph, config);

    RankingDocument doc;
    doc.method = "grasp";
    doc.arguments = graph.arguments;
    doc.scores = fixed.scores;
    doc.ranking = scores_to_ranking(fixed.scores, graph.arguments);
    doc.trace = fixed.trace;

    Json j = ranking_to_json(doc);
    CHECK(j["method"] == "grasp");
    CHECK(j["ranking"][0] == "a2");
    CHECK(j["converged"] == true);
    CHECK(j.contains("residual"));
    CHECK(!j.contains("trajectory"));

    doc.include_trajectory = true;
    j = ranking_to_json(doc);
    REQUIRE(j.contains("trajectory"));
    CHECK(j["trajectory"].size() ==
          fixed.trace.per_iteration_scores.size());
    CHECK(j["trajectory"][0][0] == 1.0);  // iteration zero is the start vector
}

TEST_CASE("testbed report serialization is deterministic") {
    SuiteConfig suite;
    suite.motif_count = 2;
    suite.dag_count = 1;
    suite.dag_n = 8;

    const auto methods = default_testbed_methods();
    const TestbedReport a = run_testbed(methods, suite, 3);
    const TestbedReport b = run_testbed(methods, suite, 3);
    CHECK(testbed_report_to_json(a).dump() == testbed_report_to_json(b).dump());
    CHECK(testbed_report_to_text(a) == testbed_report_to_text(b));

    const Json j = testbed_report_to_json(a);
    CHECK(j["methods"].size() == 6);
    CHECK(j["methods"][0]["method"] == "grasp_w2");
    CHECK(j["methods"][0].contains("mean_iterations"));
    CHECK(!j["methods"][1].contains("mean_iterations"));
}

TEST_CASE("suite and method configuration parsing") {
    const Json j = {
        {"suite",
         {{"motif_kinds", {"chain", "fork"}},
          {"motif_count", 4},
          {"motif_sizes", {4, 5}},
          {"noise", false},
          {"dag_count", 2},
          {"dag_n", 10},
          {"dag_edge_probs", {0.2}}}},
        {"methods",
         {{{"type", "grasp"},
           {"name", "grasp_theorem"},
           {"gains", "theorem_bound"},
           {"defense_mode", "w_squared"}},
          {{"type", "baseline"}, {"kind", "h_categorizer"}}}}};

    const SuiteConfig suite = suite_config_from_json(j["suite"]);
    CHECK(suite.motif_kinds.size() == 2);
    CHECK(suite.motif_count == 4);
    CHECK(!suite.noise);
    CHECK(suite.dag_edge_probs == std::vector<double>{0.2});

    const auto methods = methods_from_json(j["methods"]);
    REQUIRE(methods.size() == 2);
    CHECK(methods[0].gain_policy == GainPolicy::TheoremBound);
    CHECK(!methods[1].is_grasp);
    CHECK(methods[1].name == "h_categorizer");

    CHECK_THROWS_AS(methods_from_json(Json::array()), Error);
}
