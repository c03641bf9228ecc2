#pragma once
// Synthetic structural testbed: archetype and random-DAG generators with
// critical ranking conditions, violation metrics, and the multi-method
// evaluation harness.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grasp/baselines.hpp"
#include "grasp/graph.hpp"
#include "grasp/grasp_operator.hpp"

namespace grasp {

enum class Axiom { S1, S2, S3, S4 };
const char* axiom_name(Axiom axiom);

enum class MotifKind { Chain, Fork, Diamond, Bipolar, RandomDag };
const char* motif_kind_name(MotifKind kind);
std::optional<MotifKind> motif_kind_from_name(const std::string& name);

// A required pairwise ordering implied by the sufficiency axioms.
struct CriticalRankingCondition {
    ArgumentId stronger;
    ArgumentId weaker;
    Axiom axiom = Axiom::S4;
    MotifKind motif = MotifKind::RandomDag;
};

struct TestbedGraph {
    WeightedInteractionGraph graph;
    std::vector<CriticalRankingCondition> crcs;
    MotifKind kind = MotifKind::RandomDag;
};

struct AxiomTally {
    std::size_t total = 0;
    std::size_t violated = 0;
};

struct ViolationReport {
    std::size_t total_crcs = 0;
    std::size_t violated = 0;
    double violation_rate = 0.0;  // violated / total_crcs
    double mean_severity = 0.0;   // mean normalized margin over violations
    std::map<Axiom, AxiomTally> per_axiom;
};

// Canonical motifs with unit core weights. Sizes 3..6 are accepted; the seed
// only matters when noise is on. Noise adds ceil(n/2) attacks with weights in
// [0.05, 0.15], never onto a node the core leaves unattacked.
TestbedGraph generate_archetype(MotifKind kind, int size, bool noise,
                                std::uint64_t seed);

// Random DAG via topological-order edge sampling; weights uniform in
// [0.2, 1.0]. CRCs are baseline-sufficiency only: every unattacked node must
// outrank every attacked node.
TestbedGraph generate_random_dag(int n, double edge_prob, std::uint64_t seed);

// Violation when score(stronger) <= score(weaker); severity normalizes the
// margin by the score range (1 per violation on a zero-range graph).
ViolationReport evaluate_crcs(const Vector& scores,
                              const std::vector<ArgumentId>& arguments,
                              const std::vector<CriticalRankingCondition>& crcs);

// How a testbed method picks its operator gains.
enum class GainPolicy {
    Fixed,         // use the config's alpha/beta as given
    TheoremBound,  // alpha = beta = min(1/(4||W||1), 1/(4||D||1)) per graph
};

struct MethodSpec {
    std::string name;
    bool is_grasp = true;

    // GRASP settings (ignored for baselines).
    DefenseMode defense_mode = DefenseMode::WSquared;
    NormScheme norm_scheme = NormScheme::None;
    bool rescale_dbar = false;
    GraspConfig config = GraspConfig::sweep_optimum();
    GainPolicy gain_policy = GainPolicy::Fixed;

    // Baseline settings (ignored for GRASP).
    BaselineKind baseline = BaselineKind::HCategorizer;
    BaselineOptions baseline_options;
};

struct SuiteConfig {
    std::vector<MotifKind> motif_kinds = {MotifKind::Chain, MotifKind::Fork,
                                          MotifKind::Diamond, MotifKind::Bipolar};
    int motif_count = 25;                 // instances per kind
    std::vector<int> motif_sizes = {4, 5, 6};  // cycled over instances
    bool noise = true;
    int dag_count = 20;                   // instances per edge probability
    int dag_n = 20;
    std::vector<double> dag_edge_probs = {0.1, 0.3};
};

struct MethodResult {
    std::string method;
    double violation_rate = 0.0;  // mean of per-graph violation rates
    double severity = 0.0;        // mean margin pooled over all violations
    std::size_t total_crcs = 0;
    std::size_t violated = 0;
    std::map<Axiom, AxiomTally> per_axiom;
    bool iterative = false;
    double mean_iterations = 0.0;
    double convergence_fraction = 0.0;
};

struct TestbedReport {
    std::uint64_t seed = 0;
    std::size_t graph_count = 0;
    std::vector<MethodResult> methods;
};

// The full generated graph set for a suite, in deterministic order.
std::vector<TestbedGraph> generate_suite(const SuiteConfig& config, std::uint64_t seed);

// Runs every method over the suite. Deterministic given the seed; methods are
// reported in input order.
TestbedReport run_testbed(const std::vector<MethodSpec>& methods,
                          const SuiteConfig& config, std::uint64_t seed);

// Scores one testbed graph with a method spec (shared by testbed and CLI).
struct MethodRun {
    Vector scores;
    bool iterative = false;
    int iterations = 0;
    bool converged = true;
};
MethodRun run_method(const MethodSpec& method, const WeightedInteractionGraph& graph);

} // namespace grasp
