#pragma once
// Boolean structural-sufficiency semantics: an argument is sufficient iff
// every explicit attack on it is neutralized by a counter-attack. The four
// axioms (S1-S4) are checkable predicates over a structure.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "grasp/graph.hpp"

namespace grasp {

using AttackPair = std::pair<ArgumentId, ArgumentId>;  // (attacker, target)

struct ArgumentationStructure {
    std::vector<ArgumentId> arguments;
    std::set<AttackPair> attacks;   // R-
    std::set<AttackPair> supports;  // R+; carried but not interpreted

    bool contains(const ArgumentId& id) const;

    // Structure induced by the positive entries of a graph's attack matrix.
    static ArgumentationStructure from_graph(const WeightedInteractionGraph& graph);
};

// True iff every attacker of `a` is itself attacked; vacuously true for
// unattacked arguments.
bool is_structurally_sufficient(const ArgumentationStructure& structure,
                                const ArgumentId& a);

struct AxiomCheck {
    bool holds = true;
    std::size_t cases_checked = 0;
    std::vector<std::string> evidence;  // one line per instance or failure
};

struct AxiomReport {
    AxiomCheck s1;  // unneutralized attacks invalidate sufficiency
    AxiomCheck s2;  // attacking an attacker neutralizes the attack
    AxiomCheck s3;  // arguments without a path to `a` cannot affect SS(a)
    AxiomCheck s4;  // unattacked arguments are sufficient

    bool all_hold() const { return s1.holds && s2.holds && s3.holds && s4.holds; }
};

AxiomReport check_axioms(const ArgumentationStructure& structure);

} // namespace grasp
