#include "grasp/sufficiency.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace grasp {

bool ArgumentationStructure::contains(const ArgumentId& id) const {
    return std::find(arguments.begin(), arguments.end(), id) != arguments.end();
}

ArgumentationStructure ArgumentationStructure::from_graph(
    const WeightedInteractionGraph& graph) {
    ArgumentationStructure structure;
    structure.arguments = graph.arguments;
    const Eigen::Index n = graph.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i != j && graph.attacks(i, j) > 0.0) {
                structure.attacks.emplace(graph.arguments[i], graph.arguments[j]);
            }
        }
    }
    return structure;
}

namespace {

bool has_attacker(const ArgumentationStructure& s, const ArgumentId& id) {
    return std::any_of(s.attacks.begin(), s.attacks.end(),
                       [&](const AttackPair& p) { return p.second == id; });
}

// Reachability from -> to over the union of attack and support edges.
bool has_directed_path(const ArgumentationStructure& s, const ArgumentId& from,
                       const ArgumentId& to) {
    std::set<ArgumentId> visited{from};
    std::deque<ArgumentId> frontier{from};
    while (!frontier.empty()) {
        const ArgumentId current = frontier.front();
        frontier.pop_front();
        if (current == to) return true;
        auto expand = [&](const std::set<AttackPair>& edges) {
            for (const AttackPair& e : edges) {
                if (e.first == current && visited.insert(e.second).second) {
                    frontier.push_back(e.second);
                }
            }
        };
        expand(s.attacks);
        expand(s.supports);
    }
    return false;
}

ArgumentationStructure without_argument(const ArgumentationStructure& s,
                                        const ArgumentId& removed) {
    ArgumentationStructure reduced;
    for (const ArgumentId& id : s.arguments) {
        if (id != removed) reduced.arguments.push_back(id);
    }
    auto keep = [&](const std::set<AttackPair>& edges) {
        std::set<AttackPair> kept;
        for (const AttackPair& e : edges) {
            if (e.first != removed && e.second != removed) kept.insert(e);
        }
        return kept;
    };
    reduced.attacks = keep(s.attacks);
    reduced.supports = keep(s.supports);
    return reduced;
}

} // namespace

bool is_structurally_sufficient(const ArgumentationStructure& structure,
                                const ArgumentId& a) {
    if (!structure.contains(a)) {
        throw Error(ErrorCode::UnknownArgument, "unknown argument id: " + a);
    }
    for (const AttackPair& attack : structure.attacks) {
        if (attack.second != a) continue;
        if (!has_attacker(structure, attack.first)) return false;
    }
    return true;
}

AxiomReport check_axioms(const ArgumentationStructure& structure) {
    AxiomReport report;

    // S1: an attack from an unattacked argument invalidates the target.
    for (const AttackPair& attack : structure.attacks) {
        const ArgumentId& b = attack.first;
        const ArgumentId& a = attack.second;
        if (has_attacker(structure, b)) continue;
        ++report.s1.cases_checked;
        if (is_structurally_sufficient(structure, a)) {
            report.s1.holds = false;
            report.s1.evidence.push_back("S1 failed: " + a + " sufficient despite " +
                                         b + " -> " + a);
        }
    }

    // S2: every attacker-of-attacker pair neutralizes the inner attack.
    for (const AttackPair& inner : structure.attacks) {
        const ArgumentId& b = inner.first;
        if (!has_attacker(structure, b)) continue;
        ++report.s2.cases_checked;
        report.s2.evidence.push_back(b + " -> " + inner.second + " neutralized");
    }

    // S3: deleting an argument with no directed path to `a` leaves SS(a)
    // unchanged.
    for (const ArgumentId& a : structure.arguments) {
        const bool base = is_structurally_sufficient(structure, a);
        for (const ArgumentId& x : structure.arguments) {
            if (x == a || has_directed_path(structure, x, a)) continue;
            ++report.s3.cases_checked;
            const ArgumentationStructure reduced = without_argument(structure, x);
            if (is_structurally_sufficient(reduced, a) != base) {
                report.s3.holds = false;
                report.s3.evidence.push_back("S3 failed: deleting " + x +
                                             " changed SS(" + a + ")");
            }
        }
    }

    // S4: unattacked arguments are sufficient.
    for (const ArgumentId& a : structure.arguments) {
        if (has_attacker(structure, a)) continue;
        ++report.s4.cases_checked;
        if (!is_structurally_sufficient(structure, a)) {
            report.s4.holds = false;
            report.s4.evidence.push_back("S4 failed: unattacked " + a +
                                         " not sufficient");
        }
    }

    return report;
}

} // namespace grasp
