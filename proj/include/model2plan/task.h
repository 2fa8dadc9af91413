#ifndef MODEL2PLAN_TASK_H
#define MODEL2PLAN_TASK_H

#include "model2plan/diagnostic.h"
#include "model2plan/pddl.h"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace model2plan::plan {

// Fixed-size set of fact indices; the search state representation.
class FactSet {
    std::vector<std::uint64_t> words;
public:
    FactSet() = default;
    explicit FactSet(std::size_t size) : words((size + 63) / 64, 0) {}

    bool test(int fact) const { return words[fact >> 6] >> (fact & 63) & 1; }
    void set(int fact) { words[fact >> 6] |= std::uint64_t(1) << (fact & 63); }
    void reset(int fact) { words[fact >> 6] &= ~(std::uint64_t(1) << (fact & 63)); }

    const std::vector<std::uint64_t> &data() const { return words; }
    bool operator==(const FactSet &) const = default;
};

struct GroundAction {
    std::string name;
    std::vector<std::string> args;
    int schema = 0;
    std::vector<int> pre_pos;
    std::vector<int> pre_neg;
    std::vector<int> add;
    // Facts both added and deleted are only in `add` (deletes apply first).
    std::vector<int> del;
    Rational cost;

    // `(name arg ...)`
    std::string label() const;
    bool applicable(const FactSet &state) const;
    FactSet apply(const FactSet &state) const;
};

struct GroundConfig {
    std::size_t max_actions = 1'000'000;
};

/*
  Propositional form of a domain/problem pair. Ground actions are in schema
  order, and within a schema in lexicographic order of the bindings (object
  declaration order). The domain and problem are kept for lifted-level plan
  validation.
*/
struct GroundTask {
    pddl::Domain domain;
    pddl::Problem problem;
    std::vector<pddl::Atom> facts;
    std::unordered_map<std::string, int> fact_ids;
    // Ground fluent key (see atom_key) to initial value.
    std::map<std::string, Rational> fluents;
    std::vector<GroundAction> actions;
    FactSet init;
    std::vector<int> goal_pos;
    std::vector<int> goal_neg;
    // No metric: every action costs 1.
    bool unit_cost = true;
    // Type-consistent bindings enumerated before pruning.
    std::size_t bindings = 0;

    std::optional<int> find_fact(const pddl::Atom &atom) const;
    bool is_goal(const FactSet &state) const;
};

// Case-insensitive identity of a ground atom, e.g. "(at r1 l2)".
std::string atom_key(const pddl::Atom &atom);

/*
  Enumerates all type-consistent bindings. Prunes bindings whose static
  preconditions fail in the initial state, whose preconditions contain p and
  (not p), or whose cost refers to an undefined fluent.
  Throws Error(GroundingExplosion) past the cap, Error(UnsupportedFeature)
  for maximize metrics, assign effects and fluents that are both changed and
  read, Error(InvalidTask) for undeclared symbols or negative action costs.
*/
GroundTask ground(const pddl::Domain &domain, const pddl::Problem &problem, const GroundConfig &config = {});

// Facts reachable from `state` when delete effects and negative conditions
// are ignored, and the ground actions applicable along the way.
struct Relaxation {
    std::vector<bool> facts;
    std::vector<bool> actions;
};
Relaxation relaxed_reachability(const GroundTask &task, const FactSet &state);

/*
  VAL-style static checks: UndefinedSymbol, ArityMismatch, TypeMismatch,
  MissingRequirement, DomainMismatch, then on a clean pair UnreachableAction
  and UnsatisfiableGoal under the delete relaxation.
*/
std::vector<Diagnostic> check_task(const pddl::Domain &domain, const pddl::Problem &problem,
                                   const GroundConfig &config = {});

}

#endif
