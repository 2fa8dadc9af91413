#ifndef TESTS_SUPPORT_ORACLE_H
#define TESTS_SUPPORT_ORACLE_H

#include "model2plan/pddl.h"

#include <optional>
#include <set>
#include <string>
#include <vector>

/*
  Reference semantics for planning tasks, written directly against the PDDL
  AST without the grounder or the search code. States are sets of ground
  atom keys "(name arg ...)" in lower case.
*/
namespace model2plan::testing {

using OracleState = std::set<std::string>;

struct OracleEdge {
    int target;
    Rational cost;
    std::string label;  // "(action arg ...)"
};

struct StateSpace {
    std::vector<OracleState> states;  // index 0 is the initial state
    std::vector<std::vector<OracleEdge>> edges;
    std::vector<bool> goal;
};

// Breadth-first enumeration of every reachable state; nullopt past the cap.
std::optional<StateSpace> explore(const pddl::Domain &domain, const pddl::Problem &problem, std::size_t max_states);

// Optimal cost-to-go of each state by Bellman-Ford relaxation; nullopt: no plan.
std::vector<std::optional<Rational>> cost_to_go(const StateSpace &space);

/*
  Over all optimal plans from the initial state: how many there are, and the
  distinct counts of steps whose label starts with `(<action_name> `.
*/
struct OptimalPlans {
    std::optional<Rational> optimum;
    std::size_t count = 0;
    std::set<int> action_counts;
};
OptimalPlans optimal_plans(const StateSpace &space, const std::string &action_name);

}

#endif
