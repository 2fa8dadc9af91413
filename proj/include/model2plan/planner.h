#ifndef MODEL2PLAN_PLANNER_H
#define MODEL2PLAN_PLANNER_H

#include "model2plan/task.h"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace model2plan::plan {

struct PlanStep {
    std::string action;
    std::vector<std::string> args;
    bool operator==(const PlanStep &) const = default;
};

struct Plan {
    std::vector<PlanStep> steps;
    // Produced by the planner, or declared in a plan file's cost comment.
    std::optional<Rational> cost;
    bool operator==(const Plan &) const = default;
};

// One `(action arg ...)` per line, then `; cost = <value> (general cost)`.
std::string format_plan(const Plan &plan);
// Also accepts `N:` step prefixes and `[duration]` suffixes. Throws Error(SyntaxError).
Plan parse_plan(std::string_view text);

struct ValidationResult {
    bool valid = false;
    Rational cost;
    std::vector<Diagnostic> findings;
};

/*
  Simulates the plan from the initial state at the lifted level, so steps
  pruned by grounding are still diagnosed precisely. Findings:
  UnknownAction, PreconditionViolated (first failing step), GoalNotSatisfied,
  UndefinedFluent, CostMismatch (against plan.cost when present).
*/
ValidationResult validate_plan(const GroundTask &task, const Plan &plan);

enum class Heuristic { Blind, HMax };
std::optional<Heuristic> parse_heuristic(std::string_view name);

struct PlannerConfig {
    Heuristic heuristic = Heuristic::Blind;
    std::size_t max_expansions = 5'000'000;
};

enum class SearchStatus { Solved, Unsolvable, ResourceLimit };

struct SearchResult {
    SearchStatus status = SearchStatus::Unsolvable;
    std::optional<Plan> plan;
    std::size_t expanded = 0;
    std::size_t generated = 0;
};

// A* with the configured admissible heuristic; the plan is cost-optimal.
SearchResult search(const GroundTask &task, const PlannerConfig &config = {});

// Cost of a cheapest relaxed plan under max-aggregation; nullopt if the
// goal is unreachable even in the relaxation.
std::optional<Rational> hmax(const GroundTask &task, const FactSet &state);

}

#endif
