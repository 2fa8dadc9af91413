#include "model2plan/planner.h"

#include "model2plan/names.h"

#include <algorithm>
#include <queue>
#include <unordered_map>

using namespace std;

namespace model2plan::plan {

optional<Heuristic> parse_heuristic(string_view name) {
    if (iequals(name, "blind"))
        return Heuristic::Blind;
    if (iequals(name, "hmax"))
        return Heuristic::HMax;
    return nullopt;
}

namespace {
struct FactSetHash {
    size_t operator()(const FactSet &s) const noexcept {
        size_t h = 0xcbf29ce484222325ULL;
        for (uint64_t w : s.data())
            h = (h ^ w) * 0x100000001b3ULL ^ (h >> 29);
        return h;
    }
};

/*
  hmax by a Dijkstra-style sweep: facts are settled in order of cost, so the
  last precondition to settle determines an action's max-cost.
*/
class HMaxEvaluator {
    const GroundTask &task;
    vector<vector<int>> consumers;
public:
    explicit HMaxEvaluator(const GroundTask &task) : task(task), consumers(task.facts.size()) {
        for (size_t a = 0; a < task.actions.size(); ++a) {
            for (int f : task.actions[a].pre_pos)
                consumers[f].push_back(static_cast<int>(a));
        }
    }

    optional<Rational> evaluate(const FactSet &state) const {
        size_t n = task.facts.size();
        vector<optional<Rational>> cost(n);
        vector<bool> settled(n, false);
        vector<size_t> missing(task.actions.size());
        using Entry = pair<Rational, int>;
        priority_queue<Entry, vector<Entry>, greater<>> queue;

        auto reach = [&](int f, const Rational &c) {
            if (!cost[f] || c < *cost[f]) {
                cost[f] = c;
                queue.push({c, f});
            }
        };
        for (size_t f = 0; f < n; ++f) {
            if (state.test(static_cast<int>(f)))
                reach(static_cast<int>(f), Rational(0));
        }
        for (size_t a = 0; a < task.actions.size(); ++a) {
            missing[a] = task.actions[a].pre_pos.size();
            if (missing[a] == 0) {
                for (int f : task.actions[a].add)
                    reach(f, task.actions[a].cost);
            }
        }

        size_t goals_left = 0;
        vector<bool> is_goal(n, false);
        for (int f : task.goal_pos) {
            if (!is_goal[f]) {
                is_goal[f] = true;
                ++goals_left;
            }
        }
        Rational result;
        while (!queue.empty() && goals_left > 0) {
            auto [c, f] = queue.top();
            queue.pop();
            if (settled[f] || c != *cost[f])
                continue;
            settled[f] = true;
            if (is_goal[f]) {
                --goals_left;
                result = c;
            }
            for (int a : consumers[f]) {
                if (--missing[a] == 0) {
                    Rational through = c + task.actions[a].cost;
                    for (int g : task.actions[a].add)
                        reach(g, through);
                }
            }
        }
        if (goals_left > 0)
            return nullopt;
        return result;
    }
};

struct Node {
    Rational g;
    int parent = -1;
    int action = -1;
    bool closed = false;
    bool evaluated = false;
    optional<Rational> h;
};

struct OpenEntry {
    Rational f;
    Rational g;
    int action;
    size_t sequence;
    int state;
};

// Pops the smallest (f, g, action index, insertion order).
struct OpenOrder {
    bool operator()(const OpenEntry &a, const OpenEntry &b) const {
        if (a.f != b.f)
            return a.f > b.f;
        if (a.g != b.g)
            return a.g > b.g;
        if (a.action != b.action)
            return a.action > b.action;
        return a.sequence > b.sequence;
    }
};
}

optional<Rational> hmax(const GroundTask &task, const FactSet &state) {
    return HMaxEvaluator(task).evaluate(state);
}

SearchResult search(const GroundTask &task, const PlannerConfig &config) {
    SearchResult result;
    optional<HMaxEvaluator> evaluator;
    if (config.heuristic == Heuristic::HMax)
        evaluator.emplace(task);
    auto heuristic = [&](const FactSet &state) -> optional<Rational> {
        if (!evaluator)
            return Rational(0);
        return evaluator->evaluate(state);
    };

    unordered_map<FactSet, int, FactSetHash> ids;
    vector<const FactSet *> states;
    vector<Node> nodes;
    priority_queue<OpenEntry, vector<OpenEntry>, OpenOrder> open;
    size_t sequence = 0;

    auto lookup = [&](const FactSet &state) {
        auto [it, inserted] = ids.emplace(state, static_cast<int>(nodes.size()));
        if (inserted) {
            states.push_back(&it->first);
            nodes.emplace_back();
        }
        return pair{it->second, inserted};
    };

    auto [root, root_new] = lookup(task.init);
    (void)root_new;
    nodes[root].h = heuristic(task.init);
    nodes[root].evaluated = true;
    if (!nodes[root].h)
        return result;
    open.push({*nodes[root].h, Rational(0), -1, sequence++, root});

    while (!open.empty()) {
        OpenEntry entry = open.top();
        open.pop();
        Node &node = nodes[entry.state];
        if (entry.g != node.g || node.closed)
            continue;
        node.closed = true;
        const FactSet &state = *states[entry.state];

        if (task.is_goal(state)) {
            Plan plan;
            for (int id = entry.state; nodes[id].parent >= 0; id = nodes[id].parent) {
                const GroundAction &action = task.actions[nodes[id].action];
                plan.steps.push_back({action.name, action.args});
            }
            reverse(plan.steps.begin(), plan.steps.end());
            plan.cost = node.g;
            result.status = SearchStatus::Solved;
            result.plan = std::move(plan);
            return result;
        }
        if (result.expanded >= config.max_expansions) {
            result.status = SearchStatus::ResourceLimit;
            return result;
        }
        ++result.expanded;

        Rational g = node.g;
        for (size_t a = 0; a < task.actions.size(); ++a) {
            const GroundAction &action = task.actions[a];
            if (!action.applicable(state))
                continue;
            ++result.generated;
            Rational succ_g = g + action.cost;
            auto [succ, fresh] = lookup(action.apply(state));
            Node &next = nodes[succ];
            if (!fresh && succ_g >= next.g)
                continue;
            next.g = succ_g;
            next.parent = entry.state;
            next.action = static_cast<int>(a);
            next.closed = false;
            if (!next.evaluated) {
                next.h = heuristic(*states[succ]);
                next.evaluated = true;
            }
            if (!next.h)
                continue;
            open.push({succ_g + *next.h, succ_g, static_cast<int>(a), sequence++, succ});
        }
    }
    return result;
}

}
