#include "oracle.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

using namespace std;

namespace model2plan::testing {
using namespace pddl;

namespace {
string lower(string text) {
    for (char &c : text)
        c = static_cast<char>(tolower(static_cast<unsigned char>(c)));
    return text;
}

string key(const string &name, const vector<string> &args) {
    string out = "(" + name;
    for (const string &a : args)
        out += " " + a;
    return lower(out + ")");
}

class Semantics {
    const Domain &domain;
    const Problem &problem;
    map<string, Rational> fluents;

    vector<string> instantiate(const Atom &atom, const Action &action, const vector<string> &binding) const {
        vector<string> args;
        for (const Term &term : atom.args) {
            string value = term.name;
            if (term.is_variable) {
                for (size_t i = 0; i < action.parameters.size(); ++i) {
                    if (lower(action.parameters[i].name) == lower(term.name))
                        value = binding[i];
                }
            }
            args.push_back(value);
        }
        return args;
    }

    string ground_key(const Atom &atom, const Action &action, const vector<string> &binding) const {
        return key(atom.name, instantiate(atom, action, binding));
    }

public:
    Semantics(const Domain &domain, const Problem &problem) : domain(domain), problem(problem) {
        for (const FluentInit &f : problem.init_fluents) {
            vector<string> args;
            for (const Term &t : f.fluent.args)
                args.push_back(t.name);
            fluents[key(f.fluent.name, args)] = f.value;
        }
    }

    OracleState initial() const {
        OracleState s;
        for (const Atom &atom : problem.init) {
            vector<string> args;
            for (const Term &t : atom.args)
                args.push_back(t.name);
            s.insert(key(atom.name, args));
        }
        return s;
    }

    bool satisfies_goal(const OracleState &s) const {
        for (const Literal &l : problem.goal.literals) {
            vector<string> args;
            for (const Term &t : l.atom.args)
                args.push_back(t.name);
            if (s.count(key(l.atom.name, args)) == l.negated)
                return false;
        }
        return true;
    }

    // Calls out(label, cost, successor) for every applicable ground action.
    void successors(const OracleState &s, const function<void(string, Rational, OracleState)> &out) const {
        for (const Action &action : domain.actions) {
            vector<string> binding(action.parameters.size());
            function<void(size_t)> choose = [&](size_t i) {
                if (i == binding.size()) {
                    apply(s, action, binding, out);
                    return;
                }
                for (const TypedName &object : problem.objects) {
                    if (domain.is_subtype(object.type, action.parameters[i].type)) {
                        binding[i] = object.name;
                        choose(i + 1);
                    }
                }
            };
            choose(0);
        }
    }

private:
    void apply(const OracleState &s, const Action &action, const vector<string> &binding,
               const function<void(string, Rational, OracleState)> &out) const {
        for (const Literal &l : action.precondition.literals) {
            if (s.count(ground_key(l.atom, action, binding)) == l.negated)
                return;
        }
        Rational cost(1);
        if (problem.metric) {
            string metric = key(problem.metric->fluent.name, {});
            cost = Rational(0);
            for (const EffectItem &item : action.effect.items) {
                const auto *change = get_if<NumericChange>(&item);
                if (!change || ground_key(change->fluent, action, binding) != metric)
                    continue;
                Rational value;
                if (const auto *constant = get_if<Rational>(&change->value)) {
                    value = *constant;
                } else {
                    auto it = fluents.find(ground_key(get<Atom>(change->value), action, binding));
                    if (it == fluents.end())
                        return;  // undefined cost: not applicable
                    value = it->second;
                }
                cost += change->kind == NumericKind::Decrease ? -value : value;
            }
        }
        OracleState next = s;
        for (const EffectItem &item : action.effect.items) {
            const auto *l = get_if<Literal>(&item);
            if (l && l->negated)
                next.erase(ground_key(l->atom, action, binding));
        }
        for (const EffectItem &item : action.effect.items) {
            const auto *l = get_if<Literal>(&item);
            if (l && !l->negated)
                next.insert(ground_key(l->atom, action, binding));
        }
        string label = "(" + action.name;
        for (const string &b : binding)
            label += " " + b;
        out(label + ")", cost, std::move(next));
    }
};
}

optional<StateSpace> explore(const Domain &domain, const Problem &problem, size_t max_states) {
    Semantics semantics(domain, problem);
    StateSpace space;
    map<OracleState, int> ids;
    auto intern = [&](OracleState s) {
        auto [it, fresh] = ids.emplace(s, static_cast<int>(space.states.size()));
        if (fresh) {
            space.states.push_back(std::move(s));
            space.edges.emplace_back();
        }
        return it->second;
    };
    intern(semantics.initial());
    for (size_t i = 0; i < space.states.size(); ++i) {
        if (space.states.size() > max_states)
            return nullopt;
        // Copied: interning new states may reallocate the vector.
        OracleState current = space.states[i];
        vector<OracleEdge> edges;
        semantics.successors(current, [&](string label, Rational cost, OracleState next) {
            edges.push_back({intern(std::move(next)), cost, std::move(label)});
        });
        space.edges[i] = std::move(edges);
    }
    for (const OracleState &s : space.states)
        space.goal.push_back(semantics.satisfies_goal(s));
    return space;
}

vector<optional<Rational>> cost_to_go(const StateSpace &space) {
    vector<optional<Rational>> h(space.states.size());
    for (size_t s = 0; s < space.states.size(); ++s) {
        if (space.goal[s])
            h[s] = Rational(0);
    }
    // Costs are non-negative, so at most |S| rounds are needed.
    for (size_t round = 0; round <= space.states.size(); ++round) {
        bool changed = false;
        for (size_t s = 0; s < space.states.size(); ++s) {
            for (const OracleEdge &e : space.edges[s]) {
                if (!h[e.target])
                    continue;
                Rational through = e.cost + *h[e.target];
                if (!h[s] || through < *h[s]) {
                    h[s] = through;
                    changed = true;
                }
            }
        }
        if (!changed)
            break;
    }
    return h;
}

OptimalPlans optimal_plans(const StateSpace &space, const string &action_name) {
    OptimalPlans result;
    vector<optional<Rational>> h = cost_to_go(space);
    result.optimum = h[0];
    if (!h[0])
        return result;
    string prefix = "(" + action_name + " ";
    // Along an optimal plan, h drops by exactly the edge cost. Zero-cost
    // cycles would make the set infinite; they are reported by count = 0.
    vector<int> state(space.states.size(), 0);
    vector<pair<size_t, set<int>>> memo(space.states.size());
    bool cyclic = false;
    function<void(int)> visit = [&](int s) {
        state[s] = 1;
        size_t count = space.goal[s] ? 1 : 0;
        set<int> counts;
        if (space.goal[s])
            counts.insert(0);
        for (const OracleEdge &e : space.edges[s]) {
            if (!h[e.target] || e.cost + *h[e.target] != *h[s])
                continue;
            if (state[e.target] == 1) {
                cyclic = true;
                continue;
            }
            if (state[e.target] == 0)
                visit(e.target);
            count += memo[e.target].first;
            int step = e.label.rfind(prefix, 0) == 0 ? 1 : 0;
            for (int c : memo[e.target].second)
                counts.insert(c + step);
        }
        memo[s] = {count, std::move(counts)};
        state[s] = 2;
    };
    visit(0);
    if (!cyclic) {
        result.count = memo[0].first;
        result.action_counts = memo[0].second;
    }
    return result;
}

}
