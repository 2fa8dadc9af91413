#include "model2plan/task.h"

#include "model2plan/names.h"

#include <deque>
#include <set>

using namespace std;

namespace model2plan::plan {
using pddl::Atom;
using pddl::Literal;

string atom_key(const Atom &atom) {
    return to_lower(pddl::format_atom(atom));
}

string GroundAction::label() const {
    string out = "(" + name;
    for (const string &arg : args)
        out += " " + arg;
    return out + ")";
}

bool GroundAction::applicable(const FactSet &state) const {
    for (int f : pre_pos) {
        if (!state.test(f))
            return false;
    }
    for (int f : pre_neg) {
        if (state.test(f))
            return false;
    }
    return true;
}

FactSet GroundAction::apply(const FactSet &state) const {
    FactSet next = state;
    for (int f : del)
        next.reset(f);
    for (int f : add)
        next.set(f);
    return next;
}

optional<int> GroundTask::find_fact(const Atom &atom) const {
    auto it = fact_ids.find(atom_key(atom));
    if (it == fact_ids.end())
        return nullopt;
    return it->second;
}

bool GroundTask::is_goal(const FactSet &state) const {
    for (int f : goal_pos) {
        if (!state.test(f))
            return false;
    }
    for (int f : goal_neg) {
        if (state.test(f))
            return false;
    }
    return true;
}

namespace {
[[noreturn]] void invalid(ErrorCode code, const string &message) {
    throw Error(code, message);
}

class Grounder {
    const pddl::Domain &domain;
    const pddl::Problem &problem;
    const GroundConfig &config;
    GroundTask &task;
    set<string> static_predicates;
    optional<string> metric_key;

    // Lifted literal with arguments resolved to parameter indices (-1: constant).
    struct Pattern {
        const Atom *atom;
        bool negated;
        vector<int> params;
        int last_param;
    };

    int intern(const Atom &atom) {
        string key = atom_key(atom);
        auto [it, inserted] = task.fact_ids.emplace(key, static_cast<int>(task.facts.size()));
        if (inserted)
            task.facts.push_back(atom);
        return it->second;
    }

    Pattern pattern(const pddl::Action &action, const Atom &atom, bool negated) {
        Pattern p{&atom, negated, {}, -1};
        for (const pddl::Term &term : atom.args) {
            int index = -1;
            if (term.is_variable) {
                for (size_t i = 0; i < action.parameters.size(); ++i) {
                    if (iequals(action.parameters[i].name, term.name))
                        index = static_cast<int>(i);
                }
                if (index < 0)
                    invalid(ErrorCode::InvalidTask,
                            "action '" + action.name + "' uses undeclared variable ?" + term.name);
            } else if (!problem.find_object(term.name)) {
                invalid(ErrorCode::InvalidTask, "action '" + action.name + "' uses unknown object " + term.name);
            }
            p.params.push_back(index);
            p.last_param = max(p.last_param, index);
        }
        return p;
    }

    Atom instantiate(const Atom &atom, const vector<int> &params, const vector<const pddl::TypedName *> &binding) {
        Atom ground{atom.name, {}};
        for (size_t i = 0; i < atom.args.size(); ++i) {
            const string &name = params[i] < 0 ? problem.find_object(atom.args[i].name)->name
                                               : binding[params[i]]->name;
            ground.args.push_back(pddl::Term::constant(name));
        }
        return ground;
    }

    // Initial facts are interned first, so they are exactly the ids below init_size.
    size_t init_size = 0;

    bool holds_initially(const Atom &atom) const {
        auto it = task.fact_ids.find(atom_key(atom));
        return it != task.fact_ids.end() && static_cast<size_t>(it->second) < init_size;
    }

    optional<Rational> cost(const pddl::Action &action, const vector<const pddl::TypedName *> &binding) {
        if (task.unit_cost)
            return Rational(1);
        Rational total;
        for (const pddl::EffectItem &item : action.effect.items) {
            const auto *change = get_if<pddl::NumericChange>(&item);
            if (!change)
                continue;
            auto ground_atom = [&](const Atom &lifted) {
                vector<int> params;
                for (const pddl::Term &term : lifted.args) {
                    int index = -1;
                    for (size_t i = 0; term.is_variable && i < action.parameters.size(); ++i) {
                        if (iequals(action.parameters[i].name, term.name))
                            index = static_cast<int>(i);
                    }
                    params.push_back(index);
                }
                return instantiate(lifted, params, binding);
            };
            if (atom_key(ground_atom(change->fluent)) != *metric_key)
                continue;
            Rational value;
            if (const auto *constant = get_if<Rational>(&change->value)) {
                value = *constant;
            } else {
                auto it = task.fluents.find(atom_key(ground_atom(get<Atom>(change->value))));
                if (it == task.fluents.end())
                    return nullopt;
                value = it->second;
            }
            total += change->kind == pddl::NumericKind::Decrease ? -value : value;
        }
        return total;
    }

    void check_numeric_subset() {
        if (task.unit_cost)
            return;
        set<string> targets, reads;
        for (const pddl::Action &action : domain.actions) {
            for (const pddl::EffectItem &item : action.effect.items) {
                const auto *change = get_if<pddl::NumericChange>(&item);
                if (!change)
                    continue;
                if (change->kind == pddl::NumericKind::Assign)
                    invalid(ErrorCode::UnsupportedFeature,
                            "assign effect in action '" + action.name + "' (only increase/decrease costs)");
                targets.insert(to_lower(change->fluent.name));
                if (const auto *atom = get_if<Atom>(&change->value))
                    reads.insert(to_lower(atom->name));
            }
        }
        for (const string &name : reads) {
            if (targets.count(name))
                invalid(ErrorCode::UnsupportedFeature, "fluent '" + name + "' is both changed and read");
        }
    }

    void ground_action(int schema) {
        const pddl::Action &action = domain.actions[schema];
        vector<Pattern> pre, eff_add, eff_del;
        for (const Literal &l : action.precondition.literals)
            pre.push_back(pattern(action, l.atom, l.negated));
        for (const pddl::EffectItem &item : action.effect.items) {
            if (const auto *l = get_if<Literal>(&item))
                (l->negated ? eff_del : eff_add).push_back(pattern(action, l->atom, false));
        }

        vector<vector<const pddl::TypedName *>> candidates;
        size_t product = 1;
        for (const pddl::TypedName &parameter : action.parameters) {
            candidates.emplace_back();
            for (const pddl::TypedName &object : problem.objects) {
                if (domain.is_subtype(object.type, parameter.type))
                    candidates.back().push_back(&object);
            }
            size_t n = candidates.back().size();
            product = n == 0 ? 0 : (product > SIZE_MAX / n ? SIZE_MAX : product * n);
        }
        task.bindings = task.bindings > SIZE_MAX - product ? SIZE_MAX : task.bindings + product;

        // Static literals are checked as soon as their last parameter is bound.
        vector<vector<const Pattern *>> checks(action.parameters.size() + 1);
        for (const Pattern &p : pre) {
            if (static_predicates.count(to_lower(p.atom->name)))
                checks[p.last_param + 1].push_back(&p);
        }

        vector<const pddl::TypedName *> binding(action.parameters.size());
        auto passes = [&](size_t depth) {
            for (const Pattern *p : checks[depth]) {
                if (holds_initially(instantiate(*p->atom, p->params, binding)) == p->negated)
                    return false;
            }
            return true;
        };
        auto emit = [&]() {
            GroundAction ground;
            ground.name = action.name;
            ground.schema = schema;
            for (const pddl::TypedName *object : binding)
                ground.args.push_back(object->name);
            optional<Rational> c = cost(action, binding);
            if (!c)
                return;
            if (c->is_negative())
                invalid(ErrorCode::InvalidTask, "ground action " + ground.label() + " has negative cost " +
                                                c->to_string());
            ground.cost = *c;
            set<int> pos, neg, add, del;
            for (const Pattern &p : pre)
                (p.negated ? neg : pos).insert(intern(instantiate(*p.atom, p.params, binding)));
            for (int f : pos) {
                if (neg.count(f))
                    return;
            }
            for (const Pattern &p : eff_add)
                add.insert(intern(instantiate(*p.atom, p.params, binding)));
            for (const Pattern &p : eff_del) {
                int f = intern(instantiate(*p.atom, p.params, binding));
                if (!add.count(f))
                    del.insert(f);
            }
            ground.pre_pos.assign(pos.begin(), pos.end());
            ground.pre_neg.assign(neg.begin(), neg.end());
            ground.add.assign(add.begin(), add.end());
            ground.del.assign(del.begin(), del.end());
            task.actions.push_back(std::move(ground));
            if (task.actions.size() > config.max_actions)
                invalid(ErrorCode::GroundingExplosion,
                        "grounding exceeds the cap of " + to_string(config.max_actions) + " ground actions (" +
                        to_string(task.bindings) + " type-consistent bindings)");
        };
        auto recurse = [&](auto &self, size_t depth) -> void {
            if (!passes(depth))
                return;
            if (depth == binding.size()) {
                emit();
                return;
            }
            for (const pddl::TypedName *object : candidates[depth]) {
                binding[depth] = object;
                self(self, depth + 1);
            }
        };
        recurse(recurse, 0);
    }

public:
    Grounder(const pddl::Domain &domain, const pddl::Problem &problem, const GroundConfig &config, GroundTask &task)
        : domain(domain), problem(problem), config(config), task(task) {
    }

    void run() {
        if (problem.metric) {
            if (problem.metric->direction == pddl::MetricDirection::Maximize)
                invalid(ErrorCode::UnsupportedFeature, "maximize metrics are not supported");
            task.unit_cost = false;
            metric_key = atom_key(problem.metric->fluent);
        }
        check_numeric_subset();

        set<string> changed;
        for (const pddl::Action &action : domain.actions) {
            for (const pddl::EffectItem &item : action.effect.items) {
                if (const auto *l = get_if<Literal>(&item))
                    changed.insert(to_lower(l->atom.name));
            }
        }
        for (const pddl::Signature &s : domain.predicates) {
            if (!changed.count(to_lower(s.name)))
                static_predicates.insert(to_lower(s.name));
        }

        for (const pddl::FluentInit &f : problem.init_fluents)
            task.fluents[atom_key(f.fluent)] = f.value;
        vector<int> init_facts;
        for (const Atom &atom : problem.init)
            init_facts.push_back(intern(atom));
        init_size = task.facts.size();

        for (size_t i = 0; i < domain.actions.size(); ++i)
            ground_action(static_cast<int>(i));

        set<int> pos, neg;
        for (const Literal &l : problem.goal.literals) {
            for (const pddl::Term &term : l.atom.args) {
                if (!problem.find_object(term.name))
                    invalid(ErrorCode::InvalidTask, "goal uses unknown object " + term.name);
            }
            (l.negated ? neg : pos).insert(intern(l.atom));
        }
        task.goal_pos.assign(pos.begin(), pos.end());
        task.goal_neg.assign(neg.begin(), neg.end());

        // Facts interned after the initial state was sized.
        FactSet init(task.facts.size());
        for (int f : init_facts)
            init.set(f);
        task.init = init;
    }
};
}

GroundTask ground(const pddl::Domain &domain, const pddl::Problem &problem, const GroundConfig &config) {
    GroundTask task;
    task.domain = domain;
    task.problem = problem;
    Grounder(domain, problem, config, task).run();
    return task;
}

Relaxation relaxed_reachability(const GroundTask &task, const FactSet &state) {
    Relaxation result{vector<bool>(task.facts.size(), false), vector<bool>(task.actions.size(), false)};
    vector<vector<int>> consumers(task.facts.size());
    vector<size_t> missing(task.actions.size());
    deque<int> queue;
    for (size_t f = 0; f < task.facts.size(); ++f) {
        if (state.test(static_cast<int>(f))) {
            result.facts[f] = true;
            queue.push_back(static_cast<int>(f));
        }
    }
    auto fire = [&](size_t a) {
        result.actions[a] = true;
        for (int f : task.actions[a].add) {
            if (!result.facts[f]) {
                result.facts[f] = true;
                queue.push_back(f);
            }
        }
    };
    for (size_t a = 0; a < task.actions.size(); ++a) {
        missing[a] = task.actions[a].pre_pos.size();
        for (int f : task.actions[a].pre_pos)
            consumers[f].push_back(static_cast<int>(a));
        if (missing[a] == 0)
            fire(a);
    }
    while (!queue.empty()) {
        int f = queue.front();
        queue.pop_front();
        for (int a : consumers[f]) {
            if (--missing[a] == 0)
                fire(a);
        }
    }
    return result;
}

}
