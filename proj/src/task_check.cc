#include "model2plan/task.h"

#include "model2plan/names.h"

#include <set>

using namespace std;

namespace model2plan::plan {
using pddl::Atom;
using pddl::Signature;

namespace {
class TaskChecker {
    const pddl::Domain &domain;
    const pddl::Problem &problem;
    const GroundConfig &config;
    vector<Diagnostic> findings;
    set<string> requirements;
    set<string> missing_reported;

    void report(string rule, const string &element, string message) {
        findings.push_back({Severity::Error, std::move(rule), element, std::move(message)});
    }

    void require(const string &key, const string &element, const string &what) {
        if (requirements.count(key) || missing_reported.count(key))
            return;
        missing_reported.insert(key);
        report("MissingRequirement", element, what + " requires " + key);
    }

    bool type_declared(const string &type) const {
        return iequals(type, pddl::object_type) || domain.find_type(type);
    }

    void check_type(const string &type, const string &element, const string &where) {
        if (!type_declared(type))
            report("UndefinedSymbol", element, "type '" + type + "' of " + where + " is not declared");
        else if (!iequals(type, pddl::object_type))
            require(":typing", element, "type '" + type + "'");
    }

    void check_signatures(const vector<Signature> &signatures, const string &kind) {
        for (const Signature &s : signatures) {
            for (const pddl::TypedName &p : s.parameters)
                check_type(p.type, s.name, kind + " '" + s.name + "'");
        }
    }

    /*
      Checks an atom against a declaration. `type_of` maps a term to its
      type, or nullopt when the term is itself undefined (already reported).
    */
    template<typename TypeOf>
    void check_atom(const Atom &atom, const Signature *signature, const string &kind, const string &element,
                    TypeOf type_of) {
        if (!signature) {
            report("UndefinedSymbol", element, kind + " '" + atom.name + "' is not declared");
            return;
        }
        if (atom.args.size() != signature->parameters.size()) {
            report("ArityMismatch", element,
                   kind + " '" + atom.name + "' takes " + to_string(signature->parameters.size()) +
                   " argument(s), used with " + to_string(atom.args.size()) + " in " + pddl::format_atom(atom));
            return;
        }
        for (size_t i = 0; i < atom.args.size(); ++i) {
            optional<string> type = type_of(atom.args[i]);
            const string &expected = signature->parameters[i].type;
            if (type && type_declared(*type) && type_declared(expected) && !domain.is_subtype(*type, expected))
                report("TypeMismatch", element,
                       "argument " + to_string(i + 1) + " of " + pddl::format_atom(atom) + " has type " + *type +
                       ", expected " + expected);
        }
    }

    void check_actions() {
        for (const pddl::Action &action : domain.actions) {
            for (const pddl::TypedName &p : action.parameters)
                check_type(p.type, action.name, "parameter ?" + p.name);
            auto type_of = [&](const pddl::Term &term) -> optional<string> {
                if (term.is_variable) {
                    if (const pddl::TypedName *p = action.find_parameter(term.name))
                        return p->type;
                    report("UndefinedSymbol", action.name, "variable ?" + term.name + " is not a parameter");
                    return nullopt;
                }
                report("UndefinedSymbol", action.name, "constant '" + term.name + "' is not declared in the domain");
                return nullopt;
            };
            for (const pddl::Literal &l : action.precondition.literals) {
                check_atom(l.atom, domain.find_predicate(l.atom.name), "predicate", action.name, type_of);
                if (l.negated)
                    require(":negative-preconditions", action.name, "negative precondition");
            }
            for (const pddl::EffectItem &item : action.effect.items) {
                if (const auto *l = get_if<pddl::Literal>(&item)) {
                    check_atom(l->atom, domain.find_predicate(l->atom.name), "predicate", action.name, type_of);
                    continue;
                }
                const auto &change = get<pddl::NumericChange>(item);
                check_atom(change.fluent, domain.find_function(change.fluent.name), "function", action.name, type_of);
                if (const auto *value = get_if<Atom>(&change.value))
                    check_atom(*value, domain.find_function(value->name), "function", action.name, type_of);
                require(":action-costs", action.name, "numeric effect");
            }
        }
    }

    void check_problem() {
        const string &element = problem.name;
        if (!iequals(problem.domain_name, domain.name))
            report("DomainMismatch", element,
                   "problem is for domain '" + problem.domain_name + "', not '" + domain.name + "'");
        for (const pddl::TypedName &object : problem.objects)
            check_type(object.type, element, "object " + object.name);
        auto type_of = [&](const pddl::Term &term) -> optional<string> {
            if (const pddl::TypedName *object = problem.find_object(term.name))
                return object->type;
            report("UndefinedSymbol", element, "object '" + term.name + "' is not declared");
            return nullopt;
        };
        for (const Atom &atom : problem.init)
            check_atom(atom, domain.find_predicate(atom.name), "predicate", element, type_of);
        for (const pddl::FluentInit &f : problem.init_fluents)
            check_atom(f.fluent, domain.find_function(f.fluent.name), "function", element, type_of);
        for (const pddl::Literal &l : problem.goal.literals) {
            check_atom(l.atom, domain.find_predicate(l.atom.name), "predicate", element, type_of);
            if (l.negated)
                require(":negative-preconditions", element, "negative goal");
        }
        if (problem.metric)
            check_atom(problem.metric->fluent, domain.find_function(problem.metric->fluent.name), "function",
                       element, type_of);
    }

    void check_reachability() {
        GroundTask task;
        try {
            task = ground(domain, problem, config);
        } catch (const Error &e) {
            report(string(error_code_name(e.code())), problem.name, e.what());
            return;
        }
        Relaxation relaxed = relaxed_reachability(task, task.init);
        vector<bool> schema_reached(domain.actions.size(), false);
        for (size_t a = 0; a < task.actions.size(); ++a) {
            if (relaxed.actions[a])
                schema_reached[task.actions[a].schema] = true;
        }
        for (size_t s = 0; s < domain.actions.size(); ++s) {
            if (!schema_reached[s])
                report("UnreachableAction", domain.actions[s].name,
                       "no ground instance of '" + domain.actions[s].name +
                       "' is reachable from the initial state, even ignoring delete effects");
        }
        for (int f : task.goal_pos) {
            if (!relaxed.facts[f])
                report("UnsatisfiableGoal", problem.name,
                       "goal fact " + pddl::format_atom(task.facts[f]) + " is unreachable, even ignoring delete effects");
        }
        for (int f : task.goal_neg) {
            if (!task.init.test(f))
                continue;
            bool deletable = false;
            for (size_t a = 0; a < task.actions.size() && !deletable; ++a) {
                if (!relaxed.actions[a])
                    continue;
                for (int d : task.actions[a].del)
                    deletable = deletable || d == f;
            }
            if (!deletable)
                report("UnsatisfiableGoal", problem.name,
                       "goal requires (not " + pddl::format_atom(task.facts[f]) +
                       "), but no reachable action deletes it");
        }
    }

public:
    TaskChecker(const pddl::Domain &domain, const pddl::Problem &problem, const GroundConfig &config)
        : domain(domain), problem(problem), config(config) {
        for (const string &r : domain.requirements)
            requirements.insert(to_lower(r));
    }

    vector<Diagnostic> run() {
        check_signatures(domain.predicates, "predicate");
        check_signatures(domain.functions, "function");
        check_actions();
        check_problem();
        if (findings.empty())
            check_reachability();
        return std::move(findings);
    }
};
}

vector<Diagnostic> check_task(const pddl::Domain &domain, const pddl::Problem &problem, const GroundConfig &config) {
    return TaskChecker(domain, problem, config).run();
}

}
