#include "model2plan/planner.h"

#include "model2plan/names.h"

#include <cctype>
#include <unordered_set>

using namespace std;

namespace model2plan::plan {

string format_plan(const Plan &plan) {
    string out;
    for (const PlanStep &step : plan.steps) {
        out += "(" + step.action;
        for (const string &arg : step.args)
            out += " " + arg;
        out += ")\n";
    }
    out += "; cost = " + plan.cost.value_or(Rational(0)).to_string() + " (general cost)\n";
    return out;
}

namespace {
string trim(string_view text) {
    size_t b = 0, e = text.size();
    while (b < e && isspace(static_cast<unsigned char>(text[b])))
        ++b;
    while (e > b && isspace(static_cast<unsigned char>(text[e - 1])))
        --e;
    return string(text.substr(b, e - b));
}

[[noreturn]] void syntax_error(int line, const string &message) {
    Diagnostic d{Severity::Error, "SyntaxError", "plan", message, line, 1};
    throw Error(ErrorCode::SyntaxError, vector<Diagnostic>{d});
}

// `; cost = <value>` with an optional trailing remark.
optional<Rational> cost_comment(const string &comment) {
    string body = trim(comment);
    const string prefix = "cost";
    if (body.compare(0, prefix.size(), prefix) != 0)
        return nullopt;
    body = trim(string_view(body).substr(prefix.size()));
    if (body.empty() || body[0] != '=')
        return nullopt;
    body = trim(string_view(body).substr(1));
    size_t end = body.find_first_of(" \t(");
    return Rational::parse(body.substr(0, end));
}
}

Plan parse_plan(string_view text) {
    Plan plan;
    int line_number = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        string_view raw = text.substr(pos, eol == string_view::npos ? string_view::npos : eol - pos);
        pos = eol == string_view::npos ? text.size() + 1 : eol + 1;
        ++line_number;

        string line(raw);
        if (size_t semicolon = line.find(';'); semicolon != string::npos) {
            if (optional<Rational> declared = cost_comment(line.substr(semicolon + 1)))
                plan.cost = declared;
            line.erase(semicolon);
        }
        line = trim(line);
        if (line.empty())
            continue;

        // Optional "N:" prefix, as printed by temporal planners.
        size_t colon = line.find(':');
        size_t paren = line.find('(');
        if (colon != string::npos && paren != string::npos && colon < paren)
            line = trim(string_view(line).substr(colon + 1));
        if (line.empty() || line[0] != '(')
            syntax_error(line_number, "expected '(' to start a plan step");
        size_t close = line.find(')');
        if (close == string::npos)
            syntax_error(line_number, "unterminated plan step");
        string rest = trim(string_view(line).substr(close + 1));
        if (!rest.empty() && !(rest.front() == '[' && rest.back() == ']'))
            syntax_error(line_number, "unexpected text after plan step: " + rest);

        PlanStep step;
        string inner = line.substr(1, close - 1);
        size_t i = 0;
        while (i < inner.size()) {
            while (i < inner.size() && isspace(static_cast<unsigned char>(inner[i])))
                ++i;
            size_t start = i;
            while (i < inner.size() && !isspace(static_cast<unsigned char>(inner[i])))
                ++i;
            if (i > start) {
                string token = inner.substr(start, i - start);
                if (step.action.empty())
                    step.action = token;
                else
                    step.args.push_back(token);
            }
        }
        if (step.action.empty())
            syntax_error(line_number, "empty plan step");
        plan.steps.push_back(std::move(step));
    }
    return plan;
}

namespace {
class Simulator {
    const GroundTask &task;
    const pddl::Domain &domain;
    const pddl::Problem &problem;
    unordered_set<string> state;
    ValidationResult result;

    void report(string rule, string element, string message) {
        result.findings.push_back({Severity::Error, std::move(rule), std::move(element), std::move(message)});
    }

    static pddl::Atom bind(const pddl::Atom &atom, const pddl::Action &action, const vector<string> &args) {
        pddl::Atom ground{atom.name, {}};
        for (const pddl::Term &term : atom.args) {
            string value = term.name;
            for (size_t i = 0; term.is_variable && i < action.parameters.size(); ++i) {
                if (iequals(action.parameters[i].name, term.name))
                    value = args[i];
            }
            ground.args.push_back(pddl::Term::constant(value));
        }
        return ground;
    }

    bool holds(const pddl::Atom &atom) const {
        return state.count(atom_key(atom)) > 0;
    }

    // Canonical object names for the step, or nullopt after reporting.
    optional<vector<string>> arguments(const PlanStep &step, const pddl::Action &action, const string &element) {
        if (step.args.size() != action.parameters.size()) {
            report("InvalidArguments", element,
                   "action '" + action.name + "' takes " + to_string(action.parameters.size()) +
                   " argument(s), step has " + to_string(step.args.size()));
            return nullopt;
        }
        vector<string> args;
        for (size_t i = 0; i < step.args.size(); ++i) {
            const pddl::TypedName *object = problem.find_object(step.args[i]);
            if (!object) {
                report("InvalidArguments", element, "unknown object '" + step.args[i] + "'");
                return nullopt;
            }
            if (!domain.is_subtype(object->type, action.parameters[i].type)) {
                report("InvalidArguments", element,
                       "object '" + object->name + "' of type " + object->type + " cannot bind ?" +
                       action.parameters[i].name + " - " + action.parameters[i].type);
                return nullopt;
            }
            args.push_back(object->name);
        }
        return args;
    }

    optional<Rational> step_cost(const pddl::Action &action, const vector<string> &args, const string &element) {
        if (task.unit_cost)
            return Rational(1);
        string metric = atom_key(problem.metric->fluent);
        Rational total;
        for (const pddl::EffectItem &item : action.effect.items) {
            const auto *change = get_if<pddl::NumericChange>(&item);
            if (!change || atom_key(bind(change->fluent, action, args)) != metric)
                continue;
            Rational value;
            if (const auto *constant = get_if<Rational>(&change->value)) {
                value = *constant;
            } else {
                pddl::Atom fluent = bind(get<pddl::Atom>(change->value), action, args);
                auto it = task.fluents.find(atom_key(fluent));
                if (it == task.fluents.end()) {
                    report("UndefinedFluent", element, "fluent " + pddl::format_atom(fluent) + " has no value");
                    return nullopt;
                }
                value = it->second;
            }
            total += change->kind == pddl::NumericKind::Decrease ? -value : value;
        }
        return total;
    }

public:
    explicit Simulator(const GroundTask &task) : task(task), domain(task.domain), problem(task.problem) {
        for (const pddl::Atom &atom : problem.init)
            state.insert(atom_key(atom));
    }

    ValidationResult run(const Plan &plan) {
        for (size_t i = 0; i < plan.steps.size(); ++i) {
            const PlanStep &step = plan.steps[i];
            string element = "step-" + to_string(i + 1);
            string label = "step " + to_string(i + 1) + " " + format_plan_step(step);
            const pddl::Action *action = domain.find_action(step.action);
            if (!action) {
                report("UnknownAction", element, label + ": action '" + step.action + "' is not declared");
                return std::move(result);
            }
            optional<vector<string>> args = arguments(step, *action, element);
            if (!args)
                return std::move(result);
            for (const pddl::Literal &l : action->precondition.literals) {
                pddl::Atom atom = bind(l.atom, *action, *args);
                if (holds(atom) == l.negated) {
                    report("PreconditionViolated", element,
                           label + ": precondition " +
                           (l.negated ? "(not " + pddl::format_atom(atom) + ")" : pddl::format_atom(atom)) +
                           " is not satisfied");
                    return std::move(result);
                }
            }
            optional<Rational> cost = step_cost(*action, *args, element);
            if (!cost)
                return std::move(result);
            result.cost += *cost;

            vector<string> adds;
            for (const pddl::EffectItem &item : action->effect.items) {
                if (const auto *l = get_if<pddl::Literal>(&item)) {
                    string key = atom_key(bind(l->atom, *action, *args));
                    if (l->negated)
                        state.erase(key);
                    else
                        adds.push_back(key);
                }
            }
            for (string &key : adds)
                state.insert(std::move(key));
        }

        string missing;
        for (const pddl::Literal &l : problem.goal.literals) {
            if (holds(l.atom) == l.negated)
                missing += (missing.empty() ? "" : " ") +
                           (l.negated ? "(not " + pddl::format_atom(l.atom) + ")" : pddl::format_atom(l.atom));
        }
        if (!missing.empty())
            report("GoalNotSatisfied", "goal", "goal not satisfied after the last step: " + missing);
        if (plan.cost && *plan.cost != result.cost)
            report("CostMismatch", "plan",
                   "plan declares cost " + plan.cost->to_string() + ", simulation gives " + result.cost.to_string());
        result.valid = result.findings.empty();
        return std::move(result);
    }

    static string format_plan_step(const PlanStep &step) {
        string out = "(" + step.action;
        for (const string &arg : step.args)
            out += " " + arg;
        return out + ")";
    }
};
}

ValidationResult validate_plan(const GroundTask &task, const Plan &plan) {
    return Simulator(task).run(plan);
}

}
