#include "model2plan/profile.h"

#include "model2plan/names.h"
#include "model2plan/scope.h"

#include <map>
#include <set>

using namespace std;

namespace model2plan::profile {

const vector<Rule> &rule_catalogue() {
    static const vector<Rule> rules{
        {"UniqueTypeNames", Severity::Error, "no two PDDL_Type classes of a domain share a name", false},
        {"UniquePredicateSignatures", Severity::Error,
         "all predicate (function) flows of one name agree in arity; a name is not both", true},
        {"UniqueActionNames", Severity::Error, "no two PDDL_Action elements of a domain share a name", false},
        {"TypedParameters", Severity::Error, "every action parameter references a PDDL_Type of the domain", false},
        {"UnboundFlowArgument", Severity::Error,
         "every flow argument is a parameter of each attached action", true},
        {"FunctionEffectShape", Severity::Error,
         "every function flow on an action has effectKind and a known fluent", true},
        {"EmptyDomain", Severity::Warning, "the domain declares no types, predicates or actions", false},
    };
    return rules;
}

const Rule *find_rule(string_view id) {
    for (const Rule &rule : rule_catalogue()) {
        if (rule.id == id)
            return &rule;
    }
    return nullptr;
}

bool blocks_generation(const vector<Diagnostic> &diagnostics) {
    for (const Diagnostic &d : diagnostics) {
        if (!d.is_error())
            continue;
        const Rule *rule = find_rule(d.rule_id);
        if (!rule || !rule->recoverable)
            return true;
    }
    return false;
}

namespace {
using ir::ActionElement;
using ir::ClassElement;
using ir::FlowElement;

class Validator {
    const ir::ScopeIndex scope;
    vector<Diagnostic> findings;

    void report(string_view rule, const string &element, string message) {
        const Rule *r = find_rule(rule);
        findings.push_back({r->severity, string(rule), element, std::move(message)});
    }

    // Groups elements by name, keeping first-occurrence order.
    template<typename T, typename Name>
    static vector<pair<string, vector<const T *>>> group_by(const vector<const T *> &items, Name name) {
        vector<pair<string, vector<const T *>>> groups;
        map<string, size_t> position;
        for (const T *item : items) {
            string key = name(*item);
            auto [it, inserted] = position.emplace(key, groups.size());
            if (inserted)
                groups.push_back({key, {}});
            groups[it->second].second.push_back(item);
        }
        return groups;
    }

    static string id_list(const vector<const ClassElement *> &items) {
        string out;
        for (const ClassElement *item : items)
            out += (out.empty() ? "" : ", ") + item->id;
        return out;
    }

    void unique_type_names() {
        for (const auto &[name, classes] : group_by(scope.types(), [](const ClassElement &c) { return c.name; })) {
            if (classes.size() > 1)
                report("UniqueTypeNames", classes[1]->id,
                       "type name '" + name + "' is declared " + to_string(classes.size()) +
                       " times (" + id_list(classes) + ")");
        }
    }

    void unique_signatures() {
        vector<const FlowElement *> flows = scope.attached_flows();
        map<string, const FlowElement *> predicate_names;
        for (const FlowElement *flow : flows) {
            if (flow->is_predicate())
                predicate_names.emplace(flow->name, flow);
        }

        for (const auto &[name, group] : group_by(flows, [](const FlowElement &f) {
                 return string(f.is_predicate() ? "p:" : "f:") + f.name;
             })) {
            const FlowElement *first = group.front();
            for (const FlowElement *flow : group) {
                if (flow->arguments.size() != first->arguments.size()) {
                    report("UniquePredicateSignatures", flow->id,
                           string(first->is_predicate() ? "predicate" : "function") + " '" + first->name +
                           "' used with " + to_string(flow->arguments.size()) + " argument(s) by flow '" +
                           flow->id + "' but with " + to_string(first->arguments.size()) + " by flow '" +
                           first->id + "'");
                    break;
                }
            }
        }
        set<string> reported;
        for (const FlowElement *flow : flows) {
            if (!flow->is_function() || reported.count(flow->name))
                continue;
            auto it = predicate_names.find(flow->name);
            if (it != predicate_names.end()) {
                reported.insert(flow->name);
                report("UniquePredicateSignatures", flow->id,
                       "name '" + flow->name + "' is used both as predicate (flow '" + it->second->id +
                       "') and as function (flow '" + flow->id + "')");
            }
        }
    }

    void unique_action_names() {
        for (const auto &[name, actions] :
             group_by(scope.actions(), [](const ActionElement &a) { return a.name; })) {
            if (actions.size() > 1)
                report("UniqueActionNames", actions[1]->id,
                       "action name '" + name + "' is declared " + to_string(actions.size()) + " times");
        }
    }

    void typed_parameters() {
        for (const ActionElement *action : scope.actions()) {
            for (const ir::Parameter &parameter : action->parameters) {
                if (!scope.find_type(parameter.type_ref))
                    report("TypedParameters", action->id,
                           "parameter '" + parameter.var + "' of action '" + action->name +
                           "' references '" + parameter.type_ref + "', which is not a PDDL_Type of this domain");
            }
        }
    }

    void unbound_arguments() {
        for (const FlowElement *flow : scope.attached_flows()) {
            for (const ActionElement *action : scope.attached_actions(*flow)) {
                for (const string &arg : flow->arguments) {
                    if (!action->find_parameter(arg))
                        report("UnboundFlowArgument", flow->id,
                               "argument '" + arg + "' of flow '" + flow->name + "' is not a parameter of action '" +
                               action->name + "'");
                }
            }
        }
    }

    void function_effect_shape() {
        set<string> nullary_functions{"total-cost"};
        for (const FlowElement *flow : scope.attached_flows()) {
            if (flow->is_function() && flow->arguments.empty())
                nullary_functions.insert(flow->name);
        }
        for (const FlowElement *flow : scope.attached_flows()) {
            if (!flow->is_function())
                continue;
            if (!flow->numeric_role) {
                report("FunctionEffectShape", flow->id,
                       "function flow '" + flow->name + "' has no effectKind/fluent; functions can only be used "
                       "in numeric effects");
            } else if (!nullary_functions.count(flow->numeric_role->fluent)) {
                report("FunctionEffectShape", flow->id,
                       "function flow '" + flow->name + "' changes unknown fluent '" + flow->numeric_role->fluent +
                       "'");
            }
        }
    }

    void empty_domain() {
        bool has_flows = false;
        for (const FlowElement *flow : scope.attached_flows())
            has_flows = has_flows || flow->is_predicate();
        if (scope.types().empty() && scope.actions().empty() && !has_flows)
            report("EmptyDomain", scope.package().id,
                   "domain '" + scope.package().name + "' contains no types, predicates or actions");
    }

public:
    explicit Validator(const ir::PackageElement &package) : scope(package) {}

    vector<Diagnostic> run() {
        unique_type_names();
        unique_signatures();
        unique_action_names();
        typed_parameters();
        unbound_arguments();
        function_effect_shape();
        empty_domain();
        return std::move(findings);
    }
};
}

vector<Diagnostic> validate(const ir::PackageElement &scope, const ir::ModelDocument &) {
    return Validator(scope).run();
}

}
