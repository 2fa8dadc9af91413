#include "model2plan/model.h"

#include "model2plan/names.h"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

using namespace std;

namespace model2plan::ir {

string_view stereotype_name(Stereotype stereotype) {
    switch (stereotype) {
    case Stereotype::Domain: return "PDDL_Domain";
    case Stereotype::Type: return "PDDL_Type";
    case Stereotype::Predicate: return "PDDL_Predicate";
    case Stereotype::Function: return "PDDL_Function";
    case Stereotype::Action: return "PDDL_Action";
    }
    return "";
}

optional<Stereotype> parse_stereotype(string_view text) {
    for (Stereotype s : {Stereotype::Domain, Stereotype::Type, Stereotype::Predicate,
                         Stereotype::Function, Stereotype::Action}) {
        if (text == stereotype_name(s))
            return s;
    }
    return nullopt;
}

string_view flow_kind_name(FlowKind kind) {
    return kind == FlowKind::Object ? "object" : "control";
}

string_view numeric_effect_name(NumericEffectKind kind) {
    switch (kind) {
    case NumericEffectKind::Increase: return "increase";
    case NumericEffectKind::Decrease: return "decrease";
    case NumericEffectKind::Assign: return "assign";
    }
    return "";
}

optional<NumericEffectKind> parse_numeric_effect(string_view text) {
    if (text == "increase")
        return NumericEffectKind::Increase;
    if (text == "decrease")
        return NumericEffectKind::Decrease;
    if (text == "assign")
        return NumericEffectKind::Assign;
    return nullopt;
}

string_view metric_direction_name(MetricDirection direction) {
    return direction == MetricDirection::Minimize ? "minimize" : "maximize";
}

const Parameter *ActionElement::find_parameter(string_view var) const {
    for (const Parameter &p : parameters) {
        if (p.var == var)
            return &p;
    }
    return nullptr;
}

optional<ElementRef> find_element(const ModelDocument &document, string_view id) {
    for (const PackageElement &package : document.packages) {
        if (package.id == id)
            return ElementRef(&package);
        for (const ClassElement &cls : package.classes) {
            if (cls.id == id)
                return ElementRef(&cls);
        }
        for (const Activity &activity : package.activities) {
            if (!activity.id.empty() && activity.id == id)
                return ElementRef(&activity);
            for (const ActionElement &action : activity.actions) {
                if (action.id == id)
                    return ElementRef(&action);
            }
            for (const FlowElement &flow : activity.flows) {
                if (flow.id == id)
                    return ElementRef(&flow);
            }
        }
    }
    return nullopt;
}

ElementRef resolve(const ModelDocument &document, string_view id) {
    if (auto found = find_element(document, id))
        return *found;
    throw Error(ErrorCode::UnknownId, "unknown element id '" + string(id) + "'");
}

const PackageElement &domain_scope(const ModelDocument &document, const optional<string> &package_id) {
    if (package_id) {
        for (const PackageElement &package : document.packages) {
            if (package.id == *package_id) {
                if (!package.is_domain())
                    throw Error(ErrorCode::NoDomainPackage,
                                "package '" + *package_id + "' is not stereotyped PDDL_Domain");
                return package;
            }
        }
        throw Error(ErrorCode::UnknownId, "no package with id '" + *package_id + "'");
    }
    const PackageElement *found = nullptr;
    for (const PackageElement &package : document.packages) {
        if (!package.is_domain())
            continue;
        if (found)
            throw Error(ErrorCode::AmbiguousDomain,
                        "more than one PDDL_Domain package ('" + found->id + "', '" + package.id +
                        "'); select one with --scope");
        found = &package;
    }
    if (!found)
        throw Error(ErrorCode::NoDomainPackage, "no package is stereotyped PDDL_Domain");
    return *found;
}

vector<const InstanceData *> instances_for(const ModelDocument &document, const PackageElement &scope) {
    vector<const InstanceData *> result;
    for (const InstanceData &instances : document.instances) {
        if (instances.domain_ref == scope.id)
            result.push_back(&instances);
    }
    return result;
}

bool is_valid_element_id(string_view id) {
    if (id.empty())
        return false;
    for (char c : id) {
        bool ok = isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
        if (!ok)
            return false;
    }
    return true;
}

string instance_element_id(const InstanceData &instances) {
    return is_valid_element_id(instances.problem_name) ? instances.problem_name : "instances";
}

bool is_valid_variable_name(string_view name) {
    return is_pddl_name(name);
}

namespace {
class InvariantChecker {
    const ModelDocument &document;
    const SourceLocations *locations;
    vector<Diagnostic> diagnostics;
    unordered_map<string, ElementRef> index;

    void report(string rule, const string &element, string message) {
        Diagnostic d{Severity::Error, std::move(rule), element, std::move(message)};
        if (locations) {
            auto it = locations->find(element);
            if (it != locations->end()) {
                d.line = it->second.first;
                d.column = it->second.second;
                d.message += " (line " + to_string(d.line) + ", column " + to_string(d.column) + ")";
            }
        }
        diagnostics.push_back(std::move(d));
    }

    void register_id(const string &id, ElementRef ref) {
        if (!is_valid_element_id(id)) {
            report("SchemaViolation", id, "element id '" + id + "' does not match [A-Za-z0-9_.-]+");
            return;
        }
        if (!index.emplace(id, ref).second)
            report("DuplicateId", id, "duplicate element id '" + id + "'");
    }

    bool is_class(const string &id) const {
        auto it = index.find(id);
        return it != index.end() && holds_alternative<const ClassElement *>(it->second);
    }

    bool is_action(const string &id) const {
        auto it = index.find(id);
        return it != index.end() && holds_alternative<const ActionElement *>(it->second);
    }

    void require_pddl_name(const string &id, const string &name, string_view what) {
        if (sanitize_name(name).empty())
            report("SchemaViolation", id,
                   string(what) + " name '" + name + "' has no characters usable in a PDDL identifier");
    }

    void check_ids() {
        for (const PackageElement &package : document.packages) {
            register_id(package.id, &package);
            for (const ClassElement &cls : package.classes)
                register_id(cls.id, &cls);
            for (const Activity &activity : package.activities) {
                if (!activity.id.empty())
                    register_id(activity.id, &activity);
                for (const ActionElement &action : activity.actions)
                    register_id(action.id, &action);
                for (const FlowElement &flow : activity.flows)
                    register_id(flow.id, &flow);
            }
        }
    }

    void check_package(const PackageElement &package) {
        if (package.stereotype && *package.stereotype != Stereotype::Domain)
            report("SchemaViolation", package.id,
                   "stereotype " + string(stereotype_name(*package.stereotype)) +
                   " cannot be applied to package '" + package.name + "'");
        if (package.is_domain())
            require_pddl_name(package.id, package.name, "domain");
        for (const ClassElement &cls : package.classes) {
            if (cls.stereotype && *cls.stereotype != Stereotype::Type)
                report("SchemaViolation", cls.id,
                       "stereotype " + string(stereotype_name(*cls.stereotype)) +
                       " cannot be applied to class '" + cls.name + "'");
            if (cls.is_type())
                require_pddl_name(cls.id, cls.name, "type");
            if (cls.general && !is_class(*cls.general))
                report("SchemaViolation", cls.id,
                       "class '" + cls.id + "' generalizes unknown class '" + *cls.general + "'");
        }
        for (const Activity &activity : package.activities) {
            for (const ActionElement &action : activity.actions)
                check_action(action);
            for (const FlowElement &flow : activity.flows)
                check_flow(flow);
        }
    }

    void check_action(const ActionElement &action) {
        if (action.stereotype && *action.stereotype != Stereotype::Action)
            report("SchemaViolation", action.id,
                   "stereotype " + string(stereotype_name(*action.stereotype)) +
                   " cannot be applied to action '" + action.name + "'");
        if (action.is_pddl_action())
            require_pddl_name(action.id, action.name, "action");
        set<string> seen;
        for (const Parameter &parameter : action.parameters) {
            if (!is_valid_variable_name(parameter.var))
                report("SchemaViolation", action.id,
                       "parameter name '" + parameter.var + "' of action '" + action.name +
                       "' is not a valid variable name");
            if (!seen.insert(to_lower(parameter.var)).second)
                report("SchemaViolation", action.id,
                       "parameter '" + parameter.var + "' declared twice in action '" + action.name + "'");
            if (!is_class(parameter.type_ref))
                report("SchemaViolation", action.id,
                       "parameter '" + parameter.var + "' of action '" + action.name +
                       "' references unknown class '" + parameter.type_ref + "'");
        }
    }

    void check_flow(const FlowElement &flow) {
        if (flow.stereotype != Stereotype::Predicate && flow.stereotype != Stereotype::Function)
            report("SchemaViolation", flow.id,
                   "stereotype " + string(stereotype_name(flow.stereotype)) +
                   " cannot be applied to flow '" + flow.name + "'");
        else
            require_pddl_name(flow.id, flow.name, flow.is_predicate() ? "predicate" : "function");
        bool dangling = false;
        for (const auto *endpoint : {&flow.source, &flow.target}) {
            if (*endpoint && !index.count(**endpoint)) {
                report("SchemaViolation", flow.id,
                       "flow '" + flow.id + "' references unknown element '" + **endpoint + "'");
                dangling = true;
            }
        }
        if (!dangling) {
            bool attached = (flow.source && is_action(*flow.source)) ||
                            (flow.target && is_action(*flow.target));
            if (!attached)
                report("SchemaViolation", flow.id,
                       "flow '" + flow.id + "' is not connected to any action");
        }
        if (flow.negated && !flow.is_predicate())
            report("SchemaViolation", flow.id, "only predicate flows can be negated ('" + flow.id + "')");
        if (flow.numeric_role && !flow.is_function())
            report("SchemaViolation", flow.id,
                   "numeric effect attributes are only allowed on function flows ('" + flow.id + "')");
        for (const string &arg : flow.arguments) {
            if (!is_valid_variable_name(arg))
                report("SchemaViolation", flow.id,
                       "argument '" + arg + "' of flow '" + flow.id + "' is not a valid variable name");
        }
    }

    void check_generalization_cycles() {
        // Colour-marking DFS over `general` edges.
        unordered_map<string, const ClassElement *> classes;
        for (const PackageElement &package : document.packages)
            for (const ClassElement &cls : package.classes)
                classes.emplace(cls.id, &cls);
        unordered_map<string, int> state;
        for (const PackageElement &package : document.packages) {
            for (const ClassElement &cls : package.classes) {
                vector<string> path;
                const ClassElement *current = &cls;
                while (current && state[current->id] == 0) {
                    state[current->id] = 1;
                    path.push_back(current->id);
                    const ClassElement *next = nullptr;
                    if (current->general) {
                        auto it = classes.find(*current->general);
                        if (it != classes.end())
                            next = it->second;
                    }
                    current = next;
                }
                // Reaching a node of the current path again closes a cycle.
                if (current && state[current->id] == 1)
                    report("GeneralizationCycle", current->id,
                           "generalization cycle through class '" + current->id + "'");
                for (const string &id : path)
                    state[id] = 2;
            }
        }
    }

    void check_instances(const InstanceData &instances) {
        string element = instance_element_id(instances);
        if (instances.problem_name.empty() || sanitize_name(instances.problem_name).empty())
            report("SchemaViolation", element, "problem name '" + instances.problem_name + "' is not usable");
        auto it = index.find(instances.domain_ref);
        if (it == index.end() || !holds_alternative<const PackageElement *>(it->second))
            report("SchemaViolation", element,
                   "instances of problem '" + instances.problem_name + "' reference unknown package '" +
                   instances.domain_ref + "'");
        for (const InstanceObject &object : instances.objects) {
            if (!is_pddl_name(object.name))
                report("SchemaViolation", element, "object name '" + object.name + "' is not a PDDL name");
            if (!is_class(object.type_ref))
                report("SchemaViolation", element,
                       "object '" + object.name + "' references unknown class '" + object.type_ref + "'");
        }
        auto check_fact = [&](const string &name, const vector<string> &args) {
            if (name.empty())
                report("SchemaViolation", element, "fact without a name in problem '" + instances.problem_name + "'");
            for (const string &arg : args) {
                if (!is_pddl_name(arg))
                    report("SchemaViolation", element,
                           "argument '" + arg + "' of '" + name + "' is not a PDDL name");
            }
        };
        for (const FactSpec &fact : instances.init_facts) {
            check_fact(fact.name, fact.arguments);
            if (fact.negated)
                report("SchemaViolation", element, "initial facts cannot be negated ('" + fact.name + "')");
        }
        for (const FluentSpec &fluent : instances.init_fluents)
            check_fact(fluent.name, fluent.arguments);
        for (const FactSpec &fact : instances.goal_facts)
            check_fact(fact.name, fact.arguments);
        if (instances.metric && instances.metric->fluent.empty())
            report("SchemaViolation", element, "metric without a fluent");
    }

public:
    InvariantChecker(const ModelDocument &document, const SourceLocations *locations)
        : document(document), locations(locations) {
    }

    vector<Diagnostic> run() {
        check_ids();
        for (const PackageElement &package : document.packages)
            check_package(package);
        check_generalization_cycles();
        for (const InstanceData &instances : document.instances)
            check_instances(instances);
        return std::move(diagnostics);
    }
};
}

vector<Diagnostic> check_invariants(const ModelDocument &document, const SourceLocations *locations) {
    return InvariantChecker(document, locations).run();
}

}
