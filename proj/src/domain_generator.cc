#include "model2plan/generator.h"

#include "model2plan/names.h"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <set>

using namespace std;

namespace model2plan::gen {
using ir::ActionElement;
using ir::ClassElement;
using ir::FlowElement;
using ir::Stereotype;

string EmbeddedError::comment() const {
    return "ERROR(" + rule_id + ") " + element_id + ": " + message;
}

DomainGenerator::DomainGenerator(const ir::PackageElement &package) : scope(package) {
}

pddl::Annotation &DomainGenerator::attach(pddl::Annotation &note, string rule, string element, string message) {
    errors.push_back({std::move(rule), std::move(element), std::move(message)});
    note.errors.push_back(errors.back().comment());
    return note;
}

void DomainGenerator::orphan(pddl::Section section, string rule, string element, string message) {
    errors.push_back({std::move(rule), std::move(element), std::move(message)});
    section_notes[static_cast<size_t>(section)].push_back(errors.back().comment());
}

string DomainGenerator::type_name(const string &class_id) const {
    const ClassElement *cls = scope.find_type(class_id);
    return cls ? sanitize_name(cls->name) : string(pddl::object_type);
}

bool DomainGenerator::is_subtype(const string &type, const string &ancestor) {
    map<string, string> parents;
    for (const pddl::TypeDecl &decl : types_info())
        parents.emplace(to_lower(decl.name), to_lower(decl.parent));
    string current = to_lower(type), target = to_lower(ancestor);
    for (size_t steps = 0; steps <= parents.size() + 1; ++steps) {
        if (current == target || target == pddl::object_type)
            return true;
        auto it = parents.find(current);
        if (it == parents.end())
            return false;
        current = it->second;
    }
    return false;
}

const vector<pddl::TypeDecl> &DomainGenerator::types_info() {
    if (type_decls)
        return *type_decls;
    type_decls.emplace();

    // A class whose generalization target is not a type of this scope is a root.
    vector<const ClassElement *> roots;
    map<string, vector<const ClassElement *>> children;
    for (const ClassElement *cls : scope.types()) {
        if (cls->general && scope.find_type(*cls->general))
            children[*cls->general].push_back(cls);
        else
            roots.push_back(cls);
    }

    deque<const ClassElement *> queue(roots.begin(), roots.end());
    set<string> taken{string(pddl::object_type)};
    while (!queue.empty()) {
        const ClassElement *cls = queue.front();
        queue.pop_front();
        for (const ClassElement *child : children[cls->id])
            queue.push_back(child);

        pddl::TypeDecl decl;
        decl.name = sanitize_name(cls->name);
        decl.note.origin = cls->id;
        if (cls->general && scope.find_type(*cls->general))
            decl.parent = type_name(*cls->general);
        if (!taken.insert(to_lower(decl.name)).second) {
            orphan(pddl::Section::Types, "NameCollision", cls->id,
                   "type '" + cls->name + "' maps to PDDL name '" + decl.name +
                   "', which is already declared; type dropped");
            continue;
        }
        type_decls->push_back(std::move(decl));
    }
    return *type_decls;
}

vector<pddl::TypeDecl> DomainGenerator::extract_types() {
    return types_info();
}

namespace {
// Actions a flow contributes to. Predicate flows feed both endpoints; a
// function flow changes the action it leaves, or else the one it enters.
vector<const ActionElement *> relevant_actions(const ir::ScopeIndex &scope, const FlowElement &flow) {
    if (flow.is_function() && flow.numeric_role) {
        if (const ActionElement *source = scope.source_action(flow))
            return {source};
        return {scope.target_action(flow)};
    }
    return scope.attached_actions(flow);
}

string positional_name(size_t index) {
    if (index < 26)
        return string(1, static_cast<char>('a' + index));
    return "p" + to_string(index);
}

string join(const vector<string> &items) {
    string out;
    for (const string &item : items)
        out += (out.empty() ? "" : ", ") + item;
    return out;
}
}

void DomainGenerator::resolve_parameters(SignatureInfo &info, const vector<const FlowElement *> &uses) {
    size_t arity = uses.front()->arguments.size();
    vector<set<string>> names(arity);
    vector<vector<string>> types(arity);
    for (const FlowElement *flow : uses) {
        if (flow->arguments.size() != arity)
            continue;
        for (const ActionElement *action : relevant_actions(scope, *flow)) {
            for (size_t i = 0; i < arity; ++i) {
                const ir::Parameter *parameter = action->find_parameter(flow->arguments[i]);
                if (!parameter)
                    continue;
                names[i].insert(parameter->var);
                string type = type_name(parameter->type_ref);
                bool seen = false;
                for (const string &t : types[i])
                    seen = seen || iequals(t, type);
                if (!seen)
                    types[i].push_back(type);
            }
        }
    }

    vector<pddl::TypedName> parameters(arity);
    set<string> used;
    bool unique = true;
    for (size_t i = 0; i < arity; ++i) {
        parameters[i].name = names[i].size() == 1 ? *names[i].begin() : positional_name(i);
        unique = used.insert(to_lower(parameters[i].name)).second && unique;

        // The most general used type, if the others all descend from it.
        optional<string> join_type;
        for (const string &candidate : types[i]) {
            bool covers = true;
            for (const string &other : types[i])
                covers = covers && is_subtype(other, candidate);
            if (covers) {
                join_type = candidate;
                break;
            }
        }
        if (types[i].empty())
            join_type = string(pddl::object_type);
        if (join_type) {
            parameters[i].type = *join_type;
        } else {
            attach(info.signature.note, "ParameterTypeConflict", uses.front()->id,
                   "argument " + to_string(i + 1) + " of '" + info.model_name + "' is used with unrelated types " +
                   join(types[i]) + "; declared as object");
        }
    }
    if (!unique) {
        for (size_t i = 0; i < arity; ++i)
            parameters[i].name = positional_name(i);
    }
    info.signature.parameters = std::move(parameters);
}

vector<DomainGenerator::SignatureInfo> DomainGenerator::collect_signatures(Stereotype stereotype) {
    vector<pair<string, vector<const FlowElement *>>> groups;
    map<string, size_t> position;
    for (const FlowElement *flow : scope.attached_flows()) {
        if (flow->stereotype != stereotype)
            continue;
        auto [it, inserted] = position.emplace(flow->name, groups.size());
        if (inserted)
            groups.push_back({flow->name, {}});
        groups[it->second].second.push_back(flow);
    }

    set<string> taken;
    if (stereotype == Stereotype::Function) {
        for (const SignatureInfo &p : predicates_info()) {
            if (!p.dropped)
                taken.insert(to_lower(p.signature.name));
        }
    }

    vector<SignatureInfo> result;
    bool function_pass = stereotype == Stereotype::Function;
    string kind = function_pass ? "function" : "predicate";

    if (function_pass && !position.count(string(pddl::total_cost))) {
        for (const FlowElement *flow : scope.attached_flows()) {
            if (flow->is_function() && flow->numeric_role && flow->numeric_role->fluent == pddl::total_cost) {
                SignatureInfo info;
                info.model_name = string(pddl::total_cost);
                info.signature.name = string(pddl::total_cost);
                info.signature.note.origin = flow->id;
                taken.insert(info.model_name);
                result.push_back(std::move(info));
                break;
            }
        }
    }

    for (const auto &[name, uses] : groups) {
        SignatureInfo info;
        info.model_name = name;
        info.signature.name = sanitize_name(name);
        info.signature.note.origin = uses.front()->id;
        if (!taken.insert(to_lower(info.signature.name)).second) {
            info.dropped = true;
            orphan(function_pass ? pddl::Section::Functions : pddl::Section::Predicates, "NameCollision",
                   uses.front()->id,
                   kind + " '" + name + "' maps to PDDL name '" + info.signature.name +
                   "', which is already declared; " + kind + " dropped");
            result.push_back(std::move(info));
            continue;
        }
        for (const FlowElement *flow : uses) {
            if (flow->arguments.size() != uses.front()->arguments.size()) {
                attach(info.signature.note, "UniquePredicateSignatures", flow->id,
                       kind + " '" + name + "' is used with " + to_string(flow->arguments.size()) +
                       " argument(s) here but with " + to_string(uses.front()->arguments.size()) + " by flow '" +
                       uses.front()->id + "'");
                break;
            }
        }
        resolve_parameters(info, uses);
        result.push_back(std::move(info));
    }
    return result;
}

const vector<DomainGenerator::SignatureInfo> &DomainGenerator::predicates_info() {
    if (!predicate_infos)
        predicate_infos = collect_signatures(Stereotype::Predicate);
    return *predicate_infos;
}

const vector<DomainGenerator::SignatureInfo> &DomainGenerator::functions_info() {
    if (!function_infos)
        function_infos = collect_signatures(Stereotype::Function);
    return *function_infos;
}

namespace {
vector<pddl::Signature> kept(const auto &infos) {
    vector<pddl::Signature> result;
    for (const auto &info : infos) {
        if (!info.dropped)
            result.push_back(info.signature);
    }
    return result;
}

template<typename Info>
const Info *find_info(const vector<Info> &infos, const string &model_name) {
    for (const Info &info : infos) {
        if (info.model_name == model_name)
            return &info;
    }
    return nullptr;
}

pddl::NumericKind numeric_kind(ir::NumericEffectKind kind) {
    switch (kind) {
    case ir::NumericEffectKind::Increase: return pddl::NumericKind::Increase;
    case ir::NumericEffectKind::Decrease: return pddl::NumericKind::Decrease;
    case ir::NumericEffectKind::Assign: return pddl::NumericKind::Assign;
    }
    return pddl::NumericKind::Increase;
}
}

vector<pddl::Signature> DomainGenerator::extract_predicates() {
    types_info();
    return kept(predicates_info());
}

vector<pddl::Signature> DomainGenerator::extract_functions() {
    types_info();
    return kept(functions_info());
}

vector<pddl::Action> DomainGenerator::extract_actions() {
    types_info();
    const auto &predicates = predicates_info();
    const auto &functions = functions_info();

    vector<pddl::Action> actions;
    set<string> taken;
    for (const ActionElement *element : scope.actions()) {
        pddl::Action action;
        action.name = sanitize_name(element->name);
        action.note.origin = element->id;
        if (taken.count(to_lower(action.name))) {
            orphan(pddl::Section::Actions, "NameCollision", element->id,
                   "action '" + element->name + "' maps to PDDL name '" + action.name +
                   "', which is already declared; action dropped");
            continue;
        }

        for (const ir::Parameter &parameter : element->parameters) {
            if (!scope.find_type(parameter.type_ref))
                attach(action.note, "TypedParameters", element->id,
                       "parameter '" + parameter.var + "' references '" + parameter.type_ref +
                       "', which is not a type of this domain; typed as object");
            action.parameters.push_back({parameter.var, type_name(parameter.type_ref)});
        }

        // Arguments become variable terms; nullopt if the flow cannot be used here.
        auto terms = [&](const FlowElement &flow, const pddl::Signature &signature,
                         pddl::Annotation &note) -> optional<vector<pddl::Term>> {
            if (flow.arguments.size() != signature.parameters.size()) {
                attach(note, "FlowArityMismatch", flow.id,
                       "flow '" + flow.name + "' has " + to_string(flow.arguments.size()) + " argument(s), '" +
                       signature.name + "' takes " + to_string(signature.parameters.size()) + "; dropped");
                return nullopt;
            }
            vector<pddl::Term> result;
            for (const string &arg : flow.arguments) {
                if (!element->find_parameter(arg)) {
                    attach(note, "UnboundFlowArgument", flow.id,
                           "argument '" + arg + "' of flow '" + flow.name + "' is not a parameter of action '" +
                           element->name + "'; dropped");
                    return nullopt;
                }
                result.push_back(pddl::Term::variable(arg));
            }
            return result;
        };

        vector<pddl::Literal> precondition;
        vector<pddl::EffectItem> effect;
        set<string> changed_fluents;
        for (const FlowElement *flow : scope.attached_flows()) {
            if (flow->is_predicate()) {
                bool incoming = scope.target_action(*flow) == element;
                bool outgoing = scope.source_action(*flow) == element;
                if (!incoming && !outgoing)
                    continue;
                const auto *info = find_info(predicates, flow->name);
                if (info->dropped)
                    continue;
                pddl::Literal literal;
                literal.negated = flow->negated;
                literal.note.origin = flow->id;
                optional<vector<pddl::Term>> args = terms(*flow, info->signature, action.note);
                if (!args)
                    continue;
                literal.atom = {info->signature.name, std::move(*args)};
                if (outgoing)
                    effect.push_back(literal);
                if (incoming)
                    precondition.push_back(std::move(literal));
                continue;
            }

            vector<const ActionElement *> endpoint = relevant_actions(scope, *flow);
            if (find(endpoint.begin(), endpoint.end(), element) == endpoint.end())
                continue;
            if (!flow->numeric_role) {
                attach(action.note, "FunctionEffectShape", flow->id,
                       "function flow '" + flow->name + "' has no effectKind/fluent; dropped");
                continue;
            }
            const auto *target = find_info(functions, flow->numeric_role->fluent);
            if (!target || target->dropped || !target->signature.parameters.empty()) {
                attach(action.note, "FunctionEffectShape", flow->id,
                       "function flow '" + flow->name + "' changes unknown fluent '" + flow->numeric_role->fluent +
                       "'; dropped");
                continue;
            }
            const auto *value = find_info(functions, flow->name);
            if (value->dropped)
                continue;
            pddl::NumericChange change;
            change.kind = numeric_kind(flow->numeric_role->kind);
            change.fluent = {target->signature.name, {}};
            change.note.origin = flow->id;
            optional<vector<pddl::Term>> args = terms(*flow, value->signature, action.note);
            if (!args)
                continue;
            change.value = pddl::Atom{value->signature.name, std::move(*args)};
            if (!changed_fluents.insert(to_lower(target->signature.name)).second) {
                attach(action.note, "DuplicateNumericEffect", flow->id,
                       "fluent '" + target->signature.name + "' is already changed by this action; dropped");
                continue;
            }
            effect.push_back(std::move(change));
        }

        if (effect.empty()) {
            orphan(pddl::Section::Actions, "ActionWithoutEffect", element->id,
                   "action '" + element->name + "' has no outgoing flows; a PDDL action needs an effect");
            continue;
        }
        taken.insert(to_lower(action.name));
        action.precondition = pddl::Formula::conjoin(std::move(precondition));
        action.effect = pddl::Effect::conjoin(std::move(effect));
        actions.push_back(std::move(action));
    }
    return actions;
}

GenerationReport DomainGenerator::run() {
    GenerationReport report;
    pddl::Domain &domain = report.domain;
    domain.name = sanitize_name(scope.package().name);
    domain.types = extract_types();
    domain.predicates = extract_predicates();
    domain.functions = extract_functions();
    domain.actions = extract_actions();
    domain.requirements = pddl::compute_requirements(domain);
    domain.section_notes = section_notes;

    report.embedded_errors = errors;
    report.stats = {domain.types.size(), domain.predicates.size(), domain.functions.size(),
                    domain.actions.size()};
    return report;
}

GenerationReport create_pddl_domain(const ir::PackageElement &scope, const ir::ModelDocument &) {
    return DomainGenerator(scope).run();
}

string format_stats(const GenerationStats &stats) {
    return "types=" + to_string(stats.types) + " predicates=" + to_string(stats.predicates) +
           " functions=" + to_string(stats.functions) + " actions=" + to_string(stats.actions);
}

string report_json(const GenerationReport &report) {
    nlohmann::ordered_json out;
    out["stats"] = {{"types", report.stats.types},
                    {"predicates", report.stats.predicates},
                    {"functions", report.stats.functions},
                    {"actions", report.stats.actions}};
    out["embeddedErrors"] = nlohmann::ordered_json::array();
    for (const EmbeddedError &e : report.embedded_errors)
        out["embeddedErrors"].push_back({{"ruleId", e.rule_id}, {"elementId", e.element_id}, {"message", e.message}});
    return out.dump(2);
}

}
