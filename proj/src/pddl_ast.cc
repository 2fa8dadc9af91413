#include "model2plan/pddl.h"

#include "model2plan/names.h"

#include <set>

using namespace std;

namespace model2plan::pddl {

string_view numeric_kind_name(NumericKind kind) {
    switch (kind) {
    case NumericKind::Increase: return "increase";
    case NumericKind::Decrease: return "decrease";
    case NumericKind::Assign: return "assign";
    }
    return "";
}

Formula Formula::single(Literal literal) {
    Formula f;
    f.literals.push_back(std::move(literal));
    f.conjunction = false;
    return f;
}

Formula Formula::conjoin(vector<Literal> literals) {
    if (literals.size() == 1)
        return single(std::move(literals.front()));
    Formula f;
    f.literals = std::move(literals);
    return f;
}

Effect Effect::conjoin(vector<EffectItem> items) {
    Effect e;
    e.conjunction = items.size() != 1;
    e.items = std::move(items);
    return e;
}

const TypedName *Action::find_parameter(string_view var) const {
    for (const TypedName &p : parameters) {
        if (iequals(p.name, var))
            return &p;
    }
    return nullptr;
}

namespace {
template<typename T>
const T *find_named(const vector<T> &items, string_view name) {
    for (const T &item : items) {
        if (iequals(item.name, name))
            return &item;
    }
    return nullptr;
}
}

const TypeDecl *Domain::find_type(string_view name) const {
    return find_named(types, name);
}

const Signature *Domain::find_predicate(string_view name) const {
    return find_named(predicates, name);
}

const Signature *Domain::find_function(string_view name) const {
    return find_named(functions, name);
}

const Action *Domain::find_action(string_view name) const {
    return find_named(actions, name);
}

bool Domain::is_subtype(string_view type, string_view ancestor) const {
    if (iequals(ancestor, object_type))
        return true;
    string current(type);
    // Bounded walk; type declarations are acyclic after parsing.
    for (size_t steps = 0; steps <= types.size(); ++steps) {
        if (iequals(current, ancestor))
            return true;
        const TypeDecl *decl = find_type(current);
        if (!decl)
            return false;
        current = decl->parent;
    }
    return false;
}

bool Domain::operator==(const Domain &other) const {
    return name == other.name && requirements == other.requirements && types == other.types &&
           predicates == other.predicates && functions == other.functions && actions == other.actions;
}

const TypedName *Problem::find_object(string_view name) const {
    for (const TypedName &object : objects) {
        if (iequals(object.name, name))
            return &object;
    }
    return nullptr;
}

vector<string> compute_requirements(const Domain &domain) {
    bool typing = false;
    for (const TypeDecl &type : domain.types)
        typing = typing || !iequals(type.name, object_type);
    auto typed = [](const vector<TypedName> &params) {
        for (const TypedName &p : params) {
            if (!iequals(p.type, object_type))
                return true;
        }
        return false;
    };
    for (const Signature &s : domain.predicates)
        typing = typing || typed(s.parameters);
    for (const Signature &s : domain.functions)
        typing = typing || typed(s.parameters);

    bool negative = false, costs = false;
    for (const Action &action : domain.actions) {
        typing = typing || typed(action.parameters);
        for (const Literal &literal : action.precondition.literals)
            negative = negative || literal.negated;
        for (const EffectItem &item : action.effect.items) {
            if (const auto *change = get_if<NumericChange>(&item))
                costs = costs || domain.find_function(change->fluent.name) != nullptr;
        }
    }

    vector<string> result{":strips"};
    if (typing)
        result.push_back(":typing");
    if (negative)
        result.push_back(":negative-preconditions");
    if (costs)
        result.push_back(":action-costs");
    return result;
}

}
