#include "model2plan/scope.h"

using namespace std;

namespace model2plan::ir {

ScopeIndex::ScopeIndex(const PackageElement &scope) : scope_package(&scope) {
    for (const ClassElement &cls : scope.classes) {
        classes_by_id.emplace(cls.id, &cls);
        if (cls.is_type())
            type_classes.push_back(&cls);
    }
    for (const Activity &activity : scope.activities) {
        for (const ActionElement &action : activity.actions) {
            if (action.is_pddl_action()) {
                pddl_actions.push_back(&action);
                actions_by_id.emplace(action.id, &action);
            }
        }
        for (const FlowElement &flow : activity.flows)
            all_flows.push_back(&flow);
    }
}

const ClassElement *ScopeIndex::find_class(string_view id) const {
    auto it = classes_by_id.find(id);
    return it == classes_by_id.end() ? nullptr : it->second;
}

const ClassElement *ScopeIndex::find_type(string_view id) const {
    const ClassElement *cls = find_class(id);
    return cls && cls->is_type() ? cls : nullptr;
}

const ActionElement *ScopeIndex::find_action(string_view id) const {
    auto it = actions_by_id.find(id);
    return it == actions_by_id.end() ? nullptr : it->second;
}

const ActionElement *ScopeIndex::source_action(const FlowElement &flow) const {
    return flow.source ? find_action(*flow.source) : nullptr;
}

const ActionElement *ScopeIndex::target_action(const FlowElement &flow) const {
    return flow.target ? find_action(*flow.target) : nullptr;
}

vector<const ActionElement *> ScopeIndex::attached_actions(const FlowElement &flow) const {
    vector<const ActionElement *> result;
    if (const ActionElement *source = source_action(flow))
        result.push_back(source);
    if (const ActionElement *target = target_action(flow); target && (result.empty() || result[0] != target))
        result.push_back(target);
    return result;
}

vector<const FlowElement *> ScopeIndex::attached_flows() const {
    vector<const FlowElement *> result;
    for (const FlowElement *flow : all_flows) {
        if (source_action(*flow) || target_action(*flow))
            result.push_back(flow);
    }
    return result;
}

}
