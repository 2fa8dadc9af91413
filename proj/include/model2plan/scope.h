#ifndef MODEL2PLAN_SCOPE_H
#define MODEL2PLAN_SCOPE_H

#include "model2plan/model.h"

#include <string_view>
#include <unordered_map>
#include <vector>

namespace model2plan::ir {

/*
  Lookup tables over the elements of one Domain package, in document order.
  Only elements inside the package are visible; the package must outlive
  the index.
*/
class ScopeIndex {
    const PackageElement *scope_package;
    std::vector<const ClassElement *> type_classes;
    std::vector<const ActionElement *> pddl_actions;
    std::vector<const FlowElement *> all_flows;
    std::unordered_map<std::string_view, const ClassElement *> classes_by_id;
    std::unordered_map<std::string_view, const ActionElement *> actions_by_id;
public:
    explicit ScopeIndex(const PackageElement &scope);

    const PackageElement &package() const { return *scope_package; }
    const std::vector<const ClassElement *> &types() const { return type_classes; }
    const std::vector<const ActionElement *> &actions() const { return pddl_actions; }
    const std::vector<const FlowElement *> &flows() const { return all_flows; }

    // Type-stereotyped class in scope, or nullptr.
    const ClassElement *find_type(std::string_view id) const;
    const ClassElement *find_class(std::string_view id) const;
    // PDDL_Action-stereotyped action in scope, or nullptr.
    const ActionElement *find_action(std::string_view id) const;

    // PDDL actions the flow is connected to: source first, then target.
    std::vector<const ActionElement *> attached_actions(const FlowElement &flow) const;
    const ActionElement *source_action(const FlowElement &flow) const;
    const ActionElement *target_action(const FlowElement &flow) const;

    // Flows connected to at least one PDDL action of the scope.
    std::vector<const FlowElement *> attached_flows() const;
};

}

#endif
