#ifndef MODEL2PLAN_MODEL_H
#define MODEL2PLAN_MODEL_H

#include "model2plan/diagnostic.h"
#include "model2plan/rational.h"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

/*
  In-memory form of a stereotype-annotated engineering model. Documents are
  built by the PMIF reader (or by tests) and treated as immutable afterwards.
  Variable names are stored without the leading '?'.
*/
namespace model2plan::ir {

enum class Stereotype { Domain, Type, Predicate, Function, Action };

// "PDDL_Domain", "PDDL_Type", ...
std::string_view stereotype_name(Stereotype stereotype);
std::optional<Stereotype> parse_stereotype(std::string_view text);

struct ClassElement {
    std::string id;
    std::string name;
    std::optional<Stereotype> stereotype;
    std::optional<std::string> general;

    bool is_type() const { return stereotype == Stereotype::Type; }
    bool operator==(const ClassElement &) const = default;
};

struct Parameter {
    std::string var;
    std::string type_ref;
    bool operator==(const Parameter &) const = default;
};

struct ActionElement {
    std::string id;
    std::string name;
    std::optional<Stereotype> stereotype;
    std::vector<Parameter> parameters;

    bool is_pddl_action() const { return stereotype == Stereotype::Action; }
    const Parameter *find_parameter(std::string_view var) const;
    bool operator==(const ActionElement &) const = default;
};

enum class FlowKind { Object, Control };
enum class NumericEffectKind { Increase, Decrease, Assign };

std::string_view flow_kind_name(FlowKind kind);
std::string_view numeric_effect_name(NumericEffectKind kind);
std::optional<NumericEffectKind> parse_numeric_effect(std::string_view text);

struct NumericRole {
    NumericEffectKind kind = NumericEffectKind::Increase;
    std::string fluent;
    bool operator==(const NumericRole &) const = default;
};

struct FlowElement {
    std::string id;
    FlowKind kind = FlowKind::Control;
    Stereotype stereotype = Stereotype::Predicate;
    std::string name;
    std::optional<std::string> source;
    std::optional<std::string> target;
    bool negated = false;
    std::vector<std::string> arguments;
    std::optional<NumericRole> numeric_role;

    bool is_predicate() const { return stereotype == Stereotype::Predicate; }
    bool is_function() const { return stereotype == Stereotype::Function; }
    bool operator==(const FlowElement &) const = default;
};

struct Activity {
    std::string id;
    std::string name;
    std::vector<ActionElement> actions;
    std::vector<FlowElement> flows;
    bool operator==(const Activity &) const = default;
};

struct PackageElement {
    std::string id;
    std::string name;
    std::optional<Stereotype> stereotype;
    std::vector<ClassElement> classes;
    std::vector<Activity> activities;

    bool is_domain() const { return stereotype == Stereotype::Domain; }
    bool operator==(const PackageElement &) const = default;
};

struct FactSpec {
    std::string name;
    std::vector<std::string> arguments;
    bool negated = false;
    bool operator==(const FactSpec &) const = default;
};

struct FluentSpec {
    std::string name;
    std::vector<std::string> arguments;
    Rational value;
    bool operator==(const FluentSpec &) const = default;
};

enum class MetricDirection { Minimize, Maximize };
std::string_view metric_direction_name(MetricDirection direction);

struct MetricSpec {
    MetricDirection direction = MetricDirection::Minimize;
    std::string fluent;
    bool operator==(const MetricSpec &) const = default;
};

struct InstanceObject {
    std::string name;
    std::string type_ref;
    bool operator==(const InstanceObject &) const = default;
};

struct InstanceData {
    std::string problem_name;
    std::string domain_ref;
    std::vector<InstanceObject> objects;
    std::vector<FactSpec> init_facts;
    std::vector<FluentSpec> init_fluents;
    std::vector<FactSpec> goal_facts;
    std::optional<MetricSpec> metric;
    bool operator==(const InstanceData &) const = default;
};

struct ModelDocument {
    std::string name;
    std::vector<PackageElement> packages;
    std::vector<InstanceData> instances;
    bool operator==(const ModelDocument &) const = default;
};

using ElementRef = std::variant<const PackageElement *, const ClassElement *, const Activity *,
                                const ActionElement *, const FlowElement *>;

// Throws Error(UnknownId).
ElementRef resolve(const ModelDocument &document, std::string_view id);
std::optional<ElementRef> find_element(const ModelDocument &document, std::string_view id);

/*
  The package the generation run works on. Without an explicit id the
  document must contain exactly one Domain-stereotyped package.
  Throws Error(NoDomainPackage | AmbiguousDomain | UnknownId).
*/
const PackageElement &domain_scope(const ModelDocument &document,
                                   const std::optional<std::string> &package_id = std::nullopt);

std::vector<const InstanceData *> instances_for(const ModelDocument &document,
                                                const PackageElement &scope);

// Source position per element id, as recorded by a reader.
using SourceLocations = std::map<std::string, std::pair<int, int>, std::less<>>;

/*
  The document-level invariants: id uniqueness and syntax, referential
  closure, generalization acyclicity, stereotype legality and the per-element
  shape rules. Returns an empty list on a well-formed document.
*/
std::vector<Diagnostic> check_invariants(const ModelDocument &document,
                                         const SourceLocations *locations = nullptr);

bool is_valid_element_id(std::string_view id);

// Identifier used in diagnostics about an instances block, which has no id
// of its own: the problem name when usable as an element id.
std::string instance_element_id(const InstanceData &instances);
bool is_valid_variable_name(std::string_view name);

}

#endif
