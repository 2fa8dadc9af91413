#ifndef MODEL2PLAN_PDDL_H
#define MODEL2PLAN_PDDL_H

#include "model2plan/rational.h"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

/*
  Abstract syntax for the supported PDDL 3.1 subset: STRIPS with :typing,
  :negative-preconditions and :action-costs. Names keep their original
  casing; symbol lookup is case-insensitive. Variables are stored without
  the leading '?'.
*/
namespace model2plan::pddl {

inline constexpr std::string_view object_type = "object";
inline constexpr std::string_view total_cost = "total-cost";

/*
  Comments attached to a construct: where it came from in the model, and
  embedded generation errors (full comment text after "; "). Annotations
  never take part in structural equality.
*/
struct Annotation {
    std::string origin;
    std::vector<std::string> errors;

    friend bool operator==(const Annotation &, const Annotation &) { return true; }
};

struct Term {
    std::string name;
    bool is_variable = false;

    static Term variable(std::string name) { return {std::move(name), true}; }
    static Term constant(std::string name) { return {std::move(name), false}; }
    bool operator==(const Term &) const = default;
};

struct Atom {
    std::string name;
    std::vector<Term> args;
    bool operator==(const Atom &) const = default;
};

struct Literal {
    Atom atom;
    bool negated = false;
    Annotation note;
    bool operator==(const Literal &) const = default;
};

/*
  A bare literal, or a flat conjunction of literals. An empty conjunction
  means "no condition". Nested conjunctions and negation of non-atoms are
  unrepresentable.
*/
struct Formula {
    std::vector<Literal> literals;
    bool conjunction = true;

    static Formula single(Literal literal);
    // Collapses a one-element list to the bare literal.
    static Formula conjoin(std::vector<Literal> literals);

    bool empty() const { return literals.empty(); }
    bool operator==(const Formula &) const = default;
};

enum class NumericKind { Increase, Decrease, Assign };
std::string_view numeric_kind_name(NumericKind kind);

struct NumericChange {
    NumericKind kind = NumericKind::Increase;
    Atom fluent;
    std::variant<Atom, Rational> value;
    Annotation note;
    bool operator==(const NumericChange &) const = default;
};

// Literal: add effect, or delete effect when negated.
using EffectItem = std::variant<Literal, NumericChange>;

struct Effect {
    std::vector<EffectItem> items;
    bool conjunction = true;

    static Effect conjoin(std::vector<EffectItem> items);

    bool empty() const { return items.empty(); }
    bool operator==(const Effect &) const = default;
};

struct TypedName {
    std::string name;
    std::string type = std::string(object_type);
    bool operator==(const TypedName &) const = default;
};

struct TypeDecl {
    std::string name;
    std::string parent = std::string(object_type);
    Annotation note;
    bool operator==(const TypeDecl &) const = default;
};

// Predicate or function declaration.
struct Signature {
    std::string name;
    std::vector<TypedName> parameters;
    Annotation note;
    bool operator==(const Signature &) const = default;
};

struct Action {
    std::string name;
    std::vector<TypedName> parameters;
    Formula precondition;
    Effect effect;
    Annotation note;

    const TypedName *find_parameter(std::string_view var) const;
    bool operator==(const Action &) const = default;
};

enum class Section { Types, Predicates, Functions, Actions };

struct Domain {
    std::string name;
    std::vector<std::string> requirements;
    std::vector<TypeDecl> types;
    std::vector<Signature> predicates;
    std::vector<Signature> functions;
    std::vector<Action> actions;
    // Comments for constructs that could not be emitted, by section.
    std::array<std::vector<std::string>, 4> section_notes;

    const TypeDecl *find_type(std::string_view name) const;
    const Signature *find_predicate(std::string_view name) const;
    const Signature *find_function(std::string_view name) const;
    const Action *find_action(std::string_view name) const;
    // True if `type` is `ancestor` or a (transitive) subtype of it.
    bool is_subtype(std::string_view type, std::string_view ancestor) const;

    bool operator==(const Domain &other) const;
};

struct FluentInit {
    Atom fluent;
    Rational value;
    bool operator==(const FluentInit &) const = default;
};

enum class MetricDirection { Minimize, Maximize };

struct Metric {
    MetricDirection direction = MetricDirection::Minimize;
    Atom fluent;
    bool operator==(const Metric &) const = default;
};

struct Problem {
    std::string name;
    std::string domain_name;
    std::vector<TypedName> objects;
    std::vector<Atom> init;
    std::vector<FluentInit> init_fluents;
    Formula goal;
    std::optional<Metric> metric;

    const TypedName *find_object(std::string_view name) const;
    bool operator==(const Problem &) const = default;
};

struct EmitOptions {
    // Print `; from <elementId>` above constructs with a recorded origin.
    bool trace = false;
    // Complete first comment line, e.g. "; generated by ..."; empty for none.
    std::string header;
};

std::string emit_domain(const Domain &domain, const EmitOptions &options = {});
std::string emit_problem(const Problem &problem, const EmitOptions &options = {});

std::string format_atom(const Atom &atom);
std::string format_literal(const Literal &literal);

/*
  Parse the supported subset. `;` comments are skipped. Failures throw
  Error(SyntaxError | UnsupportedFeature) with line/column diagnostics.
*/
Domain parse_domain(std::string_view text);
Problem parse_problem(std::string_view text);

// :strips always; :typing, :negative-preconditions, :action-costs when used.
std::vector<std::string> compute_requirements(const Domain &domain);

}

#endif
