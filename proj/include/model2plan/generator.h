#ifndef MODEL2PLAN_GENERATOR_H
#define MODEL2PLAN_GENERATOR_H

#include "model2plan/model.h"
#include "model2plan/pddl.h"
#include "model2plan/scope.h"

#include <array>
#include <optional>
#include <string>
#include <vector>

// Model-to-PDDL transformation: domain (types, predicates, functions,
// actions in that order) and problem files.
namespace model2plan::gen {

struct EmbeddedError {
    std::string rule_id;
    std::string element_id;
    std::string message;

    // `ERROR(<ruleId>) <elementId>: <message>`, the comment text without "; ".
    std::string comment() const;
    bool operator==(const EmbeddedError &) const = default;
};

struct GenerationStats {
    std::size_t types = 0;
    std::size_t predicates = 0;
    std::size_t functions = 0;
    std::size_t actions = 0;
    bool operator==(const GenerationStats &) const = default;
};

struct GenerationReport {
    pddl::Domain domain;
    std::vector<EmbeddedError> embedded_errors;
    GenerationStats stats;
};

/*
  Walks one Domain package. Recoverable modelling gaps do not stop the
  transformation; they are recorded as embedded errors and attached as
  comments to the nearest construct, so the emitted file still parses.
  The extract_* passes may be called individually; run() calls them in
  order and assembles the domain.
*/
class DomainGenerator {
    struct SignatureInfo {
        pddl::Signature signature;
        std::string model_name;
        bool dropped = false;
    };

    ir::ScopeIndex scope;
    std::vector<EmbeddedError> errors;
    std::array<std::vector<std::string>, 4> section_notes;
    std::optional<std::vector<pddl::TypeDecl>> type_decls;
    std::optional<std::vector<SignatureInfo>> predicate_infos;
    std::optional<std::vector<SignatureInfo>> function_infos;
public:
    explicit DomainGenerator(const ir::PackageElement &scope);

    // Parents before children: roots in document order, then each level.
    std::vector<pddl::TypeDecl> extract_types();
    std::vector<pddl::Signature> extract_predicates();
    // Includes the implicit `(total-cost)` when a numeric effect targets it.
    std::vector<pddl::Signature> extract_functions();
    std::vector<pddl::Action> extract_actions();

    GenerationReport run();

    const std::vector<EmbeddedError> &embedded_errors() const { return errors; }
private:
    std::string type_name(const std::string &class_id) const;
    const std::vector<pddl::TypeDecl> &types_info();
    bool is_subtype(const std::string &type, const std::string &ancestor);
    const std::vector<SignatureInfo> &predicates_info();
    const std::vector<SignatureInfo> &functions_info();
    std::vector<SignatureInfo> collect_signatures(ir::Stereotype stereotype);
    void resolve_parameters(SignatureInfo &info, const std::vector<const ir::FlowElement *> &uses);
    pddl::Annotation &attach(pddl::Annotation &note, std::string rule, std::string element, std::string message);
    void orphan(pddl::Section section, std::string rule, std::string element, std::string message);
};

GenerationReport create_pddl_domain(const ir::PackageElement &scope, const ir::ModelDocument &document);

// `types=<n> predicates=<n> functions=<n> actions=<n>`
std::string format_stats(const GenerationStats &stats);
// {"stats": {...}, "embeddedErrors": [{"ruleId", "elementId", "message"}]}
std::string report_json(const GenerationReport &report);

/*
  Builds the problem for one instances block against a generated domain.
  Throws Error(ProblemGeneration) listing every UnknownType, UnknownPredicate,
  UnknownFunction, UnknownObject, ArityMismatch, TypeMismatch, DuplicateObject
  or EmptyGoal finding.
*/
pddl::Problem create_pddl_problem(const ir::InstanceData &instances, const pddl::Domain &domain,
                                  const ir::ModelDocument &document);

}

#endif
