#ifndef MODEL2PLAN_PROFILE_H
#define MODEL2PLAN_PROFILE_H

#include "model2plan/diagnostic.h"
#include "model2plan/model.h"

#include <string_view>
#include <vector>

// Well-formedness rules of the PDDL stereotype profile, checked on a scope
// before generation. The catalogue is documented in docs/rules.md.
namespace model2plan::profile {

struct Rule {
    std::string_view id;
    Severity severity;
    std::string_view summary;
    // Generation can proceed by embedding the finding as a PDDL comment.
    bool recoverable;
};

// Catalogue order; validate() reports findings in this order.
const std::vector<Rule> &rule_catalogue();
const Rule *find_rule(std::string_view id);

/*
  Runs every rule on the scope. Findings are ordered by catalogue position,
  then by document order of the offending element. An empty result means
  the scope is ready for generation.
*/
std::vector<Diagnostic> validate(const ir::PackageElement &scope, const ir::ModelDocument &document);

// True if some finding is an Error not recoverable by the generator.
bool blocks_generation(const std::vector<Diagnostic> &diagnostics);

}

#endif
