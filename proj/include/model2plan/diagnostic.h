#ifndef MODEL2PLAN_DIAGNOSTIC_H
#define MODEL2PLAN_DIAGNOSTIC_H

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace model2plan {

enum class Severity { Error, Warning };

/*
  A structured finding. Produced by the PMIF reader, the profile validator,
  the PDDL parser and the task checker. `line`/`column` are 1-based and 0
  when the finding has no source position.
*/
struct Diagnostic {
    Severity severity = Severity::Error;
    std::string rule_id;
    std::string element_id;
    std::string message;
    int line = 0;
    int column = 0;

    bool is_error() const { return severity == Severity::Error; }
    bool operator==(const Diagnostic &) const = default;
};

std::string_view severity_name(Severity severity);

// `severity ruleId elementId: message`
std::string format_diagnostic(const Diagnostic &diagnostic);
std::string format_diagnostics_text(const std::vector<Diagnostic> &diagnostics);
// JSON array; each object has exactly severity, ruleId, elementId, message.
std::string format_diagnostics_json(const std::vector<Diagnostic> &diagnostics);

std::size_t count_errors(const std::vector<Diagnostic> &diagnostics);

enum class ErrorCode {
    Io,
    XmlSyntax,
    SchemaViolation,
    DuplicateId,
    UnknownId,
    NoDomainPackage,
    AmbiguousDomain,
    SyntaxError,
    UnsupportedFeature,
    ProblemGeneration,
    GroundingExplosion,
    InvalidTask,
    InvalidPlan,
};

std::string_view error_code_name(ErrorCode code);

/*
  Failure of an operation. Parse-style failures carry the full list of
  diagnostics; the what() string is the first one formatted.
*/
class Error : public std::runtime_error {
    ErrorCode error_code;
    std::vector<Diagnostic> findings;
public:
    Error(ErrorCode code, std::string message);
    Error(ErrorCode code, std::vector<Diagnostic> diagnostics);

    ErrorCode code() const { return error_code; }
    const std::vector<Diagnostic> &diagnostics() const { return findings; }
};

}

#endif
