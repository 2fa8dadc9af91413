#include "model2plan/diagnostic.h"

#include <json.hpp>

#include <algorithm>

using namespace std;

namespace model2plan {

string_view severity_name(Severity severity) {
    return severity == Severity::Error ? "error" : "warning";
}

string format_diagnostic(const Diagnostic &diagnostic) {
    string out;
    out += severity_name(diagnostic.severity);
    out += ' ';
    out += diagnostic.rule_id;
    out += ' ';
    out += diagnostic.element_id.empty() ? "-" : diagnostic.element_id;
    out += ": ";
    out += diagnostic.message;
    return out;
}

string format_diagnostics_text(const vector<Diagnostic> &diagnostics) {
    string out;
    for (const Diagnostic &d : diagnostics) {
        out += format_diagnostic(d);
        out += '\n';
    }
    return out;
}

string format_diagnostics_json(const vector<Diagnostic> &diagnostics) {
    nlohmann::ordered_json array = nlohmann::ordered_json::array();
    for (const Diagnostic &d : diagnostics) {
        nlohmann::ordered_json item;
        item["severity"] = string(severity_name(d.severity));
        item["ruleId"] = d.rule_id;
        item["elementId"] = d.element_id;
        item["message"] = d.message;
        array.push_back(std::move(item));
    }
    return array.dump(2) + "\n";
}

size_t count_errors(const vector<Diagnostic> &diagnostics) {
    return static_cast<size_t>(count_if(diagnostics.begin(), diagnostics.end(),
                                        [](const Diagnostic &d) { return d.is_error(); }));
}

string_view error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::Io: return "Io";
    case ErrorCode::XmlSyntax: return "XmlSyntax";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::NoDomainPackage: return "NoDomainPackage";
    case ErrorCode::AmbiguousDomain: return "AmbiguousDomain";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnsupportedFeature: return "UnsupportedFeature";
    case ErrorCode::ProblemGeneration: return "ProblemGeneration";
    case ErrorCode::GroundingExplosion: return "GroundingExplosion";
    case ErrorCode::InvalidTask: return "InvalidTask";
    case ErrorCode::InvalidPlan: return "InvalidPlan";
    }
    return "Unknown";
}

namespace {
string first_message(const vector<Diagnostic> &diagnostics) {
    if (diagnostics.empty())
        return "unspecified error";
    return format_diagnostic(diagnostics.front());
}
}

Error::Error(ErrorCode code, string message)
    : runtime_error(message), error_code(code) {
    findings.push_back(Diagnostic{Severity::Error, string(error_code_name(code)), "", std::move(message)});
}

Error::Error(ErrorCode code, vector<Diagnostic> diagnostics)
    : runtime_error(first_message(diagnostics)), error_code(code), findings(std::move(diagnostics)) {
}

}
