#ifndef MODEL2PLAN_PMIF_H
#define MODEL2PLAN_PMIF_H

#include "model2plan/model.h"

#include <string>
#include <string_view>

// Planning Model Interchange Format: the XML exchange format for models.
// The element vocabulary is documented in docs/pmif.md.
namespace model2plan::pmif {

inline constexpr std::string_view xml_namespace = "urn:model2plan:pmif:1";

/*
  Parses PMIF text into a document that satisfies all model invariants.
  On failure throws Error(XmlSyntax | SchemaViolation | DuplicateId) carrying
  every finding; each diagnostic has a line and column.
*/
ir::ModelDocument parse_pmif(std::string_view text);

// Reads the file, then parse_pmif. Throws Error(Io) if unreadable.
ir::ModelDocument load_pmif(const std::string &path);

// Canonical serialization: document order, fixed attribute order, LF newlines.
std::string write_pmif(const ir::ModelDocument &document);

}

#endif
