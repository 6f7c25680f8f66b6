#pragma once

// VTKB: the knowledge-base statement language. Parsing, canonical
// serialization, and the query and rule sub-grammars.

#include <filesystem>
#include <string>
#include <string_view>

#include "vtkb/kb_model.hpp"
#include "vtkb/query.hpp"

namespace vtkb {

struct SourceDocument {
  std::string text;
  std::string origin = "<inline>";
};

// Throws Error(kIo) if the file cannot be read.
SourceDocument read_document(const std::filesystem::path& path);

// Parses and then runs validate(); the first violation is raised as a
// ParseError with code kSemantic at the offending token.
KnowledgeBase parse_kb(const SourceDocument& doc);

// Syntax only; the caller is responsible for validate().
KnowledgeBase parse_kb_unchecked(const SourceDocument& doc);

// Canonical text: statements grouped by kind (concepts, properties,
// individuals, evaluations, tasks, contexts, rules), each group sorted by id,
// LF line endings. The empty KB serializes to "".
std::string serialize_kb(const KnowledgeBase& kb);

Query parse_query(std::string_view text);

// A single `rule ...` statement.
CompatibilityRule parse_rule(std::string_view text);
std::string serialize_rule(const CompatibilityRule& rule);

}  // namespace vtkb
