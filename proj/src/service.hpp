#pragma once

// Request handlers shared by the C API (and so by the CLI and HTTP server).
// Each handler takes a parsed request and returns the response document;
// failures surface as exceptions that status_of() classifies.

#include <memory>
#include <string>

#include "json_codec.hpp"
#include "vtkb/ontology_io.hpp"

namespace vtkb::detail {

enum class Status {
  kOk = 0,
  kInvalidArgument,
  kIo,
  kParse,
  kSemantic,
  kBadRequest,
  kUnknownReference,
  kNotFound,
  kInfeasible,
  kInvalidQuery,
  kInternal,
};

struct ServiceOptions {
  double default_score = kDefaultUsability;
  bool default_rules_enabled = true;
};

class Service {
 public:
  // Throws ParseError (syntax or the first integrity violation) or Error(kIo).
  Service(const SourceDocument& doc, ServiceOptions options);

  json summary() const;
  json validate() const;
  json techniques() const;
  json technique(std::string_view id) const;  // NotFound for unknown ids
  json classify(bool hierarchy) const;
  json query(const json& request) const;       // {query, explain?}
  json match(const json& request) const;       // DataItem
  json recommend(const json& request) const;   // SceneSpec + top?
  json check(const json& request) const;       // {scene, plan}

  const KnowledgeBase& kb() const { return kb_; }

 private:
  SelectorConfig selector_config() const;

  KnowledgeBase kb_;
  SubsumptionClosure closure_;
  TechniqueCatalog catalog_;
  ServiceOptions options_;
};

class NotFound : public Error {
 public:
  explicit NotFound(const std::string& what) : Error(ErrorCode::kUnknownReference, what) {}
};

// Violations of an unchecked parse: {valid, violations:[...]}.
json validate_document(const SourceDocument& doc);

Status status_of(const std::exception& e);
json error_json(const std::exception& e);

}  // namespace vtkb::detail
