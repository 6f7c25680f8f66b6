#include "vtkb/errors.hpp"

namespace vtkb {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kSemantic: return "SemanticError";
    case ErrorCode::kUnknownConcept: return "UnknownConcept";
    case ErrorCode::kUnknownProperty: return "UnknownProperty";
    case ErrorCode::kUnknownTechnique: return "UnknownTechnique";
    case ErrorCode::kUnknownReference: return "UnknownReference";
    case ErrorCode::kCycle: return "CycleError";
    case ErrorCode::kMissingFacet: return "MissingFacet";
    case ErrorCode::kInvalidFacet: return "InvalidFacet";
    case ErrorCode::kRowNotInResult: return "RowNotInResult";
    case ErrorCode::kInfeasibleItem: return "InfeasibleItem";
    case ErrorCode::kInvalidQuery: return "InvalidQuery";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "IoError";
  }
  return "Error";
}

namespace {

std::string located(const std::string& origin, SourcePos pos,
                    const std::string& message) {
  std::string out;
  if (!origin.empty()) out += origin + ":";
  out += std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": ";
  return out + message;
}

std::string join_path(const std::vector<std::string>& path) {
  std::string out;
  for (const auto& id : path) {
    if (!out.empty()) out += " -> ";
    out += id;
  }
  return out;
}

}  // namespace

ParseError::ParseError(ErrorCode code, SourcePos pos, std::string message,
                       std::vector<std::string> expected, std::string origin)
    : Error(code, located(origin, pos, message)),
      pos_(pos),
      detail_(std::move(message)),
      expected_(std::move(expected)),
      origin_(std::move(origin)) {}

CycleError::CycleError(std::vector<std::string> path)
    : Error(ErrorCode::kCycle, "subsumption cycle: " + join_path(path)),
      path_(std::move(path)) {}

MissingFacet::MissingFacet(std::string subject, std::string facet)
    : Error(ErrorCode::kMissingFacet,
            subject + ": missing required facet '" + facet + "'"),
      subject_(std::move(subject)),
      facet_(std::move(facet)) {}

InfeasibleItem::InfeasibleItem(std::string data_id)
    : Error(ErrorCode::kInfeasibleItem,
            "no technique can display data item " + data_id),
      data_id_(std::move(data_id)) {}

}  // namespace vtkb
