#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vtkb {

enum class ErrorCode {
  kParse,
  kSemantic,
  kUnknownConcept,
  kUnknownProperty,
  kUnknownTechnique,
  kUnknownReference,
  kCycle,
  kMissingFacet,
  kInvalidFacet,
  kRowNotInResult,
  kInfeasibleItem,
  kInvalidQuery,
  kInvalidArgument,
  kIo,
};

std::string_view error_code_name(ErrorCode code);

// 1-based line/column into a source document. {0, 0} means "no position"
// (the object was built programmatically).
struct SourcePos {
  int line = 0;
  int column = 0;

  bool known() const { return line > 0; }
  auto operator<=>(const SourcePos&) const = default;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Syntax errors (kParse) and post-parse integrity failures (kSemantic) share
// this shape.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, SourcePos pos, std::string message,
             std::vector<std::string> expected = {}, std::string origin = {});

  SourcePos pos() const { return pos_; }
  const std::string& detail() const { return detail_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& origin() const { return origin_; }

 private:
  SourcePos pos_;
  std::string detail_;
  std::vector<std::string> expected_;
  std::string origin_;
};

class CycleError : public Error {
 public:
  explicit CycleError(std::vector<std::string> path);
  const std::vector<std::string>& path() const { return path_; }

 private:
  std::vector<std::string> path_;
};

class MissingFacet : public Error {
 public:
  MissingFacet(std::string subject, std::string facet);
  const std::string& subject() const { return subject_; }
  const std::string& facet() const { return facet_; }

 private:
  std::string subject_;
  std::string facet_;
};

class InfeasibleItem : public Error {
 public:
  explicit InfeasibleItem(std::string data_id);
  const std::string& data_id() const { return data_id_; }

 private:
  std::string data_id_;
};

}  // namespace vtkb
