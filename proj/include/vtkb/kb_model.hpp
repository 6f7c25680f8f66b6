#pragma once

// In-memory knowledge base: concept taxonomy, property definitions,
// individuals with assertions, compatibility rules, evaluation records,
// tasks and contexts. Plus the subsumption closure and the integrity checker.
//
// A KnowledgeBase is built once (parser or programmatic add_* calls) and is
// treated as immutable afterwards; every reasoning routine takes it by const
// reference and is safe to call concurrently.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "vtkb/errors.hpp"
#include "vtkb/vocabulary.hpp"

namespace vtkb {

inline constexpr std::string_view kDefaultPrefix = "vt:";

// Well-known concept ids the typed views and the selector rely on.
namespace concepts {
inline constexpr std::string_view kData = "vt:Data";
inline constexpr std::string_view kTechnique = "vt:Visualization_Technique";
inline constexpr std::string_view kDataType = "vt:DataType";
inline constexpr std::string_view kText = "vt:Text";
inline constexpr std::string_view kIssue = "vt:EnvironmentalIssue";
inline constexpr std::string_view kUrbanObject = "vt:UrbanObject";
inline constexpr std::string_view kCoordinates2D = "vt:Coordinates2D";
inline constexpr std::string_view kCoordinates3D = "vt:Coordinates3D";
inline constexpr std::string_view kGeoName = "vt:GeoName";
inline constexpr std::string_view kObjectAnchored = "vt:ObjectAnchored";
}  // namespace concepts

// `[A-Za-z_][A-Za-z0-9_-]*` segments joined by ':'.
bool is_valid_identifier(std::string_view id);

// Adds the default `vt:` prefix to identifiers that carry no prefix.
std::string qualify(std::string_view id);

// Strips a leading `vt:` if present.
std::string_view local_name(std::string_view id);

// An individual or concept used as a value.
struct NodeId {
  std::string id;
  auto operator<=>(const NodeId&) const = default;
};

// Assertion values and query bindings: node, text (also URIs), number or
// boolean. Ordering follows the variant index, then the value.
using Term = std::variant<NodeId, std::string, double, bool>;

bool is_literal(const Term& t);

// VTKB lexical form: ids verbatim, strings quoted and escaped, numbers in
// fixed notation, booleans as true/false.
std::string term_to_string(const Term& t);
std::string quote_string(std::string_view s);
std::string format_number(double v);

// A reference to a symbol together with where it was written. Equality and
// ordering look at the id only.
struct Ref {
  std::string id;
  SourcePos pos;

  friend bool operator==(const Ref& a, const Ref& b) { return a.id == b.id; }
  friend auto operator<=>(const Ref& a, const Ref& b) { return a.id <=> b.id; }
};

struct Concept {
  std::string id;
  std::vector<Ref> parents;
  SourcePos pos;
};

enum class PropertyKind { kObject, kDatum };
enum class Datatype { kText, kNumber, kBoolean, kUri };

std::string_view to_string(Datatype d);
std::optional<Datatype> parse_datatype(std::string_view s);

struct PropertyDef {
  std::string id;
  PropertyKind kind = PropertyKind::kObject;
  Ref domain;
  Ref range;                               // object properties
  Datatype datatype = Datatype::kText;     // datum properties
  SourcePos pos;
};

struct Assertion {
  Ref property;
  Term value;
  SourcePos value_pos;
};

struct Individual {
  std::string id;
  std::vector<Ref> types;
  std::vector<Assertion> assertions;
  SourcePos pos;
};

struct Attribute {
  std::string key;
  Term value;
};

struct TaskSpec {
  std::string id;
  std::vector<Attribute> attributes;
  SourcePos pos;
};

struct ContextSpec {
  std::string id;
  std::vector<Attribute> attributes;
  SourcePos pos;

  // Read from the `viewpointFrame` attribute (Inside / Outside).
  std::optional<ViewpointFrame> viewpoint_frame() const;
};

struct EvaluationRecord {
  std::string id;
  Ref technique;
  std::optional<Ref> task;     // nullopt = wildcard
  std::optional<Ref> context;  // nullopt = wildcard
  double score = 0.0;
  std::string provenance;
  SourcePos pos;
  SourcePos score_pos;
};

enum class RulePredicate {
  kSameTechnique,
  kSameDataType,
  kSameIssue,
  kSameObject,
  kSameLocation,
  kSlotEquals,
  kSlotsOverlap,
};

std::string_view to_string(RulePredicate p);
std::optional<RulePredicate> parse_rule_predicate(std::string_view s);

inline constexpr double kDefaultLocationEpsilon = 1.0;

struct RuleAtom {
  RulePredicate predicate = RulePredicate::kSameTechnique;
  bool negated = false;
  double epsilon = kDefaultLocationEpsilon;    // sameLocation only
  AnchorSlot slot = AnchorSlot::kVolume;        // slotEquals only
  SourcePos pos;

  friend bool operator==(const RuleAtom& a, const RuleAtom& b);
};

struct CompatibilityRule {
  std::string id;
  Severity severity = Severity::kForbid;
  std::vector<RuleAtom> condition;
  SourcePos pos;

  friend bool operator==(const CompatibilityRule& a,
                         const CompatibilityRule& b);
};

struct Taxonomy {
  std::vector<std::string> concepts;
  std::vector<std::pair<std::string, std::string>> edges;  // (sub, sup)
};

class KnowledgeBase {
 public:
  void add_concept(Concept c);
  void add_property(PropertyDef p);
  void add_individual(Individual i);
  void add_task(TaskSpec t);
  void add_context(ContextSpec c);
  void add_evaluation(EvaluationRecord e);
  void add_rule(CompatibilityRule r);

  // Declarations in insertion order; duplicates are kept so validate() can
  // report them. Lookups return the first declaration.
  const std::vector<Concept>& concepts() const { return concepts_; }
  const std::vector<PropertyDef>& properties() const { return properties_; }
  const std::vector<Individual>& individuals() const { return individuals_; }
  const std::vector<TaskSpec>& tasks() const { return tasks_; }
  const std::vector<ContextSpec>& contexts() const { return contexts_; }
  const std::vector<EvaluationRecord>& evaluations() const {
    return evaluations_;
  }
  const std::vector<CompatibilityRule>& rules() const { return rules_; }

  const Concept* find_concept(std::string_view id) const;
  const PropertyDef* find_property(std::string_view id) const;
  const Individual* find_individual(std::string_view id) const;
  const TaskSpec* find_task(std::string_view id) const;
  const ContextSpec* find_context(std::string_view id) const;
  const CompatibilityRule* find_rule(std::string_view id) const;

  bool empty() const;

  // Declared concepts and the direct edges whose endpoints are declared.
  Taxonomy taxonomy() const;

 private:
  using Index = std::map<std::string, std::size_t, std::less<>>;

  std::vector<Concept> concepts_;
  std::vector<PropertyDef> properties_;
  std::vector<Individual> individuals_;
  std::vector<TaskSpec> tasks_;
  std::vector<ContextSpec> contexts_;
  std::vector<EvaluationRecord> evaluations_;
  std::vector<CompatibilityRule> rules_;

  Index concept_index_;
  Index property_index_;
  Index individual_index_;
  Index task_index_;
  Index context_index_;
  Index rule_index_;
};

// Reflexive-transitive closure of the direct subsumption edges, stored as one
// bit row per concept.
class SubsumptionClosure {
 public:
  SubsumptionClosure() = default;

  bool contains(std::string_view concept_id) const;
  const std::vector<std::string>& concepts() const { return ids_; }

  // Throws Error(kUnknownConcept) when either id is undeclared.
  bool is_subconcept(std::string_view sub, std::string_view sup) const;

  // Same as is_subconcept but false instead of throwing.
  bool subsumed(std::string_view sub, std::string_view sup) const;

  std::vector<std::string> ancestors(std::string_view id) const;
  std::vector<std::string> descendants(std::string_view id) const;
  const std::vector<std::string>& direct_parents(std::string_view id) const;

  // All (sub, sup) pairs, sorted.
  std::vector<std::pair<std::string, std::string>> pairs() const;

  // Shortest chain of direct edges sub, ..., sup; empty if not subsumed.
  std::vector<std::string> chain(std::string_view sub,
                                 std::string_view sup) const;

  std::size_t size() const { return ids_.size(); }

 private:
  friend SubsumptionClosure classify(const Taxonomy& taxonomy);

  std::size_t index_of(std::string_view id) const;
  bool bit(std::size_t row, std::size_t col) const {
    return (rows_[row][col / 64] >> (col % 64)) & 1u;
  }

  std::vector<std::string> ids_;  // sorted
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::vector<std::uint64_t>> rows_;  // rows_[sub] has bit sup
  std::vector<std::vector<std::string>> parents_;
};

// Throws CycleError when the direct edges contain a directed cycle and
// Error(kUnknownConcept) when an edge endpoint is undeclared.
SubsumptionClosure classify(const Taxonomy& taxonomy);
SubsumptionClosure classify(const KnowledgeBase& kb);

bool is_subconcept(const SubsumptionClosure& closure, std::string_view sub,
                   std::string_view sup);

// Individuals with some asserted type at or below `concept_id`, sorted.
std::vector<std::string> instances_of(const KnowledgeBase& kb,
                                      const SubsumptionClosure& closure,
                                      std::string_view concept_id);

// True if some asserted type of the individual is subsumed by `concept_id`.
bool has_type(const Individual& individual, const SubsumptionClosure& closure,
              std::string_view concept_id);

struct Violation {
  enum class Kind {
    kDuplicateId,
    kDanglingReference,
    kDomainViolation,
    kRangeViolation,
    kCycle,
    kInvalidValue,
  };

  Kind kind;
  SourcePos pos;
  std::string subject;
  std::string message;

  auto operator<=>(const Violation&) const = default;
};

std::string_view to_string(Violation::Kind k);

// "line:col: Kind: message"
std::string format_violation(const Violation& v);

// Every dangling reference, domain/range violation, duplicate id, taxonomy
// cycle and out-of-range value, sorted by (position, subject, message).
std::vector<Violation> validate(const KnowledgeBase& kb);

}  // namespace vtkb
