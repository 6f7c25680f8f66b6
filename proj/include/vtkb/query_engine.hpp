#pragma once

// Conjunctive query evaluation with subsumption-aware type atoms.
//
// Semantics: a row is in the result iff some assignment of all body variables
// satisfies every atom. A type atom (x, C) holds when x is an individual with
// an asserted type D such that D is subsumed by C, or when x is a concept used
// as an assertion value (a punned node) that is itself subsumed by C. Property
// atoms match asserted values exactly, without subsumption.

#include <string>
#include <vector>

#include "vtkb/kb_model.hpp"
#include "vtkb/query.hpp"

namespace vtkb {

struct BindingSet {
  std::vector<std::string> variables;   // head order
  std::vector<std::vector<Term>> rows;  // sorted, no duplicates
};

// Throws Error(kUnknownConcept / kUnknownProperty / kUnknownReference) for
// undeclared symbols and Error(kInvalidQuery) for role errors (a variable used
// both as node and literal, filters on non-literal variables).
void check_query(const KnowledgeBase& kb, const SubsumptionClosure& closure,
                 const Query& query);

BindingSet evaluate(const KnowledgeBase& kb, const SubsumptionClosure& closure,
                    const Query& query);

struct AtomTrace {
  std::string atom;           // the atom as written
  std::string justification;  // the assertion or subsumption chain used
};

// One entry per body atom for a witness of `row` (head-variable values).
// Throws Error(kRowNotInResult) when no witness exists.
std::vector<AtomTrace> explain(const KnowledgeBase& kb,
                               const SubsumptionClosure& closure,
                               const Query& query, const std::vector<Term>& row);

// Nodes a query variable can range over: individuals plus concepts that occur
// as object-assertion values. Sorted.
std::vector<std::string> query_nodes(const KnowledgeBase& kb);

}  // namespace vtkb
