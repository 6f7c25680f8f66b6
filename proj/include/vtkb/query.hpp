#pragma once

// Conjunctive query AST: a projection head over a non-empty conjunction of
// type, property and filter atoms.

#include <string>
#include <variant>
#include <vector>

#include "vtkb/kb_model.hpp"

namespace vtkb {

enum class CompareOp { kEq, kNe, kLt, kLe, kGt, kGe };

std::string_view to_string(CompareOp op);

struct Variable {
  std::string name;  // without the leading '?'
  auto operator<=>(const Variable&) const = default;
};

using QueryTerm = std::variant<Variable, Term>;

// ?x type C
struct TypeAtom {
  std::string var;
  Ref concept_ref;
};

// ?x p (?y | constant)
struct PropertyAtom {
  std::string subject;
  Ref property;
  QueryTerm object;
};

// filter(?x OP literal)
struct FilterAtom {
  std::string var;
  CompareOp op = CompareOp::kEq;
  Term literal;
};

using Atom = std::variant<TypeAtom, PropertyAtom, FilterAtom>;

struct Query {
  std::vector<std::string> head;
  std::vector<Atom> body;
};

std::string to_string(const Atom& atom);
std::string to_string(const Query& query);

}  // namespace vtkb
