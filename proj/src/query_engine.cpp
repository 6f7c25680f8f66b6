#include "vtkb/query_engine.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>

namespace vtkb {

std::vector<std::string> query_nodes(const KnowledgeBase& kb) {
  std::set<std::string> nodes;
  for (const auto& ind : kb.individuals()) {
    nodes.insert(ind.id);
    for (const auto& a : ind.assertions) {
      if (const auto* n = std::get_if<NodeId>(&a.value)) {
        if (kb.find_concept(n->id)) nodes.insert(n->id);
      }
    }
  }
  return {nodes.begin(), nodes.end()};
}

namespace {

enum class Role { kNode, kLiteral };

int three_way(const Term& a, const Term& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

bool compare(const Term& value, CompareOp op, const Term& literal) {
  if (value.index() != literal.index()) return op == CompareOp::kNe;
  int c = three_way(value, literal);
  switch (op) {
    case CompareOp::kEq: return c == 0;
    case CompareOp::kNe: return c != 0;
    case CompareOp::kLt: return c < 0;
    case CompareOp::kLe: return c <= 0;
    case CompareOp::kGt: return c > 0;
    case CompareOp::kGe: return c >= 0;
  }
  return false;
}

// A query compiled against one KB: variables numbered, atoms split into
// joinable atoms and filters, plus the indexes the join needs.
class Evaluator {
 public:
  Evaluator(const KnowledgeBase& kb, const SubsumptionClosure& closure,
            const Query& query)
      : kb_(kb), closure_(closure), query_(query) {
    check_roles();
    for (const auto& ind : kb_.individuals()) {
      for (const auto& a : ind.assertions) {
        auto& list = by_property_[a.property.id];
        list.push_back({ind.id, a.value});
        ++by_value_[{a.property.id, a.value}];
      }
    }
    for (auto& [prop, list] : by_property_) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    nodes_ = query_nodes(kb_);
  }

  BindingSet run() {
    std::set<std::vector<Term>> rows;
    std::vector<std::optional<Term>> binding(vars_.size());
    std::vector<bool> done(query_.body.size(), false);
    search(binding, done, [&](const std::vector<std::optional<Term>>& b) {
      std::vector<Term> row;
      for (const auto& h : query_.head) row.push_back(*b[var_index_.at(h)]);
      rows.insert(std::move(row));
      return true;
    });
    return {query_.head, {rows.begin(), rows.end()}};
  }

  std::optional<std::vector<std::optional<Term>>> witness(
      const std::vector<Term>& row) {
    std::vector<std::optional<Term>> binding(vars_.size());
    for (std::size_t i = 0; i < query_.head.size(); ++i) {
      binding[var_index_.at(query_.head[i])] = row[i];
    }
    // Head values must satisfy any filters on them before the search starts.
    for (std::size_t i = 0; i < query_.body.size(); ++i) {
      if (const auto* f = std::get_if<FilterAtom>(&query_.body[i])) {
        const auto& v = binding[var_index_.at(f->var)];
        if (v && !compare(*v, f->op, f->literal)) return std::nullopt;
      }
    }
    std::optional<std::vector<std::optional<Term>>> found;
    std::vector<bool> done(query_.body.size(), false);
    search(binding, done, [&](const std::vector<std::optional<Term>>& b) {
      found = b;
      return false;
    });
    return found;
  }

  const Term& value_of(const std::vector<std::optional<Term>>& b,
                       const std::string& var) const {
    return *b[var_index_.at(var)];
  }

  bool type_holds(const Term& t, std::string_view concept_id) const {
    const auto* node = std::get_if<NodeId>(&t);
    if (!node) return false;
    if (const Individual* ind = kb_.find_individual(node->id)) {
      return has_type(*ind, closure_, concept_id);
    }
    return closure_.subsumed(node->id, concept_id);
  }

 private:
  using Binding = std::vector<std::optional<Term>>;
  using Emit = std::function<bool(const Binding&)>;

  std::size_t var(const std::string& name) {
    auto [it, fresh] = var_index_.try_emplace(name, vars_.size());
    if (fresh) vars_.push_back(name);
    return it->second;
  }

  void assign_role(std::map<std::string, Role>& roles, const std::string& v,
                   Role role) {
    auto [it, fresh] = roles.try_emplace(v, role);
    if (!fresh && it->second != role) {
      throw Error(ErrorCode::kInvalidQuery,
                  "variable ?" + v + " is used both as a node and as a literal");
    }
  }

  void check_roles() {
    std::map<std::string, Role> roles;
    for (const auto& atom : query_.body) {
      if (const auto* t = std::get_if<TypeAtom>(&atom)) {
        if (!closure_.contains(t->concept_ref.id)) {
          throw Error(ErrorCode::kUnknownConcept,
                      "unknown concept '" + t->concept_ref.id + "'");
        }
        assign_role(roles, t->var, Role::kNode);
        var(t->var);
      } else if (const auto* p = std::get_if<PropertyAtom>(&atom)) {
        const PropertyDef* prop = kb_.find_property(p->property.id);
        if (!prop) {
          throw Error(ErrorCode::kUnknownProperty,
                      "unknown property '" + p->property.id + "'");
        }
        assign_role(roles, p->subject, Role::kNode);
        var(p->subject);
        Role object_role =
            prop->kind == PropertyKind::kObject ? Role::kNode : Role::kLiteral;
        if (const auto* v = std::get_if<Variable>(&p->object)) {
          assign_role(roles, v->name, object_role);
          var(v->name);
        } else {
          const Term& c = std::get<Term>(p->object);
          const auto* node = std::get_if<NodeId>(&c);
          if (object_role == Role::kLiteral && node) {
            throw Error(ErrorCode::kInvalidQuery,
                        prop->id + " is a datum property; expected a literal, got " +
                            node->id);
          }
          if (object_role == Role::kNode) {
            if (!node) {
              throw Error(ErrorCode::kInvalidQuery,
                          prop->id + " is an object property; expected an id, got " +
                              term_to_string(c));
            }
            if (!kb_.find_individual(node->id) && !kb_.find_concept(node->id)) {
              throw Error(ErrorCode::kUnknownReference,
                          "unknown individual or concept '" + node->id + "'");
            }
          }
        }
      }
    }
    for (const auto& atom : query_.body) {
      if (const auto* f = std::get_if<FilterAtom>(&atom)) {
        auto it = roles.find(f->var);
        if (it == roles.end()) {
          throw Error(ErrorCode::kInvalidQuery,
                      "filter variable ?" + f->var + " is not bound by any atom");
        }
        if (it->second != Role::kLiteral) {
          throw Error(ErrorCode::kInvalidQuery,
                      "filter compares ?" + f->var + ", which binds individuals");
        }
        if (!is_literal(f->literal)) {
          throw Error(ErrorCode::kInvalidQuery, "filter constant must be a literal");
        }
      }
    }
    for (const auto& h : query_.head) {
      if (!roles.count(h)) {
        throw Error(ErrorCode::kInvalidQuery,
                    "head variable ?" + h + " is not bound by any atom");
      }
    }
  }

  bool filters_hold(const Binding& b) const {
    for (const auto& atom : query_.body) {
      const auto* f = std::get_if<FilterAtom>(&atom);
      if (!f) continue;
      const auto& v = b[var_index_.at(f->var)];
      if (v && !compare(*v, f->op, f->literal)) return false;
    }
    return true;
  }

  // Bound value of a query term, if any.
  std::optional<Term> resolve(const Binding& b, const QueryTerm& t) const {
    if (const auto* v = std::get_if<Variable>(&t)) return b[var_index_.at(v->name)];
    return std::get<Term>(t);
  }

  std::size_t estimate(const Binding& b, const Atom& atom) const {
    if (const auto* t = std::get_if<TypeAtom>(&atom)) {
      if (b[var_index_.at(t->var)]) return 0;
      auto it = type_counts_.find(t->concept_ref.id);
      if (it != type_counts_.end()) return it->second;
      std::size_t n = 0;
      for (const auto& node : nodes_) n += type_holds(NodeId{node}, t->concept_ref.id);
      type_counts_.emplace(t->concept_ref.id, n);
      return n;
    }
    const auto& p = std::get<PropertyAtom>(atom);
    const auto& subject = b[var_index_.at(p.subject)];
    auto object = resolve(b, p.object);
    if (subject) {
      const auto* node = std::get_if<NodeId>(&*subject);
      const Individual* ind = node ? kb_.find_individual(node->id) : nullptr;
      if (!ind) return 0;
      return static_cast<std::size_t>(std::count_if(
          ind->assertions.begin(), ind->assertions.end(),
          [&](const Assertion& a) { return a.property.id == p.property.id; }));
    }
    if (object) {
      auto it = by_value_.find({p.property.id, *object});
      return it == by_value_.end() ? 0 : it->second;
    }
    auto it = by_property_.find(p.property.id);
    return it == by_property_.end() ? 0 : it->second.size();
  }

  // Returns false once `emit` asks to stop.
  bool search(Binding& b, std::vector<bool>& done, const Emit& emit) {
    std::size_t best = query_.body.size();
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < query_.body.size(); ++i) {
      if (done[i] || std::holds_alternative<FilterAtom>(query_.body[i])) continue;
      std::size_t cost = estimate(b, query_.body[i]);
      if (cost < best_cost) {
        best = i;
        best_cost = cost;
      }
    }
    if (best == query_.body.size()) return emit(b);

    done[best] = true;
    bool keep_going = true;
    auto extend = [&](const std::vector<std::pair<std::size_t, Term>>& assign) {
      std::vector<std::size_t> fresh;
      for (const auto& [idx, value] : assign) {
        if (b[idx]) {
          if (!(*b[idx] == value)) {
            for (std::size_t f : fresh) b[f].reset();
            return;
          }
        } else {
          b[idx] = value;
          fresh.push_back(idx);
        }
      }
      if (filters_hold(b)) keep_going = search(b, done, emit);
      for (std::size_t f : fresh) b[f].reset();
    };

    const Atom& atom = query_.body[best];
    if (const auto* t = std::get_if<TypeAtom>(&atom)) {
      std::size_t idx = var_index_.at(t->var);
      if (b[idx]) {
        if (type_holds(*b[idx], t->concept_ref.id)) extend({});
      } else {
        for (const auto& node : nodes_) {
          if (!keep_going) break;
          if (type_holds(NodeId{node}, t->concept_ref.id)) extend({{idx, NodeId{node}}});
        }
      }
    } else {
      const auto& p = std::get<PropertyAtom>(atom);
      std::size_t sidx = var_index_.at(p.subject);
      const auto* ovar = std::get_if<Variable>(&p.object);
      auto object_assign = [&](const Term& value) {
        std::vector<std::pair<std::size_t, Term>> assign;
        if (ovar) {
          assign.emplace_back(var_index_.at(ovar->name), value);
        } else if (!(std::get<Term>(p.object) == value)) {
          return std::optional<std::vector<std::pair<std::size_t, Term>>>{};
        }
        return std::optional{assign};
      };
      if (b[sidx]) {
        const auto* node = std::get_if<NodeId>(&*b[sidx]);
        const Individual* ind = node ? kb_.find_individual(node->id) : nullptr;
        if (ind) {
          std::set<Term> seen;
          for (const auto& a : ind->assertions) {
            if (!keep_going) break;
            if (a.property.id != p.property.id || !seen.insert(a.value).second) continue;
            if (auto assign = object_assign(a.value)) extend(*assign);
          }
        }
      } else {
        auto it = by_property_.find(p.property.id);
        if (it != by_property_.end()) {
          for (const auto& [subject, value] : it->second) {
            if (!keep_going) break;
            auto assign = object_assign(value);
            if (!assign) continue;
            assign->insert(assign->begin(), {sidx, NodeId{subject}});
            extend(*assign);
          }
        }
      }
    }
    done[best] = false;
    return keep_going;
  }

  const KnowledgeBase& kb_;
  const SubsumptionClosure& closure_;
  const Query& query_;
  std::vector<std::string> vars_;
  std::map<std::string, std::size_t> var_index_;
  std::map<std::string, std::vector<std::pair<std::string, Term>>> by_property_;
  std::map<std::pair<std::string, Term>, std::size_t> by_value_;
  std::vector<std::string> nodes_;
  mutable std::map<std::string, std::size_t> type_counts_;
};

}  // namespace

void check_query(const KnowledgeBase& kb, const SubsumptionClosure& closure,
                 const Query& query) {
  Evaluator(kb, closure, query);
}

BindingSet evaluate(const KnowledgeBase& kb, const SubsumptionClosure& closure,
                    const Query& query) {
  return Evaluator(kb, closure, query).run();
}

std::vector<AtomTrace> explain(const KnowledgeBase& kb,
                               const SubsumptionClosure& closure,
                               const Query& query, const std::vector<Term>& row) {
  if (row.size() != query.head.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "row has " + std::to_string(row.size()) + " values, query head has " +
                    std::to_string(query.head.size()));
  }
  Evaluator ev(kb, closure, query);
  auto binding = ev.witness(row);
  if (!binding) {
    std::string shown;
    for (const auto& v : row) shown += (shown.empty() ? "" : ", ") + term_to_string(v);
    throw Error(ErrorCode::kRowNotInResult, "row (" + shown + ") is not in the result");
  }

  auto chain_text = [](const std::vector<std::string>& chain) {
    std::string out;
    for (const auto& c : chain) out += (out.empty() ? "" : " ⊑ ") + c;
    return out;
  };

  std::vector<AtomTrace> out;
  for (const auto& atom : query.body) {
    AtomTrace trace{to_string(atom), {}};
    if (const auto* t = std::get_if<TypeAtom>(&atom)) {
      const auto& node = std::get<NodeId>(ev.value_of(*binding, t->var)).id;
      if (const Individual* ind = kb.find_individual(node)) {
        std::vector<std::string> types;
        for (const auto& ty : ind->types) types.push_back(ty.id);
        std::sort(types.begin(), types.end());
        for (const auto& ty : types) {
          if (!closure.subsumed(ty, t->concept_ref.id)) continue;
          trace.justification = node + " has asserted type " + ty + "; " +
                                chain_text(closure.chain(ty, t->concept_ref.id));
          break;
        }
      } else {
        trace.justification = "concept " + node + " used as a value; " +
                              chain_text(closure.chain(node, t->concept_ref.id));
      }
    } else if (const auto* p = std::get_if<PropertyAtom>(&atom)) {
      const auto& subject = std::get<NodeId>(ev.value_of(*binding, p->subject)).id;
      Term value = std::holds_alternative<Variable>(p->object)
                       ? ev.value_of(*binding, std::get<Variable>(p->object).name)
                       : std::get<Term>(p->object);
      trace.justification = "asserted " + subject + " " + p->property.id + " " +
                            term_to_string(value);
    } else {
      const auto& f = std::get<FilterAtom>(atom);
      trace.justification = term_to_string(ev.value_of(*binding, f.var)) + " " +
                            std::string(to_string(f.op)) + " " +
                            term_to_string(f.literal) + " holds";
    }
    out.push_back(std::move(trace));
  }
  return out;
}

}  // namespace vtkb
