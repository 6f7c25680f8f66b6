#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "vtkb/technique_matcher.hpp"

namespace vtkb::testing {

std::vector<std::pair<std::string, std::string>> matrix_closure(const Taxonomy& taxonomy) {
  std::vector<std::string> ids = taxonomy.concepts;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::map<std::string, std::size_t> at;
  for (std::size_t i = 0; i < ids.size(); ++i) at[ids[i]] = i;
  const std::size_t n = ids.size();

  std::vector<std::vector<char>> m(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  for (const auto& [sub, sup] : taxonomy.edges) m[at.at(sub)][at.at(sup)] = 1;

  bool changed = true;
  while (changed) {
    changed = false;
    auto next = m;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!m[i][k]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (m[k][j] && !next[i][j]) {
            next[i][j] = 1;
            changed = true;
          }
        }
      }
    }
    m = std::move(next);
  }

  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i][j]) out.emplace_back(ids[i], ids[j]);
    }
  }
  return out;
}

namespace {

bool literal_compare(const Term& v, CompareOp op, const Term& lit) {
  if (v.index() != lit.index()) return op == CompareOp::kNe;
  bool lt = v < lit, gt = lit < v, eq = !lt && !gt;
  switch (op) {
    case CompareOp::kEq: return eq;
    case CompareOp::kNe: return !eq;
    case CompareOp::kLt: return lt;
    case CompareOp::kLe: return lt || eq;
    case CompareOp::kGt: return gt;
    case CompareOp::kGe: return gt || eq;
  }
  return false;
}

}  // namespace

std::set<std::vector<Term>> brute_force_query(const KnowledgeBase& kb, const Query& query) {
  std::set<std::pair<std::string, std::string>> sub;
  for (const auto& p : matrix_closure(kb.taxonomy())) sub.insert(p);

  // Domain: individuals, concepts used as values, and every literal value.
  std::set<Term> domain;
  for (const auto& ind : kb.individuals()) {
    domain.insert(NodeId{ind.id});
    for (const auto& a : ind.assertions) domain.insert(a.value);
  }

  std::vector<std::string> vars;
  auto note = [&](const std::string& v) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  };
  for (const auto& atom : query.body) {
    if (const auto* t = std::get_if<TypeAtom>(&atom)) note(t->var);
    if (const auto* p = std::get_if<PropertyAtom>(&atom)) {
      note(p->subject);
      if (const auto* v = std::get_if<Variable>(&p->object)) note(v->name);
    }
    if (const auto* f = std::get_if<FilterAtom>(&atom)) note(f->var);
  }

  std::vector<Term> values(domain.begin(), domain.end());
  std::map<std::string, Term> assignment;
  std::set<std::vector<Term>> out;

  auto holds = [&](const Atom& atom) {
    if (const auto* t = std::get_if<TypeAtom>(&atom)) {
      const auto* node = std::get_if<NodeId>(&assignment.at(t->var));
      if (!node) return false;
      if (const Individual* ind = kb.find_individual(node->id)) {
        for (const auto& ty : ind->types) {
          if (sub.count({ty.id, t->concept_ref.id})) return true;
        }
        return false;
      }
      return sub.count({node->id, t->concept_ref.id}) > 0;
    }
    if (const auto* p = std::get_if<PropertyAtom>(&atom)) {
      const auto* node = std::get_if<NodeId>(&assignment.at(p->subject));
      if (!node) return false;
      const Individual* ind = kb.find_individual(node->id);
      if (!ind) return false;
      Term object = std::holds_alternative<Variable>(p->object)
                        ? assignment.at(std::get<Variable>(p->object).name)
                        : std::get<Term>(p->object);
      for (const auto& a : ind->assertions) {
        if (a.property.id == p->property.id && a.value == object) return true;
      }
      return false;
    }
    const auto& f = std::get<FilterAtom>(atom);
    const Term& v = assignment.at(f.var);
    return is_literal(v) && literal_compare(v, f.op, f.literal);
  };

  std::function<void(std::size_t)> assign = [&](std::size_t i) {
    if (i == vars.size()) {
      for (const auto& atom : query.body) {
        if (!holds(atom)) return;
      }
      std::vector<Term> row;
      for (const auto& h : query.head) row.push_back(assignment.at(h));
      out.insert(std::move(row));
      return;
    }
    for (const auto& v : values) {
      assignment[vars[i]] = v;
      assign(i + 1);
    }
  };
  assign(0);
  return out;
}

std::vector<RankedPlan> enumerate_plans(const KnowledgeBase& kb,
                                        const SubsumptionClosure& closure,
                                        const SceneSpec& scene, int top_n,
                                        const SelectorConfig& config) {
  check_scene(kb, closure, scene);
  auto rules = scene_rules(kb, scene, config);
  if (scene.items.empty()) return {RankedPlan{}};

  std::vector<const DataItem*> items;
  for (const auto& d : scene.items) items.push_back(&d);
  std::sort(items.begin(), items.end(),
            [](const DataItem* a, const DataItem* b) { return a->id < b->id; });

  TechniqueCatalog catalog(kb, closure);
  std::vector<std::vector<std::string>> cands;
  for (const DataItem* d : items) {
    cands.push_back(candidates(catalog, closure, *d));
    if (cands.back().empty()) throw InfeasibleItem(d->id);
  }

  PlanContext ctx(catalog, scene.items);
  std::vector<RankedPlan> all;
  std::vector<std::size_t> pick(items.size(), 0);
  while (true) {
    std::vector<std::pair<std::string, std::string>> assignment;
    for (std::size_t i = 0; i < items.size(); ++i) {
      assignment.emplace_back(items[i]->id, cands[i][pick[i]]);
    }
    ScenePlan plan = resolve_slots(ctx, assignment);
    auto conflicts = check_plan(rules, ctx, plan);
    bool forbidden = false;
    RankedPlan ranked;
    for (const auto& c : conflicts) {
      if (c.severity == Severity::kForbid) forbidden = true;
      else ranked.warnings.push_back(c);
    }
    if (!forbidden) {
      double sum = 0;
      for (std::size_t i = 0; i < items.size(); ++i) {
        Usability u = usability(kb, closure, plan.placements[i].technique, scene.task,
                                scene.context, config.default_score);
        sum += u.score;
        ranked.placements.push_back(ScoredPlacement{plan.placements[i], u});
      }
      double score = sum / static_cast<double>(items.size()) -
                     config.warn_penalty * static_cast<double>(ranked.warnings.size());
      ranked.score = std::min(1.0, std::max(0.0, score));
      all.push_back(std::move(ranked));
    }

    std::size_t k = 0;
    while (k < items.size() && ++pick[k] == cands[k].size()) pick[k++] = 0;
    if (k == items.size()) break;
  }

  auto sequence = [](const RankedPlan& p) {
    std::vector<std::string> s;
    for (const auto& sp : p.placements) s.push_back(sp.placement.technique);
    return s;
  };
  std::sort(all.begin(), all.end(), [&](const RankedPlan& a, const RankedPlan& b) {
    if (a.score != b.score) return a.score > b.score;
    return sequence(a) < sequence(b);
  });
  if (all.size() > static_cast<std::size_t>(top_n)) all.resize(top_n);
  return all;
}

std::vector<std::string> describe(const KnowledgeBase& kb) {
  std::vector<std::string> lines;
  auto term = [](const Term& t) {
    return std::to_string(t.index()) + ":" + term_to_string(t);
  };
  auto sorted_ids = [](const std::vector<Ref>& refs) {
    std::set<std::string> s;
    for (const auto& r : refs) s.insert(r.id);
    std::string out;
    for (const auto& id : s) out += id + ",";
    return out;
  };
  auto attrs = [&](const std::vector<Attribute>& as) {
    std::set<std::string> s;
    for (const auto& a : as) s.insert(a.key + "=" + term(a.value));
    std::string out;
    for (const auto& x : s) out += x + ";";
    return out;
  };
  for (const auto& c : kb.concepts()) lines.push_back("C " + c.id + " < " + sorted_ids(c.parents));
  for (const auto& p : kb.properties()) {
    std::ostringstream s;
    s << "P " << p.id << " " << (p.kind == PropertyKind::kObject ? "object" : "datum") << " "
      << p.domain.id << " "
      << (p.kind == PropertyKind::kObject ? p.range.id : std::string(to_string(p.datatype)));
    lines.push_back(s.str());
  }
  for (const auto& ind : kb.individuals()) {
    std::set<std::string> as;
    for (const auto& a : ind.assertions) as.insert(a.property.id + "=" + term(a.value));
    std::string line = "I " + ind.id + " : " + sorted_ids(ind.types) + " {";
    for (const auto& a : as) line += a + ";";
    lines.push_back(line + "}");
  }
  for (const auto& t : kb.tasks()) lines.push_back("T " + t.id + " " + attrs(t.attributes));
  for (const auto& c : kb.contexts()) lines.push_back("X " + c.id + " " + attrs(c.attributes));
  for (const auto& e : kb.evaluations()) {
    std::ostringstream s;
    s.precision(17);
    s << "E " << e.id << " " << e.technique.id << " " << (e.task ? e.task->id : "*") << " "
      << (e.context ? e.context->id : "*") << " " << e.score << " " << e.provenance;
    lines.push_back(s.str());
  }
  for (const auto& r : kb.rules()) {
    std::ostringstream s;
    s.precision(17);
    s << "R " << r.id << " " << to_string(r.severity);
    for (const auto& a : r.condition) {
      s << " " << (a.negated ? "!" : "") << to_string(a.predicate);
      if (a.predicate == RulePredicate::kSameLocation) s << "(" << a.epsilon << ")";
      if (a.predicate == RulePredicate::kSlotEquals) s << "(" << to_string(a.slot) << ")";
    }
    lines.push_back(s.str());
  }
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  return lines;
}

}  // namespace vtkb::testing
