#include "vtkb/kb_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <map>
#include <set>

namespace vtkb {

// ---------------------------------------------------------------------------
// Identifiers and terms

namespace {

bool segment_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool segment_char(char c) {
  return segment_start(c) || (c >= '0' && c <= '9') || c == '-';
}

}  // namespace

bool is_valid_identifier(std::string_view id) {
  if (id.empty()) return false;
  bool at_start = true;
  for (char c : id) {
    if (at_start) {
      if (!segment_start(c)) return false;
      at_start = false;
    } else if (c == ':') {
      at_start = true;
    } else if (!segment_char(c)) {
      return false;
    }
  }
  return !at_start;
}

std::string qualify(std::string_view id) {
  if (id.find(':') != std::string_view::npos) return std::string(id);
  return std::string(kDefaultPrefix) + std::string(id);
}

std::string_view local_name(std::string_view id) {
  if (id.starts_with(kDefaultPrefix)) id.remove_prefix(kDefaultPrefix.size());
  return id;
}

bool is_literal(const Term& t) { return !std::holds_alternative<NodeId>(t); }

std::string quote_string(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  out += '"';
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // folds -0
  char buf[400];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  return std::string(buf, res.ptr);
}

std::string term_to_string(const Term& t) {
  struct Visitor {
    std::string operator()(const NodeId& n) const { return n.id; }
    std::string operator()(const std::string& s) const {
      return quote_string(s);
    }
    std::string operator()(double d) const { return format_number(d); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(Visitor{}, t);
}

std::string_view to_string(Datatype d) {
  switch (d) {
    case Datatype::kText: return "Text";
    case Datatype::kNumber: return "Number";
    case Datatype::kBoolean: return "Boolean";
    case Datatype::kUri: return "URI";
  }
  return "?";
}

std::optional<Datatype> parse_datatype(std::string_view s) {
  if (s == "Text") return Datatype::kText;
  if (s == "Number") return Datatype::kNumber;
  if (s == "Boolean") return Datatype::kBoolean;
  if (s == "URI") return Datatype::kUri;
  return std::nullopt;
}

std::optional<ViewpointFrame> ContextSpec::viewpoint_frame() const {
  for (const auto& attr : attributes) {
    if (attr.key != "viewpointFrame") continue;
    if (const auto* node = std::get_if<NodeId>(&attr.value)) {
      return parse_viewpoint_frame(local_name(node->id));
    }
    if (const auto* text = std::get_if<std::string>(&attr.value)) {
      return parse_viewpoint_frame(*text);
    }
    return std::nullopt;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rules (data only; evaluation lives in rule_engine)

std::string_view to_string(RulePredicate p) {
  switch (p) {
    case RulePredicate::kSameTechnique: return "sameTechnique";
    case RulePredicate::kSameDataType: return "sameDataType";
    case RulePredicate::kSameIssue: return "sameIssue";
    case RulePredicate::kSameObject: return "sameObject";
    case RulePredicate::kSameLocation: return "sameLocation";
    case RulePredicate::kSlotEquals: return "slotEquals";
    case RulePredicate::kSlotsOverlap: return "slotsOverlap";
  }
  return "?";
}

std::optional<RulePredicate> parse_rule_predicate(std::string_view s) {
  for (auto p : {RulePredicate::kSameTechnique, RulePredicate::kSameDataType,
                 RulePredicate::kSameIssue, RulePredicate::kSameObject,
                 RulePredicate::kSameLocation, RulePredicate::kSlotEquals,
                 RulePredicate::kSlotsOverlap}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

bool operator==(const RuleAtom& a, const RuleAtom& b) {
  if (a.predicate != b.predicate || a.negated != b.negated) return false;
  if (a.predicate == RulePredicate::kSameLocation) return a.epsilon == b.epsilon;
  if (a.predicate == RulePredicate::kSlotEquals) return a.slot == b.slot;
  return true;
}

bool operator==(const CompatibilityRule& a, const CompatibilityRule& b) {
  return a.id == b.id && a.severity == b.severity && a.condition == b.condition;
}

// ---------------------------------------------------------------------------
// KnowledgeBase

namespace {

template <typename T, typename Map>
const T* find_in(const std::vector<T>& items, const Map& index,
                 std::string_view id) {
  auto it = index.find(id);
  return it == index.end() ? nullptr : &items[it->second];
}

template <typename T, typename Map>
void append(std::vector<T>& items, Map& index, T item) {
  index.try_emplace(item.id, items.size());
  items.push_back(std::move(item));
}

}  // namespace

void KnowledgeBase::add_concept(Concept c) {
  append(concepts_, concept_index_, std::move(c));
}
void KnowledgeBase::add_property(PropertyDef p) {
  append(properties_, property_index_, std::move(p));
}
void KnowledgeBase::add_individual(Individual i) {
  append(individuals_, individual_index_, std::move(i));
}
void KnowledgeBase::add_task(TaskSpec t) {
  append(tasks_, task_index_, std::move(t));
}
void KnowledgeBase::add_context(ContextSpec c) {
  append(contexts_, context_index_, std::move(c));
}
void KnowledgeBase::add_evaluation(EvaluationRecord e) {
  evaluations_.push_back(std::move(e));
}
void KnowledgeBase::add_rule(CompatibilityRule r) {
  append(rules_, rule_index_, std::move(r));
}

const Concept* KnowledgeBase::find_concept(std::string_view id) const {
  return find_in(concepts_, concept_index_, id);
}
const PropertyDef* KnowledgeBase::find_property(std::string_view id) const {
  return find_in(properties_, property_index_, id);
}
const Individual* KnowledgeBase::find_individual(std::string_view id) const {
  return find_in(individuals_, individual_index_, id);
}
const TaskSpec* KnowledgeBase::find_task(std::string_view id) const {
  return find_in(tasks_, task_index_, id);
}
const ContextSpec* KnowledgeBase::find_context(std::string_view id) const {
  return find_in(contexts_, context_index_, id);
}
const CompatibilityRule* KnowledgeBase::find_rule(std::string_view id) const {
  return find_in(rules_, rule_index_, id);
}

bool KnowledgeBase::empty() const {
  return concepts_.empty() && properties_.empty() && individuals_.empty() &&
         tasks_.empty() && contexts_.empty() && evaluations_.empty() &&
         rules_.empty();
}

Taxonomy KnowledgeBase::taxonomy() const {
  Taxonomy t;
  for (const auto& c : concepts_) t.concepts.push_back(c.id);
  for (const auto& c : concepts_) {
    for (const auto& p : c.parents) {
      if (find_concept(p.id)) t.edges.emplace_back(c.id, p.id);
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Subsumption closure

namespace {

[[noreturn]] void unknown_concept(std::string_view id) {
  throw Error(ErrorCode::kUnknownConcept,
              "unknown concept '" + std::string(id) + "'");
}

// One directed cycle through parent edges among `pending` nodes.
std::vector<std::string> find_cycle(
    const std::vector<std::string>& ids,
    const std::vector<std::vector<std::size_t>>& parents,
    const std::vector<bool>& pending) {
  enum Color { kWhite, kGrey, kBlack };
  std::vector<Color> color(ids.size(), kWhite);
  std::vector<std::size_t> stack;
  std::vector<std::string> cycle;

  auto dfs = [&](auto&& self, std::size_t v) -> bool {
    color[v] = kGrey;
    stack.push_back(v);
    for (std::size_t p : parents[v]) {
      if (!pending[p]) continue;
      if (color[p] == kGrey) {
        auto it = std::find(stack.begin(), stack.end(), p);
        for (; it != stack.end(); ++it) cycle.push_back(ids[*it]);
        cycle.push_back(ids[p]);
        return true;
      }
      if (color[p] == kWhite && self(self, p)) return true;
    }
    stack.pop_back();
    color[v] = kBlack;
    return false;
  };

  for (std::size_t v = 0; v < ids.size(); ++v) {
    if (pending[v] && color[v] == kWhite && dfs(dfs, v)) break;
  }
  return cycle;
}

}  // namespace

SubsumptionClosure classify(const Taxonomy& taxonomy) {
  SubsumptionClosure out;
  out.ids_ = taxonomy.concepts;
  std::sort(out.ids_.begin(), out.ids_.end());
  out.ids_.erase(std::unique(out.ids_.begin(), out.ids_.end()), out.ids_.end());
  const std::size_t n = out.ids_.size();
  for (std::size_t i = 0; i < n; ++i) out.index_.emplace(out.ids_[i], i);

  std::vector<std::vector<std::size_t>> parents(n), children(n);
  for (const auto& [sub, sup] : taxonomy.edges) {
    auto s = out.index_.find(sub);
    if (s == out.index_.end()) unknown_concept(sub);
    auto p = out.index_.find(sup);
    if (p == out.index_.end()) unknown_concept(sup);
    parents[s->second].push_back(p->second);
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto& ps = parents[v];
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    for (std::size_t p : ps) children[p].push_back(v);
  }

  // Kahn's algorithm from the roots downwards: a concept is finished once all
  // of its parents are.
  std::vector<std::size_t> waiting(n);
  std::deque<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v) {
    waiting[v] = parents[v].size();
    if (waiting[v] == 0) ready.push_back(v);
  }
  const std::size_t words = (n + 63) / 64;
  out.rows_.assign(n, std::vector<std::uint64_t>(words, 0));
  std::vector<bool> pending(n, true);
  std::size_t done = 0;
  while (!ready.empty()) {
    std::size_t v = ready.front();
    ready.pop_front();
    auto& row = out.rows_[v];
    row[v / 64] |= std::uint64_t{1} << (v % 64);
    for (std::size_t p : parents[v]) {
      const auto& prow = out.rows_[p];
      for (std::size_t w = 0; w < words; ++w) row[w] |= prow[w];
    }
    pending[v] = false;
    ++done;
    for (std::size_t c : children[v]) {
      if (--waiting[c] == 0) ready.push_back(c);
    }
  }
  if (done != n) throw CycleError(find_cycle(out.ids_, parents, pending));

  out.parents_.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t p : parents[v]) out.parents_[v].push_back(out.ids_[p]);
  }
  return out;
}

SubsumptionClosure classify(const KnowledgeBase& kb) {
  return classify(kb.taxonomy());
}

std::size_t SubsumptionClosure::index_of(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) unknown_concept(id);
  return it->second;
}

bool SubsumptionClosure::contains(std::string_view id) const {
  return index_.find(id) != index_.end();
}

bool SubsumptionClosure::is_subconcept(std::string_view sub,
                                       std::string_view sup) const {
  return bit(index_of(sub), index_of(sup));
}

bool SubsumptionClosure::subsumed(std::string_view sub,
                                  std::string_view sup) const {
  auto s = index_.find(sub);
  auto p = index_.find(sup);
  if (s == index_.end() || p == index_.end()) return false;
  return bit(s->second, p->second);
}

std::vector<std::string> SubsumptionClosure::ancestors(
    std::string_view id) const {
  std::size_t row = index_of(id);
  std::vector<std::string> out;
  for (std::size_t c = 0; c < ids_.size(); ++c) {
    if (bit(row, c)) out.push_back(ids_[c]);
  }
  return out;
}

std::vector<std::string> SubsumptionClosure::descendants(
    std::string_view id) const {
  std::size_t col = index_of(id);
  std::vector<std::string> out;
  for (std::size_t r = 0; r < ids_.size(); ++r) {
    if (bit(r, col)) out.push_back(ids_[r]);
  }
  return out;
}

const std::vector<std::string>& SubsumptionClosure::direct_parents(
    std::string_view id) const {
  return parents_[index_of(id)];
}

std::vector<std::pair<std::string, std::string>> SubsumptionClosure::pairs()
    const {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t r = 0; r < ids_.size(); ++r) {
    for (std::size_t c = 0; c < ids_.size(); ++c) {
      if (bit(r, c)) out.emplace_back(ids_[r], ids_[c]);
    }
  }
  return out;
}

std::vector<std::string> SubsumptionClosure::chain(std::string_view sub,
                                                   std::string_view sup) const {
  std::size_t from = index_of(sub);
  std::size_t to = index_of(sup);
  if (!bit(from, to)) return {};
  std::vector<std::size_t> prev(ids_.size(), ids_.size());
  std::deque<std::size_t> queue{from};
  prev[from] = from;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (const auto& p : parents_[v]) {
      std::size_t pi = index_.at(p);
      if (prev[pi] != ids_.size() || !bit(pi, to)) continue;
      prev[pi] = v;
      queue.push_back(pi);
    }
  }
  std::vector<std::string> path;
  for (std::size_t v = to; ; v = prev[v]) {
    path.push_back(ids_[v]);
    if (v == from) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

bool is_subconcept(const SubsumptionClosure& closure, std::string_view sub,
                   std::string_view sup) {
  return closure.is_subconcept(sub, sup);
}

bool has_type(const Individual& individual, const SubsumptionClosure& closure,
              std::string_view concept_id) {
  return std::any_of(individual.types.begin(), individual.types.end(),
                     [&](const Ref& t) { return closure.subsumed(t.id, concept_id); });
}

std::vector<std::string> instances_of(const KnowledgeBase& kb,
                                      const SubsumptionClosure& closure,
                                      std::string_view concept_id) {
  if (!closure.contains(concept_id)) unknown_concept(concept_id);
  std::set<std::string> out;
  for (const auto& ind : kb.individuals()) {
    if (has_type(ind, closure, concept_id)) out.insert(ind.id);
  }
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Validation

std::string_view to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::kDuplicateId: return "DuplicateId";
    case Violation::Kind::kDanglingReference: return "DanglingReference";
    case Violation::Kind::kDomainViolation: return "DomainViolation";
    case Violation::Kind::kRangeViolation: return "RangeViolation";
    case Violation::Kind::kCycle: return "Cycle";
    case Violation::Kind::kInvalidValue: return "InvalidValue";
  }
  return "?";
}

std::string format_violation(const Violation& v) {
  return std::to_string(v.pos.line) + ":" + std::to_string(v.pos.column) +
         ": " + std::string(to_string(v.kind)) + ": " + v.message;
}

namespace {

// Reachability over declared parent edges. Unlike SubsumptionClosure it
// tolerates cycles and dangling edges, which validate() must survive.
class LenientHierarchy {
 public:
  explicit LenientHierarchy(const KnowledgeBase& kb) {
    for (const auto& c : kb.concepts()) {
      auto& ps = parents_[c.id];
      for (const auto& p : c.parents) {
        if (kb.find_concept(p.id)) ps.push_back(p.id);
      }
    }
  }

  bool subsumed(const std::string& sub, std::string_view sup) {
    return ancestors(sub).count(sup) > 0;
  }

  const std::set<std::string, std::less<>>& ancestors(const std::string& id) {
    auto [it, fresh] = cache_.try_emplace(id);
    if (!fresh) return it->second;
    auto& seen = it->second;
    if (!parents_.count(id)) return seen;
    std::deque<std::string> queue{id};
    seen.insert(id);
    while (!queue.empty()) {
      std::string v = queue.front();
      queue.pop_front();
      for (const auto& p : parents_[v]) {
        if (seen.insert(p).second) queue.push_back(p);
      }
    }
    return seen;
  }

  // Each non-trivial strongly connected component, as one cycle path plus the
  // position of its earliest edge.
  std::vector<std::pair<SourcePos, std::vector<std::string>>> cycles(
      const KnowledgeBase& kb) {
    std::vector<std::pair<SourcePos, std::vector<std::string>>> out;
    std::set<std::string> reported;
    for (const auto& c : kb.concepts()) {
      if (reported.count(c.id)) continue;
      // c is on a cycle iff some parent reaches c.
      std::optional<std::vector<std::string>> path = cycle_through(c.id);
      if (!path) continue;
      SourcePos earliest{};
      for (std::size_t i = 0; i + 1 < path->size(); ++i) {
        reported.insert((*path)[i]);
        const Concept* from = kb.find_concept((*path)[i]);
        for (const auto& p : from->parents) {
          if (p.id == (*path)[i + 1] &&
              (!earliest.known() || p.pos < earliest)) {
            earliest = p.pos;
          }
        }
      }
      // Mark the whole component so each cycle is reported once.
      for (const auto& other : kb.concepts()) {
        if (subsumed(c.id, other.id) && subsumed(other.id, c.id)) {
          reported.insert(other.id);
        }
      }
      out.emplace_back(earliest, std::move(*path));
    }
    return out;
  }

 private:
  std::optional<std::vector<std::string>> cycle_through(const std::string& id) {
    // BFS from id's parents back to id, recording predecessors.
    std::map<std::string, std::string> prev;
    std::deque<std::string> queue;
    for (const auto& p : parents_[id]) {
      if (prev.try_emplace(p, id).second) queue.push_back(p);
    }
    while (!queue.empty()) {
      std::string v = queue.front();
      queue.pop_front();
      if (v == id) {
        std::vector<std::string> path{id};
        for (std::string cur = prev[id]; cur != id; cur = prev[cur]) {
          path.push_back(cur);
        }
        path.push_back(id);
        std::reverse(path.begin() + 1, path.end() - 1);
        return path;
      }
      for (const auto& p : parents_[v]) {
        if (prev.try_emplace(p, v).second) queue.push_back(p);
      }
    }
    return std::nullopt;
  }

  std::map<std::string, std::vector<std::string>, std::less<>> parents_;
  std::map<std::string, std::set<std::string, std::less<>>, std::less<>> cache_;
};

class Validator {
 public:
  explicit Validator(const KnowledgeBase& kb) : kb_(kb), hierarchy_(kb) {}

  std::vector<Violation> run() {
    check_ids();
    check_concepts();
    check_properties();
    check_individuals();
    check_contexts();
    check_evaluations();
    check_rules();
    std::sort(out_.begin(), out_.end());
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return std::move(out_);
  }

 private:
  using Kind = Violation::Kind;

  void report(Kind kind, SourcePos pos, const std::string& subject,
              std::string message) {
    out_.push_back({kind, pos, subject, std::move(message)});
  }

  void check_id_syntax(const std::string& id, SourcePos pos) {
    if (!is_valid_identifier(id)) {
      report(Kind::kInvalidValue, pos, id, "malformed identifier '" + id + "'");
    }
  }

  void check_ids() {
    // Concepts, properties, individuals, tasks and contexts share one symbol
    // space; rules and evaluation records have their own.
    std::map<std::string, std::string> symbols;
    auto declare = [&](const std::string& id, SourcePos pos,
                       std::string_view kind) {
      check_id_syntax(id, pos);
      auto [it, fresh] = symbols.try_emplace(id, std::string(kind));
      if (!fresh) {
        report(Kind::kDuplicateId, pos, id,
               "'" + id + "' already declared as " + it->second);
      }
    };
    for (const auto& c : kb_.concepts()) declare(c.id, c.pos, "concept");
    for (const auto& p : kb_.properties()) declare(p.id, p.pos, "property");
    for (const auto& i : kb_.individuals()) declare(i.id, i.pos, "individual");
    for (const auto& t : kb_.tasks()) declare(t.id, t.pos, "task");
    for (const auto& c : kb_.contexts()) declare(c.id, c.pos, "context");

    std::set<std::string> evals;
    for (const auto& e : kb_.evaluations()) {
      check_id_syntax(e.id, e.pos);
      if (!evals.insert(e.id).second) {
        report(Kind::kDuplicateId, e.pos, e.id,
               "evaluation '" + e.id + "' declared twice");
      }
    }
    std::set<std::string> rules;
    for (const auto& r : kb_.rules()) {
      check_id_syntax(r.id, r.pos);
      if (!rules.insert(r.id).second) {
        report(Kind::kDuplicateId, r.pos, r.id,
               "rule '" + r.id + "' declared twice");
      }
    }
  }

  bool require_concept(const Ref& ref, const std::string& subject,
                       std::string_view role) {
    if (kb_.find_concept(ref.id)) return true;
    report(Kind::kDanglingReference, ref.pos, subject,
           std::string(role) + " '" + ref.id + "' is not a declared concept");
    return false;
  }

  void check_concepts() {
    for (const auto& c : kb_.concepts()) {
      for (const auto& p : c.parents) require_concept(p, c.id, "superconcept");
    }
    for (auto& [pos, path] : hierarchy_.cycles(kb_)) {
      std::string text;
      for (const auto& id : path) text += (text.empty() ? "" : " -> ") + id;
      report(Kind::kCycle, pos, path.front(), "subsumption cycle " + text);
    }
  }

  void check_properties() {
    for (const auto& p : kb_.properties()) {
      require_concept(p.domain, p.id, "domain");
      if (p.kind == PropertyKind::kObject) require_concept(p.range, p.id, "range");
    }
  }

  bool typed_under(const Individual& ind, std::string_view concept_id) {
    return std::any_of(ind.types.begin(), ind.types.end(), [&](const Ref& t) {
      return hierarchy_.subsumed(t.id, concept_id);
    });
  }

  void check_individuals() {
    for (const auto& ind : kb_.individuals()) {
      if (ind.types.empty()) {
        report(Kind::kInvalidValue, ind.pos, ind.id,
               "individual '" + ind.id + "' has no asserted type");
      }
      for (const auto& t : ind.types) require_concept(t, ind.id, "type");
      for (const auto& a : ind.assertions) check_assertion(ind, a);
    }
  }

  void check_assertion(const Individual& ind, const Assertion& a) {
    const PropertyDef* prop = kb_.find_property(a.property.id);
    if (!prop) {
      report(Kind::kDanglingReference, a.property.pos, ind.id,
             "property '" + a.property.id + "' is not declared");
      return;
    }
    if (kb_.find_concept(prop->domain.id) && !typed_under(ind, prop->domain.id)) {
      report(Kind::kDomainViolation, a.property.pos, ind.id,
             "'" + ind.id + "' is not an instance of " + prop->domain.id +
                 ", the domain of " + prop->id);
    }
    const std::string value = term_to_string(a.value);
    if (prop->kind == PropertyKind::kObject) {
      const auto* node = std::get_if<NodeId>(&a.value);
      if (!node) {
        report(Kind::kRangeViolation, a.value_pos, ind.id,
               prop->id + " expects an individual or concept, got " + value);
        return;
      }
      if (!kb_.find_concept(prop->range.id)) return;
      if (const Individual* target = kb_.find_individual(node->id)) {
        if (!typed_under(*target, prop->range.id)) {
          report(Kind::kRangeViolation, a.value_pos, ind.id,
                 "'" + node->id + "' is not an instance of " + prop->range.id +
                     ", the range of " + prop->id);
        }
      } else if (kb_.find_concept(node->id)) {
        if (!hierarchy_.subsumed(node->id, prop->range.id)) {
          report(Kind::kRangeViolation, a.value_pos, ind.id,
                 "concept '" + node->id + "' is not subsumed by " +
                     prop->range.id + ", the range of " + prop->id);
        }
      } else {
        report(Kind::kDanglingReference, a.value_pos, ind.id,
               "'" + node->id + "' is neither a declared individual nor concept");
      }
      return;
    }
    bool ok = false;
    switch (prop->datatype) {
      case Datatype::kText:
      case Datatype::kUri: ok = std::holds_alternative<std::string>(a.value); break;
      case Datatype::kNumber: ok = std::holds_alternative<double>(a.value); break;
      case Datatype::kBoolean: ok = std::holds_alternative<bool>(a.value); break;
    }
    if (!ok) {
      report(Kind::kRangeViolation, a.value_pos, ind.id,
             prop->id + " expects a " + std::string(to_string(prop->datatype)) +
                 " literal, got " + value);
    }
  }

  void check_contexts() {
    for (const auto& c : kb_.contexts()) {
      if (!c.viewpoint_frame()) {
        report(Kind::kInvalidValue, c.pos, c.id,
               "context '" + c.id + "' needs viewpointFrame Inside or Outside");
      }
    }
  }

  void check_evaluations() {
    for (const auto& e : kb_.evaluations()) {
      const Individual* t = kb_.find_individual(e.technique.id);
      if (!t) {
        report(Kind::kDanglingReference, e.technique.pos, e.id,
               "technique '" + e.technique.id + "' is not a declared individual");
      } else if (kb_.find_concept(concepts::kTechnique) &&
                 !typed_under(*t, concepts::kTechnique)) {
        report(Kind::kRangeViolation, e.technique.pos, e.id,
               "'" + e.technique.id + "' is not a visualization technique");
      }
      if (e.task && !kb_.find_task(e.task->id)) {
        report(Kind::kDanglingReference, e.task->pos, e.id,
               "task '" + e.task->id + "' is not declared");
      }
      if (e.context && !kb_.find_context(e.context->id)) {
        report(Kind::kDanglingReference, e.context->pos, e.id,
               "context '" + e.context->id + "' is not declared");
      }
      if (!(e.score >= 0.0 && e.score <= 1.0)) {
        report(Kind::kInvalidValue, e.score_pos, e.id,
               "score " + format_number(e.score) + " outside [0, 1]");
      }
      if (e.provenance.empty()) {
        report(Kind::kInvalidValue, e.pos, e.id, "provenance must not be empty");
      }
    }
  }

  void check_rules() {
    for (const auto& r : kb_.rules()) {
      if (r.condition.empty()) {
        report(Kind::kInvalidValue, r.pos, r.id, "rule condition is empty");
      }
      for (const auto& atom : r.condition) {
        if (atom.predicate == RulePredicate::kSameLocation &&
            !(atom.epsilon > 0.0 && std::isfinite(atom.epsilon))) {
          report(Kind::kInvalidValue, atom.pos, r.id,
                 "sameLocation epsilon must be positive");
        }
      }
    }
  }

  const KnowledgeBase& kb_;
  LenientHierarchy hierarchy_;
  std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> validate(const KnowledgeBase& kb) {
  return Validator(kb).run();
}

}  // namespace vtkb
