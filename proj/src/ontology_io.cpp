#include "vtkb/ontology_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "lexer.hpp"

namespace vtkb {

using detail::Token;
using detail::TokenKind;

SourceDocument read_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return {buf.str(), path.string()};
}

namespace {

// Recursive-descent parser over a pre-tokenized input. One instance parses
// one document (a KB, a query or a single rule).
class Parser {
 public:
  Parser(std::string_view text, std::string origin)
      : origin_(std::move(origin)), tokens_(detail::tokenize(text, origin_)) {}

  KnowledgeBase knowledge_base() {
    KnowledgeBase kb;
    while (!at(TokenKind::kEnd)) statement(kb);
    return kb;
  }

  Query query() {
    Query q;
    keyword("select");
    std::vector<std::pair<std::string, SourcePos>> head;
    do {
      const Token& v = expect(TokenKind::kVariable);
      head.emplace_back(v.text, v.pos);
    } while (accept(TokenKind::kComma));
    keyword("where");
    expect(TokenKind::kLBrace);
    if (at(TokenKind::kRBrace)) {
      fail(peek(), "query body must contain at least one atom",
           {"variable", "'filter'"});
    }
    q.body.push_back(atom());
    while (accept(TokenKind::kDot)) {
      if (at(TokenKind::kRBrace)) break;
      q.body.push_back(atom());
    }
    expect(TokenKind::kRBrace, {"'.'", "'}'"});
    expect(TokenKind::kEnd);

    std::set<std::string> used;
    for (const auto& a : q.body) {
      std::visit(
          [&](const auto& at) {
            using A = std::decay_t<decltype(at)>;
            if constexpr (std::is_same_v<A, PropertyAtom>) {
              used.insert(at.subject);
              if (auto* v = std::get_if<Variable>(&at.object)) used.insert(v->name);
            } else {
              used.insert(at.var);
            }
          },
          a);
    }
    for (const auto& [name, pos] : head) {
      if (!used.count(name)) {
        throw ParseError(ErrorCode::kParse, pos,
                         "head variable ?" + name + " does not occur in the body",
                         {}, origin_);
      }
      q.head.push_back(name);
    }
    return q;
  }

  CompatibilityRule single_rule() {
    keyword("rule");
    CompatibilityRule r = rule_body();
    expect(TokenKind::kEnd);
    return r;
  }

 private:
  // -- token helpers --------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(i_ + ahead, tokens_.size() - 1)];
  }
  bool at(TokenKind kind) const { return peek().kind == kind; }
  bool at_keyword(std::string_view word) const {
    return at(TokenKind::kIdent) && peek().text == word;
  }
  const Token& next() {
    const Token& t = tokens_[i_];
    if (i_ + 1 < tokens_.size()) ++i_;
    return t;
  }
  bool accept(TokenKind kind) {
    if (!at(kind)) return false;
    next();
    return true;
  }

  [[noreturn]] void fail(const Token& at_token, const std::string& message,
                         std::vector<std::string> expected) const {
    throw ParseError(ErrorCode::kParse, at_token.pos, message,
                     std::move(expected), origin_);
  }

  std::string found(const Token& t) const {
    if (t.kind == TokenKind::kEnd) return "end of input";
    if (t.kind == TokenKind::kString) return "string " + quote_string(t.text);
    return "'" + (t.kind == TokenKind::kVariable ? "?" + t.text : t.text) + "'";
  }

  const Token& expect(TokenKind kind, std::vector<std::string> expected = {}) {
    if (!at(kind)) {
      if (expected.empty()) expected.emplace_back(detail::describe(kind));
      std::string want;
      for (const auto& e : expected) want += (want.empty() ? "" : " or ") + e;
      fail(peek(), "expected " + want + ", found " + found(peek()),
           std::move(expected));
    }
    return next();
  }

  void keyword(std::string_view word) {
    if (!at_keyword(word)) {
      std::string w = "'" + std::string(word) + "'";
      fail(peek(), "expected " + w + ", found " + found(peek()), {w});
    }
    next();
  }

  template <typename Words>
  std::string one_of(const Words& words) {
    for (std::string_view w : words) {
      if (at_keyword(w)) return next().text;
    }
    std::vector<std::string> expected;
    std::string want;
    for (std::string_view w : words) {
      expected.push_back("'" + std::string(w) + "'");
      want += (want.empty() ? "" : " or ") + expected.back();
    }
    fail(peek(), "expected " + want + ", found " + found(peek()), expected);
  }

  const Token& identifier() { return expect(TokenKind::kIdent); }

  // A symbol id, with the default prefix applied.
  Ref symbol() {
    const Token& t = identifier();
    return {qualify(t.text), t.pos};
  }

  // value := ID | STRING | NUMBER | BOOL. ID values are qualified unless
  // `verbatim` (free-form task/context attributes).
  Term value(bool verbatim) {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::kString: next(); return t.text;
      case TokenKind::kNumber: next(); return t.number;
      case TokenKind::kIdent:
        next();
        if (t.text == "true") return true;
        if (t.text == "false") return false;
        return NodeId{verbatim ? t.text : qualify(t.text)};
      default:
        fail(t, "expected a value, found " + found(t),
             {"identifier", "string", "number", "boolean"});
    }
  }

  Term literal() {
    const Token& t = peek();
    if (t.kind == TokenKind::kString) return next().text;
    if (t.kind == TokenKind::kNumber) return next().number;
    if (t.kind == TokenKind::kIdent && (t.text == "true" || t.text == "false")) {
      return next().text == "true";
    }
    fail(t, "expected a literal, found " + found(t), {"string", "number", "boolean"});
  }

  // -- statements -----------------------------------------------------------

  void statement(KnowledgeBase& kb) {
    static constexpr std::string_view kStatements[] = {
        "concept", "property", "individual", "evaluation", "task", "context", "rule"};
    std::string kind = one_of(kStatements);
    if (kind == "concept") return concept_stmt(kb);
    if (kind == "property") return property_stmt(kb);
    if (kind == "individual") return individual_stmt(kb);
    if (kind == "evaluation") return evaluation_stmt(kb);
    if (kind == "task") {
      TaskSpec t;
      Ref id = symbol();
      t.id = id.id;
      t.pos = id.pos;
      t.attributes = attributes();
      return kb.add_task(std::move(t));
    }
    if (kind == "context") {
      ContextSpec c;
      Ref id = symbol();
      c.id = id.id;
      c.pos = id.pos;
      c.attributes = attributes();
      return kb.add_context(std::move(c));
    }
    kb.add_rule(rule_body());
  }

  void concept_stmt(KnowledgeBase& kb) {
    Concept c;
    Ref id = symbol();
    c.id = id.id;
    c.pos = id.pos;
    if (at_keyword("subclassof")) {
      next();
      do {
        c.parents.push_back(symbol());
      } while (accept(TokenKind::kComma));
    }
    expect(TokenKind::kDot, c.parents.empty()
                                ? std::vector<std::string>{"'subclassof'", "'.'"}
                                : std::vector<std::string>{"','", "'.'"});
    kb.add_concept(std::move(c));
  }

  void property_stmt(KnowledgeBase& kb) {
    PropertyDef p;
    Ref id = symbol();
    p.id = id.id;
    p.pos = id.pos;
    static constexpr std::string_view kKinds[] = {"object", "datum"};
    p.kind = one_of(kKinds) == "object" ? PropertyKind::kObject : PropertyKind::kDatum;
    keyword("domain");
    p.domain = symbol();
    keyword("range");
    if (p.kind == PropertyKind::kObject) {
      p.range = symbol();
    } else {
      static constexpr std::string_view kTypes[] = {"Text", "Number", "Boolean", "URI"};
      const Token& t = peek();
      p.range = {one_of(kTypes), t.pos};
      p.datatype = *parse_datatype(p.range.id);
    }
    expect(TokenKind::kDot);
    kb.add_property(std::move(p));
  }

  void individual_stmt(KnowledgeBase& kb) {
    Individual ind;
    Ref id = symbol();
    ind.id = id.id;
    ind.pos = id.pos;
    keyword("type");
    do {
      ind.types.push_back(symbol());
    } while (accept(TokenKind::kComma));
    while (accept(TokenKind::kSemicolon)) {
      Assertion a;
      a.property = symbol();
      a.value_pos = peek().pos;
      a.value = value(false);
      ind.assertions.push_back(std::move(a));
    }
    expect(TokenKind::kDot, {"','", "';'", "'.'"});
    kb.add_individual(std::move(ind));
  }

  std::optional<Ref> symbol_or_wildcard() {
    if (accept(TokenKind::kStar)) return std::nullopt;
    if (!at(TokenKind::kIdent)) {
      fail(peek(), "expected identifier or '*', found " + found(peek()),
           {"identifier", "'*'"});
    }
    return symbol();
  }

  void evaluation_stmt(KnowledgeBase& kb) {
    EvaluationRecord e;
    const Token& id = identifier();
    e.id = id.text;
    e.pos = id.pos;
    keyword("technique");
    e.technique = symbol();
    keyword("task");
    e.task = symbol_or_wildcard();
    keyword("context");
    e.context = symbol_or_wildcard();
    keyword("score");
    const Token& score = expect(TokenKind::kNumber);
    e.score = score.number;
    e.score_pos = score.pos;
    keyword("provenance");
    e.provenance = expect(TokenKind::kString).text;
    expect(TokenKind::kDot);
    kb.add_evaluation(std::move(e));
  }

  std::vector<Attribute> attributes() {
    std::vector<Attribute> out;
    while (accept(TokenKind::kSemicolon)) {
      Attribute a;
      a.key = identifier().text;
      a.value = value(true);
      out.push_back(std::move(a));
    }
    expect(TokenKind::kDot, {"';'", "'.'"});
    return out;
  }

  // After the `rule` keyword.
  CompatibilityRule rule_body() {
    CompatibilityRule r;
    const Token& id = identifier();
    r.id = id.text;
    r.pos = id.pos;
    static constexpr std::string_view kSeverities[] = {"forbid", "warn"};
    r.severity = one_of(kSeverities) == "forbid" ? Severity::kForbid : Severity::kWarn;
    keyword("when");
    do {
      r.condition.push_back(rule_atom());
    } while (accept(TokenKind::kAndAnd));
    expect(TokenKind::kDot, {"'&&'", "'.'"});
    return r;
  }

  RuleAtom rule_atom() {
    RuleAtom a;
    a.pos = peek().pos;
    a.negated = accept(TokenKind::kBang);
    const Token& name = peek();
    auto pred = name.kind == TokenKind::kIdent ? parse_rule_predicate(name.text)
                                               : std::nullopt;
    if (!pred) {
      fail(name, "unknown rule predicate " + found(name),
           {"sameTechnique", "sameDataType", "sameIssue", "sameObject",
            "sameLocation", "slotEquals", "slotsOverlap"});
    }
    next();
    a.predicate = *pred;
    if (a.predicate == RulePredicate::kSameLocation) {
      if (accept(TokenKind::kLParen)) {
        const Token& eps = expect(TokenKind::kNumber);
        if (!(eps.number > 0.0)) fail(eps, "sameLocation epsilon must be positive", {});
        a.epsilon = eps.number;
        expect(TokenKind::kRParen);
      }
    } else if (a.predicate == RulePredicate::kSlotEquals) {
      expect(TokenKind::kLParen);
      const Token& slot = peek();
      auto parsed = slot.kind == TokenKind::kIdent ? parse_anchor_slot(slot.text)
                                                   : std::nullopt;
      if (!parsed) {
        fail(slot, "expected an anchor slot, found " + found(slot),
             {"Volume", "Surface", "TopOfObject", "SideOfObject", "Overlay"});
      }
      next();
      a.slot = *parsed;
      expect(TokenKind::kRParen);
    } else if (at(TokenKind::kLParen)) {
      fail(peek(), std::string(to_string(a.predicate)) + " takes no argument",
           {"'&&'", "'.'"});
    }
    return a;
  }

  // -- query atoms ----------------------------------------------------------

  Atom atom() {
    if (at_keyword("filter")) {
      next();
      expect(TokenKind::kLParen);
      FilterAtom f;
      f.var = expect(TokenKind::kVariable).text;
      const Token& op = expect(TokenKind::kCompare);
      f.op = op.text == "=" ? CompareOp::kEq
           : op.text == "!=" ? CompareOp::kNe
           : op.text == "<" ? CompareOp::kLt
           : op.text == "<=" ? CompareOp::kLe
           : op.text == ">" ? CompareOp::kGt
                            : CompareOp::kGe;
      f.literal = literal();
      expect(TokenKind::kRParen);
      return f;
    }
    const Token& subject = expect(TokenKind::kVariable, {"variable", "'filter'"});
    if (at_keyword("type")) {
      next();
      return TypeAtom{subject.text, symbol()};
    }
    PropertyAtom p;
    p.subject = subject.text;
    p.property = symbol();
    const Token& obj = peek();
    if (obj.kind == TokenKind::kVariable) {
      p.object = Variable{next().text};
    } else {
      p.object = value(false);
    }
    return p;
  }

  std::string origin_;
  std::vector<Token> tokens_;
  std::size_t i_ = 0;
};

// -- serialization ----------------------------------------------------------

template <typename T>
std::vector<const T*> sorted_by_id(const std::vector<T>& items) {
  std::vector<const T*> out;
  for (const auto& item : items) out.push_back(&item);
  std::stable_sort(out.begin(), out.end(),
                   [](const T* a, const T* b) { return a->id < b->id; });
  return out;
}

std::vector<std::string> sorted_ids(const std::vector<Ref>& refs) {
  std::set<std::string> ids;
  for (const auto& r : refs) ids.insert(r.id);
  return {ids.begin(), ids.end()};
}

void write_attributes(std::ostream& out, std::vector<Attribute> attrs) {
  std::sort(attrs.begin(), attrs.end(), [](const Attribute& a, const Attribute& b) {
    return std::tie(a.key, a.value) < std::tie(b.key, b.value);
  });
  for (const auto& a : attrs) {
    out << " ;\n    " << a.key << " " << term_to_string(a.value);
  }
  out << " .\n";
}

}  // namespace

KnowledgeBase parse_kb_unchecked(const SourceDocument& doc) {
  return Parser(doc.text, doc.origin).knowledge_base();
}

KnowledgeBase parse_kb(const SourceDocument& doc) {
  KnowledgeBase kb = parse_kb_unchecked(doc);
  auto violations = validate(kb);
  if (!violations.empty()) {
    const Violation& v = violations.front();
    throw ParseError(ErrorCode::kSemantic, v.pos,
                     std::string(to_string(v.kind)) + ": " + v.message, {},
                     doc.origin);
  }
  return kb;
}

Query parse_query(std::string_view text) {
  return Parser(text, "<query>").query();
}

CompatibilityRule parse_rule(std::string_view text) {
  return Parser(text, "<rule>").single_rule();
}

std::string serialize_rule(const CompatibilityRule& rule) {
  std::string out = "rule " + rule.id + " " + std::string(to_string(rule.severity)) +
                    " when ";
  for (std::size_t i = 0; i < rule.condition.size(); ++i) {
    const RuleAtom& a = rule.condition[i];
    if (i) out += " && ";
    if (a.negated) out += "!";
    out += to_string(a.predicate);
    if (a.predicate == RulePredicate::kSameLocation) {
      out += "(" + format_number(a.epsilon) + ")";
    } else if (a.predicate == RulePredicate::kSlotEquals) {
      out += "(" + std::string(to_string(a.slot)) + ")";
    }
  }
  return out + " .";
}

std::string serialize_kb(const KnowledgeBase& kb) {
  std::vector<std::string> groups;

  {
    std::ostringstream out;
    for (const Concept* c : sorted_by_id(kb.concepts())) {
      out << "concept " << c->id;
      auto parents = sorted_ids(c->parents);
      for (std::size_t i = 0; i < parents.size(); ++i) {
        out << (i ? ", " : " subclassof ") << parents[i];
      }
      out << " .\n";
    }
    groups.push_back(out.str());
  }
  {
    std::ostringstream out;
    for (const PropertyDef* p : sorted_by_id(kb.properties())) {
      bool object = p->kind == PropertyKind::kObject;
      out << "property " << p->id << (object ? " object" : " datum") << " domain "
          << p->domain.id << " range "
          << (object ? p->range.id : std::string(to_string(p->datatype))) << " .\n";
    }
    groups.push_back(out.str());
  }
  {
    std::ostringstream out;
    for (const Individual* ind : sorted_by_id(kb.individuals())) {
      out << "individual " << ind->id << " type ";
      auto types = sorted_ids(ind->types);
      for (std::size_t i = 0; i < types.size(); ++i) out << (i ? ", " : "") << types[i];
      std::set<std::pair<std::string, Term>> assertions;
      for (const auto& a : ind->assertions) assertions.emplace(a.property.id, a.value);
      for (const auto& [prop, value] : assertions) {
        out << " ;\n    " << prop << " " << term_to_string(value);
      }
      out << " .\n";
    }
    groups.push_back(out.str());
  }
  {
    std::ostringstream out;
    for (const EvaluationRecord* e : sorted_by_id(kb.evaluations())) {
      out << "evaluation " << e->id << " technique " << e->technique.id << " task "
          << (e->task ? e->task->id : "*") << " context "
          << (e->context ? e->context->id : "*") << " score "
          << format_number(e->score) << " provenance " << quote_string(e->provenance)
          << " .\n";
    }
    groups.push_back(out.str());
  }
  {
    std::ostringstream out;
    for (const TaskSpec* t : sorted_by_id(kb.tasks())) {
      out << "task " << t->id;
      write_attributes(out, t->attributes);
    }
    groups.push_back(out.str());
  }
  {
    std::ostringstream out;
    for (const ContextSpec* c : sorted_by_id(kb.contexts())) {
      out << "context " << c->id;
      write_attributes(out, c->attributes);
    }
    groups.push_back(out.str());
  }
  {
    std::ostringstream out;
    for (const CompatibilityRule* r : sorted_by_id(kb.rules())) {
      out << serialize_rule(*r) << "\n";
    }
    groups.push_back(out.str());
  }

  std::string text;
  for (const auto& g : groups) {
    if (g.empty()) continue;
    if (!text.empty()) text += "\n";
    text += g;
  }
  return text;
}

// -- query printing ----------------------------------------------------------

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::kEq: return "=";
    case CompareOp::kNe: return "!=";
    case CompareOp::kLt: return "<";
    case CompareOp::kLe: return "<=";
    case CompareOp::kGt: return ">";
    case CompareOp::kGe: return ">=";
  }
  return "?";
}

std::string to_string(const Atom& atom) {
  struct Visitor {
    std::string operator()(const TypeAtom& a) const {
      return "?" + a.var + " type " + a.concept_ref.id;
    }
    std::string operator()(const PropertyAtom& a) const {
      std::string obj = std::holds_alternative<Variable>(a.object)
                            ? "?" + std::get<Variable>(a.object).name
                            : term_to_string(std::get<Term>(a.object));
      return "?" + a.subject + " " + a.property.id + " " + obj;
    }
    std::string operator()(const FilterAtom& a) const {
      return "filter(?" + a.var + " " + std::string(to_string(a.op)) + " " +
             term_to_string(a.literal) + ")";
    }
  };
  return std::visit(Visitor{}, atom);
}

std::string to_string(const Query& query) {
  std::string out = "select ";
  for (std::size_t i = 0; i < query.head.size(); ++i) {
    out += (i ? ", ?" : "?") + query.head[i];
  }
  out += " where { ";
  for (const auto& a : query.body) out += to_string(a) + " . ";
  return out + "}";
}

}  // namespace vtkb
