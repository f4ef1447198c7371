#include "tlg/term.hpp"

#include <algorithm>

#include "tlg/errors.hpp"

namespace tlg {

struct Term::Node {
  TermKind kind;
  int index = -1;
  std::optional<Var> var;
  std::optional<Term> first;
  std::optional<Term> second;
  std::string label;
};

Term Term::constant(int index) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Const;
  n->index = index;
  return Term(std::move(n));
}

Term Term::variable(Var v) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Var;
  n->var = std::move(v);
  return Term(std::move(n));
}

Term Term::app(Term fn, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::App;
  n->first = std::move(fn);
  n->second = std::move(arg);
  return Term(std::move(n));
}

Term Term::lambda(Var v, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Lambda;
  n->var = std::move(v);
  n->first = std::move(body);
  return Term(std::move(n));
}

Term Term::dia_intro(std::string label, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::DiaIntro;
  n->label = std::move(label);
  n->first = std::move(body);
  return Term(std::move(n));
}

Term Term::box_elim(std::string label, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::BoxElim;
  n->label = std::move(label);
  n->first = std::move(body);
  return Term(std::move(n));
}

TermKind Term::kind() const { return node_->kind; }
int Term::index() const { return node_->index; }
const Var& Term::var() const { return *node_->var; }
const Term& Term::fn() const { return *node_->first; }
const Term& Term::arg() const { return *node_->second; }
const Term& Term::body() const { return *node_->first; }
const std::string& Term::label() const { return node_->label; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Const:
      return a.index() == b.index();
    case TermKind::Var:
      return a.var() == b.var();
    case TermKind::App:
      return a.fn() == b.fn() && a.arg() == b.arg();
    case TermKind::Lambda:
      return a.var() == b.var() && a.body() == b.body();
    case TermKind::DiaIntro:
    case TermKind::BoxElim:
      return a.label() == b.label() && a.body() == b.body();
  }
  return false;
}

namespace {

constexpr std::string_view kLambda = "λ";
constexpr std::string_view kDiaIntro = "▵";
constexpr std::string_view kBoxElim = "▾";

void print_term_into(const Term& t, bool bracket_outer, std::string& out) {
  switch (t.kind()) {
    case TermKind::Const:
      out += 'c';
      out += std::to_string(t.index());
      return;
    case TermKind::Var:
      out += 'x';
      out += std::to_string(t.var().id);
      return;
    case TermKind::App:
      if (bracket_outer) out += '(';
      print_term_into(t.fn(), false, out);
      out += ' ';
      print_term_into(t.arg(), true, out);
      if (bracket_outer) out += ')';
      return;
    case TermKind::Lambda:
      out += '(';
      out += kLambda;
      out += 'x';
      out += std::to_string(t.var().id);
      out += '.';
      print_term_into(t.body(), false, out);
      out += ')';
      return;
    case TermKind::DiaIntro:
    case TermKind::BoxElim:
      out += t.kind() == TermKind::DiaIntro ? kDiaIntro : kBoxElim;
      out += t.label();
      out += '(';
      print_term_into(t.body(), false, out);
      out += ')';
      return;
  }
}

bool is_token_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_';
}

// Shared cursor for term and structure syntax.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  std::size_t offset() const { return pos_; }

  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  bool peek(std::string_view s) {
    skip_space();
    return text_.substr(pos_, s.size()) == s;
  }
  bool consume(std::string_view s) {
    if (!peek(s)) return false;
    pos_ += s.size();
    return true;
  }
  void expect(std::string_view s) {
    if (!consume(s)) fail("expected '" + std::string(s) + "'");
  }
  std::string token() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_token_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  // `c12` / `x3`: returns the number after the expected prefix letter.
  int numbered(char prefix) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != prefix) fail(std::string("expected ") + prefix);
    ++pos_;
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (start == pos_ || pos_ - start > 9) fail("expected index");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }
  char peek_char() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

class TermParser {
 public:
  TermParser(std::string_view text, const VarTypes& types) : cur_(text), types_(types) {}

  Term parse() {
    Term t = parse_term();
    if (!cur_.at_end()) cur_.fail("unexpected trailing input");
    return t;
  }

 private:
  Var lookup(int id) {
    auto type = types_ ? types_(id) : std::nullopt;
    if (!type) cur_.fail("undeclared variable x" + std::to_string(id));
    return Var{id, *type};
  }

  Term parse_term() {
    NestingGuard guard(depth_, cur_.offset());
    if (cur_.consume(kLambda) || cur_.consume("\\")) {
      Var v = lookup(cur_.numbered('x'));
      cur_.expect(".");
      return Term::lambda(std::move(v), parse_term());
    }
    Term head = parse_atom();
    while (!cur_.at_end() && !cur_.peek(")")) head = Term::app(std::move(head), parse_atom());
    return head;
  }

  Term parse_atom() {
    NestingGuard guard(depth_, cur_.offset());
    char c = cur_.peek_char();
    if (c == 'c') return Term::constant(cur_.numbered('c'));
    if (c == 'x') return Term::variable(lookup(cur_.numbered('x')));
    if (cur_.consume("(")) {
      Term inner = parse_term();
      cur_.expect(")");
      return inner;
    }
    bool dia = cur_.consume(kDiaIntro);
    if (dia || cur_.consume(kBoxElim)) {
      std::string label = cur_.token();
      if (label.empty()) cur_.fail("expected dependency label");
      cur_.expect("(");
      Term inner = parse_term();
      cur_.expect(")");
      return dia ? Term::dia_intro(std::move(label), std::move(inner))
                 : Term::box_elim(std::move(label), std::move(inner));
    }
    cur_.fail("expected term");
  }

  Cursor cur_;
  const VarTypes& types_;
  int depth_ = 0;
};

void collect_free(const Term& t, std::vector<Var>& bound, std::vector<Var>& out) {
  switch (t.kind()) {
    case TermKind::Const:
      return;
    case TermKind::Var:
      if (std::find(bound.begin(), bound.end(), t.var()) == bound.end()) out.push_back(t.var());
      return;
    case TermKind::App:
      collect_free(t.fn(), bound, out);
      collect_free(t.arg(), bound, out);
      return;
    case TermKind::Lambda:
      bound.push_back(t.var());
      collect_free(t.body(), bound, out);
      bound.pop_back();
      return;
    case TermKind::DiaIntro:
    case TermKind::BoxElim:
      collect_free(t.body(), bound, out);
      return;
  }
}

void collect_constants(const Term& t, std::vector<int>& out) {
  switch (t.kind()) {
    case TermKind::Const:
      out.push_back(t.index());
      return;
    case TermKind::Var:
      return;
    case TermKind::App:
      collect_constants(t.fn(), out);
      collect_constants(t.arg(), out);
      return;
    default:
      collect_constants(t.body(), out);
      return;
  }
}

const Term& strip_wrappers(const Term& t) {
  const Term* cur = &t;
  while (cur->kind() == TermKind::DiaIntro || cur->kind() == TermKind::BoxElim)
    cur = &cur->body();
  return *cur;
}

}  // namespace

std::string print_term(const Term& t) {
  std::string out;
  print_term_into(t, false, out);
  return out;
}

Term parse_term(std::string_view text, const VarTypes& var_types) {
  return TermParser(text, var_types).parse();
}

std::vector<Var> free_vars(const Term& t) {
  std::vector<Var> bound, out;
  collect_free(t, bound, out);
  return out;
}

std::vector<int> constants(const Term& t) {
  std::vector<int> out;
  collect_constants(t, out);
  return out;
}

bool occurs_free(const Var& v, const Term& t) {
  auto fv = free_vars(t);
  return std::find(fv.begin(), fv.end(), v) != fv.end();
}

bool is_beta_eta_normal(const Term& t) {
  switch (t.kind()) {
    case TermKind::Const:
    case TermKind::Var:
      return true;
    case TermKind::App:
      if (strip_wrappers(t.fn()).kind() == TermKind::Lambda) return false;
      return is_beta_eta_normal(t.fn()) && is_beta_eta_normal(t.arg());
    case TermKind::Lambda: {
      const Term& body = t.body();
      if (body.kind() == TermKind::App && body.arg().kind() == TermKind::Var &&
          body.arg().var() == t.var() && !occurs_free(t.var(), body.fn()))
        return false;
      return is_beta_eta_normal(body);
    }
    case TermKind::DiaIntro:
    case TermKind::BoxElim:
      return is_beta_eta_normal(t.body());
  }
  return true;
}

// ---------------------------------------------------------------------------
// Structures

struct Structure::Node {
  StructureKind kind;
  std::optional<Term> item;
  std::vector<Structure> children;
  std::string label;
  BracketKind bracket = BracketKind::Complement;
  std::optional<Structure> body;
};

Structure Structure::leaf(Term item) {
  if (!item.is_leaf()) throw Error("structure leaves must be constants or variables");
  auto n = std::make_shared<Node>();
  n->kind = StructureKind::Leaf;
  n->item = std::move(item);
  return Structure(std::move(n));
}

Structure Structure::seq(std::vector<Structure> children) {
  std::vector<Structure> flat;
  flat.reserve(children.size());
  for (auto& c : children) {
    if (c.kind() == StructureKind::Seq)
      flat.insert(flat.end(), c.children().begin(), c.children().end());
    else
      flat.push_back(std::move(c));
  }
  if (flat.size() == 1) return flat.front();
  auto n = std::make_shared<Node>();
  n->kind = StructureKind::Seq;
  n->children = std::move(flat);
  return Structure(std::move(n));
}

Structure Structure::bracket(std::string label, BracketKind kind, Structure body) {
  auto n = std::make_shared<Node>();
  n->kind = StructureKind::Bracket;
  n->label = std::move(label);
  n->bracket = kind;
  n->body = std::move(body);
  return Structure(std::move(n));
}

StructureKind Structure::kind() const { return node_->kind; }
const Term& Structure::item() const { return *node_->item; }
const std::vector<Structure>& Structure::children() const { return node_->children; }
const std::string& Structure::label() const { return node_->label; }
BracketKind Structure::bracket_kind() const { return node_->bracket; }
const Structure& Structure::body() const { return *node_->body; }

std::vector<Structure> Structure::elements() const {
  if (kind() == StructureKind::Seq) return children();
  return {*this};
}

bool operator==(const Structure& a, const Structure& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case StructureKind::Leaf:
      return a.item() == b.item();
    case StructureKind::Seq:
      return a.children() == b.children();
    case StructureKind::Bracket:
      return a.label() == b.label() && a.bracket_kind() == b.bracket_kind() &&
             a.body() == b.body();
  }
  return false;
}

namespace {

std::string canonical(const Structure& s) {
  switch (s.kind()) {
    case StructureKind::Leaf: {
      const Term& t = s.item();
      if (t.kind() == TermKind::Const) return "c" + std::to_string(t.index());
      return "x" + std::to_string(t.var().id) + ":" + print_type(t.var().type);
    }
    case StructureKind::Seq: {
      std::vector<std::string> parts;
      for (const auto& c : s.children()) parts.push_back(canonical(c));
      std::sort(parts.begin(), parts.end());
      std::string out = "{";
      for (const auto& p : parts) out += p + ";";
      return out + "}";
    }
    case StructureKind::Bracket:
      return std::string(s.bracket_kind() == BracketKind::Complement ? "C" : "A") + "<" +
             s.label() + ":" + canonical(s.body()) + ">";
  }
  return {};
}

void collect_leaves(const Structure& s, bool cross_brackets, std::vector<Term>& out) {
  switch (s.kind()) {
    case StructureKind::Leaf:
      out.push_back(s.item());
      return;
    case StructureKind::Seq:
      for (const auto& c : s.children()) collect_leaves(c, cross_brackets, out);
      return;
    case StructureKind::Bracket:
      if (cross_brackets) collect_leaves(s.body(), cross_brackets, out);
      return;
  }
}

void print_structure_into(const Structure& s, std::string& out) {
  switch (s.kind()) {
    case StructureKind::Leaf:
      out += print_term(s.item());
      return;
    case StructureKind::Seq:
      for (std::size_t i = 0; i < s.children().size(); ++i) {
        if (i) out += ", ";
        print_structure_into(s.children()[i], out);
      }
      return;
    case StructureKind::Bracket:
      out += "〈";
      print_structure_into(s.body(), out);
      out += "〉";
      out += s.label();
      return;
  }
}

class StructureParser {
 public:
  StructureParser(std::string_view text, const VarTypes& types) : cur_(text), types_(types) {}

  Structure parse() {
    Structure s = parse_seq();
    if (!cur_.at_end()) cur_.fail("unexpected trailing input");
    return s;
  }

 private:
  bool at_close() { return cur_.peek("〉") || cur_.peek("⟩") || cur_.peek("|>"); }

  Structure parse_seq() {
    std::vector<Structure> items;
    if (cur_.at_end() || at_close()) return Structure::empty();
    items.push_back(parse_item());
    while (cur_.consume(",")) items.push_back(parse_item());
    return Structure::seq(std::move(items));
  }

  Structure parse_item() {
    NestingGuard guard(depth_, cur_.offset());
    char c = cur_.peek_char();
    if (c == 'c') return Structure::constant(cur_.numbered('c'));
    if (c == 'x') {
      int id = cur_.numbered('x');
      auto type = types_ ? types_(id) : std::nullopt;
      if (!type) cur_.fail("undeclared variable x" + std::to_string(id));
      return Structure::variable(Var{id, *type});
    }
    std::string_view close;
    if (cur_.consume("〈"))
      close = "〉";
    else if (cur_.consume("⟨"))
      close = "⟩";
    else if (cur_.consume("<|"))
      close = "|>";
    else
      cur_.fail("expected structure item");
    Structure body = parse_seq();
    cur_.expect(close);
    std::string label = cur_.token();
    if (label.empty()) cur_.fail("expected bracket label");
    return Structure::bracket(std::move(label), BracketKind::Complement, std::move(body));
  }

  Cursor cur_;
  const VarTypes& types_;
  int depth_ = 0;
};

}  // namespace

bool equivalent(const Structure& a, const Structure& b) { return canonical(a) == canonical(b); }

std::vector<Term> leaves(const Structure& s) {
  std::vector<Term> out;
  collect_leaves(s, true, out);
  return out;
}

std::vector<Term> unbracketed_leaves(const Structure& s) {
  std::vector<Term> out;
  collect_leaves(s, false, out);
  return out;
}

std::size_t bracket_count(const Structure& s) {
  switch (s.kind()) {
    case StructureKind::Leaf:
      return 0;
    case StructureKind::Seq: {
      std::size_t n = 0;
      for (const auto& c : s.children()) n += bracket_count(c);
      return n;
    }
    case StructureKind::Bracket:
      return 1 + bracket_count(s.body());
  }
  return 0;
}

std::string print_structure(const Structure& s) {
  std::string out;
  print_structure_into(s, out);
  return out;
}

Structure parse_structure(std::string_view text, const VarTypes& var_types) {
  return StructureParser(text, var_types).parse();
}

Structure adopt_bracket_kinds(const Structure& s, const Structure& reference) {
  if (s.kind() != reference.kind()) return s;
  switch (s.kind()) {
    case StructureKind::Leaf:
      return s;
    case StructureKind::Seq: {
      if (s.children().size() != reference.children().size()) return s;
      std::vector<Structure> out;
      for (std::size_t i = 0; i < s.children().size(); ++i)
        out.push_back(adopt_bracket_kinds(s.children()[i], reference.children()[i]));
      return Structure::seq(std::move(out));
    }
    case StructureKind::Bracket:
      if (s.label() != reference.label()) return s;
      return Structure::bracket(s.label(), reference.bracket_kind(),
                                adopt_bracket_kinds(s.body(), reference.body()));
  }
  return s;
}

}  // namespace tlg
