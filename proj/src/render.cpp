#include "tlg/render.hpp"

#include <map>
#include <variant>

#include "tlg/errors.hpp"

namespace tlg {

std::string render_text(const Proof& p) { return print_judgement(p.conclusion()); }

// ---------------------------------------------------------------------------
// LaTeX

namespace {

std::string tex_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '_': case '&': case '%': case '$': case '#': case '{': case '}':
        out += '\\';
        out += c;
        break;
      case '~':
        out += "\\textasciitilde{}";
        break;
      case '^':
        out += "\\textasciicircum{}";
        break;
      case '\\':
        out += "\\textbackslash{}";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string tex_type(const Type& t, bool parenthesize_arrow) {
  switch (t.kind()) {
    case TypeKind::Atom:
      return "\\mathsf{" + tex_escape(t.name()) + "}";
    case TypeKind::Arrow: {
      std::string s = tex_type(t.argument(), true) + " \\multimap " + tex_type(t.result(), false);
      return parenthesize_arrow ? "(" + s + ")" : s;
    }
    case TypeKind::Diamond:
    case TypeKind::Box: {
      std::string op = t.is_diamond() ? "\\Diamond" : "\\Box";
      std::string body = tex_type(t.body(), false);
      if (!t.body().is_atom()) body = "(" + body + ")";
      return op + "^{\\mathit{" + tex_escape(t.label()) + "}}" + body;
    }
  }
  return {};
}

void tex_term(const Term& t, bool bracket_outer, std::string& out) {
  switch (t.kind()) {
    case TermKind::Const:
      out += "c_{" + std::to_string(t.index()) + "}";
      return;
    case TermKind::Var:
      out += "x_{" + std::to_string(t.var().id) + "}";
      return;
    case TermKind::App:
      if (bracket_outer) out += "(";
      tex_term(t.fn(), false, out);
      out += "~";
      tex_term(t.arg(), true, out);
      if (bracket_outer) out += ")";
      return;
    case TermKind::Lambda:
      out += "(\\lambda x_{" + std::to_string(t.var().id) + "}.";
      tex_term(t.body(), false, out);
      out += ")";
      return;
    case TermKind::DiaIntro:
    case TermKind::BoxElim:
      out += t.kind() == TermKind::DiaIntro ? "\\vartriangle" : "\\blacktriangledown";
      out += "^{\\mathit{" + tex_escape(t.label()) + "}}(";
      tex_term(t.body(), false, out);
      out += ")";
      return;
  }
}

void tex_structure(const Structure& s, std::string& out) {
  switch (s.kind()) {
    case StructureKind::Leaf:
      tex_term(s.item(), false, out);
      return;
    case StructureKind::Seq:
      for (std::size_t i = 0; i < s.children().size(); ++i) {
        if (i) out += ", ";
        tex_structure(s.children()[i], out);
      }
      return;
    case StructureKind::Bracket:
      out += "\\langle ";
      tex_structure(s.body(), out);
      out += " \\rangle^{\\mathit{" + tex_escape(s.label()) + "}}";
      return;
  }
}

const char* tex_rule(const Proof& p) {
  switch (p.rule()) {
    case Rule::Id: return "\\textsc{id}";
    case Rule::Lex: return "\\textsc{lex}";
    case Rule::ArrowE: return "\\multimap E";
    case Rule::ArrowI: return "\\multimap I";
    case Rule::BoxE: return "\\Box E";
    case Rule::DiaI: return "\\Diamond I";
  }
  return "";
}

void tex_proof(const Proof& p, std::span<const std::string> words, int depth, std::string& out) {
  std::string indent(2 * depth, ' ');
  out += indent + "\\infer[" + tex_rule(p) + "]{";
  tex_structure(p.antecedent(), out);
  out += " \\vdash ";
  tex_term(p.term(), false, out);
  out += " : " + tex_type(p.type(), false) + "}{";
  if (p.rule() == Rule::Lex) {
    auto i = static_cast<std::size_t>(p.payload().lex_index);
    if (i < words.size()) out += "\\textit{" + tex_escape(words[i]) + "}";
    out += "}";
    return;
  }
  if (p.premises().empty()) {
    out += "}";
    return;
  }
  out += "\n";
  for (std::size_t i = 0; i < p.premises().size(); ++i) {
    if (i) out += "\n" + indent + "  &\n";
    tex_proof(p.premises()[i], words, depth + 1, out);
  }
  out += "\n" + indent + "}";
}

}  // namespace

std::string render_latex(const Proof& p, std::span<const std::string> words) {
  std::string out =
      "\\documentclass[preview,border=4pt]{standalone}\n"
      "\\usepackage{amssymb}\n"
      "\\usepackage{proof}\n"
      "\\begin{document}\n"
      "$\n";
  tex_proof(p, words, 0, out);
  out += "\n$\n\\end{document}\n";
  return out;
}

// ---------------------------------------------------------------------------
// S-expression proof files

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void write_node(const Proof& p, int depth, std::string& out) {
  out += std::string(2 * depth, ' ') + "(" + rule_name(p.rule());
  const RulePayload& pay = p.payload();
  switch (p.rule()) {
    case Rule::Lex:
      out += " " + std::to_string(pay.lex_index);
      break;
    case Rule::Id:
    case Rule::ArrowI:
      out += " (x" + std::to_string(pay.var->id) + " " + quote(print_type(pay.var->type)) + ")";
      break;
    case Rule::BoxE:
    case Rule::DiaI:
      out += " " + pay.label;
      break;
    case Rule::ArrowE:
      break;
  }
  out += " " + quote(print_judgement(p.conclusion(), TypeSyntax::Ascii));
  for (const auto& q : p.premises()) {
    out += "\n";
    write_node(q, depth + 1, out);
  }
  out += ")";
}

struct SExpr {
  enum Kind { Atom, String, List } kind;
  std::string text;
  std::vector<SExpr> items;
  std::size_t offset = 0;
};

class SExprReader {
 public:
  explicit SExprReader(std::string_view text) : text_(text) {}

  SExpr read_top() {
    SExpr e = read();
    skip_space();
    if (pos_ != text_.size()) throw SyntaxError("unexpected trailing input", pos_);
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\t' || text_[pos_] == '\r'))
      ++pos_;
  }

  SExpr read() {
    NestingGuard guard(depth_, pos_);
    skip_space();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
    std::size_t start = pos_;
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      SExpr list{SExpr::List, {}, {}, start};
      for (;;) {
        skip_space();
        if (pos_ >= text_.size()) throw SyntaxError("unterminated list", start);
        if (text_[pos_] == ')') {
          ++pos_;
          return list;
        }
        list.items.push_back(read());
      }
    }
    if (c == ')') throw SyntaxError("unexpected ')'", pos_);
    if (c == '"') {
      ++pos_;
      std::string s;
      for (;;) {
        if (pos_ >= text_.size()) throw SyntaxError("unterminated string", start);
        char d = text_[pos_++];
        if (d == '"') break;
        if (d == '\\') {
          if (pos_ >= text_.size()) throw SyntaxError("unterminated string", start);
          d = text_[pos_++];
        }
        s += d;
      }
      return SExpr{SExpr::String, std::move(s), {}, start};
    }
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           text_[pos_] != '"' && text_[pos_] != ' ' && text_[pos_] != '\n' &&
           text_[pos_] != '\t' && text_[pos_] != '\r')
      ++pos_;
    return SExpr{SExpr::Atom, std::string(text_.substr(start, pos_ - start)), {}, start};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

int parse_var_name(const SExpr& e) {
  const std::string& s = e.text;
  if (e.kind != SExpr::Atom || s.size() < 2 || s[0] != 'x' || s.size() > 10 ||
      s.find_first_not_of("0123456789", 1) != std::string::npos)
    throw SyntaxError("expected variable name", e.offset);
  return std::stoi(s.substr(1));
}

class ProofBuilder {
 public:
  explicit ProofBuilder(const SExpr& root) : root_(root) { declare(root_); }

  Proof build() { return build(root_); }

 private:
  [[noreturn]] static void fail(const SExpr& e, const std::string& what) {
    throw SyntaxError(what, e.offset);
  }

  static Rule rule_of(const SExpr& e) {
    if (e.kind != SExpr::List || e.items.empty() || e.items[0].kind != SExpr::Atom)
      fail(e, "expected proof node");
    auto rule = rule_from_name(e.items[0].text);
    if (!rule) fail(e.items[0], "unknown rule '" + e.items[0].text + "'");
    return *rule;
  }

  static bool has_payload(Rule r) { return r != Rule::ArrowE; }

  void declare(const SExpr& e) {
    Rule r = rule_of(e);
    std::size_t first = has_payload(r) ? 3 : 2;
    if (e.items.size() < first) fail(e, "proof node is missing fields");
    if (r == Rule::Id || r == Rule::ArrowI) {
      Var v = read_var(e.items[1]);
      auto [it, inserted] = vars_.try_emplace(v.id, v.type);
      if (!inserted && !(it->second == v.type))
        throw FormatError("variable x" + std::to_string(v.id) + " declared with two types");
    }
    for (std::size_t i = first; i < e.items.size(); ++i) declare(e.items[i]);
  }

  static Var read_var(const SExpr& e) {
    if (e.kind != SExpr::List || e.items.size() != 2 || e.items[1].kind != SExpr::String)
      fail(e, "expected (xN \"type\")");
    return Var{parse_var_name(e.items[0]), parse_type(e.items[1].text)};
  }

  Judgement read_judgement(const SExpr& e, const Structure& reference) const {
    if (e.kind != SExpr::String) fail(e, "expected quoted judgement");
    const std::string& s = e.text;
    constexpr std::string_view turnstile = "⊢";
    auto t = s.find(turnstile);
    auto colon = s.rfind(" : ");
    if (t == std::string::npos || colon == std::string::npos || colon < t)
      fail(e, "judgement must read 'structure ⊢ term : type'");
    VarTypes types = [this](int id) -> std::optional<Type> {
      auto it = vars_.find(id);
      if (it == vars_.end()) return std::nullopt;
      return it->second;
    };
    Structure ant = parse_structure(std::string_view(s).substr(0, t), types);
    Term term = parse_term(std::string_view(s).substr(t + turnstile.size(),
                                                      colon - t - turnstile.size()),
                           types);
    Type type = parse_type(std::string_view(s).substr(colon + 3));
    return Judgement{adopt_bracket_kinds(ant, reference), std::move(term), std::move(type)};
  }

  Proof build(const SExpr& e) const {
    Rule r = rule_of(e);
    RulePayload payload;
    std::size_t judgement_at = has_payload(r) ? 2 : 1;
    switch (r) {
      case Rule::Lex: {
        const SExpr& idx = e.items[1];
        if (idx.kind != SExpr::Atom || idx.text.empty() || idx.text.size() > 9 ||
            idx.text.find_first_not_of("0123456789") != std::string::npos)
          fail(idx, "expected phrase index");
        payload.lex_index = std::stoi(idx.text);
        break;
      }
      case Rule::Id:
      case Rule::ArrowI:
        payload.var = read_var(e.items[1]);
        break;
      case Rule::BoxE:
      case Rule::DiaI:
        if (e.items[1].kind != SExpr::Atom || !is_label(e.items[1].text))
          fail(e.items[1], "expected dependency label");
        payload.label = e.items[1].text;
        break;
      case Rule::ArrowE:
        break;
    }
    std::vector<Proof> premises;
    for (std::size_t i = judgement_at + 1; i < e.items.size(); ++i)
      premises.push_back(build(e.items[i]));

    Structure reference = Structure::empty();
    if (r == Rule::ArrowE && premises.size() == 2) {
      reference = Structure::seq({premises[0].antecedent(), premises[1].antecedent()});
    } else if (r == Rule::ArrowI && premises.size() == 1) {
      // The abstracted hypothesis is gone from the conclusion.
      std::vector<Structure> rest;
      for (const auto& el : premises[0].antecedent().elements())
        if (!(el.kind() == StructureKind::Leaf && el.item().kind() == TermKind::Var &&
              el.item().var() == *payload.var))
          rest.push_back(el);
      reference = Structure::seq(std::move(rest));
    } else if ((r == Rule::BoxE || r == Rule::DiaI) && premises.size() == 1) {
      reference = Structure::bracket(
          payload.label, r == Rule::BoxE ? BracketKind::Adjunct : BracketKind::Complement,
          premises[0].antecedent());
    }
    Judgement j = read_judgement(e.items[judgement_at], reference);
    return Proof::make(r, std::move(payload), std::move(j), std::move(premises));
  }

  const SExpr& root_;
  std::map<int, Type> vars_;
};

}  // namespace

std::string write_proof(const Proof& p) {
  std::string out;
  write_node(p, 0, out);
  return out + "\n";
}

Proof read_proof(std::string_view text) {
  SExpr root = SExprReader(text).read_top();
  return ProofBuilder(root).build();
}

}  // namespace tlg
