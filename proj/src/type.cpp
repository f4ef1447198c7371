#include "tlg/type.hpp"

#include <algorithm>
#include <optional>

#include "tlg/errors.hpp"

namespace tlg {

struct Type::Node {
  TypeKind kind;
  std::string text;  // atom name or modal label
  std::optional<Type> first;
  std::optional<Type> second;
  std::size_t atoms;
  std::size_t depth;
};

namespace {

bool is_token_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_';
}

}  // namespace

bool is_atom_name(std::string_view s) {
  if (s == kCollapsedAtom) return true;
  return !s.empty() && std::all_of(s.begin(), s.end(), is_token_char);
}

bool is_label(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_token_char);
}

Type Type::atom(std::string name) {
  if (!is_atom_name(name)) throw Error("invalid atom name '" + name + "'");
  return Type(std::make_shared<const Node>(
      Node{TypeKind::Atom, std::move(name), std::nullopt, std::nullopt, 1, 1}));
}

Type Type::arrow(Type argument, Type result) {
  std::size_t atoms = argument.atom_count() + result.atom_count();
  std::size_t depth = 1 + std::max(argument.depth(), result.depth());
  return Type(std::make_shared<const Node>(
      Node{TypeKind::Arrow, {}, std::move(argument), std::move(result), atoms, depth}));
}

Type Type::diamond(std::string label, Type body) {
  if (!is_label(label)) throw Error("invalid dependency label '" + label + "'");
  std::size_t atoms = body.atom_count();
  std::size_t depth = 1 + body.depth();
  return Type(std::make_shared<const Node>(
      Node{TypeKind::Diamond, std::move(label), std::move(body), std::nullopt, atoms, depth}));
}

Type Type::box(std::string label, Type body) {
  if (!is_label(label)) throw Error("invalid dependency label '" + label + "'");
  std::size_t atoms = body.atom_count();
  std::size_t depth = 1 + body.depth();
  return Type(std::make_shared<const Node>(
      Node{TypeKind::Box, std::move(label), std::move(body), std::nullopt, atoms, depth}));
}

TypeKind Type::kind() const { return node_->kind; }
const std::string& Type::name() const { return node_->text; }
const std::string& Type::label() const { return node_->text; }
const Type& Type::argument() const { return *node_->first; }
const Type& Type::result() const { return *node_->second; }
const Type& Type::body() const { return *node_->first; }
std::size_t Type::atom_count() const { return node_->atoms; }
std::size_t Type::depth() const { return node_->depth; }

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.node_->atoms != b.node_->atoms) return false;
  switch (a.kind()) {
    case TypeKind::Atom:
      return a.name() == b.name();
    case TypeKind::Arrow:
      return a.argument() == b.argument() && a.result() == b.result();
    case TypeKind::Diamond:
    case TypeKind::Box:
      return a.label() == b.label() && a.body() == b.body();
  }
  return false;
}

std::strong_ordering operator<=>(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case TypeKind::Atom:
      return a.name() <=> b.name();
    case TypeKind::Arrow:
      if (auto c = a.argument() <=> b.argument(); c != 0) return c;
      return a.result() <=> b.result();
    case TypeKind::Diamond:
    case TypeKind::Box:
      if (auto c = a.label() <=> b.label(); c != 0) return c;
      return a.body() <=> b.body();
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

constexpr std::string_view kDiamondGlyph = "◇";  // ◇
constexpr std::string_view kBoxGlyph = "□";      // □
constexpr std::string_view kArrowAliases[] = {"->", "⟶", "→", "⊸"};

class TypeParser {
 public:
  explicit TypeParser(std::string_view text) : text_(text) {}

  Type parse() {
    Type t = parse_type();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }

  bool consume(std::string_view s) {
    if (text_.substr(pos_, s.size()) == s) {
      pos_ += s.size();
      return true;
    }
    return false;
  }

  bool consume_arrow() {
    for (auto alias : kArrowAliases)
      if (consume(alias)) return true;
    return false;
  }

  std::string token() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_token_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Type parse_type() {
    NestingGuard guard(depth_, pos_);
    Type head = parse_modal();
    skip_space();
    if (consume_arrow()) return Type::arrow(std::move(head), parse_type());
    return head;
  }

  std::string parse_label() {
    skip_space();
    std::string label = token();
    if (label.empty()) fail("expected dependency label");
    return label;
  }

  Type parse_modal() {
    NestingGuard guard(depth_, pos_);
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (consume("<")) {
      std::string label = parse_label();
      skip_space();
      if (!consume(">")) fail("expected '>'");
      return Type::diamond(std::move(label), parse_modal());
    }
    if (consume("[")) {
      std::string label = parse_label();
      skip_space();
      if (!consume("]")) fail("expected ']'");
      return Type::box(std::move(label), parse_modal());
    }
    if (consume(kDiamondGlyph)) {
      std::string label = parse_label();
      return Type::diamond(std::move(label), parse_modal());
    }
    if (consume(kBoxGlyph)) {
      std::string label = parse_label();
      return Type::box(std::move(label), parse_modal());
    }
    if (consume("(")) {
      Type inner = parse_type();
      skip_space();
      if (!consume(")")) fail("expected ')'");
      return inner;
    }
    if (consume(kCollapsedAtom)) return Type::atom(std::string(kCollapsedAtom));
    std::string name = token();
    if (name.empty()) fail("expected atom, modality or '('");
    return Type::atom(std::move(name));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

// Nesting order: atoms are first order, an implication is one above its
// argument. Display syntax parenthesizes arguments of order above zero.
std::size_t order(const Type& t) {
  switch (t.kind()) {
    case TypeKind::Atom:
      return 0;
    case TypeKind::Arrow:
      return std::max(order(t.argument()) + 1, order(t.result()));
    default:
      return order(t.body());
  }
}

void print_ascii(const Type& t, std::string& out) {
  switch (t.kind()) {
    case TypeKind::Atom:
      out += t.name();
      return;
    case TypeKind::Arrow:
      if (t.argument().is_arrow()) {
        out += '(';
        print_ascii(t.argument(), out);
        out += ')';
      } else {
        print_ascii(t.argument(), out);
      }
      out += " -> ";
      print_ascii(t.result(), out);
      return;
    case TypeKind::Diamond:
    case TypeKind::Box:
      out += t.is_diamond() ? '<' : '[';
      out += t.label();
      out += t.is_diamond() ? '>' : ']';
      if (t.body().is_atom()) {
        print_ascii(t.body(), out);
      } else {
        out += '(';
        print_ascii(t.body(), out);
        out += ')';
      }
      return;
  }
}

void print_display(const Type& t, std::string& out) {
  switch (t.kind()) {
    case TypeKind::Atom:
      out += t.name();
      return;
    case TypeKind::Arrow:
      if (order(t.argument()) > 0) {
        out += '(';
        print_display(t.argument(), out);
        out += ')';
      } else {
        print_display(t.argument(), out);
      }
      out += "⟶";
      print_display(t.result(), out);
      return;
    case TypeKind::Diamond:
    case TypeKind::Box:
      out += t.is_diamond() ? kDiamondGlyph : kBoxGlyph;
      out += t.label();
      out += '(';
      print_display(t.body(), out);
      out += ')';
      return;
  }
}

void polarize_into(const Type& t, Polarity p, int source, std::vector<PathStep>& path,
                   std::vector<AtomOccurrence>& out, int& next) {
  switch (t.kind()) {
    case TypeKind::Atom:
      out.push_back(AtomOccurrence{next++, t.name(), p, source, path});
      return;
    case TypeKind::Arrow:
      path.push_back({StepKind::ArgOf, {}});
      polarize_into(t.argument(), !p, source, path, out, next);
      path.back() = {StepKind::ResOf, {}};
      polarize_into(t.result(), p, source, path, out, next);
      path.pop_back();
      return;
    case TypeKind::Diamond:
    case TypeKind::Box:
      path.push_back({t.is_diamond() ? StepKind::UnderDia : StepKind::UnderBox, t.label()});
      polarize_into(t.body(), p, source, path, out, next);
      path.pop_back();
      return;
  }
}

}  // namespace

Type parse_type(std::string_view text) { return TypeParser(text).parse(); }

std::string print_type(const Type& t, TypeSyntax syntax) {
  std::string out;
  if (syntax == TypeSyntax::Ascii)
    print_ascii(t, out);
  else
    print_display(t, out);
  return out;
}

std::vector<AtomOccurrence> polarize(const Type& t, Polarity p, int start_index, int source) {
  std::vector<AtomOccurrence> out;
  out.reserve(t.atom_count());
  std::vector<PathStep> path;
  int next = start_index;
  polarize_into(t, p, source, path, out, next);
  return out;
}

Type follow_path(const Type& t, const std::vector<PathStep>& path) {
  Type cur = t;
  for (const auto& step : path) {
    switch (step.kind) {
      case StepKind::ArgOf:
      case StepKind::ResOf:
        if (!cur.is_arrow()) throw Error("path step expects an implication");
        cur = step.kind == StepKind::ArgOf ? cur.argument() : cur.result();
        break;
      case StepKind::UnderDia:
      case StepKind::UnderBox: {
        bool dia = step.kind == StepKind::UnderDia;
        if ((dia && !cur.is_diamond()) || (!dia && !cur.is_box()) || cur.label() != step.label)
          throw Error("path step expects a modality labeled " + step.label);
        cur = cur.body();
        break;
      }
    }
  }
  return cur;
}

}  // namespace tlg
