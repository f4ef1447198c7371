#pragma once

// Dependency-decorated linear lambda terms and the bracketed antecedent
// structures they are typed against.

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tlg/type.hpp"

namespace tlg {

// Hypothesis variable. Equal only when both id and type agree.
struct Var {
  int id = 0;
  Type type;

  friend bool operator==(const Var& a, const Var& b) { return a.id == b.id && a.type == b.type; }
  friend std::strong_ordering operator<=>(const Var& a, const Var& b) {
    if (auto c = a.id <=> b.id; c != 0) return c;
    return a.type <=> b.type;
  }
};

enum class TermKind { Const, Var, App, Lambda, DiaIntro, BoxElim };

class Term {
 public:
  static Term constant(int index);
  static Term variable(Var v);
  static Term app(Term fn, Term arg);
  static Term lambda(Var v, Term body);
  static Term dia_intro(std::string label, Term body);
  static Term box_elim(std::string label, Term body);

  TermKind kind() const;
  bool is_leaf() const { return kind() == TermKind::Const || kind() == TermKind::Var; }

  int index() const;                 // Const
  const Var& var() const;            // Var, Lambda
  const Term& fn() const;            // App
  const Term& arg() const;           // App
  const Term& body() const;          // Lambda, DiaIntro, BoxElim
  const std::string& label() const;  // DiaIntro, BoxElim

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// `c0 ▵whbody((λx0.c1 x0 ▵su(▾det(c2) (▾mod(c3) c4))))`
std::string print_term(const Term& t);

// Resolves variable names to their declared types; returns nullopt for an
// undeclared name.
using VarTypes = std::function<std::optional<Type>(int id)>;

// Parses the printed form back. Accepts `\` for λ. Throws SyntaxError.
Term parse_term(std::string_view text, const VarTypes& var_types);

std::vector<Var> free_vars(const Term& t);
std::vector<int> constants(const Term& t);
bool occurs_free(const Var& v, const Term& t);

// No β-redex (modal wrappers around the abstraction do not hide it) and no
// η-redex λx.(f x) with x not free in f.
bool is_beta_eta_normal(const Term& t);

// ---------------------------------------------------------------------------

enum class BracketKind { Complement, Adjunct };
enum class StructureKind { Leaf, Seq, Bracket };

// Antecedent structure. Sequences are kept flat: a Seq never has a Seq child
// and never a single child.
class Structure {
 public:
  static Structure leaf(Term item);  // Const or Var
  static Structure constant(int index) { return leaf(Term::constant(index)); }
  static Structure variable(Var v) { return leaf(Term::variable(std::move(v))); }
  static Structure seq(std::vector<Structure> children);
  static Structure empty() { return seq({}); }
  static Structure bracket(std::string label, BracketKind kind, Structure body);

  StructureKind kind() const;
  const Term& item() const;                         // Leaf
  const std::vector<Structure>& children() const;  // Seq
  const std::string& label() const;                 // Bracket
  BracketKind bracket_kind() const;                 // Bracket
  const Structure& body() const;                    // Bracket

  // Top-level elements: the children of a Seq, or the structure itself.
  std::vector<Structure> elements() const;
  bool is_empty() const { return kind() == StructureKind::Seq && children().empty(); }

  // Ordered structural equality, bracket kinds included.
  friend bool operator==(const Structure& a, const Structure& b);

 private:
  struct Node;
  explicit Structure(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Equality up to reordering within sequences (bracket kinds included).
bool equivalent(const Structure& a, const Structure& b);

std::vector<Term> leaves(const Structure& s);
// Leaves not enclosed by any bracket of `s`, in order.
std::vector<Term> unbracketed_leaves(const Structure& s);
std::size_t bracket_count(const Structure& s);

// `c0, 〈c1, 〈〈c2〉det, 〈c3〉mod, c4〉su〉whbody`
std::string print_structure(const Structure& s);

// Accepts `〈…〉l`, `⟨…⟩l` and `<|…|>l`. Bracket kinds are not part of the
// concrete syntax; parsed brackets are marked Complement and callers adopt
// kinds from a reference (see adopt_bracket_kinds).
Structure parse_structure(std::string_view text, const VarTypes& var_types);

// Copies bracket kinds from `reference` wherever the two structures have the
// same shape; elsewhere `s` is returned unchanged.
Structure adopt_bracket_kinds(const Structure& s, const Structure& reference);

}  // namespace tlg
