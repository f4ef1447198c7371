#pragma once

// Natural-deduction proofs over the six supported rules, their static
// checker, and the transformations read off a checked proof.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tlg/term.hpp"
#include "tlg/type.hpp"

namespace tlg {

enum class Rule { Id, Lex, ArrowE, ArrowI, BoxE, DiaI };

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);

struct Judgement {
  Structure antecedent;
  Term term;
  Type type;

  friend bool operator==(const Judgement&, const Judgement&) = default;
};

// `structure ⊢ term : type`.
std::string print_judgement(const Judgement& j, TypeSyntax syntax = TypeSyntax::Display);

// Rule-specific data: the phrase index for Lex, the variable for Id/ArrowI,
// the dependency label for BoxE/DiaI.
struct RulePayload {
  int lex_index = -1;
  std::optional<Var> var;
  std::string label;

  friend bool operator==(const RulePayload&, const RulePayload&) = default;
};

class Proof {
 public:
  // Unchecked node; use check() to validate.
  static Proof make(Rule rule, RulePayload payload, Judgement conclusion,
                    std::vector<Proof> premises);

  // Rule builders compute the conclusion from the premises and throw
  // TypeError/LinearityError when the rule does not apply.
  static Proof lex(int index, Type type);
  static Proof id(Var v);
  static Proof arrow_elim(Proof fn, Proof arg);
  static Proof arrow_intro(Var v, Proof body);
  static Proof box_elim(std::string label, Proof body);
  static Proof dia_intro(std::string label, Proof body);

  Rule rule() const;
  const RulePayload& payload() const;
  const Judgement& conclusion() const;
  const std::vector<Proof>& premises() const;

  const Type& type() const { return conclusion().type; }
  const Term& term() const { return conclusion().term; }
  const Structure& antecedent() const { return conclusion().antecedent; }

  // Number of nodes.
  std::size_t size() const;

  // Whole-tree structural equality (ordered antecedents).
  friend bool operator==(const Proof& a, const Proof& b);

 private:
  struct Node;
  explicit Proof(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Validates every node against its rule and returns the root conclusion.
// Throws TypeError or LinearityError naming the offending node.
Judgement check(const Proof& p);

// Conclusion term of a checked proof.
Term term_of(const Proof& p);

struct DependencyArc {
  int head = 0;
  int dependent = 0;
  std::string label;
  BracketKind kind = BracketKind::Complement;

  friend bool operator==(const DependencyArc&, const DependencyArc&) = default;
};

// One arc per structural bracket, from the head of the enclosing phrase to
// the head of the bracketed phrase. Throws HeadlessStructure.
std::vector<DependencyArc> dependency_tree(const Proof& p);

// Removes all diamonds/boxes, modal term operators, brackets and modal rule
// nodes. The result checks in the implication-only fragment.
Proof strip_modalities(const Proof& p);
// Renames every atom to `*`.
Proof collapse_atoms(const Proof& p);

Type strip_modalities(const Type& t);
Type collapse_atoms(const Type& t);

// Renames hypotheses x0, x1, ... in pre-order of their abstractions.
Proof canonicalize_variables(const Proof& p);

}  // namespace tlg
