#include "tlg/proof.hpp"

#include <algorithm>
#include <map>

#include "tlg/errors.hpp"

namespace tlg {

namespace {

constexpr std::pair<Rule, const char*> kRuleNames[] = {
    {Rule::Id, "Id"},         {Rule::Lex, "Lex"},   {Rule::ArrowE, "ArrowE"},
    {Rule::ArrowI, "ArrowI"}, {Rule::BoxE, "BoxE"}, {Rule::DiaI, "DiaI"},
};

std::string show(const Type& t) { return print_type(t, TypeSyntax::Ascii); }

}  // namespace

const char* rule_name(Rule r) {
  for (auto [rule, name] : kRuleNames)
    if (rule == r) return name;
  return "?";
}

std::optional<Rule> rule_from_name(std::string_view name) {
  for (auto [rule, n] : kRuleNames)
    if (name == n) return rule;
  return std::nullopt;
}

std::string print_judgement(const Judgement& j, TypeSyntax syntax) {
  return print_structure(j.antecedent) + " ⊢ " + print_term(j.term) + " : " +
         print_type(j.type, syntax);
}

struct Proof::Node {
  Rule rule;
  RulePayload payload;
  Judgement conclusion;
  std::vector<Proof> premises;
  std::size_t size;
};

Proof Proof::make(Rule rule, RulePayload payload, Judgement conclusion,
                  std::vector<Proof> premises) {
  std::size_t size = 1;
  for (const auto& p : premises) size += p.size();
  return Proof(std::make_shared<const Node>(
      Node{rule, std::move(payload), std::move(conclusion), std::move(premises), size}));
}

Rule Proof::rule() const { return node_->rule; }
const RulePayload& Proof::payload() const { return node_->payload; }
const Judgement& Proof::conclusion() const { return node_->conclusion; }
const std::vector<Proof>& Proof::premises() const { return node_->premises; }
std::size_t Proof::size() const { return node_->size; }

bool operator==(const Proof& a, const Proof& b) {
  if (a.node_ == b.node_) return true;
  return a.rule() == b.rule() && a.payload() == b.payload() &&
         a.conclusion() == b.conclusion() && a.premises() == b.premises();
}

namespace {

// Removes `v` from the unbracketed top level of `s`. Returns nullopt when
// it is not there exactly once.
std::optional<Structure> remove_hypothesis(const Structure& s, const Var& v) {
  std::vector<Structure> kept;
  int found = 0;
  for (const auto& e : s.elements()) {
    if (e.kind() == StructureKind::Leaf && e.item().kind() == TermKind::Var &&
        e.item().var() == v) {
      ++found;
      continue;
    }
    kept.push_back(e);
  }
  if (found != 1) return std::nullopt;
  return Structure::seq(std::move(kept));
}

bool contains_leaf(const Structure& s, const Var& v) {
  for (const auto& leaf : leaves(s))
    if (leaf.kind() == TermKind::Var && leaf.var() == v) return true;
  return false;
}

std::string leaf_key(const Term& t) {
  if (t.kind() == TermKind::Const) return "c" + std::to_string(t.index());
  return "x" + std::to_string(t.var().id) + ":" + print_type(t.var().type);
}

void require_disjoint(const Structure& a, const Structure& b, const std::vector<int>& path) {
  std::vector<std::string> left, right;
  for (const auto& t : leaves(a)) left.push_back(leaf_key(t));
  for (const auto& t : leaves(b)) right.push_back(leaf_key(t));
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  std::vector<std::string> shared;
  std::set_intersection(left.begin(), left.end(), right.begin(), right.end(),
                        std::back_inserter(shared));
  if (!shared.empty())
    throw LinearityError("resource " + shared.front() + " used by both premises", path);
}

}  // namespace

Proof Proof::lex(int index, Type type) {
  Judgement j{Structure::constant(index), Term::constant(index), std::move(type)};
  return make(Rule::Lex, RulePayload{index, std::nullopt, {}}, std::move(j), {});
}

Proof Proof::id(Var v) {
  Judgement j{Structure::variable(v), Term::variable(v), v.type};
  return make(Rule::Id, RulePayload{-1, v, {}}, std::move(j), {});
}

Proof Proof::arrow_elim(Proof fn, Proof arg) {
  const Type& ft = fn.type();
  if (!ft.is_arrow()) throw TypeError("ArrowE", "an implication", show(ft));
  if (!(ft.argument() == arg.type()))
    throw TypeError("ArrowE", show(ft.argument()), show(arg.type()));
  require_disjoint(fn.antecedent(), arg.antecedent(), {});
  Judgement j{Structure::seq({fn.antecedent(), arg.antecedent()}),
              Term::app(fn.term(), arg.term()), ft.result()};
  return make(Rule::ArrowE, {}, std::move(j), {std::move(fn), std::move(arg)});
}

Proof Proof::arrow_intro(Var v, Proof body) {
  auto rest = remove_hypothesis(body.antecedent(), v);
  if (!rest)
    throw LinearityError("hypothesis x" + std::to_string(v.id) +
                         " is not an unbracketed antecedent leaf");
  Judgement j{*rest, Term::lambda(v, body.term()), Type::arrow(v.type, body.type())};
  return make(Rule::ArrowI, RulePayload{-1, std::move(v), {}}, std::move(j), {std::move(body)});
}

Proof Proof::box_elim(std::string label, Proof body) {
  const Type& t = body.type();
  if (!t.is_box() || t.label() != label)
    throw TypeError("BoxE", "[" + label + "]…", show(t));
  Judgement j{Structure::bracket(label, BracketKind::Adjunct, body.antecedent()),
              Term::box_elim(label, body.term()), t.body()};
  return make(Rule::BoxE, RulePayload{-1, std::nullopt, label}, std::move(j),
              {std::move(body)});
}

Proof Proof::dia_intro(std::string label, Proof body) {
  Judgement j{Structure::bracket(label, BracketKind::Complement, body.antecedent()),
              Term::dia_intro(label, body.term()), Type::diamond(label, body.type())};
  return make(Rule::DiaI, RulePayload{-1, std::nullopt, label}, std::move(j),
              {std::move(body)});
}

// ---------------------------------------------------------------------------
// Checker

namespace {

class Checker {
 public:
  Judgement run(const Proof& p) { return visit(p); }

 private:
  [[noreturn]] void mismatch(const Proof& p, const std::string& what, const std::string& expected,
                             const std::string& found) {
    throw TypeError(rule_name(p.rule()), what + " " + expected, found, path_);
  }

  void expect_arity(const Proof& p, std::size_t n) {
    if (p.premises().size() != n)
      mismatch(p, "premise count", std::to_string(n), std::to_string(p.premises().size()));
  }

  void expect_conclusion(const Proof& p, const Structure& ant, const Term& term,
                         const Type& type) {
    const Judgement& c = p.conclusion();
    if (!(c.type == type)) mismatch(p, "type", show(type), show(c.type));
    if (!(c.term == term)) mismatch(p, "term", print_term(term), print_term(c.term));
    if (!equivalent(c.antecedent, ant))
      mismatch(p, "antecedent", print_structure(ant), print_structure(c.antecedent));
  }

  Judgement premise(const Proof& p, std::size_t i) {
    path_.push_back(static_cast<int>(i));
    Judgement j = visit(p.premises()[i]);
    path_.pop_back();
    return j;
  }

  Judgement visit(const Proof& p) {
    const RulePayload& pay = p.payload();
    switch (p.rule()) {
      case Rule::Lex: {
        expect_arity(p, 0);
        if (pay.lex_index < 0) mismatch(p, "payload", "a phrase index", "none");
        expect_conclusion(p, Structure::constant(pay.lex_index), Term::constant(pay.lex_index),
                          p.type());
        break;
      }
      case Rule::Id: {
        expect_arity(p, 0);
        if (!pay.var) mismatch(p, "payload", "a variable", "none");
        expect_conclusion(p, Structure::variable(*pay.var), Term::variable(*pay.var),
                          pay.var->type);
        break;
      }
      case Rule::ArrowE: {
        expect_arity(p, 2);
        Judgement fn = premise(p, 0);
        Judgement arg = premise(p, 1);
        if (!fn.type.is_arrow()) mismatch(p, "function type", "an implication", show(fn.type));
        if (!(fn.type.argument() == arg.type))
          mismatch(p, "argument type", show(fn.type.argument()), show(arg.type));
        require_disjoint(fn.antecedent, arg.antecedent, path_);
        expect_conclusion(p, Structure::seq({fn.antecedent, arg.antecedent}),
                          Term::app(fn.term, arg.term), fn.type.result());
        break;
      }
      case Rule::ArrowI: {
        expect_arity(p, 1);
        if (!pay.var) mismatch(p, "payload", "a variable", "none");
        Judgement body = premise(p, 0);
        auto rest = remove_hypothesis(body.antecedent, *pay.var);
        if (!rest) {
          std::string x = "x" + std::to_string(pay.var->id);
          if (contains_leaf(body.antecedent, *pay.var))
            mismatch(p, "hypothesis", "unbracketed " + x, print_structure(body.antecedent));
          throw LinearityError("abstracted hypothesis " + x + " does not occur in " +
                                   print_structure(body.antecedent),
                               path_);
        }
        expect_conclusion(p, *rest, Term::lambda(*pay.var, body.term),
                          Type::arrow(pay.var->type, body.type));
        break;
      }
      case Rule::BoxE: {
        expect_arity(p, 1);
        Judgement body = premise(p, 0);
        if (!body.type.is_box() || body.type.label() != pay.label)
          mismatch(p, "premise type", "[" + pay.label + "]…", show(body.type));
        expect_conclusion(p, Structure::bracket(pay.label, BracketKind::Adjunct, body.antecedent),
                          Term::box_elim(pay.label, body.term), body.type.body());
        break;
      }
      case Rule::DiaI: {
        expect_arity(p, 1);
        if (!is_label(pay.label)) mismatch(p, "payload", "a dependency label", pay.label);
        Judgement body = premise(p, 0);
        expect_conclusion(p,
                          Structure::bracket(pay.label, BracketKind::Complement, body.antecedent),
                          Term::dia_intro(pay.label, body.term), Type::diamond(pay.label, body.type));
        break;
      }
    }
    return p.conclusion();
  }

  std::vector<int> path_;
};

const Term& spine_head(const Term& t) {
  const Term* cur = &t;
  for (;;) {
    switch (cur->kind()) {
      case TermKind::App:
        cur = &cur->fn();
        break;
      case TermKind::Lambda:
      case TermKind::DiaIntro:
      case TermKind::BoxElim:
        cur = &cur->body();
        break;
      default:
        return *cur;
    }
  }
}

int head_of(const Judgement& j) {
  std::vector<int> candidates;
  for (const auto& leaf : unbracketed_leaves(j.antecedent))
    if (leaf.kind() == TermKind::Const) candidates.push_back(leaf.index());
  if (candidates.empty())
    throw HeadlessStructure("no unbracketed lexical leaf in " + print_structure(j.antecedent));
  const Term& spine = spine_head(j.term);
  if (spine.kind() == TermKind::Const &&
      std::find(candidates.begin(), candidates.end(), spine.index()) != candidates.end())
    return spine.index();
  return candidates.front();
}

void collect_arcs(const Proof& p, const Judgement& enclosing, std::vector<DependencyArc>& out) {
  if (p.rule() == Rule::BoxE || p.rule() == Rule::DiaI) {
    const Judgement& inner = p.premises().front().conclusion();
    out.push_back(DependencyArc{head_of(enclosing), head_of(inner), p.payload().label,
                                p.rule() == Rule::DiaI ? BracketKind::Complement
                                                       : BracketKind::Adjunct});
    collect_arcs(p.premises().front(), inner, out);
    return;
  }
  for (const auto& q : p.premises()) collect_arcs(q, enclosing, out);
}

}  // namespace

Judgement check(const Proof& p) { return Checker().run(p); }

Term term_of(const Proof& p) { return check(p).term; }

std::vector<DependencyArc> dependency_tree(const Proof& p) {
  check(p);
  std::vector<DependencyArc> arcs;
  collect_arcs(p, p.conclusion(), arcs);
  return arcs;
}

// ---------------------------------------------------------------------------
// Relaxations

Type strip_modalities(const Type& t) {
  switch (t.kind()) {
    case TypeKind::Atom:
      return t;
    case TypeKind::Arrow:
      return Type::arrow(strip_modalities(t.argument()), strip_modalities(t.result()));
    default:
      return strip_modalities(t.body());
  }
}

Type collapse_atoms(const Type& t) {
  switch (t.kind()) {
    case TypeKind::Atom:
      return Type::atom(std::string(kCollapsedAtom));
    case TypeKind::Arrow:
      return Type::arrow(collapse_atoms(t.argument()), collapse_atoms(t.result()));
    case TypeKind::Diamond:
      return Type::diamond(t.label(), collapse_atoms(t.body()));
    case TypeKind::Box:
      return Type::box(t.label(), collapse_atoms(t.body()));
  }
  return t;
}

namespace {

template <typename TypeMap>
Proof rebuild(const Proof& p, const TypeMap& map, bool keep_modal_rules) {
  auto var = [&](const Var& v) { return Var{v.id, map(v.type)}; };
  switch (p.rule()) {
    case Rule::Lex:
      return Proof::lex(p.payload().lex_index, map(p.type()));
    case Rule::Id:
      return Proof::id(var(*p.payload().var));
    case Rule::ArrowE:
      return Proof::arrow_elim(rebuild(p.premises()[0], map, keep_modal_rules),
                               rebuild(p.premises()[1], map, keep_modal_rules));
    case Rule::ArrowI:
      return Proof::arrow_intro(var(*p.payload().var),
                                rebuild(p.premises()[0], map, keep_modal_rules));
    case Rule::BoxE:
    case Rule::DiaI: {
      Proof inner = rebuild(p.premises()[0], map, keep_modal_rules);
      if (!keep_modal_rules) return inner;
      return p.rule() == Rule::BoxE ? Proof::box_elim(p.payload().label, std::move(inner))
                                    : Proof::dia_intro(p.payload().label, std::move(inner));
    }
  }
  return p;
}

Proof rename_vars(const Proof& p, std::map<int, int>& names, int& next) {
  auto var = [&](const Var& v) {
    auto [it, inserted] = names.try_emplace(v.id, next);
    if (inserted) ++next;
    return Var{it->second, v.type};
  };
  switch (p.rule()) {
    case Rule::Lex:
      return p;
    case Rule::Id:
      return Proof::id(var(*p.payload().var));
    case Rule::ArrowE: {
      Proof fn = rename_vars(p.premises()[0], names, next);
      Proof arg = rename_vars(p.premises()[1], names, next);
      return Proof::arrow_elim(std::move(fn), std::move(arg));
    }
    case Rule::ArrowI: {
      Var v = var(*p.payload().var);
      return Proof::arrow_intro(std::move(v), rename_vars(p.premises()[0], names, next));
    }
    case Rule::BoxE:
      return Proof::box_elim(p.payload().label, rename_vars(p.premises()[0], names, next));
    case Rule::DiaI:
      return Proof::dia_intro(p.payload().label, rename_vars(p.premises()[0], names, next));
  }
  return p;
}

}  // namespace

Proof strip_modalities(const Proof& p) {
  return rebuild(p, [](const Type& t) { return strip_modalities(t); }, false);
}

Proof collapse_atoms(const Proof& p) {
  return rebuild(p, [](const Type& t) { return collapse_atoms(t); }, true);
}

Proof canonicalize_variables(const Proof& p) {
  std::map<int, int> names;
  int next = 0;
  return rename_vars(p, names, next);
}

}  // namespace tlg
