#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "support/generators.hpp"
#include "tlg/errors.hpp"
#include "tlg/metrics.hpp"
#include "tlg/render.hpp"

using namespace tlg;
using tlg::testing::Rng;

namespace {

const char* const kGoldenText =
    "c0, 〈c1, 〈〈c2〉det, 〈c3〉mod, c4〉su〉whbody ⊢ "
    "c0 ▵whbody((λx0.c1 x0 ▵su(▾det(c2) (▾mod(c3) c4)))) : WHQ";

std::vector<tlg::testing::GeneratedProof> generated(int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<tlg::testing::GeneratedProof> out;
  for (int i = 0; i < count; ++i) out.push_back(tlg::testing::random_proof(rng));
  return out;
}

std::size_t count_of(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

// Every phrase has at most one head per label and heads never loop.
bool is_forest(const std::vector<DependencyArc>& arcs) {
  std::map<int, std::set<int>> heads;
  std::set<std::pair<int, std::string>> seen;
  for (const auto& a : arcs) {
    if (a.head == a.dependent) return false;
    if (!seen.insert({a.dependent, a.label}).second) return false;
    heads[a.dependent].insert(a.head);
  }
  for (const auto& [start, _] : heads) {
    std::set<int> visited;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int h : heads[v]) {
        if (h == start) return false;
        if (visited.insert(h).second) stack.push_back(h);
      }
    }
  }
  return true;
}

bool has_unbracketed_constant(const Structure& s) {
  for (const auto& leaf : unbracketed_leaves(s))
    if (leaf.kind() == TermKind::Const) return true;
  return false;
}

// True when the root or the premise of some bracketing node has no
// unbracketed constant to serve as a head.
bool headless(const Proof& p, bool root = true) {
  if (root && bracket_count(p.antecedent()) > 0 && !has_unbracketed_constant(p.antecedent()))
    return true;
  for (const auto& q : p.premises()) {
    bool bracketing = p.rule() == Rule::BoxE || p.rule() == Rule::DiaI;
    if (bracketing && !has_unbracketed_constant(q.antecedent())) return true;
    if (headless(q, false)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("golden proof checks to the printed judgement") {
  Proof p = tlg::testing::golden_proof();
  Judgement j = check(p);
  CHECK(render_text(p) == kGoldenText);
  CHECK(print_term(j.term) == "c0 ▵whbody((λx0.c1 x0 ▵su(▾det(c2) (▾mod(c3) c4))))");
  CHECK(j.type == parse_type("WHQ"));
  CHECK(p.size() == 16);
  CHECK(is_beta_eta_normal(term_of(p)));
}

TEST_CASE("lexical leaf") {
  Proof leaf = Proof::lex(4, parse_type("N"));
  CHECK(render_text(leaf) == "c4 ⊢ c4 : N");
  CHECK(print_term(term_of(leaf)) == "c4");
  CHECK(dependency_tree(leaf).empty());
  CHECK(strip_modalities(leaf) == leaf);
  CHECK(collapse_atoms(leaf) == Proof::lex(4, Type::atom("*")));
}

TEST_CASE("rule builders enforce the rules") {
  Proof n = Proof::lex(0, parse_type("N"));
  Proof f = Proof::lex(1, parse_type("N -> NP"));
  CHECK_THROWS_AS(Proof::arrow_elim(n, f), TypeError);
  CHECK_THROWS_AS(Proof::arrow_elim(f, Proof::lex(2, parse_type("NP"))), TypeError);
  CHECK_THROWS_AS(Proof::arrow_elim(f, Proof::lex(1, parse_type("N"))), LinearityError);
  CHECK_THROWS_AS(Proof::box_elim("det", f), TypeError);
  CHECK_THROWS_AS(Proof::box_elim("mod", Proof::lex(1, parse_type("[det](N -> NP)"))), TypeError);
  Var x{0, parse_type("A")};
  CHECK_THROWS_AS(Proof::arrow_intro(x, n), LinearityError);
  // A hypothesis under a bracket cannot be discharged.
  Proof bracketed = Proof::dia_intro("su", Proof::id(x));
  CHECK_THROWS_AS(Proof::arrow_intro(x, bracketed), LinearityError);
}

TEST_CASE("the consistent label flip is caught at the application") {
  Proof p = tlg::testing::golden_proof();
  // root -> DiaI whbody -> ArrowI -> ArrowE(c1 x0, ▵su ...)
  const Proof& app = p.premises()[1].premises()[0].premises()[0];
  REQUIRE(app.rule() == Rule::ArrowE);
  Proof flipped_arg = Proof::dia_intro("obj", app.premises()[1].premises()[0]);
  Proof app2 = Proof::make(Rule::ArrowE, app.payload(), app.conclusion(), {app.premises()[0], flipped_arg});
  const Proof& lam = p.premises()[1].premises()[0];
  Proof lam2 = Proof::make(lam.rule(), lam.payload(), lam.conclusion(), {app2});
  const Proof& wh = p.premises()[1];
  Proof wh2 = Proof::make(wh.rule(), wh.payload(), wh.conclusion(), {lam2});
  Proof root = Proof::make(p.rule(), p.payload(), p.conclusion(), {p.premises()[0], wh2});
  try {
    check(root);
    FAIL("accepted");
  } catch (const TypeError& e) {
    CHECK(e.path() == std::vector<int>{1, 0, 0});
    CHECK(e.rule() == rule_name(Rule::ArrowE));
  }
}

TEST_CASE("every single-point mutation of the golden proof is rejected") {
  Proof p = tlg::testing::golden_proof();
  auto muts = tlg::testing::single_mutations(p);
  CHECK(muts.size() >= 50);
  std::set<std::string> kinds;
  for (const auto& m : muts) {
    kinds.insert(m.what.substr(0, m.what.find(" at ")));
    bool typed = false;
    try {
      check(m.proof);
    } catch (const TypeError&) {
      typed = true;
    } catch (const LinearityError&) {
      typed = true;
    }
    CHECK_MESSAGE(typed, m.what);
  }
  CHECK(kinds.count("atom rename"));
  CHECK(kinds.count("type label flip"));
  CHECK(kinds.count("premise swap"));
  CHECK(kinds.count("dropped bracket"));
  CHECK(kinds.count("payload label flip"));
  CHECK(kinds.count("rule flip"));
}

TEST_CASE("normal form predicate") {
  Var x{0, parse_type("A")};
  Term c0 = Term::constant(0);
  CHECK_FALSE(is_beta_eta_normal(Term::app(Term::lambda(x, Term::variable(x)), c0)));
  CHECK_FALSE(is_beta_eta_normal(Term::lambda(x, Term::app(c0, Term::variable(x)))));
  CHECK_FALSE(is_beta_eta_normal(
      Term::app(Term::box_elim("mod", Term::lambda(x, Term::variable(x))), c0)));
  CHECK(is_beta_eta_normal(Term::lambda(x, Term::variable(x))));
  CHECK(is_beta_eta_normal(Term::lambda(x, Term::app(Term::variable(x), c0))));
  // x occurs in the function part, so this is not an η-redex.
  Var f{1, parse_type("A -> A -> B")};
  CHECK(is_beta_eta_normal(
      Term::lambda(x, Term::app(Term::app(Term::variable(f), Term::variable(x)), Term::variable(x)))));
}

TEST_CASE("dependency tree of the golden proof") {
  auto arcs = dependency_tree(tlg::testing::golden_proof());
  std::vector<DependencyArc> expected = {{0, 1, "whbody", BracketKind::Complement},
                                         {1, 4, "su", BracketKind::Complement},
                                         {4, 3, "mod", BracketKind::Adjunct},
                                         {4, 2, "det", BracketKind::Adjunct}};
  CHECK(arcs.size() == expected.size());
  for (const auto& e : expected)
    CHECK_MESSAGE(std::find(arcs.begin(), arcs.end(), e) != arcs.end(), e.label);
}

TEST_CASE("headless structures are reported") {
  // A derivation whose whole antecedent is bracketed has no head.
  Proof p = Proof::dia_intro("su", Proof::lex(0, parse_type("NP")));
  CHECK_THROWS_AS(dependency_tree(p), HeadlessStructure);
}

TEST_CASE("modality stripping on the golden proof") {
  Proof s = strip_modalities(tlg::testing::golden_proof());
  CHECK_NOTHROW(check(s));
  CHECK(print_term(s.term()) == "c0 (λx0.c1 x0 (c2 (c3 c4)))");
  auto types = lexical_types(s);
  CHECK(types == std::map<int, Type>{{0, parse_type("(VNW -> SV1) -> WHQ")},
                                     {1, parse_type("VNW -> NP -> SV1")},
                                     {2, parse_type("N -> NP")},
                                     {3, parse_type("N -> N")},
                                     {4, parse_type("N")}});
  CHECK(bracket_count(s.antecedent()) == 0);
  CHECK(strip_modalities(s) == s);
}

TEST_CASE("atom collapsing") {
  CHECK(collapse_atoms(parse_type("<predc>VNW -> <su>NP -> SV1")) ==
        parse_type("<predc>* -> <su>* -> *"));
  Proof c = collapse_atoms(tlg::testing::golden_proof());
  CHECK_NOTHROW(check(c));
  CHECK(c.type() == Type::atom("*"));
}

TEST_CASE("both relaxations leave the function-argument skeleton") {
  Proof both = collapse_atoms(strip_modalities(tlg::testing::golden_proof()));
  Type star = Type::atom("*");
  Var x{0, star};
  auto c = [](int i) { return Term::constant(i); };
  Term skeleton = Term::app(
      c(0), Term::lambda(x, Term::app(Term::app(c(1), Term::variable(x)),
                                      Term::app(c(2), Term::app(c(3), c(4))))));
  CHECK(both.term() == skeleton);
}

TEST_CASE("LaTeX rendering has one inference per node") {
  Proof p = tlg::testing::golden_proof();
  std::vector<std::string> words = {"Wat", "is", "die", "rare", "tekening", "?"};
  std::string tex = render_latex(p, words);
  CHECK(count_of(tex, "\\infer") == p.size());
  CHECK(tex.find("\\documentclass") == 0);
  CHECK(tex.find("\\end{document}") != std::string::npos);
  CHECK(tex.find("tekening") != std::string::npos);
  CHECK(count_of(render_latex(Proof::lex(0, parse_type("N"))), "\\infer") == 1);
}

TEST_CASE("proof files round trip") {
  Proof p = tlg::testing::golden_proof();
  CHECK(read_proof(write_proof(p)) == p);
  for (const auto& g : generated(300, 5)) REQUIRE(read_proof(write_proof(g.proof)) == g.proof);
}

TEST_CASE("malformed proof files are rejected") {
  CHECK_THROWS_AS(read_proof(""), Error);
  CHECK_THROWS_AS(read_proof("(Lex 0"), Error);
  CHECK_THROWS_AS(read_proof("(Frob 0 \"c0 ⊢ c0 : N\")"), Error);
  CHECK_THROWS_AS(read_proof("(Lex 0 \"c0 ⊢ c0 : N ->\")"), Error);
  std::string deep;
  for (int i = 0; i < 3000; ++i) deep += "(ArrowE \"c0 ⊢ c0 : N\" ";
  CHECK_THROWS_AS(read_proof(deep), Error);
}

TEST_CASE("generated proofs satisfy the proof invariants") {
  int without_head = 0;
  for (const auto& g : generated(500, 17)) {
    const Proof& p = g.proof;
    Judgement j = check(p);
    REQUIRE(is_beta_eta_normal(j.term));

    // Linearity: each constant once in the term and once in the antecedent.
    auto in_term = constants(j.term);
    std::vector<int> in_ante;
    for (const auto& leaf : leaves(j.antecedent))
      if (leaf.kind() == TermKind::Const) in_ante.push_back(leaf.index());
    std::sort(in_term.begin(), in_term.end());
    std::sort(in_ante.begin(), in_ante.end());
    REQUIRE(in_term == in_ante);
    REQUIRE(std::adjacent_find(in_term.begin(), in_term.end()) == in_term.end());
    REQUIRE(in_term.size() == g.sentence.phrases.size());

    if (headless(p)) {
      REQUIRE_THROWS_AS(dependency_tree(p), HeadlessStructure);
      ++without_head;
    } else {
      auto arcs = dependency_tree(p);
      REQUIRE(arcs.size() == bracket_count(j.antecedent));
      REQUIRE(is_forest(arcs));
    }

    Proof s = strip_modalities(p);
    REQUIRE_NOTHROW(check(s));
    REQUIRE(bracket_count(s.antecedent()) == 0);
    Proof c = collapse_atoms(p);
    REQUIRE_NOTHROW(check(c));
    REQUIRE(strip_modalities(c) == collapse_atoms(s));
  }
  CHECK(without_head < 100);
}

TEST_CASE("variables are canonicalized in abstraction order") {
  Var a{7, parse_type("A")}, b{3, parse_type("B")};
  Proof f = Proof::lex(0, parse_type("A -> B -> C"));
  Proof body = Proof::arrow_elim(Proof::arrow_elim(f, Proof::id(a)), Proof::id(b));
  Proof p = Proof::arrow_intro(a, Proof::arrow_intro(b, body));
  Proof q = canonicalize_variables(p);
  CHECK(print_term(q.term()) == "(λx0.(λx1.c0 x0 x1))");
  CHECK_NOTHROW(check(q));
}
