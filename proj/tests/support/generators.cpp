#include "support/generators.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace tlg::testing {

namespace {

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& xs) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

Type random_type(Rng& rng, const TypeShape& shape, int depth) {
  if (depth >= shape.max_depth || coin(rng, depth == 0 ? 0.15 : 0.35))
    return Type::atom(pick(rng, shape.atoms));
  switch (uniform(rng, 0, 3)) {
    case 0:
    case 1: {
      Type a = random_type(rng, shape, depth + 1);
      return Type::arrow(a, random_type(rng, shape, depth + 1));
    }
    case 2:
      return Type::diamond(pick(rng, shape.labels), random_type(rng, shape, depth + 1));
    default:
      return Type::box(pick(rng, shape.labels), random_type(rng, shape, depth + 1));
  }
}

namespace {

// Builds proofs top-down from a target type. Hypotheses in `must` are
// consumed exactly once and never under a bracket, so the enclosing ArrowI
// applies. Heads are fresh lexical constants or pending hypotheses, spines
// use only ArrowE and BoxE, and no abstraction body ends in its own
// variable (η-short).
class ProofGen {
 public:
  ProofGen(Rng& rng, const ProofShape& shape) : rng_(rng), shape_(shape) {}

  GeneratedProof run() {
    // A diamond goal would bracket the whole antecedent, leaving no head.
    Type goal = small_type(coin(rng_, 0.8) ? 0 : 1);
    while (goal.is_diamond()) goal = small_type(1);
    Proof p = canonicalize_variables(canon(goal, shape_.budget, {}, -1));
    // Sentences have at least one phrase; λx.x has none.
    if (phrases_.empty()) return run();
    Sentence s{{}, goal};
    for (std::size_t i = 0; i < phrases_.size(); ++i)
      s.phrases.push_back({{"w" + std::to_string(i)}, phrases_[i]});
    return {p, s};
  }

 private:
  Type atom() { return Type::atom(pick(rng_, shape_.atoms)); }
  std::string label() { return pick(rng_, shape_.labels); }

  Type small_type(int depth) {
    if (depth <= 0 || coin(rng_, 0.45)) return atom();
    switch (uniform(rng_, 0, 2)) {
      case 0: {
        Type a = small_type(depth - 1);
        return Type::arrow(a, small_type(depth - 1));
      }
      case 1:
        return Type::diamond(label(), small_type(depth - 1));
      default:
        return Type::box(label(), small_type(depth - 1));
    }
  }

  Proof lex(const Type& t) {
    phrases_.push_back(t);
    return Proof::lex(static_cast<int>(phrases_.size()) - 1, t);
  }

  // `no_bare`: the result must not be the bare hypothesis with this id.
  Proof canon(const Type& t, int budget, std::vector<Var> must, int no_bare) {
    if (t.is_arrow() && budget > 0 && coin(rng_, shape_.lambda_rate))
      return abstraction(t, budget, std::move(must));
    if (t.is_diamond() && must.empty() && budget > 0 && coin(rng_, 0.6))
      return Proof::dia_intro(t.label(), canon(t.body(), budget - 1, {}, -1));
    return neutral(t, budget, std::move(must), -1, no_bare);
  }

  Proof abstraction(const Type& t, int budget, std::vector<Var> must) {
    Var x{next_var_++, t.argument()};
    must.push_back(x);
    const Type& body = t.result();
    if (body.is_arrow() && budget > 1 && coin(rng_, shape_.lambda_rate))
      return Proof::arrow_intro(x, abstraction(body, budget - 1, std::move(must)));
    return Proof::arrow_intro(x, neutral(body, budget - 1, std::move(must), x.id, -1));
  }

  // Arguments A1..Ak with h = A1 -> ... -> Ak -> t, when they exist.
  static std::optional<std::vector<Type>> spine_to(const Type& h, const Type& t) {
    std::vector<Type> args;
    Type cur = h;
    for (;;) {
      if (cur == t) return args;
      if (!cur.is_arrow()) return std::nullopt;
      args.push_back(cur.argument());
      cur = cur.result();
    }
  }

  struct Arg {
    Type type;
    std::optional<Var> direct;
    std::vector<Var> share;
  };

  Proof build_args(Proof head, std::vector<Arg>& args, const std::vector<bool>& box_after,
                   const std::vector<std::string>& labels, int budget, int avoid) {
    Proof p = std::move(head);
    if (box_after[0]) p = Proof::box_elim(labels[0], p);
    for (std::size_t i = 0; i < args.size(); ++i) {
      Arg& a = args[i];
      Proof arg = a.direct ? Proof::id(*a.direct) : [&] {
        bool last = i + 1 == args.size();
        bool has_avoid = std::any_of(a.share.begin(), a.share.end(),
                                     [&](const Var& v) { return v.id == avoid; });
        return canon(a.type, budget - 1, a.share, last && has_avoid ? avoid : -1);
      }();
      p = Proof::arrow_elim(p, arg);
      if (box_after[i + 1]) p = Proof::box_elim(labels[i + 1], p);
    }
    return p;
  }

  // Each hypothesis becomes its own argument or joins a generated one.
  void distribute(const std::vector<Var>& pending, std::vector<Arg>& args, int budget) {
    std::vector<std::size_t> generic;
    for (std::size_t i = 0; i < args.size(); ++i) generic.push_back(i);
    std::vector<Var> direct;
    for (const auto& v : pending) {
      if (generic.empty() || budget <= 0 || coin(rng_, 0.4))
        direct.push_back(v);
      else
        args[pick(rng_, generic)].share.push_back(v);
    }
    for (const auto& v : direct) {
      auto pos = static_cast<std::size_t>(uniform(rng_, 0, static_cast<int>(args.size())));
      args.insert(args.begin() + static_cast<std::ptrdiff_t>(pos), Arg{v.type, v, {}});
    }
  }

  // A head applied to arguments, of type t. `avoid`: no bare last argument
  // with that id. `no_bare`: not the bare hypothesis with that id.
  Proof neutral(const Type& t, int budget, std::vector<Var> must, int avoid, int no_bare) {
    // Pending hypothesis as head.
    std::vector<std::size_t> heads;
    for (std::size_t i = 0; i < must.size(); ++i) {
      auto spine = spine_to(must[i].type, t);
      if (!spine) continue;
      if (must[i].id == no_bare && spine->empty()) continue;
      if (spine->empty() && must.size() > 1) continue;
      heads.push_back(i);
    }
    if (!heads.empty() && coin(rng_, 0.5)) {
      std::size_t hi = heads[static_cast<std::size_t>(uniform(rng_, 0, static_cast<int>(heads.size()) - 1))];
      Var h = must[hi];
      must.erase(must.begin() + static_cast<std::ptrdiff_t>(hi));
      std::vector<Arg> args;
      std::vector<Type> spine = *spine_to(h.type, t);
      for (const auto& a : spine) args.push_back({a, std::nullopt, {}});
      for (auto& v : must)
        args[static_cast<std::size_t>(uniform(rng_, 0, static_cast<int>(args.size()) - 1))]
            .share.push_back(v);
      std::vector<bool> no_boxes(args.size() + 1, false);
      std::vector<std::string> labels(args.size() + 1);
      return build_args(Proof::id(h), args, no_boxes, labels, budget, avoid);
    }

    // Fresh lexical head.
    std::vector<Arg> args;
    int generic = budget > 0 ? uniform(rng_, 0, shape_.max_arity) : 0;
    for (int i = 0; i < generic; ++i)
      args.push_back({small_type(std::min(budget - 1, 2)), std::nullopt, {}});
    distribute(must, args, budget);
    if (!args.empty() && args.back().direct && args.back().direct->id == avoid)
      args.push_back({atom(), std::nullopt, {}});

    // Boxes may only sit before the first argument carrying a hypothesis.
    std::size_t first_hyp = args.size() + 1;
    for (std::size_t i = 0; i < args.size(); ++i)
      if (args[i].direct || !args[i].share.empty()) {
        first_hyp = i + 1;
        break;
      }
    std::vector<bool> box_after(args.size() + 1, false);
    std::vector<std::string> labels(args.size() + 1);
    for (std::size_t pos = 0; pos <= args.size(); ++pos) {
      if (pos >= first_hyp) break;
      // A box after the last argument brackets the whole phrase; keep it rare.
      if (coin(rng_, pos == args.size() ? 0.05 : 0.25)) {
        box_after[pos] = true;
        labels[pos] = label();
      }
    }

    Type h = t;
    if (box_after[args.size()]) h = Type::box(labels[args.size()], h);
    for (std::size_t i = args.size(); i-- > 0;) {
      h = Type::arrow(args[i].type, h);
      if (box_after[i]) h = Type::box(labels[i], h);
    }
    Proof head = lex(h);
    return build_args(head, args, box_after, labels, budget, avoid);
  }

  Rng& rng_;
  ProofShape shape_;
  std::vector<Type> phrases_;
  int next_var_ = 0;
};

}  // namespace

GeneratedProof random_proof(Rng& rng, const ProofShape& shape) { return ProofGen(rng, shape).run(); }

Matrix random_matrix(Rng& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
  return m;
}

Matrix random_int_matrix(Rng& rng, int n, int lo, int hi) {
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = uniform(rng, lo, hi);
  return m;
}

std::vector<Matching> all_matchings(const ProofNetFrame& f) {
  auto bs = bins(f);
  std::vector<Matching> out;
  Matching cur;
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == bs.size()) {
      out.push_back(cur);
      return;
    }
    Assignment a(bs[k].size());
    std::iota(a.begin(), a.end(), 0);
    do {
      cur.per_atom[bs[k].atom] = a;
      go(k + 1);
    } while (std::next_permutation(a.begin(), a.end()));
  };
  go(0);
  return out;
}

Sentence running_example() {
  return Sentence{{{{"Wat"}, parse_type("<whbody>(<predc>VNW -> SV1) -> WHQ")},
                   {{"is"}, parse_type("<predc>VNW -> <su>NP -> SV1")},
                   {{"die"}, parse_type("[det](N -> NP)")},
                   {{"rare"}, parse_type("[mod](N -> N)")},
                   {{"tekening"}, parse_type("N")},
                   {{"?"}, parse_type("PUNCT")}},
                  parse_type("WHQ")};
}

}  // namespace tlg::testing

namespace tlg::testing {

Proof golden_proof() {
  Sentence s = running_example();
  auto lex = [&](int i) { return Proof::lex(i, s.phrases[static_cast<std::size_t>(i)].type); };
  Var x0{0, parse_type("<predc>VNW")};
  Proof np = Proof::arrow_elim(Proof::box_elim("det", lex(2)),
                               Proof::arrow_elim(Proof::box_elim("mod", lex(3)), lex(4)));
  Proof body = Proof::arrow_elim(Proof::arrow_elim(lex(1), Proof::id(x0)), Proof::dia_intro("su", np));
  return Proof::arrow_elim(lex(0), Proof::dia_intro("whbody", Proof::arrow_intro(x0, body)));
}

namespace {

constexpr const char* kFreshAtom = "Z";
constexpr const char* kFreshLabel = "obj";

// Copies of t with exactly one atom (resp. one modal label) replaced.
void atom_variants(const Type& t, std::vector<Type>& out) {
  switch (t.kind()) {
    case TypeKind::Atom:
      out.push_back(Type::atom(kFreshAtom));
      return;
    case TypeKind::Arrow: {
      std::vector<Type> arg, res;
      atom_variants(t.argument(), arg);
      atom_variants(t.result(), res);
      for (auto& a : arg) out.push_back(Type::arrow(a, t.result()));
      for (auto& r : res) out.push_back(Type::arrow(t.argument(), r));
      return;
    }
    default: {
      std::vector<Type> body;
      atom_variants(t.body(), body);
      for (auto& b : body)
        out.push_back(t.is_diamond() ? Type::diamond(t.label(), b) : Type::box(t.label(), b));
    }
  }
}

void label_variants(const Type& t, std::vector<Type>& out) {
  switch (t.kind()) {
    case TypeKind::Atom:
      return;
    case TypeKind::Arrow: {
      std::vector<Type> arg, res;
      label_variants(t.argument(), arg);
      label_variants(t.result(), res);
      for (auto& a : arg) out.push_back(Type::arrow(a, t.result()));
      for (auto& r : res) out.push_back(Type::arrow(t.argument(), r));
      return;
    }
    default: {
      auto wrap = [&](const std::string& l, const Type& b) {
        return t.is_diamond() ? Type::diamond(l, b) : Type::box(l, b);
      };
      out.push_back(wrap(kFreshLabel, t.body()));
      std::vector<Type> body;
      label_variants(t.body(), body);
      for (auto& b : body) out.push_back(wrap(t.label(), b));
    }
  }
}

// Copies of s with one bracket removed (dropped) or its kind flipped.
void bracket_variants(const Structure& s, std::vector<Structure>& dropped,
                      std::vector<Structure>& flipped) {
  switch (s.kind()) {
    case StructureKind::Leaf:
      return;
    case StructureKind::Bracket: {
      dropped.push_back(s.body());
      auto other = s.bracket_kind() == BracketKind::Complement ? BracketKind::Adjunct
                                                               : BracketKind::Complement;
      flipped.push_back(Structure::bracket(s.label(), other, s.body()));
      std::vector<Structure> d, f;
      bracket_variants(s.body(), d, f);
      for (auto& x : d) dropped.push_back(Structure::bracket(s.label(), s.bracket_kind(), x));
      for (auto& x : f) flipped.push_back(Structure::bracket(s.label(), s.bracket_kind(), x));
      return;
    }
    case StructureKind::Seq: {
      const auto& cs = s.children();
      for (std::size_t i = 0; i < cs.size(); ++i) {
        std::vector<Structure> d, f;
        bracket_variants(cs[i], d, f);
        auto splice = [&](const Structure& x) {
          auto copy = cs;
          copy[i] = x;
          return Structure::seq(copy);
        };
        for (auto& x : d) dropped.push_back(splice(x));
        for (auto& x : f) flipped.push_back(splice(x));
      }
    }
  }
}

Proof with_node(const Proof& p, const std::vector<int>& path, std::size_t depth, const Proof& node) {
  if (depth == path.size()) return node;
  auto premises = p.premises();
  auto i = static_cast<std::size_t>(path[depth]);
  premises[i] = with_node(premises[i], path, depth + 1, node);
  return Proof::make(p.rule(), p.payload(), p.conclusion(), premises);
}

void collect_paths(const Proof& p, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < p.premises().size(); ++i) {
    cur.push_back(static_cast<int>(i));
    collect_paths(p.premises()[i], cur, out);
    cur.pop_back();
  }
}

const Proof& at(const Proof& p, const std::vector<int>& path) {
  const Proof* q = &p;
  for (int i : path) q = &q->premises()[static_cast<std::size_t>(i)];
  return *q;
}

std::string where(const std::vector<int>& path) {
  std::string s = "root";
  for (int i : path) s += "." + std::to_string(i);
  return s;
}

}  // namespace

std::vector<Mutation> single_mutations(const Proof& p) {
  std::vector<Mutation> out;
  std::vector<std::vector<int>> paths;
  std::vector<int> cur;
  collect_paths(p, cur, paths);

  for (const auto& path : paths) {
    const Proof& n = at(p, path);
    const std::string w = where(path) + " " + rule_name(n.rule());
    auto emit = [&](const std::string& what, const Proof& node) {
      out.push_back({what + " at " + w, with_node(p, path, 0, node)});
    };
    auto rebuilt = [&](Judgement j) { return Proof::make(n.rule(), n.payload(), j, n.premises()); };

    std::vector<Type> atoms, labels;
    atom_variants(n.type(), atoms);
    label_variants(n.type(), labels);
    for (const auto& t : atoms) emit("atom rename", rebuilt({n.antecedent(), n.term(), t}));
    for (const auto& t : labels) emit("type label flip", rebuilt({n.antecedent(), n.term(), t}));

    std::vector<Structure> dropped, flipped;
    bracket_variants(n.antecedent(), dropped, flipped);
    for (const auto& s : dropped) emit("dropped bracket", rebuilt({s, n.term(), n.type()}));
    for (const auto& s : flipped) emit("bracket kind flip", rebuilt({s, n.term(), n.type()}));

    if (n.rule() == Rule::BoxE || n.rule() == Rule::DiaI) {
      RulePayload pl = n.payload();
      pl.label = kFreshLabel;
      emit("payload label flip", Proof::make(n.rule(), pl, n.conclusion(), n.premises()));
      // Relabel the node consistently; the parent no longer fits.
      if (!path.empty()) {
        Proof relabeled = n.rule() == Rule::BoxE ? Proof::make(n.rule(), pl, n.conclusion(), n.premises())
                                                 : Proof::dia_intro(kFreshLabel, n.premises()[0]);
        emit("consistent label flip", relabeled);
      }
      Rule other = n.rule() == Rule::BoxE ? Rule::DiaI : Rule::BoxE;
      emit("rule flip", Proof::make(other, n.payload(), n.conclusion(), n.premises()));
    }
    if (n.rule() == Rule::ArrowE) {
      auto prem = n.premises();
      std::swap(prem[0], prem[1]);
      emit("premise swap", Proof::make(n.rule(), n.payload(), n.conclusion(), prem));
    }
    if (n.rule() == Rule::Lex) {
      RulePayload pl = n.payload();
      pl.lex_index += 7;
      emit("phrase index change", Proof::make(n.rule(), pl, n.conclusion(), n.premises()));
    }
    if (n.rule() == Rule::Id || n.rule() == Rule::ArrowI) {
      RulePayload pl = n.payload();
      pl.var->id += 5;
      emit("variable rename", Proof::make(n.rule(), pl, n.conclusion(), n.premises()));
    }
  }
  return out;
}

}  // namespace tlg::testing
