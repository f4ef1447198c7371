#include "tlg/proofnet.hpp"

#include <algorithm>
#include <functional>

#include <json.hpp>

#include "tlg/errors.hpp"

namespace tlg {

std::string LexicalPhrase::text() const {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Frames

struct ProofNetFrame::Data {
  Sentence sentence;
  FrameConfig config;
  std::vector<AtomOccurrence> atoms;
  std::vector<FrameNode> nodes;
  std::vector<int> phrase_roots;
  int goal_root = -1;
  std::vector<int> atom_nodes;
};

const Sentence& ProofNetFrame::sentence() const { return d_->sentence; }
const FrameConfig& ProofNetFrame::config() const { return d_->config; }
const std::vector<AtomOccurrence>& ProofNetFrame::atoms() const { return d_->atoms; }
const std::vector<FrameNode>& ProofNetFrame::nodes() const { return d_->nodes; }
const std::vector<int>& ProofNetFrame::phrase_roots() const { return d_->phrase_roots; }
int ProofNetFrame::goal_root() const { return d_->goal_root; }
int ProofNetFrame::atom_node(int occurrence) const {
  return d_->atom_nodes.at(static_cast<std::size_t>(occurrence));
}

bool ProofNetFrame::is_hypothesis_root(int id) const {
  const FrameNode& n = node(id);
  if (n.parent < 0) return false;
  const FrameNode& p = node(n.parent);
  return p.kind == TypeKind::Arrow && p.polarity == Polarity::Negative && p.first == id;
}

namespace {

int add_tree(std::vector<FrameNode>& nodes, std::vector<int>& atom_nodes, const Type& t,
             Polarity p, int parent, int source) {
  int id = static_cast<int>(nodes.size());
  nodes.push_back(FrameNode{t.kind(), p, t, parent, -1, -1, -1, source});
  switch (t.kind()) {
    case TypeKind::Atom:
      nodes[id].atom = static_cast<int>(atom_nodes.size());
      atom_nodes.push_back(id);
      break;
    case TypeKind::Arrow: {
      int a = add_tree(nodes, atom_nodes, t.argument(), !p, id, source);
      int b = add_tree(nodes, atom_nodes, t.result(), p, id, source);
      nodes[id].first = a;
      nodes[id].second = b;
      break;
    }
    default: {
      int b = add_tree(nodes, atom_nodes, t.body(), p, id, source);
      nodes[id].first = b;
      break;
    }
  }
  return id;
}

}  // namespace

ProofNetFrame build_frame(const Sentence& s, const FrameConfig& config) {
  auto d = std::make_shared<ProofNetFrame::Data>(ProofNetFrame::Data{s, config, {}, {}, {}, -1, {}});
  int next = 0;
  for (std::size_t i = 0; i < s.phrases.size(); ++i) {
    const LexicalPhrase& ph = s.phrases[i];
    if (config.is_exempt(ph)) {
      d->phrase_roots.push_back(-1);
      continue;
    }
    auto occ = polarize(ph.type, Polarity::Positive, next, static_cast<int>(i));
    next += static_cast<int>(occ.size());
    d->atoms.insert(d->atoms.end(), occ.begin(), occ.end());
    d->phrase_roots.push_back(add_tree(d->nodes, d->atom_nodes, ph.type, Polarity::Positive, -1,
                                       static_cast<int>(i)));
  }
  auto goal = polarize(s.goal, Polarity::Negative, next, kGoalSource);
  d->atoms.insert(d->atoms.end(), goal.begin(), goal.end());
  d->goal_root = add_tree(d->nodes, d->atom_nodes, s.goal, Polarity::Negative, -1, kGoalSource);
  return ProofNetFrame(std::move(d));
}

std::optional<Type> infer_goal(const std::vector<LexicalPhrase>& phrases,
                               const FrameConfig& config) {
  std::map<std::string, int> surplus;
  for (const auto& ph : phrases) {
    if (config.is_exempt(ph)) continue;
    for (const auto& a : polarize(ph.type, Polarity::Positive, 0))
      surplus[a.atom] += a.polarity == Polarity::Positive ? 1 : -1;
  }
  std::optional<std::string> goal;
  for (const auto& [atom, n] : surplus) {
    if (n == 0) continue;
    if (n != 1 || goal) return std::nullopt;
    goal = atom;
  }
  if (!goal) return std::nullopt;
  return Type::atom(*goal);
}

std::string ImbalanceReport::describe() const {
  std::string out = "unbalanced atoms";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out += i ? ", " : " ";
    out += entries[i].atom + " (" + std::to_string(entries[i].positives) + "+/" +
           std::to_string(entries[i].negatives) + "-)";
  }
  return out;
}

std::optional<ImbalanceReport> invariance_check(const ProofNetFrame& f) {
  std::map<std::string, std::pair<int, int>> counts;
  for (const auto& a : f.atoms()) {
    auto& c = counts[a.atom];
    (a.polarity == Polarity::Positive ? c.first : c.second)++;
  }
  ImbalanceReport report;
  for (const auto& [atom, c] : counts)
    if (c.first != c.second) report.entries.push_back({atom, c.first, c.second});
  if (report.entries.empty()) return std::nullopt;
  return report;
}

std::vector<Bin> bins(const ProofNetFrame& f) {
  std::map<std::string, Bin> by_atom;
  for (const auto& a : f.atoms()) {
    Bin& b = by_atom[a.atom];
    b.atom = a.atom;
    (a.polarity == Polarity::Positive ? b.positives : b.negatives).push_back(a.index);
  }
  std::vector<Bin> out;
  for (auto& [_, b] : by_atom) out.push_back(std::move(b));
  return out;
}

// ---------------------------------------------------------------------------
// Nets

ProofNet::ProofNet(ProofNetFrame frame, std::vector<Link> links)
    : frame_(std::move(frame)), links_(std::move(links)) {
  std::sort(links_.begin(), links_.end());
  partner_.assign(frame_.atoms().size(), -1);
  for (const auto& l : links_) {
    partner_.at(static_cast<std::size_t>(l.positive)) = l.negative;
    partner_.at(static_cast<std::size_t>(l.negative)) = l.positive;
  }
}

int ProofNet::partner_of_negative(int occurrence) const {
  return partner_.at(static_cast<std::size_t>(occurrence));
}
int ProofNet::partner_of_positive(int occurrence) const {
  return partner_.at(static_cast<std::size_t>(occurrence));
}

ProofNet apply_matching(const ProofNetFrame& f, const Matching& m) {
  std::vector<Link> links;
  auto all = bins(f);
  for (const auto& b : all) {
    if (b.positives.size() != b.negatives.size())
      throw BijectionError("bin " + b.atom + " is unbalanced");
    auto it = m.per_atom.find(b.atom);
    if (it == m.per_atom.end()) throw BijectionError("no assignment for bin " + b.atom);
    const Assignment& a = it->second;
    if (a.size() != b.size())
      throw BijectionError("assignment for bin " + b.atom + " has size " +
                           std::to_string(a.size()) + ", expected " + std::to_string(b.size()));
    std::vector<bool> seen(b.size(), false);
    for (std::size_t k = 0; k < a.size(); ++k) {
      auto col = static_cast<std::size_t>(a[k]);
      if (a[k] < 0 || col >= b.size() || seen[col])
        throw BijectionError("assignment for bin " + b.atom + " is not a permutation");
      seen[col] = true;
      links.push_back({b.positives[k], b.negatives[col]});
    }
  }
  for (const auto& [atom, _] : m.per_atom)
    if (std::none_of(all.begin(), all.end(), [&](const Bin& b) { return b.atom == atom; }))
      throw BijectionError("assignment for unknown atom " + atom);
  return ProofNet(f, std::move(links));
}

ProofNet net_from_links(const ProofNetFrame& f, std::vector<Link> links) {
  const auto& atoms = f.atoms();
  std::vector<bool> used(atoms.size(), false);
  auto valid = [&](int i) { return i >= 0 && static_cast<std::size_t>(i) < atoms.size(); };
  for (const auto& l : links) {
    if (!valid(l.positive) || !valid(l.negative))
      throw BijectionError("link index out of range");
    const auto& p = atoms[static_cast<std::size_t>(l.positive)];
    const auto& n = atoms[static_cast<std::size_t>(l.negative)];
    if (p.polarity != Polarity::Positive || n.polarity != Polarity::Negative)
      throw BijectionError("link " + std::to_string(l.positive) + "->" +
                           std::to_string(l.negative) + " does not go from positive to negative");
    if (p.atom != n.atom)
      throw BijectionError("link " + std::to_string(l.positive) + "->" +
                           std::to_string(l.negative) + " joins " + p.atom + " and " + n.atom);
    if (used[static_cast<std::size_t>(l.positive)] || used[static_cast<std::size_t>(l.negative)])
      throw BijectionError("occurrence linked twice");
    used[static_cast<std::size_t>(l.positive)] = used[static_cast<std::size_t>(l.negative)] = true;
  }
  if (std::find(used.begin(), used.end(), false) != used.end())
    throw BijectionError("links do not cover every occurrence");
  return ProofNet(f, std::move(links));
}

Matching matching_of(const ProofNet& net) {
  Matching m;
  for (const auto& b : bins(net.frame())) {
    Assignment a;
    for (int pos : b.positives) {
      int neg = net.partner_of_positive(pos);
      auto it = std::find(b.negatives.begin(), b.negatives.end(), neg);
      a.push_back(static_cast<int>(it - b.negatives.begin()));
    }
    m.per_atom[b.atom] = std::move(a);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Traversal

namespace {

// Typed term under construction. Unwrap marks a positive diamond climbed
// through; it must be absorbed by a matching negative diamond.
struct Draft {
  enum Kind { Lex, Hyp, App, Lam, Dia, BoxE, Unwrap } kind;
  int index = -1;  // phrase index or hypothesis id
  Type type;       // Lex/Hyp/Lam: the constant's, hypothesis', or bound variable's type
  std::string label;
  std::vector<std::shared_ptr<const Draft>> kids;
};
using DraftPtr = std::shared_ptr<const Draft>;

DraftPtr draft(Draft::Kind k, int index, Type type, std::string label,
               std::vector<DraftPtr> kids) {
  return std::make_shared<const Draft>(
      Draft{k, index, std::move(type), std::move(label), std::move(kids)});
}

bool mentions_hyp(const Draft& d, int id) {
  if (d.kind == Draft::Hyp) return d.index == id;
  return std::any_of(d.kids.begin(), d.kids.end(),
                     [&](const DraftPtr& k) { return mentions_hyp(*k, id); });
}

Proof to_proof(const Draft& d) {
  switch (d.kind) {
    case Draft::Lex:
      return Proof::lex(d.index, d.type);
    case Draft::Hyp:
      return Proof::id(Var{d.index, d.type});
    case Draft::App:
      return Proof::arrow_elim(to_proof(*d.kids[0]), to_proof(*d.kids[1]));
    case Draft::Lam:
      return Proof::arrow_intro(Var{d.index, d.type}, to_proof(*d.kids[0]));
    case Draft::Dia:
      return Proof::dia_intro(d.label, to_proof(*d.kids[0]));
    case Draft::BoxE:
      return Proof::box_elim(d.label, to_proof(*d.kids[0]));
    case Draft::Unwrap:
      throw UnsupportedNetError("diamond " + d.label +
                                " must be eliminated, which the rule set does not allow");
  }
  throw Error("unreachable");
}

class Traversal {
 public:
  explicit Traversal(const ProofNet& net)
      : net_(net),
        frame_(net.frame()),
        consumed_(frame_.atoms().size(), false),
        lex_state_(frame_.sentence().phrases.size(), State::Unseen),
        hyp_state_(frame_.nodes().size(), State::Unseen),
        hyp_id_(frame_.nodes().size(), -1) {}

  Proof run() {
    DraftPtr root = resolve(frame_.goal_root());
    require_connected();
    Proof p = canonicalize_variables(to_proof(*root));
    check(p);
    return p;
  }

 private:
  enum class State { Unseen, Active, Done };

  static std::string phrase_name(int i) { return "c" + std::to_string(i); }

  DraftPtr resolve(int id) {
    const FrameNode& n = frame_.node(id);
    switch (n.kind) {
      case TypeKind::Atom: {
        auto neg = static_cast<std::size_t>(n.atom);
        if (consumed_[neg]) throw CycleError("negative occurrence " + std::to_string(n.atom) +
                                             " visited twice");
        consumed_[neg] = true;
        int pos = net_.partner_of_negative(n.atom);
        if (pos < 0) throw DisconnectedError("occurrence " + std::to_string(n.atom) + " is unlinked");
        auto p = static_cast<std::size_t>(pos);
        if (consumed_[p]) throw CycleError("positive occurrence " + std::to_string(pos) +
                                           " visited twice");
        consumed_[p] = true;
        return climb(frame_.atom_node(pos));
      }
      case TypeKind::Arrow: {
        int hyp_root = n.first;
        int hid = next_hyp_++;
        hyp_id_[static_cast<std::size_t>(hyp_root)] = hid;
        hyp_state_[static_cast<std::size_t>(hyp_root)] = State::Active;
        DraftPtr body = resolve(n.second);
        bool used = hyp_used_.count(hyp_root) > 0;
        hyp_state_[static_cast<std::size_t>(hyp_root)] = State::Done;
        if (!used)
          throw DisconnectedError("hypothesis of type " + print_type(n.type.argument()) +
                                  " is never used");
        // η-short form: λx.(f x) is f.
        if (body->kind == Draft::App && body->kids[1]->kind == Draft::Hyp &&
            body->kids[1]->index == hid && !mentions_hyp(*body->kids[0], hid))
          return body->kids[0];
        return draft(Draft::Lam, hid, n.type.argument(), {}, {body});
      }
      case TypeKind::Diamond: {
        DraftPtr body = resolve(n.first);
        if (body->kind == Draft::Unwrap && body->label == n.type.label()) return body->kids[0];
        return draft(Draft::Dia, -1, n.type, n.type.label(), {body});
      }
      case TypeKind::Box: {
        DraftPtr body = resolve(n.first);
        if (body->kind == Draft::BoxE && body->label == n.type.label()) return body->kids[0];
        throw UnsupportedNetError("box " + n.type.label() +
                                  " in negative position needs box introduction");
      }
    }
    throw Error("unreachable");
  }

  // From a positive atom up to the root of its positive tree, then back down
  // emitting eliminations.
  DraftPtr climb(int atom_node) {
    std::vector<int> chain{atom_node};
    int top = atom_node;
    while (frame_.node(top).parent >= 0 &&
           frame_.node(frame_.node(top).parent).polarity == Polarity::Positive) {
      top = frame_.node(top).parent;
      chain.push_back(top);
    }
    std::reverse(chain.begin(), chain.end());

    DraftPtr term;
    int phrase = -1;
    const FrameNode& root = frame_.node(top);
    if (root.parent < 0) {
      phrase = root.source;
      auto& st = lex_state_[static_cast<std::size_t>(phrase)];
      if (st != State::Unseen)
        throw CycleError("phrase " + phrase_name(phrase) + " is reached twice");
      st = State::Active;
      term = draft(Draft::Lex, phrase, root.type, {}, {});
    } else {
      auto& st = hyp_state_[static_cast<std::size_t>(top)];
      if (st != State::Active)
        throw DisconnectedError("hypothesis of type " + print_type(root.type) +
                                " is used outside the scope of its abstraction");
      if (!hyp_used_.insert(top).second)
        throw CycleError("hypothesis of type " + print_type(root.type) + " is reached twice");
      term = draft(Draft::Hyp, hyp_id_[static_cast<std::size_t>(top)], root.type, {}, {});
    }

    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      const FrameNode& q = frame_.node(chain[i]);
      switch (q.kind) {
        case TypeKind::Arrow:
          term = draft(Draft::App, -1, q.type.result(), {}, {term, resolve(q.first)});
          break;
        case TypeKind::Box:
          term = draft(Draft::BoxE, -1, q.type.body(), q.type.label(), {term});
          break;
        case TypeKind::Diamond:
          term = draft(Draft::Unwrap, -1, q.type.body(), q.type.label(), {term});
          break;
        case TypeKind::Atom:
          break;
      }
    }
    if (phrase >= 0) lex_state_[static_cast<std::size_t>(phrase)] = State::Done;
    return term;
  }

  // Unreached phrases either feed each other in a cycle or hang off the
  // traversal as a separate component.
  void require_connected() {
    std::vector<int> missing;
    const auto& roots = frame_.phrase_roots();
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (roots[i] >= 0 && lex_state_[i] == State::Unseen) missing.push_back(static_cast<int>(i));
    for (int phrase : missing) {
      if (lex_state_[static_cast<std::size_t>(phrase)] != State::Unseen) continue;
      int spine = roots[static_cast<std::size_t>(phrase)];
      while (frame_.node(spine).kind != TypeKind::Atom) {
        const FrameNode& n = frame_.node(spine);
        spine = n.kind == TypeKind::Arrow ? n.second : n.first;
      }
      try {
        climb(spine);
      } catch (const CycleError&) {
        throw;
      } catch (const Error&) {
        // not a cycle; reported as disconnected below
      }
    }
    if (!missing.empty()) {
      std::string names;
      for (int i : missing) names += (names.empty() ? "" : ", ") + phrase_name(i);
      throw DisconnectedError("phrases not connected to the goal: " + names);
    }
    for (std::size_t i = 0; i < consumed_.size(); ++i)
      if (!consumed_[i])
        throw DisconnectedError("occurrence " + std::to_string(i) + " is not reached");
  }

  const ProofNet& net_;
  const ProofNetFrame& frame_;
  std::vector<bool> consumed_;
  std::vector<State> lex_state_;
  std::vector<State> hyp_state_;
  std::vector<int> hyp_id_;
  std::set<int> hyp_used_;
  int next_hyp_ = 0;
};

}  // namespace

Proof traverse_to_proof(const ProofNet& net) { return Traversal(net).run(); }

// ---------------------------------------------------------------------------
// Proof -> net

namespace {

class NetBuilder {
 public:
  explicit NetBuilder(const ProofNetFrame& f)
      : frame_(f), partner_(f.atoms().size(), -1), lex_used_(f.phrase_roots().size(), false) {}

  ProofNet run(const Proof& p) {
    fill(frame_.goal_root(), p);
    std::vector<Link> links;
    for (std::size_t i = 0; i < partner_.size(); ++i) {
      if (partner_[i] < 0) throw Error("proof leaves occurrence " + std::to_string(i) + " unlinked");
      if (frame_.atoms()[i].polarity == Polarity::Positive)
        links.push_back({static_cast<int>(i), partner_[i]});
    }
    for (std::size_t i = 0; i < lex_used_.size(); ++i)
      if (frame_.phrase_roots()[i] >= 0 && !lex_used_[i])
        throw Error("proof does not use phrase c" + std::to_string(i));
    return ProofNet(frame_, std::move(links));
  }

 private:
  // Fill negative node `neg` with the proof `p` of the same type.
  void fill(int neg, const Proof& p) {
    const FrameNode& n = frame_.node(neg);
    if (!(n.type == p.type()))
      throw Error("proof of " + print_type(p.type()) + " cannot fill " + print_type(n.type));
    if (p.rule() == Rule::ArrowI) {
      hyps_[p.payload().var->id] = n.first;
      fill(n.second, p.premises()[0]);
      return;
    }
    if (p.rule() == Rule::DiaI) {
      fill(n.first, p.premises()[0]);
      return;
    }
    mirror(provide(p), neg);
  }

  // The positive node whose value `p` is, linking its arguments on the way.
  int provide(const Proof& p) {
    switch (p.rule()) {
      case Rule::Lex: {
        auto i = static_cast<std::size_t>(p.payload().lex_index);
        if (i >= lex_used_.size() || frame_.phrase_roots()[i] < 0)
          throw Error("proof uses unknown phrase c" + std::to_string(i));
        if (lex_used_[i]) throw Error("proof uses phrase c" + std::to_string(i) + " twice");
        lex_used_[i] = true;
        return frame_.phrase_roots()[i];
      }
      case Rule::Id: {
        auto it = hyps_.find(p.payload().var->id);
        if (it == hyps_.end())
          throw Error("free hypothesis x" + std::to_string(p.payload().var->id));
        return it->second;
      }
      case Rule::ArrowE: {
        int fn = provide(p.premises()[0]);
        const FrameNode& q = frame_.node(fn);
        fill(q.first, p.premises()[1]);
        return q.second;
      }
      case Rule::BoxE:
        return frame_.node(provide(p.premises()[0])).first;
      default:
        throw Error(std::string("introduction rule ") + rule_name(p.rule()) +
                    " in elimination position; the proof is not in normal form");
    }
  }

  void mirror(int pos, int neg) {
    const FrameNode& q = frame_.node(pos);
    const FrameNode& n = frame_.node(neg);
    switch (q.kind) {
      case TypeKind::Atom:
        partner_[static_cast<std::size_t>(q.atom)] = n.atom;
        partner_[static_cast<std::size_t>(n.atom)] = q.atom;
        return;
      case TypeKind::Arrow:
        mirror(n.first, q.first);
        mirror(q.second, n.second);
        return;
      default:
        mirror(q.first, n.first);
        return;
    }
  }

  const ProofNetFrame& frame_;
  std::vector<int> partner_;
  std::vector<bool> lex_used_;
  std::map<int, int> hyps_;
};

void collect_lex(const Proof& p, std::map<int, Type>& out) {
  if (p.rule() == Rule::Lex) out.emplace(p.payload().lex_index, p.type());
  for (const auto& q : p.premises()) collect_lex(q, out);
}

}  // namespace

ProofNet proof_to_net(const Proof& p, const Sentence& s, const FrameConfig& config) {
  check(p);
  if (!(s.goal == p.type()))
    throw Error("proof concludes " + print_type(p.type()) + ", sentence goal is " +
                print_type(s.goal));
  std::map<int, Type> lex;
  collect_lex(p, lex);
  for (const auto& [i, t] : lex) {
    if (i < 0 || static_cast<std::size_t>(i) >= s.phrases.size() ||
        !(s.phrases[static_cast<std::size_t>(i)].type == t))
      throw Error("proof assigns c" + std::to_string(i) + " a type the sentence does not");
  }
  return NetBuilder(build_frame(s, config)).run(p);
}

ProofNet proof_to_net(const Proof& p) {
  std::map<int, Type> lex;
  collect_lex(p, lex);
  Sentence s{{}, p.type()};
  FrameConfig config;
  config.exempt_atoms.clear();
  int max_index = lex.empty() ? -1 : lex.rbegin()->first;
  for (int i = 0; i <= max_index; ++i) {
    auto it = lex.find(i);
    if (it == lex.end()) {
      // Gap in the constant numbering: a placeholder that takes no part.
      config.exempt_atoms.insert("PUNCT");
      s.phrases.push_back({{"_"}, Type::atom("PUNCT")});
    } else {
      s.phrases.push_back({{"c" + std::to_string(i)}, it->second});
    }
  }
  return proof_to_net(p, s, config);
}

// ---------------------------------------------------------------------------
// JSON

std::string write_net_json(const ProofNet& net) {
  nlohmann::json j;
  const Sentence& s = net.frame().sentence();
  j["goal"] = print_type(s.goal);
  auto& links = j["links"] = nlohmann::json::array();
  for (const auto& l : net.links()) links.push_back({l.positive, l.negative});
  auto& phrases = j["phrases"] = nlohmann::json::array();
  for (const auto& ph : s.phrases)
    phrases.push_back({{"type", print_type(ph.type)}, {"words", ph.words}});
  return j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

ProofNet read_net_json(std::string_view text, const FrameConfig& config) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid net JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw FormatError("net JSON must be an object");
    Sentence s{{}, parse_type(j.at("goal").get<std::string>())};
    for (const auto& ph : j.at("phrases")) {
      std::vector<std::string> words;
      const auto& w = ph.at("words");
      if (w.is_string())
        words.push_back(w.get<std::string>());
      else
        words = w.get<std::vector<std::string>>();
      if (words.empty()) throw FormatError("phrase without words");
      s.phrases.push_back({std::move(words), parse_type(ph.at("type").get<std::string>())});
    }
    std::vector<Link> links;
    for (const auto& l : j.at("links")) {
      if (!l.is_array() || l.size() != 2) throw FormatError("links must be [pos, neg] pairs");
      links.push_back({l[0].get<int>(), l[1].get<int>()});
    }
    return net_from_links(build_frame(s, config), std::move(links));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed net JSON: ") + e.what());
  }
}

}  // namespace tlg
