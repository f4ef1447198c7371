#pragma once

// Proof-net frames built from polarized lexical types, axiom-link matchings,
// and the traversal that verifies a net while translating it into a
// natural-deduction proof.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tlg/proof.hpp"
#include "tlg/type.hpp"

namespace tlg {

struct LexicalPhrase {
  std::vector<std::string> words;
  Type type;

  std::string text() const;  // words joined by spaces
  friend bool operator==(const LexicalPhrase&, const LexicalPhrase&) = default;
};

struct Sentence {
  std::vector<LexicalPhrase> phrases;
  Type goal;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct FrameConfig {
  // Phrases typed exactly by one of these atoms take no part in the proof.
  std::set<std::string> exempt_atoms = {"PUNCT"};

  bool is_exempt(const LexicalPhrase& p) const {
    return p.type.is_atom() && exempt_atoms.count(p.type.name()) > 0;
  }
};

// A node of one polarized type tree. `first`/`second` are the argument and
// result of an implication, `first` is the body of a modality.
struct FrameNode {
  TypeKind kind;
  Polarity polarity;
  Type type;
  int parent = -1;
  int first = -1;
  int second = -1;
  int atom = -1;  // occurrence index for atom nodes
  int source = 0;
};

class ProofNetFrame {
 public:
  const Sentence& sentence() const;
  const FrameConfig& config() const;
  const std::vector<AtomOccurrence>& atoms() const;
  const std::vector<FrameNode>& nodes() const;
  const FrameNode& node(int id) const { return nodes()[static_cast<std::size_t>(id)]; }
  // Root node per phrase, -1 for exempt phrases.
  const std::vector<int>& phrase_roots() const;
  int goal_root() const;
  int atom_node(int occurrence) const;

  // Positive roots owned by a negative implication (hypotheses).
  bool is_hypothesis_root(int node) const;

 private:
  struct Data;
  explicit ProofNetFrame(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
  friend ProofNetFrame build_frame(const Sentence&, const FrameConfig&);
};

// Phrase atoms polarized Positive left to right, then the goal Negative,
// with consecutive indices. Exempt phrases contribute nothing.
ProofNetFrame build_frame(const Sentence& s, const FrameConfig& config = {});

// Goal for sentences that omit it: the single atom left with one surplus
// positive occurrence, all others balanced. nullopt when there is none.
std::optional<Type> infer_goal(const std::vector<LexicalPhrase>& phrases,
                               const FrameConfig& config = {});

struct ImbalanceEntry {
  std::string atom;
  int positives = 0;
  int negatives = 0;
  friend bool operator==(const ImbalanceEntry&, const ImbalanceEntry&) = default;
};

struct ImbalanceReport {
  std::vector<ImbalanceEntry> entries;  // sorted by atom
  std::string describe() const;
};

// nullopt when every atom has as many positive as negative occurrences.
std::optional<ImbalanceReport> invariance_check(const ProofNetFrame& f);

struct Bin {
  std::string atom;
  std::vector<int> positives;  // ascending occurrence indices
  std::vector<int> negatives;
  std::size_t size() const { return positives.size(); }
};

// One bin per atom name, ordered by name.
std::vector<Bin> bins(const ProofNetFrame& f);

// A permutation: position k of a bin's positives links to position
// assignment[k] of its negatives.
using Assignment = std::vector<int>;

struct Matching {
  std::map<std::string, Assignment> per_atom;

  friend bool operator==(const Matching&, const Matching&) = default;
  friend auto operator<=>(const Matching&, const Matching&) = default;
};

struct Link {
  int positive = 0;
  int negative = 0;
  friend bool operator==(const Link&, const Link&) = default;
  friend auto operator<=>(const Link&, const Link&) = default;
};

class ProofNet {
 public:
  ProofNet(ProofNetFrame frame, std::vector<Link> links);

  const ProofNetFrame& frame() const { return frame_; }
  // Sorted by positive index.
  const std::vector<Link>& links() const { return links_; }
  int partner_of_negative(int occurrence) const;
  int partner_of_positive(int occurrence) const;

  friend bool operator==(const ProofNet& a, const ProofNet& b) {
    return a.frame_.sentence() == b.frame_.sentence() && a.links_ == b.links_;
  }

 private:
  ProofNetFrame frame_;
  std::vector<Link> links_;
  std::vector<int> partner_;  // indexed by occurrence
};

// Throws BijectionError unless every bin gets a permutation of its size.
ProofNet apply_matching(const ProofNetFrame& f, const Matching& m);
// Throws BijectionError unless links pair each positive with one negative
// of the same atom.
ProofNet net_from_links(const ProofNetFrame& f, std::vector<Link> links);
Matching matching_of(const ProofNet& net);

// Walks the net from the goal, building and checking the corresponding
// proof. Throws CycleError, DisconnectedError, UnsupportedNetError, or the
// checker's TypeError/LinearityError.
Proof traverse_to_proof(const ProofNet& net);

// Inverse of traverse_to_proof for canonical proofs. The first form
// reconstructs the sentence from the proof's Lex leaves.
ProofNet proof_to_net(const Proof& p);
ProofNet proof_to_net(const Proof& p, const Sentence& s, const FrameConfig& config = {});

// {"goal", "links": [[pos, neg], ...], "phrases": [{"type", "words"}]}
std::string write_net_json(const ProofNet& net);
ProofNet read_net_json(std::string_view text, const FrameConfig& config = {});

}  // namespace tlg
