#pragma once

// Dependency-enhanced linear types: atoms, linear implication, and
// dependency-labeled diamonds/boxes.

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace tlg {

enum class TypeKind { Atom, Arrow, Diamond, Box };

// Immutable, structurally compared type tree. Copies share nodes.
class Type {
 public:
  static Type atom(std::string name);
  static Type arrow(Type argument, Type result);
  static Type diamond(std::string label, Type body);
  static Type box(std::string label, Type body);

  TypeKind kind() const;
  bool is_atom() const { return kind() == TypeKind::Atom; }
  bool is_arrow() const { return kind() == TypeKind::Arrow; }
  bool is_diamond() const { return kind() == TypeKind::Diamond; }
  bool is_box() const { return kind() == TypeKind::Box; }
  bool is_modal() const { return is_diamond() || is_box(); }

  // Atom name; only valid for atoms.
  const std::string& name() const;
  // Dependency label; only valid for diamonds and boxes.
  const std::string& label() const;
  const Type& argument() const;
  const Type& result() const;
  // Body of a diamond or box.
  const Type& body() const;

  std::size_t atom_count() const;
  std::size_t depth() const;

  friend bool operator==(const Type& a, const Type& b);
  friend std::strong_ordering operator<=>(const Type& a, const Type& b);

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Concrete syntaxes. Ascii is canonical (`<su>NP -> SV1`, `[det](N -> NP)`);
// Display mirrors the analysis printouts (`◇su(NP)⟶SV1`, `□det(N⟶NP)`).
enum class TypeSyntax { Ascii, Display };

// Accepts both syntaxes: `<l>`/`◇l` for diamonds, `[l]`/`□l` for boxes and
// `->`, `⟶`, `→`, `⊸` for implication. Throws SyntaxError.
Type parse_type(std::string_view text);
std::string print_type(const Type& t, TypeSyntax syntax = TypeSyntax::Ascii);

bool is_atom_name(std::string_view s);
bool is_label(std::string_view s);

// The single atom all names collapse to under the atom-collapsing relaxation.
inline constexpr std::string_view kCollapsedAtom = "*";

enum class Polarity { Positive, Negative };

constexpr Polarity operator!(Polarity p) {
  return p == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
}
inline const char* polarity_sign(Polarity p) { return p == Polarity::Positive ? "+" : "-"; }

enum class StepKind { ArgOf, ResOf, UnderDia, UnderBox };

struct PathStep {
  StepKind kind;
  std::string label;  // set for UnderDia/UnderBox

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

// Occurrence source for atoms coming from the goal type.
inline constexpr int kGoalSource = -1;

struct AtomOccurrence {
  int index = 0;
  std::string atom;
  Polarity polarity = Polarity::Positive;
  int source = 0;  // phrase index or kGoalSource
  std::vector<PathStep> path;

  friend bool operator==(const AtomOccurrence&, const AtomOccurrence&) = default;
};

// Left-to-right atom occurrences of `t`, indexed from `start_index`.
// Implication flips the polarity of its argument; modalities are transparent.
std::vector<AtomOccurrence> polarize(const Type& t, Polarity p, int start_index,
                                     int source = 0);

// The subtree reached by following `path` from `t`. Throws Error on a path
// that does not fit the tree.
Type follow_path(const Type& t, const std::vector<PathStep>& path);

}  // namespace tlg
