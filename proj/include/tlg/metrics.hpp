#pragma once

// Sentence-level and subproof-decomposition evaluation of parse results.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tlg/proof.hpp"
#include "tlg/proofnet.hpp"

namespace tlg {

struct ParseOK {
  Proof proof;
};
struct InvarianceFail {
  ImbalanceReport report;
};
// No net among the candidates traversed (cycle, disconnection, unsupported).
struct TraversalFail {
  std::string message;
};
// A net traversed but the resulting proof was rejected by the checker.
struct TypeFail {
  std::string message;
};

using Outcome = std::variant<ParseOK, InvarianceFail, TraversalFail, TypeFail>;

struct SampleResult {
  std::string id;
  Outcome outcome;
  // Lexical type per non-exempt phrase index, as supertagged.
  std::map<int, Type> predicted_types;
  std::optional<Proof> gold;
};

// Lex leaf types of a proof by phrase index.
std::map<int, Type> lexical_types(const Proof& p);

struct SentenceStats {
  double parsability = 0;
  double coverage = 0;
  double types_correct = 0;
  double accuracy = 0;
};

// Percentages over all samples. Samples without gold count as incorrect.
SentenceStats sentence_stats(const std::vector<SampleResult>& results);

// render_text of every subproof.
std::set<std::string> decompose(const Proof& p);

enum class Relaxation { None, Modalities, FunctionalTypes, Both };
inline constexpr Relaxation kRelaxations[] = {Relaxation::None, Relaxation::Modalities,
                                              Relaxation::FunctionalTypes, Relaxation::Both};
const char* relaxation_name(Relaxation r);  // none, modalities, functional_types, both

Proof relax(const Proof& p, Relaxation r);

struct PRF {
  double p = 0;
  double r = 0;
  double f1 = 0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

PRF prf(const Proof& pred, const Proof& gold, Relaxation r = Relaxation::None);

struct EvalReport {
  std::size_t samples = 0;
  std::size_t covered = 0;
  SentenceStats sentence;
  // Percentages averaged over covered samples that have gold.
  std::map<Relaxation, PRF> local;
};

EvalReport corpus_eval(const std::vector<SampleResult>& results);

// Two blocks laid out like the sentence-level and decomposition tables.
std::string format_report_text(const EvalReport& r);
std::string format_report_json(const EvalReport& r);

}  // namespace tlg
