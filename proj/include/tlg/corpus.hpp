#pragma once

// Corpus samples, the per-sentence analysis pipeline, and the record
// formats used by the command-line front end.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tlg/matcher.hpp"
#include "tlg/metrics.hpp"
#include "tlg/proofnet.hpp"

namespace tlg {

using Json = nlohmann::ordered_json;

// {id, phrases: [{words, type}], goal?, scores?, gold_links?, gold_term?}
struct Sample {
  std::string id;
  std::vector<LexicalPhrase> phrases;
  std::optional<Type> goal;
  std::vector<ScoreMatrix> scores;
  std::optional<std::vector<Link>> gold_links;
  std::optional<std::string> gold_term;
};

// Throws FormatError or SyntaxError.
Sample sample_from_json(const Json& j);
std::vector<LexicalPhrase> phrases_from_json(const Json& j);
// {sentence_id?, atom, rows, cols, values: [[...]]}
ScoreMatrix score_from_json(const Json& j);

// One input record: a parsed value, or the reason it could not be parsed.
struct Record {
  std::string origin;  // "line N" or "item N"
  std::optional<Json> value;
  std::string error;
};

// A JSON array or one JSON value per non-blank line. A malformed array is a
// FormatError; a malformed line becomes an error record.
std::vector<Record> read_records(std::string_view text);

enum class Mode { Scores, Exhaustive, GoldLinks, Auto };

struct ParseOptions {
  Mode mode = Mode::Exhaustive;
  double cap = kDefaultCap;
  SinkhornConfig sinkhorn;
  // Ignore given goals and infer them.
  bool goal_infer = false;
  FrameConfig frame;
  int jobs = 1;
};

struct Analysis {
  std::string id;
  std::vector<LexicalPhrase> phrases;
  std::optional<Type> goal;
  std::optional<Proof> proof;
  std::vector<Link> links;
  std::string error_kind;  // empty on success
  std::string error;
  std::optional<ImbalanceReport> imbalance;
  bool malformed = false;  // the input record itself was invalid
  bool internal = false;   // an invariant of the kernel was violated

  bool ok() const { return proof.has_value(); }
};

// Class name of a kernel exception, e.g. "CycleError".
std::string error_kind(const std::exception& e);

Analysis analyze(const Sample& s, const ParseOptions& options);
Analysis analyze_record(const Record& r, const ParseOptions& options);

// Goal as given, or inferred when absent or when options ask for it.
// Throws FormatError when none can be fixed.
Type resolve_goal(const Sample& s, const ParseOptions& options);

// The proof designated by gold_links and/or gold_term; nullopt without
// either. Throws when they are inconsistent or do not denote a proof.
std::optional<Proof> gold_proof(const Sample& s, const ParseOptions& options);

// Printed form of a term written with `\` or λ and arbitrary spacing.
std::string normalize_term_text(std::string_view text);

std::string format_analysis_text(const Analysis& a);
Json analysis_to_json(const Analysis& a);
// Reads back analysis_to_json output. Throws FormatError.
Analysis analysis_from_json(const Json& j);

SampleResult to_sample_result(const Analysis& a, std::optional<Proof> gold,
                              const FrameConfig& config);

}  // namespace tlg
