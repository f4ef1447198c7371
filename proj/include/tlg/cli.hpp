#pragma once

// Commands behind the tlgparse binary. Each reads its inputs from strings,
// writes results to `out` and diagnostics to `err`, and returns the exit
// status: 0 success, 1 I/O or format error, 2 internal invariant violation.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "tlg/corpus.hpp"

namespace tlg {

enum class OutputFormat { Text, Json, Latex };

inline constexpr int kExitOk = 0;
inline constexpr int kExitFormat = 1;
inline constexpr int kExitInternal = 2;

// Analyses in input order. `score_file` holds extra score matrices keyed by
// sentence_id, merged into the samples.
int cmd_parse(std::string_view corpus, const ParseOptions& options, OutputFormat format,
              std::ostream& out, std::ostream& err, std::string_view score_file = {});

// Exit 1 when the proof does not check.
int cmd_check(std::string_view proof_file, std::ostream& out, std::ostream& err);

// Net JSON to proof file, or proof file to net JSON. `sentence` (net or
// corpus-sample JSON) supplies phrases and goal for the proof direction.
int cmd_convert(std::string_view input, std::optional<std::string_view> sentence,
                const FrameConfig& config, std::ostream& out, std::ostream& err);

// Predictions are analysis records (with "outcome") or corpus samples,
// which are parsed with `options` first. Gold comes from gold_links or
// gold_term. Text or JSON report.
int cmd_eval(std::string_view predictions, std::string_view gold, const ParseOptions& options,
             OutputFormat format, std::ostream& out, std::ostream& err);

// `sentence` optionally names the words for LaTeX leaves.
int cmd_render(std::string_view proof_file, OutputFormat format,
               std::optional<std::string_view> sentence, std::ostream& out, std::ostream& err);

}  // namespace tlg
