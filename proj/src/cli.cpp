#include "tlg/cli.hpp"

#include <future>
#include <map>
#include <ostream>

#include "tlg/errors.hpp"
#include "tlg/render.hpp"

namespace tlg {

namespace {

std::vector<Analysis> analyze_all(const std::vector<Record>& records, const ParseOptions& options) {
  std::vector<Analysis> out(records.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = analyze_record(records[i], options);
  };
  const std::size_t jobs = static_cast<std::size_t>(std::max(1, options.jobs));
  if (jobs == 1 || records.size() < 2) {
    work(0, records.size());
    return out;
  }
  std::vector<std::future<void>> running;
  const std::size_t chunk = (records.size() + jobs - 1) / jobs;
  for (std::size_t b = 0; b < records.size(); b += chunk)
    running.push_back(std::async(std::launch::async, work, b, std::min(records.size(), b + chunk)));
  for (auto& f : running) f.get();
  return out;
}

void merge_scores(std::vector<Record>& records, std::string_view score_file) {
  std::map<std::string, std::vector<Json>> by_id;
  for (auto& r : read_records(score_file)) {
    if (!r.value) throw FormatError("score file " + r.origin + ": " + r.error);
    if (!r.value->is_object() || !r.value->contains("sentence_id") ||
        !r.value->at("sentence_id").is_string())
      throw FormatError("score file " + r.origin + ": missing sentence_id");
    by_id[r.value->at("sentence_id").get<std::string>()].push_back(*r.value);
  }
  for (auto& r : records) {
    if (!r.value || !r.value->is_object() || !r.value->contains("id") ||
        !r.value->at("id").is_string())
      continue;
    auto it = by_id.find(r.value->at("id").get<std::string>());
    if (it == by_id.end()) continue;
    Json& scores = (*r.value)["scores"];
    if (scores.is_null()) scores = Json::array();
    for (const auto& m : it->second) scores.push_back(m);
  }
}

std::vector<std::string> phrase_texts(const std::vector<LexicalPhrase>& phrases) {
  std::vector<std::string> out;
  for (const auto& ph : phrases) out.push_back(ph.text());
  return out;
}

Sentence sentence_from_json(std::string_view text, const FrameConfig& config) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid sentence JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("phrases")) throw FormatError("sentence JSON needs 'phrases'");
  auto phrases = phrases_from_json(j.at("phrases"));
  std::optional<Type> goal;
  if (j.contains("goal") && j.at("goal").is_string())
    goal = parse_type(j.at("goal").get<std::string>());
  else
    goal = infer_goal(phrases, config);
  if (!goal) throw FormatError("sentence has no goal and none can be inferred");
  return Sentence{std::move(phrases), *goal};
}

int report(const std::exception& e, std::ostream& err) {
  std::string kind = error_kind(e);
  err << kind << ": " << e.what() << "\n";
  return kind == "InternalError" ? kExitInternal : kExitFormat;
}

}  // namespace

int cmd_parse(std::string_view corpus, const ParseOptions& options, OutputFormat format,
              std::ostream& out, std::ostream& err, std::string_view score_file) {
  std::vector<Record> records;
  try {
    records = read_records(corpus);
    if (!score_file.empty()) merge_scores(records, score_file);
  } catch (const std::exception& e) {
    return report(e, err);
  }
  int status = kExitOk;
  for (const Analysis& a : analyze_all(records, options)) {
    if (a.internal) status = kExitInternal;
    if (a.malformed && status == kExitOk) status = kExitFormat;
    if (a.malformed) err << a.id << ": " << a.error_kind << ": " << a.error << "\n";
    switch (format) {
      case OutputFormat::Text:
        out << format_analysis_text(a);
        break;
      case OutputFormat::Json:
        out << analysis_to_json(a).dump(-1, ' ', false, Json::error_handler_t::replace) << "\n";
        break;
      case OutputFormat::Latex:
        out << "% " << a.id << "\n";
        if (a.proof) {
          auto words = phrase_texts(a.phrases);
          out << render_latex(*a.proof, words);
        } else {
          out << "% " << a.error_kind << ": " << a.error << "\n";
        }
        break;
    }
  }
  return status;
}

int cmd_check(std::string_view proof_file, std::ostream& out, std::ostream& err) {
  try {
    Judgement j = check(read_proof(proof_file));
    out << "ok: " << print_judgement(j) << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    return report(e, err);
  }
}

int cmd_convert(std::string_view input, std::optional<std::string_view> sentence,
                const FrameConfig& config, std::ostream& out, std::ostream& err) {
  try {
    std::size_t first = input.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) throw FormatError("empty input");
    if (input[first] == '{') {
      out << write_proof(traverse_to_proof(read_net_json(input, config)));
      return kExitOk;
    }
    Proof p = read_proof(input);
    check(p);
    ProofNet net = sentence ? proof_to_net(p, sentence_from_json(*sentence, config), config)
                            : proof_to_net(p);
    out << write_net_json(net);
    return kExitOk;
  } catch (const std::exception& e) {
    return report(e, err);
  }
}

int cmd_eval(std::string_view predictions, std::string_view gold, const ParseOptions& options,
             OutputFormat format, std::ostream& out, std::ostream& err) {
  std::vector<Record> pred_records, gold_records;
  try {
    pred_records = read_records(predictions);
    gold_records = read_records(gold);
  } catch (const std::exception& e) {
    return report(e, err);
  }
  int status = kExitOk;

  std::map<std::string, Analysis> predicted;
  std::vector<Record> to_parse;
  for (const auto& r : pred_records) {
    if (r.value && r.value->is_object() && r.value->contains("outcome")) {
      try {
        Analysis a = analysis_from_json(*r.value);
        predicted.emplace(a.id, std::move(a));
      } catch (const std::exception& e) {
        err << r.origin << ": " << error_kind(e) << ": " << e.what() << "\n";
        status = kExitFormat;
      }
    } else {
      to_parse.push_back(r);
    }
  }
  for (auto& a : analyze_all(to_parse, options)) {
    if (a.malformed) {
      err << a.id << ": " << a.error_kind << ": " << a.error << "\n";
      status = kExitFormat;
    }
    if (a.internal) status = kExitInternal;
    predicted.emplace(a.id, std::move(a));
  }

  std::vector<SampleResult> results;
  for (const auto& r : gold_records) {
    Sample s;
    std::optional<Proof> g;
    try {
      if (!r.value) throw FormatError(r.error);
      s = sample_from_json(*r.value);
      g = gold_proof(s, options);
      if (!g) throw FormatError("sample " + s.id + " has no gold analysis");
    } catch (const std::exception& e) {
      err << "gold " << r.origin << ": " << error_kind(e) << ": " << e.what() << "\n";
      status = kExitFormat;
      continue;
    }
    auto it = predicted.find(s.id);
    if (it == predicted.end()) {
      err << "no prediction for " << s.id << "\n";
      Analysis missing;
      missing.id = s.id;
      missing.error_kind = "Missing";
      missing.error = "no prediction";
      results.push_back(to_sample_result(missing, g, options.frame));
      continue;
    }
    results.push_back(to_sample_result(it->second, g, options.frame));
    predicted.erase(it);
  }
  for (const auto& [id, _] : predicted) err << "prediction " << id << " has no gold sample\n";

  EvalReport rep = corpus_eval(results);
  out << (format == OutputFormat::Json ? format_report_json(rep) : format_report_text(rep));
  return status;
}

int cmd_render(std::string_view proof_file, OutputFormat format,
               std::optional<std::string_view> sentence, std::ostream& out, std::ostream& err) {
  try {
    Proof p = read_proof(proof_file);
    check(p);
    if (format == OutputFormat::Latex) {
      std::vector<std::string> words;
      if (sentence) words = phrase_texts(sentence_from_json(*sentence, FrameConfig{}).phrases);
      out << render_latex(p, words);
    } else {
      out << render_text(p) << "\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return report(e, err);
  }
}

}  // namespace tlg
