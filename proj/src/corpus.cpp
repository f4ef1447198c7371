#include "tlg/corpus.hpp"

#include <sstream>

#include "tlg/errors.hpp"
#include "tlg/render.hpp"

namespace tlg {

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError(std::string("field '") + key + "' has the wrong type");
  }
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::vector<int> int_list(const Json& j, const char* key) {
  return field<std::vector<int>>(j, key);
}

}  // namespace

std::vector<LexicalPhrase> phrases_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("'phrases' must be an array");
  std::vector<LexicalPhrase> out;
  for (const auto& ph : j) {
    if (!ph.is_object()) throw FormatError("a phrase must be an object");
    std::vector<std::string> words;
    if (!ph.contains("words")) throw FormatError("missing field 'words'");
    const auto& w = ph.at("words");
    if (w.is_string())
      words = split_words(w.get<std::string>());
    else
      words = field<std::vector<std::string>>(ph, "words");
    if (words.empty()) throw FormatError("a phrase needs at least one word");
    out.push_back({std::move(words), parse_type(field<std::string>(ph, "type"))});
  }
  return out;
}

ScoreMatrix score_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("a score matrix must be an object");
  ScoreMatrix s{field<std::string>(j, "atom"), int_list(j, "rows"), int_list(j, "cols"), {}};
  auto values = field<std::vector<std::vector<double>>>(j, "values");
  const auto n = static_cast<Eigen::Index>(values.size());
  if (s.rows.size() != values.size() || s.cols.size() != values.size())
    throw FormatError("scores for " + s.atom + " must be square over rows x cols");
  s.values.resize(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (values[static_cast<std::size_t>(r)].size() != values.size())
      throw FormatError("scores for " + s.atom + " must be square");
    for (Eigen::Index c = 0; c < n; ++c) {
      double x = values[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (!std::isfinite(x)) throw FormatError("scores must be finite");
      s.values(r, c) = x;
    }
  }
  return s;
}

Sample sample_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("a sample must be an object");
  Sample s;
  s.id = j.contains("id") && j.at("id").is_number_integer() ? std::to_string(j.at("id").get<long>())
                                                            : field<std::string>(j, "id");
  if (!j.contains("phrases")) throw FormatError("missing field 'phrases'");
  s.phrases = phrases_from_json(j.at("phrases"));
  if (j.contains("goal") && !j.at("goal").is_null()) s.goal = parse_type(field<std::string>(j, "goal"));
  if (j.contains("scores")) {
    if (!j.at("scores").is_array()) throw FormatError("'scores' must be an array");
    for (const auto& m : j.at("scores")) s.scores.push_back(score_from_json(m));
  }
  if (j.contains("gold_links")) {
    auto pairs = field<std::vector<std::vector<int>>>(j, "gold_links");
    std::vector<Link> links;
    for (const auto& p : pairs) {
      if (p.size() != 2) throw FormatError("gold_links must be [pos, neg] pairs");
      links.push_back({p[0], p[1]});
    }
    s.gold_links = std::move(links);
  }
  if (j.contains("gold_term")) s.gold_term = field<std::string>(j, "gold_term");
  return s;
}

std::vector<Record> read_records(std::string_view text) {
  std::vector<Record> out;
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return out;
  if (text[first] == '[') {
    Json all;
    try {
      all = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("invalid corpus array: ") + e.what());
    }
    std::size_t k = 0;
    for (auto& item : all) out.push_back({"item " + std::to_string(k++), std::move(item), {}});
    return out;
  }
  std::size_t line_no = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      Record r{"line " + std::to_string(line_no), std::nullopt, {}};
      try {
        r.value = Json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        r.error = std::string("invalid JSON: ") + e.what();
      }
      out.push_back(std::move(r));
    }
    start = end + 1;
  }
  return out;
}

std::string error_kind(const std::exception& e) {
  // Most derived first.
  if (dynamic_cast<const CycleError*>(&e)) return "CycleError";
  if (dynamic_cast<const DisconnectedError*>(&e)) return "DisconnectedError";
  if (dynamic_cast<const UnsupportedNetError*>(&e)) return "UnsupportedNetError";
  if (dynamic_cast<const NetError*>(&e)) return "NetError";
  if (dynamic_cast<const TypeError*>(&e)) return "TypeError";
  if (dynamic_cast<const LinearityError*>(&e)) return "LinearityError";
  if (dynamic_cast<const HeadlessStructure*>(&e)) return "HeadlessStructure";
  if (dynamic_cast<const BijectionError*>(&e)) return "BijectionError";
  if (dynamic_cast<const CapExceeded*>(&e)) return "CapExceeded";
  if (dynamic_cast<const MissingScores*>(&e)) return "MissingScores";
  if (dynamic_cast<const SizeError*>(&e)) return "SizeError";
  if (dynamic_cast<const SyntaxError*>(&e)) return "SyntaxError";
  if (dynamic_cast<const FormatError*>(&e)) return "FormatError";
  if (dynamic_cast<const Error*>(&e)) return "Error";
  return "InternalError";
}

Type resolve_goal(const Sample& s, const ParseOptions& options) {
  if (s.goal && !options.goal_infer) return *s.goal;
  auto g = infer_goal(s.phrases, options.frame);
  if (!g) throw FormatError("no goal given and none can be inferred");
  return *g;
}

std::string normalize_term_text(std::string_view text) {
  VarTypes any = [](int) -> std::optional<Type> { return Type::atom("_"); };
  return print_term(parse_term(text, any));
}

namespace {

Proof select_by_term(const ProofNetFrame& f, const std::string& gold_term, double cap,
                     std::vector<Link>* links) {
  const std::string want = normalize_term_text(gold_term);
  for (auto& r : exhaustive_parse(f, cap)) {
    if (print_term(r.proof.term()) != want) continue;
    if (links) *links = apply_matching(f, r.matching).links();
    return r.proof;
  }
  throw FormatError("gold_term is not among the proofs of the sentence");
}

Proof proof_from_links(const ProofNetFrame& f, const Sample& s, std::vector<Link>* links) {
  ProofNet net = net_from_links(f, *s.gold_links);
  Proof p = traverse_to_proof(net);
  if (s.gold_term && print_term(p.term()) != normalize_term_text(*s.gold_term))
    throw FormatError("gold_term disagrees with gold_links");
  if (links) *links = net.links();
  return p;
}

std::vector<ScoreMatrix> scores_for(const ProofNetFrame& f, const Sample& s) {
  std::vector<ScoreMatrix> out = s.scores;
  for (const auto& b : bins(f)) {
    if (b.size() < 2) continue;
    bool given = std::any_of(out.begin(), out.end(),
                             [&](const ScoreMatrix& m) { return m.atom == b.atom; });
    if (!given) {
      auto n = static_cast<Eigen::Index>(b.size());
      out.push_back({b.atom, b.positives, b.negatives, Matrix::Zero(n, n)});
    }
  }
  return out;
}

}  // namespace

std::optional<Proof> gold_proof(const Sample& s, const ParseOptions& options) {
  if (!s.gold_links && !s.gold_term) return std::nullopt;
  Type goal = resolve_goal(s, options);
  ProofNetFrame f = build_frame(Sentence{s.phrases, goal}, options.frame);
  if (s.gold_links) return proof_from_links(f, s, nullptr);
  return select_by_term(f, *s.gold_term, options.cap, nullptr);
}

Analysis analyze(const Sample& s, const ParseOptions& options) {
  Analysis a;
  a.id = s.id;
  a.phrases = s.phrases;
  try {
    a.goal = resolve_goal(s, options);
    ProofNetFrame f = build_frame(Sentence{s.phrases, *a.goal}, options.frame);
    if (auto report = invariance_check(f)) {
      a.error_kind = "InvarianceFail";
      a.error = report->describe();
      a.imbalance = std::move(report);
      return a;
    }
    Mode mode = options.mode;
    if (mode == Mode::Auto) mode = s.scores.empty() ? Mode::Exhaustive : Mode::Scores;
    switch (mode) {
      case Mode::Exhaustive: {
        auto found = exhaustive_parse(f, options.cap);
        if (found.empty()) {
          a.error_kind = "NoProof";
          a.error = "none of the " + std::to_string(static_cast<long long>(search_space(f))) +
                    " candidate matchings yields a proof";
          return a;
        }
        a.links = apply_matching(f, found.front().matching).links();
        a.proof = found.front().proof;
        break;
      }
      case Mode::Scores: {
        ProofNet net = apply_matching(f, solve_bins(f, scores_for(f, s), options.sinkhorn));
        a.proof = traverse_to_proof(net);
        a.links = net.links();
        break;
      }
      case Mode::GoldLinks:
        if (s.gold_links)
          a.proof = proof_from_links(f, s, &a.links);
        else if (s.gold_term)
          a.proof = select_by_term(f, *s.gold_term, options.cap, &a.links);
        else
          throw FormatError("sample has neither gold_links nor gold_term");
        break;
      case Mode::Auto:
        break;
    }
  } catch (const std::exception& e) {
    a.proof.reset();
    a.links.clear();
    a.error_kind = error_kind(e);
    a.error = e.what();
    a.malformed = a.error_kind == "FormatError" || a.error_kind == "SyntaxError";
    a.internal = a.error_kind == "InternalError";
  }
  return a;
}

Analysis analyze_record(const Record& r, const ParseOptions& options) {
  Analysis a;
  a.id = r.origin;
  a.malformed = true;
  if (!r.value) {
    a.error_kind = "FormatError";
    a.error = r.error;
    return a;
  }
  if (r.value->is_object() && r.value->contains("id")) {
    const auto& id = r.value->at("id");
    if (id.is_string()) a.id = id.get<std::string>();
  }
  Sample s;
  try {
    s = sample_from_json(*r.value);
  } catch (const std::exception& e) {
    a.error_kind = error_kind(e);
    a.error = e.what();
    return a;
  }
  return analyze(s, options);
}

std::string format_analysis_text(const Analysis& a) {
  std::string out = "Analysis(\n    id=" + a.id + ",\n";
  if (!a.phrases.empty() || !a.malformed) {
    out += "    lexical_phrases=(";
    for (std::size_t i = 0; i < a.phrases.size(); ++i) {
      const auto& ph = a.phrases[i];
      out += "\n        LexicalPhrase(string=" + ph.text() +
             ", type=" + print_type(ph.type, TypeSyntax::Display) +
             ", len=" + std::to_string(ph.words.size()) + ")";
      if (i + 1 < a.phrases.size()) out += ",";
    }
    out += "),\n";
  }
  if (a.proof)
    out += "    proof=" + render_text(*a.proof) + ")\n";
  else
    out += "    error=" + a.error_kind + ": " + a.error + ")\n";
  return out;
}

Json analysis_to_json(const Analysis& a) {
  Json j;
  j["id"] = a.id;
  j["outcome"] = a.ok() ? "ok" : a.error_kind;
  j["goal"] = a.goal ? Json(print_type(*a.goal)) : Json(nullptr);
  auto& phrases = j["phrases"] = Json::array();
  for (const auto& ph : a.phrases)
    phrases.push_back({{"words", ph.words}, {"type", print_type(ph.type)}});
  if (a.proof) {
    j["judgement"] = render_text(*a.proof);
    j["proof"] = write_proof(*a.proof);
    auto& links = j["links"] = Json::array();
    for (const auto& l : a.links) links.push_back({l.positive, l.negative});
  } else {
    j["error"] = a.error;
    if (a.imbalance) {
      auto& im = j["imbalance"] = Json::array();
      for (const auto& e : a.imbalance->entries)
        im.push_back({{"atom", e.atom}, {"positives", e.positives}, {"negatives", e.negatives}});
    }
  }
  return j;
}

Analysis analysis_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("an analysis must be an object");
  Analysis a;
  a.id = field<std::string>(j, "id");
  std::string outcome = field<std::string>(j, "outcome");
  if (j.contains("phrases")) a.phrases = phrases_from_json(j.at("phrases"));
  if (j.contains("goal") && !j.at("goal").is_null()) a.goal = parse_type(field<std::string>(j, "goal"));
  if (outcome == "ok") {
    Proof p = read_proof(field<std::string>(j, "proof"));
    try {
      check(p);
      a.proof = p;
    } catch (const std::exception& e) {
      a.error_kind = error_kind(e);
      a.error = e.what();
    }
    if (j.contains("links"))
      for (const auto& l : field<std::vector<std::vector<int>>>(j, "links"))
        if (l.size() == 2) a.links.push_back({l[0], l[1]});
  } else {
    a.error_kind = outcome;
    a.error = j.contains("error") ? field<std::string>(j, "error") : "";
    if (j.contains("imbalance")) {
      ImbalanceReport r;
      for (const auto& e : j.at("imbalance"))
        r.entries.push_back({field<std::string>(e, "atom"), field<int>(e, "positives"),
                             field<int>(e, "negatives")});
      a.imbalance = std::move(r);
    }
  }
  return a;
}

SampleResult to_sample_result(const Analysis& a, std::optional<Proof> gold,
                              const FrameConfig& config) {
  SampleResult r{a.id, TraversalFail{a.error}, {}, std::move(gold)};
  for (std::size_t i = 0; i < a.phrases.size(); ++i)
    if (!config.is_exempt(a.phrases[i])) r.predicted_types.emplace(static_cast<int>(i), a.phrases[i].type);
  if (a.proof)
    r.outcome = ParseOK{*a.proof};
  else if (a.error_kind == "InvarianceFail")
    r.outcome = InvarianceFail{a.imbalance.value_or(ImbalanceReport{})};
  else if (a.error_kind == "TypeError" || a.error_kind == "LinearityError")
    r.outcome = TypeFail{a.error};
  return r;
}

}  // namespace tlg
