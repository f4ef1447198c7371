#include "tlg/metrics.hpp"

#include <cstdio>

#include <json.hpp>

#include "tlg/render.hpp"

namespace tlg {

std::map<int, Type> lexical_types(const Proof& p) {
  std::map<int, Type> out;
  if (p.rule() == Rule::Lex) out.emplace(p.payload().lex_index, p.type());
  for (const auto& q : p.premises()) out.merge(lexical_types(q));
  return out;
}

namespace {

double percent(std::size_t n, std::size_t total) {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(n) / static_cast<double>(total);
}

const Proof* parsed(const SampleResult& s) {
  const auto* ok = std::get_if<ParseOK>(&s.outcome);
  return ok ? &ok->proof : nullptr;
}

}  // namespace

SentenceStats sentence_stats(const std::vector<SampleResult>& results) {
  std::size_t parsable = 0, covered = 0, typed = 0, exact = 0;
  for (const auto& s : results) {
    if (!std::holds_alternative<InvarianceFail>(s.outcome)) ++parsable;
    const Proof* p = parsed(s);
    if (p) ++covered;
    if (!s.gold) continue;
    if (s.predicted_types == lexical_types(*s.gold)) ++typed;
    if (p && *p == *s.gold) ++exact;
  }
  const std::size_t n = results.size();
  return {percent(parsable, n), percent(covered, n), percent(typed, n), percent(exact, n)};
}

std::set<std::string> decompose(const Proof& p) {
  std::set<std::string> out{render_text(p)};
  for (const auto& q : p.premises()) out.merge(decompose(q));
  return out;
}

const char* relaxation_name(Relaxation r) {
  switch (r) {
    case Relaxation::None: return "none";
    case Relaxation::Modalities: return "modalities";
    case Relaxation::FunctionalTypes: return "functional_types";
    case Relaxation::Both: return "both";
  }
  return "?";
}

Proof relax(const Proof& p, Relaxation r) {
  switch (r) {
    case Relaxation::None: return p;
    case Relaxation::Modalities: return strip_modalities(p);
    case Relaxation::FunctionalTypes: return collapse_atoms(p);
    case Relaxation::Both: return collapse_atoms(strip_modalities(p));
  }
  return p;
}

PRF prf(const Proof& pred, const Proof& gold, Relaxation r) {
  auto ps = decompose(relax(pred, r));
  auto gs = decompose(relax(gold, r));
  PRF out;
  for (const auto& k : ps) out.tp += gs.count(k);
  out.fp = ps.size() - out.tp;
  out.fn = gs.size() - out.tp;
  out.p = ps.empty() ? 0.0 : static_cast<double>(out.tp) / static_cast<double>(ps.size());
  out.r = gs.empty() ? 0.0 : static_cast<double>(out.tp) / static_cast<double>(gs.size());
  out.f1 = out.p + out.r == 0 ? 0.0 : 2 * out.p * out.r / (out.p + out.r);
  return out;
}

EvalReport corpus_eval(const std::vector<SampleResult>& results) {
  EvalReport report;
  report.samples = results.size();
  report.sentence = sentence_stats(results);
  std::size_t scored = 0;
  for (Relaxation r : kRelaxations) report.local[r] = PRF{};
  for (const auto& s : results) {
    const Proof* p = parsed(s);
    if (!p) continue;
    ++report.covered;
    if (!s.gold) continue;
    ++scored;
    for (Relaxation r : kRelaxations) {
      PRF x = prf(*p, *s.gold, r);
      PRF& acc = report.local[r];
      acc.p += x.p;
      acc.r += x.r;
      acc.f1 += x.f1;
      acc.tp += x.tp;
      acc.fp += x.fp;
      acc.fn += x.fn;
    }
  }
  for (auto& [_, acc] : report.local) {
    double scale = scored ? 100.0 / static_cast<double>(scored) : 0.0;
    acc.p *= scale;
    acc.r *= scale;
    acc.f1 *= scale;
  }
  return report;
}

namespace {

std::string fixed2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  // Pads by code points; the labels are ASCII.
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

std::string format_report_text(const EvalReport& r) {
  const std::size_t w = 30;
  std::string out;
  out += "samples: " + std::to_string(r.samples) + ", covered: " + std::to_string(r.covered) + "\n\n";
  out += pad("parsability", w) + "coverage\n";
  out += pad("(some proof obtainable)", w) + "(some proof obtained)\n";
  out += pad(fixed2(r.sentence.parsability), w) + fixed2(r.sentence.coverage) + "\n\n";
  out += pad("types correct", w) + "accuracy\n";
  out += pad("(correct proof obtainable)", w) + "(correct proof obtained)\n";
  out += pad(fixed2(r.sentence.types_correct), w) + fixed2(r.sentence.accuracy) + "\n\n";

  const std::size_t c = 20, k = 9;
  out += pad("", c) + "local metrics\n";
  out += pad("modulo", c) + pad("p", k) + pad("r", k) + "F1\n";
  const std::pair<Relaxation, const char*> rows[] = {{Relaxation::None, "--"},
                                                     {Relaxation::Modalities, " modalities"},
                                                     {Relaxation::FunctionalTypes, " functional types"},
                                                     {Relaxation::Both, " both"}};
  for (const auto& [rel, name] : rows) {
    const PRF& x = r.local.at(rel);
    out += pad(name, c) + pad(fixed2(x.p), k) + pad(fixed2(x.r), k) + fixed2(x.f1) + "\n";
  }
  return out;
}

std::string format_report_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["samples"] = r.samples;
  j["covered"] = r.covered;
  j["sentence"] = {{"parsability", r.sentence.parsability},
                   {"coverage", r.sentence.coverage},
                   {"types_correct", r.sentence.types_correct},
                   {"accuracy", r.sentence.accuracy}};
  auto& local = j["local"] = nlohmann::ordered_json::object();
  for (Relaxation rel : kRelaxations) {
    const PRF& x = r.local.at(rel);
    local[relaxation_name(rel)] = {{"p", x.p}, {"r", x.r}, {"f1", x.f1},
                                   {"tp", x.tp}, {"fp", x.fp}, {"fn", x.fn}};
  }
  return j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

}  // namespace tlg
