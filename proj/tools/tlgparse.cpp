// tlgparse: parse supertagged sentences into checked proofs, and check,
// convert, evaluate and render proof files.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "tlg/cli.hpp"
#include "tlg/errors.hpp"

namespace {

// "-" reads standard input.
std::string slurp(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tlg::FormatError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::set<std::string> split_atoms(const std::string& csv) {
  std::set<std::string> out;
  std::stringstream in(csv);
  for (std::string a; std::getline(in, a, ',');)
    if (!a.empty()) out.insert(a);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Type-logical parsing kernel"};
  app.require_subcommand(1);

  std::string parse_mode = "exhaustive", eval_mode = "auto";
  std::string format = "text", exempt = "PUNCT", output = "-";
  std::string scores_path;
  tlg::ParseOptions options;

  auto add_parse_flags = [&](CLI::App* cmd, std::string& mode) {
    cmd->add_option("--mode", mode, "scores, exhaustive, gold-links or auto")
        ->check(CLI::IsMember({"scores", "exhaustive", "gold-links", "auto"}));
    cmd->add_option("--cap", options.cap, "largest exhaustive search space");
    cmd->add_option("--sinkhorn-iters", options.sinkhorn.iterations)->check(CLI::PositiveNumber);
    cmd->add_option("--temperature", options.sinkhorn.temperature)->check(CLI::PositiveNumber);
    cmd->add_flag("--goal-infer", options.goal_infer, "infer goals even when given");
    cmd->add_option("--exempt-atoms", exempt, "comma-separated atoms left out of proofs");
    cmd->add_option("--jobs", options.jobs, "worker threads")->check(CLI::PositiveNumber);
  };

  std::string input = "-", sentence_path, pred_path, gold_path;

  auto* parse = app.add_subcommand("parse", "analyze a corpus");
  parse->add_option("input", input, "corpus file (JSON lines or array), - for stdin");
  parse->add_option("--scores", scores_path, "score matrices keyed by sentence_id");
  parse->add_option("--format", format)->check(CLI::IsMember({"text", "json", "latex"}));
  parse->add_option("-o,--output", output);
  add_parse_flags(parse, parse_mode);

  auto* check = app.add_subcommand("check", "check a proof file");
  check->add_option("proof", input)->required();

  auto* convert = app.add_subcommand("convert", "net JSON to proof file or back");
  convert->add_option("input", input)->required();
  convert->add_option("--sentence", sentence_path, "net or sample JSON giving phrases and goal");
  convert->add_option("--exempt-atoms", exempt);
  convert->add_option("-o,--output", output);

  auto* eval = app.add_subcommand("eval", "evaluate predictions against gold");
  eval->add_option("predictions", pred_path)->required();
  eval->add_option("gold", gold_path)->required();
  eval->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  eval->add_option("-o,--output", output);
  add_parse_flags(eval, eval_mode);

  auto* render = app.add_subcommand("render", "render a proof file");
  render->add_option("proof", input)->required();
  render->add_option("--format", format)->check(CLI::IsMember({"text", "latex"}));
  render->add_option("--sentence", sentence_path, "net or sample JSON naming the words");
  render->add_option("-o,--output", output);

  CLI11_PARSE(app, argc, argv);

  options.frame.exempt_atoms = split_atoms(exempt);
  const std::string& mode = *eval ? eval_mode : parse_mode;
  options.mode = mode == "scores"       ? tlg::Mode::Scores
                 : mode == "gold-links" ? tlg::Mode::GoldLinks
                 : mode == "auto"       ? tlg::Mode::Auto
                                        : tlg::Mode::Exhaustive;
  tlg::OutputFormat fmt = format == "json"    ? tlg::OutputFormat::Json
                          : format == "latex" ? tlg::OutputFormat::Latex
                                              : tlg::OutputFormat::Text;

  std::ofstream file;
  if (output != "-") {
    file.open(output, std::ios::binary);
    if (!file) {
      std::cerr << "cannot write " << output << "\n";
      return tlg::kExitFormat;
    }
  }
  std::ostream& out = output == "-" ? std::cout : file;

  try {
    if (*parse) {
      std::string scores = scores_path.empty() ? std::string() : slurp(scores_path);
      return tlg::cmd_parse(slurp(input), options, fmt, out, std::cerr, scores);
    }
    if (*check) return tlg::cmd_check(slurp(input), out, std::cerr);
    if (*convert) {
      std::optional<std::string> sentence;
      if (!sentence_path.empty()) sentence = slurp(sentence_path);
      return tlg::cmd_convert(slurp(input), sentence, options.frame, out, std::cerr);
    }
    if (*eval) return tlg::cmd_eval(slurp(pred_path), slurp(gold_path), options, fmt, out, std::cerr);
    if (*render) {
      std::optional<std::string> sentence;
      if (!sentence_path.empty()) sentence = slurp(sentence_path);
      return tlg::cmd_render(slurp(input), fmt, sentence, out, std::cerr);
    }
  } catch (const tlg::Error& e) {
    std::cerr << e.what() << "\n";
    return tlg::kExitFormat;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return tlg::kExitInternal;
  }
  return tlg::kExitOk;
}
