// g2p: command-line front end.
//
//   g2p convert          tagged sentences on stdin (or --input) -> phonemes
//   g2p evaluate         --corpus FILE, prints accuracy
//   g2p learn-ccv        --corpus FILE --out FILE
//   g2p inspect-lattice  dumps candidates and the chosen path
//
// Exit codes: 0 success, 1 resource or input error, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "kg2p/kg2p.hpp"

namespace {

struct Shared {
  std::string resources = "data";
  std::string break_tags;
  std::size_t min_phrase = 3;
  std::size_t max_phrase = 6;
  unsigned jobs = 0;
  bool diagnostics = false;

  kg2p::ConvertOptions options() const {
    kg2p::ConvertOptions o;
    o.limits.min_words = min_phrase;
    o.limits.max_words = max_phrase == 0 ? kg2p::PhraseLimits::kUnbounded : max_phrase;
    return o;
  }
  unsigned threads() const { return jobs ? jobs : std::max(1u, std::thread::hardware_concurrency()); }
  kg2p::Resources load() const { return kg2p::Resources::load(resources, break_tags); }
};

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = kg2p::trim(line);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

std::vector<std::string> input_lines(const std::string& path, const std::vector<std::string>& args) {
  if (!args.empty()) {
    std::string joined;
    for (const auto& a : args) joined += (joined.empty() ? "" : " ") + a;
    return {joined};
  }
  if (path.empty() || path == "-") return read_lines(std::cin);
  std::ifstream in(path);
  if (!in) throw kg2p::ResourceError(path, 0, "cannot open file");
  return read_lines(in);
}

int run_convert(const Shared& sh, const std::string& input, const std::vector<std::string>& args, bool compact) {
  auto res = sh.load();
  auto lines = input_lines(input, args);
  auto out = kg2p::convert_batch(lines, res, sh.options(), sh.threads());
  int rc = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!out[i].result) {
      std::cerr << "line " << i + 1 << ": " << out[i].error << '\n';
      std::cout << '\n';
      rc = 1;
      continue;
    }
    const auto& r = *out[i].result;
    std::cout << (compact ? kg2p::render_compact(r) : kg2p::render(r)) << '\n';
    if (sh.diagnostics)
      for (const auto& d : r.diagnostics) std::cerr << "line " << i + 1 << ": " << d << '\n';
  }
  return rc;
}

int run_inspect(const Shared& sh, const std::string& input, const std::vector<std::string>& args) {
  auto res = sh.load();
  int rc = 0;
  for (const auto& line : input_lines(input, args)) {
    try {
      auto r = kg2p::convert(line, res, sh.options());
      std::cout << "sentence: " << line << '\n' << kg2p::inspect(r) << "output: " << kg2p::render(r) << "\n\n";
      for (const auto& d : r.diagnostics) std::cerr << d << '\n';
    } catch (const kg2p::Error& e) {
      std::cerr << e.what() << '\n';
      rc = 1;
    }
  }
  return rc;
}

int run_evaluate(const Shared& sh, const std::string& corpus, bool show_failures) {
  auto res = sh.load();
  auto rep = kg2p::evaluate(kg2p::load_corpus(corpus), res, sh.options(), sh.threads());
  if (!rep.error.empty()) {
    std::cerr << "evaluate: " << rep.error << '\n';
    return 1;
  }
  std::cout << std::fixed << std::setprecision(4) << "sentences: " << rep.sentences << '\n'
            << "correct: " << rep.correct << '\n'
            << "sentence_accuracy: " << rep.sentence_accuracy() << '\n'
            << "grapheme_accuracy: " << rep.grapheme_accuracy() << '\n';
  for (const auto& [line, why] : rep.skipped) std::cerr << "skipped line " << line << ": " << why << '\n';
  if (show_failures)
    for (const auto& f : rep.failures)
      std::cout << "line " << f.line << ": " << f.sentence << "\n  expected: " << f.expected << "\n  got:      " << f.got
                << '\n';
  return 0;
}

int run_learn(const std::string& corpus, std::size_t min_count, const std::string& out, bool report) {
  auto data = kg2p::load_training_corpus(corpus);
  auto learned = kg2p::learn_ccv(data, min_count);
  learned.rules.save(out);
  std::cout << "rules: " << learned.rules.size() << "\nobservations: " << learned.observations
            << "\nmisaligned: " << learned.misaligned.size() << '\n';
  if (report) {
    auto cov = kg2p::coverage_report(learned.rules, data);
    std::cout << "boundary_accuracy: " << std::fixed << std::setprecision(4) << cov.accuracy() << '\n';
    auto output = [](const kg2p::CcvRule& r) {
      auto f = kg2p::format_rule(r);
      return f.substr(f.find('\t') + 1);
    };
    for (const auto& e : cov.exceptions) {
      auto observed = kg2p::format_rule({e.context, e.observed});
      std::cout << "exception: item " << e.sentence << " boundary " << e.boundary << ": "
                << observed.substr(0, observed.find('\t')) << " -> " << output({e.context, e.observed})
                << " (rule gives " << output({e.context, e.predicted}) << ")\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Korean grapheme-to-phoneme converter"};
  app.require_subcommand(1);
  Shared sh;
  auto shared = [&](CLI::App* sub) {
    sub->add_option("--resources", sh.resources, "Data directory")->capture_default_str();
    sub->add_option("--break-tags", sh.break_tags, "Break-tag file (default: <resources>/../config/breaktags.tsv)");
    sub->add_option("--min-phrase", sh.min_phrase, "Minimum words before a trigger may break")->capture_default_str();
    sub->add_option("--max-phrase", sh.max_phrase, "Words after which a break is forced (0: never)")
        ->capture_default_str();
    sub->add_option("--jobs", sh.jobs, "Worker threads (0: all cores)");
    sub->add_flag("--diagnostics", sh.diagnostics, "Print diagnostics to stderr");
  };

  std::string input;
  std::vector<std::string> words;
  bool compact = false;
  auto* convert = app.add_subcommand("convert", "Convert tagged sentences, one per line");
  shared(convert);
  convert->add_option("--input", input, "Input file (default: stdin)");
  convert->add_flag("--compact", compact, "Run syllables together, join words with '-'");
  convert->add_option("sentence", words, "Sentence to convert instead of reading input");

  auto* inspect = app.add_subcommand("inspect-lattice", "Show the candidate lattice of each sentence");
  shared(inspect);
  inspect->add_option("--input", input, "Input file (default: stdin)");
  inspect->add_option("sentence", words, "Sentence to inspect instead of reading input");

  std::string corpus;
  bool show_failures = false;
  auto* evaluate = app.add_subcommand("evaluate", "Score against a reference corpus");
  shared(evaluate);
  evaluate->add_option("--corpus", corpus, "tagged sentence<TAB>reference per line")->required();
  evaluate->add_flag("--show-failures", show_failures, "List mismatching sentences");

  std::string out;
  std::size_t min_count = 1;
  bool report = false;
  auto* learn = app.add_subcommand("learn-ccv", "Learn CCV rules from transcribed words");
  learn->add_option("--corpus", corpus, "graphemes<TAB>phonemes per line")->required();
  learn->add_option("--min-count", min_count, "Minimum support for a rule")->capture_default_str();
  learn->add_option("--out", out, "Rule file to write")->required();
  learn->add_flag("--report", report, "Print a coverage report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (sh.min_phrase < 1 || (sh.max_phrase != 0 && sh.max_phrase < sh.min_phrase)) {
      std::cerr << "g2p: need 1 <= --min-phrase <= --max-phrase\n";
      return 2;
    }
    if (*convert) return run_convert(sh, input, words, compact);
    if (*inspect) return run_inspect(sh, input, words);
    if (*evaluate) return run_evaluate(sh, corpus, show_failures);
    if (*learn) return run_learn(corpus, min_count, out, report);
  } catch (const kg2p::Error& e) {
    std::cerr << "g2p: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "g2p: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
