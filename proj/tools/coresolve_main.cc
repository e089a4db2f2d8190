// Command-line front end: resolves a corpus, optionally checks it against
// the dependency-graph oracle, and runs randomized engine/oracle checks.
//
// Exit codes: 0 success, 1 I/O or parse error, 2 validation error,
// 3 oracle mismatch.

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "coresolve/coordinator.h"
#include "coresolve/corpus_io.h"
#include "coresolve/fuzz.h"
#include "coresolve/oracle.h"
#include "coresolve/stats.h"

namespace {

using namespace coresolve;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;
constexpr int kExitMismatch = 3;

struct Options {
  std::string corpus;
  std::string lexicon;
  std::string rules;
  std::string oracle_rules;
  std::string json_out;
  bool trace = false;
  bool oracle_check = false;
  bool stats = false;
  uint64_t seed = 1;
  int fuzz = 0;
  int jobs = 1;
};

void print_sentence(const std::string &doc, const SentenceResult &r,
                    bool trace) {
  std::cout << "document=" << doc << " sentence=" << r.state.index
            << " outcome=" << outcome_name(r.outcome)
            << " module_calls=" << r.module_calls << "\n";
  if (trace) {
    for (const auto &e : r.trace) std::cout << format_event(e) << "\n";
  }
  for (const auto &a : r.state.anaphors) {
    std::cout << "  " << a.id << " " << status_name(a.status()) << " "
              << (a.status() == AnaphorStatus::kResolved ? a.antecedent()
                                                         : a.reason())
              << "\n";
  }
  for (const auto &p : r.state.pps) {
    std::cout << "  " << p.id << " " << status_name(p.status()) << " "
              << (p.site() ? p.site()->to_string() : p.reason()) << "\n";
  }
}

// Documents are independent; each worker takes the next unclaimed one.
std::vector<DocumentResult> resolve_all(const std::vector<Document> &docs,
                                        const AttachmentRuleTable &rules,
                                        const SemanticLexicon &lex,
                                        int jobs) {
  std::vector<DocumentResult> results(docs.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < docs.size(); i = next++) {
      results[i] = resolve_document(docs[i], rules, lex);
    }
  };
  jobs = std::clamp(jobs, 1, static_cast<int>(std::max<size_t>(docs.size(), 1)));
  std::vector<std::thread> threads;
  for (int t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (auto &t : threads) t.join();
  return results;
}

int run_corpus(const Options &opt) {
  SemanticLexicon lex = load_lexicon(read_file(opt.lexicon));
  AttachmentRuleTable rules = load_rules(read_file(opt.rules), lex);
  std::vector<Document> docs = load_corpus(read_file(opt.corpus), lex);

  std::vector<DocumentResult> results = resolve_all(docs, rules, lex, opt.jobs);

  if (!opt.json_out.empty()) {
    std::ofstream out(opt.json_out);
    if (!out) throw IoError("cannot write " + opt.json_out);
    out << serialize_results(docs, results);
  } else {
    for (size_t i = 0; i < docs.size(); ++i) {
      for (const auto &r : results[i].sentences) {
        print_sentence(docs[i].id, r, opt.trace);
      }
    }
  }

  if (opt.stats) {
    std::cout << "stats " << corpus_stats(results).to_string() << "\n";
  }

  int status = kExitOk;
  if (opt.oracle_check) {
    AttachmentRuleTable oracle_rules =
        opt.oracle_rules.empty() ? rules
                                 : load_rules(read_file(opt.oracle_rules), lex);
    int diffs = 0;
    for (size_t i = 0; i < docs.size(); ++i) {
      OracleDocumentResult oracle =
          oracle_resolve_document(docs[i], oracle_rules, lex);
      for (size_t j = 0; j < oracle.sentences.size(); ++j) {
        EquivalenceReport report =
            compare(results[i].sentences[j], oracle.sentences[j]);
        for (const auto &d : report.diffs) {
          std::cout << "oracle-diff document=" << docs[i].id
                    << " sentence=" << j << " " << d << "\n";
          ++diffs;
        }
      }
    }
    std::cout << "oracle-check " << (diffs == 0 ? "equal" : "MISMATCH")
              << " diffs=" << diffs << "\n";
    if (diffs > 0) status = kExitMismatch;
  }
  return status;
}

int run_fuzz_command(const Options &opt) {
  FuzzSummary summary = run_fuzz(opt.fuzz, opt.seed);
  std::cout << "fuzz seed=" << opt.seed << " " << summary.to_string() << "\n";
  for (const auto &f : summary.failures) std::cout << "  " << f << "\n";
  return summary.ok() ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Coordinated pronoun resolution and PP attachment"};
  app.require_subcommand(1);
  Options opt;

  CLI::App *resolve = app.add_subcommand(
      "resolve", "Resolve anaphors and attach PPs in an annotated corpus");
  resolve->add_option("corpus", opt.corpus, "Corpus JSON file");
  resolve->add_option("--lexicon", opt.lexicon, "Lexicon JSON file");
  resolve->add_option("--rules", opt.rules, "Attachment rules JSON file");
  resolve->add_flag("--trace", opt.trace, "Print scheduler trace events");
  resolve->add_flag("--oracle-check", opt.oracle_check,
                    "Compare every sentence with the dependency-graph oracle");
  resolve->add_option("--oracle-rules", opt.oracle_rules,
                      "Rules file for the oracle (defaults to --rules)");
  resolve->add_flag("--stats", opt.stats, "Print corpus statistics");
  resolve->add_option("--seed", opt.seed, "Seed for --fuzz");
  resolve->add_option("--fuzz", opt.fuzz,
                      "Check N random sentences against the oracle")
      ->check(CLI::NonNegativeNumber);
  resolve->add_option("--json", opt.json_out, "Write results as JSON");
  resolve->add_option("--jobs", opt.jobs, "Worker threads across documents")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    int status = kExitOk;
    if (!opt.corpus.empty()) {
      if (opt.lexicon.empty() || opt.rules.empty()) {
        std::cerr << "error: --lexicon and --rules are required with a corpus\n";
        return kExitIo;
      }
      status = run_corpus(opt);
    } else if (opt.fuzz == 0) {
      std::cerr << "error: give a corpus file or --fuzz N\n";
      return kExitIo;
    }
    if (opt.fuzz > 0) status = std::max(status, run_fuzz_command(opt));
    return status;
  } catch (const IoError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ParseError &e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ReferenceError &e) {
    std::cerr << "reference error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError &e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConfigError &e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitValidation;
  }
}
