#ifndef CORESOLVE_TESTS_TEST_SUPPORT_H_
#define CORESOLVE_TESTS_TEST_SUPPORT_H_

#include <string>
#include <vector>

#include "coresolve/coordinator.h"
#include "coresolve/corpus_io.h"

namespace coresolve::testing {

inline std::string fixture(const std::string &name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

struct Fixtures {
  SemanticLexicon lex;
  AttachmentRuleTable rules;
  AttachmentRuleTable rules_alt;
  std::vector<Document> corpus;     // ex1, ex2, chain
  std::vector<Document> discourse;  // two_sentences
  std::vector<Document> deadlock;   // cycle

  const Document &doc(const std::string &id) const {
    for (const auto *set : {&corpus, &discourse, &deadlock}) {
      for (const auto &d : *set) {
        if (d.id == id) return d;
      }
    }
    throw std::out_of_range("no fixture document " + id);
  }

  std::vector<Document> all() const {
    std::vector<Document> out = corpus;
    out.insert(out.end(), discourse.begin(), discourse.end());
    out.insert(out.end(), deadlock.begin(), deadlock.end());
    return out;
  }
};

inline const Fixtures &fixtures() {
  static const Fixtures f = [] {
    Fixtures f;
    f.lex = load_lexicon(read_file(fixture("lexicon.json")));
    f.rules = load_rules(read_file(fixture("rules.json")), f.lex);
    f.rules_alt = load_rules(read_file(fixture("rules_alt.json")), f.lex);
    f.corpus = load_corpus(read_file(fixture("corpus.json")), f.lex);
    f.discourse = load_corpus(read_file(fixture("discourse.json")), f.lex);
    f.deadlock = load_corpus(read_file(fixture("deadlock.json")), f.lex);
    return f;
  }();
  return f;
}

// Initial state of the first sentence of a fixture document.
inline AnnotatedSentence initial(const std::string &doc_id, int sentence = 0) {
  const Fixtures &f = fixtures();
  return build_initial_state(f.doc(doc_id).sentences.at(sentence), f.lex);
}

inline SentenceResult run(const std::string &doc_id) {
  const Fixtures &f = fixtures();
  return resolve_sentence(f.doc(doc_id).sentences.at(0), {}, f.rules, f.lex);
}

}  // namespace coresolve::testing

#endif  // CORESOLVE_TESTS_TEST_SUPPORT_H_
