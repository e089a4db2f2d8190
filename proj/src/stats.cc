#include "coresolve/stats.h"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace coresolve {

CorpusStats &CorpusStats::merge(const CorpusStats &other) {
  documents += other.documents;
  sentences += other.sentences;
  anaphors += other.anaphors;
  pps += other.pps;
  case_a += other.case_a;
  case_b += other.case_b;
  case_c += other.case_c;
  deadlocked_sentences += other.deadlocked_sentences;
  total_module_calls += other.total_module_calls;
  max_module_calls = std::max(max_module_calls, other.max_module_calls);
  return *this;
}

std::string CorpusStats::to_string() const {
  std::ostringstream out;
  out << "documents=" << documents << " sentences=" << sentences
      << " anaphors=" << anaphors << " pps=" << pps << " case_a=" << case_a
      << " case_b=" << case_b << " case_c=" << case_c
      << " deadlocked=" << deadlocked_sentences << " mean_module_calls="
      << std::fixed << std::setprecision(3) << mean_module_calls()
      << " max_module_calls=" << max_module_calls;
  return out.str();
}

CorpusStats sentence_stats(const SentenceResult &r) {
  const AnnotatedSentence &s = r.state;
  CorpusStats st;
  st.sentences = 1;
  st.anaphors = static_cast<int>(s.anaphors.size());
  st.pps = static_cast<int>(s.pps.size());
  for (const auto &a : s.anaphors) {
    bool follows = std::any_of(s.pps.begin(), s.pps.end(), [&a](const auto &p) {
      return p.ambiguous() && p.position < a.position;
    });
    ++(follows ? st.case_b : st.case_a);
  }
  for (const auto &p : s.pps) {
    const NounPhrase *obj = s.find_np(p.object_np);
    if (obj == nullptr) continue;
    bool has_pronoun = std::any_of(
        s.anaphors.begin(), s.anaphors.end(),
        [obj](const Anaphor &a) { return obj->contains(a.position); });
    if (has_pronoun) ++st.case_c;
  }
  st.deadlocked_sentences = r.outcome == Outcome::kDeadlocked ? 1 : 0;
  st.total_module_calls = r.module_calls;
  st.max_module_calls = r.module_calls;
  return st;
}

CorpusStats document_stats(const DocumentResult &r) {
  CorpusStats st;
  st.documents = 1;
  for (const auto &s : r.sentences) st.merge(sentence_stats(s));
  return st;
}

CorpusStats corpus_stats(const std::vector<DocumentResult> &results) {
  CorpusStats st;
  for (const auto &r : results) st.merge(document_stats(r));
  return st;
}

}  // namespace coresolve
