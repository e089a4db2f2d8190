#ifndef CORESOLVE_CORPUS_IO_H_
#define CORESOLVE_CORPUS_IO_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coresolve/coordinator.h"
#include "coresolve/model.h"

namespace coresolve {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path);

// Lexicon file:
//   {"classes": [...],
//    "possessor_classes": [...],              (optional)
//    "entries": {lemma: {"class", "gender", "number", "proper"}}}
// Throws ParseError or ReferenceError.
SemanticLexicon load_lexicon(std::string_view text);
std::string serialize_lexicon(const SemanticLexicon &lex);

// Rules file: {"rules": [{"governor", "prep", "object_class", "role",
// "score"}]}. Throws ParseError, ReferenceError or ValidationError.
AttachmentRuleTable load_rules(std::string_view text,
                               const SemanticLexicon &lex);
std::string serialize_rules(const AttachmentRuleTable &rules);

// Corpus file: {"documents": [{"id", "sentences": [...]}]}. NP class,
// gender, number and proper default to the lexicon entry of the head
// lemma. Every document is validated. Throws ParseError, ReferenceError or
// ValidationError.
std::vector<Document> load_corpus(std::string_view text,
                                  const SemanticLexicon &lex);
// Writes every NP feature explicitly, so reloading needs no defaults.
std::string serialize_corpus(const std::vector<Document> &docs);

// Final statuses, metrics and trace per sentence, as JSON.
std::string serialize_results(const std::vector<Document> &docs,
                              const std::vector<DocumentResult> &results);

}  // namespace coresolve

#endif  // CORESOLVE_CORPUS_IO_H_
