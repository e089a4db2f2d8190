#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "coresolve/coordinator.h"
#include "coresolve/corpus_io.h"
#include "coresolve/fuzz.h"
#include "coresolve/oracle.h"
#include "coresolve/stats.h"

namespace py = pybind11;
using namespace coresolve;

namespace {

struct Rules {
  AttachmentRuleTable table;
};

struct Corpus {
  std::vector<Document> documents;
};

std::vector<DocumentResult> resolve_all(const Corpus &c, const Rules &r,
                                        const SemanticLexicon &lex) {
  std::vector<DocumentResult> out;
  out.reserve(c.documents.size());
  for (const auto &doc : c.documents) {
    out.push_back(resolve_document(doc, r.table, lex));
  }
  return out;
}

py::dict stats_dict(const CorpusStats &s) {
  py::dict d;
  d["documents"] = s.documents;
  d["sentences"] = s.sentences;
  d["anaphors"] = s.anaphors;
  d["pps"] = s.pps;
  d["case_a"] = s.case_a;
  d["case_b"] = s.case_b;
  d["case_c"] = s.case_c;
  d["deadlocked_sentences"] = s.deadlocked_sentences;
  d["total_module_calls"] = s.total_module_calls;
  d["max_module_calls"] = s.max_module_calls;
  d["mean_module_calls"] = s.mean_module_calls();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coordinated pronoun resolution and PP attachment";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ReferenceError>(m, "ReferenceError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<SemanticLexicon>(m, "Lexicon")
      .def_static("from_json", &load_lexicon, py::arg("text"))
      .def("to_json", &serialize_lexicon)
      .def_property_readonly("classes", [](const SemanticLexicon &l) {
        return std::vector<std::string>(l.classes.begin(), l.classes.end());
      })
      .def("__len__", [](const SemanticLexicon &l) { return l.entries.size(); })
      .def("__eq__", [](const SemanticLexicon &a, const SemanticLexicon &b) {
        return a == b;
      });

  py::class_<Rules>(m, "Rules")
      .def_static(
          "from_json",
          [](const std::string &text, const SemanticLexicon &lex) {
            return Rules{load_rules(text, lex)};
          },
          py::arg("text"), py::arg("lexicon"))
      .def("to_json", [](const Rules &r) { return serialize_rules(r.table); })
      .def("__len__", [](const Rules &r) { return r.table.rules.size(); })
      .def("__eq__",
           [](const Rules &a, const Rules &b) { return a.table == b.table; });

  py::class_<Corpus>(m, "Corpus")
      .def_static(
          "from_json",
          [](const std::string &text, const SemanticLexicon &lex) {
            return Corpus{load_corpus(text, lex)};
          },
          py::arg("text"), py::arg("lexicon"))
      .def("to_json", [](const Corpus &c) { return serialize_corpus(c.documents); })
      .def_property_readonly("document_ids",
                             [](const Corpus &c) {
                               std::vector<std::string> ids;
                               for (const auto &d : c.documents) ids.push_back(d.id);
                               return ids;
                             })
      .def("__len__", [](const Corpus &c) { return c.documents.size(); })
      .def("__eq__", [](const Corpus &a, const Corpus &b) {
        return a.documents == b.documents;
      });

  m.def(
      "resolve_json",
      [](const Corpus &c, const Rules &r, const SemanticLexicon &lex) {
        std::vector<DocumentResult> results;
        {
          py::gil_scoped_release release;
          results = resolve_all(c, r, lex);
        }
        return serialize_results(c.documents, results);
      },
      py::arg("corpus"), py::arg("rules"), py::arg("lexicon"),
      "Resolves every document; returns the results as JSON text.");

  m.def(
      "oracle_diffs",
      [](const Corpus &c, const Rules &r, const SemanticLexicon &lex,
         const Rules *oracle_rules) {
        py::gil_scoped_release release;
        const AttachmentRuleTable &ot = oracle_rules ? oracle_rules->table : r.table;
        std::vector<std::string> diffs;
        for (const auto &doc : c.documents) {
          DocumentResult e = resolve_document(doc, r.table, lex);
          OracleDocumentResult o = oracle_resolve_document(doc, ot, lex);
          for (size_t i = 0; i < e.sentences.size(); ++i) {
            for (auto &d : compare(e.sentences[i], o.sentences[i]).diffs) {
              diffs.push_back(doc.id + "/" + std::to_string(i) + ": " + d);
            }
          }
        }
        return diffs;
      },
      py::arg("corpus"), py::arg("rules"), py::arg("lexicon"),
      py::arg("oracle_rules") = nullptr,
      "Differences between the engine and the dependency-graph oracle.");

  m.def(
      "stats",
      [](const Corpus &c, const Rules &r, const SemanticLexicon &lex) {
        return stats_dict(corpus_stats(resolve_all(c, r, lex)));
      },
      py::arg("corpus"), py::arg("rules"), py::arg("lexicon"));

  m.def(
      "fuzz",
      [](int sentences, uint64_t seed) {
        FuzzSummary s;
        {
          py::gil_scoped_release release;
          s = run_fuzz(sentences, seed);
        }
        py::dict d;
        d["ok"] = s.ok();
        d["documents"] = s.documents;
        d["sentences"] = s.sentences;
        d["cyclic"] = s.cyclic;
        d["oracle_diffs"] = s.oracle_diffs;
        d["schedule_diffs"] = s.schedule_diffs;
        d["bound_violations"] = s.bound_violations;
        d["redundancy_violations"] = s.redundancy_violations;
        d["cycle_outcome_diffs"] = s.cycle_outcome_diffs;
        d["invariant_violations"] = s.invariant_violations;
        d["max_module_calls"] = s.max_module_calls;
        d["failures"] = s.failures;
        return d;
      },
      py::arg("sentences"), py::arg("seed") = 1,
      "Checks random sentences against the oracle.");
}
