#include "coresolve/corpus_io.h"

#include <fstream>
#include <sstream>

#include "coresolve/anaphora.h"
#include "json.hpp"

namespace coresolve {

using json = nlohmann::json;

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return buffer.str();
}

namespace {

json parse_json(std::string_view text, std::string_view what) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw ParseError(std::string(what) + ": empty input");
  }
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

// Typed field access that reports the JSON path on failure.
class Node {
 public:
  Node(const json &value, std::string path)
      : value_(value), path_(std::move(path)) {}

  const json &value() const { return value_; }
  const std::string &path() const { return path_; }

  bool has(const char *key) const {
    return value_.is_object() && value_.contains(key);
  }

  Node at(const char *key) const {
    if (!value_.is_object()) fail("expected an object");
    auto it = value_.find(key);
    if (it == value_.end()) {
      throw ParseError(path_ + "." + key + ": missing field");
    }
    return Node(*it, path_ + "." + key);
  }

  Node at(size_t i) const {
    return Node(value_.at(i), path_ + "[" + std::to_string(i) + "]");
  }

  size_t size() const {
    if (!value_.is_array()) fail("expected an array");
    return value_.size();
  }

  std::string str() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }

  int integer() const {
    if (!value_.is_number_integer()) fail("expected an integer");
    return value_.get<int>();
  }

  bool boolean() const {
    if (!value_.is_boolean()) fail("expected a boolean");
    return value_.get<bool>();
  }

  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    for (size_t i = 0; i < size(); ++i) out.push_back(at(i).str());
    return out;
  }

  [[noreturn]] void fail(const std::string &message) const {
    throw ParseError(path_ + ": " + message);
  }

 private:
  const json &value_;
  std::string path_;
};

Gender gender_field(const Node &n) {
  auto g = parse_gender(n.str());
  if (!g) n.fail("unknown gender '" + n.str() + "'");
  return *g;
}

Number number_field(const Node &n) {
  auto v = parse_number(n.str());
  if (!v) n.fail("unknown number '" + n.str() + "'");
  return *v;
}

SiteRef parse_site(const Node &n) {
  if (n.has("np")) return SiteRef::np_modifier(n.at("np").str());
  if (n.has("frame")) {
    return SiteRef::frame_role(n.at("frame").str(), n.at("role").str());
  }
  n.fail("site needs \"np\" or \"frame\"+\"role\"");
}

json site_json(const SiteRef &site) {
  if (site.kind == SiteRef::Kind::kNpModifier) return {{"np", site.np}};
  return {{"frame", site.frame}, {"role", site.role}};
}

NounPhrase parse_np(const Node &n, const SemanticLexicon &lex) {
  NounPhrase np;
  np.id = n.at("id").str();
  Node span = n.at("span");
  if (span.size() != 2) span.fail("span must be [start, end]");
  np.start = span.at(size_t{0}).integer();
  np.end = span.at(size_t{1}).integer();
  np.head_lemma = n.at("head").str();
  const LexEntry *entry = lex.find(np.head_lemma);
  if (entry != nullptr) {
    np.semantic_class = entry->semantic_class;
    np.agreement = entry->agreement;
    np.proper = entry->proper;
  }
  if (n.has("class")) np.semantic_class = n.at("class").str();
  if (n.has("gender")) np.agreement.gender = gender_field(n.at("gender"));
  if (n.has("number")) np.agreement.number = number_field(n.at("number"));
  if (n.has("proper")) np.proper = n.at("proper").boolean();
  if (n.has("pronoun")) np.is_pronoun = n.at("pronoun").boolean();
  if (n.has("subject")) np.subject = n.at("subject").boolean();
  if (n.has("parent")) np.parent_np = n.at("parent").str();
  if (!np.semantic_class.empty() && !lex.has_class(np.semantic_class)) {
    throw ReferenceError(n.path() + ": undefined class " + np.semantic_class);
  }
  return np;
}

Frame parse_frame(const Node &n, const SemanticLexicon &lex) {
  Frame f;
  f.id = n.at("id").str();
  f.predicate_lemma = n.at("predicate").str();
  Node roles = n.at("roles");
  if (!roles.value().is_object()) roles.fail("expected an object");
  for (const auto &[name, value] : roles.value().items()) {
    Node role(value, roles.path() + "." + name);
    RoleSlot slot;
    if (role.has("expected")) {
      for (const auto &cls : role.at("expected").strings()) {
        if (!lex.has_class(cls)) {
          throw ReferenceError(role.path() + ": undefined class " + cls);
        }
        slot.expected_classes.insert(cls);
      }
    }
    if (role.has("preps")) {
      for (const auto &prep : role.at("preps").strings()) {
        slot.admitted_prepositions.insert(prep);
      }
    }
    f.roles.emplace(name, std::move(slot));
  }
  return f;
}

AnnotatedSentence parse_sentence(const Node &n, const SemanticLexicon &lex) {
  AnnotatedSentence s;
  s.index = n.at("index").integer();
  Node tokens = n.at("tokens");
  for (size_t i = 0; i < tokens.size(); ++i) {
    Node t = tokens.at(i);
    s.tokens.push_back({t.at("i").integer(), t.at("surface").str(),
                        t.at("lemma").str()});
  }
  Node nps = n.at("nps");
  for (size_t i = 0; i < nps.size(); ++i) {
    s.nps.push_back(parse_np(nps.at(i), lex));
  }
  Node anaphors = n.at("anaphors");
  for (size_t i = 0; i < anaphors.size(); ++i) {
    Node a = anaphors.at(i);
    Anaphor anaphor;
    anaphor.id = a.at("id").str();
    anaphor.np_id = a.at("np").str();
    auto kind = parse_anaphor_kind(a.at("kind").str());
    if (!kind) a.at("kind").fail("unknown anaphor kind");
    anaphor.kind = *kind;
    anaphor.position = a.at("position").integer();
    s.anaphors.push_back(std::move(anaphor));
  }
  Node pps = n.at("pps");
  for (size_t i = 0; i < pps.size(); ++i) {
    Node p = pps.at(i);
    PrepPhrase pp;
    pp.id = p.at("id").str();
    pp.preposition = p.at("prep").str();
    pp.object_np = p.at("object").str();
    pp.position = p.at("position").integer();
    Node sites = p.at("sites");
    for (size_t j = 0; j < sites.size(); ++j) {
      pp.candidate_sites.push_back(parse_site(sites.at(j)));
    }
    s.pps.push_back(std::move(pp));
  }
  Node frames = n.at("frames");
  for (size_t i = 0; i < frames.size(); ++i) {
    s.frames.push_back(parse_frame(frames.at(i), lex));
  }
  return s;
}

json sentence_json(const AnnotatedSentence &s) {
  json tokens = json::array();
  for (const auto &t : s.tokens) {
    tokens.push_back({{"i", t.index}, {"surface", t.surface},
                      {"lemma", t.lemma}});
  }
  json nps = json::array();
  for (const auto &np : s.nps) {
    json j = {{"id", np.id},
              {"span", {np.start, np.end}},
              {"head", np.head_lemma},
              {"class", np.semantic_class},
              {"gender", gender_name(np.agreement.gender)},
              {"number", number_name(np.agreement.number)},
              {"proper", np.proper},
              {"pronoun", np.is_pronoun},
              {"subject", np.subject}};
    if (np.parent_np) j["parent"] = *np.parent_np;
    nps.push_back(std::move(j));
  }
  json anaphors = json::array();
  for (const auto &a : s.anaphors) {
    anaphors.push_back({{"id", a.id},
                        {"np", a.np_id},
                        {"kind", anaphor_kind_name(a.kind)},
                        {"position", a.position}});
  }
  json pps = json::array();
  for (const auto &p : s.pps) {
    json sites = json::array();
    for (const auto &site : p.candidate_sites) sites.push_back(site_json(site));
    pps.push_back({{"id", p.id},
                   {"prep", p.preposition},
                   {"object", p.object_np},
                   {"position", p.position},
                   {"sites", std::move(sites)}});
  }
  json frames = json::array();
  for (const auto &f : s.frames) {
    json roles = json::object();
    for (const auto &[name, slot] : f.roles) {
      roles[name] = {{"expected", slot.expected_classes},
                     {"preps", slot.admitted_prepositions}};
    }
    frames.push_back({{"id", f.id},
                      {"predicate", f.predicate_lemma},
                      {"roles", std::move(roles)}});
  }
  return {{"index", s.index}, {"tokens", std::move(tokens)},
          {"nps", std::move(nps)},    {"anaphors", std::move(anaphors)},
          {"pps", std::move(pps)},    {"frames", std::move(frames)}};
}

}  // namespace

SemanticLexicon load_lexicon(std::string_view text) {
  json root = parse_json(text, "lexicon");
  Node n(root, "lexicon");
  SemanticLexicon lex;
  for (const auto &cls : n.at("classes").strings()) lex.classes.insert(cls);
  if (n.has("possessor_classes")) {
    lex.possessor_classes.clear();
    for (const auto &cls : n.at("possessor_classes").strings()) {
      lex.possessor_classes.insert(cls);
    }
  }
  Node entries = n.at("entries");
  if (!entries.value().is_object()) entries.fail("expected an object");
  for (const auto &[lemma, value] : entries.value().items()) {
    Node e(value, entries.path() + "." + lemma);
    LexEntry entry;
    if (e.has("class")) entry.semantic_class = e.at("class").str();
    if (e.has("gender")) entry.agreement.gender = gender_field(e.at("gender"));
    if (e.has("number")) entry.agreement.number = number_field(e.at("number"));
    if (e.has("proper")) entry.proper = e.at("proper").boolean();
    lex.entries.emplace(lemma, std::move(entry));
  }
  validate_lexicon(lex);
  return lex;
}

std::string serialize_lexicon(const SemanticLexicon &lex) {
  json entries = json::object();
  for (const auto &[lemma, e] : lex.entries) {
    entries[lemma] = {{"class", e.semantic_class},
                      {"gender", gender_name(e.agreement.gender)},
                      {"number", number_name(e.agreement.number)},
                      {"proper", e.proper}};
  }
  json root = {{"classes", lex.classes},
               {"possessor_classes", lex.possessor_classes},
               {"entries", std::move(entries)}};
  return root.dump(2) + "\n";
}

AttachmentRuleTable load_rules(std::string_view text,
                               const SemanticLexicon &lex) {
  json root = parse_json(text, "rules");
  Node n(root, "rules");
  Node rules = n.at("rules");
  AttachmentRuleTable table;
  for (size_t i = 0; i < rules.size(); ++i) {
    Node r = rules.at(i);
    table.rules.push_back({r.at("governor").str(), r.at("prep").str(),
                           r.at("object_class").str(), r.at("role").str(),
                           r.at("score").integer()});
  }
  validate_rules(table, lex);
  return table;
}

std::string serialize_rules(const AttachmentRuleTable &rules) {
  json list = json::array();
  for (const auto &r : rules.rules) {
    list.push_back({{"governor", r.governor},
                    {"prep", r.preposition},
                    {"object_class", r.object_class},
                    {"role", r.role},
                    {"score", r.score}});
  }
  return json{{"rules", std::move(list)}}.dump(2) + "\n";
}

std::vector<Document> load_corpus(std::string_view text,
                                  const SemanticLexicon &lex) {
  json root = parse_json(text, "corpus");
  Node n(root, "corpus");
  Node docs = n.at("documents");
  std::vector<Document> out;
  for (size_t i = 0; i < docs.size(); ++i) {
    Node d = docs.at(i);
    Document doc;
    doc.id = d.at("id").str();
    Node sentences = d.at("sentences");
    for (size_t j = 0; j < sentences.size(); ++j) {
      doc.sentences.push_back(parse_sentence(sentences.at(j), lex));
    }
    ValidationReport report = validate_document(doc, lex);
    if (!report.ok()) {
      throw ValidationError("document " + doc.id + ": " + report.to_string());
    }
    out.push_back(std::move(doc));
  }
  return out;
}

std::string serialize_corpus(const std::vector<Document> &docs) {
  json list = json::array();
  for (const auto &doc : docs) {
    json sentences = json::array();
    for (const auto &s : doc.sentences) sentences.push_back(sentence_json(s));
    list.push_back({{"id", doc.id}, {"sentences", std::move(sentences)}});
  }
  return json{{"documents", std::move(list)}}.dump(2) + "\n";
}

std::string serialize_results(const std::vector<Document> &docs,
                              const std::vector<DocumentResult> &results) {
  json list = json::array();
  for (size_t i = 0; i < docs.size() && i < results.size(); ++i) {
    json sentences = json::array();
    for (const auto &r : results[i].sentences) {
      json anaphors = json::array();
      for (const auto &a : r.state.anaphors) {
        json j = {{"id", a.id}, {"status", status_name(a.status())}};
        if (a.status() == AnaphorStatus::kResolved) {
          j["antecedent"] = a.antecedent();
        } else {
          j["reason"] = a.reason();
        }
        anaphors.push_back(std::move(j));
      }
      json pps = json::array();
      for (const auto &p : r.state.pps) {
        json j = {{"id", p.id}, {"status", status_name(p.status())}};
        if (p.site()) {
          j["site"] = p.site()->to_string();
        } else {
          j["reason"] = p.reason();
        }
        pps.push_back(std::move(j));
      }
      json trace = json::array();
      for (const auto &e : r.trace) trace.push_back(format_event(e));
      sentences.push_back({{"index", r.state.index},
                           {"outcome", outcome_name(r.outcome)},
                           {"module_calls", r.module_calls},
                           {"anaphors", std::move(anaphors)},
                           {"pps", std::move(pps)},
                           {"trace", std::move(trace)}});
    }
    json focus = json::array();
    for (const auto &e : results[i].discourse.focus_list) {
      focus.push_back(e.entity);
    }
    list.push_back({{"id", docs[i].id},
                    {"sentences", std::move(sentences)},
                    {"focus", std::move(focus)}});
  }
  return json{{"documents", std::move(list)}}.dump(2) + "\n";
}

}  // namespace coresolve
