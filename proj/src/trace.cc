#include "coresolve/trace.h"

#include <charconv>
#include <map>
#include <sstream>

namespace coresolve {

std::string_view module_name(Module m) {
  return m == Module::kAnaphora ? "ANAPHORA" : "ATTACHMENT";
}

std::string_view action_name(Action a) {
  switch (a) {
    case Action::kResolve: return "RESOLVE";
    case Action::kAttach: return "ATTACH";
    case Action::kSkip: return "SKIP";
    case Action::kUnresolvable: return "UNRESOLVABLE";
    case Action::kUnattached: return "UNATTACHED";
  }
  return "SKIP";
}

std::optional<Module> parse_module(std::string_view s) {
  if (s == "ANAPHORA") return Module::kAnaphora;
  if (s == "ATTACHMENT") return Module::kAttachment;
  return std::nullopt;
}

std::optional<Action> parse_action(std::string_view s) {
  for (Action a : {Action::kResolve, Action::kAttach, Action::kSkip,
                   Action::kUnresolvable, Action::kUnattached}) {
    if (action_name(a) == s) return a;
  }
  return std::nullopt;
}

std::string format_event(const TraceEvent &e) {
  std::ostringstream out;
  out << "pass=" << e.pass_number << " module=" << module_name(e.module)
      << " action=" << action_name(e.action) << " target=" << e.target
      << " detail=" << e.detail;
  return out.str();
}

std::optional<TraceEvent> parse_event(std::string_view line) {
  std::map<std::string, std::string, std::less<>> fields;
  std::istringstream in{std::string(line)};
  std::string word;
  while (in >> word) {
    auto eq = word.find('=');
    if (eq == std::string::npos) return std::nullopt;
    fields[word.substr(0, eq)] = word.substr(eq + 1);
  }
  for (const char *key : {"pass", "module", "action", "target", "detail"}) {
    if (fields.find(key) == fields.end()) return std::nullopt;
  }
  TraceEvent e;
  const std::string &pass = fields["pass"];
  auto [ptr, ec] =
      std::from_chars(pass.data(), pass.data() + pass.size(), e.pass_number);
  if (ec != std::errc() || ptr != pass.data() + pass.size()) {
    return std::nullopt;
  }
  auto module = parse_module(fields["module"]);
  auto action = parse_action(fields["action"]);
  if (!module || !action) return std::nullopt;
  e.module = *module;
  e.action = *action;
  e.target = fields["target"];
  e.detail = fields["detail"];
  return e;
}

}  // namespace coresolve
