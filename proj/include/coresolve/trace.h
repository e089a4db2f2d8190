#ifndef CORESOLVE_TRACE_H_
#define CORESOLVE_TRACE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coresolve {

enum class Module { kAnaphora, kAttachment };
enum class Action { kResolve, kAttach, kSkip, kUnresolvable, kUnattached };

std::string_view module_name(Module m);
std::string_view action_name(Action a);
std::optional<Module> parse_module(std::string_view s);
std::optional<Action> parse_action(std::string_view s);

// Everything except SKIP decides the target for good.
inline bool is_terminal(Action a) { return a != Action::kSkip; }

// One scheduler action on one anaphor or PP.
struct TraceEvent {
  int pass_number = 0;  // 1-based
  Module module = Module::kAnaphora;
  std::string target;
  Action action = Action::kSkip;
  std::string detail;   // antecedent, site or reason

  bool operator==(const TraceEvent &) const = default;
};

using Trace = std::vector<TraceEvent>;

// "pass=2 module=ATTACHMENT action=ATTACH target=p3 detail=f_surge.THEME"
std::string format_event(const TraceEvent &e);

// Inverse of format_event. Returns nullopt on malformed lines.
std::optional<TraceEvent> parse_event(std::string_view line);

}  // namespace coresolve

#endif  // CORESOLVE_TRACE_H_
