#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "heraklit/runs.hpp"

namespace heraklit {

// What a finished run looks like to the user: the fired occurrences, where
// the system ended up, and why it stopped.
struct RunReport {
  std::vector<ModeOccurrence> trace;
  Marking final_marking;
  RunTermination reason = RunTermination::Deadlock;
  std::size_t event_count = 0;
  std::size_t condition_count = 0;
};

RunReport make_report(const RecordedRun& r);
std::string report_text(const RunReport& r);
std::string report_json(const RunReport& r);

// Command dispatch for the hkt tool. args excludes the program name.
// Exit codes: 0 success, 1 diagnostics, 2 usage error, 3 exploration bound
// exceeded.
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                std::ostream& err);

}  // namespace heraklit
