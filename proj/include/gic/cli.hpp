#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gic/instance.hpp"
#include "gic/solution.hpp"

namespace gic {

/// Outcome of one scheme run as shown by `solve` and `table`.
struct SchemeRun {
  std::string scheme;
  std::optional<SchemeSolution> solution;  ///< empty when skipped (cap/budget)
  double time_ms = 0;
  bool verified = false;
  std::string note;  ///< skip reason or simulator failure
};

struct RunReport {
  std::string instance;  ///< descriptor, e.g. "m=4 users=5"
  std::uint64_t seed = 0;
  std::vector<SchemeRun> runs;

  /// True when every run completed and passed the simulator.
  bool ok() const;
};

/// One `key=value` record line per run.
std::string to_records(const RunReport& report);

struct Record {
  std::string scheme;
  int rate = 0;
  double time_ms = 0;
  bool verified = false;
};

/// Parses the lines written by to_records; lines of skipped runs are kept
/// with rate -1.
std::vector<Record> parse_records(const std::string& text);

/// Entry point of the `gic` tool. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gic
