#pragma once

// Subcommand dispatch: each command writes its artifacts and a manifest into
// the output directory.

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "shortck/basin.hpp"
#include "shortck/scenario.hpp"
#include "shortck_cli/config.hpp"

namespace shortck::cli {

enum ExitStatus : int { kSuccess = 0, kDomainFailure = 1, kUsageError = 2 };

struct Artifact {
  std::string file;  // name inside the output directory
  std::uint64_t hash = 0;
};

struct RunOutcome {
  int status = kSuccess;
  std::vector<Artifact> artifacts;  // the manifest last
  std::string summary;              // one line per finding
};

SequenceSpec sequence_spec(const RunConfig& cfg);
/// Family defaults with the [basin] overrides applied.
BasinParams basin_params(const RunConfig& cfg, const MapSequence& seq);
SliceWindow slice_window(const RunConfig& cfg, std::size_t k);

/// Runs the configured command. Domain failures come back as kDomainFailure;
/// usage problems throw ConfigError or std::invalid_argument.
RunOutcome run(const RunConfig& cfg);

/// run() with exceptions mapped to exit codes and messages written to `err`.
int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace shortck::cli
