#pragma once

#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include "levywalk/config.hpp"

namespace levywalk {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitVerification = 3,
  kExitIo = 4,
};

/// Status for an exception escaping a command: ConfigError, InputError,
/// DomainError and SingularConfigurationError -> 2, IoError -> 4, else 1.
int exit_code_for(const std::exception& e);

struct CommandResult {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> outputs;  // data files, manifest excluded
  std::filesystem::path manifest;
};

/// Walk ensembles at config.times: <prefix>_ensemble.csv (or .lwbf), with
/// <prefix>_paths.* when write_paths, plus <prefix>_manifest.json.
CommandResult cmd_simulate(const RunConfig& config);

/// Limit-process ensembles; <prefix>_jumps.* holds the jump lists when write_paths.
CommandResult cmd_limit(const RunConfig& config);

/// Runs config.suite: <prefix>_<suite>.json and .csv, plus the manifest.
/// Exit status 3 when a gating record fails.
CommandResult cmd_verify(const RunConfig& config);

/// Merges manifests, ensemble files and verification reports into
/// <prefix>_msd.csv, <prefix>_ecf.csv, <prefix>_distance.csv and
/// <prefix>_records.csv. ECF rows use k = c e_1 for c in `kscale`.
CommandResult cmd_report(const std::vector<std::filesystem::path>& inputs,
                         const std::filesystem::path& out_dir, const std::string& prefix,
                         const std::vector<double>& kscale = {0.5, 1.0, 2.0});

}  // namespace levywalk
