#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "levywalk/ensemble.hpp"
#include "levywalk/limit.hpp"
#include "levywalk/sampling.hpp"
#include "levywalk/walk.hpp"

namespace levywalk {

enum class ModelKind { lw, olw, glw, golw, limit_stable, limit_distributed };
enum class OutputFormat { csv, binary, auto_select };

std::string_view to_string(ModelKind kind);
std::string_view to_string(OutputFormat format);
bool is_limit(ModelKind kind);
bool is_distributed(ModelKind kind);

/// "point", "symmetric", "uniform" or "atoms:u1,u2@w;..." (see DirectionMeasure::describe).
DirectionMeasure parse_direction(std::size_t dim, std::string_view text);

/// Rows above which auto format switches ensembles to binary frames.
inline constexpr std::size_t kBinaryRowThreshold = 1'000'000;

/// Run configuration, read from an INI file:
///
///   [model]  kind, scenario, alpha | gamma + b, direction, dim, n
///   [run]    horizon, times, paths, eps, tau_max, seed, threads
///   [output] dir, prefix, format, write_paths
///   [verify] suite
///
/// Precedence: file < environment (LEVYWALK_SEED, LEVYWALK_THREADS) < --set overrides.
struct RunConfig {
  ModelKind model = ModelKind::lw;
  std::optional<Scenario> scenario;  // limit models only
  std::optional<double> alpha;
  std::optional<double> gamma;
  std::optional<double> b;
  std::string direction = "point";
  std::size_t dim = 1;
  std::optional<double> n;  // pre-limit scale of glw / golw

  double horizon = 1.0;
  std::vector<double> times{1.0};
  std::optional<std::size_t> paths;
  std::optional<double> eps;
  double tau_max = 1.0;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: default_thread_count()

  std::filesystem::path output_dir = ".";
  std::string prefix = "run";
  OutputFormat format = OutputFormat::auto_select;
  bool write_paths = false;

  std::string suite;

  bool operator==(const RunConfig&) const = default;

  std::size_t paths_or_default() const { return paths.value_or(1000); }
  double eps_or_default() const { return eps.value_or(1e-3); }
  unsigned effective_threads() const;

  DirectionMeasure direction_measure() const { return parse_direction(dim, direction); }
  /// Walk model for lw / olw / glw / golw configs.
  WalkModel walk_model() const;
  /// Limit model for limit-* configs.
  LimitModel limit_model() const;
};

/// Parses INI text; `overrides` are "section.key=value" strings applied after
/// the environment. Validates every field and throws ConfigError naming the
/// offending one.
RunConfig parse_config(std::istream& in, const std::vector<std::string>& overrides = {},
                       bool use_environment = true);
RunConfig load_config(const std::filesystem::path& file,
                      const std::vector<std::string>& overrides = {}, bool use_environment = true);
/// Config built from overrides alone.
RunConfig config_from_overrides(const std::vector<std::string>& overrides,
                                bool use_environment = true);

/// Canonical INI text; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Throws ConfigError with a field-level message on the first invalid entry.
/// Parsing checks ranges only; commands that build a model also require its
/// parameters (`require_model`).
void validate(const RunConfig& config, bool require_model = true);

}  // namespace levywalk
