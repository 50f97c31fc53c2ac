#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace levywalk {

/// One probe of a verification suite: theory value, measured value and the
/// tolerance the absolute (or, where `relative`, relative) error is held to.
struct ProbeRecord {
  std::string model;
  std::string point;
  std::complex<double> theory;
  std::complex<double> value;
  bool complex_valued = true;
  bool relative = false;
  double std_error = 0.0;
  double error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  /// Non-gating records are reported but do not decide the suite verdict.
  bool gating = true;
  std::vector<std::pair<std::string, double>> details;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<ProbeRecord> records;
  std::vector<std::string> notes;

  bool passed() const;
};

struct VerifyOptions {
  std::uint64_t seed = 20261017;
  unsigned threads = 1;
  /// Overrides the suite's ensemble size.
  std::optional<std::size_t> paths;
  /// Overrides the compound-Poisson cutoff (default 1e-3).
  std::optional<double> eps;
  /// Pre-limit scales of the convergence suites (default 1e2, 1e3, 1e4).
  std::vector<double> n_values;
};

const std::vector<std::string>& suite_names();

/// Throws ConfigError listing the available suites when `name` is unknown.
VerificationReport run_suite(std::string_view name, const VerifyOptions& opts);

/// Deterministic JSON (no timestamps); NaN values are written as null.
std::string report_json(const VerificationReport& report);

/// Independent sub-seed for experiment `tag` of a suite.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept;

}  // namespace levywalk
