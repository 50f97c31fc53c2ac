#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "levywalk/limit.hpp"
#include "levywalk/stats.hpp"
#include "levywalk/walk.hpp"

namespace levywalk {

struct WalkModel {
  WalkKind kind;
  WaitingTimeLaw law;
  DirectionMeasure lambda;
};

struct LimitModel {
  LevyDescriptor nu;
  DirectionMeasure lambda;
  Scenario scenario = Scenario::wait_first;
  double eps = 1e-3;
  /// First simulated operational horizon; doubled until S covers the last time.
  double initial_tau = 1.0;
};

using PathModel = std::variant<WalkModel, LimitModel>;

std::size_t model_dim(const PathModel& model);
/// Stage owning the per-path streams of this model.
Stage model_stage(const PathModel& model);

struct EnsembleOptions {
  std::size_t paths = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// Paths per work unit. Results never depend on it, only memory and scheduling do.
  std::size_t chunk = 256;
};

/// visit(chunk, path, positions) with positions = times.size() x dim, row-major.
/// Calls for different paths may run concurrently; calls for one chunk are
/// sequential and in path order.
using PathVisitor =
    std::function<void(std::size_t chunk, std::size_t path, std::span<const double> positions)>;

/// Simulates every path of the model on its own stream
/// RngStream(seed, stream_id(model_stage(model), path)) and reads its
/// positions at the non-decreasing `times`.
void visit_paths(const PathModel& model, std::span<const double> times,
                 const EnsembleOptions& opts, const PathVisitor& visit);

/// One Ensemble per requested time; row j is path j.
std::vector<Ensemble> build_ensembles(const PathModel& model, std::span<const double> times,
                                      const EnsembleOptions& opts);

/// Laplace transform in t of the ensemble characteristic function on the grid
/// t_m = m T / M: `ecf` holds the mean ECF series (times x kgrid) and
/// `transform` applies numerical_laplace to it for each (k, s) pair. The
/// standard error comes from the spread of the per-path transforms.
struct LaplaceEcf {
  std::vector<double> times;
  std::vector<std::complex<double>> ecf;  // times.size() x kgrid.size()
  std::vector<CfEstimate> transform;      // kgrid.size() x sgrid.size()
};

LaplaceEcf laplace_of_ecf(const PathModel& model, double T, std::size_t M,
                          std::span<const std::vector<double>> kgrid,
                          std::span<const std::complex<double>> sgrid, const EnsembleOptions& opts);

/// E exp(i<k, L(tau)> - s S(tau)) for each probe, from compound-Poisson
/// paths with cutoff eps on streams of Stage::coupled.
struct TransformProbe {
  std::vector<double> k;
  double s = 0.0;
};

std::vector<CfEstimate> coupled_transform_mc(const LevyDescriptor& nu,
                                             const DirectionMeasure& lambda, double eps, double tau,
                                             std::span<const TransformProbe> probes,
                                             const EnsembleOptions& opts);

}  // namespace levywalk
