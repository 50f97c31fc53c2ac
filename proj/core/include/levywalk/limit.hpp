#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "levywalk/quadrature.hpp"
#include "levywalk/rng.hpp"
#include "levywalk/sampling.hpp"

namespace levywalk {

/// nu(dt) = alpha t^(-alpha-1) / Gamma(1-alpha) dt
struct StableMeasure {
  HeavyTailLaw law;
};
/// nu(dt) = int_0^1 beta t^(-beta-1) p(beta) dbeta dt
struct DistributedMeasure {
  MixingDensity mixing;
};
/// Levy measure of the waiting-time subordinator S.
using LevyDescriptor = std::variant<StableMeasure, DistributedMeasure>;

std::string_view describe_kind(const LevyDescriptor& nu);

enum class Scenario { wait_first, jump_first };
std::string_view to_string(Scenario s);

/// Levy triplet [drift, Q, nu] of the joint process (L, S) in R^(d+1).
/// The joint measure lives on the rays {(u t, t)}: every jump of L equals the
/// concurrent jump of S times a direction drawn from Lambda.
struct LevyTriplet {
  std::vector<double> drift;     // d+1 entries: int x / (1 + |x|^2) nu(dx)
  std::vector<double> gaussian;  // (d+1) x (d+1), identically zero here
  LevyDescriptor measure;
  DirectionMeasure lambda;
};

LevyTriplet make_levy_triplet(const LevyDescriptor& nu, const DirectionMeasure& lambda,
                              const QuadOptions& opts = {});

/// nu((eps, inf)).
double tail_mass(const LevyDescriptor& nu, double eps, const QuadOptions& opts = {});
/// int_0^eps t nu(dt): drift replacing the discarded jumps of S.
double small_jump_drift(const LevyDescriptor& nu, double eps, const QuadOptions& opts = {});
/// int_0^eps t^2 nu(dt).
double small_jump_second_moment(const LevyDescriptor& nu, double eps, const QuadOptions& opts = {});

/// Bound on |E exp(-z S_eps(1)) - E exp(-z S(1))| for Re z >= 0, |z| <= z_abs,
/// where S_eps is the truncated, drift-compensated process:
/// |1 - e^(-zt) - zt| <= |z|^2 t^2 / 2 integrated against nu on (0, eps].
/// Covers the coupled transform with z = s - i<k,u> and the same |z| bound.
double truncation_bias_bound(const LevyDescriptor& nu, double eps, double z_abs,
                             const QuadOptions& opts = {});

/// Finite-jump approximation of (L, S) on [0, tau_max]: the jumps larger
/// than `cutoff` plus compensating drifts for the rest.
struct CoupledJumpList {
  std::size_t dim = 1;
  double tau_max = 0.0;
  double cutoff = 0.0;
  double drift_s = 0.0;
  std::vector<double> drift_l;     // dim
  std::vector<double> epochs;      // sorted, in [0, tau_max]
  std::vector<double> magnitudes;  // > cutoff
  std::vector<double> directions;  // size() x dim

  std::size_t size() const noexcept { return epochs.size(); }
  std::span<const double> direction(std::size_t i) const {
    return {directions.data() + i * dim, dim};
  }

  /// Prefix sums used by the path readers; rebuilt by finalize().
  std::vector<double> cum_s;  // cum_s[i] = sum of magnitudes[0..i)
  std::vector<double> cum_l;  // (size()+1) x dim
  void finalize();

  /// S(tau) (right-continuous) and S(tau-) for tau in [0, tau_max].
  double s_at(double tau) const;
  double s_left(double tau) const;
  std::vector<double> l_at(double tau) const;
  std::vector<double> l_left(double tau) const;
};

/// Compound-Poisson approximation: Poisson(tail_mass * tau_max) jumps, epochs
/// uniform on [0, tau_max], magnitudes from nu restricted to (eps, inf),
/// directions from Lambda. Throws ConfigError if the tilted-exponent sampler
/// needs more than 10^6 proposals for one draw.
CoupledJumpList simulate_coupled_jumps(const LevyDescriptor& nu, const DirectionMeasure& lambda,
                                       double eps, double tau_max, RngStream& rng);

/// Appends independent jumps on (tau_max, new_tau_max].
void extend_coupled_jumps(CoupledJumpList& list, const LevyDescriptor& nu,
                          const DirectionMeasure& lambda, double new_tau_max, RngStream& rng);

/// Simulates on [0, initial_tau] and doubles the horizon until S(tau_max) > level.
CoupledJumpList simulate_coupled_jumps_covering(const LevyDescriptor& nu,
                                                const DirectionMeasure& lambda, double eps,
                                                double level, RngStream& rng,
                                                double initial_tau = 1.0);

/// Magnitude of one jump above eps (exposed for distribution tests).
double sample_jump_magnitude(const LevyDescriptor& nu, double eps, RngStream& rng);

struct FirstPassage {
  double tau = 0.0;
  /// Index of the jump carrying S over the level, or npos when the drift crosses it.
  std::size_t jump = static_cast<std::size_t>(-1);
  /// Number of jumps with epoch strictly before tau.
  std::size_t preceding = 0;
  bool straddling() const noexcept { return jump != static_cast<std::size_t>(-1); }
};

/// tau* = inf{tau >= 0 : S(tau) > t}. Throws CoverageError when S(tau_max) <= t.
FirstPassage first_passage(const CoupledJumpList& list, double t);
double inverse_subordinator(const CoupledJumpList& list, double t);

/// Wait-first: L(tau*-) when a jump straddles t; jump-first: L(tau*).
/// Both read L(tau*) when the drift crosses t.
std::vector<double> limit_position(const CoupledJumpList& list, double t, Scenario scenario);
void limit_position(const CoupledJumpList& list, double t, Scenario scenario, std::span<double> out);

}  // namespace levywalk
