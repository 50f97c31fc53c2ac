#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "levywalk/rng.hpp"

namespace levywalk {

/// Waiting times above this value are clamped so coupled jump vectors and
/// their running sums stay finite. The survival laws below are exact for
/// every t below the cap.
inline constexpr double kMaxWaitingTime = 1e300;

/// Tail exponent alpha in (0, 1) of an exact Pareto law P(T > t) = t^-alpha, t >= 1.
class HeavyTailLaw {
 public:
  explicit HeavyTailLaw(double alpha);
  double alpha() const noexcept { return alpha_; }

 private:
  double alpha_;
};

struct RegularVariationProbe {
  double t;
  double lambda;
  double ratio;     // p(lambda t) / p(t)
  double expected;  // lambda^(gamma - 1)
  bool within_tolerance;
};

/// Outcome of checking the two hypotheses placed on the mixing density.
struct MixingReport {
  bool regular_variation_ok = false;  // all probes within 1%
  bool integrable = false;            // int_0^1 p(beta)/(1-beta) dbeta < inf
  bool valid = false;
  std::vector<RegularVariationProbe> probes;
  std::string message;
};

/// Checks a Beta(gamma, b) mixing density. Never throws.
MixingReport validate_mixing_density(double gamma, double b);

/// Beta(gamma, b) density p(beta) ~ beta^(gamma-1) (1-beta)^(b-1) on (0, 1).
/// Regularly varying at zero with exponent gamma - 1; the integrability
/// condition int p(beta)/(1-beta) dbeta < inf holds iff b > 1.
class MixingDensity {
 public:
  /// Throws ConfigError when validate_mixing_density() reports invalid.
  MixingDensity(double gamma, double b);

  double gamma() const noexcept { return gamma_; }
  double b() const noexcept { return b_; }
  /// log B(gamma, b)
  double log_beta_function() const noexcept { return log_beta_; }

  double pdf(double beta) const;
  double cdf(double beta) const;
  double mean() const noexcept { return gamma_ / (gamma_ + b_); }

 private:
  double gamma_;
  double b_;
  double log_beta_;
};

/// Law of the jump directions: finitely many weighted atoms on the unit
/// sphere, or the uniform law on S^(d-1).
class DirectionMeasure {
 public:
  struct Atom {
    std::vector<double> u;
    double weight;
  };

  /// Atoms must have unit norm and positive weights summing to one (both to 1e-12).
  static DirectionMeasure discrete(std::size_t dim, const std::vector<Atom>& atoms);
  static DirectionMeasure uniform(std::size_t dim);
  /// Point mass at +e_1.
  static DirectionMeasure point(std::size_t dim);
  /// Half mass on each of +e_1 and -e_1.
  static DirectionMeasure symmetric_axis(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  bool is_uniform() const noexcept { return uniform_; }
  std::size_t atom_count() const noexcept { return weights_.size(); }
  std::span<const double> atom(std::size_t j) const {
    return {directions_.data() + j * dim_, dim_};
  }
  double weight(std::size_t j) const { return weights_[j]; }

  /// Mean direction int u Lambda(du).
  std::vector<double> mean_direction() const;

  /// Atoms used to integrate against this measure: the atoms themselves for
  /// discrete measures; a deterministic sphere rule for uniform ones
  /// (equispaced circle nodes for d = 2, the 26-point Lebedev rule for d = 3).
  DirectionMeasure quadrature_rule(std::size_t circle_nodes = 64) const;

  /// Text form used by configuration files, e.g. "atoms:1,0@0.5;-1,0@0.5" or "uniform".
  std::string describe() const;

 private:
  DirectionMeasure() = default;

  std::size_t dim_ = 0;
  bool uniform_ = false;
  std::vector<double> directions_;  // atom_count x dim, row-major
  std::vector<double> weights_;
};

/// Inversion T = u^(-1/alpha).
double pareto_waiting_from_uniform(double alpha, double u);
/// P(T > t) for the exact Pareto law.
double pareto_survival(double alpha, double t);
double sample_pareto_waiting(const HeavyTailLaw& law, RngStream& rng);

/// Inversion T = (n u)^(-1/beta).
double conditional_waiting_from_uniform(double n, double beta, double u);
/// P(T > t | B = beta): 1 below n^(-1/beta), n^-1 t^-beta above.
double conditional_waiting_survival(double n, double beta, double t);
double sample_conditional_waiting(double n, double beta, RngStream& rng);

double sample_mixing_exponent(const MixingDensity& p, RngStream& rng);

/// Writes a unit vector into `out` (size dim()).
void sample_direction(const DirectionMeasure& lambda, RngStream& rng, std::span<double> out);
std::vector<double> sample_direction(const DirectionMeasure& lambda, RngStream& rng);

}  // namespace levywalk
