#include "levywalk/limit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "levywalk/errors.hpp"

namespace levywalk {

std::string_view describe_kind(const LevyDescriptor& nu) {
  return std::holds_alternative<StableMeasure>(nu) ? "stable" : "distributed";
}

std::string_view to_string(Scenario s) {
  return s == Scenario::wait_first ? "wait-first" : "jump-first";
}

namespace {

void require_positive_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ConfigError("truncation cutoff eps must be positive");
}

// int_0^inf t^(-a) / (1 + 2 t^2) dt for a in (0, 1).
double drift_kernel(double a) {
  return std::pow(2.0, (a - 1.0) / 2.0) * M_PI / (2.0 * std::cos(a * M_PI / 2.0));
}

constexpr std::size_t kMaxProposals = 1'000'000;
constexpr std::size_t kEnvelopeCells = 64;

// Piecewise envelope of q(beta) = beta^(g-1) (1-beta)^(b-1) eps^(-beta) over
// 64 equal cells. Cell 0 proposes from beta^(g-1) in closed form; the others
// propose uniformly under the product of the per-factor suprema. Exact, and
// acceptance stays high for any eps, unlike rejection against p alone whose
// acceptance decays like 1 / log(1/eps)^b.
struct TiltEnvelope {
  double gamma = 0.0, b = 0.0, eps = 0.0;
  double log_inv_eps = 0.0;
  std::array<double, kEnvelopeCells> cumulative{};
  std::array<double, kEnvelopeCells> log_bound{};
};

double log_tilted(const TiltEnvelope& env, double beta) {
  return (env.gamma - 1.0) * std::log(beta) + (env.b - 1.0) * std::log1p(-beta) +
         env.log_inv_eps * beta;
}

void build_envelope(TiltEnvelope& env, const MixingDensity& p, double eps) {
  env.gamma = p.gamma();
  env.b = p.b();
  env.eps = eps;
  env.log_inv_eps = -std::log(eps);
  const double h = 1.0 / kEnvelopeCells;
  const double L = env.log_inv_eps;
  std::array<double, kEnvelopeCells> log_mass{};
  // cell 0: int_0^h beta^(g-1) dbeta times the sup of the remaining factors
  env.log_bound[0] = std::max(0.0, L * h);
  log_mass[0] = env.gamma * std::log(h) - std::log(env.gamma) + env.log_bound[0];
  for (std::size_t j = 1; j < kEnvelopeCells; ++j) {
    const double left = j * h;
    const double right = (j + 1) * h;
    env.log_bound[j] = (env.gamma - 1.0) * std::log(env.gamma < 1.0 ? left : right) +
                       (env.b - 1.0) * std::log1p(-left) + std::max(L * left, L * right);
    log_mass[j] = env.log_bound[j] + std::log(h);
  }
  const double top = *std::max_element(log_mass.begin(), log_mass.end());
  double total = 0.0;
  for (std::size_t j = 0; j < kEnvelopeCells; ++j) {
    total += std::exp(log_mass[j] - top);
    env.cumulative[j] = total;
  }
  for (auto& c : env.cumulative) c /= total;
}

// Exponent beta' with density proportional to eps^(-beta) p(beta).
double sample_tilted_exponent(const MixingDensity& p, double eps, RngStream& rng) {
  thread_local TiltEnvelope env;
  if (env.gamma != p.gamma() || env.b != p.b() || env.eps != eps) build_envelope(env, p, eps);
  const double h = 1.0 / kEnvelopeCells;
  for (std::size_t i = 0; i < kMaxProposals; ++i) {
    const double u = rng.uniform01();
    const auto j = static_cast<std::size_t>(
        std::upper_bound(env.cumulative.begin(), env.cumulative.end() - 1, u) -
        env.cumulative.begin());
    double beta = 0.0;
    double log_accept = 0.0;
    if (j == 0) {
      beta = h * std::pow(rng.uniform01(), 1.0 / env.gamma);
      if (!(beta > 0.0)) continue;
      log_accept = (env.b - 1.0) * std::log1p(-beta) + env.log_inv_eps * beta - env.log_bound[0];
    } else {
      beta = (static_cast<double>(j) + rng.uniform01()) * h;
      if (!(beta < 1.0)) continue;
      log_accept = log_tilted(env, beta) - env.log_bound[j];
    }
    if (std::log(rng.uniform01()) < log_accept) return beta;
  }
  throw ConfigError("tilted mixing-exponent sampler exceeded 10^6 proposals");
}

void append_jumps(CoupledJumpList& list, const LevyDescriptor& nu, const DirectionMeasure& lambda,
                  double from, double to, RngStream& rng) {
  const double mean = tail_mass(nu, list.cutoff) * (to - from);
  std::poisson_distribution<long long> poisson(mean);
  const auto count = static_cast<std::size_t>(mean > 0.0 ? poisson(rng) : 0);

  struct Jump {
    double epoch;
    double magnitude;
    std::size_t slot;
  };
  std::vector<Jump> jumps(count);
  std::vector<double> dirs(count * list.dim);
  for (std::size_t i = 0; i < count; ++i) {
    jumps[i].epoch = from + (to - from) * rng.uniform01();
    jumps[i].magnitude = sample_jump_magnitude(nu, list.cutoff, rng);
    jumps[i].slot = i;
    sample_direction(lambda, rng, std::span<double>(dirs.data() + i * list.dim, list.dim));
  }
  std::sort(jumps.begin(), jumps.end(),
            [](const Jump& a, const Jump& b) { return a.epoch < b.epoch; });
  for (const auto& j : jumps) {
    list.epochs.push_back(j.epoch);
    list.magnitudes.push_back(j.magnitude);
    list.directions.insert(list.directions.end(), dirs.begin() + static_cast<std::ptrdiff_t>(j.slot * list.dim),
                           dirs.begin() + static_cast<std::ptrdiff_t>((j.slot + 1) * list.dim));
  }
  list.tau_max = to;
}

}  // namespace

double tail_mass(const LevyDescriptor& nu, double eps, const QuadOptions& opts) {
  require_positive_eps(eps);
  if (const auto* st = std::get_if<StableMeasure>(&nu)) {
    const double a = st->law.alpha();
    return std::pow(eps, -a) / std::tgamma(1.0 - a);
  }
  const auto& p = std::get<DistributedMeasure>(nu).mixing;
  const double log_eps = std::log(eps);
  return integrate_mixing<double>(
             p, [&](double beta) { return std::exp(-beta * log_eps) * (1.0 - beta); }, opts)
      .value;
}

double small_jump_drift(const LevyDescriptor& nu, double eps, const QuadOptions& opts) {
  require_positive_eps(eps);
  if (const auto* st = std::get_if<StableMeasure>(&nu)) {
    const double a = st->law.alpha();
    return a * std::pow(eps, 1.0 - a) / ((1.0 - a) * std::tgamma(1.0 - a));
  }
  const auto& p = std::get<DistributedMeasure>(nu).mixing;
  const double log_eps = std::log(eps);
  // beta/(1-beta) eps^(1-beta) p(beta), regularized by (1 - beta).
  return integrate_mixing<double>(
             p, [&](double beta) { return beta * std::exp((1.0 - beta) * log_eps); }, opts)
      .value;
}

double small_jump_second_moment(const LevyDescriptor& nu, double eps, const QuadOptions& opts) {
  require_positive_eps(eps);
  if (const auto* st = std::get_if<StableMeasure>(&nu)) {
    const double a = st->law.alpha();
    return a * std::pow(eps, 2.0 - a) / ((2.0 - a) * std::tgamma(1.0 - a));
  }
  const auto& p = std::get<DistributedMeasure>(nu).mixing;
  const double log_eps = std::log(eps);
  return integrate_mixing<double>(
             p,
             [&](double beta) {
               return beta / (2.0 - beta) * std::exp((2.0 - beta) * log_eps) * (1.0 - beta);
             },
             opts)
      .value;
}

double truncation_bias_bound(const LevyDescriptor& nu, double eps, double z_abs,
                             const QuadOptions& opts) {
  return 0.5 * z_abs * z_abs * small_jump_second_moment(nu, eps, opts);
}

LevyTriplet make_levy_triplet(const LevyDescriptor& nu, const DirectionMeasure& lambda,
                              const QuadOptions& opts) {
  // x = (u t, t) has |x|^2 = 2 t^2, so the drift is (u_bar, 1) * int t/(1+2t^2) nu(dt).
  double radial = 0.0;
  if (const auto* st = std::get_if<StableMeasure>(&nu)) {
    const double a = st->law.alpha();
    radial = a / std::tgamma(1.0 - a) * drift_kernel(a);
  } else {
    const auto& p = std::get<DistributedMeasure>(nu).mixing;
    // beta * kernel(beta) has a simple pole at 1; regularize by (1 - beta).
    radial = integrate_mixing<double>(
                 p, [](double beta) { return beta * drift_kernel(beta) * (1.0 - beta); }, opts)
                 .value;
  }
  const std::size_t d = lambda.dim();
  LevyTriplet triplet{std::vector<double>(d + 1, 0.0), std::vector<double>((d + 1) * (d + 1), 0.0),
                      nu, lambda};
  const auto ubar = lambda.mean_direction();
  for (std::size_t c = 0; c < d; ++c) triplet.drift[c] = ubar[c] * radial;
  triplet.drift[d] = radial;
  return triplet;
}

double sample_jump_magnitude(const LevyDescriptor& nu, double eps, RngStream& rng) {
  double exponent = 0.0;
  if (const auto* st = std::get_if<StableMeasure>(&nu)) {
    exponent = st->law.alpha();
  } else {
    exponent = sample_tilted_exponent(std::get<DistributedMeasure>(nu).mixing, eps, rng);
  }
  // Pareto(exponent) with scale eps.
  const double log_m = std::log(eps) - std::log(rng.uniform01()) / exponent;
  return log_m >= std::log(kMaxWaitingTime) ? kMaxWaitingTime : std::exp(log_m);
}

void CoupledJumpList::finalize() {
  const std::size_t n = size();
  cum_s.assign(n + 1, 0.0);
  cum_l.assign((n + 1) * dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    cum_s[i + 1] = cum_s[i] + magnitudes[i];
    for (std::size_t c = 0; c < dim; ++c) {
      cum_l[(i + 1) * dim + c] = cum_l[i * dim + c] + directions[i * dim + c] * magnitudes[i];
    }
  }
}

namespace {

// Number of jumps with epoch <= tau (or < tau when `strict`).
std::size_t jumps_before(const CoupledJumpList& list, double tau, bool strict) {
  const auto it = strict ? std::lower_bound(list.epochs.begin(), list.epochs.end(), tau)
                         : std::upper_bound(list.epochs.begin(), list.epochs.end(), tau);
  return static_cast<std::size_t>(std::distance(list.epochs.begin(), it));
}

void l_from(const CoupledJumpList& list, double tau, std::size_t jumps, std::span<double> out) {
  for (std::size_t c = 0; c < list.dim; ++c) {
    out[c] = list.drift_l[c] * tau + list.cum_l[jumps * list.dim + c];
  }
}

}  // namespace

double CoupledJumpList::s_at(double tau) const {
  return drift_s * tau + cum_s[jumps_before(*this, tau, false)];
}

double CoupledJumpList::s_left(double tau) const {
  return drift_s * tau + cum_s[jumps_before(*this, tau, true)];
}

std::vector<double> CoupledJumpList::l_at(double tau) const {
  std::vector<double> out(dim);
  l_from(*this, tau, jumps_before(*this, tau, false), out);
  return out;
}

std::vector<double> CoupledJumpList::l_left(double tau) const {
  std::vector<double> out(dim);
  l_from(*this, tau, jumps_before(*this, tau, true), out);
  return out;
}

CoupledJumpList simulate_coupled_jumps(const LevyDescriptor& nu, const DirectionMeasure& lambda,
                                       double eps, double tau_max, RngStream& rng) {
  require_positive_eps(eps);
  if (!(tau_max > 0.0)) throw ConfigError("tau_max must be positive");
  CoupledJumpList list;
  list.dim = lambda.dim();
  list.cutoff = eps;
  list.drift_s = small_jump_drift(nu, eps);
  list.drift_l = lambda.mean_direction();
  for (auto& x : list.drift_l) x *= list.drift_s;
  append_jumps(list, nu, lambda, 0.0, tau_max, rng);
  list.finalize();
  return list;
}

void extend_coupled_jumps(CoupledJumpList& list, const LevyDescriptor& nu,
                          const DirectionMeasure& lambda, double new_tau_max, RngStream& rng) {
  if (!(new_tau_max > list.tau_max)) return;
  append_jumps(list, nu, lambda, list.tau_max, new_tau_max, rng);
  list.finalize();
}

CoupledJumpList simulate_coupled_jumps_covering(const LevyDescriptor& nu,
                                                const DirectionMeasure& lambda, double eps,
                                                double level, RngStream& rng, double initial_tau) {
  auto list = simulate_coupled_jumps(nu, lambda, eps, initial_tau, rng);
  while (!(list.s_at(list.tau_max) > level)) {
    extend_coupled_jumps(list, nu, lambda, 2.0 * list.tau_max, rng);
  }
  return list;
}

FirstPassage first_passage(const CoupledJumpList& list, double t) {
  if (!(t >= 0.0)) throw DomainError("first passage level must be non-negative");
  if (!(list.s_at(list.tau_max) > t)) {
    throw CoverageError("subordinator path does not exceed level " + std::to_string(t) +
                        " by tau_max=" + std::to_string(list.tau_max) + "; extend tau_max");
  }
  const std::size_t n = list.size();
  // Smallest i with S(epoch_i) > t; n when no jump carries S over t.
  std::size_t lo = 0, hi = n;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (list.drift_s * list.epochs[mid] + list.cum_s[mid + 1] > t) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const std::size_t i = lo;
  const double prev_epoch = i == 0 ? 0.0 : list.epochs[i - 1];
  if (i < n && list.drift_s * list.epochs[i] + list.cum_s[i] <= t) {
    return {list.epochs[i], i, i};
  }
  // Drift carries S across t strictly between jumps (or after the last one).
  const double next_epoch = i < n ? list.epochs[i] : list.tau_max;
  double tau = (t - list.cum_s[i]) / list.drift_s;
  tau = std::clamp(tau, prev_epoch, next_epoch);
  return {tau, FirstPassage{}.jump, i};
}

double inverse_subordinator(const CoupledJumpList& list, double t) {
  return first_passage(list, t).tau;
}

void limit_position(const CoupledJumpList& list, double t, Scenario scenario,
                    std::span<double> out) {
  const FirstPassage fp = first_passage(list, t);
  const bool include_jump = fp.straddling() && scenario == Scenario::jump_first;
  l_from(list, fp.tau, fp.preceding + (include_jump ? 1 : 0), out);
}

std::vector<double> limit_position(const CoupledJumpList& list, double t, Scenario scenario) {
  std::vector<double> out(list.dim);
  limit_position(list, t, scenario, out);
  return out;
}

}  // namespace levywalk
