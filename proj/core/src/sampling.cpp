#include "levywalk/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>

#include "levywalk/errors.hpp"

namespace levywalk {

namespace {

constexpr double kUnitTolerance = 1e-12;

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

HeavyTailLaw::HeavyTailLaw(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("tail exponent alpha must lie in (0, 1), got " + format_number(alpha));
  }
}

MixingReport validate_mixing_density(double gamma, double b) {
  MixingReport report;
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    report.message = "mixing density requires gamma > 0, got gamma=" + format_number(gamma);
    return report;
  }
  if (!std::isfinite(b)) {
    report.message = "mixing density requires finite b, got b=" + format_number(b);
    return report;
  }

  // p(lambda t)/p(t) for the Beta family; the normalizer cancels.
  for (double t : {1e-3, 1e-5}) {
    for (double lambda : {0.5, 2.0}) {
      RegularVariationProbe probe;
      probe.t = t;
      probe.lambda = lambda;
      probe.expected = std::pow(lambda, gamma - 1.0);
      probe.ratio = probe.expected * std::pow((1.0 - lambda * t) / (1.0 - t), b - 1.0);
      probe.within_tolerance = std::abs(probe.ratio / probe.expected - 1.0) <= 0.01;
      report.probes.push_back(probe);
    }
  }
  report.regular_variation_ok = std::all_of(report.probes.begin(), report.probes.end(),
                                            [](const auto& p) { return p.within_tolerance; });

  // int_0^1 beta^(gamma-1) (1-beta)^(b-2) dbeta converges iff b > 1.
  report.integrable = b > 1.0;
  report.valid = report.integrable;
  if (!report.integrable) {
    report.message =
        "mixing density violates the integrability condition int_0^1 p(beta)/(1-beta) dbeta < inf "
        "(requires b > 1, got b=" + format_number(b) + ")";
  } else if (!report.regular_variation_ok) {
    report.message = "regular-variation ratio outside 1% at the finite probe points";
  }
  return report;
}

MixingDensity::MixingDensity(double gamma, double b) : gamma_(gamma), b_(b) {
  const MixingReport report = validate_mixing_density(gamma, b);
  if (!report.valid) throw ConfigError(report.message);
  log_beta_ = std::lgamma(gamma) + std::lgamma(b) - std::lgamma(gamma + b);
}

double MixingDensity::pdf(double beta) const {
  if (!(beta > 0.0 && beta < 1.0)) return 0.0;
  return std::exp((gamma_ - 1.0) * std::log(beta) + (b_ - 1.0) * std::log1p(-beta) - log_beta_);
}

double MixingDensity::cdf(double beta) const {
  if (beta <= 0.0) return 0.0;
  if (beta >= 1.0) return 1.0;
  return boost::math::ibeta(gamma_, b_, beta);
}

// --- directions -----------------------------------------------------------

DirectionMeasure DirectionMeasure::discrete(std::size_t dim, const std::vector<Atom>& atoms) {
  if (dim == 0) throw ConfigError("direction measure needs dimension >= 1");
  if (atoms.empty()) throw ConfigError("direction measure needs at least one atom");
  DirectionMeasure m;
  m.dim_ = dim;
  double total = 0.0;
  for (const auto& a : atoms) {
    if (a.u.size() != dim) {
      throw ConfigError("direction atom has " + std::to_string(a.u.size()) +
                        " components, expected " + std::to_string(dim));
    }
    const double norm = std::sqrt(std::inner_product(a.u.begin(), a.u.end(), a.u.begin(), 0.0));
    if (std::abs(norm - 1.0) > kUnitTolerance) {
      throw ConfigError("direction atom is not a unit vector (norm " + format_number(norm) + ")");
    }
    if (!(a.weight > 0.0)) throw ConfigError("direction atom weights must be positive");
    total += a.weight;
    m.directions_.insert(m.directions_.end(), a.u.begin(), a.u.end());
    m.weights_.push_back(a.weight);
  }
  if (std::abs(total - 1.0) > kUnitTolerance) {
    throw ConfigError("direction atom weights sum to " + format_number(total) + ", expected 1");
  }
  return m;
}

DirectionMeasure DirectionMeasure::uniform(std::size_t dim) {
  if (dim == 0) throw ConfigError("direction measure needs dimension >= 1");
  DirectionMeasure m;
  m.dim_ = dim;
  m.uniform_ = true;
  return m;
}

DirectionMeasure DirectionMeasure::point(std::size_t dim) {
  std::vector<double> e1(dim, 0.0);
  if (dim > 0) e1[0] = 1.0;
  return discrete(dim, {{e1, 1.0}});
}

DirectionMeasure DirectionMeasure::symmetric_axis(std::size_t dim) {
  std::vector<double> plus(dim, 0.0), minus(dim, 0.0);
  if (dim > 0) {
    plus[0] = 1.0;
    minus[0] = -1.0;
  }
  return discrete(dim, {{plus, 0.5}, {minus, 0.5}});
}

std::vector<double> DirectionMeasure::mean_direction() const {
  std::vector<double> mean(dim_, 0.0);
  if (uniform_) return mean;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    for (std::size_t c = 0; c < dim_; ++c) mean[c] += weights_[j] * directions_[j * dim_ + c];
  }
  return mean;
}

DirectionMeasure DirectionMeasure::quadrature_rule(std::size_t circle_nodes) const {
  if (!uniform_) return *this;
  std::vector<Atom> atoms;
  if (dim_ == 1) {
    atoms = {{{1.0}, 0.5}, {{-1.0}, 0.5}};
  } else if (dim_ == 2) {
    if (circle_nodes < 3) throw ConfigError("circle quadrature needs at least 3 nodes");
    const double w = 1.0 / static_cast<double>(circle_nodes);
    for (std::size_t j = 0; j < circle_nodes; ++j) {
      const double phi = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(circle_nodes);
      atoms.push_back({{std::cos(phi), std::sin(phi)}, w});
    }
  } else if (dim_ == 3) {
    // Lebedev 26-point rule, exact for spherical polynomials of degree 7.
    const double a1 = 1.0 / 21.0, a2 = 4.0 / 105.0, a3 = 9.0 / 280.0;
    const double r2 = 1.0 / std::sqrt(2.0), r3 = 1.0 / std::sqrt(3.0);
    for (int axis = 0; axis < 3; ++axis) {
      for (double sgn : {1.0, -1.0}) {
        std::vector<double> u(3, 0.0);
        u[axis] = sgn;
        atoms.push_back({u, a1});
      }
    }
    for (int zero = 0; zero < 3; ++zero) {
      for (double s1 : {1.0, -1.0}) {
        for (double s2 : {1.0, -1.0}) {
          std::vector<double> u(3, 0.0);
          int slot = 0;
          for (int c = 0; c < 3; ++c) {
            if (c == zero) continue;
            u[c] = (slot++ == 0 ? s1 : s2) * r2;
          }
          atoms.push_back({u, a2});
        }
      }
    }
    for (double sx : {1.0, -1.0})
      for (double sy : {1.0, -1.0})
        for (double sz : {1.0, -1.0}) atoms.push_back({{sx * r3, sy * r3, sz * r3}, a3});
  } else {
    throw ConfigError("no deterministic sphere rule for uniform directions in d=" +
                      std::to_string(dim_) + " (supported: d <= 3)");
  }
  // Renormalize against rounding in the rule weights.
  double total = 0.0;
  for (const auto& a : atoms) total += a.weight;
  for (auto& a : atoms) a.weight /= total;
  return discrete(dim_, atoms);
}

std::string DirectionMeasure::describe() const {
  if (uniform_) return "uniform";
  std::ostringstream os;
  os.precision(17);
  os << "atoms:";
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    if (j > 0) os << ';';
    for (std::size_t c = 0; c < dim_; ++c) {
      if (c > 0) os << ',';
      os << directions_[j * dim_ + c];
    }
    os << '@' << weights_[j];
  }
  return os.str();
}

// --- samplers -------------------------------------------------------------

double pareto_waiting_from_uniform(double alpha, double u) {
  return std::min(std::pow(u, -1.0 / alpha), kMaxWaitingTime);
}

double pareto_survival(double alpha, double t) {
  return t < 1.0 ? 1.0 : std::pow(t, -alpha);
}

double sample_pareto_waiting(const HeavyTailLaw& law, RngStream& rng) {
  return pareto_waiting_from_uniform(law.alpha(), rng.uniform01());
}

double conditional_waiting_from_uniform(double n, double beta, double u) {
  // exp form avoids overflow of (n u)^(-1/beta) before the clamp.
  const double log_t = -(std::log(n) + std::log(u)) / beta;
  return log_t >= std::log(kMaxWaitingTime) ? kMaxWaitingTime : std::exp(log_t);
}

double conditional_waiting_survival(double n, double beta, double t) {
  const double lower = std::pow(n, -1.0 / beta);
  return t < lower ? 1.0 : std::pow(t, -beta) / n;
}

double sample_conditional_waiting(double n, double beta, RngStream& rng) {
  return conditional_waiting_from_uniform(n, beta, rng.uniform01());
}

// Cheng (1978): algorithm BB when both shapes exceed 1, BC otherwise. Two
// uniforms per attempt; the gamma-ratio construction needs four times the
// random words and dominated generalized-walk cost.
double sample_mixing_exponent(const MixingDensity& p, RngStream& rng) {
  constexpr double kLog4 = 1.3862943611198906;
  const double lo = std::min(p.gamma(), p.b());
  const double hi = std::max(p.gamma(), p.b());
  const double alpha = lo + hi;
  const bool gamma_is_hi = p.gamma() >= p.b();
  const auto finish = [&](double w, double other) {
    return gamma_is_hi == (other == lo) ? w / (other + w) : other / (other + w);
  };
  const auto expand = [](double scale, double v) {
    return v >= std::log(std::numeric_limits<double>::max() / scale)
               ? std::numeric_limits<double>::max()
               : scale * std::exp(v);
  };
  for (;;) {
    double beta = 0.0;
    if (lo > 1.0) {
      const double bb = std::sqrt((alpha - 2.0) / (2.0 * lo * hi - alpha));
      const double gg = lo + 1.0 / bb;
      for (;;) {
        const double u1 = rng.uniform01();
        const double u2 = rng.uniform01();
        const double v = bb * std::log(u1 / (1.0 - u1));
        const double w = expand(lo, v);
        const double z = u1 * u1 * u2;
        const double r = gg * v - kLog4;
        const double s = lo + r - w;
        if (s + 2.609438 >= 5.0 * z) { beta = finish(w, hi); break; }
        const double t = std::log(z);
        if (s > t || r + alpha * std::log(alpha / (hi + w)) >= t) { beta = finish(w, hi); break; }
      }
    } else {
      const double bb = 1.0 / lo;
      const double delta = 1.0 + hi - lo;
      const double k1 = delta * (0.0138889 + 0.0416667 * lo) / (hi * bb - 0.777778);
      const double k2 = 0.25 + (0.5 + 0.25 / delta) * lo;
      for (;;) {
        const double u1 = rng.uniform01();
        const double u2 = rng.uniform01();
        double z = 0.0;
        if (u1 < 0.5) {
          const double y = u1 * u2;
          z = u1 * y;
          if (0.25 * u2 + z - y >= k1) continue;
        } else {
          z = u1 * u1 * u2;
          if (z <= 0.25) {
            beta = finish(expand(hi, bb * std::log(u1 / (1.0 - u1))), lo);
            break;
          }
          if (z >= k2) continue;
        }
        const double v = bb * std::log(u1 / (1.0 - u1));
        const double w = expand(hi, v);
        if (alpha * (std::log(alpha / (lo + w)) + v) - kLog4 >= std::log(z)) {
          beta = finish(w, lo);
          break;
        }
      }
    }
    if (beta > 0.0 && beta < 1.0) return beta;
  }
}

void sample_direction(const DirectionMeasure& lambda, RngStream& rng, std::span<double> out) {
  const std::size_t d = lambda.dim();
  if (lambda.is_uniform()) {
    if (d == 1) {
      out[0] = (rng() >> 63) != 0 ? 1.0 : -1.0;
      return;
    }
    std::normal_distribution<double> normal;
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        out[c] = normal(rng);
        norm2 += out[c] * out[c];
      }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t c = 0; c < d; ++c) out[c] *= inv;
    return;
  }
  std::size_t j = 0;
  if (lambda.atom_count() > 1) {
    const double u = rng.uniform01();
    double acc = 0.0;
    for (j = 0; j + 1 < lambda.atom_count(); ++j) {
      acc += lambda.weight(j);
      if (u < acc) break;
    }
  }
  const auto a = lambda.atom(j);
  std::copy(a.begin(), a.end(), out.begin());
}

std::vector<double> sample_direction(const DirectionMeasure& lambda, RngStream& rng) {
  std::vector<double> out(lambda.dim());
  sample_direction(lambda, rng, out);
  return out;
}

}  // namespace levywalk
