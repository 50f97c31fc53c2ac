#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace levywalk {

/// N positions in R^d observed at a common time t.
class Ensemble {
 public:
  Ensemble(std::size_t dim, double t, std::vector<double> samples,
           std::map<std::string, std::string> meta = {});

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return samples_.size() / dim_; }
  double time() const noexcept { return t_; }
  std::span<const double> row(std::size_t j) const {
    return {samples_.data() + j * dim_, dim_};
  }
  std::span<const double> samples() const noexcept { return samples_; }
  const std::map<std::string, std::string>& meta() const noexcept { return meta_; }

 private:
  std::size_t dim_;
  double t_;
  std::vector<double> samples_;
  std::map<std::string, std::string> meta_;
};

struct CfEstimate {
  std::complex<double> value;
  double std_error = 0.0;
};

struct MeanEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// (1/N) sum exp(i<k, x_j>) with standard error sqrt((1 - |ECF|^2) / N).
CfEstimate empirical_cf(const Ensemble& e, std::span<const double> k);

/// int_0^T e^(-st) f(t) dt on the uniform grid t_m = m T / M
/// (values.size() = M + 1) by the trapezoid rule in f: f is taken piecewise
/// linear and each panel is weighted by the exact integral of e^(-st).
/// Adds the constant-extrapolation tail f(T) e^(-sT) / s.
/// Throws DomainError when Re(s) <= 0.
std::complex<double> numerical_laplace(std::span<const std::complex<double>> values, double T,
                                       std::complex<double> s);
/// The weights w_m with numerical_laplace(f) = sum_m w_m f(t_m).
std::vector<std::complex<double>> laplace_weights(std::size_t M, double T, std::complex<double> s);

/// (1/N) sum |x_j|^2 with standard error.
MeanEstimate msd(const Ensemble& e);

/// Empirical second-moment matrix (d x d, row-major).
std::vector<double> second_moment_matrix(const Ensemble& e);

/// Hill estimate from the m largest order statistics.
double hill_tail_index(std::span<const double> samples, std::size_t m);

/// max over the grid of |ECF_a(k) - ECF_b(k)|.
double ecf_distance(const Ensemble& a, const Ensemble& b,
                    std::span<const std::vector<double>> kgrid);

/// Kolmogorov-Smirnov distance between a sample and a continuous CDF.
template <class Cdf>
double ks_distance(std::vector<double> samples, const Cdf& cdf);

/// CSV exports.
void write_ecf_table(std::ostream& out, const Ensemble& e,
                     std::span<const std::vector<double>> kgrid);
void write_msd_table(std::ostream& out, std::span<const Ensemble> ensembles);

/// Shortest round-trip decimal form, used by every CSV writer.
std::string format_double(double v);

}  // namespace levywalk

#include <algorithm>

namespace levywalk {

template <class Cdf>
double ks_distance(std::vector<double> samples, const Cdf& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace levywalk
