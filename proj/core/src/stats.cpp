#include "levywalk/stats.hpp"

#include <charconv>
#include <cmath>
#include <utility>
#include <ostream>

#include "levywalk/errors.hpp"

namespace levywalk {

Ensemble::Ensemble(std::size_t dim, double t, std::vector<double> samples,
                   std::map<std::string, std::string> meta)
    : dim_(dim), t_(t), samples_(std::move(samples)), meta_(std::move(meta)) {
  if (dim_ == 0) throw InputError("ensemble dimension must be >= 1");
  if (samples_.size() % dim_ != 0) throw InputError("ensemble rows do not match dimension");
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

CfEstimate empirical_cf(const Ensemble& e, std::span<const double> k) {
  if (e.size() == 0) throw InputError("empirical characteristic function of an empty ensemble");
  if (k.size() != e.dim()) throw InputError("wave vector dimension does not match ensemble");
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < e.size(); ++j) {
    const auto x = e.row(j);
    double phase = 0.0;
    for (std::size_t c = 0; c < k.size(); ++c) phase += k[c] * x[c];
    re += std::cos(phase);
    im += std::sin(phase);
  }
  const double n = static_cast<double>(e.size());
  const std::complex<double> value(re / n, im / n);
  const double var = std::max(0.0, 1.0 - std::norm(value));
  return {value, std::sqrt(var / n)};
}

namespace {

// int_0^1 e^(-z u) (1 - u) du and int_0^1 e^(-z u) u du.
std::pair<std::complex<double>, std::complex<double>> panel_weights(std::complex<double> z) {
  if (std::abs(z) < 0.5) {
    // sum (-z)^n / (n+2)!  and  sum (n+1) (-z)^n / (n+2)!
    std::complex<double> a = 0.0, b = 0.0, term = 0.5;
    for (int n = 0; n < 20; ++n) {
      a += term;
      b += static_cast<double>(n + 1) * term;
      term *= -z / static_cast<double>(n + 3);
    }
    return {a, b};
  }
  const std::complex<double> e = std::exp(-z);
  const std::complex<double> z2 = z * z;
  return {(z - 1.0 + e) / z2, (1.0 - e - z * e) / z2};
}

}  // namespace

std::vector<std::complex<double>> laplace_weights(std::size_t M, double T,
                                                  std::complex<double> s) {
  if (!(s.real() > 0.0)) throw DomainError("Laplace variable must have positive real part");
  if (M < 2) throw InputError("numerical Laplace transform needs M >= 2 intervals");
  if (!(T > 0.0)) throw InputError("numerical Laplace transform needs T > 0");
  const double h = T / static_cast<double>(M);
  // f is interpolated linearly between nodes and e^(-st) integrated exactly,
  // so f = 1 gives (1 - e^(-sT)) / s and, with the tail, exactly 1 / s.
  const auto [wa, wb] = panel_weights(s * h);
  std::vector<std::complex<double>> w(M + 1, 0.0);
  for (std::size_t m = 0; m < M; ++m) {
    const std::complex<double> damp = h * std::exp(-s * (h * static_cast<double>(m)));
    w[m] += damp * wa;
    w[m + 1] += damp * wb;
  }
  w[M] += std::exp(-s * T) / s;
  return w;
}

std::complex<double> numerical_laplace(std::span<const std::complex<double>> values, double T,
                                       std::complex<double> s) {
  if (values.size() < 3) throw InputError("numerical Laplace transform needs M >= 2 intervals");
  const auto w = laplace_weights(values.size() - 1, T, s);
  std::complex<double> sum = 0.0;
  for (std::size_t m = 0; m < w.size(); ++m) sum += w[m] * values[m];
  return sum;
}

MeanEstimate msd(const Ensemble& e) {
  if (e.size() == 0) throw InputError("mean-square displacement of an empty ensemble");
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t j = 0; j < e.size(); ++j) {
    const auto x = e.row(j);
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    sum += r2;
    sum2 += r2 * r2;
  }
  const double n = static_cast<double>(e.size());
  const double mean = sum / n;
  const double var = n > 1 ? std::max(0.0, (sum2 - n * mean * mean) / (n - 1.0)) : 0.0;
  return {mean, std::sqrt(var / n)};
}

std::vector<double> second_moment_matrix(const Ensemble& e) {
  if (e.size() == 0) throw InputError("second moments of an empty ensemble");
  const std::size_t d = e.dim();
  std::vector<double> m(d * d, 0.0);
  for (std::size_t j = 0; j < e.size(); ++j) {
    const auto x = e.row(j);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) m[a * d + b] += x[a] * x[b];
  }
  for (auto& v : m) v /= static_cast<double>(e.size());
  return m;
}

double hill_tail_index(std::span<const double> samples, std::size_t m) {
  if (m == 0 || m >= samples.size()) {
    throw InputError("Hill estimator needs 0 < m < sample count");
  }
  for (double x : samples) {
    if (!(x > 0.0)) throw InputError("Hill estimator needs strictly positive samples");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  // Top m+1 values in descending order.
  std::partial_sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(m + 1),
                    sorted.end(), std::greater<>());
  const double threshold = std::log(sorted[m]);
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) sum += std::log(sorted[i]) - threshold;
  if (!(sum > 0.0)) {
    throw InputError("Hill estimator is undefined: the top order statistics are all equal");
  }
  return static_cast<double>(m) / sum;
}

double ecf_distance(const Ensemble& a, const Ensemble& b,
                    std::span<const std::vector<double>> kgrid) {
  if (a.dim() != b.dim()) throw InputError("ensembles have different dimensions");
  if (kgrid.empty()) throw InputError("empty wave-vector grid");
  double d = 0.0;
  for (const auto& k : kgrid) {
    d = std::max(d, std::abs(empirical_cf(a, k).value - empirical_cf(b, k).value));
  }
  return d;
}

void write_ecf_table(std::ostream& out, const Ensemble& e,
                     std::span<const std::vector<double>> kgrid) {
  for (std::size_t c = 0; c < e.dim(); ++c) out << 'k' << (c + 1) << ',';
  out << "re_ecf,im_ecf,stderr\n";
  for (const auto& k : kgrid) {
    const auto cf = empirical_cf(e, k);
    for (double kc : k) out << format_double(kc) << ',';
    out << format_double(cf.value.real()) << ',' << format_double(cf.value.imag()) << ','
        << format_double(cf.std_error) << '\n';
  }
}

void write_msd_table(std::ostream& out, std::span<const Ensemble> ensembles) {
  out << "t,msd,stderr\n";
  for (const auto& e : ensembles) {
    const auto m = msd(e);
    out << format_double(e.time()) << ',' << format_double(m.value) << ','
        << format_double(m.std_error) << '\n';
  }
}

}  // namespace levywalk
