#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <vector>

#include "levywalk/sampling.hpp"

namespace levywalk {

struct QuadOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-14;
  /// Initial number of equal panels per integration interval.
  std::size_t min_panels = 4;
  std::size_t max_panels = 4096;
};

template <class V>
struct QuadResult {
  V value{};
  double error = 0.0;
  std::size_t panels = 0;
};

namespace detail {

inline double quad_norm(double v) { return std::abs(v); }
inline double quad_norm(const std::complex<double>& v) { return std::abs(v); }
template <std::size_t K>
double quad_norm(const std::array<std::complex<double>, K>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

template <class V>
V quad_zero() {
  return V{};
}

template <class V>
void quad_axpy(V& acc, double w, const V& x) {
  if constexpr (requires { acc.size(); }) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * x[i];
  } else {
    acc += w * x;
  }
}

template <class V>
V quad_sub(const V& a, const V& b) {
  V out = a;
  quad_axpy(out, -1.0, b);
  return out;
}

// Gauss-Kronrod 7/15 abscissae on [-1, 1] (non-negative half) and weights.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kXgk[1], kXgk[3], kXgk[5], kXgk[7].
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class V>
struct Panel {
  double a;
  double b;
  V value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class V, class F>
Panel<V> gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  V kronrod = quad_zero<V>();
  V gauss = quad_zero<V>();
  const V fc = f(c);
  quad_axpy(kronrod, kWgk[7], fc);
  quad_axpy(gauss, kWg[3], fc);
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const V f1 = f(c - dx);
    const V f2 = f(c + dx);
    quad_axpy(kronrod, kWgk[j], f1);
    quad_axpy(kronrod, kWgk[j], f2);
    if (j % 2 == 1) {
      quad_axpy(gauss, kWg[j / 2], f1);
      quad_axpy(gauss, kWg[j / 2], f2);
    }
  }
  V value = quad_zero<V>();
  quad_axpy(value, h, kronrod);
  V g = quad_zero<V>();
  quad_axpy(g, h, gauss);
  return {a, b, value, quad_norm(quad_sub(value, g))};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of a scalar, complex or
/// std::array<complex, K> valued integrand. Vector components share every
/// node, so ratios of jointly integrated components carry no quadrature noise.
template <class V, class F>
QuadResult<V> integrate_adaptive(const F& f, double a, double b, const QuadOptions& opts = {}) {
  using detail::Panel;
  std::priority_queue<Panel<V>> heap;
  const std::size_t n0 = std::max<std::size_t>(opts.min_panels, 1);
  V total = detail::quad_zero<V>();
  double error = 0.0;
  for (std::size_t i = 0; i < n0; ++i) {
    const double lo = a + (b - a) * static_cast<double>(i) / static_cast<double>(n0);
    const double hi = i + 1 == n0 ? b : a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(n0);
    auto p = detail::gk15<V>(f, lo, hi);
    detail::quad_axpy(total, 1.0, p.value);
    error += p.error;
    heap.push(std::move(p));
  }
  while (heap.size() < opts.max_panels &&
         error > std::max(opts.abs_tol, opts.rel_tol * detail::quad_norm(total))) {
    Panel<V> worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push(std::move(worst));
      break;
    }
    auto left = detail::gk15<V>(f, worst.a, mid);
    auto right = detail::gk15<V>(f, mid, worst.b);
    detail::quad_axpy(total, -1.0, worst.value);
    detail::quad_axpy(total, 1.0, left.value);
    detail::quad_axpy(total, 1.0, right.value);
    error += left.error + right.error - worst.error;
    heap.push(std::move(left));
    heap.push(std::move(right));
  }
  // Re-sum from panels to shed the drift of the running total.
  V sum = detail::quad_zero<V>();
  double err = 0.0;
  const std::size_t panels = heap.size();
  std::vector<Panel<V>> all;
  all.reserve(panels);
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
  for (const auto& p : all) {
    detail::quad_axpy(sum, 1.0, p.value);
    err += p.error;
  }
  return {sum, err, panels};
}

/// Integrates f(beta) * p(beta) / (1 - beta) over (0, 1) for a Beta mixing density.
///
/// Callers pass integrands in this regularized form so that factors with a
/// pole at beta = 1 (Gamma(1 - beta), beta / (1 - beta)) are paired with the
/// (1 - beta) from the density analytically. Endpoint singularities of the
/// remaining weight beta^(gamma-1) (1-beta)^(b-2) are removed by the
/// substitutions beta = v^(1/gamma) near 0 (gamma < 1) and
/// 1 - beta = w^(1/(b-1)) near 1 (b < 2).
template <class V, class F>
QuadResult<V> integrate_mixing(const MixingDensity& p, const F& f, const QuadOptions& opts = {}) {
  const double g = p.gamma();
  const double b = p.b();
  const double log_norm = p.log_beta_function();

  QuadResult<V> left;
  if (g < 1.0) {
    const double scale = std::exp(-log_norm) / g;
    auto h = [&](double v) {
      const double beta = std::pow(v, 1.0 / g);
      V out = detail::quad_zero<V>();
      detail::quad_axpy(out, scale * std::pow(1.0 - beta, b - 2.0), f(beta));
      return out;
    };
    left = integrate_adaptive<V>(h, 0.0, std::pow(0.5, g), opts);
  } else {
    auto h = [&](double beta) {
      V out = detail::quad_zero<V>();
      detail::quad_axpy(
          out, std::exp((g - 1.0) * std::log(beta) + (b - 2.0) * std::log1p(-beta) - log_norm),
          f(beta));
      return out;
    };
    left = integrate_adaptive<V>(h, 0.0, 0.5, opts);
  }

  QuadResult<V> right;
  if (b < 2.0) {
    const double scale = std::exp(-log_norm) / (b - 1.0);
    auto h = [&](double w) {
      const double beta = 1.0 - std::pow(w, 1.0 / (b - 1.0));
      V out = detail::quad_zero<V>();
      detail::quad_axpy(out, scale * std::pow(beta, g - 1.0), f(beta));
      return out;
    };
    right = integrate_adaptive<V>(h, 0.0, std::pow(0.5, b - 1.0), opts);
  } else {
    auto h = [&](double beta) {
      V out = detail::quad_zero<V>();
      detail::quad_axpy(
          out, std::exp((g - 1.0) * std::log(beta) + (b - 2.0) * std::log1p(-beta) - log_norm),
          f(beta));
      return out;
    };
    right = integrate_adaptive<V>(h, 0.5, 1.0, opts);
  }

  QuadResult<V> out;
  out.value = left.value;
  detail::quad_axpy(out.value, 1.0, right.value);
  out.error = left.error + right.error;
  out.panels = left.panels + right.panels;
  return out;
}

}  // namespace levywalk
