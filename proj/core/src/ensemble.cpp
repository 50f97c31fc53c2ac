#include "levywalk/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include "levywalk/errors.hpp"
#include "levywalk/parallel.hpp"

namespace levywalk {

std::size_t model_dim(const PathModel& model) {
  return std::visit([](const auto& m) { return m.lambda.dim(); }, model);
}

Stage model_stage(const PathModel& model) {
  return std::holds_alternative<WalkModel>(model) ? Stage::walk : Stage::limit;
}

namespace {

void check_options(const EnsembleOptions& opts) {
  if (opts.paths == 0) throw ConfigError("paths must be >= 1");
  if (opts.chunk == 0) throw ConfigError("chunk must be >= 1");
}

void path_positions(const PathModel& model, std::span<const double> times, RngStream& rng,
                    std::span<double> out) {
  if (const auto* w = std::get_if<WalkModel>(&model)) {
    walk_positions_at(w->kind, w->law, w->lambda, times, rng, out);
    return;
  }
  const auto& m = std::get<LimitModel>(model);
  const double level = times.empty() ? 0.0 : times.back();
  const auto list = simulate_coupled_jumps_covering(m.nu, m.lambda, m.eps, level, rng, m.initial_tau);
  const std::size_t d = m.lambda.dim();
  for (std::size_t i = 0; i < times.size(); ++i) {
    limit_position(list, times[i], m.scenario, out.subspan(i * d, d));
  }
}

}  // namespace

void visit_paths(const PathModel& model, std::span<const double> times,
                 const EnsembleOptions& opts, const PathVisitor& visit) {
  check_options(opts);
  if (!std::is_sorted(times.begin(), times.end()) || (!times.empty() && times.front() < 0.0)) {
    throw ConfigError("observation times must be non-negative and non-decreasing");
  }
  const std::size_t d = model_dim(model);
  const Stage stage = model_stage(model);
  parallel_for_chunks(opts.paths, opts.chunk, opts.threads,
                      [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                        std::vector<double> pos(times.size() * d);
                        for (std::size_t j = begin; j < end; ++j) {
                          RngStream rng(opts.seed, stream_id(stage, j));
                          path_positions(model, times, rng, pos);
                          visit(chunk, j, pos);
                        }
                      });
}

std::vector<Ensemble> build_ensembles(const PathModel& model, std::span<const double> times,
                                      const EnsembleOptions& opts) {
  const std::size_t d = model_dim(model);
  std::vector<std::vector<double>> data(times.size(), std::vector<double>(opts.paths * d));
  visit_paths(model, times, opts, [&](std::size_t, std::size_t j, std::span<const double> pos) {
    for (std::size_t i = 0; i < times.size(); ++i) {
      std::copy_n(pos.begin() + static_cast<std::ptrdiff_t>(i * d), d,
                  data[i].begin() + static_cast<std::ptrdiff_t>(j * d));
    }
  });
  std::vector<Ensemble> out;
  out.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) out.emplace_back(d, times[i], std::move(data[i]));
  return out;
}

LaplaceEcf laplace_of_ecf(const PathModel& model, double T, std::size_t M,
                          std::span<const std::vector<double>> kgrid,
                          std::span<const std::complex<double>> sgrid, const EnsembleOptions& opts) {
  using cd = std::complex<double>;
  if (M < 2 || !(T > 0.0)) throw ConfigError("Laplace grid needs T > 0 and M >= 2");
  for (const auto& s : sgrid) {
    if (!(s.real() > 0.0)) throw DomainError("Laplace variable must have Re(s) > 0");
  }
  const std::size_t d = model_dim(model);
  for (const auto& k : kgrid) {
    if (k.size() != d) throw ConfigError("wave vector dimension does not match the model");
  }
  const std::size_t nt = M + 1, nk = kgrid.size(), ns = sgrid.size();
  LaplaceEcf res;
  res.times.resize(nt);
  for (std::size_t m = 0; m < nt; ++m) res.times[m] = T * static_cast<double>(m) / static_cast<double>(M);

  // Per-path transform = sum_m weight[s][m] exp(i<k, x(t_m)>), the same
  // linear functional numerical_laplace applies to the mean series.
  std::vector<cd> weight(ns * nt);
  for (std::size_t q = 0; q < ns; ++q) {
    const auto w = laplace_weights(M, T, sgrid[q]);
    std::copy(w.begin(), w.end(), weight.begin() + static_cast<std::ptrdiff_t>(q * nt));
  }

  const std::size_t chunks = chunk_count(opts.paths, opts.chunk);
  std::vector<std::vector<cd>> ecf_sum(chunks);
  std::vector<std::vector<cd>> z_sum(chunks);
  std::vector<std::vector<double>> z_sq(chunks);
  visit_paths(model, res.times, opts, [&](std::size_t c, std::size_t, std::span<const double> pos) {
    auto& es = ecf_sum[c];
    auto& zs = z_sum[c];
    auto& zq = z_sq[c];
    if (es.empty()) {
      es.assign(nt * nk, cd(0.0));
      zs.assign(nk * ns, cd(0.0));
      zq.assign(nk * ns, 0.0);
    }
    std::vector<cd> phase(nt);
    for (std::size_t a = 0; a < nk; ++a) {
      for (std::size_t m = 0; m < nt; ++m) {
        double dot = 0.0;
        for (std::size_t c2 = 0; c2 < d; ++c2) dot += kgrid[a][c2] * pos[m * d + c2];
        phase[m] = std::polar(1.0, dot);
        es[m * nk + a] += phase[m];
      }
      for (std::size_t q = 0; q < ns; ++q) {
        cd z = 0.0;
        const cd* w = weight.data() + q * nt;
        for (std::size_t m = 0; m < nt; ++m) z += w[m] * phase[m];
        zs[a * ns + q] += z;
        zq[a * ns + q] += std::norm(z);
      }
    }
  });

  const double n = static_cast<double>(opts.paths);
  res.ecf.assign(nt * nk, cd(0.0));
  std::vector<cd> zmean(nk * ns, cd(0.0));
  std::vector<double> zsq(nk * ns, 0.0);
  for (std::size_t c = 0; c < chunks; ++c) {
    for (std::size_t i = 0; i < res.ecf.size(); ++i) res.ecf[i] += ecf_sum[c][i];
    for (std::size_t i = 0; i < zmean.size(); ++i) {
      zmean[i] += z_sum[c][i];
      zsq[i] += z_sq[c][i];
    }
  }
  for (auto& v : res.ecf) v /= n;

  res.transform.resize(nk * ns);
  std::vector<cd> series(nt);
  for (std::size_t a = 0; a < nk; ++a) {
    for (std::size_t m = 0; m < nt; ++m) series[m] = res.ecf[m * nk + a];
    for (std::size_t q = 0; q < ns; ++q) {
      const std::size_t i = a * ns + q;
      const cd mean = zmean[i] / n;
      const double var = std::max(0.0, zsq[i] / n - std::norm(mean));
      res.transform[i] = {numerical_laplace(series, T, sgrid[q]),
                          opts.paths > 1 ? std::sqrt(var / (n - 1.0)) : 0.0};
    }
  }
  return res;
}

std::vector<CfEstimate> coupled_transform_mc(const LevyDescriptor& nu,
                                             const DirectionMeasure& lambda, double eps, double tau,
                                             std::span<const TransformProbe> probes,
                                             const EnsembleOptions& opts) {
  using cd = std::complex<double>;
  check_options(opts);
  if (!(tau > 0.0)) throw ConfigError("operational time must be positive");
  const std::size_t d = lambda.dim();
  for (const auto& p : probes) {
    if (p.k.size() != d) throw ConfigError("wave vector dimension does not match the model");
    if (!(p.s >= 0.0)) throw DomainError("Laplace variable must be non-negative");
  }
  const std::size_t np = probes.size();
  const std::size_t chunks = chunk_count(opts.paths, opts.chunk);
  std::vector<cd> sum(chunks * np, cd(0.0));
  std::vector<double> sq(chunks * np, 0.0);
  parallel_for_chunks(opts.paths, opts.chunk, opts.threads,
                      [&](std::size_t c, std::size_t begin, std::size_t end) {
                        for (std::size_t j = begin; j < end; ++j) {
                          RngStream rng(opts.seed, stream_id(Stage::coupled, j));
                          const auto list = simulate_coupled_jumps(nu, lambda, eps, tau, rng);
                          const double s_tau = list.s_at(tau);
                          const auto l_tau = list.l_at(tau);
                          for (std::size_t p = 0; p < np; ++p) {
                            double dot = 0.0;
                            for (std::size_t i = 0; i < d; ++i) dot += probes[p].k[i] * l_tau[i];
                            const cd z = std::exp(cd(-probes[p].s * s_tau, dot));
                            sum[c * np + p] += z;
                            sq[c * np + p] += std::norm(z);
                          }
                        }
                      });
  const double n = static_cast<double>(opts.paths);
  std::vector<CfEstimate> out(np);
  for (std::size_t p = 0; p < np; ++p) {
    cd total = 0.0;
    double total_sq = 0.0;
    for (std::size_t c = 0; c < chunks; ++c) {
      total += sum[c * np + p];
      total_sq += sq[c * np + p];
    }
    const cd mean = total / n;
    const double var = std::max(0.0, total_sq / n - std::norm(mean));
    out[p] = {mean, opts.paths > 1 ? std::sqrt(var / (n - 1.0)) : 0.0};
  }
  return out;
}

}  // namespace levywalk
