// End-to-end acceptance run: one PASS/FAIL line per criterion.
//
// Monte Carlo values come from the library's verification suites; every
// theory value and bias allowance they are compared with is recomputed here
// from the Boost-based oracles in tests/support, and pass/fail is decided
// again from those.
//
// Usage: levywalk_acceptance [criterion ...]   (default: 1 to 11)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "levywalk/commands.hpp"
#include "levywalk/config.hpp"
#include "levywalk/fl_calculus.hpp"
#include "levywalk/io.hpp"
#include "levywalk/parallel.hpp"
#include "levywalk/stats.hpp"
#include "levywalk/verify.hpp"

namespace lw = levywalk;
namespace fs = std::filesystem;
using oracle::cdouble;

namespace {

constexpr double kEps = 1e-3;

struct Outcome {
  bool pass = true;
  std::vector<std::string> lines;

  void fail_if(bool bad, const std::string& why) {
    if (bad) {
      pass = false;
      lines.push_back("FAILED: " + why);
    }
  }
  template <class... A>
  void say(const char* fmt, A... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    lines.emplace_back(buf);
  }
};

// --- record parsing ----------------------------------------------------------

struct ParsedModel {
  bool stable = true;
  double alpha = 0.0;
  double g = 0.0, b = 0.0;
  oracle::Projections unit_atoms;  // 1-d atoms u_j = +-1 with weights
};

ParsedModel parse_model(const std::string& text) {
  static const std::regex st(R"(stable alpha=([^ ]+) lambda=atoms:([^ ]+).*)");
  static const std::regex di(R"(distributed beta\(([^,]+),([^)]+)\) lambda=atoms:([^ ]+).*)");
  std::smatch m;
  ParsedModel out;
  std::string atoms;
  if (std::regex_match(text, m, st)) {
    out.alpha = std::stod(m[1]);
    atoms = m[2];
  } else if (std::regex_match(text, m, di)) {
    out.stable = false;
    out.g = std::stod(m[1]);
    out.b = std::stod(m[2]);
    atoms = m[3];
  } else {
    throw std::runtime_error("unrecognized model '" + text + "'");
  }
  std::stringstream ss(atoms);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto at = item.find('@');
    out.unit_atoms.emplace_back(std::stod(item.substr(0, at)), std::stod(item.substr(at + 1)));
  }
  return out;
}

std::pair<double, double> parse_point(const std::string& text) {
  static const std::regex re(R"(k=([^ ]+) s=([^ ]+))");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw std::runtime_error("unrecognized point '" + text + "'");
  return {std::stod(m[1]), std::stod(m[2])};
}

oracle::Projections project(const ParsedModel& pm, double k) {
  oracle::Projections out;
  for (auto [u, w] : pm.unit_atoms) out.emplace_back(k * u, w);
  return out;
}

cdouble psi_oracle(const ParsedModel& pm, double k, double s) {
  const auto atoms = project(pm, k);
  return pm.stable ? oracle::stable_exponent(pm.alpha, atoms, s)
                   : oracle::distributed_exponent(pm.g, pm.b, atoms, s);
}

double bias_oracle(const ParsedModel& pm, double eps, double z_abs) {
  return pm.stable ? oracle::stable_truncation_bias(pm.alpha, eps, z_abs)
                   : oracle::distributed_truncation_bias(pm.g, pm.b, eps, z_abs);
}

std::string detail(const lw::ProbeRecord& r, const std::string& key) {
  for (const auto& [k, v] : r.details) {
    if (k == key) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3g", v);
      return buf;
    }
  }
  return "-";
}

// --- running suites ---------------------------------------------------------------

lw::VerifyOptions options() {
  lw::VerifyOptions o;
  o.threads = lw::default_thread_count();
  return o;
}

struct Timed {
  lw::VerificationReport report;
  double seconds;
};

Timed run(const std::string& suite) {
  const auto t0 = std::chrono::steady_clock::now();
  auto rep = lw::run_suite(suite, options());
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(rep), secs};
}

void runtime_limit(Outcome& out, const std::string& suite, double secs, double limit) {
  out.say("%s runtime %.1f s (limit %.0f s, %u worker threads)", suite.c_str(), secs, limit,
          lw::default_thread_count());
  out.fail_if(secs >= limit, "runtime over the limit");
}

// Transform records (coupled-cf and subordinator): |MC - exp(-psi)| <= 3 SE + delta(eps).
void transform_records(Outcome& out, const lw::VerificationReport& rep, bool stable_wanted,
                       bool distributed_wanted) {
  for (const auto& r : rep.records) {
    if (r.point.rfind("k=", 0) != 0) continue;
    const auto pm = parse_model(r.model);
    if ((pm.stable && !stable_wanted) || (!pm.stable && !distributed_wanted)) continue;
    const auto [k, s] = parse_point(r.point);
    const cdouble theory = std::exp(-psi_oracle(pm, k, s));
    const double bias = bias_oracle(pm, kEps, std::hypot(k, s));
    const double err = std::abs(r.value - theory);
    const double tol = 3.0 * r.std_error + bias;
    out.say("%-48s %-12s mc=%.5f%+.5fi theory=%.5f%+.5fi |err|=%.2e tol=%.2e %s",
            r.model.c_str(), r.point.c_str(), r.value.real(), r.value.imag(), theory.real(),
            theory.imag(), err, tol, err <= tol ? "ok" : "MISS");
    out.fail_if(err > tol, r.model + " " + r.point);
    out.fail_if(std::abs(r.theory - theory) > 1e-8,
                "library theory differs from oracle at " + r.model + " " + r.point);
  }
}

// --- criteria -------------------------------------------------------------------------

Outcome criterion1() {
  Outcome out;
  const auto t = run("cone-bound");
  for (const auto& r : t.report.records) {
    if (r.model.rfind("limit", 0) == 0) continue;  // beyond the criterion, still reported
    out.say("%-60s violations=%.0f max|x|/t=%s", r.model.c_str(), r.value.real(),
            detail(r, "max_norm_over_t").c_str());
    out.fail_if(r.value.real() != 0.0, r.model);
  }
  runtime_limit(out, "cone-bound", t.seconds, 60);
  return out;
}

Outcome criterion2() {
  Outcome out;
  const auto t = run("waiting-law");
  const auto& r = t.report.records.at(0);
  // Redraw the suite's samples from its streams and test them against the
  // closed-form law written out here.
  const std::size_t N = 100000;
  const std::uint64_t seed = lw::derive_seed(options().seed, 30);
  std::vector<double> xs(N);
  for (std::size_t j = 0; j < N; ++j) {
    lw::RngStream rng(seed, lw::stream_id(lw::Stage::sampling, j));
    xs[j] = lw::sample_conditional_waiting(100.0, 0.5, rng);
  }
  const double floor = std::pow(100.0, -2.0);
  const double d = lw::ks_distance(xs, [&](double x) {
    return x < floor ? 0.0 : 1.0 - std::pow(x, -0.5) / 100.0;
  });
  const double tol = 1.36 / std::sqrt(double(N));
  out.say("KS distance %.5f (suite %.5f), threshold %.5f", d, r.value.real(), tol);
  out.fail_if(!(d < tol), "KS distance above threshold");
  out.fail_if(std::abs(d - r.value.real()) > 1e-12,
              "suite KS distance differs from the independent CDF");
  runtime_limit(out, "waiting-law", t.seconds, 60);
  return out;
}

std::optional<Timed> subordinator_run;

const Timed& subordinator() {
  if (!subordinator_run) subordinator_run = run("subordinator");
  return *subordinator_run;
}

Outcome criterion3() {
  Outcome out;
  const auto& t = subordinator();
  transform_records(out, t.report, true, false);
  for (double alpha : {0.3, 0.5, 0.8}) {
    const double d0 = oracle::stable_truncation_bias(alpha, kEps, 2.0);
    const double d1 = oracle::stable_truncation_bias(alpha, kEps / 10, 2.0);
    out.say("alpha=%.1f delta(eps/10)/delta(eps) = %.4f (needs <= 0.5)", alpha, d1 / d0);
    out.fail_if(d1 / d0 > 0.5, "bias does not halve");
  }
  runtime_limit(out, "subordinator", t.seconds, 60);
  return out;
}

Outcome criterion4() {
  Outcome out;
  const auto& t = subordinator();
  transform_records(out, t.report, false, true);
  for (double lam : {0.5, 1.0, 2.0}) {
    out.say("oracle exp(-int Gamma(1-b) lam^b p(b) db) at lam=%.1f: %.10f", lam,
            std::exp(-oracle::distributed_laplace_exponent(1.0, 2.0, lam)));
  }
  const double d0 = oracle::distributed_truncation_bias(1.0, 2.0, kEps, 2.0);
  const double d1 = oracle::distributed_truncation_bias(1.0, 2.0, kEps / 10, 2.0);
  out.say("beta(1,2) delta(eps/10)/delta(eps) = %.4f (needs <= 0.5)", d1 / d0);
  out.fail_if(d1 / d0 > 0.5, "bias does not halve");
  runtime_limit(out, "subordinator", t.seconds, 120);
  return out;
}

Outcome criterion5() {
  Outcome out;
  const auto t = run("coupled-cf");
  transform_records(out, t.report, true, true);
  runtime_limit(out, "coupled-cf", t.seconds, 180);
  return out;
}

Outcome criterion6() {
  Outcome out;
  const auto t = run("governing-wait-first");
  for (const auto& r : t.report.records) {
    const auto pm = parse_model(r.model);
    const auto [k, s] = parse_point(r.point);
    const cdouble psi = psi_oracle(pm, k, s);
    const cdouble theory = pm.stable ? std::pow(s, pm.alpha - 1.0) / psi
                                     : oracle::distributed_wait_numerator(pm.g, pm.b, s) / psi;
    const double rel = std::abs(r.value - theory) / std::abs(theory);
    out.say("%-44s %-12s rel.err=%.2e  budget: mc=%s disc=%s tail=%s quad=%s trunc=%s total=%s",
            r.model.c_str(), r.point.c_str(), rel, detail(r, "mc_3se").c_str(),
            detail(r, "laplace_discretization").c_str(), detail(r, "laplace_tail").c_str(),
            detail(r, "quadrature").c_str(), detail(r, "truncation").c_str(),
            detail(r, "budget_total").c_str());
    out.fail_if(rel > 0.02, r.model + " " + r.point);
  }
  runtime_limit(out, "governing-wait-first", t.seconds, 300);
  return out;
}

Outcome criterion7() {
  Outcome out;
  // The closed form must reproduce the printed source term before it is used.
  {
    const lw::FLModelSpec m(lw::HeavyTailLaw(0.5), lw::DirectionMeasure::point(1),
                            lw::Scenario::jump_first);
    for (auto [k, s] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}, std::pair{-1.0, 0.5}}) {
      const cdouble closed = lw::jump_first_source_fl(m, {{k}, s});
      const cdouble brute = oracle::stable_jump_first_rhs(0.5, {{k, 1.0}}, s);
      out.say("stable alpha=0.5 k=%g s=%g: closed %.7f%+.7fi brute-force %.7f%+.7fi |diff|=%.1e",
              k, s, closed.real(), closed.imag(), brute.real(), brute.imag(),
              std::abs(closed - brute));
      out.fail_if(std::abs(closed - brute) > 1e-4, "stable closed form vs double quadrature");
    }
  }
  {
    const lw::FLModelSpec m(lw::MixingDensity(1.0, 2.0), lw::DirectionMeasure::point(1),
                            lw::Scenario::jump_first);
    const cdouble closed = lw::jump_first_source_fl(m, {{1.0}, 1.0});
    const cdouble brute = oracle::distributed_jump_first_rhs(1.0, 2.0, {{1.0, 1.0}}, 1.0);
    out.say("distributed beta(1,2) k=1 s=1: closed %.7f%+.7fi brute-force %.7f%+.7fi |diff|=%.1e",
            closed.real(), closed.imag(), brute.real(), brute.imag(), std::abs(closed - brute));
    out.fail_if(std::abs(closed - brute) > 1e-4, "distributed closed form vs triple quadrature");
  }
  // Monte Carlo comparison, reported without gating.
  const auto t = run("governing-jump-first");
  for (const auto& r : t.report.records) {
    if (!std::isfinite(r.value.real())) {
      out.say("%-44s %-12s no theory value: source term diverges at k=0", r.model.c_str(),
              r.point.c_str());
      continue;
    }
    const auto pm = parse_model(r.model);
    const auto [k, s] = parse_point(r.point);
    const cdouble psi = psi_oracle(pm, k, s);
    // Transform of the jump-first limit from its own construction,
    // (psi(k,s) - psi(k,0)) / (s psi(k,s)); diagnostic only.
    const cdouble direct = (psi - psi_oracle(pm, k, 0.0)) / (s * psi);
    out.say("%-44s %-12s mc=%.4f%+.4fi printed-eq=%.4f%+.4fi rel.discrepancy=%.3f | "
            "direct-transform diagnostic rel.err=%.1e",
            r.model.c_str(), r.point.c_str(), r.value.real(), r.value.imag(), r.theory.real(),
            r.theory.imag(), r.error, std::abs(r.value - direct) / std::abs(direct));
  }
  for (const auto& n : t.report.notes) out.say("note: %s", n.c_str());
  out.say("governing-jump-first runtime %.1f s", t.seconds);
  return out;
}

void convergence(Outcome& out, const lw::VerificationReport& rep) {
  std::map<std::string, std::vector<double>> series;
  for (const auto& r : rep.records) {
    if (r.point.rfind("n=", 0) == 0) {
      series[r.model].push_back(r.value.real());
      out.say("%-44s %-8s distance=%.4f", r.model.c_str(), r.point.c_str(), r.value.real());
    }
  }
  for (const auto& [model, d] : series) {
    for (std::size_t i = 1; i < d.size(); ++i) {
      out.fail_if(d[i] > d[i - 1], model + ": distance increases with n");
    }
    out.fail_if(!(d.back() < 0.05), model + ": final distance " + std::to_string(d.back()) +
                                         " not below 0.05");
  }
}

Outcome criterion8() {
  Outcome out;
  const auto t = run("glw-convergence");
  convergence(out, t.report);
  runtime_limit(out, "glw-convergence", t.seconds, 600);
  return out;
}

Outcome criterion9() {
  Outcome out;
  const auto t = run("lw-convergence");
  convergence(out, t.report);
  out.say("lw-convergence runtime %.1f s", t.seconds);
  return out;
}

Outcome criterion10() {
  Outcome out;
  const auto t = run("tail");
  for (const auto& r : t.report.records) {
    out.say("%-44s %-10s hill=%.4f%s", r.model.c_str(), r.point.c_str(), r.value.real(),
            r.gating ? " (target 0.5 +- 0.05)" : " (reported)");
    if (r.gating) out.fail_if(std::abs(r.value.real() - 0.5) > 0.05, r.model);
  }
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome criterion11() {
  Outcome out;
  const fs::path root = fs::temp_directory_path() / "levywalk_acceptance_determinism";
  fs::remove_all(root);
  struct Case {
    std::string suite;
    std::vector<std::string> extra;
  };
  const std::vector<Case> cases = {{"waiting-law", {}},
                                   {"cone-bound", {}},
                                   {"coupled-cf", {"run.paths=20000"}},
                                   {"tail", {}}};
  for (const auto& c : cases) {
    std::string json0, csv0;
    for (unsigned threads : {1u, 4u, 8u}) {
      const fs::path dir = root / (c.suite + "_" + std::to_string(threads));
      std::vector<std::string> sets = {"verify.suite=" + c.suite, "run.seed=20261017",
                                       "run.threads=" + std::to_string(threads),
                                       "output.dir=" + dir.string()};
      sets.insert(sets.end(), c.extra.begin(), c.extra.end());
      lw::cmd_verify(lw::config_from_overrides(sets, false));
      const auto json = slurp(dir / ("run_" + c.suite + ".json"));
      const auto csv = slurp(dir / ("run_" + c.suite + ".csv"));
      if (threads == 1) {
        json0 = json;
        csv0 = csv;
      }
      const bool same = json == json0 && csv == csv0;
      out.say("%-12s threads=%u json sha256=%.16s csv sha256=%.16s %s", c.suite.c_str(), threads,
              lw::sha256_hex(json).c_str(), lw::sha256_hex(csv).c_str(),
              same ? "identical" : "DIFFERENT");
      out.fail_if(!same, c.suite + " output depends on the thread count");
    }
  }
  fs::remove_all(root);
  return out;
}

using Criterion = Outcome (*)();

const std::vector<std::pair<std::string, Criterion>> kCriteria = {
    {"cone bound", criterion1},
    {"waiting-time law", criterion2},
    {"stable subordinator marginal", criterion3},
    {"distributed subordinator marginal", criterion4},
    {"coupled characteristic function", criterion5},
    {"governing equation, wait-first", criterion6},
    {"governing equation, jump-first", criterion7},
    {"GLW/GOLW convergence", criterion8},
    {"rescaled LW convergence", criterion9},
    {"tail diagnostics", criterion10},
    {"determinism across thread counts", criterion11},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::stoul(argv[i]));
  if (which.empty()) {
    for (std::size_t i = 1; i <= kCriteria.size(); ++i) which.push_back(i);
  }
  std::vector<std::string> summary;
  bool all = true;
  for (std::size_t id : which) {
    if (id < 1 || id > kCriteria.size()) {
      std::cerr << "no criterion " << id << '\n';
      return 2;
    }
    const auto& [name, fn] = kCriteria[id - 1];
    std::cout << "== criterion " << id << ": " << name << std::endl;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.lines.push_back(std::string("FAILED: exception: ") + e.what());
    }
    for (const auto& l : o.lines) std::cout << "   " << l << '\n';
    const std::string line = (o.pass ? "PASS" : "FAIL") + std::string(" criterion ") +
                             std::to_string(id) + ": " + name;
    std::cout << line << std::endl;
    summary.push_back(line);
    all = all && o.pass;
  }
  std::cout << "\nsummary\n";
  for (const auto& l : summary) std::cout << l << '\n';
  return all ? 0 : 1;
}
