// levywalk: simulate coupled walks and their limits, verify transform identities.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "levywalk/commands.hpp"
#include "levywalk/config.hpp"
#include "levywalk/verify.hpp"

namespace {

struct RunFlags {
  std::string config;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::string> out;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("-c,--config", f.config, "INI configuration file");
  cmd->add_option("-s,--set", f.sets, "override, e.g. run.paths=1000 (repeatable)");
  cmd->add_option("--seed", f.seed, "master seed (overrides file and LEVYWALK_SEED)");
  cmd->add_option("-j,--threads", f.threads, "worker threads (overrides LEVYWALK_THREADS)");
  cmd->add_option("-o,--out", f.out, "output directory");
}

levywalk::RunConfig load(const RunFlags& f, std::vector<std::string> extra = {}) {
  std::vector<std::string> sets = f.sets;
  sets.insert(sets.end(), extra.begin(), extra.end());
  if (f.seed) sets.push_back("run.seed=" + std::to_string(*f.seed));
  if (f.threads) sets.push_back("run.threads=" + std::to_string(*f.threads));
  if (f.out) sets.push_back("output.dir=" + *f.out);
  if (f.config.empty()) return levywalk::config_from_overrides(sets);
  return levywalk::load_config(f.config, sets);
}

void print_outputs(const levywalk::CommandResult& r) {
  for (const auto& p : r.outputs) std::cout << p.string() << '\n';
  if (!r.manifest.empty()) std::cout << r.manifest.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo and Fourier-Laplace checks for coupled Levy walks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(LEVYWALK_CLI_VERSION));

  RunFlags sim, lim, ver;
  auto* simulate = app.add_subcommand("simulate", "walk ensembles (lw, olw, glw, golw)");
  add_run_flags(simulate, sim);
  auto* limit = app.add_subcommand("limit", "limit-process ensembles (limit-stable, limit-distributed)");
  add_run_flags(limit, lim);
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_run_flags(verify, ver);
  std::string suite;
  verify->add_option("--suite", suite, "suite name")
      ->check(CLI::IsMember(levywalk::suite_names()));
  bool list = false;
  verify->add_flag("--list", list, "print the suite names and exit");

  auto* report = app.add_subcommand("report", "merge outputs into plot-ready CSV tables");
  std::vector<std::string> inputs;
  std::string report_dir = ".";
  std::string report_prefix = "report";
  std::vector<double> kscale = {0.5, 1.0, 2.0};
  report->add_option("inputs", inputs, "manifests, ensemble files or verification reports");
  report->add_option("-o,--out", report_dir, "output directory");
  report->add_option("--prefix", report_prefix, "file name prefix");
  report->add_option("-k,--k", kscale, "ECF wave numbers along e1")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : levywalk::kExitConfig;
  }

  try {
    levywalk::CommandResult r;
    if (simulate->parsed()) {
      r = levywalk::cmd_simulate(load(sim));
    } else if (limit->parsed()) {
      r = levywalk::cmd_limit(load(lim));
    } else if (verify->parsed()) {
      if (list) {
        for (const auto& n : levywalk::suite_names()) std::cout << n << '\n';
        return 0;
      }
      std::vector<std::string> extra;
      if (!suite.empty()) extra.push_back("verify.suite=" + suite);
      r = levywalk::cmd_verify(load(ver, extra));
      if (r.exit_code == levywalk::kExitVerification) {
        std::cerr << "verification failed; see " << r.outputs.front().string() << '\n';
      }
    } else {
      std::vector<std::filesystem::path> paths(inputs.begin(), inputs.end());
      r = levywalk::cmd_report(paths, report_dir, report_prefix, kscale);
    }
    print_outputs(r);
    return r.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "levywalk: " << e.what() << '\n';
    return levywalk::exit_code_for(e);
  }
}
