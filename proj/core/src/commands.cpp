#include "levywalk/commands.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "levywalk/errors.hpp"
#include "levywalk/io.hpp"
#include "levywalk/parallel.hpp"
#include "levywalk/stats.hpp"
#include "levywalk/verify.hpp"

#ifndef LEVYWALK_VERSION
#define LEVYWALK_VERSION "0.0.0"
#endif

namespace levywalk {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InputError*>(&e) ||
      dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const SingularConfigurationError*>(&e)) {
    return kExitConfig;
  }
  return 1;
}

namespace {

using Clock = std::chrono::steady_clock;

fs::path prepare_dir(const RunConfig& c) {
  std::error_code ec;
  fs::create_directories(c.output_dir, ec);
  if (ec) throw IoError("cannot create output directory " + c.output_dir.string() + ": " + ec.message());
  return c.output_dir;
}

std::ofstream open_out(const fs::path& p, bool binary = false) {
  std::ofstream out(p, binary ? std::ios::binary : std::ios::out);
  if (!out) throw IoError("cannot write " + p.string());
  return out;
}

void close_out(std::ofstream& out, const fs::path& p) {
  out.close();
  if (!out) throw IoError("failed writing " + p.string());
}

bool use_binary(const RunConfig& c, std::size_t rows) {
  return c.format == OutputFormat::binary ||
         (c.format == OutputFormat::auto_select && rows > kBinaryRowThreshold);
}

std::vector<double> ensemble_table(std::span<const Ensemble> ensembles) {
  std::vector<double> table;
  for (const auto& e : ensembles) {
    for (std::size_t j = 0; j < e.size(); ++j) {
      table.push_back(static_cast<double>(j));
      table.push_back(e.time());
      const auto row = e.row(j);
      table.insert(table.end(), row.begin(), row.end());
    }
  }
  return table;
}

std::vector<Ensemble> ensembles_from_table(std::size_t dim, const std::vector<double>& table) {
  const std::size_t cols = dim + 2;
  std::vector<double> order;
  std::map<double, std::vector<double>> rows;
  for (std::size_t r = 0; r * cols < table.size(); ++r) {
    const double t = table[r * cols + 1];
    auto [it, inserted] = rows.try_emplace(t);
    if (inserted) order.push_back(t);
    it->second.insert(it->second.end(), table.begin() + static_cast<std::ptrdiff_t>(r * cols + 2),
                      table.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols));
  }
  std::vector<Ensemble> out;
  for (double t : order) out.emplace_back(dim, t, std::move(rows[t]));
  return out;
}

void write_ensembles(const RunConfig& c, FrameKind kind, std::span<const Ensemble> ensembles,
                     CommandResult& result) {
  const std::size_t rows = ensembles.size() * ensembles.front().size();
  const fs::path dir = c.output_dir;
  if (use_binary(c, rows)) {
    const fs::path p = dir / (c.prefix + "_ensemble.lwbf");
    auto out = open_out(p, true);
    const auto table = ensemble_table(ensembles);
    write_frame(out, {kind, static_cast<std::uint32_t>(c.dim),
                      static_cast<std::uint32_t>(c.dim + 2), c.seed, rows},
                table);
    close_out(out, p);
    result.outputs.push_back(p);
  } else {
    const fs::path p = dir / (c.prefix + "_ensemble.csv");
    auto out = open_out(p);
    write_ensemble_csv(out, ensembles);
    close_out(out, p);
    result.outputs.push_back(p);
  }
}

/// Per-chunk row tables merged in chunk order.
template <class Fill>
std::vector<double> chunked_table(std::size_t paths, unsigned threads, Fill fill) {
  constexpr std::size_t chunk = 256;
  std::vector<std::vector<double>> parts(chunk_count(paths, chunk));
  parallel_for_chunks(paths, chunk, threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) fill(parts[c], j);
  });
  std::vector<double> table;
  for (auto& p : parts) table.insert(table.end(), p.begin(), p.end());
  return table;
}

void write_rows(const RunConfig& c, const std::string& stem, FrameKind kind, std::size_t columns,
                const std::vector<double>& table, bool jumps, CommandResult& result) {
  const std::size_t rows = table.size() / columns;
  if (use_binary(c, rows)) {
    const fs::path p = c.output_dir / (c.prefix + "_" + stem + ".lwbf");
    auto out = open_out(p, true);
    write_frame(out, {kind, static_cast<std::uint32_t>(c.dim), static_cast<std::uint32_t>(columns),
                      c.seed, rows},
                table);
    close_out(out, p);
    result.outputs.push_back(p);
    return;
  }
  const fs::path p = c.output_dir / (c.prefix + "_" + stem + ".csv");
  auto out = open_out(p);
  if (!jumps) {
    write_path_csv(out, c.dim, table);
  } else {
    out << "trajectory,epoch";
    for (std::size_t i = 0; i < c.dim; ++i) out << ",u" << (i + 1);
    out << ",magnitude\n";
    for (std::size_t r = 0; r < rows; ++r) {
      out << static_cast<std::uint64_t>(table[r * columns]);
      for (std::size_t k = 1; k < columns; ++k) out << ',' << format_double(table[r * columns + k]);
      out << '\n';
    }
  }
  close_out(out, p);
  result.outputs.push_back(p);
}

json stream_json(Stage stage, std::string_view name, std::uint64_t seed, std::size_t count) {
  return {{"stage", name},
          {"seed", seed},
          {"first_stream_id", stream_id(stage, 0)},
          {"last_stream_id", stream_id(stage, count == 0 ? 0 : count - 1)}};
}

void write_manifest(const RunConfig& c, std::string_view command, const json& streams,
                    const json& extra, Clock::time_point start, CommandResult& result) {
  json m;
  m["artifact"] = "levywalk";
  m["version"] = LEVYWALK_VERSION;
  m["command"] = command;
  m["config"] = serialize_config(c);
  m["seed"] = c.seed;
  m["threads"] = c.effective_threads();
  m["streams"] = streams;
  auto outputs = json::array();
  for (const auto& p : result.outputs) {
    outputs.push_back({{"file", p.filename().string()},
                       {"sha256", file_sha256(p)},
                       {"bytes", fs::file_size(p)}});
  }
  m["outputs"] = outputs;
  if (!extra.empty()) m["extra"] = extra;
  m["wall_clock_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
  result.manifest = c.output_dir / (c.prefix + "_manifest.json");
  auto out = open_out(result.manifest);
  out << m.dump(2) << '\n';
  close_out(out, result.manifest);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

EnsembleOptions ensemble_options(const RunConfig& c) {
  EnsembleOptions o;
  o.paths = c.paths_or_default();
  o.seed = c.seed;
  o.threads = c.effective_threads();
  return o;
}

}  // namespace

CommandResult cmd_simulate(const RunConfig& c) {
  validate(c);
  if (is_limit(c.model)) {
    throw ConfigError("model.kind: simulate runs walk models; use the limit command for " +
                      std::string(to_string(c.model)));
  }
  const auto start = Clock::now();
  const WalkModel model = c.walk_model();
  const auto opts = ensemble_options(c);
  prepare_dir(c);
  CommandResult result;
  const auto ensembles = build_ensembles(model, c.times, opts);
  write_ensembles(c, frame_kind(model.kind), ensembles, result);
  if (c.write_paths) {
    const auto table = chunked_table(opts.paths, opts.threads, [&](std::vector<double>& rows, std::size_t j) {
      RngStream rng(c.seed, stream_id(Stage::walk, j));
      append_path_rows(rows, j, simulate_walk(model.kind, model.law, model.lambda, c.horizon, rng));
    });
    write_rows(c, "paths", frame_kind(model.kind), c.dim + 2, table, false, result);
  }
  json streams = json::array({stream_json(Stage::walk, "walk", c.seed, opts.paths)});
  write_manifest(c, "simulate", streams, json::object(), start, result);
  return result;
}

CommandResult cmd_limit(const RunConfig& c) {
  validate(c);
  if (!is_limit(c.model)) {
    throw ConfigError("model.kind: limit runs limit-stable or limit-distributed, got " +
                      std::string(to_string(c.model)));
  }
  const auto start = Clock::now();
  const LimitModel model = c.limit_model();
  const auto opts = ensemble_options(c);
  prepare_dir(c);
  CommandResult result;
  const FrameKind kind = c.model == ModelKind::limit_stable ? FrameKind::limit_stable
                                                             : FrameKind::limit_distributed;
  const auto ensembles = build_ensembles(model, c.times, opts);
  write_ensembles(c, kind, ensembles, result);
  if (c.write_paths) {
    const auto table = chunked_table(opts.paths, opts.threads, [&](std::vector<double>& rows, std::size_t j) {
      RngStream rng(c.seed, stream_id(Stage::limit, j));
      const auto list = simulate_coupled_jumps_covering(model.nu, model.lambda, model.eps,
                                                        c.times.back(), rng, model.initial_tau);
      append_jump_rows(rows, j, list);
    });
    write_rows(c, "jumps", kind, c.dim + 3, table, true, result);
  }
  const double mass = tail_mass(model.nu, model.eps);
  json extra = {{"scenario", to_string(model.scenario)},
                {"eps", model.eps},
                {"expected_jumps_per_unit_tau", mass},
                {"small_jump_drift", small_jump_drift(model.nu, model.eps)},
                {"expected_jumps_per_unit_tau_at_half_eps", tail_mass(model.nu, model.eps / 2.0)}};
  json streams = json::array({stream_json(Stage::limit, "limit", c.seed, opts.paths)});
  write_manifest(c, "limit", streams, extra, start, result);
  return result;
}

CommandResult cmd_verify(const RunConfig& c) {
  validate(c, false);
  if (c.suite.empty()) {
    std::string list;
    for (const auto& n : suite_names()) list += (list.empty() ? "" : ", ") + n;
    throw ConfigError("verify.suite: required (available: " + list + ")");
  }
  const auto start = Clock::now();
  VerifyOptions vo;
  vo.seed = c.seed;
  vo.threads = c.effective_threads();
  vo.paths = c.paths;
  vo.eps = c.eps;
  const auto report = run_suite(c.suite, vo);
  prepare_dir(c);
  CommandResult result;
  const fs::path base = c.output_dir / (c.prefix + "_" + report.suite);
  {
    const fs::path p = base.string() + ".json";
    auto out = open_out(p);
    out << report_json(report);
    close_out(out, p);
    result.outputs.push_back(p);
  }
  {
    const fs::path p = base.string() + ".csv";
    auto out = open_out(p);
    out << "model,point,theory_re,theory_im,value_re,value_im,std_error,error,tolerance,pass,gating\n";
    for (const auto& r : report.records) {
      out << csv_field(r.model) << ',' << csv_field(r.point) << ',' << format_double(r.theory.real()) << ','
          << format_double(r.theory.imag()) << ',' << format_double(r.value.real()) << ','
          << format_double(r.value.imag()) << ',' << format_double(r.std_error) << ','
          << format_double(r.error) << ',' << format_double(r.tolerance) << ','
          << (r.pass ? "true" : "false") << ',' << (r.gating ? "true" : "false") << '\n';
    }
    close_out(out, p);
    result.outputs.push_back(p);
  }
  json streams = json::array();
  for (auto [stage, name] : {std::pair{Stage::walk, "walk"}, std::pair{Stage::limit, "limit"},
                             std::pair{Stage::coupled, "coupled"},
                             std::pair{Stage::sampling, "sampling"}}) {
    streams.push_back({{"stage", name}, {"stage_prefix", stream_id(stage, 0)}});
  }
  write_manifest(c, "verify", streams, {{"suite", report.suite}, {"passed", report.passed()}},
                 start, result);
  result.exit_code = report.passed() ? kExitOk : kExitVerification;
  return result;
}

// --- report --------------------------------------------------------------------

namespace {

struct Source {
  std::string name;
  std::string seed;
};

json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw IoError("cannot read " + p.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("malformed JSON in " + p.string() + ": " + e.what());
  }
}

std::vector<Ensemble> read_ensembles(const fs::path& p) {
  if (p.extension() == ".lwbf") {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot read " + p.string());
    const auto frame = read_frame(in);
    if (frame.header.columns != frame.header.dim + 2) {
      throw InputError(p.string() + " is not an ensemble frame");
    }
    return ensembles_from_table(frame.header.dim, frame.data);
  }
  std::ifstream in(p);
  if (!in) throw IoError("cannot read " + p.string());
  return read_ensemble_csv(in);
}

struct ReportTables {
  std::ostringstream msd, ecf, distance, records;
};

void add_ensembles(ReportTables& t, const Source& src, const std::vector<Ensemble>& ensembles,
                   const std::vector<double>& kscale) {
  for (const auto& e : ensembles) {
    const auto m = msd(e);
    t.msd << csv_field(src.name) << ',' << src.seed << ',' << format_double(e.time()) << ','
          << format_double(m.value) << ',' << format_double(m.std_error) << '\n';
    for (double c : kscale) {
      std::vector<double> k(e.dim(), 0.0);
      k[0] = c;
      const auto cf = empirical_cf(e, k);
      t.ecf << csv_field(src.name) << ',' << src.seed << ',' << format_double(e.time()) << ','
            << format_double(c) << ',' << format_double(cf.value.real()) << ','
            << format_double(cf.value.imag()) << ',' << format_double(cf.std_error) << '\n';
    }
  }
}

std::string json_number_text(const json& v) {
  if (v.is_number()) return format_double(v.get<double>());
  return "nan";
}

void add_report(ReportTables& t, const Source& src, const json& rep) {
  const std::string suite = rep.value("suite", "");
  for (const auto& r : rep.at("records")) {
    const std::string model = r.value("model", "");
    const std::string point = r.value("point", "");
    auto part = [](const json& v, const char* key) {
      if (v.is_object()) return json_number_text(v.at(key));
      return std::string(key) == std::string("re") ? json_number_text(v) : std::string("0");
    };
    t.records << csv_field(src.name) << ',' << src.seed << ',' << suite << ',' << csv_field(model)
              << ',' << csv_field(point) << ',' << part(r.at("theory"), "re") << ','
              << part(r.at("theory"), "im") << ',' << part(r.at("value"), "re") << ','
              << part(r.at("value"), "im") << ',' << json_number_text(r.at("tolerance")) << ','
              << (r.value("pass", false) ? "true" : "false") << '\n';
    if (r.contains("details") && r.at("details").contains("n")) {
      t.distance << csv_field(src.name) << ',' << src.seed << ',' << suite << ','
                 << csv_field(model) << ',' << json_number_text(r.at("details").at("n")) << ','
                 << json_number_text(r.at("value")) << '\n';
    }
  }
}

bool is_ensemble_file(const fs::path& p) {
  const std::string name = p.filename().string();
  return name.find("_ensemble.") != std::string::npos ||
         (p.extension() == ".csv" && [&] {
           std::ifstream in(p);
           std::string header;
           std::getline(in, header);
           return header.rfind("trajectory,time", 0) == 0;
         }());
}

}  // namespace

CommandResult cmd_report(const std::vector<fs::path>& inputs, const fs::path& out_dir,
                         const std::string& prefix, const std::vector<double>& kscale) {
  if (inputs.empty()) throw InputError("report: no input files given");
  std::string missing;
  for (const auto& p : inputs) {
    if (!fs::exists(p)) missing += (missing.empty() ? "" : ", ") + p.string();
  }
  if (!missing.empty()) throw IoError("report: missing inputs: " + missing);

  ReportTables t;
  for (const auto& p : inputs) {
    if (p.extension() == ".json") {
      const json j = read_json(p);
      if (j.contains("outputs")) {
        const Source src{p.filename().string(), std::to_string(j.value("seed", std::uint64_t{0}))};
        std::string absent;
        for (const auto& o : j.at("outputs")) {
          const fs::path f = p.parent_path() / o.at("file").get<std::string>();
          if (!fs::exists(f)) absent += (absent.empty() ? "" : ", ") + f.string();
        }
        if (!absent.empty()) throw IoError("report: missing inputs: " + absent);
        for (const auto& o : j.at("outputs")) {
          const fs::path f = p.parent_path() / o.at("file").get<std::string>();
          if (f.extension() == ".json") {
            add_report(t, src, read_json(f));
          } else if (is_ensemble_file(f)) {
            add_ensembles(t, src, read_ensembles(f), kscale);
          }
        }
      } else if (j.contains("records")) {
        add_report(t, {p.filename().string(), std::to_string(j.value("seed", std::uint64_t{0}))}, j);
      } else {
        throw InputError("report: " + p.string() + " is neither a manifest nor a verification report");
      }
    } else if (is_ensemble_file(p)) {
      add_ensembles(t, {p.filename().string(), "unknown"}, read_ensembles(p), kscale);
    } else {
      throw InputError("report: unrecognized input " + p.string());
    }
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());
  CommandResult result;
  auto emit = [&](const std::string& stem, const std::string& header, const std::ostringstream& body) {
    const fs::path p = out_dir / (prefix + "_" + stem + ".csv");
    auto out = open_out(p);
    out << header << '\n' << body.str();
    close_out(out, p);
    result.outputs.push_back(p);
  };
  emit("msd", "source,seed,t,msd,stderr", t.msd);
  emit("ecf", "source,seed,t,k,re_ecf,im_ecf,stderr", t.ecf);
  emit("distance", "source,seed,suite,model,n,distance", t.distance);
  emit("records",
       "source,seed,suite,model,point,theory_re,theory_im,value_re,value_im,tolerance,pass",
       t.records);
  return result;
}

}  // namespace levywalk
