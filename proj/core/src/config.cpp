#include "levywalk/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "levywalk/errors.hpp"
#include "levywalk/parallel.hpp"

namespace levywalk {

namespace pt = boost::property_tree;

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::lw: return "lw";
    case ModelKind::olw: return "olw";
    case ModelKind::glw: return "glw";
    case ModelKind::golw: return "golw";
    case ModelKind::limit_stable: return "limit-stable";
    case ModelKind::limit_distributed: return "limit-distributed";
  }
  return "?";
}

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::binary: return "binary";
    case OutputFormat::auto_select: return "auto";
  }
  return "?";
}

bool is_limit(ModelKind kind) {
  return kind == ModelKind::limit_stable || kind == ModelKind::limit_distributed;
}

bool is_distributed(ModelKind kind) {
  return kind == ModelKind::glw || kind == ModelKind::golw || kind == ModelKind::limit_distributed;
}

namespace {

double parse_number(std::string_view field, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || text.find_first_not_of(" \t", used) != std::string::npos) {
    throw ConfigError(std::string(field) + ": not a number: '" + text + "'");
  }
  return v;
}

std::uint64_t parse_unsigned(std::string_view field, const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError(std::string(field) + ": expected a non-negative integer, got '" + text + "'");
  }
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw ConfigError(std::string(field) + ": integer out of range: '" + text + "'");
  }
}

std::vector<double> parse_list(std::string_view field, const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(parse_number(field, item));
  }
  if (out.empty()) throw ConfigError(std::string(field) + ": empty list");
  return out;
}

bool parse_bool(std::string_view field, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(std::string(field) + ": expected true/false, got '" + text + "'");
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "model.kind",   "model.scenario", "model.alpha",    "model.gamma",  "model.b",
      "model.direction", "model.dim",   "model.n",        "run.horizon",  "run.times",
      "run.paths",    "run.eps",        "run.tau_max",    "run.seed",     "run.threads",
      "output.dir",   "output.prefix",  "output.format",  "output.write_paths",
      "verify.suite"};
  return keys;
}

void apply_override(pt::ptree& tree, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override must look like section.key=value: '" + assignment + "'");
  }
  const std::string key = assignment.substr(0, eq);
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
  tree.put(key, assignment.substr(eq + 1));
}

void apply_environment(pt::ptree& tree) {
  if (const char* seed = std::getenv("LEVYWALK_SEED"); seed && *seed) tree.put("run.seed", seed);
  if (const char* threads = std::getenv("LEVYWALK_THREADS"); threads && *threads) {
    tree.put("run.threads", threads);
  }
}

std::optional<std::string> get(const pt::ptree& tree, const std::string& key) {
  if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(key, '.'))) {
    std::string s = *v;
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    return s;
  }
  return std::nullopt;
}

void reject_unknown(const pt::ptree& tree) {
  const auto& keys = known_keys();
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError("key '" + section + "' must live in a section");
    }
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      if (std::find(keys.begin(), keys.end(), full) == keys.end()) {
        throw ConfigError("unknown configuration key '" + full + "'");
      }
    }
  }
}

RunConfig from_tree(const pt::ptree& tree) {
  reject_unknown(tree);
  RunConfig c;
  if (auto v = get(tree, "model.kind")) {
    const std::string& k = *v;
    if (k == "lw") c.model = ModelKind::lw;
    else if (k == "olw") c.model = ModelKind::olw;
    else if (k == "glw") c.model = ModelKind::glw;
    else if (k == "golw") c.model = ModelKind::golw;
    else if (k == "limit-stable") c.model = ModelKind::limit_stable;
    else if (k == "limit-distributed") c.model = ModelKind::limit_distributed;
    else {
      throw ConfigError("model.kind: unknown model '" + k +
                        "' (expected lw, olw, glw, golw, limit-stable, limit-distributed)");
    }
  }
  if (auto v = get(tree, "model.scenario")) {
    if (*v == "wait-first") c.scenario = Scenario::wait_first;
    else if (*v == "jump-first") c.scenario = Scenario::jump_first;
    else throw ConfigError("model.scenario: expected wait-first or jump-first, got '" + *v + "'");
  }
  if (auto v = get(tree, "model.alpha")) c.alpha = parse_number("model.alpha", *v);
  if (auto v = get(tree, "model.gamma")) c.gamma = parse_number("model.gamma", *v);
  if (auto v = get(tree, "model.b")) c.b = parse_number("model.b", *v);
  if (auto v = get(tree, "model.direction")) c.direction = *v;
  if (auto v = get(tree, "model.dim")) c.dim = parse_unsigned("model.dim", *v);
  if (auto v = get(tree, "model.n")) c.n = parse_number("model.n", *v);

  const auto horizon = get(tree, "run.horizon");
  const auto times = get(tree, "run.times");
  if (times) c.times = parse_list("run.times", *times);
  if (horizon) c.horizon = parse_number("run.horizon", *horizon);
  if (horizon && !times) c.times = {c.horizon};
  if (times && !horizon) c.horizon = *std::max_element(c.times.begin(), c.times.end());
  if (auto v = get(tree, "run.paths")) c.paths = parse_unsigned("run.paths", *v);
  if (auto v = get(tree, "run.eps")) c.eps = parse_number("run.eps", *v);
  if (auto v = get(tree, "run.tau_max")) c.tau_max = parse_number("run.tau_max", *v);
  if (auto v = get(tree, "run.seed")) c.seed = parse_unsigned("run.seed", *v);
  if (auto v = get(tree, "run.threads")) {
    const auto t = parse_unsigned("run.threads", *v);
    if (t > 4096) throw ConfigError("run.threads: at most 4096 workers");
    c.threads = static_cast<unsigned>(t);
  }

  if (auto v = get(tree, "output.dir")) c.output_dir = *v;
  if (auto v = get(tree, "output.prefix")) c.prefix = *v;
  if (auto v = get(tree, "output.format")) {
    if (*v == "csv") c.format = OutputFormat::csv;
    else if (*v == "binary") c.format = OutputFormat::binary;
    else if (*v == "auto") c.format = OutputFormat::auto_select;
    else throw ConfigError("output.format: expected csv, binary or auto, got '" + *v + "'");
  }
  if (auto v = get(tree, "output.write_paths")) c.write_paths = parse_bool("output.write_paths", *v);
  if (auto v = get(tree, "verify.suite")) c.suite = *v;
  validate(c, false);
  return c;
}

std::string number_text(double v) {
  return format_double(v);
}

}  // namespace

DirectionMeasure parse_direction(std::size_t dim, std::string_view text) {
  if (dim == 0) throw ConfigError("model.dim: must be >= 1");
  if (text == "point") return DirectionMeasure::point(dim);
  if (text == "symmetric") return DirectionMeasure::symmetric_axis(dim);
  if (text == "uniform") return DirectionMeasure::uniform(dim);
  constexpr std::string_view prefix = "atoms:";
  if (text.substr(0, prefix.size()) != prefix) {
    throw ConfigError("model.direction: expected point, symmetric, uniform or atoms:..., got '" +
                      std::string(text) + "'");
  }
  std::vector<DirectionMeasure::Atom> atoms;
  std::istringstream in{std::string(text.substr(prefix.size()))};
  std::string item;
  while (std::getline(in, item, ';')) {
    const auto at = item.find('@');
    if (at == std::string::npos) {
      throw ConfigError("model.direction: atom '" + item + "' lacks '@weight'");
    }
    DirectionMeasure::Atom a;
    a.u = parse_list("model.direction", item.substr(0, at));
    a.weight = parse_number("model.direction", item.substr(at + 1));
    if (a.u.size() != dim) {
      throw ConfigError("model.direction: atom '" + item + "' does not have dim=" +
                        std::to_string(dim) + " components");
    }
    atoms.push_back(std::move(a));
  }
  try {
    return DirectionMeasure::discrete(dim, atoms);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("model.direction: ") + e.what());
  }
}

unsigned RunConfig::effective_threads() const {
  return threads == 0 ? default_thread_count() : threads;
}

WalkModel RunConfig::walk_model() const {
  const DirectionMeasure lambda = direction_measure();
  switch (model) {
    case ModelKind::lw: return {WalkKind::lw, HeavyTailLaw(*alpha), lambda};
    case ModelKind::olw: return {WalkKind::olw, HeavyTailLaw(*alpha), lambda};
    case ModelKind::glw:
      return {WalkKind::glw, ConditionalWaiting{*n, MixingDensity(*gamma, *b)}, lambda};
    case ModelKind::golw:
      return {WalkKind::golw, ConditionalWaiting{*n, MixingDensity(*gamma, *b)}, lambda};
    default: break;
  }
  throw ConfigError("model.kind: " + std::string(to_string(model)) + " is not a walk model");
}

LimitModel RunConfig::limit_model() const {
  const DirectionMeasure lambda = direction_measure();
  const Scenario sc = scenario.value_or(Scenario::wait_first);
  if (model == ModelKind::limit_stable) {
    return {StableMeasure{HeavyTailLaw(*alpha)}, lambda, sc, eps_or_default(), tau_max};
  }
  if (model == ModelKind::limit_distributed) {
    return {DistributedMeasure{MixingDensity(*gamma, *b)}, lambda, sc, eps_or_default(), tau_max};
  }
  throw ConfigError("model.kind: " + std::string(to_string(model)) + " is not a limit model");
}

void validate(const RunConfig& c, bool require_model) {
  if (is_distributed(c.model)) {
    if (c.alpha) {
      throw ConfigError("model.alpha: not allowed for " + std::string(to_string(c.model)) +
                        " (set gamma and b)");
    }
    if ((!c.gamma || !c.b) && (require_model || c.gamma || c.b)) {
      throw ConfigError("model.gamma/model.b: both required for " +
                        std::string(to_string(c.model)));
    }
    if (c.gamma && c.b) {
      const auto report = validate_mixing_density(*c.gamma, *c.b);
      if (!report.valid) throw ConfigError("model.gamma/model.b: " + report.message);
    }
  } else {
    if (c.gamma || c.b) {
      throw ConfigError("model.gamma/model.b: not allowed for " + std::string(to_string(c.model)) +
                        " (set alpha)");
    }
    if (!c.alpha && require_model) {
      throw ConfigError("model.alpha: required for " + std::string(to_string(c.model)));
    }
    if (c.alpha && !(*c.alpha > 0.0 && *c.alpha < 1.0)) {
      throw ConfigError("model.alpha: must lie in (0, 1), got " + number_text(*c.alpha));
    }
  }
  if (c.scenario && !is_limit(c.model)) {
    throw ConfigError("model.scenario: only limit models take a scenario (" +
                      std::string(to_string(c.model)) + " fixes the event order)");
  }
  if (c.dim == 0 || c.dim > 64) throw ConfigError("model.dim: must lie in [1, 64]");
  parse_direction(c.dim, c.direction);
  if (c.model == ModelKind::glw || c.model == ModelKind::golw) {
    if (!c.n && require_model) throw ConfigError("model.n: required for " + std::string(to_string(c.model)));
  }
  if (c.n && !(*c.n >= 1.0 && std::isfinite(*c.n))) {
    throw ConfigError("model.n: must be a finite number >= 1");
  }
  if (!(c.horizon > 0.0 && std::isfinite(c.horizon))) {
    throw ConfigError("run.horizon: must be positive and finite");
  }
  if (c.times.empty()) throw ConfigError("run.times: empty");
  for (std::size_t i = 0; i < c.times.size(); ++i) {
    if (!(c.times[i] >= 0.0)) throw ConfigError("run.times: times must be non-negative");
    if (i > 0 && c.times[i] < c.times[i - 1]) {
      throw ConfigError("run.times: times must be non-decreasing");
    }
  }
  if (c.times.back() > c.horizon) throw ConfigError("run.times: times exceed run.horizon");
  if (c.paths && *c.paths == 0) throw ConfigError("run.paths: must be >= 1");
  if (c.eps && !(*c.eps > 0.0 && *c.eps < 1.0)) throw ConfigError("run.eps: must lie in (0, 1)");
  if (!(c.tau_max > 0.0 && std::isfinite(c.tau_max))) {
    throw ConfigError("run.tau_max: must be positive and finite");
  }
  if (c.prefix.empty() || c.prefix.find('/') != std::string::npos) {
    throw ConfigError("output.prefix: must be a non-empty file-name prefix");
  }
}

RunConfig parse_config(std::istream& in, const std::vector<std::string>& overrides,
                       bool use_environment) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  if (use_environment) apply_environment(tree);
  for (const auto& o : overrides) apply_override(tree, o);
  return from_tree(tree);
}

RunConfig load_config(const std::filesystem::path& file, const std::vector<std::string>& overrides,
                      bool use_environment) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot read config file " + file.string());
  return parse_config(in, overrides, use_environment);
}

RunConfig config_from_overrides(const std::vector<std::string>& overrides, bool use_environment) {
  std::istringstream empty;
  return parse_config(empty, overrides, use_environment);
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "[model]\n";
  out << "kind = " << to_string(c.model) << '\n';
  if (c.scenario) out << "scenario = " << to_string(*c.scenario) << '\n';
  if (c.alpha) out << "alpha = " << number_text(*c.alpha) << '\n';
  if (c.gamma) out << "gamma = " << number_text(*c.gamma) << '\n';
  if (c.b) out << "b = " << number_text(*c.b) << '\n';
  out << "direction = " << c.direction << '\n';
  out << "dim = " << c.dim << '\n';
  if (c.n) out << "n = " << number_text(*c.n) << '\n';
  out << "\n[run]\n";
  out << "horizon = " << number_text(c.horizon) << '\n';
  out << "times = ";
  for (std::size_t i = 0; i < c.times.size(); ++i) {
    out << (i ? "," : "") << number_text(c.times[i]);
  }
  out << '\n';
  if (c.paths) out << "paths = " << *c.paths << '\n';
  if (c.eps) out << "eps = " << number_text(*c.eps) << '\n';
  out << "tau_max = " << number_text(c.tau_max) << '\n';
  out << "seed = " << c.seed << '\n';
  out << "threads = " << c.threads << '\n';
  out << "\n[output]\n";
  out << "dir = " << c.output_dir.string() << '\n';
  out << "prefix = " << c.prefix << '\n';
  out << "format = " << to_string(c.format) << '\n';
  out << "write_paths = " << (c.write_paths ? "true" : "false") << '\n';
  if (!c.suite.empty()) out << "\n[verify]\nsuite = " << c.suite << '\n';
  return out.str();
}

}  // namespace levywalk
