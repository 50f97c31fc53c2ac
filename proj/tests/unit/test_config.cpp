#include "levywalk/config.hpp"

#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "levywalk/errors.hpp"

using namespace levywalk;

namespace {

const char* kGlw = R"([model]
kind = glw
gamma = 0.5
b = 2
direction = uniform
dim = 2
n = 1000

[run]
times = 0.5, 1, 2.5
paths = 10000
seed = 7
threads = 2

[output]
dir = out
prefix = glw
)";

RunConfig parse(const std::string& text, const std::vector<std::string>& overrides = {}) {
  std::istringstream in(text);
  return parse_config(in, overrides, false);
}

std::string error_of(const std::string& text, const std::vector<std::string>& overrides = {}) {
  try {
    auto c = parse(text, overrides);
    validate(c);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse a walk config") {
  const auto c = parse(kGlw);
  CHECK(c.model == ModelKind::glw);
  CHECK(c.gamma == 0.5);
  CHECK(c.b == 2.0);
  CHECK(c.dim == 2);
  CHECK(c.n == 1000.0);
  CHECK(c.times == std::vector<double>{0.5, 1, 2.5});
  CHECK(c.horizon == 2.5);
  CHECK(c.paths == 10000u);
  CHECK(c.seed == 7u);
  CHECK(c.prefix == "glw");
  CHECK(c.direction_measure().is_uniform());
  CHECK_NOTHROW(validate(c));
  CHECK(c.walk_model().kind == WalkKind::glw);
  CHECK_THROWS_AS(c.limit_model(), ConfigError);
}

TEST_CASE("round trip") {
  const auto c = parse(kGlw);
  const auto text = serialize_config(c);
  CHECK(parse(text) == c);
  CHECK(serialize_config(parse(text)) == text);

  const auto lim = parse("[model]\nkind=limit-distributed\nscenario=jump-first\ngamma=1\nb=3\n"
                         "direction=atoms:1@0.25;-1@0.75\n[run]\nhorizon=4\neps=0.01\ntau_max=2\n");
  CHECK(parse(serialize_config(lim)) == lim);
  CHECK(lim.limit_model().scenario == Scenario::jump_first);
}

TEST_CASE("overrides win over the file and the environment") {
  const auto c = parse(kGlw, {"run.seed=99", "model.n=10"});
  CHECK(c.seed == 99u);
  CHECK(c.n == 10.0);

  setenv("LEVYWALK_SEED", "1234", 1);
  setenv("LEVYWALK_THREADS", "3", 1);
  std::istringstream in(kGlw);
  const auto env = parse_config(in, {}, true);
  CHECK(env.seed == 1234u);
  CHECK(env.threads == 3u);
  std::istringstream in2(kGlw);
  CHECK(parse_config(in2, {"run.seed=5"}, true).seed == 5u);
  unsetenv("LEVYWALK_SEED");
  unsetenv("LEVYWALK_THREADS");
}

TEST_CASE("field-level rejections") {
  CHECK(error_of(kGlw, {"run.paths=0"}).rfind("run.paths", 0) == 0);
  const auto b1 = error_of(kGlw, {"model.b=1.0"});
  CHECK(b1.find("integrability") != std::string::npos);
  CHECK(b1.find("p(beta)/(1-beta)") != std::string::npos);
  CHECK(error_of(kGlw, {"model.alpha=0.5"}).rfind("model.alpha", 0) == 0);
  CHECK(error_of("[model]\nkind=lw\n").rfind("model.alpha: required", 0) == 0);
  CHECK(error_of("[model]\nkind=lw\nalpha=1.5\n").rfind("model.alpha", 0) == 0);
  CHECK(error_of("[model]\nkind=glw\ngamma=0.5\nb=2\n").rfind("model.n", 0) == 0);
  CHECK(error_of(kGlw, {"model.scenario=wait-first"}).rfind("model.scenario", 0) == 0);
  CHECK(error_of(kGlw, {"run.eps=2"}).rfind("run.eps", 0) == 0);
  CHECK(error_of(kGlw, {"run.times=2,1"}).rfind("run.times", 0) == 0);
  CHECK(error_of(kGlw, {"run.horizon=1"}).rfind("run.times", 0) == 0);
  CHECK(error_of(kGlw, {"model.kind=spiral"}).rfind("model.kind", 0) == 0);
  CHECK(error_of(kGlw, {"model.colour=red"}).find("unknown configuration key") != std::string::npos);
  CHECK(error_of(kGlw, {"no-equals-sign"}).find("section.key=value") != std::string::npos);
  CHECK(error_of("[run]\npaths=abc\n").rfind("run.paths", 0) == 0);
}

TEST_CASE("direction descriptors") {
  CHECK(parse_direction(1, "point").atom_count() == 1);
  CHECK(parse_direction(1, "symmetric").atom_count() == 2);
  CHECK(parse_direction(3, "uniform").is_uniform());
  const auto d = parse_direction(2, "atoms:1,0@0.5;0,-1@0.5");
  CHECK(d.atom(1)[1] == -1.0);
  CHECK(parse_direction(2, d.describe()).describe() == d.describe());
  CHECK_THROWS_AS(parse_direction(2, "atoms:1,0"), ConfigError);
  CHECK_THROWS_AS(parse_direction(2, "atoms:1@1"), ConfigError);
}
