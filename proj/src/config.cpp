#include "hetsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

namespace hetsim {

namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "experiment", "mode",          "model",      "lambda",     "lambda_parent",
    "r_min",      "mu",            "cluster_radius", "sigma",  "intensity_family",
    "ring_radius", "ring_width",   "alpha",      "r0",         "noise",
    "theta",      "d",             "aloha_p",    "fhma_n",     "antennas",
    "relay_grid", "window_half",   "reps",       "seed",       "sweep",
    "sweep_values", "out",         "threads",    "delay_cap"};

const std::set<std::string, std::less<>> kSweepable = {
    "lambda", "lambda_parent", "r_min",   "mu",    "cluster_radius", "sigma",
    "ring_radius", "ring_width", "alpha", "r0",    "noise",          "theta",
    "d",      "aloha_p",       "fhma_n",  "antennas", "window_half"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double(std::string_view value, std::string_view key, int line) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError(std::string(key) + " expects a number, got '" + std::string(value) + "'",
                      line);
  }
  return out;
}

std::uint64_t parse_u64(std::string_view value, std::string_view key, int line) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError(
        std::string(key) + " expects a non-negative integer, got '" + std::string(value) + "'",
        line);
  }
  return out;
}

std::vector<double> parse_double_list(std::string_view value, std::string_view key, int line) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const std::size_t comma = value.find(',', start);
    const std::string_view item =
        trim(value.substr(start, comma == std::string_view::npos ? value.size() - start
                                                                 : comma - start));
    if (item.empty()) {
      throw ConfigError(std::string(key) + " has an empty list element", line);
    }
    out.push_back(parse_double(item, key, line));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

int required_integer(double v, std::string_view key, int line) {
  if (v != std::floor(v) || !(v >= 1.0) || v > 1e9) {
    throw ConfigError(std::string(key) + " expects a positive integer", line);
  }
  return static_cast<int>(v);
}

struct KeyedValue {
  std::string value;
  int line = 0;
};

}  // namespace

// Domain rules shared by the parser and apply_sweep_value. `line` is 0 when
// the value arrives through a sweep.
static void check_domain(const std::string& key, double v, int line) {
  auto fail = [&](const char* msg) { throw ConfigError(key + " " + msg, line); };
  if (key == "alpha" && !(v > 2.0)) throw ConfigError("alpha must exceed 2", line);
  if ((key == "lambda" || key == "lambda_parent" || key == "r_min" || key == "mu" ||
       key == "cluster_radius" || key == "sigma" || key == "ring_radius" || key == "r0" ||
       key == "noise") &&
      !(v >= 0.0)) {
    fail("must be >= 0");
  }
  if ((key == "theta" || key == "d" || key == "window_half" || key == "delay_cap" ||
       key == "ring_width") &&
      !(v > 0.0)) {
    fail("must be > 0");
  }
  if (key == "aloha_p" && !(v >= 0.0 && v <= 1.0)) fail("must be in [0, 1]");
  if ((key == "fhma_n" || key == "antennas") && !(v >= 1.0 && v == std::floor(v))) {
    fail("expects a positive integer");
  }
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, KeyedValue, std::less<>> entries;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected 'key = value', got '" + std::string(line) + "'", line_no);
    }
    const std::string key{trim(line.substr(0, eq))};
    const std::string value{trim(line.substr(eq + 1))};
    if (key.empty()) throw ConfigError("empty key", line_no);
    if (!kKnownKeys.contains(key)) throw ConfigError("unknown key '" + key + "'", line_no);
    if (value.empty()) throw ConfigError(key + " has an empty value", line_no);
    if (entries.contains(key)) throw ConfigError("duplicate key '" + key + "'", line_no);
    entries.emplace(key, KeyedValue{value, line_no});
  }

  auto take = [&](std::string_view key) -> const KeyedValue* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };
  auto require = [&](std::string_view key) -> const KeyedValue& {
    const KeyedValue* kv = take(key);
    if (!kv) throw ConfigError("missing required key: " + std::string(key));
    return *kv;
  };

  RunConfig cfg;

  {
    const KeyedValue& kv = require("experiment");
    if (kv.value == "coverage") cfg.experiment = ExperimentKind::coverage;
    else if (kv.value == "simo") cfg.experiment = ExperimentKind::simo;
    else if (kv.value == "delay") cfg.experiment = ExperimentKind::delay;
    else if (kv.value == "relay") cfg.experiment = ExperimentKind::relay;
    else throw ConfigError("experiment must be coverage, simo, delay or relay", kv.line);
  }
  if (const KeyedValue* kv = take("mode")) {
    if (kv->value == "correlated") cfg.mode = ModeSelect::correlated;
    else if (kv->value == "independent") cfg.mode = ModeSelect::independent;
    else if (kv->value == "both") cfg.mode = ModeSelect::both;
    else throw ConfigError("mode must be correlated, independent or both", kv->line);
  }
  if (const KeyedValue* kv = take("model")) {
    if (kv->value == "ppp") cfg.model = ModelKind::ppp;
    else if (kv->value == "inhomogeneous_ppp") cfg.model = ModelKind::inhomogeneous_ppp;
    else if (kv->value == "matern_hardcore") cfg.model = ModelKind::matern_hardcore;
    else if (kv->value == "matern_cluster") cfg.model = ModelKind::matern_cluster;
    else if (kv->value == "thomas_cluster") cfg.model = ModelKind::thomas_cluster;
    else {
      throw ConfigError(
          "model must be ppp, inhomogeneous_ppp, matern_hardcore, matern_cluster or "
          "thomas_cluster",
          kv->line);
    }
  }

  auto read_double = [&](const char* key, double* dst) {
    if (const KeyedValue* kv = take(key)) {
      *dst = parse_double(kv->value, key, kv->line);
      check_domain(key, *dst, kv->line);
    }
  };
  auto require_double = [&](const char* key, double* dst) {
    const KeyedValue& kv = require(key);
    *dst = parse_double(kv.value, key, kv.line);
    check_domain(key, *dst, kv.line);
  };

  // Model parameters; required set depends on the model.
  switch (cfg.model) {
    case ModelKind::ppp:
      require_double("lambda", &cfg.lambda);
      break;
    case ModelKind::inhomogeneous_ppp: {
      const KeyedValue& kv = require("intensity_family");
      cfg.intensity_family = kv.value;
      require_double("lambda", &cfg.lambda);
      if (kv.value == "gaussian_ring") {
        require_double("ring_radius", &cfg.ring_radius);
        require_double("ring_width", &cfg.ring_width);
      } else if (kv.value == "gaussian_bump") {
        require_double("sigma", &cfg.sigma);
        if (!(cfg.sigma > 0.0)) throw ConfigError("sigma must be > 0 for gaussian_bump", kv.line);
      } else if (kv.value != "constant") {
        throw ConfigError("intensity_family must be constant, gaussian_ring or gaussian_bump",
                          kv.line);
      }
      break;
    }
    case ModelKind::matern_hardcore:
      require_double("lambda_parent", &cfg.lambda_parent);
      require_double("r_min", &cfg.r_min);
      break;
    case ModelKind::matern_cluster:
      require_double("lambda_parent", &cfg.lambda_parent);
      require_double("mu", &cfg.mu);
      require_double("cluster_radius", &cfg.cluster_radius);
      break;
    case ModelKind::thomas_cluster:
      require_double("lambda_parent", &cfg.lambda_parent);
      require_double("mu", &cfg.mu);
      require_double("sigma", &cfg.sigma);
      break;
  }

  require_double("alpha", &cfg.alpha);
  read_double("r0", &cfg.r0);
  read_double("noise", &cfg.noise);
  read_double("theta", &cfg.theta);
  read_double("d", &cfg.d);
  read_double("window_half", &cfg.window_half);
  read_double("delay_cap", &cfg.delay_cap);

  {
    const KeyedValue& kv = require("reps");
    cfg.reps = parse_u64(kv.value, "reps", kv.line);
    if (cfg.reps < 1) throw ConfigError("reps must be >= 1", kv.line);
  }
  {
    const KeyedValue& kv = require("seed");
    cfg.seed = parse_u64(kv.value, "seed", kv.line);
  }
  if (const KeyedValue* kv = take("threads")) {
    cfg.threads = static_cast<unsigned>(parse_u64(kv->value, "threads", kv->line));
  }
  if (const KeyedValue* kv = take("out")) cfg.out = kv->value;

  // MAC selection: at most one of aloha_p / fhma_n.
  const KeyedValue* aloha = take("aloha_p");
  const KeyedValue* fhma = take("fhma_n");
  if (aloha && fhma) {
    throw ConfigError("aloha_p and fhma_n are mutually exclusive", std::max(aloha->line, fhma->line));
  }
  if (aloha) {
    cfg.aloha_p = parse_double(aloha->value, "aloha_p", aloha->line);
    check_domain("aloha_p", cfg.aloha_p, aloha->line);
  }
  if (fhma) {
    const double v = parse_double(fhma->value, "fhma_n", fhma->line);
    cfg.fhma_n = required_integer(v, "fhma_n", fhma->line);
  }

  if (const KeyedValue* kv = take("antennas")) {
    const double v = parse_double(kv->value, "antennas", kv->line);
    cfg.antennas = required_integer(v, "antennas", kv->line);
  }

  if (const KeyedValue* kv = take("relay_grid")) {
    if (cfg.experiment != ExperimentKind::relay) {
      throw ConfigError("relay_grid only applies to the relay experiment", kv->line);
    }
    cfg.relay_grid = parse_double_list(kv->value, "relay_grid", kv->line);
    for (double r : cfg.relay_grid) {
      if (!(r > -1.0 && r < 1.0)) {
        throw ConfigError("relay_grid values must lie strictly inside (-1, 1)", kv->line);
      }
    }
  }

  const KeyedValue* sweep = take("sweep");
  const KeyedValue* sweep_values = take("sweep_values");
  if (sweep_values && !sweep) {
    throw ConfigError("sweep_values given without sweep", sweep_values->line);
  }
  if (sweep) {
    if (!kSweepable.contains(sweep->value)) {
      throw ConfigError("sweep must name a numeric scenario parameter, got '" + sweep->value + "'",
                        sweep->line);
    }
    if (!sweep_values) throw ConfigError("sweep requires sweep_values", sweep->line);
    cfg.sweep = sweep->value;
    cfg.sweep_values = parse_double_list(sweep_values->value, "sweep_values", sweep_values->line);
    for (double v : cfg.sweep_values) check_domain(cfg.sweep, v, sweep_values->line);
  }

  // Experiment-specific sweep rules.
  switch (cfg.experiment) {
    case ExperimentKind::delay:
      if (!sweep) {
        throw ConfigError("missing required key: sweep (delay requires sweep = aloha_p)");
      }
      if (cfg.sweep != "aloha_p") {
        throw ConfigError("delay requires sweep = aloha_p", sweep->line);
      }
      for (double v : cfg.sweep_values) {
        if (!(v > 0.0 && v <= 1.0)) {
          throw ConfigError("delay sweep values must lie in (0, 1]",
                            sweep_values ? sweep_values->line : 0);
        }
      }
      break;
    case ExperimentKind::relay:
      if (cfg.relay_grid.empty()) {
        throw ConfigError("missing required key: relay_grid");
      }
      if (sweep) {
        throw ConfigError("relay sweeps relay_grid; sweep is not allowed", sweep->line);
      }
      break;
    default:
      break;
  }

  return cfg;
}

ScenarioSpec build_scenario(const RunConfig& cfg) {
  ScenarioSpec scenario;
  scenario.window = Window::centered_square(cfg.window_half);
  scenario.channel = ChannelParams{cfg.alpha, cfg.r0, cfg.noise, 1.0};
  scenario.theta = cfg.theta;
  scenario.link_distance = cfg.d;
  scenario.reps = cfg.reps;
  scenario.seed = cfg.seed;
  scenario.delay_cap = cfg.delay_cap;

  if (cfg.aloha_p >= 0.0) {
    scenario.mac = MacSpec::make_aloha(cfg.aloha_p);
  } else if (cfg.fhma_n > 0) {
    scenario.mac = MacSpec::make_fhma(cfg.fhma_n);
  } else {
    scenario.mac = MacSpec::make_always_on();
  }

  Tier tier;
  switch (cfg.model) {
    case ModelKind::ppp:
      tier.process = HomogeneousPpp{cfg.lambda};
      break;
    case ModelKind::inhomogeneous_ppp: {
      InhomogeneousPpp spec;
      if (cfg.intensity_family == "constant") {
        spec.family = ConstantIntensity{cfg.lambda};
      } else if (cfg.intensity_family == "gaussian_ring") {
        spec.family = GaussianRing{cfg.lambda, cfg.ring_radius, cfg.ring_width};
      } else {
        spec.family = GaussianBump{cfg.lambda, Point{0.0, 0.0}, cfg.sigma};
      }
      tier.process = spec;
      break;
    }
    case ModelKind::matern_hardcore:
      tier.process = MaternHardCore{cfg.lambda_parent, cfg.r_min};
      break;
    case ModelKind::matern_cluster:
      tier.process = MaternCluster{cfg.lambda_parent, cfg.mu, cfg.cluster_radius};
      break;
    case ModelKind::thomas_cluster:
      tier.process = ThomasCluster{cfg.lambda_parent, cfg.mu, cfg.sigma};
      break;
  }
  scenario.tiers = {tier};
  return scenario;
}

RunConfig apply_sweep_value(const RunConfig& cfg, double value) {
  RunConfig next = cfg;
  const std::string& key = cfg.sweep;
  check_domain(key, value, 0);
  if (key == "lambda") next.lambda = value;
  else if (key == "lambda_parent") next.lambda_parent = value;
  else if (key == "r_min") next.r_min = value;
  else if (key == "mu") next.mu = value;
  else if (key == "cluster_radius") next.cluster_radius = value;
  else if (key == "sigma") next.sigma = value;
  else if (key == "ring_radius") next.ring_radius = value;
  else if (key == "ring_width") next.ring_width = value;
  else if (key == "alpha") next.alpha = value;
  else if (key == "r0") next.r0 = value;
  else if (key == "noise") next.noise = value;
  else if (key == "theta") next.theta = value;
  else if (key == "d") next.d = value;
  else if (key == "aloha_p") next.aloha_p = value;
  else if (key == "fhma_n") next.fhma_n = static_cast<int>(value);
  else if (key == "antennas") next.antennas = static_cast<int>(value);
  else if (key == "window_half") next.window_half = value;
  else throw ConfigError("sweep parameter '" + key + "' is not sweepable");
  return next;
}

}  // namespace hetsim
