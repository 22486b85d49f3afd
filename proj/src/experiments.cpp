#include "qwalk/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "qwalk/classical.hpp"
#include "qwalk/measurement.hpp"

#ifndef QWALK_VERSION
#define QWALK_VERSION "0.0.0"
#endif

namespace qwalk {

using nlohmann::json;

std::string version_string() { return QWALK_VERSION; }

// ---------------------------------------------------------------------------
// Enum names

const char* to_string(RunKind k) {
  switch (k) {
    case RunKind::Walk: return "walk";
    case RunKind::Bounded: return "bounded";
    case RunKind::Classical: return "classical";
    case RunKind::Sample: return "sample";
  }
  return "walk";
}

const char* to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

const char* to_string(ProtocolVariant v) {
  return v == ProtocolVariant::Standard ? "standard" : "symmetrized";
}

const char* to_string(CoinChoice c) { return c == CoinChoice::Hadamard ? "hadamard" : "halfpi"; }

const char* to_string(Topology t) { return t == Topology::Line ? "line" : "circle"; }

const char* to_string(TunnelingPlacement t) {
  return t == TunnelingPlacement::AfterShift ? "after_shift" : "before_shift";
}

const char* to_string(BarrierTiming t) {
  return t == BarrierTiming::AfterShift ? "after_shift" : "before_coin";
}

namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(const std::string& s, const Enum (&values)[N], const char* what) {
  for (Enum v : values)
    if (s == to_string(v)) return v;
  throw ConfigError(std::vector<Violation>{{what, "unknown value '" + s + "'"}});
}

constexpr RunKind kKinds[] = {RunKind::Walk, RunKind::Bounded, RunKind::Classical, RunKind::Sample};
constexpr OutputFormat kFormats[] = {OutputFormat::Csv, OutputFormat::Json};
constexpr ProtocolVariant kVariants[] = {ProtocolVariant::Standard, ProtocolVariant::Symmetrized};
constexpr CoinChoice kCoins[] = {CoinChoice::Hadamard, CoinChoice::HalfPiPulse};
constexpr Topology kTopologies[] = {Topology::Line, Topology::Circle};
constexpr TunnelingPlacement kPlacements[] = {TunnelingPlacement::AfterShift,
                                              TunnelingPlacement::BeforeShift};
constexpr BarrierTiming kTimings[] = {BarrierTiming::AfterShift, BarrierTiming::BeforeCoin};

bool same_coin(const CoinState& a, const CoinState& b) { return a.a0 == b.a0 && a.a1 == b.a1; }

}  // namespace

// ---------------------------------------------------------------------------
// Config

CoinState ExperimentConfig::initial_coin() const {
  return initial ? *initial : reference_initial_coin(protocol.coin);
}

bool ExperimentConfig::is_reference_configuration() const {
  if (initial && !same_coin(*initial, reference_initial_coin(protocol.coin))) return false;
  if (protocol.variant == ProtocolVariant::Symmetrized && protocol.coin != CoinChoice::Hadamard)
    return false;
  return std::all_of(noise.begin(), noise.end(),
                     [](const NoiseSpec& n) { return n.is_reference_configuration(); });
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  const bool initial_eq = a.initial.has_value() == b.initial.has_value() &&
                          (!a.initial || same_coin(*a.initial, *b.initial));
  return initial_eq && a.name == b.name && a.kind == b.kind && a.protocol == b.protocol &&
         a.topology == b.topology && a.circle_sites == b.circle_sites && a.steps == b.steps &&
         a.noise == b.noise && a.barriers == b.barriers && a.seed == b.seed &&
         a.trajectories == b.trajectories && a.shots == b.shots &&
         a.include_classical == b.include_classical &&
         a.tunneling_placement == b.tunneling_placement && a.barrier_timing == b.barrier_timing &&
         a.format == b.format;
}

namespace {

std::string join_messages(const std::vector<Violation>& v) {
  std::string s = "invalid experiment config:";
  for (const auto& x : v) s += " " + x.field + ": " + x.message + ";";
  return s;
}

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

constexpr int kMaxSteps = 100000;

}  // namespace

ConfigError::ConfigError(std::vector<Violation> violations)
    : WalkError(ErrorKind::InvalidConfig, join_messages(violations)),
      violations_(std::move(violations)) {}

json ConfigError::to_json() const {
  json list = json::array();
  for (const auto& v : violations_) list.push_back({{"field", v.field}, {"message", v.message}});
  return {{"error", to_string(kind())}, {"violations", list}};
}

std::vector<Violation> check_config(const ExperimentConfig& cfg) {
  std::vector<Violation> out;
  auto bad = [&](std::string field, std::string msg) {
    out.push_back({std::move(field), std::move(msg)});
  };

  if (cfg.steps.empty()) bad("steps", "at least one step count is required");
  for (int n : cfg.steps) {
    if (n < 0 || n > kMaxSteps) {
      bad("steps", "step count " + std::to_string(n) + " outside [0, " +
                       std::to_string(kMaxSteps) + "]");
    }
  }
  if (cfg.topology == Topology::Circle && cfg.circle_sites < 2) {
    bad("topology", "circle needs at least 2 sites");
  }
  if (cfg.noise.empty()) bad("noise", "at least one noise setting is required");
  for (std::size_t i = 0; i < cfg.noise.size(); ++i) {
    const auto& n = cfg.noise[i];
    const std::string f = "noise[" + std::to_string(i) + "]";
    if (!in_unit(n.p)) bad(f + ".p", "must lie in [0, 1]");
    if (!in_unit(n.p_prime)) bad(f + ".p_prime", "must lie in [0, 1]");
    if (!in_unit(n.q)) bad(f + ".q", "must lie in [0, 1]");
    if (n.use_depolarizing && n.use_dephasing && !n.allow_composed_coin_noise) {
      bad(f, "depolarizing and dephasing together need allow_composed_coin_noise");
    }
  }
  if (cfg.initial && std::abs(cfg.initial->norm_sq() - 1.0) > 1e-12) {
    bad("initial", "coin state is not normalized");
  }
  if (cfg.trajectories < 0) bad("trajectories", "must be >= 0");
  if ((cfg.trajectories > 0 || cfg.kind == RunKind::Sample) && !cfg.seed) {
    bad("seed", "a seed is required for trajectory and sampling runs");
  }

  switch (cfg.kind) {
    case RunKind::Bounded: {
      std::set<int> unique(cfg.barriers.begin(), cfg.barriers.end());
      if (cfg.barriers.empty() || cfg.barriers.size() > 2 || unique.size() != cfg.barriers.size()) {
        bad("barriers", "bounded runs need one or two distinct barrier positions");
      }
      if (unique.count(0) != 0) bad("barriers", "a barrier cannot sit on the start site 0");
      if (cfg.topology != Topology::Line) bad("topology", "bounded runs are defined on a line");
      if (cfg.trajectories > 0) bad("trajectories", "bounded runs are exact only");
      break;
    }
    case RunKind::Sample:
      if (cfg.shots < 1) bad("shots", "sample runs need shots >= 1");
      if (!cfg.barriers.empty()) bad("barriers", "barriers apply to bounded runs only");
      break;
    case RunKind::Classical:
      if (cfg.topology != Topology::Line) bad("topology", "the classical baseline is a line walk");
      if (cfg.barriers.size() > 2) bad("barriers", "at most two barriers");
      if (std::count(cfg.barriers.begin(), cfg.barriers.end(), 0) != 0) {
        bad("barriers", "a barrier cannot sit on the start site 0");
      }
      break;
    case RunKind::Walk:
      if (!cfg.barriers.empty()) bad("barriers", "barriers apply to bounded runs only");
      break;
  }
  return out;
}

void validate(const ExperimentConfig& cfg) {
  auto v = check_config(cfg);
  if (!v.empty()) throw ConfigError(std::move(v));
}

// ---------------------------------------------------------------------------
// Presets

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fig4"}; }

ExperimentConfig preset(const std::string& name) {
  ExperimentConfig cfg;
  cfg.name = name;
  if (name == "fig1") {
    cfg.steps = {200};
    cfg.noise.clear();
    for (double p : {1.0, 0.99, 0.97, 0.95, 0.0}) cfg.noise.push_back(NoiseSpec::depolarizing(p));
  } else if (name == "fig2") {
    cfg.steps = {50, 100, 150, 200};
    cfg.noise = {NoiseSpec::none(), NoiseSpec::dephasing(0.98)};
  } else if (name == "fig3") {
    cfg.steps = {200};
    cfg.noise.clear();
    for (auto [p, q] : {std::pair{1.0, 1.0}, {1.0, 0.95}, {0.99, 1.0}, {0.99, 0.95}}) {
      cfg.noise.push_back(NoiseSpec::depolarizing(p).with_tunneling(q));
    }
  } else if (name == "fig4") {
    cfg.kind = RunKind::Bounded;
    // Long enough for every curve to settle onto its plateau.
    cfg.steps = {1000};
    cfg.barriers = {-10};
    cfg.noise = {NoiseSpec::none(), NoiseSpec::depolarizing(0.99)};
    cfg.include_classical = true;
  } else {
    throw WalkError(ErrorKind::UnknownPreset, "unknown preset '" + name + "'");
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Running

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string noise_label(const NoiseSpec& n) {
  std::string s;
  auto add = [&](const std::string& part) { s += (s.empty() ? "" : "_") + part; };
  if (n.use_depolarizing) add("p" + format_number(n.p));
  if (n.use_dephasing) add("pp" + format_number(n.p_prime));
  if (n.use_tunneling) add("q" + format_number(n.q));
  return s.empty() ? "ideal" : s;
}

PositionSpace walk_space(const ExperimentConfig& cfg, int max_steps, const NoiseSpec& noise) {
  if (cfg.topology == Topology::Circle) return PositionSpace::circle(cfg.circle_sites);
  const bool tunnel = noise.use_tunneling && noise.q != 1.0;
  return PositionSpace::line(std::max(1, tunnel ? 2 * max_steps : max_steps));
}

std::uint64_t curve_seed(std::uint64_t seed, std::size_t index) {
  // splitmix64 of (seed, index)
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Distribution to_distribution(const PureState& psi) { return position_distribution(psi); }
Distribution to_distribution(const DensityOperator& rho) { return position_distribution(rho); }
Distribution to_distribution(const Distribution& d) { return d; }

// Exact distributions of one noise setting at every requested step count,
// from a single evolution to the largest count.
std::vector<Distribution> exact_snapshots(const ExperimentConfig& cfg, const NoiseSpec& noise,
                                          const std::vector<int>& steps) {
  const int max_steps = *std::max_element(steps.begin(), steps.end());
  const PositionSpace space = walk_space(cfg, max_steps, noise);
  const StepOptions opts{cfg.tunneling_placement};
  std::map<int, Distribution> at;

  PureState psi = make_initial(space, cfg.initial_coin(), 0);
  auto record = [&](int m, auto&& state) {
    if (std::find(steps.begin(), steps.end(), m) != steps.end()) {
      Distribution d = to_distribution(state);
      d.steps = m;
      at[m] = std::move(d);
    }
  };
  if (noise.is_noiseless()) {
    record(0, psi);
    for (int m = 0; m < max_steps; ++m) {
      const StepPlan plan = plan_step(cfg.protocol, m);
      psi = step(std::move(psi), plan.coin, plan.orientation);
      record(m + 1, psi);
    }
  } else if (space.topology() == Topology::Circle) {
    DensityOperator rho = to_density(psi);
    record(0, rho);
    for (int m = 0; m < max_steps; ++m) {
      rho = noisy_step(std::move(rho), plan_step(cfg.protocol, m), noise, opts);
      record(m + 1, rho);
    }
  } else {
    // Evolve on a window that grows with the walk, reporting on the full one.
    const int rate = (noise.use_tunneling && noise.q != 1.0) ? 2 : 1;
    const int half = space.max_position();
    auto fitted = [&](int reach) { return PositionSpace::line(std::min(half, reach)); };
    auto padded = [&](int m, const DensityOperator& rho) {
      const Distribution inner = position_distribution(rho);
      Distribution d = Distribution::zeros(-half, half);
      for (int k = inner.first_position(); k <= inner.last_position(); ++k)
        d.probs()[static_cast<std::size_t>(k + half)] = inner.at(k);
      d.normalized = inner.normalized;
      record(m, d);
    };
    constexpr int kChunk = 64;
    DensityOperator rho = to_density(make_initial(fitted(rate + 1), cfg.initial_coin(), 0));
    padded(0, rho);
    for (int m = 0; m < max_steps; ++m) {
      const int need = std::min(half, (m + 1) * rate + 1);
      if (rho.space().max_position() < need) rho = embed(rho, fitted(need + kChunk));
      rho = noisy_step(std::move(rho), plan_step(cfg.protocol, m), noise, opts);
      padded(m + 1, rho);
    }
  }
  std::vector<Distribution> out;
  for (int n : steps) out.push_back(at.at(n));
  return out;
}

TrajectorySpec trajectory_spec(const ExperimentConfig& cfg, const NoiseSpec& noise, int steps) {
  TrajectorySpec spec;
  spec.space = walk_space(cfg, steps, noise);
  spec.protocol = cfg.protocol;
  spec.initial = cfg.initial_coin();
  spec.steps = steps;
  spec.noise = noise;
  spec.options = StepOptions{cfg.tunneling_placement};
  return spec;
}

// Work item: fills one or more curve slots.
struct Job {
  std::vector<std::size_t> slots;
  std::function<std::vector<Curve>()> run;
};

void run_jobs(std::vector<Job>& jobs, std::vector<Curve>& curves) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      auto produced = jobs[j].run();
      for (std::size_t i = 0; i < produced.size(); ++i) curves[jobs[j].slots[i]] = std::move(produced[i]);
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto threads = static_cast<unsigned>(std::min<std::size_t>(hw, jobs.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();

  std::vector<Curve> curves;
  std::vector<Job> jobs;
  auto reserve = [&](Curve c) {
    curves.push_back(std::move(c));
    return curves.size() - 1;
  };

  const int max_steps = *std::max_element(cfg.steps.begin(), cfg.steps.end());

  switch (cfg.kind) {
    case RunKind::Walk:
    case RunKind::Sample: {
      const bool sample = cfg.kind == RunKind::Sample;
      for (const auto& noise : cfg.noise) {
        if (cfg.trajectories == 0) {
          Job job;
          for (int n : cfg.steps) {
            Curve c;
            c.label = "n" + std::to_string(n) + "_" + noise_label(noise);
            c.source = sample ? "sampled" : "quantum";
            c.steps = n;
            c.noise = noise;
            job.slots.push_back(reserve(std::move(c)));
          }
          const std::size_t first_slot = job.slots.front();
          job.run = [&cfg, noise, first_slot, sample] {
            auto dists = exact_snapshots(cfg, noise, cfg.steps);
            std::vector<Curve> out;
            for (std::size_t i = 0; i < dists.size(); ++i) {
              Curve c;
              c.label = "n" + std::to_string(cfg.steps[i]) + "_" + noise_label(noise);
              c.source = sample ? "sampled" : "quantum";
              c.steps = cfg.steps[i];
              c.noise = noise;
              if (sample) {
                std::mt19937_64 rng(curve_seed(*cfg.seed, first_slot + i));
                c.distribution = sample_positions(dists[i], cfg.shots, rng);
                c.distribution.steps = cfg.steps[i];
              } else {
                c.distribution = std::move(dists[i]);
              }
              out.push_back(std::move(c));
            }
            return out;
          };
          jobs.push_back(std::move(job));
        } else {
          for (int n : cfg.steps) {
            Curve c;
            c.label = "n" + std::to_string(n) + "_" + noise_label(noise);
            c.source = sample ? "sampled" : "trajectory";
            c.steps = n;
            c.noise = noise;
            Job job;
            const std::size_t slot = reserve(c);
            job.slots = {slot};
            job.run = [&cfg, c, slot, sample]() mutable {
              const TrajectorySpec spec = trajectory_spec(cfg, c.noise, c.steps);
              const std::uint64_t seed = curve_seed(*cfg.seed, slot);
              c.distribution = sample ? sample_trajectory_positions(spec, cfg.shots, seed)
                                      : trajectory_average(spec, cfg.trajectories, seed);
              return std::vector<Curve>{c};
            };
            jobs.push_back(std::move(job));
          }
        }
      }
      break;
    }
    case RunKind::Classical: {
      const std::set<int> barriers(cfg.barriers.begin(), cfg.barriers.end());
      if (barriers.empty()) {
        for (int n : cfg.steps) {
          Curve c;
          c.label = "n" + std::to_string(n) + "_classical";
          c.source = "classical";
          c.steps = n;
          c.distribution = binomial_walk(n);
          reserve(std::move(c));
        }
      } else {
        Curve c;
        c.label = "classical";
        c.kind = CurveKind::Absorption;
        c.source = "classical";
        c.steps = max_steps;
        const auto series = classical_absorption_series(barriers, max_steps);
        for (std::size_t i = 0; i < series.size(); ++i) {
          const double prev = i == 0 ? 0.0 : series[i - 1];
          c.absorption.push_back(
              {static_cast<int>(i) + 1, series[i] - prev, series[i], 1.0 - series[i]});
        }
        reserve(std::move(c));
      }
      break;
    }
    case RunKind::Bounded: {
      BarrierConfig bc;
      bc.barriers = std::set<int>(cfg.barriers.begin(), cfg.barriers.end());
      bc.timing = cfg.barrier_timing;
      if (cfg.include_classical) {
        ExperimentConfig classical = cfg;
        classical.kind = RunKind::Classical;
        classical.steps = {max_steps};
        auto r = run_experiment(classical);
        reserve(std::move(r.curves.front()));
      }
      for (const auto& noise : cfg.noise) {
        Curve c;
        c.label = noise_label(noise);
        c.kind = CurveKind::Absorption;
        c.source = "quantum";
        c.steps = max_steps;
        c.noise = noise;
        Job job;
        job.slots = {reserve(c)};
        job.run = [&cfg, bc, c, max_steps]() mutable {
          c.absorption = run_bounded(bc, cfg.protocol, cfg.initial_coin(), c.noise, max_steps,
                                     StepOptions{cfg.tunneling_placement});
          return std::vector<Curve>{c};
        };
        jobs.push_back(std::move(job));
      }
      break;
    }
  }

  run_jobs(jobs, curves);

  ExperimentResult result;
  result.config = cfg;
  result.curves = std::move(curves);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

json noise_to_json(const NoiseSpec& n) {
  return {{"p", n.p},
          {"p_prime", n.p_prime},
          {"q", n.q},
          {"depolarizing", n.use_depolarizing},
          {"dephasing", n.use_dephasing},
          {"tunneling", n.use_tunneling},
          {"allow_composed_coin_noise", n.allow_composed_coin_noise}};
}

NoiseSpec noise_from_json(const json& j) {
  NoiseSpec n;
  n.p = j.value("p", 1.0);
  n.p_prime = j.value("p_prime", 1.0);
  n.q = j.value("q", 1.0);
  n.use_depolarizing = j.value("depolarizing", false);
  n.use_dephasing = j.value("dephasing", false);
  n.use_tunneling = j.value("tunneling", false);
  n.allow_composed_coin_noise = j.value("allow_composed_coin_noise", false);
  return n;
}

}  // namespace

json to_json(const ExperimentConfig& cfg) {
  json j;
  j["name"] = cfg.name;
  j["kind"] = to_string(cfg.kind);
  j["protocol"] = to_string(cfg.protocol.variant);
  j["coin"] = to_string(cfg.protocol.coin);
  j["topology"] = to_string(cfg.topology);
  j["circle_sites"] = cfg.circle_sites;
  j["steps"] = cfg.steps;
  j["noise"] = json::array();
  for (const auto& n : cfg.noise) j["noise"].push_back(noise_to_json(n));
  j["barriers"] = cfg.barriers;
  if (cfg.initial) {
    j["initial"] = {cfg.initial->a0.real(), cfg.initial->a0.imag(), cfg.initial->a1.real(),
                    cfg.initial->a1.imag()};
  } else {
    j["initial"] = nullptr;
  }
  j["seed"] = cfg.seed ? json(*cfg.seed) : json(nullptr);
  j["trajectories"] = cfg.trajectories;
  j["shots"] = cfg.shots;
  j["include_classical"] = cfg.include_classical;
  j["tunneling_placement"] = to_string(cfg.tunneling_placement);
  j["barrier_timing"] = to_string(cfg.barrier_timing);
  j["format"] = to_string(cfg.format);
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  try {
    ExperimentConfig cfg;
    cfg.name = j.value("name", cfg.name);
    cfg.kind = parse_enum(j.value("kind", "walk"), kKinds, "kind");
    cfg.protocol.variant = parse_enum(j.value("protocol", "standard"), kVariants, "protocol");
    cfg.protocol.coin = parse_enum(j.value("coin", "hadamard"), kCoins, "coin");
    cfg.topology = parse_enum(j.value("topology", "line"), kTopologies, "topology");
    cfg.circle_sites = j.value("circle_sites", 0);
    cfg.steps = j.value("steps", cfg.steps);
    if (j.contains("noise")) {
      cfg.noise.clear();
      for (const auto& n : j.at("noise")) cfg.noise.push_back(noise_from_json(n));
    }
    cfg.barriers = j.value("barriers", std::vector<int>{});
    if (j.contains("initial") && !j.at("initial").is_null()) {
      const auto v = j.at("initial").get<std::vector<double>>();
      if (v.size() != 4) throw ConfigError(std::vector<Violation>{{"initial", "expected [re0, im0, re1, im1]"}});
      cfg.initial = CoinState{cplx(v[0], v[1]), cplx(v[2], v[3])};
    }
    if (j.contains("seed") && !j.at("seed").is_null()) cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.trajectories = j.value("trajectories", std::int64_t{0});
    cfg.shots = j.value("shots", std::int64_t{0});
    cfg.include_classical = j.value("include_classical", false);
    cfg.tunneling_placement =
        parse_enum(j.value("tunneling_placement", "after_shift"), kPlacements, "tunneling_placement");
    cfg.barrier_timing =
        parse_enum(j.value("barrier_timing", "after_shift"), kTimings, "barrier_timing");
    cfg.format = parse_enum(j.value("format", "csv"), kFormats, "format");
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::vector<Violation>{{"config", e.what()}});
  }
}

std::string curve_file_name(const Curve& curve, std::size_t index, OutputFormat format) {
  char prefix[16];
  std::snprintf(prefix, sizeof prefix, "%02zu_", index);
  std::string name = prefix + curve.source + "_" + curve.label;
  for (char& ch : name) {
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.' || ch == '-'))
      ch = '_';
  }
  return name + (format == OutputFormat::Csv ? ".csv" : ".json");
}

namespace {

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string render_curve(const Curve& curve, OutputFormat format) {
  std::ostringstream os;
  if (format == OutputFormat::Csv) {
    if (curve.kind == CurveKind::Distribution) {
      os << "k,probability\n";
      const auto& d = curve.distribution;
      for (int k = d.first_position(); k <= d.last_position(); ++k) os << k << ',' << exact(d.at(k)) << '\n';
    } else {
      os << "step,cumulative_absorbed\n";
      for (const auto& r : curve.absorption) os << r.step << ',' << exact(r.cumulative) << '\n';
    }
    return os.str();
  }
  json j;
  if (curve.kind == CurveKind::Distribution) {
    std::vector<int> ks;
    for (int k = curve.distribution.first_position(); k <= curve.distribution.last_position(); ++k)
      ks.push_back(k);
    j["k"] = ks;
    j["probability"] = curve.distribution.probs();
  } else {
    std::vector<int> steps;
    std::vector<double> cum;
    for (const auto& r : curve.absorption) {
      steps.push_back(r.step);
      cum.push_back(r.cumulative);
    }
    j["step"] = steps;
    j["cumulative_absorbed"] = cum;
  }
  return j.dump(1) + "\n";
}

json manifest(const ExperimentResult& result) {
  json curves = json::array();
  for (std::size_t i = 0; i < result.curves.size(); ++i) {
    const Curve& c = result.curves[i];
    json e{{"file", curve_file_name(c, i, result.config.format)},
           {"label", c.label},
           {"source", c.source},
           {"kind", c.kind == CurveKind::Distribution ? "distribution" : "absorption"},
           {"steps", c.steps},
           {"noise", noise_to_json(c.noise)}};
    if (c.kind == CurveKind::Distribution) {
      const auto& d = c.distribution;
      e["total_mass"] = d.total();
      e["normalized"] = d.normalized;
      const SummaryStats s = summary(d);
      e["mean"] = s.mean;
      e["std_dev"] = s.std_dev;
      e["interval_mass"] = s.interval_mass;
      if (result.config.topology == Topology::Line) {
        e["tv_to_classical"] = total_variation(d, binomial_walk(c.steps));
      }
    } else if (!c.absorption.empty()) {
      e["final_cumulative_absorbed"] = c.absorption.back().cumulative;
      e["final_surviving"] = c.absorption.back().surviving;
      e["normalized"] = false;
    }
    curves.push_back(std::move(e));
  }
  return {{"tool", "qwalk"},
          {"version", version_string()},
          {"config", to_json(result.config)},
          {"reference_configuration", result.config.is_reference_configuration()},
          {"wall_seconds", result.wall_seconds},
          {"curves", curves}};
}

std::vector<std::filesystem::path> write_experiment(const ExperimentResult& result,
                                                    const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw WalkError(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());

  auto write = [](const std::filesystem::path& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw WalkError(ErrorKind::Io, "cannot open " + path.string());
    f << body;
    if (!f) throw WalkError(ErrorKind::Io, "write failed for " + path.string());
  };

  std::vector<std::filesystem::path> files;
  for (std::size_t i = 0; i < result.curves.size(); ++i) {
    const auto path = dir / curve_file_name(result.curves[i], i, result.config.format);
    write(path, render_curve(result.curves[i], result.config.format));
    files.push_back(path);
  }
  write(dir / "manifest.json", manifest(result).dump(2) + "\n");
  return files;
}

}  // namespace qwalk
