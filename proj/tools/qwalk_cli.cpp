// qwalk: run coined quantum walk experiments and write CSV/JSON curves.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwalk/experiments.hpp"

using namespace qwalk;
using nlohmann::json;

namespace {

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

template <typename T>
T parse_number(const std::string& text, const std::string& flag) {
  std::istringstream is(text);
  T v{};
  if (!(is >> v) || !is.eof()) throw UsageError(flag + ": not a number: '" + text + "'");
  return v;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const std::string& flag) {
  std::vector<T> out;
  for (const auto& item : split(text)) out.push_back(parse_number<T>(item, flag));
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

struct Flags {
  std::string steps;
  std::string topology = "line";
  std::string protocol = "standard";
  std::string coin = "hadamard";
  std::string initial;
  std::string p, p_prime, q;
  std::string barrier;
  std::int64_t trajectories = 0;
  std::int64_t shots = 10000;
  std::optional<std::uint64_t> seed;
  std::string out = "qwalk_out";
  std::string format = "csv";
  std::string tunneling = "after-shift";
  std::string barrier_timing = "after-shift";
  bool classical = false;
  std::string preset_name;
};

void add_walk_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--topology", f.topology, "line or circle:N")->capture_default_str();
  cmd->add_option("--protocol", f.protocol, "standard or symmetrized")->capture_default_str();
  cmd->add_option("--coin", f.coin, "hadamard or halfpi")->capture_default_str();
  cmd->add_option("--initial", f.initial, "initial coin state: symmetric, plus, up, down");
  cmd->add_option("--p", f.p, "depolarizing fidelity (comma list sweeps)");
  cmd->add_option("--p-prime", f.p_prime, "dephasing fidelity (comma list sweeps)");
  cmd->add_option("--q", f.q, "tunneling fidelity (comma list sweeps)");
  cmd->add_option("--tunneling", f.tunneling, "after-shift or before-shift")->capture_default_str();
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--out", f.out, "output directory")->capture_default_str();
  cmd->add_option("--format", f.format, "csv or json")->capture_default_str();
}

CoinState parse_initial(const std::string& s) {
  const double r = 1.0 / std::sqrt(2.0);
  if (s == "symmetric") return symmetric_coin_state();
  if (s == "plus") return {r, r};
  if (s == "up") return {1.0, 0.0};
  if (s == "down") return {0.0, 1.0};
  throw UsageError("--initial: expected symmetric, plus, up or down, got '" + s + "'");
}

std::vector<NoiseSpec> noise_sweep(const Flags& f) {
  std::vector<std::optional<double>> ps{std::nullopt}, pps{std::nullopt}, qs{std::nullopt};
  auto fill = [](const std::string& text, const char* flag, std::vector<std::optional<double>>& out) {
    if (text.empty()) return;
    out.clear();
    for (double v : parse_list<double>(text, flag)) out.emplace_back(v);
  };
  fill(f.p, "--p", ps);
  fill(f.p_prime, "--p-prime", pps);
  fill(f.q, "--q", qs);
  std::vector<NoiseSpec> out;
  for (const auto& p : ps)
    for (const auto& pp : pps)
      for (const auto& q : qs) {
        NoiseSpec n;
        if (p) {
          n.p = *p;
          n.use_depolarizing = true;
        }
        if (pp) {
          n.p_prime = *pp;
          n.use_dephasing = true;
        }
        if (q) {
          n.q = *q;
          n.use_tunneling = true;
        }
        out.push_back(n);
      }
  return out;
}

void apply_walk_flags(const Flags& f, ExperimentConfig& cfg) {
  if (f.topology == "line") {
    cfg.topology = Topology::Line;
  } else if (f.topology.rfind("circle:", 0) == 0) {
    cfg.topology = Topology::Circle;
    cfg.circle_sites = parse_number<int>(f.topology.substr(7), "--topology");
  } else {
    throw UsageError("--topology: expected line or circle:N, got '" + f.topology + "'");
  }
  if (f.protocol == "standard") {
    cfg.protocol.variant = ProtocolVariant::Standard;
  } else if (f.protocol == "symmetrized") {
    cfg.protocol.variant = ProtocolVariant::Symmetrized;
  } else {
    throw UsageError("--protocol: expected standard or symmetrized, got '" + f.protocol + "'");
  }
  if (f.coin == "hadamard") {
    cfg.protocol.coin = CoinChoice::Hadamard;
  } else if (f.coin == "halfpi") {
    cfg.protocol.coin = CoinChoice::HalfPiPulse;
  } else {
    throw UsageError("--coin: expected hadamard or halfpi, got '" + f.coin + "'");
  }
  if (!f.initial.empty()) cfg.initial = parse_initial(f.initial);
  if (f.tunneling == "after-shift") {
    cfg.tunneling_placement = TunnelingPlacement::AfterShift;
  } else if (f.tunneling == "before-shift") {
    cfg.tunneling_placement = TunnelingPlacement::BeforeShift;
  } else {
    throw UsageError("--tunneling: expected after-shift or before-shift, got '" + f.tunneling + "'");
  }
  cfg.noise = noise_sweep(f);
}

void apply_common(const Flags& f, ExperimentConfig& cfg) {
  if (f.format == "csv") {
    cfg.format = OutputFormat::Csv;
  } else if (f.format == "json") {
    cfg.format = OutputFormat::Json;
  } else {
    throw UsageError("--format: expected csv or json, got '" + f.format + "'");
  }
}

void apply_barriers(const Flags& f, ExperimentConfig& cfg) {
  if (!f.barrier.empty()) cfg.barriers = parse_list<int>(f.barrier, "--barrier");
  if (f.barrier_timing == "after-shift") {
    cfg.barrier_timing = BarrierTiming::AfterShift;
  } else if (f.barrier_timing == "before-coin") {
    cfg.barrier_timing = BarrierTiming::BeforeCoin;
  } else {
    throw UsageError("--barrier-timing: expected after-shift or before-coin, got '" + f.barrier_timing + "'");
  }
}

void print_error(const json& j) { std::cerr << j.dump(2) << '\n'; }

int run(const ExperimentConfig& cfg, const std::string& out) {
  const auto result = run_experiment(cfg);
  const auto files = write_experiment(result, out);
  for (const auto& f : files) std::cout << f.string() << '\n';
  std::cout << (std::filesystem::path(out) / "manifest.json").string() << '\n';
  if (!cfg.is_reference_configuration()) {
    std::cerr << "note: parameter combination is outside the reference configurations\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coined quantum walk simulator"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);
  Flags f;

  auto* walk = app.add_subcommand("walk", "position distributions of a (noisy) walk");
  walk->add_option("--steps", f.steps, "step count(s), comma separated")->required();
  add_walk_flags(walk, f);
  walk->add_option("--trajectories", f.trajectories, "0 = exact density evolution")->capture_default_str();
  walk->add_option("--seed", f.seed, "seed for trajectory runs");
  add_common(walk, f);

  auto* bounded = app.add_subcommand("bounded", "absorption at one or two barriers");
  bounded->add_option("--steps", f.steps, "step count")->required();
  bounded->add_option("--barrier", f.barrier, "X or X,Y")->required();
  bounded->add_option("--barrier-timing", f.barrier_timing, "after-shift or before-coin")->capture_default_str();
  bounded->add_flag("--classical", f.classical, "also emit the classical absorption curve");
  add_walk_flags(bounded, f);
  add_common(bounded, f);

  auto* classical = app.add_subcommand("classical", "classical random walk baseline");
  classical->add_option("--steps", f.steps, "step count(s), comma separated")->required();
  classical->add_option("--barrier", f.barrier, "X or X,Y: absorption series instead");
  add_common(classical, f);

  auto* sample = app.add_subcommand("sample", "simulated position measurements");
  sample->add_option("--steps", f.steps, "step count(s), comma separated")->required();
  add_walk_flags(sample, f);
  sample->add_option("--shots", f.shots, "detections per curve")->capture_default_str();
  sample->add_option("--trajectories", f.trajectories, "nonzero: one trajectory per shot")->capture_default_str();
  sample->add_option("--seed", f.seed, "seed")->required();
  add_common(sample, f);

  auto* pre = app.add_subcommand("preset", "run a named parameter set");
  pre->add_option("name", f.preset_name, "fig1, fig2, fig3 or fig4")->required();
  pre->add_option("--steps", f.steps, "override the step count(s)");
  pre->add_option("--trajectories", f.trajectories, "0 = exact density evolution")->capture_default_str();
  pre->add_option("--seed", f.seed, "seed for trajectory runs");
  add_common(pre, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error({{"error", "invalid_arguments"}, {"message", e.what()}});
    return kUsageError;
  }

  try {
    ExperimentConfig cfg;
    if (*pre) {
      cfg = preset(f.preset_name);
      if (!f.steps.empty()) cfg.steps = parse_list<int>(f.steps, "--steps");
      cfg.trajectories = f.trajectories;
    } else {
      cfg.steps = parse_list<int>(f.steps, "--steps");
      if (*walk) {
        cfg.kind = RunKind::Walk;
        apply_walk_flags(f, cfg);
        cfg.trajectories = f.trajectories;
      } else if (*bounded) {
        cfg.kind = RunKind::Bounded;
        apply_walk_flags(f, cfg);
        apply_barriers(f, cfg);
        cfg.include_classical = f.classical;
      } else if (*classical) {
        cfg.kind = RunKind::Classical;
        apply_barriers(f, cfg);
      } else {
        cfg.kind = RunKind::Sample;
        apply_walk_flags(f, cfg);
        cfg.trajectories = f.trajectories;
        cfg.shots = f.shots;
      }
      cfg.name = app.get_subcommands().front()->get_name();
    }
    cfg.seed = f.seed;
    apply_common(f, cfg);
    return run(cfg, f.out);
  } catch (const UsageError& e) {
    print_error({{"error", "invalid_arguments"}, {"message", e.what()}});
    return kUsageError;
  } catch (const ConfigError& e) {
    print_error(e.to_json());
    return kUsageError;
  } catch (const WalkError& e) {
    print_error({{"error", to_string(e.kind())}, {"message", e.what()}});
    return e.kind() == ErrorKind::Io ? kRuntimeError : kUsageError;
  } catch (const std::exception& e) {
    print_error({{"error", "internal"}, {"message", e.what()}});
    return kRuntimeError;
  }
}
