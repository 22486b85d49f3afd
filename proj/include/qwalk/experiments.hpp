#pragma once

// Config-driven experiment runner. A config describes a sweep (step counts x
// noise settings); running it yields one curve per sweep point, written as
// one data file per curve plus a JSON manifest.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwalk/absorbing.hpp"
#include "qwalk/channels.hpp"
#include "qwalk/distribution.hpp"
#include "qwalk/dynamics.hpp"

namespace qwalk {

enum class RunKind { Walk, Bounded, Classical, Sample };
enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
  std::string name = "custom";
  RunKind kind = RunKind::Walk;
  Protocol protocol{};
  Topology topology = Topology::Line;
  /// Site count when topology is Circle.
  int circle_sites = 0;
  std::vector<int> steps{100};
  std::vector<NoiseSpec> noise{NoiseSpec{}};
  /// Barrier positions for bounded runs (one or two).
  std::vector<int> barriers;
  /// Unset: the state paired with the protocol's coin.
  std::optional<CoinState> initial;
  std::optional<std::uint64_t> seed;
  /// 0 = exact density evolution; M > 0 = average of M unraveled trajectories.
  std::int64_t trajectories = 0;
  /// Detected positions per curve for sample runs.
  std::int64_t shots = 0;
  /// Bounded runs: also emit the classical absorption curve.
  bool include_classical = false;
  TunnelingPlacement tunneling_placement = TunnelingPlacement::AfterShift;
  BarrierTiming barrier_timing = BarrierTiming::AfterShift;
  OutputFormat format = OutputFormat::Csv;

  CoinState initial_coin() const;
  /// False when a coin is paired with the other coin's initial state or the
  /// noise mix is outside the reference set (see NoiseSpec).
  bool is_reference_configuration() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&);
};

struct Violation {
  std::string field;
  std::string message;
};

/// Every problem with the config; empty when valid.
std::vector<Violation> check_config(const ExperimentConfig& cfg);

class ConfigError : public WalkError {
 public:
  explicit ConfigError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }
  nlohmann::json to_json() const;

 private:
  std::vector<Violation> violations_;
};

/// Throws ConfigError listing every violation.
void validate(const ExperimentConfig& cfg);

enum class CurveKind { Distribution, Absorption };

struct Curve {
  std::string label;
  CurveKind kind = CurveKind::Distribution;
  /// "quantum", "classical", "trajectory" or "sampled".
  std::string source;
  int steps = 0;
  NoiseSpec noise{};
  Distribution distribution;
  std::vector<AbsorptionRecord> absorption;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<Curve> curves;
  double wall_seconds = 0.0;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Named parameter set: "fig1" .. "fig4". Throws UnknownPreset.
ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);

/// File name (without directory) used for a curve.
std::string curve_file_name(const Curve& curve, std::size_t index, OutputFormat format);

/// Serialized data file body for a curve.
std::string render_curve(const Curve& curve, OutputFormat format);

nlohmann::json manifest(const ExperimentResult& result);

/// Writes every curve file and manifest.json into `dir` (created if needed).
/// Returns the data file paths in curve order.
std::vector<std::filesystem::path> write_experiment(const ExperimentResult& result,
                                                    const std::filesystem::path& dir);

const char* to_string(RunKind k);
const char* to_string(OutputFormat f);
const char* to_string(ProtocolVariant v);
const char* to_string(CoinChoice c);
const char* to_string(Topology t);
const char* to_string(TunnelingPlacement t);
const char* to_string(BarrierTiming t);

std::string version_string();

}  // namespace qwalk
