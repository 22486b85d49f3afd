#pragma once

#include <set>
#include <vector>

#include "qwalk/channels.hpp"
#include "qwalk/dynamics.hpp"
#include "qwalk/hilbert.hpp"

namespace qwalk {

/// When the barrier projection happens within a step.
enum class BarrierTiming {
  /// After the lattice move (and tunneling) that ends the step.
  AfterShift,
  /// At the start of the step, before the coin operation.
  BeforeCoin,
};

struct BarrierConfig {
  std::set<int> barriers;
  int max_steps = 0;
  int start = 0;
  BarrierTiming timing = BarrierTiming::AfterShift;

  /// Throws ParameterOutOfRange when empty, more than two barriers, or a
  /// barrier sits on the start site.
  void validate() const;
};

/// Projects out every barrier site without renormalizing; returns the
/// probability removed, tr(P_b rho) summed over barriers.
double project_out_barriers(PureState& psi, const std::set<int>& barriers);
double project_out_barriers(DensityOperator& rho, const std::set<int>& barriers);

struct BoundedStepResult {
  DensityOperator rho;
  double absorbed = 0.0;
};

/// One possibly-noisy step followed (or preceded, per cfg.timing) by the
/// barrier projections, with no renormalization.
BoundedStepResult bounded_step(DensityOperator rho, const StepPlan& plan, const NoiseSpec& noise,
                               const BarrierConfig& cfg, const StepOptions& opts = {});

struct AbsorptionRecord {
  int step = 0;
  double increment = 0.0;
  double cumulative = 0.0;
  double surviving = 1.0;
};

/// Line window that holds an n-step bounded walk. Without tunneling nothing
/// crosses a barrier, so the window stops at the outermost barriers.
PositionSpace bounded_window(const BarrierConfig& cfg, int steps, const NoiseSpec& noise);

/// Absorption time series for steps 1..n. Noiseless walks evolve a pure
/// state; otherwise the density operator is evolved exactly.
std::vector<AbsorptionRecord> run_bounded(const BarrierConfig& cfg, const Protocol& protocol,
                                          const CoinState& initial, const NoiseSpec& noise,
                                          int steps, const StepOptions& opts = {});

}  // namespace qwalk
