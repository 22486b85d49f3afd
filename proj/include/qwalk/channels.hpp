#pragma once

#include <cstdint>
#include <random>

#include "qwalk/dynamics.hpp"
#include "qwalk/hilbert.hpp"

namespace qwalk {

/// Error-channel parameters. A channel is active only when its `use_*` flag
/// is set; p, p_prime and q are fidelities (1 = no error).
struct NoiseSpec {
  double p = 1.0;        // depolarizing
  double p_prime = 1.0;  // dephasing
  double q = 1.0;        // incoherent tunneling
  bool use_depolarizing = false;
  bool use_dephasing = false;
  bool use_tunneling = false;
  /// Depolarizing and dephasing together is only allowed behind this flag.
  bool allow_composed_coin_noise = false;

  static NoiseSpec none() { return {}; }
  static NoiseSpec depolarizing(double p);
  static NoiseSpec dephasing(double p_prime);
  static NoiseSpec tunneling(double q);
  NoiseSpec with_tunneling(double q) const;

  /// True when no enabled channel can change the state beyond the ideal step.
  bool is_noiseless() const noexcept;
  /// False for dephasing combined with tunneling, or both coin channels.
  bool is_reference_configuration() const noexcept;

  /// Throws ParameterOutOfRange on out-of-range values or a disallowed
  /// combination.
  void validate() const;

  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

/// p (U rho U^dagger) + (1 - p) * 1/2 * 1_coin (x) tr_coin(rho)
DensityOperator depolarizing_coin(DensityOperator rho, const CoinOperator& u, double p);

/// p' U rho U^dagger + (1 - p') U sz rho sz U^dagger
DensityOperator dephasing_coin(DensityOperator rho, const CoinOperator& u, double p_prime);

/// q rho + (1 - q)/2 (U+ rho U+^dagger + U- rho U-^dagger), U+- translating
/// the position by one site regardless of the coin.
DensityOperator tunneling(DensityOperator rho, double q);

/// Pauli-twirl form of the depolarizing channel:
/// p U rho U^dagger + (1 - p)/4 sum_k sigma_k rho sigma_k.
DensityOperator depolarizing_pauli_form(const DensityOperator& rho, const CoinOperator& u,
                                        double p);

/// sigma rho sigma^dagger for a coin operator sigma (no unitarity assumed).
DensityOperator conjugate_coin(DensityOperator rho, const CoinOperator& sigma);

enum class TunnelingPlacement { AfterShift, BeforeShift };

struct StepOptions {
  TunnelingPlacement tunneling = TunnelingPlacement::AfterShift;
};

/// One full step on a density operator: coin channel (which contains the
/// coin unitary), controlled shift, tunneling channel.
DensityOperator noisy_step(DensityOperator rho, const StepPlan& plan, const NoiseSpec& noise,
                           const StepOptions& opts = {});

// ---------------------------------------------------------------------------
// Unraveling into random unitaries

/// One sampled branch of a step: the coin unitary to apply and the
/// coin-independent displacement (-1, 0, +1) of the tunneling channel.
struct SampledBranch {
  CoinOperator coin;
  int tunnel_offset = 0;
};

/// Uniform double in [0, 1) from the top 53 bits of one 64-bit draw.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Draw the branch used for one step. Depolarizing: U with probability p,
/// sigma_k with (1-p)/4 each (the noise branch drops U). Dephasing: U with
/// p', U sz with 1-p'. Tunneling: no move with q, +-1 with (1-q)/2 each.
SampledBranch unravel(const NoiseSpec& noise, const CoinOperator& u, std::mt19937_64& rng);

/// One trajectory step on a pure state using a sampled branch.
PureState trajectory_step(PureState psi, const StepPlan& plan, const SampledBranch& branch,
                          const StepOptions& opts = {});

}  // namespace qwalk
