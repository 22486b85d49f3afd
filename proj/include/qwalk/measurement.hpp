#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>

#include "qwalk/channels.hpp"
#include "qwalk/distribution.hpp"
#include "qwalk/hilbert.hpp"

namespace qwalk {

/// p(k) = sum_c <c,k| rho |c,k>, the coin traced out.
Distribution position_distribution(const PureState& psi);
Distribution position_distribution(const DensityOperator& rho);

enum class PreFlip { None, RandomSigmaX };

/// Position distribution conditioned on the detected coin value.
struct ConditionalDistributions {
  Distribution given0;
  Distribution given1;
  /// Unconditional probability of each coin outcome.
  double weight0 = 0.0;
  double weight1 = 0.0;
  /// A branch with zero weight is returned as an all-zero distribution and
  /// flagged here.
  bool empty0 = false;
  bool empty1 = false;
};

/// Coin-selective readout. RandomSigmaX models a sigma_x applied with
/// probability 1/2 before detection, evaluated as the exact equal mixture.
ConditionalDistributions conditional_distributions(const PureState& psi,
                                                   PreFlip flip = PreFlip::None);
ConditionalDistributions conditional_distributions(const DensityOperator& rho,
                                                   PreFlip flip = PreFlip::None);

/// (1/2) sum_k |p(k) - q(k)|
double total_variation(const Distribution& p, const Distribution& q);

/// Mass on |k| > threshold.
double tail_mass(const Distribution& d, double threshold);

struct SummaryStats {
  double mean = 0.0;
  double std_dev = 0.0;
  /// Only set when a reference was supplied.
  std::optional<double> tv_to_reference;
  /// Mass with sqrt(n) < |k| < n / sqrt(2).
  double interval_mass = 0.0;
};

/// Moments are taken over the distribution renormalized to unit mass.
SummaryStats summary(const Distribution& dist, const Distribution* reference = nullptr);

/// Empirical distribution of `shots` i.i.d. draws from `dist`.
Distribution sample_positions(const Distribution& dist, std::int64_t shots,
                              std::mt19937_64& rng);

/// Noisy walk evaluated by trajectory unraveling.
struct TrajectorySpec {
  PositionSpace space = PositionSpace::line(1);
  Protocol protocol{};
  CoinState initial = symmetric_coin_state();
  int start = 0;
  int steps = 0;
  NoiseSpec noise{};
  StepOptions options{};
};

/// Generator for trajectory `index` of a run seeded with `seed`.
std::mt19937_64 trajectory_rng(std::uint64_t seed, std::uint64_t index);

/// Final pure state of one trajectory.
PureState run_trajectory(const TrajectorySpec& spec, std::mt19937_64& rng);

/// Mean of the trajectories' exact position distributions. Trajectories run
/// on worker threads in fixed-size chunks summed in chunk order, so the
/// result depends only on (spec, trajectories, seed).
Distribution trajectory_average(const TrajectorySpec& spec, std::int64_t trajectories,
                                std::uint64_t seed);

/// One detected position per trajectory: each shot simulates a full
/// trajectory and then samples a position from it.
Distribution sample_trajectory_positions(const TrajectorySpec& spec, std::int64_t shots,
                                         std::uint64_t seed);

}  // namespace qwalk
