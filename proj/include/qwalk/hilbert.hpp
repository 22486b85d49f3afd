#pragma once

// State containers over the composite coin (x) position space.
//
// Index convention, shared by every module: a basis state |c>|k> with coin
// c in {0,1} and position k lives at flat index  c * dim + space.index(k),
// where dim is the number of positions. Density operators are stored dense
// and row-major with the same convention on both axes.

#include <complex>
#include <cstddef>
#include <vector>

#include "qwalk/error.hpp"

namespace qwalk {

using cplx = std::complex<double>;

enum class Topology { Line, Circle };

/// Positions available to the walker: a finite window [lo, hi] of the
/// infinite line, or N sites on a circle with k identified modulo N.
class PositionSpace {
 public:
  /// Symmetric window k in [-half_width, half_width].
  static PositionSpace line(int half_width);
  /// Asymmetric window [lo, hi]; used for one-sided bounded walks.
  static PositionSpace line_range(int lo, int hi);
  static PositionSpace circle(int sites);

  Topology topology() const noexcept { return topology_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(hi_ - lo_ + 1); }
  int min_position() const noexcept { return lo_; }
  int max_position() const noexcept { return hi_; }

  /// Line: half-width for symmetric windows. Circle: site count.
  int extent() const noexcept;

  bool contains(int k) const noexcept { return k >= lo_ && k <= hi_; }

  /// Position -> 0-based index. Throws PositionOutOfRange if !contains(k).
  std::size_t index(int k) const;
  int position(std::size_t i) const noexcept { return lo_ + static_cast<int>(i); }

  /// Reduce k modulo N on a circle; identity on a line.
  int wrap(int k) const noexcept;

  friend bool operator==(const PositionSpace&, const PositionSpace&) = default;

 private:
  PositionSpace(Topology t, int lo, int hi) : topology_(t), lo_(lo), hi_(hi) {}

  Topology topology_;
  int lo_;
  int hi_;
};

struct CoinState {
  cplx a0;
  cplx a1;

  double norm_sq() const noexcept { return std::norm(a0) + std::norm(a1); }
};

/// (|0> + i|1>)/sqrt(2): gives a symmetric Hadamard walk.
CoinState symmetric_coin_state();
/// (|0> + |1>)/sqrt(2): paired with the pi/2-pulse coin.
CoinState plus_coin_state();

class PureState {
 public:
  explicit PureState(PositionSpace space);

  const PositionSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return amps_.size(); }

  cplx& at(int coin, int k) { return amps_[flat_index(coin, k)]; }
  const cplx& at(int coin, int k) const { return amps_[flat_index(coin, k)]; }

  std::size_t flat_index(int coin, int k) const;

  std::vector<cplx>& amplitudes() noexcept { return amps_; }
  const std::vector<cplx>& amplitudes() const noexcept { return amps_; }

  /// Sum of |amp|^2. Below 1 after barrier projections.
  double norm_sq() const noexcept;

 private:
  PositionSpace space_;
  std::vector<cplx> amps_;
};

class DensityOperator {
 public:
  explicit DensityOperator(PositionSpace space);

  const PositionSpace& space() const noexcept { return space_; }
  /// Side length, 2 * dim(space).
  std::size_t size() const noexcept { return n_; }

  cplx& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * n_ + col]; }
  const cplx& operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * n_ + col];
  }

  std::vector<cplx>& data() noexcept { return data_; }
  const std::vector<cplx>& data() const noexcept { return data_; }

  cplx trace() const noexcept;
  double purity() const noexcept;
  /// max |rho_ij - conj(rho_ji)|
  double hermiticity_residual() const noexcept;

  /// False once barrier projections have removed probability; the trace is
  /// then the survival probability.
  bool normalized() const noexcept { return normalized_; }
  void mark_unnormalized() noexcept { normalized_ = false; }

 private:
  PositionSpace space_;
  std::size_t n_;
  std::vector<cplx> data_;
  bool normalized_ = true;
};

std::size_t flat_index(const PositionSpace& space, int coin, int k);
/// Inverse of flat_index: returns {coin, k}.
std::pair<int, int> split_index(const PositionSpace& space, std::size_t flat);

PureState make_initial(const PositionSpace& space, const CoinState& coin, int k0);

DensityOperator to_density(const PureState& psi);

/// Re-embed a line state in a window wider by `margin` sites on each side.
PureState grow_window(const PureState& psi, int margin);
DensityOperator grow_window(const DensityOperator& rho, int margin);

/// Re-embed a line state in `target`, which must contain its window.
PureState embed(const PureState& psi, const PositionSpace& target);
DensityOperator embed(const DensityOperator& rho, const PositionSpace& target);

}  // namespace qwalk
