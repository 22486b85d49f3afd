#include "qwalk/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qwalk {

PositionSpace PositionSpace::line(int half_width) {
  if (half_width < 1) {
    throw WalkError(ErrorKind::ParameterOutOfRange,
                    "line half-width must be >= 1, got " + std::to_string(half_width));
  }
  return PositionSpace(Topology::Line, -half_width, half_width);
}

PositionSpace PositionSpace::line_range(int lo, int hi) {
  if (hi <= lo) {
    throw WalkError(ErrorKind::ParameterOutOfRange,
                    "line window needs lo < hi, got [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
  }
  return PositionSpace(Topology::Line, lo, hi);
}

PositionSpace PositionSpace::circle(int sites) {
  if (sites < 2) {
    throw WalkError(ErrorKind::ParameterOutOfRange,
                    "circle needs at least 2 sites, got " + std::to_string(sites));
  }
  return PositionSpace(Topology::Circle, 0, sites - 1);
}

int PositionSpace::extent() const noexcept {
  if (topology_ == Topology::Circle) return hi_ + 1;
  return std::max(-lo_, hi_);
}

std::size_t PositionSpace::index(int k) const {
  if (!contains(k)) {
    throw WalkError(ErrorKind::PositionOutOfRange,
                    "position " + std::to_string(k) + " outside [" + std::to_string(lo_) + ", " +
                        std::to_string(hi_) + "]");
  }
  return static_cast<std::size_t>(k - lo_);
}

int PositionSpace::wrap(int k) const noexcept {
  if (topology_ == Topology::Line) return k;
  const int n = hi_ + 1;
  return ((k % n) + n) % n;
}

CoinState symmetric_coin_state() {
  const double s = 1.0 / std::sqrt(2.0);
  return {cplx(s, 0.0), cplx(0.0, s)};
}

CoinState plus_coin_state() {
  const double s = 1.0 / std::sqrt(2.0);
  return {cplx(s, 0.0), cplx(s, 0.0)};
}

std::size_t flat_index(const PositionSpace& space, int coin, int k) {
  if (coin != 0 && coin != 1) {
    throw WalkError(ErrorKind::ParameterOutOfRange, "coin index must be 0 or 1");
  }
  return static_cast<std::size_t>(coin) * space.dim() + space.index(k);
}

std::pair<int, int> split_index(const PositionSpace& space, std::size_t flat) {
  const std::size_t d = space.dim();
  return {static_cast<int>(flat / d), space.position(flat % d)};
}

PureState::PureState(PositionSpace space) : space_(space), amps_(2 * space.dim()) {}

std::size_t PureState::flat_index(int coin, int k) const {
  return qwalk::flat_index(space_, coin, k);
}

double PureState::norm_sq() const noexcept {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

DensityOperator::DensityOperator(PositionSpace space)
    : space_(space), n_(2 * space.dim()), data_(n_ * n_) {}

cplx DensityOperator::trace() const noexcept {
  cplx t{};
  for (std::size_t i = 0; i < n_; ++i) t += data_[i * n_ + i];
  return t;
}

double DensityOperator::purity() const noexcept {
  // tr(rho^2) = sum_ij rho_ij rho_ji = sum_ij |rho_ij|^2 for Hermitian rho.
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return s;
}

double DensityOperator::hermiticity_residual() const noexcept {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) {
      worst = std::max(worst, std::abs(data_[i * n_ + j] - std::conj(data_[j * n_ + i])));
    }
  }
  return worst;
}

PureState make_initial(const PositionSpace& space, const CoinState& coin, int k0) {
  if (std::abs(coin.norm_sq() - 1.0) > 1e-12) {
    throw WalkError(ErrorKind::ParameterOutOfRange, "initial coin state is not normalized");
  }
  PureState psi(space);
  psi.at(0, k0) = coin.a0;
  psi.at(1, k0) = coin.a1;
  return psi;
}

DensityOperator to_density(const PureState& psi) {
  DensityOperator rho(psi.space());
  const auto& a = psi.amplitudes();
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == cplx{}) continue;
    for (std::size_t j = 0; j < n; ++j) rho(i, j) = a[i] * std::conj(a[j]);
  }
  return rho;
}

namespace {

PositionSpace widened(const PositionSpace& space, int margin) {
  if (space.topology() != Topology::Line) {
    throw WalkError(ErrorKind::UnsupportedTopology, "grow_window applies to line windows only");
  }
  if (margin < 0) {
    throw WalkError(ErrorKind::ParameterOutOfRange, "grow_window margin must be >= 0");
  }
  return PositionSpace::line_range(space.min_position() - margin, space.max_position() + margin);
}

}  // namespace

namespace {

void check_embedding(const PositionSpace& from, const PositionSpace& to) {
  if (from.topology() != Topology::Line || to.topology() != Topology::Line) {
    throw WalkError(ErrorKind::UnsupportedTopology, "windows can only be re-embedded on a line");
  }
  if (to.min_position() > from.min_position() || to.max_position() < from.max_position()) {
    throw WalkError(ErrorKind::ParameterOutOfRange, "target window must contain the current one");
  }
}

}  // namespace

PureState embed(const PureState& psi, const PositionSpace& target) {
  check_embedding(psi.space(), target);
  PureState out(target);
  const auto& old = psi.space();
  for (int c = 0; c < 2; ++c) {
    for (int k = old.min_position(); k <= old.max_position(); ++k) out.at(c, k) = psi.at(c, k);
  }
  return out;
}

DensityOperator embed(const DensityOperator& rho, const PositionSpace& target) {
  check_embedding(rho.space(), target);
  DensityOperator out(target);
  const auto& old = rho.space();
  const std::size_t d = old.dim();
  const std::size_t n = rho.size();
  const std::size_t offset = static_cast<std::size_t>(old.min_position() - target.min_position());
  const std::size_t td = target.dim();
  // Old flat index c*d + i lands on c*td + offset + i.
  auto moved = [&](std::size_t i) { return (i / d) * td + offset + i % d; };
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t oi = moved(i);
    for (std::size_t j = 0; j < n; ++j) out(oi, moved(j)) = rho(i, j);
  }
  if (!rho.normalized()) out.mark_unnormalized();
  return out;
}

PureState grow_window(const PureState& psi, int margin) {
  return embed(psi, widened(psi.space(), margin));
}

DensityOperator grow_window(const DensityOperator& rho, int margin) {
  return embed(rho, widened(rho.space(), margin));
}

}  // namespace qwalk
