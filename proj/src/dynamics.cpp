#include "qwalk/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qwalk {

CoinOperator CoinOperator::adjoint() const noexcept {
  Matrix a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a[i][j] = std::conj(m_[j][i]);
  return CoinOperator(a);
}

CoinState CoinOperator::apply(const CoinState& s) const noexcept {
  return {m_[0][0] * s.a0 + m_[0][1] * s.a1, m_[1][0] * s.a0 + m_[1][1] * s.a1};
}

double CoinOperator::unitarity_residual() const noexcept {
  const CoinOperator p = adjoint() * *this;
  return max_abs_diff(p, CoinOperator{});
}

cplx CoinOperator::determinant() const noexcept {
  return m_[0][0] * m_[1][1] - m_[0][1] * m_[1][0];
}

CoinOperator operator*(const CoinOperator& a, const CoinOperator& b) noexcept {
  CoinOperator::Matrix r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a.m_[i][0] * b.m_[0][j] + a.m_[i][1] * b.m_[1][j];
  return CoinOperator(r);
}

CoinOperator operator*(cplx s, const CoinOperator& a) noexcept {
  CoinOperator::Matrix r = a.m_;
  for (auto& row : r)
    for (auto& v : row) v *= s;
  return CoinOperator(r);
}

double max_abs_diff(const CoinOperator& a, const CoinOperator& b) noexcept {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

CoinOperator identity_coin() { return CoinOperator{}; }

CoinOperator pauli_x() { return CoinOperator({{{cplx{}, cplx{1.0}}, {cplx{1.0}, cplx{}}}}); }

CoinOperator pauli_y() {
  return CoinOperator({{{cplx{}, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, cplx{}}}});
}

CoinOperator pauli_z() { return CoinOperator({{{cplx{1.0}, cplx{}}, {cplx{}, cplx{-1.0}}}}); }

CoinOperator pauli(int k) {
  switch (k) {
    case 0: return identity_coin();
    case 1: return pauli_x();
    case 2: return pauli_y();
    case 3: return pauli_z();
    default:
      throw WalkError(ErrorKind::ParameterOutOfRange, "Pauli index must be in 0..3");
  }
}

CoinOperator hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return CoinOperator({{{cplx{s}, cplx{s}}, {cplx{s}, cplx{-s}}}});
}

namespace {

// exp(-i pi/4 sigma) = (1 - i sigma) / sqrt(2) for any Pauli sigma.
CoinOperator quarter_turn(const CoinOperator& sigma) {
  const double s = 1.0 / std::sqrt(2.0);
  CoinOperator::Matrix r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r[i][j] = s * ((i == j ? cplx{1.0} : cplx{}) - cplx{0.0, 1.0} * sigma(i, j));
  return CoinOperator(r);
}

}  // namespace

CoinOperator half_pi_pulse() { return quarter_turn(pauli_x()); }

CoinOperator hadamard_from_three_pulses() {
  return quarter_turn(pauli_x()) * quarter_turn(pauli_y()) * quarter_turn(pauli_z());
}

CoinOperator conjugated_hadamard() { return pauli_x() * hadamard() * pauli_x(); }

// ---------------------------------------------------------------------------
// Coin application

PureState apply_coin(PureState psi, const CoinOperator& u) {
  const std::size_t d = psi.space().dim();
  auto& a = psi.amplitudes();
  for (std::size_t i = 0; i < d; ++i) {
    const cplx x0 = a[i];
    const cplx x1 = a[d + i];
    a[i] = u(0, 0) * x0 + u(0, 1) * x1;
    a[d + i] = u(1, 0) * x0 + u(1, 1) * x1;
  }
  return psi;
}

DensityOperator apply_coin(DensityOperator rho, const CoinOperator& u) {
  const std::size_t d = rho.space().dim();
  const std::size_t n = rho.size();
  auto& m = rho.data();
  const CoinOperator ud = u.adjoint();
  for (std::size_t i = 0; i < d; ++i) {
    cplx* r0 = &m[i * n];
    cplx* r1 = &m[(d + i) * n];
    for (std::size_t j = 0; j < d; ++j) {
      const cplx b00 = r0[j], b01 = r0[d + j], b10 = r1[j], b11 = r1[d + j];
      // T = U B
      const cplx t00 = u(0, 0) * b00 + u(0, 1) * b10;
      const cplx t01 = u(0, 0) * b01 + u(0, 1) * b11;
      const cplx t10 = u(1, 0) * b00 + u(1, 1) * b10;
      const cplx t11 = u(1, 0) * b01 + u(1, 1) * b11;
      // T U^dagger
      r0[j] = t00 * ud(0, 0) + t01 * ud(1, 0);
      r0[d + j] = t00 * ud(0, 1) + t01 * ud(1, 1);
      r1[j] = t10 * ud(0, 0) + t11 * ud(1, 0);
      r1[d + j] = t10 * ud(0, 1) + t11 * ud(1, 1);
    }
  }
  return rho;
}

// ---------------------------------------------------------------------------
// Shifts

namespace {

[[noreturn]] void overflow(const PositionSpace& space, int k) {
  throw WalkError(ErrorKind::WindowOverflow,
                  "walker reached window edge at k=" + std::to_string(k) + " of [" +
                      std::to_string(space.min_position()) + ", " +
                      std::to_string(space.max_position()) + "]");
}

// Index of the site that would leave a line window when moved by `offset`.
std::size_t edge_index(std::size_t dim, int offset) { return offset < 0 ? 0 : dim - 1; }

// Destination index of position-index i moved by offset; -1 if it leaves a
// line window.
long long moved(const PositionSpace& space, std::size_t i, int offset) {
  const long long d = static_cast<long long>(space.dim());
  long long j = static_cast<long long>(i) + offset;
  if (space.topology() == Topology::Circle) return ((j % d) + d) % d;
  return (j < 0 || j >= d) ? -1 : j;
}

PureState displace(PureState psi, int off0, int off1) {
  const auto& space = psi.space();
  const std::size_t d = space.dim();
  const auto& a = psi.amplitudes();
  if (space.topology() == Topology::Line) {
    const int offs[2] = {off0, off1};
    for (int c = 0; c < 2; ++c) {
      const std::size_t e = edge_index(d, offs[c]);
      if (a[c * d + e] != cplx{}) overflow(space, space.position(e));
    }
  }
  PureState out(space);
  auto& b = out.amplitudes();
  const int offs[2] = {off0, off1};
  for (int c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < d; ++i) {
      const long long j = moved(space, i, offs[c]);
      if (j >= 0) b[c * d + static_cast<std::size_t>(j)] = a[c * d + i];
    }
  }
  return out;
}

bool row_is_zero(const DensityOperator& rho, std::size_t row) {
  const std::size_t n = rho.size();
  for (std::size_t j = 0; j < n; ++j)
    if (rho(row, j) != cplx{}) return false;
  return true;
}

// Move every basis state |c,k> to |c, k + offsets[c]> on both sides of rho.
DensityOperator displace(DensityOperator rho, int off0, int off1) {
  const auto& space = rho.space();
  const std::size_t d = space.dim();
  const std::size_t n = rho.size();
  const int offs[2] = {off0, off1};

  if (space.topology() == Topology::Circle) {
    DensityOperator out(space);
    if (!rho.normalized()) out.mark_unnormalized();
    std::vector<std::size_t> dest(n);
    for (int c = 0; c < 2; ++c)
      for (std::size_t i = 0; i < d; ++i)
        dest[c * d + i] = c * d + static_cast<std::size_t>(moved(space, i, offs[c]));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(dest[i], dest[j]) = rho(i, j);
    return out;
  }

  for (int c = 0; c < 2; ++c) {
    const std::size_t e = c * d + edge_index(d, offs[c]);
    if (!row_is_zero(rho, e)) overflow(space, space.position(edge_index(d, offs[c])));
  }

  // In place per 2x2 block; offsets are +-1 so the source row of each
  // destination row is a different row that is visited later.
  auto& m = rho.data();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const long long ra = offs[a];
      const long long cb = offs[b];
      const long long dd = static_cast<long long>(d);
      for (long long step = 0; step < dd; ++step) {
        const long long r = ra > 0 ? dd - 1 - step : step;
        const long long sr = r - ra;
        cplx* dst = &m[(a * d + static_cast<std::size_t>(r)) * n + b * d];
        if (sr < 0 || sr >= dd) {
          std::fill(dst, dst + d, cplx{});
          continue;
        }
        const cplx* src = &m[(a * d + static_cast<std::size_t>(sr)) * n + b * d];
        for (long long col = 0; col < dd; ++col) {
          const long long sc = col - cb;
          dst[col] = (sc < 0 || sc >= dd) ? cplx{} : src[sc];
        }
      }
    }
  }
  return rho;
}

}  // namespace

PureState shift(PureState psi, ShiftOrientation o) {
  return displace(std::move(psi), shift_offset(o, 0), shift_offset(o, 1));
}

DensityOperator shift(DensityOperator rho, ShiftOrientation o) {
  return displace(std::move(rho), shift_offset(o, 0), shift_offset(o, 1));
}

PureState unshift(PureState psi, ShiftOrientation o) {
  return displace(std::move(psi), -shift_offset(o, 0), -shift_offset(o, 1));
}

PureState translate(PureState psi, int offset) {
  return displace(std::move(psi), offset, offset);
}

DensityOperator translate(DensityOperator rho, int offset) {
  return displace(std::move(rho), offset, offset);
}

PureState step(PureState psi, const CoinOperator& coin, ShiftOrientation o) {
  return shift(apply_coin(std::move(psi), coin), o);
}

DensityOperator step(DensityOperator rho, const CoinOperator& coin, ShiftOrientation o) {
  return shift(apply_coin(std::move(rho), coin), o);
}

// ---------------------------------------------------------------------------
// Protocols

CoinOperator coin_for(CoinChoice c) {
  return c == CoinChoice::Hadamard ? hadamard() : half_pi_pulse();
}

CoinState reference_initial_coin(CoinChoice c) {
  return c == CoinChoice::Hadamard ? symmetric_coin_state() : plus_coin_state();
}

StepPlan plan_step(const Protocol& protocol, int m) {
  const CoinOperator base = coin_for(protocol.coin);
  if (protocol.variant == ProtocolVariant::Standard || m == 0) {
    return {base, ShiftOrientation::Standard};
  }
  const bool odd = (m % 2) != 0;
  const CoinOperator after_flip = odd ? pauli_x() * base * pauli_x() : base;
  return {after_flip * pauli_x(), odd ? ShiftOrientation::Swapped : ShiftOrientation::Standard};
}

PositionSpace line_window_for(int steps) { return PositionSpace::line(std::max(steps, 1)); }

PureState run_protocol(PureState psi, const Protocol& protocol, int steps, int first_step) {
  if (steps < 0) throw WalkError(ErrorKind::ParameterOutOfRange, "step count must be >= 0");
  for (int m = first_step; m < first_step + steps; ++m) {
    const StepPlan plan = plan_step(protocol, m);
    psi = step(std::move(psi), plan.coin, plan.orientation);
  }
  return psi;
}

PureState run_standard(const PositionSpace& space, CoinChoice coin, int steps) {
  return run_protocol(make_initial(space, reference_initial_coin(coin), 0),
                      Protocol{ProtocolVariant::Standard, coin}, steps);
}

PureState run_symmetrized(const PositionSpace& space, int steps) {
  return run_protocol(make_initial(space, symmetric_coin_state(), 0),
                      Protocol{ProtocolVariant::Symmetrized, CoinChoice::Hadamard}, steps);
}

}  // namespace qwalk
