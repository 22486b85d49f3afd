#pragma once

#include <array>

#include "qwalk/hilbert.hpp"

namespace qwalk {

/// 2x2 unitary acting on the coin factor.
class CoinOperator {
 public:
  using Matrix = std::array<std::array<cplx, 2>, 2>;

  constexpr CoinOperator() : m_{{{cplx{1.0}, cplx{}}, {cplx{}, cplx{1.0}}}} {}
  constexpr explicit CoinOperator(const Matrix& m) : m_(m) {}

  const cplx& operator()(int row, int col) const noexcept { return m_[row][col]; }
  const Matrix& matrix() const noexcept { return m_; }

  CoinOperator adjoint() const noexcept;
  CoinState apply(const CoinState& s) const noexcept;
  /// max_ij |(U^dagger U - 1)_ij|
  double unitarity_residual() const noexcept;
  cplx determinant() const noexcept;

  friend CoinOperator operator*(const CoinOperator& a, const CoinOperator& b) noexcept;
  friend CoinOperator operator*(cplx s, const CoinOperator& a) noexcept;

 private:
  Matrix m_;
};

CoinOperator identity_coin();
CoinOperator pauli_x();
CoinOperator pauli_y();
CoinOperator pauli_z();
/// sigma_0 .. sigma_3 with sigma_0 = identity.
CoinOperator pauli(int k);

CoinOperator hadamard();
/// exp(-i pi/4 sigma_x)
CoinOperator half_pi_pulse();
/// exp(-i pi/4 sx) exp(-i pi/4 sy) exp(-i pi/4 sz); equals -i H.
CoinOperator hadamard_from_three_pulses();
/// sigma_x H sigma_x
CoinOperator conjugated_hadamard();

/// Max elementwise distance between two coin operators.
double max_abs_diff(const CoinOperator& a, const CoinOperator& b) noexcept;

/// Direction assignment of the controlled shift. Standard moves coin 0 left
/// and coin 1 right; Swapped is sigma_x S sigma_x (coin 0 right, coin 1 left),
/// the motion seen by the symmetrized protocol on odd steps.
enum class ShiftOrientation { Standard, Swapped };

/// Displacement applied to coin `c` by the shift.
constexpr int shift_offset(ShiftOrientation o, int c) noexcept {
  const int base = (c == 0) ? -1 : +1;
  return o == ShiftOrientation::Standard ? base : -base;
}

PureState apply_coin(PureState psi, const CoinOperator& u);
DensityOperator apply_coin(DensityOperator rho, const CoinOperator& u);

/// Controlled shift. Throws WindowOverflow if a line state would leave its
/// window.
PureState shift(PureState psi, ShiftOrientation o = ShiftOrientation::Standard);
DensityOperator shift(DensityOperator rho, ShiftOrientation o = ShiftOrientation::Standard);
/// Inverse of shift().
PureState unshift(PureState psi, ShiftOrientation o = ShiftOrientation::Standard);

/// Coin-independent translation U_{+/-} by `offset` sites (+1 or -1).
PureState translate(PureState psi, int offset);
DensityOperator translate(DensityOperator rho, int offset);

/// One walk step: coin then shift.
PureState step(PureState psi, const CoinOperator& coin,
               ShiftOrientation o = ShiftOrientation::Standard);
DensityOperator step(DensityOperator rho, const CoinOperator& coin,
                     ShiftOrientation o = ShiftOrientation::Standard);

enum class ProtocolVariant { Standard, Symmetrized };
enum class CoinChoice { Hadamard, HalfPiPulse };

struct Protocol {
  ProtocolVariant variant = ProtocolVariant::Standard;
  CoinChoice coin = CoinChoice::Hadamard;

  friend bool operator==(const Protocol&, const Protocol&) = default;
};

/// The coin unitary and shift orientation used at step m (0-based).
///
/// Standard: (C, S) every step. Symmetrized: step 0 is (H, S); step m >= 1
/// first flips the coin with sigma_x, then applies H' on odd m and H on even
/// m, and the lattice moves with S' on odd m and S on even m. The combined
/// unitary per step is therefore H' sigma_x = sigma_x H (odd) or H sigma_x
/// (even).
struct StepPlan {
  CoinOperator coin;
  ShiftOrientation orientation;
};
StepPlan plan_step(const Protocol& protocol, int m);

CoinOperator coin_for(CoinChoice c);
/// Initial coin state that the protocol's coin is designed for.
CoinState reference_initial_coin(CoinChoice c);

/// Window wide enough for n noiseless steps from the origin.
PositionSpace line_window_for(int steps);

/// n steps of (S C) from the coin's paired initial state at k = 0.
PureState run_standard(const PositionSpace& space, CoinChoice coin, int steps);
/// n steps of the symmetrized sequence from (|0> + i|1>)/sqrt(2) at k = 0.
/// After odd n the coin labels are swapped (state = sigma_x psi_n); the
/// position distribution equals that of run_standard with the Hadamard coin.
PureState run_symmetrized(const PositionSpace& space, int steps);

/// General noiseless driver: applies plan_step(protocol, m) for m in
/// [first_step, first_step + steps).
PureState run_protocol(PureState psi, const Protocol& protocol, int steps, int first_step = 0);

}  // namespace qwalk
