#include "qwalk/channels.hpp"

#include <algorithm>
#include <string>

namespace qwalk {

namespace {

void check_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw WalkError(ErrorKind::ParameterOutOfRange,
                    std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

}  // namespace

NoiseSpec NoiseSpec::depolarizing(double p) {
  NoiseSpec n;
  n.p = p;
  n.use_depolarizing = true;
  return n;
}

NoiseSpec NoiseSpec::dephasing(double p_prime) {
  NoiseSpec n;
  n.p_prime = p_prime;
  n.use_dephasing = true;
  return n;
}

NoiseSpec NoiseSpec::tunneling(double q) {
  NoiseSpec n;
  n.q = q;
  n.use_tunneling = true;
  return n;
}

NoiseSpec NoiseSpec::with_tunneling(double q_value) const {
  NoiseSpec n = *this;
  n.q = q_value;
  n.use_tunneling = true;
  return n;
}

bool NoiseSpec::is_noiseless() const noexcept {
  return (!use_depolarizing || p == 1.0) && (!use_dephasing || p_prime == 1.0) &&
         (!use_tunneling || q == 1.0);
}

bool NoiseSpec::is_reference_configuration() const noexcept {
  if (use_depolarizing && use_dephasing) return false;
  if (use_dephasing && use_tunneling) return false;
  return true;
}

void NoiseSpec::validate() const {
  check_probability(p, "p");
  check_probability(p_prime, "p_prime");
  check_probability(q, "q");
  if (use_depolarizing && use_dephasing && !allow_composed_coin_noise) {
    throw WalkError(ErrorKind::ParameterOutOfRange,
                    "depolarizing and dephasing are exclusive unless composition is allowed");
  }
}

DensityOperator depolarizing_coin(DensityOperator rho, const CoinOperator& u, double p) {
  check_probability(p, "p");
  const std::size_t d = rho.space().dim();
  const std::size_t n = rho.size();
  auto& m = rho.data();
  const CoinOperator ud = u.adjoint();
  const double mix = 0.5 * (1.0 - p);
  for (std::size_t i = 0; i < d; ++i) {
    cplx* r0 = &m[i * n];
    cplx* r1 = &m[(d + i) * n];
    for (std::size_t j = 0; j < d; ++j) {
      const cplx b00 = r0[j], b01 = r0[d + j], b10 = r1[j], b11 = r1[d + j];
      const cplx reduced = mix * (b00 + b11);
      const cplx t00 = u(0, 0) * b00 + u(0, 1) * b10;
      const cplx t01 = u(0, 0) * b01 + u(0, 1) * b11;
      const cplx t10 = u(1, 0) * b00 + u(1, 1) * b10;
      const cplx t11 = u(1, 0) * b01 + u(1, 1) * b11;
      r0[j] = p * (t00 * ud(0, 0) + t01 * ud(1, 0)) + reduced;
      r0[d + j] = p * (t00 * ud(0, 1) + t01 * ud(1, 1));
      r1[j] = p * (t10 * ud(0, 0) + t11 * ud(1, 0));
      r1[d + j] = p * (t10 * ud(0, 1) + t11 * ud(1, 1)) + reduced;
    }
  }
  return rho;
}

DensityOperator dephasing_coin(DensityOperator rho, const CoinOperator& u, double p_prime) {
  check_probability(p_prime, "p_prime");
  // p' rho + (1 - p') sz rho sz scales the coin-off-diagonal blocks by 2p' - 1.
  const double damp = 2.0 * p_prime - 1.0;
  const std::size_t d = rho.space().dim();
  const std::size_t n = rho.size();
  auto& m = rho.data();
  for (std::size_t i = 0; i < d; ++i) {
    cplx* r0 = &m[i * n];
    cplx* r1 = &m[(d + i) * n];
    for (std::size_t j = 0; j < d; ++j) {
      r0[d + j] *= damp;
      r1[j] *= damp;
    }
  }
  return apply_coin(std::move(rho), u);
}

DensityOperator tunneling(DensityOperator rho, double q) {
  check_probability(q, "q");
  if (q == 1.0) return rho;
  const DensityOperator right = translate(rho, +1);
  const DensityOperator left = translate(rho, -1);
  const double half = 0.5 * (1.0 - q);
  auto& m = rho.data();
  const auto& r = right.data();
  const auto& l = left.data();
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = q * m[i] + half * (r[i] + l[i]);
  return rho;
}

DensityOperator conjugate_coin(DensityOperator rho, const CoinOperator& sigma) {
  return apply_coin(std::move(rho), sigma);
}

DensityOperator depolarizing_pauli_form(const DensityOperator& rho, const CoinOperator& u,
                                        double p) {
  check_probability(p, "p");
  DensityOperator out = apply_coin(rho, u);
  for (auto& v : out.data()) v *= p;
  for (int k = 0; k < 4; ++k) {
    const DensityOperator branch = conjugate_coin(rho, pauli(k));
    auto& o = out.data();
    const auto& b = branch.data();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] += 0.25 * (1.0 - p) * b[i];
  }
  return out;
}

DensityOperator noisy_step(DensityOperator rho, const StepPlan& plan, const NoiseSpec& noise,
                           const StepOptions& opts) {
  noise.validate();
  if (noise.use_dephasing && noise.use_depolarizing) {
    rho = dephasing_coin(std::move(rho), plan.coin, noise.p_prime);
    rho = depolarizing_coin(std::move(rho), identity_coin(), noise.p);
  } else if (noise.use_dephasing) {
    rho = dephasing_coin(std::move(rho), plan.coin, noise.p_prime);
  } else if (noise.use_depolarizing) {
    rho = depolarizing_coin(std::move(rho), plan.coin, noise.p);
  } else {
    rho = apply_coin(std::move(rho), plan.coin);
  }

  const bool tunnel = noise.use_tunneling && noise.q != 1.0;
  if (tunnel && opts.tunneling == TunnelingPlacement::BeforeShift) {
    rho = tunneling(std::move(rho), noise.q);
  }
  rho = shift(std::move(rho), plan.orientation);
  if (tunnel && opts.tunneling == TunnelingPlacement::AfterShift) {
    rho = tunneling(std::move(rho), noise.q);
  }
  return rho;
}

namespace {

// Depolarizing branch on top of coin operator `u`.
CoinOperator sample_depolarizing(const CoinOperator& u, double p, std::mt19937_64& rng) {
  const double r = uniform01(rng);
  if (r < p) return u;
  const double noise = (r - p) / (1.0 - p);
  const int k = std::min(3, static_cast<int>(noise * 4.0));
  return pauli(k);
}

CoinOperator sample_dephasing(const CoinOperator& u, double p_prime, std::mt19937_64& rng) {
  return uniform01(rng) < p_prime ? u : u * pauli_z();
}

}  // namespace

SampledBranch unravel(const NoiseSpec& noise, const CoinOperator& u, std::mt19937_64& rng) {
  SampledBranch b{u, 0};
  if (noise.use_dephasing) b.coin = sample_dephasing(u, noise.p_prime, rng);
  if (noise.use_depolarizing) {
    // Composed with dephasing, the depolarizing stage acts after the
    // dephased unitary, mirroring noisy_step.
    if (noise.use_dephasing) {
      b.coin = sample_depolarizing(identity_coin(), noise.p, rng) * b.coin;
    } else {
      b.coin = sample_depolarizing(u, noise.p, rng);
    }
  }
  if (noise.use_tunneling) {
    const double r = uniform01(rng);
    if (r >= noise.q) {
      const double half = noise.q + 0.5 * (1.0 - noise.q);
      b.tunnel_offset = r < half ? +1 : -1;
    }
  }
  return b;
}

PureState trajectory_step(PureState psi, const StepPlan& plan, const SampledBranch& branch,
                          const StepOptions& opts) {
  psi = apply_coin(std::move(psi), branch.coin);
  if (branch.tunnel_offset != 0 && opts.tunneling == TunnelingPlacement::BeforeShift) {
    psi = translate(std::move(psi), branch.tunnel_offset);
  }
  psi = shift(std::move(psi), plan.orientation);
  if (branch.tunnel_offset != 0 && opts.tunneling == TunnelingPlacement::AfterShift) {
    psi = translate(std::move(psi), branch.tunnel_offset);
  }
  return psi;
}

}  // namespace qwalk
