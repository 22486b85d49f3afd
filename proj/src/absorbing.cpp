#include "qwalk/absorbing.hpp"

#include <algorithm>
#include <string>

namespace qwalk {

void BarrierConfig::validate() const {
  if (barriers.empty() || barriers.size() > 2) {
    throw WalkError(ErrorKind::ParameterOutOfRange, "a bounded walk needs one or two barriers");
  }
  if (barriers.count(start) != 0) {
    throw WalkError(ErrorKind::ParameterOutOfRange,
                    "barrier at " + std::to_string(start) + " coincides with the start site");
  }
  if (max_steps < 0) throw WalkError(ErrorKind::ParameterOutOfRange, "max_steps must be >= 0");
}

double project_out_barriers(PureState& psi, const std::set<int>& barriers) {
  double removed = 0.0;
  for (int b : barriers) {
    if (!psi.space().contains(b)) continue;
    for (int c = 0; c < 2; ++c) {
      removed += std::norm(psi.at(c, b));
      psi.at(c, b) = cplx{};
    }
  }
  return removed;
}

double project_out_barriers(DensityOperator& rho, const std::set<int>& barriers) {
  double removed = 0.0;
  const std::size_t n = rho.size();
  for (int b : barriers) {
    if (!rho.space().contains(b)) continue;
    for (int c = 0; c < 2; ++c) {
      const std::size_t i = flat_index(rho.space(), c, b);
      removed += rho(i, i).real();
      for (std::size_t j = 0; j < n; ++j) {
        rho(i, j) = cplx{};
        rho(j, i) = cplx{};
      }
    }
  }
  if (removed != 0.0) rho.mark_unnormalized();
  return removed;
}

BoundedStepResult bounded_step(DensityOperator rho, const StepPlan& plan, const NoiseSpec& noise,
                               const BarrierConfig& cfg, const StepOptions& opts) {
  BoundedStepResult r{std::move(rho), 0.0};
  if (cfg.timing == BarrierTiming::BeforeCoin) r.absorbed = project_out_barriers(r.rho, cfg.barriers);
  r.rho = noisy_step(std::move(r.rho), plan, noise, opts);
  if (cfg.timing == BarrierTiming::AfterShift) r.absorbed = project_out_barriers(r.rho, cfg.barriers);
  return r;
}

PositionSpace bounded_window(const BarrierConfig& cfg, int steps, const NoiseSpec& noise) {
  const int reach = (noise.use_tunneling && noise.q != 1.0) ? 2 * steps + 1 : steps + 1;
  int lo = cfg.start - reach;
  int hi = cfg.start + reach;
  if (!(noise.use_tunneling && noise.q != 1.0)) {
    for (int b : cfg.barriers) {
      if (b < cfg.start) lo = std::max(lo, b);
      if (b > cfg.start) hi = std::min(hi, b);
    }
  }
  return PositionSpace::line_range(lo, hi);
}

namespace {

double surviving_mass(const PureState& psi) { return psi.norm_sq(); }
double surviving_mass(const DensityOperator& rho) { return rho.trace().real(); }

template <typename State, typename Advance>
std::vector<AbsorptionRecord> record_series(State state, const BarrierConfig& cfg, int steps,
                                            Advance advance) {
  std::vector<AbsorptionRecord> series;
  series.reserve(static_cast<std::size_t>(steps));
  double cumulative = 0.0;
  for (int m = 0; m < steps; ++m) {
    double absorbed = 0.0;
    if (cfg.timing == BarrierTiming::BeforeCoin) absorbed += project_out_barriers(state, cfg.barriers);
    state = advance(std::move(state), m);
    if (cfg.timing == BarrierTiming::AfterShift) absorbed += project_out_barriers(state, cfg.barriers);
    cumulative += absorbed;
    series.push_back({m + 1, absorbed, cumulative, surviving_mass(state)});
  }
  return series;
}

}  // namespace

std::vector<AbsorptionRecord> run_bounded(const BarrierConfig& cfg, const Protocol& protocol,
                                          const CoinState& initial, const NoiseSpec& noise,
                                          int steps, const StepOptions& opts) {
  cfg.validate();
  noise.validate();
  if (steps < 0) throw WalkError(ErrorKind::ParameterOutOfRange, "step count must be >= 0");
  if (cfg.max_steps > 0 && steps > cfg.max_steps) {
    throw WalkError(ErrorKind::ParameterOutOfRange, "steps exceed the barrier config's max_steps");
  }
  const PositionSpace space = bounded_window(cfg, steps, noise);
  PureState psi = make_initial(space, initial, cfg.start);

  std::vector<AbsorptionRecord> series;
  if (noise.is_noiseless()) {
    series = record_series(std::move(psi), cfg, steps, [&](PureState s, int m) {
      const StepPlan plan = plan_step(protocol, m);
      return step(std::move(s), plan.coin, plan.orientation);
    });
  } else {
    // The density operator is evolved on a window that grows with the walk;
    // the dense step costs scale with its square.
    const int rate = (noise.use_tunneling && noise.q != 1.0) ? 2 : 1;
    auto fitted = [&](int reach) {
      return PositionSpace::line_range(std::max(space.min_position(), cfg.start - reach),
                                       std::min(space.max_position(), cfg.start + reach));
    };
    constexpr int kChunk = 64;
    series = record_series(to_density(make_initial(fitted(rate + 1), initial, cfg.start)), cfg,
                           steps, [&](DensityOperator rho, int m) {
                             const int need = (m + 1) * rate + 1;
                             const auto& w = rho.space();
                             if (w.min_position() > std::max(space.min_position(), cfg.start - need) ||
                                 w.max_position() < std::min(space.max_position(), cfg.start + need)) {
                               rho = embed(rho, fitted(need + kChunk));
                             }
                             return noisy_step(std::move(rho), plan_step(protocol, m), noise, opts);
                           });
  }
  return series;
}

}  // namespace qwalk
