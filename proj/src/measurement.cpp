#include "qwalk/measurement.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace qwalk {

namespace {

Distribution empty_like(const PositionSpace& space) {
  return Distribution::zeros(space.min_position(), space.max_position());
}

// Joint coin/position populations: pop[c][i].
struct Populations {
  std::vector<double> coin0;
  std::vector<double> coin1;
};

Populations populations(const PureState& psi) {
  const std::size_t d = psi.space().dim();
  const auto& a = psi.amplitudes();
  Populations p{std::vector<double>(d), std::vector<double>(d)};
  for (std::size_t i = 0; i < d; ++i) {
    p.coin0[i] = std::norm(a[i]);
    p.coin1[i] = std::norm(a[d + i]);
  }
  return p;
}

Populations populations(const DensityOperator& rho) {
  const std::size_t d = rho.space().dim();
  Populations p{std::vector<double>(d), std::vector<double>(d)};
  for (std::size_t i = 0; i < d; ++i) {
    p.coin0[i] = rho(i, i).real();
    p.coin1[i] = rho(d + i, d + i).real();
  }
  return p;
}

Distribution from_sum(const PositionSpace& space, const Populations& pop) {
  Distribution out = empty_like(space);
  for (std::size_t i = 0; i < pop.coin0.size(); ++i) out.probs()[i] = pop.coin0[i] + pop.coin1[i];
  return out;
}

ConditionalDistributions conditionals(const PositionSpace& space, Populations pop, PreFlip flip) {
  if (flip == PreFlip::RandomSigmaX) {
    // 1/2 (rho + sx rho sx): each coin sector receives the mean of both.
    for (std::size_t i = 0; i < pop.coin0.size(); ++i) {
      const double m = 0.5 * (pop.coin0[i] + pop.coin1[i]);
      pop.coin0[i] = m;
      pop.coin1[i] = m;
    }
  }
  ConditionalDistributions out;
  out.given0 = empty_like(space);
  out.given1 = empty_like(space);
  for (double v : pop.coin0) out.weight0 += v;
  for (double v : pop.coin1) out.weight1 += v;
  out.empty0 = out.weight0 <= 0.0;
  out.empty1 = out.weight1 <= 0.0;
  for (std::size_t i = 0; i < pop.coin0.size(); ++i) {
    if (!out.empty0) out.given0.probs()[i] = pop.coin0[i] / out.weight0;
    if (!out.empty1) out.given1.probs()[i] = pop.coin1[i] / out.weight1;
  }
  out.given0.normalized = !out.empty0;
  out.given1.normalized = !out.empty1;
  return out;
}

}  // namespace

Distribution position_distribution(const PureState& psi) {
  Distribution d = from_sum(psi.space(), populations(psi));
  d.normalized = std::abs(psi.norm_sq() - 1.0) < 1e-10;
  return d;
}

Distribution position_distribution(const DensityOperator& rho) {
  Distribution d = from_sum(rho.space(), populations(rho));
  d.normalized = rho.normalized();
  return d;
}

ConditionalDistributions conditional_distributions(const PureState& psi, PreFlip flip) {
  return conditionals(psi.space(), populations(psi), flip);
}

ConditionalDistributions conditional_distributions(const DensityOperator& rho, PreFlip flip) {
  return conditionals(rho.space(), populations(rho), flip);
}

double total_variation(const Distribution& p, const Distribution& q) {
  if (p.empty() && q.empty()) return 0.0;
  int lo = p.empty() ? q.first_position() : p.first_position();
  int hi = p.empty() ? q.last_position() : p.last_position();
  if (!q.empty()) {
    lo = std::min(lo, q.first_position());
    hi = std::max(hi, q.last_position());
  }
  double s = 0.0;
  for (int k = lo; k <= hi; ++k) s += std::abs(p.at(k) - q.at(k));
  return 0.5 * s;
}

double tail_mass(const Distribution& d, double threshold) {
  double s = 0.0;
  for (int k = d.first_position(); k <= d.last_position(); ++k) {
    if (std::abs(static_cast<double>(k)) > threshold) s += d.at(k);
  }
  return s;
}

SummaryStats summary(const Distribution& dist, const Distribution* reference) {
  SummaryStats s;
  const double total = dist.total();
  if (total > 0.0) {
    double m1 = 0.0;
    for (int k = dist.first_position(); k <= dist.last_position(); ++k) m1 += k * dist.at(k);
    s.mean = m1 / total;
    double m2 = 0.0;
    for (int k = dist.first_position(); k <= dist.last_position(); ++k) {
      const double dk = k - s.mean;
      m2 += dk * dk * dist.at(k);
    }
    s.std_dev = std::sqrt(m2 / total);
  }
  if (reference != nullptr) s.tv_to_reference = total_variation(dist, *reference);
  const double lo = std::sqrt(static_cast<double>(dist.steps));
  const double hi = dist.steps / std::sqrt(2.0);
  for (int k = dist.first_position(); k <= dist.last_position(); ++k) {
    const double ak = std::abs(static_cast<double>(k));
    if (ak > lo && ak < hi) s.interval_mass += dist.at(k);
  }
  return s;
}

namespace {

// Draw one position from `dist` by inverting its cumulative sum.
class PositionSampler {
 public:
  explicit PositionSampler(const Distribution& dist) : first_(dist.first_position()) {
    cdf_.reserve(dist.size());
    double acc = 0.0;
    for (double v : dist.probs()) {
      acc += v;
      cdf_.push_back(acc);
    }
    total_ = acc;
  }

  int draw(std::mt19937_64& rng) const {
    const double u = uniform01(rng) * total_;
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) {
      // Rounding put u at the total; fall back to the last site with mass.
      --it;
      while (it != cdf_.begin() && *it == *(it - 1)) --it;
    }
    return first_ + static_cast<int>(it - cdf_.begin());
  }

 private:
  int first_;
  double total_ = 0.0;
  std::vector<double> cdf_;
};

Distribution frequencies(const Distribution& shape, const std::vector<std::int64_t>& counts,
                         std::int64_t shots) {
  Distribution out = Distribution::zeros(shape.first_position(), shape.last_position());
  for (std::size_t i = 0; i < counts.size(); ++i)
    out.probs()[i] = static_cast<double>(counts[i]) / static_cast<double>(shots);
  out.steps = shape.steps;
  return out;
}

void check_shots(std::int64_t shots) {
  if (shots < 1) throw WalkError(ErrorKind::ParameterOutOfRange, "shot count must be >= 1");
}

}  // namespace

Distribution sample_positions(const Distribution& dist, std::int64_t shots, std::mt19937_64& rng) {
  check_shots(shots);
  if (!(dist.total() > 0.0)) {
    throw WalkError(ErrorKind::ParameterOutOfRange, "cannot sample from a zero-mass distribution");
  }
  const PositionSampler sampler(dist);
  std::vector<std::int64_t> counts(dist.size(), 0);
  for (std::int64_t s = 0; s < shots; ++s) ++counts[sampler.draw(rng) - dist.first_position()];
  return frequencies(dist, counts, shots);
}

std::mt19937_64 trajectory_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

PureState run_trajectory(const TrajectorySpec& spec, std::mt19937_64& rng) {
  spec.noise.validate();
  PureState psi = make_initial(spec.space, spec.initial, spec.start);
  for (int m = 0; m < spec.steps; ++m) {
    const StepPlan plan = plan_step(spec.protocol, m);
    const SampledBranch branch = unravel(spec.noise, plan.coin, rng);
    psi = trajectory_step(std::move(psi), plan, branch, spec.options);
  }
  return psi;
}

namespace {

constexpr std::int64_t kChunks = 64;

// Runs body(index, accumulator) for every index in [0, count), split into
// kChunks contiguous chunks whose accumulators are summed in chunk order.
template <typename Body>
std::vector<double> chunked_sum(std::int64_t count, std::size_t width, Body body) {
  const std::int64_t chunks = std::min<std::int64_t>(kChunks, count);
  std::vector<std::vector<double>> partial(static_cast<std::size_t>(chunks),
                                           std::vector<double>(width, 0.0));
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t c = next++; c < chunks; c = next++) {
      const std::int64_t begin = count * c / chunks;
      const std::int64_t end = count * (c + 1) / chunks;
      for (std::int64_t i = begin; i < end; ++i) body(i, partial[static_cast<std::size_t>(c)]);
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto threads = static_cast<unsigned>(std::min<std::int64_t>(hw, chunks));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  std::vector<double> sum(width, 0.0);
  for (const auto& p : partial)
    for (std::size_t i = 0; i < width; ++i) sum[i] += p[i];
  return sum;
}

}  // namespace

Distribution trajectory_average(const TrajectorySpec& spec, std::int64_t trajectories,
                                std::uint64_t seed) {
  check_shots(trajectories);
  const std::size_t d = spec.space.dim();
  auto sum = chunked_sum(trajectories, d, [&](std::int64_t i, std::vector<double>& acc) {
    auto rng = trajectory_rng(seed, static_cast<std::uint64_t>(i));
    const PureState psi = run_trajectory(spec, rng);
    const auto& a = psi.amplitudes();
    for (std::size_t k = 0; k < d; ++k) acc[k] += std::norm(a[k]) + std::norm(a[d + k]);
  });
  Distribution out(spec.space.min_position(), std::move(sum));
  for (auto& v : out.probs()) v /= static_cast<double>(trajectories);
  out.steps = spec.steps;
  return out;
}

Distribution sample_trajectory_positions(const TrajectorySpec& spec, std::int64_t shots,
                                         std::uint64_t seed) {
  check_shots(shots);
  const std::size_t d = spec.space.dim();
  auto counts = chunked_sum(shots, d, [&](std::int64_t i, std::vector<double>& acc) {
    auto rng = trajectory_rng(seed, static_cast<std::uint64_t>(i));
    const PureState psi = run_trajectory(spec, rng);
    const Distribution p = position_distribution(psi);
    acc[static_cast<std::size_t>(PositionSampler(p).draw(rng) - p.first_position())] += 1.0;
  });
  Distribution out(spec.space.min_position(), std::move(counts));
  for (auto& v : out.probs()) v /= static_cast<double>(shots);
  out.steps = spec.steps;
  return out;
}

}  // namespace qwalk
