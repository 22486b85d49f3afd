#include "qwalk/classical.hpp"

#include "qwalk/error.hpp"

namespace qwalk {

ClassicalDistribution binomial_walk(int steps) {
  if (steps < 0) throw WalkError(ErrorKind::ParameterOutOfRange, "step count must be >= 0");
  // row[j] = 2^-m C(m, j) after m rows.
  std::vector<double> row{1.0};
  row.reserve(static_cast<std::size_t>(steps) + 1);
  for (int m = 1; m <= steps; ++m) {
    row.push_back(0.0);
    for (int j = m; j >= 1; --j) row[j] = 0.5 * (row[j] + row[j - 1]);
    row[0] *= 0.5;
  }
  // Position k = 2j - n.
  Distribution out = Distribution::zeros(-steps, steps);
  for (int j = 0; j <= steps; ++j) out[2 * j - steps] = row[j];
  out.steps = steps;
  out.label = "classical";
  return out;
}

ClassicalStepResult classical_dp_step(const ClassicalDistribution& dist,
                                      const std::set<int>& barriers) {
  ClassicalStepResult r;
  r.surviving = Distribution::zeros(dist.first_position() - 1, dist.last_position() + 1);
  for (int k = dist.first_position(); k <= dist.last_position(); ++k) {
    const double half = 0.5 * dist.at(k);
    if (half == 0.0) continue;
    r.surviving[k - 1] += half;
    r.surviving[k + 1] += half;
  }
  for (int b : barriers) {
    if (!r.surviving.contains(b)) continue;
    r.absorbed += r.surviving[b];
    r.surviving[b] = 0.0;
  }
  r.surviving.steps = dist.steps + 1;
  r.surviving.normalized = barriers.empty() && dist.normalized;
  r.surviving.label = dist.label;
  return r;
}

std::vector<double> classical_absorption_series(const std::set<int>& barriers, int steps) {
  if (steps < 0) throw WalkError(ErrorKind::ParameterOutOfRange, "step count must be >= 0");
  std::vector<double> series;
  series.reserve(static_cast<std::size_t>(steps));
  Distribution dist(0, {1.0});
  double cumulative = 0.0;
  for (int m = 0; m < steps; ++m) {
    auto r = classical_dp_step(dist, barriers);
    cumulative += r.absorbed;
    series.push_back(cumulative);
    dist = std::move(r.surviving);
  }
  return series;
}

}  // namespace qwalk
