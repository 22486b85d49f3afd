#pragma once

#include <set>
#include <vector>

#include "qwalk/distribution.hpp"

namespace qwalk {

using ClassicalDistribution = Distribution;

/// Unbiased classical walk from the origin after n steps:
/// p(n, k) = 2^-n C(n, (n + k)/2), built row by row from Pascal's rule with
/// a factor 1/2 per row so no large binomials appear.
ClassicalDistribution binomial_walk(int steps);

struct ClassicalStepResult {
  ClassicalDistribution surviving;
  double absorbed = 0.0;
};

/// One fair step: each site's mass splits half left, half right. Mass that
/// lands on a barrier is removed and reported as `absorbed`.
ClassicalStepResult classical_dp_step(const ClassicalDistribution& dist,
                                      const std::set<int>& barriers = {});

/// Cumulative absorbed mass after steps 1..n starting from delta_0.
std::vector<double> classical_absorption_series(const std::set<int>& barriers, int steps);

}  // namespace qwalk
