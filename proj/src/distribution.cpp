#include "qwalk/distribution.hpp"

#include <algorithm>
#include <cmath>

namespace qwalk {

Distribution Distribution::zeros(int lo, int hi) {
  return Distribution(lo, std::vector<double>(static_cast<std::size_t>(hi - lo + 1), 0.0));
}

double Distribution::total() const noexcept {
  double s = 0.0;
  for (double v : probs_) s += v;
  return s;
}

Distribution Distribution::mirrored() const {
  if (probs_.empty()) return *this;
  Distribution out(-last_position(), std::vector<double>(probs_.rbegin(), probs_.rend()));
  out.steps = steps;
  out.normalized = normalized;
  out.label = label;
  return out;
}

double max_abs_diff(const Distribution& a, const Distribution& b) {
  if (a.empty() && b.empty()) return 0.0;
  int lo = a.empty() ? b.first_position() : a.first_position();
  int hi = a.empty() ? b.last_position() : a.last_position();
  if (!b.empty()) {
    lo = std::min(lo, b.first_position());
    hi = std::max(hi, b.last_position());
  }
  double worst = 0.0;
  for (int k = lo; k <= hi; ++k) worst = std::max(worst, std::abs(a.at(k) - b.at(k)));
  return worst;
}

}  // namespace qwalk
