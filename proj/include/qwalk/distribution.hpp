#pragma once

#include <string>
#include <vector>

namespace qwalk {

/// Probability mass over a contiguous range of integer positions.
class Distribution {
 public:
  Distribution() = default;
  Distribution(int first_position, std::vector<double> probs)
      : first_(first_position), probs_(std::move(probs)) {}

  /// All-zero distribution over [lo, hi].
  static Distribution zeros(int lo, int hi);

  int first_position() const noexcept { return first_; }
  int last_position() const noexcept { return first_ + static_cast<int>(probs_.size()) - 1; }
  std::size_t size() const noexcept { return probs_.size(); }
  bool empty() const noexcept { return probs_.empty(); }

  bool contains(int k) const noexcept { return k >= first_ && k <= last_position(); }
  /// Mass at k; 0 outside the stored range.
  double at(int k) const noexcept { return contains(k) ? probs_[k - first_] : 0.0; }
  /// Mutable access; k must be inside the stored range.
  double& operator[](int k) { return probs_.at(static_cast<std::size_t>(k - first_)); }

  const std::vector<double>& probs() const noexcept { return probs_; }
  std::vector<double>& probs() noexcept { return probs_; }

  double total() const noexcept;

  /// Mass reflected about k = 0.
  Distribution mirrored() const;

  /// Step count the distribution was taken at.
  int steps = 0;
  /// False for the surviving distribution of a bounded walk, whose total is
  /// the survival probability rather than 1.
  bool normalized = true;
  std::string label;

 private:
  int first_ = 0;
  std::vector<double> probs_;
};

/// Largest |p(k) - q(k)| over the union of supports.
double max_abs_diff(const Distribution& a, const Distribution& b);

}  // namespace qwalk
