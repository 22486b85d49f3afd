#include <doctest.h>

#include <cmath>

#include "qwalk/classical.hpp"
#include "qwalk/measurement.hpp"

using namespace qwalk;

namespace {

DensityOperator evolve(int n, const NoiseSpec& noise) {
  const auto space = line_window_for(n);
  DensityOperator rho = to_density(make_initial(space, symmetric_coin_state(), 0));
  for (int m = 0; m < n; ++m) rho = noisy_step(std::move(rho), plan_step({}, m), noise);
  return rho;
}

}  // namespace

TEST_CASE("position_distribution") {
  const auto basis = make_initial(PositionSpace::line(3), {0.0, 1.0}, 2);
  const auto d = position_distribution(basis);
  CHECK(d.at(2) == 1.0);
  CHECK(d.total() == 1.0);

  const auto p3 = position_distribution(run_standard(line_window_for(3), CoinChoice::Hadamard, 3));
  CHECK(std::abs(p3.at(-3) - 0.125) < 1e-15);
  CHECK(std::abs(p3.at(-1) - 0.375) < 1e-15);
  CHECK(std::abs(p3.at(1) - 0.375) < 1e-15);
  CHECK(std::abs(p3.at(3) - 0.125) < 1e-15);

  const auto rho = evolve(6, NoiseSpec::depolarizing(0.7));
  CHECK(std::abs(position_distribution(rho).total() - rho.trace().real()) < 1e-12);
}

TEST_CASE("conditional distributions") {
  const int n = 40;
  const auto psi = run_standard(line_window_for(n), CoinChoice::Hadamard, n);
  const auto p = position_distribution(psi);

  SUBCASE("mirror symmetry without flip") {
    const auto c = conditional_distributions(psi);
    CHECK(max_abs_diff(c.given0, c.given1.mirrored()) < 1e-10);
    CHECK(max_abs_diff(c.given0, c.given1) > 1e-3);
  }
  SUBCASE("random sigma_x equalizes the conditionals") {
    const auto c = conditional_distributions(psi, PreFlip::RandomSigmaX);
    CHECK(max_abs_diff(c.given0, c.given1) < 1e-12);
    CHECK(max_abs_diff(c.given0, p) < 1e-12);
  }
  SUBCASE("unconditional is the weighted mixture") {
    const auto c = conditional_distributions(evolve(20, NoiseSpec::dephasing(0.9)));
    const auto u = position_distribution(evolve(20, NoiseSpec::dephasing(0.9)));
    double worst = 0.0;
    for (int k = u.first_position(); k <= u.last_position(); ++k)
      worst = std::max(worst, std::abs(c.weight0 * c.given0.at(k) + c.weight1 * c.given1.at(k) - u.at(k)));
    CHECK(worst < 1e-12);
  }
  SUBCASE("product state") {
    auto prod = make_initial(PositionSpace::line(3), plus_coin_state(), 0);
    const auto c = conditional_distributions(prod);
    CHECK(max_abs_diff(c.given0, position_distribution(prod)) < 1e-15);
    CHECK(max_abs_diff(c.given1, position_distribution(prod)) < 1e-15);
  }
  SUBCASE("empty branch is flagged") {
    const auto c = conditional_distributions(make_initial(PositionSpace::line(2), {1.0, 0.0}, 0));
    CHECK(c.empty1);
    CHECK_FALSE(c.empty0);
    CHECK(c.given1.total() == 0.0);
  }
}

TEST_CASE("summary") {
  const auto b = binomial_walk(200);
  const auto s = summary(b, &b);
  CHECK(std::abs(s.std_dev - std::sqrt(200.0)) < 1e-9);
  CHECK(std::abs(s.mean) < 1e-12);
  REQUIRE(s.tv_to_reference);
  CHECK(*s.tv_to_reference == 0.0);
  CHECK(summary(b).tv_to_reference == std::nullopt);

  Distribution d(-3, {0.25, 0.0, 0.0, 0.5, 0.0, 0.0, 0.25});
  d.steps = 8;  // interval (2.83, 5.66) holds |k| = 3
  CHECK(summary(d).interval_mass == 0.5);
  CHECK(summary(d).std_dev == doctest::Approx(std::sqrt(4.5)));
}

TEST_CASE("total variation") {
  Distribution a(0, {0.5, 0.5});
  Distribution b(1, {0.5, 0.5});
  CHECK(total_variation(a, b) == 0.5);
  CHECK(total_variation(a, a) == 0.0);
  CHECK(total_variation(Distribution(-5, {1.0}), Distribution(5, {1.0})) == 1.0);
}

TEST_CASE("quantum tails beat the binomial") {
  const int n = 200;
  auto q = position_distribution(run_standard(line_window_for(n), CoinChoice::Hadamard, n));
  q.steps = n;
  const auto c = binomial_walk(n);
  const double cut = 2.0 * std::sqrt(static_cast<double>(n));
  CHECK(tail_mass(q, cut) > tail_mass(c, cut));
  CHECK(summary(q).interval_mass > summary(c).interval_mass);
}

TEST_CASE("sample_positions") {
  const int n = 50;
  const auto exact = position_distribution(run_standard(line_window_for(n), CoinChoice::Hadamard, n));

  SUBCASE("empirical TV shrinks with shots") {
    std::mt19937_64 rng(1);
    const double tv_small = total_variation(sample_positions(exact, 1000, rng), exact);
    const double tv_big = total_variation(sample_positions(exact, 100000, rng), exact);
    CHECK(tv_big < 0.02);
    CHECK(tv_big < tv_small);
  }
  SUBCASE("single shot lands in the support") {
    std::mt19937_64 rng(2);
    const auto one = sample_positions(exact, 1, rng);
    CHECK(one.total() == 1.0);
    for (int k = one.first_position(); k <= one.last_position(); ++k)
      if (one.at(k) > 0.0) CHECK(exact.at(k) > 0.0);
  }
  SUBCASE("delta distribution") {
    std::mt19937_64 rng(3);
    const auto s = sample_positions(Distribution(-2, {0.0, 0.0, 1.0, 0.0}), 500, rng);
    CHECK(s.at(0) == 1.0);
  }
  SUBCASE("errors") {
    std::mt19937_64 rng(4);
    CHECK_THROWS_AS(sample_positions(exact, 0, rng), WalkError);
  }
  SUBCASE("trajectory shots") {
    TrajectorySpec spec;
    spec.space = line_window_for(n);
    spec.steps = n;
    const auto s = sample_trajectory_positions(spec, 20000, 9);
    CHECK(total_variation(s, exact) < 0.05);
    CHECK(max_abs_diff(s, sample_trajectory_positions(spec, 20000, 9)) == 0.0);
  }
}

TEST_CASE("transition ordering at n = 200") {
  const auto classical = binomial_walk(200);
  double prev = 1.0;
  for (double p : {1.0, 0.99, 0.97, 0.95, 0.0}) {
    const double tv = total_variation(position_distribution(evolve(200, NoiseSpec::depolarizing(p))), classical);
    CHECK(tv <= prev);
    prev = tv;
  }
  CHECK(prev < 1e-8);
}
