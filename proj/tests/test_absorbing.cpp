#include <doctest.h>

#include <cmath>

#include "qwalk/absorbing.hpp"
#include "qwalk/classical.hpp"

using namespace qwalk;

TEST_CASE("BarrierConfig validation") {
  BarrierConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), WalkError);
  cfg.barriers = {0};
  CHECK_THROWS_AS(cfg.validate(), WalkError);
  cfg.barriers = {-3, 4, 5};
  CHECK_THROWS_AS(cfg.validate(), WalkError);
  cfg.barriers = {-3, 4};
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("bounded_step") {
  BarrierConfig cfg;
  cfg.barriers = {-1};
  const auto space = PositionSpace::line(3);
  const auto rho0 = to_density(make_initial(space, symmetric_coin_state(), 0));

  SUBCASE("half the mass lands on the barrier in one step") {
    const auto r = bounded_step(rho0, {hadamard(), ShiftOrientation::Standard}, NoiseSpec::none(), cfg);
    CHECK(r.absorbed == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(r.rho.trace().real() - 0.5) < 1e-12);
    CHECK_FALSE(r.rho.normalized());
  }
  SUBCASE("survival plus absorption stays 1 with noise") {
    DensityOperator rho = rho0;
    double cumulative = 0.0;
    BarrierConfig far;
    far.barriers = {-2};
    const auto big = to_density(make_initial(PositionSpace::line(12), symmetric_coin_state(), 0));
    rho = big;
    for (int m = 0; m < 10; ++m) {
      auto r = bounded_step(std::move(rho), {hadamard(), ShiftOrientation::Standard},
                            NoiseSpec::depolarizing(0.8), far);
      cumulative += r.absorbed;
      rho = std::move(r.rho);
      CHECK(std::abs(rho.trace().real() + cumulative - 1.0) < 1e-12);
      CHECK(rho.hermiticity_residual() < 1e-12);
    }
  }
}

TEST_CASE("barrier out of reach absorbs nothing") {
  const int n = 30;
  BarrierConfig cfg;
  cfg.barriers = {-(n + 1)};
  const auto series = run_bounded(cfg, {}, symmetric_coin_state(), NoiseSpec::none(), n);
  REQUIRE(series.size() == static_cast<std::size_t>(n));
  for (const auto& r : series) CHECK(r.cumulative == 0.0);
}

TEST_CASE("run_bounded bookkeeping and ordering") {
  const int n = 200;
  BarrierConfig cfg;
  cfg.barriers = {-10};
  const auto ideal = run_bounded(cfg, {}, symmetric_coin_state(), NoiseSpec::none(), n);
  const auto noisy = run_bounded(cfg, {}, symmetric_coin_state(), NoiseSpec::depolarizing(0.99), n);
  const auto classical = classical_absorption_series(cfg.barriers, n);
  double prev = 0.0;
  for (int m = 0; m < n; ++m) {
    CHECK(ideal[m].cumulative >= prev);
    CHECK(ideal[m].cumulative <= 1.0);
    CHECK(std::abs(ideal[m].cumulative + ideal[m].surviving - 1.0) < 1e-10);
    CHECK(std::abs(noisy[m].cumulative + noisy[m].surviving - 1.0) < 1e-10);
    prev = ideal[m].cumulative;
  }
  CHECK(classical.back() > ideal.back().cumulative);
}

TEST_CASE("fully depolarized bounded walk is the classical one") {
  const int n = 120;
  BarrierConfig cfg;
  cfg.barriers = {-10, 7};
  const auto quantum = run_bounded(cfg, {}, symmetric_coin_state(), NoiseSpec::depolarizing(0.0), n);
  const auto classical = classical_absorption_series(cfg.barriers, n);
  double worst = 0.0;
  for (int m = 0; m < n; ++m) worst = std::max(worst, std::abs(quantum[m].cumulative - classical[m]));
  CHECK(worst < 1e-8);
}

TEST_CASE("bounded window") {
  BarrierConfig cfg;
  cfg.barriers = {-10};
  const auto w = bounded_window(cfg, 100, NoiseSpec::none());
  CHECK(w.min_position() == -10);
  CHECK(w.max_position() == 101);
  const auto t = bounded_window(cfg, 100, NoiseSpec::tunneling(0.9));
  CHECK(t.min_position() == -201);
}

TEST_CASE("barrier timing variant") {
  BarrierConfig cfg;
  cfg.barriers = {-1};
  cfg.timing = BarrierTiming::BeforeCoin;
  const auto series = run_bounded(cfg, {}, symmetric_coin_state(), NoiseSpec::none(), 2);
  // Arrivals are only counted at the start of the following step.
  CHECK(series[0].cumulative == 0.0);
  CHECK(series[1].cumulative == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("tunneling lets mass reach past the barrier without overflow") {
  BarrierConfig cfg;
  cfg.barriers = {-3};
  const auto s = run_bounded(cfg, {}, symmetric_coin_state(), NoiseSpec::tunneling(0.8), 20);
  CHECK(std::abs(s.back().cumulative + s.back().surviving - 1.0) < 1e-10);
}
