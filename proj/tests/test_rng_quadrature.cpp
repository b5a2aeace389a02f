#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "polystab/quadrature.hpp"
#include "polystab/rng.hpp"

namespace ps = polystab;

TEST_CASE("seeded generator replays its stream", "[rng]") {
  ps::SeededRng a(42), b(42);
  for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());

  ps::SeededRng c(43);
  bool all_equal = true;
  ps::SeededRng a2(42);
  for (int i = 0; i < 16; ++i) all_equal = all_equal && (a2.next_u64() == c.next_u64());
  REQUIRE_FALSE(all_equal);
}

TEST_CASE("uniform draws live in the half-open unit interval", "[rng]") {
  ps::SeededRng rng(7);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  REQUIRE(sum / n == Catch::Approx(0.5).margin(0.01));
  REQUIRE(lo < 0.01);
  REQUIRE(hi > 0.99);

  ps::SeededRng r2(7);
  const double v = r2.uniform(-3.0, 5.0);
  REQUIRE(v >= -3.0);
  REQUIRE(v < 5.0);
}

TEST_CASE("child streams are independent and pure in the stream index", "[rng]") {
  ps::SeededRng root(2024);
  ps::SeededRng c0 = root.child(0);
  ps::SeededRng c0_again = root.child(0);
  ps::SeededRng c1 = root.child(1);
  REQUIRE(c0.next_u64() == c0_again.next_u64());
  REQUIRE(ps::mix_seed(2024, 0) != ps::mix_seed(2024, 1));
  REQUIRE(ps::mix_seed(2024, 0) == ps::mix_seed(2024, 0));
  (void)c1;
}

TEST_CASE("kronecker points are equidistributed and random-access", "[rng]") {
  ps::KroneckerSequence<2> seq(5);
  double sx = 0.0, sy = 0.0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    const auto u = seq.point(static_cast<std::uint64_t>(i));
    REQUIRE(u[0] >= 0.0);
    REQUIRE(u[0] < 1.0);
    REQUIRE(u[1] >= 0.0);
    REQUIRE(u[1] < 1.0);
    sx += u[0];
    sy += u[1];
  }
  REQUIRE(sx / n == Catch::Approx(0.5).margin(0.02));
  REQUIRE(sy / n == Catch::Approx(0.5).margin(0.02));

  const auto p = seq.point(1234);
  const auto q = seq.point(1234);
  REQUIRE(p[0] == q[0]);
  REQUIRE(p[1] == q[1]);
}

TEST_CASE("adaptive quadrature hits closed forms", "[quadrature]") {
  const auto sq = ps::integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
  REQUIRE(sq.converged);
  REQUIRE(sq.value == Catch::Approx(1.0 / 3.0).epsilon(1e-13));
  REQUIRE(sq.evaluations > 0);

  const auto inv = ps::integrate_adaptive([](double x) { return 1.0 / x; }, 1.0,
                                          std::exp(1.0), 1e-12);
  REQUIRE(inv.converged);
  REQUIRE(inv.value == Catch::Approx(1.0).epsilon(1e-12));

  const auto sine =
      ps::integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-12);
  REQUIRE(sine.value == Catch::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("adaptive quadrature resolves a sharp peak", "[quadrature]") {
  // Gaussian of width 1/sqrt(1000); tails beyond [0, 1] are below 1e-100.
  const double oracle = std::sqrt(std::numbers::pi / 1000.0);
  const auto peak = ps::integrate_adaptive(
      [](double x) { return std::exp(-1000.0 * (x - 0.5) * (x - 0.5)); }, 0.0, 1.0, 1e-12);
  REQUIRE(peak.converged);
  REQUIRE(peak.value == Catch::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("piecewise quadrature splits at declared kinks", "[quadrature]") {
  const std::vector<double> cuts{0.5};
  const auto kink = ps::integrate_piecewise([](double x) { return std::abs(x - 0.5); }, 0.0, 1.0,
                                            cuts, 1e-12);
  REQUIRE(kink.converged);
  REQUIRE(kink.value == Catch::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("quadrature rejects an empty or inverted window", "[quadrature]") {
  REQUIRE_THROWS_AS(ps::integrate_adaptive([](double) { return 1.0; }, 1.0, 0.0, 1e-10),
                    std::invalid_argument);
}
