#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "polystab/gallery.hpp"
#include "polystab/measure.hpp"

namespace ps = polystab;

TEST_CASE("finite measures validate their weights", "[measure]") {
  REQUIRE_THROWS_WITH(
      ps::ProbabilitySpace::finite({{ps::SamplePoint{0, {}}, -0.25}, {ps::SamplePoint{1, {}}, 1.25}}),
      Catch::Matchers::ContainsSubstring("negative atom weight"));
  REQUIRE_THROWS_WITH(
      ps::ProbabilitySpace::finite({{ps::SamplePoint{0, {}}, 0.6}, {ps::SamplePoint{1, {}}, 0.6}}),
      Catch::Matchers::ContainsSubstring("sum to 1"));
}

TEST_CASE("the reference observable has unit mean size exactly", "[measure]") {
  const ps::GalleryEntry e = ps::gallery("inverse-linear");
  const auto l1 = ps::l1_norm(e.observable, e.space);
  REQUIRE(l1.value == 1.0);  // dyadic weights and sizes: no rounding anywhere
  REQUIRE(l1.std_error == 0.0);
  REQUIRE(l1.exact);
}

TEST_CASE("propagated means follow the closed form", "[measure]") {
  const ps::GalleryEntry e = ps::gallery("inverse-linear");

  const auto half = ps::mean_norm(e.cocycle, e.semiflow, ps::TimePair(3.0, 1.0), e.observable,
                                  e.space);
  REQUIRE(half.value == 0.5);  // (1+1)/(3+1) exactly in binary arithmetic
  REQUIRE(half.std_error == 0.0);
  REQUIRE(half.exact);

  for (double s : {0.5, 1.0, 4.0}) {
    for (double t : {s, 2.0 * s, 17.0 * s + 0.25}) {
      const auto m = ps::mean_norm(e.cocycle, e.semiflow, ps::TimePair(t, s), e.observable,
                                   e.space);
      REQUIRE(m.value == Catch::Approx((s + 1.0) / (t + 1.0)).epsilon(1e-14));
    }
  }
}

TEST_CASE("zero-weight atoms stay in the carrier but carry no mass", "[measure]") {
  const ps::GalleryEntry e = ps::gallery("partitioned-decay");
  REQUIRE(e.space.atoms.front().second == 0.0);  // the non-decaying atom

  // Every massive atom decays like s/t, so the mean is s/t while the
  // pathwise sup over the carrier stays 1 forever.
  const auto m = ps::mean_norm(e.cocycle, e.semiflow, ps::TimePair(10.0, 2.0), e.observable,
                               e.space);
  REQUIRE(m.value == Catch::Approx(0.2).epsilon(1e-13));

  const ps::State sup_path = e.cocycle.apply(ps::TimePair(10.0, 2.0), e.space.atoms[0].first,
                                             ps::State{1.0});
  REQUIRE(sup_path[0] == 1.0);
}

TEST_CASE("monte carlo means are reproducible and honestly uncertain", "[measure]") {
  const auto sp = ps::uniform_parameter_space(20240801);
  const ps::Observable g = ps::parameter_observable(1);

  const auto a = ps::l1_norm(g, sp, 100000);
  const auto b = ps::l1_norm(g, sp, 100000);
  REQUIRE(a.value == b.value);  // bitwise: sample i comes from child stream i
  REQUIRE(a.std_error == b.std_error);
  REQUIRE_FALSE(a.exact);
  REQUIRE(a.samples == 100000);

  // |x| of a uniform draw has mean 1/2 and sd 1/sqrt(12).
  REQUIRE(std::abs(a.value - 0.5) <= 3.0 * a.std_error);
  REQUIRE(a.std_error == Catch::Approx(1.0 / std::sqrt(12.0 * 100000.0)).epsilon(0.05));

  const auto tiny = ps::l1_norm(g, sp, 1);
  REQUIRE(tiny.samples == 1);
  REQUIRE(std::isinf(tiny.std_error));
}

TEST_CASE("observables outside the carrier are refused", "[measure]") {
  const ps::GalleryEntry e = ps::gallery("inverse-linear");
  const ps::SamplePoint outside{7, {}};
  REQUIRE_THROWS_WITH(e.observable.eval(outside),
                      Catch::Matchers::ContainsSubstring("outside carrier (atom 7)"));
}

TEST_CASE("injectivity scan reports the weakest point", "[measure]") {
  const ps::GalleryEntry e = ps::gallery("inverse-linear");
  const std::vector<double> s_grid{1.0, 2.0, 4.0};
  const std::vector<double> t_grid{1.0, 10.0, 100.0, 1000.0};

  const auto tight = ps::injectivity_check(e.cocycle, e.semiflow, e.space, e.observable, s_grid,
                                           t_grid, 1e-6);
  REQUIRE(tight.injective);
  REQUIRE(tight.observable_l1 == 1.0);
  // Weakest mean (s+1)/(ts+1) over the grid: largest multiplier, largest base.
  REQUIRE(tight.min_at_t == 1000.0);
  REQUIRE(tight.min_at_s == 4.0);
  REQUIRE(tight.min_mean == Catch::Approx(5.0 / 4001.0).epsilon(1e-12));

  const auto loose = ps::injectivity_check(e.cocycle, e.semiflow, e.space, e.observable, s_grid,
                                           t_grid, 0.1);
  REQUIRE_FALSE(loose.injective);

  const ps::Observable zero{"zero", [](const ps::SamplePoint&) { return ps::State{0.0, 0.0}; }};
  REQUIRE_THROWS_WITH(ps::injectivity_check(e.cocycle, e.semiflow, e.space, zero, s_grid, t_grid,
                                            1e-6),
                      Catch::Matchers::ContainsSubstring("zero observable"));
}
