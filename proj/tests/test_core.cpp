#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "polystab/core.hpp"
#include "polystab/gallery.hpp"

namespace ps = polystab;

TEST_CASE("time pairs enforce the ordered quadrant", "[core]") {
  REQUIRE_NOTHROW(ps::TimePair(3.0, 1.0));
  REQUIRE_NOTHROW(ps::TimePair(2.0, 2.0));
  REQUIRE_THROWS_WITH(ps::TimePair(1.0, 3.0),
                      Catch::Matchers::ContainsSubstring("time-order violation"));
  REQUIRE_THROWS_AS(ps::TimePair(1.0, -0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(ps::TimePair(std::nan(""), 0.0), std::invalid_argument);
}

TEST_CASE("carrier distance separates fibers and parameters", "[core]") {
  ps::SamplePoint a{0, {1.0, 2.0}};
  ps::SamplePoint b{0, {1.0, 2.0}};
  REQUIRE(ps::sample_distance(a, b) == 0.0);

  ps::SamplePoint c{1, {1.0, 2.0}};
  REQUIRE(ps::sample_distance(a, c) == 1.0);  // fiber mismatch alone

  ps::SamplePoint d{0, {4.0, 6.0}};
  REQUIRE(ps::sample_distance(a, d) == Catch::Approx(5.0));

  ps::SamplePoint e{0, {1.0}};
  REQUIRE_THROWS_AS(ps::sample_distance(a, e), std::invalid_argument);
}

TEST_CASE("time chains are ordered, windowed, and seed-deterministic", "[core]") {
  const auto triples = ps::make_time_triples(99, 500, 1.0, 50.0);
  REQUIRE(triples.size() == 500);
  for (const auto& tr : triples) {
    REQUIRE(tr.t >= tr.r);
    REQUIRE(tr.r >= tr.s);
    REQUIRE(tr.s >= 1.0);
    REQUIRE(tr.t <= 51.0);
  }
  const auto again = ps::make_time_triples(99, 500, 1.0, 50.0);
  REQUIRE(triples[123].t == again[123].t);
  const auto other = ps::make_time_triples(100, 500, 1.0, 50.0);
  REQUIRE(triples[0].t != other[0].t);
}

TEST_CASE("gallery flows satisfy identity and composition", "[core]") {
  const auto triples = ps::make_time_triples(7, 400, 0.0, 100.0);
  const std::vector<ps::SamplePoint> samples{{0, {0.0, 0.5, 1.0, 1.5}}, {1, {0.0, -1.0, 2.0, 0.25}}};

  for (auto make : {ps::identity_semiflow, ps::scaling_semiflow, ps::shift_semiflow}) {
    const ps::Semiflow sf = make();
    const auto rep = ps::check_semiflow_laws(sf, triples, samples, 1e-9);
    INFO(sf.name << " max residual " << rep.max_residual);
    REQUIRE(rep.passed);
    REQUIRE(rep.checks == triples.size() * samples.size());
  }
}

TEST_CASE("a flow violating composition is caught and localized", "[core]") {
  // Quadratic elapsed-time shift: (t-r)^2 + (r-s)^2 != (t-s)^2.
  ps::Semiflow broken{"broken", [](const ps::TimePair& tp, const ps::SamplePoint& v) {
                        ps::SamplePoint out = v;
                        out.params[0] += (tp.t() - tp.s()) * (tp.t() - tp.s());
                        return out;
                      }};
  const auto triples = ps::make_time_triples(7, 200, 0.0, 10.0);
  const std::vector<ps::SamplePoint> samples{{0, {0.0}}};
  const auto rep = ps::check_semiflow_laws(broken, triples, samples, 1e-9);
  REQUIRE_FALSE(rep.passed);
  REQUIRE(rep.max_residual > 1.0);
  REQUIRE(rep.worst.t >= rep.worst.r);
}

TEST_CASE("gallery operator families satisfy the twisted composition law", "[core]") {
  const auto triples = ps::make_time_triples(8, 300, 1.0, 60.0);
  const std::vector<ps::State> probes{{1.0, 0.0}, {0.0, 1.0}, {0.6, -0.8}};

  for (const char* name : {"inverse-linear", "linear-growth", "evolution-family-power"}) {
    const ps::GalleryEntry e = ps::gallery(name);
    std::vector<ps::SamplePoint> samples;
    for (const auto& [pt, w] : e.space.atoms) {
      (void)w;
      samples.push_back(pt);
    }
    const auto rep = ps::check_cocycle_laws(e.cocycle, e.semiflow, triples, samples, probes, 1e-9);
    INFO(name << " max residual " << rep.max_residual);
    REQUIRE(rep.passed);
  }
}

TEST_CASE("an operator family violating composition is caught", "[core]") {
  const ps::Semiflow sf = ps::identity_semiflow();
  const ps::Cocycle bad = ps::scalar_cocycle(
      "bad", 1, [](const ps::TimePair& tp, const ps::SamplePoint&) {
        return (tp.t() + 1.0) / ((tp.s() + 1.0) * (tp.s() + 1.0));
      });
  const auto triples = ps::make_time_triples(9, 100, 0.0, 10.0);
  const std::vector<ps::SamplePoint> samples{{0, {}}};
  const std::vector<ps::State> probes{{1.0}};
  const auto rep = ps::check_cocycle_laws(bad, sf, triples, samples, probes, 1e-9);
  REQUIRE_FALSE(rep.passed);
}

TEST_CASE("zero probes are rejected before any law is evaluated", "[core]") {
  const ps::GalleryEntry e = ps::gallery("inverse-linear");
  const auto triples = ps::make_time_triples(9, 10, 0.0, 10.0);
  const std::vector<ps::SamplePoint> samples{e.space.atoms[0].first};
  const std::vector<ps::State> probes{{0.0, 0.0}};
  REQUIRE_THROWS_WITH(ps::check_cocycle_laws(e.cocycle, e.semiflow, triples, samples, probes, 1e-9),
                      Catch::Matchers::ContainsSubstring("zero probe"));
}

TEST_CASE("growth envelopes verify and falsify on the same grid", "[core]") {
  const ps::GalleryEntry e = ps::gallery("inverse-linear");
  const auto triples = ps::make_time_triples(10, 300, 1.0, 80.0);
  std::vector<ps::SamplePoint> samples;
  for (const auto& [pt, w] : e.space.atoms) {
    (void)w;
    samples.push_back(pt);
  }
  const std::vector<ps::State> probes{{1.0, 0.0}, {0.5, 0.5}};

  const auto good = ps::check_growth_bound(e.cocycle, ps::GrowthBound{2.0, -1.0, 1.0}, triples,
                                           samples, probes, 1e-9);
  REQUIRE(good.passed);

  // Scale 1 with exponent -1 sits below the actual decay for t > s.
  const auto bad = ps::check_growth_bound(e.cocycle, ps::GrowthBound{1.0, -1.0, 1.0}, triples,
                                          samples, probes, 1e-9);
  REQUIRE_FALSE(bad.passed);
  REQUIRE(bad.max_residual > 0.0);
}

TEST_CASE("growth bound validation rejects nonsense", "[core]") {
  ps::GrowthBound gb{0.0, 1.0, 1.0};
  REQUIRE_THROWS_AS(gb.validate(), std::invalid_argument);
  gb = {1.0, 1.0, -1.0};
  REQUIRE_THROWS_AS(gb.validate(), std::invalid_argument);
}

TEST_CASE("cocycle application checks the probe dimension", "[core]") {
  const ps::GalleryEntry e = ps::gallery("inverse-linear");
  REQUIRE_THROWS_AS(ps::apply_cocycle(e.cocycle, e.semiflow, ps::TimePair(2.0, 1.0),
                                      e.space.atoms[0].first, ps::State{1.0}),
                    std::invalid_argument);
}
