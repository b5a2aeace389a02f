#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polystab/core.hpp"
#include "polystab/measure.hpp"

namespace polystab {

// Flow that leaves every carrier point fixed.
inline Semiflow identity_semiflow() {
  return {"identity", [](const TimePair&, const SamplePoint& v) { return v; }};
}

// Flow scaling the whole parameter block by (t+1)/(s+1); composition holds
// because the factors telescope.
inline Semiflow scaling_semiflow() {
  return {"scaling", [](const TimePair& tp, const SamplePoint& v) {
            SamplePoint out = v;
            const double factor = (tp.t() + 1.0) / (tp.s() + 1.0);
            for (double& p : out.params) p *= factor;
            return out;
          }};
}

// Time-homogeneous flow shifting the first parameter by the elapsed time.
inline Semiflow shift_semiflow() {
  return {"shift", [](const TimePair& tp, const SamplePoint& v) {
            SamplePoint out = v;
            if (!out.params.empty()) out.params[0] += tp.t() - tp.s();
            return out;
          }};
}

// Operator family acting as a scalar multiple of the identity; the factor may
// read the carrier point.
inline Cocycle scalar_cocycle(std::string name, int dim,
                              std::function<double(const TimePair&, const SamplePoint&)> factor,
                              std::optional<GrowthBound> growth = {}) {
  Cocycle cz;
  cz.name = std::move(name);
  cz.dim = dim;
  cz.growth = growth;
  cz.apply = [fac = std::move(factor)](const TimePair& tp, const SamplePoint& v, const State& x) {
    const double f = fac(tp, v);
    State out = x;
    for (double& c : out) c *= f;
    return out;
  };
  return cz;
}

struct GalleryParams {
  int levels = 8;  // number of positive-weight atoms in partitioned-decay
};

struct GalleryEntry {
  std::string name;
  std::string summary;
  Semiflow semiflow;
  Cocycle cocycle;
  ProbabilitySpace space;
  Observable observable;
  double time_floor = 0.0;  // law grids sample t >= r >= s >= time_floor
};

namespace detail {

// Two-atom carrier over tabulated paths; weights and observable sizes are
// dyadic so the mean size |g|_1 is exactly 1.
inline ProbabilitySpace default_two_atom_space() {
  std::vector<std::pair<SamplePoint, double>> atoms;
  atoms.push_back({SamplePoint{0, {0.0, 0.5, 1.0, 1.5}}, 0.25});
  atoms.push_back({SamplePoint{1, {0.0, -1.0, 2.0, 0.25}}, 0.75});
  return ProbabilitySpace::finite(std::move(atoms));
}

inline Observable table_observable(std::string name, std::vector<State> values) {
  auto table = std::make_shared<std::vector<State>>(std::move(values));
  Observable g;
  g.name = std::move(name);
  g.eval = [table](const SamplePoint& pt) -> State {
    if (pt.atom < 0 || pt.atom >= static_cast<std::int64_t>(table->size()))
      throw std::invalid_argument("observable: sample outside carrier (atom " +
                                  std::to_string(pt.atom) + ")");
    return (*table)[static_cast<std::size_t>(pt.atom)];
  };
  return g;
}

inline Observable default_two_atom_observable() {
  // Sizes 2.5 and 0.5; 0.25 * 2.5 + 0.75 * 0.5 == 1 exactly.
  return table_observable("default", {State{1.5, 2.0}, State{0.5, 0.0}});
}

}  // namespace detail

inline std::vector<std::string> gallery_names() {
  return {"inverse-linear", "linear-growth", "partitioned-decay", "evolution-family-power",
          "constant-identity"};
}

// Named reference systems with closed-form behavior.
inline GalleryEntry gallery(std::string_view name, const GalleryParams& params = {}) {
  GalleryEntry e;
  e.name = std::string(name);

  if (name == "inverse-linear") {
    e.summary = "scalar decay (s+1)/(t+1); stable in mean but not exponentially so";
    e.semiflow = scaling_semiflow();
    e.cocycle = scalar_cocycle(
        "inverse-linear", 2,
        [](const TimePair& tp, const SamplePoint&) { return (tp.s() + 1.0) / (tp.t() + 1.0); },
        GrowthBound{2.0, -1.0, 1.0});
    e.space = detail::default_two_atom_space();
    e.observable = detail::default_two_atom_observable();
    e.time_floor = 0.0;
    return e;
  }

  if (name == "linear-growth") {
    e.summary = "scalar growth (t+1)/(s+1); unstable in mean";
    e.semiflow = scaling_semiflow();
    e.cocycle = scalar_cocycle(
        "linear-growth", 2,
        [](const TimePair& tp, const SamplePoint&) { return (tp.t() + 1.0) / (tp.s() + 1.0); },
        GrowthBound{1.0, 1.0, 1.0});
    e.space = detail::default_two_atom_space();
    e.observable = detail::default_two_atom_observable();
    e.time_floor = 0.0;
    return e;
  }

  if (name == "partitioned-decay") {
    const int levels = params.levels;
    if (levels < 1)
      throw std::invalid_argument("gallery: partitioned-decay needs at least one level");
    e.summary = "atom-wise decay (t/s)^(-alpha_j) with a zero-weight non-decaying atom; "
                "stable in mean but not pathwise";
    e.semiflow = identity_semiflow();

    // Atom 0 carries no mass and does not decay; atoms 1..levels decay like
    // (t/s)^-1 with geometric weights normalized to total mass 1.
    auto exponents = std::make_shared<std::vector<double>>();
    exponents->push_back(0.0);
    std::vector<std::pair<SamplePoint, double>> atoms;
    atoms.push_back({SamplePoint{0, {}}, 0.0});
    const double norm = 1.0 / (1.0 - std::pow(2.0, -levels));
    for (int j = 1; j <= levels; ++j) {
      exponents->push_back(1.0);
      atoms.push_back({SamplePoint{j, {}}, norm * std::pow(2.0, -j)});
    }
    e.cocycle = scalar_cocycle(
        "partitioned-decay", 1,
        [exponents](const TimePair& tp, const SamplePoint& v) {
          if (v.atom < 0 || v.atom >= static_cast<std::int64_t>(exponents->size()))
            throw std::invalid_argument("partitioned-decay: sample outside carrier (atom " +
                                        std::to_string(v.atom) + ")");
          if (!(tp.s() > 0.0))
            throw std::invalid_argument("partitioned-decay: base time must be positive");
          return std::pow(tp.t() / tp.s(), -(*exponents)[static_cast<std::size_t>(v.atom)]);
        },
        GrowthBound{1.0, 0.0, 1.0});
    e.space = ProbabilitySpace::finite(std::move(atoms));
    e.observable = detail::table_observable(
        "default", std::vector<State>(static_cast<std::size_t>(levels) + 1, State{1.0}));
    e.time_floor = 1.0;
    return e;
  }

  if (name == "evolution-family-power") {
    e.summary = "evolution family U(t,s) = ((s+1)/(t+1))^2 lifted to a fiber-independent cocycle";
    e.semiflow = scaling_semiflow();
    e.cocycle = scalar_cocycle(
        "evolution-family-power", 2,
        [](const TimePair& tp, const SamplePoint&) {
          const double u = (tp.s() + 1.0) / (tp.t() + 1.0);
          return u * u;
        },
        GrowthBound{4.0, -2.0, 1.0});
    e.space = detail::default_two_atom_space();
    e.observable = detail::default_two_atom_observable();
    e.time_floor = 0.0;
    return e;
  }

  if (name == "constant-identity") {
    e.summary = "identity cocycle; neither stable nor unstable in mean";
    e.semiflow = shift_semiflow();
    e.cocycle = scalar_cocycle(
        "constant-identity", 2, [](const TimePair&, const SamplePoint&) { return 1.0; },
        GrowthBound{1.0, 0.0, 1.0});
    e.space = detail::default_two_atom_space();
    e.observable = detail::default_two_atom_observable();
    e.time_floor = 0.0;
    return e;
  }

  throw std::invalid_argument("gallery: unknown system '" + std::string(name) + "'");
}

}  // namespace polystab
