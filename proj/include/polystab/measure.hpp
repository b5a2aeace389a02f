#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polystab/core.hpp"
#include "polystab/rng.hpp"

namespace polystab {

// Probability carrier: either a finite list of weighted atoms (means are
// exact) or a seeded parametric sampler (means are Monte Carlo estimates).
// Zero-weight atoms stay in the carrier; they matter for pathwise statements
// even though they never contribute mass.
struct ProbabilitySpace {
  enum class Kind { finite_discrete, sampler };

  Kind kind = Kind::finite_discrete;
  std::vector<std::pair<SamplePoint, double>> atoms;
  std::function<SamplePoint(SeededRng&)> draw;
  std::uint64_t seed = 0;

  static ProbabilitySpace finite(std::vector<std::pair<SamplePoint, double>> atoms) {
    double total = 0.0;
    for (const auto& [pt, w] : atoms) {
      (void)pt;
      if (!(w >= 0.0)) throw std::invalid_argument("probability space: negative atom weight");
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw std::invalid_argument("probability space: atom weights must sum to 1");
    ProbabilitySpace sp;
    sp.kind = Kind::finite_discrete;
    sp.atoms = std::move(atoms);
    return sp;
  }

  static ProbabilitySpace from_sampler(std::function<SamplePoint(SeededRng&)> draw,
                                       std::uint64_t seed) {
    if (!draw) throw std::invalid_argument("probability space: null sampler");
    ProbabilitySpace sp;
    sp.kind = Kind::sampler;
    sp.draw = std::move(draw);
    sp.seed = seed;
    return sp;
  }
};

// Uniform parameter on [0, 1): the one-dimensional reference sampler.
inline ProbabilitySpace uniform_parameter_space(std::uint64_t seed) {
  return ProbabilitySpace::from_sampler(
      [](SeededRng& rng) {
        SamplePoint pt;
        pt.atom = -1;
        pt.params = {rng.uniform()};
        return pt;
      },
      seed);
}

// State-valued observable on the carrier.
struct Observable {
  std::string name;
  std::function<State(const SamplePoint&)> eval;
};

// Observable reading the parameter block as the state (used with samplers).
inline Observable parameter_observable(int dim = 1) {
  Observable g;
  g.name = "param";
  g.eval = [dim](const SamplePoint& pt) {
    State x(static_cast<std::size_t>(dim), 0.0);
    for (std::size_t i = 0; i < x.size() && i < pt.params.size(); ++i) x[i] = pt.params[i];
    return x;
  };
  return g;
}

struct MeanEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  bool exact = true;
};

namespace detail {

// Monte Carlo mean of fn over the sampler; sample i is drawn from the child
// stream (seed, i), so the estimate is a pure function of (seed, budget) and
// independent of evaluation order.
template <class Fn>
MeanEstimate sampler_mean(const ProbabilitySpace& sp, std::size_t budget, Fn&& fn) {
  if (sp.kind != ProbabilitySpace::Kind::sampler)
    throw std::logic_error("sampler_mean: finite-discrete space");
  if (budget < 1) throw std::invalid_argument("mean estimate: sampler budget must be >= 1");
  SeededRng root(sp.seed);
  double mean = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < budget; ++i) {
    SeededRng stream = root.child(i);
    const double v = fn(sp.draw(stream));
    const double delta = v - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (v - mean);
  }
  MeanEstimate est;
  est.value = mean;
  est.samples = budget;
  est.exact = false;
  est.std_error = budget > 1
                      ? std::sqrt(m2 / static_cast<double>(budget - 1) /
                                  static_cast<double>(budget))
                      : std::numeric_limits<double>::infinity();
  return est;
}

template <class Fn>
MeanEstimate exact_mean(const ProbabilitySpace& sp, Fn&& fn) {
  double sum = 0.0, comp = 0.0;
  for (const auto& [pt, w] : sp.atoms) {
    if (w == 0.0) continue;
    const double term = w * fn(pt);
    const double t = sum + term;
    comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  MeanEstimate est;
  est.value = sum + comp;
  est.samples = sp.atoms.size();
  est.exact = true;
  est.std_error = 0.0;
  return est;
}

}  // namespace detail

// Integral of |g| over the carrier: exact for finite-discrete spaces, Monte
// Carlo with the given budget for samplers.
inline MeanEstimate l1_norm(const Observable& g, const ProbabilitySpace& sp,
                            std::size_t budget = 0) {
  auto size = [&g](const SamplePoint& pt) { return euclidean_norm(g.eval(pt)); };
  if (sp.kind == ProbabilitySpace::Kind::finite_discrete) return detail::exact_mean(sp, size);
  return detail::sampler_mean(sp, budget, size);
}

// Mean size of the propagated observable, integral of |Phi(t,s,y) g(y)|.
inline MeanEstimate mean_norm(const Cocycle& cz, const Semiflow& /*sf*/, const TimePair& tp,
                              const Observable& g, const ProbabilitySpace& sp,
                              std::size_t budget = 0) {
  auto moved = [&](const SamplePoint& pt) {
    return euclidean_norm(cz.apply(tp, pt, g.eval(pt)));
  };
  if (sp.kind == ProbabilitySpace::Kind::finite_discrete) return detail::exact_mean(sp, moved);
  return detail::sampler_mean(sp, budget, moved);
}

struct InjectivityReport {
  bool injective = false;
  double observable_l1 = 0.0;
  double min_mean = std::numeric_limits<double>::infinity();
  double min_at_t = 0.0;
  double min_at_s = 0.0;
  double eps = 0.0;
};

// Checks that propagated means stay above eps * |g|_1 over the grid of
// (multiplier * s, s) pairs.  A vanishing observable is rejected: the
// injectivity notion is defined on nonzero observables only.
inline InjectivityReport injectivity_check(const Cocycle& cz, const Semiflow& sf,
                                           const ProbabilitySpace& sp, const Observable& g,
                                           std::span<const double> s_grid,
                                           std::span<const double> t_grid, double eps,
                                           std::size_t budget = 0) {
  if (s_grid.empty() || t_grid.empty())
    throw std::invalid_argument("injectivity_check: empty grid");
  if (!(eps > 0.0)) throw std::invalid_argument("injectivity_check: eps must be positive");
  const MeanEstimate l1 = l1_norm(g, sp, budget);
  if (!(l1.value > 0.0))
    throw std::invalid_argument("injectivity_check: zero observable (|g|_1 = 0)");

  InjectivityReport rep;
  rep.observable_l1 = l1.value;
  rep.eps = eps;
  for (double s : s_grid) {
    if (!(s > 0.0)) throw std::invalid_argument("injectivity_check: base times must be positive");
    for (double t : t_grid) {
      if (!(t >= 1.0)) throw std::invalid_argument("injectivity_check: multipliers must be >= 1");
      const MeanEstimate m = mean_norm(cz, sf, TimePair(t * s, s), g, sp, budget);
      if (m.value < rep.min_mean) {
        rep.min_mean = m.value;
        rep.min_at_t = t;
        rep.min_at_s = s;
      }
    }
  }
  rep.injective = rep.min_mean > eps * l1.value;
  return rep;
}

}  // namespace polystab
