#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "polystab/rng.hpp"

namespace polystab {

using State = std::vector<double>;

inline double euclidean_norm(const State& x) {
  double sq = 0.0;
  for (double v : x) sq += v * v;
  return std::sqrt(sq);
}

// Ordered time pair t >= s >= 0; construction validates so every consumer
// can rely on the ordering.
class TimePair {
 public:
  TimePair(double t, double s) : t_(t), s_(s) {
    if (!std::isfinite(t) || !std::isfinite(s))
      throw std::invalid_argument("time pair: times must be finite");
    if (s < 0.0) throw std::invalid_argument("time pair: base time below zero");
    if (t < s) throw std::invalid_argument("time pair: time-order violation (t < s)");
  }
  double t() const { return t_; }
  double s() const { return s_; }

 private:
  double t_, s_;
};

// Chain t >= r >= s used by the composition-law grids.
struct TimeTriple {
  double t, r, s;
};

// Point of the underlying probability carrier: an atom id for discrete
// carriers plus a parameter block (a tabulated path, or sampler output).
struct SamplePoint {
  std::int64_t atom = 0;
  std::vector<double> params;
};

inline double sample_distance(const SamplePoint& a, const SamplePoint& b) {
  if (a.params.size() != b.params.size())
    throw std::invalid_argument("sample_distance: parameter blocks differ in size");
  double sq = 0.0;
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    const double d = a.params[i] - b.params[i];
    sq += d * d;
  }
  return (a.atom == b.atom ? 0.0 : 1.0) + std::sqrt(sq);
}

// Two-parameter flow on the carrier.
struct Semiflow {
  std::string name;
  std::function<SamplePoint(const TimePair&, const SamplePoint&)> evolve;
};

// Claimed envelope |Phi(t,s,y)x| <= scale * (t/s)^exponent * |x| for
// t >= s >= onset; exponent is signed, negative means decay.
struct GrowthBound {
  double scale = 1.0;
  double exponent = 0.0;
  double onset = 1.0;

  void validate() const {
    if (!(scale > 0.0) || !std::isfinite(scale))
      throw std::invalid_argument("growth bound: scale must be positive");
    if (!std::isfinite(exponent)) throw std::invalid_argument("growth bound: exponent not finite");
    if (!(onset > 0.0) || !std::isfinite(onset))
      throw std::invalid_argument("growth bound: onset must be positive");
  }
};

// Linear operator family over the flow; apply(tp, v, x) realizes the operator
// at (t, s) along the fiber v acting on the state x.
struct Cocycle {
  std::string name;
  int dim = 1;
  std::function<State(const TimePair&, const SamplePoint&, const State&)> apply;
  std::optional<GrowthBound> growth;
};

inline SamplePoint evolve_state(const Semiflow& sf, const TimePair& tp, const SamplePoint& v) {
  return sf.evolve(tp, v);
}

inline State apply_cocycle(const Cocycle& cz, const Semiflow& /*sf*/, const TimePair& tp,
                           const SamplePoint& v, const State& x) {
  if (static_cast<int>(x.size()) != cz.dim)
    throw std::invalid_argument("apply_cocycle: state dimension mismatch");
  return cz.apply(tp, v, x);
}

struct LawReport {
  double max_residual = 0.0;
  std::size_t checks = 0;
  double tol = 0.0;
  bool passed = true;
  struct Worst {
    double t = 0.0, r = 0.0, s = 0.0;
    std::int64_t atom = -1;
  } worst;
};

// Low-discrepancy chains t >= r >= s in [floor_time, floor_time + span],
// deterministic in the seed.
inline std::vector<TimeTriple> make_time_triples(std::uint64_t seed, std::size_t count,
                                                 double floor_time, double span) {
  if (count == 0) throw std::invalid_argument("make_time_triples: count must be positive");
  if (!(span > 0.0) || !(floor_time >= 0.0))
    throw std::invalid_argument("make_time_triples: bad time window");
  KroneckerSequence<3> seq(seed);
  std::vector<TimeTriple> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto u = seq.point(i);
    std::sort(u.begin(), u.end());
    out.push_back({floor_time + span * u[2], floor_time + span * u[1], floor_time + span * u[0]});
  }
  return out;
}

namespace detail {

inline void law_update(LawReport& rep, double residual, const TimeTriple& tr,
                       std::int64_t atom) {
  ++rep.checks;
  if (residual > rep.max_residual) {
    rep.max_residual = residual;
    rep.worst = {tr.t, tr.r, tr.s, atom};
  }
}

}  // namespace detail

// Identity and composition laws of the flow over a grid of time chains and
// carrier points; the residual is the carrier distance between the two sides.
inline LawReport check_semiflow_laws(const Semiflow& sf, std::span<const TimeTriple> triples,
                                     std::span<const SamplePoint> samples, double tol) {
  if (triples.empty() || samples.empty())
    throw std::invalid_argument("check_semiflow_laws: empty grid");
  LawReport rep;
  rep.tol = tol;
  for (const auto& tr : triples) {
    for (const auto& v : samples) {
      const SamplePoint direct = sf.evolve(TimePair(tr.t, tr.s), v);
      const SamplePoint mid = sf.evolve(TimePair(tr.r, tr.s), v);
      const SamplePoint chained = sf.evolve(TimePair(tr.t, tr.r), mid);
      double residual = sample_distance(direct, chained);
      residual = std::max(residual, sample_distance(sf.evolve(TimePair(tr.s, tr.s), v), v));
      detail::law_update(rep, residual, tr, v.atom);
    }
  }
  rep.passed = rep.max_residual <= tol;
  return rep;
}

// Identity and composition laws of the operator family, with the composition
// chained along the flow; residuals are normalized by the probe size.
inline LawReport check_cocycle_laws(const Cocycle& cz, const Semiflow& sf,
                                    std::span<const TimeTriple> triples,
                                    std::span<const SamplePoint> samples,
                                    std::span<const State> probes, double tol) {
  if (triples.empty() || samples.empty() || probes.empty())
    throw std::invalid_argument("check_cocycle_laws: empty grid");
  for (const auto& x : probes)
    if (euclidean_norm(x) == 0.0)
      throw std::invalid_argument("check_cocycle_laws: zero probe vector");

  LawReport rep;
  rep.tol = tol;
  for (const auto& tr : triples) {
    for (const auto& v : samples) {
      for (const auto& x : probes) {
        const double scale = euclidean_norm(x);
        const State direct = cz.apply(TimePair(tr.t, tr.s), v, x);
        const State first = cz.apply(TimePair(tr.r, tr.s), v, x);
        const SamplePoint moved = sf.evolve(TimePair(tr.r, tr.s), v);
        const State chained = cz.apply(TimePair(tr.t, tr.r), moved, first);
        double sq = 0.0;
        for (std::size_t i = 0; i < direct.size(); ++i) {
          const double d = direct[i] - chained[i];
          sq += d * d;
        }
        double residual = std::sqrt(sq) / scale;
        const State at_start = cz.apply(TimePair(tr.s, tr.s), v, x);
        double idsq = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
          const double d = at_start[i] - x[i];
          idsq += d * d;
        }
        residual = std::max(residual, std::sqrt(idsq) / scale);
        detail::law_update(rep, residual, tr, v.atom);
      }
    }
  }
  rep.passed = rep.max_residual <= tol;
  return rep;
}

// Grid verification of an attached growth envelope; the residual is the
// factor by which |Phi x| exceeds the claimed envelope (0 when satisfied).
inline LawReport check_growth_bound(const Cocycle& cz, const GrowthBound& gb,
                                    std::span<const TimeTriple> triples,
                                    std::span<const SamplePoint> samples,
                                    std::span<const State> probes, double tol) {
  gb.validate();
  if (triples.empty() || samples.empty() || probes.empty())
    throw std::invalid_argument("check_growth_bound: empty grid");
  LawReport rep;
  rep.tol = tol;
  for (const auto& tr : triples) {
    const double pairs[3][2] = {{tr.t, tr.s}, {tr.t, tr.r}, {tr.r, tr.s}};
    for (const auto& pr : pairs) {
      const double t = std::max(pr[0], gb.onset);
      const double s = std::max(pr[1], gb.onset);
      if (t < s) continue;
      const double envelope = gb.scale * std::pow(t / s, gb.exponent);
      for (const auto& v : samples) {
        for (const auto& x : probes) {
          const double grown = euclidean_norm(cz.apply(TimePair(t, s), v, x));
          const double excess = grown / (envelope * euclidean_norm(x)) - 1.0;
          detail::law_update(rep, std::max(0.0, excess), tr, v.atom);
        }
      }
    }
  }
  rep.passed = rep.max_residual <= tol;
  return rep;
}

}  // namespace polystab
