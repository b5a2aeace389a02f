#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polystab/core.hpp"
#include "polystab/measure.hpp"
#include "polystab/spaces.hpp"

namespace polystab {

// --- Admissible time sequences ----------------------------------------------

struct SequenceSpec {
  std::string name;
  std::function<double(std::int64_t)> value;  // t_j, nondecreasing, >= 1
  SabParams sab;
};

// t_j = j^exponent.  Positive exponents only: a bounded time sequence makes
// every weighted mean vanish in the limit, so nothing can be concluded from
// its traces.
inline SequenceSpec power_sequence(double exponent) {
  if (!(exponent > 0.0) || !std::isfinite(exponent))
    throw std::invalid_argument(
        "sequence: bounded time sequences force vanishing means; growth exponent must be "
        "positive");
  SequenceSpec seq;
  seq.name = exponent == 1.0   ? "linear"
             : exponent == 2.0 ? "quadratic"
                               : "power-" + std::to_string(exponent);
  seq.value = [exponent](std::int64_t j) {
    return std::pow(static_cast<double>(j), exponent);
  };
  seq.sab = {1.0, std::max(1.0, exponent)};
  return seq;
}

inline SequenceSpec linear_sequence() { return power_sequence(1.0); }
inline SequenceSpec quadratic_sequence() { return power_sequence(2.0); }

// Cheap certification used before a sequence drives a trace.
inline void require_admissible(const SequenceSpec& seq) {
  static const std::int64_t kM[] = {2, 3, 4, 5, 8};
  static const std::int64_t kN[] = {1, 2, 4, 8, 16, 32, 64};
  const SabReport rep = check_sab(seq.value, seq.sab, kM, kN);
  if (!rep.ok)
    throw std::invalid_argument("sequence '" + seq.name +
                                "' violates its declared growth envelope (worst ratio " +
                                std::to_string(rep.worst_ratio) + ")");
}

// --- Weighted traces ---------------------------------------------------------

enum class TraceKind { stability, instability };
enum class TraceAxis { discrete, continuous };

struct TracePoint {
  double time = 0.0;         // t_j (discrete) or t (continuous), the multiplier of s
  double mean = 0.0;         // raw propagated mean at (time * s, s)
  double term = 0.0;         // weighted functional term at this point
  double partial_norm = 0.0; // norm of the trace truncated here
};

struct DatkoTrace {
  TraceKind kind = TraceKind::stability;
  TraceAxis axis = TraceAxis::discrete;
  double base_time = 1.0;  // s
  std::string observable;
  double observable_l1 = 0.0;
  double exponent_p = 1.0;
  double horizon = 0.0;
  double norm_value = 0.0;
  double norm_std_error = 0.0;
  bool converged = false;
  std::vector<TracePoint> points;
};

namespace detail {

inline double trace_value(TraceKind kind, double mean, double l1, double time, double s) {
  if (kind == TraceKind::stability) return mean;
  if (!(mean > 0.0))
    throw std::domain_error("mean vanished at (t, s) = (" + std::to_string(time * s) + ", " +
                            std::to_string(s) + "); reciprocal trace undefined");
  return l1 / mean;
}

inline double trace_sigma(TraceKind kind, const MeanEstimate& m, const MeanEstimate& l1) {
  if (kind == TraceKind::stability) return m.std_error;
  // d(l1/m) = (1/m) d l1 - (l1/m^2) d m, combined as a first-order bound.
  return l1.std_error / m.value + l1.value / (m.value * m.value) * m.std_error;
}

}  // namespace detail

// Discrete weighted trace j -> value at (t_j * s, s), measured in a weighted
// sequence space.  The reported norm is truncated at the space horizon; the
// convergence flag compares it against the doubled horizon.
inline DatkoTrace datko_trace_discrete(TraceKind kind, const Cocycle& cz, const Semiflow& sf,
                                       const ProbabilitySpace& sp, const Observable& g, double s,
                                       const SequenceSpec& seq, const WeightedSpace& space,
                                       std::size_t budget = 0) {
  space.validate();
  if (space.carrier != Carrier::sequence || space.kind != NormKind::weighted)
    throw std::invalid_argument("discrete trace: weighted sequence space required");
  if (!(s > 0.0) || !std::isfinite(s))
    throw std::invalid_argument("discrete trace: base time must be positive");
  require_admissible(seq);

  const MeanEstimate l1 = l1_norm(g, sp, budget);
  if (kind == TraceKind::instability && !(l1.value > 0.0))
    throw std::invalid_argument("instability trace: zero observable (|g|_1 = 0)");

  DatkoTrace tr;
  tr.kind = kind;
  tr.axis = TraceAxis::discrete;
  tr.base_time = s;
  tr.observable = g.name;
  tr.observable_l1 = l1.value;
  tr.exponent_p = space.p;
  tr.horizon = space.horizon;

  const auto last = static_cast<std::int64_t>(space.horizon);
  SeqNormAccum acc(space);
  double sens = 0.0;
  double at_horizon = 0.0, sens_at_horizon = 0.0, sum_at_horizon = 0.0;
  std::int64_t next_report = 1;
  double prev_t = 1.0;

  for (std::int64_t j = 1; j <= 2 * last; ++j) {
    const double tj = seq.value(j);
    if (!std::isfinite(tj) || tj < 1.0)
      throw std::invalid_argument("sequence value below 1 at index " + std::to_string(j));
    if (tj < prev_t * (1.0 - 1e-12))
      throw std::invalid_argument("decreasing sequence detected at index " + std::to_string(j));
    prev_t = tj;

    const MeanEstimate m = mean_norm(cz, sf, TimePair(tj * s, s), g, sp, budget);
    const double v = detail::trace_value(kind, m.value, l1.value, tj, s);
    acc.push(v);
    if (!m.exact)
      sens += detail::pow_p(v, space.p - 1.0) / static_cast<double>(j) *
              detail::trace_sigma(kind, m, l1);

    if (j == last) {
      at_horizon = acc.norm();
      sum_at_horizon = acc.weighted_sum();
      sens_at_horizon = sens;
    }
    if (j <= last && (j == next_report || j == last)) {
      tr.points.push_back({tj, m.value, detail::pow_p(v, space.p) / static_cast<double>(j),
                           acc.norm()});
      if (j >= next_report)
        next_report = (j < 64) ? j + 1
                               : std::max(j + 1, static_cast<std::int64_t>(
                                                     std::ceil(static_cast<double>(j) * 1.2)));
    }
  }

  tr.norm_value = at_horizon;
  tr.converged = detail::rel_close(at_horizon, acc.norm(), space.convergence_tol);
  if (sum_at_horizon > 0.0 && space.p != 1.0)
    tr.norm_std_error = std::pow(sum_at_horizon, 1.0 / space.p - 1.0) * sens_at_horizon;
  else
    tr.norm_std_error = sens_at_horizon;
  return tr;
}

// Continuous weighted trace t -> value at (t * s, s), measured in a weighted
// function space via adaptive quadrature between the reporting nodes.
inline DatkoTrace datko_trace_continuous(TraceKind kind, const Cocycle& cz, const Semiflow& sf,
                                         const ProbabilitySpace& sp, const Observable& g,
                                         double s, const WeightedSpace& space,
                                         std::span<const double> report_times = {},
                                         std::size_t budget = 0) {
  space.validate();
  if (space.carrier != Carrier::function || space.kind != NormKind::weighted)
    throw std::invalid_argument("continuous trace: weighted function space required");
  if (!(s > 0.0) || !std::isfinite(s))
    throw std::invalid_argument("continuous trace: base time must be positive");

  const MeanEstimate l1 = l1_norm(g, sp, budget);
  if (kind == TraceKind::instability && !(l1.value > 0.0))
    throw std::invalid_argument("instability trace: zero observable (|g|_1 = 0)");

  DatkoTrace tr;
  tr.kind = kind;
  tr.axis = TraceAxis::continuous;
  tr.base_time = s;
  tr.observable = g.name;
  tr.observable_l1 = l1.value;
  tr.exponent_p = space.p;
  tr.horizon = space.horizon;

  const double horizon = space.horizon;
  std::vector<double> nodes{1.0};
  for (double t : report_times)
    if (t > 1.0 && t < horizon) nodes.push_back(t);
  for (double t = 2.0; t < horizon; t *= 2.0) nodes.push_back(t);
  nodes.push_back(horizon);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  auto mean_at = [&](double t) { return mean_norm(cz, sf, TimePair(t * s, s), g, sp, budget); };
  auto value_at = [&](double t) {
    return detail::trace_value(kind, mean_at(t).value, l1.value, t, s);
  };
  auto integrand = [&](double t) { return detail::pow_p(value_at(t), space.p) / t; };

  double sum = 0.0, comp = 0.0, sigma_sens = 0.0;
  bool quad_ok = true;
  double prev_sens_density = 0.0;
  {
    const MeanEstimate m0 = mean_at(nodes.front());
    const double v0 = detail::trace_value(kind, m0.value, l1.value, nodes.front(), s);
    tr.points.push_back({nodes.front(), m0.value,
                         detail::pow_p(v0, space.p) / nodes.front(), 0.0});
    if (!m0.exact)
      prev_sens_density =
          detail::pow_p(v0, space.p - 1.0) / nodes.front() * detail::trace_sigma(kind, m0, l1);
  }
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const auto piece = integrate_adaptive(integrand, nodes[i], nodes[i + 1], 1e-10);
    detail::neumaier_add(sum, comp, piece.value);
    quad_ok = quad_ok && piece.converged;

    const double node = nodes[i + 1];
    const MeanEstimate m = mean_at(node);
    const double v = detail::trace_value(kind, m.value, l1.value, node, s);
    const double partial = detail::root_p(sum + comp, space.p);
    tr.points.push_back({node, m.value, detail::pow_p(v, space.p) / node, partial});
    if (!m.exact) {
      // Trapezoid estimate of the first-order error transport.
      const double dens =
          detail::pow_p(v, space.p - 1.0) / node * detail::trace_sigma(kind, m, l1);
      sigma_sens += 0.5 * (prev_sens_density + dens) * (node - nodes[i]);
      prev_sens_density = dens;
    }
  }
  const double sum_at_horizon = sum + comp;
  const double at_horizon = detail::root_p(sum_at_horizon, space.p);

  // Doubling probe for the convergence flag.
  const auto tail_a = integrate_adaptive(integrand, horizon, std::sqrt(2.0) * horizon, 1e-10);
  const auto tail_b =
      integrate_adaptive(integrand, std::sqrt(2.0) * horizon, 2.0 * horizon, 1e-10);
  const double doubled =
      detail::root_p(sum_at_horizon + tail_a.value + tail_b.value, space.p);
  quad_ok = quad_ok && tail_a.converged && tail_b.converged;

  tr.norm_value = at_horizon;
  tr.converged = detail::rel_close(at_horizon, doubled, space.convergence_tol) && quad_ok;
  if (sum_at_horizon > 0.0 && space.p != 1.0)
    tr.norm_std_error = std::pow(sum_at_horizon, 1.0 / space.p - 1.0) * sigma_sens;
  else
    tr.norm_std_error = sigma_sens;
  return tr;
}

inline DatkoTrace datko_discrete(const Cocycle& cz, const Semiflow& sf, const ProbabilitySpace& sp,
                                 const Observable& g, double s, const SequenceSpec& seq,
                                 const WeightedSpace& space, std::size_t budget = 0) {
  return datko_trace_discrete(TraceKind::stability, cz, sf, sp, g, s, seq, space, budget);
}

inline DatkoTrace instability_discrete(const Cocycle& cz, const Semiflow& sf,
                                       const ProbabilitySpace& sp, const Observable& g, double s,
                                       const SequenceSpec& seq, const WeightedSpace& space,
                                       std::size_t budget = 0) {
  return datko_trace_discrete(TraceKind::instability, cz, sf, sp, g, s, seq, space, budget);
}

inline DatkoTrace datko_continuous(const Cocycle& cz, const Semiflow& sf,
                                   const ProbabilitySpace& sp, const Observable& g, double s,
                                   const WeightedSpace& space,
                                   std::span<const double> report_times = {},
                                   std::size_t budget = 0) {
  return datko_trace_continuous(TraceKind::stability, cz, sf, sp, g, s, space, report_times,
                                budget);
}

inline DatkoTrace instability_continuous(const Cocycle& cz, const Semiflow& sf,
                                         const ProbabilitySpace& sp, const Observable& g,
                                         double s, const WeightedSpace& space,
                                         std::span<const double> report_times = {},
                                         std::size_t budget = 0) {
  return datko_trace_continuous(TraceKind::instability, cz, sf, sp, g, s, space, report_times,
                                budget);
}

// --- Power-law fit -----------------------------------------------------------

struct GrowthFit {
  double coefficient = 1.0;  // upper-envelope prefactor
  double exponent = 0.0;     // least-squares slope in log-log coordinates
  double residual = 0.0;     // worst relative deviation from the fitted line
};

// Log-log least squares of mean(t*s, s) / |g|_1 against the multiplier t,
// pooled over the base-time grid.  The coefficient is lifted to the largest
// intercept so the fitted envelope dominates every fitted point.
inline GrowthFit fit_growth(const Cocycle& cz, const Semiflow& sf, const ProbabilitySpace& sp,
                            const Observable& g, std::span<const double> s_grid,
                            std::span<const double> t_grid, std::size_t budget = 0) {
  if (s_grid.empty() || t_grid.empty()) throw std::invalid_argument("fit_growth: empty grid");
  const auto [lo, hi] = std::minmax_element(t_grid.begin(), t_grid.end());
  if (!(*lo >= 1.0)) throw std::invalid_argument("fit_growth: multipliers must be >= 1");
  if (!(*hi / *lo >= 100.0 * (1.0 - 1e-9)))
    throw std::invalid_argument("fit_growth: multiplier grid must span at least two decades");
  const MeanEstimate l1 = l1_norm(g, sp, budget);
  if (!(l1.value > 0.0)) throw std::invalid_argument("fit_growth: zero observable (|g|_1 = 0)");

  std::vector<double> xs, ys;
  for (double s : s_grid) {
    if (!(s > 0.0)) throw std::invalid_argument("fit_growth: base times must be positive");
    for (double t : t_grid) {
      const MeanEstimate m = mean_norm(cz, sf, TimePair(t * s, s), g, sp, budget);
      if (!(m.value > 0.0))
        throw std::domain_error("fit_growth: zero mean in log domain at (t, s) = (" +
                                std::to_string(t * s) + ", " + std::to_string(s) + ")");
      xs.push_back(std::log(t));
      ys.push_back(std::log(m.value / l1.value));
    }
  }

  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_growth: degenerate multiplier grid");

  GrowthFit fit;
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  double top = -std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    top = std::max(top, ys[i] - fit.exponent * xs[i]);
    worst = std::max(worst, std::abs(std::expm1(ys[i] - fit.exponent * xs[i] - intercept)));
  }
  fit.coefficient = std::exp(top);
  fit.residual = worst;
  return fit;
}

// --- Single-step certificates and the derived decay/growth constants ---------

struct ContractionCertificate {
  double ratio = 0.0;           // c: mean contraction (< 1) or expansion (> 1) factor
  std::int64_t multiplier = 0;  // lambda: the certified time step s -> lambda * s
  double min_base_time = 1.0;   // delta: smallest base time the scan covered
};

// Smallest candidate multiplier whose worst mean ratio over the integer base
// grid still contracts (ratio < 1).
inline std::optional<ContractionCertificate> find_contraction(
    const Cocycle& cz, const Semiflow& sf, const ProbabilitySpace& sp, const Observable& g,
    std::span<const std::int64_t> multipliers, std::span<const std::int64_t> base_grid,
    std::size_t budget = 0) {
  if (multipliers.empty() || base_grid.empty())
    throw std::invalid_argument("find_contraction: empty candidate grid");
  const MeanEstimate l1 = l1_norm(g, sp, budget);
  if (!(l1.value > 0.0))
    throw std::invalid_argument("find_contraction: zero observable (|g|_1 = 0)");

  for (std::int64_t lambda : multipliers) {
    if (lambda < 2) throw std::invalid_argument("find_contraction: multipliers must be >= 2");
    double worst = 0.0;
    for (std::int64_t m : base_grid) {
      if (m < 1) throw std::invalid_argument("find_contraction: base grid must be >= 1");
      const double base = static_cast<double>(m);
      const MeanEstimate mean =
          mean_norm(cz, sf, TimePair(static_cast<double>(lambda) * base, base), g, sp, budget);
      worst = std::max(worst, mean.value / l1.value);
    }
    if (worst < 1.0)
      return ContractionCertificate{
          worst, lambda, static_cast<double>(*std::min_element(base_grid.begin(), base_grid.end()))};
  }
  return std::nullopt;
}

// Smallest candidate multiplier whose best mean ratio over the real base grid
// still expands (ratio > 1).
inline std::optional<ContractionCertificate> find_expansion(
    const Cocycle& cz, const Semiflow& sf, const ProbabilitySpace& sp, const Observable& g,
    std::span<const std::int64_t> multipliers, std::span<const double> base_grid,
    std::size_t budget = 0) {
  if (multipliers.empty() || base_grid.empty())
    throw std::invalid_argument("find_expansion: empty candidate grid");
  const MeanEstimate l1 = l1_norm(g, sp, budget);
  if (!(l1.value > 0.0))
    throw std::invalid_argument("find_expansion: zero observable (|g|_1 = 0)");

  for (std::int64_t lambda : multipliers) {
    if (lambda < 2) throw std::invalid_argument("find_expansion: multipliers must be >= 2");
    double best = std::numeric_limits<double>::infinity();
    for (double base : base_grid) {
      if (!(base > 0.0)) throw std::invalid_argument("find_expansion: base grid must be positive");
      const MeanEstimate mean =
          mean_norm(cz, sf, TimePair(static_cast<double>(lambda) * base, base), g, sp, budget);
      best = std::min(best, mean.value / l1.value);
    }
    if (best > 1.0)
      return ContractionCertificate{
          best, lambda, *std::min_element(base_grid.begin(), base_grid.end())};
  }
  return std::nullopt;
}

struct LemmaConstants {
  double decay_exponent = 0.0;          // alpha
  double bound_constant = 0.0;          // K
  std::optional<double> step_constant;  // K1, decay case only
  double onset = 1.0;                   // gamma: times the bound is claimed from
};

// Decay constants induced by a single-step mean contraction under a growth
// envelope: alpha = -ln(c)/ln(lambda), K1 = M lambda^w / c, and
// K = max(M, K1 M) * (1 + 1/floor(gamma))^(w + alpha) with
// gamma = max(delta, onset + 1).
inline LemmaConstants lemma_constants_stable(const GrowthBound& gb,
                                             const ContractionCertificate& cert) {
  gb.validate();
  if (!(cert.ratio > 0.0) || !(cert.ratio < 1.0))
    throw std::invalid_argument("lemma_constants_stable: contraction ratio must lie in (0, 1)");
  if (cert.multiplier < 2)
    throw std::invalid_argument("lemma_constants_stable: multiplier must be >= 2");

  LemmaConstants lc;
  lc.onset = std::max(cert.min_base_time, gb.onset + 1.0);
  const double log_lambda = std::log(static_cast<double>(cert.multiplier));
  lc.decay_exponent = -std::log(cert.ratio) / log_lambda;
  const double step = gb.scale * std::pow(static_cast<double>(cert.multiplier), gb.exponent) /
                      cert.ratio;
  lc.step_constant = step;
  const double shell =
      gb.scale * std::pow(1.0 + 1.0 / std::floor(lc.onset), gb.exponent + lc.decay_exponent);
  lc.bound_constant = std::max(shell, step * shell);
  return lc;
}

// Growth constants induced by a single-step mean expansion:
// alpha = ln(c)/ln(lambda) and K = lambda^(-w) / M.
inline LemmaConstants lemma_constants_unstable(const GrowthBound& gb,
                                               const ContractionCertificate& cert) {
  gb.validate();
  if (!(cert.ratio > 1.0))
    throw std::invalid_argument("lemma_constants_unstable: expansion ratio must exceed 1");
  if (cert.multiplier < 2)
    throw std::invalid_argument("lemma_constants_unstable: multiplier must be >= 2");

  LemmaConstants lc;
  lc.onset = std::max(cert.min_base_time, gb.onset);
  lc.decay_exponent = std::log(cert.ratio) / std::log(static_cast<double>(cert.multiplier));
  lc.bound_constant = std::pow(static_cast<double>(cert.multiplier), -gb.exponent) / gb.scale;
  lc.step_constant = std::nullopt;
  return lc;
}

struct BoundCheck {
  std::size_t checks = 0;
  std::size_t violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();  // bound/actual, >= 1 is good
  double worst_hi = 0.0, worst_lo = 0.0;
};

// Verifies mean(r, s) <= K (r/s)^(-alpha) |g|_1 over (r, s) pairs with
// r >= s >= onset.
inline BoundCheck check_stable_bound(const Cocycle& cz, const Semiflow& sf,
                                     const ProbabilitySpace& sp, const Observable& g,
                                     const LemmaConstants& lc,
                                     std::span<const std::pair<double, double>> pairs,
                                     std::size_t budget = 0) {
  const MeanEstimate l1 = l1_norm(g, sp, budget);
  BoundCheck out;
  for (const auto& [r, s] : pairs) {
    if (!(r >= s) || !(s >= lc.onset))
      throw std::invalid_argument("check_stable_bound: pair outside r >= s >= onset");
    const double bound =
        lc.bound_constant * std::pow(r / s, -lc.decay_exponent) * l1.value;
    const double actual = mean_norm(cz, sf, TimePair(r, s), g, sp, budget).value;
    ++out.checks;
    const double margin = actual > 0.0 ? bound / actual
                                       : std::numeric_limits<double>::infinity();
    if (margin < out.worst_margin) {
      out.worst_margin = margin;
      out.worst_hi = r;
      out.worst_lo = s;
    }
    if (actual > bound * (1.0 + 1e-12)) ++out.violations;
  }
  return out;
}

// Verifies mean(t * s, s) >= K t^alpha |g|_1 over (t, s) pairs with t >= 1
// and s >= onset.
inline BoundCheck check_unstable_bound(const Cocycle& cz, const Semiflow& sf,
                                       const ProbabilitySpace& sp, const Observable& g,
                                       const LemmaConstants& lc,
                                       std::span<const std::pair<double, double>> pairs,
                                       std::size_t budget = 0) {
  const MeanEstimate l1 = l1_norm(g, sp, budget);
  BoundCheck out;
  for (const auto& [t, s] : pairs) {
    if (!(t >= 1.0) || !(s >= lc.onset))
      throw std::invalid_argument("check_unstable_bound: pair outside t >= 1, s >= onset");
    const double bound = lc.bound_constant * std::pow(t, lc.decay_exponent) * l1.value;
    const double actual = mean_norm(cz, sf, TimePair(t * s, s), g, sp, budget).value;
    ++out.checks;
    const double margin = bound > 0.0 ? actual / bound
                                      : std::numeric_limits<double>::infinity();
    if (margin < out.worst_margin) {
      out.worst_margin = margin;
      out.worst_hi = t;
      out.worst_lo = s;
    }
    if (actual < bound * (1.0 - 1e-12)) ++out.violations;
  }
  return out;
}

// Deterministic (r, s) pairs with r >= s, both geometric in their windows.
inline std::vector<std::pair<double, double>> make_decay_pairs(std::uint64_t seed,
                                                              std::size_t count, double s_min,
                                                              double s_max, double max_ratio) {
  if (count == 0 || !(s_min > 0.0) || !(s_max >= s_min) || !(max_ratio >= 1.0))
    throw std::invalid_argument("make_decay_pairs: bad window");
  KroneckerSequence<2> seq(seed);
  std::vector<std::pair<double, double>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto u = seq.point(i);
    const double s = s_min * std::pow(s_max / s_min, u[0]);
    const double ratio = std::pow(max_ratio, u[1]);
    out.push_back({s * ratio, s});
  }
  return out;
}

// Deterministic (t, s) pairs with t >= 1 (multiplier) and s in its window.
inline std::vector<std::pair<double, double>> make_expansion_pairs(std::uint64_t seed,
                                                                  std::size_t count,
                                                                  double s_min, double s_max,
                                                                  double max_multiplier) {
  if (count == 0 || !(s_min > 0.0) || !(s_max >= s_min) || !(max_multiplier >= 1.0))
    throw std::invalid_argument("make_expansion_pairs: bad window");
  KroneckerSequence<2> seq(seed);
  std::vector<std::pair<double, double>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto u = seq.point(i);
    const double s = s_min * std::pow(s_max / s_min, u[0]);
    out.push_back({std::pow(max_multiplier, u[1]), s});
  }
  return out;
}

// --- Classification ----------------------------------------------------------

enum class StabilityOutcome { stable_in_mean, unstable_in_mean, inconclusive };

inline const char* to_string(StabilityOutcome o) {
  switch (o) {
    case StabilityOutcome::stable_in_mean: return "StableInMean";
    case StabilityOutcome::unstable_in_mean: return "UnstableInMean";
    default: return "Inconclusive";
  }
}

struct TraceSummary {
  TraceAxis axis = TraceAxis::discrete;
  TraceKind kind = TraceKind::stability;
  double base_time = 1.0;
  std::string observable;
  double norm_over_l1 = 0.0;
  bool converged = false;
};

struct Verdict {
  StabilityOutcome outcome = StabilityOutcome::inconclusive;
  double stability_sup = 0.0;       // sup over traces of norm / |g|_1
  double stability_sup_at = 0.0;    // base time attaining the sup
  bool stability_converged = false;
  bool instability_ran = false;
  double instability_sup = 0.0;
  double instability_sup_at = 0.0;
  bool instability_converged = false;
  std::optional<InjectivityReport> injectivity;
  std::optional<ContractionCertificate> contraction;
  std::optional<ContractionCertificate> expansion;
  std::optional<GrowthFit> fit;
  std::vector<TraceSummary> traces;
  std::string note;
};

inline std::vector<double> default_s_grid() {
  std::vector<double> g;
  for (double s = 1.0; s <= 128.0; s *= 2.0) g.push_back(s);
  return g;
}

inline std::vector<double> geometric_grid(double lo, double hi, std::size_t points) {
  if (points < 2 || !(lo > 0.0) || !(hi > lo))
    throw std::invalid_argument("geometric_grid: bad window");
  std::vector<double> g;
  g.reserve(points);
  for (std::size_t i = 0; i < points; ++i)
    g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
  return g;
}

inline std::vector<double> default_t_grid() { return geometric_grid(1.0, 1000.0, 25); }
inline std::vector<double> default_fit_grid() { return geometric_grid(10.0, 1000.0, 21); }

struct ClassifyOptions {
  std::vector<double> s_grid = default_s_grid();
  SequenceSpec sequence = linear_sequence();
  double exponent_p = 1.0;
  double discrete_horizon = 1e5;
  double continuous_horizon = 4e6;
  double convergence_tol = 1e-4;
  bool run_continuous = true;
  double injectivity_eps = 1e-6;
  std::vector<double> t_grid = default_t_grid();
  std::vector<double> fit_t_grid = default_fit_grid();
  std::vector<std::int64_t> certificate_multipliers = {2, 3, 4};
  std::int64_t certificate_base_max = 64;
  std::size_t budget = 0;
};

// Numerical trichotomy: converging stability traces with a uniform bound over
// the base-time grid mean stable; otherwise injective means with converging
// reciprocal traces mean unstable; anything else is inconclusive.  Verdicts
// are numerical evidence, not proofs.
inline Verdict classify(const Cocycle& cz, const Semiflow& sf, const ProbabilitySpace& sp,
                        std::span<const Observable> g_set, const ClassifyOptions& opt) {
  if (g_set.empty()) throw std::invalid_argument("classify: empty observable set");
  if (opt.s_grid.empty()) throw std::invalid_argument("classify: empty s_grid");
  for (const Observable& g : g_set)
    if (!(l1_norm(g, sp, opt.budget).value > 0.0))
      throw std::invalid_argument("classify: zero observable '" + g.name + "'");
  require_admissible(opt.sequence);

  const WeightedSpace seq_space =
      WeightedSpace::sequence_lp(opt.exponent_p, opt.discrete_horizon, opt.convergence_tol);
  const WeightedSpace fn_space =
      WeightedSpace::function_lp(opt.exponent_p, opt.continuous_horizon, opt.convergence_tol);

  Verdict v;
  try {
    v.fit = fit_growth(cz, sf, sp, g_set.front(), opt.s_grid, opt.fit_t_grid, opt.budget);
  } catch (const std::domain_error&) {
    v.note = "growth fit skipped: vanishing means in the log domain; ";
  }

  auto scan = [&](TraceKind kind, double& sup, double& sup_at, bool& all_converged) {
    sup = 0.0;
    sup_at = opt.s_grid.front();
    all_converged = true;
    for (const Observable& g : g_set) {
      for (double s : opt.s_grid) {
        auto absorb = [&](const DatkoTrace& tr) {
          const double scaled = tr.norm_value / tr.observable_l1;
          v.traces.push_back({tr.axis, kind, s, g.name, scaled, tr.converged});
          all_converged = all_converged && tr.converged;
          if (scaled > sup) {
            sup = scaled;
            sup_at = s;
          }
        };
        absorb(datko_trace_discrete(kind, cz, sf, sp, g, s, opt.sequence, seq_space, opt.budget));
        if (opt.run_continuous)
          absorb(datko_trace_continuous(kind, cz, sf, sp, g, s, fn_space, opt.t_grid, opt.budget));
      }
    }
  };

  scan(TraceKind::stability, v.stability_sup, v.stability_sup_at, v.stability_converged);
  if (v.stability_converged) {
    v.outcome = StabilityOutcome::stable_in_mean;
    v.note += "all stability traces settled under horizon doubling";
    std::vector<std::int64_t> bases;
    for (std::int64_t m = 1; m <= opt.certificate_base_max; ++m) bases.push_back(m);
    v.contraction = find_contraction(cz, sf, sp, g_set.front(), opt.certificate_multipliers,
                                     bases, opt.budget);
    return v;
  }

  bool injective = true;
  for (const Observable& g : g_set) {
    const InjectivityReport rep = injectivity_check(cz, sf, sp, g, opt.s_grid, opt.t_grid,
                                                    opt.injectivity_eps, opt.budget);
    if (!v.injectivity || rep.min_mean < v.injectivity->min_mean) v.injectivity = rep;
    injective = injective && rep.injective;
  }
  if (injective) {
    scan(TraceKind::instability, v.instability_sup, v.instability_sup_at,
         v.instability_converged);
    v.instability_ran = true;
    if (v.instability_converged) {
      v.outcome = StabilityOutcome::unstable_in_mean;
      v.note += "reciprocal traces settled and means stay bounded away from zero";
      v.expansion = find_expansion(cz, sf, sp, g_set.front(), opt.certificate_multipliers,
                                   opt.s_grid, opt.budget);
      return v;
    }
    v.note += "both direct and reciprocal traces kept growing under horizon doubling";
    return v;
  }
  v.note += "stability traces diverged and means approach zero (not injective at eps)";
  return v;
}

}  // namespace polystab
