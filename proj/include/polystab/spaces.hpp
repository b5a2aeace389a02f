#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "polystab/quadrature.hpp"
#include "polystab/rng.hpp"

namespace polystab {

enum class Carrier { sequence, function };
enum class NormKind { weighted, uniform_sup };

// Weighted p-norm over a half-line carrier: sequences j >= 1 carry weight 1/j,
// functions t >= 1 carry weight 1/t.  kind == uniform_sup is the unweighted
// supremum norm, kept only as a control that the admission test must reject.
struct WeightedSpace {
  Carrier carrier = Carrier::sequence;
  NormKind kind = NormKind::weighted;
  double p = 1.0;
  double horizon = 1e5;
  double convergence_tol = 1e-4;

  static WeightedSpace sequence_lp(double p, double horizon = 1e5, double tol = 1e-4) {
    return {Carrier::sequence, NormKind::weighted, p, horizon, tol};
  }
  static WeightedSpace function_lp(double p, double horizon = 4e6, double tol = 1e-4) {
    return {Carrier::function, NormKind::weighted, p, horizon, tol};
  }
  static WeightedSpace sequence_sup(double horizon = 1e5) {
    return {Carrier::sequence, NormKind::uniform_sup, 1.0, horizon, 1e-4};
  }
  static WeightedSpace function_sup(double horizon = 4e6) {
    return {Carrier::function, NormKind::uniform_sup, 1.0, horizon, 1e-4};
  }

  void validate() const {
    if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("space: p must be positive");
    if (!(horizon >= 2.0) || !std::isfinite(horizon))
      throw std::invalid_argument("space: horizon must be finite and >= 2");
    if (!(convergence_tol > 0.0))
      throw std::invalid_argument("space: convergence_tol must be positive");
  }
};

// Nonnegative element of a sequence space; index domain is j >= 1.
// support_end < 0 means the support is unknown (treated as unbounded).
struct SeqElement {
  std::function<double(std::int64_t)> at;
  std::int64_t support_end = -1;
};

// Nonnegative element of a function space on t >= 1; breakpoints list the
// discontinuity locations so quadrature never straddles a jump.
struct FnElement {
  std::function<double(double)> at;
  std::vector<double> breakpoints;
  double support_end = -1.0;
};

struct NormValue {
  double value = 0.0;
  bool converged = false;
};

inline SeqElement seq_from_values(std::vector<double> values) {
  auto data = std::make_shared<std::vector<double>>(std::move(values));
  SeqElement e;
  e.support_end = static_cast<std::int64_t>(data->size());
  e.at = [data](std::int64_t j) -> double {
    return (j >= 1 && j <= static_cast<std::int64_t>(data->size())) ? (*data)[j - 1] : 0.0;
  };
  return e;
}

// Characteristic of the integer segment {lo, ..., hi}.
inline SeqElement seq_char_segment(std::int64_t lo, std::int64_t hi) {
  if (lo < 1 || hi < lo) throw std::invalid_argument("seq_char_segment: need 1 <= lo <= hi");
  SeqElement e;
  e.support_end = hi;
  e.at = [lo, hi](std::int64_t j) -> double { return (j >= lo && j <= hi) ? 1.0 : 0.0; };
  return e;
}

// Characteristic of the half-open interval [lo, hi).
inline FnElement fn_char_interval(double lo, double hi) {
  if (!(lo >= 1.0) || !(hi > lo)) throw std::invalid_argument("fn_char_interval: need 1 <= lo < hi");
  FnElement e;
  e.breakpoints = {lo, hi};
  e.support_end = hi;
  e.at = [lo, hi](double t) -> double { return (t >= lo && t < hi) ? 1.0 : 0.0; };
  return e;
}

namespace detail {

inline void neumaier_add(double& sum, double& comp, double term) {
  const double t = sum + term;
  comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
  sum = t;
}

inline double pow_p(double v, double p) {
  if (p == 1.0) return v;
  if (p == 2.0) return v * v;
  return std::pow(v, p);
}

inline double root_p(double v, double p) { return p == 1.0 ? v : std::pow(v, 1.0 / p); }

inline bool rel_close(double a, double b, double tol) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) <= tol * scale;
}

}  // namespace detail

// Streaming accumulator for the weighted sequence norm; feed j = 1, 2, ... in
// order via push().  Rejects negative values, which have no meaning for the
// nonnegative elements these norms are defined on.
class SeqNormAccum {
 public:
  explicit SeqNormAccum(const WeightedSpace& sp) : p_(sp.p) {
    if (sp.carrier != Carrier::sequence || sp.kind != NormKind::weighted)
      throw std::invalid_argument("SeqNormAccum: weighted sequence space required");
  }

  void push(double v) {
    ++j_;
    if (!(v >= 0.0))
      throw std::domain_error("sequence element negative or NaN at index " + std::to_string(j_));
    detail::neumaier_add(sum_, comp_, detail::pow_p(v, p_) / static_cast<double>(j_));
  }

  std::int64_t count() const { return j_; }
  double weighted_sum() const { return sum_ + comp_; }
  double norm() const { return detail::root_p(weighted_sum(), p_); }

 private:
  double p_;
  std::int64_t j_ = 0;
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Segment-fed integrator for the weighted function norm.  Each add_segment
// call integrates |f|^p / t adaptively over [a, b), splitting at the supplied
// breakpoints; segments must be fed left to right.
class FnNormIntegrator {
 public:
  explicit FnNormIntegrator(const WeightedSpace& sp, double quad_abs_tol = 1e-10)
      : p_(sp.p), tol_(quad_abs_tol) {
    if (sp.carrier != Carrier::function || sp.kind != NormKind::weighted)
      throw std::invalid_argument("FnNormIntegrator: weighted function space required");
  }

  void add_segment(const std::function<double(double)>& f, double a, double b,
                   std::span<const double> breakpoints = {}) {
    if (!(b >= a)) throw std::invalid_argument("FnNormIntegrator: segment reversed");
    auto integrand = [this, &f](double t) {
      const double v = f(t);
      if (!(v >= 0.0))
        throw std::domain_error("function element negative or NaN at t = " + std::to_string(t));
      return detail::pow_p(v, p_) / t;
    };
    auto piece = integrate_piecewise(integrand, a, b, breakpoints, tol_);
    detail::neumaier_add(sum_, comp_, piece.value);
    evals_ += piece.evaluations;
    ok_ = ok_ && piece.converged;
  }

  double weighted_sum() const { return sum_ + comp_; }
  double norm() const { return detail::root_p(weighted_sum(), p_); }
  bool quadrature_ok() const { return ok_; }
  std::size_t evaluations() const { return evals_; }

 private:
  double p_;
  double tol_;
  double sum_ = 0.0;
  double comp_ = 0.0;
  std::size_t evals_ = 0;
  bool ok_ = true;
};

namespace detail {

inline NormValue seq_norm_eval(const WeightedSpace& sp, const SeqElement& elem) {
  const auto horizon = static_cast<std::int64_t>(sp.horizon);
  if (sp.kind == NormKind::uniform_sup) {
    const std::int64_t end =
        (elem.support_end >= 0) ? std::min(elem.support_end, 2 * horizon) : 2 * horizon;
    double sup = 0.0, at_horizon = 0.0;
    for (std::int64_t j = 1; j <= end; ++j) {
      const double v = elem.at(j);
      if (!(v >= 0.0))
        throw std::domain_error("sequence element negative or NaN at index " + std::to_string(j));
      sup = std::max(sup, v);
      if (j == horizon) at_horizon = sup;
    }
    if (end <= horizon) return {sup, true};
    return {at_horizon, detail::rel_close(at_horizon, sup, sp.convergence_tol)};
  }

  SeqNormAccum acc(sp);
  const bool finite_support = elem.support_end >= 0 && elem.support_end <= horizon;
  const std::int64_t end = finite_support ? elem.support_end : 2 * horizon;
  double at_horizon = 0.0;
  for (std::int64_t j = 1; j <= end; ++j) {
    acc.push(elem.at(j));
    if (j == horizon) at_horizon = acc.norm();
  }
  if (finite_support) return {acc.norm(), true};
  return {at_horizon, detail::rel_close(at_horizon, acc.norm(), sp.convergence_tol)};
}

inline NormValue fn_norm_eval(const WeightedSpace& sp, const FnElement& elem) {
  const double horizon = sp.horizon;
  if (sp.kind == NormKind::uniform_sup) {
    const double end = (elem.support_end >= 0.0) ? std::min(elem.support_end, 2.0 * horizon)
                                                 : 2.0 * horizon;
    std::vector<double> cuts{1.0, end};
    for (double c : elem.breakpoints)
      if (c > 1.0 && c < end) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    double sup = 0.0, at_horizon = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      for (int k = 0; k <= 64; ++k) {
        const double t = cuts[i] + (cuts[i + 1] - cuts[i]) * (k / 64.0);
        const double v = elem.at(std::min(t, std::nexttoward(cuts[i + 1], cuts[i])));
        if (!(v >= 0.0)) throw std::domain_error("function element negative or NaN");
        sup = std::max(sup, v);
        if (t <= horizon) at_horizon = std::max(at_horizon, v);
      }
    }
    if (end <= horizon) return {sup, true};
    return {at_horizon, detail::rel_close(at_horizon, sup, sp.convergence_tol)};
  }

  const bool finite_support = elem.support_end >= 0.0 && elem.support_end <= horizon;
  const double end = finite_support ? elem.support_end : horizon;
  FnNormIntegrator acc(sp);
  if (end > 1.0) acc.add_segment(elem.at, 1.0, end, elem.breakpoints);
  if (finite_support) return {acc.norm(), acc.quadrature_ok()};

  const double at_horizon = acc.norm();
  acc.add_segment(elem.at, horizon, 2.0 * horizon, elem.breakpoints);
  const bool settled = detail::rel_close(at_horizon, acc.norm(), sp.convergence_tol);
  return {at_horizon, settled && acc.quadrature_ok()};
}

}  // namespace detail

// Truncated norm at the declared horizon.  The convergence flag reports
// whether doubling the horizon moves the value by less than convergence_tol
// (relatively); elements with declared support inside the horizon are exact.
inline NormValue norm_eval(const WeightedSpace& sp, const SeqElement& elem) {
  sp.validate();
  if (sp.carrier != Carrier::sequence)
    throw std::invalid_argument("norm_eval: sequence element fed to a function-carrier space");
  return detail::seq_norm_eval(sp, elem);
}

inline NormValue norm_eval(const WeightedSpace& sp, const FnElement& elem) {
  sp.validate();
  if (sp.carrier != Carrier::function)
    throw std::invalid_argument("norm_eval: function element fed to a sequence-carrier space");
  return detail::fn_norm_eval(sp, elem);
}

// --- Banach function-norm axioms -------------------------------------------

struct NormAxiomReport {
  bool definiteness = true;
  bool monotonicity = true;
  bool triangle = true;
  bool homogeneity = true;
  bool triangle_checked = true;  // false for 0 < p < 1 (quasi-norm regime)
  double worst_violation = 0.0;

  bool all_pass() const {
    return definiteness && monotonicity && (!triangle_checked || triangle) && homogeneity;
  }
};

namespace detail {

inline SeqElement seq_add(const SeqElement& g, const SeqElement& h) {
  SeqElement e;
  e.support_end = (g.support_end < 0 || h.support_end < 0)
                      ? -1
                      : std::max(g.support_end, h.support_end);
  e.at = [ga = g.at, ha = h.at](std::int64_t j) { return ga(j) + ha(j); };
  return e;
}

inline SeqElement seq_scale(const SeqElement& g, double factor) {
  SeqElement e;
  e.support_end = factor == 0.0 ? 0 : g.support_end;
  e.at = [ga = g.at, factor](std::int64_t j) { return factor * ga(j); };
  return e;
}

inline FnElement fn_add(const FnElement& g, const FnElement& h) {
  FnElement e;
  e.support_end = (g.support_end < 0 || h.support_end < 0)
                      ? -1.0
                      : std::max(g.support_end, h.support_end);
  e.breakpoints = g.breakpoints;
  e.breakpoints.insert(e.breakpoints.end(), h.breakpoints.begin(), h.breakpoints.end());
  e.at = [ga = g.at, ha = h.at](double t) { return ga(t) + ha(t); };
  return e;
}

inline FnElement fn_scale(const FnElement& g, double factor) {
  FnElement e;
  e.support_end = factor == 0.0 ? 1.0 : g.support_end;
  e.breakpoints = g.breakpoints;
  e.at = [ga = g.at, factor](double t) { return factor * ga(t); };
  return e;
}

template <class Elem, class Add, class Scale, class Zero>
NormAxiomReport axiom_scan(const WeightedSpace& sp, std::span<const std::pair<Elem, Elem>> probes,
                           std::span<const double> scalars, double tol, Add add, Scale scale,
                           Zero zero) {
  NormAxiomReport rep;
  rep.triangle_checked = sp.kind == NormKind::uniform_sup || sp.p >= 1.0;
  auto note = [&rep](bool& flag, double excess) {
    if (excess > 0.0) {
      flag = false;
      rep.worst_violation = std::max(rep.worst_violation, excess);
    }
  };

  if (norm_eval(sp, zero()).value != 0.0) rep.definiteness = false;

  for (const auto& [g, h] : probes) {
    const double ng = norm_eval(sp, g).value;
    const double nh = norm_eval(sp, h).value;
    if (!(ng > 0.0)) rep.definiteness = false;

    // |g| <= |g + h| pointwise, so the norm must not decrease.
    const auto gh = add(g, h);
    const double ngh = norm_eval(sp, gh).value;
    note(rep.monotonicity, (ng - ngh) / std::max(ngh, 1e-300) - tol);

    if (rep.triangle_checked) note(rep.triangle, (ngh - (ng + nh)) / std::max(ng + nh, 1e-300) - tol);

    for (double z : scalars) {
      // These norms depend on the element only through its absolute value,
      // so scaling by |z| realizes scaling by z.
      const double nz = norm_eval(sp, scale(g, std::abs(z))).value;
      note(rep.homogeneity, std::abs(nz - std::abs(z) * ng) / std::max(std::abs(z) * ng, 1e-300) -
                                (z == 0.0 ? 0.0 : tol));
      if (z == 0.0 && nz != 0.0) rep.homogeneity = false;
    }
  }
  return rep;
}

}  // namespace detail

inline NormAxiomReport check_norm_axioms(const WeightedSpace& sp,
                                         std::span<const std::pair<SeqElement, SeqElement>> probes,
                                         std::span<const double> scalars, double tol = 1e-9) {
  if (sp.carrier != Carrier::sequence)
    throw std::invalid_argument("check_norm_axioms: sequence probes on a function-carrier space");
  return detail::axiom_scan<SeqElement>(
      sp, probes, scalars, tol, detail::seq_add, detail::seq_scale,
      [] { return seq_from_values({0.0}); });
}

inline NormAxiomReport check_norm_axioms(const WeightedSpace& sp,
                                         std::span<const std::pair<FnElement, FnElement>> probes,
                                         std::span<const double> scalars, double tol = 1e-9) {
  if (sp.carrier != Carrier::function)
    throw std::invalid_argument("check_norm_axioms: function probes on a sequence-carrier space");
  return detail::axiom_scan<FnElement>(
      sp, probes, scalars, tol, detail::fn_add, detail::fn_scale,
      [] { return detail::fn_scale(fn_char_interval(1.0, 2.0), 0.0); });
}

// Seeded nonzero probe pairs with finite support, for the axiom checks.
inline std::vector<std::pair<SeqElement, SeqElement>> random_seq_probe_pairs(
    std::uint64_t seed, std::size_t count, std::int64_t support = 64) {
  std::vector<std::pair<SeqElement, SeqElement>> out;
  SeededRng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    auto draw = [&rng, support] {
      std::vector<double> v(static_cast<std::size_t>(support), 0.0);
      for (auto& x : v) x = rng.uniform() < 0.3 ? 0.0 : rng.uniform(0.0, 2.0);
      v[static_cast<std::size_t>(rng.uniform(0.0, static_cast<double>(support)))] += 0.5;
      return seq_from_values(std::move(v));
    };
    out.emplace_back(draw(), draw());
  }
  return out;
}

inline std::vector<std::pair<FnElement, FnElement>> random_fn_probe_pairs(std::uint64_t seed,
                                                                          std::size_t count,
                                                                          double support = 64.0) {
  std::vector<std::pair<FnElement, FnElement>> out;
  SeededRng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    auto draw = [&rng, support] {
      const int pieces = 3 + static_cast<int>(rng.uniform(0.0, 4.0));
      auto cuts = std::make_shared<std::vector<double>>();
      auto vals = std::make_shared<std::vector<double>>();
      cuts->push_back(1.0);
      for (int k = 0; k < pieces; ++k) {
        cuts->push_back(rng.uniform(1.0 + 1e-6, support));
        vals->push_back(rng.uniform() < 0.25 ? 0.0 : rng.uniform(0.0, 2.0));
      }
      std::sort(cuts->begin(), cuts->end());
      (*vals)[0] += 0.5;
      FnElement e;
      e.breakpoints = *cuts;
      e.support_end = cuts->back();
      e.at = [cuts, vals](double t) -> double {
        if (t < cuts->front() || t >= cuts->back()) return 0.0;
        const auto it = std::upper_bound(cuts->begin(), cuts->end(), t);
        const auto idx = static_cast<std::size_t>(it - cuts->begin() - 1);
        return idx < vals->size() ? (*vals)[idx] : 0.0;
      };
      return e;
    };
    out.emplace_back(draw(), draw());
  }
  return out;
}

// --- Segment-mass admission test (class H) ---------------------------------

struct ClassHMargin {
  double multiplier = 0.0;
  double margin = 0.0;
  double attained_at = 0.0;
};

struct ClassHReport {
  bool admitted = false;
  std::vector<ClassHMargin> margins;
  double threshold_at_last = 0.0;
};

using ThresholdCurve = std::function<double(double)>;

// Default admission threshold; the weighted spaces have segment margins that
// grow like ln(multiplier), so half of that is a robust floor.
inline ThresholdCurve half_log_threshold() {
  return [](double multiplier) { return 0.5 * std::log(multiplier); };
}

namespace detail {

inline std::int64_t require_integer(double v, const char* what) {
  const double r = std::round(v);
  if (!(std::abs(v - r) <= 1e-9) || !(r >= 1.0))
    throw std::invalid_argument(std::string(what) + " must be a positive integer");
  return static_cast<std::int64_t>(r);
}

template <class NormOfSegment>
ClassHMargin margin_scan(double multiplier, std::span<const double> inner, NormOfSegment norm_of) {
  ClassHMargin out;
  out.multiplier = multiplier;
  out.margin = std::numeric_limits<double>::infinity();
  for (double n : inner) {
    const double v = norm_of(n);
    if (v < out.margin) {
      out.margin = v;
      out.attained_at = n;
    }
  }
  return out;
}

}  // namespace detail

// Smallest norm of a segment characteristic {n,...,multiplier*n} (sequences)
// or [s, multiplier*s) (functions) over the inner range.  Admitted spaces have
// margins that grow without bound in the multiplier.
inline ClassHMargin class_h_margin(const WeightedSpace& sp, double multiplier,
                                   std::span<const double> inner) {
  sp.validate();
  if (inner.empty()) throw std::invalid_argument("class_h_margin: inner range is empty");
  if (!(multiplier >= 1.0) || !std::isfinite(multiplier))
    throw std::invalid_argument("class_h_margin: multiplier must be >= 1");

  if (sp.carrier == Carrier::sequence) {
    const std::int64_t mult = detail::require_integer(multiplier, "class_h_margin: multiplier");
    return detail::margin_scan(multiplier, inner, [&sp, mult](double n_raw) {
      const std::int64_t n = detail::require_integer(n_raw, "class_h_margin: inner value");
      WeightedSpace wide = sp;
      wide.horizon = std::max(sp.horizon, static_cast<double>(mult * n + 1));
      return norm_eval(wide, seq_char_segment(n, mult * n)).value;
    });
  }
  return detail::margin_scan(multiplier, inner, [&sp, multiplier](double s) {
    if (!(s >= 1.0)) throw std::invalid_argument("class_h_margin: inner value must be >= 1");
    WeightedSpace wide = sp;
    wide.horizon = std::max(sp.horizon, multiplier * s + 1.0);
    return norm_eval(wide, fn_char_interval(s, multiplier * s)).value;
  });
}

inline std::vector<double> default_class_h_inner(Carrier carrier) {
  std::vector<double> inner;
  if (carrier == Carrier::sequence) {
    for (int n = 1; n <= 100; ++n) inner.push_back(n);
  } else {
    for (double s = 1.0; s <= 128.0; s *= 2.0) inner.push_back(s);
  }
  return inner;
}

inline ClassHReport check_class_h(const WeightedSpace& sp, std::span<const double> multipliers,
                                  const ThresholdCurve& threshold = half_log_threshold(),
                                  std::span<const double> inner = {}) {
  if (multipliers.empty()) throw std::invalid_argument("check_class_h: multipliers is empty");
  if (!std::is_sorted(multipliers.begin(), multipliers.end()))
    throw std::invalid_argument("check_class_h: multipliers must be increasing");
  const std::vector<double> fallback = inner.empty() ? default_class_h_inner(sp.carrier)
                                                     : std::vector<double>{};
  const std::span<const double> scan = inner.empty() ? std::span<const double>(fallback) : inner;

  ClassHReport rep;
  bool nondecreasing = true;
  for (double m : multipliers) {
    rep.margins.push_back(class_h_margin(sp, m, scan));
    const auto sz = rep.margins.size();
    if (sz > 1 && rep.margins[sz - 1].margin < rep.margins[sz - 2].margin * (1.0 - 1e-12))
      nondecreasing = false;
  }
  rep.threshold_at_last = threshold(multipliers.back());
  rep.admitted = nondecreasing && rep.margins.back().margin > rep.threshold_at_last;
  return rep;
}

// --- Admissible time sequences ---------------------------------------------

// Growth envelope t_{m n} <= a * m^b * t_n.
struct SabParams {
  double a = 1.0;
  double b = 1.0;

  void validate() const {
    if (!(a >= 1.0) || !(b >= 1.0) || !std::isfinite(a) || !std::isfinite(b))
      throw std::invalid_argument("sab: need a >= 1 and b >= 1");
  }
};

struct SabReport {
  bool ok = true;
  double worst_ratio = 0.0;
  std::int64_t worst_m = 0;
  std::int64_t worst_n = 0;
};

inline SabReport check_sab(const std::function<double(std::int64_t)>& value, SabParams params,
                           std::span<const std::int64_t> m_range,
                           std::span<const std::int64_t> n_range) {
  params.validate();
  if (m_range.empty() || n_range.empty())
    throw std::invalid_argument("check_sab: probe ranges are empty");

  std::vector<std::int64_t> indices(n_range.begin(), n_range.end());
  for (std::int64_t m : m_range)
    for (std::int64_t n : n_range) indices.push_back(m * n);
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  double prev = 1.0;
  for (std::int64_t j : indices) {
    if (j < 1) throw std::invalid_argument("check_sab: indices must be >= 1");
    const double v = value(j);
    if (!(v >= 1.0))
      throw std::invalid_argument("sequence value below 1 at index " + std::to_string(j));
    if (v < prev * (1.0 - 1e-12))
      throw std::invalid_argument("decreasing sequence detected at index " + std::to_string(j));
    prev = v;
  }

  SabReport rep;
  for (std::int64_t m : m_range) {
    for (std::int64_t n : n_range) {
      const double ratio =
          value(m * n) / (params.a * std::pow(static_cast<double>(m), params.b) * value(n));
      if (ratio > rep.worst_ratio) {
        rep.worst_ratio = ratio;
        rep.worst_m = m;
        rep.worst_n = n;
      }
    }
  }
  rep.ok = rep.worst_ratio <= 1.0 + 1e-12;
  return rep;
}

// --- Lift of a function space to a sequence norm ----------------------------

// Sequence norm induced by a function space: a sequence {a_n} is sent to the
// step function sum a_n X_[n, n+1) and measured there.  Finitely supported
// input only; the step representation needs a known last breakpoint.
class LiftedSequenceSpace {
 public:
  explicit LiftedSequenceSpace(WeightedSpace base) : base_(base) {
    base_.validate();
    if (base_.carrier != Carrier::function)
      throw std::invalid_argument("lift_sequence_space: base must be a function-carrier space");
  }

  const WeightedSpace& base() const { return base_; }

  NormValue norm(const SeqElement& elem) const {
    if (elem.support_end < 0)
      throw std::invalid_argument("lifted norm needs a finitely supported sequence");
    const std::int64_t last = elem.support_end;
    FnElement step;
    step.support_end = static_cast<double>(last + 1);
    step.breakpoints.reserve(static_cast<std::size_t>(last) + 1);
    for (std::int64_t n = 1; n <= last + 1; ++n)
      step.breakpoints.push_back(static_cast<double>(n));
    step.at = [at = elem.at, last](double t) -> double {
      const auto n = static_cast<std::int64_t>(std::floor(t));
      return (n >= 1 && n <= last) ? at(n) : 0.0;
    };
    WeightedSpace wide = base_;
    wide.horizon = std::max(base_.horizon, static_cast<double>(last + 1));
    return norm_eval(wide, step);
  }

 private:
  WeightedSpace base_;
};

inline LiftedSequenceSpace lift_sequence_space(const WeightedSpace& base) {
  return LiftedSequenceSpace(base);
}

inline ClassHMargin class_h_margin(const LiftedSequenceSpace& sp, double multiplier,
                                   std::span<const double> inner) {
  if (inner.empty()) throw std::invalid_argument("class_h_margin: inner range is empty");
  const std::int64_t mult = detail::require_integer(multiplier, "class_h_margin: multiplier");
  return detail::margin_scan(multiplier, inner, [&sp, mult](double n_raw) {
    const std::int64_t n = detail::require_integer(n_raw, "class_h_margin: inner value");
    return sp.norm(seq_char_segment(n, mult * n)).value;
  });
}

inline ClassHReport check_class_h(const LiftedSequenceSpace& sp,
                                  std::span<const double> multipliers,
                                  const ThresholdCurve& threshold = half_log_threshold(),
                                  std::span<const double> inner = {}) {
  if (multipliers.empty()) throw std::invalid_argument("check_class_h: multipliers is empty");
  if (!std::is_sorted(multipliers.begin(), multipliers.end()))
    throw std::invalid_argument("check_class_h: multipliers must be increasing");
  const std::vector<double> fallback =
      inner.empty() ? default_class_h_inner(Carrier::sequence) : std::vector<double>{};
  const std::span<const double> scan = inner.empty() ? std::span<const double>(fallback) : inner;

  ClassHReport rep;
  bool nondecreasing = true;
  for (double m : multipliers) {
    rep.margins.push_back(class_h_margin(sp, m, scan));
    const auto sz = rep.margins.size();
    if (sz > 1 && rep.margins[sz - 1].margin < rep.margins[sz - 2].margin * (1.0 - 1e-12))
      nondecreasing = false;
  }
  rep.threshold_at_last = threshold(multipliers.back());
  rep.admitted = nondecreasing && rep.margins.back().margin > rep.threshold_at_last;
  return rep;
}

}  // namespace polystab
