#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace polystab {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1, 1]; Kronrod abscissae/weights with the
// embedded 7-point Gauss rule.
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kGk15Weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
struct Gk15Panel {
  double kronrod;
  double gauss;
  double err;
};

template <class F>
inline Gk15Panel<F> gk15(F& f, double a, double b) {
  const double hal = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double fk = 0.0, fg = 0.0;
  for (int i = 0; i < 7; ++i) {
    const double dx = hal * kGk15Nodes[i];
    const double fsum = f(mid - dx) + f(mid + dx);
    fk += kGk15Weights[i] * fsum;
    if (i % 2 == 1) fg += kG7Weights[i / 2] * fsum;
  }
  const double fc = f(mid);
  fk += kGk15Weights[7] * fc;
  fg += kG7Weights[3] * fc;
  const double kron = fk * hal;
  const double gauss = fg * hal;
  return {kron, gauss, std::abs(kron - gauss)};
}

}  // namespace detail

// Adaptive bisection with a Gauss-Kronrod 7-15 estimator.  A panel is accepted
// when its error estimate falls under its share of abs_tol or under a relative
// floor tied to double precision; the relative floor keeps large-magnitude
// integrands from subdividing forever.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                              std::size_t max_evals = 2'000'000) {
  if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("integrate_adaptive: bad interval");
  QuadResult out;
  if (a == b) return out;

  struct Interval {
    double a, b, tol;
  };
  std::vector<Interval> stack;
  stack.push_back({a, b, std::max(abs_tol, 0.0)});
  double sum = 0.0, comp = 0.0, err_sum = 0.0;
  bool ok = true;

  while (!stack.empty()) {
    const Interval iv = stack.back();
    stack.pop_back();
    auto panel = detail::gk15(f, iv.a, iv.b);
    out.evaluations += 15;
    const double rel_floor = 1e-14 * std::abs(panel.kronrod);
    const bool budget_left = out.evaluations + 30 <= max_evals;
    if (panel.err <= std::max(iv.tol, rel_floor) || !budget_left) {
      if (panel.err > std::max(iv.tol, rel_floor)) ok = false;
      const double term = panel.kronrod;
      const double t = sum + term;
      comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
      sum = t;
      err_sum += panel.err;
      continue;
    }
    const double mid = 0.5 * (iv.a + iv.b);
    stack.push_back({iv.a, mid, 0.5 * iv.tol});
    stack.push_back({mid, iv.b, 0.5 * iv.tol});
  }
  out.value = sum + comp;
  out.error = err_sum;
  out.converged = ok;
  return out;
}

// Integrates with forced panel splits at the given breakpoints (ascending or
// not; values outside (a, b) are ignored).  Step-function integrands are exact
// this way because no panel straddles a jump.
template <class F>
QuadResult integrate_piecewise(F&& f, double a, double b, std::span<const double> breakpoints,
                               double abs_tol, std::size_t max_evals = 2'000'000) {
  std::vector<double> cuts{a, b};
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  QuadResult out;
  const std::size_t panels = cuts.size() - 1;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto piece = integrate_adaptive(f, cuts[i], cuts[i + 1],
                                    abs_tol / static_cast<double>(panels), max_evals);
    out.value += piece.value;
    out.error += piece.error;
    out.evaluations += piece.evaluations;
    out.converged = out.converged && piece.converged;
  }
  return out;
}

}  // namespace polystab
