// Acceptance gate: ten end-to-end criteria, one pass/fail line each.
// Every tolerance is pinned here; a nonzero exit means at least one failed.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "polystab/polystab.hpp"

namespace ps = polystab;
namespace fs = std::filesystem;

namespace {

constexpr double kLawTol = 1e-9;         // composition-law residuals
constexpr std::size_t kLawTriples = 1000;
constexpr double kContinuousTol = 1e-6;  // continuous weighted values vs closed forms
constexpr double kDiscreteTol = 1e-4;    // discrete weighted value vs its limit
constexpr double kTelescopeTol = 1e-12;  // partial-sum identity, float rounding only
constexpr double kExponentTol = 1e-12;   // derived decay exponent and step constant
constexpr double kBoundConstantTol = 1e-9;
constexpr double kMarginFloor = 3.0;     // final admission margin, multipliers to 256
constexpr double kWitnessFloor = 10.0;   // exponentially weighted mean witness
constexpr double kMcSigmas = 3.0;        // Monte Carlo mean within 3 standard errors

int failures = 0;

void report(int idx, const char* name, std::pair<bool, std::string> result) {
  std::cout << "[" << std::setw(2) << idx << "/10] " << name << ": "
            << (result.first ? "pass" : "FAIL");
  if (!result.second.empty()) std::cout << " (" << result.second << ")";
  std::cout << std::endl;
  if (!result.first) ++failures;
}

template <class Fn>
std::pair<bool, std::string> guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::pair<bool, std::string> criterion_laws() {
  double worst = 0.0;
  std::string worst_name;
  std::size_t total = 0;
  int idx = 0;
  for (const auto& name : ps::gallery_names()) {
    const ps::GalleryEntry e = ps::gallery(name);
    const auto triples = ps::make_time_triples(ps::mix_seed(20240801, 31 + idx), kLawTriples,
                                               e.time_floor, 100.0);
    std::vector<ps::SamplePoint> samples;
    for (const auto& [pt, w] : e.space.atoms) {
      (void)w;
      samples.push_back(pt);
    }
    std::vector<ps::State> probes;
    for (int i = 0; i < e.cocycle.dim; ++i) {
      ps::State u(static_cast<std::size_t>(e.cocycle.dim), 0.0);
      u[static_cast<std::size_t>(i)] = 1.0;
      probes.push_back(std::move(u));
    }
    ps::SeededRng rng(ps::mix_seed(20240801, 41 + idx));
    for (int i = 0; i < 4; ++i) {
      ps::State x(static_cast<std::size_t>(e.cocycle.dim), 0.0);
      for (double& c : x) c = rng.uniform(-1.0, 1.0);
      probes.push_back(std::move(x));
    }

    const auto sf = ps::check_semiflow_laws(e.semiflow, triples, samples, kLawTol);
    const auto cz = ps::check_cocycle_laws(e.cocycle, e.semiflow, triples, samples, probes,
                                           kLawTol);
    if (!sf.passed || !cz.passed)
      return {false, name + std::string(": residual ") + fmt(std::max(sf.max_residual,
                                                                      cz.max_residual))};
    if (sf.checks < kLawTriples || cz.checks < kLawTriples)
      return {false, name + std::string(": too few checks")};
    total += sf.checks + cz.checks;
    const double r = std::max(sf.max_residual, cz.max_residual);
    if (r > worst) {
      worst = r;
      worst_name = name;
    }
    ++idx;
  }
  return {true, "5 systems, " + std::to_string(total) + " checks, worst residual " + fmt(worst) +
                    " at " + worst_name};
}

std::pair<bool, std::string> criterion_exact_mean() {
  const ps::GalleryEntry e = ps::gallery("inverse-linear");
  const auto l1 = ps::l1_norm(e.observable, e.space);
  const auto m = ps::mean_norm(e.cocycle, e.semiflow, ps::TimePair(3.0, 1.0), e.observable,
                               e.space);
  const bool ok = l1.value == 1.0 && l1.std_error == 0.0 && m.value == 0.5 &&
                  m.std_error == 0.0 && m.exact;
  return {ok, "|g|_1 = " + fmt(l1.value) + ", mean(3,1) = " + fmt(m.value) + " exact"};
}

std::pair<bool, std::string> criterion_continuous_value() {
  const ps::GalleryEntry e = ps::gallery("inverse-linear");
  const auto space = ps::WeightedSpace::function_lp(1.0, 4e6, 1e-4);

  const auto tr1 = ps::datko_continuous(e.cocycle, e.semiflow, e.space, e.observable, 1.0, space);
  const double want1 = 2.0 * std::log(2.0);
  if (std::abs(tr1.norm_value - want1) > kContinuousTol)
    return {false, "s=1 value " + fmt(tr1.norm_value) + " vs " + fmt(want1)};
  if (!tr1.converged) return {false, "s=1 norm did not settle under horizon doubling"};

  const auto tr10 = ps::datko_continuous(e.cocycle, e.semiflow, e.space, e.observable, 10.0,
                                         space);
  const double want10 = 11.0 * std::log(1.1);
  if (std::abs(tr10.norm_value - want10) > kContinuousTol)
    return {false, "s=10 value " + fmt(tr10.norm_value) + " vs " + fmt(want10)};

  // Sup over the default base-time grid sits at s = 1 and decreases toward 1.
  double prev = std::numeric_limits<double>::infinity();
  double sup = 0.0, sup_at = 0.0, last = 0.0;
  for (double s : ps::default_s_grid()) {
    const auto tr = ps::datko_continuous(e.cocycle, e.semiflow, e.space, e.observable, s, space);
    if (tr.norm_value >= prev)
      return {false, "values not decreasing at s = " + fmt(s)};
    if (tr.norm_value <= 1.0)
      return {false, "value dropped to " + fmt(tr.norm_value) + " at s = " + fmt(s)};
    if (tr.norm_value > sup) {
      sup = tr.norm_value;
      sup_at = s;
    }
    prev = last = tr.norm_value;
  }
  if (sup_at != 1.0) return {false, "sup attained at s = " + fmt(sup_at)};
  return {true, "s=1: " + fmt(tr1.norm_value) + ", s=10: " + fmt(tr10.norm_value) +
                    ", grid decreasing to " + fmt(last)};
}

std::pair<bool, std::string> criterion_discrete_value() {
  const ps::GalleryEntry e = ps::gallery("inverse-linear");
  const auto space = ps::WeightedSpace::sequence_lp(1.0, 1e5, 1e-4);
  const auto tr = ps::datko_discrete(e.cocycle, e.semiflow, e.space, e.observable, 1.0,
                                     ps::linear_sequence(), space);
  if (std::abs(tr.norm_value - 2.0) > kDiscreteTol)
    return {false, "norm " + fmt(tr.norm_value) + " vs 2.0"};
  for (const auto& pt : tr.points) {
    const double want = 2.0 * (1.0 - 1.0 / (pt.time + 1.0));
    if (std::abs(pt.partial_norm - want) > kTelescopeTol)
      return {false, "telescoping broke at j = " + fmt(pt.time)};
  }
  // The same identity, from scratch, for every prefix up to 1000.
  double sum = 0.0;
  for (int j = 1; j <= 1000; ++j) {
    sum += 2.0 / (static_cast<double>(j) * (j + 1.0));
    if (std::abs(sum - 2.0 * (1.0 - 1.0 / (j + 1.0))) > kTelescopeTol)
      return {false, "direct telescoping broke at j = " + std::to_string(j)};
  }
  return {true, "norm " + fmt(tr.norm_value) + ", partial sums telescoping at " +
                    std::to_string(tr.points.size()) + " reported points"};
}

std::pair<bool, std::string> criterion_reciprocal_mirror() {
  const ps::GalleryEntry e = ps::gallery("linear-growth");

  const auto fn_space = ps::WeightedSpace::function_lp(1.0, 4e6, 1e-4);
  const auto cont = ps::instability_continuous(e.cocycle, e.semiflow, e.space, e.observable, 1.0,
                                               fn_space);
  if (std::abs(cont.norm_value - 2.0 * std::log(2.0)) > kContinuousTol)
    return {false, "continuous reciprocal " + fmt(cont.norm_value) + " vs 2 ln 2"};

  const auto seq_space = ps::WeightedSpace::sequence_lp(1.0, 1e5, 1e-4);
  const auto disc = ps::instability_discrete(e.cocycle, e.semiflow, e.space, e.observable, 1.0,
                                             ps::linear_sequence(), seq_space);
  if (std::abs(disc.norm_value - 2.0) > kDiscreteTol)
    return {false, "discrete reciprocal " + fmt(disc.norm_value) + " vs 2.0"};

  const auto s_grid = ps::default_s_grid();
  const auto t_grid = ps::default_t_grid();
  const auto inj = ps::injectivity_check(e.cocycle, e.semiflow, e.space, e.observable, s_grid,
                                         t_grid, 1e-6);
  if (!inj.injective) return {false, "means not bounded away from zero"};
  return {true, "continuous " + fmt(cont.norm_value) + ", discrete " + fmt(disc.norm_value) +
                    ", min mean " + fmt(inj.min_mean)};
}

std::pair<bool, std::string> criterion_decay_constants() {
  const ps::GalleryEntry e = ps::gallery("inverse-linear");
  const ps::GrowthBound gb{1.0, 1.0, 1.0};
  const ps::ContractionCertificate cert{2.0 / 3.0, 2, 1.0};
  const auto lc = ps::lemma_constants_stable(gb, cert);

  const double want_alpha = std::log(1.5) / std::log(2.0);  // 0.5849625007211562
  if (std::abs(lc.decay_exponent - want_alpha) > kExponentTol)
    return {false, "alpha " + fmt(lc.decay_exponent)};
  if (!lc.step_constant || std::abs(*lc.step_constant - 3.0) > kExponentTol)
    return {false, "step constant " + fmt(lc.step_constant.value_or(0.0))};
  if (std::abs(lc.bound_constant - 5.704522494691118) > kBoundConstantTol)
    return {false, "bound constant " + fmt(lc.bound_constant)};

  const auto pairs = ps::make_decay_pairs(ps::mix_seed(20240801, 21), 1000, 2.0, 200.0, 1000.0);
  const auto check = ps::check_stable_bound(e.cocycle, e.semiflow, e.space, e.observable, lc,
                                            pairs);
  if (check.checks != 1000 || check.violations != 0)
    return {false, std::to_string(check.violations) + " violations over " +
                       std::to_string(check.checks) + " pairs"};
  return {true, "alpha " + fmt(lc.decay_exponent) + ", K1 " + fmt(*lc.step_constant) + ", K " +
                    fmt(lc.bound_constant) + ", 0/1000 violations, worst margin " +
                    fmt(check.worst_margin)};
}

std::pair<bool, std::string> criterion_classification_matrix() {
  // Certify both sampling sequences before they drive any trace.
  for (const auto& seq : {ps::linear_sequence(), ps::quadratic_sequence()}) {
    static const std::int64_t kM[] = {2, 3, 4, 5, 8};
    static const std::int64_t kN[] = {1, 2, 4, 8, 16, 32, 64};
    const auto rep = ps::check_sab(seq.value, seq.sab, kM, kN);
    if (!rep.ok) return {false, seq.name + " failed its growth envelope"};
  }

  const std::pair<const char*, ps::StabilityOutcome> expected[] = {
      {"inverse-linear", ps::StabilityOutcome::stable_in_mean},
      {"partitioned-decay", ps::StabilityOutcome::stable_in_mean},
      {"linear-growth", ps::StabilityOutcome::unstable_in_mean},
      {"constant-identity", ps::StabilityOutcome::inconclusive},
  };

  int runs = 0;
  for (const auto& [name, want] : expected) {
    const ps::GalleryEntry e = ps::gallery(name);
    for (double p : {1.0, 2.0}) {
      for (const auto& seq : {ps::linear_sequence(), ps::quadratic_sequence()}) {
        ps::ClassifyOptions opt;
        opt.s_grid = {1.0, 8.0};
        opt.sequence = seq;
        opt.exponent_p = p;
        opt.discrete_horizon = 2e4;
        opt.continuous_horizon = 2e5;
        const auto v = ps::classify(e.cocycle, e.semiflow, e.space,
                                    std::vector<ps::Observable>{e.observable}, opt);
        ++runs;
        if (v.outcome != want)
          return {false, std::string(name) + " with " + seq.name + ", p = " + fmt(p) + ": " +
                             ps::to_string(v.outcome)};
      }
    }
  }
  return {true, std::to_string(runs) + " runs, verdicts invariant across sequence and exponent"};
}

std::pair<bool, std::string> criterion_admission_margins() {
  const std::vector<double> multipliers{4.0, 16.0, 64.0, 256.0};
  std::vector<double> inner;
  for (int n = 1; n <= 100; ++n) inner.push_back(n);

  const auto weighted = ps::check_class_h(ps::WeightedSpace::sequence_lp(1.0), multipliers,
                                          ps::half_log_threshold(), inner);
  if (!weighted.admitted) return {false, "weighted space rejected"};
  double prev = 0.0;
  for (const auto& m : weighted.margins) {
    if (m.margin < prev) return {false, "margins decreased at multiplier " + fmt(m.multiplier)};
    prev = m.margin;
  }
  if (weighted.margins.back().margin <= kMarginFloor)
    return {false, "final margin " + fmt(weighted.margins.back().margin)};

  // Harmonic oracle: the margin is min over n of sum_{j=n}^{mn} 1/j.
  for (const auto& m : weighted.margins) {
    double best = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= 100; ++n) {
      double sum = 0.0;
      const auto mult = static_cast<std::int64_t>(m.multiplier);
      for (std::int64_t j = n; j <= mult * n; ++j) sum += 1.0 / static_cast<double>(j);
      best = std::min(best, sum);
    }
    if (std::abs(m.margin - best) > 1e-10)
      return {false, "margin at " + fmt(m.multiplier) + " is " + fmt(m.margin) + ", oracle " +
                         fmt(best)};
  }

  const auto sup = ps::check_class_h(ps::WeightedSpace::sequence_sup(), multipliers,
                                     ps::half_log_threshold(), inner);
  if (sup.admitted) return {false, "sup space admitted"};
  for (const auto& m : sup.margins)
    if (m.margin != 1.0) return {false, "sup margin " + fmt(m.margin) + " at " + fmt(m.multiplier)};
  return {true, "final margin " + fmt(weighted.margins.back().margin) + " > " + fmt(kMarginFloor) +
                    ", sup margins pinned at 1"};
}

std::pair<bool, std::string> criterion_nonexponential_witness() {
  const ps::GalleryEntry e = ps::gallery("inverse-linear");
  double best = 0.0, best_t = 0.0;
  for (int t = 1; t <= 100; ++t) {
    const auto m = ps::mean_norm(e.cocycle, e.semiflow, ps::TimePair(t, 1.0), e.observable,
                                 e.space);
    const double weighted = m.value * std::exp(0.1 * (t - 1.0));
    if (weighted > best) {
      best = weighted;
      best_t = t;
    }
  }
  if (best <= kWitnessFloor) return {false, "max weighted mean " + fmt(best)};
  return {true, "mean(t,1) e^{0.1(t-1)} reaches " + fmt(best) + " at t = " + fmt(best_t)};
}

std::pair<bool, std::string> criterion_determinism() {
  const char* config_text = R"({
    "system": {"gallery": "inverse-linear"},
    "s_grid": [1, 2],
    "horizon": {"discrete": 2000, "continuous": 2000},
    "laws": {"triples": 200},
    "analyses": ["laws", "growth-fit", "datko-stability", "class-h"]
  })";
  const ps::AnalysisConfig cfg = ps::parse_config_text(config_text);

  const fs::path root =
      fs::temp_directory_path() /
      ("polystab_acceptance_" +
       std::to_string(std::chrono::steady_clock::now().time_since_epoch().count() % 1000000));
  fs::create_directories(root);
  ps::run_analysis(cfg, root / "a");
  ps::run_analysis(cfg, root / "b");
  const std::string a = slurp(root / "a" / "report.json");
  const std::string b = slurp(root / "b" / "report.json");
  std::error_code ec;
  fs::remove_all(root, ec);
  if (a.empty()) return {false, "report not written"};
  if (a != b) return {false, "reports differ between identical runs"};

  const auto sp = ps::uniform_parameter_space(20240801);
  const auto mc = ps::l1_norm(ps::parameter_observable(1), sp, 100000);
  if (std::abs(mc.value - 0.5) > kMcSigmas * mc.std_error)
    return {false, "Monte Carlo mean " + fmt(mc.value) + " +/- " + fmt(mc.std_error)};
  return {true, std::to_string(a.size()) + " identical report bytes; MC mean " + fmt(mc.value) +
                    " within " + fmt(kMcSigmas) + " sigma of 0.5"};
}

}  // namespace

int main() {
  report(1, "algebra laws", guarded(criterion_laws));
  report(2, "exact propagated mean", guarded(criterion_exact_mean));
  report(3, "continuous weighted value", guarded(criterion_continuous_value));
  report(4, "discrete weighted value", guarded(criterion_discrete_value));
  report(5, "reciprocal mirror", guarded(criterion_reciprocal_mirror));
  report(6, "certified decay constants", guarded(criterion_decay_constants));
  report(7, "classification matrix", guarded(criterion_classification_matrix));
  report(8, "admission margins", guarded(criterion_admission_margins));
  report(9, "non-exponential witness", guarded(criterion_nonexponential_witness));
  report(10, "deterministic reports", guarded(criterion_determinism));

  if (failures == 0) {
    std::cout << "all 10 criteria passed" << std::endl;
    return 0;
  }
  std::cout << failures << " criteria failed" << std::endl;
  return 1;
}
