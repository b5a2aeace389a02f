#pragma once

#include <array>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polystab/config.hpp"
#include "polystab/core.hpp"
#include "polystab/datko.hpp"
#include "polystab/gallery.hpp"
#include "polystab/measure.hpp"
#include "polystab/spaces.hpp"

namespace polystab {

inline constexpr const char* kVersion = "0.1.0";

// Fully wired system: flow, operator family, measure, and the observables the
// analyses will read.
struct SystemInstance {
  std::string name;
  std::string summary;
  Semiflow semiflow;
  Cocycle cocycle;
  ProbabilitySpace space;
  std::vector<Observable> observables;
  double time_floor = 0.0;
};

namespace detail {

inline Cocycle inline_power_cocycle(const SystemConfig& sys) {
  auto alphas = std::make_shared<std::vector<double>>();
  for (const auto& a : sys.inline_atoms) alphas->push_back(a.alpha);
  return scalar_cocycle(
      "inline", sys.inline_dim,
      [alphas](const TimePair& tp, const SamplePoint& v) {
        if (v.atom < 0 || v.atom >= static_cast<std::int64_t>(alphas->size()))
          throw std::invalid_argument("inline system: sample outside carrier (atom " +
                                      std::to_string(v.atom) + ")");
        const double alpha = (*alphas)[static_cast<std::size_t>(v.atom)];
        if (alpha == 0.0) return 1.0;
        if (!(tp.s() > 0.0))
          throw std::invalid_argument("inline system: power decay needs base time > 0");
        return std::pow(tp.t() / tp.s(), -alpha);
      },
      GrowthBound{1.0,
                  -*std::min_element(alphas->begin(), alphas->end()),
                  1.0});
}

inline Observable unit_observable(int dim) {
  Observable g;
  g.name = "uniform";
  g.eval = [dim](const SamplePoint&) {
    State x(static_cast<std::size_t>(dim), 0.0);
    x[0] = 1.0;
    return x;
  };
  return g;
}

}  // namespace detail

// Builds the runnable system from a validated configuration.  Cross-checks
// that need the carrier (measure overrides, observable dimensions) live here
// and still throw ConfigError.
inline SystemInstance assemble_system(const AnalysisConfig& cfg) {
  SystemInstance inst;
  if (!cfg.system.is_inline()) {
    GalleryEntry entry = gallery(cfg.system.gallery_name, cfg.system.gallery_params);
    inst.name = std::move(entry.name);
    inst.summary = std::move(entry.summary);
    inst.semiflow = std::move(entry.semiflow);
    inst.cocycle = std::move(entry.cocycle);
    inst.space = std::move(entry.space);
    inst.time_floor = entry.time_floor;
    if (cfg.measure.kind == MeasureConfig::Kind::system_default)
      inst.observables.push_back(std::move(entry.observable));
  } else {
    inst.name = "inline";
    inst.summary = "user-defined atom-wise power system";
    inst.semiflow = identity_semiflow();
    inst.cocycle = detail::inline_power_cocycle(cfg.system);
    std::vector<std::pair<SamplePoint, double>> atoms;
    for (const auto& a : cfg.system.inline_atoms)
      atoms.push_back({SamplePoint{a.id, {}}, a.weight});
    inst.space = ProbabilitySpace::finite(std::move(atoms));
    inst.time_floor = 1.0;
    if (cfg.measure.kind == MeasureConfig::Kind::system_default) {
      std::vector<State> table;
      for (const auto& a : cfg.system.inline_atoms) table.push_back(a.g_value);
      inst.observables.push_back(detail::table_observable("default", std::move(table)));
    }
  }

  const int dim = inst.cocycle.dim;

  if (cfg.measure.kind == MeasureConfig::Kind::finite_discrete) {
    if (inst.space.kind != ProbabilitySpace::Kind::finite_discrete)
      throw ConfigError("measure.atoms", "system carrier is not a finite atom space");
    if (cfg.measure.atoms.size() != inst.space.atoms.size())
      throw ConfigError("measure.atoms",
                        "override must list every carrier atom exactly once (" +
                            std::to_string(inst.space.atoms.size()) + " atoms)");
    std::vector<std::pair<SamplePoint, double>> atoms;
    std::vector<State> table;
    for (std::size_t i = 0; i < cfg.measure.atoms.size(); ++i) {
      const auto& a = cfg.measure.atoms[i];
      if (static_cast<int>(a.g_value.size()) != dim)
        throw ConfigError("measure.atoms", "g_value length must equal the system dimension " +
                                               std::to_string(dim));
      atoms.push_back({inst.space.atoms[i].first, a.weight});
      table.push_back(a.g_value);
    }
    inst.space = ProbabilitySpace::finite(std::move(atoms));
    inst.observables.clear();
    inst.observables.push_back(detail::table_observable("default", std::move(table)));
  } else if (cfg.measure.kind == MeasureConfig::Kind::uniform_sampler) {
    inst.space = uniform_parameter_space(cfg.seed);
    inst.observables.clear();
  }

  // Requested observable names, in order, without duplicating the default.
  std::vector<Observable> chosen;
  for (const std::string& name : cfg.observables) {
    if (name == "default") {
      if (inst.observables.empty())
        throw ConfigError("observables", "'default' is not available for this measure");
      chosen.push_back(inst.observables.front());
    } else if (name == "uniform") {
      chosen.push_back(detail::unit_observable(dim));
    } else {
      chosen.push_back(parameter_observable(dim));
    }
  }
  inst.observables = std::move(chosen);
  return inst;
}

// --- Run results --------------------------------------------------------------

struct LawsResult {
  LawReport semiflow;
  LawReport cocycle;
  std::optional<LawReport> growth;
};

struct CertificatesResult {
  std::optional<ContractionCertificate> contraction;
  std::optional<LemmaConstants> decay_constants;
  std::optional<BoundCheck> decay_check;
  std::optional<ContractionCertificate> expansion;
  std::optional<LemmaConstants> growth_constants;
  std::optional<BoundCheck> growth_check;
  std::string note;
};

struct ClassHResult {
  ClassHReport sequence;
  ClassHReport function;
};

struct RunReport {
  AnalysisConfig config;
  std::string system_name;
  std::string system_summary;
  int dim = 1;
  std::vector<std::pair<std::string, MeanEstimate>> observable_sizes;
  std::optional<LawsResult> laws;
  std::optional<ClassHResult> class_h;
  std::optional<GrowthFit> fit;
  std::string fit_note;
  std::vector<DatkoTrace> stability_traces;
  std::vector<DatkoTrace> instability_traces;
  std::vector<std::string> trace_files;  // parallel to stability + instability traces
  std::optional<CertificatesResult> certificates;
  std::optional<Verdict> verdict;
  std::vector<std::string> files;  // everything written under the output directory
  double wall_seconds = 0.0;       // console only; never serialized
};

namespace detail {

// Shortest round-trip decimal form; '.' is the radix everywhere.
inline std::string fmt_double(double v) {
  std::array<char, 40> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

inline std::string file_token(double v) {
  std::string s = fmt_double(v);
  for (char& c : s) {
    if (c == '.') c = 'p';
    if (c == '-') c = 'm';
    if (c == '+') c = '\0';
  }
  std::string out;
  for (char c : s)
    if (c != '\0') out.push_back(c);
  return out;
}

inline std::string trace_stem(const DatkoTrace& tr) {
  std::string stem = tr.kind == TraceKind::stability ? "stability" : "instability";
  stem += tr.axis == TraceAxis::discrete ? "_discrete" : "_continuous";
  stem += "_s" + file_token(tr.base_time);
  stem += "_" + tr.observable;
  return stem;
}

inline void write_trace_csv(const std::filesystem::path& path, const DatkoTrace& tr) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "time,mean,term,partial_norm\n";
  for (const TracePoint& pt : tr.points)
    out << fmt_double(pt.time) << ',' << fmt_double(pt.mean) << ',' << fmt_double(pt.term) << ','
        << fmt_double(pt.partial_norm) << '\n';
}

inline nlohmann::ordered_json law_json(const LawReport& rep) {
  return {{"checks", rep.checks},
          {"max_residual", rep.max_residual},
          {"tol", rep.tol},
          {"passed", rep.passed},
          {"worst",
           {{"t", rep.worst.t}, {"r", rep.worst.r}, {"s", rep.worst.s}, {"atom", rep.worst.atom}}}};
}

inline nlohmann::ordered_json mean_json(const MeanEstimate& m) {
  return {{"value", m.value},
          {"std_error", m.std_error},
          {"samples", m.samples},
          {"exact", m.exact}};
}

inline nlohmann::ordered_json cert_json(const ContractionCertificate& c) {
  return {{"ratio", c.ratio}, {"multiplier", c.multiplier}, {"min_base_time", c.min_base_time}};
}

inline nlohmann::ordered_json constants_json(const LemmaConstants& lc) {
  nlohmann::ordered_json j{{"exponent", lc.decay_exponent},
                           {"bound_constant", lc.bound_constant},
                           {"onset", lc.onset}};
  if (lc.step_constant) j["step_constant"] = *lc.step_constant;
  return j;
}

inline nlohmann::ordered_json bound_check_json(const BoundCheck& bc) {
  return {{"checks", bc.checks},
          {"violations", bc.violations},
          {"worst_margin", bc.worst_margin},
          {"worst_hi", bc.worst_hi},
          {"worst_lo", bc.worst_lo}};
}

inline nlohmann::ordered_json fit_json(const GrowthFit& f) {
  return {{"coefficient", f.coefficient}, {"exponent", f.exponent}, {"residual", f.residual}};
}

inline nlohmann::ordered_json class_h_json(const ClassHReport& rep) {
  nlohmann::ordered_json margins = nlohmann::ordered_json::array();
  for (const auto& m : rep.margins)
    margins.push_back(
        {{"multiplier", m.multiplier}, {"margin", m.margin}, {"attained_at", m.attained_at}});
  return {{"admitted", rep.admitted},
          {"threshold_at_last", rep.threshold_at_last},
          {"margins", margins}};
}

inline nlohmann::ordered_json injectivity_json(const InjectivityReport& rep) {
  return {{"injective", rep.injective}, {"observable_l1", rep.observable_l1},
          {"min_mean", rep.min_mean},  {"min_at_t", rep.min_at_t},
          {"min_at_s", rep.min_at_s},  {"eps", rep.eps}};
}

inline nlohmann::ordered_json trace_json(const DatkoTrace& tr, const std::string& csv) {
  return {{"kind", tr.kind == TraceKind::stability ? "stability" : "instability"},
          {"axis", tr.axis == TraceAxis::discrete ? "discrete" : "continuous"},
          {"base_time", tr.base_time},
          {"observable", tr.observable},
          {"observable_l1", tr.observable_l1},
          {"exponent_p", tr.exponent_p},
          {"horizon", tr.horizon},
          {"norm_value", tr.norm_value},
          {"norm_std_error", tr.norm_std_error},
          {"converged", tr.converged},
          {"points", tr.points.size()},
          {"csv", csv}};
}

inline nlohmann::ordered_json verdict_json(const Verdict& v) {
  nlohmann::ordered_json j;
  j["outcome"] = to_string(v.outcome);
  j["stability"] = {{"sup_norm_over_l1", v.stability_sup},
                    {"sup_at_base_time", v.stability_sup_at},
                    {"converged", v.stability_converged}};
  j["instability"] = {{"ran", v.instability_ran},
                      {"sup_norm_over_l1", v.instability_sup},
                      {"sup_at_base_time", v.instability_sup_at},
                      {"converged", v.instability_converged}};
  if (v.injectivity) j["injectivity"] = injectivity_json(*v.injectivity);
  if (v.contraction) j["contraction"] = cert_json(*v.contraction);
  if (v.expansion) j["expansion"] = cert_json(*v.expansion);
  if (v.fit) j["growth_fit"] = fit_json(*v.fit);
  nlohmann::ordered_json traces = nlohmann::ordered_json::array();
  for (const auto& tr : v.traces)
    traces.push_back({{"axis", tr.axis == TraceAxis::discrete ? "discrete" : "continuous"},
                      {"kind", tr.kind == TraceKind::stability ? "stability" : "instability"},
                      {"base_time", tr.base_time},
                      {"observable", tr.observable},
                      {"norm_over_l1", tr.norm_over_l1},
                      {"converged", tr.converged}});
  j["traces"] = traces;
  j["note"] = v.note;
  return j;
}

}  // namespace detail

// Deterministic serialization of a run.  Wall-clock time is intentionally
// absent: two runs with the same configuration must produce identical bytes.
inline nlohmann::ordered_json report_to_json(const RunReport& rep) {
  nlohmann::ordered_json j;
  j["tool"] = {{"name", "polystab"}, {"version", kVersion}};
  j["config"] = config_to_json(rep.config);
  j["system"] = {{"name", rep.system_name}, {"summary", rep.system_summary}, {"dim", rep.dim}};
  nlohmann::ordered_json obs = nlohmann::ordered_json::array();
  for (const auto& [name, l1] : rep.observable_sizes)
    obs.push_back({{"name", name}, {"l1", detail::mean_json(l1)}});
  j["observables"] = obs;

  nlohmann::ordered_json analyses;
  if (rep.laws) {
    analyses["laws"] = {{"semiflow", detail::law_json(rep.laws->semiflow)},
                        {"cocycle", detail::law_json(rep.laws->cocycle)}};
    if (rep.laws->growth) analyses["laws"]["growth_envelope"] = detail::law_json(*rep.laws->growth);
  }
  if (rep.class_h)
    analyses["class_h"] = {{"sequence", detail::class_h_json(rep.class_h->sequence)},
                           {"function", detail::class_h_json(rep.class_h->function)}};
  if (rep.fit) analyses["growth_fit"] = detail::fit_json(*rep.fit);
  if (!rep.fit_note.empty()) analyses["growth_fit_note"] = rep.fit_note;
  if (rep.certificates) {
    nlohmann::ordered_json c;
    if (rep.certificates->contraction) {
      c["contraction"] = detail::cert_json(*rep.certificates->contraction);
      if (rep.certificates->decay_constants)
        c["decay_constants"] = detail::constants_json(*rep.certificates->decay_constants);
      if (rep.certificates->decay_check)
        c["decay_check"] = detail::bound_check_json(*rep.certificates->decay_check);
    }
    if (rep.certificates->expansion) {
      c["expansion"] = detail::cert_json(*rep.certificates->expansion);
      if (rep.certificates->growth_constants)
        c["growth_constants"] = detail::constants_json(*rep.certificates->growth_constants);
      if (rep.certificates->growth_check)
        c["growth_check"] = detail::bound_check_json(*rep.certificates->growth_check);
    }
    if (!rep.certificates->note.empty()) c["note"] = rep.certificates->note;
    analyses["certificates"] = c;
  }
  {
    std::size_t file_idx = 0;
    if (!rep.stability_traces.empty()) {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& tr : rep.stability_traces)
        arr.push_back(detail::trace_json(tr, rep.trace_files[file_idx++]));
      analyses["datko_stability"] = {{"traces", arr}};
    }
    if (!rep.instability_traces.empty()) {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& tr : rep.instability_traces)
        arr.push_back(detail::trace_json(tr, rep.trace_files[file_idx++]));
      analyses["datko_instability"] = {{"traces", arr}};
    }
  }
  if (rep.verdict) analyses["classify"] = detail::verdict_json(*rep.verdict);
  j["analyses"] = analyses;
  j["files"] = rep.files;
  return j;
}

// Executes the configured analyses in dependency order and writes the output
// tree: report.json plus one CSV per weighted trace.  Throws ConfigError for
// configuration problems and domain_error for numerical failures; in strict
// mode a trace that fails to settle is a numerical failure after the report
// is written.
inline RunReport run_analysis(const AnalysisConfig& cfg, const std::filesystem::path& out_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  SystemInstance sys = assemble_system(cfg);

  RunReport rep;
  rep.config = cfg;
  rep.system_name = sys.name;
  rep.system_summary = sys.summary;
  rep.dim = sys.cocycle.dim;

  const std::size_t budget = cfg.measure.budget;
  for (const Observable& g : sys.observables)
    rep.observable_sizes.push_back({g.name, l1_norm(g, sys.space, budget)});

  auto wants = [&cfg](std::string_view name) {
    return std::find(cfg.analyses.begin(), cfg.analyses.end(), name) != cfg.analyses.end();
  };

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out_dir.string());

  if (wants("laws")) {
    const auto triples =
        make_time_triples(mix_seed(cfg.seed, 11), cfg.laws.triples, sys.time_floor, cfg.laws.span);
    std::vector<SamplePoint> samples;
    if (sys.space.kind == ProbabilitySpace::Kind::finite_discrete) {
      for (const auto& [pt, w] : sys.space.atoms) {
        (void)w;
        samples.push_back(pt);
      }
    } else {
      SeededRng rng(mix_seed(cfg.seed, 12));
      for (int i = 0; i < 8; ++i) samples.push_back(sys.space.draw(rng));
    }
    std::vector<State> probes;
    for (int i = 0; i < sys.cocycle.dim; ++i) {
      State e(static_cast<std::size_t>(sys.cocycle.dim), 0.0);
      e[static_cast<std::size_t>(i)] = 1.0;
      probes.push_back(std::move(e));
    }
    SeededRng rng(mix_seed(cfg.seed, 13));
    for (int i = 0; i < 4; ++i) {
      State x(static_cast<std::size_t>(sys.cocycle.dim), 0.0);
      for (double& c : x) c = rng.uniform(-1.0, 1.0);
      if (euclidean_norm(x) == 0.0) x[0] = 1.0;
      probes.push_back(std::move(x));
    }
    LawsResult laws;
    laws.semiflow = check_semiflow_laws(sys.semiflow, triples, samples, cfg.laws.tol);
    laws.cocycle = check_cocycle_laws(sys.cocycle, sys.semiflow, triples, samples, probes,
                                      cfg.laws.tol);
    if (sys.cocycle.growth)
      laws.growth = check_growth_bound(sys.cocycle, *sys.cocycle.growth, triples, samples, probes,
                                       cfg.laws.tol);
    rep.laws = std::move(laws);
  }

  if (wants("class-h")) {
    const WeightedSpace seq_space =
        WeightedSpace::sequence_lp(cfg.space_p, cfg.discrete_horizon, cfg.convergence_tol);
    const WeightedSpace fn_space =
        WeightedSpace::function_lp(cfg.space_p, cfg.continuous_horizon, cfg.convergence_tol);
    std::vector<double> inner;
    for (std::int64_t n = cfg.class_h.inner_min; n <= cfg.class_h.inner_max; ++n)
      inner.push_back(static_cast<double>(n));
    ClassHResult ch;
    ch.sequence = check_class_h(seq_space, cfg.class_h.multipliers, half_log_threshold(), inner);
    ch.function = check_class_h(fn_space, cfg.class_h.multipliers, half_log_threshold(), inner);
    rep.class_h = std::move(ch);
  }

  if (wants("growth-fit")) {
    try {
      rep.fit = fit_growth(sys.cocycle, sys.semiflow, sys.space, sys.observables.front(),
                           cfg.s_grid, cfg.fit_t_grid, budget);
    } catch (const std::domain_error& e) {
      if (cfg.strict) throw;
      rep.fit_note = e.what();
    }
  }

  if (wants("certificates")) {
    CertificatesResult certs;
    if (!sys.cocycle.growth) {
      certs.note = "no growth envelope attached; derived constants unavailable";
    } else {
      std::vector<std::int64_t> bases;
      for (std::int64_t m = 1; m <= 64; ++m) bases.push_back(m);
      const std::vector<std::int64_t> multipliers = {2, 3, 4};
      certs.contraction = find_contraction(sys.cocycle, sys.semiflow, sys.space,
                                           sys.observables.front(), multipliers, bases, budget);
      if (certs.contraction) {
        certs.decay_constants = lemma_constants_stable(*sys.cocycle.growth, *certs.contraction);
        const double onset = certs.decay_constants->onset;
        const auto pairs =
            make_decay_pairs(mix_seed(cfg.seed, 21), 1000, onset, onset * 100.0, 1000.0);
        certs.decay_check = check_stable_bound(sys.cocycle, sys.semiflow, sys.space,
                                               sys.observables.front(), *certs.decay_constants,
                                               pairs, budget);
      } else {
        certs.expansion = find_expansion(sys.cocycle, sys.semiflow, sys.space,
                                         sys.observables.front(), multipliers, cfg.s_grid, budget);
        if (certs.expansion) {
          certs.growth_constants =
              lemma_constants_unstable(*sys.cocycle.growth, *certs.expansion);
          const double onset = certs.growth_constants->onset;
          std::vector<std::pair<double, double>> pairs =
              make_expansion_pairs(mix_seed(cfg.seed, 22), 1000, onset, onset * 100.0, 1000.0);
          certs.growth_check = check_unstable_bound(sys.cocycle, sys.semiflow, sys.space,
                                                    sys.observables.front(),
                                                    *certs.growth_constants, pairs, budget);
        } else {
          certs.note = "no single-step certificate at multipliers 2, 3, 4";
        }
      }
    }
    rep.certificates = std::move(certs);
  }

  const bool any_traces = wants("datko-stability") || wants("datko-instability");
  if (any_traces) {
    std::filesystem::create_directories(out_dir / "traces", ec);
    if (ec) throw std::runtime_error("cannot create " + (out_dir / "traces").string());
  }
  const WeightedSpace seq_space =
      WeightedSpace::sequence_lp(cfg.space_p, cfg.discrete_horizon, cfg.convergence_tol);
  const WeightedSpace fn_space =
      WeightedSpace::function_lp(cfg.space_p, cfg.continuous_horizon, cfg.convergence_tol);
  const SequenceSpec seq = cfg.sequence.build();

  auto run_traces = [&](TraceKind kind, std::vector<DatkoTrace>& into) {
    for (const Observable& g : sys.observables) {
      for (double s : cfg.s_grid) {
        into.push_back(datko_trace_discrete(kind, sys.cocycle, sys.semiflow, sys.space, g, s, seq,
                                            seq_space, budget));
        into.push_back(datko_trace_continuous(kind, sys.cocycle, sys.semiflow, sys.space, g, s,
                                              fn_space, cfg.t_grid, budget));
      }
    }
  };
  if (wants("datko-stability")) run_traces(TraceKind::stability, rep.stability_traces);
  if (wants("datko-instability")) run_traces(TraceKind::instability, rep.instability_traces);
  for (const auto* group : {&rep.stability_traces, &rep.instability_traces}) {
    for (const DatkoTrace& tr : *group) {
      const std::string rel = "traces/" + detail::trace_stem(tr) + ".csv";
      detail::write_trace_csv(out_dir / rel, tr);
      rep.trace_files.push_back(rel);
      rep.files.push_back(rel);
    }
  }

  if (wants("classify")) {
    ClassifyOptions opt;
    opt.s_grid = cfg.s_grid;
    opt.sequence = seq;
    opt.exponent_p = cfg.space_p;
    opt.discrete_horizon = cfg.discrete_horizon;
    opt.continuous_horizon = cfg.continuous_horizon;
    opt.convergence_tol = cfg.convergence_tol;
    opt.injectivity_eps = cfg.injectivity_eps;
    opt.t_grid = cfg.t_grid;
    opt.fit_t_grid = cfg.fit_t_grid;
    opt.budget = budget;
    rep.verdict = classify(sys.cocycle, sys.semiflow, sys.space, sys.observables, opt);
  }

  rep.files.push_back("report.json");
  {
    std::ofstream out(out_dir / "report.json");
    if (!out) throw std::runtime_error("cannot write " + (out_dir / "report.json").string());
    out << report_to_json(rep).dump(2) << '\n';
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (cfg.strict) {
    for (const auto* group : {&rep.stability_traces, &rep.instability_traces}) {
      for (const DatkoTrace& tr : *group) {
        if (!tr.converged)
          throw std::domain_error(
              "strict: " + detail::trace_stem(tr) +
              " failed to settle under horizon doubling (norm " +
              detail::fmt_double(tr.norm_value) + " at horizon " +
              detail::fmt_double(tr.horizon) + ")");
      }
    }
  }
  return rep;
}

// --- Plot data ----------------------------------------------------------------

enum class PlotKind { traces, margins, envelope };

inline PlotKind parse_plot_kind(std::string_view name) {
  if (name == "traces") return PlotKind::traces;
  if (name == "margins") return PlotKind::margins;
  if (name == "envelope") return PlotKind::envelope;
  throw std::invalid_argument("plot kind must be 'traces', 'margins', or 'envelope'");
}

// Two-column gnuplot-style files derived from a finished run.  Each kind
// names the analysis it needs when that analysis was not requested.
inline std::vector<std::string> emit_plot_data(const RunReport& rep, PlotKind kind,
                                               const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "plots", ec);
  if (ec) throw std::runtime_error("cannot create " + (out_dir / "plots").string());
  std::vector<std::string> written;

  auto open = [&](const std::string& rel) {
    std::ofstream out(out_dir / rel);
    if (!out) throw std::runtime_error("cannot write " + (out_dir / rel).string());
    written.push_back(rel);
    return out;
  };

  if (kind == PlotKind::traces) {
    if (rep.stability_traces.empty() && rep.instability_traces.empty())
      throw std::invalid_argument(
          "plot data: no weighted traces in this run; request datko-stability or "
          "datko-instability first");
    for (const auto* group : {&rep.stability_traces, &rep.instability_traces}) {
      for (const DatkoTrace& tr : *group) {
        auto out = open("plots/trace_" + detail::trace_stem(tr) + ".dat");
        out << "# time  mean\n";
        for (const TracePoint& pt : tr.points)
          out << detail::fmt_double(pt.time) << ' ' << detail::fmt_double(pt.mean) << '\n';
      }
    }
    return written;
  }

  if (kind == PlotKind::margins) {
    if (!rep.class_h)
      throw std::invalid_argument("plot data: no admission margins in this run; request class-h "
                                  "first");
    const std::pair<const char*, const ClassHReport*> parts[] = {
        {"plots/margins_sequence.dat", &rep.class_h->sequence},
        {"plots/margins_function.dat", &rep.class_h->function}};
    for (const auto& [rel, ch] : parts) {
      auto out = open(rel);
      out << "# multiplier  margin  threshold\n";
      for (const auto& m : ch->margins)
        out << detail::fmt_double(m.multiplier) << ' ' << detail::fmt_double(m.margin) << ' '
            << detail::fmt_double(0.5 * std::log(m.multiplier)) << '\n';
    }
    return written;
  }

  if (!rep.fit)
    throw std::invalid_argument("plot data: no growth fit in this run; request growth-fit first");
  auto out = open("plots/growth_envelope.dat");
  out << "# time  envelope\n";
  for (double t : rep.config.fit_t_grid)
    out << detail::fmt_double(t) << ' '
        << detail::fmt_double(rep.fit->coefficient * std::pow(t, rep.fit->exponent)) << '\n';
  return written;
}

}  // namespace polystab
