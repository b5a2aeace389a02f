#pragma once

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polystab/runner.hpp"

namespace polystab {

// Exit codes: 0 success, 2 configuration or usage error, 3 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

namespace detail {

inline void print_run_summary(const RunReport& rep, const std::filesystem::path& out_dir,
                              std::ostream& os) {
  os << "system: " << rep.system_name << " (dim " << rep.dim << ")\n";
  for (const auto& [name, l1] : rep.observable_sizes) {
    os << "observable " << name << ": |g|_1 = " << fmt_double(l1.value);
    if (!l1.exact) os << " +/- " << fmt_double(l1.std_error);
    os << '\n';
  }
  if (rep.laws) {
    auto line = [&](const char* what, const LawReport& lr) {
      os << "laws " << what << ": max residual " << fmt_double(lr.max_residual) << " over "
         << lr.checks << " checks [" << (lr.passed ? "pass" : "FAIL") << "]\n";
    };
    line("semiflow", rep.laws->semiflow);
    line("cocycle", rep.laws->cocycle);
    if (rep.laws->growth) line("growth envelope", *rep.laws->growth);
  }
  if (rep.class_h) {
    auto line = [&](const char* what, const ClassHReport& ch) {
      os << "class-h " << what << ": final margin " << fmt_double(ch.margins.back().margin)
         << " vs threshold " << fmt_double(ch.threshold_at_last) << " ["
         << (ch.admitted ? "admitted" : "REJECTED") << "]\n";
    };
    line("sequence space", rep.class_h->sequence);
    line("function space", rep.class_h->function);
  }
  if (rep.fit)
    os << "growth fit: mean ratio ~ " << fmt_double(rep.fit->coefficient) << " * t^"
       << fmt_double(rep.fit->exponent) << " (residual " << fmt_double(rep.fit->residual)
       << ")\n";
  if (!rep.fit_note.empty()) os << "growth fit: skipped (" << rep.fit_note << ")\n";
  if (rep.certificates) {
    const auto& c = *rep.certificates;
    if (c.contraction)
      os << "certificate: contraction ratio " << fmt_double(c.contraction->ratio)
         << " at multiplier " << c.contraction->multiplier << '\n';
    if (c.decay_constants)
      os << "decay bound: exponent " << fmt_double(c.decay_constants->decay_exponent)
         << ", constant " << fmt_double(c.decay_constants->bound_constant) << ", violations "
         << c.decay_check->violations << '/' << c.decay_check->checks << '\n';
    if (c.expansion)
      os << "certificate: expansion ratio " << fmt_double(c.expansion->ratio)
         << " at multiplier " << c.expansion->multiplier << '\n';
    if (c.growth_constants)
      os << "growth bound: exponent " << fmt_double(c.growth_constants->decay_exponent)
         << ", constant " << fmt_double(c.growth_constants->bound_constant) << ", violations "
         << c.growth_check->violations << '/' << c.growth_check->checks << '\n';
    if (!c.note.empty()) os << "certificate: " << c.note << '\n';
  }
  const std::size_t traces = rep.stability_traces.size() + rep.instability_traces.size();
  if (traces > 0) {
    std::size_t settled = 0;
    for (const auto* group : {&rep.stability_traces, &rep.instability_traces})
      for (const auto& tr : *group) settled += tr.converged ? 1 : 0;
    os << "traces: " << traces << " written, " << settled << " settled under doubling\n";
  }
  if (rep.verdict) os << "verdict: " << to_string(rep.verdict->outcome) << '\n';
  os << "report: " << (out_dir / "report.json").string() << " (" << rep.files.size()
     << " files)\n";
  os << "wall: " << fmt_double(rep.wall_seconds) << " s\n";
}

}  // namespace detail

// Entry point shared by the installed binary and the test suite.
inline int cli_main(std::vector<std::string> args, std::ostream& os = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"weighted-mean stability analysis of stochastic skew-evolution semiflows"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed_override;
  bool strict_override = false;
  std::vector<std::string> plot_kinds;

  CLI::App* run = app.add_subcommand("run", "run the analyses in a configuration file");
  run->add_option("config", config_path, "path to the JSON configuration")->required();
  run->add_option("--out", out_dir, "output directory (default: out)");
  run->add_option("--seed", seed_override, "override the configured seed");
  run->add_flag("--strict", strict_override,
                "treat non-settling trace norms as numerical failures");
  run->add_option("--plot", plot_kinds, "also write plot data: traces, margins, envelope");

  CLI::App* gal = app.add_subcommand("gallery", "reference systems");
  CLI::App* gal_list = gal->add_subcommand("list", "list the reference systems");
  gal->require_subcommand(1);

  CLI::App* schema = app.add_subcommand("schema", "print the configuration JSON schema");

  try {
    // CLI11 parses argv-style vectors in reverse order.
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    os << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (gal_list->parsed()) {
      for (const auto& name : gallery_names()) {
        const GalleryEntry e = gallery(name);
        os << name << "\n    " << e.summary << '\n';
      }
      return kExitOk;
    }
    if (schema->parsed()) {
      os << config_schema_text() << '\n';
      return kExitOk;
    }

    std::ifstream in(config_path);
    if (!in) {
      err << "config error: cannot read " << config_path << '\n';
      return kExitConfig;
    }
    std::ostringstream text;
    text << in.rdbuf();
    AnalysisConfig cfg = parse_config_text(text.str());
    if (seed_override) cfg.seed = *seed_override;
    if (strict_override) cfg.strict = true;
    std::vector<PlotKind> kinds;
    for (const auto& k : plot_kinds) kinds.push_back(parse_plot_kind(k));

    const RunReport rep = run_analysis(cfg, out_dir);
    detail::print_run_summary(rep, out_dir, os);
    for (PlotKind k : kinds)
      for (const std::string& rel : emit_plot_data(rep, k, out_dir))
        os << "plot: " << (std::filesystem::path(out_dir) / rel).string() << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  (void)run;
}

inline int cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_main(std::move(args));
}

}  // namespace polystab
