// cosmic: scenario-driven runner for nonexpansive-operator orbit experiments.
//
// Subcommands:
//   run <scenario.json | builtin>   iterate, classify, detect, emit artifacts
//   list                            show the built-in scenarios
//   check <scenario.json | builtin> validate a scenario without running it
//
// Exit codes: 0 success, 2 validation/parse error, 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cosmic/run.hpp"

namespace {

cosmic::Scenario resolve_scenario(const std::string& ref) {
  if (std::filesystem::exists(ref)) return cosmic::load_scenario_file(ref);
  if (const cosmic::Scenario* b = cosmic::find_builtin(ref)) return *b;
  throw cosmic::ParseError("no scenario file or builtin named \"" + ref + "\" (try `list`)");
}

int exit_code_for(const cosmic::Error& e) {
  if (dynamic_cast<const cosmic::NoConvergenceError*>(&e) ||
      dynamic_cast<const cosmic::BracketFailureError*>(&e) ||
      dynamic_cast<const cosmic::FixedPointDetectedError*>(&e)) {
    return 3;
  }
  return 2;
}

std::string vec_str(const std::optional<cosmic::Vec>& v) {
  return v ? v->str() : std::string("(none)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cosmic: orbits of nonexpansive operators, their Pazy classification,\n"
               "and cosmic-convergence diagnostics"};
  app.require_subcommand(1);

  std::string scenario_ref;
  std::string out_dir = ".";
  std::optional<std::size_t> steps_override;
  std::uint64_t seed = 0;

  CLI::App* run = app.add_subcommand("run", "run a scenario and emit CSV/JSON/SVG artifacts");
  run->add_option("scenario", scenario_ref, "scenario file or builtin name")->required();
  run->add_option("--out", out_dir, "output directory (default: current directory)");
  std::size_t steps_raw = 0;
  CLI::Option* steps_opt = run->add_option("--steps", steps_raw, "override the scenario's n_steps");
  run->add_option("--seed", seed,
                  "seed for property-check utilities; orbit runs are deterministic and ignore it");

  CLI::App* list = app.add_subcommand("list", "list built-in scenarios");

  CLI::App* check = app.add_subcommand("check", "validate a scenario without running it");
  check->add_option("scenario", scenario_ref, "scenario file or builtin name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const cosmic::Scenario& s : cosmic::builtin_scenarios()) {
        std::printf("%-24s %s\n", s.name.c_str(), s.description.c_str());
      }
      return 0;
    }
    if (check->parsed()) {
      const cosmic::Scenario s = resolve_scenario(scenario_ref);
      cosmic::validate_scenario(s);
      std::printf("OK: %s (dim %zu, %zu steps)\n", s.name.c_str(), s.dim, s.n_steps);
      return 0;
    }
    if (run->parsed()) {
      if (steps_opt->count() > 0) steps_override = steps_raw;
      const cosmic::Scenario s = resolve_scenario(scenario_ref);
      const cosmic::RunSummary sum = cosmic::run_scenario(s, out_dir, steps_override);
      std::printf("scenario:     %s\n", sum.name.c_str());
      std::printf("verdict:      %s\n", cosmic::to_string(sum.verdict.kind));
      std::printf("cosmic limit: %s\n", vec_str(sum.cosmic_limit).c_str());
      std::printf("v estimate:   %s\n", sum.v_estimate.str().c_str());
      if (sum.gap_estimate) std::printf("gap estimate: %s\n", sum.gap_estimate->str().c_str());
      if (sum.cone_flags) {
        std::printf("cones:        R = %s, cluster = %s, is_ray = %s\n",
                    sum.cone_flags->R.str().c_str(), sum.cone_flags->cluster_cone.str().c_str(),
                    sum.cone_flags->is_ray_cluster ? "yes" : "no");
      }
      if (sum.notes) std::printf("notes:        %s\n", sum.notes->c_str());
      std::printf("wall time:    %.3f s\n", sum.wall_time_seconds);
      return 0;
    }
  } catch (const cosmic::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 3;
  }
  return 0;
}
