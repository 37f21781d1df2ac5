#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "cosmic/csv.hpp"
#include "cosmic/errors.hpp"
#include "cosmic/orbit.hpp"
#include "cosmic/scenario.hpp"
#include "cosmic/summary.hpp"
#include "cosmic/svg.hpp"

namespace cosmic {

namespace detail {

inline void collect_projector_sets(const OperatorSpec& spec, std::vector<SetDescriptor>& out) {
  if (spec.kind == OperatorSpec::Kind::Projector && spec.set) out.push_back(*spec.set);
  if (spec.kind == OperatorSpec::Kind::AlternatingProjections) {
    if (spec.ap_a) out.push_back(*spec.ap_a);
    if (spec.ap_b) out.push_back(*spec.ap_b);
  }
  for (const OperatorSpec& c : spec.children) collect_projector_sets(c, out);
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

}  // namespace detail

// Runs one scenario and writes <name>.orbit.csv / <name>.svg /
// <name>.summary.json into out_dir (per the scenario's output flags).
inline RunSummary run_scenario(const Scenario& s, const std::filesystem::path& out_dir,
                               std::optional<std::size_t> steps_override = std::nullopt) {
  validate_scenario(s);
  const std::size_t steps = steps_override.value_or(s.n_steps);
  if (steps < 1) throw ValidationError("n_steps must be >= 1");

  const auto t_start = std::chrono::steady_clock::now();

  std::vector<OrbitRecord> orbit;
  std::vector<Vec> a_seq;
  RunSummary summary;
  summary.name = s.name;
  summary.notes = s.notes;

  if (s.op.kind == OperatorSpec::Kind::AlternatingProjections) {
    APResult ap = alternating_projections(*s.op.ap_a, *s.op.ap_b, s.x0, steps, s.tol.zero_tol,
                                          s.tol.proj_tol);
    orbit = std::move(ap.b_orbit);
    a_seq = std::move(ap.a_seq);
    summary.gap_estimate = ap.gap_estimate;
    summary.cone_flags = ap.cones;
  } else {
    const Operator op = build_operator(s.op, s.dim, s.tol);
    orbit = iterate(op, s.x0, steps, s.tol.zero_tol);
  }

  summary.verdict = classify_trichotomy(orbit);
  try {
    summary.v_estimate = estimate_v(orbit, s.tol.tail_fraction);
  } catch (const OrbitTooShortError&) {
    summary.v_estimate = summary.verdict.v_estimate;
  }
  summary.cosmic_limit = detect_cosmic_limit(orbit, s.tol.window, s.tol.dir_tol).limit;

  summary.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

  std::filesystem::create_directories(out_dir);
  if (s.outputs.csv) {
    detail::write_file(out_dir / (s.name + ".orbit.csv"), orbit_csv(orbit));
  }
  if (s.outputs.svg && s.dim == 2) {
    std::vector<SetDescriptor> sets;
    detail::collect_projector_sets(s.op, sets);
    detail::write_file(out_dir / (s.name + ".svg"),
                       render_svg(sets, orbit, a_seq, summary.cosmic_limit));
  }
  if (s.outputs.summary) {
    detail::write_file(out_dir / (s.name + ".summary.json"), summary_to_json(summary).dump(2) + "\n");
  }
  return summary;
}

}  // namespace cosmic
