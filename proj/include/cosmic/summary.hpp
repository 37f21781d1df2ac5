#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cosmic/cone_analysis.hpp"
#include "cosmic/errors.hpp"
#include "cosmic/orbit.hpp"
#include "cosmic/scenario.hpp"
#include "cosmic/vec.hpp"

namespace cosmic {

// End-of-run digest. wall_time_seconds is reported on stdout only: the
// serialized artifact must be byte-identical across reruns.
struct RunSummary {
  std::string name;
  TrichotomyVerdict verdict;
  std::optional<Vec> cosmic_limit;
  Vec v_estimate;
  std::optional<Vec> gap_estimate;
  std::optional<ConeAnalysis> cone_flags;
  std::optional<std::string> notes;
  double wall_time_seconds = 0.0;
};

inline constexpr int kSummarySchema = 1;

namespace detail {

inline Json vec_to_json(const Vec& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

inline Json cone_to_json(const Cone2& k) {
  return Json{{"kind", to_string(k.kind())}, {"start", k.start()}, {"width", k.width()}};
}

inline Cone2 cone_from_json(const Json& j, const std::string& ctx) {
  check_keys(j, {"kind", "start", "width"}, {}, ctx);
  const std::string kind = j.at("kind").get<std::string>();
  const double start = j.at("start").get<double>();
  const double width = j.at("width").get<double>();
  if (kind == "Zero") return Cone2::zero();
  if (kind == "Plane") return Cone2::plane();
  if (kind == "Ray") return Cone2::ray(start);
  if (kind == "Line") return Cone2::line(start);
  if (kind == "Sector" || kind == "Halfplane") return Cone2::sector(start, width);
  throw ParseError(ctx + ": unknown cone kind \"" + kind + "\"");
}

inline TrichotomyCase trichotomy_case_from_string(const std::string& s, const std::string& ctx) {
  if (s == "BoundedOrbit") return TrichotomyCase::BoundedOrbit;
  if (s == "DivergentSublinear") return TrichotomyCase::DivergentSublinear;
  if (s == "DivergentLinear") return TrichotomyCase::DivergentLinear;
  if (s == "Undetermined") return TrichotomyCase::Undetermined;
  throw ParseError(ctx + ": unknown trichotomy case \"" + s + "\"");
}

}  // namespace detail

inline Json summary_to_json(const RunSummary& s) {
  using detail::vec_to_json;
  Json j;
  j["schema"] = kSummarySchema;
  j["name"] = s.name;
  j["verdict"] = Json{
      {"case", to_string(s.verdict.kind)},
      {"v_estimate", vec_to_json(s.verdict.v_estimate)},
      {"diagnostics",
       Json{{"final_norm", s.verdict.diagnostics.final_norm},
            {"norm_over_n_tail", s.verdict.diagnostics.norm_over_n_tail},
            {"residual_tail", s.verdict.diagnostics.residual_tail},
            {"halving_ratio", s.verdict.diagnostics.halving_ratio},
            {"growing", s.verdict.diagnostics.growing}}},
      {"thresholds",
       Json{{"bounded_norm_cap", s.verdict.thresholds.bounded_norm_cap},
            {"linear_rate_threshold", s.verdict.thresholds.linear_rate_threshold},
            {"growth_window", s.verdict.thresholds.growth_window}}},
  };
  j["cosmic_limit"] = s.cosmic_limit ? vec_to_json(*s.cosmic_limit) : Json(nullptr);
  j["v_estimate"] = vec_to_json(s.v_estimate);
  j["gap_estimate"] = s.gap_estimate ? vec_to_json(*s.gap_estimate) : Json(nullptr);
  if (s.cone_flags) {
    j["cone_flags"] = Json{
        {"R", detail::cone_to_json(s.cone_flags->R)},
        {"R_polar_plus", detail::cone_to_json(s.cone_flags->R_polar_plus)},
        {"cluster_cone", detail::cone_to_json(s.cone_flags->cluster_cone)},
        {"is_ray_R", s.cone_flags->is_ray_R},
        {"is_ray_cluster", s.cone_flags->is_ray_cluster},
        {"R_is_subspace", s.cone_flags->R_is_subspace},
    };
  } else {
    j["cone_flags"] = Json(nullptr);
  }
  if (s.notes) j["notes"] = *s.notes;
  return j;
}

// Strict reader: schema must match and unknown fields are rejected.
inline RunSummary summary_from_json(const Json& j) {
  using detail::check_keys;
  check_keys(j, {"schema", "name", "verdict", "cosmic_limit", "v_estimate", "gap_estimate",
                 "cone_flags"},
             {"notes"}, "summary");
  if (!j.at("schema").is_number_integer() || j.at("schema").get<int>() != kSummarySchema) {
    throw ParseError("summary: unsupported schema version");
  }
  RunSummary s;
  s.name = j.at("name").get<std::string>();

  const Json& v = j.at("verdict");
  check_keys(v, {"case", "v_estimate", "diagnostics", "thresholds"}, {}, "summary.verdict");
  s.verdict.kind = detail::trichotomy_case_from_string(v.at("case").get<std::string>(),
                                                       "summary.verdict");
  s.verdict.v_estimate = detail::parse_vec(v.at("v_estimate"), "summary.verdict.v_estimate");
  const Json& d = v.at("diagnostics");
  check_keys(d, {"final_norm", "norm_over_n_tail", "residual_tail", "halving_ratio", "growing"},
             {}, "summary.verdict.diagnostics");
  s.verdict.diagnostics.final_norm = d.at("final_norm").get<double>();
  s.verdict.diagnostics.norm_over_n_tail = d.at("norm_over_n_tail").get<double>();
  s.verdict.diagnostics.residual_tail = d.at("residual_tail").get<double>();
  s.verdict.diagnostics.halving_ratio = d.at("halving_ratio").get<double>();
  s.verdict.diagnostics.growing = d.at("growing").get<bool>();
  const Json& th = v.at("thresholds");
  check_keys(th, {"bounded_norm_cap", "linear_rate_threshold", "growth_window"}, {},
             "summary.verdict.thresholds");
  s.verdict.thresholds.bounded_norm_cap = th.at("bounded_norm_cap").get<double>();
  s.verdict.thresholds.linear_rate_threshold = th.at("linear_rate_threshold").get<double>();
  s.verdict.thresholds.growth_window = th.at("growth_window").get<std::size_t>();

  if (!j.at("cosmic_limit").is_null()) {
    s.cosmic_limit = detail::parse_vec(j.at("cosmic_limit"), "summary.cosmic_limit");
  }
  s.v_estimate = detail::parse_vec(j.at("v_estimate"), "summary.v_estimate");
  if (!j.at("gap_estimate").is_null()) {
    s.gap_estimate = detail::parse_vec(j.at("gap_estimate"), "summary.gap_estimate");
  }
  if (!j.at("cone_flags").is_null()) {
    const Json& c = j.at("cone_flags");
    check_keys(c, {"R", "R_polar_plus", "cluster_cone", "is_ray_R", "is_ray_cluster",
                   "R_is_subspace"},
               {}, "summary.cone_flags");
    ConeAnalysis ca{
        detail::cone_from_json(c.at("R"), "summary.cone_flags.R"),
        detail::cone_from_json(c.at("R_polar_plus"), "summary.cone_flags.R_polar_plus"),
        detail::cone_from_json(c.at("cluster_cone"), "summary.cone_flags.cluster_cone"),
        c.at("is_ray_R").get<bool>(),
        c.at("is_ray_cluster").get<bool>(),
        c.at("R_is_subspace").get<bool>(),
    };
    s.cone_flags = ca;
  }
  if (j.contains("notes")) s.notes = j.at("notes").get<std::string>();
  return s;
}

}  // namespace cosmic
