#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cosmic/errors.hpp"
#include "cosmic/operators.hpp"
#include "cosmic/scalar_fn.hpp"
#include "cosmic/sets.hpp"
#include "cosmic/vec.hpp"

namespace cosmic {

using Json = nlohmann::ordered_json;

struct ScalarFnSpec {
  enum class Kind { ReciprocalPos, ExpNeg };
  Kind kind = Kind::ExpNeg;
  double c = 1.0;  // ReciprocalPos scale
};

inline ScalarConvexFn build_scalar_fn(const ScalarFnSpec& s) {
  switch (s.kind) {
    case ScalarFnSpec::Kind::ReciprocalPos: return ScalarConvexFn::reciprocal_pos(s.c);
    case ScalarFnSpec::Kind::ExpNeg: return ScalarConvexFn::exp_neg();
  }
  throw DomainError("unknown scalar function kind");
}

// Tagged operator blueprint mirroring the operator constructors. Flat
// payload; which fields are meaningful depends on `kind`.
struct OperatorSpec {
  enum class Kind {
    Identity,
    Translation,
    Projector,
    Composition,
    ProxLifted,
    ProxScalar1D,
    LiftedResolvent,
    ProxExpRatio,
    AlternatingProjections,
  };

  Kind kind = Kind::Identity;
  Vec offset;                            // Translation
  std::optional<SetDescriptor> set;      // Projector
  std::vector<OperatorSpec> children;    // Composition
  Vec direction;                         // ProxLifted
  std::optional<ScalarFnSpec> f;         // ProxLifted / ProxScalar1D
  std::vector<Vec> basis;                // LiftedResolvent
  std::shared_ptr<OperatorSpec> inner;   // LiftedResolvent
  std::optional<SetDescriptor> ap_a;     // AlternatingProjections
  std::optional<SetDescriptor> ap_b;
};

struct Tolerances {
  double prox_tol = 1e-12;
  double proj_tol = 1e-12;
  double zero_tol = 1e-14;
  double dir_tol = 1e-6;
  std::size_t window = 200;
  double tail_fraction = 0.2;
};

struct OutputFlags {
  bool csv = true;
  bool svg = true;  // honored only in dimension 2
  bool summary = true;
};

struct Scenario {
  std::string name;
  std::string description;
  std::size_t dim = 2;
  OperatorSpec op;
  Vec x0;
  std::size_t n_steps = 1;
  Tolerances tol;
  OutputFlags outputs;
  std::optional<std::string> notes;  // carried into the summary (e.g. conjectural flags)
};

// Builds the evaluable operator. For AlternatingProjections this returns
// T = P_B o P_A, the map whose orbit the driver produces as (b_n).
inline Operator build_operator(const OperatorSpec& spec, std::size_t dim, const Tolerances& tol) {
  switch (spec.kind) {
    case OperatorSpec::Kind::Identity:
      return identity_op(dim);
    case OperatorSpec::Kind::Translation:
      if (spec.offset.dim() != dim) throw ValidationError("translation offset dimension mismatch");
      return translation_op(spec.offset);
    case OperatorSpec::Kind::Projector:
      if (!spec.set) throw ValidationError("projector spec needs a set");
      if (set_dim(*spec.set) != dim) throw ValidationError("projector set dimension mismatch");
      return projector_op(*spec.set, tol.proj_tol);
    case OperatorSpec::Kind::Composition: {
      if (spec.children.empty()) throw ValidationError("composition needs at least one operator");
      std::vector<Operator> ops;
      ops.reserve(spec.children.size());
      for (const OperatorSpec& c : spec.children) ops.push_back(build_operator(c, dim, tol));
      return compose(std::move(ops));
    }
    case OperatorSpec::Kind::ProxLifted:
      if (!spec.f) throw ValidationError("prox_lifted spec needs a scalar function");
      if (spec.direction.dim() != dim) throw ValidationError("prox_lifted direction dimension mismatch");
      return lift_prox_along_direction(spec.direction, build_scalar_fn(*spec.f), tol.prox_tol);
    case OperatorSpec::Kind::ProxScalar1D:
      if (!spec.f) throw ValidationError("prox_scalar spec needs a scalar function");
      if (dim != 1) throw ValidationError("prox_scalar operator lives in dimension 1");
      return prox_op_1d(build_scalar_fn(*spec.f), tol.prox_tol);
    case OperatorSpec::Kind::LiftedResolvent: {
      if (!spec.inner) throw ValidationError("lifted_resolvent spec needs an inner operator");
      if (spec.basis.empty()) throw ValidationError("lifted_resolvent spec needs a basis");
      for (const Vec& b : spec.basis) {
        if (b.dim() != dim) throw ValidationError("lifted_resolvent basis dimension mismatch");
      }
      Operator inner = build_operator(*spec.inner, spec.basis.size(), tol);
      return lifted_resolvent(spec.basis, std::move(inner));
    }
    case OperatorSpec::Kind::ProxExpRatio:
      if (dim != 2) throw ValidationError("prox_exp_ratio lives in dimension 2");
      return prox_exp_ratio_op(tol.prox_tol);
    case OperatorSpec::Kind::AlternatingProjections: {
      if (!spec.ap_a || !spec.ap_b) throw ValidationError("alternating_projections needs sets A and B");
      if (set_dim(*spec.ap_a) != dim || set_dim(*spec.ap_b) != dim) {
        throw ValidationError("alternating_projections set dimension mismatch");
      }
      return compose({projector_op(*spec.ap_b, tol.proj_tol), projector_op(*spec.ap_a, tol.proj_tol)});
    }
  }
  throw ValidationError("unknown operator kind");
}

// ---------------------------------------------------------------------------
// Strict JSON parsing. Unknown keys are errors: silent key typos are the
// classic way to run a different experiment than the one on disk.

namespace detail {

inline void check_keys(const Json& j, const std::vector<std::string>& required,
                       const std::vector<std::string>& optional, const std::string& ctx) {
  if (!j.is_object()) throw ParseError(ctx + ": expected a JSON object");
  for (const std::string& k : required) {
    if (!j.contains(k)) throw ParseError(ctx + ": missing required key \"" + k + "\"");
  }
  for (const auto& item : j.items()) {
    const std::string& k = item.key();
    const bool known = std::find(required.begin(), required.end(), k) != required.end() ||
                       std::find(optional.begin(), optional.end(), k) != optional.end();
    if (!known) throw ParseError(ctx + ": unknown key \"" + k + "\"");
  }
}

inline double get_number(const Json& j, const std::string& key, const std::string& ctx) {
  if (!j.at(key).is_number()) throw ParseError(ctx + ": \"" + key + "\" must be a number");
  return j.at(key).get<double>();
}

inline Vec parse_vec(const Json& j, const std::string& ctx) {
  if (!j.is_array() || j.empty()) throw ParseError(ctx + ": expected a nonempty number array");
  std::vector<double> xs;
  xs.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw ParseError(ctx + ": expected numbers");
    xs.push_back(v.get<double>());
  }
  try {
    return Vec(std::move(xs));
  } catch (const Error& e) {
    throw ParseError(ctx + ": " + e.what());
  }
}

inline SetDescriptor parse_set(const Json& j, const std::string& ctx) {
  check_keys(j, {"type"}, {"normal", "offset", "basis", "lo", "hi", "center", "radius", "c", "rows"},
             ctx);
  const std::string type = j.at("type").get<std::string>();
  try {
    if (type == "halfspace") {
      check_keys(j, {"type", "normal", "offset"}, {}, ctx);
      return HalfspaceSet(parse_vec(j.at("normal"), ctx + ".normal"), get_number(j, "offset", ctx));
    }
    if (type == "hyperplane") {
      check_keys(j, {"type", "normal", "offset"}, {}, ctx);
      return HyperplaneSet(parse_vec(j.at("normal"), ctx + ".normal"), get_number(j, "offset", ctx));
    }
    if (type == "affine_subspace") {
      check_keys(j, {"type", "basis", "offset"}, {}, ctx);
      std::vector<Vec> basis;
      for (const auto& b : j.at("basis")) basis.push_back(parse_vec(b, ctx + ".basis"));
      return AffineSubspaceSet(std::move(basis), parse_vec(j.at("offset"), ctx + ".offset"));
    }
    if (type == "box") {
      check_keys(j, {"type", "lo", "hi"}, {}, ctx);
      return BoxSet(parse_vec(j.at("lo"), ctx + ".lo"), parse_vec(j.at("hi"), ctx + ".hi"));
    }
    if (type == "ball") {
      check_keys(j, {"type", "center", "radius"}, {}, ctx);
      return BallSet(parse_vec(j.at("center"), ctx + ".center"), get_number(j, "radius", ctx));
    }
    if (type == "epigraph_reciprocal") {
      check_keys(j, {"type", "c"}, {}, ctx);
      return EpigraphReciprocalSet(get_number(j, "c", ctx));
    }
    if (type == "polyhedron") {
      check_keys(j, {"type", "rows"}, {}, ctx);
      std::vector<HRow> rows;
      std::size_t d = 0;
      for (const auto& r : j.at("rows")) {
        check_keys(r, {"normal", "offset"}, {}, ctx + ".rows[]");
        Vec n = parse_vec(r.at("normal"), ctx + ".rows[].normal");
        d = n.dim();
        rows.push_back({std::move(n), get_number(r, "offset", ctx + ".rows[]")});
      }
      if (rows.empty()) throw ParseError(ctx + ": polyhedron needs at least one row");
      return PolyhedronH(d, std::move(rows));
    }
  } catch (const DomainError& e) {
    throw ValidationError(ctx + ": " + e.what());
  } catch (const DimensionMismatchError& e) {
    throw ValidationError(ctx + ": " + e.what());
  }
  throw ParseError(ctx + ": unknown set type \"" + type + "\"");
}

inline ScalarFnSpec parse_scalar_fn(const Json& j, const std::string& ctx) {
  check_keys(j, {"type"}, {"c"}, ctx);
  const std::string type = j.at("type").get<std::string>();
  ScalarFnSpec s;
  if (type == "reciprocal_pos") {
    check_keys(j, {"type", "c"}, {}, ctx);
    s.kind = ScalarFnSpec::Kind::ReciprocalPos;
    s.c = get_number(j, "c", ctx);
    if (!(s.c > 0)) throw ValidationError(ctx + ": reciprocal_pos needs c > 0");
    return s;
  }
  if (type == "exp_neg") {
    check_keys(j, {"type"}, {}, ctx);
    s.kind = ScalarFnSpec::Kind::ExpNeg;
    return s;
  }
  throw ParseError(ctx + ": unknown scalar function type \"" + type + "\"");
}

inline OperatorSpec parse_operator(const Json& j, const std::string& ctx) {
  check_keys(j, {"type"},
             {"offset", "set", "operators", "direction", "f", "basis", "inner", "A", "B"}, ctx);
  const std::string type = j.at("type").get<std::string>();
  OperatorSpec spec;
  if (type == "identity") {
    check_keys(j, {"type"}, {}, ctx);
    spec.kind = OperatorSpec::Kind::Identity;
  } else if (type == "translation") {
    check_keys(j, {"type", "offset"}, {}, ctx);
    spec.kind = OperatorSpec::Kind::Translation;
    spec.offset = parse_vec(j.at("offset"), ctx + ".offset");
  } else if (type == "projector") {
    check_keys(j, {"type", "set"}, {}, ctx);
    spec.kind = OperatorSpec::Kind::Projector;
    spec.set = parse_set(j.at("set"), ctx + ".set");
  } else if (type == "composition") {
    check_keys(j, {"type", "operators"}, {}, ctx);
    spec.kind = OperatorSpec::Kind::Composition;
    if (!j.at("operators").is_array() || j.at("operators").empty()) {
      throw ParseError(ctx + ": composition needs a nonempty operator array");
    }
    for (const auto& c : j.at("operators")) {
      spec.children.push_back(parse_operator(c, ctx + ".operators[]"));
    }
  } else if (type == "prox_lifted") {
    check_keys(j, {"type", "direction", "f"}, {}, ctx);
    spec.kind = OperatorSpec::Kind::ProxLifted;
    spec.direction = parse_vec(j.at("direction"), ctx + ".direction");
    spec.f = parse_scalar_fn(j.at("f"), ctx + ".f");
  } else if (type == "prox_scalar") {
    check_keys(j, {"type", "f"}, {}, ctx);
    spec.kind = OperatorSpec::Kind::ProxScalar1D;
    spec.f = parse_scalar_fn(j.at("f"), ctx + ".f");
  } else if (type == "lifted_resolvent") {
    check_keys(j, {"type", "basis", "inner"}, {}, ctx);
    spec.kind = OperatorSpec::Kind::LiftedResolvent;
    for (const auto& b : j.at("basis")) spec.basis.push_back(parse_vec(b, ctx + ".basis"));
    spec.inner = std::make_shared<OperatorSpec>(parse_operator(j.at("inner"), ctx + ".inner"));
  } else if (type == "prox_exp_ratio") {
    check_keys(j, {"type"}, {}, ctx);
    spec.kind = OperatorSpec::Kind::ProxExpRatio;
  } else if (type == "alternating_projections") {
    check_keys(j, {"type", "A", "B"}, {}, ctx);
    spec.kind = OperatorSpec::Kind::AlternatingProjections;
    spec.ap_a = parse_set(j.at("A"), ctx + ".A");
    spec.ap_b = parse_set(j.at("B"), ctx + ".B");
  } else {
    throw ParseError(ctx + ": unknown operator type \"" + type + "\"");
  }
  return spec;
}

}  // namespace detail

inline Scenario parse_scenario_json(const Json& j) {
  using detail::check_keys;
  check_keys(j, {"name", "dim", "operator", "x0", "n_steps"},
             {"tolerances", "outputs", "description", "notes"}, "scenario");
  Scenario s;
  s.name = j.at("name").get<std::string>();
  if (s.name.empty()) throw ValidationError("scenario: name must be nonempty");
  if (!j.at("dim").is_number_unsigned()) throw ParseError("scenario: \"dim\" must be a count");
  s.dim = j.at("dim").get<std::size_t>();
  s.op = detail::parse_operator(j.at("operator"), "scenario.operator");
  s.x0 = detail::parse_vec(j.at("x0"), "scenario.x0");
  if (!j.at("n_steps").is_number_unsigned()) throw ParseError("scenario: \"n_steps\" must be a count");
  s.n_steps = j.at("n_steps").get<std::size_t>();
  if (j.contains("description")) s.description = j.at("description").get<std::string>();
  if (j.contains("notes")) s.notes = j.at("notes").get<std::string>();
  if (j.contains("tolerances")) {
    const Json& t = j.at("tolerances");
    check_keys(t, {}, {"prox_tol", "proj_tol", "zero_tol", "dir_tol", "window", "tail_fraction"},
               "scenario.tolerances");
    if (t.contains("prox_tol")) s.tol.prox_tol = detail::get_number(t, "prox_tol", "tolerances");
    if (t.contains("proj_tol")) s.tol.proj_tol = detail::get_number(t, "proj_tol", "tolerances");
    if (t.contains("zero_tol")) s.tol.zero_tol = detail::get_number(t, "zero_tol", "tolerances");
    if (t.contains("dir_tol")) s.tol.dir_tol = detail::get_number(t, "dir_tol", "tolerances");
    if (t.contains("window")) {
      if (!t.at("window").is_number_unsigned()) throw ParseError("tolerances: \"window\" must be a count");
      s.tol.window = t.at("window").get<std::size_t>();
    }
    if (t.contains("tail_fraction")) {
      s.tol.tail_fraction = detail::get_number(t, "tail_fraction", "tolerances");
    }
  }
  if (j.contains("outputs")) {
    const Json& o = j.at("outputs");
    check_keys(o, {}, {"csv", "svg", "summary"}, "scenario.outputs");
    if (o.contains("csv")) s.outputs.csv = o.at("csv").get<bool>();
    if (o.contains("svg")) s.outputs.svg = o.at("svg").get<bool>();
    if (o.contains("summary")) s.outputs.summary = o.at("summary").get<bool>();
  }
  return s;
}

// Validates invariants beyond raw parsing, including a dry operator build.
inline void validate_scenario(const Scenario& s) {
  if (s.dim < 1) throw ValidationError("scenario: dim must be >= 1");
  if (s.n_steps < 1) throw ValidationError("scenario: n_steps must be >= 1");
  if (s.x0.dim() != s.dim) throw ValidationError("scenario: x0 dimension differs from dim");
  if (!(s.tol.prox_tol > 0) || !(s.tol.proj_tol > 0) || !(s.tol.zero_tol > 0) ||
      !(s.tol.dir_tol > 0)) {
    throw ValidationError("scenario: tolerances must be positive");
  }
  if (s.tol.window < 2) throw ValidationError("scenario: window must be >= 2");
  if (!(s.tol.tail_fraction > 0 && s.tol.tail_fraction <= 1)) {
    throw ValidationError("scenario: tail_fraction must lie in (0, 1]");
  }
  if (s.outputs.svg && s.dim != 2) {
    throw ValidationError("scenario: svg output is only available in dimension 2");
  }
  try {
    (void)build_operator(s.op, s.dim, s.tol);
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError(std::string("scenario operator: ") + e.what());
  }
}

inline Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed JSON in " + path + ": " + e.what());
  }
  return parse_scenario_json(j);
}

// ---------------------------------------------------------------------------
// Built-in scenarios. These reconstruct the library's flagship experiments
// with exactly computable geometry.

inline const std::vector<Scenario>& builtin_scenarios() {
  static const std::vector<Scenario> builtins = [] {
    std::vector<Scenario> v;

    {
      Scenario s;
      s.name = "example-recip";
      s.description =
          "Prox iteration of F(x) = 1/(x1+x2) on {x1+x2>0}: the lifted scalar prox of "
          "f(t) = 1/(sqrt(2) t) along a = (1,1)/sqrt(2); normalized iterates drift to a.";
      s.dim = 2;
      s.op.kind = OperatorSpec::Kind::ProxLifted;
      s.op.direction = Vec{1.0, 1.0}.normalized();
      s.op.f = ScalarFnSpec{ScalarFnSpec::Kind::ReciprocalPos, 1.0 / std::sqrt(2.0)};
      s.x0 = Vec{5.0, -3.0};
      s.n_steps = 10000;
      v.push_back(std::move(s));
    }
    {
      Scenario s;
      s.name = "example-expratio";
      s.description =
          "Prox iteration of F(x) = exp(x1)/x2 on {x2>0}; the normalized iterates appear "
          "to approach (-1,0), which remains a conjecture.";
      s.dim = 2;
      s.op.kind = OperatorSpec::Kind::ProxExpRatio;
      s.x0 = Vec{0.0, 1.0};
      s.n_steps = 100000;
      s.notes =
          "conjectural: the observed drift of Q_n toward (-1,0) is numerical evidence only; "
          "no proof of convergence is known for this operator";
      v.push_back(std::move(s));
    }
    {
      Scenario s;
      s.name = "ap-epigraph";
      s.description =
          "Alternating projections between A = {x2 <= 0} and B = {x1 > 0, x2 >= 1/x1}: "
          "disjoint with unattained distance 0, so the orbit escapes along the ray (1,0).";
      s.dim = 2;
      s.op.kind = OperatorSpec::Kind::AlternatingProjections;
      s.op.ap_a = HalfspaceSet(Vec{0.0, 1.0}, 0.0);
      s.op.ap_b = EpigraphReciprocalSet(1.0);
      s.x0 = Vec{0.0, 2.0};
      s.n_steps = 100000;
      v.push_back(std::move(s));
    }
    {
      Scenario s;
      s.name = "ap-parallel-halfplanes";
      s.description =
          "Alternating projections between the parallel halfplanes {x2 <= 0} and {x2 >= 1}: "
          "distance 1 is attained, the orbit stalls at a nearest pair, gap -> (0,1).";
      s.dim = 2;
      s.op.kind = OperatorSpec::Kind::AlternatingProjections;
      s.op.ap_a = HalfspaceSet(Vec{0.0, 1.0}, 0.0);
      s.op.ap_b = HalfspaceSet(Vec{0.0, -1.0}, -1.0);
      s.x0 = Vec{3.0, 2.0};
      s.n_steps = 100;
      v.push_back(std::move(s));
    }
    {
      Scenario s;
      s.name = "translation-1-0";
      s.description = "Translation by (1,0): the textbook linear-rate orbit, v = (-1,0).";
      s.dim = 2;
      s.op.kind = OperatorSpec::Kind::Translation;
      s.op.offset = Vec{1.0, 0.0};
      s.x0 = Vec{0.0, 5.0};
      s.n_steps = 1000;
      v.push_back(std::move(s));
    }
    {
      Scenario s;
      s.name = "prox-expneg-1d";
      s.description =
          "Scalar prox iteration of f(t) = exp(-t) from 0: strictly increasing, sublinear, "
          "normalized iterates -> +1.";
      s.dim = 1;
      s.op.kind = OperatorSpec::Kind::ProxScalar1D;
      s.op.f = ScalarFnSpec{ScalarFnSpec::Kind::ExpNeg, 0.0};
      s.x0 = Vec{0.0};
      s.n_steps = 100000;
      s.outputs.svg = false;
      v.push_back(std::move(s));
    }
    {
      Scenario s;
      s.name = "identity-smoke";
      s.description = "Identity map smoke test: constant orbit, constant direction.";
      s.dim = 2;
      s.op.kind = OperatorSpec::Kind::Identity;
      s.x0 = Vec{1.0, 1.0};
      s.n_steps = 10;
      s.tol.window = 8;
      v.push_back(std::move(s));
    }

    return v;
  }();
  return builtins;
}

inline const Scenario* find_builtin(const std::string& name) {
  for (const Scenario& s : builtin_scenarios()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

}  // namespace cosmic
