#pragma once

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "cosmic/errors.hpp"
#include "cosmic/orbit.hpp"
#include "cosmic/vec.hpp"

namespace cosmic {

namespace detail {

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void append_vec_fields(std::string& out, const std::optional<Vec>& v, std::size_t dim) {
  for (std::size_t i = 0; i < dim; ++i) {
    out += ',';
    if (v) out += fmt17((*v)[i]);
  }
}

}  // namespace detail

// Fixed schema: n,x_1..x_d,norm,q_1..q_d,x_over_n_1..d,step_1..d with LF line
// endings; 17 significant digits, so reading the file reproduces the records
// exactly. Undefined q/x_over_n/step fields are left empty, never zero-filled.
inline std::string orbit_csv(const std::vector<OrbitRecord>& orbit) {
  if (orbit.empty()) throw DomainError("orbit_csv: empty orbit");
  const std::size_t d = orbit.front().x.dim();
  std::string out = "n";
  for (std::size_t i = 1; i <= d; ++i) out += ",x_" + std::to_string(i);
  out += ",norm";
  for (std::size_t i = 1; i <= d; ++i) out += ",q_" + std::to_string(i);
  for (std::size_t i = 1; i <= d; ++i) out += ",x_over_n_" + std::to_string(i);
  for (std::size_t i = 1; i <= d; ++i) out += ",step_" + std::to_string(i);
  out += '\n';
  for (const OrbitRecord& r : orbit) {
    out += std::to_string(r.n);
    detail::append_vec_fields(out, r.x, d);
    out += ',';
    out += detail::fmt17(r.norm);
    detail::append_vec_fields(out, r.q, d);
    detail::append_vec_fields(out, r.x_over_n, d);
    detail::append_vec_fields(out, r.step, d);
    out += '\n';
  }
  return out;
}

inline std::vector<OrbitRecord> parse_orbit_csv(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.size() < 2) throw ParseError("orbit csv: need a header and at least one row");

  auto split = [](const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    return fields;
  };

  const std::vector<std::string> header = split(lines[0]);
  if (header.size() < 6 || (header.size() - 2) % 4 != 0) {
    throw ParseError("orbit csv: unexpected column count in header");
  }
  const std::size_t d = (header.size() - 2) / 4;
  if (header[0] != "n" || header[1 + d] != "norm" || header[1] != "x_1") {
    throw ParseError("orbit csv: unexpected header names");
  }

  auto parse_opt_vec = [&](const std::vector<std::string>& f, std::size_t from) {
    std::optional<Vec> v;
    bool any = false, all = true;
    std::vector<double> xs(d);
    for (std::size_t i = 0; i < d; ++i) {
      if (f[from + i].empty()) {
        all = false;
      } else {
        any = true;
        xs[i] = std::strtod(f[from + i].c_str(), nullptr);
      }
    }
    if (any && !all) throw ParseError("orbit csv: partially filled vector field");
    if (all) v = Vec(std::move(xs));
    return v;
  };

  std::vector<OrbitRecord> orbit;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::vector<std::string> f = split(lines[li]);
    if (f.size() != header.size()) throw ParseError("orbit csv: ragged row " + std::to_string(li));
    OrbitRecord r;
    r.n = static_cast<std::size_t>(std::strtoull(f[0].c_str(), nullptr, 10));
    std::vector<double> xs(d);
    for (std::size_t i = 0; i < d; ++i) xs[i] = std::strtod(f[1 + i].c_str(), nullptr);
    r.x = Vec(std::move(xs));
    r.norm = std::strtod(f[1 + d].c_str(), nullptr);
    r.q = parse_opt_vec(f, 2 + d);
    r.x_over_n = parse_opt_vec(f, 2 + 2 * d);
    r.step = parse_opt_vec(f, 2 + 3 * d);
    orbit.push_back(std::move(r));
  }
  return orbit;
}

}  // namespace cosmic
