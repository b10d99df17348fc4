#ifndef HEISQC_IO_HPP
#define HEISQC_IO_HPP

#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "heisqc/curves.hpp"
#include "heisqc/error.hpp"
#include "heisqc/lift_builder.hpp"
#include "heisqc/modulus.hpp"
#include "heisqc/qcmaps.hpp"

namespace heisqc::io {

using nlohmann::json;

/// {energy, min_curve_integral, argmin: [l1, l2], admissible}; energy is null when not computed.
inline json to_json(const ModulusReport& r) {
  json j;
  j["energy"] = r.energy ? json(*r.energy) : json(nullptr);
  j["min_curve_integral"] = r.min_curve_integral;
  j["argmin"] = {r.argmin[0], r.argmin[1]};
  j["admissible"] = r.admissible;
  return j;
}

inline json to_json(const Biholomorphism& f) {
  json j;
  j["name"] = f.name;
  j["params"] = json::object();
  for (const auto& [k, v] : f.params) j["params"][k] = v;
  return j;
}

inline json to_json(const LiftProblem& p) {
  return {{"a", p.a},
          {"b", p.b},
          {"a_p", p.a_p},
          {"b_p", p.b_p},
          {"phi", to_json(p.phi)},
          {"psi", to_json(p.psi)},
          {"ode", {{"n_steps", p.ode.n_steps}, {"tol_bvp", p.ode.tol_bvp}, {"tol_slope", p.ode.tol_slope}}}};
}

namespace detail {

inline double positive_number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw Error(ErrorCode::InvalidArgument, std::string("field '") + key + "' must be a number");
  const double v = j.at(key).get<double>();
  if (!(std::isfinite(v) && v > 0.0)) throw Error(ErrorCode::InvalidArgument, std::string("field '") + key + "' must be positive");
  return v;
}

inline Biholomorphism biholomorphism_from_json(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_object())
    throw Error(ErrorCode::InvalidArgument, std::string("field '") + key + "' must be an object");
  const json& f = j.at(key);
  if (!f.contains("name") || !f.at("name").is_string())
    throw Error(ErrorCode::InvalidArgument, std::string(key) + ".name must be a string");
  std::map<std::string, double> params;
  if (f.contains("params")) {
    if (!f.at("params").is_object()) throw Error(ErrorCode::InvalidArgument, std::string(key) + ".params must be an object");
    for (const auto& [k, v] : f.at("params").items()) {
      if (!v.is_number()) throw Error(ErrorCode::InvalidArgument, std::string(key) + ".params." + k + " must be a number");
      params[k] = v.get<double>();
    }
  }
  return builtin_biholomorphism(f.at("name").get<std::string>(), params);
}

}  // namespace detail

/// Parses {a, b, a_p, b_p, phi: {name, params}, psi: {name, params}, ode: {n_steps, tol_bvp, tol_slope}};
/// `ode` and its fields are optional. Schema violations throw InvalidArgument, unknown names UnknownName.
inline LiftProblem lift_problem_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "lift problem must be a JSON object");
  LiftProblem p;
  p.a = detail::positive_number(j, "a");
  p.b = detail::positive_number(j, "b");
  p.a_p = detail::positive_number(j, "a_p");
  p.b_p = detail::positive_number(j, "b_p");
  p.phi = detail::biholomorphism_from_json(j, "phi");
  p.psi = detail::biholomorphism_from_json(j, "psi");
  if (j.contains("ode")) {
    const json& o = j.at("ode");
    if (!o.is_object()) throw Error(ErrorCode::InvalidArgument, "field 'ode' must be an object");
    if (o.contains("n_steps")) {
      if (!o.at("n_steps").is_number_integer() || o.at("n_steps").get<long>() < 4)
        throw Error(ErrorCode::InvalidArgument, "ode.n_steps must be an integer >= 4");
      p.ode.n_steps = o.at("n_steps").get<int>();
    }
    if (o.contains("tol_bvp")) p.ode.tol_bvp = detail::positive_number(o, "tol_bvp");
    if (o.contains("tol_slope")) p.ode.tol_slope = detail::positive_number(o, "tol_slope");
  }
  return p;
}

inline void set_precision(std::ostream& os) { os << std::setprecision(17); }

/// Rows s, Re z, Im z, t at n + 1 uniform parameters.
inline void write_curve_csv(std::ostream& os, const HorizontalCurve& c, int n) {
  set_precision(os);
  os << "s,re_z,im_z,t\n";
  for (int i = 0; i <= n; ++i) {
    const double s = c.s0 + (c.s1 - c.s0) * i / n;
    const HPoint p = c(s);
    os << s << ',' << p.z().real() << ',' << p.z().imag() << ',' << p.t() << '\n';
  }
}

/// Rows Re z, Im z, t, Re f1, Im f1, f2, K.
inline void write_map_csv(std::ostream& os, const QCMap& f, const std::vector<HPoint>& samples) {
  set_precision(os);
  os << "re_z,im_z,t,re_f1,im_f1,f2,K\n";
  for (const auto& p : samples) {
    const HPoint q = f(p);
    os << p.z().real() << ',' << p.z().imag() << ',' << p.t() << ',' << q.z().real() << ',' << q.z().imag() << ','
       << q.t() << ',' << distortion_K(f, p) << '\n';
  }
}

/// Rows x, varphi, slope at n + 1 uniform abscissae of [0, b].
inline void write_profile_csv(std::ostream& os, const Profile& prof, int n) {
  set_precision(os);
  os << "x,varphi,slope\n";
  for (int i = 0; i <= n; ++i) {
    const double x = prof.b() * i / n;
    os << x << ',' << prof(x) << ',' << prof.slope(x) << '\n';
  }
}

/// Rows s, x, h over the potential grid.
inline void write_potential_csv(std::ostream& os, const ThetaPotential& tp) {
  set_precision(os);
  os << "s,x,h\n";
  for (std::size_t i = 0; i < tp.s.size(); ++i)
    for (std::size_t j = 0; j < tp.x.size(); ++j) os << tp.s[i] << ',' << tp.x[j] << ',' << tp.grid_value(i, j) << '\n';
}

}  // namespace heisqc::io

#endif  // HEISQC_IO_HPP
