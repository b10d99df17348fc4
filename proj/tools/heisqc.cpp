// heisqc: moduli, extremal maps, verification suites and lift problems from the command line.
// JSON report on stdout, diagnostics on stderr, CSV to files.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "heisqc/heisqc.hpp"
#include "heisqc/io.hpp"

namespace {

using heisqc::cplx;
using heisqc::ErrorCode;
using heisqc::HPoint;
using nlohmann::json;

constexpr double kPi = std::numbers::pi;

enum Exit { kOk = 0, kCheckFailed = 1, kSchema = 2, kNumeric = 3, kBadModuli = 4, kNoSolution = 5, kNonUnique = 6 };

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnknownFamily:
    case ErrorCode::UnknownName: return kSchema;
    case ErrorCode::BadModuli: return kBadModuli;
    case ErrorCode::NoSolution:
    case ErrorCode::Incompatible: return kNoSolution;
    case ErrorCode::NonUnique: return kNonUnique;
    default: return kNumeric;
  }
}

double rel_err(double v, double ref) { return std::abs(v - ref) / std::abs(ref); }

void emit(json report, std::chrono::steady_clock::time_point start) {
  report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << report.dump(2) << '\n';
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

std::ofstream open_csv(const std::filesystem::path& p) {
  std::ofstream os(p);
  if (!os) throw heisqc::Error(ErrorCode::InvalidArgument, "cannot write " + p.string());
  return os;
}

// ---- modulus ----

struct ModulusArgs {
  std::string family;
  std::optional<double> a, b;
  int grid = 64;
  int n_lambda = 16;
  int n_s = 256;
  double tol_adm = heisqc::kTolAdm;
  double tol_energy = 1e-3;
};

json cmd_modulus(const ModulusArgs& args) {
  std::map<std::string, double> params;
  if (args.a) params["a"] = *args.a;
  if (args.b) params["b"] = *args.b;
  const auto cf = heisqc::closed_form_modulus(args.family, params);

  double energy;
  heisqc::ModulusReport rep;
  if (cf.extremal.kind == heisqc::DensityKind::plane) {
    energy = heisqc::density_energy_plane(cf.extremal, {args.grid, args.grid});
    rep = heisqc::admissibility_min(cf.extremal, *cf.plane_family, args.n_lambda, args.n_s, args.tol_adm);
  } else {
    energy = heisqc::density_energy_heis(cf.extremal, {args.grid, args.grid, args.grid});
    rep = heisqc::admissibility_min(cf.extremal, *cf.foliation, args.n_lambda, args.n_lambda, args.n_s, args.tol_adm);
  }
  rep.energy = energy;
  const double err = rel_err(energy, cf.modulus);

  json r;
  r["command"] = "modulus";
  r["family"] = args.family;
  r["params"] = params;
  r["closed_form"] = cf.modulus;
  r["energy"] = energy;
  r["energy_rel_error"] = err;
  r["report"] = heisqc::io::to_json(rep);
  r["admissibility_error"] = std::abs(rep.min_curve_integral - 1.0);
  r["tolerances"] = {{"tol_energy", args.tol_energy}, {"tol_adm", args.tol_adm}};
  r["grid"] = {{"n", args.grid}, {"n_lambda", args.n_lambda}, {"n_s", args.n_s}};
  r["pass"] = err <= args.tol_energy && rep.admissible;
  return r;
}

// ---- shared map setup for map / verify ----

struct MapArgs {
  std::string kind;
  double a = 1.0, b = 1.0, ap = 1.0, bp = 2.0;
  double alpha = 0.0;
  double k = 0.5;
  bool annuli_a_set = false;
};

// Everything the checks need for one named map.
struct MapCase {
  heisqc::QCMap f;
  heisqc::Density rho;        // extremal density on the source
  double expected_energy = 0;  // modulus of the target family
  heisqc::Density rho_plane;   // plane density with rho = Pi^* rho_plane
  heisqc::PlaneMap g;          // Pi o f = g o Pi
  heisqc::Foliation foliation;
  json params;
};

MapCase make_case(const MapArgs& m) {
  MapCase c;
  if (m.kind == "cylinder") {
    c.f = heisqc::cylinder_extremal_map(m.a, m.b, m.ap, m.bp, m.alpha);
    const auto cf = heisqc::closed_form_modulus("cylinder_horizontal", {{"a", m.a}, {"b", m.b}});
    c.rho = cf.extremal;
    c.foliation = *cf.foliation;
    c.expected_energy = heisqc::closed_form_modulus("cylinder_horizontal", {{"a", m.ap}, {"b", m.bp}}).modulus;
    c.rho_plane = heisqc::closed_form_modulus("rectangle_horizontal", {{"a", m.a}, {"b", m.b}}).extremal;
    c.g = heisqc::plane_minimizer_gphi(m.a, m.b, m.ap, m.bp, heisqc::cylinder_extremal_profile(m.a, m.b, m.ap, m.bp));
    c.params = {{"a", m.a}, {"b", m.b}, {"ap", m.ap}, {"bp", m.bp}, {"alpha", m.alpha}};
  } else if (m.kind == "identity") {
    c.f = heisqc::identity_map(heisqc::domain::Cylinder{m.a, m.b});
    const auto cf = heisqc::closed_form_modulus("cylinder_horizontal", {{"a", m.a}, {"b", m.b}});
    c.rho = cf.extremal;
    c.foliation = *cf.foliation;
    c.expected_energy = cf.modulus;
    c.rho_plane = heisqc::closed_form_modulus("rectangle_horizontal", {{"a", m.a}, {"b", m.b}}).extremal;
    c.g = heisqc::PlaneMap{"identity", [](cplx w) { return w; }, [](cplx) { return cplx(1.0, 0.0); },
                           [](cplx) { return cplx(0.0, 0.0); }};
    c.params = {{"a", m.a}, {"b", m.b}};
  } else if (m.kind == "annuli") {
    const double a = m.annuli_a_set ? m.a : 2.0;
    c.f = heisqc::spherical_annuli_map(a, m.k);
    const auto cf = heisqc::closed_form_modulus("annulus_radial", {{"a", a}});
    c.rho = cf.extremal;
    c.foliation = *cf.foliation;
    c.expected_energy = heisqc::closed_form_modulus("annulus_radial", {{"a", std::pow(a, m.k)}}).modulus;
    c.rho_plane = heisqc::annulus_plane_density(a);
    c.g = heisqc::annuli_plane_map(m.k);
    c.params = {{"a", a}, {"k", m.k}};
  } else {
    throw heisqc::Error(ErrorCode::InvalidArgument, "unknown map '" + m.kind + "' (cylinder, identity, annuli)");
  }
  return c;
}

// ---- map ----

struct MapCmdArgs {
  MapArgs map;
  int grid = 32;
  int samples = 1000;
  unsigned seed = 1;
  std::string csv;
};

json cmd_map(const MapCmdArgs& args) {
  if (args.map.kind == "identity") throw heisqc::Error(ErrorCode::InvalidArgument, "map supports cylinder and annuli");
  const MapCase c = make_case(args.map);
  std::vector<HPoint> pts;
  if (args.map.kind == "cylinder") {
    // closed grid up to the rim, where the distortion peaks
    const int n = std::max(2, static_cast<int>(std::cbrt(static_cast<double>(args.samples))));
    for (int i = 1; i <= n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l <= n; ++l)
          pts.emplace_back(std::polar(std::sqrt(args.map.b) * i / n, 2.0 * kPi * j / n), args.map.a * l / n);
  } else {
    pts = heisqc::sample_interior(c.f.source, static_cast<std::size_t>(args.samples), args.seed);
  }
  const auto ks = heisqc::num::parallel_map(pts.size(), [&](std::size_t i) { return heisqc::distortion_K(c.f, pts[i]); });
  const double k_max = *std::max_element(ks.begin(), ks.end());
  const double k_min = *std::min_element(ks.begin(), ks.end());
  const double md = heisqc::mean_distortion(c.f, c.rho, {args.grid, args.grid, args.grid});

  json r;
  r["command"] = "map";
  r["map"] = args.map.kind;
  r["params"] = c.params;
  r["n_samples"] = pts.size();
  r["K_max"] = k_max;
  r["K_min"] = k_min;
  r["mean_distortion"] = md;
  r["mean_distortion_expected"] = c.expected_energy;
  r["mean_distortion_rel_error"] = rel_err(md, c.expected_energy);
  if (args.map.kind == "annuli") {
    double worst = 0.0;
    for (const auto& p : pts)
      worst = std::max(worst, std::abs(heisqc::heis_norm(c.f(p)) - std::pow(heisqc::heis_norm(p), args.map.k)));
    r["norm_residual"] = worst;
  } else {
    const double ratio = args.map.a * args.map.bp / (args.map.ap * args.map.b);
    r["K_max_expected"] = ratio * ratio;
  }
  if (!args.csv.empty()) {
    auto os = open_csv(args.csv);
    heisqc::io::write_map_csv(os, c.f, pts);
    r["csv"] = args.csv;
  }
  return r;
}

// ---- verify ----

struct VerifyArgs {
  MapArgs map;
  std::string checks = "contact,pushforward,meandist,commutation";
  int grid = 32;
  int samples = 1000;
  unsigned seed = 1;
  int n_lambda = 16;
  int n_s = 256;
  double tol_contact = 1e-6;
  double tol_energy = 1e-3;
  double tol_comm = 1e-6;
  double tol_adm = heisqc::kTolAdm;
};

json cmd_verify(const VerifyArgs& args) {
  const auto names = split(args.checks, ',');
  if (names.empty()) throw heisqc::Error(ErrorCode::InvalidArgument, "no checks requested");
  for (const auto& n : names)
    if (n != "contact" && n != "pushforward" && n != "meandist" && n != "commutation" && n != "admissibility")
      throw heisqc::Error(ErrorCode::InvalidArgument,
                          "unknown check '" + n + "' (contact, pushforward, meandist, commutation, admissibility)");
  const MapCase c = make_case(args.map);
  const auto pts = heisqc::sample_interior(c.f.source, static_cast<std::size_t>(args.samples), args.seed);
  const heisqc::Grid3 grid{args.grid, args.grid, args.grid};

  json r;
  r["command"] = "verify";
  r["map"] = args.map.kind;
  r["params"] = c.params;
  r["checks"] = json::object();
  bool all = true;
  auto record = [&](const std::string& name, json entry, bool pass) {
    entry["pass"] = pass;
    r["checks"][name] = entry;
    all = all && pass;
  };
  for (const auto& n : names) {
    if (n == "contact") {
      const auto res = heisqc::num::parallel_map(pts.size(), [&](std::size_t i) { return heisqc::contact_residual(c.f, pts[i]); });
      const double worst = *std::max_element(res.begin(), res.end());
      record(n, {{"residual", worst}, {"tol", args.tol_contact}}, worst <= args.tol_contact);
    } else if (n == "pushforward") {
      const double e = heisqc::push_forward_energy(c.rho, c.f, grid);
      const double err = rel_err(e, c.expected_energy);
      record(n, {{"energy", e}, {"expected", c.expected_energy}, {"rel_error", err}, {"tol", args.tol_energy}},
             err <= args.tol_energy);
    } else if (n == "meandist") {
      const double md = heisqc::mean_distortion(c.f, c.rho, grid);
      const double err = rel_err(md, c.expected_energy);
      record(n, {{"mean_distortion", md}, {"expected", c.expected_energy}, {"rel_error", err}, {"tol", args.tol_energy}},
             err <= args.tol_energy);
    } else if (n == "commutation") {
      const double res = heisqc::commutation_residual(c.rho_plane, c.g, c.f, pts);
      record(n, {{"residual", res}, {"tol", args.tol_comm}}, res <= args.tol_comm);
    } else {
      const auto rep = heisqc::admissibility_min(c.rho, c.foliation, args.n_lambda, args.n_lambda, args.n_s, args.tol_adm);
      record(n, heisqc::io::to_json(rep), rep.admissible);
    }
  }
  r["n_samples"] = pts.size();
  r["pass"] = all;
  return r;
}

// ---- lift ----

struct LiftArgs {
  std::string config;
  std::string out_dir;
  double alpha = 0.0;
  int grid_s = 64;
  int grid_x = 65;
  int samples = 1000;
  unsigned seed = 1;
  double tol_mixed = heisqc::kTolMixed;
  double tol_comm = 1e-6;
  double tol_contact = 1e-5;
  double tol_reference = 1e-6;
};

json cmd_lift(const LiftArgs& args) {
  std::ifstream in(args.config);
  if (!in) throw heisqc::Error(ErrorCode::InvalidArgument, "cannot read " + args.config);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::parse_error& e) {
    throw heisqc::Error(ErrorCode::InvalidArgument, std::string("config is not valid JSON: ") + e.what());
  }
  const heisqc::LiftProblem prob = heisqc::io::lift_problem_from_json(cfg);
  prob.validate();

  json r;
  r["command"] = "lift";
  r["problem"] = heisqc::io::to_json(prob);
  const auto cphi = heisqc::compatibility_check(prob.phi, prob.a, prob.b);
  const auto cpsi = heisqc::compatibility_check(prob.psi, prob.a_p, prob.b_p);
  r["compatibility"] = {{"phi", {{"ok", cphi.ok}, {"max_s_variation", cphi.max_s_variation}}},
                        {"psi", {{"ok", cpsi.ok}, {"max_s_variation", cpsi.max_s_variation}}}};

  const auto prof = heisqc::profile_ode_solve(prob);
  r["profile"] = {{"anchor", prof.anchor},
                  {"min_slope_margin", prof.min_slope_margin},
                  {"left_mismatch", prof.left_mismatch},
                  {"right_mismatch", prof.right_mismatch}};
  const auto hpot = heisqc::theta_potential_build(prob, prof, {args.grid_s, args.grid_x}, args.tol_mixed);
  r["potential"] = {{"mixed_residual", hpot.mixed_residual}, {"tol_mixed", args.tol_mixed}};

  const auto f = heisqc::assemble_lift(prob, prof, hpot, args.alpha);
  const auto pts = heisqc::sample_interior(f.source, static_cast<std::size_t>(args.samples), args.seed);
  const double comm = heisqc::verify_commutation(f, prob, prof, pts);
  const auto cres = heisqc::num::parallel_map(pts.size(), [&](std::size_t i) { return heisqc::contact_residual(f, pts[i]); });
  const double contact = *std::max_element(cres.begin(), cres.end());
  bool pass = hpot.mixed_residual <= args.tol_mixed && comm <= args.tol_comm && contact <= args.tol_contact;
  r["checks"] = {{"commutation", comm}, {"contact", contact}, {"tol_comm", args.tol_comm}, {"tol_contact", args.tol_contact}};

  // cross-check against the closed-form maps when the problem is one of them
  std::optional<std::pair<heisqc::ProfileFn, heisqc::QCMap>> ref;
  const std::string pn = prob.phi.name, qn = prob.psi.name;
  if (pn == "identity" && qn == "identity" && prob.a * prob.b_p / (prob.a_p * prob.b) > 1.0) {
    ref.emplace(heisqc::cylinder_extremal_profile(prob.a, prob.b, prob.a_p, prob.b_p),
                heisqc::cylinder_extremal_map(prob.a, prob.b, prob.a_p, prob.b_p, args.alpha));
  } else if (pn == "exp" && qn == "exp" && std::abs(prob.b - kPi) < 1e-12 && std::abs(prob.b_p - kPi) < 1e-12 &&
             prob.a_p < prob.a) {
    const double k = prob.a_p / prob.a;
    heisqc::ProfileFn pf{[k](double x) { return kPi / 2.0 - std::atan(std::cos(x) / (k * std::sin(x))); }, {}};
    heisqc::QCMap m = heisqc::spherical_annuli_map(std::exp(prob.a / 2.0), k);
    m.eval = [inner = m.eval, e = std::polar(1.0, args.alpha)](const HPoint& p) {
      const HPoint q = inner(p);
      return HPoint(e * q.z(), q.t());
    };
    ref.emplace(pf, m);
  }
  if (ref) {
    double perr = 0.0;
    for (int i = 1; i < 1000; ++i) {
      const double x = prob.b * i / 1000.0;
      perr = std::max(perr, std::abs(prof(x) - ref->first.value(x)));
    }
    double merr = 0.0;
    for (const auto& p : pts) {
      const HPoint u = f(p), v = ref->second(p);
      merr = std::max(merr, std::abs(u.z() - v.z()) + std::abs(u.t() - v.t()));
    }
    r["reference"] = {{"map", ref->second.name}, {"profile_error", perr}, {"map_error", merr}, {"tol", args.tol_reference}};
    pass = pass && perr <= args.tol_reference && merr <= args.tol_reference;
  }

  if (!args.out_dir.empty()) {
    const std::filesystem::path dir(args.out_dir);
    std::filesystem::create_directories(dir);
    auto p1 = open_csv(dir / "profile.csv");
    heisqc::io::write_profile_csv(p1, prof, 1000);
    auto p2 = open_csv(dir / "potential.csv");
    heisqc::io::write_potential_csv(p2, hpot);
    auto p3 = open_csv(dir / "map.csv");
    heisqc::io::write_map_csv(p3, f, pts);
    r["csv"] = {(dir / "profile.csv").string(), (dir / "potential.csv").string(), (dir / "map.csv").string()};
  }
  r["n_samples"] = pts.size();
  r["pass"] = pass;
  return r;
}

void add_map_params(CLI::App* sub, MapArgs& m) {
  sub->add_option("--a", m.a, "source height a (annuli: outer radius)")->check(CLI::PositiveNumber);
  sub->add_option("--b", m.b, "source squared radius b")->check(CLI::PositiveNumber);
  sub->add_option("--ap", m.ap, "target height a'")->check(CLI::PositiveNumber);
  sub->add_option("--bp", m.bp, "target squared radius b'")->check(CLI::PositiveNumber);
  sub->add_option("--alpha", m.alpha, "rotation angle");
  sub->add_option("--k", m.k, "annuli exponent, 0 < k < 1");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extremal quasiconformal maps on the Heisenberg group"};
  app.require_subcommand(1);

  ModulusArgs ma;
  auto* mod = app.add_subcommand("modulus", "closed-form modulus, extremal density energy and admissibility");
  mod->add_option("--family", ma.family, "cylinder_horizontal | rectangle_horizontal | cylinder_vertical | annulus_radial")
      ->required();
  mod->add_option("--a", ma.a, "first family parameter");
  mod->add_option("--b", ma.b, "second family parameter");
  mod->add_option("--grid", ma.grid, "quadrature nodes per axis")->check(CLI::Range(4, 4096));
  mod->add_option("--n-lambda", ma.n_lambda, "foliation parameters per axis")->check(CLI::Range(1, 4096));
  mod->add_option("--n-s", ma.n_s, "samples per curve")->check(CLI::Range(2, 1 << 20));
  mod->add_option("--tol-adm", ma.tol_adm, "admissibility tolerance")->check(CLI::PositiveNumber);
  mod->add_option("--tol-energy", ma.tol_energy, "relative energy tolerance")->check(CLI::PositiveNumber);

  MapCmdArgs mc;
  auto* map = app.add_subcommand("map", "sample an extremal map, write CSV, report distortion");
  map->add_option("kind", mc.map.kind, "cylinder | annuli")->required();
  add_map_params(map, mc.map);
  map->add_option("--grid", mc.grid, "mean-distortion quadrature nodes per axis")->check(CLI::Range(4, 4096));
  map->add_option("--samples", mc.samples, "number of sample points")->check(CLI::Range(1, 1 << 24));
  map->add_option("--seed", mc.seed, "sampling seed");
  map->add_option("--csv", mc.csv, "CSV output path (re_z, im_z, t, re_f1, im_f1, f2, K)");

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "run a verification suite on a named map");
  ver->add_option("--map", va.map.kind, "cylinder | identity | annuli")->required();
  ver->add_option("--checks", va.checks, "comma list of contact, pushforward, meandist, commutation, admissibility");
  add_map_params(ver, va.map);
  ver->add_option("--grid", va.grid, "quadrature nodes per axis")->check(CLI::Range(4, 4096));
  ver->add_option("--samples", va.samples, "number of sample points")->check(CLI::Range(1, 1 << 24));
  ver->add_option("--seed", va.seed, "sampling seed");
  ver->add_option("--n-lambda", va.n_lambda, "foliation parameters per axis")->check(CLI::Range(1, 4096));
  ver->add_option("--n-s", va.n_s, "samples per curve")->check(CLI::Range(2, 1 << 20));
  ver->add_option("--tol-contact", va.tol_contact, "contact residual tolerance")->check(CLI::PositiveNumber);
  ver->add_option("--tol-energy", va.tol_energy, "relative energy tolerance")->check(CLI::PositiveNumber);
  ver->add_option("--tol-comm", va.tol_comm, "commutation tolerance")->check(CLI::PositiveNumber);
  ver->add_option("--tol-adm", va.tol_adm, "admissibility tolerance")->check(CLI::PositiveNumber);

  LiftArgs la;
  auto* lift = app.add_subcommand("lift", "solve a lift problem end to end");
  lift->add_option("--config", la.config, "JSON lift problem")->required();
  lift->add_option("--out-dir", la.out_dir, "directory for profile.csv, potential.csv, map.csv");
  lift->add_option("--alpha", la.alpha, "rotation angle of the assembled map");
  lift->add_option("--grid-s", la.grid_s, "potential grid nodes in s")->check(CLI::Range(2, 1 << 16));
  lift->add_option("--grid-x", la.grid_x, "potential grid nodes in x (odd)")->check(CLI::Range(3, 1 << 16));
  lift->add_option("--samples", la.samples, "number of sample points")->check(CLI::Range(1, 1 << 24));
  lift->add_option("--seed", la.seed, "sampling seed");
  lift->add_option("--tol-mixed", la.tol_mixed, "mixed-partial tolerance")->check(CLI::PositiveNumber);
  lift->add_option("--tol-comm", la.tol_comm, "commutation tolerance")->check(CLI::PositiveNumber);
  lift->add_option("--tol-contact", la.tol_contact, "contact residual tolerance")->check(CLI::PositiveNumber);
  lift->add_option("--tol-reference", la.tol_reference, "closed-form cross-check tolerance")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kSchema;
  }
  mc.map.annuli_a_set = map->count("--a") > 0;
  va.map.annuli_a_set = ver->count("--a") > 0;

  const auto start = std::chrono::steady_clock::now();
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    json r;
    if (name == "modulus") r = cmd_modulus(ma);
    else if (name == "map") r = cmd_map(mc);
    else if (name == "verify") r = cmd_verify(va);
    else r = cmd_lift(la);
    const bool pass = r.value("pass", true);
    emit(std::move(r), start);
    if (name == "verify" || name == "lift") return pass ? kOk : kCheckFailed;
    return kOk;
  } catch (const heisqc::Error& e) {
    std::cerr << "heisqc " << name << ": " << e.what() << '\n';
    emit({{"command", name}, {"error", std::string(heisqc::to_string(e.code()))}, {"message", e.what()}}, start);
    return exit_code(e.code());
  }
}
