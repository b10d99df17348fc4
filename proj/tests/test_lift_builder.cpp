#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "heisqc/heisqc.hpp"

using namespace heisqc;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no heisqc::Error thrown";
  return ErrorCode::InvalidArgument;
}

LiftProblem cylinder_problem() {
  LiftProblem p;
  p.a = 1;
  p.b = 1;
  p.a_p = 1;
  p.b_p = 2;
  return p;
}

// exp/exp on (0, 2 ln A) x (0, pi) -> (0, 2k ln A) x (0, pi).
LiftProblem annuli_problem(double A, double k) {
  LiftProblem p;
  p.a = 2 * std::log(A);
  p.b = kPi;
  p.a_p = k * p.a;
  p.b_p = kPi;
  p.phi = builtin_biholomorphism("exp");
  p.psi = builtin_biholomorphism("exp");
  return p;
}

// Independent oracle: cot varphi = cot(x) / k.
double annuli_profile(double x, double k) { return kPi / 2 - std::atan(std::cos(x) / (k * std::sin(x))); }

struct Built {
  LiftProblem prob;
  Profile prof;
  ThetaPotential pot;
  QCMap f;
};

Built build(const LiftProblem& prob, double alpha = 0.0) {
  Built b{prob, profile_ode_solve(prob), {}, {}};
  b.pot = theta_potential_build(prob, b.prof);
  b.f = assemble_lift(prob, b.prof, b.pot, alpha);
  return b;
}

const Built& cylinder() {
  static const Built b = build(cylinder_problem());
  return b;
}

const Built& annuli() {
  static const Built b = build(annuli_problem(2.0, 0.5));
  return b;
}

// Contact map Cylinder(1,1) -> Cylinder(1,2) with f2 = F(t), F(t) = t + eps sin(m pi t) / (m pi):
// f1 = z sqrt(F' / (1 - 2|z|^2 H')) e^{iH}, H = t/2 - F/4.
QCMap contact_competitor(double eps, int m) {
  const double w = m * kPi;
  auto F = [=](double t) { return t + eps * std::sin(w * t) / w; };
  auto dF = [=](double t) { return 1 + eps * std::cos(w * t); };
  QCMap f;
  f.name = "competitor";
  f.source = domain::Cylinder{1, 1};
  f.target = domain::Cylinder{1, 2};
  f.eval = [=](const HPoint& p) {
    const double t = p.t(), u = std::norm(p.z());
    const double Hp = 0.5 * (1 - 0.5 * dF(t));
    const double H = 0.5 * t - 0.25 * F(t);
    return HPoint(p.z() * std::sqrt(dF(t) / (1 - 2 * u * Hp)) * std::polar(1.0, H), F(t));
  };
  return f;
}

Density rho0() { return closed_form_modulus("cylinder_horizontal", {{"a", 1.0}, {"b", 1.0}}).extremal; }

}  // namespace

TEST(Compatibility, BuiltinsPassCustomFails) {
  EXPECT_TRUE(compatibility_check(builtin_biholomorphism("identity"), 1, 1).ok);
  EXPECT_TRUE(compatibility_check(builtin_biholomorphism("exp"), 2, kPi).ok);
  EXPECT_TRUE(compatibility_check(builtin_biholomorphism("affine", {{"c", 2.0}, {"d_re", 1.0}}), 1, 1).ok);
  Biholomorphism sq;
  sq.eval = [](cplx w) { return w * w; };
  sq.deriv = [](cplx w) { return 2.0 * w; };
  const auto r = compatibility_check(sq, 1, 1);
  EXPECT_FALSE(r.ok);
  EXPECT_GT(r.max_s_variation, 0.1);
  auto prob = cylinder_problem();
  prob.psi = sq;
  EXPECT_EQ(code_of([&] { profile_ode_solve(prob); }), ErrorCode::Incompatible);
}

TEST(Profile, CylinderMatchesClosedForm) {
  const auto& p = cylinder().prof;
  const auto oracle = cylinder_extremal_profile(1, 1, 1, 2);
  for (int i = 0; i <= 100; ++i) {
    const double x = i / 100.0;
    EXPECT_NEAR(p(x), 2 * x / (2 - x), 1e-6);
    EXPECT_NEAR(p(x), oracle.value(x), 1e-6);
  }
  EXPECT_GE(p.min_slope_margin, -1e-6);
  EXPECT_LE(std::abs(p.left_mismatch), 1e-5);
  EXPECT_LE(std::abs(p.right_mismatch), 1e-5);
}

TEST(Profile, AnnuliMatchesArccot) {
  const auto& p = annuli().prof;
  EXPECT_NEAR(p(kPi / 4), 0.4636476, 1e-6);
  for (int i = 1; i < 100; ++i) {
    const double x = kPi * i / 100;
    EXPECT_NEAR(p(x), annuli_profile(x, 0.5), 1e-6);
  }
}

TEST(Profile, PerturbedAnchorBreaksConstraints) {
  const auto prob = cylinder_problem();
  const double anchor = cylinder().prof.anchor;
  EXPECT_NEAR(anchor, 2.0 / 3.0, 1e-6);
  for (double d : {-0.05, 0.05}) {
    const auto tr = profile_trajectory(prob, anchor + d);
    const bool ends_off = std::abs(tr.left) > 1e-3 || std::abs(tr.right - prob.b_p) > 1e-3;
    EXPECT_TRUE(tr.min_slope_margin < 0.0 || ends_off || tr.blew_up);
  }
}

TEST(Profile, TranslateHasNoSolution) {
  LiftProblem prob = cylinder_problem();
  prob.phi = builtin_biholomorphism("translate_i");
  prob.psi = builtin_biholomorphism("translate_i");
  EXPECT_EQ(code_of([&] { profile_ode_solve(prob); }), ErrorCode::NoSolution);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 1; i < 64; ++i) {
    const auto tr = profile_trajectory(prob, prob.b_p * i / 64.0);
    best = std::min(best, std::max(std::abs(tr.left), std::abs(tr.right - prob.b_p)));
  }
  EXPECT_GT(best, 0.1);
}

TEST(Profile, InvalidProblems) {
  auto prob = cylinder_problem();
  prob.a = -1;
  EXPECT_EQ(code_of([&] { profile_ode_solve(prob); }), ErrorCode::InvalidArgument);
  prob = cylinder_problem();
  prob.ode.n_steps = 2;
  EXPECT_EQ(code_of([&] { profile_ode_solve(prob); }), ErrorCode::InvalidArgument);
}

TEST(Potential, CylinderIsLinearInS) {
  const auto& tp = cylinder().pot;
  EXPECT_LE(tp.mixed_residual, 1e-6);
  for (std::size_t i = 0; i < tp.s.size(); ++i)
    for (std::size_t j = 0; j < tp.x.size(); ++j) EXPECT_NEAR(tp.grid_value(i, j), tp.s[i] / 4, 1e-6);
  EXPECT_NEAR(tp.at(0.7, 0.2), 0.175, 1e-6);
}

TEST(Potential, AnnuliDependsOnXOnly) {
  const auto& tp = annuli().pot;
  EXPECT_LE(tp.mixed_residual, 1e-6);
  for (double s : {0.1, 0.7, 1.3})
    for (double x : {0.3, 1.0, kPi / 2, 2.5})
      EXPECT_NEAR(tp.at(s, x), 0.5 * (annuli_profile(x, 0.5) - x), 1e-6);
}

TEST(Potential, GridValidation) {
  EXPECT_EQ(code_of([] { theta_potential_build(cylinder_problem(), cylinder().prof, {64, 64}); }),
            ErrorCode::InvalidArgument);
}

TEST(Assemble, CylinderAgreesWithClosedForm) {
  const auto ref = cylinder_extremal_map(1, 1, 1, 2, 0.0);
  const auto& f = cylinder().f;
  for (const auto& p : sample_interior(ref.source, 500, 21)) {
    const HPoint x = f(p), y = ref(p);
    EXPECT_NEAR(std::abs(x.z() - y.z()), 0.0, 1e-8);
    EXPECT_NEAR(x.t(), y.t(), 1e-8);
  }
}

TEST(Assemble, AnnuliAgreesWithClosedForm) {
  const auto ref = spherical_annuli_map(2.0, 0.5);
  const auto& f = annuli().f;
  for (const auto& p : sample_interior(ref.source, 500, 22)) {
    const HPoint x = f(p), y = ref(p);
    EXPECT_NEAR(std::abs(x.z() - y.z()), 0.0, 1e-6);
    EXPECT_NEAR(x.t(), y.t(), 1e-6);
  }
}

TEST(Assemble, ContactAndShadowIdentity) {
  for (const Built* b : {&cylinder(), &annuli()}) {
    const auto pts = sample_interior(b->f.source, 300, 23);
    double contact = 0.0, norm_gap = 0.0;
    for (const auto& p : pts) {
      contact = std::max(contact, contact_residual(b->f, p));
      const HPoint q = b->f(p);
      norm_gap = std::max(norm_gap, std::abs(std::norm(q.z()) - project_pi(q).im()));
    }
    EXPECT_LE(contact, 1e-5);
    EXPECT_LE(norm_gap, 1e-12);
  }
}

TEST(Assemble, AlphaRotates) {
  const auto& b = cylinder();
  const auto g = assemble_lift(b.prob, b.prof, b.pot, 0.9);
  for (const auto& p : sample_interior(g.source, 50, 24))
    EXPECT_NEAR(std::abs(g(p).z() - std::polar(1.0, 0.9) * b.f(p).z()), 0.0, 1e-14);
}

TEST(Commutation, LiftsCommuteWithProjection) {
  const auto& c = cylinder();
  EXPECT_LE(verify_commutation(c.f, c.prob, c.prof, sample_interior(c.f.source, 1000, 25)), 1e-8);
  const auto& a = annuli();
  EXPECT_LE(verify_commutation(a.f, a.prob, a.prof, sample_interior(a.f.source, 1000, 26)), 1e-6);
}

TEST(Commutation, ShadowCannotDetectBrokenContact) {
  const auto& c = cylinder();
  QCMap twisted = c.f;
  twisted.analytic = nullptr;
  twisted.eval = [f = c.f](const HPoint& p) {
    const HPoint q = f(p);
    return HPoint(q.z() * std::polar(1.0, p.t()), q.t());
  };
  const auto pts = sample_interior(c.f.source, 200, 27);
  EXPECT_LE(verify_commutation(twisted, c.prob, c.prof, pts), 1e-6);
  double worst = 0.0;
  for (const auto& p : pts) worst = std::max(worst, contact_residual(twisted, p));
  EXPECT_GE(worst, 0.1);
}

TEST(Competitors, AreContactAndOnto) {
  for (auto [eps, m] : {std::pair{0.3, 1}, {-0.2, 2}}) {
    const auto f = contact_competitor(eps, m);
    for (const auto& p : sample_interior(f.source, 200, 28)) EXPECT_LE(contact_residual(f, p), 1e-6);
    for (double t : {0.0, 0.3, 1.0}) EXPECT_NEAR(std::norm(f(HPoint(std::polar(1.0, 2.0), t)).z()), 2.0, 1e-12);
    EXPECT_NEAR(f(HPoint(cplx(0.4, 0), 1.0)).t(), 1.0, 1e-15);
  }
}

TEST(Competitors, NeverBeatTheLift) {
  const Density rho = rho0();
  const Grid3 grid{32, 16, 32};
  const double lifted = mean_distortion(cylinder().f, rho, grid);
  EXPECT_NEAR(lifted / (128 * kPi / 3), 1.0, 1e-3);
  EXPECT_NEAR(mean_distortion(contact_competitor(0.0, 1), rho, grid), lifted, 1e-6 * lifted);
  int n = 0;
  for (double eps : {0.05, 0.1, 0.3, -0.2, 0.6})
    for (int m : {1, 2, 3}) {
      EXPECT_GE(mean_distortion(contact_competitor(eps, m), rho, grid), lifted) << eps << ' ' << m;
      ++n;
    }
  EXPECT_GE(n, 10);
}
