#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "heisqc/curves.hpp"
#include "heisqc/modulus.hpp"

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

PlaneCurve plane_curve(std::function<cplx(double)> pos, double s0, double s1) {
  PlaneCurve c;
  c.s0 = s0;
  c.s1 = s1;
  c.position = std::move(pos);
  return c;
}

Density cylinder_rho0(double a, double b) { return closed_form_modulus("cylinder_horizontal", {{"a", a}, {"b", b}}).extremal; }

}  // namespace

TEST(Horizontality, Gamma0CurveIsHorizontal) {
  const auto c = foliation_gamma0(1.0, 1.0)(1.0, 0.0);
  EXPECT_LE(horizontality_residual(c, 200), 1e-9);
}

TEST(Horizontality, VerticalSegmentFails) {
  HorizontalCurve c;
  c.position = [](double s) { return HPoint(cplx(1, 0), s); };
  EXPECT_NEAR(horizontality_residual(c, 50), 1.0, 1e-9);
}

TEST(Horizontality, ConstantCurveIsZero) {
  HorizontalCurve c;
  c.position = [](double) { return HPoint(cplx(0.3, 0.8), 2.0); };
  EXPECT_EQ(horizontality_residual(c, 50), 0.0);
  EXPECT_EQ(code_of([&] { horizontality_residual(c, 1); }), ErrorCode::InvalidArgument);
}

TEST(Lift, HorizontalSegment) {
  const auto c = lift_halfplane_curve(plane_curve([](double s) { return cplx(s, 1.0); }, 0.0, 1.0), 0.0);
  for (double s : {0.0, 0.25, 0.5, 0.9, 1.0}) {
    const HPoint p = c(s);
    EXPECT_NEAR(std::abs(p.z() - std::polar(1.0, -s / 2)), 0.0, 1e-12);
    EXPECT_NEAR(p.t(), s, 1e-15);
  }
}

TEST(Lift, ConstantCurve) {
  const double y = 2.5, th = 0.7;
  const auto c = lift_halfplane_curve(plane_curve([y](double) { return cplx(0.0, y); }, 0.0, 1.0), th);
  for (double s : {0.0, 0.3, 1.0}) {
    EXPECT_NEAR(std::abs(c(s).z() - std::polar(std::sqrt(y), th)), 0.0, 1e-15);
    EXPECT_EQ(c(s).t(), 0.0);
  }
}

TEST(Lift, ImaginaryRayKeepsAngle) {
  const auto pc = plane_curve([](double s) { return cplx(0.0, std::exp(s)); }, 0.0, 2.0);
  for (int n : {50, 1000}) {
    const auto c = lift_halfplane_curve(pc, 0.0, {n, 1e-9});
    for (double s : {0.0, 0.7, 1.3, 2.0}) EXPECT_NEAR(std::arg(c(s).z()), 0.0, 1e-12);
  }
}

TEST(Lift, DegenerateCurveThrows) {
  const auto pc = plane_curve([](double s) { return cplx(s, s * s); }, 0.0, 1.0);
  EXPECT_EQ(code_of([&] { lift_halfplane_curve(pc, 0.0); }), ErrorCode::DegenerateCurve);
}

TEST(Lift, ProjectionHorizontalityAndEquivariance) {
  const std::vector<PlaneCurve> curves = {
      plane_curve([](double s) { return cplx(s, 1.0 + 0.5 * std::sin(3 * s)); }, 0.0, 2.0),
      plane_curve([](double s) { return std::exp(cplx(s, 0.4 + 0.3 * s)); }, -1.0, 1.5),
      plane_curve([](double s) { return cplx(std::cos(s), 2.0 + std::sin(s)); }, 0.0, 2 * kPi),
      plane_curve([](double s) { return cplx(s * s - 1.0, 0.2 + s * s); }, 0.0, 1.0),
  };
  for (const auto& pc : curves) {
    const auto c = lift_halfplane_curve(pc, 0.3);
    const auto d = lift_halfplane_curve(pc, 0.3 + 1.1);
    EXPECT_LE(horizontality_residual(c, 200), 1e-6);
    for (int i = 0; i <= 50; ++i) {
      const double s = pc.s0 + (pc.s1 - pc.s0) * i / 50;
      const cplx w = project_pi(c(s)).w();
      EXPECT_NEAR(std::abs(w - pc(s)), 0.0, 1e-8 * std::max(1.0, std::abs(pc(s))));
      EXPECT_NEAR(std::abs(d(s).z() - std::polar(1.0, 1.1) * c(s).z()), 0.0, 1e-13);
      EXPECT_EQ(d(s).t(), c(s).t());
    }
  }
}

TEST(CurveIntegral, Gamma0HasUnitLength) {
  const Density rho = cylinder_rho0(1.0, 1.0);
  const auto fol = foliation_gamma0(1.0, 1.0);
  for (double r : {0.05, 0.3, 0.7, 0.99})
    for (double al : {0.0, 2.0}) EXPECT_NEAR(curve_density_integral(rho, fol(r, al), 64), 1.0, 1e-9);
}

TEST(CurveIntegral, ZeroAndLinearity) {
  const Density rho = cylinder_rho0(1.0, 1.0);
  const auto c = foliation_gamma0(1.0, 1.0)(0.6, 1.0);
  const Density zero = Density::on_heisenberg([](const HPoint&) { return 0.0; }, domain::Cylinder{1, 1});
  EXPECT_EQ(curve_density_integral(zero, c, 32), 0.0);
  EXPECT_NEAR(curve_density_integral(scaled(rho, 2.0), c, 32), 2.0 * curve_density_integral(rho, c, 32), 1e-14);
}

TEST(CurveIntegral, DomainEscape) {
  const Density rho = cylinder_rho0(1.0, 1.0);
  const auto c = foliation_gamma0(2.0, 1.0)(0.5, 0.0);  // runs up to t = 2 > a
  EXPECT_EQ(code_of([&] { curve_density_integral(rho, c, 32); }), ErrorCode::DomainEscape);
}

TEST(CurveIntegral, SimpsonConvergesWithOrderAtLeastTwo) {
  const Density rho = Density::on_heisenberg(
      [](const HPoint& p) { return 1.0 + std::cos(p.t()) * std::norm(p.z()) + std::sin(3.0 * p.t()); },
      domain::Cylinder{2.0, 1.0});
  const auto c = foliation_gamma0(2.0, 1.0)(0.8, 0.2);
  const double ref = curve_density_integral(rho, c, 4096);
  const double e1 = std::abs(curve_density_integral(rho, c, 8) - ref);
  const double e2 = std::abs(curve_density_integral(rho, c, 16) - ref);
  const double e3 = std::abs(curve_density_integral(rho, c, 32) - ref);
  EXPECT_GE(std::log2(e1 / e2), 2.0);
  EXPECT_GE(std::log2(e2 / e3), 2.0);
}

TEST(Gamma0, FormulaAndProjection) {
  const auto c = foliation_gamma0(4.0, 1.0)(1.0, 0.0);
  EXPECT_NEAR(std::abs(c(kPi).z() - cplx(0, -1)), 0.0, 1e-15);
  EXPECT_EQ(c(kPi).t(), kPi);
  const auto d = foliation_gamma0(1.0, 2.0)(0.8, 1.0);
  for (double s : {0.0, 0.3, 1.0}) EXPECT_NEAR(project_pi(d(s)).im(), 0.64, 1e-15);
  for (double r : {0.01, 0.5, 1.4})
    for (double al : {0.0, 3.0}) EXPECT_LE(horizontality_residual(foliation_gamma0(1.0, 2.0)(r, al), 200), 1e-9);
}

TEST(FromBiholomorphism, IdentityRecoversGamma0) {
  const auto lifted = foliation_from_biholomorphism(builtin_biholomorphism("identity"), 1.0, 1.0);
  const auto g0 = foliation_gamma0(1.0, 1.0);
  for (double x : {0.1, 0.5, 0.9}) {
    const auto c = lifted(x, 0.4);
    const auto d = g0(std::sqrt(x), 0.4);
    for (double s : {0.0, 0.5, 1.0}) {
      EXPECT_NEAR(std::abs(c(s).z() - d(s).z()), 0.0, 1e-10);
      EXPECT_NEAR(c(s).t(), d(s).t(), 1e-15);
    }
  }
}

TEST(FromBiholomorphism, ExpGivesRadialCurves) {
  const double A = 2.0;
  const auto fol = foliation_from_biholomorphism(builtin_biholomorphism("exp"), 2 * std::log(A), kPi);
  for (double x : {0.2, 1.0, 2.5})
    for (double al : {0.0, 1.5}) {
      const auto c = fol(x, al);
      EXPECT_LE(horizontality_residual(c, 200), 1e-6);
      HorizontalCurve fd = c;
      fd.analytic_velocity = nullptr;
      for (double s : {0.1, 0.6, 1.2}) {
        const cplx want = std::sqrt(std::exp(s) * std::sin(x)) * std::polar(1.0, al - 0.5 / std::tan(x) * s);
        EXPECT_NEAR(std::abs(c(s).z() - want), 0.0, 1e-9);
        EXPECT_NEAR(c(s).t(), std::exp(s) * std::cos(x), 1e-14);
        EXPECT_NEAR(std::norm(c(s).z()), std::exp(s) * std::sin(x), 1e-13);
        const double speed = std::exp(s / 2) / (2 * std::sqrt(std::sin(x)));
        EXPECT_NEAR(std::abs(c.velocity(s).dz()), speed, 1e-9);
        EXPECT_NEAR(std::abs(fd.velocity(s).dz()), speed, 1e-6);
      }
    }
}

TEST(VerticalFoliation, RadialSegments) {
  const auto fol = foliation_vertical(1.0, 4.0);
  const auto c = fol(0.5, 0.3);
  EXPECT_NEAR(std::abs(c(1.0).z()), 2.0, 1e-15);
  EXPECT_EQ(c(0.0).z(), cplx(0, 0));
  for (double th : {0.0, 2.0})
    for (double t : {0.1, 0.9}) EXPECT_LE(horizontality_residual(fol(th, t), 200), 1e-12);
}

TEST(PlaneFamilies, HorizontalAndImage) {
  const Density rho0 = closed_form_modulus("rectangle_horizontal", {{"a", 2.0}, {"b", 3.0}}).extremal;
  const auto fam = plane_family_horizontal(2.0, 3.0);
  for (double y : {0.5, 2.9}) EXPECT_NEAR(plane_curve_integral(rho0, fam.generator(y), 16), 1.0, 1e-14);
  const auto img = plane_family_image(builtin_biholomorphism("exp"), 2.0, kPi);
  EXPECT_NEAR(std::abs(img.generator(1.0)(0.5) - std::exp(cplx(0.5, 1.0))), 0.0, 1e-15);
}

TEST(LiftFamily, LiftsEveryMember) {
  const auto fol = lift_family(plane_family_horizontal(1.0, 1.0));
  const auto c = fol(0.25, 0.0);
  EXPECT_LE(horizontality_residual(c, 100), 1e-6);
  EXPECT_NEAR(std::norm(c(0.5).z()), 0.25, 1e-15);
}
