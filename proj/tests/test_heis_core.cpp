#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "heisqc/heis_core.hpp"

using namespace heisqc;

namespace {

constexpr double kPi = std::numbers::pi;

HPoint random_point(std::mt19937_64& rng, double scale = 3.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {cplx(u(rng), u(rng)), u(rng)};
}

void expect_near(const HPoint& p, const HPoint& q, double tol) {
  EXPECT_NEAR(p.z().real(), q.z().real(), tol);
  EXPECT_NEAR(p.z().imag(), q.z().imag(), tol);
  EXPECT_NEAR(p.t(), q.t(), tol);
}

}  // namespace

TEST(HPoint, RejectsNonFinite) {
  EXPECT_THROW(HPoint(cplx(NAN, 0.0), 0.0), Error);
  EXPECT_THROW(HPoint(cplx(0.0, 0.0), INFINITY), Error);
  EXPECT_THROW(Tangent(cplx(0.0, INFINITY), 0.0), Error);
}

TEST(HalfPlanePoint, RequiresPositiveImaginaryPart) {
  EXPECT_THROW(HalfPlanePoint(cplx(1.0, 0.0)), Error);
  EXPECT_THROW(HalfPlanePoint(cplx(1.0, -1.0)), Error);
  EXPECT_NO_THROW(HalfPlanePoint(cplx(1.0, 1e-300)));
}

TEST(GroupMul, IdentityElement) {
  const HPoint p(cplx(0.3, -1.2), 2.5);
  EXPECT_EQ(group_mul(HPoint(), p), p);
  EXPECT_EQ(group_mul(p, HPoint()), p);
}

TEST(GroupMul, HandArithmetic) {
  const HPoint r = group_mul(HPoint(cplx(1, 0), 0), HPoint(cplx(0, 1), 0));
  EXPECT_EQ(r.z(), cplx(1, 1));
  EXPECT_DOUBLE_EQ(r.t(), -2.0);
}

TEST(GroupMul, InverseLaw) {
  const HPoint p(cplx(1.5, -0.7), 4.0);
  expect_near(group_mul(p, HPoint(-p.z(), -p.t())), HPoint(), 0.0);
}

TEST(GroupInv, Examples) {
  EXPECT_EQ(group_inv(HPoint()), HPoint());
  EXPECT_EQ(group_inv(HPoint(cplx(1, 1), 3)), HPoint(cplx(-1, -1), -3));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const HPoint p = random_point(rng);
    expect_near(group_mul(p, group_inv(p)), HPoint(), 1e-15);
    expect_near(group_mul(group_inv(p), p), HPoint(), 1e-15);
  }
}

TEST(GroupMul, Associativity) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const HPoint p = random_point(rng), q = random_point(rng), r = random_point(rng);
    expect_near(group_mul(group_mul(p, q), r), group_mul(p, group_mul(q, r)), 1e-12);
  }
}

TEST(HeisNorm, Examples) {
  EXPECT_DOUBLE_EQ(heis_norm(HPoint(cplx(0, 0), 1)), 1.0);
  EXPECT_DOUBLE_EQ(heis_norm(HPoint(cplx(1, 0), 0)), 1.0);
  EXPECT_NEAR(heis_norm(HPoint(cplx(1, 1), 2)), std::pow(8.0, 0.25), 1e-15);
  EXPECT_NEAR(heis_norm(HPoint(cplx(1, 1), 2)), 1.681793, 1e-6);
  EXPECT_EQ(heis_norm(HPoint()), 0.0);
}

TEST(HeisNorm, Homogeneity) {
  // dilation (z, t) -> (lz, l^2 t) scales the gauge by l
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const HPoint p = random_point(rng);
    const double l = 0.1 + 3.0 * std::uniform_real_distribution<double>(0, 1)(rng);
    EXPECT_NEAR(heis_norm(HPoint(l * p.z(), l * l * p.t())), l * heis_norm(p), 1e-12 * l * heis_norm(p));
  }
}

TEST(HeisDist, Examples) {
  const HPoint p(cplx(0.4, 0.9), -1.0);
  EXPECT_EQ(heis_dist(p, p), 0.0);
  EXPECT_DOUBLE_EQ(heis_dist(HPoint(), HPoint(cplx(0, 0), 1)), 1.0);
  EXPECT_NEAR(heis_dist(HPoint(cplx(1, 0), 0), HPoint(cplx(1, 1), -2)), 1.0, 1e-15);
}

TEST(HeisDist, LeftInvariance) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const HPoint g = random_point(rng), p = random_point(rng), q = random_point(rng);
    const double d = heis_dist(p, q);
    EXPECT_NEAR(heis_dist(group_mul(g, p), group_mul(g, q)), d, 1e-12 * std::max(1.0, d));
  }
}

TEST(ProjectPi, Examples) {
  EXPECT_EQ(project_pi(HPoint(cplx(1, 1), 3)).w(), cplx(3, 2));
  for (double th : {0.0, 0.7, 2.0, 5.5}) {
    const cplx w = project_pi(HPoint(std::polar(1.0, th), 0)).w();
    EXPECT_NEAR(w.real(), 0.0, 1e-15);
    EXPECT_NEAR(w.imag(), 1.0, 1e-15);
  }
  try {
    project_pi(HPoint(cplx(0, 0), 1));
    FAIL() << "expected AxisPoint";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AxisPoint);
  }
}

TEST(Chart, ToHeisExamples) {
  expect_near(chart_to_heis(0.0, HalfPlanePoint(cplx(0, 1))), HPoint(cplx(1, 0), 0), 1e-15);
  expect_near(chart_to_heis(kPi / 2, HalfPlanePoint(cplx(3, 2))), HPoint(cplx(0, std::sqrt(2.0)), 3), 1e-15);
}

TEST(Chart, FromHeisExamples) {
  const auto c = chart_from_heis(HPoint(cplx(1, 0), 0));
  EXPECT_EQ(c.theta, 0.0);
  EXPECT_EQ(c.w.w(), cplx(0, 1));
  const auto d = chart_from_heis(HPoint(cplx(0, std::sqrt(2.0)), 3));
  EXPECT_NEAR(d.theta, kPi / 2, 1e-15);
  EXPECT_NEAR(d.w.re(), 3.0, 1e-15);
  EXPECT_NEAR(d.w.im(), 2.0, 1e-15);
  EXPECT_THROW(chart_from_heis(HPoint(cplx(0, 0), 5)), Error);
}

TEST(Chart, RoundTripAndAngleNormalization) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> th(-20.0, 20.0), le(-6.0, 6.0), re(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double theta = th(rng);
    const HalfPlanePoint w(cplx(re(rng), std::pow(10.0, le(rng))));
    const auto c = chart_from_heis(chart_to_heis(theta, w));
    EXPECT_GE(c.theta, 0.0);
    EXPECT_LT(c.theta, 2 * kPi);
    const double want = std::fmod(std::fmod(theta, 2 * kPi) + 2 * kPi, 2 * kPi);
    const double diff = std::remainder(c.theta - want, 2 * kPi);
    EXPECT_NEAR(diff, 0.0, 1e-12);
    EXPECT_NEAR(c.w.re(), w.re(), 1e-15 * std::max(1.0, std::abs(w.re())));
    EXPECT_NEAR(c.w.im(), w.im(), 2e-15 * w.im());
  }
}

TEST(Chart, ProjectionConsistency) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> le(-6.0, 6.0), re(-5.0, 5.0), th(0.0, 2 * kPi);
  for (int i = 0; i < 500; ++i) {
    const HalfPlanePoint w(cplx(re(rng), std::pow(10.0, le(rng))));
    const HPoint p = chart_to_heis(th(rng), w);
    EXPECT_EQ(p.t(), w.re());
    EXPECT_NEAR(project_pi(p).im(), w.im(), 2e-15 * w.im());
    EXPECT_NEAR(std::abs(p.z()), std::sqrt(w.im()), 2e-15 * std::sqrt(w.im()));
  }
}

TEST(ContactEval, Examples) {
  EXPECT_EQ(contact_eval(HPoint(), Tangent(cplx(2.0, -3.0), 0.0)), 0.0);
  EXPECT_EQ(contact_eval(HPoint(cplx(1, 0), 0), Tangent(cplx(0, 1), -2)), 0.0);
  EXPECT_EQ(contact_eval(HPoint(cplx(1, 0), 0), Tangent(cplx(0, 0), 1)), 1.0);
}

TEST(ContactEval, Linearity) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const HPoint p = random_point(rng);
    const Tangent v(cplx(u(rng), u(rng)), u(rng)), w(cplx(u(rng), u(rng)), u(rng));
    const double c = u(rng);
    const double sum = contact_eval(p, Tangent(v.dz() + w.dz(), v.dt() + w.dt()));
    EXPECT_NEAR(sum, contact_eval(p, v) + contact_eval(p, w), 1e-12);
    EXPECT_NEAR(contact_eval(p, Tangent(c * v.dz(), c * v.dt())), c * contact_eval(p, v), 1e-12);
  }
}
