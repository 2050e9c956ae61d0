#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ward/affine.hpp"

using namespace ward;

namespace {

FieldElement q(const Context& ctx, long a, long b) { return ctx.rational(mpq_class(a, b)); }

Vec2 random_interior(const Surface& s, int poly, std::mt19937& rng) {
  const auto& vs = s.vertices(poly);
  std::uniform_int_distribution<int> w(1, 30);
  Vec2 acc{s.context().zero(), s.context().zero()};
  long total = 0;
  for (const auto& v : vs) {
    const int k = w(rng);
    total += k;
    acc = acc + mpq_class(k) * v;
  }
  return mpq_class(1, total) * acc;
}

struct Fixture {
  Surface s;
  DecompositionPtr h;
  AffinePointMap phi, psi;
  explicit Fixture(int n) : s(build_ward(n)) {
    h = std::make_shared<const CylinderDecomposition>(cylinder_decomposition(s, Direction::horizontal(s.context())));
    phi = twist_map(h);
    psi = rotation_map(s);
  }
  SurfacePoint origin() const { return s.locate(0, Vec2{s.context().zero(), s.context().zero()}); }
};

}  // namespace

TEST(Veech, OctagonMatrices) {
  const auto m = veech_matrices(4);
  const auto ctx = make_context(4);
  const auto root2 = trig_cos(ctx, 1, 4) * 2L;
  EXPECT_EQ(m.AB_mu, (Mat2{ctx.one(), -(ctx.integer(2) + root2), ctx.zero(), ctx.one()}));
  EXPECT_EQ(m.BC_mu.pow(4), -Mat2::identity(ctx));
  EXPECT_EQ(m.R, -m.BC_mu);
  EXPECT_EQ(m.BC_mu.pow(5), m.R);
}

TEST(Veech, GeneralN) {
  for (int n = 3; n <= 10; ++n) {
    const auto m = veech_matrices(n);
    const auto ctx = make_context(n);
    const auto alpha = (trig_cos(ctx, 1, n) * 2L + 1L) / trig_sin(ctx, 1, n);
    EXPECT_EQ(m.AB_mu.inverse(), (Mat2{ctx.one(), alpha, ctx.zero(), ctx.one()})) << n;
    EXPECT_EQ(m.R.det(), ctx.one());
    EXPECT_EQ(m.R.pow(2 * n), Mat2::identity(ctx));
    for (int k = 1; k < 2 * n; ++k) EXPECT_FALSE(m.R.pow(k) == Mat2::identity(ctx));
    EXPECT_EQ(m.BC_mu.det(), ctx.one());
  }
}

TEST(Twist, DerivativeIsPositiveShear) {
  Fixture f(5);
  const auto& ctx = f.s.context();
  const auto alpha = (trig_cos(ctx, 1, 5) * 2L + 1L) / trig_sin(ctx, 1, 5);
  EXPECT_EQ(f.phi.derivative(), (Mat2{ctx.one(), alpha, ctx.zero(), ctx.one()}));
  EXPECT_EQ(f.psi.derivative(), veech_matrices(5).R);
}

TEST(Twist, FiniteDifferencesMatchDerivative) {
  Fixture f(4);
  const auto& ctx = f.s.context();
  const auto D = f.phi.derivative();
  std::mt19937 rng(3);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int poly = trial % 3;
    const Vec2 x = random_interior(f.s, poly, rng);
    const Vec2 dx{q(ctx, 1, 997), q(ctx, 1, 1999)};
    SurfacePoint a, b;
    try {
      a = f.s.locate(poly, x);
      b = f.s.locate(poly, x + dx);
    } catch (const LocationError&) {
      continue;
    }
    const auto fa = f.phi(a);
    const auto fb = f.phi(b);
    if (fa.polygon != fb.polygon) continue;
    // same strip after the map: the developed difference is D dx
    if (fb.coords - fa.coords == D * dx) ++checked;
  }
  EXPECT_GE(checked, 20);
}

TEST(Twist, OrbitSizeIsDenominator) {
  Fixture f(5);
  const auto& ctx = f.s.context();
  for (const auto& [a, d] : std::vector<std::pair<long, long>>{{1, 2}, {1, 3}, {2, 5}, {3, 7}}) {
    for (const auto& cyl : f.h->cylinders()) {
      const auto start = f.h->point_at(cyl.id, cyl.width * q(ctx, 1, 3), cyl.height * q(ctx, a, d));
      SurfacePoint p = start;
      long count = 0;
      do {
        p = f.phi(p);
        ++count;
      } while (!(p == start) && count < 100);
      EXPECT_EQ(count, d);
    }
  }
}

TEST(Twist, BoundaryLeavesAndVerticesFixed) {
  Fixture f(6);
  const auto& ctx = f.s.context();
  for (const auto& cyl : f.h->cylinders()) {
    const auto p = f.h->point_at(cyl.id, cyl.width * q(ctx, 2, 7), ctx.zero());
    EXPECT_EQ(f.phi(p), p);
  }
  const auto v = f.s.corner_point(0, 0);
  EXPECT_EQ(f.phi(v), v);
}

TEST(Twist, InverseUndoes) {
  Fixture f(7);
  const auto inv = f.phi.inverse();
  std::mt19937 rng(5);
  for (int k = 0; k < 20; ++k) {
    const auto p = f.s.locate(k % 3, random_interior(f.s, k % 3, rng));
    EXPECT_EQ(inv(f.phi(p)), p);
  }
}

TEST(Rotation, OriginFixedAndOrder) {
  std::mt19937 rng(9);
  for (int n = 4; n <= 9; ++n) {
    Fixture f(n);
    EXPECT_EQ(f.psi(f.origin()), f.origin());
    const auto full = AffinePointMap::rotation(f.s, 2 * n);
    for (int k = 0; k < 10; ++k) {
      const auto p = f.s.locate(k % 3, random_interior(f.s, k % 3, rng));
      SurfacePoint r = p;
      for (int i = 0; i < 2 * n; ++i) r = f.psi(r);
      EXPECT_EQ(r, p);
      EXPECT_EQ(full(p), p);
    }
  }
}

TEST(Rotation, PentagonCentresSwap) {
  Fixture f(5);
  const auto c1 = f.s.locate(1, f.s.center(1));
  const auto c2 = f.s.locate(2, f.s.center(2));
  EXPECT_EQ(f.psi(c1), c2);
  EXPECT_EQ(f.psi(c2), c1);
}

TEST(Rotation, PreservesSingularSet) {
  for (int n : {4, 6, 9}) {
    Fixture f(n);
    for (const auto& vc : f.s.vertex_classes()) {
      const auto p = f.s.corner_point(vc.corners[0].polygon, vc.corners[0].edge);
      const auto img = f.psi(p);
      ASSERT_TRUE(img.is_vertex());
      EXPECT_EQ(f.s.vertex_classes()[static_cast<std::size_t>(img.vertex_class)].cone_multiple, vc.cone_multiple);
    }
  }
}

TEST(Rotation, ConjugatesHorizontalToRotatedDecomposition) {
  std::mt19937 rng(13);
  for (int n = 4; n <= 7; ++n) {
    Fixture f(n);
    const auto r = cylinder_decomposition(f.s, Direction::from_angle(f.s.context(), 1, n));
    for (int k = 0; k < 15; ++k) {
      const auto p = f.s.locate(k % 3, random_interior(f.s, k % 3, rng));
      const auto a = f.h->coords(p);
      const auto b = r.coords(f.psi(p));
      EXPECT_EQ(a.height, b.height);
      EXPECT_EQ(f.h->cylinder(a.cylinder).width, r.cylinder(b.cylinder).width);
      EXPECT_EQ(f.h->cylinder(a.cylinder).height, r.cylinder(b.cylinder).height);
    }
  }
}

TEST(Rotation, RejectsNonWardSurface) {
  EXPECT_THROW(rotation_map(make_square_torus(make_context(4))), UnsupportedSurface);
}

TEST(Certificate, Examples) {
  Fixture f(4);
  const auto& ctx = f.s.context();
  const auto v = std::make_shared<const CylinderDecomposition>(cylinder_decomposition(f.s, Direction::vertical(ctx)));
  const auto r =
      std::make_shared<const CylinderDecomposition>(cylinder_decomposition(f.s, Direction::from_angle(ctx, -1, 4)));
  EXPECT_TRUE(rational_height_certificate(f.origin(), {f.h, v}).pass);
  const auto p = f.s.locate(0, Vec2{q(ctx, 1, 3), q(ctx, 1, 3)});
  const auto cert = rational_height_certificate(p, {f.h, r});
  EXPECT_FALSE(cert.pass);
  EXPECT_EQ(cert.decomposition, 1);
  // equivalently psi(p) is irrational for the horizontal decomposition
  EXPECT_FALSE(rational_height_certificate(f.psi(p), {f.h}).pass);

  const auto tctx = make_context(4);
  const auto t = make_square_torus(tctx);
  const auto th = std::make_shared<const CylinderDecomposition>(cylinder_decomposition(t, Direction::horizontal(tctx)));
  const auto tv = std::make_shared<const CylinderDecomposition>(cylinder_decomposition(t, Direction::vertical(tctx)));
  EXPECT_TRUE(rational_height_certificate(t.locate(0, Vec2{q(tctx, 2, 7), q(tctx, 5, 9)}), {th, tv}).pass);
}

TEST(Orbit, OctagonCentreOrbitIsThePolygonCentres) {
  Fixture f(4);
  const auto v = orbit(f.origin(), {f.phi, f.psi}, 100);
  ASSERT_EQ(v.status, OrbitStatus::Finite);
  std::vector<SurfacePoint> centres;
  for (int p = 0; p < 3; ++p) centres.push_back(f.s.locate(p, f.s.center(p)));
  std::sort(centres.begin(), centres.end(), SurfacePointLess{});
  EXPECT_EQ(v.orbit, centres);
}

TEST(Orbit, IrrationalPointIsInfiniteWithWitness) {
  Fixture f(4);
  const auto& ctx = f.s.context();
  const auto r2 = trig_cos(ctx, 1, 4) / 2L;  // sqrt(2)/4
  const auto p = f.s.locate(0, Vec2{r2, r2});
  const auto v = orbit(p, {f.phi, f.psi}, 100);
  ASSERT_EQ(v.status, OrbitStatus::Infinite);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_TRUE(verify_witness(v, {f.phi, f.psi}));
  const auto w = orbit(f.s.locate(0, Vec2{q(ctx, 1, 3), q(ctx, 1, 3)}), {f.phi, f.psi}, 1000);
  ASSERT_EQ(w.status, OrbitStatus::Infinite);
  EXPECT_TRUE(verify_witness(w, {f.phi, f.psi}));
}

TEST(Orbit, SingularVertexIsFixed) {
  Fixture f(5);
  const auto v = orbit(f.s.corner_point(0, 0), {f.phi, f.psi}, 10);
  ASSERT_EQ(v.status, OrbitStatus::Finite);
  EXPECT_EQ(v.orbit.size(), 1u);
}

TEST(Orbit, CapAndValidation) {
  Fixture f(4);
  const auto& ctx = f.s.context();
  EXPECT_THROW(orbit(f.origin(), {f.phi}, 0), InvalidParameter);
  // a rational point of the horizontal cylinders, explored with the twist only
  const auto c = f.h->cylinders()[0];
  const auto p = f.h->point_at(0, c.width * q(ctx, 1, 5), c.height * q(ctx, 1, 5));
  const auto v = orbit(p, {f.phi}, 3);
  EXPECT_EQ(v.status, OrbitStatus::Inconclusive);
  EXPECT_EQ(v.visited, 3u);
}

TEST(Orbit, VerdictStableUnderGeneratorChoice) {
  Fixture f(4);
  const auto& ctx = f.s.context();
  for (const auto& p : {f.origin(), f.s.locate(0, Vec2{q(ctx, 1, 3), q(ctx, 1, 3)}), f.s.locate(1, f.s.center(1))}) {
    const auto a = orbit(p, {f.phi, f.psi}, 500);
    const auto b = orbit(p, {f.psi, f.phi}, 500);
    const auto c = orbit(p, {f.psi.inverse(), f.phi.inverse()}, 500);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.status, c.status);
    if (a.status == OrbitStatus::Finite) {
      EXPECT_EQ(a.orbit, b.orbit);
      EXPECT_EQ(a.orbit, c.orbit);
    }
  }
}

TEST(Words, ApplyLeftToRight) {
  Fixture f(5);
  std::mt19937 rng(1);
  const auto p = f.s.locate(0, random_interior(f.s, 0, rng));
  EXPECT_EQ(apply_word({f.phi, f.psi}, "phi psi", p), f.psi(f.phi(p)));
  EXPECT_EQ(apply_word({f.phi, f.psi}, "psi phi^-1 phi", p), f.psi(p));
  EXPECT_THROW(apply_word({f.phi, f.psi}, "rho", p), InvalidInput);
}
