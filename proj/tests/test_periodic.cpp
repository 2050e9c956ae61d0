#include <gtest/gtest.h>

#include "ward/periodic.hpp"

using namespace ward;

namespace {

bool contains(const std::vector<SurfacePoint>& v, const SurfacePoint& p) {
  return std::find(v.begin(), v.end(), p) != v.end();
}

}  // namespace

TEST(Farey, SmallBound) {
  const auto f = farey_fractions(3);
  ASSERT_EQ(f.size(), 5u);  // 0, 1/3, 1/2, 2/3, 1
  EXPECT_EQ(f[1], mpq_class(1, 3));
  EXPECT_EQ(f[4], mpq_class(1));
  EXPECT_THROW(farey_fractions(0), InvalidParameter);
}

TEST(Candidates, TorusTwoTorsion) {
  const auto s = make_square_torus(make_context(4));
  const auto g = enumerate_candidates(s, 2);
  const auto& ctx = s.context();
  const mpq_class h(1, 2);
  ASSERT_EQ(g.candidates.size(), 4u);
  EXPECT_TRUE(contains(g.candidates, s.locate(0, {ctx.zero(), ctx.zero()})));
  EXPECT_TRUE(contains(g.candidates, s.locate(0, {ctx.rational(h), ctx.zero()})));
  EXPECT_TRUE(contains(g.candidates, s.locate(0, {ctx.zero(), ctx.rational(h)})));
  EXPECT_TRUE(contains(g.candidates, s.locate(0, {ctx.rational(h), ctx.rational(h)})));
}

TEST(Candidates, IncludesCentresAndVertices) {
  const auto s = build_ward(4);
  const auto g = enumerate_candidates(s, 1);
  for (const auto& poly : s.polygons()) EXPECT_TRUE(contains(g.candidates, s.locate(poly.id, s.center(poly.id))));
  EXPECT_TRUE(contains(g.candidates, s.corner_point(0, 0)));
  EXPECT_TRUE(std::is_sorted(g.candidates.begin(), g.candidates.end(), SurfacePointLess{}));
}

TEST(Candidates, GrowWithBound) {
  const auto s = build_ward(5);
  EXPECT_LT(enumerate_candidates(s, 2).candidates.size(), enumerate_candidates(s, 4).candidates.size());
}

TEST(Search, RejectsNonWard) {
  const auto s = make_square_torus(make_context(4));
  EXPECT_THROW(search_periodic(s), UnsupportedSurface);
}

TEST(Search, OctagonSmallBound) {
  const auto s = build_ward(4);
  SearchOptions opt;
  opt.bound = 4;
  const auto c = search_periodic(s, opt);
  EXPECT_TRUE(c.clean());
  EXPECT_EQ(c.survivors.size(), 4u);
  EXPECT_EQ(c.count(PointLabel::Singularity), 1u);
  EXPECT_EQ(c.count(PointLabel::PolygonCenter), 3u);
  EXPECT_EQ(c.eliminated + c.survivors.size(), c.candidates);
}

TEST(Search, PentagonalSmallBound) {
  const auto s = build_ward(5);
  SearchOptions opt;
  opt.bound = 4;
  const auto c = search_periodic(s, opt);
  EXPECT_TRUE(c.clean());
  ASSERT_EQ(c.survivors.size(), 2u);
  EXPECT_EQ(c.count(PointLabel::Singularity), 1u);
  EXPECT_EQ(c.count(PointLabel::PolygonCenter), 1u);
  for (const auto& sv : c.survivors) {
    if (sv.label == PointLabel::PolygonCenter) {
      EXPECT_EQ(sv.point.polygon, s.ward()->two_n_gon);
    }
  }
}

TEST(Search, WitnessesVerify) {
  const auto s = build_ward(4);
  SearchOptions opt;
  opt.bound = 3;
  const auto c = search_periodic(s, opt);
  ASSERT_FALSE(c.witnesses.empty());
  const auto gens = ward_generators(s, decompose_shared(s, Direction::horizontal(s.context())));
  for (const auto& v : c.witnesses) EXPECT_TRUE(verify_witness(v, gens));
}

TEST(EvenlyDistributed, TwistOrbit) {
  const auto s = build_ward(4);
  const auto& ctx = s.context();
  const auto d = decompose_shared(s, Direction::horizontal(ctx));
  const auto phi = twist_map(d);
  // point at relative height 1/3 in the cylinder through the octagon centre
  const auto c = d->coords(s.locate(0, s.center(0)));
  const FieldElement h = d->cylinder(c.cylinder).height * ctx.rational(mpq_class(1, 3));
  SurfacePoint p = d->point_at(c.cylinder, ctx.zero(), h);
  std::vector<SurfacePoint> orbit{p};
  for (SurfacePoint q = phi(p); !(q == p); q = phi(q)) orbit.push_back(q);
  EXPECT_EQ(orbit.size(), 3u);
  EXPECT_TRUE(evenly_distributed_check(*d, orbit));
  orbit.pop_back();
  orbit.push_back(d->point_at(c.cylinder, ctx.zero() + d->cylinder(c.cylinder).width / 7L, h));
  EXPECT_FALSE(evenly_distributed_check(*d, orbit));
}

TEST(EvenlyDistributed, RequiresCommonLeaf) {
  const auto s = build_ward(4);
  const auto& ctx = s.context();
  const auto d = cylinder_decomposition(s, Direction::horizontal(ctx));
  const auto a = s.locate(0, s.center(0));
  const auto c = d.coords(a);
  const auto b = d.point_at(c.cylinder, c.position, d.cylinder(c.cylinder).height / 3L);
  EXPECT_THROW(evenly_distributed_check(d, {a, b}), InvalidInput);
  EXPECT_THROW(evenly_distributed_check(d, {}), InvalidInput);
}

TEST(Coverage, WholeSurfaceIsOne) {
  const auto s = build_ward(6);
  const auto& ctx = s.context();
  const auto d = cylinder_decomposition(s, Direction::horizontal(ctx));
  Region all;
  for (const auto& poly : s.polygons()) all.pieces.push_back({poly.id, s.vertices(poly.id)});
  for (const auto& cyl : d.cylinders()) {
    EXPECT_EQ(leaf_coverage_fraction(d, all, cyl.id, cyl.height / 3L), ctx.one());
  }
  EXPECT_TRUE(leaf_coverage_fraction(d, Region{}, 0, ctx.zero()).is_zero());
}

TEST(Coverage, OctagonInCentralCylinder) {
  // the octagon occupies cot(pi/8) of a leaf of length cot(pi/8) + cot(pi/4)
  const auto s = build_ward(4);
  const auto& ctx = s.context();
  const auto d = cylinder_decomposition(s, Direction::horizontal(ctx));
  const auto c = d.coords(s.locate(0, s.center(0)));
  Region oct{{{0, s.vertices(0)}}};
  const FieldElement cot = trig_cos(ctx, 1, 8) / trig_sin(ctx, 1, 8);
  const FieldElement f = leaf_coverage_fraction(d, oct, c.cylinder, c.height);
  EXPECT_EQ(f, cot / (cot + 1L));
}

TEST(Coverage, LocusBoundsEightfold) {
  const auto s = build_ward(8);
  const auto& ctx = s.context();
  const auto d = cylinder_decomposition(s, Direction::horizontal(ctx));
  const auto c0 = d.coords(s.locate(0, s.center(0)));
  const auto& cyl = d.cylinder(c0.cylinder);
  EXPECT_EQ(cyl.height, ctx.one());
  const auto L = ward_locus_L(s);
  auto frac = [&](const mpq_class& y) {
    return leaf_coverage_fraction(d, L, cyl.id, ctx.rational(y + mpq_class(1, 2)));
  };
  const FieldElement half = ctx.rational(mpq_class(1, 2));
  const FieldElement five_fourteenths = ctx.rational(mpq_class(5, 14));
  EXPECT_GT(frac(mpq_class(-3, 8)), half);
  EXPECT_GT(frac(mpq_class(3, 8)), half);
  EXPECT_GT(frac(mpq_class(0)), half);
  EXPECT_GE(frac(mpq_class(1, 2)), five_fourteenths);
  EXPECT_GE(frac(mpq_class(-1, 2)), five_fourteenths);
}
