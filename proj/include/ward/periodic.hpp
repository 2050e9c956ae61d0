#pragma once

// Periodic-point search on Ward surfaces.
//
// Periodic points have rational relative heights in every cylinder
// decomposition of a parabolic direction. Candidates are intersections of
// leaves at heights (a/d) * h, d <= D, of two transverse decompositions.
// Each candidate is first checked against the decompositions in directions
// k pi/n, |k| <= 2, and then explored under <phi, psi>: a closed orbit
// certifies periodicity, an irrational height anywhere in the orbit
// certifies the opposite.

#include <chrono>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ward/affine.hpp"

namespace ward {

/// Fractions a/d in [0, 1] with d <= bound, increasing.
inline std::vector<mpq_class> farey_fractions(int bound) {
  if (bound < 1) throw InvalidParameter("denominator bound must be at least 1");
  std::set<mpq_class> s;
  for (int d = 1; d <= bound; ++d) {
    for (int a = 0; a <= d; ++a) {
      mpq_class f(a, d);
      f.canonicalize();
      s.insert(f);
    }
  }
  return {s.begin(), s.end()};
}

struct CandidateGrid {
  Surface surface;
  DecompositionPtr first;
  DecompositionPtr second;
  int bound = 0;
  std::vector<SurfacePoint> candidates;  // canonical order
};

namespace detail {

// Leaf levels (frame t-values) with rational relative height of denominator
// <= bound, per polygon.
inline std::vector<FieldElement> rational_levels(const CylinderDecomposition& d, int polygon,
                                                 const std::vector<mpq_class>& fractions) {
  std::vector<FieldElement> out;
  const auto& ctx = d.surface().context();
  for (const auto& b : d.bands(polygon)) {
    const FieldElement h = b.top - b.bottom;
    for (const auto& f : fractions) out.push_back(b.bottom + h * ctx.rational(f));
  }
  sort_unique(out);
  return out;
}

}  // namespace detail

/// All points whose relative heights in both decompositions have
/// denominators <= bound, plus polygon centres and vertices.
inline CandidateGrid enumerate_candidates(const Surface& s, int bound, DecompositionPtr first, DecompositionPtr second) {
  const auto fractions = farey_fractions(bound);
  const Vec2& u1 = first->direction().vector();
  const Vec2& u2 = second->direction().vector();
  const FieldElement c12 = cross(u1, u2);
  if (c12.is_zero()) throw InvalidParameter("candidate decompositions must be transverse");
  const FieldElement inv = c12.inverse();
  const double u1x = u1.x.approx(), u1y = u1.y.approx(), u2x = u2.x.approx(), u2y = u2.y.approx();
  const double inva = inv.approx();

  std::set<SurfacePoint, SurfacePointLess> found;
  for (const auto& poly : s.polygons()) {
    const auto l1 = detail::rational_levels(*first, poly.id, fractions);
    const auto l2 = detail::rational_levels(*second, poly.id, fractions);
    std::vector<double> a1, a2;
    for (const auto& x : l1) a1.push_back(x.approx());
    for (const auto& x : l2) a2.push_back(x.approx());
    std::vector<std::array<double, 4>> edges;  // vertex x, y, edge x, y
    const auto& vs = s.vertices(poly.id);
    for (int j = 0; j < poly.size(); ++j) {
      const auto& v = vs[static_cast<std::size_t>(j)];
      const auto& e = poly.edges[static_cast<std::size_t>(j)];
      edges.push_back({v.x.approx(), v.y.approx(), e.x.approx(), e.y.approx()});
    }
    for (std::size_t i = 0; i < l1.size(); ++i) {
      for (std::size_t j = 0; j < l2.size(); ++j) {
        // p with u1 x p = c1 and u2 x p = c2
        const double px = (a1[i] * u2x - a2[j] * u1x) * inva;
        const double py = (a1[i] * u2y - a2[j] * u1y) * inva;
        bool outside = false;
        for (const auto& e : edges) {
          if (e[2] * (py - e[1]) - e[3] * (px - e[0]) < -1e-7) {
            outside = true;
            break;
          }
        }
        if (outside) continue;
        const Vec2 p = inv * (l1[i] * u2 - l2[j] * u1);
        try {
          found.insert(s.locate(poly.id, p));
        } catch (const LocationError&) {
        }
      }
    }
    found.insert(s.locate(poly.id, s.center(poly.id)));
  }
  for (const auto& vc : s.vertex_classes()) found.insert(s.corner_point(vc.corners[0].polygon, vc.corners[0].edge));

  CandidateGrid g;
  g.surface = s;
  g.first = std::move(first);
  g.second = std::move(second);
  g.bound = bound;
  g.candidates.assign(found.begin(), found.end());
  return g;
}

inline DecompositionPtr decompose_shared(const Surface& s, const Direction& d) {
  return std::make_shared<const CylinderDecomposition>(cylinder_decomposition(s, d));
}

/// Ward surfaces use the horizontal and direction-pi/n decompositions; other
/// surfaces the horizontal and vertical ones.
inline CandidateGrid enumerate_candidates(const Surface& s, int bound) {
  const auto& ctx = s.context();
  const auto h = decompose_shared(s, Direction::horizontal(ctx));
  const auto other = s.ward() ? decompose_shared(s, Direction::from_angle(ctx, 1, ctx.n()))
                              : decompose_shared(s, Direction::vertical(ctx));
  return enumerate_candidates(s, bound, h, other);
}

enum class PointLabel { Singularity, PolygonCenter, Other };

inline const char* to_string(PointLabel l) {
  switch (l) {
    case PointLabel::Singularity:
      return "singularity";
    case PointLabel::PolygonCenter:
      return "polygon-center";
    case PointLabel::Other:
      return "other";
  }
  return "?";
}

inline PointLabel label_point(const Surface& s, const SurfacePoint& p) {
  if (p.is_vertex()) {
    return s.vertex_classes()[static_cast<std::size_t>(p.vertex_class)].singular() ? PointLabel::Singularity
                                                                                     : PointLabel::Other;
  }
  for (const auto& poly : s.polygons()) {
    if (p.polygon == poly.id && p.coords == s.center(poly.id)) return PointLabel::PolygonCenter;
  }
  return PointLabel::Other;
}

struct Survivor {
  SurfacePoint point;
  std::size_t orbit_size = 0;
  PointLabel label = PointLabel::Other;
};

struct SearchOptions {
  int bound = 8;
  std::size_t cap = 10000;
  std::size_t witness_samples = 50;  // eliminations kept with their witnesses
  std::vector<int> precheck_powers = {-2, -1, 0, 1, 2};
  std::vector<int> orbit_powers = {1, 2};  // extra decompositions consulted during orbit exploration
};

struct Classification {
  int n = 0;
  int bound = 0;
  std::size_t cap = 0;
  std::size_t candidates = 0;
  std::size_t eliminated = 0;
  std::size_t eliminated_by_precheck = 0;
  std::vector<Survivor> survivors;           // canonical order
  std::vector<SurfacePoint> inconclusive;
  std::vector<OrbitVerdict> witnesses;       // sample of eliminations
  double seconds = 0.0;

  bool clean() const { return inconclusive.empty(); }
  std::size_t count(PointLabel l) const {
    std::size_t k = 0;
    for (const auto& s : survivors) k += s.label == l ? 1 : 0;
    return k;
  }
};

/// The generators phi (twist along the horizontal decomposition) and psi.
inline std::vector<AffinePointMap> ward_generators(const Surface& s, DecompositionPtr horizontal) {
  return {twist_map(std::move(horizontal)), rotation_map(s)};
}

inline Classification search_periodic(const Surface& s, const SearchOptions& opt = {}) {
  if (!s.valid() || !s.ward()) throw UnsupportedSurface("periodic search needs a Ward surface");
  if (opt.cap < 1) throw InvalidParameter("orbit cap must be at least 1");
  const auto t0 = std::chrono::steady_clock::now();
  const auto& ctx = s.context();
  const int n = ctx.n();

  std::map<int, DecompositionPtr> by_power;
  auto decomposition = [&](int k) {
    auto it = by_power.find(k);
    if (it == by_power.end()) it = by_power.emplace(k, decompose_shared(s, Direction::from_angle(ctx, k, n))).first;
    return it->second;
  };
  const auto h = decomposition(0);
  const auto grid = enumerate_candidates(s, opt.bound, h, decomposition(1));
  std::vector<DecompositionPtr> pre;
  for (int k : opt.precheck_powers) pre.push_back(decomposition(k));
  std::vector<DecompositionPtr> extra;
  for (int k : opt.orbit_powers) extra.push_back(decomposition(k));
  const auto gens = ward_generators(s, h);

  Classification c;
  c.n = n;
  c.bound = opt.bound;
  c.cap = opt.cap;
  c.candidates = grid.candidates.size();
  std::map<SurfacePoint, std::size_t, SurfacePointLess> periodic;

  for (const auto& p : grid.candidates) {
    if (periodic.count(p)) continue;
    const auto cert = rational_height_certificate(p, pre);
    if (!cert.pass) {
      ++c.eliminated;
      ++c.eliminated_by_precheck;
      if (c.witnesses.size() < opt.witness_samples) {
        OrbitVerdict v;
        v.status = OrbitStatus::Infinite;
        v.start = p;
        v.visited = 1;
        v.cap = opt.cap;
        v.decompositions = pre;
        OrbitWitness w;
        w.point = p;
        w.decomposition = cert.decomposition;
        w.direction = pre[static_cast<std::size_t>(cert.decomposition)]->direction();
        w.failure = *cert.failure;
        v.witness = std::move(w);
        c.witnesses.push_back(std::move(v));
      }
      continue;
    }
    auto v = orbit(p, gens, opt.cap, extra);
    switch (v.status) {
      case OrbitStatus::Finite:
        for (const auto& q : v.orbit) periodic.emplace(q, v.orbit.size());
        break;
      case OrbitStatus::Infinite:
        ++c.eliminated;
        if (c.witnesses.size() < opt.witness_samples) c.witnesses.push_back(std::move(v));
        break;
      case OrbitStatus::Inconclusive:
        c.inconclusive.push_back(p);
        break;
    }
  }
  for (const auto& [p, size] : periodic) c.survivors.push_back(Survivor{p, size, label_point(s, p)});
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

/// Whether points on one closed leaf are evenly spaced: all circular gaps
/// equal width / count.
inline bool evenly_distributed_check(const CylinderDecomposition& d, const std::vector<SurfacePoint>& pts) {
  if (pts.empty()) throw InvalidInput("no points given");
  std::vector<CylinderCoords> cs;
  for (const auto& p : pts) cs.push_back(d.coords(p));
  for (const auto& c : cs) {
    if (c.cylinder != cs[0].cylinder || !(c.height == cs[0].height)) {
      throw InvalidInput("points do not lie on a common closed leaf");
    }
  }
  if (cs.size() == 1) return true;
  std::vector<FieldElement> xs;
  for (const auto& c : cs) xs.push_back(c.position);
  std::sort(xs.begin(), xs.end(), [](const FieldElement& a, const FieldElement& b) { return a < b; });
  const FieldElement& w = d.cylinder(cs[0].cylinder).width;
  const FieldElement gap = w / static_cast<long>(xs.size());
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (!(xs[i + 1] - xs[i] == gap)) return false;
  }
  return xs.front() + w - xs.back() == gap;
}

/// Convex pieces, each inside one polygon, with pairwise disjoint interiors.
struct Region {
  struct Piece {
    int polygon = 0;
    std::vector<Vec2> vertices;  // counterclockwise
  };
  std::vector<Piece> pieces;
};

/// Exact fraction of the closed leaf at height h' of a cylinder lying in the region.
inline FieldElement leaf_coverage_fraction(const CylinderDecomposition& d, const Region& region, int cylinder,
                                           const FieldElement& h) {
  const Cylinder& cyl = d.cylinder(cylinder);
  if (h.sign() < 0 || compare(h, cyl.height) > 0) throw InvalidParameter("height outside cylinder");
  const auto& f = d.frame();
  const auto& ctx = d.surface().context();
  auto max_fe = [](const FieldElement& a, const FieldElement& b) { return compare(a, b) >= 0 ? a : b; };
  auto min_fe = [](const FieldElement& a, const FieldElement& b) { return compare(a, b) <= 0 ? a : b; };
  FieldElement covered = ctx.zero();
  for (const auto& st : cyl.strips) {
    const FieldElement t = st.bottom + h;
    const FieldElement lo = f.s_on_edge(st.polygon, st.left_edge, t);
    const FieldElement hi = f.s_on_edge(st.polygon, st.right_edge, t);
    for (const auto& piece : region.pieces) {
      if (piece.polygon != st.polygon) continue;
      // s-interval of the piece on the line t = const
      std::optional<FieldElement> a, b;
      const std::size_t m = piece.vertices.size();
      for (std::size_t i = 0; i < m; ++i) {
        const Vec2& p = piece.vertices[i];
        const Vec2& q = piece.vertices[(i + 1) % m];
        const FieldElement tp = f.t_of(p), tq = f.t_of(q);
        const int sp = compare(tp, t), sq = compare(tq, t);
        std::vector<FieldElement> hits;
        if (sp == 0) hits.push_back(f.s_of(p));
        if (sq == 0) hits.push_back(f.s_of(q));
        if (sp * sq < 0) {
          const FieldElement sp_ = f.s_of(p);
          hits.push_back(sp_ + (f.s_of(q) - sp_) * ((t - tp) / (tq - tp)));
        }
        for (auto& x : hits) {
          a = a ? min_fe(*a, x) : x;
          b = b ? max_fe(*b, x) : x;
        }
      }
      if (!a) continue;
      const FieldElement l = max_fe(*a, lo);
      const FieldElement r = min_fe(*b, hi);
      if (compare(r, l) > 0) covered += r - l;
    }
  }
  return covered / cyl.width;
}

/// The locus L for even n: the regular 2n-gon concentric with the big
/// polygon, with vertical sides at distance 3 / (4 sin(pi/n)) from the centre.
inline Region ward_locus_L(const Surface& s) {
  if (!s.ward()) throw UnsupportedSurface("locus L is defined for Ward surfaces");
  const auto& ctx = s.context();
  const int n = ctx.n();
  const FieldElement apothem = ctx.rational(mpq_class(3, 4)) / trig_sin(ctx, 1, n);
  const FieldElement big_apothem = trig_cos(ctx, 1, 2L * n) / (trig_sin(ctx, 1, 2L * n) * 2L);
  const FieldElement scale = apothem / big_apothem;
  Region r;
  Region::Piece piece;
  piece.polygon = s.ward()->two_n_gon;
  for (const auto& v : s.vertices(piece.polygon)) piece.vertices.push_back(scale * (v - s.center(piece.polygon)));
  r.pieces.push_back(std::move(piece));
  return r;
}

}  // namespace ward
