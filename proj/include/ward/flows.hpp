#pragma once

// Straight-line flow, separatrix tracing and cylinder decompositions.
//
// Fix a direction u. Every point p gets frame coordinates s = <u, p> and
// t = u x p. Leaves of the foliation are the lines t = const. Inside a
// convex polygon the boundary splits into an entry chain, an exit chain and
// at most two edges parallel to u. A leaf at level t leaves the polygon
// through the exit edge whose t-range contains t, so tracing only needs
// comparisons of t against vertex levels.

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ward/surface.hpp"

namespace ward {

/// Unoriented direction; the leading nonzero coordinate is positive and
/// axis-parallel directions are stored as unit vectors.
class Direction {
 public:
  Direction() = default;

  explicit Direction(Vec2 v) : v_(std::move(v)) {
    if (v_.is_zero()) throw InvalidParameter("zero direction vector");
    const int sx = v_.x.sign();
    if (sx < 0 || (sx == 0 && v_.y.sign() < 0)) v_ = -v_;
    const auto& ctx = v_.x.context();
    if (v_.x.is_zero()) v_.y = ctx.one();
    if (v_.y.is_zero()) v_.x = ctx.one();
  }

  static Direction horizontal(const Context& ctx) { return Direction(Vec2{ctx.one(), ctx.zero()}); }
  static Direction vertical(const Context& ctx) { return Direction(Vec2{ctx.zero(), ctx.one()}); }
  /// Direction of angle k pi / d.
  static Direction from_angle(const Context& ctx, long k, long d) { return Direction(unit_vector(ctx, k, d)); }

  const Vec2& vector() const { return v_; }
  bool is_unit() const { return dot(v_, v_) == v_.x.context().one(); }
  bool parallel(const Direction& o) const { return cross(v_, o.v_).is_zero(); }
  double angle_approx() const { return std::atan2(v_.y.approx(), v_.x.approx()); }

  friend bool operator==(const Direction& a, const Direction& b) { return a.parallel(b); }

 private:
  Vec2 v_;
};

namespace detail {

struct Approx {
  double v = 0.0;
  double e = 0.0;
  Approx() = default;
  explicit Approx(const FieldElement& x) {
    const auto [a, b] = x.enclosure();
    v = a;
    e = b;
  }
};

// Exact three-way comparison, deciding from the enclosures when they separate.
inline int fast_compare(const FieldElement& a, const Approx& aa, const FieldElement& b, const Approx& ba) {
  const double d = aa.v - ba.v;
  const double tol = aa.e + ba.e + 4.0 * DBL_EPSILON * (std::fabs(aa.v) + std::fabs(ba.v));
  if (d > tol) return 1;
  if (d < -tol) return -1;
  return compare(a, b);
}

// Largest k with sorted[k] <= t (or -1) and whether sorted[k] == t.
inline std::pair<int, bool> floor_index(const std::vector<FieldElement>& sorted, const std::vector<Approx>& approx,
                                        const FieldElement& t, const Approx& ta) {
  std::size_t lo = 0;
  std::size_t hi = sorted.size();
  bool eq = false;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const int c = fast_compare(sorted[mid], approx[mid], t, ta);
    if (c <= 0) {
      lo = mid + 1;
      eq = (c == 0);
    } else {
      hi = mid;
    }
  }
  if (lo == 0) return {-1, false};
  return {static_cast<int>(lo) - 1, eq};
}

inline void sort_unique(std::vector<FieldElement>& v) {
  std::vector<std::pair<Approx, FieldElement>> tmp;
  tmp.reserve(v.size());
  for (auto& x : v) tmp.emplace_back(Approx(x), std::move(x));
  std::sort(tmp.begin(), tmp.end(), [](const auto& a, const auto& b) {
    return fast_compare(a.second, a.first, b.second, b.first) < 0;
  });
  v.clear();
  for (auto& [a, x] : tmp) {
    if (v.empty() || !(v.back() == x)) v.push_back(std::move(x));
  }
}

struct EdgeFrame {
  int kind = 0;          // +1 exit (cross(u, e) > 0), -1 entry, 0 parallel to u
  FieldElement inv;      // 1 / cross(u, e) when kind != 0
  FieldElement ds_dt;    // <u, e> / cross(u, e) when kind != 0
  FieldElement shift_s;  // frame components of the gluing translation
  FieldElement shift_t;
};

struct PolygonFrame {
  std::vector<FieldElement> vs, vt;
  std::vector<Approx> vt_a;
  std::vector<EdgeFrame> edges;
  std::vector<int> exit_chain;            // exit edges by increasing t
  std::vector<FieldElement> exit_start;   // t of each chain edge's start vertex
  std::vector<Approx> exit_start_a;
  FieldElement t_min, t_max;
};

/// Frame data for one surface and one (oriented) direction vector.
class Frame {
 public:
  Frame(Surface s, Vec2 u) : s_(std::move(s)), u_(std::move(u)) {
    if (u_.is_zero()) throw InvalidParameter("zero direction vector");
    for (const auto& p : s_.polygons()) {
      PolygonFrame pf;
      const auto& vs = s_.vertices(p.id);
      const int m = p.size();
      for (int j = 0; j < m; ++j) {
        pf.vs.push_back(s_of(vs[static_cast<std::size_t>(j)]));
        pf.vt.push_back(t_of(vs[static_cast<std::size_t>(j)]));
        pf.vt_a.emplace_back(pf.vt.back());
      }
      for (int j = 0; j < m; ++j) {
        EdgeFrame ef;
        const auto& e = p.edges[static_cast<std::size_t>(j)];
        const FieldElement c = cross(u_, e);
        ef.kind = c.sign();
        if (ef.kind != 0) {
          ef.inv = c.inverse();
          ef.ds_dt = dot(u_, e) * ef.inv;
        }
        const auto& tau = s_.translation(EdgeRef{p.id, j});
        ef.shift_s = s_of(tau);
        ef.shift_t = t_of(tau);
        pf.edges.push_back(std::move(ef));
        if (pf.edges.back().kind > 0) pf.exit_chain.push_back(j);
      }
      std::sort(pf.exit_chain.begin(), pf.exit_chain.end(), [&](int a, int b) {
        return fast_compare(pf.vt[static_cast<std::size_t>(a)], pf.vt_a[static_cast<std::size_t>(a)],
                            pf.vt[static_cast<std::size_t>(b)], pf.vt_a[static_cast<std::size_t>(b)]) < 0;
      });
      for (int j : pf.exit_chain) {
        pf.exit_start.push_back(pf.vt[static_cast<std::size_t>(j)]);
        pf.exit_start_a.push_back(pf.vt_a[static_cast<std::size_t>(j)]);
      }
      pf.t_min = *std::min_element(pf.vt.begin(), pf.vt.end());
      pf.t_max = *std::max_element(pf.vt.begin(), pf.vt.end());
      polys_.push_back(std::move(pf));
    }
  }

  const Surface& surface() const { return s_; }
  const Vec2& u() const { return u_; }
  const PolygonFrame& polygon(int id) const { return polys_[static_cast<std::size_t>(id)]; }

  FieldElement s_of(const Vec2& p) const { return dot(u_, p); }
  FieldElement t_of(const Vec2& p) const { return cross(u_, p); }

  /// Inverse of (s, t) for a unit direction vector.
  Vec2 point(const FieldElement& s, const FieldElement& t) const {
    return Vec2{s * u_.x - t * u_.y, s * u_.y + t * u_.x};
  }

  FieldElement s_on_edge(int polygon, int edge, const FieldElement& t) const {
    const auto& pf = this->polygon(polygon);
    const auto j = static_cast<std::size_t>(edge);
    return pf.vs[j] + (t - pf.vt[j]) * pf.edges[j].ds_dt;
  }

  /// Where the leaf at level t leaves the polygon: either the interior of an
  /// exit edge (edge >= 0) or a corner (corner >= 0).
  struct Exit {
    int edge = -1;
    int corner = -1;
  };

  Exit exit_at(int polygon, const FieldElement& t, const Approx& ta) const {
    const auto& pf = this->polygon(polygon);
    const auto [k, eq] = floor_index(pf.exit_start, pf.exit_start_a, t, ta);
    if (k < 0) throw Error("leaf level below polygon " + std::to_string(polygon));
    const int j = pf.exit_chain[static_cast<std::size_t>(k)];
    if (eq) return Exit{-1, j};
    const int m = static_cast<int>(pf.vt.size());
    const int next = (j + 1) % m;
    const int c = fast_compare(pf.vt[static_cast<std::size_t>(next)], pf.vt_a[static_cast<std::size_t>(next)], t, ta);
    if (c == 0) return Exit{-1, next};
    if (c < 0) throw Error("leaf level above polygon " + std::to_string(polygon));
    return Exit{j, -1};
  }

 private:
  Surface s_;
  Vec2 u_;
  std::vector<PolygonFrame> polys_;
};

// Whether v lies in the half-open sector [out, -in) of a convex corner.
inline bool in_corner_sector(const Vec2& in, const Vec2& out, const Vec2& v) {
  const int c = cross(out, v).sign();
  if (c == 0) return dot(out, v).sign() > 0;
  return c > 0 && cross(v, -in).sign() > 0;
}

}  // namespace detail

/// One straight segment of a trajectory and how it ends.
struct FlowHit {
  int polygon = 0;
  Vec2 entry;
  Vec2 exit;
  int edge = -1;          // exit edge when ending in an edge interior
  int corner = -1;        // corner of `polygon` when ending at a vertex
  int vertex_class = -1;
  int next_polygon = -1;  // continuation after the gluing
  Vec2 next_coords;
  SurfacePoint next;      // canonical continuation, or the vertex hit

  bool hits_vertex() const { return corner >= 0; }
};

/// Flow from a planar point of a polygon whose forward ray enters the polygon
/// (or runs along its boundary).
inline FlowHit flow_from(const detail::Frame& f, int polygon, const Vec2& x) {
  const auto& s = f.surface();
  const FieldElement t = f.t_of(x);
  const auto ex = f.exit_at(polygon, t, detail::Approx(t));
  FlowHit h;
  h.polygon = polygon;
  h.entry = x;
  if (ex.corner >= 0) {
    h.corner = ex.corner;
    h.exit = s.vertex(polygon, ex.corner);
    h.vertex_class = s.vertex_class_of(polygon, ex.corner);
    h.next = s.corner_point(polygon, ex.corner);
    return h;
  }
  const auto& pf = f.polygon(polygon);
  const auto j = static_cast<std::size_t>(ex.edge);
  const FieldElement mu = (t - pf.vt[j]) * pf.edges[j].inv;
  h.edge = ex.edge;
  h.exit = s.vertex(polygon, ex.edge) + mu * s.polygon(polygon).edges[j];
  const EdgeRef other = s.partner(EdgeRef{polygon, ex.edge});
  h.next_polygon = other.polygon;
  h.next_coords = h.exit + s.translation(EdgeRef{polygon, ex.edge});
  h.next = s.edge_point(other, h.next_coords);
  return h;
}

/// Next boundary event when flowing from p along the oriented vector dir.
inline FlowHit flow(const Surface& s, const SurfacePoint& p, const Vec2& dir) {
  const detail::Frame f(s, dir);
  if (p.is_vertex()) {
    for (const auto& c : s.vertex_classes()[static_cast<std::size_t>(p.vertex_class)].corners) {
      const auto& poly = s.polygon(c.polygon);
      const int m = poly.size();
      if (detail::in_corner_sector(poly.edges[static_cast<std::size_t>((c.edge + m - 1) % m)],
                                   poly.edges[static_cast<std::size_t>(c.edge)], dir)) {
        return flow_from(f, c.polygon, s.vertex(c.polygon, c.edge));
      }
    }
    throw Error("no outgoing direction at vertex");
  }
  const auto& poly = s.polygon(p.polygon);
  for (int j = 0; j < poly.size(); ++j) {
    const auto& e = poly.edges[static_cast<std::size_t>(j)];
    if (cross(e, p.coords - s.vertex(p.polygon, j)).is_zero() && cross(dir, e).sign() > 0) {
      const EdgeRef other = s.partner(EdgeRef{p.polygon, j});
      return flow_from(f, other.polygon, p.coords + s.translation(EdgeRef{p.polygon, j}));
    }
  }
  return flow_from(f, p.polygon, p.coords);
}

inline FlowHit flow(const Surface& s, const SurfacePoint& p, const Direction& dir) {
  return flow(s, p, dir.vector());
}

struct Segment {
  int polygon = 0;
  Vec2 entry;
  Vec2 exit;
};

struct SaddleConnection {
  int start_class = -1;
  int end_class = -1;
  EdgeRef start_corner;  // (polygon, corner) the trajectory leaves from
  Vec2 holonomy;
  std::vector<Segment> chain;
};

inline long default_crossing_cap(const Surface& s) {
  return 10L * s.edge_count() * s.context().n();
}

/// Traces the forward trajectory leaving a corner until it reaches a vertex.
inline SaddleConnection trace_separatrix(const detail::Frame& f, int polygon, int corner, long cap) {
  const auto& s = f.surface();
  SaddleConnection sc;
  sc.start_class = s.vertex_class_of(polygon, corner);
  sc.start_corner = EdgeRef{polygon, corner};
  sc.holonomy = Vec2{s.context().zero(), s.context().zero()};
  int poly = polygon;
  Vec2 x = s.vertex(polygon, corner);
  for (long steps = 0;; ++steps) {
    if (steps > cap) throw NotPeriodicDirection("separatrix did not close within " + std::to_string(cap) + " crossings");
    const FlowHit h = flow_from(f, poly, x);
    sc.holonomy = sc.holonomy + (h.exit - h.entry);
    sc.chain.push_back(Segment{poly, h.entry, h.exit});
    if (h.hits_vertex()) {
      sc.end_class = h.vertex_class;
      return sc;
    }
    poly = h.next_polygon;
    x = h.next_coords;
  }
}

/// All forward separatrices in the oriented direction dir, one per corner
/// sector containing dir.
inline std::vector<SaddleConnection> saddle_connections(const Surface& s, const Vec2& dir, long cap = 0) {
  if (cap <= 0) cap = default_crossing_cap(s);
  const detail::Frame f(s, dir);
  std::vector<SaddleConnection> out;
  for (const auto& p : s.polygons()) {
    const int m = p.size();
    for (int c = 0; c < m; ++c) {
      if (detail::in_corner_sector(p.edges[static_cast<std::size_t>((c + m - 1) % m)],
                                   p.edges[static_cast<std::size_t>(c)], dir)) {
        out.push_back(trace_separatrix(f, p.id, c, cap));
      }
    }
  }
  return out;
}

/// Part of a cylinder inside one polygon: the polygon slice between two
/// consecutive leaf levels. Points of the strip have circumferential
/// coordinate X = s - offset and height Y = t - bottom.
struct Strip {
  int polygon = 0;
  int band = 0;
  FieldElement bottom, top;
  int left_edge = -1;
  int right_edge = -1;
  FieldElement offset;
};

struct Cylinder {
  int id = 0;
  FieldElement width, height, modulus;
  std::vector<Strip> strips;  // in circumferential order; the base leaf is Y = 0
};

struct CylinderCoords {
  int cylinder = -1;
  int strip = -1;
  FieldElement height;    // h', in [0, cylinder height]
  FieldElement position;  // x', in [0, width)
  bool on_boundary = false;
};

struct Band {
  FieldElement bottom, top;
  int cylinder = -1;
  int strip = -1;
};

class CylinderDecomposition {
 public:
  const Surface& surface() const { return frame_->surface(); }
  const Direction& direction() const { return dir_; }
  const std::vector<Cylinder>& cylinders() const { return cylinders_; }
  const Cylinder& cylinder(int id) const { return cylinders_.at(static_cast<std::size_t>(id)); }
  const detail::Frame& frame() const { return *frame_; }
  const std::vector<FieldElement>& levels(int polygon) const { return levels_[static_cast<std::size_t>(polygon)]; }
  const std::vector<Band>& bands(int polygon) const { return bands_[static_cast<std::size_t>(polygon)]; }

  /// Cylinder coordinates; boundary points are reported in the cylinder above
  /// the leaf when there is one.
  CylinderCoords coords(const SurfacePoint& p) const {
    auto all = coords_all(p);
    return all.back();
  }

  /// Coordinates in every cylinder whose closure contains p.
  std::vector<CylinderCoords> coords_all(const SurfacePoint& p) const {
    if (p.is_vertex()) throw UndefinedCoordinates("cylinder coordinates are undefined at vertices");
    const FieldElement t = frame_->t_of(p.coords);
    const auto pi = static_cast<std::size_t>(p.polygon);
    const auto [k, eq] = detail::floor_index(levels_[pi], levels_a_[pi], t, detail::Approx(t));
    const auto& bl = bands_[pi];
    std::vector<CylinderCoords> out;
    auto emit = [&](std::size_t band, bool boundary) {
      const Band& b = bl[band];
      const Cylinder& cyl = cylinders_[static_cast<std::size_t>(b.cylinder)];
      const Strip& st = cyl.strips[static_cast<std::size_t>(b.strip)];
      CylinderCoords c;
      c.cylinder = b.cylinder;
      c.strip = b.strip;
      c.height = t - b.bottom;
      c.position = reduce(frame_->s_of(p.coords) - st.offset, cyl.width);
      c.on_boundary = boundary;
      out.push_back(std::move(c));
    };
    if (k < 0 || static_cast<std::size_t>(k) >= levels_[pi].size()) {
      throw LocationError("point outside its polygon's level range");
    }
    if (!eq) {
      if (static_cast<std::size_t>(k) >= bl.size()) throw LocationError("point outside its polygon's level range");
      emit(static_cast<std::size_t>(k), false);
      return out;
    }
    if (k > 0) emit(static_cast<std::size_t>(k) - 1, true);
    if (static_cast<std::size_t>(k) < bl.size()) emit(static_cast<std::size_t>(k), true);
    return out;
  }

  /// Surface point with the given cylinder coordinates (x' taken mod width).
  SurfacePoint point_at(int cylinder, const FieldElement& x, const FieldElement& h) const {
    const Cylinder& cyl = this->cylinder(cylinder);
    if (h.sign() < 0 || compare(h, cyl.height) > 0) throw InvalidParameter("height outside cylinder");
    const auto left = [&](std::size_t i) {
      const Strip& st = cyl.strips[i];
      return frame_->s_on_edge(st.polygon, st.left_edge, st.bottom + h) - st.offset;
    };
    const auto right = [&](std::size_t i) {
      const Strip& st = cyl.strips[i];
      return frame_->s_on_edge(st.polygon, st.right_edge, st.bottom + h) - st.offset;
    };
    const FieldElement l0 = left(0);
    FieldElement xr = l0 + reduce(x - l0, cyl.width);
    std::size_t i = 0;
    for (; i + 1 < cyl.strips.size(); ++i) {
      if (compare(xr, right(i)) <= 0) break;
    }
    const Strip& st = cyl.strips[i];
    const Vec2 q = frame_->point(xr + st.offset, st.bottom + h);
    return surface().locate(st.polygon, q);
  }

  /// x reduced into [0, w).
  static FieldElement reduce(const FieldElement& x, const FieldElement& w) {
    const double q = std::floor(x.approx() / w.approx());
    FieldElement r = std::isfinite(q) && q != 0.0 ? x - w * static_cast<long>(q) : x;
    while (r.sign() < 0) r += w;
    while (compare(r, w) >= 0) r -= w;
    return r;
  }

 private:
  friend CylinderDecomposition cylinder_decomposition(const Surface& s, const Direction& dir, long cap);

  Direction dir_;
  std::shared_ptr<const detail::Frame> frame_;
  std::vector<Cylinder> cylinders_;
  std::vector<std::vector<FieldElement>> levels_;
  std::vector<std::vector<detail::Approx>> levels_a_;
  std::vector<std::vector<Band>> bands_;
};

/// Decomposes a surface into maximal cylinders in a periodic direction,
/// treating every polygon vertex as a marked point. The direction must be a
/// unit vector so that widths and heights are lengths.
inline CylinderDecomposition cylinder_decomposition(const Surface& s, const Direction& dir, long cap = 0) {
  if (!dir.is_unit()) throw InvalidParameter("cylinder decomposition needs a unit direction vector");
  if (cap <= 0) cap = default_crossing_cap(s);
  auto frame = std::make_shared<const detail::Frame>(s, dir.vector());
  const auto& f = *frame;
  const auto np = static_cast<std::size_t>(s.polygon_count());

  std::vector<std::vector<FieldElement>> levels(np);
  for (std::size_t p = 0; p < np; ++p) levels[p] = f.polygon(static_cast<int>(p)).vt;

  // Forward separatrices from every corner; their levels cut the polygons.
  for (const auto& poly : s.polygons()) {
    const int m = poly.size();
    for (int c = 0; c < m; ++c) {
      if (!detail::in_corner_sector(poly.edges[static_cast<std::size_t>((c + m - 1) % m)],
                                    poly.edges[static_cast<std::size_t>(c)], dir.vector())) {
        continue;
      }
      int cur = poly.id;
      FieldElement t = f.polygon(cur).vt[static_cast<std::size_t>(c)];
      for (long steps = 0;; ++steps) {
        if (steps > cap) {
          throw NotPeriodicDirection("separatrix did not close within " + std::to_string(cap) + " crossings");
        }
        const auto ex = f.exit_at(cur, t, detail::Approx(t));
        if (ex.corner >= 0) break;
        const auto& ef = f.polygon(cur).edges[static_cast<std::size_t>(ex.edge)];
        cur = s.partner(EdgeRef{cur, ex.edge}).polygon;
        t = t + ef.shift_t;
        levels[static_cast<std::size_t>(cur)].push_back(t);
      }
    }
  }

  CylinderDecomposition d;
  d.dir_ = dir;
  d.frame_ = frame;
  d.bands_.resize(np);
  d.levels_a_.resize(np);
  for (std::size_t p = 0; p < np; ++p) {
    detail::sort_unique(levels[p]);
    for (const auto& l : levels[p]) d.levels_a_[p].emplace_back(l);
  }

  // Bands and their left/right edges.
  struct BandInfo {
    int left = -1, right = -1;
  };
  std::vector<std::vector<BandInfo>> info(np);
  for (std::size_t p = 0; p < np; ++p) {
    const auto& pf = f.polygon(static_cast<int>(p));
    const int m = static_cast<int>(pf.vt.size());
    for (std::size_t k = 0; k + 1 < levels[p].size(); ++k) {
      const auto& lo = levels[p][k];
      const auto& hi = levels[p][k + 1];
      BandInfo bi;
      for (int j = 0; j < m; ++j) {
        const auto& ef = pf.edges[static_cast<std::size_t>(j)];
        if (ef.kind == 0) continue;
        const auto& a = pf.vt[static_cast<std::size_t>(j)];
        const auto& b = pf.vt[static_cast<std::size_t>((j + 1) % m)];
        const auto& low = ef.kind > 0 ? a : b;
        const auto& high = ef.kind > 0 ? b : a;
        if (compare(low, lo) <= 0 && compare(hi, high) <= 0) (ef.kind > 0 ? bi.right : bi.left) = j;
      }
      if (bi.left < 0 || bi.right < 0) throw Error("band without bounding edges");
      info[p].push_back(bi);
      d.bands_[p].push_back(Band{lo, hi, -1, -1});
    }
  }

  // Chain bands through right-edge gluings into cylinders.
  std::size_t total_bands = 0;
  for (const auto& b : d.bands_) total_bands += b.size();
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t k = 0; k < d.bands_[p].size(); ++k) {
      if (d.bands_[p][k].cylinder >= 0) continue;
      Cylinder cyl;
      cyl.id = static_cast<int>(d.cylinders_.size());
      std::size_t cp = p;
      std::size_t ck = k;
      while (true) {
        Band& b = d.bands_[cp][ck];
        if (b.cylinder >= 0) {
          if (b.cylinder != cyl.id || b.strip != 0) throw NotPeriodicDirection("strips do not close up");
          break;
        }
        if (cyl.strips.size() > total_bands) throw NotPeriodicDirection("strip chain does not close");
        b.cylinder = cyl.id;
        b.strip = static_cast<int>(cyl.strips.size());
        Strip st;
        st.polygon = static_cast<int>(cp);
        st.band = static_cast<int>(ck);
        st.bottom = b.bottom;
        st.top = b.top;
        st.left_edge = info[cp][ck].left;
        st.right_edge = info[cp][ck].right;
        cyl.strips.push_back(st);

        const EdgeRef out{static_cast<int>(cp), st.right_edge};
        const EdgeRef in = s.partner(out);
        const auto& ef = f.polygon(out.polygon).edges[static_cast<std::size_t>(out.edge)];
        const FieldElement lo = b.bottom + ef.shift_t;
        const auto q = static_cast<std::size_t>(in.polygon);
        const auto [j, eq] = detail::floor_index(levels[q], d.levels_a_[q], lo, detail::Approx(lo));
        if (!eq || static_cast<std::size_t>(j) >= d.bands_[q].size() ||
            !(d.bands_[q][static_cast<std::size_t>(j)].top == b.top + ef.shift_t) ||
            info[q][static_cast<std::size_t>(j)].left != in.edge) {
          throw NotPeriodicDirection("strip boundaries do not match across a gluing");
        }
        cp = q;
        ck = static_cast<std::size_t>(j);
      }

      // Offsets make X continuous across gluings.
      const auto n = cyl.strips.size();
      cyl.strips[0].offset = f.s_on_edge(cyl.strips[0].polygon, cyl.strips[0].left_edge, cyl.strips[0].bottom);
      FieldElement width = s.context().zero();
      for (std::size_t i = 0; i < n; ++i) {
        const auto& st = cyl.strips[i];
        width += f.s_on_edge(st.polygon, st.right_edge, st.bottom) - f.s_on_edge(st.polygon, st.left_edge, st.bottom);
        const FieldElement next =
            st.offset + f.polygon(st.polygon).edges[static_cast<std::size_t>(st.right_edge)].shift_s;
        if (i + 1 < n) {
          cyl.strips[i + 1].offset = next;
        } else if (!(cyl.strips[0].offset - next == width)) {
          throw NotPeriodicDirection("cylinder circumference inconsistent");
        }
      }
      cyl.width = width;
      cyl.height = cyl.strips[0].top - cyl.strips[0].bottom;
      cyl.modulus = width / cyl.height;
      d.cylinders_.push_back(std::move(cyl));
    }
  }

  FieldElement area = s.context().zero();
  for (const auto& c : d.cylinders_) area += c.width * c.height;
  if (!(area == s.area())) throw NotPeriodicDirection("cylinder areas do not sum to the surface area");
  d.levels_ = std::move(levels);
  return d;
}

inline CylinderCoords cylinder_coords(const CylinderDecomposition& d, const SurfacePoint& p) { return d.coords(p); }

}  // namespace ward
