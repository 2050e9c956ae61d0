#pragma once

// Translation surfaces presented as convex Euclidean polygons glued
// edge-to-edge by translations, and the Ward builder: one regular 2n-gon
// and two regular n-gons, all of side length 1, 2n-gon centred at the origin.

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ward/exactfield.hpp"

namespace ward {

struct EdgeRef {
  int polygon = 0;
  int edge = 0;
  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

struct Polygon {
  int id = 0;
  std::vector<Vec2> edges;  // counterclockwise
  Vec2 anchor;              // position of vertex 0

  int size() const { return static_cast<int>(edges.size()); }

  std::vector<Vec2> vertices() const {
    std::vector<Vec2> out;
    out.reserve(edges.size());
    Vec2 cur = anchor;
    for (const auto& e : edges) {
      out.push_back(cur);
      cur = cur + e;
    }
    return out;
  }

  /// Vertex centroid; for the regular polygons of the Ward family this is the centre.
  Vec2 centroid() const {
    const auto vs = vertices();
    Vec2 sum = vs.front();
    for (std::size_t i = 1; i < vs.size(); ++i) sum = sum + vs[i];
    return sum / static_cast<long>(vs.size());
  }

  FieldElement area() const {
    const auto vs = vertices();
    FieldElement twice = cross(vs.back(), vs.front());
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) twice += cross(vs[i], vs[i + 1]);
    return twice / 2L;
  }
};

struct Gluing {
  std::vector<std::pair<EdgeRef, EdgeRef>> pairs;
};

struct VertexClass {
  int id = 0;
  std::vector<EdgeRef> corners;  // (polygon, corner index); corner j starts edge j
  int cone_multiple = 0;         // total angle = 2 pi * cone_multiple

  bool singular() const { return cone_multiple >= 2; }
};

/// Extra data recorded by the Ward builder.
struct WardInfo {
  int n = 0;
  // Polygon 0 is the 2n-gon, 1 the n-gon with even edge directions,
  // 2 the n-gon with odd edge directions.
  int two_n_gon = 0;
  int even_ngon = 1;
  int odd_ngon = 2;
  // 2n-gon edge along which polygons 1 and 2 are drawn.
  int even_attach_edge = 0;
  int odd_attach_edge = 0;
};

struct SurfacePoint {
  int polygon = 0;
  Vec2 coords;
  int vertex_class = -1;

  bool is_vertex() const { return vertex_class >= 0; }

  friend bool operator==(const SurfacePoint& a, const SurfacePoint& b) {
    return a.polygon == b.polygon && a.coords == b.coords;
  }
  friend bool operator!=(const SurfacePoint& a, const SurfacePoint& b) { return !(a == b); }

  friend bool canonical_less(const SurfacePoint& a, const SurfacePoint& b) {
    if (a.polygon != b.polygon) return a.polygon < b.polygon;
    return canonical_less(a.coords, b.coords);
  }
};

struct SurfacePointHash {
  std::size_t operator()(const SurfacePoint& p) const {
    return p.coords.x.hash() * 31 + p.coords.y.hash() * 7 + static_cast<std::size_t>(p.polygon);
  }
};

struct SurfacePointLess {
  bool operator()(const SurfacePoint& a, const SurfacePoint& b) const { return canonical_less(a, b); }
};

class Surface {
 public:
  Surface() = default;

  /// Validates polygons and gluing and derives vertex classes and genus.
  static Surface create(Context ctx, std::vector<Polygon> polygons, Gluing gluing,
                        std::optional<WardInfo> ward = std::nullopt);

  bool valid() const { return d_ != nullptr; }
  const Context& context() const { return d_->ctx; }
  const std::vector<Polygon>& polygons() const { return d_->polygons; }
  const Polygon& polygon(int id) const { return d_->polygons.at(static_cast<std::size_t>(id)); }
  int polygon_count() const { return static_cast<int>(d_->polygons.size()); }
  const Gluing& gluing() const { return d_->gluing; }
  const std::optional<WardInfo>& ward() const { return d_->ward; }

  const Vec2& vertex(int polygon, int corner) const {
    return d_->vertices[static_cast<std::size_t>(polygon)][static_cast<std::size_t>(corner)];
  }
  const std::vector<Vec2>& vertices(int polygon) const {
    return d_->vertices[static_cast<std::size_t>(polygon)];
  }
  const Vec2& center(int polygon) const { return d_->centers[static_cast<std::size_t>(polygon)]; }

  EdgeRef partner(EdgeRef e) const {
    return d_->partner[static_cast<std::size_t>(e.polygon)][static_cast<std::size_t>(e.edge)];
  }
  /// A point x on edge e corresponds to x + translation(e) on partner(e).
  const Vec2& translation(EdgeRef e) const {
    return d_->translation[static_cast<std::size_t>(e.polygon)][static_cast<std::size_t>(e.edge)];
  }

  const std::vector<VertexClass>& vertex_classes() const { return d_->classes; }
  int vertex_class_of(int polygon, int corner) const {
    return d_->corner_class[static_cast<std::size_t>(polygon)][static_cast<std::size_t>(corner)];
  }

  int genus() const { return d_->genus; }
  const FieldElement& area() const { return d_->area; }
  int edge_count() const { return d_->edge_count; }

  /// Canonical point for planar coordinates inside (or on) the given polygon.
  SurfacePoint locate(int polygon, const Vec2& coords) const;

  /// Canonical point of a polygon corner.
  SurfacePoint corner_point(int polygon, int corner) const {
    const auto& cls = d_->classes[static_cast<std::size_t>(vertex_class_of(polygon, corner))];
    const auto& rep = cls.corners.front();
    return SurfacePoint{rep.polygon, vertex(rep.polygon, rep.edge), cls.id};
  }

  /// Canonical point for an interior point of edge e.
  SurfacePoint edge_point(EdgeRef e, const Vec2& coords) const {
    const EdgeRef other = partner(e);
    if (other < e) return SurfacePoint{other.polygon, coords + translation(e), -1};
    return SurfacePoint{e.polygon, coords, -1};
  }

 private:
  struct Data {
    Context ctx;
    std::vector<Polygon> polygons;
    Gluing gluing;
    std::optional<WardInfo> ward;
    std::vector<std::vector<Vec2>> vertices;
    std::vector<Vec2> centers;
    std::vector<std::vector<EdgeRef>> partner;
    std::vector<std::vector<Vec2>> translation;
    std::vector<std::vector<int>> corner_class;
    std::vector<VertexClass> classes;
    int genus = 0;
    int edge_count = 0;
    FieldElement area;
    // Enclosures (value, error) of vertex and edge coordinates.
    std::vector<std::vector<std::array<double, 4>>> vertex_approx;
    std::vector<std::vector<std::array<double, 2>>> edge_approx;
  };
  std::shared_ptr<const Data> d_;
};

namespace detail {

// Number of times the direction +x lies in the half-open angular sector
// [outgoing, reversed incoming) at a corner.
inline int positive_x_in_corner(const Vec2& incoming, const Vec2& outgoing) {
  const Vec2 back = -incoming;
  const int by = outgoing.y.sign();
  if (by == 0 && outgoing.x.sign() > 0) return 1;
  return (-by > 0 && back.y.sign() > 0) ? 1 : 0;
}

inline int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

}  // namespace detail

inline Surface Surface::create(Context ctx, std::vector<Polygon> polygons, Gluing gluing,
                               std::optional<WardInfo> ward) {
  if (polygons.empty()) throw InvalidSurface("surface needs at least one polygon");
  auto d = std::make_shared<Data>();
  d->ctx = ctx;
  d->ward = ward;

  std::vector<int> offset;
  int total = 0;
  for (std::size_t i = 0; i < polygons.size(); ++i) {
    const auto& p = polygons[i];
    if (p.id != static_cast<int>(i)) throw InvalidSurface("polygon ids must be 0..F-1 in order");
    if (p.size() < 3) throw InvalidSurface("polygon " + std::to_string(p.id) + " has fewer than 3 edges");
    Vec2 sum{ctx.zero(), ctx.zero()};
    bool strictly_turning = false;
    for (int j = 0; j < p.size(); ++j) {
      const auto& e = p.edges[static_cast<std::size_t>(j)];
      if (!(e.x.context() == ctx) || !(e.y.context() == ctx)) {
        throw ContextMismatch("polygon edge from a different field context");
      }
      if (e.is_zero()) throw InvalidSurface("zero-length edge");
      sum = sum + e;
      const int turn = cross(e, p.edges[static_cast<std::size_t>((j + 1) % p.size())]).sign();
      if (turn < 0) throw InvalidSurface("polygon " + std::to_string(p.id) + " is not convex and counterclockwise");
      if (turn > 0) strictly_turning = true;
    }
    if (!sum.is_zero()) throw InvalidSurface("polygon " + std::to_string(p.id) + " is not closed");
    if (!strictly_turning) throw InvalidSurface("degenerate polygon");
    offset.push_back(total);
    total += p.size();
  }

  d->partner.resize(polygons.size());
  d->translation.resize(polygons.size());
  for (std::size_t i = 0; i < polygons.size(); ++i) {
    d->partner[i].assign(polygons[i].edges.size(), EdgeRef{-1, -1});
    d->translation[i].resize(polygons[i].edges.size());
    d->vertices.push_back(polygons[i].vertices());
    d->centers.push_back(polygons[i].centroid());
    auto& va = d->vertex_approx.emplace_back();
    for (const auto& v : d->vertices.back()) {
      const auto [x, ex] = v.x.enclosure();
      const auto [y, ey] = v.y.enclosure();
      va.push_back({x, ex, y, ey});
    }
    auto& ea = d->edge_approx.emplace_back();
    for (const auto& e : polygons[i].edges) ea.push_back({e.x.approx(), e.y.approx()});
  }
  auto valid_ref = [&](const EdgeRef& e) {
    return e.polygon >= 0 && e.polygon < static_cast<int>(polygons.size()) && e.edge >= 0 &&
           e.edge < polygons[static_cast<std::size_t>(e.polygon)].size();
  };
  for (const auto& [a, b] : gluing.pairs) {
    if (!valid_ref(a) || !valid_ref(b)) throw InvalidSurface("gluing refers to a missing edge");
    if (a == b) throw InvalidSurface("edge glued to itself");
    auto& pa = d->partner[static_cast<std::size_t>(a.polygon)][static_cast<std::size_t>(a.edge)];
    auto& pb = d->partner[static_cast<std::size_t>(b.polygon)][static_cast<std::size_t>(b.edge)];
    if (pa.polygon >= 0 || pb.polygon >= 0) throw InvalidSurface("edge appears in more than one gluing pair");
    const auto& ea = polygons[static_cast<std::size_t>(a.polygon)].edges[static_cast<std::size_t>(a.edge)];
    const auto& eb = polygons[static_cast<std::size_t>(b.polygon)].edges[static_cast<std::size_t>(b.edge)];
    if (!(ea + eb).is_zero()) throw InvalidSurface("glued edges are not exact opposites");
    pa = b;
    pb = a;
  }
  for (std::size_t i = 0; i < polygons.size(); ++i) {
    for (std::size_t j = 0; j < polygons[i].edges.size(); ++j) {
      const EdgeRef other = d->partner[i][j];
      if (other.polygon < 0) throw InvalidSurface("edge left unglued");
      // start of edge j is identified with the end of the partner edge
      const auto& qv = d->vertices[static_cast<std::size_t>(other.polygon)];
      const auto end_other = qv[static_cast<std::size_t>((other.edge + 1) % static_cast<int>(qv.size()))];
      d->translation[i][j] = end_other - d->vertices[i][j];
    }
  }

  // Vertex identification.
  std::vector<int> parent(static_cast<std::size_t>(total));
  std::iota(parent.begin(), parent.end(), 0);
  auto corner_index = [&](int poly, int corner) {
    const int m = polygons[static_cast<std::size_t>(poly)].size();
    return offset[static_cast<std::size_t>(poly)] + ((corner % m) + m) % m;
  };
  auto unite = [&](int x, int y) {
    x = detail::find_root(parent, x);
    y = detail::find_root(parent, y);
    if (x != y) parent[static_cast<std::size_t>(std::max(x, y))] = std::min(x, y);
  };
  for (const auto& [a, b] : gluing.pairs) {
    unite(corner_index(a.polygon, a.edge), corner_index(b.polygon, b.edge + 1));
    unite(corner_index(a.polygon, a.edge + 1), corner_index(b.polygon, b.edge));
  }
  std::vector<int> root_to_class(static_cast<std::size_t>(total), -1);
  d->corner_class.resize(polygons.size());
  for (std::size_t i = 0; i < polygons.size(); ++i) {
    const int m = polygons[i].size();
    d->corner_class[i].resize(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
      const int root = detail::find_root(parent, corner_index(static_cast<int>(i), j));
      int& cls = root_to_class[static_cast<std::size_t>(root)];
      if (cls < 0) {
        cls = static_cast<int>(d->classes.size());
        d->classes.push_back(VertexClass{cls, {}, 0});
      }
      d->corner_class[i][static_cast<std::size_t>(j)] = cls;
      auto& vc = d->classes[static_cast<std::size_t>(cls)];
      vc.corners.push_back(EdgeRef{static_cast<int>(i), j});
      const auto& edges = polygons[i].edges;
      vc.cone_multiple += detail::positive_x_in_corner(edges[static_cast<std::size_t>((j + m - 1) % m)],
                                                       edges[static_cast<std::size_t>(j)]);
    }
  }

  const int v = static_cast<int>(d->classes.size());
  const int e = total / 2;
  const int f = static_cast<int>(polygons.size());
  const int chi = v - e + f;
  if (chi % 2 != 0) throw InvalidSurface("odd Euler characteristic");
  d->genus = (2 - chi) / 2;
  int excess = 0;
  for (const auto& vc : d->classes) {
    if (vc.cone_multiple < 1) throw InvalidSurface("vertex class with cone angle below 2 pi");
    excess += vc.cone_multiple - 1;
  }
  if (excess != 2 * d->genus - 2) throw InvalidSurface("Gauss-Bonnet check failed");
  d->edge_count = total;

  FieldElement area = ctx.zero();
  for (const auto& p : polygons) area += p.area();
  d->area = area;
  d->polygons = std::move(polygons);
  d->gluing = std::move(gluing);

  Surface s;
  s.d_ = std::move(d);
  return s;
}

inline SurfacePoint Surface::locate(int polygon, const Vec2& coords) const {
  if (polygon < 0 || polygon >= polygon_count()) {
    throw LocationError("no polygon " + std::to_string(polygon));
  }
  const auto& poly = this->polygon(polygon);
  const auto& vs = vertices(polygon);
  const auto& va = d_->vertex_approx[static_cast<std::size_t>(polygon)];
  const auto& ea = d_->edge_approx[static_cast<std::size_t>(polygon)];
  const auto [px, pex] = coords.x.enclosure();
  const auto [py, pey] = coords.y.enclosure();
  const int m = poly.size();
  int on_edge = -1;
  int zeros = 0;
  for (int j = 0; j < m; ++j) {
    const auto& v = va[static_cast<std::size_t>(j)];
    const auto& e = ea[static_cast<std::size_t>(j)];
    const double dx = px - v[0];
    const double dy = py - v[2];
    const double val = e[0] * dy - e[1] * dx;
    const double emag = std::fabs(e[0]) + std::fabs(e[1]);
    const double tol = (pex + pey + v[1] + v[3]) * emag + 1e-12 * (1.0 + emag) * (1.0 + std::fabs(dx) + std::fabs(dy));
    int side = 0;
    if (val > tol) {
      side = 1;
    } else if (val < -tol) {
      side = -1;
    } else {
      side = cross(poly.edges[static_cast<std::size_t>(j)], coords - vs[static_cast<std::size_t>(j)]).sign();
    }
    if (side < 0) throw LocationError("point lies outside polygon " + std::to_string(polygon));
    if (side == 0) {
      ++zeros;
      on_edge = j;
    }
  }
  if (zeros == 0) return SurfacePoint{polygon, coords, -1};
  for (int j = 0; j < m; ++j) {
    if (vs[static_cast<std::size_t>(j)] == coords) return corner_point(polygon, j);
  }
  return edge_point(EdgeRef{polygon, on_edge}, coords);
}

inline SurfacePoint locate(const Surface& s, int polygon, const Vec2& coords) {
  return s.locate(polygon, coords);
}

inline int genus(const Surface& s) { return s.genus(); }

/// Vertex classes with their cone angles as multiples of 2 pi; classes with
/// multiple >= 2 are the singularities.
inline std::vector<std::pair<int, int>> singularities(const Surface& s) {
  std::vector<std::pair<int, int>> out;
  for (const auto& vc : s.vertex_classes()) {
    if (vc.singular()) out.emplace_back(vc.id, vc.cone_multiple);
  }
  return out;
}

inline Vec2 unit_vector(const Context& ctx, long k, long d) {
  return Vec2{trig_cos(ctx, k, d), trig_sin(ctx, k, d)};
}

/// The Ward surface: regular 2n-gon (id 0) centred at the origin with edge k
/// in direction k pi / n, and regular n-gons with even (id 1) and odd (id 2)
/// edge directions. Edge k of the 2n-gon is glued to the n-gon edge of
/// direction (k + n) pi / n. All sides have length 1.
inline Surface build_ward(int n) {
  if (n < 3) throw InvalidParameter("Ward surface requires n >= 3, got " + std::to_string(n));
  const Context ctx = make_context(n);
  std::vector<Vec2> dir;
  for (int k = 0; k < 2 * n; ++k) dir.push_back(unit_vector(ctx, k, n));

  Polygon big;
  big.id = 0;
  big.edges = dir;
  const FieldElement cot_half = trig_cos(ctx, 1, 2L * n) / trig_sin(ctx, 1, 2L * n);
  big.anchor = Vec2{ctx.rational(mpq_class(-1, 2)), -(cot_half / 2L)};

  Polygon even_gon;
  even_gon.id = 1;
  Polygon odd_gon;
  odd_gon.id = 2;
  for (int j = 0; j < n; ++j) {
    even_gon.edges.push_back(dir[static_cast<std::size_t>(2 * j)]);
    odd_gon.edges.push_back(dir[static_cast<std::size_t>(2 * j + 1)]);
  }

  Gluing gluing;
  auto partner_of = [n](int k) {
    const int m = (k + n) % (2 * n);
    return m % 2 == 0 ? EdgeRef{1, m / 2} : EdgeRef{2, (m - 1) / 2};
  };
  for (int k = 0; k < 2 * n; ++k) gluing.pairs.emplace_back(EdgeRef{0, k}, partner_of(k));

  WardInfo info;
  info.n = n;
  if (n % 2 == 1) {
    info.even_attach_edge = 1;
    info.odd_attach_edge = n + 1;
  } else {
    const int side = n / 2;
    const int other = (side % 2 == 1) ? 0 : 2 * n - 1;
    if (side % 2 == 0) {
      info.even_attach_edge = side;
      info.odd_attach_edge = other;
    } else {
      info.odd_attach_edge = side;
      info.even_attach_edge = other;
    }
  }

  const auto big_vertices = big.vertices();
  auto place = [&](Polygon& p, int attach_edge) {
    const EdgeRef e = partner_of(attach_edge);
    Vec2 pos = big_vertices[static_cast<std::size_t>((attach_edge + 1) % (2 * n))];
    for (int j = 0; j < e.edge; ++j) pos = pos - p.edges[static_cast<std::size_t>(j)];
    p.anchor = pos;
  };
  place(even_gon, info.even_attach_edge);
  place(odd_gon, info.odd_attach_edge);

  return Surface::create(ctx, {big, even_gon, odd_gon}, gluing, info);
}

/// Unit square with opposite sides glued.
inline Surface make_square_torus(const Context& ctx) {
  Polygon sq;
  sq.id = 0;
  sq.edges = {Vec2{ctx.one(), ctx.zero()}, Vec2{ctx.zero(), ctx.one()}, Vec2{-ctx.one(), ctx.zero()},
              Vec2{ctx.zero(), -ctx.one()}};
  sq.anchor = Vec2{ctx.zero(), ctx.zero()};
  Gluing g;
  g.pairs = {{EdgeRef{0, 0}, EdgeRef{0, 2}}, {EdgeRef{0, 1}, EdgeRef{0, 3}}};
  return Surface::create(ctx, {sq}, g);
}

}  // namespace ward
