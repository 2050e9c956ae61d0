#pragma once

// Deterministic SVG drawings of surfaces, cylinder decompositions and marked
// points. Geometry is exact upstream; drawing uses doubles.

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "ward/io.hpp"

namespace ward {

struct SvgOptions {
  double scale = 120.0;  // pixels per unit length
  double margin = 20.0;
  bool labels = true;    // polygon ids and edge indices
};

struct SvgMarker {
  SurfacePoint point;
  std::string label;
  std::string color = "#d62728";
};

namespace detail {

struct P2 {
  double x, y;
};

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

// Keeps the part of a convex polygon where dot(nrm, p) >= c.
inline std::vector<P2> clip(const std::vector<P2>& poly, P2 nrm, double c) {
  std::vector<P2> out;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const P2 a = poly[i], b = poly[(i + 1) % m];
    const double fa = nrm.x * a.x + nrm.y * a.y - c;
    const double fb = nrm.x * b.x + nrm.y * b.y - c;
    if (fa >= 0) out.push_back(a);
    if ((fa >= 0) != (fb >= 0)) {
      const double t = fa / (fa - fb);
      out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  return out;
}

inline const char* palette(int i) {
  static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2",
                                 "#17becf", "#bcbd22", "#7f7f7f", "#aec7e8", "#ffbb78", "#98df8a"};
  return colors[static_cast<std::size_t>(i) % (sizeof colors / sizeof colors[0])];
}

class SvgCanvas {
 public:
  SvgCanvas(const Surface& s, const SvgOptions& opt) : s_(s), opt_(opt) {
    bool first = true;
    for (const auto& poly : s.polygons()) {
      for (const auto& v : s.vertices(poly.id)) {
        const double x = v.x.approx(), y = v.y.approx();
        if (first) {
          minx_ = maxx_ = x;
          miny_ = maxy_ = y;
          first = false;
        }
        minx_ = std::min(minx_, x);
        maxx_ = std::max(maxx_, x);
        miny_ = std::min(miny_, y);
        maxy_ = std::max(maxy_, y);
      }
    }
  }

  P2 map(double x, double y) const {
    return {opt_.margin + (x - minx_) * opt_.scale, opt_.margin + (maxy_ - y) * opt_.scale};
  }

  std::string points(const std::vector<P2>& pts) const {
    std::string out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const P2 q = map(pts[i].x, pts[i].y);
      out += (i ? " " : "") + fmt(q.x) + "," + fmt(q.y);
    }
    return out;
  }

  std::vector<P2> polygon(int id) const {
    std::vector<P2> out;
    for (const auto& v : s_.vertices(id)) out.push_back({v.x.approx(), v.y.approx()});
    return out;
  }

  void header(const std::string& title) {
    const double w = (maxx_ - minx_) * opt_.scale + 2 * opt_.margin;
    const double h = (maxy_ - miny_) * opt_.scale + 2 * opt_.margin + 20;
    os_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
        << "\" viewBox=\"0 0 " << fmt(w) << ' ' << fmt(h) << "\">\n";
    os_ << "<title>" << xml_escape(title) << "</title>\n";
    os_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os_ << "<text x=\"" << fmt(opt_.margin) << "\" y=\"" << fmt(h - 6) << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << xml_escape(title) << "</text>\n";
  }

  void fill(const std::vector<P2>& pts, const char* color, const std::string& tip) {
    if (pts.size() < 3) return;
    os_ << "<polygon points=\"" << points(pts) << "\" fill=\"" << color << "\" fill-opacity=\"0.45\" stroke=\"none\">";
    if (!tip.empty()) os_ << "<title>" << xml_escape(tip) << "</title>";
    os_ << "</polygon>\n";
  }

  void outlines() {
    for (const auto& poly : s_.polygons()) {
      const auto pts = polygon(poly.id);
      os_ << "<polygon points=\"" << points(pts) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
      if (!opt_.labels) continue;
      const auto& c = s_.center(poly.id);
      const P2 q = map(c.x.approx(), c.y.approx());
      os_ << "<text x=\"" << fmt(q.x + 4) << "\" y=\"" << fmt(q.y - 4)
          << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#555\">P" << poly.id << "</text>\n";
      for (std::size_t j = 0; j < pts.size(); ++j) {
        const P2 a = pts[j], b = pts[(j + 1) % pts.size()];
        const double cx = c.x.approx(), cy = c.y.approx();
        const double mx = (a.x + b.x) / 2, my = (a.y + b.y) / 2;
        const P2 t = map(mx + 0.12 * (cx - mx), my + 0.12 * (cy - my));
        os_ << "<text x=\"" << fmt(t.x) << "\" y=\"" << fmt(t.y)
            << "\" font-family=\"sans-serif\" font-size=\"9\" fill=\"#888\" text-anchor=\"middle\">" << j
            << "</text>\n";
      }
    }
  }

  void marker(const SvgMarker& m) {
    const P2 q = map(m.point.coords.x.approx(), m.point.coords.y.approx());
    os_ << "<circle cx=\"" << fmt(q.x) << "\" cy=\"" << fmt(q.y) << "\" r=\"4\" fill=\"" << m.color
        << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
    if (!m.label.empty()) {
      os_ << "<text x=\"" << fmt(q.x + 6) << "\" y=\"" << fmt(q.y + 4)
          << "\" font-family=\"sans-serif\" font-size=\"10\">" << xml_escape(m.label) << "</text>\n";
    }
  }

  std::string finish() {
    os_ << "</svg>\n";
    return os_.str();
  }

 private:
  const Surface& s_;
  SvgOptions opt_;
  double minx_ = 0, maxx_ = 0, miny_ = 0, maxy_ = 0;
  std::ostringstream os_;
};

}  // namespace detail

/// The polygons with their labels plus optional markers.
inline std::string render_surface_svg(const Surface& s, const std::vector<SvgMarker>& markers = {},
                                      const SvgOptions& opt = {}, const std::string& title = "") {
  detail::SvgCanvas c(s, opt);
  c.header(title.empty() ? "translation surface, genus " + std::to_string(s.genus()) : title);
  c.outlines();
  for (const auto& m : markers) c.marker(m);
  return c.finish();
}

/// Cylinders shaded by id; each strip is the polygon clipped to its band.
inline std::string render_decomposition_svg(const CylinderDecomposition& d, const SvgOptions& opt = {},
                                            const std::string& title = "") {
  const Surface& s = d.surface();
  detail::SvgCanvas c(s, opt);
  const double ux = d.direction().vector().x.approx(), uy = d.direction().vector().y.approx();
  // t = cross(u, p) = ux * py - uy * px
  const detail::P2 nrm{-uy, ux};
  c.header(title.empty() ? std::to_string(d.cylinders().size()) + " cylinders, direction angle " +
                               detail::fmt(d.direction().angle_approx()) + " rad"
                         : title);
  for (const auto& cyl : d.cylinders()) {
    const std::string tip = "cylinder " + std::to_string(cyl.id) + ": modulus " + decimal(cyl.modulus);
    for (const auto& st : cyl.strips) {
      auto pts = c.polygon(st.polygon);
      pts = detail::clip(pts, nrm, st.bottom.approx());
      pts = detail::clip(pts, {-nrm.x, -nrm.y}, -st.top.approx());
      c.fill(pts, detail::palette(cyl.id), tip);
    }
  }
  c.outlines();
  return c.finish();
}

/// Survivors of a search: singularities, polygon centres and other points.
inline std::string render_classification_svg(const Surface& s, const Classification& cls, const SvgOptions& opt = {}) {
  std::vector<SvgMarker> ms;
  for (const auto& sv : cls.survivors) {
    SvgMarker m;
    m.label = std::string(to_string(sv.label)) + " (orbit " + std::to_string(sv.orbit_size) + ")";
    m.color = sv.label == PointLabel::Singularity ? "#d62728" : (sv.label == PointLabel::PolygonCenter ? "#1f77b4" : "#2ca02c");
    // draw every corner of a singular class
    if (sv.point.is_vertex()) {
      for (const auto& corner : s.vertex_classes()[static_cast<std::size_t>(sv.point.vertex_class)].corners) {
        SvgMarker v = m;
        v.point = SurfacePoint{corner.polygon, s.vertex(corner.polygon, corner.edge), sv.point.vertex_class};
        if (!(corner.polygon == sv.point.polygon && v.point.coords == sv.point.coords)) v.label.clear();
        ms.push_back(std::move(v));
      }
    } else {
      m.point = sv.point;
      ms.push_back(std::move(m));
    }
  }
  return render_surface_svg(s, ms, opt,
                            "n = " + std::to_string(cls.n) + ": " + std::to_string(cls.survivors.size()) +
                                " periodic points (denominators <= " + std::to_string(cls.bound) + ")");
}

}  // namespace ward
