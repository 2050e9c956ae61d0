#pragma once

// JSON persistence and reports. Field elements are written as arrays of
// "num/den" strings: the power-basis coordinates in zeta = exp(2 pi i / 4n).

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ward/periodic.hpp"

namespace ward {

using Json = nlohmann::ordered_json;

inline constexpr int kSurfaceFormatVersion = 1;
inline constexpr int kReportFormatVersion = 1;

/// Ten significant digits with an explicit marker.
inline std::string decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g (approx)", v);
  return buf;
}
inline std::string decimal(const FieldElement& x) { return decimal(x.approx()); }

inline Json to_json(const FieldElement& x) {
  Json a = Json::array();
  for (const auto& q : x.coefficients()) a.push_back(q.get_str());
  return a;
}

inline FieldElement element_from_json(const Context& ctx, const Json& j) {
  if (!j.is_array()) throw InvalidInput("field element must be an array of \"num/den\" strings");
  std::vector<mpq_class> cs;
  for (const auto& c : j) {
    if (!c.is_string()) throw InvalidInput("field element coefficient must be a string");
    mpq_class q;
    try {
      q = mpq_class(c.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw InvalidInput("bad rational \"" + c.get<std::string>() + "\"");
    }
    if (q.get_den() == 0) throw InvalidInput("zero denominator in \"" + c.get<std::string>() + "\"");
    q.canonicalize();
    cs.push_back(q);
  }
  return ctx.from_coefficients(cs);
}

inline Json to_json(const Vec2& v) { return Json::array({to_json(v.x), to_json(v.y)}); }

inline Vec2 vec_from_json(const Context& ctx, const Json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidInput("vector must be a pair of field elements");
  return Vec2{element_from_json(ctx, j[0]), element_from_json(ctx, j[1])};
}

inline Json value_json(const FieldElement& x) {
  return Json{{"exact", to_json(x)}, {"decimal", decimal(x)}};
}

inline Json to_json(const SurfacePoint& p) {
  Json j{{"polygon", p.polygon}, {"coords", to_json(p.coords)},
         {"decimal", Json::array({decimal(p.coords.x), decimal(p.coords.y)})}};
  if (p.is_vertex()) j["vertex_class"] = p.vertex_class;
  return j;
}

// ---- surfaces ----

inline Json to_json(const Surface& s) {
  const auto& ctx = s.context();
  Json j;
  j["format"] = "ward-surface";
  j["version"] = kSurfaceFormatVersion;
  j["field"] = Json{{"n", ctx.n()}, {"conductor", ctx.conductor()}, {"degree", ctx.degree()}};
  Json polys = Json::array();
  for (const auto& p : s.polygons()) {
    Json edges = Json::array();
    for (const auto& e : p.edges) edges.push_back(to_json(e));
    polys.push_back(Json{{"id", p.id}, {"anchor", to_json(p.anchor)}, {"edges", edges}});
  }
  j["polygons"] = polys;
  Json glue = Json::array();
  for (const auto& [a, b] : s.gluing().pairs) {
    glue.push_back(Json::array({Json::array({a.polygon, a.edge}), Json::array({b.polygon, b.edge})}));
  }
  j["gluing"] = glue;
  if (const auto& w = s.ward()) {
    j["ward"] = Json{{"n", w->n},
                     {"two_n_gon", w->two_n_gon},
                     {"even_ngon", w->even_ngon},
                     {"odd_ngon", w->odd_ngon},
                     {"even_attach_edge", w->even_attach_edge},
                     {"odd_attach_edge", w->odd_attach_edge}};
  } else {
    j["ward"] = nullptr;
  }
  Json classes = Json::array();
  for (const auto& vc : s.vertex_classes()) {
    Json corners = Json::array();
    for (const auto& c : vc.corners) corners.push_back(Json::array({c.polygon, c.edge}));
    classes.push_back(Json{{"id", vc.id}, {"cone_angle_pi", 2 * vc.cone_multiple}, {"corners", corners}});
  }
  j["derived"] = Json{{"genus", s.genus()},
                      {"area", to_json(s.area())},
                      {"singularities", static_cast<int>(singularities(s).size())},
                      {"vertex_classes", classes}};
  return j;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline std::string serialize(const Surface& s) { return dump(to_json(s)); }

namespace detail {

inline const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline int require_int(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_integer()) throw InvalidInput(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

inline EdgeRef edge_ref_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw InvalidInput("edge reference must be [polygon, edge]");
  }
  return EdgeRef{j[0].get<int>(), j[1].get<int>()};
}

}  // namespace detail

inline Surface surface_from_json(const Json& j) {
  if (!j.is_object() || j.value("format", "") != "ward-surface") throw InvalidInput("not a ward-surface document");
  const int version = detail::require_int(j, "version");
  if (version != kSurfaceFormatVersion) {
    throw InvalidInput("unsupported surface format version " + std::to_string(version));
  }
  const int n = detail::require_int(detail::require(j, "field"), "n");
  const Context ctx = make_context(n);
  std::vector<Polygon> polys;
  for (const auto& pj : detail::require(j, "polygons")) {
    Polygon p;
    p.id = detail::require_int(pj, "id");
    p.anchor = vec_from_json(ctx, detail::require(pj, "anchor"));
    for (const auto& e : detail::require(pj, "edges")) p.edges.push_back(vec_from_json(ctx, e));
    polys.push_back(std::move(p));
  }
  Gluing g;
  for (const auto& pr : detail::require(j, "gluing")) {
    if (!pr.is_array() || pr.size() != 2) throw InvalidInput("gluing entry must be a pair of edge references");
    g.pairs.emplace_back(detail::edge_ref_from_json(pr[0]), detail::edge_ref_from_json(pr[1]));
  }
  std::optional<WardInfo> ward;
  if (j.contains("ward") && !j.at("ward").is_null()) {
    const Json& w = j.at("ward");
    WardInfo info;
    info.n = detail::require_int(w, "n");
    info.two_n_gon = detail::require_int(w, "two_n_gon");
    info.even_ngon = detail::require_int(w, "even_ngon");
    info.odd_ngon = detail::require_int(w, "odd_ngon");
    info.even_attach_edge = detail::require_int(w, "even_attach_edge");
    info.odd_attach_edge = detail::require_int(w, "odd_attach_edge");
    if (info.n != n) throw InvalidInput("ward.n disagrees with field.n");
    ward = info;
  }
  Surface s = Surface::create(ctx, std::move(polys), std::move(g), ward);
  if (j.contains("derived")) {
    const Json& d = j.at("derived");
    if (d.contains("genus") && d.at("genus") != s.genus()) {
      throw InvalidSurface("recorded genus " + d.at("genus").dump() + " disagrees with computed genus " +
                           std::to_string(s.genus()));
    }
  }
  return s;
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

inline Surface deserialize_surface(const std::string& text) { return surface_from_json(parse_json(text)); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return os.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("cannot write " + path);
}

inline Surface load_surface(const std::string& path) { return deserialize_surface(read_file(path)); }
inline void save_surface(const Surface& s, const std::string& path) { write_file(path, serialize(s)); }

// ---- reports ----

inline Json to_json(const Direction& d) {
  return Json{{"vector", to_json(d.vector())}, {"angle_radians", decimal(d.angle_approx())}};
}

inline Json to_json(const CylinderDecomposition& d) {
  Json j;
  j["format"] = "ward-decomposition";
  j["version"] = kReportFormatVersion;
  j["n"] = d.surface().context().n();
  j["direction"] = to_json(d.direction());
  Json cyls = Json::array();
  FieldElement area = d.surface().context().zero();
  for (const auto& c : d.cylinders()) {
    Json strips = Json::array();
    for (const auto& st : c.strips) {
      strips.push_back(Json{{"polygon", st.polygon},
                            {"bottom", to_json(st.bottom)},
                            {"top", to_json(st.top)},
                            {"left_edge", st.left_edge},
                            {"right_edge", st.right_edge}});
    }
    cyls.push_back(Json{{"id", c.id},
                        {"width", value_json(c.width)},
                        {"height", value_json(c.height)},
                        {"modulus", value_json(c.modulus)},
                        {"strips", strips}});
    area += c.width * c.height;
  }
  j["cylinders"] = cyls;
  j["area_check"] = area == d.surface().area();
  return j;
}

inline Json to_json(const OrbitWitness& w) {
  return Json{{"word", w.word},
              {"point", to_json(w.point)},
              {"direction", to_json(w.direction)},
              {"cylinder", w.failure.cylinder},
              {"height", value_json(w.failure.height)},
              {"cylinder_height", value_json(w.failure.cylinder_height)},
              {"ratio", decimal(w.failure.height.approx() / w.failure.cylinder_height.approx())}};
}

inline Json to_json(const OrbitVerdict& v) {
  Json j;
  j["format"] = "ward-orbit";
  j["version"] = kReportFormatVersion;
  j["status"] = to_string(v.status);
  j["start"] = to_json(v.start);
  j["visited"] = v.visited;
  j["cap"] = v.cap;
  if (v.status == OrbitStatus::Finite) {
    Json pts = Json::array();
    for (const auto& p : v.orbit) pts.push_back(to_json(p));
    j["orbit_size"] = v.orbit.size();
    j["orbit"] = pts;
  }
  if (v.witness) j["witness"] = to_json(*v.witness);
  return j;
}

inline Json to_json(const Classification& c) {
  Json j;
  j["format"] = "ward-classification";
  j["version"] = kReportFormatVersion;
  j["parameters"] = Json{{"n", c.n}, {"denominator_bound", c.bound}, {"cap", c.cap}};
  j["counts"] = Json{{"candidates", c.candidates},
                     {"eliminated", c.eliminated},
                     {"eliminated_by_precheck", c.eliminated_by_precheck},
                     {"survivors", c.survivors.size()},
                     {"singularities", c.count(PointLabel::Singularity)},
                     {"polygon_centers", c.count(PointLabel::PolygonCenter)},
                     {"other", c.count(PointLabel::Other)},
                     {"inconclusive", c.inconclusive.size()}};
  Json surv = Json::array();
  for (const auto& s : c.survivors) {
    Json p = to_json(s.point);
    p["label"] = to_string(s.label);
    p["orbit_size"] = s.orbit_size;
    surv.push_back(std::move(p));
  }
  j["survivors"] = surv;
  Json inc = Json::array();
  for (const auto& p : c.inconclusive) inc.push_back(to_json(p));
  j["inconclusive"] = inc;
  Json wit = Json::array();
  for (const auto& v : c.witnesses) {
    if (v.witness) wit.push_back(Json{{"start", to_json(v.start)}, {"witness", to_json(*v.witness)}});
  }
  j["witness_sample"] = wit;
  j["seconds"] = c.seconds;
  return j;
}

/// One-line table row: n, singularities, centres, total.
inline std::string classification_table(const std::vector<Classification>& cs) {
  std::ostringstream os;
  os << "   n  #singularities  #centers  #other  total  inconclusive\n";
  for (const auto& c : cs) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%4d  %14zu  %8zu  %6zu  %5zu  %12zu\n", c.n, c.count(PointLabel::Singularity),
                  c.count(PointLabel::PolygonCenter), c.count(PointLabel::Other), c.survivors.size(),
                  c.inconclusive.size());
    os << buf;
  }
  return os.str();
}

}  // namespace ward
