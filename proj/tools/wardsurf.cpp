// wardsurf: command-line front end for the ward library.
//
// Exit codes: 0 success, 1 self-test failure, 2 invalid input,
// 3 certification failure (inconclusive or non-periodic), 4 I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <numeric>
#include <random>
#include <string>

#include "ward/ward.hpp"

namespace {

using namespace ward;

constexpr int kExitOk = 0;
constexpr int kExitSelftest = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitIo = 4;

struct RunConfig {
  int n = 0;
  std::string surface_file;
  std::string direction = "horizontal";
  int bound = 8;
  std::size_t cap = 10000;
  std::string out;
  std::string svg;
  std::string point;
  std::string word;
  std::string generators;
  std::uint64_t seed = 1;
};

Surface input_surface(const RunConfig& c) {
  if (!c.surface_file.empty() && c.n != 0) throw InvalidInput("give either a surface file or --n, not both");
  if (!c.surface_file.empty()) return load_surface(c.surface_file);
  if (c.n == 0) throw InvalidInput("no surface: give a surface file or --n");
  return build_ward(c.n);
}

void emit(const RunConfig& c, const std::string& json_text, const std::string& svg_text) {
  if (!c.out.empty()) write_file(c.out, json_text);
  if (!c.svg.empty()) write_file(c.svg, svg_text);
}

std::string point_line(const SurfacePoint& p) {
  std::string s = "P" + std::to_string(p.polygon) + " (" + decimal(p.coords.x) + ", " + decimal(p.coords.y) +
                  ")  exact x=" + p.coords.x.to_string() + " y=" + p.coords.y.to_string();
  if (p.is_vertex()) s += "  [vertex class " + std::to_string(p.vertex_class) + "]";
  return s;
}

int cmd_build(const RunConfig& c) {
  if (c.n == 0) throw InvalidInput("build needs --n");
  const Surface s = build_ward(c.n);
  const std::string text = serialize(s);
  if (c.out.empty()) {
    std::cout << text;
  } else {
    write_file(c.out, text);
    std::cout << "wrote " << c.out << ": n=" << c.n << ", " << s.polygon_count() << " polygons, genus " << s.genus()
              << ", singularities: " << singularities(s).size() << "\n";
  }
  if (!c.svg.empty()) write_file(c.svg, render_surface_svg(s));
  return kExitOk;
}

int cmd_decompose(const RunConfig& c) {
  const Surface s = input_surface(c);
  const Direction dir = parse_direction(s.context(), c.direction);
  const auto d = cylinder_decomposition(s, dir);
  std::cout << d.cylinders().size() << " cylinders in direction " << c.direction << "\n";
  std::cout << "  id  width                   height                  modulus\n";
  for (const auto& cyl : d.cylinders()) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%4d  %-22s  %-22s  %s", cyl.id, decimal(cyl.width).c_str(),
                  decimal(cyl.height).c_str(), decimal(cyl.modulus).c_str());
    std::cout << buf << "\n      exact modulus " << cyl.modulus.to_string() << "\n";
  }
  emit(c, dump(to_json(d)), render_decomposition_svg(d));
  return kExitOk;
}

int cmd_search(const RunConfig& c) {
  const Surface s = input_surface(c);
  SearchOptions opt;
  opt.bound = c.bound;
  opt.cap = c.cap;
  const auto cls = search_periodic(s, opt);
  std::cout << classification_table({cls});
  std::cout << cls.candidates << " candidates, " << cls.eliminated << " eliminated (" << cls.eliminated_by_precheck
            << " by direct height check), " << cls.seconds << " s\n";
  for (const auto& sv : cls.survivors) {
    std::cout << "  " << to_string(sv.label) << ", orbit size " << sv.orbit_size << ": " << point_line(sv.point)
              << "\n";
  }
  for (const auto& p : cls.inconclusive) std::cout << "  inconclusive: " << point_line(p) << "\n";
  emit(c, dump(to_json(cls)), render_classification_svg(s, cls));
  return cls.clean() ? kExitOk : kExitInconclusive;
}

std::vector<AffinePointMap> select_generators(const Surface& s, const std::string& list) {
  const auto h = decompose_shared(s, Direction::horizontal(s.context()));
  std::vector<std::string> names;
  if (list.empty()) {
    names = s.ward() ? std::vector<std::string>{"phi", "psi"} : std::vector<std::string>{"phi"};
  } else {
    std::string cur;
    for (char ch : list + ",") {
      if (ch == ',' || ch == ' ') {
        if (!cur.empty()) names.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
  }
  std::vector<AffinePointMap> gens;
  for (const auto& nm : names) {
    if (nm == "phi") {
      gens.push_back(twist_map(h));
    } else if (nm == "psi") {
      gens.push_back(rotation_map(s));
    } else {
      throw InvalidInput("unknown generator '" + nm + "' (expected phi or psi)");
    }
  }
  if (gens.empty()) throw InvalidInput("no generators given");
  return gens;
}

int cmd_orbit(const RunConfig& c) {
  const Surface s = input_surface(c);
  if (c.point.empty()) throw InvalidInput("orbit needs --point");
  const SurfacePoint p = parse_point(s, c.point);
  const auto gens = select_generators(s, c.generators);
  if (!c.word.empty()) {
    const SurfacePoint q = apply_word(gens, c.word, p);
    std::cout << "start: " << point_line(p) << "\nimage under '" << c.word << "': " << point_line(q) << "\n";
    if (!c.out.empty()) {
      write_file(c.out, dump(Json{{"format", "ward-word-image"},
                                  {"version", kReportFormatVersion},
                                  {"word", c.word},
                                  {"start", to_json(p)},
                                  {"image", to_json(q)}}));
    }
    if (!c.svg.empty()) write_file(c.svg, render_surface_svg(s, {{p, "start"}, {q, "image", "#1f77b4"}}));
    return kExitOk;
  }
  const auto v = orbit(p, gens, c.cap);
  std::cout << "start: " << point_line(p) << "\nverdict: " << to_string(v.status) << " (visited " << v.visited
            << ", cap " << v.cap << ")\n";
  if (v.status == OrbitStatus::Finite) {
    std::cout << "orbit size " << v.orbit.size() << ":\n";
    for (const auto& q : v.orbit) std::cout << "  " << point_line(q) << "\n";
  }
  if (v.witness) {
    const auto& w = *v.witness;
    std::cout << "witness: word '" << w.word << "' maps the start to " << point_line(w.point) << "\n"
              << "  direction angle " << decimal(w.direction.angle_approx()) << " rad, cylinder "
              << w.failure.cylinder << ": height " << decimal(w.failure.height) << " of "
              << decimal(w.failure.cylinder_height) << " is an irrational fraction\n";
  }
  std::vector<SvgMarker> ms;
  if (v.status == OrbitStatus::Finite) {
    for (const auto& q : v.orbit) ms.push_back({q, q == p ? "start" : "", "#1f77b4"});
  } else {
    ms.push_back({p, "start"});
  }
  emit(c, dump(to_json(v)), render_surface_svg(s, ms));
  return v.status == OrbitStatus::Inconclusive ? kExitInconclusive : kExitOk;
}

int cmd_selftest(const RunConfig& c) {
  std::mt19937_64 rng(c.seed);
  int failures = 0;
  auto report = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "PASS " : "FAIL ") << what << "\n";
    failures += ok ? 0 : 1;
  };
  auto guarded = [&](const std::string& what, auto&& body) {
    try {
      report(body(), what);
    } catch (const std::exception& e) {
      report(false, what + " (" + e.what() + ")");
    }
  };

  guarded("horizontal moduli equal (2cos(pi/n)+1)/sin(pi/n), n = 3..10", [] {
    for (int n = 3; n <= 10; ++n) {
      const Surface s = build_ward(n);
      const auto& ctx = s.context();
      const FieldElement m = (trig_cos(ctx, 1, n) * 2L + 1L) / trig_sin(ctx, 1, n);
      const auto d = cylinder_decomposition(s, Direction::horizontal(ctx));
      for (const auto& cyl : d.cylinders()) {
        if (!(cyl.modulus == m)) return false;
      }
    }
    return true;
  });
  guarded("n = 4: genus 3, 3 + 3 cylinders of modulus 2 + sqrt 2", [] {
    const Surface s = build_ward(4);
    const auto& ctx = s.context();
    const FieldElement m = ctx.integer(2) + trig_cos(ctx, 1, 4) * 2L;
    for (const auto& dir : {Direction::horizontal(ctx), Direction::vertical(ctx)}) {
      const auto d = cylinder_decomposition(s, dir);
      if (d.cylinders().size() != 3) return false;
      for (const auto& cyl : d.cylinders()) {
        if (!(cyl.modulus == m)) return false;
      }
    }
    return s.genus() == 3;
  });
  guarded("psi^(2n) = id on random points, n = 4..6", [&] {
    for (int n = 4; n <= 6; ++n) {
      const Surface s = build_ward(n);
      const auto psi = rotation_map(s);
      for (int i = 0; i < 20; ++i) {
        const SurfacePoint p = random_point(s, rng);
        SurfacePoint q = p;
        for (int k = 0; k < 2 * n; ++k) q = psi(q);
        if (!(q == p)) return false;
      }
    }
    return true;
  });
  guarded("twist orbit at relative height a/d has size d", [&] {
    const Surface s = build_ward(5);
    const auto d = decompose_shared(s, Direction::horizontal(s.context()));
    const auto phi = twist_map(d);
    std::uniform_int_distribution<int> pick_den(1, 12);
    std::uniform_int_distribution<int> pick_cyl(0, static_cast<int>(d->cylinders().size()) - 1);
    for (int i = 0; i < 20; ++i) {
      const int den = pick_den(rng);
      std::uniform_int_distribution<int> pick_num(1, den);
      int num = pick_num(rng);
      while (std::gcd(num, den) != 1) num = pick_num(rng);
      const int cid = pick_cyl(rng);
      const auto& cyl = d->cylinder(cid);
      const FieldElement h = cyl.height * s.context().rational(mpq_class(num, den));
      if (compare(h, cyl.height) >= 0) continue;
      const SurfacePoint p = d->point_at(cid, cyl.width / 3L, h);
      std::size_t size = 1;
      for (SurfacePoint q = phi(p); !(q == p) && size <= 100; q = phi(q)) ++size;
      if (size != static_cast<std::size_t>(den)) return false;
    }
    return true;
  });
  guarded("search n = 4, D = 4: 4 periodic points, none inconclusive", [] {
    SearchOptions opt;
    opt.bound = 4;
    const auto cls = search_periodic(build_ward(4), opt);
    return cls.clean() && cls.survivors.size() == 4;
  });
  guarded("surface JSON round trip is byte-identical, n = 3..6", [] {
    for (int n = 3; n <= 6; ++n) {
      const std::string a = serialize(build_ward(n));
      if (serialize(deserialize_surface(a)) != a) return false;
    }
    return true;
  });
  std::cout << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed") << " (seed "
            << c.seed << ")\n";
  return failures == 0 ? kExitOk : kExitSelftest;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const NotPeriodicDirection*>(&e) || dynamic_cast<const CannotBuildParabolic*>(&e)) {
    return kExitInconclusive;
  }
  return kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on Ward-Veech translation surfaces"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_surface_input = [&](CLI::App* sub) {
    sub->add_option("surface", cfg.surface_file, "Surface JSON file written by 'build'");
    sub->add_option("--n", cfg.n, "Build the Ward surface for this n instead of loading a file")
        ->check(CLI::Range(3, 1000));
  };
  auto add_outputs = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Write the JSON report to this file");
    sub->add_option("--svg", cfg.svg, "Write an SVG drawing to this file");
  };

  auto* build = app.add_subcommand("build", "Build a Ward surface and write its JSON description");
  build->add_option("--n", cfg.n, "Number of sides of the small polygons (n >= 3)")->required()->check(CLI::Range(3, 1000));
  add_outputs(build);

  auto* decompose = app.add_subcommand("decompose", "Cylinder decomposition in a direction");
  add_surface_input(decompose);
  decompose->add_option("--direction", cfg.direction, "horizontal, vertical, or \"rot k\" (angle k pi/n)")
      ->capture_default_str();
  add_outputs(decompose);

  auto* search = app.add_subcommand("search", "Classify periodic points with bounded denominators");
  add_surface_input(search);
  search->add_option("--denominator-bound", cfg.bound, "Largest height denominator D")
      ->capture_default_str()
      ->check(CLI::Range(1, 1000));
  search->add_option("--cap", cfg.cap, "Orbit size cap")->capture_default_str()->check(CLI::PositiveNumber);
  add_outputs(search);

  auto* orbit_cmd = app.add_subcommand("orbit", "Orbit of a point under phi and psi");
  add_surface_input(orbit_cmd);
  orbit_cmd->add_option("--point", cfg.point, "Point \"[P:]x,y\", e.g. \"1/3, cos(1/4 pi)/2\"")->required();
  orbit_cmd->add_option("--word", cfg.word, "Apply this word (e.g. \"phi psi^-1\", leftmost first) instead");
  orbit_cmd->add_option("--generators", cfg.generators, "Comma-separated subset of phi,psi");
  orbit_cmd->add_option("--cap", cfg.cap, "Orbit size cap")->capture_default_str()->check(CLI::PositiveNumber);
  add_outputs(orbit_cmd);

  auto* selftest = app.add_subcommand("selftest", "Run quick internal consistency checks");
  selftest->add_option("--seed", cfg.seed, "Seed for random sample points")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*build) return cmd_build(cfg);
    if (*decompose) return cmd_decompose(cfg);
    if (*search) return cmd_search(cfg);
    if (*orbit_cmd) return cmd_orbit(cfg);
    if (*selftest) return cmd_selftest(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kExitInvalid;
}
