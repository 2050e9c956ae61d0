#pragma once

// Veech group matrices and exact point maps for the affine generators:
// the parabolic twist phi along a cylinder decomposition and the rotation
// psi of a Ward surface. Orbits are explored breadth-first with a
// three-valued verdict.

#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ward/flows.hpp"

namespace ward {

struct Mat2 {
  FieldElement a, b, c, d;  // [[a, b], [c, d]]

  static Mat2 identity(const Context& ctx) { return {ctx.one(), ctx.zero(), ctx.zero(), ctx.one()}; }

  FieldElement det() const { return a * d - b * c; }

  Mat2 inverse() const {
    const FieldElement inv = det().inverse();
    return {d * inv, -b * inv, -c * inv, a * inv};
  }

  Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }

  friend Mat2 operator*(const Mat2& m, const Mat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
  friend Mat2 operator-(const Mat2& m) { return {-m.a, -m.b, -m.c, -m.d}; }
  friend bool operator==(const Mat2& m, const Mat2& n) {
    return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d;
  }

  Mat2 pow(long k) const {
    Mat2 base = k < 0 ? inverse() : *this;
    unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
    Mat2 out = identity(a.context());
    while (e) {
      if (e & 1UL) out = out * base;
      base = base * base;
      e >>= 1UL;
    }
    return out;
  }
};

/// X^Y = Y X Y^-1.
inline Mat2 conjugate_by(const Mat2& x, const Mat2& y) { return y * x * y.inverse(); }

struct VeechMatrices {
  Mat2 A, B, C, mu, R, AB_mu, BC_mu;
};

inline VeechMatrices veech_matrices(int n) {
  const Context ctx = make_context(n);
  const FieldElement c = trig_cos(ctx, 1, n);
  const FieldElement s = trig_sin(ctx, 1, n);
  const FieldElement one = ctx.one();
  const FieldElement zero = ctx.zero();
  VeechMatrices m;
  m.A = {-one, -one, zero, one};
  m.B = {-one, c * 2L, zero, one};
  m.C = {zero, -one, -one, zero};
  const FieldElement csc = s.inverse();
  m.mu = {csc, -(c * csc), zero, one};
  m.R = {c, -s, s, c};
  m.AB_mu = conjugate_by(m.A * m.B, m.mu);
  m.BC_mu = conjugate_by(m.B * m.C, m.mu);
  return m;
}

using DecompositionPtr = std::shared_ptr<const CylinderDecomposition>;

/// Common shear alpha' = L * m_0 making every cylinder twist an integer power
/// of its Dehn twist; throws when moduli are incommensurable.
inline FieldElement common_shear(const CylinderDecomposition& d) {
  const auto& cyls = d.cylinders();
  if (cyls.empty()) throw CannotBuildParabolic("empty decomposition");
  const FieldElement& m0 = cyls[0].modulus;
  mpz_class l = 1;
  for (const auto& c : cyls) {
    const auto r = c.modulus.rational_ratio(m0);
    if (!r) throw CannotBuildParabolic("cylinder moduli are not commensurable");
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r->get_num().get_mpz_t());
  }
  return m0 * d.surface().context().rational(mpq_class(l));
}

/// Affine self-map of a surface acting on points.
class AffinePointMap {
 public:
  enum class Kind { Twist, Rotation, Composition };

  AffinePointMap() = default;

  static AffinePointMap twist(DecompositionPtr d, long power = 1) {
    AffinePointMap m;
    m.kind_ = Kind::Twist;
    m.power_ = power;
    m.surface_ = d->surface();
    m.shear_ = std::make_shared<const FieldElement>(common_shear(*d));
    m.decomp_ = std::move(d);
    m.name_ = power == 1 ? "phi" : (power == -1 ? "phi^-1" : "phi^" + std::to_string(power));
    return m;
  }

  static AffinePointMap rotation(const Surface& s, long power = 1);

  /// Applies maps in order: chain[0] first.
  static AffinePointMap compose(std::vector<AffinePointMap> chain) {
    if (chain.empty()) throw InvalidParameter("empty composition");
    AffinePointMap m;
    m.kind_ = Kind::Composition;
    m.surface_ = chain.front().surface_;
    std::string name;
    for (const auto& c : chain) name += (name.empty() ? "" : " ") + c.name_;
    m.name_ = name;
    m.chain_ = std::move(chain);
    return m;
  }

  Kind kind() const { return kind_; }
  long power() const { return power_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  const Surface& surface() const { return surface_; }
  const DecompositionPtr& decomposition() const { return decomp_; }

  /// Decompositions attached to this map (the twist's own, recursively).
  std::vector<DecompositionPtr> decompositions() const {
    std::vector<DecompositionPtr> out;
    if (decomp_) out.push_back(decomp_);
    for (const auto& c : chain_) {
      for (auto& d : c.decompositions()) out.push_back(std::move(d));
    }
    return out;
  }

  /// Derivative in the standard basis.
  Mat2 derivative() const {
    const Context& ctx = surface_.context();
    switch (kind_) {
      case Kind::Twist: {
        const Vec2& u = decomp_->direction().vector();
        const Vec2 v{-u.y, u.x};
        const Mat2 f{u.x, v.x, u.y, v.y};  // orthonormal frame, inverse = transpose
        const Mat2 ft{u.x, u.y, v.x, v.y};
        const Mat2 shear{ctx.one(), *shear_ * power_, ctx.zero(), ctx.one()};
        return f * shear * ft;
      }
      case Kind::Rotation:
        return rot_->r;
      case Kind::Composition: {
        Mat2 m = Mat2::identity(ctx);
        for (const auto& c : chain_) m = c.derivative() * m;
        return m;
      }
    }
    return Mat2::identity(ctx);
  }

  AffinePointMap inverse() const {
    switch (kind_) {
      case Kind::Twist: {
        auto m = twist(decomp_, -power_);
        if (name_ == "phi") m.name_ = "phi^-1";
        if (name_ == "phi^-1") m.name_ = "phi";
        return m;
      }
      case Kind::Rotation: {
        auto m = rotation(surface_, -power_);
        return m;
      }
      case Kind::Composition: {
        std::vector<AffinePointMap> inv;
        for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) inv.push_back(it->inverse());
        return compose(std::move(inv));
      }
    }
    return *this;
  }

  SurfacePoint operator()(const SurfacePoint& p) const { return apply(p); }

  SurfacePoint apply(const SurfacePoint& p) const {
    switch (kind_) {
      case Kind::Twist:
        return apply_twist(p);
      case Kind::Rotation:
        return apply_rotation(p);
      case Kind::Composition: {
        SurfacePoint q = p;
        for (const auto& c : chain_) q = c.apply(q);
        return q;
      }
    }
    return p;
  }

 private:
  struct RotationData {
    int two_n = 0;
    Mat2 r;                       // R^power
    std::vector<int> image;       // polygon permutation
  };

  SurfacePoint apply_twist(const SurfacePoint& p) const {
    if (p.is_vertex() || power_ == 0) return p;
    const auto c = decomp_->coords(p);
    if (c.on_boundary) return p;
    const FieldElement x = c.position + *shear_ * c.height * power_;
    return decomp_->point_at(c.cylinder, x, c.height);
  }

  SurfacePoint apply_rotation(const SurfacePoint& p) const {
    const int q = rot_->image[static_cast<std::size_t>(p.polygon)];
    const Vec2 x = rot_->r * (p.coords - surface_.center(p.polygon)) + surface_.center(q);
    return surface_.locate(q, x);
  }

  Kind kind_ = Kind::Composition;
  long power_ = 1;
  std::string name_;
  Surface surface_;
  DecompositionPtr decomp_;
  std::shared_ptr<const FieldElement> shear_;
  std::shared_ptr<const RotationData> rot_;
  std::vector<AffinePointMap> chain_;
};

/// The rotation psi^power of a Ward surface: the 2n-gon turns by power * pi/n
/// about its centre, and each n-gon turns about its centre onto the n-gon of
/// the other parity when power is odd.
inline AffinePointMap AffinePointMap::rotation(const Surface& s, long power) {
  if (!s.valid() || !s.ward()) throw UnsupportedSurface("rotation map needs a Ward surface");
  const int n = s.ward()->n;
  const Context& ctx = s.context();
  auto data = std::make_shared<RotationData>();
  data->two_n = 2 * n;
  const long k = ((power % (2 * n)) + 2 * n) % (2 * n);
  const Mat2 r1{trig_cos(ctx, 1, n), -trig_sin(ctx, 1, n), trig_sin(ctx, 1, n), trig_cos(ctx, 1, n)};
  data->r = r1.pow(k);
  const auto& w = *s.ward();
  data->image = {w.two_n_gon, w.even_ngon, w.odd_ngon};
  if (k % 2 == 1) {
    data->image[static_cast<std::size_t>(w.even_ngon)] = w.odd_ngon;
    data->image[static_cast<std::size_t>(w.odd_ngon)] = w.even_ngon;
  }

  // The piecewise rotation must respect the gluing: the image of every
  // glued edge pair is a glued edge pair with the matching translation.
  for (const auto& poly : s.polygons()) {
    const int img = data->image[static_cast<std::size_t>(poly.id)];
    const auto& target = s.polygon(img);
    for (int j = 0; j < poly.size(); ++j) {
      const Vec2 re = data->r * poly.edges[static_cast<std::size_t>(j)];
      int jj = -1;
      for (int c = 0; c < target.size(); ++c) {
        if (target.edges[static_cast<std::size_t>(c)] == re) jj = c;
      }
      if (jj < 0) throw InvalidSurface("rotated polygon does not match its image");
      const Vec2 start = data->r * (s.vertex(poly.id, j) - s.center(poly.id)) + s.center(img);
      if (!(start == s.vertex(img, jj))) throw InvalidSurface("rotated polygon is misplaced");
      const EdgeRef other = s.partner(EdgeRef{poly.id, j});
      const int oimg = data->image[static_cast<std::size_t>(other.polygon)];
      const EdgeRef target_partner = s.partner(EdgeRef{img, jj});
      if (target_partner.polygon != oimg) throw InvalidSurface("rotation does not respect the gluing");
      const Vec2 tau = data->r * (s.translation(EdgeRef{poly.id, j}) - s.center(other.polygon) + s.center(poly.id)) +
                       s.center(oimg) - s.center(img);
      if (!(tau == s.translation(EdgeRef{img, jj}))) throw InvalidSurface("rotation does not respect the gluing");
    }
  }

  AffinePointMap m;
  m.kind_ = Kind::Rotation;
  m.power_ = power;
  m.surface_ = s;
  m.rot_ = std::move(data);
  m.name_ = power == 1 ? "psi" : (power == -1 ? "psi^-1" : "psi^" + std::to_string(power));
  return m;
}

inline AffinePointMap twist_map(const CylinderDecomposition& d) {
  return AffinePointMap::twist(std::make_shared<const CylinderDecomposition>(d));
}

inline AffinePointMap twist_map(DecompositionPtr d) { return AffinePointMap::twist(std::move(d)); }

inline AffinePointMap rotation_map(const Surface& s) { return AffinePointMap::rotation(s); }

/// A point at irrational relative height in some cylinder of a decomposition.
struct HeightFailure {
  int cylinder = -1;
  FieldElement height;           // h'
  FieldElement cylinder_height;
};

/// Checks that h'/height is rational in every cylinder of d containing p.
inline std::optional<HeightFailure> irrational_height(const CylinderDecomposition& d, const SurfacePoint& p) {
  if (p.is_vertex()) return std::nullopt;
  for (const auto& c : d.coords_all(p)) {
    if (c.on_boundary) continue;
    const auto& h = d.cylinder(c.cylinder).height;
    if (!c.height.rational_ratio(h)) return HeightFailure{c.cylinder, c.height, h};
  }
  return std::nullopt;
}

struct HeightCertificate {
  bool pass = true;
  int decomposition = -1;  // index of the first failing decomposition
  std::optional<HeightFailure> failure;
};

inline HeightCertificate rational_height_certificate(const SurfacePoint& p, const std::vector<DecompositionPtr>& decomps) {
  for (std::size_t i = 0; i < decomps.size(); ++i) {
    if (auto f = irrational_height(*decomps[i], p)) return {false, static_cast<int>(i), std::move(f)};
  }
  return {};
}

enum class OrbitStatus { Finite, Infinite, Inconclusive };

inline const char* to_string(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::Finite:
      return "finite";
    case OrbitStatus::Infinite:
      return "infinite";
    case OrbitStatus::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

struct OrbitWitness {
  std::string word;         // applied left to right to the start point
  SurfacePoint point;       // image of the start point under the word
  int decomposition = -1;   // index into the consulted decompositions
  Direction direction;
  HeightFailure failure;
};

struct OrbitVerdict {
  OrbitStatus status = OrbitStatus::Inconclusive;
  SurfacePoint start;
  std::vector<SurfacePoint> orbit;  // sorted canonically when finite
  std::optional<OrbitWitness> witness;
  std::size_t visited = 0;
  std::size_t cap = 0;
  std::vector<DecompositionPtr> decompositions;
};

/// Generators together with their inverses, named "g" and "g^-1".
inline std::vector<AffinePointMap> with_inverses(const std::vector<AffinePointMap>& gens) {
  std::vector<AffinePointMap> out;
  for (const auto& g : gens) {
    out.push_back(g);
    auto inv = g.inverse();
    const auto& nm = g.name();
    if (nm.size() > 3 && nm.compare(nm.size() - 3, 3, "^-1") == 0) {
      inv.set_name(nm.substr(0, nm.size() - 3));
    } else {
      inv.set_name(nm + "^-1");
    }
    out.push_back(std::move(inv));
  }
  return out;
}

inline std::vector<std::string> split_word(const std::string& word) {
  std::istringstream is(word);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

/// Applies a space-separated word of generator names (and "^-1" inverses),
/// leftmost first.
inline SurfacePoint apply_word(const std::vector<AffinePointMap>& gens, const std::string& word, SurfacePoint p) {
  const auto all = with_inverses(gens);
  for (const auto& tok : split_word(word)) {
    const AffinePointMap* m = nullptr;
    for (const auto& g : all) {
      if (g.name() == tok) m = &g;
    }
    if (!m) throw InvalidInput("unknown generator '" + tok + "' in word");
    p = m->apply(p);
  }
  return p;
}

/// Breadth-first closure of p under the generators and their inverses. Every
/// visited point is checked for irrational height in the decompositions
/// attached to the generators and in `extra`.
inline OrbitVerdict orbit(const SurfacePoint& p, const std::vector<AffinePointMap>& gens, std::size_t cap,
                          const std::vector<DecompositionPtr>& extra = {}) {
  if (cap < 1) throw InvalidParameter("orbit cap must be at least 1");
  if (gens.empty()) throw InvalidParameter("orbit needs at least one generator");
  OrbitVerdict v;
  v.start = p;
  v.cap = cap;
  for (const auto& g : gens) {
    for (auto& d : g.decompositions()) v.decompositions.push_back(std::move(d));
  }
  for (const auto& d : extra) v.decompositions.push_back(d);
  std::vector<DecompositionPtr> uniq;
  for (const auto& d : v.decompositions) {
    if (std::find(uniq.begin(), uniq.end(), d) == uniq.end()) uniq.push_back(d);
  }
  v.decompositions = std::move(uniq);

  const auto all = with_inverses(gens);
  struct Node {
    SurfacePoint point;
    std::size_t parent;
    std::size_t gen;
  };
  std::vector<Node> nodes;
  std::unordered_map<SurfacePoint, std::size_t, SurfacePointHash> seen;
  auto word_of = [&](std::size_t i) {
    std::vector<std::string> toks;
    while (i != 0) {
      toks.push_back(all[nodes[i].gen].name());
      i = nodes[i].parent;
    }
    std::string w;
    for (auto it = toks.rbegin(); it != toks.rend(); ++it) w += (w.empty() ? "" : " ") + *it;
    return w;
  };
  auto check = [&](std::size_t i) -> bool {
    const auto cert = rational_height_certificate(nodes[i].point, v.decompositions);
    if (cert.pass) return true;
    OrbitWitness w;
    w.word = word_of(i);
    w.point = nodes[i].point;
    w.decomposition = cert.decomposition;
    w.direction = v.decompositions[static_cast<std::size_t>(cert.decomposition)]->direction();
    w.failure = *cert.failure;
    v.witness = std::move(w);
    v.status = OrbitStatus::Infinite;
    return false;
  };

  nodes.push_back(Node{p, 0, 0});
  seen.emplace(p, 0);
  if (!check(0)) {
    v.visited = 1;
    return v;
  }
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    for (std::size_t g = 0; g < all.size(); ++g) {
      SurfacePoint q = all[g].apply(nodes[head].point);
      if (seen.count(q)) continue;
      if (nodes.size() >= cap) {
        v.visited = nodes.size();
        v.status = OrbitStatus::Inconclusive;
        return v;
      }
      seen.emplace(q, nodes.size());
      nodes.push_back(Node{std::move(q), head, g});
      if (!check(nodes.size() - 1)) {
        v.visited = nodes.size();
        return v;
      }
    }
  }
  v.status = OrbitStatus::Finite;
  v.visited = nodes.size();
  for (auto& n : nodes) v.orbit.push_back(std::move(n.point));
  std::sort(v.orbit.begin(), v.orbit.end(), SurfacePointLess{});
  return v;
}

/// Recomputes a witness from scratch: applies the word to the start point and
/// checks that the height ratio in the named decomposition is irrational.
inline bool verify_witness(const OrbitVerdict& v, const std::vector<AffinePointMap>& gens) {
  if (v.status != OrbitStatus::Infinite || !v.witness) return false;
  const auto& w = *v.witness;
  const SurfacePoint q = apply_word(gens, w.word, v.start);
  if (!(q == w.point)) return false;
  const auto d = cylinder_decomposition(gens.front().surface(), w.direction);
  for (const auto& c : d.coords_all(q)) {
    if (c.on_boundary) continue;
    const auto& h = d.cylinder(c.cylinder).height;
    if (!is_rational(c.height / h)) return true;
  }
  return false;
}

}  // namespace ward
