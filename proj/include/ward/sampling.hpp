#pragma once

// Random exact points for property checks.

#include <random>

#include "ward/surface.hpp"

namespace ward {

/// A point strictly inside a random fan triangle (centre, v_j, v_j+1) of a
/// random polygon, with rational barycentric weights of weights in [1, max_weight].
template <class Rng>
SurfacePoint random_point(const Surface& s, Rng& rng, int max_weight = 60) {
  std::uniform_int_distribution<int> pick_poly(0, s.polygon_count() - 1);
  const int p = pick_poly(rng);
  const auto& vs = s.vertices(p);
  std::uniform_int_distribution<std::size_t> pick_corner(0, vs.size() - 1);
  const std::size_t j = pick_corner(rng);
  std::uniform_int_distribution<long> w(1, max_weight);
  const long a = w(rng), b = w(rng), c = w(rng);
  const Vec2 v = (mpq_class(a) * s.center(p) + mpq_class(b) * vs[j] + mpq_class(c) * vs[(j + 1) % vs.size()]) / (a + b + c);
  return s.locate(p, v);
}

}  // namespace ward
