#include "filtmult/hull.hpp"

#include "filtmult/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <utility>

namespace filtmult::geometry {

namespace {

using i128 = __int128;

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

HalfSpace make_primitive(std::vector<i128> normal, i128 offset) {
  std::int64_t g = 0;
  for (auto v : normal) g = gcd64(g, static_cast<std::int64_t>(v));
  g = gcd64(g, static_cast<std::int64_t>(offset));
  if (g == 0) g = 1;
  HalfSpace h;
  for (auto v : normal) h.normal.push_back(static_cast<std::int64_t>(v / g));
  h.offset = static_cast<std::int64_t>(offset / g);
  return h;
}

void finish(Hull& hull) {
  std::sort(hull.vertices.begin(), hull.vertices.end());
  hull.vertices.erase(std::unique(hull.vertices.begin(), hull.vertices.end()), hull.vertices.end());
  std::sort(hull.facets.begin(), hull.facets.end(), [](const HalfSpace& a, const HalfSpace& b) {
    return std::tie(a.normal, a.offset) < std::tie(b.normal, b.offset);
  });
  hull.facets.erase(std::unique(hull.facets.begin(), hull.facets.end()), hull.facets.end());
}

Hull hull_1d(const std::vector<Point>& pts) {
  Hull hull;
  hull.dim = 1;
  if (pts.empty()) return hull;
  auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(),
                                      [](const Point& a, const Point& b) { return a[0] < b[0]; });
  if ((*lo)[0] == (*hi)[0]) return hull;
  hull.full_dimensional = true;
  hull.volume = Rational((*hi)[0] - (*lo)[0]);
  hull.vertices = {*lo, *hi};
  hull.facets.push_back(HalfSpace{{1}, (*lo)[0]});
  hull.facets.push_back(HalfSpace{{-1}, -(*hi)[0]});
  finish(hull);
  return hull;
}

i128 cross2(const Point& o, const Point& a, const Point& b) {
  return static_cast<i128>(a[0] - o[0]) * (b[1] - o[1]) - static_cast<i128>(a[1] - o[1]) * (b[0] - o[0]);
}

Hull hull_2d(std::vector<Point> pts) {
  Hull hull;
  hull.dim = 2;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return hull;
  // Andrew's monotone chain; collinear points dropped.
  std::vector<Point> chain(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross2(chain[k - 2], chain[k - 1], p) <= 0) --k;
    chain[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross2(chain[k - 2], chain[k - 1], pts[i]) <= 0) --k;
    chain[k++] = pts[i];
  }
  chain.resize(k - 1);
  if (chain.size() < 3) return hull;
  hull.full_dimensional = true;
  hull.vertices = chain;
  i128 twice_area = 0;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const Point& p = chain[i];
    const Point& q = chain[(i + 1) % chain.size()];
    twice_area += static_cast<i128>(p[0]) * q[1] - static_cast<i128>(q[0]) * p[1];
    // counter-clockwise: interior lies to the left of p -> q
    std::vector<i128> n{-(static_cast<i128>(q[1]) - p[1]), static_cast<i128>(q[0]) - p[0]};
    hull.facets.push_back(make_primitive(n, n[0] * p[0] + n[1] * p[1]));
  }
  hull.volume = Rational(BigInt(static_cast<std::int64_t>(twice_area)), BigInt(2));
  finish(hull);
  return hull;
}

struct Vec3 {
  i128 x, y, z;
};

Vec3 sub(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
i128 dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// > 0 when p lies on the side the normal (b-a)x(c-a) points to.
i128 orient(const Point& a, const Point& b, const Point& c, const Point& p) {
  return dot(cross(sub(b, a), sub(c, a)), sub(p, a));
}

Hull hull_3d(std::vector<Point> pts) {
  Hull hull;
  hull.dim = 3;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n < 4) return hull;

  // Initial tetrahedron.
  std::size_t i0 = 0, i1 = 1, i2 = n, i3 = n;
  for (std::size_t i = 2; i < n && i2 == n; ++i) {
    Vec3 c = cross(sub(pts[i1], pts[i0]), sub(pts[i], pts[i0]));
    if (c.x != 0 || c.y != 0 || c.z != 0) i2 = i;
  }
  if (i2 == n) return hull;
  for (std::size_t i = 2; i < n && i3 == n; ++i) {
    if (i != i2 && orient(pts[i0], pts[i1], pts[i2], pts[i]) != 0) i3 = i;
  }
  if (i3 == n) return hull;

  struct Face {
    std::size_t a, b, c;
    bool alive;
  };
  std::vector<Face> faces;
  auto add_face = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t inside) {
    if (orient(pts[a], pts[b], pts[c], pts[inside]) > 0) std::swap(b, c);
    faces.push_back({a, b, c, true});
  };
  add_face(i0, i1, i2, i3);
  add_face(i0, i1, i3, i2);
  add_face(i0, i2, i3, i1);
  add_face(i1, i2, i3, i0);

  for (std::size_t p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    std::set<std::pair<std::size_t, std::size_t>> edges;
    bool any = false;
    for (auto& f : faces) {
      if (!f.alive || orient(pts[f.a], pts[f.b], pts[f.c], pts[p]) <= 0) continue;
      f.alive = false;
      any = true;
      edges.insert({f.a, f.b});
      edges.insert({f.b, f.c});
      edges.insert({f.c, f.a});
    }
    if (!any) continue;
    for (const auto& [u, v] : edges) {
      if (edges.count({v, u})) continue;
      faces.push_back({u, v, p, true});
    }
    faces.erase(std::remove_if(faces.begin(), faces.end(), [](const Face& f) { return !f.alive; }),
                faces.end());
  }

  hull.full_dimensional = true;
  i128 six_volume = 0;
  for (const auto& f : faces) {
    const Point& a = pts[f.a];
    const Point& b = pts[f.b];
    const Point& c = pts[f.c];
    hull.vertices.push_back(a);
    hull.vertices.push_back(b);
    hull.vertices.push_back(c);
    Vec3 av{a[0], a[1], a[2]};
    six_volume += dot(av, cross(Vec3{b[0], b[1], b[2]}, Vec3{c[0], c[1], c[2]}));
    Vec3 outward = cross(sub(b, a), sub(c, a));
    std::vector<i128> inward{-outward.x, -outward.y, -outward.z};
    hull.facets.push_back(make_primitive(inward, inward[0] * a[0] + inward[1] * a[1] + inward[2] * a[2]));
  }
  hull.volume = Rational(BigInt(static_cast<std::int64_t>(six_volume)), BigInt(6));
  finish(hull);
  return hull;
}

}  // namespace

bool HalfSpace::contains(const Point& p) const {
  i128 acc = 0;
  for (std::size_t i = 0; i < normal.size(); ++i) acc += static_cast<i128>(normal[i]) * p[i];
  return acc >= offset;
}

Hull convex_hull(int dim, const std::vector<Point>& points) {
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != dim)
      throw Error(ErrorCode::DimensionMismatch, "hull point of wrong dimension");
  }
  switch (dim) {
    case 1: return hull_1d(points);
    case 2: return hull_2d(points);
    case 3: return hull_3d(points);
    default:
      throw Error(ErrorCode::DimensionUnsupported,
                  "exact hull volume is implemented for dimension <= 3, got " + std::to_string(dim));
  }
}

}  // namespace filtmult::geometry
