#include "genusforge/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "genusforge/errors.hpp"

namespace genusforge {

namespace {

std::int64_t gcd_abs(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

void require_polygon(const LatticePolygon& p, const char* op) {
  if (!p.is_polygon()) {
    throw DegeneratePolygon(std::string(op) + ": input has " + std::to_string(p.size()) +
                            " vertices, a polygon needs at least 3");
  }
}

// 0 for directions with angle in (-pi/2, pi/2], 1 for (pi/2, 3pi/2].
int half_plane(LatticePoint d) { return (d.i > 0 || (d.i == 0 && d.j > 0)) ? 0 : 1; }

bool angle_less(LatticePoint a, LatticePoint b) {
  const int ha = half_plane(a), hb = half_plane(b);
  if (ha != hb) return ha < hb;
  return a.i * b.j - a.j * b.i > 0;
}

std::vector<LatticePoint> edge_vectors(const LatticePolygon& p) {
  const auto& v = p.vertices();
  std::vector<LatticePoint> e;
  if (v.size() == 2) {
    e = {v[1] - v[0], v[0] - v[1]};
  } else if (v.size() >= 3) {
    for (std::size_t k = 0; k < v.size(); ++k) e.push_back(v[(k + 1) % v.size()] - v[k]);
  }
  return e;
}

}  // namespace

LatticePolygon LatticePolygon::from_vertices(std::vector<LatticePoint> vertices) {
  const std::size_t n = vertices.size();
  if (n == 0) throw InvalidArgument("polygon needs at least one vertex");
  if (n == 2 && vertices[0] == vertices[1]) throw InvalidArgument("segment endpoints coincide");
  if (n >= 3) {
    for (std::size_t k = 0; k < n; ++k) {
      const LatticePoint a = vertices[k], b = vertices[(k + 1) % n];
      for (std::size_t t = 0; t < n; ++t) {
        if (t == k || t == (k + 1) % n) continue;
        if (orient(a, b, vertices[t]) <= 0) {
          throw InvalidArgument("vertices are not strictly convex in counterclockwise order");
        }
      }
    }
  }
  auto least = std::min_element(vertices.begin(), vertices.end());
  std::rotate(vertices.begin(), least, vertices.end());
  LatticePolygon out;
  out.v_ = std::move(vertices);
  return out;
}

LatticePolygon convex_hull(std::span<const LatticePoint> points) {
  std::vector<LatticePoint> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) throw InvalidArgument("convex hull of an empty set");
  LatticePolygon out;
  if (pts.size() <= 2) {
    out.v_ = pts;
    return out;
  }
  std::vector<LatticePoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& pt : pts) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], pt) <= 0) --k;
    hull[k++] = pt;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  out.v_ = std::move(hull);
  return out;
}

std::int64_t twice_area(const LatticePolygon& poly) {
  const auto& v = poly.vertices();
  if (v.size() < 3) return 0;
  std::int64_t s = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const auto& a = v[k];
    const auto& b = v[(k + 1) % v.size()];
    s += a.i * b.j - a.j * b.i;
  }
  return s;
}

bool contains(const LatticePolygon& poly, LatticePoint pt) {
  const auto& v = poly.vertices();
  if (v.size() == 1) return pt == v[0];
  if (v.size() == 2) {
    return orient(v[0], v[1], pt) == 0 && std::min(v[0], v[1]) <= pt && pt <= std::max(v[0], v[1]);
  }
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (orient(v[k], v[(k + 1) % v.size()], pt) < 0) return false;
  }
  return true;
}

PickData pick_data(const LatticePolygon& poly) {
  require_polygon(poly, "pick_data");
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  PickData out;
  std::int64_t lo_i = v[0].i, hi_i = v[0].i, lo_j = v[0].j, hi_j = v[0].j;
  for (std::size_t k = 0; k < n; ++k) {
    const LatticePoint d = v[(k + 1) % n] - v[k];
    out.boundary += gcd_abs(d.i, d.j);
    lo_i = std::min(lo_i, v[k].i);
    hi_i = std::max(hi_i, v[k].i);
    lo_j = std::min(lo_j, v[k].j);
    hi_j = std::max(hi_j, v[k].j);
  }
  out.twice_area = twice_area(poly);
  for (std::int64_t i = lo_i + 1; i < hi_i; ++i) {
    for (std::int64_t j = lo_j + 1; j < hi_j; ++j) {
      bool inside = true;
      for (std::size_t k = 0; k < n && inside; ++k) inside = orient(v[k], v[(k + 1) % n], {i, j}) > 0;
      if (inside) ++out.interior;
    }
  }
  if (out.twice_area != 2 * out.interior + out.boundary - 2) {
    throw InvalidArgument("internal: Pick identity violated");
  }
  return out;
}

bool boundary_condition(const LatticePolygon& poly) {
  require_polygon(poly, "boundary_condition");
  const auto& v = poly.vertices();
  for (std::size_t k = 0; k < v.size(); ++k) {
    const LatticePoint d = v[(k + 1) % v.size()] - v[k];
    const std::int64_t g = gcd_abs(d.i, d.j);
    const LatticePoint step{d.i / g, d.j / g};
    for (std::int64_t t = 1; t < g; ++t) {
      const LatticePoint pt{v[k].i + t * step.i, v[k].j + t * step.j};
      if (pt.i != 0 && pt.j != 0) return false;
    }
  }
  return true;
}

LatticePolygon minkowski_sum(const LatticePolygon& a, const LatticePolygon& b) {
  if (a.size() == 0 || b.size() == 0) throw InvalidArgument("minkowski_sum of an empty set");
  auto ea = edge_vectors(a), eb = edge_vectors(b);
  std::vector<LatticePoint> edges(ea.size() + eb.size());
  std::merge(ea.begin(), ea.end(), eb.begin(), eb.end(), edges.begin(), angle_less);
  std::vector<LatticePoint> merged;
  for (const auto& e : edges) {
    if (!merged.empty()) {
      LatticePoint& last = merged.back();
      if (last.i * e.j - last.j * e.i == 0 && last.i * e.i + last.j * e.j > 0) {
        last = last + e;
        continue;
      }
    }
    merged.push_back(e);
  }
  std::vector<LatticePoint> verts{a.vertices()[0] + b.vertices()[0]};
  for (std::size_t k = 0; k + 1 < merged.size(); ++k) verts.push_back(verts.back() + merged[k]);
  if (verts.size() == 2 && verts[0] > verts[1]) std::swap(verts[0], verts[1]);
  return LatticePolygon::from_vertices(std::move(verts));
}

Rational mixed_area(const LatticePolygon& a, const LatticePolygon& b) {
  const std::int64_t twice = twice_area(minkowski_sum(a, b)) - twice_area(a) - twice_area(b);
  return Rational(twice, 2);
}

bool arnold_check(const LatticePolygon& poly) {
  require_polygon(poly, "arnold_check");
  const std::int64_t v = static_cast<std::int64_t>(poly.size());
  return twice_area(poly) * 8192 >= 2 * v * v * v;
}

namespace {

struct PolygonWalker {
  int bound;
  int max_vertices;
  const std::function<void(std::span<const LatticePoint>)>& visit;
  std::vector<LatticePoint> chain;

  void extend() {
    const std::size_t k = chain.size();
    if (k >= 3) {
      bool closes = true;
      for (std::size_t t = 1; t + 1 < k && closes; ++t) closes = orient(chain.back(), chain[0], chain[t]) > 0;
      if (closes) visit(chain);
    }
    if (static_cast<int>(k) >= max_vertices) return;
    const LatticePoint first = chain[0];
    for (std::int64_t i = first.i; i <= bound; ++i) {
      for (std::int64_t j = 0; j <= bound; ++j) {
        const LatticePoint w{i, j};
        if (!(first < w)) continue;
        bool ok = true;
        for (std::size_t t = 0; t + 1 < k && ok; ++t) ok = orient(chain[t], chain[t + 1], w) > 0;
        for (std::size_t t = 0; t + 1 < k && ok; ++t) ok = orient(chain.back(), w, chain[t]) > 0;
        if (!ok) continue;
        chain.push_back(w);
        extend();
        chain.pop_back();
      }
    }
  }
};

}  // namespace

void for_each_convex_polygon(int bound, int max_vertices,
                             const std::function<void(std::span<const LatticePoint>)>& visit,
                             const LatticePoint* first) {
  if (bound < 0 || max_vertices < 3) throw InvalidArgument("for_each_convex_polygon: bad bounds");
  PolygonWalker walker{bound, max_vertices, visit, {}};
  for (std::int64_t i = 0; i <= bound; ++i) {
    for (std::int64_t j = 0; j <= bound; ++j) {
      const LatticePoint v0{i, j};
      if (first && !(*first == v0)) continue;
      walker.chain = {v0};
      walker.extend();
    }
  }
}

VgonMinimum min_interior_vgon(int v, int bound) {
  if (v < 3 || v > 8 || bound < 1 || bound > 8) {
    throw InvalidArgument("min_interior_vgon: need 3 <= v <= 8 and 1 <= bound <= 8");
  }
  bool found = false;
  VgonMinimum best;
  for_each_convex_polygon(bound, v, [&](std::span<const LatticePoint> verts) {
    if (static_cast<int>(verts.size()) != v) return;
    auto poly = LatticePolygon::from_vertices({verts.begin(), verts.end()});
    const std::int64_t interior = pick_data(poly).interior;
    if (!found || interior < best.interior) {
      found = true;
      best = {interior, std::move(poly)};
    }
  });
  if (!found) throw InvalidArgument("no convex lattice " + std::to_string(v) + "-gon fits in the box");
  return best;
}

void BivariatePoly::set(LatticePoint exponent, FieldElem c) {
  if (exponent.i < 0 || exponent.j < 0) throw InvalidArgument("negative exponent");
  if (c.code == 0) {
    terms_.erase(exponent);
  } else {
    terms_[exponent] = c;
  }
}

FieldElem BivariatePoly::coeff(LatticePoint exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? FieldElem{} : it->second;
}

std::vector<LatticePoint> BivariatePoly::support() const {
  std::vector<LatticePoint> out;
  for (const auto& [e, c] : terms_) out.push_back(e);
  return out;
}

FieldElem BivariatePoly::eval(const FieldCtx& ctx, FieldElem x, FieldElem y) const {
  FieldElem acc{0};
  for (const auto& [e, c] : terms_) {
    acc = ctx.add(acc, ctx.mul(c, ctx.mul(ctx.pow(x, e.i), ctx.pow(y, e.j))));
  }
  return acc;
}

BivariatePoly BivariatePoly::d_dx(const FieldCtx& ctx) const {
  BivariatePoly out;
  for (const auto& [e, c] : terms_) {
    if (e.i % ctx.characteristic() == 0) continue;
    out.set({e.i - 1, e.j}, ctx.mul(ctx.from_int(e.i), c));
  }
  return out;
}

BivariatePoly BivariatePoly::d_dy(const FieldCtx& ctx) const {
  BivariatePoly out;
  for (const auto& [e, c] : terms_) {
    if (e.j % ctx.characteristic() == 0) continue;
    out.set({e.i, e.j - 1}, ctx.mul(ctx.from_int(e.j), c));
  }
  return out;
}

LatticePolygon newton_polygon(const BivariatePoly& f) {
  if (f.is_zero()) throw DegeneratePolygon("newton_polygon of the zero polynomial");
  auto hull = convex_hull(f.support());
  if (!hull.is_polygon()) throw DegeneratePolygon("support of f lies on a line");
  return hull;
}

}  // namespace genusforge
