#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include <boost/rational.hpp>

#include "genusforge/field.hpp"

namespace genusforge {

struct LatticePoint {
  std::int64_t i = 0;
  std::int64_t j = 0;

  friend constexpr bool operator==(LatticePoint, LatticePoint) = default;
  friend constexpr auto operator<=>(LatticePoint, LatticePoint) = default;
};

inline LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.i + b.i, a.j + b.j}; }
inline LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.i - b.i, a.j - b.j}; }

// Cross product of (b - a) and (c - a); positive for a left turn.
inline std::int64_t orient(LatticePoint a, LatticePoint b, LatticePoint c) {
  return (b.i - a.i) * (c.j - a.j) - (b.j - a.j) * (c.i - a.i);
}

/// Convex lattice polygon, stored counterclockwise from its
/// lexicographically least vertex, with no three consecutive vertices
/// collinear.
///
/// A one-vertex or two-vertex value is a point or a segment. Those
/// degenerate states are representable so they can take part in Minkowski
/// sums and mixed areas; every other operation requires a proper polygon
/// and throws DegeneratePolygon otherwise.
class LatticePolygon {
 public:
  LatticePolygon() = default;

  /// Accepts strictly convex vertices in counterclockwise order with any
  /// starting vertex; stores the canonical rotation.
  static LatticePolygon from_vertices(std::vector<LatticePoint> vertices);

  const std::vector<LatticePoint>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  int dimension() const { return v_.size() >= 3 ? 2 : static_cast<int>(v_.size()) - 1; }
  bool is_polygon() const { return v_.size() >= 3; }

  friend bool operator==(const LatticePolygon&, const LatticePolygon&) = default;

 private:
  std::vector<LatticePoint> v_;
  friend LatticePolygon convex_hull(std::span<const LatticePoint> points);
};

/// Convex hull of a point set (may be degenerate).
LatticePolygon convex_hull(std::span<const LatticePoint> points);

struct PickData {
  std::int64_t interior = 0;
  std::int64_t boundary = 0;
  std::int64_t twice_area = 0;

  friend bool operator==(const PickData&, const PickData&) = default;
};

PickData pick_data(const LatticePolygon& poly);
std::int64_t twice_area(const LatticePolygon& poly);

/// Closed membership test (boundary counts as inside).
bool contains(const LatticePolygon& poly, LatticePoint pt);

/// True iff every boundary lattice point that is not a vertex lies on a
/// coordinate axis.
bool boundary_condition(const LatticePolygon& poly);

/// Minkowski sum by merging the counterclockwise edge sequences.
LatticePolygon minkowski_sum(const LatticePolygon& a, const LatticePolygon& b);

using Rational = boost::rational<std::int64_t>;

/// Area(a + b) - Area(a) - Area(b). Points and segments are allowed.
Rational mixed_area(const LatticePolygon& a, const LatticePolygon& b);

/// 8192 * (twice area) >= 2 * v^3.
bool arnold_check(const LatticePolygon& poly);

/// Visits every convex lattice polygon with vertices in [0, bound]^2 and
/// between 3 and max_vertices vertices, once each, in canonical form.
/// Work is split by the first (lexicographically least) vertex; `first`
/// restricts the walk to one such chunk when set.
void for_each_convex_polygon(int bound, int max_vertices,
                             const std::function<void(std::span<const LatticePoint>)>& visit,
                             const LatticePoint* first = nullptr);

struct VgonMinimum {
  std::int64_t interior = 0;
  LatticePolygon witness;
};

/// Least interior count over convex lattice v-gons with vertices in
/// [0, bound]^2; requires 3 <= v <= 8 and bound <= 8.
VgonMinimum min_interior_vgon(int v, int bound);

/// Sparse bivariate polynomial: exponent pair -> nonzero coefficient.
class BivariatePoly {
 public:
  BivariatePoly() = default;

  void set(LatticePoint exponent, FieldElem c);
  FieldElem coeff(LatticePoint exponent) const;
  const std::map<LatticePoint, FieldElem>& terms() const { return terms_; }
  std::vector<LatticePoint> support() const;
  bool is_zero() const { return terms_.empty(); }

  FieldElem eval(const FieldCtx& ctx, FieldElem x, FieldElem y) const;
  BivariatePoly d_dx(const FieldCtx& ctx) const;
  BivariatePoly d_dy(const FieldCtx& ctx) const;

  friend bool operator==(const BivariatePoly&, const BivariatePoly&) = default;

 private:
  std::map<LatticePoint, FieldElem> terms_;
};

/// Convex hull of the support; throws DegeneratePolygon if the support lies
/// on a line.
LatticePolygon newton_polygon(const BivariatePoly& f);

}  // namespace genusforge
