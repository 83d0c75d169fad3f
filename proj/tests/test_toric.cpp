#include <gtest/gtest.h>

#include <random>

#include "genusforge/counting.hpp"
#include "genusforge/errors.hpp"
#include "genusforge/toric.hpp"

using namespace genusforge;

namespace {

BivariatePoly ones(const std::vector<LatticePoint>& support) {
  BivariatePoly f;
  for (auto e : support) f.set(e, FieldElem{1});
  return f;
}

}  // namespace

TEST(Toric, FamilyPolynomials) {
  EXPECT_EQ(build_family_poly(2, 1, {1, 2}).f, ones({{0, 0}, {0, 1}, {2, 0}, {0, 6}, {1, 4}}));
  EXPECT_EQ(build_family_poly(3, 1, {1, 2}).f, ones({{0, 0}, {0, 1}, {2, 0}, {0, 9}, {1, 6}}));
  EXPECT_EQ(build_family_poly(2, 2, {1, 2, 3}).f, ones({{0, 0}, {0, 1}, {3, 0}, {0, 12}, {1, 10}, {2, 6}}));
  EXPECT_THROW(build_family_poly(2, 1, {2, 2}), InvalidArgument);
  EXPECT_THROW(build_family_poly(4, 1, {1, 2}), InvalidArgument);
}

TEST(Toric, GenusFamily) {
  EXPECT_EQ(genus_family(2, 1, {1, 2}), 3);
  EXPECT_EQ(genus_family(2, 2, {1, 2, 3}), 14);
  EXPECT_EQ(genus_family(3, 1, {1, 2}), 5);
}

TEST(Toric, SelectParameters) {
  auto s = select_parameters(2, 3);
  EXPECT_EQ(s.r, 1);
  EXPECT_EQ(s.a, (std::vector<std::int64_t>{1, 2}));
  s = select_parameters(2, 14);
  EXPECT_EQ(s.r, 2);
  EXPECT_EQ(s.a, (std::vector<std::int64_t>{1, 2, 3}));
  s = select_parameters(3, 5);
  EXPECT_EQ(s.r, 1);
  EXPECT_EQ(s.a, (std::vector<std::int64_t>{1, 2}));
  for (Residue p : {2u, 3u, 5u}) {
    for (std::int64_t g = 1; g <= 200; ++g) {
      try {
        const auto t = select_parameters(p, g);
        EXPECT_EQ(genus_family(p, t.r, t.a), g);
      } catch (const InfeasibleGenus&) {
      }
    }
  }
}

// Interior lattice points of the Newton polygon equal the closed-form genus.
TEST(Toric, InteriorPointsEqualGenus) {
  std::mt19937_64 rng(5);
  for (Residue p : {2u, 3u, 5u}) {
    for (int r = 1; r <= 5; ++r) {
      for (int it = 0; it < 30; ++it) {
        std::vector<std::int64_t> a;
        std::int64_t cur = 0;
        for (int i = 0; i <= r; ++i) {
          cur += 1 + static_cast<std::int64_t>(rng() % 3);
          a.push_back(cur);
        }
        if (a.back() > 12) continue;
        const auto c = build_family_poly(p, r, a);
        EXPECT_EQ(pick_data(newton_polygon(c.f)).interior, genus_family(p, r, a));
      }
    }
  }
}

TEST(Toric, AgpropConditions) {
  const auto c = build_family_poly(2, 1, {1, 2});
  const FieldCtx f2 = make_field(2, 1);
  const auto rep = check_agprop(f2, c.f);
  EXPECT_EQ(rep.smooth, SmoothStatus::Certified);
  EXPECT_TRUE(rep.constant_term);
  EXPECT_TRUE(rep.boundary);
  EXPECT_TRUE(rep.all_pass());

  // x^2 + y^2 + 1 = (x + y + 1)^2 over F_2: singular everywhere on the line.
  const auto bad = check_agprop(f2, ones({{0, 0}, {2, 0}, {0, 2}}));
  EXPECT_EQ(bad.smooth, SmoothStatus::Failed);
  ASSERT_TRUE(bad.singular);
  EXPECT_FALSE(bad.boundary);

  const FieldCtx f3 = make_field(3, 1);
  BivariatePoly g = ones({{1, 0}, {0, 1}, {2, 2}});
  const auto no_const = check_agprop(f3, g);
  EXPECT_FALSE(no_const.constant_term);
  EXPECT_FALSE(check_agprop(f3, ones({{0, 0}, {1, 0}, {3, 0}})).constant_term);
}

TEST(Toric, EdgePolynomialsOfFamily) {
  const auto edges = edge_polynomials(build_family_poly(2, 1, {1, 2}).f);
  ASSERT_EQ(edges.size(), 4u);
  for (const auto& e : edges) {
    const bool axis = (e.from.i == 0 && e.to.i == 0) || (e.from.j == 0 && e.to.j == 0);
    if (!axis) EXPECT_EQ(e.coeffs.size(), 2u);
  }
}

TEST(Toric, CountsMatchNaive) {
  const FieldCtx f2 = make_field(2, 1);
  EXPECT_EQ(count_points_toric(f2, ones({{0, 0}, {1, 0}, {0, 1}}), 1), 3);
  for (auto [p, r, a] : std::vector<std::tuple<Residue, int, std::vector<std::int64_t>>>{
           {2, 1, {1, 2}}, {3, 1, {1, 2}}, {2, 2, {1, 2, 3}}, {5, 1, {1, 2}}, {2, 1, {2, 5}}}) {
    const auto c = build_family_poly(p, r, a);
    for (int m = 1; m <= 4; ++m) {
      if (std::pow(static_cast<double>(p), 2.0 * m) > 1 << 18) break;
      EXPECT_EQ(count_points_toric(c, m), naive_count_toric(c, m)) << "p=" << p << " m=" << m;
    }
    EXPECT_GE(count_points_toric(c, 1), r);
  }
}

TEST(Toric, NaiveTorusExample) {
  // 1 + x + y over F_3 has the single torus point (1, 1); the edges add
  // y = -1 (x = 0), x = -1 (y = 0) and one point at infinity.
  const auto f = ones({{0, 0}, {1, 0}, {0, 1}});
  const FieldCtx f3 = make_field(3, 1);
  EXPECT_EQ(count_points_toric(f3, f, 1), 4);
}
