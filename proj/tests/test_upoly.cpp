#include <gtest/gtest.h>

#include "genusforge/errors.hpp"
#include "genusforge/upoly.hpp"
#include "oracles.hpp"

using namespace genusforge;

namespace {

UPoly from_ints(const FieldCtx& f, std::vector<std::int64_t> c) {
  std::vector<FieldElem> v;
  for (auto x : c) v.push_back(f.from_int(x));
  return UPoly(v);
}

}  // namespace

TEST(UPoly, FindIrreducible) {
  const FieldCtx f2 = make_field(2, 1), f3 = make_field(3, 1);
  EXPECT_EQ(find_irreducible(f2, 2), from_ints(f2, {1, 1, 1}));
  EXPECT_EQ(find_irreducible(f2, 4), from_ints(f2, {1, 1, 0, 0, 1}));
  EXPECT_EQ(find_irreducible(f3, 1), from_ints(f3, {0, 1}));
  EXPECT_THROW(find_irreducible(f2, 0), InvalidArgument);
}

TEST(UPoly, CountIrreduciblesClosedForm) {
  EXPECT_EQ(count_irreducibles(2, 1), 2);
  EXPECT_EQ(count_irreducibles(2, 3), 2);
  EXPECT_EQ(count_irreducibles(3, 2), 3);
  EXPECT_EQ(count_irreducibles(2, 4), 3);
}

// Moebius count, Ben-Or test and first_irreducibles against a sieve of all
// products of lower-degree monics.
TEST(UPoly, IrreducibilityMatchesSieve) {
  for (auto [p, k, dmax] : std::vector<std::tuple<Residue, int, int>>{{2, 1, 8}, {3, 1, 5}, {2, 2, 4}, {5, 1, 3}, {3, 2, 3}}) {
    const FieldCtx f = make_field(p, k);
    for (int d = 1; d <= dmax; ++d) {
      const std::uint64_t expected = oracle::irreducible_count(f, d);
      EXPECT_EQ(count_irreducibles(f.order(), d), expected) << "q=" << f.order() << " d=" << d;
      std::uint64_t tested = 0;
      const std::uint64_t n = pow_u64(f.order(), d);
      for (std::uint64_t idx = 0; idx < n; ++idx) tested += poly::is_irreducible(f, UPoly::monic_from_index(f, d, idx));
      EXPECT_EQ(tested, expected);
      const auto firsts = first_irreducibles(f, d, static_cast<std::size_t>(expected));
      EXPECT_EQ(firsts.size(), expected);
      EXPECT_THROW(first_irreducibles(f, d, static_cast<std::size_t>(expected) + 1), InvalidArgument);
    }
  }
}

TEST(UPoly, DivmodGcdDerivative) {
  const FieldCtx f = make_field(5, 1);
  const UPoly a = from_ints(f, {1, 2, 3, 4, 1}), b = from_ints(f, {2, 0, 1});
  const auto [quo, rem] = poly::divmod(f, a, b);
  EXPECT_EQ(poly::add(f, poly::mul(f, quo, b), rem), a);
  EXPECT_LT(rem.degree(), b.degree());
  const UPoly c = from_ints(f, {1, 1});
  EXPECT_EQ(poly::gcd(f, poly::mul(f, a, c), poly::mul(f, b, c)), poly::make_monic(f, poly::mul(f, poly::gcd(f, a, b), c)));
  EXPECT_EQ(poly::derivative(f, from_ints(f, {0, 0, 0, 0, 0, 1})), UPoly());  // d/dx x^5 = 0 over F_5
  EXPECT_FALSE(poly::is_squarefree(f, poly::mul(f, c, c)));
  EXPECT_THROW(poly::divmod(f, a, UPoly()), DivisionByZero);
}

TEST(UPoly, PowmodMatchesRepeatedMultiplication) {
  const FieldCtx f = make_field(3, 2);
  const UPoly m = find_irreducible(f, 3), x = from_ints(f, {0, 1});
  UPoly acc = UPoly::constant(f.one());
  for (int e = 0; e < 40; ++e) {
    EXPECT_EQ(poly::powmod(f, x, e, m), acc);
    acc = poly::mod(f, poly::mul(f, acc, x), m);
  }
}

TEST(UPoly, EvalAndToString) {
  const FieldCtx f = make_field(2, 1);
  const UPoly g = from_ints(f, {1, 1, 1});
  EXPECT_EQ(poly::eval(f, g, f.zero()), f.one());
  EXPECT_EQ(poly::eval(f, g, f.one()), f.one());
  EXPECT_EQ(poly::to_string(f, g), "x^2 + x + 1");
}
