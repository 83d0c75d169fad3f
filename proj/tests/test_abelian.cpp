#include <gtest/gtest.h>

#include <random>

#include "genusforge/abelian.hpp"
#include "genusforge/errors.hpp"
#include "genusforge/verify.hpp"
#include "oracles.hpp"

using namespace genusforge;

namespace {

ASTower tower(Residue p, std::vector<std::int64_t> i, std::vector<std::int64_t> j = {}) {
  ASTower t;
  t.p = p;
  t.base_q = p;
  t.construction_q = p;
  t.i_seq = std::move(i);
  t.j_seq = std::move(j);
  return t;
}

const ASTower& tower_of(const CurveCertificate& c) { return std::get<ASTower>(c.payload); }

}  // namespace

TEST(Abelian, GenusFormulaExamples) {
  EXPECT_EQ(genus_formula(tower(3, {1, 2}, {1, 4})), 20);
  EXPECT_EQ(genus_formula(tower(2, {1, 3, 5})), 10);
  ASTower t = tower(3, {2}, {2});
  t.twist = find_irreducible(make_field(3, 1), 8);
  EXPECT_EQ(genus_formula(t), 19);
}

TEST(Abelian, GenusOracleExamples) {
  EXPECT_EQ(genus_oracle_abelian(tower(3, {1, 2}, {1, 4})), 20);
  EXPECT_EQ(genus_oracle_abelian(tower(2, {1, 3})), 2);
  EXPECT_EQ(oracle::subcover_genus(tower(3, {1, 2}, {1, 4})), 20);
}

TEST(Abelian, ValidateRejects) {
  EXPECT_THROW(validate(tower(3, {3})), InvalidArgument);
  EXPECT_THROW(validate(tower(3, {2, 1}, {1, 2})), InvalidArgument);
  EXPECT_THROW(validate(tower(3, {1}, {1, 2})), InvalidArgument);
  ASTower t = tower(2, {3});
  t.twist = find_irreducible(make_field(2, 1), 2);
  EXPECT_THROW(validate(t), InvalidArgument);
}

TEST(Abelian, CongruenceExamples) {
  auto s = solve_congruence(3, 1, 5);
  EXPECT_EQ(s.i_seq, (std::vector<std::int64_t>{1}));
  EXPECT_EQ(s.j_seq, (std::vector<std::int64_t>{1}));
  s = solve_congruence(3, 1, 3);
  EXPECT_EQ(s.i_seq, (std::vector<std::int64_t>{1}));
  EXPECT_EQ(s.j_seq, (std::vector<std::int64_t>{2}));
  s = solve_congruence(3, 2, 4);
  EXPECT_EQ(s.i_seq, (std::vector<std::int64_t>{2, 4}));
  EXPECT_EQ(s.j_seq, (std::vector<std::int64_t>{2, 5}));
}

// Every residue for small p, n: the output meets every postcondition.
TEST(Abelian, CongruenceExhaustive) {
  for (std::int64_t p : {3, 5, 7, 11}) {
    std::int64_t pn = 1;
    for (int n = 1; n <= 4 && pn * p <= 20000; ++n) {
      pn *= p;
      for (std::int64_t d = 0; d < pn; ++d) {
        const auto s = solve_congruence(static_cast<Residue>(p), n, d);
        ASSERT_EQ(s.i_seq.size(), static_cast<std::size_t>(n));
        ASSERT_EQ(s.j_seq.size(), static_cast<std::size_t>(n));
        std::int64_t sum = 0, pk = 1;
        for (int k = 0; k < n; ++k) {
          EXPECT_GT(s.i_seq[k], 0);
          EXPECT_NE(s.i_seq[k] % p, 0);
          EXPECT_NE(s.j_seq[k] % p, 0);
          if (k) {
            EXPECT_GT(s.i_seq[k], s.i_seq[k - 1]);
            EXPECT_GT(s.j_seq[k], s.j_seq[k - 1]);
          }
          EXPECT_LT(s.i_seq[k] + s.j_seq[k], (p + 3) * (k + 1));
          sum += (s.i_seq[k] + s.j_seq[k]) * pk;
          pk *= p;
        }
        EXPECT_EQ(((sum - d) % pn + pn) % pn, 0) << "p=" << p << " n=" << n << " d=" << d;
      }
    }
  }
}

TEST(Abelian, ConstructOddExamples) {
  auto c = construct_odd(3, 19);
  EXPECT_EQ(c.claimed_point_lower_bound, 6);
  EXPECT_EQ(tower_of(c).i_seq, (std::vector<std::int64_t>{2}));
  EXPECT_EQ(tower_of(c).j_seq, (std::vector<std::int64_t>{2}));
  ASSERT_TRUE(tower_of(c).twist);
  EXPECT_EQ(tower_of(c).twist->degree(), 8);

  c = construct_odd(5, 41);
  EXPECT_EQ(c.claimed_point_lower_bound, 10);
  EXPECT_EQ(tower_of(c).i_seq, (std::vector<std::int64_t>{2}));
  EXPECT_EQ(tower_of(c).j_seq, (std::vector<std::int64_t>{1}));
  EXPECT_EQ(tower_of(c).twist->degree(), 12);

  c = construct_odd(3, 18);
  EXPECT_EQ(c.family, Family::Hyperelliptic);
  EXPECT_EQ(std::get<HyperellipticCurve>(c.payload).h.degree(), 37);
  EXPECT_EQ(c.claimed_point_lower_bound, 1);
  EXPECT_THROW(construct_odd(3, 0), InvalidArgument);
}

TEST(Abelian, ConstructEvenExamples) {
  auto c = construct_even(2, 2);
  EXPECT_EQ(tower_of(c).i_seq, (std::vector<std::int64_t>{5}));
  EXPECT_EQ(c.claimed_point_lower_bound, 2);
  c = construct_even(2, 12);
  EXPECT_EQ(tower_of(c).i_seq, (std::vector<std::int64_t>{1, 13}));
  EXPECT_EQ(c.claimed_point_lower_bound, 4);
  c = construct_even(4, 0);
  EXPECT_EQ(tower_of(c).i_seq, (std::vector<std::int64_t>{1}));
  EXPECT_EQ(tower_of(c).base_q, 4u);
  EXPECT_EQ(tower_of(c).construction_q, 2u);
}

TEST(Abelian, ConstructedGenusMatchesEveryOracle) {
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    for (std::int64_t g = 1; g <= 120; ++g) {
      const auto c = construct_abelian(q, g);
      if (c.family == Family::Hyperelliptic) {
        EXPECT_EQ(std::get<HyperellipticCurve>(c.payload).h.degree(), 2 * g + 1);
        continue;
      }
      EXPECT_EQ(genus_formula(tower_of(c)), g);
      EXPECT_EQ(genus_oracle_abelian(tower_of(c)), g);
      EXPECT_EQ(oracle::subcover_genus(tower_of(c)), g) << "q=" << q << " g=" << g;
    }
  }
}

// 500 random towers: closed formula, library oracle and the test-side
// subcover sum agree.
TEST(Abelian, RandomTowerGenus) {
  std::mt19937_64 rng(2024);
  const std::vector<Residue> primes{2, 3, 5, 7};
  for (int it = 0; it < 500; ++it) {
    const Residue p = primes[rng() % primes.size()];
    const int n = 1 + static_cast<int>(rng() % 4);
    const bool two_point = p != 2 && rng() % 2;
    ASTower t = tower(p, oracle::random_exponents(rng, p, n, 6));
    if (two_point) t.j_seq = oracle::random_exponents(rng, p, n, 6);
    const std::int64_t g = genus_formula(t);
    EXPECT_EQ(g, genus_oracle_abelian(t));
    EXPECT_EQ(g, oracle::subcover_genus(t));
    if (two_point && rng() % 3 == 0) {
      t.twist = find_irreducible(make_field(p, 1), 2 * (1 + static_cast<int>(rng() % 3)));
      EXPECT_EQ(genus_formula(t), genus_oracle_abelian(t));
      EXPECT_EQ(genus_formula(t), oracle::subcover_genus(t));
    }
  }
}

TEST(Abelian, EquationsRender) {
  const CurveCertificate c{Family::Abelian, 2, 2, 2, tower(2, {5}), {}, {}};
  const auto eqs = emit_equations(c);
  ASSERT_EQ(eqs.equations.size(), 1u);
  EXPECT_EQ(eqs.equations[0].text, "y_0^2 + y_0 = x^(-5)");
  EXPECT_EQ(equations_from_json(to_json(eqs)), eqs);

  const auto odd = emit_equations(construct_odd(3, 19));
  ASSERT_EQ(odd.equations.size(), 2u);
  EXPECT_EQ(odd.equations[1].kind, Equation::Kind::Quadratic);
  EXPECT_EQ(odd.equations[1].coeffs.size(), 9u);

  const auto hyp = emit_equations(construct_odd(3, 2));
  ASSERT_EQ(hyp.equations.size(), 1u);
  EXPECT_EQ(hyp.equations[0].coeffs.size(), 6u);
  EXPECT_EQ(hyp.equations[0].text.rfind("y^2 = ", 0), 0u);
}
