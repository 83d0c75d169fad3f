#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "genusforge/bigint.hpp"
#include "genusforge/upoly.hpp"

namespace genusforge {

/// A finite place of the projective line: the `index`-th monic irreducible
/// of its degree in lexicographic order. The polynomial itself is only
/// materialized for small degrees.
struct Place {
  std::int64_t degree = 1;
  std::uint64_t index = 0;
  std::optional<UPoly> poly;

  friend bool operator==(const Place&, const Place&) = default;
};

struct TameParams {
  std::uint64_t q = 2;       // field of the certificate
  std::uint64_t plan_q = 2;  // field the cover is planned over (2 for even q)
  std::vector<std::int64_t> ell;
  std::vector<std::int64_t> r;
  std::vector<std::int64_t> s;
  std::vector<std::int64_t> d;
  std::int64_t L = 1;
  std::vector<Place> places;
  std::int64_t genus = 0;
  bool above_crt_bound = true;

  friend bool operator==(const TameParams&, const TameParams&) = default;
};

/// Genus from 2g - 2 = -2L + L * sum (l_i - 1)/l_i * d_i; throws
/// InvalidArgument if that is not an integer >= 0.
std::int64_t genus_tame(const std::vector<std::int64_t>& ell, const std::vector<std::int64_t>& d);

/// 1 - L + (L/2) sum_{i>=2} (l_i - 1)^2, exact.
BigInt crt_bound_twice(const std::vector<std::int64_t>& ell);  // twice the bound
bool above_crt_bound(const std::vector<std::int64_t>& ell, std::int64_t g);

/// Least prime not dividing q.
std::int64_t least_prime_not_dividing(std::uint64_t q);

/// Throws InvalidArgument when the prime list breaks the hypotheses.
void check_prime_hypotheses(std::uint64_t plan_q, const std::vector<std::int64_t>& ell);

/// Plans a cyclic cover of degree L = prod l_i with genus g. The list must
/// start with the least prime not dividing q. Throws InfeasibleGenus when
/// s_1 < 1 or an s_1 is not integral.
TameParams plan_cover(std::uint64_t q, const std::vector<std::int64_t>& ell, std::int64_t g);

/// Verification of a plan: genus identity, degree congruences,
/// hypotheses, place degrees and distinctness. Empty string when all hold.
std::string check_tame_plan(const TameParams& t);

inline constexpr std::int64_t kPlaceMaterializeDegree = 48;

struct TameSelection {
  std::uint64_t q = 2;
  std::int64_t g = 0;
  std::int64_t ell1 = 2;
  std::int64_t x_g = 0;
  std::int64_t p1 = 0;
  std::int64_t p2 = 0;
  std::int64_t p3 = 0;
  std::vector<std::int64_t> primes;  // ascending, ell1 first
  bool refined = false;              // false: simple fallback set
  bool trivial = false;              // single-prime marker, g too small
  std::int64_t L() const;
};

TameSelection select_primes(std::uint64_t q, std::int64_t g);

struct RecordGenus {
  std::int64_t g = 0;
  std::int64_t d = 0;
  std::int64_t points_lb = 0;
  double ratio_rhs = 0;  // (2 log q) g / log g
  bool inequality_holds = false;
};

RecordGenus record_genera(std::uint64_t q, int e);

}  // namespace genusforge
