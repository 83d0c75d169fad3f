#pragma once

#include <cstdint>
#include <string>

#include "genusforge/certificate.hpp"
#include "genusforge/toric.hpp"
#include "genusforge/tower.hpp"

namespace genusforge {

struct Budget {
  std::uint64_t naive = std::uint64_t{1} << 24;  // enumerated assignments
  std::uint64_t fast = std::uint64_t{1} << 28;   // x-values
};

/// Defaults overridden by GENUSFORGE_BUDGET: either "N" (both) or
/// "naive:N,fast:M" (either part optional).
Budget budget_from_env();
Budget parse_budget(const std::string& text);

struct CountOptions {
  unsigned threads = 1;
  std::uint64_t budget = Budget{}.fast;
};

/// Trace/character count of the tower over F_{base_q^m}. The x-range is
/// cut into fixed chunks of kChunk codes and partial sums are added in chunk
/// order, so the result does not depend on `threads`.
std::int64_t count_points_abelian(const ASTower& tower, int m, const CountOptions& opt = {});

/// Same count by enumerating every y for each layer and the twist.
std::int64_t naive_count_abelian(const ASTower& tower, int m, std::uint64_t budget = Budget{}.naive);

/// y^2 = h(x), deg h odd: sum_x (1 + chi(h(x))) + 1.
std::int64_t count_points_hyperelliptic(const HyperellipticCurve& c, int m, const CountOptions& opt = {});
std::int64_t naive_count_hyperelliptic(const HyperellipticCurve& c, int m, std::uint64_t budget = Budget{}.naive);

/// Torus zeros of f over F_{q^m} by enumerating (x, y), plus edge roots.
std::int64_t naive_count_toric(const ToricCurve& c, int m, std::uint64_t budget = Budget{}.naive);

inline constexpr std::uint64_t kChunk = std::uint64_t{1} << 14;

}  // namespace genusforge
