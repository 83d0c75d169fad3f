#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "genusforge/bigint.hpp"

namespace genusforge {

struct ZetaData {
  std::uint64_t q = 2;
  int g = 0;
  std::vector<std::int64_t> counts;    // N_1, N_2, ...
  std::vector<BigInt> a;               // a_0 .. a_{2g}
  std::vector<std::complex<double>> roots;  // reciprocal roots, distinct
  double max_root_deviation = 0;       // max ||alpha|^2 - q|
  bool functional_equation = false;
  bool roots_ok = false;
};

inline constexpr double kRootTolerance = 1e-9;

/// L-polynomial from N_1..N_k, k >= 2g: Newton identities on N_1..N_g,
/// completion by a_{2g-i} = q^{g-i} a_i, then every supplied N_m with m > g
/// must be re-predicted exactly. Throws InconsistentCounts otherwise.
ZetaData lpolynomial_from_counts(std::uint64_t q, int g, const std::vector<std::int64_t>& counts);

/// N_m predicted by the L-polynomial a_0..a_{2g}.
std::vector<BigInt> predict_counts(std::uint64_t q, const std::vector<BigInt>& a, int up_to);

}  // namespace genusforge
