#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "genusforge/field.hpp"
#include "genusforge/upoly.hpp"

namespace genusforge {

/// Fibre product of Artin-Schreier layers y_k^p - y_k = x^{-i_k} (x-1)^{-j_k}
/// over the projective line, optionally followed by the quadratic cover
/// w^2 = f(x). An empty j_seq means the one-point family
/// y_k^p - y_k = x^{-i_k}.
///
/// The layers have coefficients in F_p. `construction_q` is the field the
/// curve is written over and `base_q` the field the certificate is about;
/// they differ only for even q, where the curve is built over F_2. The twist
/// lives over F_{base_q} with the make_field modulus.
struct ASTower {
  Residue p = 2;
  std::uint64_t base_q = 2;
  std::uint64_t construction_q = 2;
  std::vector<std::int64_t> i_seq;
  std::vector<std::int64_t> j_seq;
  std::optional<UPoly> twist;

  int n() const { return static_cast<int>(i_seq.size()); }
  bool two_point() const { return !j_seq.empty(); }
  std::int64_t twist_half_degree() const { return twist ? twist->degree() / 2 : 0; }

  friend bool operator==(const ASTower&, const ASTower&) = default;
};

/// Throws InvalidArgument naming the first violated invariant.
void validate(const ASTower& tower);

std::int64_t genus_formula(const ASTower& tower);

}  // namespace genusforge
