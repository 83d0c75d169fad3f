#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace genusforge {

using Residue = std::uint32_t;

// Element of F_{p^k} in polynomial-basis coordinates, packed as
// code = c_0 + c_1 p + ... + c_{k-1} p^{k-1}. Numeric order of codes is the
// lexicographic order of coordinate vectors (top coordinate most significant).
struct FieldElem {
  std::uint64_t code = 0;

  friend constexpr bool operator==(FieldElem, FieldElem) = default;
  friend constexpr auto operator<=>(FieldElem, FieldElem) = default;
};

enum class ArithOp { Add, Sub, Mul, Div };

/// Arithmetic context for F_{p^k} = F_p[t]/(modulus).
///
/// Immutable after construction; copies share the underlying state, so a
/// context is cheap to pass around and safe to read from many threads.
/// Fields with q <= kTableLimit also carry discrete log/exp tables built
/// from the lexicographically least primitive element; multiplication,
/// inversion and quadratic characters then cost a few table lookups.
class FieldCtx {
 public:
  static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 22;

  /// `modulus` is constant-term first, monic, of degree k >= 1 and must be
  /// irreducible over F_p (checked).
  FieldCtx(Residue p, std::vector<Residue> modulus);

  Residue characteristic() const;
  int degree() const;
  std::uint64_t order() const;
  std::span<const Residue> modulus() const;

  FieldElem zero() const { return {0}; }
  FieldElem one() const { return {1}; }
  FieldElem from_int(std::int64_t v) const;
  FieldElem from_coeffs(std::span<const Residue> coeffs) const;
  std::vector<Residue> coeffs(FieldElem a) const;
  bool contains(FieldElem a) const { return a.code < order(); }

  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem sub(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem mul(FieldElem a, FieldElem b) const;
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const;
  FieldElem pow(FieldElem a, std::uint64_t e) const;

  // a + a^p + ... + a^{p^{k-1}}, as a residue mod p.
  Residue trace(FieldElem a) const;
  // Multiplicative quadratic character; requires odd p.
  int quadratic_character(FieldElem a) const;

  bool has_tables() const;
  // Discrete log base primitive_element(); a must be nonzero. Tables only.
  std::uint32_t log(FieldElem a) const;
  // primitive_element()^n for n < q - 1. Tables only.
  FieldElem exp(std::uint64_t n) const;
  FieldElem primitive_element() const;

  std::string describe() const;

  friend bool operator==(const FieldCtx& a, const FieldCtx& b);

 private:
  struct Data;
  std::shared_ptr<const Data> d_;

  FieldElem mul_plain(FieldElem a, FieldElem b) const;
  FieldElem pow_plain(FieldElem a, std::uint64_t e) const;
};

/// F_{p^k} with the lexicographically least monic irreducible modulus.
/// Results are cached process-wide, so repeated calls return shared state.
FieldCtx make_field(Residue p, int k);

FieldElem arith(const FieldCtx& ctx, FieldElem a, FieldElem b, ArithOp op);

/// Embedding F_q -> F_{q^m} determined by the least root (in code order) of
/// the small field's modulus inside the big field.
class FieldEmbedding {
 public:
  FieldEmbedding(const FieldCtx& small, const FieldCtx& big);

  FieldElem operator()(FieldElem a) const;
  FieldElem root() const { return root_; }
  const FieldCtx& target() const { return big_; }

 private:
  FieldCtx small_;
  FieldCtx big_;
  FieldElem root_;
  std::vector<FieldElem> basis_images_;
};

}  // namespace genusforge
