#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "genusforge/bigint.hpp"
#include "genusforge/field.hpp"

namespace genusforge {

// Univariate polynomial over a FieldCtx, constant term first. The stored
// leading coefficient is never zero; the zero polynomial has no coefficients.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<FieldElem> coeffs);

  static UPoly constant(FieldElem c);
  static UPoly monomial(FieldElem c, std::size_t degree);
  // x^degree + sum_i c_i x^i where c_i are the base-q digits of `index`.
  static UPoly monic_from_index(const FieldCtx& ctx, int degree, std::uint64_t index);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<FieldElem>& coeffs() const { return c_; }
  FieldElem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : FieldElem{}; }
  FieldElem leading() const { return c_.empty() ? FieldElem{} : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back().code == 1; }

  friend bool operator==(const UPoly&, const UPoly&) = default;

 private:
  std::vector<FieldElem> c_;
  void trim();
};

namespace poly {

UPoly add(const FieldCtx& ctx, const UPoly& a, const UPoly& b);
UPoly sub(const FieldCtx& ctx, const UPoly& a, const UPoly& b);
UPoly mul(const FieldCtx& ctx, const UPoly& a, const UPoly& b);
UPoly scale(const FieldCtx& ctx, const UPoly& a, FieldElem s);
std::pair<UPoly, UPoly> divmod(const FieldCtx& ctx, const UPoly& a, const UPoly& b);
UPoly mod(const FieldCtx& ctx, const UPoly& a, const UPoly& m);
UPoly make_monic(const FieldCtx& ctx, const UPoly& a);
UPoly gcd(const FieldCtx& ctx, UPoly a, UPoly b);
UPoly derivative(const FieldCtx& ctx, const UPoly& a);
FieldElem eval(const FieldCtx& ctx, const UPoly& f, FieldElem x);
UPoly powmod(const FieldCtx& ctx, const UPoly& base, std::uint64_t e, const UPoly& m);

bool is_squarefree(const FieldCtx& ctx, const UPoly& f);
// Ben-Or test: no factor of degree <= deg/2, via gcd(x^{q^i} - x, f).
bool is_irreducible(const FieldCtx& ctx, const UPoly& f);

std::string to_string(const FieldCtx& ctx, const UPoly& f, const std::string& var = "x");

}  // namespace poly

/// Lexicographically least monic irreducible of degree d over ctx.
UPoly find_irreducible(const FieldCtx& ctx, int d);

/// The first t monic irreducibles of degree d in lexicographic order.
/// Throws InvalidArgument when t exceeds count_irreducibles(q, d).
std::vector<UPoly> first_irreducibles(const FieldCtx& ctx, int d, std::size_t t);

/// Exact number of monic irreducibles of degree d over F_q (Moebius formula).
BigInt count_irreducibles(std::uint64_t q, int d);

}  // namespace genusforge
