#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "genusforge/field.hpp"
#include "genusforge/lattice.hpp"

namespace genusforge {

/// Member of f = 1 + y + x^{r+1} + sum_{i=0}^{r} x^i y^{p(a_i + ... + a_r)}.
/// All coefficients are 1, so f makes sense over every F_q of
/// characteristic p.
struct ToricCurve {
  Residue p = 2;
  std::uint64_t q = 2;
  int r = 1;
  std::vector<std::int64_t> a;
  BivariatePoly f;

  friend bool operator==(const ToricCurve&, const ToricCurve&) = default;
};

ToricCurve build_family_poly(Residue p, int r, std::vector<std::int64_t> a, std::uint64_t q = 0);

std::int64_t genus_family(Residue p, int r, const std::vector<std::int64_t>& a);

struct ToricParameters {
  int r = 1;
  std::vector<std::int64_t> a;
};

/// Throws InfeasibleGenus when no r in the residue class admits a solution.
ToricParameters select_parameters(Residue p, std::int64_t g);

enum class SmoothStatus { Certified, CheckedToDegree, Failed };

struct ConditionReport {
  SmoothStatus smooth = SmoothStatus::Failed;
  int checked_degree = 0;     // CheckedToDegree: every m <= this was scanned
  struct Witness {
    int m;
    FieldElem x, y;
  };
  std::optional<Witness> singular;  // Failed: a common zero of f, f_x, f_y
  bool constant_term = false;       // (ii)
  bool boundary = false;            // (iii)

  bool all_pass(int needed_degree = 0) const {
    const bool smooth_ok = smooth == SmoothStatus::Certified ||
                           (smooth == SmoothStatus::CheckedToDegree && checked_degree >= needed_degree);
    return smooth_ok && constant_term && boundary;
  }
};

/// Conditions on f over F_q for the toric point count. The smoothness scan
/// visits F_{q^m}^2 for m = 1..max_degree while q^{2m} stays within
/// `budget`.
ConditionReport check_agprop(const FieldCtx& ctx, const BivariatePoly& f, int max_degree = 6,
                             std::uint64_t budget = std::uint64_t{1} << 24);

struct EdgeData {
  LatticePoint from;  // lexicographically smaller endpoint
  LatticePoint to;
  std::vector<FieldElem> coeffs;  // p(u), constant term at `from`
};

std::vector<EdgeData> edge_polynomials(const BivariatePoly& f);

/// Points on the toric model over F_{q^m}: torus zeros plus, per edge, the
/// nonzero roots of p_e. Requires check_agprop(ctx, f).all_pass(m).
std::int64_t count_points_toric(const FieldCtx& ctx, const BivariatePoly& f, int m,
                                std::uint64_t budget = std::uint64_t{1} << 24);
std::int64_t count_points_toric(const ToricCurve& curve, int m,
                                std::uint64_t budget = std::uint64_t{1} << 24);

}  // namespace genusforge
