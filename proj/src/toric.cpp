#include "genusforge/toric.hpp"

#include <numeric>

#include "genusforge/bigint.hpp"
#include "genusforge/errors.hpp"
#include "genusforge/primes.hpp"
#include "genusforge/upoly.hpp"

namespace genusforge {

ToricCurve build_family_poly(Residue p, int r, std::vector<std::int64_t> a, std::uint64_t q) {
  if (!is_prime(p)) throw InvalidArgument("toric family needs prime p");
  if (r < 1) throw InvalidArgument("toric family needs r >= 1");
  if (a.size() != static_cast<std::size_t>(r) + 1) throw InvalidArgument("need a_0..a_r");
  if (a[0] < 1) throw InvalidArgument("a_0 must be >= 1");
  for (int i = 1; i <= r; ++i) {
    if (a[i] <= a[i - 1]) throw InvalidArgument("a must be strictly increasing");
  }
  if (q == 0) q = p;
  if (prime_power(q).first != p) throw InvalidArgument("q must be a power of p");
  ToricCurve c;
  c.p = p;
  c.q = q;
  c.r = r;
  c.a = std::move(a);
  const FieldElem one{1};
  c.f.set({0, 0}, one);
  c.f.set({0, 1}, one);
  c.f.set({r + 1, 0}, one);
  std::int64_t tail = 0;
  for (int i = r; i >= 0; --i) {
    tail += c.a[i];
    c.f.set({i, static_cast<std::int64_t>(p) * tail}, one);
  }
  const FieldCtx ctx = make_field(p, 1);
  const BivariatePoly fy = c.f.d_dy(ctx);
  if (fy.terms().size() != 1 || fy.coeff({0, 0}) != one) {
    throw InvalidArgument("internal: family polynomial has df/dy != 1");
  }
  return c;
}

std::int64_t genus_family(Residue p, int r, const std::vector<std::int64_t>& a) {
  if (a.size() != static_cast<std::size_t>(r) + 1) throw InvalidArgument("need a_0..a_r");
  std::int64_t s = 0;
  for (int i = 0; i <= r; ++i) s += i * a[i];
  return -r + static_cast<std::int64_t>(p) * s;
}

ToricParameters select_parameters(Residue p, std::int64_t g) {
  if (!is_prime(p)) throw InvalidArgument("select_parameters needs prime p");
  if (g < 1) throw InvalidArgument("select_parameters needs g >= 1");
  const std::int64_t P = p;
  std::int64_t r0 = mod_floor(-g, P);
  if (r0 == 0) r0 = P;
  auto prefix = [](std::int64_t r) {
    std::int64_t s = 0;
    for (std::int64_t i = 0; i <= r - 2; ++i) s += i * (i + 1);
    return s;
  };
  // Largest r in the class with the minimal completion (a_{r-1}, a_r) = (r, r+1) fitting.
  std::int64_t r = r0;
  while ([&] {
    const std::int64_t rn = r + P;
    return prefix(rn) + 2 * rn * rn <= (g + rn) / P;
  }()) {
    r += P;
  }
  for (; r >= 1; r -= P) {
    const std::int64_t T = (g + r) / P;
    const std::int64_t rest = T - prefix(r);
    if (rest < 2 * r * r) continue;
    for (std::int64_t am1 = r; am1 <= 3 * r; ++am1) {
      const std::int64_t num = rest - (r - 1) * am1;
      if (num % r != 0) continue;
      const std::int64_t ar = num / r;
      if (ar <= am1) continue;
      ToricParameters out;
      out.r = static_cast<int>(r);
      for (std::int64_t i = 0; i <= r - 2; ++i) out.a.push_back(i + 1);
      out.a.push_back(am1);
      out.a.push_back(ar);
      if (genus_family(p, out.r, out.a) != g) throw InvalidArgument("internal: toric genus mismatch");
      return out;
    }
  }
  throw InfeasibleGenus("no toric family member of genus " + std::to_string(g) + " for p = " +
                        std::to_string(p));
}

namespace {

bool is_nonzero_constant(const BivariatePoly& f) {
  return f.terms().size() == 1 && f.terms().begin()->first == LatticePoint{0, 0};
}

BivariatePoly embed_poly(const BivariatePoly& f, const FieldEmbedding& emb) {
  BivariatePoly out;
  for (const auto& [e, c] : f.terms()) out.set(e, emb(c));
  return out;
}

// Coefficients grouped by x-exponent: f = sum_i x^i h_i(y).
struct RowForm {
  std::vector<std::pair<std::int64_t, std::vector<std::pair<std::int64_t, FieldElem>>>> rows;

  explicit RowForm(const BivariatePoly& f) {
    for (const auto& [e, c] : f.terms()) {
      if (rows.empty() || rows.back().first != e.i) rows.push_back({e.i, {}});
      rows.back().second.push_back({e.j, c});
    }
  }

  FieldElem eval(const FieldCtx& ctx, FieldElem x, FieldElem y) const {
    FieldElem acc{0};
    for (const auto& [i, terms] : rows) {
      FieldElem h{0};
      for (const auto& [j, c] : terms) h = ctx.add(h, ctx.mul(c, ctx.pow(y, static_cast<std::uint64_t>(j))));
      acc = ctx.add(acc, ctx.mul(h, ctx.pow(x, static_cast<std::uint64_t>(i))));
    }
    return acc;
  }
};

std::uint64_t field_order_checked(std::uint64_t q, int m) {
  const BigInt Q = big_pow(q, static_cast<std::uint64_t>(m));
  if (Q > (BigInt(1) << 40)) throw BudgetExceeded("extension field too large");
  return static_cast<std::uint64_t>(Q);
}

}  // namespace

ConditionReport check_agprop(const FieldCtx& ctx, const BivariatePoly& f, int max_degree,
                             std::uint64_t budget) {
  if (f.is_zero()) throw InvalidArgument("check_agprop of the zero polynomial");
  ConditionReport rep;
  const BivariatePoly fx = f.d_dx(ctx), fy = f.d_dy(ctx);
  bool in_x_only = true, in_y_only = true;
  for (const auto& [e, c] : f.terms()) {
    if (e.j != 0) in_x_only = false;
    if (e.i != 0) in_y_only = false;
  }
  rep.constant_term = f.coeff({0, 0}).code != 0 && !in_x_only && !in_y_only;
  try {
    rep.boundary = boundary_condition(newton_polygon(f));
  } catch (const DegeneratePolygon&) {
    rep.boundary = false;
  }
  if (is_nonzero_constant(fx) || is_nonzero_constant(fy)) {
    rep.smooth = SmoothStatus::Certified;
    return rep;
  }
  rep.smooth = SmoothStatus::CheckedToDegree;
  const Residue p = ctx.characteristic();
  for (int m = 1; m <= max_degree; ++m) {
    const BigInt Q = big_pow(ctx.order(), static_cast<std::uint64_t>(m));
    if (Q * Q > budget) break;
    const FieldCtx big = make_field(p, ctx.degree() * m);
    const FieldEmbedding emb(ctx, big);
    const RowForm F(embed_poly(f, emb)), FX(embed_poly(fx, emb)), FY(embed_poly(fy, emb));
    for (std::uint64_t xc = 0; xc < big.order(); ++xc) {
      for (std::uint64_t yc = 0; yc < big.order(); ++yc) {
        const FieldElem x{xc}, y{yc};
        if (F.eval(big, x, y).code != 0) continue;
        if (FX.eval(big, x, y).code != 0 || FY.eval(big, x, y).code != 0) continue;
        rep.smooth = SmoothStatus::Failed;
        rep.singular = ConditionReport::Witness{m, x, y};
        return rep;
      }
    }
    rep.checked_degree = m;
  }
  return rep;
}

std::vector<EdgeData> edge_polynomials(const BivariatePoly& f) {
  const LatticePolygon hull = newton_polygon(f);
  const auto& v = hull.vertices();
  std::vector<EdgeData> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    LatticePoint a = v[k], b = v[(k + 1) % v.size()];
    if (b < a) std::swap(a, b);
    const LatticePoint d = b - a;
    const std::int64_t g = std::gcd(d.i < 0 ? -d.i : d.i, d.j < 0 ? -d.j : d.j);
    EdgeData e{a, b, {}};
    for (std::int64_t t = 0; t <= g; ++t) e.coeffs.push_back(f.coeff({a.i + t * d.i / g, a.j + t * d.j / g}));
    if (e.coeffs.front().code == 0 || e.coeffs.back().code == 0) {
      throw InvalidArgument("internal: edge endpoint coefficient vanishes");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::int64_t count_points_toric(const FieldCtx& ctx, const BivariatePoly& f, int m, std::uint64_t budget) {
  if (m < 1) throw InvalidArgument("extension degree must be >= 1");
  const ConditionReport rep = check_agprop(ctx, f, m, budget);
  if (!rep.all_pass(m)) {
    throw InvalidArgument("toric point count needs (i)-(iii) to hold through degree " + std::to_string(m));
  }
  const std::uint64_t Q = field_order_checked(ctx.order(), m);
  if (BigInt(Q - 1) * (Q - 1) > budget) throw BudgetExceeded("torus enumeration exceeds the budget");
  const FieldCtx big = make_field(ctx.characteristic(), ctx.degree() * m);
  const FieldEmbedding emb(ctx, big);
  const BivariatePoly fe = embed_poly(f, emb);
  const RowForm F(fe);
  std::int64_t n = 0;
  for (std::uint64_t xc = 1; xc < Q; ++xc) {
    for (std::uint64_t yc = 1; yc < Q; ++yc) {
      if (F.eval(big, {xc}, {yc}).code == 0) ++n;
    }
  }
  const auto edges = edge_polynomials(fe);
  for (const auto& e : edges) {
    const UPoly pe(e.coeffs);
    for (std::uint64_t uc = 1; uc < Q; ++uc) {
      if (poly::eval(big, pe, {uc}).code == 0) ++n;
    }
  }
  if (m == 1) {
    const std::int64_t qq = static_cast<std::int64_t>(Q);
    const std::int64_t v = static_cast<std::int64_t>(edges.size());
    if (n > (qq - 1) * (qq - 1) + (qq - 1) * v) throw InvalidArgument("internal: toric count above (q-1)^2 + (q-1)v");
  }
  return n;
}

std::int64_t count_points_toric(const ToricCurve& curve, int m, std::uint64_t budget) {
  auto [p, k] = prime_power(curve.q);
  const FieldCtx ctx = make_field(static_cast<Residue>(p), k);
  const std::int64_t n = count_points_toric(ctx, curve.f, m, budget);
  if (n < curve.r) throw InvalidArgument("internal: family member has fewer than r rational points");
  return n;
}

}  // namespace genusforge
