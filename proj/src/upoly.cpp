#include "genusforge/upoly.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "genusforge/errors.hpp"
#include "genusforge/primes.hpp"

namespace genusforge {

UPoly::UPoly(std::vector<FieldElem> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back().code == 0) c_.pop_back();
}

UPoly UPoly::constant(FieldElem c) { return UPoly({c}); }

UPoly UPoly::monomial(FieldElem c, std::size_t degree) {
  std::vector<FieldElem> v(degree + 1);
  v[degree] = c;
  return UPoly(std::move(v));
}

UPoly UPoly::monic_from_index(const FieldCtx& ctx, int degree, std::uint64_t index) {
  std::vector<FieldElem> v(degree + 1);
  const std::uint64_t q = ctx.order();
  for (int i = 0; i < degree && index; ++i) {
    v[i] = {index % q};
    index /= q;
  }
  if (index) throw InvalidArgument("monic_from_index: index out of range");
  v[degree] = ctx.one();
  return UPoly(std::move(v));
}

namespace poly {

namespace {

bool prime_fast_path(const FieldCtx& ctx) {
  return ctx.degree() == 1 && ctx.characteristic() < (1u << 16);
}

}  // namespace

UPoly add(const FieldCtx& ctx, const UPoly& a, const UPoly& b) {
  std::vector<FieldElem> v(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = ctx.add(a.coeff(i), b.coeff(i));
  return UPoly(std::move(v));
}

UPoly sub(const FieldCtx& ctx, const UPoly& a, const UPoly& b) {
  std::vector<FieldElem> v(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = ctx.sub(a.coeff(i), b.coeff(i));
  return UPoly(std::move(v));
}

UPoly scale(const FieldCtx& ctx, const UPoly& a, FieldElem s) {
  std::vector<FieldElem> v(a.coeffs().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = ctx.mul(a.coeffs()[i], s);
  return UPoly(std::move(v));
}

UPoly mul(const FieldCtx& ctx, const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  if (prime_fast_path(ctx)) {
    const std::uint64_t p = ctx.characteristic();
    std::vector<std::uint64_t> acc(x.size() + y.size() - 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const std::uint64_t xi = x[i].code;
      if (!xi) continue;
      for (std::size_t j = 0; j < y.size(); ++j) acc[i + j] += xi * y[j].code;
      if ((i & 0xffff) == 0xffff) {
        for (auto& c : acc) c %= p;
      }
    }
    std::vector<FieldElem> v(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) v[i] = {acc[i] % p};
    return UPoly(std::move(v));
  }
  std::vector<FieldElem> v(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].code) continue;
    for (std::size_t j = 0; j < y.size(); ++j) v[i + j] = ctx.add(v[i + j], ctx.mul(x[i], y[j]));
  }
  return UPoly(std::move(v));
}

std::pair<UPoly, UPoly> divmod(const FieldCtx& ctx, const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.degree() < b.degree()) return {UPoly{}, a};
  const int db = b.degree();
  const auto& bc = b.coeffs();
  const FieldElem lead_inv = ctx.inv(b.leading());
  std::vector<FieldElem> r = a.coeffs();
  std::vector<FieldElem> quot(a.degree() - db + 1);
  if (prime_fast_path(ctx)) {
    // Each step adds less than p^2 < 2^32 to a coefficient, so reduction
    // can wait until a coefficient becomes the leading one.
    const std::uint64_t p = ctx.characteristic();
    std::vector<std::uint64_t> acc(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) acc[i] = r[i].code;
    for (int deg = a.degree(); deg >= db; --deg) {
      std::uint64_t c = acc[deg] % p;
      if (!c) continue;
      c = c * lead_inv.code % p;
      quot[deg - db] = {c};
      const std::uint64_t nc = p - c;
      std::uint64_t* row = acc.data() + (deg - db);
      for (int i = 0; i < db; ++i) row[i] += nc * bc[i].code;
      if (((a.degree() - deg) & 0xffff) == 0xffff) {
        for (int i = 0; i < deg; ++i) acc[i] %= p;
      }
    }
    for (int i = 0; i < db; ++i) r[i] = {acc[i] % p};
  } else {
    for (int deg = a.degree(); deg >= db; --deg) {
      if (!r[deg].code) continue;
      const FieldElem c = ctx.mul(r[deg], lead_inv);
      quot[deg - db] = c;
      for (int i = 0; i < db; ++i) r[deg - db + i] = ctx.sub(r[deg - db + i], ctx.mul(c, bc[i]));
      r[deg] = {0};
    }
  }
  r.resize(db);
  return {UPoly(std::move(quot)), UPoly(std::move(r))};
}

UPoly mod(const FieldCtx& ctx, const UPoly& a, const UPoly& m) { return divmod(ctx, a, m).second; }

UPoly make_monic(const FieldCtx& ctx, const UPoly& a) {
  if (a.is_zero() || a.is_monic()) return a;
  return scale(ctx, a, ctx.inv(a.leading()));
}

UPoly gcd(const FieldCtx& ctx, UPoly a, UPoly b) {
  if (prime_fast_path(ctx)) {
    const std::uint64_t p = ctx.characteristic();
    auto codes = [](const UPoly& u) {
      std::vector<std::uint64_t> v;
      v.reserve(u.coeffs().size());
      for (auto c : u.coeffs()) v.push_back(c.code);
      return v;
    };
    auto trim = [](std::vector<std::uint64_t>& v) {
      while (!v.empty() && v.back() == 0) v.pop_back();
    };
    std::vector<std::uint64_t> x = codes(a), y = codes(b);
    while (!y.empty()) {
      const std::uint64_t inv = ctx.inv({y.back()}).code;
      const std::size_t dy = y.size() - 1;
      for (std::size_t deg = x.size(); deg-- > dy;) {
        const std::uint64_t c = x[deg] % p * inv % p;
        if (!c) continue;
        const std::uint64_t nc = p - c;
        std::uint64_t* row = x.data() + (deg - dy);
        for (std::size_t i = 0; i < dy; ++i) row[i] += nc * y[i];
      }
      if (x.size() > dy) x.resize(dy);
      for (auto& c : x) c %= p;
      trim(x);
      std::swap(x, y);
    }
    std::vector<FieldElem> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = {x[i]};
    return make_monic(ctx, UPoly(std::move(v)));
  }
  while (!b.is_zero()) {
    UPoly r = mod(ctx, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(ctx, a);
}

UPoly derivative(const FieldCtx& ctx, const UPoly& a) {
  if (a.degree() < 1) return {};
  std::vector<FieldElem> v(a.coeffs().size() - 1);
  for (std::size_t i = 1; i < a.coeffs().size(); ++i) {
    v[i - 1] = ctx.mul(ctx.from_int(static_cast<std::int64_t>(i % ctx.characteristic())), a.coeffs()[i]);
  }
  return UPoly(std::move(v));
}

FieldElem eval(const FieldCtx& ctx, const UPoly& f, FieldElem x) {
  FieldElem acc{0};
  const auto& c = f.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = ctx.add(ctx.mul(acc, x), c[i]);
  return acc;
}

UPoly powmod(const FieldCtx& ctx, const UPoly& base, std::uint64_t e, const UPoly& m) {
  UPoly result = mod(ctx, UPoly::constant(ctx.one()), m);
  UPoly b = mod(ctx, base, m);
  while (e) {
    if (e & 1) result = mod(ctx, mul(ctx, result, b), m);
    e >>= 1;
    if (e) b = mod(ctx, mul(ctx, b, b), m);
  }
  return result;
}

bool is_squarefree(const FieldCtx& ctx, const UPoly& f) {
  if (f.degree() < 1) return !f.is_zero();
  return gcd(ctx, f, derivative(ctx, f)).degree() == 0;
}

namespace {

// rows[j] = x^{qj} mod f, so h^q = sum_j h_j rows[j] for h over F_q.
std::vector<UPoly> frobenius_rows(const FieldCtx& ctx, const UPoly& f, const UPoly& xq) {
  const int d = f.degree();
  const std::uint64_t q = ctx.order();
  const UPoly step = q < static_cast<std::uint64_t>(d) ? UPoly::monomial(ctx.one(), q) : xq;
  std::vector<UPoly> rows(d);
  rows[0] = UPoly::constant(ctx.one());
  for (int j = 1; j < d; ++j) rows[j] = j == 1 ? xq : mod(ctx, mul(ctx, rows[j - 1], step), f);
  return rows;
}

UPoly apply_frobenius(const FieldCtx& ctx, const std::vector<UPoly>& rows, const UPoly& h) {
  const std::size_t d = rows.size();
  if (prime_fast_path(ctx)) {
    const std::uint64_t p = ctx.characteristic();
    std::vector<std::uint64_t> acc(d, 0);
    for (std::size_t j = 0; j < h.coeffs().size(); ++j) {
      const std::uint64_t hj = h.coeffs()[j].code;
      if (!hj) continue;
      const auto& r = rows[j].coeffs();
      for (std::size_t k = 0; k < r.size(); ++k) acc[k] += hj * r[k].code;
    }
    std::vector<FieldElem> v(d);
    for (std::size_t k = 0; k < d; ++k) v[k] = {acc[k] % p};
    return UPoly(std::move(v));
  }
  std::vector<FieldElem> v(d);
  for (std::size_t j = 0; j < h.coeffs().size(); ++j) {
    const FieldElem hj = h.coeffs()[j];
    if (!hj.code) continue;
    const auto& r = rows[j].coeffs();
    for (std::size_t k = 0; k < r.size(); ++k) v[k] = ctx.add(v[k], ctx.mul(hj, r[k]));
  }
  return UPoly(std::move(v));
}

}  // namespace

bool is_irreducible(const FieldCtx& ctx, const UPoly& f_in) {
  if (f_in.degree() < 1) return false;
  if (f_in.degree() == 1) return true;
  if (f_in.coeff(0).code == 0) return false;
  const UPoly f = make_monic(ctx, f_in);
  const UPoly x = UPoly::monomial(ctx.one(), 1);
  UPoly h = x, xq;
  std::vector<UPoly> rows;
  // Most reducible candidates fail within a few steps; only then is the
  // Frobenius table worth building.
  constexpr int kPlainSteps = 3;
  for (int i = 1; i <= f.degree() / 2; ++i) {
    if (rows.empty()) {
      h = powmod(ctx, h, ctx.order(), f);
      if (i == 1) xq = h;
      if (i == kPlainSteps) rows = frobenius_rows(ctx, f, xq);
    } else {
      h = apply_frobenius(ctx, rows, h);
    }
    if (gcd(ctx, sub(ctx, h, x), f).degree() > 0) return false;
  }
  return true;
}

std::string to_string(const FieldCtx& ctx, const UPoly& f, const std::string& var) {
  (void)ctx;
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = f.degree(); i >= 0; --i) {
    const std::uint64_t c = f.coeff(i).code;
    if (!c) continue;
    if (!first) os << " + ";
    first = false;
    if (c != 1 || i == 0) os << c;
    if (i > 0) {
      if (c != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace poly

namespace {

struct IrreducibleCursor {
  std::vector<UPoly> found;
  std::uint64_t next_index = 0;
};

}  // namespace

std::vector<UPoly> first_irreducibles(const FieldCtx& ctx, int d, std::size_t t) {
  if (d < 1) throw InvalidArgument("irreducible degree must be >= 1");
  if (BigInt(t) > count_irreducibles(ctx.order(), d)) {
    throw InvalidArgument("requested " + std::to_string(t) + " irreducibles of degree " +
                          std::to_string(d) + " over F_" + std::to_string(ctx.order()) +
                          ", more than exist");
  }
  using Key = std::tuple<Residue, std::vector<Residue>, int>;
  static std::mutex mu;
  static std::map<Key, IrreducibleCursor> cache;
  const auto m = ctx.modulus();
  Key key{ctx.characteristic(), std::vector<Residue>(m.begin(), m.end()), d};
  std::lock_guard lock(mu);
  IrreducibleCursor& cur = cache[key];
  while (cur.found.size() < t) {
    UPoly f = UPoly::monic_from_index(ctx, d, cur.next_index++);
    if (poly::is_irreducible(ctx, f)) cur.found.push_back(std::move(f));
  }
  return {cur.found.begin(), cur.found.begin() + static_cast<std::ptrdiff_t>(t)};
}

UPoly find_irreducible(const FieldCtx& ctx, int d) { return first_irreducibles(ctx, d, 1).front(); }

BigInt count_irreducibles(std::uint64_t q, int d) {
  if (d < 1) throw InvalidArgument("degree must be >= 1");
  BigInt total = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e) continue;
    int mu = 1;
    for (auto [r, k] : factorize(static_cast<std::uint64_t>(e))) {
      mu = (k > 1) ? 0 : -mu;
      if (!mu) break;
    }
    if (mu) total += mu * big_pow(q, static_cast<std::uint64_t>(d / e));
  }
  return total / d;
}

}  // namespace genusforge
