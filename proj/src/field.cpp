#include "genusforge/field.hpp"

#include <array>
#include <bit>
#include <map>
#include <mutex>
#include <sstream>

#include "genusforge/errors.hpp"
#include "genusforge/primes.hpp"
#include "genusforge/upoly.hpp"

namespace genusforge {

namespace {

constexpr int kMaxDegree = 63;

using Digits = std::array<std::uint64_t, 2 * kMaxDegree>;

}  // namespace

struct FieldCtx::Data {
  Residue p = 2;
  int k = 1;
  std::uint64_t q = 2;
  std::vector<Residue> modulus;
  std::vector<std::uint64_t> pow_p;  // p^0 .. p^k
  std::uint64_t reduce_mask = 0;     // p = 2: modulus bits including t^k
  std::vector<Residue> trace_weights;
  std::uint64_t trace_mask = 0;      // p = 2
  bool tables = false;
  FieldElem generator{};
  std::vector<std::uint32_t> exp;
  std::vector<std::uint32_t> log;

  void split(std::uint64_t code, std::uint64_t* out) const {
    for (int i = 0; i < k; ++i) {
      out[i] = code % p;
      code /= p;
    }
  }
  std::uint64_t join(const std::uint64_t* in) const {
    std::uint64_t code = 0;
    for (int i = k - 1; i >= 0; --i) code = code * p + in[i];
    return code;
  }
};

FieldCtx::FieldCtx(Residue p, std::vector<Residue> modulus) {
  if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
  if (p >= (Residue{1} << 31)) throw InvalidArgument("characteristic too large");
  if (modulus.size() < 2) throw InvalidArgument("modulus must have degree >= 1");
  if (modulus.back() != 1) throw InvalidArgument("modulus must be monic");
  for (Residue c : modulus) {
    if (c >= p) throw InvalidArgument("modulus coefficient out of range");
  }
  auto d = std::make_shared<Data>();
  d->p = p;
  d->k = static_cast<int>(modulus.size()) - 1;
  if (d->k > kMaxDegree) throw InvalidArgument("extension degree too large");
  d->pow_p.assign(1, 1);
  for (int i = 1; i <= d->k; ++i) {
    if (d->pow_p.back() > (std::uint64_t{1} << 62) / p) {
      throw InvalidArgument("field order exceeds 2^62");
    }
    d->pow_p.push_back(d->pow_p.back() * p);
  }
  d->q = d->pow_p.back();
  d->modulus = std::move(modulus);
  if (p == 2) {
    for (int i = 0; i <= d->k; ++i) {
      if (d->modulus[i]) d->reduce_mask |= std::uint64_t{1} << i;
    }
  }
  d_ = d;

  if (d->k > 1) {
    const FieldCtx prime = make_field(p, 1);
    std::vector<FieldElem> mc;
    for (Residue c : d->modulus) mc.push_back({c});
    if (!poly::is_irreducible(prime, UPoly(mc))) {
      throw InvalidArgument("modulus is reducible over F_" + std::to_string(p));
    }
  }

  // Trace weights Tr(t^i); trace is F_p-linear in the coordinates.
  d->trace_weights.resize(d->k);
  for (int i = 0; i < d->k; ++i) {
    FieldElem basis{d->pow_p[i]};
    FieldElem acc{0}, cur = basis;
    for (int j = 0; j < d->k; ++j) {
      acc = add(acc, cur);
      cur = pow_plain(cur, p);
    }
    if (acc.code >= p) throw InvalidArgument("internal: trace left the prime field");
    d->trace_weights[i] = static_cast<Residue>(acc.code);
    if (p == 2 && acc.code) d->trace_mask |= std::uint64_t{1} << i;
  }

  if (d->q <= kTableLimit) {
    std::vector<std::uint64_t> prime_factors;
    for (auto [r, e] : factorize(d->q - 1)) prime_factors.push_back(r);
    FieldElem g{1};
    for (std::uint64_t c = 1; c < d->q; ++c) {
      bool primitive = true;
      for (std::uint64_t r : prime_factors) {
        if (pow_plain({c}, (d->q - 1) / r).code == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        g = {c};
        break;
      }
    }
    d->generator = g;
    d->exp.resize(d->q - 1);
    d->log.assign(d->q, 0);
    FieldElem cur{1};
    for (std::uint64_t n = 0; n + 1 < d->q; ++n) {
      d->exp[n] = static_cast<std::uint32_t>(cur.code);
      d->log[cur.code] = static_cast<std::uint32_t>(n);
      cur = mul_plain(cur, g);
    }
    if (cur.code != 1) throw InvalidArgument("internal: generator order mismatch");
    d->tables = true;
  }
}

Residue FieldCtx::characteristic() const { return d_->p; }
int FieldCtx::degree() const { return d_->k; }
std::uint64_t FieldCtx::order() const { return d_->q; }
std::span<const Residue> FieldCtx::modulus() const { return d_->modulus; }
bool FieldCtx::has_tables() const { return d_->tables; }

FieldElem FieldCtx::from_int(std::int64_t v) const {
  return {static_cast<std::uint64_t>(mod_floor(v, d_->p))};
}

FieldElem FieldCtx::from_coeffs(std::span<const Residue> coeffs) const {
  if (static_cast<int>(coeffs.size()) > d_->k) throw InvalidArgument("too many coordinates");
  std::uint64_t code = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= d_->p) throw InvalidArgument("coordinate out of range");
    code = code * d_->p + coeffs[i];
  }
  return {code};
}

std::vector<Residue> FieldCtx::coeffs(FieldElem a) const {
  std::vector<Residue> out(d_->k);
  std::uint64_t c = a.code;
  for (int i = 0; i < d_->k; ++i) {
    out[i] = static_cast<Residue>(c % d_->p);
    c /= d_->p;
  }
  return out;
}

FieldElem FieldCtx::add(FieldElem a, FieldElem b) const {
  const Data& d = *d_;
  if (d.p == 2) return {a.code ^ b.code};
  if (d.k == 1) {
    std::uint64_t s = a.code + b.code;
    return {s >= d.p ? s - d.p : s};
  }
  std::uint64_t out = 0;
  std::uint64_t x = a.code, y = b.code;
  for (int i = 0; i < d.k; ++i) {
    std::uint64_t s = x % d.p + y % d.p;
    if (s >= d.p) s -= d.p;
    out += s * d.pow_p[i];
    x /= d.p;
    y /= d.p;
  }
  return {out};
}

FieldElem FieldCtx::neg(FieldElem a) const {
  const Data& d = *d_;
  if (d.p == 2) return a;
  if (d.k == 1) return {a.code ? d.p - a.code : 0};
  std::uint64_t out = 0, x = a.code;
  for (int i = 0; i < d.k; ++i) {
    std::uint64_t c = x % d.p;
    out += (c ? d.p - c : 0) * d.pow_p[i];
    x /= d.p;
  }
  return {out};
}

FieldElem FieldCtx::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem FieldCtx::mul_plain(FieldElem a, FieldElem b) const {
  const Data& d = *d_;
  if (d.k == 1) return {(a.code * b.code) % d.p};
  if (d.p == 2) {
    std::uint64_t r = 0, x = a.code, y = b.code;
    const std::uint64_t top = std::uint64_t{1} << d.k;
    while (y) {
      if (y & 1) r ^= x;
      y >>= 1;
      x <<= 1;
      if (x & top) x ^= d.reduce_mask;
    }
    return {r};
  }
  Digits da{}, db{}, prod{};
  d.split(a.code, da.data());
  d.split(b.code, db.data());
  for (int i = 0; i < d.k; ++i) {
    if (!da[i]) continue;
    for (int j = 0; j < d.k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % d.p;
  }
  for (int deg = 2 * d.k - 2; deg >= d.k; --deg) {
    std::uint64_t c = prod[deg];
    if (!c) continue;
    for (int i = 0; i < d.k; ++i) {
      prod[deg - d.k + i] = (prod[deg - d.k + i] + c * (d.p - d.modulus[i])) % d.p;
    }
    prod[deg] = 0;
  }
  return {d.join(prod.data())};
}

FieldElem FieldCtx::pow_plain(FieldElem a, std::uint64_t e) const {
  FieldElem r{1};
  while (e) {
    if (e & 1) r = mul_plain(r, a);
    e >>= 1;
    if (e) a = mul_plain(a, a);
  }
  return r;
}

FieldElem FieldCtx::mul(FieldElem a, FieldElem b) const {
  const Data& d = *d_;
  if (d.tables && d.k > 1) {
    if (!a.code || !b.code) return {0};
    std::uint64_t s = std::uint64_t{d.log[a.code]} + d.log[b.code];
    if (s >= d.q - 1) s -= d.q - 1;
    return {d.exp[s]};
  }
  return mul_plain(a, b);
}

FieldElem FieldCtx::pow(FieldElem a, std::uint64_t e) const {
  const Data& d = *d_;
  if (d.tables) {
    if (e == 0) return {1};
    if (!a.code) return {0};
    const std::uint64_t n = d.q - 1;
    const auto l = static_cast<unsigned __int128>(d.log[a.code]) * (e % n) % n;
    return {d.exp[static_cast<std::uint64_t>(l)]};
  }
  return pow_plain(a, e);
}

FieldElem FieldCtx::inv(FieldElem a) const {
  const Data& d = *d_;
  if (!a.code) throw DivisionByZero("inverse of zero in " + describe());
  if (d.tables) {
    std::uint32_t l = d.log[a.code];
    return {d.exp[l == 0 ? 0 : d.q - 1 - l]};
  }
  return pow_plain(a, d.q - 2);
}

FieldElem FieldCtx::div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

Residue FieldCtx::trace(FieldElem a) const {
  const Data& d = *d_;
  if (d.p == 2) return static_cast<Residue>(std::popcount(a.code & d.trace_mask) & 1);
  std::uint64_t acc = 0, x = a.code;
  for (int i = 0; i < d.k; ++i) {
    acc += (x % d.p) * d.trace_weights[i];
    x /= d.p;
  }
  return static_cast<Residue>(acc % d.p);
}

int FieldCtx::quadratic_character(FieldElem a) const {
  const Data& d = *d_;
  if (d.p == 2) throw InvalidArgument("quadratic character needs odd characteristic");
  if (!a.code) return 0;
  if (d.tables) return (d.log[a.code] & 1) ? -1 : 1;
  return pow_plain(a, (d.q - 1) / 2).code == 1 ? 1 : -1;
}

std::uint32_t FieldCtx::log(FieldElem a) const { return d_->log[a.code]; }
FieldElem FieldCtx::exp(std::uint64_t n) const { return {d_->exp[n % (d_->q - 1)]}; }

FieldElem FieldCtx::primitive_element() const {
  if (!d_->tables) throw InvalidArgument("primitive element only tracked for tabled fields");
  return d_->generator;
}

std::string FieldCtx::describe() const {
  std::ostringstream os;
  os << "F_" << d_->q;
  if (d_->k > 1) {
    os << " = F_" << d_->p << "[t]/(";
    bool first = true;
    for (int i = d_->k; i >= 0; --i) {
      if (!d_->modulus[i]) continue;
      if (!first) os << " + ";
      first = false;
      if (d_->modulus[i] != 1 || i == 0) os << d_->modulus[i];
      if (i > 0) os << "t" << (i > 1 ? "^" + std::to_string(i) : "");
    }
    os << ")";
  }
  return os.str();
}

bool operator==(const FieldCtx& a, const FieldCtx& b) {
  return a.d_ == b.d_ || (a.d_->p == b.d_->p && a.d_->modulus == b.d_->modulus);
}

FieldCtx make_field(Residue p, int k) {
  if (k < 1) throw InvalidArgument("extension degree must be >= 1");
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  static std::mutex mu;
  static std::map<std::pair<Residue, int>, FieldCtx> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find({p, k}); it != cache.end()) return it->second;
  }
  std::vector<Residue> modulus;
  if (k == 1) {
    modulus = {0, 1};
  } else {
    const UPoly m = find_irreducible(make_field(p, 1), k);
    for (FieldElem c : m.coeffs()) modulus.push_back(static_cast<Residue>(c.code));
  }
  FieldCtx ctx(p, std::move(modulus));
  std::lock_guard lock(mu);
  return cache.emplace(std::pair{p, k}, ctx).first->second;
}

FieldElem arith(const FieldCtx& ctx, FieldElem a, FieldElem b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return ctx.add(a, b);
    case ArithOp::Sub: return ctx.sub(a, b);
    case ArithOp::Mul: return ctx.mul(a, b);
    case ArithOp::Div: return ctx.div(a, b);
  }
  throw InvalidArgument("unknown arithmetic op");
}

FieldEmbedding::FieldEmbedding(const FieldCtx& small, const FieldCtx& big)
    : small_(small), big_(big) {
  if (small.characteristic() != big.characteristic() || big.degree() % small.degree() != 0) {
    throw InvalidArgument("no embedding " + small.describe() + " -> " + big.describe());
  }
  const int k = small.degree();
  if (k == 1) {
    root_ = FieldElem{0};
    return;
  }
  auto m = small.modulus();
  bool found = false;
  for (std::uint64_t c = 0; c < big.order() && !found; ++c) {
    FieldElem acc{0};
    for (int i = k; i >= 0; --i) acc = big.add(big.mul(acc, {c}), FieldElem{m[i]});
    if (acc.code == 0) {
      root_ = {c};
      found = true;
    }
  }
  if (!found) throw InvalidArgument("internal: modulus has no root in extension");
  basis_images_.resize(k);
  FieldElem cur{1};
  for (int i = 0; i < k; ++i) {
    basis_images_[i] = cur;
    cur = big.mul(cur, root_);
  }
}

FieldElem FieldEmbedding::operator()(FieldElem a) const {
  if (small_.degree() == 1) return a;
  FieldElem out{0};
  const auto c = small_.coeffs(a);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i]) out = big_.add(out, big_.mul(FieldElem{c[i]}, basis_images_[i]));
  }
  return out;
}

}  // namespace genusforge
