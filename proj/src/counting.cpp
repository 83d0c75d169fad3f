#include "genusforge/counting.hpp"

#include <atomic>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "genusforge/errors.hpp"
#include "genusforge/primes.hpp"

namespace genusforge {

Budget parse_budget(const std::string& text) {
  Budget b;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || v == 0) throw InvalidArgument("bad budget value '" + s + "'");
    return static_cast<std::uint64_t>(v);
  };
  if (text.find(':') == std::string::npos) {
    b.naive = b.fast = number(text);
    return b;
  }
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw InvalidArgument("bad budget entry '" + part + "'");
    const std::string key = part.substr(0, colon);
    const std::uint64_t v = number(part.substr(colon + 1));
    if (key == "naive") {
      b.naive = v;
    } else if (key == "fast") {
      b.fast = v;
    } else {
      throw InvalidArgument("unknown budget key '" + key + "'");
    }
  }
  return b;
}

Budget budget_from_env() {
  const char* env = std::getenv("GENUSFORGE_BUDGET");
  if (!env || !*env) return {};
  return parse_budget(env);
}

namespace {

struct Extension {
  FieldCtx base;
  FieldCtx big;
  std::uint64_t Q;
};

Extension extension(std::uint64_t q, int m, std::uint64_t budget) {
  if (m < 1) throw InvalidArgument("extension degree must be >= 1");
  auto [p, k] = prime_power(q);
  if (p == 0) throw InvalidArgument("q must be a prime power");
  const BigInt Q = big_pow(q, static_cast<std::uint64_t>(m));
  if (Q > budget || k * m > 62) {
    throw BudgetExceeded("F_" + std::to_string(q) + "^" + std::to_string(m) + " exceeds the counting budget");
  }
  const Residue pr = static_cast<Residue>(p);
  return {make_field(pr, k), make_field(pr, k * m), static_cast<std::uint64_t>(Q)};
}

UPoly embed(const UPoly& f, const FieldEmbedding& emb) {
  std::vector<FieldElem> c;
  for (auto x : f.coeffs()) c.push_back(emb(x));
  return UPoly(std::move(c));
}

// Sums body(x) over codes [lo, Q) in chunk order; threads only change who
// computes each chunk.
template <class Body>
std::int64_t chunked_sum(std::uint64_t lo, std::uint64_t Q, unsigned threads, const Body& body) {
  const std::uint64_t chunks = (Q + kChunk - 1) / kChunk;
  std::vector<std::int64_t> partial(chunks, 0);
  auto run = [&](std::uint64_t c) {
    std::int64_t s = 0;
    const std::uint64_t end = std::min(Q, (c + 1) * kChunk);
    for (std::uint64_t x = std::max(lo, c * kChunk); x < end; ++x) s += body(x);
    partial[c] = s;
  };
  if (threads <= 1 || chunks == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) run(c);
      });
    }
    for (auto& t : pool) t.join();
  }
  std::int64_t total = 0;
  for (auto s : partial) total += s;
  return total;
}

}  // namespace

std::int64_t count_points_abelian(const ASTower& t, int m, const CountOptions& opt) {
  validate(t);
  const Extension ext = extension(t.base_q, m, opt.budget);
  const FieldCtx& F = ext.big;
  const std::uint64_t Q = ext.Q;
  const std::int64_t pn = to_int64(big_pow(t.p, static_cast<std::uint64_t>(t.n())), "p^n");
  const bool two = t.two_point();
  std::optional<UPoly> f;
  if (t.twist) f = embed(*t.twist, FieldEmbedding(ext.base, F));
  const int n = t.n();
  const bool tables = F.has_tables();
  const std::int64_t order = static_cast<std::int64_t>(Q - 1);
  std::vector<std::int64_t> ie(n), je(n);
  for (int k = 0; k < n; ++k) {
    ie[k] = t.i_seq[k] % order;
    je[k] = two ? t.j_seq[k] % order : 0;
  }

  auto body = [&](std::uint64_t xc) -> std::int64_t {
    const FieldElem x{xc};
    const FieldElem x1 = F.sub(x, F.one());
    if (two && x1.code == 0) return 0;
    if (tables) {
      const std::int64_t lx = F.log(x);
      const std::int64_t l1 = two ? F.log(x1) : 0;
      for (int k = 0; k < n; ++k) {
        const std::int64_t e = mod_floor(-(ie[k] * lx) - je[k] * l1, order);
        if (F.trace(F.exp(static_cast<std::uint64_t>(e))) != 0) return 0;
      }
    } else {
      const FieldElem xi = F.inv(x);
      const FieldElem x1i = two ? F.inv(x1) : F.one();
      for (int k = 0; k < n; ++k) {
        FieldElem c = F.pow(xi, static_cast<std::uint64_t>(t.i_seq[k]));
        if (two) c = F.mul(c, F.pow(x1i, static_cast<std::uint64_t>(t.j_seq[k])));
        if (F.trace(c) != 0) return 0;
      }
    }
    if (!f) return pn;
    return pn * (1 + F.quadratic_character(poly::eval(F, *f, x)));
  };
  std::int64_t total = chunked_sum(1, Q, opt.threads, body);
  if (two) {
    if (f) {
      total += 1 + F.quadratic_character(poly::eval(F, *f, F.zero()));
      total += 1 + F.quadratic_character(poly::eval(F, *f, F.one()));
      total += 2 * pn;
    } else {
      total += 2 + pn;
    }
  } else {
    total += 1 + pn;
  }
  return total;
}

namespace {

std::vector<std::int64_t> artin_schreier_histogram(const FieldCtx& F) {
  std::vector<std::int64_t> h(F.order(), 0);
  for (std::uint64_t yc = 0; yc < F.order(); ++yc) {
    const FieldElem y{yc};
    FieldElem yp = y;
    for (Residue e = 1; e < F.characteristic(); ++e) yp = F.mul(yp, y);
    ++h[F.sub(yp, y).code];
  }
  return h;
}

std::vector<std::int64_t> square_histogram(const FieldCtx& F) {
  std::vector<std::int64_t> h(F.order(), 0);
  for (std::uint64_t yc = 0; yc < F.order(); ++yc) ++h[F.mul({yc}, {yc}).code];
  return h;
}

FieldElem power_by_multiplication(const FieldCtx& F, FieldElem a, std::int64_t e) {
  FieldElem r = F.one();
  for (std::int64_t k = 0; k < e; ++k) r = F.mul(r, a);
  return r;
}

void check_naive_budget(std::uint64_t Q, std::size_t vars, std::uint64_t budget) {
  if (BigInt(Q) * vars > budget) throw BudgetExceeded("naive enumeration exceeds the budget");
}

}  // namespace

std::int64_t naive_count_abelian(const ASTower& t, int m, std::uint64_t budget) {
  validate(t);
  const Extension ext = extension(t.base_q, m, budget);
  const FieldCtx& F = ext.big;
  const std::size_t vars = 1 + static_cast<std::size_t>(t.n()) + (t.twist ? 1 : 0);
  check_naive_budget(ext.Q, vars, budget);
  const auto as = artin_schreier_histogram(F);
  std::vector<std::int64_t> sq;
  std::optional<UPoly> f;
  if (t.twist) {
    sq = square_histogram(F);
    f = embed(*t.twist, FieldEmbedding(ext.base, F));
  }
  const bool two = t.two_point();
  std::int64_t total = 0;
  for (std::uint64_t xc = 1; xc < ext.Q; ++xc) {
    const FieldElem x{xc};
    const FieldElem x1 = F.sub(x, F.one());
    if (two && x1.code == 0) continue;
    std::int64_t fibre = 1;
    for (int k = 0; k < t.n() && fibre; ++k) {
      FieldElem c = F.div(F.one(), power_by_multiplication(F, x, t.i_seq[k]));
      if (two) c = F.div(c, power_by_multiplication(F, x1, t.j_seq[k]));
      fibre *= as[c.code];
    }
    if (f) fibre *= sq[poly::eval(F, *f, x).code];
    total += fibre;
  }
  // Local data: every layer is totally ramified over x = 0 (and x = 1), and
  // its right side vanishes at infinity.
  std::int64_t at_infinity = 1;
  for (int k = 0; k < t.n(); ++k) at_infinity *= as[0];
  if (f) {
    at_infinity *= sq[f->leading().code];
    total += sq[poly::eval(F, *f, F.zero()).code] + sq[poly::eval(F, *f, F.one()).code];
  } else {
    total += two ? 2 : 1;
  }
  return total + at_infinity;
}

std::int64_t count_points_hyperelliptic(const HyperellipticCurve& c, int m, const CountOptions& opt) {
  const Extension ext = extension(c.q, m, opt.budget);
  if (ext.big.characteristic() == 2) throw InvalidArgument("y^2 = h(x) needs odd characteristic");
  if (c.h.degree() < 1 || c.h.degree() % 2 == 0) throw InvalidArgument("h must have odd degree");
  const FieldCtx& F = ext.big;
  const UPoly h = embed(c.h, FieldEmbedding(ext.base, F));
  auto body = [&](std::uint64_t xc) -> std::int64_t {
    return 1 + F.quadratic_character(poly::eval(F, h, {xc}));
  };
  return chunked_sum(0, ext.Q, opt.threads, body) + 1;
}

std::int64_t naive_count_hyperelliptic(const HyperellipticCurve& c, int m, std::uint64_t budget) {
  const Extension ext = extension(c.q, m, budget);
  if (c.h.degree() < 1 || c.h.degree() % 2 == 0) throw InvalidArgument("h must have odd degree");
  check_naive_budget(ext.Q, 2, budget);
  const FieldCtx& F = ext.big;
  const auto sq = square_histogram(F);
  const UPoly h = embed(c.h, FieldEmbedding(ext.base, F));
  std::int64_t total = 1;
  for (std::uint64_t xc = 0; xc < ext.Q; ++xc) total += sq[poly::eval(F, h, {xc}).code];
  return total;
}

std::int64_t naive_count_toric(const ToricCurve& c, int m, std::uint64_t budget) {
  const Extension ext = extension(c.q, m, budget);
  if (BigInt(ext.Q) * ext.Q > budget) throw BudgetExceeded("naive enumeration exceeds the budget");
  const FieldCtx& F = ext.big;
  std::int64_t total = 0;
  for (std::uint64_t xc = 1; xc < ext.Q; ++xc) {
    for (std::uint64_t yc = 1; yc < ext.Q; ++yc) {
      if (c.f.eval(F, {xc}, {yc}).code == 0) ++total;
    }
  }
  for (const auto& e : edge_polynomials(c.f)) {
    for (std::uint64_t uc = 1; uc < ext.Q; ++uc) {
      FieldElem acc{0}, pw = F.one();
      for (auto coef : e.coeffs) {
        acc = F.add(acc, F.mul(coef, pw));
        pw = F.mul(pw, {uc});
      }
      if (acc.code == 0) ++total;
    }
  }
  return total;
}

}  // namespace genusforge
