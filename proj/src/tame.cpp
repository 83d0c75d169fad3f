#include "genusforge/tame.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "genusforge/errors.hpp"
#include "genusforge/primes.hpp"

namespace genusforge {

namespace {

BigInt product(const std::vector<std::int64_t>& v) {
  BigInt L = 1;
  for (auto x : v) L *= x;
  return L;
}

std::uint64_t plan_field(std::uint64_t q) { return q % 2 == 0 ? 2 : q; }

FieldCtx context_for(std::uint64_t q) {
  auto [p, k] = prime_power(q);
  if (p == 0) throw InvalidArgument("q must be a prime power");
  return make_field(static_cast<Residue>(p), k);
}

}  // namespace

std::int64_t genus_tame(const std::vector<std::int64_t>& ell, const std::vector<std::int64_t>& d) {
  if (ell.empty() || ell.size() != d.size()) throw InvalidArgument("genus_tame: ell and d must match");
  for (std::size_t i = 0; i < ell.size(); ++i) {
    if (ell[i] < 2 || d[i] < 1) throw InvalidArgument("genus_tame: need l_i >= 2 and d_i >= 1");
  }
  const BigInt L = product(ell);
  BigInt twice = 2 - 2 * L;
  for (std::size_t i = 0; i < ell.size(); ++i) twice += (L / ell[i]) * (ell[i] - 1) * d[i];
  if (twice < 0 || twice % 2 != 0) throw InvalidArgument("genus_tame: parameters give a non-integral genus");
  return to_int64(twice / 2, "genus");
}

BigInt crt_bound_twice(const std::vector<std::int64_t>& ell) {
  const BigInt L = product(ell);
  BigInt s = 0;
  for (std::size_t i = 1; i < ell.size(); ++i) s += BigInt(ell[i] - 1) * (ell[i] - 1);
  return 2 - 2 * L + L * s;
}

bool above_crt_bound(const std::vector<std::int64_t>& ell, std::int64_t g) {
  return BigInt(2) * g > crt_bound_twice(ell);
}

std::int64_t least_prime_not_dividing(std::uint64_t q) {
  std::int64_t l = 2;
  while (q % l == 0) l = static_cast<std::int64_t>(next_prime(l));
  return l;
}

void check_prime_hypotheses(std::uint64_t plan_q, const std::vector<std::int64_t>& ell) {
  if (ell.empty()) throw InvalidArgument("prime list is empty");
  const std::int64_t l1 = least_prime_not_dividing(plan_q);
  if (ell[0] != l1) throw InvalidArgument("first prime must be " + std::to_string(l1));
  const BigInt forbid = BigInt(plan_q) * (plan_q - 1) * l1;
  bool seven = false;
  for (std::size_t i = 0; i < ell.size(); ++i) {
    if (ell[i] < 2 || !is_prime(static_cast<std::uint64_t>(ell[i]))) {
      throw InvalidArgument(std::to_string(ell[i]) + " is not prime");
    }
    if (i >= 1) {
      if (forbid % ell[i] == 0) throw InvalidArgument(std::to_string(ell[i]) + " divides q(q-1)l_1");
      if (i >= 2 && ell[i] <= ell[i - 1]) throw InvalidArgument("primes l_2 < ... < l_n must increase");
      if (ell[i] % 8 == 7) seven = true;
    }
  }
  if (plan_q % 2 == 0 && !seven) throw InvalidArgument("even q needs some l_i = 7 (mod 8)");
}

TameParams plan_cover(std::uint64_t q, const std::vector<std::int64_t>& ell, std::int64_t g) {
  if (prime_power(q).first == 0) throw InvalidArgument("q must be a prime power");
  if (g < 0) throw InvalidArgument("genus must be >= 0");
  const std::uint64_t pq = plan_field(q);
  check_prime_hypotheses(pq, ell);
  const std::size_t n = ell.size();
  const BigInt L = product(ell);
  std::size_t i0 = n;
  if (pq % 2 == 0) {
    for (std::size_t i = 1; i < n && i0 == n; ++i) {
      if (ell[i] % 8 == 7) i0 = i;
    }
  }
  TameParams t;
  t.q = q;
  t.plan_q = pq;
  t.ell = ell;
  t.L = to_int64(L, "L");
  t.genus = g;
  t.above_crt_bound = above_crt_bound(ell, g);
  t.r.resize(n);
  t.s.resize(n);
  t.d.resize(n);
  t.r[0] = 2;
  for (std::size_t i = 1; i < n; ++i) t.r[i] = i == i0 ? (ell[i] - 1) / 2 : ell[i] - 1;

  // g - 1 + L = sum c_i s_i with c_i = L (l_i - 1) r_i / (2 l_i).
  std::vector<BigInt> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const BigInt num = L * (ell[i] - 1) * t.r[i];
    if (num % (2 * ell[i]) != 0) throw InvalidArgument("internal: genus coefficient not integral");
    c[i] = num / (2 * ell[i]);
  }
  const BigInt target = BigInt(g) - 1 + L;
  BigInt rest = target;
  for (std::size_t i = 1; i < n; ++i) {
    const std::int64_t M = i == i0 ? 2 * ell[i] : ell[i];
    const std::int64_t ci = static_cast<std::int64_t>(c[i] % M);
    const std::int64_t tm = static_cast<std::int64_t>(((target % M) + M) % M);
    std::int64_t s = static_cast<std::int64_t>((BigInt(tm) * mod_inverse(ci, M)) % M);
    if (s == 0) s = M;
    t.s[i] = s;
    rest -= c[i] * s;
  }
  if (rest % c[0] != 0) {
    throw InfeasibleGenus("s_1 is not integral for g = " + std::to_string(g));
  }
  const BigInt s1 = rest / c[0];
  if (s1 < 1) {
    throw InfeasibleGenus("g = " + std::to_string(g) + " is below what the primes allow (s_1 = " +
                          s1.str() + ")");
  }
  t.s[0] = to_int64(s1, "s_1");
  for (std::size_t i = 0; i < n; ++i) t.d[i] = t.r[i] * t.s[i];
  if (genus_tame(t.ell, t.d) != g) throw InvalidArgument("internal: planned cover has the wrong genus");

  const FieldCtx ctx = context_for(pq);
  std::map<std::int64_t, std::uint64_t> used;
  for (std::size_t i = 0; i < n; ++i) {
    Place pl;
    pl.degree = t.d[i];
    pl.index = used[t.d[i]]++;
    if (count_irreducibles(pq, static_cast<int>(pl.degree)) < BigInt(pl.index + 1)) {
      throw InvalidArgument("internal: not enough places of degree " + std::to_string(pl.degree));
    }
    if (pl.degree <= kPlaceMaterializeDegree) {
      pl.poly = first_irreducibles(ctx, static_cast<int>(pl.degree), pl.index + 1).back();
    }
    t.places.push_back(std::move(pl));
  }
  return t;
}

std::string check_tame_plan(const TameParams& t) {
  const std::size_t n = t.ell.size();
  if (t.r.size() != n || t.s.size() != n || t.d.size() != n || t.places.size() != n) {
    return "parameter lists have different lengths";
  }
  try {
    check_prime_hypotheses(t.plan_q, t.ell);
  } catch (const Error& e) {
    return e.what();
  }
  if (product(t.ell) != t.L) return "L is not the product of the primes";
  for (std::size_t i = 0; i < n; ++i) {
    if (t.s[i] < 1) return "s_" + std::to_string(i + 1) + " < 1";
    if (t.d[i] != t.r[i] * t.s[i]) return "d_i != r_i s_i";
    const BigInt mod = BigInt(t.ell[i]) * (t.plan_q - 1);
    if (boost::multiprecision::powm(BigInt(t.plan_q), BigInt(t.d[i]), mod) != 1 % mod) {
      return "q^d_" + std::to_string(i + 1) + " != 1 mod l_i(q-1)";
    }
  }
  try {
    if (genus_tame(t.ell, t.d) != t.genus) return "genus identity fails";
  } catch (const Error& e) {
    return e.what();
  }
  const FieldCtx ctx = context_for(t.plan_q);
  std::set<std::pair<std::int64_t, std::uint64_t>> seen;
  for (std::size_t i = 0; i < n; ++i) {
    const Place& pl = t.places[i];
    if (pl.degree != t.d[i]) return "place degree differs from d_i";
    if (!seen.insert({pl.degree, pl.index}).second) return "places are not distinct";
    if (count_irreducibles(t.plan_q, static_cast<int>(pl.degree)) < BigInt(pl.index + 1)) {
      return "place index exceeds the number of irreducibles";
    }
    if (pl.poly) {
      if (pl.poly->degree() != pl.degree || !pl.poly->is_monic() || !poly::is_irreducible(ctx, *pl.poly)) {
        return "place polynomial is not monic irreducible of degree d_i";
      }
    }
  }
  return {};
}

std::int64_t TameSelection::L() const {
  return to_int64(product(primes), "L");
}

namespace {

struct PrimeSums {
  BigInt prod = 1;
  BigInt sumsq = 0;
};

}  // namespace

TameSelection select_primes(std::uint64_t q, std::int64_t g) {
  if (prime_power(q).first == 0) throw InvalidArgument("q must be a prime power");
  TameSelection sel;
  sel.q = q;
  sel.g = g;
  sel.ell1 = least_prime_not_dividing(q);
  const BigInt forbid = BigInt(q) * (q - 1) * sel.ell1;
  const auto table = prime_table();
  auto usable = [&](std::int64_t l) { return forbid % l != 0; };
  const BigInt lhs = 2 * (BigInt(g) - 1);  // 2(g - 1), both sides doubled

  // x_g: least x with 2(g-1) <= l_1 * prod * (-2 + sum (l-1)^2).
  std::vector<std::int64_t> S;
  PrimeSums acc;
  bool have_x = lhs <= sel.ell1 * acc.prod * (acc.sumsq - 2);
  if (have_x) sel.x_g = 1;
  for (std::size_t k = 0; k < table.size() && !have_x; ++k) {
    const std::int64_t l = table[k];
    if (!usable(l)) continue;
    S.push_back(l);
    acc.prod *= l;
    acc.sumsq += BigInt(l - 1) * (l - 1);
    if (lhs <= sel.ell1 * acc.prod * (acc.sumsq - 2)) {
      have_x = true;
      sel.x_g = l;
    }
  }

  auto fallback = [&]() {
    sel.refined = false;
    std::vector<std::int64_t> best{sel.ell1};
    std::vector<std::int64_t> cur{sel.ell1};
    for (std::size_t k = 0; k < table.size(); ++k) {
      const std::int64_t l = table[k];
      if (!usable(l)) continue;
      cur.push_back(l);
      if (!above_crt_bound(cur, g)) break;
      best = cur;
    }
    sel.primes = best;
    bool ok = best.size() > 1;
    if (ok) {
      try {
        check_prime_hypotheses(plan_field(q), best);
      } catch (const InvalidArgument&) {
        ok = false;
      }
    }
    if (!ok) {
      sel.primes = {sel.ell1};
      sel.trivial = true;
    }
    return sel;
  };

  if (!have_x || S.empty()) return fallback();

  // p_1: least usable prime whose removal reverses the inequality.
  for (std::int64_t l : S) {
    if (lhs * l > sel.ell1 * acc.prod * (acc.sumsq - 2 - BigInt(l - 1) * (l - 1))) {
      sel.p1 = l;
      break;
    }
  }
  if (sel.p1 == 0) return fallback();
  // p_2: largest prime <= x_g not dividing q(q-1) l_1 p_1.
  for (auto it = S.rbegin(); it != S.rend(); ++it) {
    if (*it != sel.p1) {
      sel.p2 = *it;
      break;
    }
  }
  if (sel.p2 == 0) return fallback();
  // p_3: largest prime satisfying the replacement inequality; the right side
  // grows with p_3, so scan upward until it first fails.
  const BigInt base = acc.sumsq - 2 - BigInt(sel.p1 - 1) * (sel.p1 - 1) - BigInt(sel.p2 - 1) * (sel.p2 - 1);
  const BigInt left = lhs * sel.p1 * sel.p2;
  std::int64_t last_ok = 0;
  bool failed = false;
  for (std::size_t k = 0; k < table.size(); ++k) {
    const std::int64_t l = table[k];
    if (left > sel.ell1 * l * acc.prod * (base + BigInt(l - 1) * (l - 1))) {
      last_ok = l;
    } else {
      failed = true;
      break;
    }
  }
  if (!failed || last_ok == 0) return fallback();
  sel.p3 = last_ok;

  std::set<std::int64_t> chosen;
  const BigInt forbid2 = BigInt(q) * (q - 1) * sel.p1 * sel.p2;
  for (std::size_t k = 0; k < table.size() && table[k] <= sel.x_g; ++k) {
    if (forbid2 % table[k] != 0) chosen.insert(table[k]);
  }
  chosen.erase(sel.ell1);
  if (chosen.count(sel.p3) || forbid % sel.p3 == 0) return fallback();
  chosen.insert(sel.p3);
  sel.primes = {sel.ell1};
  sel.primes.insert(sel.primes.end(), chosen.begin(), chosen.end());
  try {
    check_prime_hypotheses(plan_field(q), sel.primes);
  } catch (const InvalidArgument&) {
    return fallback();
  }
  sel.refined = true;
  return sel;
}

RecordGenus record_genera(std::uint64_t q, int e) {
  if (e < 4) throw InvalidArgument("record_genera needs e >= 4");
  if (prime_power(q).first == 0) throw InvalidArgument("q must be a prime power");
  const BigInt d = (big_pow(q, static_cast<std::uint64_t>(e)) - 1) / (q - 1);
  const BigInt twice_g = (d - 1) * (e - 2);
  if (twice_g % 2 != 0) throw InvalidArgument("internal: record genus not integral");
  RecordGenus out;
  out.d = to_int64(d, "d");
  out.g = to_int64(twice_g / 2, "g");
  out.points_lb = out.d;
  out.ratio_rhs = 2.0 * std::log(static_cast<double>(q)) * static_cast<double>(out.g) /
                  std::log(static_cast<double>(out.g));
  out.inequality_holds = static_cast<double>(out.d) > out.ratio_rhs;
  return out;
}

}  // namespace genusforge
