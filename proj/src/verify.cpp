#include "genusforge/verify.hpp"

#include <cstdio>
#include <functional>

#include "genusforge/errors.hpp"
#include "genusforge/primes.hpp"

namespace genusforge {

std::int64_t genus_oracle_abelian(const ASTower& t) {
  validate(t);
  const std::int64_t p = t.p;
  const int n = t.n();
  // Lines in F_p^n, represented by vectors whose top nonzero digit is 1.
  // The top index K of such a combination fixes the pole orders at 0 and 1.
  BigInt twice_sum = 0;
  std::vector<std::int64_t> digits(n, 0);
  std::size_t classes = 0;
  while (true) {
    int k = 0;
    while (k < n && digits[k] == p - 1) digits[k++] = 0;
    if (k == n) break;
    ++digits[k];
    int top = n - 1;
    while (digits[top] == 0) --top;
    if (digits[top] != 1) continue;
    ++classes;
    const std::int64_t poles = t.two_point() ? t.i_seq[top] + t.j_seq[top] : t.i_seq[top] - 1;
    twice_sum += BigInt(p - 1) * poles;
  }
  const BigInt expected = (big_pow(t.p, static_cast<std::uint64_t>(n)) - 1) / (p - 1);
  if (BigInt(classes) != expected) throw InvalidArgument("internal: subcover enumeration incomplete");
  if (twice_sum % 2 != 0) throw InvalidArgument("internal: subcover genus sum is not integral");
  const BigInt gC = twice_sum / 2;
  if (!t.twist) return to_int64(gC, "genus");
  // 2g' - 2 = 2(2g_C - 2) + 2 p^n D.
  const BigInt branch = 2 * big_pow(t.p, static_cast<std::uint64_t>(n)) * t.twist_half_degree();
  const BigInt twice_g = 2 * (2 * gC - 2) + branch + 2;
  return to_int64(twice_g / 2, "genus");
}

bool weil_bound_holds(std::int64_t N, std::uint64_t q, int m, std::int64_t g) {
  const BigInt Q = big_pow(q, static_cast<std::uint64_t>(m));
  const BigInt dev = BigInt(N) - Q - 1;
  return dev * dev <= 4 * BigInt(g) * g * Q;
}

std::optional<std::int64_t> VerificationReport::n1() const {
  for (const auto& c : counts) {
    if (c.m == 1 && c.method != "skipped") return c.N;
  }
  return std::nullopt;
}

namespace {

std::string six_digits(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["enumerable"] = enumerable;
  j["genus_oracle"] = genus_oracle;
  j["genus_ok"] = genus_ok;
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : counts) {
    nlohmann::json e{{"m", c.m}, {"method", c.method}};
    if (c.method == "skipped") {
      e["N"] = nullptr;
    } else {
      e["N"] = c.N;
      e["weil_ok"] = c.weil_ok;
    }
    cs.push_back(std::move(e));
  }
  j["counts"] = cs;
  j["weil_ok"] = weil_ok;
  if (zeta) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : zeta->a) a.push_back(to_int64(c, "L-polynomial coefficient"));
    j["lpoly"] = a;
    j["lpoly_functional_equation"] = zeta->functional_equation;
    j["lpoly_root_deviation"] = six_digits(zeta->max_root_deviation);
  } else {
    j["lpoly"] = nullptr;
  }
  j["lpoly_ok"] = lpoly_ok;
  j["claims_ok"] = claims_ok;
  j["failures"] = failures;
  return j;
}

namespace {

using Counter = std::function<std::int64_t(int m)>;

struct Counters {
  Counter fast;
  Counter naive;
  std::function<bool(int m)> fast_fits;
  std::function<bool(int m)> naive_fits;
};

BigInt order_pow(std::uint64_t q, int m) { return big_pow(q, static_cast<std::uint64_t>(m)); }

void run_counts(const CurveCertificate& cert, const Counters& c, const VerifyOptions& opt,
                VerificationReport& rep) {
  for (int m = 1; m <= opt.depth; ++m) {
    CountEntry e;
    e.m = m;
    std::optional<std::int64_t> fast, naive;
    try {
      if (c.fast_fits(m)) fast = c.fast(m);
      if (c.naive_fits(m)) naive = c.naive(m);
    } catch (const BudgetExceeded&) {
    } catch (const Error& ex) {
      rep.failures.push_back("count m=" + std::to_string(m) + ": " + ex.what());
    }
    if (fast && naive) {
      e.method = "fast+naive";
      e.N = *fast;
      if (*fast != *naive) {
        rep.failures.push_back("m=" + std::to_string(m) + ": fast count " + std::to_string(*fast) +
                               " differs from naive count " + std::to_string(*naive));
      }
    } else if (fast) {
      e.method = "fast";
      e.N = *fast;
    } else if (naive) {
      e.method = "naive";
      e.N = *naive;
    } else {
      e.method = "skipped";
    }
    if (e.method != "skipped") {
      e.weil_ok = weil_bound_holds(e.N, cert.q, m, cert.claimed_genus);
      if (!e.weil_ok) {
        rep.weil_ok = false;
        rep.failures.push_back("m=" + std::to_string(m) + ": Weil bound fails for N = " + std::to_string(e.N));
      }
    }
    rep.counts.push_back(e);
  }
}

void finish_claims(const CurveCertificate& cert, const VerifyOptions& opt, VerificationReport& rep) {
  const auto n1 = rep.n1();
  if (!n1) {
    rep.claims_ok = false;
    if (opt.depth >= 1) rep.failures.push_back("N_1 was not computed, so the point bound is unverified");
  } else {
    rep.claims_ok = *n1 >= cert.claimed_point_lower_bound;
    if (!rep.claims_ok) {
      rep.failures.push_back("N_1 = " + std::to_string(*n1) + " is below the claimed bound " +
                             std::to_string(cert.claimed_point_lower_bound));
    }
  }
  const std::int64_t g = cert.claimed_genus;
  if (g < 0 || opt.depth < 2 * g) return;
  std::vector<std::int64_t> ns;
  for (const auto& c : rep.counts) {
    if (c.method == "skipped") return;
    ns.push_back(c.N);
  }
  try {
    rep.zeta = lpolynomial_from_counts(cert.q, static_cast<int>(g), ns);
    rep.lpoly_ok = rep.zeta->functional_equation && rep.zeta->roots_ok;
    if (!rep.zeta->functional_equation) rep.failures.push_back("L-polynomial violates the functional equation");
    if (!rep.zeta->roots_ok) rep.failures.push_back("L-polynomial roots are off the circle |alpha|^2 = q");
  } catch (const Error& ex) {
    rep.lpoly_ok = false;
    rep.failures.push_back(std::string("L-polynomial: ") + ex.what());
  }
}

void check_genus(const CurveCertificate& cert, std::int64_t oracle, VerificationReport& rep) {
  rep.genus_oracle = oracle;
  rep.genus_ok = oracle == cert.claimed_genus;
  if (!rep.genus_ok) {
    rep.failures.push_back("genus oracle gives " + std::to_string(oracle) + ", certificate claims " +
                           std::to_string(cert.claimed_genus));
  }
}

}  // namespace

VerificationReport verify_certificate(const CurveCertificate& cert, const VerifyOptions& opt) {
  VerificationReport rep;
  if (opt.depth < 0) throw InvalidArgument("depth must be >= 0");
  if (cert.claimed_genus < 0 || cert.claimed_point_lower_bound < 0) {
    rep.failures.push_back("claims must be nonnegative");
  }
  const CountOptions fast_opt{opt.threads, opt.budget.fast};
  try {
    if (const auto* t = std::get_if<ASTower>(&cert.payload)) {
      if (t->base_q != cert.q) rep.failures.push_back("tower base field differs from q");
      check_genus(cert, genus_oracle_abelian(*t), rep);
      const std::size_t vars = 1 + t->n() + (t->twist ? 1 : 0);
      Counters c{[&](int m) { return count_points_abelian(*t, m, fast_opt); },
                 [&](int m) { return naive_count_abelian(*t, m, opt.budget.naive); },
                 [&](int m) { return order_pow(cert.q, m) <= opt.budget.fast; },
                 [&](int m) { return order_pow(cert.q, m) * vars <= opt.budget.naive; }};
      run_counts(cert, c, opt, rep);
      finish_claims(cert, opt, rep);
    } else if (const auto* h = std::get_if<HyperellipticCurve>(&cert.payload)) {
      if (h->q != cert.q) rep.failures.push_back("curve field differs from q");
      const FieldCtx ctx = certificate_field(h->q);
      std::int64_t oracle = -1;
      if (h->h.degree() % 2 == 1 && poly::is_squarefree(ctx, h->h)) oracle = (h->h.degree() - 1) / 2;
      if (oracle < 0) rep.failures.push_back("h must be squarefree of odd degree");
      check_genus(cert, oracle, rep);
      Counters c{[&](int m) { return count_points_hyperelliptic(*h, m, fast_opt); },
                 [&](int m) { return naive_count_hyperelliptic(*h, m, opt.budget.naive); },
                 [&](int m) { return order_pow(cert.q, m) <= opt.budget.fast; },
                 [&](int m) { return order_pow(cert.q, m) * 2 <= opt.budget.naive; }};
      run_counts(cert, c, opt, rep);
      finish_claims(cert, opt, rep);
    } else if (const auto* tc = std::get_if<ToricCurve>(&cert.payload)) {
      if (tc->q != cert.q) rep.failures.push_back("curve field differs from q");
      const ToricCurve rebuilt = build_family_poly(tc->p, tc->r, tc->a, tc->q);
      if (!(rebuilt.f == tc->f)) rep.failures.push_back("f does not match the family formula for (p, r, a)");
      const FieldCtx ctx = certificate_field(tc->q);
      const ConditionReport cond = check_agprop(ctx, tc->f);
      if (!cond.all_pass()) rep.failures.push_back("conditions (i)-(iii) do not all hold");
      check_genus(cert, pick_data(newton_polygon(tc->f)).interior, rep);
      auto torus_fits = [&](int m) {
        const BigInt Q = order_pow(cert.q, m);
        return Q * Q <= opt.budget.naive;
      };
      Counters c{[&](int m) { return count_points_toric(*tc, m, opt.budget.naive); },
                 [&](int m) { return naive_count_toric(*tc, m, opt.budget.naive); }, torus_fits, torus_fits};
      run_counts(cert, c, opt, rep);
      finish_claims(cert, opt, rep);
    } else if (const auto* tm = std::get_if<TameParams>(&cert.payload)) {
      rep.enumerable = false;
      rep.lpoly_ok = true;
      if (tm->q != cert.q) rep.failures.push_back("plan field differs from q");
      std::int64_t oracle = -1;
      try {
        oracle = genus_tame(tm->ell, tm->d);
      } catch (const Error& ex) {
        rep.failures.push_back(ex.what());
      }
      check_genus(cert, oracle, rep);
      const std::string why = check_tame_plan(*tm);
      if (!why.empty()) rep.failures.push_back("tame plan: " + why);
      rep.claims_ok = cert.claimed_point_lower_bound <= tm->L;
      if (!rep.claims_ok) rep.failures.push_back("claimed bound exceeds the split place count L");
    }
  } catch (const Error& ex) {
    rep.failures.push_back(std::string(ex.id()) + ": " + ex.what());
  }
  return rep;
}

}  // namespace genusforge
