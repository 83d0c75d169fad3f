#include "genusforge/abelian.hpp"

#include <sstream>

#include "genusforge/errors.hpp"
#include "genusforge/primes.hpp"

namespace genusforge {

namespace {

void check_exponents(const std::vector<std::int64_t>& seq, Residue p, const char* name) {
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (seq[k] < 1) throw InvalidArgument(std::string(name) + " entries must be positive");
    if (seq[k] % p == 0) throw InvalidArgument(std::string(name) + " entries must be coprime to p");
    if (k > 0 && seq[k] <= seq[k - 1]) throw InvalidArgument(std::string(name) + " must be increasing");
  }
}

std::int64_t checked_pow(std::int64_t p, int n) {
  const BigInt v = big_pow(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(n));
  return to_int64(v, "p^n");
}

// sum (i_k + j_k) p^k, or sum (i_k - 1) p^k for one-point towers.
BigInt weighted_sum(const ASTower& t) {
  BigInt s = 0, pk = 1;
  for (int k = 0; k < t.n(); ++k) {
    s += (t.two_point() ? t.i_seq[k] + t.j_seq[k] : t.i_seq[k] - 1) * pk;
    pk *= t.p;
  }
  return s;
}

}  // namespace

void validate(const ASTower& t) {
  if (!is_prime(t.p)) throw InvalidArgument("tower characteristic must be prime");
  if (t.i_seq.empty()) throw InvalidArgument("tower needs at least one layer");
  auto [bp, bk] = prime_power(t.base_q);
  auto [cp, ck] = prime_power(t.construction_q);
  if (bp != t.p || cp != t.p || bk % ck != 0) {
    throw InvalidArgument("tower fields must be powers of p with F_construction inside F_base");
  }
  check_exponents(t.i_seq, t.p, "i");
  if (t.two_point()) {
    if (t.j_seq.size() != t.i_seq.size()) throw InvalidArgument("i and j must have the same length");
    check_exponents(t.j_seq, t.p, "j");
  }
  if (t.twist) {
    if (t.p == 2) throw InvalidArgument("quadratic twist requires odd characteristic");
    if (!t.two_point()) throw InvalidArgument("quadratic twist is only supported on two-point towers");
    if (t.construction_q != t.base_q) throw InvalidArgument("twisted towers are built over their base field");
    const FieldCtx ctx = make_field(t.p, static_cast<int>(bk));
    const UPoly& f = *t.twist;
    for (auto c : f.coeffs()) {
      if (!ctx.contains(c)) throw InvalidArgument("twist coefficient outside F_q");
    }
    if (f.degree() < 2 || f.degree() % 2 != 0) throw InvalidArgument("twist must have even degree >= 2");
    if (!f.is_monic()) throw InvalidArgument("twist must be monic");
    if (poly::eval(ctx, f, ctx.zero()).code == 0 || poly::eval(ctx, f, ctx.one()).code == 0) {
      throw InvalidArgument("twist must be coprime to x(x-1)");
    }
    if (!poly::is_irreducible(ctx, f)) throw InvalidArgument("twist must be irreducible");
  }
}

std::int64_t genus_formula(const ASTower& t) {
  const BigInt s = weighted_sum(t);
  if (t.twist) {
    const BigInt pn = big_pow(t.p, static_cast<std::uint64_t>(t.n()));
    return to_int64((t.p - 1) * s + pn * t.twist_half_degree() - 1, "genus");
  }
  const BigInt twice = (t.p - 1) * s;
  if (twice % 2 != 0) throw InvalidArgument("tower genus is not an integer");
  return to_int64(twice / 2, "genus");
}

CongruenceSolution solve_congruence(Residue p, int n, std::int64_t d) {
  if (p < 3 || !is_prime(p)) throw InvalidArgument("solve_congruence needs an odd prime");
  if (n < 1) throw InvalidArgument("solve_congruence needs n >= 1");
  const std::int64_t P = p;
  const std::int64_t pn = checked_pow(P, n);
  d = mod_floor(d, pn);
  CongruenceSolution sol;
  const std::int64_t dp = d % P;
  if (dp > 1) {
    sol.i_seq.push_back(dp - 1);
    sol.j_seq.push_back(1);
  } else {
    sol.i_seq.push_back(dp + 1);
    sol.j_seq.push_back(P - 1);
  }
  std::int64_t S = sol.i_seq[0] + sol.j_seq[0];
  std::int64_t pm = 1;
  for (int m = 1; m < n; ++m) {
    pm *= P;
    const std::int64_t dprime = mod_floor((d - S) / pm, P);
    const std::int64_t ip = sol.i_seq.back(), jp = sol.j_seq.back();
    bool placed = false;
    for (std::int64_t b = 1; b <= 3 && !placed; ++b) {
      const std::int64_t i = ip + b;
      const std::int64_t j = jp + 1 + mod_floor(dprime - 1 - b - ip - jp, P);
      if (i % P == 0 || j % P == 0) continue;
      sol.i_seq.push_back(i);
      sol.j_seq.push_back(j);
      S += (i + j) * pm;
      placed = true;
    }
    if (!placed) throw InvalidArgument("internal: no step b in {1,2,3} for the congruence");
  }
  for (int k = 0; k < n; ++k) {
    if (sol.i_seq[k] + sol.j_seq[k] >= (P + 3) * (k + 1)) {
      throw InvalidArgument("internal: congruence solution exceeds its size bound");
    }
  }
  if (mod_floor(S - d, pn) != 0) throw InvalidArgument("internal: congruence not satisfied");
  return sol;
}

CurveCertificate construct_odd(std::uint64_t q, std::int64_t g) {
  auto [pp, k] = prime_power(q);
  if (pp == 0 || pp == 2) throw InvalidArgument("construct_odd needs an odd prime power q");
  if (g < 1) throw InvalidArgument("construct_odd needs g >= 1");
  const Residue p = static_cast<Residue>(pp);
  const std::int64_t P = p;
  const FieldCtx ctx = make_field(p, k);
  CurveCertificate cert;
  cert.q = q;
  cert.claimed_genus = g;
  if (g <= P * P + 3 * P) {
    cert.family = Family::Hyperelliptic;
    cert.payload = HyperellipticCurve{q, find_irreducible(ctx, static_cast<int>(2 * g + 1))};
    cert.claimed_point_lower_bound = 1;
    return cert;
  }
  int n = 1;
  while ((P + 3) * (n + 1) * checked_pow(P, n + 1) < g) ++n;
  const std::int64_t pn = checked_pow(P, n);
  const std::int64_t inv = mod_inverse(P - 1, pn);
  const std::int64_t d = static_cast<std::int64_t>((BigInt(g + 1) * inv) % pn);
  auto sol = solve_congruence(p, n, d);
  ASTower t;
  t.p = p;
  t.base_q = t.construction_q = q;
  t.i_seq = sol.i_seq;
  t.j_seq = sol.j_seq;
  const BigInt rem = BigInt(g + 1) - (P - 1) * weighted_sum(t);
  if (rem <= 0 || rem % pn != 0) throw InvalidArgument("internal: twist degree is not a positive integer");
  const std::int64_t D = to_int64(rem / pn, "twist degree");
  t.twist = find_irreducible(ctx, static_cast<int>(2 * D));
  validate(t);
  if (genus_formula(t) != g) throw InvalidArgument("internal: constructed tower has the wrong genus");
  cert.family = Family::Abelian;
  cert.claimed_point_lower_bound = 2 * pn;
  cert.payload = std::move(t);
  return cert;
}

CurveCertificate construct_even(std::uint64_t q, std::int64_t g) {
  auto [pp, k] = prime_power(q);
  if (pp != 2) throw InvalidArgument("construct_even needs q a power of 2");
  if (g < 0) throw InvalidArgument("genus must be >= 0");
  int n = 1;
  while (checked_pow(2, n + 2) * (n + 1) - 4 <= g) ++n;
  ASTower t;
  t.p = 2;
  t.base_q = q;
  t.construction_q = 2;
  if (n == 1) {
    t.i_seq = {2 * g + 1};
  } else {
    const std::int64_t base = (n - 3) * checked_pow(2, n) + 4;
    const std::int64_t choice = mod_floor(g - base, checked_pow(2, n - 1));
    std::int64_t partial = 0;
    for (int kk = 0; kk <= n - 2; ++kk) {
      const std::int64_t ik = ((choice >> kk) & 1) ? 4 * kk + 3 : 4 * kk + 1;
      t.i_seq.push_back(ik);
      // (i_k - 1) 2^{k-1}
      partial += kk == 0 ? (ik - 1) / 2 : (ik - 1) * checked_pow(2, kk - 1);
    }
    const std::int64_t step = checked_pow(2, n - 2);
    if ((g - partial) % step != 0) throw InvalidArgument("internal: top layer exponent not integral");
    const std::int64_t top = (g - partial) / step + 1;
    if (top % 2 == 0 || top <= 4 * n - 5) throw InvalidArgument("internal: top layer exponent invalid");
    t.i_seq.push_back(top);
  }
  validate(t);
  if (genus_formula(t) != g) throw InvalidArgument("internal: constructed tower has the wrong genus");
  CurveCertificate cert;
  cert.family = Family::Abelian;
  cert.q = q;
  cert.claimed_genus = g;
  cert.claimed_point_lower_bound = checked_pow(2, n);
  cert.payload = std::move(t);
  return cert;
}

CurveCertificate construct_abelian(std::uint64_t q, std::int64_t g) {
  auto [p, k] = prime_power(q);
  if (p == 0) throw InvalidArgument("q must be a prime power");
  return p == 2 ? construct_even(q, g) : construct_odd(q, g);
}

namespace {

std::string as_text(const ASTower& t, int k) {
  std::ostringstream os;
  if (t.p == 2) {
    os << "y_" << k << "^2 + y_" << k;
  } else {
    os << "y_" << k << "^" << t.p << " - y_" << k;
  }
  os << " = x^(-" << t.i_seq[k] << ")";
  if (t.two_point()) os << " * (x-1)^(-" << t.j_seq[k] << ")";
  return os.str();
}

std::vector<std::uint64_t> codes(const UPoly& f) {
  std::vector<std::uint64_t> out;
  for (auto c : f.coeffs()) out.push_back(c.code);
  return out;
}

}  // namespace

EquationSet emit_equations(const CurveCertificate& cert) {
  EquationSet out;
  if (const auto* t = std::get_if<ASTower>(&cert.payload)) {
    out.field = t->construction_q;
    for (int k = 0; k < t->n(); ++k) {
      Equation e;
      e.kind = Equation::Kind::ArtinSchreier;
      e.layer = k;
      e.p = t->p;
      e.x_pole = t->i_seq[k];
      e.x1_pole = t->two_point() ? t->j_seq[k] : 0;
      e.text = as_text(*t, k);
      out.equations.push_back(std::move(e));
    }
    if (t->twist) {
      const FieldCtx ctx = certificate_field(t->base_q);
      Equation e;
      e.kind = Equation::Kind::Quadratic;
      e.coeffs = codes(*t->twist);
      e.text = "y^2 = " + poly::to_string(ctx, *t->twist);
      out.equations.push_back(std::move(e));
    }
    return out;
  }
  if (const auto* h = std::get_if<HyperellipticCurve>(&cert.payload)) {
    const FieldCtx ctx = certificate_field(h->q);
    out.field = h->q;
    Equation e;
    e.kind = Equation::Kind::Quadratic;
    e.coeffs = codes(h->h);
    e.text = "y^2 = " + poly::to_string(ctx, h->h);
    out.equations.push_back(std::move(e));
    return out;
  }
  throw InvalidArgument("emit_equations supports abelian and hyperelliptic certificates only");
}

nlohmann::json to_json(const EquationSet& eqs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : eqs.equations) {
    nlohmann::json j;
    j["text"] = e.text;
    if (e.kind == Equation::Kind::ArtinSchreier) {
      j["kind"] = "artin_schreier";
      j["layer"] = e.layer;
      j["p"] = e.p;
      j["x_pole"] = e.x_pole;
      j["x1_pole"] = e.x1_pole;
    } else {
      j["kind"] = "quadratic";
      j["rhs"] = e.coeffs;
    }
    arr.push_back(std::move(j));
  }
  return {{"field", eqs.field}, {"equations", arr}};
}

EquationSet equations_from_json(const nlohmann::json& j) {
  try {
    EquationSet out;
    out.field = j.at("field").get<std::uint64_t>();
    for (const auto& e : j.at("equations")) {
      Equation eq;
      eq.text = e.at("text").get<std::string>();
      const auto kind = e.at("kind").get<std::string>();
      if (kind == "artin_schreier") {
        eq.kind = Equation::Kind::ArtinSchreier;
        eq.layer = e.at("layer").get<int>();
        eq.p = e.at("p").get<std::int64_t>();
        eq.x_pole = e.at("x_pole").get<std::int64_t>();
        eq.x1_pole = e.at("x1_pole").get<std::int64_t>();
      } else if (kind == "quadratic") {
        eq.kind = Equation::Kind::Quadratic;
        eq.coeffs = e.at("rhs").get<std::vector<std::uint64_t>>();
      } else {
        throw FormatError("unknown equation kind '" + kind + "'");
      }
      out.equations.push_back(std::move(eq));
    }
    return out;
  } catch (const nlohmann::json::exception& ex) {
    throw FormatError(std::string("malformed equation set: ") + ex.what());
  }
}

}  // namespace genusforge
