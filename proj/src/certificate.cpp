#include "genusforge/certificate.hpp"

#include "genusforge/errors.hpp"
#include "genusforge/primes.hpp"

namespace genusforge {

using nlohmann::json;

std::string family_name(Family f) {
  switch (f) {
    case Family::Abelian:
      return "abelian";
    case Family::Toric:
      return "toric";
    case Family::Tame:
      return "tame";
    case Family::Hyperelliptic:
      return "hyperelliptic";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  if (s == "abelian") return Family::Abelian;
  if (s == "toric") return Family::Toric;
  if (s == "tame") return Family::Tame;
  if (s == "hyperelliptic") return Family::Hyperelliptic;
  throw FormatError("unknown family '" + s + "'");
}

FieldCtx certificate_field(std::uint64_t q) {
  auto [p, k] = prime_power(q);
  if (p == 0) throw InvalidArgument(std::to_string(q) + " is not a prime power");
  return make_field(static_cast<Residue>(p), k);
}

bool same_construction(const CurveCertificate& a, const CurveCertificate& b) {
  return a.family == b.family && a.q == b.q && a.claimed_genus == b.claimed_genus &&
         a.claimed_point_lower_bound == b.claimed_point_lower_bound && a.payload == b.payload;
}

namespace {

json codes(const UPoly& f) {
  json arr = json::array();
  for (auto c : f.coeffs()) arr.push_back(c.code);
  return arr;
}

UPoly poly_from(const json& arr, const FieldCtx& ctx) {
  std::vector<FieldElem> c;
  for (const auto& v : arr) {
    const FieldElem e{v.get<std::uint64_t>()};
    if (!ctx.contains(e)) throw FormatError("coefficient " + std::to_string(e.code) + " is outside the field");
    c.push_back(e);
  }
  UPoly f(std::move(c));
  if (f.coeffs().size() != arr.size()) throw FormatError("polynomial has a zero leading coefficient");
  return f;
}

json modulus_of(std::uint64_t q) {
  const auto m = certificate_field(q).modulus();
  return json(std::vector<Residue>(m.begin(), m.end()));
}

}  // namespace

json to_json(const CurveCertificate& cert) {
  json j;
  j["v"] = 1;
  j["family"] = family_name(cert.family);
  j["q"] = cert.q;
  j["genus"] = cert.claimed_genus;
  j["points_lb"] = cert.claimed_point_lower_bound;
  std::visit(
      [&](const auto& pl) {
        using T = std::decay_t<decltype(pl)>;
        if constexpr (std::is_same_v<T, ASTower>) {
          j["p"] = pl.p;
          j["n"] = pl.n();
          j["i"] = pl.i_seq;
          j["j"] = pl.two_point() ? json(pl.j_seq) : json(nullptr);
          j["twist"] = pl.twist ? codes(*pl.twist) : json(nullptr);
          j["construction_q"] = pl.construction_q;
          j["field_modulus"] = modulus_of(pl.base_q);
        } else if constexpr (std::is_same_v<T, ToricCurve>) {
          j["p"] = pl.p;
          j["r"] = pl.r;
          j["a"] = pl.a;
          json verts = json::array();
          for (const auto& v : newton_polygon(pl.f).vertices()) verts.push_back({v.i, v.j});
          j["newton_polygon"] = verts;
        } else if constexpr (std::is_same_v<T, TameParams>) {
          j["plan_q"] = pl.plan_q;
          j["ell"] = pl.ell;
          j["r"] = pl.r;
          j["s"] = pl.s;
          j["d"] = pl.d;
          j["L"] = pl.L;
          j["enumerable"] = false;
          j["above_crt_bound"] = pl.above_crt_bound;
          json places = json::array();
          for (const auto& p : pl.places) {
            json e{{"degree", p.degree}, {"index", p.index}};
            e["coeffs"] = p.poly ? codes(*p.poly) : json(nullptr);
            places.push_back(std::move(e));
          }
          j["places"] = places;
          j["field_modulus"] = modulus_of(pl.plan_q);
        } else {
          j["h"] = codes(pl.h);
          j["field_modulus"] = modulus_of(pl.q);
        }
      },
      cert.payload);
  if (cert.verification) j["verification"] = *cert.verification;
  if (cert.timestamp) j["meta"] = {{"timestamp", *cert.timestamp}};
  return j;
}

CurveCertificate certificate_from_json(const json& j) {
  try {
    if (!j.is_object()) throw FormatError("certificate must be a JSON object");
    if (j.at("v").get<int>() != 1) throw FormatError("unsupported certificate version");
    CurveCertificate c;
    c.family = parse_family(j.at("family").get<std::string>());
    c.q = j.at("q").get<std::uint64_t>();
    c.claimed_genus = j.at("genus").get<std::int64_t>();
    c.claimed_point_lower_bound = j.at("points_lb").get<std::int64_t>();
    const FieldCtx ctx = certificate_field(c.q);
    auto check_modulus = [&](std::uint64_t q) {
      if (j.contains("field_modulus") && j.at("field_modulus") != modulus_of(q)) {
        throw FormatError("field modulus differs from the canonical one");
      }
    };
    switch (c.family) {
      case Family::Abelian: {
        ASTower t;
        t.p = j.at("p").get<Residue>();
        t.base_q = c.q;
        t.construction_q = j.at("construction_q").get<std::uint64_t>();
        t.i_seq = j.at("i").get<std::vector<std::int64_t>>();
        if (!j.at("j").is_null()) t.j_seq = j.at("j").get<std::vector<std::int64_t>>();
        if (!j.at("twist").is_null()) t.twist = poly_from(j.at("twist"), ctx);
        if (j.at("n").get<int>() != t.n()) throw FormatError("n does not match the layer count");
        check_modulus(c.q);
        validate(t);
        c.payload = std::move(t);
        break;
      }
      case Family::Toric: {
        const auto p = j.at("p").get<Residue>();
        ToricCurve t = build_family_poly(p, j.at("r").get<int>(), j.at("a").get<std::vector<std::int64_t>>(), c.q);
        if (j.contains("newton_polygon")) {
          json verts = json::array();
          for (const auto& v : newton_polygon(t.f).vertices()) verts.push_back({v.i, v.j});
          if (verts != j.at("newton_polygon")) throw FormatError("newton_polygon does not match (p, r, a)");
        }
        c.payload = std::move(t);
        break;
      }
      case Family::Tame: {
        TameParams t;
        t.q = c.q;
        t.plan_q = j.at("plan_q").get<std::uint64_t>();
        t.ell = j.at("ell").get<std::vector<std::int64_t>>();
        t.r = j.at("r").get<std::vector<std::int64_t>>();
        t.s = j.at("s").get<std::vector<std::int64_t>>();
        t.d = j.at("d").get<std::vector<std::int64_t>>();
        t.L = j.at("L").get<std::int64_t>();
        t.genus = c.claimed_genus;
        t.above_crt_bound = j.at("above_crt_bound").get<bool>();
        const FieldCtx pctx = certificate_field(t.plan_q);
        for (const auto& e : j.at("places")) {
          Place pl;
          pl.degree = e.at("degree").get<std::int64_t>();
          pl.index = e.at("index").get<std::uint64_t>();
          if (!e.at("coeffs").is_null()) pl.poly = poly_from(e.at("coeffs"), pctx);
          t.places.push_back(std::move(pl));
        }
        check_modulus(t.plan_q);
        c.payload = std::move(t);
        break;
      }
      case Family::Hyperelliptic: {
        check_modulus(c.q);
        c.payload = HyperellipticCurve{c.q, poly_from(j.at("h"), ctx)};
        break;
      }
    }
    if (j.contains("verification")) c.verification = j.at("verification");
    if (j.contains("meta") && j.at("meta").contains("timestamp")) {
      c.timestamp = j.at("meta").at("timestamp").get<std::string>();
    }
    return c;
  } catch (const json::exception& ex) {
    throw FormatError(std::string("malformed certificate: ") + ex.what());
  } catch (const InvalidArgument& ex) {
    throw FormatError(std::string("invalid certificate: ") + ex.what());
  }
}

std::string serialize(const CurveCertificate& cert) { return to_json(cert).dump(2) + "\n"; }

CurveCertificate parse_certificate(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw FormatError(std::string("certificate is not valid JSON: ") + ex.what());
  }
  return certificate_from_json(j);
}

CurveCertificate construct_toric(std::uint64_t q, std::int64_t g) {
  auto [p, k] = prime_power(q);
  if (p == 0) throw InvalidArgument("q must be a prime power");
  const ToricParameters par = select_parameters(static_cast<Residue>(p), g);
  CurveCertificate c;
  c.family = Family::Toric;
  c.q = q;
  c.claimed_genus = g;
  c.claimed_point_lower_bound = par.r;
  c.payload = build_family_poly(static_cast<Residue>(p), par.r, par.a, q);
  return c;
}

CurveCertificate construct_tame(std::uint64_t q, std::int64_t g) {
  const TameSelection sel = select_primes(q, g);
  if (sel.trivial) {
    throw InfeasibleGenus("genus " + std::to_string(g) + " is too small for a tame prime selection over F_" +
                          std::to_string(q));
  }
  TameParams t = plan_cover(q, sel.primes, g);
  CurveCertificate c;
  c.family = Family::Tame;
  c.q = q;
  c.claimed_genus = g;
  c.claimed_point_lower_bound = t.L;
  c.payload = std::move(t);
  return c;
}

}  // namespace genusforge
