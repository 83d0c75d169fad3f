#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "genusforge/tame.hpp"
#include "genusforge/toric.hpp"
#include "genusforge/tower.hpp"

namespace genusforge {

enum class Family { Abelian, Toric, Tame, Hyperelliptic };

std::string family_name(Family f);
Family parse_family(const std::string& s);

/// y^2 = h(x), h over F_q of odd degree 2g + 1.
struct HyperellipticCurve {
  std::uint64_t q = 3;
  UPoly h;

  friend bool operator==(const HyperellipticCurve&, const HyperellipticCurve&) = default;
};

using Payload = std::variant<ASTower, ToricCurve, TameParams, HyperellipticCurve>;

struct CurveCertificate {
  Family family = Family::Abelian;
  std::uint64_t q = 2;
  std::int64_t claimed_genus = 0;
  std::int64_t claimed_point_lower_bound = 0;
  Payload payload;
  std::optional<nlohmann::json> verification;
  std::optional<std::string> timestamp;
};

/// Payload and claims equal; verification and metadata ignored.
bool same_construction(const CurveCertificate& a, const CurveCertificate& b);

nlohmann::json to_json(const CurveCertificate& cert);
CurveCertificate certificate_from_json(const nlohmann::json& j);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string serialize(const CurveCertificate& cert);
CurveCertificate parse_certificate(const std::string& text);

/// Toric family member of genus g over F_q, claiming r rational points.
CurveCertificate construct_toric(std::uint64_t q, std::int64_t g);

/// Tame cyclic cover planned on select_primes(q, g); throws InfeasibleGenus
/// when the selection is trivial or the planner fails.
CurveCertificate construct_tame(std::uint64_t q, std::int64_t g);

/// The F_q context every polynomial of the certificate is written over.
FieldCtx certificate_field(std::uint64_t q);

}  // namespace genusforge
