#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "genusforge/certificate.hpp"
#include "genusforge/counting.hpp"
#include "genusforge/zeta.hpp"

namespace genusforge {

/// Genus of the tower as a sum over its degree-p subcovers (one per line in
/// F_p^n), followed by Riemann-Hurwitz for the quadratic twist.
std::int64_t genus_oracle_abelian(const ASTower& tower);

/// (N - Q - 1)^2 <= 4 g^2 Q.
bool weil_bound_holds(std::int64_t N, std::uint64_t q, int m, std::int64_t g);

struct CountEntry {
  int m = 1;
  std::int64_t N = 0;
  std::string method;  // fast, naive, fast+naive, skipped
  bool weil_ok = true;
};

struct VerificationReport {
  bool enumerable = true;
  std::int64_t genus_oracle = -1;
  bool genus_ok = false;
  std::vector<CountEntry> counts;
  bool weil_ok = true;
  std::optional<ZetaData> zeta;
  bool lpoly_ok = true;  // vacuous when depth < 2g
  bool claims_ok = false;
  std::vector<std::string> failures;

  bool all_ok() const { return failures.empty(); }
  std::optional<std::int64_t> n1() const;
  nlohmann::json to_json() const;
};

struct VerifyOptions {
  int depth = 1;
  unsigned threads = 1;
  Budget budget;
};

VerificationReport verify_certificate(const CurveCertificate& cert, const VerifyOptions& opt = {});

}  // namespace genusforge
