#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "genusforge/certificate.hpp"
#include "genusforge/verify.hpp"

namespace genusforge {

/// family: abelian, toric, tame or auto. `auto` builds the toric and the
/// abelian certificate where they exist and keeps the one with the larger
/// verified N_1 (abelian on ties).
CurveCertificate construct_certificate(std::uint64_t q, std::int64_t g, const std::string& family,
                                       const VerifyOptions& opt = {});

struct TableCandidate {
  std::string family;  // abelian, hyperelliptic, toric, tame, tame-record
  std::int64_t points_lb = 0;
  std::optional<std::int64_t> n1_verified;
  std::string error;

  std::int64_t score() const { return n1_verified ? *n1_verified : points_lb; }
};

struct TableRow {
  std::int64_t g = 0;
  std::string family;  // best candidate, "none" when every constructor failed
  std::int64_t points_lb = 0;
  std::optional<std::int64_t> n1_verified;
  std::vector<TableCandidate> candidates;
};

/// families: any of abelian, toric, tame, tame-records, all.
std::vector<TableRow> lower_bound_table(std::uint64_t q, std::int64_t g_lo, std::int64_t g_hi,
                                        const std::vector<std::string>& families,
                                        const VerifyOptions& opt = {});

/// Columns g, family, points_lb, N1_verified, ratio_g_over_logg,
/// ratio_g_cuberoot; ratios are points_lb / (g / ln g) and points_lb / g^(1/3).
std::string table_csv(const std::vector<TableRow>& rows);

}  // namespace genusforge
