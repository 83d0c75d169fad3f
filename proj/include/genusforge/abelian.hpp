#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "genusforge/certificate.hpp"
#include "genusforge/tower.hpp"

namespace genusforge {

struct CongruenceSolution {
  std::vector<std::int64_t> i_seq;
  std::vector<std::int64_t> j_seq;
};

/// Increasing (i, j), coprime to p, with i_k + j_k < (p+3)(k+1) and
/// sum (i_k + j_k) p^k = d (mod p^n).
CongruenceSolution solve_congruence(Residue p, int n, std::int64_t d);

/// Twisted two-point tower for g > p^2 + 3p, else y^2 = h with h irreducible
/// of degree 2g + 1.
CurveCertificate construct_odd(std::uint64_t q, std::int64_t g);

/// One-point tower over F_2 with 2^n rational points, base-changed to F_q.
CurveCertificate construct_even(std::uint64_t q, std::int64_t g);

CurveCertificate construct_abelian(std::uint64_t q, std::int64_t g);

struct Equation {
  enum class Kind { ArtinSchreier, Quadratic };
  Kind kind = Kind::ArtinSchreier;
  int layer = 0;             // Artin-Schreier: y_layer
  std::int64_t p = 2;        // Artin-Schreier: y^p - y
  std::int64_t x_pole = 0;   // exponent of x^{-1}
  std::int64_t x1_pole = 0;  // exponent of (x-1)^{-1}
  std::vector<std::uint64_t> coeffs;  // Quadratic: right side, constant first
  std::string text;

  friend bool operator==(const Equation&, const Equation&) = default;
};

struct EquationSet {
  std::uint64_t field = 2;  // the equations have coefficients in F_field
  std::vector<Equation> equations;

  friend bool operator==(const EquationSet&, const EquationSet&) = default;
};

EquationSet emit_equations(const CurveCertificate& cert);
nlohmann::json to_json(const EquationSet& eqs);
EquationSet equations_from_json(const nlohmann::json& j);

}  // namespace genusforge
