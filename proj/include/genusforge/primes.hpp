#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace genusforge {

bool is_prime(std::uint64_t n);

// Primes up to 10^6, sieved once and shared read-only.
std::span<const std::uint32_t> prime_table();

// Least prime strictly greater than n.
std::uint64_t next_prime(std::uint64_t n);

// Trial-division factorization into (prime, exponent) pairs, ascending.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

// If n = p^k for a prime p and k >= 1, returns (p, k); otherwise (0, 0).
std::pair<std::uint64_t, int> prime_power(std::uint64_t n);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

// Inverse of a modulo m (gcd(a, m) = 1 required), via extended Euclid.
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

// Representative of r modulo m in [0, m).
inline std::int64_t mod_floor(std::int64_t r, std::int64_t m) {
  std::int64_t v = r % m;
  return v < 0 ? v + m : v;
}

std::uint64_t pow_u64(std::uint64_t base, unsigned exp);

}  // namespace genusforge
