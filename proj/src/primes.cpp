#include "genusforge/primes.hpp"

#include <numeric>

#include "genusforge/errors.hpp"

namespace genusforge {

namespace {

constexpr std::uint32_t kSieveBound = 1'000'000;

std::vector<std::uint32_t> sieve(std::uint32_t bound) {
  std::vector<bool> composite(bound + 1, false);
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = std::uint64_t{i} * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace

std::span<const std::uint32_t> prime_table() {
  static const std::vector<std::uint32_t> table = sieve(kSieveBound);
  return table;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2u, 3u, 5u, 7u}) {
    if (n % d == 0) return n == d;
  }
  for (std::uint64_t d = 11; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  std::uint64_t c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::pair<std::uint64_t, int> prime_power(std::uint64_t n) {
  if (n < 2) return {0, 0};
  auto f = factorize(n);
  if (f.size() != 1) return {0, 0};
  return f.front();
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = mod_floor(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t quot = old_r / r;
    std::int64_t t = old_r - quot * r;
    old_r = r;
    r = t;
    t = old_s - quot * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw InvalidArgument("mod_inverse: argument not invertible");
  return mod_floor(old_s, m);
}

std::uint64_t pow_u64(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

}  // namespace genusforge
