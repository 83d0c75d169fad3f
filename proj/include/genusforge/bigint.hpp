#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "genusforge/errors.hpp"

namespace genusforge {

using BigInt = boost::multiprecision::cpp_int;

inline std::int64_t to_int64(const BigInt& v, const char* what = "value") {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw InvalidArgument(std::string(what) + " does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

inline BigInt big_pow(std::uint64_t base, std::uint64_t exp) {
  BigInt r = 1;
  BigInt b = base;
  while (exp) {
    if (exp & 1) r *= b;
    exp >>= 1;
    if (exp) b *= b;
  }
  return r;
}

}  // namespace genusforge
