#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rdb {

/// Arbitrary-precision natural number. Every quantity the engine touches
/// (entries of types, levels, dimensions, Hamilton values) is a Natural.
using Natural = mpz_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (type strings, decimal numbers, table files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation whose arithmetic precondition fails, e.g. subtracting a larger type.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Parses a non-empty string of decimal digits. Signs, spaces and
/// leading '+' are rejected.
Natural parse_natural(std::string_view text);

inline std::string to_decimal(const Natural& n) { return n.get_str(10); }

/// C(top, k) for an arbitrary-precision top and small k, by the running
/// product prod_{t=1..k} (top - k + t) / t. Each partial product is itself
/// a binomial, so every division is exact. Returns 0 when k > top.
Natural binomial(const Natural& top, unsigned long k);

/// Number of bits of n (0 for n == 0).
std::size_t bit_length(const Natural& n);

/// Short scientific rendering "8.39e5"-style with `digits` significant digits.
std::string to_scientific(const Natural& n, int digits = 3);

}  // namespace rdb
