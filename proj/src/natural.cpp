#include "rdb/natural.hpp"

#include <cctype>

namespace rdb {

Natural parse_natural(std::string_view text) {
  if (text.empty()) throw ParseError("expected a decimal natural, got an empty string");
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("expected a decimal natural, got '" + std::string(text) + "'");
    }
  }
  return Natural(std::string(text), 10);
}

Natural binomial(const Natural& top, unsigned long k) {
  if (top < k) return 0;
  Natural result = 1;
  Natural factor;
  for (unsigned long t = 1; t <= k; ++t) {
    factor = top - k + t;
    result *= factor;
    mpz_divexact_ui(result.get_mpz_t(), result.get_mpz_t(), t);
  }
  return result;
}

std::size_t bit_length(const Natural& n) {
  if (n == 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

std::string to_scientific(const Natural& n, int digits) {
  std::string s = to_decimal(n);
  if (static_cast<int>(s.size()) <= digits) return s;
  // Round half-up on the decimal string.
  std::string head = s.substr(0, static_cast<std::size_t>(digits));
  int exponent = static_cast<int>(s.size()) - 1;
  if (s[static_cast<std::size_t>(digits)] >= '5') {
    int i = digits - 1;
    while (i >= 0) {
      if (head[static_cast<std::size_t>(i)] == '9') {
        head[static_cast<std::size_t>(i)] = '0';
        --i;
      } else {
        ++head[static_cast<std::size_t>(i)];
        break;
      }
    }
    if (i < 0) {
      head.insert(head.begin(), '1');
      head.pop_back();
      ++exponent;
    }
  }
  std::string out(1, head[0]);
  if (digits > 1) out += "." + head.substr(1);
  out += "e" + std::to_string(exponent);
  return out;
}

}  // namespace rdb
