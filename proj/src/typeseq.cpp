#include "rdb/typeseq.hpp"

#include <algorithm>

namespace rdb {
namespace {

const Natural& zero() {
  static const Natural z = 0;
  return z;
}

// coeffs[k] = C(j - 1 + k, k) for k = 0..len-1, built by the running
// product C(j-1+k, k) = C(j-2+k, k-1) * (j-1+k) / k. These are the
// coefficients of m_{d+k} in (m^j)_d.
std::vector<Natural> shift_coefficients(const Natural& j, std::size_t len) {
  std::vector<Natural> coeffs(len);
  if (len == 0) return coeffs;
  coeffs[0] = 1;
  for (std::size_t k = 1; k < len; ++k) {
    coeffs[k] = coeffs[k - 1] * (j - 1 + k);
    mpz_divexact_ui(coeffs[k].get_mpz_t(), coeffs[k].get_mpz_t(), k);
  }
  return coeffs;
}

}  // namespace

TypeSeq::TypeSeq(std::vector<Natural> entries) : entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (e < 0) throw DomainError("type entries must be nonnegative");
  }
  normalize();
}

TypeSeq::TypeSeq(std::initializer_list<unsigned long> entries) {
  entries_.reserve(entries.size());
  for (unsigned long e : entries) entries_.emplace_back(e);
  normalize();
}

TypeSeq TypeSeq::quadrics(const Natural& m2) { return TypeSeq(std::vector<Natural>{m2}); }

TypeSeq TypeSeq::single(unsigned degree, const Natural& count) {
  if (degree < 2) throw DomainError("degrees start at 2");
  std::vector<Natural> e(degree - 1);
  e.back() = count;
  return TypeSeq(std::move(e));
}

TypeSeq TypeSeq::ones(std::size_t r) { return TypeSeq(std::vector<Natural>(r, Natural(1))); }

void TypeSeq::normalize() {
  while (!entries_.empty() && entries_.back() == 0) entries_.pop_back();
}

TypeSeq TypeSeq::parse(std::string_view text) {
  std::vector<Natural> out;
  if (text.empty()) return TypeSeq();
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string_view piece =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(parse_natural(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return TypeSeq(std::move(out));
}

std::string TypeSeq::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ',';
    s += to_decimal(entries_[i]);
  }
  return s;
}

std::optional<unsigned> TypeSeq::top_degree() const {
  if (entries_.empty()) return std::nullopt;
  return static_cast<unsigned>(entries_.size() + 1);
}

const Natural& TypeSeq::at(unsigned degree) const {
  if (degree < 2 || degree - 2 >= entries_.size()) return zero();
  return entries_[degree - 2];
}

Natural norm(const TypeSeq& m) {
  Natural s = 0;
  for (const auto& e : m.entries()) s += e;
  return s;
}

bool leq(const TypeSeq& a, const TypeSeq& b) {
  if (a.length() > b.length()) return false;
  auto ae = a.entries();
  auto be = b.entries();
  for (std::size_t i = 0; i < ae.size(); ++i) {
    if (ae[i] > be[i]) return false;
  }
  return true;
}

TypeSeq add(const TypeSeq& a, const TypeSeq& b) {
  std::vector<Natural> out(std::max(a.length(), b.length()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = a.at(static_cast<unsigned>(i + 2)) + b.at(static_cast<unsigned>(i + 2));
  }
  return TypeSeq(std::move(out));
}

TypeSeq sub(const TypeSeq& a, const TypeSeq& b) {
  if (!leq(b, a)) {
    throw DomainError("cannot subtract (" + b.to_string() + ") from (" + a.to_string() + ")");
  }
  std::vector<Natural> out(a.entries().begin(), a.entries().end());
  auto be = b.entries();
  for (std::size_t i = 0; i < be.size(); ++i) out[i] -= be[i];
  return TypeSeq(std::move(out));
}

TypeSeq endo(const TypeSeq& m, const Natural& j) {
  if (j == 0 || m.empty()) return m;
  auto e = m.entries();
  const std::size_t len = e.size();
  auto coeffs = shift_coefficients(j, len);
  std::vector<Natural> out(len);
  for (std::size_t d = 0; d < len; ++d) {
    Natural acc = 0;
    for (std::size_t i = d; i < len; ++i) {
      if (e[i] != 0) acc += coeffs[i - d] * e[i];
    }
    out[d] = std::move(acc);
  }
  return TypeSeq(std::move(out));
}

Natural norm_of_endo(const TypeSeq& m, const Natural& j) {
  // C(j + k, k) for k = i - 2, running product.
  Natural total = 0;
  Natural c = 1;
  auto e = m.entries();
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (k > 0) {
      c *= j + k;
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), k);
    }
    total += c * e[k];
  }
  return total;
}

Natural prefix_norm_sum(const TypeSeq& m, const Natural& j) {
  // C(j + k, k + 1) for k = i - 2: starts at C(j, 1) = j and
  // C(j+k, k+1) = C(j+k-1, k) * (j+k) / (k+1).
  Natural total = 0;
  Natural c = j;
  auto e = m.entries();
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (k > 0) {
      c *= j + k;
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), k + 1);
    }
    total += c * e[k];
  }
  return total;
}

Natural degree_product(const TypeSeq& m) {
  Natural p = 1;
  Natural pw;
  auto e = m.entries();
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (!e[k].fits_ulong_p()) throw DomainError("degree product exponent too large");
    mpz_pow_ui(pw.get_mpz_t(), Natural(static_cast<unsigned long>(k + 2)).get_mpz_t(), e[k].get_ui());
    p *= pw;
  }
  return p;
}

}  // namespace rdb
