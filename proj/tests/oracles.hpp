#pragma once

// Slow reference implementations used to check the closed forms.

#include "rdb/obliterate.hpp"
#include "rdb/typeseq.hpp"

#include <random>
#include <vector>

namespace rdb::oracle {

// C(n, k) from Pascal's triangle.
inline Natural pascal(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  std::vector<Natural> row{1};
  for (unsigned long i = 1; i <= n; ++i) {
    std::vector<Natural> next(i + 1);
    next[0] = 1;
    next[i] = 1;
    for (unsigned long t = 1; t < i; ++t) next[t] = row[t - 1] + row[t];
    row = std::move(next);
  }
  return row[k];
}

// (m^1)_d = m_d + ... + m_n.
inline TypeSeq endo_once(const TypeSeq& m) {
  std::vector<Natural> out(m.length());
  Natural run = 0;
  for (std::size_t k = m.length(); k-- > 0;) {
    run += m.entries()[k];
    out[k] = run;
  }
  return TypeSeq(std::move(out));
}

inline TypeSeq endo_recursive(const TypeSeq& m, unsigned j) {
  TypeSeq cur = m;
  for (unsigned t = 0; t < j; ++t) cur = endo_once(cur);
  return cur;
}

inline Natural prefix_norm_recursive(const TypeSeq& m, unsigned j) {
  Natural s = 0;
  TypeSeq cur = m;
  for (unsigned t = 0; t < j; ++t) {
    s += norm(cur);
    cur = endo_once(cur);
  }
  return s;
}

// Lines only, one top-degree form at a time:
// f_0(m) <= f_1(m - e_n) <= f_0((m - e_n)^1) + |m - e_n| + 1.
inline Natural coarse_by_single_lines(unsigned j, const TypeSeq& m) {
  TypeSeq cur = m;
  Natural acc = 0;
  if (!cur.empty() && j > 0) {
    acc += prefix_norm_recursive(cur, j) + j;
    cur = endo_recursive(cur, j);
  } else if (cur.empty()) {
    return j;
  }
  while (!cur.empty()) {
    TypeSeq rest = sub(cur, TypeSeq::single(*cur.top_degree(), 1));
    acc += norm(rest) + 1;
    cur = endo_once(rest);
  }
  return acc;
}

inline TypeSeq random_type(std::mt19937_64& rng, unsigned max_len, unsigned max_entry) {
  std::uniform_int_distribution<unsigned> len(0, max_len);
  std::uniform_int_distribution<unsigned> entry(0, max_entry);
  std::vector<Natural> e(len(rng));
  for (auto& x : e) x = entry(rng);
  return TypeSeq(std::move(e));
}

// Every type of length <= max_len with entries <= max_entry.
inline std::vector<TypeSeq> all_types(unsigned max_len, unsigned max_entry) {
  std::vector<TypeSeq> out{TypeSeq()};
  std::vector<unsigned> digits;
  for (unsigned len = 1; len <= max_len; ++len) {
    digits.assign(len, 0);
    while (true) {
      if (digits.back() != 0) {
        std::vector<Natural> e(digits.begin(), digits.end());
        out.emplace_back(std::move(e));
      }
      std::size_t i = 0;
      while (i < len && digits[i] == max_entry) digits[i++] = 0;
      if (i == len) break;
      ++digits[i];
    }
  }
  return out;
}

}  // namespace rdb::oracle
