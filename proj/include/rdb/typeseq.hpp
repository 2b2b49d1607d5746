#pragma once

#include "rdb/natural.hpp"

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rdb {

/// The type (m_2, m_3, ..., m_n) of an intersection of hypersurfaces:
/// m_d counts the forms of degree d. Stored in canonical form, without
/// trailing zeros, so the empty sequence is the unique zero type and
/// equality is structural.
class TypeSeq {
 public:
  TypeSeq() = default;
  /// Entries indexed from degree 2. Trailing zeros are stripped.
  explicit TypeSeq(std::vector<Natural> entries);
  TypeSeq(std::initializer_list<unsigned long> entries);

  /// Pure quadric type (m2). Zero gives the empty type.
  static TypeSeq quadrics(const Natural& m2);
  /// Type with `count` forms of degree `degree` and nothing else.
  static TypeSeq single(unsigned degree, const Natural& count);
  /// r ones, i.e. one form of each degree 2..r+1.
  static TypeSeq ones(std::size_t r);

  /// Parses "m2,m3,...,mn" (decimal, no spaces); "" is the zero type.
  static TypeSeq parse(std::string_view text);
  std::string to_string() const;

  bool empty() const { return entries_.empty(); }
  /// Largest degree with a nonzero entry, or nullopt for the zero type.
  std::optional<unsigned> top_degree() const;
  /// m_d; zero outside the support (including d < 2).
  const Natural& at(unsigned degree) const;
  std::span<const Natural> entries() const { return entries_; }
  std::size_t length() const { return entries_.size(); }
  bool is_pure_quadric() const { return entries_.size() == 1; }

  friend bool operator==(const TypeSeq&, const TypeSeq&) = default;

 private:
  void normalize();
  std::vector<Natural> entries_;
};

/// |m| = sum of the entries.
Natural norm(const TypeSeq& m);

/// Entrywise order: a <= b iff a_d <= b_d for every d.
bool leq(const TypeSeq& a, const TypeSeq& b);
TypeSeq add(const TypeSeq& a, const TypeSeq& b);
/// a - b; throws DomainError unless b <= a.
TypeSeq sub(const TypeSeq& a, const TypeSeq& b);

/// The j-th polar endomorphism m^j, evaluated in closed form:
/// (m^j)_d = sum_{i >= d} C(j + i - d - 1, i - d) m_i.
TypeSeq endo(const TypeSeq& m, const Natural& j);

/// |m^j| = sum_i C(j + i - 2, i - 2) m_i.
Natural norm_of_endo(const TypeSeq& m, const Natural& j);

/// sum_{r=0}^{j-1} |m^r| = sum_i C(j + i - 2, i - 1) m_i.
Natural prefix_norm_sum(const TypeSeq& m, const Natural& j);

/// prod_d d^{m_d}, the degree of the intersection.
Natural degree_product(const TypeSeq& m);

}  // namespace rdb
