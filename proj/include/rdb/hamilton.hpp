#pragma once

#include "rdb/natural.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rdb {

enum class Provenance { BuiltinPrior, BuiltinNew, FactorialFill, Computed, User };

std::string_view to_string(Provenance p);

struct HamiltonEntry {
  Natural value;
  Provenance provenance = Provenance::User;
};

/// A Hamilton function r -> H(r): the least degree from which r
/// coefficients can be eliminated. Tables are immutable values; update()
/// returns a new table.
class HamiltonTable {
 public:
  using Map = std::map<unsigned, HamiltonEntry>;

  HamiltonTable() = default;
  HamiltonTable(Map entries, std::string label);

  const Map& entries() const { return entries_; }
  std::optional<Natural> get(unsigned r) const;
  std::optional<Provenance> provenance(unsigned r) const;
  /// Largest key, or 0 for an empty table.
  unsigned r_max() const;
  bool empty() const { return entries_.empty(); }

  /// Free-form origin label ("builtin-prior", a file path, ...).
  const std::string& label() const { return label_; }
  /// 16 hex digits of FNV-1a over the (r, H(r)) pairs; labels and
  /// provenance do not participate.
  std::string fingerprint() const;

  friend bool operator==(const HamiltonTable& a, const HamiltonTable& b);

 private:
  Map entries_;
  std::string label_;
};

enum class BuiltinKind { Prior, New };

/// Builtin tables. `New` holds the improved bounds;
/// `Prior` swaps in the previously best values for r = 7, 8, 11, 12, 13,
/// 20, 21, 22.
HamiltonTable builtin_table(BuiltinKind kind);

struct TableViolation {
  enum class Kind { Empty, Gap, NotIncreasing, ClassicalMismatch };
  Kind kind;
  unsigned r;
  std::string message;
};

/// Structural checks only: keys contiguous from 1, values strictly
/// increasing, and H(1..3) = 2, 3, 4 where present.
std::vector<TableViolation> validate(const HamiltonTable& table);

class MonotonicityError : public Error {
 public:
  MonotonicityError(unsigned r, unsigned neighbor, const std::string& what)
      : Error(what), r_(r), neighbor_(neighbor) {}
  unsigned r() const { return r_; }
  unsigned neighbor() const { return neighbor_; }

 private:
  unsigned r_;
  unsigned neighbor_;
};

/// Lowers H(r) to min(H(r), bound) (or appends r = r_max + 1). The new
/// entry is tagged Computed when it changed. Throws MonotonicityError if
/// the result would not be strictly increasing or would leave a gap.
HamiltonTable update(const HamiltonTable& table, unsigned r, const Natural& bound);

/// Table file: one "r<TAB>H(r)" record per line (any whitespace accepted),
/// '#' starts a comment.
HamiltonTable read_table(std::istream& in, std::string label = "user");
HamiltonTable load_table_file(const std::filesystem::path& path);
void write_table(std::ostream& out, const HamiltonTable& table);

/// Resolves "builtin-prior", "builtin-new" or a file path.
HamiltonTable resolve_table(std::string_view source);

class InvalidTable : public Error {
 public:
  explicit InvalidTable(std::vector<TableViolation> violations);
  const std::vector<TableViolation>& violations() const { return violations_; }

 private:
  std::vector<TableViolation> violations_;
};

/// The bound on resolvent degree R(n) = n - r for H(r) <= n < H(r+1),
/// derived from a validated Hamilton table.
class RdBoundFn {
 public:
  /// Throws InvalidTable when validate() reports anything.
  explicit RdBoundFn(HamiltonTable table);

  const HamiltonTable& table() const { return table_; }

  /// R(n) for n >= 1. Binary search over the table.
  Natural rd(const Natural& n) const;
  /// The r with H(r) <= n < H(r+1) (0 below H(1), r_max at or above H(r_max)).
  unsigned eliminated(const Natural& n) const;

  /// Largest n with R(n) <= level. R is weakly increasing, so
  /// R(n) <= level iff n <= max_degree_at(level). Zero if no n qualifies.
  Natural max_degree_at(const Natural& level) const;

 private:
  HamiltonTable table_;
  std::vector<Natural> values_;  // values_[r-1] = H(r)
};

}  // namespace rdb
