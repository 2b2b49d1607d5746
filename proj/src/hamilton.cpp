#include "rdb/hamilton.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace rdb {
namespace {

Natural factorial(unsigned long n) {
  Natural f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

// (r-1)!/d! + 1
Natural factorial_bound(unsigned r, unsigned d) { return factorial(r - 1) / factorial(d) + 1; }

std::optional<unsigned> fill_denominator(unsigned r) {
  if (r >= 8 && r <= 11) return 4;
  if (r >= 12 && r <= 19) return 5;
  if (r >= 21 && r <= 33) return 6;
  if (r >= 35 && r <= 43) return 7;
  if (r >= 45 && r <= 55) return 8;
  return std::nullopt;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::BuiltinPrior: return "builtin-prior";
    case Provenance::BuiltinNew: return "builtin-new";
    case Provenance::FactorialFill: return "factorial-fill";
    case Provenance::Computed: return "computed";
    case Provenance::User: return "user";
  }
  return "unknown";
}

HamiltonTable::HamiltonTable(Map entries, std::string label)
    : entries_(std::move(entries)), label_(std::move(label)) {}

std::optional<Natural> HamiltonTable::get(unsigned r) const {
  auto it = entries_.find(r);
  if (it == entries_.end()) return std::nullopt;
  return it->second.value;
}

std::optional<Provenance> HamiltonTable::provenance(unsigned r) const {
  auto it = entries_.find(r);
  if (it == entries_.end()) return std::nullopt;
  return it->second.provenance;
}

unsigned HamiltonTable::r_max() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }

std::string HamiltonTable::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& [r, e] : entries_) {
    mix(std::to_string(r));
    mix("=");
    mix(to_decimal(e.value));
    mix(";");
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xF];
    h >>= 4;
  }
  return out;
}

bool operator==(const HamiltonTable& a, const HamiltonTable& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  return std::equal(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                    [](const auto& x, const auto& y) { return x.first == y.first && x.second.value == y.second.value; });
}

HamiltonTable builtin_table(BuiltinKind kind) {
  const bool prior = kind == BuiltinKind::Prior;
  const Provenance listed = prior ? Provenance::BuiltinPrior : Provenance::BuiltinNew;
  HamiltonTable::Map m;
  auto put = [&m](unsigned r, Natural v, Provenance p) { m[r] = HamiltonEntry{std::move(v), p}; };

  put(1, 2, listed);
  put(2, 3, listed);
  put(3, 4, listed);
  put(4, 5, listed);
  put(5, 9, listed);
  put(6, 21, listed);
  put(7, 75, listed);
  put(20, Natural("227214539745187"), listed);
  put(34, Natural("2475934708812781843231486891102123"), listed);
  put(44, Natural("8559276927975810009082900078329761155025671771554"), listed);
  for (unsigned r = 8; r <= 55; ++r) {
    if (auto d = fill_denominator(r)) put(r, factorial_bound(r, *d), Provenance::FactorialFill);
  }

  if (prior) {
    put(7, 109, listed);
    put(8, 325, listed);
    put(11, factorial_bound(11, 4), listed);
    put(12, factorial_bound(12, 4), listed);
    put(13, 5250198, listed);
    put(20, factorial_bound(20, 5), listed);
    put(21, factorial_bound(21, 5), listed);
    put(22, Natural("381918437071508900"), listed);
  }
  return HamiltonTable(std::move(m), prior ? "builtin-prior" : "builtin-new");
}

std::vector<TableViolation> validate(const HamiltonTable& table) {
  std::vector<TableViolation> out;
  const auto& e = table.entries();
  if (e.empty()) {
    out.push_back({TableViolation::Kind::Empty, 0, "table is empty"});
    return out;
  }
  unsigned expected = 1;
  const Natural* prev = nullptr;
  unsigned prev_r = 0;
  for (const auto& [r, entry] : e) {
    if (r == 0) {
      out.push_back({TableViolation::Kind::Gap, 0, "r = 0 is not a valid key"});
      continue;
    }
    for (unsigned missing = expected; missing < r; ++missing) {
      out.push_back({TableViolation::Kind::Gap, missing, "missing H(" + std::to_string(missing) + ")"});
    }
    expected = r + 1;
    if (prev && !(*prev < entry.value)) {
      out.push_back({TableViolation::Kind::NotIncreasing, r,
                     "H(" + std::to_string(prev_r) + ") = " + to_decimal(*prev) + " is not below H(" +
                         std::to_string(r) + ") = " + to_decimal(entry.value)});
    }
    if (r <= 3 && entry.value != r + 1) {
      out.push_back({TableViolation::Kind::ClassicalMismatch, r,
                     "H(" + std::to_string(r) + ") must be " + std::to_string(r + 1)});
    }
    prev = &entry.value;
    prev_r = r;
  }
  return out;
}

HamiltonTable update(const HamiltonTable& table, unsigned r, const Natural& bound) {
  if (r == 0) throw MonotonicityError(r, 0, "r must be at least 1");
  auto entries = table.entries();
  auto it = entries.find(r);
  if (it == entries.end()) {
    if (r != table.r_max() + 1) {
      throw MonotonicityError(r, table.r_max(),
                              "H(" + std::to_string(r) + ") would leave a gap after r_max = " +
                                  std::to_string(table.r_max()));
    }
  } else if (bound >= it->second.value) {
    return table;
  }
  if (r > 1) {
    auto below = entries.find(r - 1);
    if (below != entries.end() && !(below->second.value < bound)) {
      throw MonotonicityError(r, r - 1,
                              "H(" + std::to_string(r) + ") = " + to_decimal(bound) + " would not exceed H(" +
                                  std::to_string(r - 1) + ") = " + to_decimal(below->second.value));
    }
  }
  entries[r] = HamiltonEntry{bound, Provenance::Computed};
  return HamiltonTable(std::move(entries), table.label());
}

HamiltonTable read_table(std::istream& in, std::string label) {
  HamiltonTable::Map m;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    std::istringstream fields(t);
    std::string rs, hs, extra;
    fields >> rs >> hs;
    if (hs.empty() || (fields >> extra)) {
      throw ParseError("table line " + std::to_string(lineno) + ": expected 'r<TAB>H(r)'");
    }
    Natural r = parse_natural(rs);
    if (!r.fits_uint_p() || r == 0) throw ParseError("table line " + std::to_string(lineno) + ": bad r");
    unsigned key = static_cast<unsigned>(r.get_ui());
    if (m.count(key)) throw ParseError("table line " + std::to_string(lineno) + ": duplicate r");
    m[key] = HamiltonEntry{parse_natural(hs), Provenance::User};
  }
  return HamiltonTable(std::move(m), std::move(label));
}

HamiltonTable load_table_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open table file " + path.string());
  return read_table(in, path.string());
}

void write_table(std::ostream& out, const HamiltonTable& table) {
  out << "# Hamilton table " << table.label() << " fingerprint " << table.fingerprint() << "\n";
  for (const auto& [r, e] : table.entries()) {
    out << r << '\t' << to_decimal(e.value) << "\t# " << to_string(e.provenance) << "\n";
  }
}

HamiltonTable resolve_table(std::string_view source) {
  if (source == "builtin-prior") return builtin_table(BuiltinKind::Prior);
  if (source == "builtin-new") return builtin_table(BuiltinKind::New);
  return load_table_file(std::filesystem::path(std::string(source)));
}

InvalidTable::InvalidTable(std::vector<TableViolation> violations)
    : Error([&] {
        std::string msg = "invalid Hamilton table:";
        for (const auto& v : violations) msg += " " + v.message + ";";
        return msg;
      }()),
      violations_(std::move(violations)) {}

RdBoundFn::RdBoundFn(HamiltonTable table) : table_(std::move(table)) {
  if (auto v = validate(table_); !v.empty()) throw InvalidTable(std::move(v));
  values_.reserve(table_.entries().size());
  for (const auto& [r, e] : table_.entries()) values_.push_back(e.value);
}

unsigned RdBoundFn::eliminated(const Natural& n) const {
  // Number of r with H(r) <= n; valid because keys are 1..r_max and values increase.
  auto it = std::upper_bound(values_.begin(), values_.end(), n);
  return static_cast<unsigned>(it - values_.begin());
}

Natural RdBoundFn::rd(const Natural& n) const {
  if (n < 1) throw DomainError("R(n) is defined for n >= 1");
  return n - eliminated(n);
}

Natural RdBoundFn::max_degree_at(const Natural& level) const {
  // R(n) = n - r on the segment H(r) <= n < H(r+1). The admissible n form
  // a prefix, so walk segments until one starts beyond level + r.
  Natural best = 0;
  const std::size_t rmax = values_.size();
  for (std::size_t r = 0; r <= rmax; ++r) {
    const Natural lo = r == 0 ? Natural(1) : values_[r - 1];
    const Natural cap = level + static_cast<unsigned long>(r);
    if (lo > cap) break;
    Natural top = cap;
    if (r < rmax && values_[r] - 1 < top) top = values_[r] - 1;
    if (top > best) best = top;
  }
  return best;
}

}  // namespace rdb
