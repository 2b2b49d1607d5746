#pragma once

#include "rdb/hamilton.hpp"
#include "rdb/obliterate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rdb {

struct PlateauProbe {
  Natural level;
  Natural f_bound;
  Natural largest_product;
  /// R(largest_product): the least level on which f_bound is still reached.
  Natural floor;
  /// max(f_bound + 2, floor + r).
  Natural candidate;
  EvalStats stats;
};

enum class SharpenStatus { Optimal, BudgetExhausted, LevelTooLow, Error };

std::string_view to_string(SharpenStatus s);

struct SharpenReport {
  unsigned r = 0;
  /// H(r) in the input table.
  Natural table_value;
  std::vector<PlateauProbe> probes;
  /// Minimum candidate; equals table_value when no probe succeeded.
  Natural best_bound;
  std::optional<std::size_t> best_probe;
  SharpenStatus status = SharpenStatus::Optimal;
  std::string message;

  /// "f" if the best candidate is f_bound + 2, "level" if it is floor + r.
  std::string best_source() const;
  bool improved() const { return best_bound < table_value; }
};

struct SharpenOptions {
  /// Per-probe evaluation options; max_steps is the per-probe budget.
  EvalOptions eval{Strategy::Greedy, true, 50'000'000, 0, nullptr};
  /// Total budget over all probes of one walk; 0 means unlimited.
  std::uint64_t max_total_steps = 0;
};

/// Plateau walk over l starting at H(r) - r on the ones vector of length
/// r - 2. Throws LevelTooLow if the first probe cannot start.
SharpenReport sharpen_h(unsigned r, const HamiltonTable& table, const SharpenOptions& opts = {});

struct SweepResult {
  HamiltonTable table;
  std::vector<SharpenReport> reports;
};

/// Runs sharpen_h for r = r_min..r_max, feeding each improvement into the
/// table used for the next r. Per-r failures become report statuses.
SweepResult sharpen_all(unsigned r_min, unsigned r_max, const HamiltonTable& table, const SharpenOptions& opts = {});

}  // namespace rdb
