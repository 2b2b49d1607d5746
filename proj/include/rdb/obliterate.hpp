#pragma once

#include "rdb/hamilton.hpp"
#include "rdb/natural.hpp"
#include "rdb/typeseq.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace rdb {

/// A level l >= 1 of the closure K^(l).
class Level {
 public:
  explicit Level(Natural value);
  explicit Level(unsigned long value) : Level(Natural(value)) {}
  const Natural& value() const { return value_; }
  friend bool operator==(const Level&, const Level&) = default;

 private:
  Natural value_;
};

enum class Strategy { Greedy, GreedyContinue, Lines };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view text);

namespace step {

/// f_j(m) <= f_{j_after}(m - extracted), certified by R(product) <= l.
struct Extract {
  TypeSeq extracted;
  Natural product;
  Natural j_after;
};

/// f_j(m) <= f_0(m^j) + offset with offset = sum_{r<j} |m^r| + j.
struct PlanesFromPts {
  Natural j;
  TypeSeq input;
  TypeSeq output;
  Natural offset;
};

/// f_0(m2) <= value with m2 = q b + r_rem and R(2^b) <= l.
struct QuadricFastPath {
  Natural b;
  Natural q;
  Natural r_rem;
  Natural value;
};

/// f_j(0) = j.
struct BaseCase {
  Natural j;
};

/// Every form of top degree removed by lines at once.
struct CoarseLine {
  TypeSeq input;
  TypeSeq output;
  Natural offset;
};

}  // namespace step

using Step = std::variant<step::Extract, step::PlanesFromPts, step::QuadricFastPath, step::BaseCase, step::CoarseLine>;

std::string_view step_tag(const Step& s);

struct DegreeCounts {
  std::uint64_t planes = 0;       // planes-from-points applications
  std::uint64_t extractions = 0;  // extraction applications
  friend bool operator==(const DegreeCounts&, const DegreeCounts&) = default;
};

struct EvalStats {
  /// Keyed by the top degree of the type each application acts on. The
  /// final extraction that empties the type closes the chain and is not
  /// counted here.
  std::map<unsigned, DegreeCounts> per_degree;
  /// Every recorded event, including the closing extraction and the fast path.
  std::uint64_t total_steps = 0;
  /// Sum of per_degree: the number of inequalities to the base case.
  std::uint64_t inequalities = 0;
  /// Inequalities before the first pure-quadric type at j = 0.
  std::optional<std::uint64_t> steps_to_quadric;
  Natural largest_product = 1;
};

struct BoundCertificate {
  Level level{1ul};
  Natural j;
  TypeSeq type;
  Natural value;
  std::vector<Step> steps;
  /// True when steps were dropped past the trace limit; stats stay exact.
  bool elided = false;
  Strategy strategy = Strategy::Greedy;
  bool quadric_fastpath = true;
  std::string table_id;
  EvalStats stats;
};

class MemoCache;

struct EvalOptions {
  Strategy strategy = Strategy::Greedy;
  bool quadric_fastpath = true;
  std::uint64_t max_steps = 50'000'000;
  std::uint64_t trace_limit = 100'000;
  MemoCache* cache = nullptr;
};

class LevelTooLow : public Error {
 public:
  LevelTooLow(const Natural& level, unsigned degree, const Natural& rd_value);
  unsigned degree() const { return degree_; }

 private:
  unsigned degree_;
};

class StepBudgetExceeded : public Error {
 public:
  StepBudgetExceeded(std::uint64_t budget, EvalStats partial);
  const EvalStats& partial() const { return partial_; }

 private:
  EvalStats partial_;
};

class ReplayError : public Error {
 public:
  using Error::Error;
};

struct Extraction {
  Natural j_after;
  TypeSeq remaining;
  Natural product;
  TypeSeq extracted;
};

/// One greedy extraction from the top degree down. Strategy::Greedy stops
/// at the first failed check; GreedyContinue moves on to lower degrees.
/// Throws LevelTooLow if nothing can be extracted.
Extraction extract(const Level& level, const RdBoundFn& rdfn, const Natural& j, const TypeSeq& m,
                   Strategy strategy = Strategy::Greedy);

struct PlanesResult {
  TypeSeq type;
  Natural offset;
};

/// (m^j, prefix_norm_sum(m, j) + j). Requires j >= 1.
PlanesResult planes_from_pts(const Natural& j, const TypeSeq& m);

struct QuadricPlan {
  Natural b;
  Natural q;
  Natural r_rem;
  Natural value;
};

/// b = min(m2, max{b : R(2^b) <= l}); value = C(q,2) b^2 + q b (r+1) + r.
QuadricPlan quadric_plan(const Level& level, const RdBoundFn& rdfn, const Natural& m2);
Natural quadric_bound(const Level& level, const RdBoundFn& rdfn, const Natural& m2);

BoundCertificate bound_f(const Level& level, const RdBoundFn& rdfn, const Natural& j, const TypeSeq& m,
                         const EvalOptions& opts = {});

/// Eliminates all top-degree forms by lines: returns the reduced type
/// (top degree n - 1) and the additive term.
PlanesResult line_reduction(const TypeSeq& m);

BoundCertificate coarse_certificate(const Level& level, const RdBoundFn& rdfn, const Natural& j,
                                    const TypeSeq& m);
Natural coarse_bound_f(const Level& level, const RdBoundFn& rdfn, const Natural& j, const TypeSeq& m);

/// Re-executes the step list with type arithmetic and returns the value.
/// With rdfn, every extraction product is re-checked against the level.
/// Throws ReplayError on any mismatch or if the certificate is elided.
Natural replay(const BoundCertificate& cert, const RdBoundFn* rdfn = nullptr);

/// One node f^l_j(m) + offset of the inequality chain.
struct ChainNode {
  Natural j;
  TypeSeq type;
  Natural offset;
};

std::vector<ChainNode> chain_nodes(const BoundCertificate& cert);
/// "f^42_0(1,1,1,1,1) <= f^42_2(1,1,1) <= ... = 73".
std::string render_chain(const BoundCertificate& cert);

/// Shared memo of certificates keyed by table, options, level, j and type.
/// Lookups take a shared lock; inserts are serialized.
class MemoCache {
 public:
  std::shared_ptr<const BoundCertificate> find(const std::string& key) const;
  void insert(const std::string& key, std::shared_ptr<const BoundCertificate> cert);
  std::size_t size() const;

  static std::string key(const RdBoundFn& rdfn, const EvalOptions& opts, const Level& level, const Natural& j,
                         const TypeSeq& m);

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, std::shared_ptr<const BoundCertificate>> entries_;
};

}  // namespace rdb
