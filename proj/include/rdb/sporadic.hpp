#pragma once

#include "rdb/hamilton.hpp"
#include "rdb/obliterate.hpp"

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rdb {

struct GroupSpec {
  std::string name;
  /// N = dim P(V).
  Natural proj_dim;
  /// All invariant degrees used, sorted ascending.
  std::vector<unsigned> degrees;
  /// The part of `degrees` that is newly afforded (used for the colour class).
  std::vector<unsigned> new_degrees;
  /// Minimal permutation degree; not part of the builtin data.
  std::optional<Natural> mu;
  /// Bound on RD(G) through RD(mu(G)).
  Natural mu_rd_bound;
};

enum class Freeness { Checked, SkippedNoMu };
enum class RowClass { Blue, Green, Yellow };

std::string_view to_string(Freeness f);
std::string_view to_string(RowClass c);

struct GroupVerdict {
  std::string name;
  Natural claimed_level;
  Natural f_bound;
  Natural f_target;
  bool ok = false;
  Freeness freeness = Freeness::SkippedNoMu;
  /// Set when mu is present: whether d_1 ... d_r < mu.
  std::optional<bool> freeness_holds;
  RowClass row_class = RowClass::Yellow;
  std::shared_ptr<const BoundCertificate> certificate;
  /// Non-empty when the evaluation failed (for example LevelTooLow).
  std::string error;
};

/// m_i = multiplicity of i. Throws DomainError on degrees below 2.
TypeSeq degrees_to_type(const std::vector<unsigned>& degrees);

/// Blue if RD(mu) gives a strictly better bound than N - r, else green if
/// there are new invariants, else yellow.
RowClass classify(const GroupSpec& spec);

/// Checks f_0^{N-r}(m) <= N and, when mu is known, d_1 ... d_r < mu.
/// Throws LevelTooLow if R(top degree) > N - r.
GroupVerdict verify_group(const GroupSpec& spec, const HamiltonTable& table, const EvalOptions& opts = {});

/// Like verify_group, but records LevelTooLow and budget errors in the verdict.
std::vector<GroupVerdict> verify_all(const std::vector<GroupSpec>& groups, const HamiltonTable& table,
                                     const EvalOptions& opts = {});

std::vector<GroupSpec> builtin_groups();
const GroupSpec* find_group(const std::vector<GroupSpec>& groups, std::string_view name);

/// JSON array of {name, proj_dim, degrees, new_degrees?, mu?, mu_rd_bound}.
std::vector<GroupSpec> parse_groups_json(std::string_view text);
std::vector<GroupSpec> load_groups_file(const std::filesystem::path& path);
std::string groups_to_json(const std::vector<GroupSpec>& groups);

void write_groups_markdown(std::ostream& out, const std::vector<GroupSpec>& groups,
                           const std::vector<GroupVerdict>& verdicts);
void write_groups_csv(std::ostream& out, const std::vector<GroupSpec>& groups,
                      const std::vector<GroupVerdict>& verdicts);

}  // namespace rdb
