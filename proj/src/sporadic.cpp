#include "rdb/sporadic.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace rdb {
namespace {

using nlohmann::json;

struct Row {
  const char* name;
  const char* mu_rd_bound;
  unsigned long proj_dim;
  std::vector<unsigned> prior;
  std::vector<unsigned> added;
};

const std::vector<Row>& rows() {
  static const std::vector<Row> r = {
      {"J2", "93", 5, {}, {}},
      {"M11", "6", 9, {2, 3}, {}},
      {"M12", "7", 10, {2, 3}, {}},
      {"M22", "16", 9, {4}, {}},
      {"Suz", "1782", 11, {12}, {}},
      {"J3", "78", 17, {6}, {}},
      {"M23", "17", 21, {2, 3, 4}, {}},
      {"M24", "18", 22, {2, 3, 4, 5}, {}},
      {"HS", "93", 21, {2, 4, 5}, {}},
      {"McL", "267", 21, {2, 5}, {6}},
      {"Co3", "268", 22, {2, 6}, {}},
      {"Co2", "2291", 22, {2, 8}, {}},
      {"Co1", "98269", 23, {2, 12}, {}},
      {"Ru", "4051", 27, {4}, {8}},
      {"He", "2049", 50, {3, 4}, {5}},
      {"J1", "258", 55, {2, 3, 4, 4}, {}},
      {"Fi22", "3501", 77, {2, 6, 8}, {}},
      {"HN", "1139988", 132, {2, 6, 7}, {}},
      {"Th", "143126986", 247, {2, 8, 8}, {}},
      {"O'N", "122749", 341, {6, 6, 6}, {}},
      {"Fi23", "31661", 781, {2, 3, 4, 5, 5}, {6}},
      {"Fi24'", "306925", 782, {3, 6, 6}, {9}},
      {"J4", "173067375", 1332, {4, 6, 6, 7}, {}},
      {"Ly", "8835143", 2479, {6, 6, 6, 6}, {}},
      {"B", "13571954984", 4370, {2, 4, 6, 8, 8}, {8}},
      {"M", "97239461142009185977", 196882, {2, 3, 4, 5, 6, 6, 6, 7}, {7, 7}},
  };
  return r;
}

Natural json_natural(const json& v, const char* field) {
  if (v.is_string()) return parse_natural(v.get<std::string>());
  if (v.is_number_unsigned()) return Natural(v.get<unsigned long>());
  if (v.is_number_integer() && v.get<long long>() >= 0) return Natural(static_cast<unsigned long>(v.get<long long>()));
  throw ParseError(std::string("field '") + field + "' must be a natural (number or decimal string)");
}

std::vector<unsigned> json_degrees(const json& v, const char* field) {
  if (!v.is_array()) throw ParseError(std::string("field '") + field + "' must be an array");
  std::vector<unsigned> out;
  for (const auto& d : v) {
    Natural n = json_natural(d, field);
    if (!n.fits_uint_p() || n < 2) throw ParseError(std::string("field '") + field + "' has a degree below 2");
    out.push_back(static_cast<unsigned>(n.get_ui()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string join_degrees(const std::vector<unsigned>& d) {
  if (d.empty()) return "None";
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(d[i]);
  }
  return s;
}

// degrees minus new_degrees, as multisets.
std::vector<unsigned> prior_degrees(const GroupSpec& g) {
  std::vector<unsigned> prior = g.degrees;
  for (unsigned d : g.new_degrees) {
    auto it = std::find(prior.begin(), prior.end(), d);
    if (it != prior.end()) prior.erase(it);
  }
  return prior;
}

}  // namespace

std::string_view to_string(Freeness f) { return f == Freeness::Checked ? "checked" : "skipped_no_mu"; }

std::string_view to_string(RowClass c) {
  switch (c) {
    case RowClass::Blue: return "blue";
    case RowClass::Green: return "green";
    case RowClass::Yellow: return "yellow";
  }
  return "unknown";
}

TypeSeq degrees_to_type(const std::vector<unsigned>& degrees) {
  std::vector<Natural> e;
  for (unsigned d : degrees) {
    if (d < 2) throw DomainError("invariant degrees must be at least 2");
    if (e.size() < d - 1) e.resize(d - 1);
    e[d - 2] += 1;
  }
  return TypeSeq(std::move(e));
}

RowClass classify(const GroupSpec& spec) {
  const Natural claimed = spec.proj_dim - static_cast<unsigned long>(spec.degrees.size());
  if (spec.mu_rd_bound < claimed) return RowClass::Blue;
  if (!spec.new_degrees.empty()) return RowClass::Green;
  return RowClass::Yellow;
}

GroupVerdict verify_group(const GroupSpec& spec, const HamiltonTable& table, const EvalOptions& opts) {
  if (spec.proj_dim <= spec.degrees.size()) throw DomainError(spec.name + ": dim P(V) must exceed the number of degrees");
  RdBoundFn rdfn(table);
  GroupVerdict v;
  v.name = spec.name;
  v.claimed_level = spec.proj_dim - static_cast<unsigned long>(spec.degrees.size());
  v.f_target = spec.proj_dim;
  v.row_class = classify(spec);
  auto cert = std::make_shared<const BoundCertificate>(
      bound_f(Level(v.claimed_level), rdfn, 0, degrees_to_type(spec.degrees), opts));
  v.f_bound = cert->value;
  v.certificate = std::move(cert);
  bool free_ok = true;
  if (spec.mu) {
    Natural prod = 1;
    for (unsigned d : spec.degrees) prod *= d;
    v.freeness = Freeness::Checked;
    v.freeness_holds = prod < *spec.mu;
    free_ok = *v.freeness_holds;
  }
  v.ok = v.f_bound <= v.f_target && free_ok;
  return v;
}

std::vector<GroupVerdict> verify_all(const std::vector<GroupSpec>& groups, const HamiltonTable& table,
                                     const EvalOptions& opts) {
  std::vector<GroupVerdict> out;
  out.reserve(groups.size());
  for (const auto& g : groups) {
    try {
      out.push_back(verify_group(g, table, opts));
    } catch (const Error& e) {
      GroupVerdict v;
      v.name = g.name;
      v.claimed_level = g.proj_dim > g.degrees.size() ? Natural(g.proj_dim - static_cast<unsigned long>(g.degrees.size())) : Natural(0);
      v.f_target = g.proj_dim;
      v.row_class = classify(g);
      v.error = e.what();
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<GroupSpec> builtin_groups() {
  std::vector<GroupSpec> out;
  for (const Row& row : rows()) {
    GroupSpec g;
    g.name = row.name;
    g.proj_dim = row.proj_dim;
    g.degrees = row.prior;
    g.degrees.insert(g.degrees.end(), row.added.begin(), row.added.end());
    std::sort(g.degrees.begin(), g.degrees.end());
    g.new_degrees = row.added;
    g.mu_rd_bound = Natural(row.mu_rd_bound);
    out.push_back(std::move(g));
  }
  return out;
}

const GroupSpec* find_group(const std::vector<GroupSpec>& groups, std::string_view name) {
  for (const auto& g : groups) {
    if (g.name == name) return &g;
  }
  return nullptr;
}

std::vector<GroupSpec> parse_groups_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("group dataset: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("group dataset must be a JSON array");
  std::vector<GroupSpec> out;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("name") || !item.contains("proj_dim") || !item.contains("degrees")) {
      throw ParseError("each group needs name, proj_dim and degrees");
    }
    GroupSpec g;
    g.name = item.at("name").get<std::string>();
    g.proj_dim = json_natural(item.at("proj_dim"), "proj_dim");
    g.degrees = json_degrees(item.at("degrees"), "degrees");
    if (item.contains("new_degrees")) g.new_degrees = json_degrees(item.at("new_degrees"), "new_degrees");
    if (item.contains("mu") && !item.at("mu").is_null()) g.mu = json_natural(item.at("mu"), "mu");
    g.mu_rd_bound = item.contains("mu_rd_bound") ? json_natural(item.at("mu_rd_bound"), "mu_rd_bound") : g.proj_dim;
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<GroupSpec> load_groups_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open group dataset " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_groups_json(buf.str());
}

std::string groups_to_json(const std::vector<GroupSpec>& groups) {
  json arr = json::array();
  for (const auto& g : groups) {
    json item;
    item["name"] = g.name;
    item["proj_dim"] = to_decimal(g.proj_dim);
    item["degrees"] = g.degrees;
    item["new_degrees"] = g.new_degrees;
    if (g.mu) item["mu"] = to_decimal(*g.mu);
    item["mu_rd_bound"] = to_decimal(g.mu_rd_bound);
    arr.push_back(std::move(item));
  }
  return arr.dump(2);
}

void write_groups_markdown(std::ostream& out, const std::vector<GroupSpec>& groups,
                           const std::vector<GroupVerdict>& verdicts) {
  out << "| G | Bound by RD(mu(G)) | dim P(V) | Invariants | New invariants | Bound by invariants | f bound | ok | "
         "freeness | class |\n";
  out << "|---|---|---|---|---|---|---|---|---|---|\n";
  for (std::size_t i = 0; i < groups.size() && i < verdicts.size(); ++i) {
    const auto& g = groups[i];
    const auto& v = verdicts[i];
    out << "| " << g.name << " | " << to_decimal(g.mu_rd_bound) << " | " << to_decimal(g.proj_dim) << " | "
        << join_degrees(prior_degrees(g)) << " | " << join_degrees(g.new_degrees) << " | "
        << to_decimal(v.claimed_level) << " | " << (v.error.empty() ? to_decimal(v.f_bound) : "error") << " | "
        << (v.ok ? "yes" : "no") << " | " << to_string(v.freeness) << " | " << to_string(v.row_class) << " |\n";
  }
}

void write_groups_csv(std::ostream& out, const std::vector<GroupSpec>& groups,
                      const std::vector<GroupVerdict>& verdicts) {
  out << "name,mu_rd_bound,proj_dim,invariants,new_invariants,claimed_level,f_bound,ok,freeness,class\n";
  for (std::size_t i = 0; i < groups.size() && i < verdicts.size(); ++i) {
    const auto& g = groups[i];
    const auto& v = verdicts[i];
    auto quoted = [](const std::vector<unsigned>& d) { return "\"" + join_degrees(d) + "\""; };
    out << g.name << ',' << to_decimal(g.mu_rd_bound) << ',' << to_decimal(g.proj_dim) << ','
        << quoted(prior_degrees(g)) << ',' << quoted(g.new_degrees) << ',' << to_decimal(v.claimed_level) << ','
        << (v.error.empty() ? to_decimal(v.f_bound) : "error") << ',' << (v.ok ? "true" : "false") << ','
        << to_string(v.freeness) << ',' << to_string(v.row_class) << '\n';
  }
}

}  // namespace rdb
