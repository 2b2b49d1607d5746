#include "rdb/hamilton.hpp"
#include "rdb/obliterate.hpp"
#include "rdb/report.hpp"
#include "rdb/sharpen.hpp"
#include "rdb/sporadic.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

namespace {

using namespace rdb;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kLevelTooLow = 2;
constexpr int kBudget = 3;
constexpr int kUsage = 64;

struct Config {
  std::string table_source;
  std::string strategy = "paper";
  bool no_fastpath = false;
  std::uint64_t max_steps = 50'000'000;
  std::string trace = "stats";
  std::string cache_path;
  std::string output = "text";
};

HamiltonTable load_table(const Config& cfg, const char* fallback) {
  if (const char* env = std::getenv("RDB_TABLE"); env && *env) return resolve_table(env);
  return resolve_table(cfg.table_source.empty() ? fallback : cfg.table_source);
}

EvalOptions eval_options(const Config& cfg) {
  EvalOptions o;
  o.strategy = parse_strategy(cfg.strategy);
  o.quadric_fastpath = !cfg.no_fastpath;
  o.max_steps = cfg.max_steps;
  if (cfg.trace == "full") o.trace_limit = std::numeric_limits<std::uint64_t>::max();
  return o;
}

// Append-only record file: "<tag>\t<level>\t<j>\t<type>\t<value>" per line,
// where tag is the table fingerprint plus the evaluation options.
class RecordCache {
 public:
  RecordCache(std::string path, std::string tag) : path_(std::move(path)), tag_(std::move(tag)) {
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
      std::vector<std::string> f;
      std::stringstream ss(line);
      std::string field;
      while (std::getline(ss, field, '\t')) f.push_back(field);
      if (line.size() && line.back() == '\t') f.emplace_back();
      if (f.size() != 5 || f[0] != tag_) continue;
      values_[key(f[1], f[2], f[3])] = f[4];
    }
  }

  std::optional<std::string> find(const std::string& level, const std::string& j, const std::string& type) const {
    auto it = values_.find(key(level, j, type));
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  void append(const std::string& level, const std::string& j, const std::string& type, const std::string& value) {
    std::ofstream out(path_, std::ios::app);
    out << tag_ << '\t' << level << '\t' << j << '\t' << type << '\t' << value << '\n';
    values_[key(level, j, type)] = value;
  }

 private:
  static std::string key(const std::string& l, const std::string& j, const std::string& t) {
    return l + '|' + j + '|' + t;
  }
  std::string path_;
  std::string tag_;
  std::map<std::string, std::string> values_;
};

int cmd_bound_f(const Config& cfg, const std::string& level_text, const std::string& j_text,
                const std::string& type_text) {
  const HamiltonTable table = load_table(cfg, "builtin-prior");
  RdBoundFn rdfn(table);
  const Level level(parse_natural(level_text));
  const Natural j = parse_natural(j_text);
  const TypeSeq type = TypeSeq::parse(type_text);
  const EvalOptions opts = eval_options(cfg);

  std::optional<RecordCache> cache;
  if (!cfg.cache_path.empty()) {
    std::string tag = table.fingerprint() + ":" + std::string(to_string(opts.strategy)) +
                      (opts.quadric_fastpath ? "" : ":nofast");
    cache.emplace(cfg.cache_path, tag);
    if (auto hit = cache->find(to_decimal(level.value()), to_decimal(j), type.to_string())) {
      if (cfg.output == "json") {
        std::cout << "{\"level\": \"" << to_decimal(level.value()) << "\", \"j\": \"" << to_decimal(j)
                  << "\", \"type\": \"" << type.to_string() << "\", \"value\": \"" << *hit << "\", \"cached\": true}\n";
      } else {
        std::cout << *hit << "\n";
        if (cfg.trace != "none") std::cout << "cached\ttrue\n";
      }
      return kOk;
    }
  }

  BoundCertificate cert = bound_f(level, rdfn, j, type, opts);
  if (cache) cache->append(to_decimal(level.value()), to_decimal(j), type.to_string(), to_decimal(cert.value));

  if (cfg.output == "json") {
    std::cout << certificate_to_json(cert) << "\n";
  } else if (cfg.output == "csv") {
    std::cout << "level,j,type,value,inequalities,total_steps,largest_product\n"
              << to_decimal(level.value()) << ',' << to_decimal(j) << ",\"" << type.to_string() << "\","
              << to_decimal(cert.value) << ',' << cert.stats.inequalities << ',' << cert.stats.total_steps << ','
              << to_decimal(cert.stats.largest_product) << "\n";
  } else {
    std::cout << to_decimal(cert.value) << "\n";
    if (cfg.trace == "full") std::cout << render_chain(cert) << "\n";
    if (cfg.trace != "none") write_stats_text(std::cout, cert.stats);
  }
  return kOk;
}

SharpenOptions sharpen_options(const Config& cfg) {
  SharpenOptions s;
  s.eval = eval_options(cfg);
  s.eval.trace_limit = 0;
  return s;
}

int cmd_sharpen(const Config& cfg, unsigned r) {
  const HamiltonTable table = load_table(cfg, "builtin-prior");
  SharpenReport rep = sharpen_h(r, table, sharpen_options(cfg));
  if (cfg.output == "json") {
    std::cout << sharpen_report_to_json(rep) << "\n";
  } else if (cfg.output == "csv") {
    write_sharpen_csv(std::cout, rep);
  } else {
    write_sharpen_table(std::cout, rep);
  }
  return rep.status == SharpenStatus::BudgetExhausted ? kBudget : kOk;
}

int cmd_sharpen_all(const Config& cfg, unsigned r_min, unsigned r_max, const std::string& write_path) {
  const HamiltonTable table = load_table(cfg, "builtin-prior");
  SweepResult sweep = sharpen_all(r_min, r_max, table, sharpen_options(cfg));
  if (!write_path.empty()) {
    std::ofstream out(write_path);
    if (!out) throw Error("cannot write " + write_path);
    write_table(out, sweep.table);
  }
  if (cfg.output == "json") {
    std::cout << sweep_to_json(sweep) << "\n";
  } else if (cfg.output == "csv") {
    std::cout << "r,table_value,best_bound,source,status,probes\n";
    for (const auto& rep : sweep.reports) {
      std::cout << rep.r << ',' << to_decimal(rep.table_value) << ',' << to_decimal(rep.best_bound) << ','
                << rep.best_source() << ',' << to_string(rep.status) << ',' << rep.probes.size() << '\n';
    }
  } else {
    std::cout << "r | H(r) before | best | source | status | probes\n";
    for (const auto& rep : sweep.reports) {
      std::cout << rep.r << " | " << to_decimal(rep.table_value) << " | " << to_decimal(rep.best_bound) << " | "
                << rep.best_source() << " | " << to_string(rep.status) << " | " << rep.probes.size() << "\n";
    }
  }
  for (const auto& rep : sweep.reports) {
    if (rep.status == SharpenStatus::BudgetExhausted) return kBudget;
  }
  return kOk;
}

int cmd_sporadic(const Config& cfg, const std::string& group, const std::string& groups_file) {
  const HamiltonTable table = load_table(cfg, "builtin-new");
  std::vector<GroupSpec> groups = groups_file.empty() ? builtin_groups() : load_groups_file(groups_file);
  if (!group.empty()) {
    const GroupSpec* g = find_group(groups, group);
    if (!g) throw ParseError("unknown group '" + group + "'");
    groups = {*g};
  }
  EvalOptions opts = eval_options(cfg);
  opts.trace_limit = 0;
  std::vector<GroupVerdict> verdicts = verify_all(groups, table, opts);
  if (cfg.output == "json") {
    std::cout << verdicts_to_json(verdicts) << "\n";
  } else if (cfg.output == "csv") {
    write_groups_csv(std::cout, groups, verdicts);
  } else {
    write_groups_markdown(std::cout, groups, verdicts);
  }
  if (groups.size() == 1 && !verdicts[0].error.empty()) {
    return verdicts[0].error.find("budget") != std::string::npos ? kBudget : kLevelTooLow;
  }
  return kOk;
}

std::vector<Natural> parse_list(const std::string& text) {
  std::vector<Natural> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_natural(item));
  return out;
}

int cmd_compare_coarse(const Config& cfg, const std::string& quadrics, const std::string& quartics,
                       const std::string& b_text, const std::string& level_text, bool scientific) {
  if (quadrics.empty() == quartics.empty()) throw ParseError("give exactly one of --type-quadrics, --type-quartics");
  if (b_text.empty() == level_text.empty()) throw ParseError("give exactly one of --b, --level");
  const HamiltonTable table = load_table(cfg, "builtin-prior");
  RdBoundFn rdfn(table);
  const unsigned degree = quadrics.empty() ? 4 : 2;
  Natural level_value;
  if (!b_text.empty()) {
    Natural b = parse_natural(b_text);
    if (!b.fits_ulong_p()) throw ParseError("--b is too large");
    Natural n;
    mpz_ui_pow_ui(n.get_mpz_t(), degree, b.get_ui());
    level_value = rdfn.rd(n);
  } else {
    level_value = parse_natural(level_text);
  }
  const Level level(level_value);
  EvalOptions opts = eval_options(cfg);
  opts.trace_limit = 0;

  auto fmt = [scientific](const Natural& v) { return scientific ? to_scientific(v) : to_decimal(v); };
  const char* head = degree == 2 ? "m2" : "m4";
  if (cfg.output == "csv") {
    std::cout << head << ",best,coarse\n";
  } else if (cfg.output == "text") {
    std::cout << "# level " << to_decimal(level.value()) << "\n" << head << " | best | coarse\n";
  }
  std::string json_rows;
  for (const Natural& m : parse_list(quadrics.empty() ? quartics : quadrics)) {
    const TypeSeq type = TypeSeq::single(degree, m);
    const Natural best = bound_f(level, rdfn, 0, type, opts).value;
    const Natural coarse = coarse_bound_f(level, rdfn, 0, type);
    if (cfg.output == "csv") {
      std::cout << to_decimal(m) << ',' << fmt(best) << ',' << fmt(coarse) << "\n";
    } else if (cfg.output == "json") {
      if (!json_rows.empty()) json_rows += ", ";
      json_rows += "{\"m\": \"" + to_decimal(m) + "\", \"best\": \"" + to_decimal(best) + "\", \"coarse\": \"" +
                   to_decimal(coarse) + "\"}";
    } else {
      std::cout << to_decimal(m) << " | " << fmt(best) << " | " << fmt(coarse) << "\n";
    }
  }
  if (cfg.output == "json") {
    std::cout << "{\"level\": \"" << to_decimal(level.value()) << "\", \"degree\": " << degree << ", \"rows\": ["
              << json_rows << "]}\n";
  }
  return kOk;
}

int cmd_rd(const Config& cfg, const std::string& n_text) {
  RdBoundFn rdfn(load_table(cfg, "builtin-prior"));
  const Natural n = parse_natural(n_text);
  if (n < 1) throw ParseError("--n must be at least 1");
  if (cfg.output == "json") {
    std::cout << "{\"n\": \"" << to_decimal(n) << "\", \"rd\": \"" << to_decimal(rdfn.rd(n)) << "\"}\n";
  } else {
    std::cout << to_decimal(rdfn.rd(n)) << "\n";
  }
  return kOk;
}

int cmd_hamilton(const Config& cfg, bool validate_only) {
  const HamiltonTable table = load_table(cfg, "builtin-prior");
  auto violations = validate(table);
  if (validate_only) {
    if (violations.empty()) std::cout << "ok\n";
    for (const auto& v : violations) std::cout << "r=" << v.r << "\t" << v.message << "\n";
    return violations.empty() ? kOk : kFailure;
  }
  if (cfg.output == "csv") {
    std::cout << "r,H,provenance\n";
    for (const auto& [r, e] : table.entries()) {
      std::cout << r << ',' << to_decimal(e.value) << ',' << to_string(e.provenance) << "\n";
    }
  } else if (cfg.output == "json") {
    std::cout << "{\"label\": \"" << table.label() << "\", \"fingerprint\": \"" << table.fingerprint()
              << "\", \"entries\": [";
    bool first = true;
    for (const auto& [r, e] : table.entries()) {
      std::cout << (first ? "" : ", ") << "{\"r\": " << r << ", \"H\": \"" << to_decimal(e.value)
                << "\", \"provenance\": \"" << to_string(e.provenance) << "\"}";
      first = false;
    }
    std::cout << "]}\n";
  } else {
    write_table(std::cout, table);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified bounds on f^l_j(m), Hamilton functions and sporadic group RD"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  app.add_option("--table", cfg.table_source, "builtin-prior, builtin-new or a table file (RDB_TABLE overrides)");
  app.add_option("--strategy", cfg.strategy, "Extraction strategy")
      ->check(CLI::IsMember({"paper", "greedy-continue"}));
  app.add_flag("--no-fastpath", cfg.no_fastpath, "Disable the closed form for pure quadrics");
  app.add_option("--max-steps", cfg.max_steps, "Step budget per evaluation");
  app.add_option("--trace", cfg.trace, "Trace detail")->check(CLI::IsMember({"none", "stats", "full"}));
  app.add_option("--cache", cfg.cache_path, "Append-only record file for bound-f results");
  app.add_option("--output", cfg.output, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));

  int code = kOk;

  std::string level_text, j_text = "0", type_text;
  auto* bf = app.add_subcommand("bound-f", "Upper bound on f^l_j(m) with its inequality chain");
  bf->add_option("--level", level_text, "Level l >= 1")->required();
  bf->add_option("--j", j_text, "Plane dimension j");
  bf->add_option("--type", type_text, "Type m2,m3,...,mn (\"\" for zero)")->required();

  unsigned r = 0;
  auto* sh = app.add_subcommand("sharpen", "Plateau walk for one H(r)");
  sh->add_option("--r", r, "r >= 4")->required();

  unsigned r_min = 0, r_max = 0;
  std::string write_path;
  auto* sa = app.add_subcommand("sharpen-all", "Self-improving sweep over r");
  sa->add_option("--r-min", r_min)->required();
  sa->add_option("--r-max", r_max)->required();
  sa->add_option("--write-table", write_path, "Write the final table to this file");

  std::string group, groups_file;
  auto* sp = app.add_subcommand("sporadic", "Verify RD(G) bounds from invariant degrees");
  sp->add_option("--group", group, "Only this group");
  sp->add_option("--groups", groups_file, "JSON group dataset instead of the builtin one");

  std::string quadrics, quartics, b_text, cmp_level;
  bool scientific = false;
  auto* cc = app.add_subcommand("compare-coarse", "Best bound against the line-reduction bound");
  cc->add_option("--type-quadrics", quadrics, "Comma-separated m2 values");
  cc->add_option("--type-quartics", quartics, "Comma-separated m4 values");
  cc->add_option("--b", b_text, "Use l = R(2^b) for quadrics, R(4^b) for quartics");
  cc->add_option("--level", cmp_level, "Explicit level");
  cc->add_flag("--scientific", scientific, "Print values with 3 significant digits");

  std::string n_text;
  auto* rd = app.add_subcommand("rd", "Bound on RD(n) from the table");
  rd->add_option("--n", n_text)->required();

  bool show = false, check = false;
  auto* ham = app.add_subcommand("hamilton", "Inspect a Hamilton table");
  ham->add_flag("--show", show, "Print the table");
  ham->add_flag("--validate", check, "Report structural violations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*bf) code = cmd_bound_f(cfg, level_text, j_text, type_text);
    else if (*sh) code = cmd_sharpen(cfg, r);
    else if (*sa) code = cmd_sharpen_all(cfg, r_min, r_max, write_path);
    else if (*sp) code = cmd_sporadic(cfg, group, groups_file);
    else if (*cc) code = cmd_compare_coarse(cfg, quadrics, quartics, b_text, cmp_level, scientific);
    else if (*rd) code = cmd_rd(cfg, n_text);
    else if (*ham) code = cmd_hamilton(cfg, check && !show);
  } catch (const LevelTooLow& e) {
    std::cerr << "level too low: " << e.what() << "\n";
    return kLevelTooLow;
  } catch (const StepBudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const ParseError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return code;
}
