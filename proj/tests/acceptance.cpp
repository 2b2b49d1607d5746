#include "oracles.hpp"

#include "rdb/obliterate.hpp"
#include "rdb/sharpen.hpp"
#include "rdb/sporadic.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

using namespace rdb;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("mismatch: " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

Natural pw(unsigned long base, unsigned long e) {
  Natural out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, e);
  return out;
}

Natural fact(unsigned long n) {
  Natural out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

std::string d(const Natural& n) { return to_decimal(n); }

EvalOptions no_fastpath() {
  EvalOptions o;
  o.quadric_fastpath = false;
  return o;
}

const HamiltonTable& prior() {
  static const HamiltonTable t = builtin_table(BuiltinKind::Prior);
  return t;
}

const HamiltonTable& fresh() {
  static const HamiltonTable t = builtin_table(BuiltinKind::New);
  return t;
}

const SweepResult& sweep_11_13() {
  static const SweepResult s = sharpen_all(11, 13, prior());
  return s;
}

const SweepResult& sweep_20_22() {
  static const SweepResult s = sharpen_all(20, 22, prior());
  return s;
}

Outcome endomorphism_suite() {
  Outcome o;
  std::mt19937_64 rng(500);
  std::uniform_int_distribution<unsigned> jd(0, 20);
  for (int trial = 0; trial < 500; ++trial) {
    const TypeSeq m = oracle::random_type(rng, 7, 5);
    const unsigned j = jd(rng);
    const std::string at = "(" + m.to_string() + ") j=" + std::to_string(j);
    o.expect(endo(m, j) == oracle::endo_recursive(m, j), "endo " + at);
    o.expect(norm_of_endo(m, j) == norm(oracle::endo_recursive(m, j)), "norm_of_endo " + at);
    o.expect(prefix_norm_sum(m, j) == oracle::prefix_norm_recursive(m, j), "prefix_norm_sum " + at);
  }
  o.note("500 random types");
  return o;
}

struct Node {
  unsigned long j;
  TypeSeq type;
  unsigned long offset;
};

// Equal node for node, or equal after folding our closing f_j(0) + c into
// the node before it.
bool chain_matches(const std::vector<ChainNode>& ours, const Natural& value, const std::vector<Node>& expected,
                   const Natural& expected_value) {
  if (value != expected_value) return false;
  auto same = [&](std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      if (ours[i].j != expected[i].j || ours[i].type != expected[i].type || ours[i].offset != expected[i].offset)
        return false;
    }
    return true;
  };
  if (ours.size() == expected.size()) return same(ours.size());
  return ours.size() == expected.size() + 1 && ours.back().type.empty() && same(expected.size());
}

Outcome nontic_example() {
  Outcome o;
  const RdBoundFn fn(fresh());
  const std::vector<Node> low = {{0, {1, 1, 1}, 0}, {1, {1, 1}, 0}, {0, {2, 1}, 3},
                                 {1, {2}, 3},       {0, {2}, 6},    {2, {}, 6}};
  const std::vector<Node> low_mid = {{0, {1, 1, 1}, 0}, {1, {1, 1}, 0}, {0, {2, 1}, 3}, {2, {1}, 3}, {0, {1}, 7}};
  const std::vector<Node> mid = {{0, {1, 1, 1}, 0}, {2, {1}, 0}, {0, {1}, 4}};
  const std::vector<Node> high = {{0, {1, 1, 1}, 0}, {3, {}, 0}};
  const Natural rd6 = fn.rd(6), rd12 = fn.rd(12), rd24 = fn.rd(24);
  std::map<int, int> seen;
  for (unsigned long l = 1; l <= 40; ++l) {
    const Level lvl(l);
    const auto cert = bound_f(lvl, fn, 0, TypeSeq{1, 1, 1}, no_fastpath());
    const Natural fast = bound_f(lvl, fn, 0, TypeSeq{1, 1, 1}).value;
    const std::vector<Node>* expected;
    Natural value;
    int regime;
    if (l < rd6) {
      expected = &low, value = 8, regime = 0;
    } else if (l < rd12) {
      expected = &low_mid, value = 8, regime = 1;
    } else if (l < rd24) {
      expected = &mid, value = 5, regime = 2;
    } else {
      expected = &high, value = 3, regime = 3;
    }
    ++seen[regime];
    o.expect(chain_matches(chain_nodes(cert), cert.value, *expected, value),
             "l=" + std::to_string(l) + ": " + render_chain(cert));
    o.expect(fast == value, "fast path at l=" + std::to_string(l));
  }
  o.expect(seen.size() == 4, "all four branches visited");
  o.note("l=1..40, rd(12)=" + d(rd12) + ", rd(24)=" + d(rd24));
  return o;
}

Outcome desk_rows() {
  Outcome o;
  const RdBoundFn fn(prior());
  const std::string chain7 =
      "f^42_0(1,1,1,1,1) <= f^42_2(1,1,1) <= f^42_0(6,3,1) + 11 <= f^42_3(6,1) + 11 <= f^42_0(9,1) + 38 <= "
      "f^42_5(5) + 38 <= f^42_0(5) + 68 <= f^42_5(0) + 68 = 73";
  const auto c7 = bound_f(Level(42ul), fn, 0, TypeSeq::ones(5), no_fastpath());
  o.expect(render_chain(c7) == chain7, "r=7 chain: " + render_chain(c7));
  o.expect(bound_f(Level(42ul), fn, 0, TypeSeq::ones(5)).value == 73, "f^42_0(1^5) with fast path");

  const auto rep7 = sharpen_h(7, prior());
  o.expect(rep7.best_bound == 75, "H(7) <= " + d(rep7.best_bound));
  o.expect(rep7.best_probe && rep7.probes[*rep7.best_probe].f_bound == 73, "best r=7 probe has f = 73");

  const HamiltonTable t7 = update(prior(), 7, rep7.best_bound);
  const auto rep8 = sharpen_h(8, t7);
  o.expect(rep8.best_bound == 211, "H(8) <= " + d(rep8.best_bound));
  const auto c8 = bound_f(Level(203ul), RdBoundFn(t7), 0, TypeSeq::ones(6));
  o.expect(c8.value == 154, "f^203_0(1^6) = " + d(c8.value));
  o.expect(rep8.best_probe && rep8.probes[*rep8.best_probe].floor == 203 &&
               rep8.probes[*rep8.best_probe].f_bound == 154,
           "best r=8 probe at floor 203 with f = 154");
  o.note("H(7) <= 75, H(8) <= 211");
  return o;
}

void check_sweep(Outcome& o, const SweepResult& s, const std::vector<std::pair<unsigned long, Natural>>& expect) {
  for (std::size_t i = 0; i < expect.size(); ++i) {
    const SharpenReport& rep = s.reports[i];
    const std::string r = "r=" + std::to_string(rep.r);
    o.expect(rep.best_bound == expect[i].second, r + " bound " + d(rep.best_bound));
    o.expect(rep.status == SharpenStatus::Optimal, r + " status");
    if (rep.best_probe) {
      o.expect(rep.probes[*rep.best_probe].f_bound == expect[i].first,
               r + " f-bound " + d(rep.probes[*rep.best_probe].f_bound));
    } else {
      o.expect(false, r + " has no probe");
    }
  }
}

Outcome heavy_rows() {
  Outcome o;
  check_sweep(o, sweep_11_13(), {{57366, 59050}, {166776, 332641}, {400983, 3991681}});
  check_sweep(o, sweep_20_22(),
              {{227214539745185ul, Natural("227214539745187")},
               {625790049145200ul, Natural("3379030566912001")},
               {1603978712474279ul, Natural("70959641905152001")}});
  std::uint64_t peak = 0;
  for (const auto* s : {&sweep_11_13(), &sweep_20_22()}) {
    for (const auto& rep : s->reports) {
      for (const auto& p : rep.probes) peak = std::max<std::uint64_t>(peak, p.stats.total_steps);
    }
  }
  o.note("peak steps per probe " + std::to_string(peak));
  return o;
}

Outcome quadric_table() {
  Outcome o;
  const RdBoundFn fn(fresh());
  const Level l(fn.rd(pw(2, 100)));
  const std::vector<std::array<unsigned long, 3>> rows = {
      {100, 100, 5050},         {101, 201, 5151},         {120, 2120, 7260},
      {360, 48360, 64980},      {1080, 531080, 583740},   {4320, 9120320, 9333360},
  };
  for (const auto& [m2, best, coarse] : rows) {
    const TypeSeq t = TypeSeq::quadrics(m2);
    o.expect(quadric_bound(l, fn, m2) == best, "best m2=" + std::to_string(m2));
    o.expect(bound_f(l, fn, 0, t).value == best, "bound_f m2=" + std::to_string(m2));
    o.expect(coarse_bound_f(l, fn, 0, t) == coarse, "coarse m2=" + std::to_string(m2));
  }
  o.note("l = " + d(l.value()));
  return o;
}

Outcome quartic_table() {
  Outcome o;
  const RdBoundFn fn(fresh());
  const Level l(fn.rd(pw(4, 50)));
  const std::vector<std::tuple<unsigned long, std::string, std::string>> rows = {
      {50, "50", "3.14e11"},     {51, "8.39e5", "3.67e11"},   {60, "8.11e9", "1.34e12"},
      {120, "5.37e13", "3.40e14"}, {360, "1.25e18", "2.21e18"},
  };
  for (const auto& [m4, best, coarse] : rows) {
    const TypeSeq t{0, 0, m4};
    const Natural b = bound_f(l, fn, 0, t).value;
    const std::string bs = b < 1000 ? d(b) : to_scientific(b, 3);
    o.expect(bs == best, "best m4=" + std::to_string(m4) + ": " + bs);
    const std::string cs = to_scientific(coarse_bound_f(l, fn, 0, t), 3);
    o.expect(cs == coarse, "coarse m4=" + std::to_string(m4) + ": " + cs);
  }
  return o;
}

Outcome sporadic_batch() {
  Outcome o;
  const auto groups = builtin_groups();
  const auto verdicts = verify_all(groups, fresh());
  const std::map<std::string, std::pair<unsigned long, unsigned long>> proof = {
      {"McL", {18, 21}},    {"Ru", {25, 5}},    {"He", {47, 8}},        {"Fi23", {775, 24}},
      {"Fi24'", {778, 13}}, {"B", {4364, 108}}, {"M", {196872, 168825}},
  };
  const std::vector<std::pair<std::string, unsigned long>> column = {
      {"J2", 5},     {"M11", 7},    {"M12", 8},   {"M22", 8},   {"Suz", 10},  {"J3", 16},   {"M23", 18},
      {"M24", 18},   {"HS", 18},    {"McL", 18},  {"Co3", 20},  {"Co2", 20},  {"Co1", 21},  {"Ru", 25},
      {"He", 47},    {"J1", 51},    {"Fi22", 74}, {"HN", 129},  {"Th", 244},  {"O'N", 338}, {"Fi23", 775},
      {"Fi24'", 778}, {"J4", 1328}, {"Ly", 2475}, {"B", 4364},  {"M", 196872},
  };
  o.expect(verdicts.size() == column.size(), "26 rows");
  for (std::size_t i = 0; i < std::min(verdicts.size(), column.size()); ++i) {
    const auto& v = verdicts[i];
    o.expect(v.name == column[i].first, "row " + std::to_string(i + 1) + " is " + v.name);
    o.expect(v.claimed_level == column[i].second, v.name + " level " + d(v.claimed_level));
    o.expect(v.ok, v.name + " f bound " + d(v.f_bound) + " > " + d(v.f_target) + v.error);
    if (auto it = proof.find(v.name); it != proof.end()) {
      o.expect(v.claimed_level == it->second.first && v.f_bound == it->second.second,
               v.name + " proof inequality f^" + d(v.claimed_level) + " = " + d(v.f_bound));
    }
  }
  o.note("26 rows, 7 proof inequalities");
  return o;
}

Outcome property_suites() {
  Outcome o;
  const RdBoundFn fn(fresh());
  const auto types = oracle::all_types(4, 2);
  const std::vector<unsigned long> levels = {1, 2, 5, 10, 1000, 1000000000};
  std::map<std::pair<std::size_t, std::size_t>, Natural> v;
  EvalOptions full;
  full.trace_limit = std::numeric_limits<std::uint64_t>::max();
  std::size_t checks = 0;
  for (std::size_t t = 0; t < types.size(); ++t) {
    for (std::size_t li = 0; li < levels.size(); ++li) {
      const Level l(levels[li]);
      const auto c = bound_f(l, fn, 0, types[t], full);
      const std::string at = "(" + types[t].to_string() + ") l=" + std::to_string(levels[li]);
      o.expect(replay(c, &fn) == c.value, "replay " + at);
      o.expect(c.value <= coarse_bound_f(l, fn, 0, types[t]), "coarse dominance " + at);
      o.expect(c.value <= bound_f(l, fn, 1, types[t]).value, "monotone in j " + at);
      o.expect(c.value >= norm(types[t]), "lower bound " + at);
      v[{t, li}] = c.value;
      checks += 4;
    }
  }
  for (std::size_t t = 0; t < types.size(); ++t) {
    for (std::size_t li = 0; li + 1 < levels.size(); ++li) {
      o.expect(v[{t, li + 1}] <= v[{t, li}], "monotone in l (" + types[t].to_string() + ")");
      ++checks;
    }
    for (std::size_t u = 0; u < types.size(); ++u) {
      if (u == t || !leq(types[t], types[u])) continue;
      for (std::size_t li = 0; li < levels.size(); ++li) {
        o.expect(v[{t, li}] <= v[{u, li}], "monotone in type (" + types[t].to_string() + ") <= (" +
                                                types[u].to_string() + ")");
        ++checks;
      }
    }
  }
  for (unsigned b = 2; b <= 8; ++b) {
    const Level l(fn.rd(pw(2, b)));
    for (unsigned long m2 = 0; m2 <= 200; ++m2) {
      o.expect(quadric_bound(l, fn, m2) == bound_f(l, fn, 0, TypeSeq::quadrics(m2), no_fastpath()).value,
               "fast path b=" + std::to_string(b) + " m2=" + std::to_string(m2));
      ++checks;
    }
  }
  for (auto kind : {BuiltinKind::Prior, BuiltinKind::New}) {
    const RdBoundFn rf(builtin_table(kind));
    for (const auto& [r, e] : rf.table().entries()) {
      o.expect(rf.rd(e.value) == e.value - r, "rd(H(" + std::to_string(r) + "))");
      o.expect(rf.rd(e.value - 1) == e.value - r, "rd(H(" + std::to_string(r) + ") - 1)");
      checks += 2;
    }
    Natural prev = 1;
    for (Natural n = 1; n < 100000; ++n) {
      const Natural x = rf.rd(n);
      o.expect(x <= n && x >= prev && x <= prev + 1, "rd step at " + d(n));
      prev = x;
    }
    checks += 100000;
  }
  o.note(std::to_string(checks) + " checks");
  return o;
}

struct PublishedRow {
  Natural level;
  Natural bound;
  Natural product;
  std::optional<std::uint64_t> steps_to_zero;
  std::uint64_t steps_to_quadric;
};

Outcome trajectory() {
  Outcome o;
  Outcome hard;
  check_sweep(hard, sweep_20_22(),
              {{227214539745185ul, Natural("227214539745187")},
               {625790049145200ul, Natural("3379030566912001")},
               {1603978712474279ul, Natural("70959641905152001")}});
  for (const auto& n : hard.notes) o.expect(false, "final bounds: " + n);

  const std::vector<PublishedRow> published = {
      {fact(20) / fact(5) - 20, 52111718, fact(20) / fact(5), 386, 12},
      {Natural("20274183401471979"), Natural("580843710708472"), pw(2, 24) * pw(3, 19), 1262642, 494},
      {Natural("19499511680335851"), Natural("580843710708493"), pw(2, 54), 1262642, 495},
      {Natural("18014398509481963"), Natural("604121162689287"), pw(2, 46) * pw(3, 5), 1311978, 501},
      {Natural("17099604835172331"), Natural("604121180066700"), pw(3, 34), 1311978, 501},
      {Natural("16677181699666548"), Natural("604266478377038"), pw(2, 17) * 3 * pw(5, 15), 1312150, 515},
      {Natural("11999999999999979"), Natural("608622926700041"), pw(2, 53), 1316872, 515},
      {Natural("8226356490141675"), Natural("608622874490553"), pw(3, 33), 1342186, 515},
      {Natural("5559060566555502"), Natural("608769515586247"), pw(2, 11) * pw(3, 26), 1342362, 531},
      {Natural("5205741216417771"), Natural("608769515586234"), pw(2, 52), 1342362, 531},
      {Natural("4503599627370475"), Natural("625790031459180"), pw(2, 12) * pw(3, 25), 1387672, 534},
      {Natural("3470494144278507"), Natural("625790049145200"), fact(20) / fact(6), 1387672, 534},
      {Natural("3379030566911979"), 0, pw(2, 18) * pw(3, 21), std::nullopt, 1359367},
  };

  const SharpenReport& walk = sweep_20_22().reports[1];
  std::size_t divergences = 0;
  auto diff = [&](const std::string& s) {
    ++divergences;
    o.note("diff " + s);
  };
  if (walk.probes.size() != published.size()) {
    diff("probe count: published " + std::to_string(published.size()) + ", ours " + std::to_string(walk.probes.size()));
  }
  std::map<Natural, const PublishedRow*> by_level;
  for (const auto& row : published) by_level[row.level] = &row;
  for (const auto& p : walk.probes) {
    const auto it = by_level.find(p.level);
    if (it == by_level.end()) {
      diff("l=" + d(p.level) + ": probe absent from published table (B=" + d(p.f_bound) + ", product=" +
           d(p.largest_product) + ")");
      continue;
    }
    const PublishedRow& row = *it->second;
    if (row.bound == 0 ? to_scientific(p.f_bound, 4) != "2.795e28" : row.bound != p.f_bound) {
      diff("l=" + d(p.level) + ": bound published " + (row.bound == 0 ? "2.795e28" : d(row.bound)) + ", ours " +
           d(p.f_bound));
    }
    if (row.product != p.largest_product) {
      diff("l=" + d(p.level) + ": product published " + d(row.product) + ", ours " + d(p.largest_product));
    }
    const std::uint64_t ours = p.stats.steps_to_quadric.value_or(p.stats.inequalities);
    if (ours != row.steps_to_quadric) {
      diff("l=" + d(p.level) + ": steps to f_j(m2) published " + std::to_string(row.steps_to_quadric) + ", ours " +
           std::to_string(ours));
    }
    by_level.erase(it);
  }
  for (const auto& [l, row] : by_level) diff("l=" + d(l) + ": published probe not visited");

  // Steps to f_j(0) need the generic evaluator.
  const RdBoundFn walk_fn(update(prior(), 20, Natural("227214539745187")));
  for (const auto& row : published) {
    if (!row.steps_to_zero) continue;
    const auto c = bound_f(Level(row.level), walk_fn, 0, TypeSeq::ones(19), no_fastpath());
    o.expect(c.stats.inequalities == *row.steps_to_zero,
             "steps to f_j(0) at l=" + d(row.level) + ": " + std::to_string(c.stats.inequalities));
  }

  // Many accessory irrationalities: the r = 22 best probe.
  const RdBoundFn fn22(sweep_20_22().table);
  const auto ex = bound_f(Level(Natural("70959641905151979")), fn22, 0, TypeSeq::ones(20), no_fastpath());
  const std::map<unsigned, DegreeCounts> counts = {
      {21, {0, 1}}, {6, {1, 1}}, {4, {5, 5}}, {3, {302, 302}}, {2, {1029668, 1029667}}};
  o.expect(ex.stats.per_degree == counts, "per-degree lemma counts");
  o.expect(ex.stats.inequalities == 2059952, "inequalities " + std::to_string(ex.stats.inequalities));
  o.expect(ex.value == Natural("1603978712474279"), "value " + d(ex.value));

  o.note(std::to_string(divergences) + " divergences from the H(21) table reported above");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"endomorphism closed forms", endomorphism_suite},
      {"nontic example", nontic_example},
      {"H(7) and H(8)", desk_rows},
      {"H(11..13) and H(20..22)", heavy_rows},
      {"quadric closed form table", quadric_table},
      {"quartic comparison table", quartic_table},
      {"sporadic batch", sporadic_batch},
      {"property suites", property_suites},
      {"H(21) trajectory and lemma counts", trajectory},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out.pass = false;
      out.notes.push_back(std::string("error: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& n : out.notes) std::cout << "    " << n << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f s", secs);
    std::cout << "criterion " << i + 1 << ": " << (out.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
              << buf << ")\n";
    if (!out.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
