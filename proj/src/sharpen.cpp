#include "rdb/sharpen.hpp"

namespace rdb {

std::string_view to_string(SharpenStatus s) {
  switch (s) {
    case SharpenStatus::Optimal: return "optimal";
    case SharpenStatus::BudgetExhausted: return "budget_exhausted";
    case SharpenStatus::LevelTooLow: return "level_too_low";
    case SharpenStatus::Error: return "error";
  }
  return "unknown";
}

std::string SharpenReport::best_source() const {
  if (!best_probe) return "table";
  const PlateauProbe& p = probes[*best_probe];
  return p.f_bound + 2 >= p.floor + r ? "f" : "level";
}

SharpenReport sharpen_h(unsigned r, const HamiltonTable& table, const SharpenOptions& opts) {
  if (r < 4) throw DomainError("sharpening needs r >= 4");
  RdBoundFn rdfn(table);
  auto h = table.get(r);
  if (!h) throw DomainError("table has no entry for r = " + std::to_string(r));

  SharpenReport report;
  report.r = r;
  report.table_value = *h;
  report.best_bound = *h;

  const TypeSeq ones = TypeSeq::ones(r - 2);
  Natural level = *h - r;
  std::uint64_t spent = 0;
  while (level >= 1) {
    EvalOptions eval = opts.eval;
    if (opts.max_total_steps) {
      if (spent >= opts.max_total_steps) {
        report.status = SharpenStatus::BudgetExhausted;
        report.message = "walk budget exhausted";
        break;
      }
      eval.max_steps = std::min(eval.max_steps, opts.max_total_steps - spent);
    }
    BoundCertificate cert;
    try {
      cert = bound_f(Level(level), rdfn, 0, ones, eval);
    } catch (const LevelTooLow& e) {
      if (report.probes.empty()) throw;
      report.message = e.what();
      break;
    } catch (const StepBudgetExceeded& e) {
      report.status = SharpenStatus::BudgetExhausted;
      report.message = "probe at l = " + to_decimal(level) + ": " + e.what();
      break;
    }
    spent += cert.stats.total_steps;

    PlateauProbe probe;
    probe.level = level;
    probe.f_bound = cert.value;
    probe.largest_product = cert.stats.largest_product;
    probe.floor = rdfn.rd(probe.largest_product);
    Natural via_f = probe.f_bound + 2;
    Natural via_level = probe.floor + r;
    probe.candidate = via_f > via_level ? via_f : via_level;
    probe.stats = std::move(cert.stats);
    report.probes.push_back(std::move(probe));

    const PlateauProbe& p = report.probes.back();
    if (!report.best_probe || p.candidate < report.best_bound) {
      report.best_bound = p.candidate;
      report.best_probe = report.probes.size() - 1;
    }
    if (via_f >= report.best_bound) break;
    level = p.floor - 1;
  }
  return report;
}

SweepResult sharpen_all(unsigned r_min, unsigned r_max, const HamiltonTable& table, const SharpenOptions& opts) {
  if (r_min < 4 || r_min > r_max) throw DomainError("sweep needs 4 <= r_min <= r_max");
  SweepResult out{table, {}};
  for (unsigned r = r_min; r <= r_max; ++r) {
    SharpenReport rep;
    try {
      rep = sharpen_h(r, out.table, opts);
    } catch (const LevelTooLow& e) {
      rep.r = r;
      rep.table_value = out.table.get(r).value_or(0);
      rep.best_bound = rep.table_value;
      rep.status = SharpenStatus::LevelTooLow;
      rep.message = e.what();
    } catch (const Error& e) {
      rep.r = r;
      rep.table_value = out.table.get(r).value_or(0);
      rep.best_bound = rep.table_value;
      rep.status = SharpenStatus::Error;
      rep.message = e.what();
    }
    if (rep.best_probe && rep.improved()) {
      try {
        out.table = update(out.table, r, rep.best_bound);
      } catch (const MonotonicityError& e) {
        rep.status = SharpenStatus::Error;
        rep.message = e.what();
      }
    }
    out.reports.push_back(std::move(rep));
  }
  return out;
}

}  // namespace rdb
