#include "rdb/report.hpp"

#include "json.hpp"

#include <ostream>

namespace rdb {
namespace {

using nlohmann::json;

std::string dec(const Natural& n) { return to_decimal(n); }

Natural nat(const json& obj, const char* field) {
  if (!obj.contains(field)) throw ParseError(std::string("missing field '") + field + "'");
  const json& v = obj.at(field);
  if (!v.is_string()) throw ParseError(std::string("field '") + field + "' must be a decimal string");
  return parse_natural(v.get<std::string>());
}

TypeSeq type_field(const json& obj, const char* field) {
  if (!obj.contains(field) || !obj.at(field).is_string()) {
    throw ParseError(std::string("field '") + field + "' must be a type string");
  }
  return TypeSeq::parse(obj.at(field).get<std::string>());
}

json stats_json(const EvalStats& s) {
  json per = json::array();
  for (const auto& [deg, c] : s.per_degree) {
    per.push_back({{"degree", deg}, {"planes_from_pts", c.planes}, {"extractions", c.extractions}});
  }
  json out = {{"per_degree_counts", per},
              {"total_steps", s.total_steps},
              {"inequalities", s.inequalities},
              {"largest_product", dec(s.largest_product)}};
  out["steps_to_quadric"] = s.steps_to_quadric ? json(*s.steps_to_quadric) : json(nullptr);
  return out;
}

EvalStats stats_from(const json& j) {
  EvalStats s;
  for (const auto& row : j.at("per_degree_counts")) {
    DegreeCounts c;
    c.planes = row.at("planes_from_pts").get<std::uint64_t>();
    c.extractions = row.at("extractions").get<std::uint64_t>();
    s.per_degree[row.at("degree").get<unsigned>()] = c;
  }
  s.total_steps = j.at("total_steps").get<std::uint64_t>();
  s.inequalities = j.at("inequalities").get<std::uint64_t>();
  s.largest_product = nat(j, "largest_product");
  if (j.contains("steps_to_quadric") && !j.at("steps_to_quadric").is_null()) {
    s.steps_to_quadric = j.at("steps_to_quadric").get<std::uint64_t>();
  }
  return s;
}

template <class... Fs>
struct Overload : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

json step_json(const Step& s) {
  json out = std::visit(
      Overload{
          [](const step::Extract& e) {
            return json{{"extracted", e.extracted.to_string()}, {"product", dec(e.product)}, {"j_after", dec(e.j_after)}};
          },
          [](const step::PlanesFromPts& p) {
            return json{{"j", dec(p.j)},
                        {"input", p.input.to_string()},
                        {"output", p.output.to_string()},
                        {"offset", dec(p.offset)}};
          },
          [](const step::QuadricFastPath& q) {
            return json{{"b", dec(q.b)}, {"q", dec(q.q)}, {"r_rem", dec(q.r_rem)}, {"value", dec(q.value)}};
          },
          [](const step::BaseCase& b) { return json{{"j", dec(b.j)}}; },
          [](const step::CoarseLine& c) {
            return json{{"input", c.input.to_string()}, {"output", c.output.to_string()}, {"offset", dec(c.offset)}};
          },
      },
      s);
  out["tag"] = std::string(step_tag(s));
  return out;
}

Step step_from(const json& j) {
  const std::string tag = j.at("tag").get<std::string>();
  if (tag == "extract") return step::Extract{type_field(j, "extracted"), nat(j, "product"), nat(j, "j_after")};
  if (tag == "planes_from_pts") {
    return step::PlanesFromPts{nat(j, "j"), type_field(j, "input"), type_field(j, "output"), nat(j, "offset")};
  }
  if (tag == "quadric_fast_path") return step::QuadricFastPath{nat(j, "b"), nat(j, "q"), nat(j, "r_rem"), nat(j, "value")};
  if (tag == "base_case") return step::BaseCase{nat(j, "j")};
  if (tag == "coarse_line") return step::CoarseLine{type_field(j, "input"), type_field(j, "output"), nat(j, "offset")};
  throw ParseError("unknown step tag '" + tag + "'");
}

json probe_json(const PlateauProbe& p) {
  return {{"level", dec(p.level)},
          {"f_bound", dec(p.f_bound)},
          {"largest_product", dec(p.largest_product)},
          {"floor", dec(p.floor)},
          {"candidate", dec(p.candidate)},
          {"stats", stats_json(p.stats)}};
}

json report_json(const SharpenReport& r) {
  json probes = json::array();
  for (const auto& p : r.probes) probes.push_back(probe_json(p));
  json out = {{"r", r.r},
              {"table_value", dec(r.table_value)},
              {"best_bound", dec(r.best_bound)},
              {"best_source", r.best_source()},
              {"status", std::string(to_string(r.status))},
              {"probes", probes}};
  out["best_level"] = r.best_probe ? json(dec(r.probes[*r.best_probe].floor)) : json(nullptr);
  if (!r.message.empty()) out["message"] = r.message;
  return out;
}

std::string opt_count(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : "-"; }

}  // namespace

std::string certificate_to_json(const BoundCertificate& cert, int indent) {
  json steps = json::array();
  for (const auto& s : cert.steps) steps.push_back(step_json(s));
  json doc = {{"header",
               {{"level", dec(cert.level.value())},
                {"j", dec(cert.j)},
                {"type", cert.type.to_string()},
                {"value", dec(cert.value)},
                {"strategy", std::string(to_string(cert.strategy))},
                {"quadric_fastpath", cert.quadric_fastpath},
                {"table_id", cert.table_id},
                {"elided", cert.elided}}},
              {"stats", stats_json(cert.stats)},
              {"steps", steps}};
  return doc.dump(indent);
}

BoundCertificate certificate_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
  try {
    const json& h = doc.at("header");
    BoundCertificate c;
    c.level = Level(nat(h, "level"));
    c.j = nat(h, "j");
    c.type = type_field(h, "type");
    c.value = nat(h, "value");
    c.strategy = parse_strategy(h.at("strategy").get<std::string>());
    c.quadric_fastpath = h.value("quadric_fastpath", true);
    c.table_id = h.at("table_id").get<std::string>();
    c.elided = h.value("elided", false);
    c.stats = stats_from(doc.at("stats"));
    for (const auto& s : doc.at("steps")) c.steps.push_back(step_from(s));
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
}

std::string stats_to_json(const EvalStats& stats, int indent) { return stats_json(stats).dump(indent); }

void write_stats_text(std::ostream& out, const EvalStats& s) {
  out << "n\tplanes_from_pts\textractions\n";
  for (auto it = s.per_degree.rbegin(); it != s.per_degree.rend(); ++it) {
    out << it->first << '\t' << it->second.planes << '\t' << it->second.extractions << '\n';
  }
  out << "inequalities\t" << s.inequalities << '\n';
  out << "total_steps\t" << s.total_steps << '\n';
  out << "steps_to_quadric\t" << opt_count(s.steps_to_quadric) << '\n';
  out << "largest_product\t" << dec(s.largest_product) << '\n';
}

std::string sharpen_report_to_json(const SharpenReport& report, int indent) { return report_json(report).dump(indent); }

std::string sweep_to_json(const SweepResult& sweep, int indent) {
  json reports = json::array();
  for (const auto& r : sweep.reports) reports.push_back(report_json(r));
  json table = json::array();
  for (const auto& [r, e] : sweep.table.entries()) {
    table.push_back({{"r", r}, {"H", dec(e.value)}, {"provenance", std::string(to_string(e.provenance))}});
  }
  return json{{"reports", reports}, {"table", table}, {"table_id", sweep.table.fingerprint()}}.dump(indent);
}

void write_sharpen_table(std::ostream& out, const SharpenReport& r) {
  out << "r = " << r.r << ", table H(r) = " << dec(r.table_value) << "\n";
  out << "l | bound | largest product | steps | steps to quadric | candidate\n";
  for (const auto& p : r.probes) {
    out << dec(p.level) << " | " << dec(p.f_bound) << " | " << dec(p.largest_product) << " | " << p.stats.inequalities
        << " | " << opt_count(p.stats.steps_to_quadric) << " | " << dec(p.candidate) << "\n";
  }
  out << "best " << dec(r.best_bound) << " (" << r.best_source() << ", " << to_string(r.status) << ")";
  if (!r.message.empty()) out << ": " << r.message;
  out << "\n";
}

void write_sharpen_csv(std::ostream& out, const SharpenReport& r) {
  out << "r,level,bound,largest_product,steps,steps_to_quadric,candidate\n";
  for (const auto& p : r.probes) {
    out << r.r << ',' << dec(p.level) << ',' << dec(p.f_bound) << ',' << dec(p.largest_product) << ','
        << p.stats.inequalities << ',' << opt_count(p.stats.steps_to_quadric) << ',' << dec(p.candidate) << '\n';
  }
}

std::string verdicts_to_json(const std::vector<GroupVerdict>& verdicts, int indent) {
  json arr = json::array();
  for (const auto& v : verdicts) {
    json item = {{"name", v.name},
                 {"claimed_level", dec(v.claimed_level)},
                 {"f_bound", dec(v.f_bound)},
                 {"f_target", dec(v.f_target)},
                 {"ok", v.ok},
                 {"freeness_checked", std::string(to_string(v.freeness))},
                 {"class", std::string(to_string(v.row_class))}};
    if (v.freeness_holds) item["freeness_holds"] = *v.freeness_holds;
    if (!v.error.empty()) item["error"] = v.error;
    if (v.certificate) item["stats"] = stats_json(v.certificate->stats);
    arr.push_back(std::move(item));
  }
  return arr.dump(indent);
}

}  // namespace rdb
