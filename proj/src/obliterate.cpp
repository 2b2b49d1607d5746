#include "rdb/obliterate.hpp"

#include <mutex>
#include <sstream>

namespace rdb {
namespace {

struct Greedy {
  std::vector<Natural> remaining;
  std::vector<unsigned long> taken;
  Natural product = 1;
  unsigned long count = 0;
};

// The extraction loop, with the R(n) <= l check replaced by
// n <= cap where cap = max{n : R(n) <= l}.
Greedy greedy(const TypeSeq& m, const Natural& cap, Strategy strategy) {
  Greedy g;
  g.remaining.assign(m.entries().begin(), m.entries().end());
  g.taken.assign(g.remaining.size(), 0);
  Natural cand;
  std::size_t i = g.remaining.size();
  while (i > 0) {
    const std::size_t k = i - 1;
    if (g.remaining[k] == 0) {
      --i;
      continue;
    }
    cand = g.product * static_cast<unsigned long>(k + 2);
    if (cand <= cap) {
      g.product = cand;
      g.remaining[k] -= 1;
      ++g.taken[k];
      ++g.count;
    } else if (strategy == Strategy::GreedyContinue) {
      --i;
    } else {
      break;
    }
  }
  return g;
}

TypeSeq taken_type(const std::vector<unsigned long>& taken) {
  std::vector<Natural> e;
  e.reserve(taken.size());
  for (unsigned long t : taken) e.emplace_back(t);
  return TypeSeq(std::move(e));
}

QuadricPlan plan_with_cap(const Natural& cap, const Natural& m2) {
  QuadricPlan p;
  if (m2 == 0) return p;
  // cap >= 2 because R(2) = 1 <= l.
  const Natural bmax = static_cast<unsigned long>(bit_length(cap) - 1);
  p.b = m2 < bmax ? m2 : bmax;
  mpz_fdiv_qr(p.q.get_mpz_t(), p.r_rem.get_mpz_t(), m2.get_mpz_t(), p.b.get_mpz_t());
  p.value = binomial(p.q, 2) * p.b * p.b + p.q * p.b * (p.r_rem + 1) + p.r_rem;
  return p;
}

Natural pow2(const Natural& b) {
  Natural out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, b.get_ui());
  return out;
}

void require_level(const Level& level, const RdBoundFn& rdfn, const TypeSeq& m) {
  if (m.empty()) return;
  const unsigned top = *m.top_degree();
  Natural r = rdfn.rd(top);
  if (r > level.value()) throw LevelTooLow(level.value(), top, r);
}

class Evaluator {
 public:
  Evaluator(const Level& level, const RdBoundFn& rdfn, const EvalOptions& opts)
      : level_(level), rdfn_(rdfn), opts_(opts), cap_(rdfn.max_degree_at(level.value())) {}

  BoundCertificate run(const Natural& j0, const TypeSeq& type) {
    cert_.level = level_;
    cert_.j = j0;
    cert_.type = type;
    cert_.strategy = opts_.strategy;
    cert_.quadric_fastpath = opts_.quadric_fastpath;
    cert_.table_id = rdfn_.table().fingerprint();
    m_ = type;
    j_ = j0;
    acc_ = 0;

    require_level(level_, rdfn_, m_);
    if (!m_.empty() && j_ > 0) planes();
    while (!m_.empty()) {
      if (m_.is_pure_quadric()) {
        if (!cert_.stats.steps_to_quadric) cert_.stats.steps_to_quadric = cert_.stats.inequalities;
        if (opts_.quadric_fastpath) {
          fast_path();
          return std::move(cert_);
        }
      }
      const unsigned deg = *m_.top_degree();
      Greedy g = greedy(m_, cap_, opts_.strategy);
      if (g.count == 0) throw LevelTooLow(level_.value(), deg, rdfn_.rd(deg));
      tick();
      TypeSeq remaining(std::move(g.remaining));
      if (tracing()) record(step::Extract{taken_type(g.taken), g.product, Natural(g.count)});
      if (g.product > cert_.stats.largest_product) cert_.stats.largest_product = g.product;
      m_ = std::move(remaining);
      j_ = g.count;
      if (m_.empty()) break;
      ++cert_.stats.per_degree[deg].extractions;
      ++cert_.stats.inequalities;
      planes();
    }
    tick();
    if (tracing()) record(step::BaseCase{j_});
    cert_.value = acc_ + j_;
    return std::move(cert_);
  }

 private:
  bool tracing() const { return !cert_.elided; }

  void tick() {
    if (cert_.stats.total_steps >= opts_.max_steps) throw StepBudgetExceeded(opts_.max_steps, cert_.stats);
    ++cert_.stats.total_steps;
  }

  void record(Step s) {
    if (cert_.steps.size() >= opts_.trace_limit) {
      cert_.steps.clear();
      cert_.steps.shrink_to_fit();
      cert_.elided = true;
      return;
    }
    cert_.steps.push_back(std::move(s));
  }

  void planes() {
    const unsigned deg = *m_.top_degree();
    tick();
    Natural offset = prefix_norm_sum(m_, j_) + j_;
    TypeSeq out = endo(m_, j_);
    if (tracing()) record(step::PlanesFromPts{j_, m_, out, offset});
    ++cert_.stats.per_degree[deg].planes;
    ++cert_.stats.inequalities;
    acc_ += offset;
    m_ = std::move(out);
    j_ = 0;
  }

  void fast_path() {
    tick();
    QuadricPlan p = plan_with_cap(cap_, m_.at(2));
    Natural block = pow2(p.b);
    if (block > cert_.stats.largest_product) cert_.stats.largest_product = block;
    cert_.value = acc_ + p.value;
    if (tracing()) record(step::QuadricFastPath{p.b, p.q, p.r_rem, p.value});
  }

  const Level& level_;
  const RdBoundFn& rdfn_;
  const EvalOptions& opts_;
  Natural cap_;
  BoundCertificate cert_;
  TypeSeq m_;
  Natural j_;
  Natural acc_;
};

template <class... Fs>
struct Overload : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

std::string node_text(const std::string& lvl, const ChainNode& n) {
  std::string s = "f^" + lvl + "_" + to_decimal(n.j) + "(" + (n.type.empty() ? "0" : n.type.to_string()) + ")";
  if (n.offset != 0) s += " + " + to_decimal(n.offset);
  return s;
}

}  // namespace

Level::Level(Natural value) : value_(std::move(value)) {
  if (value_ < 1) throw DomainError("level must be at least 1");
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Greedy: return "paper";
    case Strategy::GreedyContinue: return "greedy-continue";
    case Strategy::Lines: return "lines";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "paper") return Strategy::Greedy;
  if (text == "greedy-continue") return Strategy::GreedyContinue;
  if (text == "lines") return Strategy::Lines;
  throw ParseError("unknown strategy '" + std::string(text) + "'");
}

std::string_view step_tag(const Step& s) {
  return std::visit(Overload{
                        [](const step::Extract&) { return std::string_view("extract"); },
                        [](const step::PlanesFromPts&) { return std::string_view("planes_from_pts"); },
                        [](const step::QuadricFastPath&) { return std::string_view("quadric_fast_path"); },
                        [](const step::BaseCase&) { return std::string_view("base_case"); },
                        [](const step::CoarseLine&) { return std::string_view("coarse_line"); },
                    },
                    s);
}

LevelTooLow::LevelTooLow(const Natural& level, unsigned degree, const Natural& rd_value)
    : Error("level " + to_decimal(level) + " is below R(" + std::to_string(degree) + ") = " + to_decimal(rd_value)),
      degree_(degree) {}

StepBudgetExceeded::StepBudgetExceeded(std::uint64_t budget, EvalStats partial)
    : Error("step budget of " + std::to_string(budget) + " exceeded"), partial_(std::move(partial)) {}

Extraction extract(const Level& level, const RdBoundFn& rdfn, const Natural& j, const TypeSeq& m, Strategy strategy) {
  if (m.empty()) throw DomainError("nothing to extract from the zero type");
  Greedy g = greedy(m, rdfn.max_degree_at(level.value()), strategy);
  if (g.count == 0) {
    const unsigned top = *m.top_degree();
    throw LevelTooLow(level.value(), top, rdfn.rd(top));
  }
  return Extraction{j + g.count, TypeSeq(std::move(g.remaining)), g.product, taken_type(g.taken)};
}

PlanesResult planes_from_pts(const Natural& j, const TypeSeq& m) {
  if (j < 1) throw DomainError("planes_from_pts needs j >= 1");
  return PlanesResult{endo(m, j), prefix_norm_sum(m, j) + j};
}

QuadricPlan quadric_plan(const Level& level, const RdBoundFn& rdfn, const Natural& m2) {
  return plan_with_cap(rdfn.max_degree_at(level.value()), m2);
}

Natural quadric_bound(const Level& level, const RdBoundFn& rdfn, const Natural& m2) {
  return quadric_plan(level, rdfn, m2).value;
}

BoundCertificate bound_f(const Level& level, const RdBoundFn& rdfn, const Natural& j, const TypeSeq& m,
                         const EvalOptions& opts) {
  if (opts.strategy == Strategy::Lines) return coarse_certificate(level, rdfn, j, m);
  std::string key;
  if (opts.cache) {
    key = MemoCache::key(rdfn, opts, level, j, m);
    if (auto hit = opts.cache->find(key)) return *hit;
  }
  BoundCertificate cert = Evaluator(level, rdfn, opts).run(j, m);
  if (opts.cache) opts.cache->insert(key, std::make_shared<const BoundCertificate>(cert));
  return cert;
}

PlanesResult line_reduction(const TypeSeq& m) {
  if (m.empty()) throw DomainError("line reduction of the zero type");
  const unsigned n = *m.top_degree();
  const Natural& mn = m.at(n);
  std::vector<Natural> out(n - 2);
  for (unsigned d = 2; d < n; ++d) {
    Natural v = Natural(n - d) * binomial(mn + (n - 1 - d), n + 1 - d);
    for (unsigned i = d; i < n; ++i) {
      if (m.at(i) != 0) v += binomial(mn + (i - d) - 1, i - d) * m.at(i);
    }
    out[d - 2] = std::move(v);
  }
  Natural offset = Natural(n - 1) * binomial(mn + (n - 2), n) + mn;
  for (unsigned i = 2; i < n; ++i) {
    if (m.at(i) != 0) offset += binomial(mn + (i - 2), i - 1) * m.at(i);
  }
  return PlanesResult{TypeSeq(std::move(out)), std::move(offset)};
}

BoundCertificate coarse_certificate(const Level& level, const RdBoundFn& rdfn, const Natural& j, const TypeSeq& m) {
  BoundCertificate cert;
  cert.level = level;
  cert.j = j;
  cert.type = m;
  cert.strategy = Strategy::Lines;
  cert.quadric_fastpath = false;
  cert.table_id = rdfn.table().fingerprint();
  require_level(level, rdfn, m);

  TypeSeq cur = m;
  Natural acc = 0;
  Natural jj = j;
  if (!cur.empty() && jj > 0) {
    const unsigned deg = *cur.top_degree();
    PlanesResult p = planes_from_pts(jj, cur);
    cert.steps.push_back(step::PlanesFromPts{jj, cur, p.type, p.offset});
    ++cert.stats.per_degree[deg].planes;
    ++cert.stats.inequalities;
    acc += p.offset;
    cur = std::move(p.type);
    jj = 0;
  }
  while (!cur.empty()) {
    PlanesResult red = line_reduction(cur);
    cert.steps.push_back(step::CoarseLine{cur, red.type, red.offset});
    ++cert.stats.inequalities;
    acc += red.offset;
    cur = std::move(red.type);
  }
  cert.steps.push_back(step::BaseCase{jj});
  cert.stats.total_steps = cert.steps.size();
  cert.value = acc + jj;
  return cert;
}

Natural coarse_bound_f(const Level& level, const RdBoundFn& rdfn, const Natural& j, const TypeSeq& m) {
  return coarse_certificate(level, rdfn, j, m).value;
}

Natural replay(const BoundCertificate& cert, const RdBoundFn* rdfn) {
  if (cert.elided) throw ReplayError("certificate trace was elided; rerun with a full trace to replay");
  if (rdfn && rdfn->table().fingerprint() != cert.table_id) {
    throw ReplayError("certificate was produced with table " + cert.table_id + ", not " +
                      rdfn->table().fingerprint());
  }
  const Natural& lvl = cert.level.value();
  TypeSeq m = cert.type;
  Natural j = cert.j;
  Natural acc = 0;
  std::optional<Natural> result;
  std::size_t index = 0;
  auto fail = [&index](const std::string& why) { return ReplayError("step " + std::to_string(index) + ": " + why); };

  for (const Step& s : cert.steps) {
    if (result) throw fail("step after the end of the chain");
    std::visit(Overload{
                   [&](const step::Extract& e) {
                     if (e.extracted.empty()) throw fail("empty extraction");
                     if (!leq(e.extracted, m)) throw fail("extracted forms are not present");
                     if (e.j_after != j + norm(e.extracted)) throw fail("j does not advance by the extracted count");
                     if (e.product != degree_product(e.extracted)) throw fail("product mismatch");
                     if (rdfn && rdfn->rd(e.product) > lvl) throw fail("R(product) exceeds the level");
                     m = sub(m, e.extracted);
                     j = e.j_after;
                   },
                   [&](const step::PlanesFromPts& p) {
                     if (p.j != j || j < 1) throw fail("planes step at the wrong j");
                     if (p.input != m) throw fail("planes step input differs from the current type");
                     if (p.output != endo(m, j)) throw fail("endomorphism mismatch");
                     if (p.offset != prefix_norm_sum(m, j) + j) throw fail("offset mismatch");
                     acc += p.offset;
                     m = p.output;
                     j = 0;
                   },
                   [&](const step::QuadricFastPath& q) {
                     if (j != 0 || !m.is_pure_quadric()) throw fail("fast path needs quadrics at j = 0");
                     if (q.b < 1 || q.r_rem >= q.b || q.q * q.b + q.r_rem != m.at(2)) throw fail("bad division");
                     if (q.value != binomial(q.q, 2) * q.b * q.b + q.q * q.b * (q.r_rem + 1) + q.r_rem) {
                       throw fail("quadric value mismatch");
                     }
                     if (rdfn && rdfn->rd(pow2(q.b)) > lvl) throw fail("R(2^b) exceeds the level");
                     result = acc + q.value;
                   },
                   [&](const step::BaseCase& b) {
                     if (!m.empty()) throw fail("base case on a nonzero type");
                     if (b.j != j) throw fail("base case j mismatch");
                     result = acc + j;
                   },
                   [&](const step::CoarseLine& c) {
                     if (j != 0 || c.input != m || m.empty()) throw fail("line step input differs");
                     if (rdfn) {
                       const unsigned top = *m.top_degree();
                       if (rdfn->rd(top) > lvl) throw fail("R(top degree) exceeds the level");
                     }
                     PlanesResult red = line_reduction(m);
                     if (red.type != c.output || red.offset != c.offset) throw fail("line reduction mismatch");
                     acc += c.offset;
                     m = c.output;
                   },
               },
               s);
    ++index;
  }
  if (!result) throw ReplayError("chain does not end in a base case");
  if (*result != cert.value) {
    throw ReplayError("replayed value " + to_decimal(*result) + " differs from " + to_decimal(cert.value));
  }
  return *result;
}

std::vector<ChainNode> chain_nodes(const BoundCertificate& cert) {
  std::vector<ChainNode> nodes;
  nodes.push_back({cert.j, cert.type, 0});
  for (const Step& s : cert.steps) {
    const ChainNode& last = nodes.back();
    if (auto* e = std::get_if<step::Extract>(&s)) {
      nodes.push_back({e->j_after, sub(last.type, e->extracted), last.offset});
    } else if (auto* p = std::get_if<step::PlanesFromPts>(&s)) {
      nodes.push_back({0, p->output, last.offset + p->offset});
    } else if (auto* c = std::get_if<step::CoarseLine>(&s)) {
      nodes.push_back({0, c->output, last.offset + c->offset});
    }
  }
  return nodes;
}

std::string render_chain(const BoundCertificate& cert) {
  const std::string lvl = to_decimal(cert.level.value());
  if (cert.elided) {
    return node_text(lvl, {cert.j, cert.type, 0}) + " <= " + to_decimal(cert.value) + " (trace elided after " +
           std::to_string(cert.stats.total_steps) + " steps)";
  }
  std::string out;
  for (const ChainNode& n : chain_nodes(cert)) {
    if (!out.empty()) out += " <= ";
    out += node_text(lvl, n);
  }
  const bool fast = !cert.steps.empty() && std::holds_alternative<step::QuadricFastPath>(cert.steps.back());
  out += (fast ? " <= " : " = ") + to_decimal(cert.value);
  return out;
}

std::shared_ptr<const BoundCertificate> MemoCache::find(const std::string& key) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : it->second;
}

void MemoCache::insert(const std::string& key, std::shared_ptr<const BoundCertificate> cert) {
  std::unique_lock lock(mutex_);
  entries_.emplace(key, std::move(cert));
}

std::size_t MemoCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

std::string MemoCache::key(const RdBoundFn& rdfn, const EvalOptions& opts, const Level& level, const Natural& j,
                           const TypeSeq& m) {
  std::ostringstream k;
  k << rdfn.table().fingerprint() << '|' << to_string(opts.strategy) << '|' << (opts.quadric_fastpath ? 'q' : '-')
    << '|' << to_decimal(level.value()) << '|' << to_decimal(j) << '|' << m.to_string();
  return k.str();
}

}  // namespace rdb
