#include <algorithm>
#include <random>

#include "engine.hpp"
#include "irrtopo/derive.hpp"
#include "irrtopo/nets.hpp"
#include "irrtopo/waybelow.hpp"

namespace irrtopo {

namespace {

using Kind = ValueTerm::Kind;

ValueTerm const_term(const PointId& p) {
  ValueTerm t;
  t.point = p;
  return t;
}

ValueTerm chain_term(const std::string& c) {
  ValueTerm t;
  t.kind = Kind::ChainAscent;
  t.cell = c;
  return t;
}

ValueTerm ascent_term(const Rational& q) {
  ValueTerm t;
  t.kind = Kind::RationalAscent;
  t.target = q;
  return t;
}

ValueTerm interleave_term(ValueTerm a, ValueTerm b) {
  ValueTerm t;
  t.kind = Kind::Interleave;
  t.parts = {std::move(a), std::move(b)};
  return t;
}

NetSpec omega_net(ValueTerm t) { return NetSpec{IndexOrder::naturals(), std::move(t)}; }

NetSpec explicit_net(IndexOrder index, std::vector<PointId> table) {
  NetSpec n;
  n.index = std::move(index);
  n.values.kind = Kind::Explicit;
  n.values.table = std::move(table);
  return n;
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

NetSpec random_explicit(std::mt19937_64& rng, const std::vector<PointId>& points, std::size_t max_size) {
  const std::size_t size = 1 + pick(rng, max_size);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < size; ++i) names.push_back("i" + std::to_string(i));
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      if (i != j && pick(rng, 3) == 0) pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
  std::vector<PointId> table;
  for (std::size_t i = 0; i < size; ++i) table.push_back(points[pick(rng, points.size())]);
  return explicit_net(IndexOrder::generated(names, pairs), std::move(table));
}

std::vector<Rational> ascent_targets(const SpacePresentation& s) {
  std::vector<Rational> out;
  for (const auto& q : rat::schema_rationals(s)) {
    const auto m = rat::minimum(s);
    if (!(m && *m == q)) out.push_back(q);
  }
  const Interval c = s.carrier();
  if (c.hi.finite() && !c.hi.is_closed() && c.hi.at.is_rational()) out.push_back(c.hi.at.a());
  return out;
}

// Subnets of a finite index: maps from one- and two-element chains that pass
// both subnet clauses.
std::vector<SubnetSpec> finite_subnets(const IndexOrder& index) {
  std::vector<SubnetSpec> out;
  const std::size_t n = index.elements.size();
  for (std::size_t a = 0; a < n; ++a) {
    SubnetSpec one;
    one.kind = SubnetSpec::Kind::ExplicitMap;
    one.domain = IndexOrder::chain({"s0"});
    one.targets = {index.elements[a]};
    if (check_subnet(index, one).proven()) out.push_back(one);
    for (std::size_t b = 0; b < n; ++b) {
      SubnetSpec two = one;
      two.domain = IndexOrder::chain({"s0", "s1"});
      two.targets = {index.elements[a], index.elements[b]};
      if (a != b && check_subnet(index, two).proven()) out.push_back(two);
    }
  }
  return out;
}

std::vector<SubnetSpec> subnets_for(const NetSpec& n, const Battery& b) {
  return n.index.omega ? b.omega_subnets : finite_subnets(n.index);
}

struct Budget {
  std::size_t left;
  bool spend() {
    if (left == 0) return false;
    --left;
    return true;
  }
};

std::string config(const NetSpec& n, const PointId& y) { return "net " + format_net(n) + " to " + to_string(y); }

AxiomResult inconclusive(std::size_t cases, std::size_t budget) {
  return {AxiomResult::Status::Inconclusive, cases, "budget of " + std::to_string(budget) + " decisions exhausted"};
}

AxiomResult check_constants(const SpacePresentation& s, const Battery& b, std::size_t budget) {
  Budget left{budget};
  AxiomResult r;
  for (const auto& p : b.points) {
    if (!left.spend()) return inconclusive(r.cases, budget);
    ++r.cases;
    const NetSpec n = omega_net(const_term(p));
    if (!irr_converges(s, n, p).verdict.proven()) return {AxiomResult::Status::Violated, r.cases, config(n, p)};
  }
  return r;
}

AxiomResult check_subnets(const SpacePresentation& s, const Battery& b, std::size_t budget) {
  Budget left{budget};
  AxiomResult r;
  for (const auto& n : b.nets)
    for (const auto& y : b.points) {
      if (!left.spend()) return inconclusive(r.cases, budget);
      if (!irr_converges(s, n, y).verdict.proven()) continue;
      for (const auto& sub : subnets_for(n, b)) {
        if (!left.spend()) return inconclusive(r.cases, budget);
        ++r.cases;
        const NetSpec m = apply_subnet(s, n, sub);
        if (!irr_converges(s, m, y).verdict.proven())
          return {AxiomResult::Status::Violated, r.cases, config(n, y) + " converges but subnet " + format_subnet(sub) + " does not"};
      }
    }
  return r;
}

AxiomResult check_divergence(const SpacePresentation& s, const Battery& b, std::size_t budget) {
  Budget left{budget};
  AxiomResult r;
  for (const auto& n : b.nets)
    for (const auto& y : b.points) {
      if (!left.spend()) return inconclusive(r.cases, budget);
      if (irr_converges(s, n, y).verdict.proven()) continue;
      ++r.cases;
      std::vector<NetSpec> firsts{n};
      for (const auto& sub : subnets_for(n, b)) firsts.push_back(apply_subnet(s, n, sub));
      bool found = false;
      std::string blocked;
      for (const auto& m : firsts) {
        bool all_diverge = true;
        std::vector<NetSpec> seconds{m};
        for (const auto& sub : subnets_for(m, b)) seconds.push_back(apply_subnet(s, m, sub));
        for (const auto& k : seconds) {
          if (!left.spend()) return inconclusive(r.cases, budget);
          if (irr_converges(s, k, y).verdict.proven()) {
            all_diverge = false;
            if (blocked.empty()) blocked = format_net(k);
            break;
          }
        }
        if (all_diverge) {
          found = true;
          break;
        }
      }
      if (!found)
        return {AxiomResult::Status::Violated, r.cases,
                config(n, y) + " does not converge, yet every battery subnet has a further subnet converging to it, e.g. " + blocked};
    }
  return r;
}

// Product net over I x M for an outer net indexed by I and inner nets indexed
// by J(i), with M the product of the J(i) ordered pointwise.
NetSpec diagonal_net(const NetSpec& outer, const std::vector<NetSpec>& inner) {
  const std::size_t ni = outer.index.elements.size();
  std::vector<std::vector<std::size_t>> funcs{{}};
  for (std::size_t i = 0; i < ni; ++i) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& f : funcs)
      for (std::size_t j = 0; j < inner[i].index.elements.size(); ++j) {
        auto g = f;
        g.push_back(j);
        next.push_back(std::move(g));
      }
    funcs = std::move(next);
  }
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> elems;
  std::vector<PointId> table;
  for (std::size_t i = 0; i < ni; ++i)
    for (std::size_t f = 0; f < funcs.size(); ++f) {
      std::string name = outer.index.elements[i] + "|";
      for (std::size_t k = 0; k < ni; ++k) name += (k ? "," : "") + inner[k].index.elements[funcs[f][k]];
      names.push_back(name);
      elems.emplace_back(i, f);
      table.push_back(inner[i].values.table[funcs[f][i]]);
    }
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) {
      const auto& [ia, fa] = elems[a];
      const auto& [ib, fb] = elems[b];
      if (!outer.index.leq[ia][ib]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < ni && ok; ++k) ok = inner[k].index.leq[funcs[fa][k]][funcs[fb][k]];
      if (ok && a != b) pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  return explicit_net(IndexOrder::generated(names, pairs), std::move(table));
}

AxiomResult check_iterated(const SpacePresentation& s, const Battery& b, const BatteryConfig& cfg) {
  Budget left{cfg.budget};
  AxiomResult r;
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<NetSpec> small;
  for (const auto& n : b.nets)
    if (!n.index.omega && n.index.elements.size() <= 3) small.push_back(n);
  const std::size_t configs = cfg.size == BatteryConfig::Size::Small ? 24 : 96;
  for (std::size_t c = 0; c < configs && !small.empty(); ++c) {
    const NetSpec& outer = small[pick(rng, small.size())];
    const PointId z = b.points[pick(rng, b.points.size())];
    if (!left.spend()) return inconclusive(r.cases, cfg.budget);
    if (!irr_converges(s, outer, z).verdict.proven()) continue;
    std::vector<NetSpec> inner;
    for (const auto& y : outer.values.table) {
      std::vector<const NetSpec*> pool;
      for (const auto& n : small) {
        if (!left.spend()) return inconclusive(r.cases, cfg.budget);
        if (irr_converges(s, n, y).verdict.proven()) pool.push_back(&n);
      }
      inner.push_back(pool.empty() ? explicit_net(IndexOrder::chain({"j0"}), {y}) : *pool[pick(rng, pool.size())]);
    }
    ++r.cases;
    const NetSpec diag = diagonal_net(outer, inner);
    if (!irr_converges(s, diag, z).verdict.proven()) {
      std::string detail = "outer " + config(outer, z) + "; inner";
      for (const auto& n : inner) detail += " " + format_net(n);
      return {AxiomResult::Status::Violated, r.cases, detail + "; the product net does not converge"};
    }
  }
  // Omega outer nets with constant inner nets: the product net is the outer net.
  for (const auto& n : b.nets) {
    if (!n.index.omega) continue;
    for (const auto& z : b.points) {
      if (!left.spend()) return inconclusive(r.cases, cfg.budget);
      if (!irr_converges(s, n, z).verdict.proven()) continue;
      ++r.cases;
      if (!irr_converges(s, n, z).verdict.proven())
        return {AxiomResult::Status::Violated, r.cases, config(n, z) + " with constant inner nets"};
    }
  }
  return r;
}

}  // namespace

const char* to_string(AxiomResult::Status s) {
  switch (s) {
    case AxiomResult::Status::HoldsOnBattery: return "holds-on-battery";
    case AxiomResult::Status::Violated: return "violated";
    case AxiomResult::Status::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

const char* to_string(MainVerdict::Conclusion c) {
  switch (c) {
    case MainVerdict::Conclusion::Topological: return "Topological";
    case MainVerdict::Conclusion::NotTopological: return "NotTopological";
    case MainVerdict::Conclusion::OutOfTheoremScope: return "OutOfTheoremScope";
  }
  return "OutOfTheoremScope";
}

Battery make_battery(const SpacePresentation& s, const BatteryConfig& cfg) {
  const bool large = cfg.size == BatteryConfig::Size::Large;
  Battery b;
  b.points = schema_points(s);
  for (const auto& p : b.points) b.nets.push_back(omega_net(const_term(p)));
  const std::size_t const_mix = large ? b.points.size() : std::min<std::size_t>(3, b.points.size());
  if (s.kind == SpaceKind::VSpace) {
    for (const auto& c : s.chains) b.nets.push_back(omega_net(chain_term(c)));
    for (std::size_t i = 0; i < s.chains.size(); ++i)
      for (std::size_t j = 0; j < s.chains.size(); ++j)
        if (i < j || (large && i != j)) b.nets.push_back(omega_net(interleave_term(chain_term(s.chains[i]), chain_term(s.chains[j]))));
    for (std::size_t p = 0; p < const_mix; ++p)
      for (const auto& c : s.chains) b.nets.push_back(omega_net(interleave_term(const_term(b.points[p]), chain_term(c))));
  }
  if (s.kind == SpaceKind::RationalChain) {
    const auto qs = ascent_targets(s);
    for (const auto& q : qs) b.nets.push_back(omega_net(ascent_term(q)));
    for (std::size_t i = 0; i < qs.size(); ++i)
      for (std::size_t j = i + 1; j < qs.size(); ++j)
        if (large || j == i + 1) b.nets.push_back(omega_net(interleave_term(ascent_term(qs[i]), ascent_term(qs[j]))));
    if (!qs.empty())
      for (std::size_t p = 0; p < const_mix; ++p)
        b.nets.push_back(omega_net(interleave_term(const_term(b.points[p]), ascent_term(qs.back()))));
  }
  std::mt19937_64 rng(cfg.seed);
  const std::size_t explicit_count = large ? 48 : 12;
  for (std::size_t i = 0; i < explicit_count; ++i) b.nets.push_back(random_explicit(rng, b.points, 4));
  for (auto [a, c] : std::vector<std::pair<Index, Index>>{{1, 0}, {1, 1}, {2, 0}, {2, 1}, {3, 2}}) {
    SubnetSpec sub;
    sub.a = a;
    sub.b = c;
    b.omega_subnets.push_back(sub);
  }
  return b;
}

KelleyReport kelley_check(const SpacePresentation& s, const BatteryConfig& cfg) {
  const Battery b = make_battery(s, cfg);
  KelleyReport r;
  r.constants = check_constants(s, b, cfg.budget);
  r.subnets = check_subnets(s, b, cfg.budget);
  r.divergence = check_divergence(s, b, cfg.budget);
  r.iterated_limits = check_iterated(s, b, cfg);
  return r;
}

MainVerdict main_verdict(const SpacePresentation& s, const BatteryConfig& cfg) {
  MainVerdict v;
  v.irr_continuous = is_irr_continuous(s).continuous;
  v.k_bounded_sober = sobriety_spectrum(s).k_bounded_sober;
  if (!v.k_bounded_sober.proven())
    v.conclusion = MainVerdict::Conclusion::OutOfTheoremScope;
  else
    v.conclusion = v.irr_continuous.proven() ? MainVerdict::Conclusion::Topological : MainVerdict::Conclusion::NotTopological;
  const Battery b = make_battery(s, cfg);
  for (const auto& n : b.nets)
    for (const auto& y : b.points) {
      const bool irr = irr_converges(s, n, y).verdict.proven();
      const bool topo = topo_converges(s, n, y, 0).proven();
      if (irr == topo)
        ++v.agreements;
      else
        v.disagreements.push_back({format_net(n), to_string(y), irr, topo});
    }
  return v;
}

}  // namespace irrtopo
