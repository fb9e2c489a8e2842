#include "irrtopo/derive.hpp"

#include <algorithm>

#include "engine.hpp"

namespace irrtopo {

namespace {

std::vector<std::string> cell_fingerprint(const SpacePresentation& s, const CellTopology& t) {
  const auto opens = cells::representative_opens(s, t, cells::representatives(s, t, {}));
  std::vector<std::string> out;
  for (const auto& u : opens) out.push_back(format_set(s, DefinableSet(u)));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> rational_fingerprint(const SpacePresentation&, const RationalTopology& t) {
  std::vector<std::string> out{"empty", "all", "(q,->) for q in the carrier"};
  if (t.closed_rays) out.push_back("[q,->) for q in the carrier");
  return out;
}

// Opens of `coarse` and `fine` compared on representatives refined by both.
std::optional<CellSet> cell_open_lost(const SpacePresentation& s, const CellTopology& fine, const CellTopology& coarse) {
  CellTopology both = coarse;
  both.constraints.insert(both.constraints.end(), fine.constraints.begin(), fine.constraints.end());
  const auto reps = cells::representatives(s, both, {});
  for (const auto& u : cells::representative_opens(s, fine, reps))
    if (!cells::is_open(s, coarse, u)) return u;
  return std::nullopt;
}

SpacePresentation with_cells(const SpacePresentation& s, CellTopology t, int level) {
  SpacePresentation out = s;
  out.cell_topology = std::move(t);
  out.topology.level = level;
  return out;
}

bool has_max(const ClosedIrreducibleInfo& c, const SpacePresentation& s) {
  return c.sup.exists() && contains(s, c.set, *c.sup.value);
}

}  // namespace

Verdict si_open(const SpacePresentation& s, const DefinableSet& u) {
  if (!is_open(s, u)) return Verdict::refuted("the set is not open in the base topology", u);
  for (const auto& c : closed_irreducibles(s, {u})) {
    if (!c.sup.exists() || !contains(s, u, *c.sup.value) || c.set.meets(u)) continue;
    return Verdict::refuted("closed irreducible " + format_set(s, c.set) + " has supremum " + to_string(*c.sup.value) +
                                " in the set but misses it",
                            c.set);
  }
  return Verdict::proven("open, and every closed irreducible with supremum inside meets it");
}

SpacePresentation si_derivative(const SpacePresentation& s) {
  SpacePresentation out = s;
  switch (s.kind) {
    case SpaceKind::FinitePoset:
      return out;
    case SpaceKind::VSpace:
      return with_cells(s, cells::si_step(s, s.cell_topology), s.topology.level + 1);
    case SpaceKind::RationalChain:
      out.rational_topology = rat::si_step(s, s.rational_topology);
      out.topology.level = s.topology.level + 1;
      return out;
  }
  return out;
}

std::vector<std::string> topology_fingerprint(const SpacePresentation& s) {
  return s.is_cells() ? cell_fingerprint(s, s.cell_topology) : rational_fingerprint(s, s.rational_topology);
}

IterationTrace si_iterate(const SpacePresentation& s, int bound) {
  if (bound < 1) throw DomainError(DomainError::Kind::IndexOutOfRange, "iteration bound must be at least 1");
  IterationTrace trace;
  trace.bound = bound;
  SpacePresentation cur = s;
  for (int k = 0; k <= bound; ++k) {
    trace.stages.push_back({cur.topology.level, topology_fingerprint(cur)});
    if (has_si_infty_property(cur).proven()) {
      trace.gamma = k;
      return trace;
    }
    if (k == bound) break;
    cur = si_derivative(cur);
  }
  return trace;
}

Verdict has_si_infty_property(const SpacePresentation& s) {
  if (s.kind == SpaceKind::FinitePoset) return Verdict::proven("finite: every closed irreducible set has a maximum");
  if (s.kind == SpaceKind::RationalChain) {
    if (!s.rational_topology.closed_rays)
      return Verdict::proven("open rays only: closed sets without maximum have no supremum in the carrier");
    for (const auto& q : rat::schema_rationals(s)) {
      const auto m = rat::minimum(s);
      if (m && *m == q) continue;
      const IntervalSet u(Interval{Endpoint::closed(q), s.carrier().hi});
      return Verdict::refuted("[" + q.str() + ",->) is open but contains the supremum of the closed chain below " + q.str(),
                              DefinableSet(u));
    }
    return Verdict::proven("the carrier has no point above its minimum");
  }
  const CellTopology next = cells::si_step(s, s.cell_topology);
  if (auto lost = cell_open_lost(s, s.cell_topology, next))
    return Verdict::refuted(format_set(s, DefinableSet(*lost)) + " is open but not SI-open", DefinableSet(*lost));
  return Verdict::proven("every representative open is SI-open; the topology is its own SI derivative");
}

SobrietyReport sobriety_spectrum(const SpacePresentation& s) {
  SobrietyReport r;
  r.sober = Verdict::proven("every closed irreducible set has a maximum, so it is a point closure");
  r.bounded_sober = Verdict::proven("every bounded closed irreducible set has a maximum");
  r.k_bounded_sober = Verdict::proven("every closed irreducible set with a supremum has a maximum");
  for (const auto& c : closed_irreducibles(s)) {
    if (has_max(c, s)) continue;
    const std::string shown = format_set(s, c.set);
    if (r.sober.proven()) {
      r.sober = Verdict::refuted("closed irreducible " + shown + " is not the closure of a point", c.set);
      r.witnesses.emplace("sober", c.set);
    }
    if (r.bounded_sober.proven() && c.sup.kind != SupResult::Kind::NoUpperBound) {
      r.bounded_sober = Verdict::refuted("closed irreducible " + shown + " is bounded above but not a point closure", c.set);
      r.witnesses.emplace("bounded_sober", c.set);
    }
    if (r.k_bounded_sober.proven() && c.sup.exists()) {
      r.k_bounded_sober = Verdict::refuted("closed irreducible " + shown + " has supremum " + to_string(*c.sup.value) +
                                               " outside it, so it is not a point closure",
                                           c.set);
      r.witnesses.emplace("k_bounded_sober", c.set);
    }
  }
  return r;
}

Verdict sobriety_crosscheck(const SpacePresentation& s) {
  const bool kb = sobriety_spectrum(s).k_bounded_sober.proven();
  const bool si = has_si_infty_property(s).proven();
  const std::string both = std::string("k-bounded sober: ") + (kb ? "yes" : "no") + ", SI-infinity: " + (si ? "yes" : "no");
  if (kb == si) return Verdict::proven(both);
  return Verdict::refuted("disagreement (" + both + ")");
}

}  // namespace irrtopo
