#include <algorithm>
#include <cstdint>

#include "engine.hpp"

namespace irrtopo::cells {

namespace {

constexpr Index kNone = CellOrder::kNone;
constexpr std::size_t kMaxEnumeratedPoints = 20;

std::size_t nf(const SpacePresentation& s) { return s.points.size(); }
std::size_t nc(const SpacePresentation& s) { return s.chains.size(); }

CellSet none(const SpacePresentation& s) { return CellSet::none(nf(s), nc(s)); }

// Points above every member of `sources` (finite points q with hi[c][q] >= k).
CellSet up_of_chain_elem(const SpacePresentation& s, int c, Index k) {
  CellSet out = none(s);
  out.chains[c] = IndexSet::tail(k);
  std::vector<Index> best(nc(s), kInf);
  for (std::size_t q = 0; q < nf(s); ++q) {
    if (s.order.hi[c][q] < k) continue;
    out.points[q] = true;
    for (std::size_t d = 0; d < nc(s); ++d) best[d] = std::min(best[d], s.order.lo[q][d]);
  }
  for (std::size_t d = 0; d < nc(s); ++d)
    if (static_cast<int>(d) != c && best[d] != kInf) out.chains[d] = out.chains[d] | IndexSet::tail(best[d]);
  return out;
}

IndexSet prefix(Index h) {
  if (h == kNone) return {};
  if (h == kInf) return IndexSet::all();
  return IndexSet::range(0, h);
}

// Down-closure contributed by the finite points selected by `pick`.
template <class Pick>
CellSet down_through_points(const SpacePresentation& s, int own_chain, Pick pick) {
  CellSet out = none(s);
  std::vector<Index> best(nc(s), kNone);
  for (std::size_t q = 0; q < nf(s); ++q) {
    if (!pick(q)) continue;
    out.points[q] = true;
    for (std::size_t d = 0; d < nc(s); ++d) best[d] = std::max(best[d], s.order.hi[d][q]);
  }
  for (std::size_t d = 0; d < nc(s); ++d)
    if (static_cast<int>(d) != own_chain) out.chains[d] = out.chains[d] | prefix(best[d]);
  return out;
}

}  // namespace

bool leq(const SpacePresentation& s, const Elem& x, const Elem& y) {
  const auto& o = s.order;
  if (x.finite() && y.finite()) return o.leq[x.at][y.at];
  if (x.finite()) return o.lo[x.at][y.chain] <= y.at;
  if (y.finite()) return o.hi[x.chain][y.at] >= x.at;
  if (x.chain == y.chain) return x.at <= y.at;
  for (std::size_t p = 0; p < nf(s); ++p)
    if (o.hi[x.chain][p] >= x.at && o.lo[p][y.chain] <= y.at) return true;
  return false;
}

bool contains(const CellSet& e, const Elem& x) {
  return x.finite() ? static_cast<bool>(e.points[x.at]) : e.chains[x.chain].contains(x.at);
}

CellSet single(const SpacePresentation& s, const Elem& x) {
  CellSet out = none(s);
  if (x.finite())
    out.points[x.at] = true;
  else
    out.chains[x.chain] = IndexSet::single(x.at);
  return out;
}

CellSet up_of(const SpacePresentation& s, const Elem& x) {
  if (!x.finite()) return up_of_chain_elem(s, x.chain, x.at);
  CellSet out = none(s);
  for (std::size_t q = 0; q < nf(s); ++q) out.points[q] = s.order.leq[x.at][q];
  for (std::size_t d = 0; d < nc(s); ++d)
    if (s.order.lo[x.at][d] != kInf) out.chains[d] = IndexSet::tail(s.order.lo[x.at][d]);
  return out;
}

CellSet down_of(const SpacePresentation& s, const Elem& x) {
  if (x.finite()) {
    CellSet out = none(s);
    for (std::size_t q = 0; q < nf(s); ++q) out.points[q] = s.order.leq[q][x.at];
    for (std::size_t d = 0; d < nc(s); ++d) out.chains[d] = prefix(s.order.hi[d][x.at]);
    return out;
  }
  CellSet out = down_through_points(s, x.chain, [&](std::size_t q) { return s.order.lo[q][x.chain] <= x.at; });
  out.chains[x.chain] = IndexSet::range(0, x.at);
  return out;
}

CellSet down_of_chain(const SpacePresentation& s, int chain) {
  CellSet out = down_through_points(s, chain, [&](std::size_t q) { return s.order.lo[q][chain] != kInf; });
  out.chains[chain] = IndexSet::all();
  return out;
}

CellSet up_set(const SpacePresentation& s, const CellSet& e) {
  CellSet out = none(s);
  for (std::size_t p = 0; p < nf(s); ++p)
    if (e.points[p]) out = out | up_of(s, Elem{-1, static_cast<Index>(p)});
  for (std::size_t c = 0; c < nc(s); ++c)
    if (auto m = e.chains[c].min()) out = out | up_of(s, Elem{static_cast<int>(c), *m});
  return out;
}

CellSet down_set(const SpacePresentation& s, const CellSet& e) {
  CellSet out = none(s);
  for (std::size_t p = 0; p < nf(s); ++p)
    if (e.points[p]) out = out | down_of(s, Elem{-1, static_cast<Index>(p)});
  for (std::size_t c = 0; c < nc(s); ++c) {
    if (e.chains[c].empty()) continue;
    if (e.chains[c].infinite())
      out = out | down_of_chain(s, static_cast<int>(c));
    else
      out = out | down_of(s, Elem{static_cast<int>(c), *e.chains[c].max()});
  }
  return out;
}

bool is_upper(const SpacePresentation& s, const CellSet& e) { return up_set(s, e) == e; }

CellSet upper_bounds(const SpacePresentation& s, const CellSet& e) {
  CellSet out = CellSet::all(nf(s), nc(s));
  for (std::size_t p = 0; p < nf(s); ++p)
    if (e.points[p]) out = out & up_of(s, Elem{-1, static_cast<Index>(p)});
  for (std::size_t c = 0; c < nc(s); ++c) {
    if (e.chains[c].empty()) continue;
    if (!e.chains[c].infinite()) {
      out = out & up_of(s, Elem{static_cast<int>(c), *e.chains[c].max()});
      continue;
    }
    CellSet ub = none(s);
    for (std::size_t q = 0; q < nf(s); ++q)
      if (s.order.hi[c][q] == kInf) ub = ub | up_of(s, Elem{-1, static_cast<Index>(q)});
    out = out & ub;
  }
  return out;
}

namespace {

// Finite points of the set plus the least element of every chain part.
std::vector<Elem> lower_generators(const CellSet& e) {
  std::vector<Elem> out;
  for (std::size_t p = 0; p < e.points.size(); ++p)
    if (e.points[p]) out.push_back(Elem{-1, static_cast<Index>(p)});
  for (std::size_t c = 0; c < e.chains.size(); ++c)
    if (auto m = e.chains[c].min()) out.push_back(Elem{static_cast<int>(c), *m});
  return out;
}

}  // namespace

std::optional<Elem> maximum(const SpacePresentation& s, const CellSet& e) {
  std::vector<Elem> cands;
  for (std::size_t p = 0; p < nf(s); ++p)
    if (e.points[p]) cands.push_back(Elem{-1, static_cast<Index>(p)});
  for (std::size_t c = 0; c < nc(s); ++c)
    if (auto m = e.chains[c].max()) cands.push_back(Elem{static_cast<int>(c), *m});
  for (const auto& m : cands)
    if (e.subset_of(down_of(s, m))) return m;
  return std::nullopt;
}

SupOutcome sup(const SpacePresentation& s, const CellSet& e) {
  SupOutcome out;
  const CellSet ub = upper_bounds(s, e);
  if (ub.empty()) return out;
  out.bounded = true;
  const auto cands = lower_generators(ub);
  for (const auto& m : cands)
    if (ub.subset_of(up_of(s, m))) {
      out.sup = m;
      return out;
    }
  std::vector<Elem> minimal;
  for (const auto& m : cands) {
    bool above_other = false;
    for (const auto& o : cands)
      if (o != m && leq(s, o, m)) above_other = true;
    if (!above_other) minimal.push_back(m);
  }
  if (minimal.size() >= 2) out.pair = std::make_pair(minimal[0], minimal[1]);
  return out;
}

CellSet closure(const SpacePresentation& s, const CellTopology& t, const CellSet& e) {
  CellSet c = down_set(s, e);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& k : t.constraints) {
      if (k.set.subset_of(c) && !contains(c, k.sup)) {
        c = c | down_of(s, k.sup);
        changed = true;
      }
    }
    if (!t.upper_base) continue;
    for (std::size_t ch = 0; ch < nc(s); ++ch) {
      if (c.chains[ch] != IndexSet::all()) continue;
      CellSet meet = CellSet::all(nf(s), nc(s));
      for (std::size_t q = 0; q < nf(s); ++q)
        if (s.order.hi[ch][q] == kInf) meet = meet & down_of(s, Elem{-1, static_cast<Index>(q)});
      if (!meet.subset_of(c)) {
        c = c | meet;
        changed = true;
      }
    }
  }
  return c;
}

bool is_open(const SpacePresentation& s, const CellTopology& t, const CellSet& u) {
  if (!is_upper(s, u)) return false;
  if (t.upper_base && closure(s, CellTopology{true, {}}, u.complement()) != u.complement()) return false;
  for (const auto& k : t.constraints)
    if (contains(u, k.sup) && !u.meets(k.set)) return false;
  return true;
}

Reps representatives(const SpacePresentation& s, const CellTopology& t, std::span<const CellSet> extra) {
  std::vector<std::vector<Index>> raw(nc(s));
  auto note_set = [&](const CellSet& e) {
    for (std::size_t c = 0; c < nc(s); ++c) e.chains[c].breakpoints(raw[c]);
  };
  for (std::size_t c = 0; c < nc(s); ++c)
    for (std::size_t p = 0; p < nf(s); ++p) {
      if (s.order.lo[p][c] != kInf) raw[c].push_back(s.order.lo[p][c]);
      if (s.order.hi[c][p] != kInf && s.order.hi[c][p] != kNone) raw[c].push_back(s.order.hi[c][p]);
    }
  for (const auto& k : t.constraints) {
    if (!k.sup.finite()) raw[k.sup.chain].push_back(k.sup.at);
    note_set(k.set);
  }
  for (const auto& e : extra) note_set(e);
  Reps reps(nc(s));
  for (std::size_t c = 0; c < nc(s); ++c) {
    std::vector<Index>& r = reps[c];
    r = {0, 1};
    for (Index v : raw[c])
      for (Index d = -1; d <= 1; ++d)
        if (v + d >= 0) r.push_back(v + d);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
  }
  return reps;
}

std::vector<CellSet> representative_opens(const SpacePresentation& s, const CellTopology& t, const Reps& reps) {
  if (nf(s) > kMaxEnumeratedPoints)
    throw DomainError(DomainError::Kind::UnsupportedKind, "exact open enumeration supports at most 20 finite points");
  const std::size_t n = nf(s);
  std::vector<std::uint32_t> upmask(n, 0);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      if (s.order.leq[p][q]) upmask[p] |= 1u << q;

  std::vector<CellSet> out;
  std::vector<std::size_t> choice(nc(s), 0);  // 0 = no tail, i = reps[c][i-1]
  for (;;) {
    CellSet tails = none(s);
    for (std::size_t c = 0; c < nc(s); ++c)
      if (choice[c] > 0) tails.chains[c] = IndexSet::tail(reps[c][choice[c] - 1]);
    const CellSet closed_up = up_set(s, tails);
    if (closed_up.chains == tails.chains) {
      std::uint32_t forced = 0;
      for (std::size_t p = 0; p < n; ++p)
        if (closed_up.points[p]) forced |= 1u << p;
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if ((mask & forced) != forced) continue;
        bool ok = true;
        for (std::size_t p = 0; p < n && ok; ++p) {
          if (!(mask >> p & 1u)) continue;
          if ((upmask[p] & mask) != upmask[p]) ok = false;
          for (std::size_t d = 0; d < nc(s) && ok; ++d) {
            const Index l = s.order.lo[p][d];
            if (l != kInf && !tails.chains[d].contains(l)) ok = false;
          }
        }
        if (!ok) continue;
        CellSet u = tails;
        for (std::size_t p = 0; p < n; ++p) u.points[p] = (mask >> p) & 1u;
        if (is_open(s, t, u)) out.push_back(std::move(u));
      }
    }
    std::size_t c = 0;
    for (; c < nc(s); ++c) {
      if (++choice[c] <= reps[c].size()) break;
      choice[c] = 0;
    }
    if (c == nc(s)) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

bool chain_nested(const SpacePresentation& s, const CellSet& e) {
  int chain_used = -1;
  for (std::size_t c = 0; c < nc(s); ++c) {
    if (e.chains[c].empty()) continue;
    if (chain_used >= 0) return false;
    chain_used = static_cast<int>(c);
  }
  std::vector<std::size_t> pts;
  for (std::size_t p = 0; p < nf(s); ++p)
    if (e.points[p]) pts.push_back(p);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (!s.order.leq[pts[i]][pts[j]] && !s.order.leq[pts[j]][pts[i]]) return false;
  if (chain_used < 0) return true;
  for (std::size_t p : pts) {
    const Index h = s.order.hi[chain_used][p];
    const Index l = s.order.lo[p][chain_used];
    IndexSet comparable = prefix(h);
    if (l != kInf) comparable = comparable | IndexSet::tail(l);
    if (!e.chains[chain_used].subset_of(comparable)) return false;
  }
  return true;
}

std::size_t element_count_at_most_one(const CellSet& e) {
  std::size_t n = 0;
  for (bool b : e.points) n += b ? 1 : 0;
  for (const auto& c : e.chains) {
    if (c.empty()) continue;
    if (c.infinite() || c.runs().size() > 1 || c.runs()[0].first != c.runs()[0].second) return 2;
    ++n;
  }
  return n;
}

}  // namespace

IrrOutcome irreducible(const SpacePresentation& s, const CellTopology& t, const CellSet& e) {
  if (e.empty()) throw DomainError(DomainError::Kind::EmptySet, "irreducibility is defined for nonempty sets");
  IrrOutcome out;
  if (element_count_at_most_one(e) == 1) {
    out.irreducible = true;
    out.rule = "Singleton";
    out.trace = "a singleton meets two opens only inside their intersection";
    return out;
  }
  if (maximum(s, e)) {
    out.irreducible = true;
    out.rule = "DirectedWithMax";
    out.trace = "every open meeting the set contains its maximum";
    return out;
  }
  if (chain_nested(s, e)) {
    out.irreducible = true;
    out.rule = "ChainNested";
    out.trace = "the set is totally ordered, so the upper-set opens restricted to it are nested";
    return out;
  }
  const CellSet extra[] = {e};
  const auto opens = representative_opens(s, t, representatives(s, t, extra));
  std::vector<const CellSet*> meeting;
  for (const auto& u : opens)
    if (u.meets(e)) meeting.push_back(&u);
  for (std::size_t i = 0; i < meeting.size(); ++i)
    for (std::size_t j = i + 1; j < meeting.size(); ++j)
      if (!(*meeting[i] & *meeting[j]).meets(e)) {
        out.irreducible = false;
        out.rule = "PairwiseOpenCheck";
        out.u1 = *meeting[i];
        out.u2 = *meeting[j];
        out.trace = "two opens meet the set but their intersection does not";
        return out;
      }
  out.irreducible = true;
  out.rule = "PairwiseOpenCheck";
  out.trace = std::to_string(meeting.size()) + " representative opens meet the set; all " +
              std::to_string(meeting.size() * (meeting.size() ? meeting.size() - 1 : 0) / 2) +
              " pairs meet it jointly";
  return out;
}

std::vector<ClosedIrreducible> closed_irreducibles(const SpacePresentation& s, const CellTopology& t,
                                                   std::span<const CellSet> extra) {
  const auto opens = representative_opens(s, t, representatives(s, t, extra));
  std::vector<ClosedIrreducible> out;
  for (const auto& u : opens) {
    CellSet c = u.complement();
    if (c.empty() || !irreducible(s, t, c).irreducible) continue;
    ClosedIrreducible ci{c, sup(s, c), maximum(s, c)};
    out.push_back(std::move(ci));
  }
  return out;
}

CellTopology si_step(const SpacePresentation& s, const CellTopology& t) {
  CellTopology next = t;
  for (const auto& ci : closed_irreducibles(s, t)) {
    if (!ci.sup.sup || ci.max) continue;
    Constraint k{*ci.sup.sup, ci.set};
    if (std::find(next.constraints.begin(), next.constraints.end(), k) == next.constraints.end())
      next.constraints.push_back(std::move(k));
  }
  std::sort(next.constraints.begin(), next.constraints.end(), [](const Constraint& a, const Constraint& b) {
    return std::tie(a.sup, a.set) < std::tie(b.sup, b.set);
  });
  return next;
}

std::vector<Elem> schema_elems(const SpacePresentation& s, const CellTopology& t) {
  std::vector<Elem> out;
  for (std::size_t p = 0; p < nf(s); ++p) out.push_back(Elem{-1, static_cast<Index>(p)});
  const auto reps = representatives(s, t, {});
  for (std::size_t c = 0; c < nc(s); ++c)
    for (Index k : reps[c]) out.push_back(Elem{static_cast<int>(c), k});
  return out;
}

}  // namespace irrtopo::cells
