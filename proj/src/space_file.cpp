// Space-file parsing, validation (order saturation, sup and open-list checks)
// and canonical emission.
#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "engine.hpp"
#include "irrtopo/spaces.hpp"

namespace irrtopo {

namespace {

constexpr Index kNone = CellOrder::kNone;

struct Line {
  int number;
  std::vector<std::string> words;
};

bool is_ident(std::string_view w) {
  if (w.empty() || !(std::isalpha(static_cast<unsigned char>(w[0])) || w[0] == '_')) return false;
  return std::all_of(w.begin(), w.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'';
  });
}

// Splits into lines (newline or ';'), drops comments and tokenizes. Quoted
// strings stay one word, quotes included.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  int number = 1;
  Line cur{1, {}};
  std::string word;
  bool quoted = false;
  bool comment = false;
  auto flush_word = [&] {
    if (!word.empty()) cur.words.push_back(std::move(word));
    word.clear();
  };
  auto flush_line = [&] {
    flush_word();
    if (!cur.words.empty()) out.push_back(std::move(cur));
    cur = Line{number, {}};
  };
  for (char ch : text) {
    if (ch == '\n') {
      if (quoted) throw ParseError(number, "closing quote");
      comment = false;
      ++number;
      flush_line();
      continue;
    }
    if (comment) continue;
    if (quoted) {
      word += ch;
      if (ch == '"') quoted = false;
      continue;
    }
    if (ch == '#') {
      comment = true;
    } else if (ch == ';') {
      flush_line();
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      flush_word();
    } else {
      if (ch == '"') quoted = true;
      word += ch;
    }
  }
  if (quoted) throw ParseError(number, "closing quote");
  flush_line();
  return out;
}

Index parse_nat(const std::string& w, int line) {
  if (w.empty() || w.size() > 17 || !std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError(line, "natural number");
  return std::stoll(w);
}

struct ElemRef {
  std::string id;
  std::optional<Index> at;
};

ElemRef parse_elem_ref(const std::string& w, int line) {
  const auto atpos = w.find('@');
  ElemRef r{w.substr(0, atpos), std::nullopt};
  if (!is_ident(r.id)) throw ParseError(line, "element <id> or <id>@<nat>");
  if (atpos != std::string::npos) r.at = parse_nat(w.substr(atpos + 1), line);
  return r;
}

RationalEnd parse_end(const std::string& value, const std::string& kind, int line) {
  RationalEnd e;
  if (kind == "unbounded") return e;
  if (kind == "open")
    e.kind = RationalEnd::Kind::Excluded;
  else if (kind == "closed")
    e.kind = RationalEnd::Kind::Included;
  else
    throw ParseError(line, "open, closed or unbounded");
  try {
    e.value = Rational::parse(value);
  } catch (const std::invalid_argument&) {
    throw ParseError(line, "rational endpoint");
  }
  return e;
}

void add_relation(SpacePresentation& s, const ElemRef& x, const ElemRef& y, int line) {
  auto need = [&](const ElemRef& r) {
    const bool as_point = !r.at && s.point_index(r.id) >= 0;
    const bool as_chain = r.at && s.chain_index(r.id) >= 0;
    if (!as_point && !as_chain)
      throw ValidationError(ValidationError::Kind::UnknownCell, "line " + std::to_string(line) + ": unknown element '" +
                                                                    r.id + (r.at ? "@" + std::to_string(*r.at) : "") + "'");
  };
  need(x);
  need(y);
  if (!x.at && !y.at) {
    s.relations.push_back(PointBelowPoint{x.id, y.id});
  } else if (!x.at) {
    s.relations.push_back(PointBelowChainAt{x.id, y.id, *y.at});
  } else if (!y.at) {
    s.relations.push_back(ChainAtBelowPoint{x.id, *x.at, y.id});
  } else if (x.id != y.id) {
    throw ValidationError(ValidationError::Kind::UnsupportedRelation,
                          "line " + std::to_string(line) + ": relations between two chains must go through a finite point");
  } else if (*x.at > *y.at) {
    throw ValidationError(ValidationError::Kind::NotAntisymmetric,
                          "line " + std::to_string(line) + ": " + x.id + "@" + std::to_string(*x.at) +
                              " <= " + y.id + "@" + std::to_string(*y.at) + " contradicts the chain order");
  }
}

void saturate(SpacePresentation& s) {
  const std::size_t nf = s.points.size();
  const std::size_t nc = s.chains.size();
  CellOrder& o = s.order;
  o.leq.assign(nf, std::vector<bool>(nf, false));
  o.lo.assign(nf, std::vector<Index>(nc, kInf));
  o.hi.assign(nc, std::vector<Index>(nf, kNone));
  for (std::size_t p = 0; p < nf; ++p) o.leq[p][p] = true;
  for (const auto& r : s.relations) {
    std::visit(
        [&](const auto& rel) {
          using T = std::decay_t<decltype(rel)>;
          if constexpr (std::is_same_v<T, PointBelowPoint>) {
            o.leq[s.point_index(rel.below)][s.point_index(rel.above)] = true;
          } else if constexpr (std::is_same_v<T, PointBelowChainAt>) {
            Index& v = o.lo[s.point_index(rel.point)][s.chain_index(rel.cell)];
            v = std::min(v, rel.index);
          } else if constexpr (std::is_same_v<T, ChainAtBelowPoint>) {
            Index& v = o.hi[s.chain_index(rel.cell)][s.point_index(rel.point)];
            if (v != kInf) v = std::max(v, rel.index);
          } else {
            o.hi[s.chain_index(rel.cell)][s.point_index(rel.point)] = kInf;
          }
        },
        r);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < nf; ++k)
      for (std::size_t i = 0; i < nf; ++i)
        if (o.leq[i][k])
          for (std::size_t j = 0; j < nf; ++j)
            if (o.leq[k][j] && !o.leq[i][j]) o.leq[i][j] = changed = true;
    for (std::size_t p = 0; p < nf; ++p)
      for (std::size_t q = 0; q < nf; ++q) {
        if (!o.leq[p][q]) continue;
        for (std::size_t c = 0; c < nc; ++c) {
          if (o.lo[q][c] < o.lo[p][c]) o.lo[p][c] = o.lo[q][c], changed = true;
          if (o.hi[c][p] > o.hi[c][q]) o.hi[c][q] = o.hi[c][p], changed = true;
        }
      }
    for (std::size_t p = 0; p < nf; ++p)
      for (std::size_t q = 0; q < nf; ++q)
        for (std::size_t c = 0; c < nc && !o.leq[p][q]; ++c)
          if (o.lo[p][c] != kInf && o.hi[c][q] >= o.lo[p][c]) o.leq[p][q] = changed = true;
  }
  for (std::size_t p = 0; p < nf; ++p) {
    for (std::size_t q = p + 1; q < nf; ++q)
      if (o.leq[p][q] && o.leq[q][p])
        throw ValidationError(ValidationError::Kind::NotAntisymmetric,
                              "points " + s.points[p] + " and " + s.points[q] + " are below each other");
    for (std::size_t c = 0; c < nc; ++c)
      if (o.lo[p][c] != kInf && o.hi[c][p] >= o.lo[p][c])
        throw ValidationError(ValidationError::Kind::NotAntisymmetric,
                              "point " + s.points[p] + " is equivalent to " + s.chains[c] + "@" + std::to_string(o.lo[p][c]));
  }
}

void check_sups(const SpacePresentation& s) {
  for (const auto& d : s.sups) {
    const int c = s.chain_index(d.chain);
    const int p = s.point_index(d.point);
    if (c < 0 || p < 0) throw ValidationError(ValidationError::Kind::UnknownCell, "sup " + d.chain + " = " + d.point);
    CellSet chain = CellSet::none(s.points.size(), s.chains.size());
    chain.chains[c] = IndexSet::all();
    const auto out = cells::sup(s, chain);
    if (!out.sup || *out.sup != Elem{-1, p})
      throw ValidationError(ValidationError::Kind::SupNotLUB,
                            "declared sup " + d.point + " of chain " + d.chain + " is not its least upper bound");
  }
}

void check_declared_opens(const SpacePresentation& s) {
  if (s.declared_opens.empty()) return;
  const std::size_t n = s.points.size();
  std::vector<std::vector<bool>> opens;
  for (const auto& names : s.declared_opens) {
    std::vector<bool> u(n, false);
    for (const auto& id : names) {
      const int p = s.point_index(id);
      if (p < 0) throw ValidationError(ValidationError::Kind::UnknownCell, "open lists unknown point '" + id + "'");
      u[p] = true;
    }
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (u[p] && s.order.leq[p][q] && !u[q])
          throw ValidationError(ValidationError::Kind::TopologyMismatch,
                                "declared open contains " + s.points[p] + " but not " + s.points[q] + " above it");
    opens.push_back(std::move(u));
  }
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<bool> minimal(n, true);
    for (const auto& u : opens)
      if (u[x])
        for (std::size_t q = 0; q < n; ++q) minimal[q] = minimal[q] && u[q];
    for (std::size_t q = 0; q < n; ++q)
      if (minimal[q] != s.order.leq[x][q])
        throw ValidationError(ValidationError::Kind::TopologyMismatch,
                              "declared opens do not generate the Alexandroff topology at " + s.points[x]);
  }
}

void build_topology(SpacePresentation& s) {
  if (s.kind == SpaceKind::FinitePoset) s.topology = TopologyDescriptor{BaseTopology::Alexandroff, 0};
  if (s.kind == SpaceKind::RationalChain) {
    s.rational_topology = RationalTopology{s.topology.base == BaseTopology::Alexandroff};
    for (int i = 0; i < s.topology.level; ++i) s.rational_topology = rat::si_step(s, s.rational_topology);
    return;
  }
  CellTopology t;
  t.upper_base = s.topology.base == BaseTopology::Upper;
  if (s.topology.base == BaseTopology::Scott) {
    for (std::size_t c = 0; c < s.chains.size(); ++c) {
      CellSet chain = CellSet::none(s.points.size(), s.chains.size());
      chain.chains[c] = IndexSet::all();
      if (auto sp = cells::sup(s, chain).sup) t.constraints.push_back(Constraint{*sp, chain});
    }
  }
  for (int i = 0; i < s.topology.level; ++i) t = cells::si_step(s, t);
  s.cell_topology = std::move(t);
}

const char* kind_word(SpaceKind k) {
  switch (k) {
    case SpaceKind::FinitePoset: return "finite";
    case SpaceKind::VSpace: return "vspace";
    case SpaceKind::RationalChain: return "rational";
  }
  return "finite";
}

const char* base_word(BaseTopology b) {
  switch (b) {
    case BaseTopology::Alexandroff: return "alexandroff";
    case BaseTopology::Scott: return "scott";
    case BaseTopology::Upper: return "upper";
  }
  return "alexandroff";
}

std::string end_text(const RationalEnd& e, const char* inf) {
  switch (e.kind) {
    case RationalEnd::Kind::Included: return e.value.str() + " closed";
    case RationalEnd::Kind::Excluded: return e.value.str() + " open";
    case RationalEnd::Kind::Unbounded: break;
  }
  return std::string(inf) + " unbounded";
}

}  // namespace

int SpacePresentation::point_index(std::string_view n) const {
  const auto it = std::find(points.begin(), points.end(), n);
  return it == points.end() ? -1 : static_cast<int>(it - points.begin());
}

int SpacePresentation::chain_index(std::string_view n) const {
  const auto it = std::find(chains.begin(), chains.end(), n);
  return it == chains.end() ? -1 : static_cast<int>(it - chains.begin());
}

Interval SpacePresentation::carrier() const { return rat::carrier(*this); }

SpacePresentation parse_presentation(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "'space' header");
  SpacePresentation s;
  {
    const Line& h = lines.front();
    const auto& w = h.words;
    if (w[0] != "space" || w.size() < 2) throw ParseError(h.number, "'space (finite|vspace|rational)'");
    if (w[1] == "finite")
      s.kind = SpaceKind::FinitePoset;
    else if (w[1] == "vspace")
      s.kind = SpaceKind::VSpace;
    else if (w[1] == "rational")
      s.kind = SpaceKind::RationalChain;
    else
      throw ParseError(h.number, "finite, vspace or rational");
    if (w.size() == 4 && w[2] == "name" && w[3].size() >= 2 && w[3].front() == '"' && w[3].back() == '"')
      s.name = w[3].substr(1, w[3].size() - 2);
    else if (w.size() != 2)
      throw ParseError(h.number, "optional 'name \"<str>\"'");
  }
  std::set<std::string> names;
  auto fresh = [&](const std::string& id, int line) {
    if (!is_ident(id)) throw ParseError(line, "identifier");
    if (!names.insert(id).second) throw ParseError(line, "fresh identifier instead of '" + id + "'");
  };
  bool saw_interval = false;
  bool saw_topology = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const int ln = lines[i].number;
    const auto& w = lines[i].words;
    const std::string& kw = w[0];
    const bool rational = s.kind == SpaceKind::RationalChain;
    if (kw == "points" && !rational) {
      if (w.size() < 2) throw ParseError(ln, "at least one point identifier");
      for (std::size_t j = 1; j < w.size(); ++j) {
        fresh(w[j], ln);
        s.points.push_back(w[j]);
      }
    } else if (kw == "chain" && s.kind == SpaceKind::VSpace) {
      if (w.size() != 2) throw ParseError(ln, "'chain <id>'");
      fresh(w[1], ln);
      s.chains.push_back(w[1]);
    } else if (kw == "rel" && !rational) {
      if (w.size() == 4 && w[1] == "chain_below") {
        if (s.chain_index(w[2]) < 0 || s.point_index(w[3]) < 0)
          throw ValidationError(ValidationError::Kind::UnknownCell,
                                "line " + std::to_string(ln) + ": chain_below needs a chain and a point");
        s.relations.push_back(ChainBelowPoint{w[2], w[3]});
      } else if (w.size() == 4 && w[2] == "<=") {
        add_relation(s, parse_elem_ref(w[1], ln), parse_elem_ref(w[3], ln), ln);
      } else {
        throw ParseError(ln, "'rel <elem> <= <elem>' or 'rel chain_below <chain> <point>'");
      }
    } else if (kw == "sup" && s.kind == SpaceKind::VSpace) {
      if (w.size() != 4 || w[2] != "=") throw ParseError(ln, "'sup <chain> = <point>'");
      s.sups.push_back(SupDeclaration{w[1], w[3]});
    } else if (kw == "interval" && rational) {
      if (w.size() != 5 || saw_interval) throw ParseError(ln, "one 'interval <lo> <kind> <hi> <kind>'");
      s.lo = parse_end(w[1], w[2], ln);
      s.hi = parse_end(w[3], w[4], ln);
      saw_interval = true;
    } else if (kw == "topology") {
      if (saw_topology) throw ParseError(ln, "a single topology line");
      saw_topology = true;
      if (w.size() != 2 && !(w.size() == 4 && w[2] == "derived")) throw ParseError(ln, "'topology <base> [derived <n>]'");
      if (w[1] == "alexandroff")
        s.topology.base = BaseTopology::Alexandroff;
      else if (w[1] == "scott")
        s.topology.base = BaseTopology::Scott;
      else if (w[1] == "upper")
        s.topology.base = BaseTopology::Upper;
      else
        throw ParseError(ln, "alexandroff, scott or upper");
      if (w.size() == 4) s.topology.level = static_cast<int>(std::min<Index>(parse_nat(w[3], ln), 64));
    } else if (kw == "open" && s.kind == SpaceKind::FinitePoset) {
      s.declared_opens.emplace_back(w.begin() + 1, w.end());
    } else {
      throw ParseError(ln, "a statement valid for a " + std::string(kind_word(s.kind)) + " space");
    }
  }
  if (s.kind == SpaceKind::RationalChain && !saw_interval) throw ParseError(lines.back().number, "'interval' line");
  return validate(std::move(s));
}

SpacePresentation validate(SpacePresentation s) {
  switch (s.kind) {
    case SpaceKind::FinitePoset:
      if (s.points.empty()) throw ValidationError(ValidationError::Kind::UnknownCell, "finite space without points");
      if (!s.chains.empty()) throw ValidationError(ValidationError::Kind::UnsupportedRelation, "finite space with chains");
      break;
    case SpaceKind::VSpace:
      if (s.chains.empty()) throw ValidationError(ValidationError::Kind::UnknownCell, "vspace without chains");
      break;
    case SpaceKind::RationalChain:
      if (s.lo.kind != RationalEnd::Kind::Unbounded && s.hi.kind != RationalEnd::Kind::Unbounded &&
          !(s.lo.value < s.hi.value))
        throw ValidationError(ValidationError::Kind::DegenerateCarrier, "rational carrier needs lo < hi");
      build_topology(s);
      return s;
  }
  saturate(s);
  check_sups(s);
  check_declared_opens(s);
  build_topology(s);
  return s;
}

std::string emit_presentation(const SpacePresentation& s) {
  std::ostringstream o;
  o << "space " << kind_word(s.kind);
  if (!s.name.empty()) o << " name \"" << s.name << "\"";
  o << "\n";
  if (!s.points.empty()) {
    o << "points";
    for (const auto& p : s.points) o << " " << p;
    o << "\n";
  }
  for (const auto& c : s.chains) o << "chain " << c << "\n";
  for (const auto& r : s.relations) {
    std::visit(
        [&](const auto& rel) {
          using T = std::decay_t<decltype(rel)>;
          if constexpr (std::is_same_v<T, PointBelowPoint>)
            o << "rel " << rel.below << " <= " << rel.above << "\n";
          else if constexpr (std::is_same_v<T, PointBelowChainAt>)
            o << "rel " << rel.point << " <= " << rel.cell << "@" << rel.index << "\n";
          else if constexpr (std::is_same_v<T, ChainAtBelowPoint>)
            o << "rel " << rel.cell << "@" << rel.index << " <= " << rel.point << "\n";
          else
            o << "rel chain_below " << rel.cell << " " << rel.point << "\n";
        },
        r);
  }
  for (const auto& d : s.sups) o << "sup " << d.chain << " = " << d.point << "\n";
  if (s.kind == SpaceKind::RationalChain) o << "interval " << end_text(s.lo, "-inf") << " " << end_text(s.hi, "inf") << "\n";
  for (const auto& u : s.declared_opens) {
    o << "open";
    for (const auto& p : u) o << " " << p;
    o << "\n";
  }
  o << "topology " << base_word(s.topology.base);
  if (s.topology.level > 0) o << " derived " << s.topology.level;
  o << "\n";
  return o.str();
}

}  // namespace irrtopo
