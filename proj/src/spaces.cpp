#include "irrtopo/spaces.hpp"

#include <algorithm>
#include <cctype>

#include "engine.hpp"

namespace irrtopo {

namespace {

std::string_view trim(std::string_view t) {
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  return t;
}

// Splits on `sep` outside parentheses, brackets and braces.
std::vector<std::string_view> split_top(std::string_view t, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const char ch = t[i];
    if (ch == '(' || ch == '[' || ch == '{') ++depth;
    if (ch == ')' || ch == ']' || ch == '}') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(trim(t.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(t.substr(start)));
  return out;
}

[[noreturn]] void bad_set(std::string_view atom, const std::string& why) {
  throw DomainError(DomainError::Kind::PointNotInCarrier, "cannot read set atom '" + std::string(atom) + "': " + why);
}

Index parse_index(std::string_view t, std::string_view atom) {
  t = trim(t);
  if (t.empty() || t.size() > 17 || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    bad_set(atom, "expected a natural number");
  return std::stoll(std::string(t));
}

int chain_arg(const SpacePresentation& s, std::string_view name, std::string_view atom) {
  const int c = s.chain_index(trim(name));
  if (c < 0) bad_set(atom, "unknown chain");
  return c;
}

Endpoint parse_bound(std::string_view t, bool closed, bool lower, std::string_view atom) {
  t = trim(t);
  if (t == (lower ? "-inf" : "inf") || t == (lower ? "-oo" : "oo")) {
    if (closed) bad_set(atom, "an infinite end must be open");
    return Endpoint::infinite();
  }
  try {
    const Quadratic q = Quadratic::parse(t);
    return closed ? Endpoint::closed(q) : Endpoint::open(q);
  } catch (const std::invalid_argument& e) {
    bad_set(atom, e.what());
  }
}

CellSet parse_cell_atom(const SpacePresentation& s, std::string_view atom) {
  const std::size_t nf = s.points.size(), nc = s.chains.size();
  CellSet out = CellSet::none(nf, nc);
  if (atom == "all") return CellSet::all(nf, nc);
  if (atom == "empty") return out;
  if (atom.front() == '{' && atom.back() == '}') {
    const auto body = trim(atom.substr(1, atom.size() - 2));
    if (body.empty()) return out;
    for (auto item : split_top(body, ',')) out = out | cells::single(s, to_elem(s, parse_point(s, item)));
    return out;
  }
  const auto open = atom.find('(');
  if (open == std::string_view::npos || atom.back() != ')') bad_set(atom, "unknown atom");
  const auto head = trim(atom.substr(0, open));
  const auto args = split_top(atom.substr(open + 1, atom.size() - open - 2), ',');
  if (head == "chain" && args.size() == 1) {
    out.chains[chain_arg(s, args[0], atom)] = IndexSet::all();
  } else if (head == "tail" && args.size() == 2) {
    out.chains[chain_arg(s, args[0], atom)] = IndexSet::tail(parse_index(args[1], atom));
  } else if (head == "seg" && args.size() == 3) {
    out.chains[chain_arg(s, args[0], atom)] = IndexSet::range(parse_index(args[1], atom), parse_index(args[2], atom));
  } else {
    bad_set(atom, "unknown atom");
  }
  return out;
}

IntervalSet parse_rational_atom(const SpacePresentation& s, std::string_view atom) {
  const IntervalSet carrier = rat::whole(s);
  if (atom == "all") return carrier;
  if (atom == "empty") return {};
  if (atom.front() == '{' && atom.back() == '}') {
    IntervalSet out;
    const auto body = trim(atom.substr(1, atom.size() - 2));
    if (body.empty()) return out;
    for (auto item : split_top(body, ',')) {
      const auto p = parse_point(s, item);
      out = out | IntervalSet::point(std::get<RationalPoint>(p).value);
    }
    return out;
  }
  const char l = atom.front(), r = atom.back();
  if ((l != '(' && l != '[') || (r != ')' && r != ']')) bad_set(atom, "unknown atom");
  const auto parts = split_top(atom.substr(1, atom.size() - 2), ',');
  if (parts.size() != 2) bad_set(atom, "expected two interval ends");
  const Interval i{parse_bound(parts[0], l == '[', true, atom), parse_bound(parts[1], r == ']', false, atom)};
  return IntervalSet(i) & carrier;
}

std::string join_names(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Points

PointId parse_point(const SpacePresentation& s, std::string_view text) {
  text = trim(text);
  if (s.kind == SpaceKind::RationalChain) {
    Rational q;
    try {
      q = Rational::parse(text);
    } catch (const std::invalid_argument&) {
      throw DomainError(DomainError::Kind::PointNotInCarrier, "'" + std::string(text) + "' is not a rational");
    }
    PointId p = RationalPoint{q};
    if (!in_carrier(s, p)) throw DomainError(DomainError::Kind::PointNotInCarrier, q.str() + " lies outside the carrier");
    return p;
  }
  const auto at = text.find('@');
  if (at == std::string_view::npos) {
    if (s.point_index(text) < 0)
      throw DomainError(DomainError::Kind::PointNotInCarrier, "unknown point '" + std::string(text) + "'");
    return FinitePoint{std::string(text)};
  }
  const auto cell = text.substr(0, at);
  const auto idx = text.substr(at + 1);
  if (s.chain_index(cell) < 0)
    throw DomainError(DomainError::Kind::PointNotInCarrier, "unknown chain '" + std::string(cell) + "'");
  if (idx.empty() || idx.size() > 17 || !std::all_of(idx.begin(), idx.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw DomainError(DomainError::Kind::IndexOutOfRange, "bad chain index in '" + std::string(text) + "'");
  return ChainPoint{std::string(cell), std::stoll(std::string(idx))};
}

bool in_carrier(const SpacePresentation& s, const PointId& p) {
  if (const auto* f = std::get_if<FinitePoint>(&p)) return s.is_cells() && s.point_index(f->name) >= 0;
  if (const auto* c = std::get_if<ChainPoint>(&p)) return s.is_cells() && s.chain_index(c->cell) >= 0 && c->index >= 0 && c->index < kInf;
  return !s.is_cells() && s.carrier().contains(std::get<RationalPoint>(p).value);
}

Elem to_elem(const SpacePresentation& s, const PointId& p) {
  if (!in_carrier(s, p) || !s.is_cells())
    throw DomainError(DomainError::Kind::PointNotInCarrier, to_string(p) + " is not a point of this space");
  if (const auto* f = std::get_if<FinitePoint>(&p)) return Elem{-1, s.point_index(f->name)};
  const auto& c = std::get<ChainPoint>(p);
  return Elem{s.chain_index(c.cell), c.index};
}

PointId to_point(const SpacePresentation& s, const Elem& e) {
  if (e.finite()) return FinitePoint{s.points.at(e.at)};
  return ChainPoint{s.chains.at(e.chain), e.at};
}

namespace {

void require_carrier(const SpacePresentation& s, const PointId& p) {
  if (!in_carrier(s, p)) throw DomainError(DomainError::Kind::PointNotInCarrier, to_string(p) + " is not a point of this space");
}

void require_kind(const SpacePresentation& s, const DefinableSet& e) {
  if (e.is_cells() != s.is_cells()) throw DomainError(DomainError::Kind::UnsupportedKind, "set does not belong to this space kind");
}

}  // namespace

// ---------------------------------------------------------------------------
// Sets

DefinableSet parse_set(const SpacePresentation& s, std::string_view text) {
  text = trim(text);
  if (text.empty()) throw DomainError(DomainError::Kind::PointNotInCarrier, "empty set literal");
  DefinableSet out = empty_set(s);
  for (auto atom : split_top(text, '|')) {
    if (atom.empty()) bad_set(text, "empty atom");
    out = out | (s.is_cells() ? DefinableSet(parse_cell_atom(s, atom)) : DefinableSet(parse_rational_atom(s, atom)));
  }
  return out;
}

std::string format_set(const SpacePresentation& s, const DefinableSet& e) {
  require_kind(s, e);
  if (e.empty()) return "empty";
  if (e == whole_space(s)) return "all";
  if (!s.is_cells()) return e.intervals().str();
  const CellSet& c = e.cells();
  std::vector<std::string> singles, segs, tails;
  for (std::size_t p = 0; p < c.points.size(); ++p)
    if (c.points[p]) singles.push_back(s.points[p]);
  for (std::size_t ch = 0; ch < c.chains.size(); ++ch)
    for (const auto& [a, b] : c.chains[ch].runs()) {
      const std::string& name = s.chains[ch];
      if (b == kInf)
        tails.push_back(a == 0 ? "chain(" + name + ")" : "tail(" + name + "," + std::to_string(a) + ")");
      else if (a == b)
        singles.push_back(name + "@" + std::to_string(a));
      else
        segs.push_back("seg(" + name + "," + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  std::vector<std::string> atoms;
  if (!singles.empty()) atoms.push_back("{" + join_names(singles) + "}");
  atoms.insert(atoms.end(), segs.begin(), segs.end());
  atoms.insert(atoms.end(), tails.begin(), tails.end());
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) out += (i ? " | " : "") + atoms[i];
  return out;
}

DefinableSet whole_space(const SpacePresentation& s) {
  if (s.is_cells()) return DefinableSet(CellSet::all(s.points.size(), s.chains.size()));
  return DefinableSet(rat::whole(s));
}

DefinableSet empty_set(const SpacePresentation& s) {
  if (s.is_cells()) return DefinableSet(CellSet::none(s.points.size(), s.chains.size()));
  return DefinableSet(IntervalSet());
}

DefinableSet singleton(const SpacePresentation& s, const PointId& p) {
  require_carrier(s, p);
  if (s.is_cells()) return DefinableSet(cells::single(s, to_elem(s, p)));
  return DefinableSet(IntervalSet::point(std::get<RationalPoint>(p).value));
}

DefinableSet complement(const SpacePresentation& s, const DefinableSet& e) {
  require_kind(s, e);
  if (s.is_cells()) return DefinableSet(e.cells().complement());
  return DefinableSet(e.intervals().complement_in(s.carrier()));
}

bool contains(const SpacePresentation& s, const DefinableSet& e, const PointId& p) {
  require_kind(s, e);
  require_carrier(s, p);
  if (s.is_cells()) return cells::contains(e.cells(), to_elem(s, p));
  return e.intervals().contains(std::get<RationalPoint>(p).value);
}

// ---------------------------------------------------------------------------
// Order and topology

bool leq(const SpacePresentation& s, const PointId& x, const PointId& y) {
  require_carrier(s, x);
  require_carrier(s, y);
  if (s.is_cells()) return cells::leq(s, to_elem(s, x), to_elem(s, y));
  return std::get<RationalPoint>(x).value <= std::get<RationalPoint>(y).value;
}

DefinableSet up_set(const SpacePresentation& s, const DefinableSet& e) {
  require_kind(s, e);
  if (s.is_cells()) return DefinableSet(cells::up_set(s, e.cells()));
  return DefinableSet(rat::up_set(s, e.intervals()));
}

DefinableSet down_set(const SpacePresentation& s, const DefinableSet& e) {
  require_kind(s, e);
  if (s.is_cells()) return DefinableSet(cells::down_set(s, e.cells()));
  return DefinableSet(rat::down_set(s, e.intervals()));
}

DefinableSet closure(const SpacePresentation& s, const DefinableSet& e) {
  require_kind(s, e);
  if (s.is_cells()) return DefinableSet(cells::closure(s, s.cell_topology, e.cells()));
  return DefinableSet(rat::closure(s, s.rational_topology, e.intervals()));
}

bool is_open(const SpacePresentation& s, const DefinableSet& u) {
  require_kind(s, u);
  if (s.is_cells()) return cells::is_open(s, s.cell_topology, u.cells());
  return rat::is_open(s, s.rational_topology, u.intervals());
}

bool is_closed(const SpacePresentation& s, const DefinableSet& c) { return is_open(s, complement(s, c)); }

std::vector<PointId> schema_points(const SpacePresentation& s) {
  std::vector<PointId> out;
  if (s.is_cells()) {
    for (const auto& e : cells::schema_elems(s, s.cell_topology)) out.push_back(to_point(s, e));
  } else {
    for (const auto& q : rat::schema_rationals(s)) out.push_back(RationalPoint{q});
  }
  return out;
}

Verdict specialization_check(const SpacePresentation& s) {
  const auto pts = schema_points(s);
  for (const auto& y : pts) {
    const DefinableSet cl = closure(s, singleton(s, y));
    if (!(cl == down_set(s, singleton(s, y))))
      return Verdict::refuted("closure of {" + to_string(y) + "} differs from its down-set", y);
    for (const auto& x : pts)
      if (contains(s, cl, x) != leq(s, x, y))
        return Verdict::refuted("membership of " + to_string(x) + " in the closure of {" + to_string(y) +
                                    "} disagrees with the order",
                                x);
  }
  return Verdict::proven("closure of every schema point equals its down-set; " + std::to_string(pts.size() * pts.size()) +
                         " schema pairs agree with the order");
}

}  // namespace irrtopo
