// Net and subnet specifications: grammar, evaluation and reindexing.
#include <algorithm>
#include <cctype>

#include "irrtopo/nets.hpp"

namespace irrtopo {

namespace {

[[noreturn]] void bad_net(const std::string& why) { throw DomainError(DomainError::Kind::BadNet, why); }

std::string_view trim(std::string_view t) {
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  return t;
}

std::vector<std::string_view> split_top(std::string_view t, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const char ch = t[i];
    if (ch == '(' || ch == '{' || ch == '[') ++depth;
    if (ch == ')' || ch == '}' || ch == ']') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(trim(t.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(t.substr(start)));
  return out;
}

Index parse_count(std::string_view t) {
  t = trim(t);
  if (t.empty() || t.size() > 12 || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    bad_net("expected a natural number, got '" + std::string(t) + "'");
  return std::stoll(std::string(t));
}

// Splits "head(args)" into head and the top-level comma-separated args.
bool call_form(std::string_view t, std::string_view& head, std::vector<std::string_view>& args) {
  const auto open = t.find('(');
  if (open == std::string_view::npos || t.back() != ')') return false;
  head = trim(t.substr(0, open));
  args = split_top(t.substr(open + 1, t.size() - open - 2), ',');
  return true;
}

struct Entries {
  std::vector<std::string> keys;
  std::vector<std::string> values;
  std::vector<std::pair<std::string, std::string>> relations;
};

// Reads "{k1:v1, k2:v2; a<=b, ...}".
Entries parse_entries(std::string_view body) {
  Entries e;
  const auto halves = split_top(body, ';');
  if (halves.size() > 2) bad_net("at most one ';' inside braces");
  if (!halves[0].empty())
    for (auto item : split_top(halves[0], ',')) {
      const auto colon = item.find(':');
      if (colon == std::string_view::npos) bad_net("expected <index>:<value>, got '" + std::string(item) + "'");
      e.keys.emplace_back(trim(item.substr(0, colon)));
      e.values.emplace_back(trim(item.substr(colon + 1)));
      if (e.keys.back().empty()) bad_net("empty index name");
    }
  if (halves.size() == 2 && !halves[1].empty())
    for (auto rel : split_top(halves[1], ',')) {
      const auto le = rel.find("<=");
      if (le == std::string_view::npos) bad_net("expected <index> <= <index>, got '" + std::string(rel) + "'");
      e.relations.emplace_back(std::string(trim(rel.substr(0, le))), std::string(trim(rel.substr(le + 2))));
    }
  return e;
}

bool is_listed_chain(const IndexOrder& o) {
  const std::size_t n = o.elements.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (o.leq[i][j] != (i <= j)) return false;
  return true;
}

std::string format_order_suffix(const IndexOrder& o) {
  if (is_listed_chain(o)) return "";
  std::string out = "; ";
  bool first = true;
  for (std::size_t i = 0; i < o.elements.size(); ++i)
    for (std::size_t j = 0; j < o.elements.size(); ++j)
      if (i != j && o.leq[i][j]) {
        out += (first ? "" : ", ") + o.elements[i] + "<=" + o.elements[j];
        first = false;
      }
  return out;
}

ValueTerm parse_term(const SpacePresentation& s, std::string_view t);

ValueTerm reindex(const ValueTerm& t, Index a, Index b) {
  if (a < 1 || b < 0) bad_net("reindexing needs a >= 1 and b >= 0");
  if (a == 1 && b == 0) return t;
  switch (t.kind) {
    case ValueTerm::Kind::Const:
      return t;
    case ValueTerm::Kind::ChainAscent:
    case ValueTerm::Kind::RationalAscent: {
      ValueTerm out = t;
      out.scale = t.scale * a;
      out.offset = t.scale * b + t.offset;
      return out;
    }
    case ValueTerm::Kind::Interleave: {
      if (a % 2 == 0) return b % 2 == 0 ? reindex(t.parts[0], a / 2, b / 2) : reindex(t.parts[1], a / 2, (b - 1) / 2);
      ValueTerm out;
      out.kind = ValueTerm::Kind::Interleave;
      out.parts = {reindex(t, 2 * a, b), reindex(t, 2 * a, a + b)};
      return out;
    }
    case ValueTerm::Kind::Explicit:
      break;
  }
  bad_net("explicit terms cannot be reindexed affinely");
}

ValueTerm parse_term(const SpacePresentation& s, std::string_view t) {
  t = trim(t);
  ValueTerm v;
  if (t.rfind("explicit", 0) == 0) {
    const auto body = trim(t.substr(8));
    if (body.size() < 2 || body.front() != '{' || body.back() != '}') bad_net("expected explicit{...}");
    v.kind = ValueTerm::Kind::Explicit;
    return v;  // table filled by parse_net, which owns the index
  }
  std::string_view head;
  std::vector<std::string_view> args;
  if (!call_form(t, head, args)) bad_net("cannot read net term '" + std::string(t) + "'");
  if (head == "const" && args.size() == 1) {
    v.kind = ValueTerm::Kind::Const;
    v.point = parse_point(s, args[0]);
  } else if (head == "chain" && args.size() == 1) {
    v.kind = ValueTerm::Kind::ChainAscent;
    v.cell = std::string(args[0]);
  } else if (head == "ratascent" && args.size() == 1) {
    v.kind = ValueTerm::Kind::RationalAscent;
    try {
      v.target = Rational::parse(args[0]);
    } catch (const std::invalid_argument&) {
      bad_net("ratascent needs a rational target");
    }
  } else if (head == "interleave" && args.size() == 2) {
    v.kind = ValueTerm::Kind::Interleave;
    v.parts = {parse_term(s, args[0]), parse_term(s, args[1])};
  } else if (head == "reindex" && args.size() == 3) {
    return reindex(parse_term(s, args[0]), parse_count(args[1]), parse_count(args[2]));
  } else {
    bad_net("unknown net term '" + std::string(head) + "'");
  }
  return v;
}

std::string format_term(const ValueTerm& t, const IndexOrder& index) {
  auto wrap = [&](std::string inner) {
    if (t.scale == 1 && t.offset == 0) return inner;
    return "reindex(" + inner + "," + std::to_string(t.scale) + "," + std::to_string(t.offset) + ")";
  };
  switch (t.kind) {
    case ValueTerm::Kind::Const: return "const(" + to_string(t.point) + ")";
    case ValueTerm::Kind::ChainAscent: return wrap("chain(" + t.cell + ")");
    case ValueTerm::Kind::RationalAscent: return wrap("ratascent(" + t.target.str() + ")");
    case ValueTerm::Kind::Interleave:
      return "interleave(" + format_term(t.parts[0], index) + "," + format_term(t.parts[1], index) + ")";
    case ValueTerm::Kind::Explicit: {
      std::string out = "explicit{";
      for (std::size_t i = 0; i < t.table.size(); ++i)
        out += (i ? ", " : "") + index.elements[i] + ":" + to_string(t.table[i]);
      return out + format_order_suffix(index) + "}";
    }
  }
  return "";
}

PointId eval_term(const SpacePresentation& s, const ValueTerm& t, Index k) {
  switch (t.kind) {
    case ValueTerm::Kind::Const: return t.point;
    case ValueTerm::Kind::ChainAscent: return ChainPoint{t.cell, t.scale * k + t.offset};
    case ValueTerm::Kind::RationalAscent: {
      const Index m = t.scale * k + t.offset;
      const Rational v = t.target - Rational(1) / Rational(m + 1);
      if (s.carrier().contains(v)) return RationalPoint{v};
      const Interval c = s.carrier();
      if (c.lo.is_closed()) return RationalPoint{c.lo.at.a()};
      return RationalPoint{midpoint(c.lo.at.a(), t.target)};
    }
    case ValueTerm::Kind::Interleave:
      return k % 2 == 0 ? eval_term(s, t.parts[0], k / 2) : eval_term(s, t.parts[1], k / 2);
    case ValueTerm::Kind::Explicit: break;
  }
  bad_net("explicit terms are evaluated by index element");
}

void validate_term(const SpacePresentation& s, const ValueTerm& t) {
  if (t.scale < 1 || t.offset < 0) bad_net("reindexing needs scale >= 1 and offset >= 0");
  switch (t.kind) {
    case ValueTerm::Kind::Const:
      if (!in_carrier(s, t.point)) bad_net(to_string(t.point) + " is not a point of the space");
      return;
    case ValueTerm::Kind::ChainAscent:
      if (s.kind != SpaceKind::VSpace || s.chain_index(t.cell) < 0) bad_net("unknown chain '" + t.cell + "'");
      return;
    case ValueTerm::Kind::RationalAscent: {
      if (s.kind != SpaceKind::RationalChain) bad_net("ratascent needs a rational chain");
      const Interval c = s.carrier();
      const bool inside = c.contains(t.target);
      const bool excluded_top = c.hi.finite() && !c.hi.is_closed() && c.hi.at == Quadratic(t.target);
      if (!inside && !excluded_top) bad_net("ratascent target " + t.target.str() + " is not approachable inside the carrier");
      return;
    }
    case ValueTerm::Kind::Interleave:
      validate_term(s, t.parts.at(0));
      validate_term(s, t.parts.at(1));
      return;
    case ValueTerm::Kind::Explicit:
      bad_net("explicit terms need a finite index");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Index orders

IndexOrder IndexOrder::chain(std::vector<std::string> elements) {
  IndexOrder o;
  o.omega = false;
  const std::size_t n = elements.size();
  o.elements = std::move(elements);
  o.leq.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) o.leq[i][j] = true;
  return o;
}

IndexOrder IndexOrder::generated(std::vector<std::string> elements, const std::vector<std::pair<int, int>>& pairs) {
  IndexOrder o;
  o.omega = false;
  const std::size_t n = elements.size();
  o.elements = std::move(elements);
  o.leq.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) o.leq[i][i] = true;
  for (const auto& [a, b] : pairs) o.leq.at(a).at(b) = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (o.leq[i][k] && o.leq[k][j]) o.leq[i][j] = true;
  return o;
}

int IndexOrder::find(std::string_view name) const {
  const auto it = std::find(elements.begin(), elements.end(), name);
  return it == elements.end() ? -1 : static_cast<int>(it - elements.begin());
}

std::vector<int> IndexOrder::above(int i) const {
  std::vector<int> out;
  for (std::size_t j = 0; j < elements.size(); ++j)
    if (leq[i][j]) out.push_back(static_cast<int>(j));
  return out;
}

// ---------------------------------------------------------------------------
// Nets

NetSpec parse_net(const SpacePresentation& s, std::string_view text) {
  text = trim(text);
  NetSpec n;
  n.values = parse_term(s, text);
  if (n.values.kind == ValueTerm::Kind::Explicit) {
    const auto body = trim(text.substr(8));
    const Entries e = parse_entries(body.substr(1, body.size() - 2));
    if (e.keys.empty()) bad_net("explicit nets need at least one index");
    for (std::size_t i = 0; i < e.keys.size(); ++i)
      if (std::find(e.keys.begin(), e.keys.begin() + static_cast<std::ptrdiff_t>(i), e.keys[i]) != e.keys.begin() + static_cast<std::ptrdiff_t>(i))
        bad_net("index '" + e.keys[i] + "' listed twice");
    if (e.relations.empty()) {
      n.index = IndexOrder::chain(e.keys);
    } else {
      std::vector<std::pair<int, int>> pairs;
      const IndexOrder names = IndexOrder::chain(e.keys);
      for (const auto& [a, b] : e.relations) {
        const int ia = names.find(a), ib = names.find(b);
        if (ia < 0 || ib < 0) bad_net("relation mentions an unknown index");
        pairs.emplace_back(ia, ib);
      }
      n.index = IndexOrder::generated(e.keys, pairs);
    }
    for (const auto& v : e.values) n.values.table.push_back(parse_point(s, v));
  }
  validate_net(s, n);
  return n;
}

std::string format_net(const NetSpec& n) { return format_term(n.values, n.index); }

void validate_net(const SpacePresentation& s, const NetSpec& n) {
  if (n.index.omega) {
    validate_term(s, n.values);
    return;
  }
  if (n.values.kind != ValueTerm::Kind::Explicit) bad_net("a finite index needs an explicit value table");
  if (n.values.table.size() != n.index.elements.size() || n.index.elements.empty())
    bad_net("explicit table must give one value per index element");
  for (const auto& p : n.values.table)
    if (!in_carrier(s, p)) bad_net(to_string(p) + " is not a point of the space");
}

PointId net_value_at(const SpacePresentation& s, const NetSpec& n, Index i) {
  if (n.index.omega) {
    if (i < 0) throw DomainError(DomainError::Kind::IndexOutOfRange, "negative index");
    return eval_term(s, n.values, i);
  }
  if (i < 0 || i >= static_cast<Index>(n.values.table.size()))
    throw DomainError(DomainError::Kind::IndexOutOfRange, "index " + std::to_string(i) + " outside the finite index");
  return n.values.table[i];
}

PointId net_value(const SpacePresentation& s, const NetSpec& n, std::string_view i) {
  if (n.index.omega) {
    i = trim(i);
    if (i.empty() || i.size() > 15 || !std::all_of(i.begin(), i.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw DomainError(DomainError::Kind::IndexOutOfRange, "'" + std::string(i) + "' is not a natural number");
    return net_value_at(s, n, std::stoll(std::string(i)));
  }
  const int k = n.index.find(trim(i));
  if (k < 0) throw DomainError(DomainError::Kind::IndexOutOfRange, "no index element '" + std::string(i) + "'");
  return n.values.table[k];
}

// ---------------------------------------------------------------------------
// Subnets

SubnetSpec parse_subnet(std::string_view text) {
  text = trim(text);
  SubnetSpec sub;
  if (text.rfind("map", 0) == 0) {
    const auto body = trim(text.substr(3));
    if (body.size() < 2 || body.front() != '{' || body.back() != '}') bad_net("expected map{k:j, ...}");
    const Entries e = parse_entries(body.substr(1, body.size() - 2));
    if (e.keys.empty()) bad_net("a map subnet needs at least one index");
    sub.kind = SubnetSpec::Kind::ExplicitMap;
    sub.domain = IndexOrder::chain(e.keys);
    sub.targets = e.values;
    return sub;
  }
  std::string_view head;
  std::vector<std::string_view> args;
  if (!call_form(text, head, args)) bad_net("cannot read subnet '" + std::string(text) + "'");
  if (head == "affine" && args.size() == 2) {
    sub.a = parse_count(args[0]);
    sub.b = parse_count(args[1]);
    if (sub.a < 1) bad_net("affine subnets need a >= 1");
  } else if (head == "parity" && args.size() == 1 && (args[0] == "even" || args[0] == "odd")) {
    sub.a = 2;
    sub.b = args[0] == "odd" ? 1 : 0;
  } else if (head == "compose" && !args.empty()) {
    sub.kind = SubnetSpec::Kind::Composition;
    for (auto a : args) sub.steps.push_back(parse_subnet(a));
  } else {
    bad_net("unknown subnet '" + std::string(head) + "'");
  }
  return sub;
}

std::string format_subnet(const SubnetSpec& s) {
  switch (s.kind) {
    case SubnetSpec::Kind::Affine:
      return "affine(" + std::to_string(s.a) + "," + std::to_string(s.b) + ")";
    case SubnetSpec::Kind::Composition: {
      std::string out = "compose(";
      for (std::size_t i = 0; i < s.steps.size(); ++i) out += (i ? "," : "") + format_subnet(s.steps[i]);
      return out + ")";
    }
    case SubnetSpec::Kind::ExplicitMap: {
      std::string out = "map{";
      for (std::size_t i = 0; i < s.targets.size(); ++i) out += (i ? ", " : "") + s.domain.elements[i] + ":" + s.targets[i];
      return out + "}";
    }
  }
  return "";
}

Verdict check_subnet(const IndexOrder& index, const SubnetSpec& sub) {
  switch (sub.kind) {
    case SubnetSpec::Kind::Affine:
      if (!index.omega) return Verdict::refuted("affine subnets need an omega index");
      if (sub.a < 1 || sub.b < 0) return Verdict::refuted("affine subnets need a >= 1 and b >= 0");
      return Verdict::proven("k -> " + std::to_string(sub.a) + "k+" + std::to_string(sub.b) +
                             " is monotone and its value at k is at least k, so it is cofinal");
    case SubnetSpec::Kind::Composition: {
      IndexOrder cur = index;
      for (const auto& step : sub.steps) {
        const Verdict v = check_subnet(cur, step);
        if (!v.proven()) return v;
        if (step.kind == SubnetSpec::Kind::ExplicitMap) cur = step.domain;
      }
      return Verdict::proven("every step is monotone and cofinal, and both properties compose");
    }
    case SubnetSpec::Kind::ExplicitMap: {
      if (index.omega) return Verdict::refuted("map subnets need a finite index");
      std::vector<int> img;
      for (const auto& t : sub.targets) {
        const int j = index.find(t);
        if (j < 0) return Verdict::refuted("map target '" + t + "' is not an index element");
        img.push_back(j);
      }
      const auto& d = sub.domain;
      for (std::size_t k = 0; k < d.elements.size(); ++k)
        for (std::size_t l = 0; l < d.elements.size(); ++l)
          if (d.leq[k][l] && !index.leq[img[k]][img[l]])
            return Verdict::refuted("not monotone: " + d.elements[k] + " <= " + d.elements[l] + " but their images are not ordered");
      for (std::size_t j = 0; j < index.elements.size(); ++j)
        if (std::none_of(img.begin(), img.end(), [&](int i) { return index.leq[j][i]; }))
          return Verdict::refuted("not cofinal: nothing in the image is above " + index.elements[j]);
      return Verdict::proven("monotone and cofinal, checked on all pairs");
    }
  }
  return Verdict::refuted("unknown subnet");
}

NetSpec apply_subnet(const SpacePresentation& s, const NetSpec& n, const SubnetSpec& sub) {
  const Verdict ok = check_subnet(n.index, sub);
  if (!ok.proven()) bad_net(ok.certificate);
  switch (sub.kind) {
    case SubnetSpec::Kind::Affine:
      return NetSpec{n.index, reindex(n.values, sub.a, sub.b)};
    case SubnetSpec::Kind::Composition: {
      NetSpec cur = n;
      for (const auto& step : sub.steps) cur = apply_subnet(s, cur, step);
      return cur;
    }
    case SubnetSpec::Kind::ExplicitMap: {
      NetSpec out;
      out.index = sub.domain;
      out.values.kind = ValueTerm::Kind::Explicit;
      for (const auto& t : sub.targets) out.values.table.push_back(n.values.table[n.index.find(t)]);
      return out;
    }
  }
  return n;
}

}  // namespace irrtopo
