#include "irrtopo/definable.hpp"

#include <algorithm>

namespace irrtopo {

std::string to_string(const PointId& p) {
  struct {
    std::string operator()(const FinitePoint& f) const { return f.name; }
    std::string operator()(const ChainPoint& c) const { return c.cell + "@" + std::to_string(c.index); }
    std::string operator()(const RationalPoint& r) const { return r.value.str(); }
  } visit;
  return std::visit(visit, p);
}

bool CellSet::empty() const {
  return std::none_of(points.begin(), points.end(), [](bool b) { return b; }) &&
         std::all_of(chains.begin(), chains.end(), [](const IndexSet& s) { return s.empty(); });
}

CellSet CellSet::complement() const {
  CellSet out = *this;
  out.points.flip();
  for (auto& c : out.chains) c = c.complement();
  return out;
}

CellSet operator|(const CellSet& a, const CellSet& b) {
  CellSet out = a;
  for (std::size_t i = 0; i < out.points.size(); ++i) out.points[i] = a.points[i] || b.points[i];
  for (std::size_t c = 0; c < out.chains.size(); ++c) out.chains[c] = a.chains[c] | b.chains[c];
  return out;
}

CellSet operator&(const CellSet& a, const CellSet& b) {
  CellSet out = a;
  for (std::size_t i = 0; i < out.points.size(); ++i) out.points[i] = a.points[i] && b.points[i];
  for (std::size_t c = 0; c < out.chains.size(); ++c) out.chains[c] = a.chains[c] & b.chains[c];
  return out;
}

bool DefinableSet::empty() const {
  return is_cells() ? cells().empty() : intervals().empty();
}

DefinableSet operator|(const DefinableSet& a, const DefinableSet& b) {
  if (a.is_cells() != b.is_cells()) throw std::invalid_argument("mixing sets from different space kinds");
  return a.is_cells() ? DefinableSet(a.cells() | b.cells()) : DefinableSet(a.intervals() | b.intervals());
}

DefinableSet operator&(const DefinableSet& a, const DefinableSet& b) {
  if (a.is_cells() != b.is_cells()) throw std::invalid_argument("mixing sets from different space kinds");
  return a.is_cells() ? DefinableSet(a.cells() & b.cells()) : DefinableSet(a.intervals() & b.intervals());
}

}  // namespace irrtopo
