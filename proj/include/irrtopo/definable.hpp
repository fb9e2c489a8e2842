#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "irrtopo/index_set.hpp"
#include "irrtopo/interval_set.hpp"
#include "irrtopo/numeric.hpp"

namespace irrtopo {

struct FinitePoint {
  std::string name;
  friend auto operator<=>(const FinitePoint&, const FinitePoint&) = default;
};

/// Element `index` of the omega-chain `cell`.
struct ChainPoint {
  std::string cell;
  Index index = 0;
  friend auto operator<=>(const ChainPoint&, const ChainPoint&) = default;
};

struct RationalPoint {
  Rational value;
  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
  friend std::strong_ordering operator<=>(const RationalPoint& a, const RationalPoint& b) {
    return a.value <=> b.value;
  }
};

using PointId = std::variant<FinitePoint, ChainPoint, RationalPoint>;

std::string to_string(const PointId& p);

/// Subset of a cell space (finite points plus omega-chains): membership flag
/// per finite point and an index set per chain.
struct CellSet {
  std::vector<bool> points;
  std::vector<IndexSet> chains;

  static CellSet none(std::size_t n_points, std::size_t n_chains) {
    return CellSet{std::vector<bool>(n_points, false), std::vector<IndexSet>(n_chains)};
  }
  static CellSet all(std::size_t n_points, std::size_t n_chains) {
    return CellSet{std::vector<bool>(n_points, true), std::vector<IndexSet>(n_chains, IndexSet::all())};
  }

  bool empty() const;
  bool subset_of(const CellSet& o) const { return (*this & o) == *this; }
  bool meets(const CellSet& o) const { return !(*this & o).empty(); }
  CellSet complement() const;

  friend CellSet operator|(const CellSet& a, const CellSet& b);
  friend CellSet operator&(const CellSet& a, const CellSet& b);
  friend bool operator==(const CellSet&, const CellSet&) = default;
  friend auto operator<=>(const CellSet&, const CellSet&) = default;
};

/// A definable subset of the carrier, in normal form. Cell spaces (finite
/// posets and V-spaces) use CellSet; rational chains use IntervalSet already
/// clipped to the carrier. Printing and parsing need the presentation for
/// names, see format_set / parse_set in spaces.hpp.
class DefinableSet {
 public:
  DefinableSet() = default;
  explicit DefinableSet(CellSet c) : rep_(std::move(c)) {}
  explicit DefinableSet(IntervalSet i) : rep_(std::move(i)) {}

  bool is_cells() const { return std::holds_alternative<CellSet>(rep_); }
  const CellSet& cells() const { return std::get<CellSet>(rep_); }
  const IntervalSet& intervals() const { return std::get<IntervalSet>(rep_); }

  bool empty() const;
  bool subset_of(const DefinableSet& o) const { return (*this & o) == *this; }
  bool meets(const DefinableSet& o) const { return !(*this & o).empty(); }

  friend DefinableSet operator|(const DefinableSet& a, const DefinableSet& b);
  friend DefinableSet operator&(const DefinableSet& a, const DefinableSet& b);
  friend bool operator==(const DefinableSet& a, const DefinableSet& b) { return a.rep_ == b.rep_; }

 private:
  std::variant<CellSet, IntervalSet> rep_;
};

}  // namespace irrtopo
