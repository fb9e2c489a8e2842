// Internal engines shared by the modules. Cell spaces (finite posets and
// V-spaces) and rational chains each get a namespace of exact primitives that
// take the topology explicitly, so derived stages can be evaluated without
// building a new presentation.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "irrtopo/spaces.hpp"

namespace irrtopo::cells {

bool leq(const SpacePresentation& s, const Elem& x, const Elem& y);
bool contains(const CellSet& e, const Elem& x);
CellSet single(const SpacePresentation& s, const Elem& x);

CellSet up_of(const SpacePresentation& s, const Elem& x);
CellSet down_of(const SpacePresentation& s, const Elem& x);
CellSet down_of_chain(const SpacePresentation& s, int chain);
CellSet up_set(const SpacePresentation& s, const CellSet& e);
CellSet down_set(const SpacePresentation& s, const CellSet& e);
bool is_upper(const SpacePresentation& s, const CellSet& e);
CellSet upper_bounds(const SpacePresentation& s, const CellSet& e);

std::optional<Elem> maximum(const SpacePresentation& s, const CellSet& e);

struct SupOutcome {
  std::optional<Elem> sup;
  bool bounded = false;                      // upper-bound set nonempty
  std::optional<std::pair<Elem, Elem>> pair; // two minimal upper bounds when no least one
};
SupOutcome sup(const SpacePresentation& s, const CellSet& e);

CellSet closure(const SpacePresentation& s, const CellTopology& t, const CellSet& e);
bool is_open(const SpacePresentation& s, const CellTopology& t, const CellSet& u);

/// Per-chain representative indices: every index at which any of the
/// presentation, the topology or the extra sets can change behaviour, with
/// neighbours. Index choices equal up to these breakpoints are interchangeable.
using Reps = std::vector<std::vector<Index>>;
Reps representatives(const SpacePresentation& s, const CellTopology& t, std::span<const CellSet> extra);
/// Every open whose chain tails start at representative indices.
std::vector<CellSet> representative_opens(const SpacePresentation& s, const CellTopology& t, const Reps& reps);

struct IrrOutcome {
  bool irreducible = false;
  std::string rule;   // Singleton | DirectedWithMax | ChainNested | PairwiseOpenCheck
  std::string trace;
  CellSet u1, u2;     // separating opens when reducible
};
IrrOutcome irreducible(const SpacePresentation& s, const CellTopology& t, const CellSet& e);

struct ClosedIrreducible {
  CellSet set;
  SupOutcome sup;
  std::optional<Elem> max;
};
/// Closed irreducible sets of the topology, one per representative class.
std::vector<ClosedIrreducible> closed_irreducibles(const SpacePresentation& s, const CellTopology& t,
                                                   std::span<const CellSet> extra = {});
/// One SI step: adds a constraint for every closed irreducible whose supremum
/// exists and lies outside it.
CellTopology si_step(const SpacePresentation& s, const CellTopology& t);

/// Finite points plus chain indices at every representative.
std::vector<Elem> schema_elems(const SpacePresentation& s, const CellTopology& t);

}  // namespace irrtopo::cells

namespace irrtopo::rat {

Interval carrier(const SpacePresentation& s);
std::optional<Rational> minimum(const SpacePresentation& s);
std::optional<Rational> maximum_of_carrier(const SpacePresentation& s);
IntervalSet whole(const SpacePresentation& s);

IntervalSet up_set(const SpacePresentation& s, const IntervalSet& e);
IntervalSet down_set(const SpacePresentation& s, const IntervalSet& e);

struct SupOutcome {
  std::optional<Rational> sup;
  bool bounded = false;
  std::optional<std::pair<Rational, Rational>> pair;  // two upper bounds, second < first
};
SupOutcome sup(const SpacePresentation& s, const IntervalSet& e);
std::optional<Rational> maximum(const IntervalSet& e);

IntervalSet closure(const SpacePresentation& s, const RationalTopology& t, const IntervalSet& e);
bool is_open(const SpacePresentation& s, const RationalTopology& t, const IntervalSet& u);

/// An irrational cut strictly inside the carrier (lo + (hi-lo)*sqrt(2)/2 when bounded).
Quadratic inner_cut(const SpacePresentation& s);
/// Representative interior rationals plus the included ends.
std::vector<Rational> schema_rationals(const SpacePresentation& s);

/// One SI step on the open-ray schema set.
RationalTopology si_step(const SpacePresentation& s, const RationalTopology& t);

}  // namespace irrtopo::rat
