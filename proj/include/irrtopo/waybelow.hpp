#pragma once

#include <optional>
#include <string>
#include <vector>

#include "irrtopo/irr.hpp"
#include "irrtopo/spaces.hpp"

namespace irrtopo {

/// x way below y: every irreducible E with sup E >= y meets the up-set of x.
/// A refutation carries such an E missing the up-set of x.
struct WayBelowResult {
  Verdict holds;
};

WayBelowResult way_below(const SpacePresentation& s, const PointId& x, const PointId& y);

/// The same relation decided by quantifying over enumerated witness-family
/// instances instead of the closed form.
WayBelowResult way_below_by_family(const SpacePresentation& s, const PointId& x, const PointId& y);

DefinableSet below_set(const SpacePresentation& s, const PointId& x);
DefinableSet above_set(const SpacePresentation& s, const PointId& x);

struct PointContinuity {
  PointId point;
  DefinableSet below;
  Verdict irreducible;
  std::optional<SupResult> sup;  // absent when the below set is empty
  bool ok = false;
};

struct ContinuityReport {
  Verdict continuous;
  std::vector<PointContinuity> points;
};

/// Checks, for every point schema x, that the below set of x is irreducible
/// with supremum x.
ContinuityReport is_irr_continuous(const SpacePresentation& s);

struct MSetResult {
  DefinableSet set;
  std::optional<SupResult> sup;
};

/// Union of the below sets of all points way below x.
MSetResult m_set(const SpacePresentation& s, const PointId& x);

struct InterpolationResult {
  std::optional<PointId> point;
  bool hypotheses_met = false;  // Irr-continuous and k-bounded sober
  std::string note;
};

/// A point y with z way below y way below x, chosen deterministically.
InterpolationResult interpolate(const SpacePresentation& s, const PointId& z, const PointId& x);

}  // namespace irrtopo
