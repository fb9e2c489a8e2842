#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "irrtopo/irr.hpp"
#include "irrtopo/spaces.hpp"

namespace irrtopo {

/// Whether U is open in SI of the topology of `s`: open in `s`, and every
/// closed irreducible set whose supremum lies in U meets U.
Verdict si_open(const SpacePresentation& s, const DefinableSet& u);

/// The same space one SI level further down.
SpacePresentation si_derivative(const SpacePresentation& s);

struct IterationStage {
  int level = 0;
  std::vector<std::string> fingerprint;  // canonical basic-open schemas
};

struct IterationTrace {
  std::vector<IterationStage> stages;
  std::optional<int> gamma;  // first level equal to its derivative
  int bound = 0;
  bool fixpoint_reached() const { return gamma.has_value(); }
};

inline constexpr int kDefaultIterationBound = 8;

IterationTrace si_iterate(const SpacePresentation& s, int bound = kDefaultIterationBound);

/// Proven iff the topology equals its SI derivative; the refutation witness is
/// an open set that is not SI-open.
Verdict has_si_infty_property(const SpacePresentation& s);

struct SobrietyReport {
  Verdict sober;
  Verdict bounded_sober;
  Verdict k_bounded_sober;
  std::map<std::string, DefinableSet> witnesses;  // keyed by the failed level
};

SobrietyReport sobriety_spectrum(const SpacePresentation& s);

/// Proven when k-bounded sobriety and the SI-infinity property agree, which
/// they must; Refuted flags an engine inconsistency.
Verdict sobriety_crosscheck(const SpacePresentation& s);

/// Canonical text of the basic-open schemas of the topology of `s`.
std::vector<std::string> topology_fingerprint(const SpacePresentation& s);

}  // namespace irrtopo
