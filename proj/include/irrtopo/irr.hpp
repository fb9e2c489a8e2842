#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "irrtopo/spaces.hpp"

namespace irrtopo {

struct IrreducibilityCertificate {
  enum class Rule { Singleton, ChainNested, DirectedWithMax, CofinalInChain, PairwiseOpenCheck };
  Rule rule = Rule::Singleton;
  std::string details;
};

const char* to_string(IrreducibilityCertificate::Rule r);

struct IrreducibilityResult {
  bool irreducible = false;
  IrreducibilityCertificate certificate;
  /// Opens U1, U2 each meeting E while U1 & U2 misses E.
  std::optional<std::pair<DefinableSet, DefinableSet>> separating;
};

/// Exact irreducibility of a nonempty definable set in the topology of `s`.
IrreducibilityResult is_irreducible(const SpacePresentation& s, const DefinableSet& e);

struct SupResult {
  enum class Kind { Exists, NoUpperBound, NoLeastUpperBound };
  Kind kind = Kind::NoUpperBound;
  std::optional<PointId> value;
  /// For NoLeastUpperBound: two upper bounds, neither below the other or the
  /// second strictly below the first with no least one in between.
  std::optional<std::pair<PointId, PointId>> witness;

  bool exists() const { return kind == Kind::Exists; }
};

const char* to_string(SupResult::Kind k);

/// Least upper bound in the specialization order; throws on the empty set.
SupResult sup(const SpacePresentation& s, const DefinableSet& e);

/// Parameterized families of irreducible sets that decide the quantifiers over
/// irreducible sets with a supremum.
struct WitnessFamily {
  SpaceKind kind = SpaceKind::FinitePoset;
  std::vector<std::string> schemas;
  std::string sufficiency;  // argument for why the family dominates the quantifiers
};

WitnessFamily witness_family(const SpacePresentation& s);

/// Concrete members of the witness family, each with its supremum. Finite
/// posets yield every directed subset; other kinds yield instances at the
/// schema parameters of the space plus those of `anchors`.
struct FamilyInstance {
  DefinableSet set;
  PointId sup;
};
std::vector<FamilyInstance> family_instances(const SpacePresentation& s, const std::vector<PointId>& anchors = {});

struct ClosedIrreducibleInfo {
  DefinableSet set;
  SupResult sup;
};
/// Closed irreducible sets of the topology of `s`, one per schema class. The
/// classes are refined by the boundaries of `anchors`, so quantifying over the
/// result is exact for statements about those sets.
std::vector<ClosedIrreducibleInfo> closed_irreducibles(const SpacePresentation& s,
                                                       const std::vector<DefinableSet>& anchors = {});

}  // namespace irrtopo
