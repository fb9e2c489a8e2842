#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irrtopo/spaces.hpp"

namespace irrtopo {

// ---------------------------------------------------------------------------
// Nets

/// Index set of a net: the naturals, or a finite preorder whose elements are
/// named and whose relation is reflexive and transitive.
struct IndexOrder {
  bool omega = true;
  std::vector<std::string> elements;
  std::vector<std::vector<bool>> leq;

  static IndexOrder naturals() { return {}; }
  /// Finite chain e0 <= e1 <= ... in the given order.
  static IndexOrder chain(std::vector<std::string> elements);
  /// Finite preorder generated by the pairs (below, above).
  static IndexOrder generated(std::vector<std::string> elements, const std::vector<std::pair<int, int>>& pairs);

  int find(std::string_view name) const;  // -1 if absent
  /// Upper bounds of element i (all j with i <= j).
  std::vector<int> above(int i) const;
};

/// Value term of a net. Omega terms carry an affine reindexing k -> scale*k+offset
/// applied before evaluation; Explicit terms live on finite preorders.
struct ValueTerm {
  enum class Kind { Const, ChainAscent, RationalAscent, Interleave, Explicit };
  Kind kind = Kind::Const;
  PointId point;                     // Const
  std::string cell;                  // ChainAscent
  Rational target;                   // RationalAscent: k -> target - 1/(k+1), clipped to the carrier
  std::vector<ValueTerm> parts;      // Interleave: even indices, odd indices
  std::vector<PointId> table;        // Explicit: value per index element
  Index scale = 1, offset = 0;
};

struct NetSpec {
  IndexOrder index;
  ValueTerm values;
};

/// Parses the net grammar: const(p), chain(A), ratascent(q), interleave(t1,t2),
/// reindex(t,a,b), explicit{i1:p1, i2:p2, ...} with an optional relation
/// list after ';' such as explicit{i:a, j:b, k:c; i<=k, j<=k}. Without a
/// relation list the explicit indices form a chain in the listed order.
NetSpec parse_net(const SpacePresentation& s, std::string_view text);
std::string format_net(const NetSpec& n);

/// Value at index element `i` (a natural for omega nets, an element name
/// otherwise).
PointId net_value(const SpacePresentation& s, const NetSpec& n, std::string_view i);
PointId net_value_at(const SpacePresentation& s, const NetSpec& n, Index i);

/// Monotone cofinal reindexing.
struct SubnetSpec {
  enum class Kind { Affine, Composition, ExplicitMap };
  Kind kind = Kind::Affine;
  Index a = 1, b = 0;                   // Affine: k -> a*k+b
  std::vector<SubnetSpec> steps;        // Composition, applied left to right
  IndexOrder domain;                    // ExplicitMap: new finite index
  std::vector<std::string> targets;     // ExplicitMap: image of each domain element
};

/// Parses affine(a,b), parity(even|odd), compose(s1,s2,...) and
/// map{k1:j1, k2:j2, ...} (domain indices form a chain in the listed order).
SubnetSpec parse_subnet(std::string_view text);
std::string format_subnet(const SubnetSpec& s);
/// Checks both subnet clauses: the map is monotone and its image is cofinal.
Verdict check_subnet(const IndexOrder& index, const SubnetSpec& sub);
NetSpec apply_subnet(const SpacePresentation& s, const NetSpec& n, const SubnetSpec& sub);

/// Throws DomainError(BadNet) unless every value lies in the carrier and the
/// term fits the index.
void validate_net(const SpacePresentation& s, const NetSpec& n);

// ---------------------------------------------------------------------------
// Convergence

/// Set of eventual lower bounds: points e with x_i >= e for all large i.
DefinableSet eventual_lower_bounds(const SpacePresentation& s, const NetSpec& n);
/// Whether the net is eventually inside `u`.
bool eventually_in(const SpacePresentation& s, const NetSpec& n, const DefinableSet& u);

struct ConvergenceJudgment {
  Verdict verdict;
  std::optional<DefinableSet> witness;           // E with sup E >= y inside the eventual lower bounds
  std::vector<std::string> thresholds;           // "e -> k(e)" for sample elements of E
};

ConvergenceJudgment irr_converges(const SpacePresentation& s, const NetSpec& n, const PointId& y);
/// Convergence in the topology `level` SI derivatives below the space's own.
Verdict topo_converges(const SpacePresentation& s, const NetSpec& n, const PointId& y, int level = 0);

/// Net indexed by E under the specialization preorder with identity values.
NetSpec canonical_net(const SpacePresentation& s, const DefinableSet& e, const PointId& y);

// ---------------------------------------------------------------------------
// Batteries, Kelley axioms and the main verdict

struct BatteryConfig {
  enum class Size { Small, Large };
  Size size = Size::Small;
  std::uint64_t seed = 1;
  std::size_t budget = 20000;  // cap on convergence decisions per axiom
};

struct Battery {
  std::vector<PointId> points;
  std::vector<NetSpec> nets;
  std::vector<SubnetSpec> omega_subnets;
};

Battery make_battery(const SpacePresentation& s, const BatteryConfig& cfg);

struct WayBelowNetCheck {
  bool net_form = false;   // every battery or canonical net converging to y is eventually above x
  Verdict agreement;       // Proven when the net form equals way_below
  std::optional<std::string> witness_net;
};

WayBelowNetCheck way_below_via_nets(const SpacePresentation& s, const PointId& x, const PointId& y, const Battery& battery);

/// Open in the topology induced by Irr-convergence: every convergent battery
/// or canonical net to a point of U is eventually in U.
Verdict induced_open(const SpacePresentation& s, const DefinableSet& u, const Battery& battery);

struct AxiomResult {
  enum class Status { HoldsOnBattery, Violated, Inconclusive };
  Status status = Status::HoldsOnBattery;
  std::size_t cases = 0;
  std::string detail;  // replayable configuration when violated
};

const char* to_string(AxiomResult::Status s);

struct KelleyReport {
  AxiomResult constants, subnets, divergence, iterated_limits;
};

KelleyReport kelley_check(const SpacePresentation& s, const BatteryConfig& cfg);

struct EmpiricalCase {
  std::string net;
  std::string point;
  bool irr = false;
  bool topo = false;
};

struct MainVerdict {
  enum class Conclusion { Topological, NotTopological, OutOfTheoremScope };
  Verdict irr_continuous;
  Verdict k_bounded_sober;
  Conclusion conclusion = Conclusion::OutOfTheoremScope;
  std::size_t agreements = 0;
  std::vector<EmpiricalCase> disagreements;
};

const char* to_string(MainVerdict::Conclusion c);

MainVerdict main_verdict(const SpacePresentation& s, const BatteryConfig& cfg);

}  // namespace irrtopo
