#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "irrtopo/definable.hpp"
#include "irrtopo/verdict.hpp"

namespace irrtopo {

// ---------------------------------------------------------------------------
// Errors

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, std::string expected)
      : std::runtime_error("line " + std::to_string(line) + ": expected " + expected),
        line_(line),
        expected_(std::move(expected)) {}
  int line() const { return line_; }
  const std::string& expected() const { return expected_; }

 private:
  int line_;
  std::string expected_;
};

class ValidationError : public std::runtime_error {
 public:
  enum class Kind { NotAntisymmetric, SupNotLUB, UnknownCell, UnsupportedRelation, TopologyMismatch, DegenerateCarrier };
  ValidationError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Precondition failures of the analysis operations.
class DomainError : public std::invalid_argument {
 public:
  enum class Kind { PointNotInCarrier, EmptySet, UnsupportedKind, IndexOutOfRange, NotInWitnessFamily, BadNet };
  DomainError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// ---------------------------------------------------------------------------
// Presentations

enum class SpaceKind { FinitePoset, VSpace, RationalChain };
enum class BaseTopology { Alexandroff, Scott, Upper };

/// Base topology followed by `level` SI derivatives.
struct TopologyDescriptor {
  BaseTopology base = BaseTopology::Alexandroff;
  int level = 0;
  friend bool operator==(const TopologyDescriptor&, const TopologyDescriptor&) = default;
};

struct PointBelowPoint { std::string below, above; };
struct PointBelowChainAt { std::string point, cell; Index index; };
struct ChainAtBelowPoint { std::string cell; Index index; std::string point; };
struct ChainBelowPoint { std::string cell, point; };
using OrderRelation = std::variant<PointBelowPoint, PointBelowChainAt, ChainAtBelowPoint, ChainBelowPoint>;

struct SupDeclaration {
  std::string chain;
  std::string point;
};

struct RationalEnd {
  enum class Kind { Included, Excluded, Unbounded };
  Kind kind = Kind::Unbounded;
  Rational value;
};

/// Element of a cell space: finite point `at` when chain < 0, else chain@at.
struct Elem {
  int chain = -1;
  Index at = 0;
  bool finite() const { return chain < 0; }
  friend auto operator<=>(const Elem&, const Elem&) = default;
};

/// Order data of a cell space after saturation of the relations.
struct CellOrder {
  static constexpr Index kNone = -1;
  std::vector<std::vector<bool>> leq;   // finite point vs finite point
  std::vector<std::vector<Index>> lo;   // lo[p][c]: least k with p <= c@k, kInf if none
  std::vector<std::vector<Index>> hi;   // hi[c][p]: largest k with c@k <= p, kNone/kInf
};

/// SI-inaccessibility condition: an open containing `sup` must meet `set`.
struct Constraint {
  Elem sup;
  CellSet set;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Opens of a cell space: upper sets, restricted to the upper topology when
/// `upper_base`, and satisfying every constraint.
struct CellTopology {
  bool upper_base = false;
  std::vector<Constraint> constraints;
};

/// Opens of a rational chain are up-rays; `closed_rays` admits [q,->) with q
/// above the minimum (the Alexandroff case).
struct RationalTopology {
  bool closed_rays = false;
};

/// Validated, immutable description of a countable T0 space.
struct SpacePresentation {
  SpaceKind kind = SpaceKind::FinitePoset;
  std::string name;
  std::vector<std::string> points;
  std::vector<std::string> chains;
  std::vector<OrderRelation> relations;
  std::vector<SupDeclaration> sups;
  RationalEnd lo, hi;
  TopologyDescriptor topology;
  std::vector<std::vector<std::string>> declared_opens;  // finite spaces only; checked then dropped

  // Filled in by validation.
  CellOrder order;
  CellTopology cell_topology;
  RationalTopology rational_topology;

  bool is_cells() const { return kind != SpaceKind::RationalChain; }
  int point_index(std::string_view name) const;  // -1 if absent
  int chain_index(std::string_view name) const;  // -1 if absent
  Interval carrier() const;
};

/// Parses and validates a space file.
SpacePresentation parse_presentation(std::string_view text);
/// Validates a programmatically built presentation (computes the order closure).
SpacePresentation validate(SpacePresentation s);
/// Canonical space-file text; parse_presentation(emit_presentation(s)) reproduces s.
std::string emit_presentation(const SpacePresentation& s);

// ---------------------------------------------------------------------------
// Points and sets

PointId parse_point(const SpacePresentation& s, std::string_view text);
bool in_carrier(const SpacePresentation& s, const PointId& p);
Elem to_elem(const SpacePresentation& s, const PointId& p);
PointId to_point(const SpacePresentation& s, const Elem& e);

/// Literal syntax: atoms joined by '|', e.g. "tail(A,5) | {top}", "(0,1/2]",
/// "seg(A,2,4)", "{a, A@3}", "all", "empty".
DefinableSet parse_set(const SpacePresentation& s, std::string_view text);
/// Canonical atom listing, parseable by parse_set.
std::string format_set(const SpacePresentation& s, const DefinableSet& e);

DefinableSet whole_space(const SpacePresentation& s);
DefinableSet empty_set(const SpacePresentation& s);
DefinableSet singleton(const SpacePresentation& s, const PointId& p);
DefinableSet complement(const SpacePresentation& s, const DefinableSet& e);
bool contains(const SpacePresentation& s, const DefinableSet& e, const PointId& p);

// ---------------------------------------------------------------------------
// Order and topology

bool leq(const SpacePresentation& s, const PointId& x, const PointId& y);
DefinableSet up_set(const SpacePresentation& s, const DefinableSet& e);
DefinableSet down_set(const SpacePresentation& s, const DefinableSet& e);
DefinableSet closure(const SpacePresentation& s, const DefinableSet& e);
bool is_open(const SpacePresentation& s, const DefinableSet& u);
bool is_closed(const SpacePresentation& s, const DefinableSet& c);
/// Checks x in cl{y} <=> x <= y over the point schemas of the space.
Verdict specialization_check(const SpacePresentation& s);

/// Deterministic sample of carrier points covering every point schema
/// (all finite points, chain indices around every breakpoint, rationals at the
/// ends and inside the carrier).
std::vector<PointId> schema_points(const SpacePresentation& s);

}  // namespace irrtopo
