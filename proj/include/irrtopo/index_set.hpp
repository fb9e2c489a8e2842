#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace irrtopo {

using Index = std::int64_t;
inline constexpr Index kInf = std::numeric_limits<Index>::max();

/// Finite union of ranges of naturals; the last range may be unbounded.
/// Runs are sorted, disjoint and non-adjacent, so equality is structural.
class IndexSet {
 public:
  using Run = std::pair<Index, Index>;  // inclusive; second == kInf for tails

  IndexSet() = default;

  static IndexSet all() { return range(0, kInf); }
  static IndexSet single(Index k) { return range(k, k); }
  static IndexSet tail(Index from) { return range(from, kInf); }
  static IndexSet range(Index from, Index to);

  bool empty() const { return runs_.empty(); }
  bool infinite() const { return !runs_.empty() && runs_.back().second == kInf; }
  bool contains(Index k) const;
  std::optional<Index> min() const;
  /// Largest element, or nullopt when empty or infinite.
  std::optional<Index> max() const;
  const std::vector<Run>& runs() const { return runs_; }

  IndexSet complement() const;
  friend IndexSet operator|(const IndexSet& a, const IndexSet& b);
  friend IndexSet operator&(const IndexSet& a, const IndexSet& b);
  bool subset_of(const IndexSet& other) const { return (*this & other) == *this; }

  /// Appends every index at which membership can change.
  void breakpoints(std::vector<Index>& out) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

 private:
  void normalize();
  std::vector<Run> runs_;
};

}  // namespace irrtopo
