#include "irrtopo/index_set.hpp"

#include <algorithm>

namespace irrtopo {

IndexSet IndexSet::range(Index from, Index to) {
  IndexSet s;
  if (from < 0) from = 0;
  if (from <= to) s.runs_.emplace_back(from, to);
  return s;
}

bool IndexSet::contains(Index k) const {
  for (const auto& [a, b] : runs_)
    if (a <= k && k <= b) return true;
  return false;
}

std::optional<Index> IndexSet::min() const {
  if (runs_.empty()) return std::nullopt;
  return runs_.front().first;
}

std::optional<Index> IndexSet::max() const {
  if (runs_.empty() || infinite()) return std::nullopt;
  return runs_.back().second;
}

void IndexSet::normalize() {
  std::sort(runs_.begin(), runs_.end());
  std::vector<Run> merged;
  for (const auto& r : runs_) {
    if (r.first > r.second) continue;
    if (!merged.empty() && (merged.back().second == kInf || merged.back().second + 1 >= r.first)) {
      merged.back().second = std::max(merged.back().second, r.second);
    } else {
      merged.push_back(r);
    }
  }
  runs_ = std::move(merged);
}

IndexSet IndexSet::complement() const {
  IndexSet out;
  Index next = 0;
  for (const auto& [a, b] : runs_) {
    if (a > next) out.runs_.emplace_back(next, a - 1);
    if (b == kInf) return out;
    next = b + 1;
  }
  out.runs_.emplace_back(next, kInf);
  return out;
}

IndexSet operator|(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  out.runs_ = a.runs_;
  out.runs_.insert(out.runs_.end(), b.runs_.begin(), b.runs_.end());
  out.normalize();
  return out;
}

IndexSet operator&(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  for (const auto& [a1, b1] : a.runs_)
    for (const auto& [a2, b2] : b.runs_) {
      const Index lo = std::max(a1, a2);
      const Index hi = std::min(b1, b2);
      if (lo <= hi) out.runs_.emplace_back(lo, hi);
    }
  out.normalize();
  return out;
}

void IndexSet::breakpoints(std::vector<Index>& out) const {
  for (const auto& [a, b] : runs_) {
    out.push_back(a);
    if (b != kInf) out.push_back(b);
  }
}

}  // namespace irrtopo
