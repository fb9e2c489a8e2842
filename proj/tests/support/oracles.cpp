#include "oracles.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#ifndef IRRTOPO_SPACES_DIR
#error "IRRTOPO_SPACES_DIR must point at the bundled spaces"
#endif

namespace irrtopo::testing {

std::uint64_t canonical_code(const Poset& p) {
  std::vector<int> perm(p.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t code = 0;
    for (int i = 0; i < p.n; ++i)
      for (int j = 0; j < p.n; ++j) code = (code << 1) | (p.leq[perm[i]][perm[j]] ? 1u : 0u);
    best = std::min(best, code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<Poset> all_posets(int max_n) {
  std::vector<Poset> out;
  std::vector<Poset> level{Poset{1, {{true}}}};
  for (int n = 1; n <= max_n; ++n) {
    out.insert(out.end(), level.begin(), level.end());
    if (n == max_n) break;
    std::set<std::uint64_t> seen;
    std::vector<Poset> next;
    for (const auto& p : level) {
      // New maximal element whose strict down-set is any order ideal of p.
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool ideal = true;
        for (int a = 0; a < n && ideal; ++a)
          for (int b = 0; b < n && ideal; ++b)
            if (((mask >> b) & 1u) && p.leq[a][b] && !((mask >> a) & 1u)) ideal = false;
        if (!ideal) continue;
        Poset q{n + 1, std::vector<std::vector<bool>>(n + 1, std::vector<bool>(n + 1, false))};
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) q.leq[a][b] = p.leq[a][b];
        for (int a = 0; a < n; ++a) q.leq[a][n] = (mask >> a) & 1u;
        q.leq[n][n] = true;
        if (seen.insert(canonical_code(q)).second) next.push_back(std::move(q));
      }
    }
    level = std::move(next);
  }
  return out;
}

std::string space_text(const Poset& p) {
  std::ostringstream out;
  out << "space finite name \"poset\"\npoints";
  for (int i = 0; i < p.n; ++i) out << " p" << i;
  out << "\n";
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j)
      if (i != j && p.leq[i][j]) out << "rel p" << i << " <= p" << j << "\n";
  out << "topology alexandroff\n";
  return out.str();
}

SpacePresentation to_space(const Poset& p) { return parse_presentation(space_text(p)); }

std::vector<std::uint32_t> directed_subsets(const Poset& p) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 1; mask < (1u << p.n); ++mask) {
    bool directed = true;
    for (int a = 0; a < p.n && directed; ++a)
      for (int b = 0; b < p.n && directed; ++b) {
        if (!((mask >> a) & 1u) || !((mask >> b) & 1u)) continue;
        bool bound = false;
        for (int c = 0; c < p.n && !bound; ++c) bound = ((mask >> c) & 1u) && p.leq[a][c] && p.leq[b][c];
        directed = bound;
      }
    if (directed) out.push_back(mask);
  }
  return out;
}

std::optional<int> lub(const Poset& p, std::uint32_t mask) {
  std::vector<int> ubs;
  for (int c = 0; c < p.n; ++c) {
    bool ub = true;
    for (int a = 0; a < p.n && ub; ++a)
      if ((mask >> a) & 1u) ub = p.leq[a][c];
    if (ub) ubs.push_back(c);
  }
  for (int c : ubs)
    if (std::all_of(ubs.begin(), ubs.end(), [&](int d) { return p.leq[c][d]; })) return c;
  return std::nullopt;
}

bool classical_way_below(const Poset& p, int x, int y) {
  for (std::uint32_t d : directed_subsets(p)) {
    const auto s = lub(p, d);
    if (!s || !p.leq[y][*s]) continue;
    bool meets = false;
    for (int e = 0; e < p.n && !meets; ++e) meets = ((d >> e) & 1u) && p.leq[x][e];
    if (!meets) return false;
  }
  return true;
}

std::string read_space_file(const std::string& name) {
  std::ifstream in(std::string(IRRTOPO_SPACES_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing space file " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SpacePresentation load_space(const std::string& name) { return parse_presentation(read_space_file(name)); }

std::vector<std::string> bundled_spaces() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(IRRTOPO_SPACES_DIR))
    if (e.path().extension() == ".space" && e.path().filename() != "nonsense.space") out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace irrtopo::testing
