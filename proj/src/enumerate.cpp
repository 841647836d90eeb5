#include "ovalsieve/enumerate.hpp"

#include <algorithm>
#include <array>

#include "ovalsieve/error.hpp"

namespace ovalsieve {

namespace {

// Free-tree generation by level sequences (Wright-Richmond-Odlyzko-McKay
// successor on top of the Beyer-Hedetniemi rooted successor). Each free tree
// on `order` vertices is produced exactly once.
using Layout = std::vector<int>;

std::optional<Layout> next_rooted_tree(const Layout& prev, int p = -1) {
  if (p < 0) {
    p = static_cast<int>(prev.size()) - 1;
    while (prev[p] == 1) --p;
  }
  if (p == 0) return std::nullopt;
  int q = p - 1;
  while (prev[q] != prev[p] - 1) --q;
  Layout result = prev;
  for (std::size_t i = p; i < result.size(); ++i) result[i] = result[i - p + q];
  return result;
}

// Splits off the first root subtree: left (levels shifted down by one) and
// the remainder with the root kept.
void split_tree(const Layout& layout, Layout& left, Layout& rest) {
  std::size_t m = layout.size();
  bool one_found = false;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (layout[i] == 1) {
      if (one_found) {
        m = i;
        break;
      }
      one_found = true;
    }
  }
  left.clear();
  rest.clear();
  for (std::size_t i = 1; i < m; ++i) left.push_back(layout[i] - 1);
  rest.push_back(0);
  for (std::size_t i = m; i < layout.size(); ++i) rest.push_back(layout[i]);
}

int height(const Layout& layout) {
  int h = 0;
  for (int v : layout) h = std::max(h, v);
  return h;
}

std::optional<Layout> next_tree(const Layout& candidate) {
  Layout left, rest;
  split_tree(candidate, left, rest);
  int left_height = height(left);
  int rest_height = height(rest);
  bool valid = rest_height >= left_height;
  if (valid && rest_height == left_height) {
    if (left.size() > rest.size())
      valid = false;
    else if (left.size() == rest.size() && left > rest)
      valid = false;
  }
  if (valid) return candidate;
  int p = static_cast<int>(left.size());
  auto next = next_rooted_tree(candidate, p);
  if (!next) return std::nullopt;
  if (candidate[p] > 2) {
    Layout new_left, new_rest;
    split_tree(*next, new_left, new_rest);
    int suffix_len = height(new_left) + 1;
    for (int i = 0; i < suffix_len; ++i)
      (*next)[next->size() - suffix_len + i] = i + 1;
  }
  return next;
}

SphereScheme layout_to_scheme(const Layout& layout) {
  std::vector<std::pair<int, int>> edges;
  std::vector<int> stack = {0};
  for (int i = 1; i < static_cast<int>(layout.size()); ++i) {
    while (layout[stack.back()] != layout[i] - 1) stack.pop_back();
    edges.emplace_back(stack.back(), i);
    stack.push_back(i);
  }
  return SphereScheme::from_edges(static_cast<int>(layout.size()), std::move(edges));
}

}  // namespace

std::vector<std::string> enumerate_schemes(int ovals, int cap) {
  if (ovals < 0) fail(Errc::InvalidInput, "oval count must be nonnegative");
  if (ovals > cap)
    fail(Errc::ResourceCap,
         "oval count " + std::to_string(ovals) + " exceeds the enumeration cap " + std::to_string(cap));
  int order = ovals + 1;
  std::vector<std::string> out;
  if (order == 1) {
    out.push_back("0");
    return out;
  }
  if (order == 2) {
    out.push_back("1");
    return out;
  }
  Layout layout;
  for (int i = 0; i <= order / 2; ++i) layout.push_back(i);
  for (int i = 1; i < (order + 1) / 2; ++i) layout.push_back(i);
  std::optional<Layout> cur = layout;
  while (cur) {
    cur = next_tree(*cur);
    if (cur) {
      out.push_back(layout_to_scheme(*cur).canonical());
      cur = next_rooted_tree(*cur);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void enumerate_schemes(int ovals, const std::function<void(const std::string&)>& emit, int cap) {
  for (const auto& s : enumerate_schemes(ovals, cap)) emit(s);
}

int bezout_triple_bound(const SphereScheme& s) {
  std::array<int, 3> ignored;
  return bezout_triple_bound(s, ignored);
}

int bezout_triple_bound(const SphereScheme& s, std::array<int, 3>& witness) {
  witness = {-1, -1, -1};
  int n = s.region_count();
  if (n < 3) return 0;
  // All-pairs distances; the separating-oval count of a triple equals its
  // Steiner tree size = (d(a,b)+d(b,c)+d(a,c))/2.
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  for (int src = 0; src < n; ++src) {
    auto& d = dist[src];
    d[src] = 0;
    std::vector<int> queue = {src};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      int v = queue[i];
      for (int w : s.adjacency()[v])
        if (d[w] < 0) {
          d[w] = d[v] + 1;
          queue.push_back(w);
        }
    }
  }
  int best = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        int steiner = (dist[a][b] + dist[b][c] + dist[a][c]) / 2;
        if (steiner > best) {
          best = steiner;
          witness = {a, b, c};
        }
      }
  return best;
}

int oval_nesting_level(const SphereScheme& s, int oval) {
  auto [a, b] = s.edges().at(oval);
  int ends[2] = {a, b};
  int h[2] = {0, 0};
  for (int k = 0; k < 2; ++k) {
    // longest path from the endpoint into its side
    std::vector<int> depth(s.region_count(), -1);
    depth[ends[k]] = 0;
    depth[ends[1 - k]] = -2;  // block
    std::vector<int> queue = {ends[k]};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      int v = queue[i];
      for (int w : s.adjacency()[v])
        if (depth[w] == -1) {
          depth[w] = depth[v] + 1;
          h[k] = std::max(h[k], depth[w]);
          queue.push_back(w);
        }
    }
  }
  return std::min(h[0], h[1]) + 1;
}

FilterReport apply_filters(const SphereScheme& s, const FilterConfig& cfg) {
  if (cfg.d < 1) fail(Errc::InvalidInput, "bidegree parameter must be positive");
  FilterReport report;
  report.scheme = s.canonical();
  int l = s.oval_count();
  if (cfg.use_harnack) {
    long long bound = static_cast<long long>(cfg.d - 1) * (cfg.d - 1) + 1;
    if (l > bound)
      report.failures.push_back(
          {"harnack", "l=" + std::to_string(l) + " > " + std::to_string(bound)});
  }
  if (cfg.use_bezout_triple) {
    std::array<int, 3> triple;
    int bound = bezout_triple_bound(s, triple);
    if (bound > cfg.d)
      report.failures.push_back(
          {"bezout_triple", "separating ovals " + std::to_string(bound) + " > d for regions {" +
                                std::to_string(triple[0]) + "," + std::to_string(triple[1]) + "," +
                                std::to_string(triple[2]) + "}"});
  }
  if (cfg.max_depth || cfg.max_nests) {
    int depth = 0, nests = 0, deepest = -1;
    for (int e = 0; e < l; ++e) {
      int level = oval_nesting_level(s, e);
      if (level > depth) {
        depth = level;
        deepest = e;
      }
      if (level >= 2) ++nests;
    }
    if (cfg.max_depth && depth > *cfg.max_depth)
      report.failures.push_back(
          {"max_depth", "oval " + std::to_string(deepest) + " at level " + std::to_string(depth)});
    if (cfg.max_nests && nests > *cfg.max_nests)
      report.failures.push_back({"max_nests", std::to_string(nests) + " nested ovals"});
  }
  report.passed = report.failures.empty();
  return report;
}

}  // namespace ovalsieve
