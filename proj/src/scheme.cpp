#include "ovalsieve/scheme.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "ovalsieve/error.hpp"

namespace ovalsieve {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::IntegerOverflow: return "IntegerOverflow";
    case Errc::OddOvalCount: return "OddOvalCount";
    case Errc::MissingComponentSign: return "MissingComponentSign";
    case Errc::EvenDegree: return "EvenDegree";
    case Errc::OddDegree: return "OddDegree";
    case Errc::NotMCurve: return "NotMCurve";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DimensionCap: return "DimensionCap";
    case Errc::NotIsotropic: return "NotIsotropic";
    case Errc::InconsistentInduced: return "InconsistentInduced";
    case Errc::NotEven: return "NotEven";
    case Errc::Degenerate: return "Degenerate";
    case Errc::EvenSequence: return "EvenSequence";
    case Errc::NonOrientablePlus: return "NonOrientablePlus";
    case Errc::IndexInconsistent: return "IndexInconsistent";
    case Errc::DivisibilityViolated: return "DivisibilityViolated";
    case Errc::NotSpin: return "NotSpin";
    case Errc::ResourceCap: return "ResourceCap";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

namespace {

// Per-scheme safety cap: notation like "999999<...>" could otherwise blow up
// instantiation.
constexpr long long kMaxOvals = 1'000'000;

struct TermAst {
  long long count = 0;
  int sign = +1;
  bool is_nest = false;
  std::vector<TermAst> children;  // the scheme inside the angle brackets
};

class NotationParser {
 public:
  NotationParser(const std::string& text, bool signs_allowed)
      : text_(text), signs_allowed_(signs_allowed) {}

  std::vector<TermAst> parse() {
    auto terms = parse_terms();
    skip_ws();
    if (pos_ != text_.size()) err("unexpected trailing input");
    return terms;
  }

 private:
  std::vector<TermAst> parse_terms() {
    std::vector<TermAst> terms;
    terms.push_back(parse_term());
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '+') {
        ++pos_;
        terms.push_back(parse_term());
      } else {
        break;
      }
    }
    return terms;
  }

  TermAst parse_term() {
    skip_ws();
    TermAst t;
    t.count = parse_int();
    t.sign = parse_sign();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '<') {
      ++pos_;
      t.is_nest = true;
      t.children = parse_terms();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '>') err("expected '>'");
      ++pos_;
    }
    return t;
  }

  long long parse_int() {
    skip_ws();
    if (pos_ >= text_.size() || !isdigit(text_[pos_])) err("expected a count");
    long long value = 0;
    while (pos_ < text_.size() && isdigit(text_[pos_])) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > kMaxOvals) fail(Errc::IntegerOverflow, "oval count exceeds " + std::to_string(kMaxOvals));
      ++pos_;
    }
    return value;
  }

  int parse_sign() {
    if (pos_ < text_.size() && text_[pos_] == '^') {
      if (!signs_allowed_) err("orientation signs are not allowed here");
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-'))
        return text_[pos_++] == '+' ? +1 : -1;
      err("expected '+' or '-' after '^'");
    }
    return +1;
  }

  static bool isdigit(char c) { return c >= '0' && c <= '9'; }
  void skip_ws() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }
  [[noreturn]] void err(const std::string& what) {
    fail(Errc::SyntaxError, "syntax error at position " + std::to_string(pos_) + ": " + what);
  }

  const std::string& text_;
  bool signs_allowed_;
  std::size_t pos_ = 0;
};

struct TreeBuilder {
  std::vector<std::pair<int, int>> edges;
  std::vector<int> signs;
  int regions = 1;  // region 0 = parse root

  void instantiate(int at, const std::vector<TermAst>& terms) {
    for (const auto& t : terms) {
      for (long long i = 0; i < t.count; ++i) {
        int child = regions++;
        if (regions > kMaxOvals + 1) fail(Errc::IntegerOverflow, "scheme too large");
        edges.emplace_back(at, child);
        signs.push_back(t.sign);
        if (t.is_nest) instantiate(child, t.children);
      }
    }
  }
};

// Canonical notation of the subtree hanging off `v` away from `parent`.
// Leaf children fold into a single count term; identical nested subtrees are
// grouped with a multiplicity. Returns "" for a childless vertex.
std::string encode_rooted(const std::vector<std::vector<int>>& adj, int v, int parent) {
  long long leaves = 0;
  std::vector<std::string> nests;
  for (int w : adj[v]) {
    if (w == parent) continue;
    std::string sub = encode_rooted(adj, w, v);
    if (sub.empty())
      ++leaves;
    else
      nests.push_back(std::move(sub));
  }
  std::sort(nests.begin(), nests.end());
  std::string out;
  if (leaves > 0) out = std::to_string(leaves);
  for (std::size_t i = 0; i < nests.size();) {
    std::size_t j = i;
    while (j < nests.size() && nests[j] == nests[i]) ++j;
    if (!out.empty()) out += '+';
    out += std::to_string(j - i);
    out += '<';
    out += nests[i];
    out += '>';
    i = j;
  }
  return out;
}

std::vector<int> tree_centroids(const std::vector<std::vector<int>>& adj) {
  int n = static_cast<int>(adj.size());
  if (n == 1) return {0};
  std::vector<int> size(n, 1), order, parent(n, -1);
  order.reserve(n);
  order.push_back(0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    for (int w : adj[v])
      if (w != parent[v]) {
        parent[w] = v;
        order.push_back(w);
      }
  }
  for (int i = n - 1; i > 0; --i) size[parent[order[i]]] += size[order[i]];
  int best = n + 1;
  std::vector<int> centroids;
  for (int v = 0; v < n; ++v) {
    int maxcomp = n - size[v];
    for (int w : adj[v])
      if (w != parent[v]) maxcomp = std::max(maxcomp, size[w]);
    if (maxcomp < best) {
      best = maxcomp;
      centroids = {v};
    } else if (maxcomp == best) {
      centroids.push_back(v);
    }
  }
  return centroids;
}

}  // namespace

SphereScheme::SphereScheme() : adj_(1) {}

SphereScheme SphereScheme::from_edges(int regions, std::vector<std::pair<int, int>> edges) {
  if (regions < 1 || static_cast<int>(edges.size()) != regions - 1)
    fail(Errc::InvalidInput, "a scheme on n regions needs exactly n-1 ovals");
  SphereScheme s;
  s.adj_.assign(regions, {});
  s.edges_ = std::move(edges);
  for (auto [a, b] : s.edges_) {
    if (a < 0 || b < 0 || a >= regions || b >= regions || a == b)
      fail(Errc::InvalidInput, "bad oval endpoints");
    s.adj_[a].push_back(b);
    s.adj_[b].push_back(a);
  }
  // connectivity (acyclicity follows from the edge count)
  std::vector<char> seen(regions, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int visited = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : s.adj_[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++visited;
        stack.push_back(w);
      }
  }
  if (visited != regions) fail(Errc::InvalidInput, "region graph is not connected");
  return s;
}

std::vector<int> SphereScheme::side_regions(int oval, int side) const {
  auto [a, b] = edges_.at(oval);
  if (side != a && side != b) fail(Errc::InvalidInput, "side must be an endpoint of the oval");
  int other = side == a ? b : a;
  std::vector<int> out, stack = {side};
  std::vector<char> seen(adj_.size(), 0);
  seen[side] = 1;
  seen[other] = 1;  // block the crossing
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (int w : adj_[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::string& SphereScheme::canonical() const {
  if (!canonical_.empty()) return canonical_;
  std::string best;
  for (int c : tree_centroids(adj_)) {
    std::string enc = encode_rooted(adj_, c, -1);
    if (best.empty() || enc < best) best = enc;
  }
  canonical_ = best.empty() ? "0" : best;
  return canonical_;
}

SphereScheme parse_scheme(const std::string& text) {
  auto ast = NotationParser(text, /*signs_allowed=*/false).parse();
  TreeBuilder b;
  b.instantiate(0, ast);
  return SphereScheme::from_edges(b.regions, std::move(b.edges));
}

std::string render_canonical(const SphereScheme& s) { return s.canonical(); }

long long PartLabeling::chi_b0() const {
  if (ambiguous()) fail(Errc::OddOvalCount, "B0 is not determined when l is odd");
  return chi[b0_index];
}

long long PartLabeling::chi_b1() const {
  if (ambiguous()) fail(Errc::OddOvalCount, "B1 is not determined when l is odd");
  return chi[1 - b0_index];
}

PartLabeling euler_parts(const SphereScheme& s) {
  int n = s.region_count();
  PartLabeling lab;
  lab.color.assign(n, 0);
  std::vector<char> seen(n, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : s.adjacency()[v])
      if (!seen[w]) {
        seen[w] = 1;
        lab.color[w] = static_cast<std::uint8_t>(1 - lab.color[v]);
        stack.push_back(w);
      }
  }
  for (int v = 0; v < n; ++v) {
    lab.chi[lab.color[v]] += s.region_chi(v);
    lab.component_chis[lab.color[v]].push_back(s.region_chi(v));
  }
  if (lab.chi[0] + lab.chi[1] != 2)
    fail(Errc::InternalInvariant, "part characteristics must sum to 2");
  if (s.oval_count() % 2 == 0) {
    bool z0 = ((lab.chi[0] % 4) + 4) % 4 == 0;
    bool z1 = ((lab.chi[1] % 4) + 4) % 4 == 0;
    if (z0 == z1) fail(Errc::InternalInvariant, "exactly one part must have chi = 0 (mod 4)");
    lab.b0_index = z0 ? 0 : 1;
  }
  return lab;
}

int x_of_oval(const SphereScheme& s, int oval) {
  if (s.oval_count() % 2 != 0)
    fail(Errc::OddOvalCount, "x(C) is only defined for an even oval count");
  PartLabeling lab = euler_parts(s);
  int b1 = 1 - lab.b0_index;
  auto [a, b] = s.edges().at(oval);
  long long sides[2] = {0, 0};
  int endpoint[2] = {a, b};
  for (int k = 0; k < 2; ++k)
    for (int v : s.side_regions(oval, endpoint[k]))
      if (lab.color[v] == b1) sides[k] += s.region_chi(v);
  if (((sides[0] - sides[1]) % 2 + 2) % 2 != 0)
    fail(Errc::InternalInvariant, "the two sides of x(C) disagree");
  return static_cast<int>(((sides[0] % 2) + 2) % 2);
}

std::vector<int> x_table(const SphereScheme& s) {
  std::vector<int> xs(s.oval_count());
  for (int e = 0; e < s.oval_count(); ++e) xs[e] = x_of_oval(s, e);
  return xs;
}

OrientedScheme parse_oriented_scheme(const std::string& text) {
  auto ast = NotationParser(text, /*signs_allowed=*/true).parse();
  TreeBuilder b;
  b.instantiate(0, ast);
  OrientedScheme o;
  o.base = SphereScheme::from_edges(b.regions, std::move(b.edges));
  o.oval_sign = std::move(b.signs);
  return o;
}

std::vector<int> disorienting_set(const OrientedScheme& o, const PartLabeling& labeling,
                                  const std::map<int, int>& b0_orient) {
  if (labeling.ambiguous()) fail(Errc::OddOvalCount, "B0 is not determined when l is odd");
  if (static_cast<int>(o.oval_sign.size()) != o.base.oval_count())
    fail(Errc::InvalidInput, "one orientation sign per oval required");
  std::vector<int> out;
  for (int e = 0; e < o.base.oval_count(); ++e) {
    auto [a, b] = o.base.edges()[e];
    int b0_region = labeling.color[a] == labeling.b0_index ? a : b;
    auto it = b0_orient.find(b0_region);
    if (it == b0_orient.end())
      fail(Errc::MissingComponentSign, "no orientation sign for B0 region " + std::to_string(b0_region));
    if (o.oval_sign[e] != it->second) out.push_back(e);
  }
  return out;
}

PlaneScheme::PlaneScheme() : parent_(1, -1), children_(1) {}

PlaneScheme PlaneScheme::from_parents(std::vector<int> parents) {
  PlaneScheme p;
  p.parent_ = std::move(parents);
  int n = static_cast<int>(p.parent_.size());
  if (n < 1 || p.parent_[0] != -1) fail(Errc::InvalidInput, "region 0 must be the outer region");
  p.children_.assign(n, {});
  for (int v = 1; v < n; ++v) {
    if (p.parent_[v] < 0 || p.parent_[v] >= n || p.parent_[v] == v)
      fail(Errc::InvalidInput, "bad parent index");
    p.children_[p.parent_[v]].push_back(v);
  }
  return p;
}

PlaneScheme parse_plane_scheme(const std::string& text) {
  auto ast = NotationParser(text, /*signs_allowed=*/false).parse();
  TreeBuilder b;
  b.instantiate(0, ast);
  std::vector<int> parents(b.regions, -1);
  for (auto [a, c] : b.edges) parents[c] = a;
  return PlaneScheme::from_parents(std::move(parents));
}

std::array<PlanePart, 2> plane_euler_parts(const PlaneScheme& p) {
  std::array<PlanePart, 2> parts;
  parts[0].orientable = false;  // contains the outer region
  parts[1].orientable = true;
  std::vector<int> depth(p.region_count(), 0);
  for (int v = 0; v < p.region_count(); ++v) {
    if (v > 0) depth[v] = depth[p.parent(v)] + 1;
    auto& part = parts[depth[v] % 2];
    part.chi += p.region_chi(v);
    part.component_chis.push_back(p.region_chi(v));
  }
  if (parts[0].chi + parts[1].chi != 1)
    fail(Errc::InternalInvariant, "plane part characteristics must sum to 1");
  return parts;
}

}  // namespace ovalsieve
