#include "fusswalk/ncst.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <utility>

#include "fusswalk/caps.hpp"
#include "fusswalk/errors.hpp"

namespace fusswalk {

namespace {

std::string edge_str(Edge e) {
  return std::to_string(e.a) + "-" + std::to_string(e.b);
}

// Union-find over a small point range.
class Dsu {
 public:
  explicit Dsu(int size) : parent_(size) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    parent_[x] = y;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

bool crossing(Edge e, Edge f) {
  if (e.a > f.a) std::swap(e, f);
  return e.a < f.a && f.a < e.b && e.b < f.b;
}

Ncst Ncst::validate(int n, std::vector<Edge> edges) {
  require(n >= 0, ErrorCode::kNotSpanning, "negative point count");
  require(static_cast<int>(edges.size()) == n, ErrorCode::kNotSpanning,
          "expected " + std::to_string(n) + " edges, got " +
              std::to_string(edges.size()));
  for (Edge& e : edges) {
    require(0 <= e.a && e.a < e.b && e.b <= n, ErrorCode::kNotSpanning,
            "edge " + edge_str(e) + " out of range for points 0.." +
                std::to_string(n));
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 1; i < edges.size(); ++i)
    require(edges[i - 1] != edges[i], ErrorCode::kNotSpanning,
            "duplicate edge " + edge_str(edges[i]));

  Dsu dsu(n + 1);
  for (Edge e : edges)
    require(dsu.unite(e.a, e.b), ErrorCode::kNotSpanning,
            "cycle through edge " + edge_str(e));
  // n edges and no cycle over n+1 points implies connected.

  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = i + 1; j < edges.size(); ++j)
      require(!crossing(edges[i], edges[j]), ErrorCode::kCrossing,
              "edges " + edge_str(edges[i]) + " and " + edge_str(edges[j]) +
                  " cross");

  Ncst t;
  t.n_ = n;
  t.edges_ = std::move(edges);
  return t;
}

Ncst Ncst::parse(std::string_view text) {
  std::vector<Edge> edges;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view item = text.substr(
        pos, comma == std::string_view::npos ? std::string_view::npos
                                             : comma - pos);
    std::size_t dash = item.find('-');
    require(dash != std::string_view::npos, ErrorCode::kBadCharacter,
            "expected 'a-b', got '" + std::string(item) + "'");
    Edge e;
    auto parse_int = [&](std::string_view s, int& out) {
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      require(ec == std::errc() && ptr == s.data() + s.size(),
              ErrorCode::kBadCharacter,
              "bad integer '" + std::string(s) + "'");
    };
    parse_int(item.substr(0, dash), e.a);
    parse_int(item.substr(dash + 1), e.b);
    edges.push_back(e);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  const int n = static_cast<int>(edges.size());
  return validate(n, std::move(edges));
}

bool Ncst::contains(Edge e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::string Ncst::str() const {
  std::string out;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (i) out.push_back(',');
    out += edge_str(edges_[i]);
  }
  return out;
}

std::vector<Edge> restrict_edges(const Ncst& t, int lo, int hi) {
  std::vector<Edge> out;
  for (Edge e : t.edges())
    if (lo <= e.a && e.b <= hi) out.push_back({e.a - lo, e.b - lo});
  return out;
}

Ncst subtree(const Ncst& t, int lo, int hi) {
  std::vector<Edge> edges = restrict_edges(t, lo, hi);
  require(static_cast<int>(edges.size()) == hi - lo, ErrorCode::kNotSpanning,
          "[" + std::to_string(lo) + "," + std::to_string(hi) +
              "] does not induce a spanning subtree");
  return Ncst::validate(hi - lo, std::move(edges));
}

namespace {

// Largest s such that points lo..s form one connected block under the given
// edges (all of which lie within [lo, hi]); scans s upward.
int connected_prefix_end(const std::vector<Edge>& edges, int lo, int hi) {
  Dsu dsu(hi - lo + 1);
  std::vector<std::vector<int>> partners(hi - lo + 1);
  for (Edge e : edges) {
    partners[e.b - lo].push_back(e.a - lo);
  }
  int s = lo;
  int components = 1;
  for (int v = lo + 1; v <= hi; ++v) {
    ++components;
    for (int u : partners[v - lo])
      if (dsu.unite(u, v - lo)) --components;
    if (components == 1) s = v;
  }
  return s;
}

}  // namespace

TreeDecomposition decompose_tree(const Ncst& t) {
  require(!t.empty(), ErrorCode::kEmptyTree, "cannot decompose");
  int pivot_b = -1;
  for (Edge e : t.edges())
    if (e.a == 0) pivot_b = std::max(pivot_b, e.b);
  require(pivot_b >= 1, ErrorCode::kInternal, "point 0 must have an edge");
  const Edge pivot{0, pivot_b};

  std::vector<Edge> beneath;
  for (Edge e : t.edges())
    if (e != pivot && e.b <= pivot_b) beneath.push_back(e);
  const int s = connected_prefix_end(beneath, 0, pivot_b);

  TreeDecomposition out;
  out.pivot = pivot;
  out.gap = s;
  out.t_a = subtree(t, 0, s);
  out.t_b = subtree(t, s + 1, pivot_b);
  out.t_c = subtree(t, pivot_b, t.size());
  return out;
}

Ncst compose_tree(const Ncst& t_a, const Ncst& t_b, const Ncst& t_c) {
  const int s = t_a.size();
  const int pivot_b = s + 1 + t_b.size();
  const int n = pivot_b + t_c.size();
  std::vector<Edge> edges = t_a.edges();
  for (Edge e : t_b.edges()) edges.push_back({e.a + s + 1, e.b + s + 1});
  for (Edge e : t_c.edges()) edges.push_back({e.a + pivot_b, e.b + pivot_b});
  edges.push_back({0, pivot_b});
  return Ncst::validate(n, std::move(edges));
}

std::optional<Edge> overarching_edge(const Ncst& t, Edge e) {
  require(t.contains(e), ErrorCode::kEdgeNotInTree, "no edge " + edge_str(e));
  std::optional<Edge> best;
  for (Edge f : t.edges()) {
    if (f == e || f.a > e.a || f.b < e.b) continue;
    // Enclosing edges form a nesting chain, so the innermost is unique.
    if (!best || (f.a >= best->a && f.b <= best->b)) best = f;
  }
  return best;
}

int gap_beneath(const Ncst& t, Edge e) {
  require(t.contains(e), ErrorCode::kEdgeNotInTree, "no edge " + edge_str(e));
  std::vector<Edge> beneath;
  for (Edge f : t.edges())
    if (f != e && e.a <= f.a && f.b <= e.b) beneath.push_back(f);
  return connected_prefix_end(beneath, e.a, e.b);
}

std::vector<Segment> minimal_segments(const Ncst& t, std::optional<Edge> e) {
  if (e) {
    require(t.contains(*e), ErrorCode::kEdgeNotInTree,
            "no edge " + edge_str(*e));
  }
  std::vector<Segment> out;
  for (Edge f : t.edges()) {
    if (e && f == *e) continue;
    if (overarching_edge(t, f) == e) out.push_back({f.a, f.b});
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void trees_of_size(int n, std::vector<std::vector<Ncst>>& memo) {
  if (static_cast<int>(memo.size()) > n) return;
  trees_of_size(n - 1, memo);
  std::vector<Ncst> out;
  for (int sa = 0; sa <= n - 1; ++sa)
    for (int sb = 0; sb + sa <= n - 1; ++sb) {
      const int sc = n - 1 - sa - sb;
      for (const Ncst& a : memo[sa])
        for (const Ncst& b : memo[sb])
          for (const Ncst& c : memo[sc]) out.push_back(compose_tree(a, b, c));
    }
  memo.push_back(std::move(out));
}

}  // namespace

std::vector<Ncst> enumerate_trees(int n, int cap) {
  require(n >= 0, ErrorCode::kSizeMismatch, "n must be non-negative");
  require(n <= cap, ErrorCode::kCapExceeded,
          "n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  std::vector<std::vector<Ncst>> memo;
  memo.push_back({Ncst()});
  trees_of_size(n, memo);
  return memo[static_cast<std::size_t>(n)];
}

std::vector<Ncst> enumerate_trees(int n) {
  return enumerate_trees(n, caps().enumeration);
}

}  // namespace fusswalk
