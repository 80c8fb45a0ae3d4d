#include "fusswalk/bijection.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "fusswalk/errors.hpp"

namespace fusswalk {

namespace {

// Recursion on lattice block boundaries; no intermediate slices are built.
// The block spans lattice [lo, hi] at baseline h[lo] and owns the points
// [point_lo, point_lo + (hi - lo) / 3].
void emit_edges(const std::vector<int>& h, int lo, int hi, int point_lo,
                std::vector<Edge>& out) {
  if (lo == hi) return;
  const int base = h[lo];
  int down = -1;  // structural down-step: first return to the baseline
  for (int j = lo + 1; j <= hi; ++j) {
    if (h[j] == base) {
      down = j;
      break;
    }
  }
  int last_one = lo;  // last baseline+1 position before it
  for (int j = lo + 1; j < down; ++j)
    if (h[j] == base + 1) last_one = j;
  const int u2 = last_one + 1;
  const int size_a = (u2 - lo - 2) / 3;
  const int size_b = (down - 1 - u2) / 3;
  const int pivot_b = point_lo + size_a + 1 + size_b;
  out.push_back({point_lo, pivot_b});
  emit_edges(h, lo + 1, u2 - 1, point_lo, out);
  emit_edges(h, u2, down - 1, point_lo + size_a + 1, out);
  emit_edges(h, down, hi, pivot_b, out);
}

// Inverse recursion on point intervals over a fixed adjacency view. The
// subtree [lo, hi] contributes Up A Up B Down C to the step buffer, where A,
// B, C are the parts split at the pivot edge (lo, t) and the gap beneath it.
struct TreeView {
  // rights[a] = ascending right endpoints of the edges (a, b);
  // partners[b] = the left endpoints of the edges (a, b)
  std::vector<std::vector<int>> rights;
  std::vector<std::vector<int>> partners;

  explicit TreeView(const Ncst& t)
      : rights(static_cast<std::size_t>(t.points())),
        partners(static_cast<std::size_t>(t.points())) {
    for (Edge e : t.edges()) {  // canonical order keeps rights[] sorted
      rights[static_cast<std::size_t>(e.a)].push_back(e.b);
      partners[static_cast<std::size_t>(e.b)].push_back(e.a);
    }
  }

  // The pivot of the subtree [lo, hi]: the longest edge from lo that stays
  // inside the interval. A parent pivot from the same left point can reach
  // beyond hi, so cap the search at hi.
  int pivot(int lo, int hi) const {
    const auto& r = rights[static_cast<std::size_t>(lo)];
    auto it = std::upper_bound(r.begin(), r.end(), hi);
    return it == r.begin() ? -1 : *(it - 1);
  }

  // Largest s with the induced prefix [lo, s] connected after dropping the
  // pivot (lo, t). Prefix connectivity is not monotone, so sweep the whole
  // span with union-find and keep the last fully connected point.
  int gap(int lo, int t) const {
    std::vector<int> parent(static_cast<std::size_t>(t - lo) + 1);
    for (std::size_t i = 0; i < parent.size(); ++i)
      parent[i] = static_cast<int>(i);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x)
        x = parent[static_cast<std::size_t>(x)] =
            parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      return x;
    };
    int s = lo;
    int components = 1;
    for (int v = lo + 1; v <= t; ++v) {
      ++components;
      for (int a : partners[static_cast<std::size_t>(v)]) {
        if (a < lo || (a == lo && v == t)) continue;  // outside, or the pivot
        const int ra = find(a - lo), rv = find(v - lo);
        if (ra != rv) {
          parent[static_cast<std::size_t>(ra)] = rv;
          --components;
        }
      }
      if (components == 1) s = v;
    }
    return s;
  }
};

void emit_steps(const TreeView& view, int lo, int hi,
                std::vector<Step>& out) {
  if (lo == hi) return;
  const int t = view.pivot(lo, hi);
  require(lo < t && t <= hi, ErrorCode::kInternal,
          "subtree without a pivot edge");
  const int s = view.gap(lo, t);
  out.push_back(Step::kUp);
  emit_steps(view, lo, s, out);
  out.push_back(Step::kUp);
  emit_steps(view, s + 1, t, out);
  out.push_back(Step::kDown);
  emit_steps(view, t, hi, out);
}

}  // namespace

Ncst path_to_tree(const DyckPath& p) {
  if (p.empty()) return Ncst();
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(p.size()));
  emit_edges(p.heights(), 0, p.length(), 0, edges);
  return Ncst::validate(p.size(), std::move(edges));
}

DyckPath tree_to_path(const Ncst& t) {
  if (t.empty()) return DyckPath();
  std::vector<Step> steps;
  steps.reserve(static_cast<std::size_t>(3 * t.size()));
  emit_steps(TreeView(t), 0, t.size(), steps);
  return DyckPath::validate(std::move(steps));
}

bool check_concatenation(const DyckPath& u, const DyckPath& v) {
  std::vector<Step> joined = u.steps();
  joined.insert(joined.end(), v.steps().begin(), v.steps().end());
  const Ncst t_uv = path_to_tree(DyckPath::validate(std::move(joined)));
  const int nu = u.size(), nv = v.size();
  return restrict_edges(t_uv, 0, nu) == path_to_tree(u).edges() &&
         restrict_edges(t_uv, nu, nu + nv) == path_to_tree(v).edges();
}

}  // namespace fusswalk
