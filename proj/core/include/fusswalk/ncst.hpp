#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fusswalk {

/// An edge between points a < b on the line 0..n, drawn as an arc above it.
struct Edge {
  int a = 0;
  int b = 0;
  auto operator<=>(const Edge&) const = default;
};

/// Two arcs cross iff they interleave strictly: a < c < b < d.
bool crossing(Edge e, Edge f);

/// Non-crossing spanning tree on the collinear points 0..n. Edges are kept
/// sorted (left endpoint, then right) so equality and serialization are
/// deterministic. Immutable after construction.
class Ncst {
 public:
  /// The empty tree (single point, n = 0).
  Ncst() = default;

  /// Validates edge count, spanning-tree structure and non-crossing.
  /// Throws kNotSpanning or kCrossing (naming the offending pair).
  static Ncst validate(int n, std::vector<Edge> edges);

  /// Parses comma-separated "a-b" pairs, e.g. "0-1,0-2,2-3". The number of
  /// points is one more than the edge count. "" is the empty tree.
  static Ncst parse(std::string_view text);

  int size() const { return n_; }        // edge count
  int points() const { return n_ + 1; }  // 0..n
  bool empty() const { return n_ == 0; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool contains(Edge e) const;

  std::string str() const;

  auto operator<=>(const Ncst&) const = default;

 private:
  std::vector<Edge> edges_;  // canonical order
  int n_ = 0;
};

/// Unique split of a non-empty tree: pivot edge (0,t) with t maximal, the
/// gap s beneath it, and the three subtrees [0,s], [s+1,t], [t,n], each
/// re-indexed to start at 0.
struct TreeDecomposition {
  Edge pivot;
  int gap = 0;
  Ncst t_a, t_b, t_c;
};

/// A subtree spanning the consecutive points lo..hi.
struct Segment {
  int lo = 0;
  int hi = 0;
  auto operator<=>(const Segment&) const = default;
};

/// Throws kEmptyTree on the empty tree.
TreeDecomposition decompose_tree(const Ncst& t);

/// Inverse of decompose_tree.
Ncst compose_tree(const Ncst& t_a, const Ncst& t_b, const Ncst& t_c);

/// Innermost edge (a,b) with a <= c < d <= b strictly enclosing e = (c,d),
/// or nullopt for an outermost edge. Throws kEdgeNotInTree.
std::optional<Edge> overarching_edge(const Ncst& t, Edge e);

/// The unique s such that, with e = (a,b) removed, [a,s] is connected
/// beneath e but [a,s+1] is not. For a short edge (a,a+1) the span beneath
/// is empty and the gap degenerates to a. Throws kEdgeNotInTree.
int gap_beneath(const Ncst& t, Edge e);

/// Left-to-right minimal segments [c,d]: the edge (c,d) exists and its
/// overarching edge is e (or absent, when e is not given).
std::vector<Segment> minimal_segments(const Ncst& t, std::optional<Edge> e);

/// All non-crossing spanning trees on points 0..n, generated recursively
/// from the decomposition; count equals fuss_catalan(2, n).
std::vector<Ncst> enumerate_trees(int n);
std::vector<Ncst> enumerate_trees(int n, int cap);

/// Edges of t lying entirely within [lo,hi], re-indexed to 0..hi-lo.
std::vector<Edge> restrict_edges(const Ncst& t, int lo, int hi);

/// The subtree [lo,hi] as a standalone tree; validates that the restriction
/// really spans lo..hi.
Ncst subtree(const Ncst& t, int lo, int hi);

}  // namespace fusswalk
