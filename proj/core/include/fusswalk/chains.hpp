#pragma once

#include <utility>
#include <vector>

#include "fusswalk/dyck.hpp"
#include "fusswalk/ncst.hpp"
#include "fusswalk/rational.hpp"
#include "fusswalk/rng.hpp"

namespace fusswalk {

/// One flip: remove an edge, add back an edge that keeps the tree valid.
struct FlipTransition {
  Ncst before;
  Edge removed;
  Edge added;
  Ncst after;
};

// ---------------------------------------------------------------------------
// Adjacent-move chain on 2-Dyck paths: pick a position i in [3n-1], swap the
// steps at i and i+1 with probability 1/2 if the result stays valid.

/// The valid results of swapping adjacent positions, de-duplicated.
std::vector<DyckPath> am_neighbors(const DyckPath& x);

/// Exact kernel entry: 1/(6n-2) per neighbor, the complement on the
/// diagonal. Throws kSizeMismatch.
Rational am_transition_prob(const DyckPath& x, const DyckPath& x_prime);

DyckPath am_step(const DyckPath& x, RngStream& rng);

// ---------------------------------------------------------------------------
// Flip chain on non-crossing spanning trees: remove a uniform edge, add back
// a uniform valid edge (the removed edge included).

/// All edges whose addition to t minus `removed` yields a valid tree,
/// including `removed` itself. Throws kEdgeNotInTree.
std::vector<Edge> fm_candidates(const Ncst& t, Edge removed);

/// Number of completions of the shared forest of two adjacent trees.
/// Throws kNotAdjacent unless |s intersect t| = n-1.
int delta(const Ncst& s, const Ncst& t);

/// Exact kernel entry: 1/(n*delta) off the diagonal, the per-removal
/// re-add mass on it. Rows sum to 1 and the kernel is symmetric.
Rational fm_transition_prob(const Ncst& s, const Ncst& t);

Ncst fm_step(const Ncst& t, RngStream& rng);

/// One sampled flip with its bookkeeping; removed == added marks the
/// self-loop case. fm_step is this, keeping only the landing tree.
FlipTransition fm_step_transition(const Ncst& t, RngStream& rng);

// ---------------------------------------------------------------------------
// Monotone coupling machinery for the adjacent-move chain.

/// Pointwise height comparison. Throws kSizeMismatch.
bool dominates(const DyckPath& x, const DyckPath& y);

/// One coupled step: the same position is proposed in both chains; when both
/// have differing arrows there, the same target pattern is installed in both
/// and invalid results are reverted per chain. Preserves domination.
/// Throws kDominanceViolated unless x dominates y.
std::pair<DyckPath, DyckPath> coupled_am_step(const DyckPath& x,
                                              const DyckPath& y,
                                              RngStream& rng);

/// Weighted sum of height gaps, sin(pi*i/(3n)) at position i. Zero iff x = y.
double wilson_potential(const DyckPath& x, const DyckPath& y);

}  // namespace fusswalk
