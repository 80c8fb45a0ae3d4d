#include "fusswalk/chains.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "fusswalk/errors.hpp"

namespace fusswalk {

namespace {

// Swapping steps j, j+1 (1-based) only changes the height at position j.
// A UD -> DU swap needs height(j-1) >= 2 to stay valid; DU -> UD is always
// valid; equal steps are a no-op.
enum class SwapResult { kNoChange, kValid, kInvalid };

SwapResult classify_swap(const std::vector<int>& h, const DyckPath& x,
                         int j) {
  const Step s1 = x.step(j), s2 = x.step(j + 1);
  if (s1 == s2) return SwapResult::kNoChange;
  if (s1 == Step::kUp) return h[j - 1] >= 2 ? SwapResult::kValid
                                            : SwapResult::kInvalid;
  return SwapResult::kValid;
}

DyckPath swapped(const DyckPath& x, int j) {
  std::vector<Step> steps = x.steps();
  std::swap(steps[j - 1], steps[j]);
  return DyckPath::validate(std::move(steps));
}

}  // namespace

std::vector<DyckPath> am_neighbors(const DyckPath& x) {
  std::vector<DyckPath> out;
  const std::vector<int> h = x.heights();
  for (int j = 1; j < x.length(); ++j)
    if (classify_swap(h, x, j) == SwapResult::kValid)
      out.push_back(swapped(x, j));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational am_transition_prob(const DyckPath& x, const DyckPath& x_prime) {
  require(x.size() == x_prime.size(), ErrorCode::kSizeMismatch,
          "paths of different size");
  const std::vector<DyckPath> nbrs = am_neighbors(x);
  const Rational per(1, 6 * x.size() - 2);
  if (x == x_prime)
    return 1 - Rational(static_cast<long>(nbrs.size())) * per;
  if (std::binary_search(nbrs.begin(), nbrs.end(), x_prime)) return per;
  return 0;
}

DyckPath am_step(const DyckPath& x, RngStream& rng) {
  if (x.length() < 2) return x;
  const int j =
      1 + static_cast<int>(rng.uniform(static_cast<std::uint64_t>(x.length() - 1)));
  const bool do_swap = rng.coin();
  if (!do_swap) return x;
  const std::vector<int> h = x.heights();
  if (classify_swap(h, x, j) != SwapResult::kValid) return x;
  return swapped(x, j);
}

std::vector<Edge> fm_candidates(const Ncst& t, Edge removed) {
  require(t.contains(removed), ErrorCode::kEdgeNotInTree,
          "edge not in tree");
  std::vector<Edge> forest;
  for (Edge e : t.edges())
    if (e != removed) forest.push_back(e);

  // Component labels of the forest: candidates must reconnect the two sides.
  std::vector<int> comp(t.points(), -1);
  comp[removed.a] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (Edge e : forest) {
      if (comp[e.a] != -1 && comp[e.b] == -1) comp[e.b] = comp[e.a], changed = true;
      if (comp[e.b] != -1 && comp[e.a] == -1) comp[e.a] = comp[e.b], changed = true;
    }
  }

  std::vector<Edge> out;
  for (int a = 0; a < t.points(); ++a) {
    for (int b = a + 1; b <= t.size(); ++b) {
      if ((comp[a] == 0) == (comp[b] == 0)) continue;
      const Edge cand{a, b};
      bool ok = true;
      for (Edge e : forest) {
        if (crossing(cand, e)) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(cand);
    }
  }
  return out;
}

int delta(const Ncst& s, const Ncst& t) {
  require(s.size() == t.size(), ErrorCode::kSizeMismatch,
          "trees of different size");
  std::vector<Edge> shared;
  std::set_intersection(s.edges().begin(), s.edges().end(),
                        t.edges().begin(), t.edges().end(),
                        std::back_inserter(shared));
  require(static_cast<int>(shared.size()) == s.size() - 1,
          ErrorCode::kNotAdjacent, "trees do not differ by one flip");
  Edge removed{-1, -1};
  for (Edge e : s.edges())
    if (!std::binary_search(shared.begin(), shared.end(), e)) removed = e;
  return static_cast<int>(fm_candidates(s, removed).size());
}

Rational fm_transition_prob(const Ncst& s, const Ncst& t) {
  require(s.size() == t.size(), ErrorCode::kSizeMismatch,
          "trees of different size");
  const int n = s.size();
  if (n == 0) return s == t ? Rational(1) : Rational(0);
  if (s == t) {
    // Re-adding the removed edge, summed over removals.
    Rational p = 0;
    for (Edge e : s.edges())
      p += Rational(1, n * static_cast<long>(fm_candidates(s, e).size()));
    return p;
  }
  std::vector<Edge> shared;
  std::set_intersection(s.edges().begin(), s.edges().end(),
                        t.edges().begin(), t.edges().end(),
                        std::back_inserter(shared));
  if (static_cast<int>(shared.size()) != n - 1) return 0;
  return Rational(1, n * static_cast<long>(delta(s, t)));
}

FlipTransition fm_step_transition(const Ncst& t, RngStream& rng) {
  require(t.size() >= 1, ErrorCode::kEmptyTree, "no edges to flip");
  const Edge removed =
      t.edges()[rng.uniform(static_cast<std::uint64_t>(t.size()))];
  const std::vector<Edge> cands = fm_candidates(t, removed);
  const Edge added = cands[rng.uniform(cands.size())];
  FlipTransition flip{t, removed, added, t};
  if (added != removed) {
    std::vector<Edge> edges;
    for (Edge e : t.edges())
      if (e != removed) edges.push_back(e);
    edges.push_back(added);
    flip.after = Ncst::validate(t.size(), std::move(edges));
  }
  return flip;
}

Ncst fm_step(const Ncst& t, RngStream& rng) {
  if (t.size() == 0) return t;
  return fm_step_transition(t, rng).after;
}

bool dominates(const DyckPath& x, const DyckPath& y) {
  require(x.size() == y.size(), ErrorCode::kSizeMismatch,
          "paths of different size");
  const std::vector<int> hx = x.heights(), hy = y.heights();
  for (std::size_t j = 0; j < hx.size(); ++j)
    if (hx[j] < hy[j]) return false;
  return true;
}

std::pair<DyckPath, DyckPath> coupled_am_step(const DyckPath& x,
                                              const DyckPath& y,
                                              RngStream& rng) {
  require(dominates(x, y), ErrorCode::kDominanceViolated,
          "x must dominate y");
  const int len = x.length();
  if (len < 2) return {x, y};
  const int j = 1 + static_cast<int>(
                        rng.uniform(static_cast<std::uint64_t>(len - 1)));
  const bool coin = rng.coin();

  const std::vector<int> hx = x.heights(), hy = y.heights();
  const bool x_same = x.step(j) == x.step(j + 1);
  const bool y_same = y.step(j) == y.step(j + 1);

  auto transition = [&](const DyckPath& p, const std::vector<int>& h) {
    if (!coin) return p;
    return classify_swap(h, p, j) == SwapResult::kValid ? swapped(p, j) : p;
  };

  DyckPath nx = x, ny = y;
  if (x_same || y_same) {
    // Same arrows in one chain: that chain cannot move; the other performs
    // the swap as in an ordinary step.
    if (!x_same) nx = transition(x, hx);
    if (!y_same) ny = transition(y, hy);
  } else {
    // Both chains have a movable pair: install the same target pattern in
    // both, reverting whichever result would be invalid.
    const Step first = coin ? Step::kUp : Step::kDown;
    auto install = [&](const DyckPath& p, const std::vector<int>& h) {
      if (p.step(j) == first) return p;  // already the target pattern
      return classify_swap(h, p, j) == SwapResult::kValid ? swapped(p, j) : p;
    };
    nx = install(x, hx);
    ny = install(y, hy);
  }
  return {std::move(nx), std::move(ny)};
}

double wilson_potential(const DyckPath& x, const DyckPath& y) {
  require(dominates(x, y), ErrorCode::kDominanceViolated,
          "x must dominate y");
  const std::vector<int> hx = x.heights(), hy = y.heights();
  const int len = x.length();
  double phi = 0.0;
  for (int j = 1; j < len; ++j)
    phi += (hx[j] - hy[j]) *
           std::sin(std::numbers::pi * j / static_cast<double>(len));
  return phi;
}

}  // namespace fusswalk
