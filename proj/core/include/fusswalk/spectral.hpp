#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fusswalk/chains.hpp"
#include "fusswalk/dyck.hpp"
#include "fusswalk/ncst.hpp"
#include "fusswalk/rational.hpp"

namespace fusswalk {

enum class ChainKind : std::uint8_t { kAdjacentMove, kFlipMove };

/// Exact row-stochastic kernel over the enumerated state space. State i is
/// the i-th path of the shared enumeration order; for the flip chain,
/// trees[i] is the tree corresponding to paths[i], so functions transport
/// across the bijection by index.
struct TransitionMatrix {
  ChainKind kind = ChainKind::kAdjacentMove;
  int n = 0;
  std::vector<DyckPath> paths;
  std::vector<Ncst> trees;  // empty for the adjacent-move chain
  std::vector<std::vector<Rational>> p;

  int states() const { return static_cast<int>(p.size()); }
};

TransitionMatrix transition_matrix(ChainKind kind, int n);
TransitionMatrix transition_matrix(ChainKind kind, int n, int cap);

/// Spectral data of a symmetric kernel. `defined` is false for a single
/// state (the variance in the gap's variational form is identically zero).
struct SpectralSummary {
  bool defined = false;
  double gap = 0.0;         // 1 - second largest eigenvalue
  double relaxation = 0.0;  // 1 / gap
  double lambda_second = 0.0;
  double lambda_min = 0.0;
};

SpectralSummary spectral_gap(const TransitionMatrix& m);

/// Worst-case total-variation decay d(t) and the 1/4 mixing time, plus both
/// relaxation-time bounds evaluated on the way.
struct MixingReport {
  int n = 0;
  double gap = 0.0;
  double relaxation = 0.0;
  long t_mix = 0;
  std::vector<std::pair<long, double>> d_curve;  // (t, d(t)), d non-increasing
};

MixingReport tv_mixing_time(const TransitionMatrix& m);
MixingReport tv_mixing_time(const TransitionMatrix& m, int cap);

/// Dirichlet form (1/2) sum_{x,y} (f(x)-f(y))^2 pi(x) P(x,y), exact.
/// Throws kDimensionMismatch.
Rational dirichlet_form(const TransitionMatrix& m,
                        const std::vector<Rational>& f);

/// Coupled-chain coalescence experiment from the extremal states X_0 (all
/// ups first) and Y_0 (UUD repeated).
struct CoalescenceStats {
  int n = 0;
  int seeds = 0;
  std::vector<long> times;  // per-seed coalescence step counts
  double mean = 0.0;
  double median = 0.0;
};

/// Runs num_seeds independent couplings (seeds base_seed..base_seed+k-1),
/// checking domination at every step. n is capped at 32.
CoalescenceStats coalescence_experiment(int n, int num_seeds,
                                        std::uint64_t base_seed);

/// Least-squares slope of log(mean time) against log(n).
double loglog_slope(const std::vector<std::pair<int, double>>& points);

}  // namespace fusswalk
