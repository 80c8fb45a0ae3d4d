#include "fusswalk/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <map>
#include <thread>

#include "fusswalk/bijection.hpp"
#include "fusswalk/caps.hpp"
#include "fusswalk/errors.hpp"
#include "fusswalk/rng.hpp"

namespace fusswalk {

TransitionMatrix transition_matrix(ChainKind kind, int n, int cap) {
  require(n >= 0, ErrorCode::kSizeMismatch, "n must be non-negative");
  require(n <= cap, ErrorCode::kCapExceeded,
          "n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  TransitionMatrix m;
  m.kind = kind;
  m.n = n;
  m.paths = enumerate_paths(n, n);
  const int size = static_cast<int>(m.paths.size());
  m.p.assign(static_cast<std::size_t>(size),
             std::vector<Rational>(static_cast<std::size_t>(size), 0));

  if (kind == ChainKind::kAdjacentMove) {
    std::map<DyckPath, int> index;
    for (int i = 0; i < size; ++i) index[m.paths[static_cast<std::size_t>(i)]] = i;
    const Rational per = n >= 1 ? Rational(1, 6 * n - 2) : Rational(0);
    for (int i = 0; i < size; ++i) {
      Rational off = 0;
      for (const DyckPath& nb :
           am_neighbors(m.paths[static_cast<std::size_t>(i)])) {
        m.p[static_cast<std::size_t>(i)][static_cast<std::size_t>(
            index.at(nb))] = per;
        off += per;
      }
      m.p[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1 - off;
    }
  } else {
    m.trees.reserve(m.paths.size());
    std::map<Ncst, int> index;
    for (int i = 0; i < size; ++i) {
      m.trees.push_back(path_to_tree(m.paths[static_cast<std::size_t>(i)]));
      index[m.trees[static_cast<std::size_t>(i)]] = i;
    }
    for (int i = 0; i < size; ++i) {
      const Ncst& t = m.trees[static_cast<std::size_t>(i)];
      if (n == 0) {
        m.p[0][0] = 1;
        break;
      }
      Rational stay = 0;
      for (Edge removed : t.edges()) {
        const std::vector<Edge> cands = fm_candidates(t, removed);
        const Rational per(1, n * static_cast<long>(cands.size()));
        for (Edge added : cands) {
          if (added == removed) {
            stay += per;
            continue;
          }
          std::vector<Edge> edges;
          for (Edge e : t.edges())
            if (e != removed) edges.push_back(e);
          edges.push_back(added);
          const Ncst next = Ncst::validate(n, std::move(edges));
          m.p[static_cast<std::size_t>(i)]
             [static_cast<std::size_t>(index.at(next))] = per;
        }
      }
      m.p[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = stay;
    }
  }

  // Exactness checks: row-stochastic and symmetric.
  for (int i = 0; i < size; ++i) {
    Rational sum = 0;
    for (int j = 0; j < size; ++j) {
      sum += m.p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      require(m.p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ==
                  m.p[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)],
              ErrorCode::kInternal, "kernel must be symmetric");
    }
    require(sum == 1, ErrorCode::kInternal, "rows must sum to one");
  }
  return m;
}

TransitionMatrix transition_matrix(ChainKind kind, int n) {
  return transition_matrix(kind, n, caps().matrix);
}

SpectralSummary spectral_gap(const TransitionMatrix& m) {
  SpectralSummary out;
  const int size = m.states();
  if (size < 2) return out;  // single state: variance identically zero

  Eigen::MatrixXd a(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j)
      a(i, j) = static_cast<double>(
          m.p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  require(solver.info() == Eigen::Success, ErrorCode::kInternal,
          "eigensolver failed");
  const auto& ev = solver.eigenvalues();
  require(std::abs(ev(size - 1) - 1.0) < 1e-9, ErrorCode::kInternal,
          "top eigenvalue must be 1");
  out.defined = true;
  out.lambda_second = ev(size - 2);
  out.lambda_min = ev(0);
  out.gap = 1.0 - out.lambda_second;
  out.relaxation = 1.0 / out.gap;
  return out;
}

MixingReport tv_mixing_time(const TransitionMatrix& m, int cap) {
  require(m.n <= cap, ErrorCode::kCapExceeded,
          "n = " + std::to_string(m.n) + " exceeds cap " +
              std::to_string(cap));
  const int size = m.states();
  MixingReport report;
  report.n = m.n;
  const SpectralSummary s = spectral_gap(m);
  report.gap = s.gap;
  report.relaxation = s.relaxation;

  const double uniform = 1.0 / size;
  auto worst_tv = [&](const std::vector<std::vector<double>>& rows) {
    double worst = 0.0;
    for (int i = 0; i < size; ++i) {
      double tv = 0.0;
      for (int j = 0; j < size; ++j)
        tv += std::abs(rows[static_cast<std::size_t>(i)]
                           [static_cast<std::size_t>(j)] -
                       uniform);
      worst = std::max(worst, 0.5 * tv);
    }
    return worst;
  };

  std::vector<std::vector<double>> p(
      static_cast<std::size_t>(size),
      std::vector<double>(static_cast<std::size_t>(size), 0.0));
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j)
      p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          static_cast<double>(
              m.p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);

  // d(0) = 1 - 1/|Omega| for more than one state.
  std::vector<std::vector<double>> power(
      static_cast<std::size_t>(size),
      std::vector<double>(static_cast<std::size_t>(size), 0.0));
  for (int i = 0; i < size; ++i)
    power[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
  report.d_curve.push_back({0, size > 1 ? 1.0 - uniform : 0.0});
  if (report.d_curve.back().second <= 0.25) {
    report.t_mix = 0;
    return report;
  }

  constexpr long kMaxSteps = 1000000;
  std::vector<std::vector<double>> next(
      static_cast<std::size_t>(size),
      std::vector<double>(static_cast<std::size_t>(size), 0.0));
  for (long t = 1; t <= kMaxSteps; ++t) {
    for (int i = 0; i < size; ++i) {
      auto& row = next[static_cast<std::size_t>(i)];
      std::fill(row.begin(), row.end(), 0.0);
      for (int k = 0; k < size; ++k) {
        const double w =
            power[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        if (w == 0.0) continue;
        const auto& pk = p[static_cast<std::size_t>(k)];
        for (int j = 0; j < size; ++j)
          row[static_cast<std::size_t>(j)] +=
              w * pk[static_cast<std::size_t>(j)];
      }
    }
    std::swap(power, next);
    const double d = worst_tv(power);
    report.d_curve.push_back({t, d});
    if (d <= 0.25) {
      report.t_mix = t;
      // both relaxation-time bounds must bracket the result
      const double log_states = std::log(static_cast<double>(size));
      require(static_cast<double>(report.t_mix) <=
                  (1.0 + 0.5 * log_states) / report.gap + 1e-9,
              ErrorCode::kInternal, "mixing time exceeds the spectral bound");
      require(report.relaxation <=
                  1.0 + 2.0 * static_cast<double>(report.t_mix) + 1e-9,
              ErrorCode::kInternal,
              "relaxation time exceeds the mixing bound");
      return report;
    }
  }
  fail(ErrorCode::kInternal, "mixing time exceeded the iteration limit");
}

MixingReport tv_mixing_time(const TransitionMatrix& m) {
  return tv_mixing_time(m, caps().tv);
}

Rational dirichlet_form(const TransitionMatrix& m,
                        const std::vector<Rational>& f) {
  const int size = m.states();
  require(static_cast<int>(f.size()) == size, ErrorCode::kDimensionMismatch,
          "function dimension " + std::to_string(f.size()) + " vs " +
              std::to_string(size) + " states");
  const Rational pi(1, size);
  Rational sum = 0;
  for (int x = 0; x < size; ++x)
    for (int y = 0; y < size; ++y) {
      const Rational& pxy =
          m.p[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
      if (pxy == 0) continue;
      const Rational diff =
          f[static_cast<std::size_t>(x)] - f[static_cast<std::size_t>(y)];
      sum += diff * diff * pi * pxy;
    }
  return sum / 2;
}

namespace {

// Coalescence of the monotone coupling, on raw step/height arrays so each
// proposal costs O(1). Mirrors coupled_am_step exactly (same draw order).
long coalescence_run(int n, std::uint64_t seed) {
  const int len = 3 * n;
  std::vector<int> x(static_cast<std::size_t>(len)),
      y(static_cast<std::size_t>(len));  // +1 up, -2 down
  for (int j = 0; j < len; ++j) x[static_cast<std::size_t>(j)] = j < 2 * n ? 1 : -2;
  for (int j = 0; j < len; ++j) y[static_cast<std::size_t>(j)] = j % 3 == 2 ? -2 : 1;
  std::vector<long> hx(static_cast<std::size_t>(len) + 1, 0),
      hy(static_cast<std::size_t>(len) + 1, 0);
  long diff = 0;  // sum of height gaps; zero iff coalesced
  for (int j = 1; j <= len; ++j) {
    hx[static_cast<std::size_t>(j)] =
        hx[static_cast<std::size_t>(j - 1)] + x[static_cast<std::size_t>(j - 1)];
    hy[static_cast<std::size_t>(j)] =
        hy[static_cast<std::size_t>(j - 1)] + y[static_cast<std::size_t>(j - 1)];
    require(hx[static_cast<std::size_t>(j)] >= hy[static_cast<std::size_t>(j)],
            ErrorCode::kDominanceViolated, "initial states must be ordered");
    diff += hx[static_cast<std::size_t>(j)] - hy[static_cast<std::size_t>(j)];
  }

  RngStream rng(seed);
  auto try_swap = [&](std::vector<int>& s, std::vector<long>& h, int j,
                      int target_first) -> long {
    // Installs (target_first, other) at steps j, j+1 when that is a swap and
    // the result stays a valid path; returns the change in h[j].
    if (s[static_cast<std::size_t>(j - 1)] == target_first) return 0;
    if (s[static_cast<std::size_t>(j - 1)] == 1 &&
        h[static_cast<std::size_t>(j - 1)] < 2)
      return 0;  // UD -> DU would dip below zero
    std::swap(s[static_cast<std::size_t>(j - 1)], s[static_cast<std::size_t>(j)]);
    const long delta = s[static_cast<std::size_t>(j - 1)] == 1 ? 3 : -3;
    h[static_cast<std::size_t>(j)] += delta;
    return delta;
  };

  for (long t = 1;; ++t) {
    const int j =
        1 + static_cast<int>(rng.uniform(static_cast<std::uint64_t>(len - 1)));
    const bool coin = rng.coin();
    const bool x_same = x[static_cast<std::size_t>(j - 1)] ==
                        x[static_cast<std::size_t>(j)];
    const bool y_same = y[static_cast<std::size_t>(j - 1)] ==
                        y[static_cast<std::size_t>(j)];
    long dx = 0, dy = 0;
    if (x_same || y_same) {
      if (coin) {
        if (!x_same) dx = try_swap(x, hx, j, x[static_cast<std::size_t>(j)]);
        if (!y_same) dy = try_swap(y, hy, j, y[static_cast<std::size_t>(j)]);
      }
    } else {
      const int first = coin ? 1 : -2;
      dx = try_swap(x, hx, j, first);
      dy = try_swap(y, hy, j, first);
    }
    diff += dx - dy;
    require(hx[static_cast<std::size_t>(j)] >= hy[static_cast<std::size_t>(j)],
            ErrorCode::kDominanceViolated, "coupling lost domination");
    require(diff >= 0, ErrorCode::kInternal, "negative total height gap");
    if (diff == 0) return t;
  }
}

}  // namespace

CoalescenceStats coalescence_experiment(int n, int num_seeds,
                                        std::uint64_t base_seed) {
  require(1 <= n && n <= 32, ErrorCode::kCapExceeded,
          "coalescence experiment supports 1 <= n <= 32");
  require(num_seeds >= 1, ErrorCode::kSizeMismatch, "need at least one seed");
  CoalescenceStats stats;
  stats.n = n;
  stats.seeds = num_seeds;
  stats.times.assign(static_cast<std::size_t>(num_seeds), 0);

  if (n == 1) {
    // Single state: the chains start coalesced.
    std::fill(stats.times.begin(), stats.times.end(), 0L);
  } else {
    const unsigned workers =
        std::max(1u, std::min(std::thread::hardware_concurrency(),
                              static_cast<unsigned>(num_seeds)));
    std::vector<std::future<void>> futures;
    std::atomic<int> cursor{0};
    for (unsigned w = 0; w < workers; ++w) {
      futures.push_back(std::async(std::launch::async, [&]() {
        for (int k = cursor.fetch_add(1); k < num_seeds;
             k = cursor.fetch_add(1))
          stats.times[static_cast<std::size_t>(k)] =
              coalescence_run(n, base_seed + static_cast<std::uint64_t>(k));
      }));
    }
    for (auto& fut : futures) fut.get();
  }

  double total = 0.0;
  for (long t : stats.times) total += static_cast<double>(t);
  stats.mean = total / static_cast<double>(num_seeds);
  std::vector<long> sorted = stats.times;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  stats.median = sorted.size() % 2 == 1
                     ? static_cast<double>(sorted[mid])
                     : 0.5 * static_cast<double>(sorted[mid - 1] + sorted[mid]);
  return stats;
}

double loglog_slope(const std::vector<std::pair<int, double>>& points) {
  require(points.size() >= 2, ErrorCode::kSizeMismatch,
          "need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double count = static_cast<double>(points.size());
  for (const auto& [n, value] : points) {
    const double lx = std::log(static_cast<double>(n));
    const double ly = std::log(value);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

}  // namespace fusswalk
