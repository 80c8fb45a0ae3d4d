#include "fusswalk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "fusswalk/bijection.hpp"
#include "fusswalk/canonical.hpp"
#include "fusswalk/chains.hpp"
#include "fusswalk/dyck.hpp"
#include "fusswalk/errors.hpp"
#include "fusswalk/ncst.hpp"
#include "fusswalk/spectral.hpp"

namespace fusswalk {

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const VerifyCheck& c) { return c.passed; });
}

namespace {

void run_check(VerifyReport& report, const std::string& name,
               const std::function<std::string()>& body) {
  VerifyCheck check;
  check.name = name;
  try {
    check.detail = body();
    check.passed = true;
  } catch (const std::exception& e) {
    check.passed = false;
    check.detail = e.what();
  }
  report.checks.push_back(check);
}

BigInt fuss_catalan_recurrence(int k, int n) {
  std::vector<BigInt> c(static_cast<std::size_t>(n) + 1);
  c[0] = 1;
  for (int m = 1; m <= n; ++m) {
    // sum over k+1 non-negative parts of m-1
    std::vector<std::vector<BigInt>> partial(
        static_cast<std::size_t>(k) + 2,
        std::vector<BigInt>(static_cast<std::size_t>(m), 0));
    partial[0][0] = 1;
    for (int part = 1; part <= k + 1; ++part)
      for (int total = 0; total < m; ++total)
        for (int take = 0; take <= total; ++take)
          partial[static_cast<std::size_t>(part)][static_cast<std::size_t>(
              total)] += partial[static_cast<std::size_t>(part - 1)]
                                [static_cast<std::size_t>(total - take)] *
                         c[static_cast<std::size_t>(take)];
    c[static_cast<std::size_t>(m)] =
        partial[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(m - 1)];
  }
  return c[static_cast<std::size_t>(n)];
}

}  // namespace

VerifyReport run_verification(int max_n) {
  require(max_n >= 1, ErrorCode::kSizeMismatch, "max_n must be positive");
  VerifyReport report;
  const int enum_n = std::min(max_n, 7);
  const int kernel_n = std::min(max_n, 4);
  const int canonical_n = std::min(max_n, 4);

  run_check(report, "counting", [&] {
    for (int n = 0; n <= enum_n; ++n) {
      const BigInt closed = fuss_catalan(2, n);
      require(closed == fuss_catalan_recurrence(2, n), ErrorCode::kInternal,
              "closed form disagrees with the recurrence at n=" +
                  std::to_string(n));
      require(BigInt(enumerate_paths(n, enum_n).size()) == closed,
              ErrorCode::kInternal,
              "path count mismatch at n=" + std::to_string(n));
      require(BigInt(enumerate_trees(n, enum_n).size()) == closed,
              ErrorCode::kInternal,
              "tree count mismatch at n=" + std::to_string(n));
    }
    return "path and tree counts match the closed form up to n=" +
           std::to_string(enum_n);
  });

  run_check(report, "bijection", [&] {
    long structures = 0;
    for (int n = 0; n <= enum_n; ++n) {
      const auto paths = enumerate_paths(n, enum_n);
      std::set<Ncst> images;
      for (const DyckPath& p : paths) {
        const Ncst t = path_to_tree(p);
        require(tree_to_path(t) == p, ErrorCode::kInternal,
                "round trip failed for " + p.str());
        images.insert(t);
        ++structures;
      }
      require(images.size() == paths.size(), ErrorCode::kInternal,
              "bijection not injective at n=" + std::to_string(n));
    }
    return "round trip on " + std::to_string(structures) + " structures";
  });

  run_check(report, "decomposition", [&] {
    for (int n = 1; n <= std::min(enum_n, 6); ++n) {
      for (const DyckPath& p : enumerate_paths(n, enum_n)) {
        const DyckDecomposition d = decompose(p);
        require(compose(d.a1, d.a2, d.b) == p, ErrorCode::kInternal,
                "path recomposition failed for " + p.str());
      }
      for (const Ncst& t : enumerate_trees(n, enum_n)) {
        const TreeDecomposition d = decompose_tree(t);
        require(compose_tree(d.t_a, d.t_b, d.t_c) == t, ErrorCode::kInternal,
                "tree recomposition failed for " + t.str());
      }
    }
    return "decompose/compose identities hold";
  });

  run_check(report, "kernels", [&] {
    for (int n = 1; n <= kernel_n; ++n) {
      transition_matrix(ChainKind::kAdjacentMove, n, kernel_n);
      transition_matrix(ChainKind::kFlipMove, n, kernel_n);
      // construction already asserts exact symmetry and row sums
    }
    return "both kernels exactly symmetric and row-stochastic up to n=" +
           std::to_string(kernel_n);
  });

  run_check(report, "canonical-paths", [&] {
    long moves = 0;
    for (int n = 2; n <= canonical_n; ++n) {
      for (const DyckPath& i : enumerate_paths(n, canonical_n)) {
        for (const DyckPath& f : am_neighbors(i)) {
          const CanonicalPath cp = build_path(i, f);
          require(static_cast<int>(cp.steps.size()) <= 3 * n + 2,
                  ErrorCode::kInternal, "path too long");
          ++moves;
        }
      }
    }
    return "simulated " + std::to_string(moves) + " adjacent moves";
  });

  run_check(report, "encoding", [&] {
    const int n = std::min(canonical_n, 3);
    long steps = 0;
    for (const DyckPath& i : enumerate_paths(n, n)) {
      for (const DyckPath& f : am_neighbors(i)) {
        const CanonicalPath cp = build_path(i, f);
        for (int k = 0; k < static_cast<int>(cp.steps.size()); ++k) {
          const auto& s = cp.steps[static_cast<std::size_t>(k)];
          const auto [ri, rf] = decode(s.before, s.after, encode(cp, k));
          require(ri == i && rf == f, ErrorCode::kInternal,
                  "decode(encode) mismatch");
          ++steps;
        }
      }
    }
    return "decode(encode) identity on " + std::to_string(steps) + " steps";
  });

  run_check(report, "spectral", [&] {
    for (int n = 2; n <= std::min(max_n, 3); ++n) {
      for (ChainKind kind :
           {ChainKind::kAdjacentMove, ChainKind::kFlipMove}) {
        const TransitionMatrix m = transition_matrix(kind, n, 3);
        const MixingReport mix = tv_mixing_time(m, 3);
        const double c = static_cast<double>(fuss_catalan(2, n));
        const double upper =
            (1.0 + 0.5 * std::log(c)) / mix.gap;
        require(static_cast<double>(mix.t_mix) <= upper + 1e-9,
                ErrorCode::kInternal, "relaxation upper bound violated");
        require(mix.relaxation <= 1.0 + 2.0 * static_cast<double>(mix.t_mix),
                ErrorCode::kInternal, "relaxation lower bound violated");
      }
    }
    return "mixing-time sandwiches hold";
  });

  return report;
}

}  // namespace fusswalk
