// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exits non-zero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "fusswalk/bijection.hpp"
#include "fusswalk/canonical.hpp"
#include "fusswalk/chains.hpp"
#include "fusswalk/dyck.hpp"
#include "fusswalk/errors.hpp"
#include "fusswalk/ncst.hpp"
#include "fusswalk/rng.hpp"
#include "fusswalk/spectral.hpp"

using namespace fusswalk;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  int number;
  std::string label;
  double time_limit_s;
  std::function<std::string()> body;  // returns detail; throws on failure
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

bool is_interior(MoveTag tag) {
  return tag == MoveTag::kM5 || tag == MoveTag::kM6 || tag == MoveTag::kM7;
}

int edges_beneath(const Ncst& t, Edge span) {
  int count = 0;
  for (Edge e : t.edges())
    if (e != span && span.a <= e.a && e.b <= span.b) ++count;
  return count;
}

Edge block_span(const AnnotatedStep& first) {
  Edge e = first.removed;
  for (int level = 0; level < first.depth; ++level) {
    auto ov = overarching_edge(first.before, e);
    expect(ov.has_value(), "shift step without an enclosing chain");
    e = *ov;
  }
  return e;
}

std::vector<Rational> random_rational_function(int size, RngStream& rng) {
  std::vector<Rational> f;
  for (int i = 0; i < size; ++i)
    f.push_back(Rational(
        static_cast<long>(rng.uniform(2 * 65536 + 1)) - 65536, 65536));
  return f;
}

// ---------------------------------------------------------------------------

std::string criterion_counting() {
  const std::vector<long> expected{1, 1, 3, 12, 55, 273, 1428, 7752};
  for (int n = 0; n <= 7; ++n) {
    const BigInt c = fuss_catalan(2, n);
    expect(c == expected[static_cast<std::size_t>(n)],
           "closed form mismatch at n=" + std::to_string(n));
    expect(BigInt(enumerate_paths(n, 7).size()) == c,
           "path count mismatch at n=" + std::to_string(n));
    expect(BigInt(enumerate_trees(n, 7).size()) == c,
           "tree count mismatch at n=" + std::to_string(n));
  }
  return "1,1,3,12,55,273,1428,7752 paths and trees";
}

std::string criterion_bijection() {
  long total = 0;
  for (int n = 0; n <= 7; ++n) {
    const auto paths = enumerate_paths(n, 7);
    std::set<Ncst> images;
    for (const DyckPath& p : paths) {
      const Ncst t = path_to_tree(p);
      expect(tree_to_path(t) == p, "round trip failed for " + p.str());
      images.insert(t);
      ++total;
    }
    expect(images.size() == paths.size(),
           "not injective at n=" + std::to_string(n));
  }
  expect(path_to_tree(fixtures::path("w1_path")) == fixtures::tree("w1_tree"),
         "first 39-step fixture mismatch");
  expect(path_to_tree(fixtures::path("w2_path")) == fixtures::tree("w2_tree"),
         "second 39-step fixture mismatch");
  expect(path_to_tree(fixtures::path("w3_path")) == fixtures::tree("w3_tree"),
         "third 39-step fixture mismatch");
  return "round trip on " + std::to_string(total) +
         " structures; all three drawn fixtures map exactly";
}

std::string criterion_flip_mechanics() {
  const Ncst t = fixtures::tree("flip_tree");
  const auto cands = fm_candidates(t, {0, 6});
  expect(cands.size() == 9, "expected 9 candidates, got " +
                                std::to_string(cands.size()));
  std::set<std::string> got;
  for (Edge e : cands)
    got.insert(std::to_string(e.a) + "-" + std::to_string(e.b));
  std::set<std::string> expected;
  for (const auto& s : fixtures::data().at("flip_candidates"))
    expected.insert(s.get<std::string>());
  expect(got == expected, "candidate set differs from the drawn one");
  const Ncst after = Ncst::validate(
      7, {{0, 1}, {0, 2}, {2, 3}, {4, 5}, {4, 6}, {6, 7}, {3, 6}});
  expect(fm_transition_prob(t, after) == Rational(1, 63),
         "transition probability is not exactly 1/63");
  return "9 candidates and P = 1/63, exact";
}

std::string criterion_canonical_paths() {
  long moves = 0;
  for (int n = 2; n <= 5; ++n) {
    for (const DyckPath& i : enumerate_paths(n, 5)) {
      const Ncst t_i = path_to_tree(i);
      for (const DyckPath& f : am_neighbors(i)) {
        const CanonicalPath cp = build_path(i, f);
        ++moves;
        expect(!cp.steps.empty() && cp.steps.front().before == t_i &&
                   cp.steps.back().after == path_to_tree(f),
               "endpoint mismatch");
        expect(static_cast<int>(cp.steps.size()) <= 3 * n + 2,
               "length bound violated");
        const Ncst* prev = nullptr;
        for (const AnnotatedStep& s : cp.steps) {
          expect(!prev || *prev == s.before, "states do not chain");
          prev = &s.after;
          expect(fm_transition_prob(s.before, s.after) > 0,
                 "step is not a valid flip");
        }
        // every shift block uses at most three flips per shifted edge
        std::size_t k = 0;
        while (k < cp.steps.size()) {
          if (!is_interior(cp.steps[k].tag)) {
            ++k;
            continue;
          }
          const std::size_t start = k;
          while (k < cp.steps.size() && is_interior(cp.steps[k].tag)) ++k;
          const Edge span = block_span(cp.steps[start]);
          expect(static_cast<int>(k - start) <=
                     3 * edges_beneath(cp.steps[start].before, span),
                 "shift block too long");
        }
      }
    }
  }
  return std::to_string(moves) + " adjacent moves simulated, length <= 3n+2,"
         " shift blocks <= 3m";
}

std::string criterion_encoding_census() {
  long steps = 0;
  for (int n = 2; n <= 4; ++n) {
    for (const DyckPath& i : enumerate_paths(n, 4)) {
      for (const DyckPath& f : am_neighbors(i)) {
        const CanonicalPath cp = build_path(i, f);
        for (int k = 0; k < static_cast<int>(cp.steps.size()); ++k) {
          const auto& s = cp.steps[static_cast<std::size_t>(k)];
          const auto [ri, rf] = decode(s.before, s.after, encode(cp, k));
          expect(ri == i && rf == f, "decode(encode) is not the identity");
          ++steps;
        }
      }
    }
  }
  std::string maxima;
  for (int n = 2; n <= 5; ++n) {
    const auto report = congestion_census(n, 5);
    expect(report.max_count <= 12L * n,
           "usage exceeds 12n at n=" + std::to_string(n));
    maxima += (n > 2 ? "," : "") + std::to_string(report.max_count);
  }
  return "decode(encode) identity on " + std::to_string(steps) +
         " steps; max usage " + maxima + " against bounds 24,36,48,60";
}

std::string criterion_comparison() {
  std::ostringstream detail;
  for (int n = 2; n <= 4; ++n) {
    const auto am = transition_matrix(ChainKind::kAdjacentMove, n, 6);
    const auto fm = transition_matrix(ChainKind::kFlipMove, n, 6);
    const Rational b = congestion_census(n, 6).congestion_b;
    RngStream rng(97531);
    for (int trial = 0; trial < 50; ++trial) {
      const auto f = random_rational_function(am.states(), rng);
      expect(dirichlet_form(am, f) <= b * dirichlet_form(fm, f),
             "comparison inequality failed at n=" + std::to_string(n));
    }
    if (n < 3) continue;  // the relaxation comparison is stated for n = 3, 4
    const auto gap_am = spectral_gap(am);
    const auto gap_fm = spectral_gap(fm);
    expect(1.0 / gap_fm.gap <=
               static_cast<double>(b) / gap_am.gap * (1.0 + 1e-6),
           "relaxation comparison failed at n=" + std::to_string(n));
    detail << (n > 3 ? "; " : "") << "n=" << n << ": 1/gap_fm="
           << 1.0 / gap_fm.gap << " <= B/gap_am="
           << static_cast<double>(b) / gap_am.gap;
  }
  return "50 random functions per size (n = 2..4), exact; " + detail.str();
}

std::string criterion_spectral_sanity() {
  for (int n = 1; n <= 5; ++n)
    for (ChainKind kind : {ChainKind::kAdjacentMove, ChainKind::kFlipMove})
      transition_matrix(kind, n, 5);  // construction asserts exactness
  std::ostringstream detail;
  for (int n = 2; n <= 5; ++n)
    for (ChainKind kind : {ChainKind::kAdjacentMove, ChainKind::kFlipMove}) {
      const auto m = transition_matrix(kind, n, 5);
      const auto report = tv_mixing_time(m, 5);
      const double c = static_cast<double>(fuss_catalan(2, n));
      expect(static_cast<double>(report.t_mix) <=
                 (1.0 + 0.5 * std::log(c)) / report.gap + 1e-9,
             "upper sandwich failed");
      expect(report.relaxation <=
                 1.0 + 2.0 * static_cast<double>(report.t_mix) + 1e-9,
             "lower sandwich failed");
    }
  return "kernels exact; both relaxation bounds hold for every computed "
         "(t_mix, gap) pair, n = 2..5, both chains";
}

std::string criterion_coupling_trend() {
  std::vector<std::pair<int, double>> points;
  std::ostringstream detail;
  for (int n : {4, 6, 8, 10, 12}) {
    const auto stats = coalescence_experiment(n, 200, 20250810);
    points.push_back({n, stats.mean});
    detail << "n=" << n << ":" << stats.mean << " ";
  }
  for (std::size_t k = 1; k < points.size(); ++k)
    expect(points[k].second > points[k - 1].second,
           "mean coalescence time is not increasing");
  const double slope = loglog_slope(points);
  expect(2.5 <= slope && slope <= 3.7,
         "log-log slope " + std::to_string(slope) + " outside [2.5, 3.7]");
  detail << "slope=" << slope;
  return "domination held at every step of every run; " + detail.str();
}

std::string criterion_mixing_table() {
  std::ostringstream table;
  table << "\n  n  t_mix(FM)  1/gap(FM)   bound(2.3)  B          B/gap(AM)\n";
  for (int n = 2; n <= 5; ++n) {
    const auto fm = transition_matrix(ChainKind::kFlipMove, n, 5);
    const auto am = transition_matrix(ChainKind::kAdjacentMove, n, 5);
    const auto mix = tv_mixing_time(fm, 5);
    const auto gap_am = spectral_gap(am);
    const Rational b = congestion_census(n, 5).congestion_b;
    const double c = static_cast<double>(fuss_catalan(2, n));
    const double upper = (1.0 + 0.5 * std::log(c)) / mix.gap;
    const double comparison = static_cast<double>(b) / gap_am.gap;
    expect(static_cast<double>(mix.t_mix) <= upper + 1e-9,
           "t_mix exceeds the spectral bound at n=" + std::to_string(n));
    expect(mix.relaxation <= comparison * (1.0 + 1e-6),
           "relaxation exceeds the comparison bound at n=" +
               std::to_string(n));
    char line[160];
    std::snprintf(line, sizeof line,
                  "  %d  %-9ld  %-10.4f  %-10.4f  %-9s  %.4f\n", n, mix.t_mix,
                  mix.relaxation, upper, b.str().c_str(), comparison);
    table << line;
  }
  return "t_mix(FM) <= (1 + log(C)/2)/gap(FM) and 1/gap(FM) <= B/gap(AM) "
         "at every n:" + table.str();
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "counting matches the closed form for n = 0..7", 30.0,
       criterion_counting},
      {2, "bijection round trip and drawn fixtures", 60.0,
       criterion_bijection},
      {3, "flip mechanics of the drawn example", 30.0,
       criterion_flip_mechanics},
      {4, "canonical paths valid, short, and block-bounded (n <= 5)", 300.0,
       criterion_canonical_paths},
      {5, "encoding injectivity and usage census", 600.0,
       criterion_encoding_census},
      {6, "comparison inequality with the measured congestion", 600.0,
       criterion_comparison},
      {7, "spectral sanity and relaxation sandwiches", 600.0,
       criterion_spectral_sanity},
      {8, "coupling preserves domination; coalescence trend", 600.0,
       criterion_coupling_trend},
      {9, "flip-chain mixing table with the full inequality chain", 600.0,
       criterion_mixing_table},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = Clock::now();
    std::string detail;
    bool passed = true;
    try {
      detail = criterion.body();
    } catch (const std::exception& e) {
      passed = false;
      detail = e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (passed && elapsed > criterion.time_limit_s) {
      passed = false;
      detail = "exceeded the time limit (" + std::to_string(elapsed) + " s)";
    }
    std::printf("criterion %d: %s - %s - %s [%.2f s]\n", criterion.number,
                passed ? "PASS" : "FAIL", criterion.label.c_str(),
                detail.c_str(), elapsed);
    if (!passed) ++failures;
  }
  if (failures) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
