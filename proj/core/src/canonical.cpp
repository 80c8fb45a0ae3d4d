#include "fusswalk/canonical.hpp"

#include <algorithm>
#include <future>
#include <thread>
#include <utility>

#include "fusswalk/bijection.hpp"
#include "fusswalk/caps.hpp"
#include "fusswalk/chains.hpp"
#include "fusswalk/errors.hpp"

namespace fusswalk {

const char* to_string(MoveDirection d) {
  return d == MoveDirection::kLeft ? "Left" : "Right";
}
const char* to_string(MoveType t) {
  return t == MoveType::kType1 ? "Type1" : "Type2";
}
const char* to_string(MoveTag t) {
  switch (t) {
    case MoveTag::kM1: return "M1";
    case MoveTag::kM2: return "M2";
    case MoveTag::kM3: return "M3";
    case MoveTag::kM4: return "M4";
    case MoveTag::kM5: return "M5";
    case MoveTag::kM6: return "M6";
    case MoveTag::kM7: return "M7";
  }
  return "?";
}
const char* to_string(EncodingTag t) {
  switch (t) {
    case EncodingTag::kM1: return "M1";
    case EncodingTag::kM2: return "M2";
    case EncodingTag::kM3: return "M3";
    case EncodingTag::kM4: return "M4";
    case EncodingTag::kS1: return "S1";
    case EncodingTag::kS2: return "S2";
  }
  return "?";
}

namespace {

// ---------------------------------------------------------------------------
// Lattice positions vs tree points.
//
// The bijection assigns every lattice position 0..3n of a path to the tree
// point whose "valley" it belongs to: a block's first position belongs to the
// block's leftmost point, the A block reuses the parent's left point, the B
// block starts one point past the A block's last point (the gap), and the C
// block shares its first point with the structural down-step. The positions
// of a point form a contiguous run, so the map below is monotone.

void fill_points(const std::vector<int>& h, int lattice_lo, int lattice_hi,
                 int point_lo, std::vector<int>& pt) {
  pt[lattice_lo] = point_lo;
  if (lattice_lo == lattice_hi) return;
  const int base = h[lattice_lo];
  int down = -1;  // structural down-step: first return to the baseline
  for (int j = lattice_lo + 1; j <= lattice_hi; ++j) {
    if (h[j] == base) {
      down = j;
      break;
    }
  }
  int last_one = lattice_lo;  // last baseline+1 before the structural down
  for (int j = lattice_lo + 1; j < down; ++j)
    if (h[j] == base + 1) last_one = j;
  const int u2 = last_one + 1;  // structural up for the middle block
  const int size_a = (u2 - lattice_lo - 2) / 3;
  const int size_b = (down - 1 - u2) / 3;
  fill_points(h, lattice_lo + 1, u2 - 1, point_lo, pt);
  fill_points(h, u2, down - 1, point_lo + size_a + 1, pt);
  fill_points(h, down, lattice_hi, point_lo + size_a + 1 + size_b, pt);
}

std::vector<int> point_of_position(const DyckPath& w) {
  std::vector<int> pt(static_cast<std::size_t>(w.length()) + 1, 0);
  fill_points(w.heights(), 0, w.length(), 0, pt);
  return pt;
}

// ---------------------------------------------------------------------------
// Analysis of an adjacent move in the normalized orientation (the down-step
// moves one position left: I[x] = Up, I[x+1] = Down, F swaps them).

struct SwapInfo {
  int x = 0;             // 1-based position of the first swapped step
  bool normalized = false;  // true iff i -> f already has the UD -> DU shape
};

SwapInfo find_adjacent_swap(const DyckPath& i, const DyckPath& f) {
  require(i.size() == f.size(), ErrorCode::kNotAdjacentMove,
          "paths of different size");
  require(i != f, ErrorCode::kNotAdjacentMove, "identical paths");
  int first = -1, last = -1;
  for (int j = 1; j <= i.length(); ++j) {
    if (i.step(j) != f.step(j)) {
      if (first < 0) first = j;
      last = j;
    }
  }
  require(last == first + 1 && i.step(first) != i.step(last),
          ErrorCode::kNotAdjacentMove, "not an adjacent swap");
  return {first, i.step(first) == Step::kUp};
}

// Tree-space description of one normalized move. `a` is the enclosing pivot
// of the affected span, `e` the inner edge that the top-level flips move.
struct LeftAnalysis {
  MoveType type = MoveType::kType1;
  int x = 0, y = 0;
  int x_prime = 0, y_prime = 0;
  Edge a, e;
  int left_pt = 0;  // p (Type 1) or q (Type 2)
  int ge = 0;       // gap beneath e before any flips
  int ga = 0;       // gap beneath a (Type 2 only; Type 1 records it too)
};

LeftAnalysis analyze_normalized(const DyckPath& i, const DyckPath& f,
                                const Ncst& tree) {
  const SwapInfo swap = find_adjacent_swap(i, f);
  require(swap.normalized, ErrorCode::kInternal, "analysis needs UD -> DU");
  LeftAnalysis an;
  an.x = swap.x;
  an.y = swap.x + 1;

  const std::vector<int> h = i.heights();
  const int eta = h[an.y];
  require(eta >= 1, ErrorCode::kNotAdjacentMove, "swap would go negative");

  an.y_prime = -1;
  for (int j = an.y + 1; j <= i.length(); ++j) {
    if (h[j] == eta - 1) {
      an.type = MoveType::kType1;
      an.y_prime = j;
      break;
    }
    if (h[j] == eta - 2) {
      an.type = MoveType::kType2;
      an.y_prime = j;
      break;
    }
  }
  require(an.y_prime > 0, ErrorCode::kInternal, "no closing position");
  an.x_prime = -1;
  for (int j = an.x - 1; j >= 0; --j) {
    if (h[j] == h[an.y_prime]) {
      an.x_prime = j;
      break;
    }
  }
  require(an.x_prime >= 0, ErrorCode::kInternal, "no opening position");

  const std::vector<int> pt = point_of_position(i);
  auto last_height_in = [&](int lo, int hi, int value) {
    int best = -1;
    for (int j = lo; j < hi; ++j)
      if (h[j] == value) best = j;
    require(best >= 0, ErrorCode::kInternal, "block boundary not found");
    return best;
  };

  const int a1 = pt[an.x_prime];
  const int a2 = pt[an.y_prime];
  an.a = Edge{a1, a2};
  if (an.type == MoveType::kType1) {
    const int alpha_m1 = last_height_in(an.x_prime + 1, an.x, eta);
    const int gamma = last_height_in(an.y, an.y_prime, eta);
    an.left_pt = pt[alpha_m1];
    an.ge = pt[an.x - 1];
    an.ga = pt[gamma];
    an.e = Edge{an.left_pt, an.ge + 1};
  } else {
    const int beta2_m1 = last_height_in(an.x_prime + 1, an.x, eta - 1);
    const int beta3_m1 = last_height_in(an.x_prime + 1, an.x, eta);
    an.ga = pt[beta2_m1];
    an.left_pt = pt[beta3_m1];
    an.ge = pt[an.x - 1];
    an.e = Edge{an.left_pt, an.ge + 1};
  }
  require(tree.contains(an.a), ErrorCode::kInternal, "pivot edge missing");
  require(tree.contains(an.e), ErrorCode::kInternal, "inner edge missing");
  return an;
}

// ---------------------------------------------------------------------------
// Tree surgery.

Ncst apply_flip(const Ncst& t, Edge removed, Edge added) {
  if (removed == added) return t;
  require(t.contains(removed), ErrorCode::kEdgeNotInTree,
          "flip removes a missing edge");
  std::vector<Edge> edges;
  edges.reserve(t.edges().size());
  for (Edge e : t.edges())
    if (e != removed) edges.push_back(e);
  edges.push_back(added);
  return Ncst::validate(t.size(), std::move(edges));
}

bool has_edges_beneath(const Ncst& t, Edge span) {
  for (Edge e : t.edges())
    if (e != span && span.a <= e.a && e.b <= span.b) return true;
  return false;
}

// Moves every edge strictly beneath `span` by delta; the net effect of a
// completed shift sequence is exactly this translation.
Ncst translate_beneath(const Ncst& t, Edge span, int delta) {
  std::vector<Edge> edges;
  edges.reserve(t.edges().size());
  for (Edge e : t.edges()) {
    if (e != span && span.a <= e.a && e.b <= span.b)
      edges.push_back({e.a + delta, e.b + delta});
    else
      edges.push_back(e);
  }
  return Ncst::validate(t.size(), std::move(edges));
}

// Moves every edge lying entirely within [lo, hi] by delta, except `keep`.
Ncst translate_within(const Ncst& t, int lo, int hi, int delta, Edge keep) {
  std::vector<Edge> edges;
  edges.reserve(t.edges().size());
  for (Edge e : t.edges()) {
    if (e != keep && lo <= e.a && e.b <= hi)
      edges.push_back({e.a + delta, e.b + delta});
    else
      edges.push_back(e);
  }
  return Ncst::validate(t.size(), std::move(edges));
}

// ---------------------------------------------------------------------------
// Shift sequences. Processing one minimal segment S = (S_A, S_B) beneath the
// shifting span runs through the stages
//
//   #0 --M5--> #1 --shift S_A--> #2 --M6--> #3 --shift S_B--> #4 --M7--> done
//
// with M5 skipped when S_B is empty, M7 and the S_A shift skipped when S_A is
// empty, and the segments handled rightmost first.

struct Emitter {
  std::vector<AnnotatedStep>* out;
  EncodingTag enc;
  int counter;  // Z-subscript of the next emitted state

  void flip(Ncst& cur, Edge removed, Edge added, MoveTag tag, int depth) {
    Ncst next = apply_flip(cur, removed, added);
    out->push_back({cur, next, removed, added, tag, depth, enc});
    cur = std::move(next);
    ++counter;
  }
};

void check_shift_right_pre(const Ncst& t, Edge span) {
  require(t.contains(span), ErrorCode::kShiftPreconditionViolated,
          "span edge not in tree");
  require(has_edges_beneath(t, span) && gap_beneath(t, span) == span.b - 1,
          ErrorCode::kShiftPreconditionViolated,
          "span is not in the (T_A, empty, empty) form with T_A non-empty");
}

void check_shift_left_pre(const Ncst& t, Edge span) {
  require(t.contains(span), ErrorCode::kShiftPreconditionViolated,
          "span edge not in tree");
  require(has_edges_beneath(t, span) && gap_beneath(t, span) == span.a,
          ErrorCode::kShiftPreconditionViolated,
          "span is not in the (empty, T_B, empty) form with T_B non-empty");
}

void emit_shift_right(Ncst& cur, Edge span, int depth, Emitter& em) {
  check_shift_right_pre(cur, span);
  const std::vector<Segment> segs = minimal_segments(cur, span);
  require(!segs.empty() && segs.front().lo == span.a &&
              segs.back().hi == span.b - 1,
          ErrorCode::kInternal, "segments must tile the span");

  for (int i = static_cast<int>(segs.size()) - 1; i >= 0; --i) {
    const int p = segs[i].lo;
    const int q = segs[i].hi;  // current gap beneath the span
    require(gap_beneath(cur, span) == q, ErrorCode::kInternal,
            "segment boundary must match the current gap");
    Edge e{p, q};
    const int ge = gap_beneath(cur, e);
    if (q >= ge + 2) {
      em.flip(cur, e, Edge{p, ge + 1}, MoveTag::kM5, depth);
      e = Edge{p, ge + 1};
    }
    if (p <= ge - 1) emit_shift_right(cur, Edge{p, ge + 1}, depth + 1, em);
    em.flip(cur, Edge{p, ge + 1}, Edge{ge + 1, q + 1}, MoveTag::kM6, depth);
    if (q >= ge + 2)
      emit_shift_right(cur, Edge{ge + 1, q + 1}, depth + 1, em);
    if (p <= ge - 1)
      em.flip(cur, Edge{ge + 1, q + 1}, Edge{p + 1, q + 1}, MoveTag::kM7,
              depth);
  }
}

void emit_shift_left(Ncst& cur, Edge span, int depth, Emitter& em) {
  check_shift_left_pre(cur, span);
  // A left shift is the step-reversed right shift that would restore the
  // current tree; simulate that one on scratch and replay it backwards.
  Ncst target = translate_beneath(cur, span, -1);
  Ncst scratch = target;
  std::vector<AnnotatedStep> fwd;
  Emitter fwd_em{&fwd, em.enc, 1};
  emit_shift_right(scratch, span, depth, fwd_em);
  require(scratch == cur, ErrorCode::kInternal,
          "right shift must reproduce the left-shift source");
  for (auto it = fwd.rbegin(); it != fwd.rend(); ++it) {
    em.out->push_back(
        {it->after, it->before, it->added, it->removed, it->tag, it->depth,
         em.enc});
    ++em.counter;
  }
  cur = std::move(target);
}

// ---------------------------------------------------------------------------
// Canonical path construction.

std::vector<AnnotatedStep> build_normalized(const DyckPath& i,
                                            const DyckPath& f,
                                            MoveType* type_out) {
  Ncst cur = path_to_tree(i);
  const Ncst target = path_to_tree(f);
  const LeftAnalysis an = analyze_normalized(i, f, cur);
  if (type_out) *type_out = an.type;

  std::vector<AnnotatedStep> out;
  if (an.type == MoveType::kType1) {
    Emitter em{&out, EncodingTag::kS1, 1};
    const int p = an.left_pt, ge = an.ge;
    if (p <= ge - 1) emit_shift_right(cur, an.e, 1, em);
    if (p != an.a.a) {
      em.enc = EncodingTag::kM1;
      em.flip(cur, Edge{p, ge + 1}, Edge{an.a.a, ge + 1}, MoveTag::kM1, 1);
    }
    em.enc = EncodingTag::kM2;
    em.flip(cur, an.a, Edge{ge + 1, an.a.b}, MoveTag::kM2, 1);
  } else {
    Emitter em{&out, EncodingTag::kM3, 1};
    const int q = an.left_pt, ge = an.ge, ga = an.ga;
    em.flip(cur, Edge{q, ge + 1}, Edge{ga, q}, MoveTag::kM3, 1);
    if (q >= ga + 2) {
      em.enc = EncodingTag::kS2;
      emit_shift_left(cur, Edge{ga, q}, 1, em);
    }
    if (ge != q) {
      em.enc = EncodingTag::kM4;
      em.flip(cur, Edge{ga, q}, Edge{ga, ge}, MoveTag::kM4, 1);
    }
  }
  require(cur == target, ErrorCode::kInternal,
          "simulation must end at the target tree");
  return out;
}

std::vector<AnnotatedStep> reverse_steps(
    const std::vector<AnnotatedStep>& fwd) {
  std::vector<AnnotatedStep> out;
  out.reserve(fwd.size());
  for (auto it = fwd.rbegin(); it != fwd.rend(); ++it)
    out.push_back({it->after, it->before, it->added, it->removed, it->tag,
                   it->depth, it->encoding_tag});
  return out;
}

}  // namespace

MoveClassification classify_move(const DyckPath& i, const DyckPath& f) {
  const SwapInfo swap = find_adjacent_swap(i, f);
  const DyckPath& ni = swap.normalized ? i : f;
  const DyckPath& nf = swap.normalized ? f : i;
  const LeftAnalysis an = analyze_normalized(ni, nf, path_to_tree(ni));
  MoveClassification out;
  out.direction =
      swap.normalized ? MoveDirection::kRight : MoveDirection::kLeft;
  out.move_type = an.type;
  out.x = an.x;
  out.y = an.y;
  out.x_prime = an.x_prime;
  out.y_prime = an.y_prime;
  return out;
}

CanonicalPath build_path(const DyckPath& i, const DyckPath& f) {
  const SwapInfo swap = find_adjacent_swap(i, f);
  CanonicalPath path;
  path.from = i;
  path.to = f;
  if (swap.normalized) {
    path.direction = MoveDirection::kRight;
    path.steps = build_normalized(i, f, &path.move_type);
  } else {
    path.direction = MoveDirection::kLeft;
    path.steps = reverse_steps(build_normalized(f, i, &path.move_type));
  }
  return path;
}

std::vector<AnnotatedStep> shift_right(const Ncst& t, Edge span, int depth,
                                       int step) {
  Ncst cur = t;
  std::vector<AnnotatedStep> out;
  Emitter em{&out, EncodingTag::kS1, step};
  emit_shift_right(cur, span, depth, em);
  return out;
}

std::vector<AnnotatedStep> shift_left(const Ncst& t, Edge span, int depth,
                                      int step) {
  Ncst cur = t;
  std::vector<AnnotatedStep> out;
  Emitter em{&out, EncodingTag::kS2, step};
  emit_shift_left(cur, span, depth, em);
  return out;
}

EncodingTriple encode(const CanonicalPath& path, int k) {
  require(0 <= k && k < static_cast<int>(path.steps.size()),
          ErrorCode::kIndexOutOfRange,
          "step " + std::to_string(k) + " of " +
              std::to_string(path.steps.size()));
  const AnnotatedStep& s = path.steps[static_cast<std::size_t>(k)];
  const bool interior = s.encoding_tag == EncodingTag::kS1 ||
                        s.encoding_tag == EncodingTag::kS2;
  return {path.direction, s.encoding_tag, interior ? s.depth : 1};
}

namespace {

// ---------------------------------------------------------------------------
// Reconstruction. Everything below reverses the construction above using only
// a transition (Z, Z') and an encoding triple, mirroring the shift stages.

// Reverts the executed prefix of one segment's processing back to stage #0.
// `stage` names the stage the tree is currently at; `e` is the segment pivot
// at its position in the tree, `parent` the shifting span's edge.
void revert_segment_prefix(Ncst& t, Edge e, Edge parent, int stage) {
  if (stage >= 4) {  // undo the S_B shift
    t = translate_beneath(t, e, -1);
  }
  if (stage >= 3) {  // undo M6
    const int p = gap_beneath(t, parent);
    const Edge back{p, e.a};
    t = apply_flip(t, e, back);
    e = back;
  }
  if (stage >= 2) {  // undo the S_A shift
    if (has_edges_beneath(t, e)) t = translate_beneath(t, e, -1);
  }
  if (stage >= 1) {  // undo M5 if S_B was non-empty
    const int g = gap_beneath(t, parent);
    if (g > e.b) t = apply_flip(t, e, Edge{e.a, g});
  }
}

// With the current segment back at stage #0, the segments already processed
// sit one position right of the gap; translating them back reverts the whole
// call on `parent`.
void revert_call_suffix(Ncst& t, Edge parent) {
  const int g = gap_beneath(t, parent);
  t = translate_within(t, g + 1, parent.b, -1, parent);
}

struct WalkResult {
  Ncst entry;  // state at the entry of the outermost (depth 1) shift call
  Edge e0;     // the shifting span of that call (same position in entry)
  Edge a;      // its overarching edge
};

// Unwinds a shift-interior transition. `pre` is the state before the flip in
// the orientation where the shift runs RIGHT, `removed`/`added` the flip as
// seen in that orientation, `d` the recursion depth of the flip.
WalkResult reverse_walk(const Ncst& pre, Edge removed, Edge added, int d) {
  std::vector<Edge> chain(static_cast<std::size_t>(d) + 1);
  chain[static_cast<std::size_t>(d)] = removed;
  for (int k = d - 1; k >= 0; --k) {
    auto ov = overarching_edge(pre, chain[static_cast<std::size_t>(k) + 1]);
    require(ov.has_value(), ErrorCode::kNoPreimage,
            "enclosing chain shorter than the stated depth");
    chain[static_cast<std::size_t>(k)] = *ov;
  }
  auto a = overarching_edge(pre, chain[0]);
  require(a.has_value(), ErrorCode::kNoPreimage, "no pivot above the shift");

  Ncst t = pre;
  // Deepest level: the flip type follows from which endpoint is preserved.
  int stage;
  if (removed.a == added.a)
    stage = 0;  // M5 opens a segment; nothing executed before it
  else if (removed.b == added.b)
    stage = 4;  // M7 closes one
  else
    stage = 2;  // M6
  revert_segment_prefix(t, chain[static_cast<std::size_t>(d)],
                        chain[static_cast<std::size_t>(d) - 1], stage);
  revert_call_suffix(t, chain[static_cast<std::size_t>(d) - 1]);

  // Enclosing levels: the tree now sits at the entry of the deeper call;
  // whether that call shifted S_A or S_B shows in where the gap beneath the
  // grandparent lies relative to the segment pivot.
  for (int k = d - 1; k >= 1; --k) {
    const Edge e = chain[static_cast<std::size_t>(k)];
    const Edge parent = chain[static_cast<std::size_t>(k) - 1];
    const int g = gap_beneath(t, parent);
    if (g >= e.b) {
      revert_segment_prefix(t, e, parent, 1);
    } else {
      require(g < e.a, ErrorCode::kNoPreimage, "gap inside a segment pivot");
      revert_segment_prefix(t, e, parent, 3);
    }
    revert_call_suffix(t, parent);
  }
  return {std::move(t), chain[0], *a};
}

Edge single_removed(const Ncst& z, const Ncst& z_prime) {
  std::vector<Edge> diff;
  std::set_difference(z.edges().begin(), z.edges().end(),
                      z_prime.edges().begin(), z_prime.edges().end(),
                      std::back_inserter(diff));
  require(diff.size() == 1, ErrorCode::kNoPreimage,
          "transition must move exactly one edge");
  return diff[0];
}

// Reconstruction in the normalized orientation. Returns (I, F) as trees.
std::pair<Ncst, Ncst> decode_normalized(const Ncst& z, const Ncst& z_prime,
                                        EncodingTag tag, int depth) {
  const Edge removed = single_removed(z, z_prime);
  const Edge added = single_removed(z_prime, z);

  switch (tag) {
    case EncodingTag::kM1: {
      // z: e at (p, ge+1) with the shift done; z': e moved to (a1, ge+1).
      require(removed.b == added.b, ErrorCode::kNoPreimage,
              "M1 keeps the right endpoint");
      Ncst t_i = translate_beneath(z, removed, -1);
      auto a = overarching_edge(z_prime, added);
      require(a.has_value() && a->a == added.a, ErrorCode::kNoPreimage,
              "M1 target must share the pivot's left endpoint");
      Ncst t_f = apply_flip(z_prime, *a, Edge{removed.b, a->b});
      return {std::move(t_i), std::move(t_f)};
    }
    case EncodingTag::kM2: {
      // removed = a = (a1, a2); added = (ge+1, a2).
      require(removed.b == added.b, ErrorCode::kNoPreimage,
              "M2 keeps the right endpoint");
      const Edge e{removed.a, added.a};
      require(z.contains(e), ErrorCode::kNoPreimage, "inner edge missing");
      const int p = gap_beneath(z, e);
      Ncst t_i = apply_flip(z, e, Edge{p, e.b});
      t_i = translate_beneath(t_i, Edge{p, e.b}, -1);
      return {std::move(t_i), z_prime};
    }
    case EncodingTag::kM3: {
      // removed = e at (q, ge+1); added = (ga, q).
      require(added.b == removed.a, ErrorCode::kNoPreimage,
              "M3 folds e onto the segment");
      const int ge = removed.b - 1;
      Ncst t_f = translate_beneath(z_prime, added, -1);
      t_f = apply_flip(t_f, added, Edge{added.a, ge});
      return {z, std::move(t_f)};
    }
    case EncodingTag::kM4: {
      // removed = (ga, q); added = (ga, ge).
      require(removed.a == added.a, ErrorCode::kNoPreimage,
              "M4 keeps the left endpoint");
      const int ge = added.b;
      Ncst t_i = translate_beneath(z, removed, +1);
      t_i = apply_flip(t_i, removed, Edge{removed.b, ge + 1});
      return {std::move(t_i), z_prime};
    }
    case EncodingTag::kS1: {
      const WalkResult w = reverse_walk(z, removed, added, depth);
      // Type 1: the walk lands on T_I; replay the whole simulation forward.
      Ncst t_i = w.entry;
      Ncst t_f = translate_beneath(t_i, w.e0, +1);
      t_f = apply_flip(t_f, w.e0, Edge{w.a.a, w.e0.b});
      t_f = apply_flip(t_f, w.a, Edge{w.e0.b, w.a.b});
      return {std::move(t_i), std::move(t_f)};
    }
    case EncodingTag::kS2: {
      // A left-shift step is the reverse of a right-shift step from z' back
      // to z; unwind in that orientation.
      const WalkResult w = reverse_walk(z_prime, added, removed, depth);
      const Ncst& w2 = w.entry;                      // after the left shift
      Ncst w1 = translate_beneath(w2, w.e0, +1);     // before it
      const int ge_i = gap_beneath(w1, w.a);
      const int ge_f = gap_beneath(w2, w.a);
      require(ge_i == ge_f, ErrorCode::kNoPreimage, "inconsistent gap");
      Ncst t_i = apply_flip(w1, w.e0, Edge{w.e0.b, ge_i + 1});
      Ncst t_f = w.e0.b == ge_f
                     ? w2
                     : apply_flip(w2, w.e0, Edge{w.e0.a, ge_f});
      return {std::move(t_i), std::move(t_f)};
    }
  }
  fail(ErrorCode::kNoPreimage, "unknown tag");
}

}  // namespace

std::pair<DyckPath, DyckPath> decode(const Ncst& z, const Ncst& z_prime,
                                     const EncodingTriple& triple) {
  std::pair<DyckPath, DyckPath> result;
  try {
    require(z.size() == z_prime.size(), ErrorCode::kNoPreimage,
            "trees of different size");
    require(triple.depth >= 1 && triple.depth <= std::max(1, z.size()),
            ErrorCode::kNoPreimage, "depth out of range");
    const bool swap_zs = triple.direction == MoveDirection::kLeft;
    const Ncst& nz = swap_zs ? z_prime : z;
    const Ncst& nz_prime = swap_zs ? z : z_prime;
    auto [t_i, t_f] =
        decode_normalized(nz, nz_prime, triple.move_tag, triple.depth);
    DyckPath pi = tree_to_path(t_i);
    DyckPath pf = tree_to_path(t_f);
    result = swap_zs ? std::make_pair(std::move(pf), std::move(pi))
                     : std::make_pair(std::move(pi), std::move(pf));
  } catch (const Error& e) {
    fail(ErrorCode::kNoPreimage, std::string("reconstruction failed: ") +
                                     e.what());
  }

  // A reconstruction only counts if the canonical path of the recovered pair
  // really does traverse z -> z' with this exact encoding.
  try {
    const CanonicalPath path = build_path(result.first, result.second);
    for (int k = 0; k < static_cast<int>(path.steps.size()); ++k) {
      const AnnotatedStep& s = path.steps[static_cast<std::size_t>(k)];
      if (s.before == z && s.after == z_prime && encode(path, k) == triple)
        return result;
    }
  } catch (const Error&) {
    // fall through to NoPreimage
  }
  fail(ErrorCode::kNoPreimage, "no adjacent move routes through here");
}

CongestionReport congestion_census(int n, int cap) {
  require(n >= 0, ErrorCode::kSizeMismatch, "n must be non-negative");
  require(n <= cap, ErrorCode::kCapExceeded,
          "n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  const std::vector<DyckPath> paths = enumerate_paths(n, n);
  std::vector<Ncst> trees;
  trees.reserve(paths.size());
  std::map<Ncst, int> tree_index;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    trees.push_back(path_to_tree(paths[i]));
    tree_index[trees[i]] = static_cast<int>(i);
  }

  using Usage = std::map<std::pair<int, int>, long>;
  using Load = std::map<std::pair<int, int>, long>;  // sum of path lengths

  auto sweep = [&](std::size_t begin, std::size_t end) {
    std::pair<Usage, Load> acc;
    for (std::size_t i = begin; i < end; ++i) {
      for (const DyckPath& f : am_neighbors(paths[i])) {
        const CanonicalPath cp = build_path(paths[i], f);
        const long len = static_cast<long>(cp.steps.size());
        for (const AnnotatedStep& s : cp.steps) {
          const std::pair<int, int> key{tree_index.at(s.before),
                                        tree_index.at(s.after)};
          acc.first[key] += 1;
          acc.second[key] += len;
        }
      }
    }
    return acc;
  };

  // The census parallelizes over source states with a final merge.
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(
                                   std::thread::hardware_concurrency(),
                                   paths.size() / 8 + 1));
  std::vector<std::future<std::pair<Usage, Load>>> futures;
  const std::size_t chunk = (paths.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(paths.size(), begin + chunk);
    if (begin >= end) break;
    futures.push_back(
        std::async(std::launch::async, sweep, begin, end));
  }
  Usage usage;
  Load load;
  for (auto& fut : futures) {
    auto [u, l] = fut.get();
    for (auto& [k, v] : u) usage[k] += v;
    for (auto& [k, v] : l) load[k] += v;
  }

  CongestionReport report;
  report.n = n;
  report.usage = std::move(usage);
  report.bound_12n = 12L * n;
  const Rational p_am = n >= 1 ? Rational(1, 6 * n - 2) : Rational(0);
  for (const auto& [key, count] : report.usage) {
    report.max_count = std::max(report.max_count, count);
    const Rational p_fm =
        fm_transition_prob(trees[static_cast<std::size_t>(key.first)],
                           trees[static_cast<std::size_t>(key.second)]);
    require(p_fm > 0, ErrorCode::kInternal, "path uses a null transition");
    const Rational b = Rational(load.at(key)) * p_am / p_fm;
    if (b > report.congestion_b) report.congestion_b = b;
  }
  return report;
}

CongestionReport congestion_census(int n) {
  return congestion_census(n, caps().census);
}

}  // namespace fusswalk
