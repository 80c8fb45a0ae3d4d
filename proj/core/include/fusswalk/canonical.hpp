#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "fusswalk/dyck.hpp"
#include "fusswalk/ncst.hpp"
#include "fusswalk/rational.hpp"

namespace fusswalk {

/// Orientation of an adjacent move. kRight is the analyzable case where the
/// down-step moves one position to the LEFT (the up-step moves right,
/// I[x..x+1] = UD -> DU); kLeft moves are handled by reversing the kRight
/// simulation of the opposite pair.
enum class MoveDirection : std::uint8_t { kLeft, kRight };

enum class MoveType : std::uint8_t { kType1, kType2 };

/// Where a flip sits in the simulation. M1/M2 are the two top-level flips of
/// a Type-1 move, M3/M4 of a Type-2 move; M5/M6/M7 are the segment flips
/// inside a shift sequence.
enum class MoveTag : std::uint8_t { kM1, kM2, kM3, kM4, kM5, kM6, kM7 };

/// Codomain of the step encoding: the top-level flips keep their own tag and
/// all interior shift flips collapse to S1 (shift inside Type-1) or S2
/// (shift inside Type-2).
enum class EncodingTag : std::uint8_t { kM1, kM2, kM3, kM4, kS1, kS2 };

const char* to_string(MoveDirection d);
const char* to_string(MoveType t);
const char* to_string(MoveTag t);
const char* to_string(EncodingTag t);

/// Analysis of one adjacent move in the normalized (kRight) orientation:
/// the swap sits at steps x, y = x+1, the affected sub-path runs over
/// (x', y'], and the type records whether the path first returns to
/// height(y)-1 (Type 1) or jumps to height(y)-2 (Type 2) after the swap.
struct MoveClassification {
  MoveDirection direction = MoveDirection::kRight;
  MoveType move_type = MoveType::kType1;
  int x = 0;        // 1-based step indices on the normalized pair
  int y = 0;
  int x_prime = 0;  // lattice positions bracketing the affected sub-path
  int y_prime = 0;
};

/// One flip of a canonical path with its simulation bookkeeping. depth is
/// the shift recursion depth (1-based) for M5/M6/M7 and 1 for M1-M4.
struct AnnotatedStep {
  Ncst before;
  Ncst after;
  Edge removed;
  Edge added;
  MoveTag tag = MoveTag::kM1;
  int depth = 1;
  EncodingTag encoding_tag = EncodingTag::kM1;
};

/// Flip-move simulation of one adjacent move I -> F: a chain of valid flips
/// from the tree of I to the tree of F, of length at most 3n+2.
struct CanonicalPath {
  DyckPath from;
  DyckPath to;
  MoveDirection direction = MoveDirection::kRight;
  MoveType move_type = MoveType::kType1;
  std::vector<AnnotatedStep> steps;
};

/// The injective per-transition tag: direction of the adjacent move, the
/// collapsed move tag, and the shift recursion depth (fixed to 1 for M1-M4).
struct EncodingTriple {
  MoveDirection direction = MoveDirection::kRight;
  EncodingTag move_tag = EncodingTag::kM1;
  int depth = 1;
  auto operator<=>(const EncodingTriple&) const = default;
};

/// Classifies the adjacent move i -> f. Throws kNotAdjacentMove unless the
/// two paths differ by exactly one valid adjacent swap.
MoveClassification classify_move(const DyckPath& i, const DyckPath& f);

/// Builds the canonical flip path simulating the adjacent move i -> f.
CanonicalPath build_path(const DyckPath& i, const DyckPath& f);

/// Emits the flip sequence that shifts the subtree beneath `span` one
/// position to the right: the tree under span must be in the (T_A, empty,
/// empty) form with T_A non-empty. `step` seeds the Z-subscript bookkeeping.
/// Throws kShiftPreconditionViolated.
std::vector<AnnotatedStep> shift_right(const Ncst& t, Edge span, int depth,
                                       int step);

/// Exact reverse of shift_right: the tree under `span` must be in the
/// (empty, T_B, empty) form with T_B non-empty.
std::vector<AnnotatedStep> shift_left(const Ncst& t, Edge span, int depth,
                                      int step);

/// Encoding of step k of a path. Throws kIndexOutOfRange.
EncodingTriple encode(const CanonicalPath& path, int k);

/// Reconstructs the unique adjacent move (i, f) whose canonical path
/// traverses z -> z' with the given triple. Throws kNoPreimage.
std::pair<DyckPath, DyckPath> decode(const Ncst& z, const Ncst& z_prime,
                                     const EncodingTriple& triple);

/// Per-transition usage counts over all ordered adjacent moves at size n,
/// plus the congestion ratio B of the comparison argument.
struct CongestionReport {
  int n = 0;
  /// usage[(i,j)] = number of ordered adjacent moves whose path contains the
  /// flip transition states[i] -> states[j]; states are indexed in the shared
  /// enumeration order.
  std::map<std::pair<int, int>, long> usage;
  long max_count = 0;
  long bound_12n = 0;
  Rational congestion_b = 0;
};

CongestionReport congestion_census(int n);
CongestionReport congestion_census(int n, int cap);

}  // namespace fusswalk
