#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fusswalk/rational.hpp"

namespace fusswalk {

enum class Step : std::uint8_t { kUp, kDown };

/// A 2-Dyck path: 2n up-steps (+1) and n down-steps (-2) whose prefix sums
/// never go negative and end at zero. Immutable after construction.
class DyckPath {
 public:
  /// The empty path (n = 0).
  DyckPath() = default;

  /// Validates a raw step sequence. Throws kRejectLength,
  /// kRejectNegativePrefix or kRejectNonzeroTotal.
  static DyckPath validate(std::vector<Step> steps);

  /// Parses "U"/"D" text; the arrow glyphs are accepted on input too.
  /// Throws kBadCharacter.
  static DyckPath parse(std::string_view text);

  int size() const { return n_; }            // n
  int length() const { return 3 * n_; }      // 3n
  bool empty() const { return n_ == 0; }
  const std::vector<Step>& steps() const { return steps_; }

  /// 1-based step access, matching the index convention used throughout.
  Step step(int i) const { return steps_[static_cast<std::size_t>(i - 1)]; }

  /// profile[j-1] = height after j steps; non-negative, ends at 0.
  std::vector<int> height_profile() const;

  /// heights()[j] = height after j steps, including heights()[0] = 0.
  std::vector<int> heights() const;

  std::string str() const;

  auto operator<=>(const DyckPath&) const = default;

 private:
  std::vector<Step> steps_;
  int n_ = 0;
};

/// Unique split of a non-empty path as Up A1 Up A2 Down B. The start fields
/// are the 1-based indices of the first step of each block's content (the
/// structural arrow sits at start-1); an empty block has start pointing just
/// past its structural arrow.
struct DyckDecomposition {
  DyckPath a1, a2, b;
  int start_a1 = 0;
  int start_a2 = 0;
  int start_b = 0;
};

/// Fuss-Catalan number C_{k,n} = binom((k+1)n, n) / (kn+1), exact.
BigInt fuss_catalan(int k, long long n);

/// Throws kEmptyPath on the empty path.
DyckDecomposition decompose(const DyckPath& path);

/// Inverse of decompose: Up a1 Up a2 Down b.
DyckPath compose(const DyckPath& a1, const DyckPath& a2, const DyckPath& b);

/// All 2-Dyck paths of length 3n, in ascending lexicographic order of their
/// down-step position sets (the shared state indexing). Throws kCapExceeded
/// for n beyond the cap.
std::vector<DyckPath> enumerate_paths(int n);
std::vector<DyckPath> enumerate_paths(int n, int cap);

DyckPath parse_path(std::string_view text);
std::string format_path(const DyckPath& path);

/// The maximal path (2n ups then n downs): it dominates every path of size n.
DyckPath top_path(int n);

/// The minimal path (UUD repeated n times): dominated by every path.
DyckPath bottom_path(int n);

}  // namespace fusswalk
