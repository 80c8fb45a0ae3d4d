#include "fusswalk/dyck.hpp"

#include <algorithm>
#include <utility>

#include "fusswalk/caps.hpp"
#include "fusswalk/errors.hpp"

namespace fusswalk {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kRejectNegativePrefix: return "RejectNegativePrefix";
    case ErrorCode::kRejectNonzeroTotal: return "RejectNonzeroTotal";
    case ErrorCode::kRejectLength: return "RejectLength";
    case ErrorCode::kBadCharacter: return "BadCharacter";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kEmptyPath: return "EmptyPath";
    case ErrorCode::kEmptyTree: return "EmptyTree";
    case ErrorCode::kNotSpanning: return "NotSpanning";
    case ErrorCode::kCrossing: return "Crossing";
    case ErrorCode::kEdgeNotInTree: return "EdgeNotInTree";
    case ErrorCode::kSizeMismatch: return "SizeMismatch";
    case ErrorCode::kNotAdjacent: return "NotAdjacent";
    case ErrorCode::kNotAdjacentMove: return "NotAdjacentMove";
    case ErrorCode::kDominanceViolated: return "DominanceViolated";
    case ErrorCode::kShiftPreconditionViolated:
      return "ShiftPreconditionViolated";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNoPreimage: return "NoPreimage";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

DyckPath DyckPath::validate(std::vector<Step> steps) {
  require(steps.size() % 3 == 0, ErrorCode::kRejectLength,
          "length " + std::to_string(steps.size()) + " is not 3n");
  int height = 0;
  for (std::size_t j = 0; j < steps.size(); ++j) {
    height += steps[j] == Step::kUp ? 1 : -2;
    require(height >= 0, ErrorCode::kRejectNegativePrefix,
            "height " + std::to_string(height) + " after step " +
                std::to_string(j + 1));
  }
  require(height == 0, ErrorCode::kRejectNonzeroTotal,
          "path ends at height " + std::to_string(height));
  DyckPath p;
  p.n_ = static_cast<int>(steps.size() / 3);
  p.steps_ = std::move(steps);
  return p;
}

DyckPath DyckPath::parse(std::string_view text) {
  std::vector<Step> steps;
  for (std::size_t i = 0; i < text.size();) {
    char c = text[i];
    if (c == 'U' || c == 'u') {
      steps.push_back(Step::kUp);
      ++i;
    } else if (c == 'D' || c == 'd') {
      steps.push_back(Step::kDown);
      ++i;
    } else if (text.substr(i).starts_with("\xe2\x86\x97")) {  // north-east arrow
      steps.push_back(Step::kUp);
      i += 3;
    } else if (text.substr(i).starts_with("\xe2\x86\x98")) {  // south-east arrow
      steps.push_back(Step::kDown);
      i += 3;
    } else {
      fail(ErrorCode::kBadCharacter,
           "unexpected character '" + std::string(1, c) + "' at offset " +
               std::to_string(i));
    }
  }
  return validate(std::move(steps));
}

std::vector<int> DyckPath::height_profile() const {
  std::vector<int> profile(steps_.size());
  int height = 0;
  for (std::size_t j = 0; j < steps_.size(); ++j) {
    height += steps_[j] == Step::kUp ? 1 : -2;
    profile[j] = height;
  }
  return profile;
}

std::vector<int> DyckPath::heights() const {
  std::vector<int> h(steps_.size() + 1, 0);
  for (std::size_t j = 0; j < steps_.size(); ++j)
    h[j + 1] = h[j] + (steps_[j] == Step::kUp ? 1 : -2);
  return h;
}

std::string DyckPath::str() const {
  std::string out;
  out.reserve(steps_.size());
  for (Step s : steps_) out.push_back(s == Step::kUp ? 'U' : 'D');
  return out;
}

BigInt fuss_catalan(int k, long long n) {
  require(k >= 1, ErrorCode::kSizeMismatch, "k must be positive");
  require(n >= 0, ErrorCode::kSizeMismatch, "n must be non-negative");
  // binom((k+1)n, n) / (kn+1), computed exactly.
  BigInt binom = 1;
  for (long long i = 1; i <= n; ++i) {
    binom *= (static_cast<long long>(k) + 1) * n - n + i;
    binom /= i;  // exact at every stage: binom(m, i) is an integer
  }
  BigInt divisor = BigInt(k) * n + 1;
  require(binom % divisor == 0, ErrorCode::kInternal,
          "closed form must divide exactly");
  return binom / divisor;
}

DyckDecomposition decompose(const DyckPath& path) {
  require(!path.empty(), ErrorCode::kEmptyPath, "cannot decompose");
  const std::vector<int> h = path.heights();
  const int len = path.length();

  int d = 0;  // structural down-step: first return to height 0
  for (int j = 1; j <= len; ++j) {
    if (h[j] == 0) {
      d = j;
      break;
    }
  }
  int last_one = 0;  // last height-1 position before the structural down
  for (int j = 0; j < d; ++j) {
    if (h[j] == 1) last_one = j;
  }
  const int u2 = last_one + 1;  // structural up for the A2 block

  auto extract = [&](int first, int last) {
    std::vector<Step> s;
    for (int j = first; j <= last; ++j) s.push_back(path.step(j));
    return DyckPath::validate(std::move(s));
  };

  DyckDecomposition out;
  out.a1 = extract(2, u2 - 1);
  out.a2 = extract(u2 + 1, d - 1);
  out.b = extract(d + 1, len);
  out.start_a1 = 2;
  out.start_a2 = u2 + 1;
  out.start_b = d + 1;
  return out;
}

DyckPath compose(const DyckPath& a1, const DyckPath& a2, const DyckPath& b) {
  std::vector<Step> steps;
  steps.reserve(static_cast<std::size_t>(a1.length() + a2.length() +
                                         b.length() + 3));
  steps.push_back(Step::kUp);
  steps.insert(steps.end(), a1.steps().begin(), a1.steps().end());
  steps.push_back(Step::kUp);
  steps.insert(steps.end(), a2.steps().begin(), a2.steps().end());
  steps.push_back(Step::kDown);
  steps.insert(steps.end(), b.steps().begin(), b.steps().end());
  return DyckPath::validate(std::move(steps));
}

namespace {

void enumerate_rec(std::vector<Step>& prefix, int ups_left, int downs_left,
                   int height, std::vector<DyckPath>& out) {
  if (ups_left == 0 && downs_left == 0) {
    out.push_back(DyckPath::validate(prefix));
    return;
  }
  // Down first: enumeration order is ascending in the down-position sets.
  if (downs_left > 0 && height >= 2) {
    prefix.push_back(Step::kDown);
    enumerate_rec(prefix, ups_left, downs_left - 1, height - 2, out);
    prefix.pop_back();
  }
  if (ups_left > 0) {
    prefix.push_back(Step::kUp);
    enumerate_rec(prefix, ups_left - 1, downs_left, height + 1, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<DyckPath> enumerate_paths(int n, int cap) {
  require(n >= 0, ErrorCode::kSizeMismatch, "n must be non-negative");
  require(n <= cap, ErrorCode::kCapExceeded,
          "n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  std::vector<DyckPath> out;
  std::vector<Step> prefix;
  prefix.reserve(static_cast<std::size_t>(3 * n));
  enumerate_rec(prefix, 2 * n, n, 0, out);
  return out;
}

std::vector<DyckPath> enumerate_paths(int n) {
  return enumerate_paths(n, caps().enumeration);
}

DyckPath parse_path(std::string_view text) { return DyckPath::parse(text); }

std::string format_path(const DyckPath& path) { return path.str(); }

DyckPath top_path(int n) {
  std::vector<Step> steps(static_cast<std::size_t>(3 * n), Step::kDown);
  std::fill(steps.begin(), steps.begin() + 2 * n, Step::kUp);
  return DyckPath::validate(std::move(steps));
}

DyckPath bottom_path(int n) {
  std::vector<Step> steps;
  steps.reserve(static_cast<std::size_t>(3 * n));
  for (int i = 0; i < n; ++i) {
    steps.push_back(Step::kUp);
    steps.push_back(Step::kUp);
    steps.push_back(Step::kDown);
  }
  return DyckPath::validate(std::move(steps));
}

}  // namespace fusswalk
