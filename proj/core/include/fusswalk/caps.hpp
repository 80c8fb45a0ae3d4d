#pragma once

namespace fusswalk {

/// Size caps for the exhaustive/exact code paths. The defaults keep every
/// desk-scale computation cheap; FUSSWALK_MAX_N in the environment overrides
/// all of them at once, and CLI flags can override per invocation.
struct Caps {
  int enumeration = 8;  // enumerate_paths / enumerate_trees
  int matrix = 6;       // exact transition matrices (1428 states at n = 6)
  int eigen = 6;        // dense eigensolves
  int tv = 5;           // total-variation curves (273 states at n = 5)
  int census = 6;       // congestion census sweeps
};

/// Process-wide defaults, with the environment override applied once.
const Caps& caps();

}  // namespace fusswalk
