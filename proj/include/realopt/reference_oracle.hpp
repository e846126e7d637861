#pragma once

#include "realopt/tree_model.hpp"

namespace realopt {

/// V0 by brute-force enumeration of all eight paths: each path's flows (with
/// deltas) discounted term by term, weighted by the path probability. Shares
/// nothing with the rollback code; used to cross-check it. Deterministic
/// trees only (zero-variance distributions).
double enumerate_value(const OptionTree& tree);

}  // namespace realopt
