// Riesz decomposition and interpolation in the pointwise lattice of plain
// random variables. These hold unconditionally and serve as the baseline
// the stopping-time searches are compared against.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "stoplat/times.hpp"

namespace stoplat {

/// Raised when an operation's input contract does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RVDecomposition {
  RealRV target;
  std::vector<RealRV> bounds;
  std::vector<RealRV> parts;
};

/// Greedy split of x <= y_1 + ... + y_n (all >= 0) into 0 <= x_i <= y_i with
/// sum x. Part k takes as much of the remainder as y_k allows; the last
/// part takes the rest. The result depends on the order of `ys`.
///
/// Throws PreconditionError naming the offending outcome.
RVDecomposition rv_decompose(const RealRV& x, const std::vector<RealRV>& ys);

/// Least interpolant: the pointwise join of A, which satisfies A <= z <= B
/// whenever every a <= every b.
RealRV rv_interpolate(const std::vector<RealRV>& a, const std::vector<RealRV>& b);

}  // namespace stoplat
