#include "stoplat/rieszcore.hpp"

#include <algorithm>

namespace stoplat {

RVDecomposition rv_decompose(const RealRV& x, const std::vector<RealRV>& ys) {
  if (ys.empty()) throw PreconditionError("decomposition needs at least one bound");
  const auto m = x.size();
  for (const auto& y : ys) {
    if (y.size() != m) throw PreconditionError("bounds over a different sample space");
  }
  for (std::size_t w = 0; w < m; ++w) {
    if (x[w] < 0) throw PreconditionError("target is negative at outcome #" + std::to_string(w));
    Rational total = 0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      if (ys[i][w] < 0) {
        throw PreconditionError("bound " + std::to_string(i + 1) + " is negative at outcome #" + std::to_string(w));
      }
      total += ys[i][w];
    }
    if (total < x[w]) throw PreconditionError("target exceeds the sum of bounds at outcome #" + std::to_string(w));
  }

  RVDecomposition out{x, ys, {}};
  RealRV remaining = x;
  for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
    auto part = rv_meet(remaining, ys[k]);
    remaining = rv_sub(remaining, part);
    out.parts.push_back(std::move(part));
  }
  out.parts.push_back(std::move(remaining));
  return out;
}

RealRV rv_interpolate(const std::vector<RealRV>& a, const std::vector<RealRV>& b) {
  if (a.empty() || b.empty()) throw PreconditionError("interpolation needs nonempty A and B");
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (a[i].size() != b[j].size()) throw PreconditionError("A and B over different sample spaces");
      for (std::size_t w = 0; w < a[i].size(); ++w) {
        if (b[j][w] < a[i][w]) {
          throw PreconditionError("A <= B fails: A[" + std::to_string(i) + "] > B[" + std::to_string(j) +
                                  "] at outcome #" + std::to_string(w));
        }
      }
    }
  }
  RealRV out = a.front();
  for (const auto& x : a) out = rv_join(out, x);
  return out;
}

}  // namespace stoplat
