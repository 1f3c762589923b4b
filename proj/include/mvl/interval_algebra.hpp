#pragma once

#include <utility>
#include <vector>

#include "mvl/chain_algebra.hpp"
#include "mvl/interval.hpp"

namespace mvl {

/// Intervals split by how they sit relative to their lifted negation.
/// Indefinite intervals are <=*-incomparable with their negation.
struct SignClasses {
  std::vector<Interval> negative;    // J <=* N*(J), J != N*(J)
  std::vector<Interval> fixed;       // N*(J) == J
  std::vector<Interval> positive;    // N*(J) <=* J, J != N*(J)
  std::vector<Interval> indefinite;
};

/// A cover relation between two carrier positions: from <* to, nothing between.
using HasseEdge = std::pair<int, int>;

/// The algebra of all intervals of a chain, with N* and T* lifted pointwise
/// from the base algebra and ordered by <=*.
class IntervalAlgebra {
 public:
  explicit IntervalAlgebra(Algebra base);

  const Algebra& base() const { return base_; }
  int chain_size() const { return base_.size(); }

  /// All [lo, hi] with lo <= hi, ordered by (lo, hi). Size n(n+1)/2.
  const std::vector<Interval>& carrier() const { return carrier_; }
  int index_of(const Interval& i) const;

  Interval neg(const Interval& i) const {
    return {base_.neg(i.hi), base_.neg(i.lo)};
  }
  Interval conj(const Interval& a, const Interval& b) const {
    return {base_.conj(a.lo, b.lo), base_.conj(a.hi, b.hi)};
  }

  /// <=* extended with identity, the order used for rendering.
  bool order(const Interval& a, const Interval& b) const {
    return a == b || leq_star(a, b);
  }

 private:
  Algebra base_;
  std::vector<Interval> carrier_;
};

inline IntervalAlgebra build(const Algebra& alg) { return IntervalAlgebra(alg); }

struct StarOps {
  Interval neg;
  Interval conj;
};

StarOps star_ops(const IntervalAlgebra& ia, const Interval& a, const Interval& b);

SignClasses sign_classes(const IntervalAlgebra& ia);
/// Depends only on the chain negation, not on the conjunction.
SignClasses sign_classes(const Chain& chain);

/// Transitive reduction of <=* (plus identity) over the carrier, as pairs of
/// carrier positions.
std::vector<HasseEdge> hasse(const IntervalAlgebra& ia);

}  // namespace mvl
