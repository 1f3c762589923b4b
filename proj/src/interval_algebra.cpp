#include "mvl/interval_algebra.hpp"

#include "mvl/errors.hpp"

namespace mvl {

IntervalAlgebra::IntervalAlgebra(Algebra base) : base_(std::move(base)) {
  const int n = base_.size();
  carrier_.reserve(n * (n + 1) / 2);
  for (Value lo = 0; lo < n; ++lo) {
    for (Value hi = lo; hi < n; ++hi) carrier_.push_back({lo, hi});
  }
}

int IntervalAlgebra::index_of(const Interval& i) const {
  const int n = chain_size();
  if (!i.valid() || i.hi >= n) {
    throw StructuralError("interval " + to_string(i) + " is not over a " +
                          std::to_string(n) + "-element chain");
  }
  // Rows of the (lo, hi) enumeration have lengths n, n-1, ...
  return i.lo * n - i.lo * (i.lo - 1) / 2 + (i.hi - i.lo);
}

StarOps star_ops(const IntervalAlgebra& ia, const Interval& a, const Interval& b) {
  ia.index_of(a);
  ia.index_of(b);
  return {ia.neg(a), ia.conj(a, b)};
}

SignClasses sign_classes(const IntervalAlgebra& ia) {
  return sign_classes(ia.base().chain());
}

SignClasses sign_classes(const Chain& chain) {
  const auto neg = negation(chain);
  SignClasses out;
  for (Value lo = 0; lo < chain.size(); ++lo) {
    for (Value hi = lo; hi < chain.size(); ++hi) {
      const Interval j{lo, hi};
      const Interval nj{neg[hi], neg[lo]};
      if (nj == j) {
        out.fixed.push_back(j);
      } else if (leq_star(j, nj)) {
        out.negative.push_back(j);
      } else if (leq_star(nj, j)) {
        out.positive.push_back(j);
      } else {
        out.indefinite.push_back(j);
      }
    }
  }
  return out;
}

std::vector<HasseEdge> hasse(const IntervalAlgebra& ia) {
  const auto& c = ia.carrier();
  const int k = static_cast<int>(c.size());
  auto below = [&](int u, int v) { return u != v && leq_star(c[u], c[v]); };
  std::vector<HasseEdge> edges;
  for (int u = 0; u < k; ++u) {
    for (int v = 0; v < k; ++v) {
      if (!below(u, v)) continue;
      bool covered = true;
      for (int w = 0; w < k && covered; ++w) {
        if (below(u, w) && below(w, v)) covered = false;
      }
      if (covered) edges.emplace_back(u, v);
    }
  }
  return edges;
}

}  // namespace mvl
