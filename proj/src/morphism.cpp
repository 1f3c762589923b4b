#include "mvl/morphism.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "mvl/errors.hpp"

namespace mvl {

Renaming Renaming::from_points(const std::vector<Value>& values) {
  Renaming f;
  f.image.reserve(values.size());
  for (Value v : values) f.image.push_back(Interval::point(v));
  return f;
}

bool Renaming::all_points() const {
  return std::all_of(image.begin(), image.end(),
                     [](const Interval& i) { return i.is_point(); });
}

const ConditionViolation* QuasiMorphismReport::find(int condition) const {
  for (const auto& v : violations) {
    if (v.condition == condition) return &v;
  }
  return nullptr;
}

namespace {

void require_total(const Chain& source, const Chain& target, const Renaming& f) {
  if (f.size() != source.size()) {
    throw StructuralError("renaming has " + std::to_string(f.size()) +
                          " images but the source chain has " +
                          std::to_string(source.size()) + " values");
  }
  for (Value x = 0; x < f.size(); ++x) {
    const Interval& i = f(x);
    if (!i.valid() || i.hi >= target.size()) {
      throw StructuralError("image of " + source.label(x) + " " + to_string(i) +
                            " is not an interval over the target chain");
    }
  }
}

Interval neg_star(const std::vector<Value>& neg, const Interval& i) {
  return {neg[i.hi], neg[i.lo]};
}

// Collects violations; with stop_early it returns after the first one.
QuasiMorphismReport check(const Algebra& a, const Algebra& b, const Renaming& f,
                          bool stop_early) {
  require_total(a.chain(), b.chain(), f);
  QuasiMorphismReport r;
  const int n = a.size();
  const auto& bneg = b.negation_table();

  for (Value x = 0; x < n && !r.find(1); ++x) {
    for (Value y = x + 1; y < n; ++y) {
      if (!leq_componentwise(f(x), f(y))) {
        r.violations.push_back({1, {x, y}, f(x), f(y)});
        break;
      }
    }
  }
  if (stop_early && !r.ok()) return r;

  if (f(0) != Interval::point(0)) {
    r.violations.push_back({2, {0}, f(0), Interval::point(0)});
    if (stop_early) return r;
  }

  for (Value x = 0; x < n; ++x) {
    const Interval want = neg_star(bneg, f(x));
    if (f(a.neg(x)) != want) {
      r.violations.push_back({3, {x}, f(a.neg(x)), want});
      if (stop_early) return r;
      break;
    }
  }

  bool cond4_reported = false;
  for (Value x = 0; x < n; ++x) {
    for (Value y = 0; y < n; ++y) {
      const Interval lhs = f(a.conj(x, y));
      const Interval rhs{b.conj(f(x).lo, f(y).lo), b.conj(f(x).hi, f(y).hi)};
      if (!leq_componentwise(lhs, rhs)) r.leq_reading_holds = false;
      if (!cond4_reported && !lhs.subset_of(rhs)) {
        r.violations.push_back({4, {x, y}, lhs, rhs});
        cond4_reported = true;
        if (stop_early) return r;
      }
    }
  }

  r.top_preserved = f(a.top()) == Interval::point(b.top());
  return r;
}

}  // namespace

QuasiMorphismReport is_quasi_morphism(const Algebra& a, const Algebra& b,
                                      const Renaming& f) {
  return check(a, b, f, false);
}

bool passes_quasi_morphism(const Algebra& a, const Algebra& b, const Renaming& f) {
  return check(a, b, f, true).ok();
}

bool is_negation_morphism(const Chain& a, const Chain& b, const Renaming& f) {
  require_total(a, b, f);
  if (f(0) != Interval::point(0)) return false;
  const auto aneg = negation(a);
  const auto bneg = negation(b);
  for (Value x = 0; x < a.size(); ++x) {
    if (f(aneg[x]) != neg_star(bneg, f(x))) return false;
  }
  return true;
}

bool is_morphism(const Algebra& a, const Algebra& b, const Renaming& f) {
  return f.all_points() && passes_quasi_morphism(a, b, f);
}

std::vector<std::vector<Value>> negation_morphisms(const Chain& a, const Chain& b) {
  const auto sa = sign_partition(a);
  const auto sb = sign_partition(b);
  std::vector<std::vector<Value>> out;
  if (!sa.fixed.empty() && sb.fixed.empty()) return out;

  std::vector<Value> codomain = sb.negatives;
  codomain.insert(codomain.end(), sb.fixed.begin(), sb.fixed.end());
  const auto aneg = negation(a);
  const auto bneg = negation(b);

  std::vector<Value> f(a.size(), 0);
  // Negatives are 0 .. k-1 in order; f(0) = 0 and the rest non-decreasing.
  auto extend = [&]() {
    for (Value x : sa.fixed) f[x] = sb.fixed.front();
    for (Value x : sa.positives) f[x] = bneg[f[aneg[x]]];
    out.push_back(f);
  };
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k,
                                                          std::size_t from) {
    if (k == sa.negatives.size()) {
      extend();
      return;
    }
    for (std::size_t c = from; c < codomain.size(); ++c) {
      f[sa.negatives[k]] = codomain[c];
      rec(k + 1, c);
    }
  };
  f[0] = 0;
  rec(1, 0);
  return out;
}

CompatibilityReport is_compatible(const Algebra& a, const std::vector<Value>& f) {
  const int n = a.size();
  if (static_cast<int>(f.size()) != n) {
    throw StructuralError("value map is not total on the source chain");
  }
  CompatibilityReport r;
  for (Value p = 0; p < n; ++p) {
    for (Value q = 0; q < n; ++q) {
      if (f[p] != f[q]) continue;
      for (Value s = 0; s < n; ++s) {
        for (Value t = 0; t < n; ++t) {
          if (f[s] != f[t]) continue;
          if (f[a.conj(p, s)] != f[a.conj(q, t)]) {
            r.witness = {p, q, s, t};
            return r;
          }
        }
      }
    }
  }
  return r;
}

Quotient quotient(const Algebra& a, const std::vector<Value>& f) {
  const int n = a.size();
  if (static_cast<int>(f.size()) != n) {
    throw StructuralError("value map is not total on the source chain");
  }
  for (Value x = 0; x + 1 < n; ++x) {
    if (f[x] > f[x + 1]) {
      throw StructuralError("value map is not order-preserving at " +
                            a.chain().label(x));
    }
  }
  auto compat = is_compatible(a, f);
  if (!compat.ok()) {
    const auto& w = *compat.witness;
    const auto& c = a.chain();
    throw AxiomError("map is not compatible with T: T(" + c.label(w[0]) + "," +
                     c.label(w[2]) + ") vs T(" + c.label(w[1]) + "," +
                     c.label(w[3]) + ")");
  }

  // Classes in order of f value; contiguous because f is monotone.
  std::vector<Value> projection(n);
  std::vector<std::vector<Value>> members;
  for (Value x = 0; x < n; ++x) {
    if (x > 0 && f[x] == f[x - 1]) {
      members.back().push_back(x);
    } else {
      members.push_back({x});
    }
    projection[x] = static_cast<Value>(members.size()) - 1;
  }
  const int k = static_cast<int>(members.size());
  if (k < 2) throw AxiomError("map collapses 0 and 1");

  for (Value x = 0; x < n; ++x) {
    if (projection[a.neg(x)] != k - 1 - projection[x]) {
      throw AxiomError("classes do not respect negation at " + a.chain().label(x));
    }
  }

  std::vector<std::string> labels;
  for (const auto& cls : members) {
    std::string l;
    for (std::size_t i = 0; i < cls.size(); ++i) {
      l += (i ? "~" : "") + a.chain().label(cls[i]);
    }
    labels.push_back(std::move(l));
  }
  ConjTable t(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      t.set(i, j, projection[a.conj(members[i].front(), members[j].front())]);
    }
  }
  return {Algebra(Chain(std::move(labels)), std::move(t)), std::move(projection)};
}

bool is_monomorphism(const Embedding& e) {
  const int k = e.sub.size();
  if (static_cast<int>(e.map.size()) != k) return false;
  for (Value x = 0; x < k; ++x) {
    if (!e.sup.chain().contains(e.map[x])) return false;
    if (x > 0 && e.map[x - 1] >= e.map[x]) return false;
  }
  if (e.map[0] != 0 || e.map[k - 1] != e.sup.top()) return false;
  for (Value x = 0; x < k; ++x) {
    if (e.map[e.sub.neg(x)] != e.sup.neg(e.map[x])) return false;
    for (Value y = 0; y < k; ++y) {
      if (e.map[e.sub.conj(x, y)] != e.sup.conj(e.map[x], e.map[y])) return false;
    }
  }
  return true;
}

ConjTable extend_conj(const Algebra& sub, const Chain& sup_chain,
                      const std::vector<Value>& embed) {
  const int k = sub.size();
  const int m = sup_chain.size();
  if (static_cast<int>(embed.size()) != k) {
    throw StructuralError("embedding is not total on the subalgebra");
  }
  for (Value x = 0; x < k; ++x) {
    if (!sup_chain.contains(embed[x])) {
      throw StructuralError("embedding leaves the target chain");
    }
    if (x > 0 && embed[x - 1] >= embed[x]) {
      throw StructuralError("embedding is not injective and order-preserving");
    }
  }
  if (embed[0] != 0 || embed[k - 1] != m - 1) {
    throw StructuralError("embedding must send 0 to 0 and 1 to 1");
  }
  const auto sup_neg = negation(sup_chain);
  for (Value x = 0; x < k; ++x) {
    if (sup_neg[embed[x]] != embed[sub.neg(x)]) {
      throw AxiomError("negation of the " + std::to_string(m) +
                       "-chain does not restrict to the subalgebra's negation at " +
                       sub.chain().label(x) +
                       (k % 2 != m % 2 ? " (chain length parity differs)" : ""));
    }
  }

  // below[p] = largest sub value whose image is <= p.
  std::vector<Value> below(m, 0);
  for (Value p = 0, x = 0; p < m; ++p) {
    while (x + 1 < k && embed[x + 1] <= p) ++x;
    below[p] = x;
  }
  ConjTable t(m);
  const Value top = m - 1;
  for (Value p = 0; p < m; ++p) {
    for (Value q = 0; q < m; ++q) {
      if (q == top) {
        t.set(p, q, p);
      } else if (p == top) {
        t.set(p, q, q);
      } else {
        t.set(p, q, embed[sub.conj(below[p], below[q])]);
      }
    }
  }
  return t;
}

namespace {

Embedding induced(const Algebra& a, const std::vector<Value>& members) {
  const int k = static_cast<int>(members.size());
  std::map<Value, Value> pos;
  std::vector<std::string> labels;
  for (int i = 0; i < k; ++i) {
    pos[members[i]] = i;
    labels.push_back(a.chain().label(members[i]));
  }
  ConjTable t(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      t.set(i, j, pos.at(a.conj(members[i], members[j])));
    }
  }
  return {Algebra(Chain(std::move(labels)), std::move(t)), a, members};
}

}  // namespace

std::vector<Embedding> subalgebras(const Algebra& a) {
  const int n = a.size();
  const int inner = n - 2;
  std::vector<std::vector<Value>> subsets;
  for (unsigned mask = 0; mask < (1u << inner); ++mask) {
    std::vector<bool> in(n, false);
    in[0] = in[n - 1] = true;
    for (int i = 0; i < inner; ++i) {
      if (mask & (1u << i)) in[i + 1] = true;
    }
    bool closed = true;
    for (Value x = 0; x < n && closed; ++x) {
      if (!in[x]) continue;
      if (!in[a.neg(x)]) closed = false;
      for (Value y = 0; y < n && closed; ++y) {
        if (in[y] && !in[a.conj(x, y)]) closed = false;
      }
    }
    if (!closed) continue;
    std::vector<Value> members;
    for (Value x = 0; x < n; ++x) {
      if (in[x]) members.push_back(x);
    }
    subsets.push_back(std::move(members));
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& l, const auto& r) {
    if (l.size() != r.size()) return l.size() > r.size();
    return l < r;
  });
  std::vector<Embedding> out;
  out.reserve(subsets.size());
  for (const auto& s : subsets) out.push_back(induced(a, s));
  return out;
}

std::vector<CommonSubalgebra> common_subalgebras(const Algebra& a, const Algebra& b) {
  const auto subs_a = subalgebras(a);
  const auto subs_b = subalgebras(b);
  std::vector<CommonSubalgebra> out;
  for (const auto& ea : subs_a) {
    for (const auto& eb : subs_b) {
      // Chains are isomorphic exactly when they have the same length, and the
      // isomorphism is the index map; the algebras then agree iff tables do.
      if (ea.sub.table() != eb.sub.table()) continue;
      Algebra common(Chain::standard(ea.sub.size(), "c"), ea.sub.table());
      out.push_back({Embedding{common, a, ea.map}, Embedding{common, b, eb.map}});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
    return l.size() > r.size();
  });
  return out;
}

Renaming quasi_from_common(const Algebra& a, const Algebra& b,
                           const Embedding& h1, const Embedding& h2) {
  if (h1.sub.table() != h2.sub.table() || h1.sub.size() != h2.sub.size()) {
    throw StructuralError("h1 and h2 must embed the same algebra");
  }
  if (!(h1.sup == a) || !(h2.sup == b)) {
    throw StructuralError("h1 must embed into the source and h2 into the target");
  }
  if (!is_monomorphism(h1) || !is_monomorphism(h2)) {
    throw StructuralError("h1 and h2 must be monomorphisms");
  }
  const int k = h1.sub.size();
  Renaming f;
  f.image.resize(a.size());
  for (Value x = 0; x < a.size(); ++x) {
    Value below = 0;
    Value above = k - 1;
    for (Value c = 0; c < k; ++c) {
      if (h1.map[c] <= x) below = c;
    }
    for (Value c = k - 1; c >= 0; --c) {
      if (h1.map[c] >= x) above = c;
    }
    f.image[x] = {h2.map[below], h2.map[above]};
  }
  return f;
}

}  // namespace mvl
