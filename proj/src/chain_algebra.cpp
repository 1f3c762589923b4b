#include "mvl/chain_algebra.hpp"

#include <set>
#include <sstream>

#include "mvl/errors.hpp"

namespace mvl {

Chain::Chain(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() < 2) {
    throw StructuralError("a chain needs at least two values");
  }
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) {
      throw StructuralError("duplicate chain label '" + l + "'");
    }
  }
}

Chain Chain::standard(int n, std::string_view prefix) {
  if (n < 2) throw StructuralError("a chain needs at least two values");
  std::vector<std::string> labels;
  labels.reserve(n);
  labels.emplace_back("0");
  for (int i = 1; i < n - 1; ++i) {
    labels.push_back(std::string(prefix) + std::to_string(i));
  }
  labels.emplace_back("1");
  return Chain(std::move(labels));
}

std::optional<Value> Chain::find(std::string_view label) const {
  for (int i = 0; i < size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

ConjTable ConjTable::from_rows(const std::vector<std::vector<Value>>& rows) {
  const int n = static_cast<int>(rows.size());
  ConjTable t(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw StructuralError("conjunction table is not square: row " +
                            std::to_string(i) + " has " +
                            std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(n));
    }
    for (int j = 0; j < n; ++j) t.set(i, j, rows[i][j]);
  }
  return t;
}

ConjTable ConjTable::minimum(int n) {
  ConjTable t(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) t.set(i, j, std::min(i, j));
  }
  return t;
}

std::vector<std::vector<Value>> ConjTable::rows() const {
  std::vector<std::vector<Value>> out(n_, std::vector<Value>(n_));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  }
  return out;
}

const AxiomViolation* ValidationReport::find(std::string_view axiom) const {
  for (const auto& v : violations) {
    if (v.axiom == axiom) return &v;
  }
  return nullptr;
}

ValidationReport validate_conj(const Chain& chain, const ConjTable& t) {
  const int n = chain.size();
  if (t.size() != n) {
    throw StructuralError("conjunction table is " + std::to_string(t.size()) +
                          "x" + std::to_string(t.size()) + " but the chain has " +
                          std::to_string(n) + " values");
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (!chain.contains(t(a, b))) {
        throw StructuralError("table entry (" + std::to_string(a) + "," +
                              std::to_string(b) + ") = " +
                              std::to_string(t(a, b)) + " is out of range");
      }
    }
  }

  ValidationReport report;
  auto scan_pairs = [&](const char* axiom, auto&& broken) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (broken(a, b)) {
          report.violations.push_back({axiom, {a, b}});
          return;
        }
      }
    }
  };
  auto scan_triples = [&](const char* axiom, auto&& broken) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) {
          if (broken(a, b, c)) {
            report.violations.push_back({axiom, {a, b, c}});
            return;
          }
        }
      }
    }
  };

  scan_pairs("T1", [&](int a, int b) { return t(a, b) != t(b, a); });
  scan_triples("T2", [&](int a, int b, int c) {
    return t(a, t(b, c)) != t(t(a, b), c);
  });
  for (int a = 0; a < n; ++a) {
    if (t(0, a) != 0) {
      report.violations.push_back({"T3", {a}});
      break;
    }
  }
  for (int a = 0; a < n; ++a) {
    if (t(n - 1, a) != a) {
      report.violations.push_back({"T4", {a}});
      break;
    }
  }
  scan_triples("T5", [&](int a, int b, int c) {
    return a <= b && t(a, c) > t(b, c);
  });
  return report;
}

std::vector<Value> negation(const Chain& chain) {
  const int n = chain.size();
  std::vector<Value> out(n);
  for (int i = 0; i < n; ++i) out[i] = n - i - 1;
  return out;
}

SignPartition sign_partition(const Chain& chain) {
  const auto neg = negation(chain);
  SignPartition p;
  for (Value x = 0; x < chain.size(); ++x) {
    if (x < neg[x]) {
      p.negatives.push_back(x);
    } else if (x == neg[x]) {
      p.fixed.push_back(x);
    } else {
      p.positives.push_back(x);
    }
  }
  return p;
}

Algebra::Algebra(Chain chain, ConjTable table)
    : chain_(std::move(chain)), table_(std::move(table)) {
  auto report = validate_conj(chain_, table_);
  if (!report.ok()) {
    std::ostringstream msg;
    msg << "conjunction violates";
    for (const auto& v : report.violations) {
      msg << ' ' << v.axiom << " at (";
      for (std::size_t i = 0; i < v.witness.size(); ++i) {
        msg << (i ? "," : "") << chain_.label(v.witness[i]);
      }
      msg << ')';
    }
    throw AxiomError(msg.str());
  }
  const int n = size();
  neg_ = negation(chain_);
  impl_.resize(n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Value best = 0;
      for (int c = 0; c < n; ++c) {
        if (table_(a, c) <= b) best = c;
      }
      impl_[a * n + b] = best;
    }
  }
}

Algebra min_algebra(int n, std::string_view prefix) {
  return Algebra(Chain::standard(n, prefix), ConjTable::minimum(n));
}

Value residuum(const Algebra& alg, Value a, Value b) { return alg.impl(a, b); }

std::optional<Interval> mp_interval(const Algebra& alg, Value a, Value b) {
  bool consistent = false;
  for (Value c = 0; c < alg.size(); ++c) {
    if (alg.impl(a, c) == b) {
      consistent = true;
      break;
    }
  }
  if (!consistent) return std::nullopt;
  if (b == alg.top()) return Interval{a, alg.top()};
  return Interval::point(alg.conj(a, b));
}

std::optional<Interval> mp_solutions(const Algebra& alg, Value a, Value b) {
  std::optional<Interval> out;
  for (Value c = 0; c < alg.size(); ++c) {
    if (alg.impl(a, c) != b) continue;
    if (out) {
      out->hi = c;
    } else {
      out = Interval::point(c);
    }
  }
  return out;
}

Value disjunction(const Algebra& alg, Value a, Value b) { return alg.disj(a, b); }

namespace {

// Backtracking over the upper-triangular free entries (1 <= i <= j <= n-2) in
// row-major order. Rows/columns 0 and n-1 are fixed by T3/T4, the lower
// triangle mirrors the upper. Monotonicity bounds each entry from below by its
// left and upper neighbours and from above by min(i, j). Associativity is
// checked on every fully-determined triple each time a row completes.
class ConjEnumerator {
 public:
  ConjEnumerator(int n, const std::function<bool(const ConjTable&)>& visit)
      : n_(n), visit_(visit), cells_(n * n, kUnset) {
    for (int a = 0; a < n; ++a) {
      put(0, a, 0);
      put(n - 1, a, a);
    }
    for (int i = 1; i < n - 1; ++i) {
      for (int j = i; j < n - 1; ++j) free_.emplace_back(i, j);
    }
  }

  void run() {
    if (free_.empty()) {
      emit();
      return;
    }
    recurse(0);
  }

 private:
  static constexpr Value kUnset = -1;

  Value at(int a, int b) const { return cells_[a * n_ + b]; }
  void put(int a, int b, Value v) {
    cells_[a * n_ + b] = v;
    cells_[b * n_ + a] = v;
  }

  bool associative_so_far() const {
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b) {
        const Value ab = at(a, b);
        if (ab == kUnset) continue;
        for (int c = 0; c < n_; ++c) {
          const Value bc = at(b, c);
          if (bc == kUnset) continue;
          const Value left = at(a, bc);
          const Value right = at(ab, c);
          if (left != kUnset && right != kUnset && left != right) return false;
        }
      }
    }
    return true;
  }

  // Returns false once the visitor asked to stop.
  bool recurse(std::size_t k) {
    if (k == free_.size()) return emit();
    const auto [i, j] = free_[k];
    const Value lo = std::max(at(i - 1, j), at(i, j - 1));
    const Value hi = std::min(i, j);
    const bool row_end = (j == n_ - 2);
    for (Value v = lo; v <= hi; ++v) {
      put(i, j, v);
      if (row_end && !associative_so_far()) continue;
      if (!recurse(k + 1)) {
        put(i, j, kUnset);
        return false;
      }
    }
    put(i, j, kUnset);
    return true;
  }

  bool emit() {
    ConjTable t(n_);
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b) t.set(a, b, at(a, b));
    }
    return visit_(t);
  }

  int n_;
  const std::function<bool(const ConjTable&)>& visit_;
  std::vector<Value> cells_;
  std::vector<std::pair<int, int>> free_;
};

}  // namespace

void for_each_conj(const Chain& chain,
                   const std::function<bool(const ConjTable&)>& visit, int cap) {
  if (chain.size() > cap) {
    throw CapExceeded("enumerating conjunctions on a " +
                      std::to_string(chain.size()) +
                      "-element chain exceeds the cap of " + std::to_string(cap) +
                      "; the search is exponential in the chain length");
  }
  ConjEnumerator(chain.size(), visit).run();
}

std::vector<ConjTable> enumerate_conj(const Chain& chain, int cap) {
  std::vector<ConjTable> out;
  for_each_conj(chain, [&](const ConjTable& t) {
    out.push_back(t);
    return true;
  }, cap);
  return out;
}

std::vector<Algebra> enumerate_algebras(int n, std::string_view prefix, int cap) {
  Chain chain = Chain::standard(n, prefix);
  std::vector<Algebra> out;
  for (auto& t : enumerate_conj(chain, cap)) out.emplace_back(chain, std::move(t));
  return out;
}

}  // namespace mvl
