#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvl/interval.hpp"

namespace mvl {

/// Default upper bound on chain length for exhaustive table enumeration.
inline constexpr int kDefaultEnumerationCap = 9;

/// Finite chain of truth-value labels: index 0 is false, size()-1 is true.
/// Labels are presentation only; every operation works on indices.
class Chain {
 public:
  explicit Chain(std::vector<std::string> labels);

  /// "0", "a1", ..., "a{n-2}", "1" (prefix configurable).
  static Chain standard(int n, std::string_view prefix = "a");

  int size() const { return static_cast<int>(labels_.size()); }
  Value top() const { return size() - 1; }
  bool contains(Value v) const { return 0 <= v && v < size(); }

  const std::string& label(Value v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Value> find(std::string_view label) const;

  friend bool operator==(const Chain&, const Chain&) = default;

 private:
  std::vector<std::string> labels_;
};

/// Square table of chain indices; entry (i, j) is T(a_i, a_j).
class ConjTable {
 public:
  explicit ConjTable(int n = 0) : n_(n), cells_(n * n, 0) {}

  /// Throws StructuralError when rows are not square.
  static ConjTable from_rows(const std::vector<std::vector<Value>>& rows);
  static ConjTable minimum(int n);

  int size() const { return n_; }
  Value operator()(Value a, Value b) const { return cells_[a * n_ + b]; }
  void set(Value a, Value b, Value v) { cells_[a * n_ + b] = v; }
  /// Sets (a, b) and (b, a).
  void set_symmetric(Value a, Value b, Value v) {
    set(a, b, v);
    set(b, a, v);
  }

  std::vector<std::vector<Value>> rows() const;
  const std::vector<Value>& cells() const { return cells_; }

  friend auto operator<=>(const ConjTable&, const ConjTable&) = default;

 private:
  int n_;
  std::vector<Value> cells_;
};

struct AxiomViolation {
  std::string axiom;  // "T1" .. "T5"
  std::vector<Value> witness;

  friend bool operator==(const AxiomViolation&, const AxiomViolation&) = default;
};

/// One entry per violated axiom, carrying the first witness found by a
/// lexicographic scan.
struct ValidationReport {
  std::vector<AxiomViolation> violations;

  bool ok() const { return violations.empty(); }
  const AxiomViolation* find(std::string_view axiom) const;
};

/// Exhaustive check of T1-T5. Throws StructuralError on a dimension mismatch
/// or out-of-range entry.
ValidationReport validate_conj(const Chain& chain, const ConjTable& table);

/// The unique involutive order-reversing map: N(a_i) = a_{n-i-1}.
std::vector<Value> negation(const Chain& chain);

/// Negative / fixed / positive elements relative to the chain negation.
struct SignPartition {
  std::vector<Value> negatives;
  std::vector<Value> fixed;
  std::vector<Value> positives;
};

SignPartition sign_partition(const Chain& chain);

/// Immutable truth-value algebra: a chain with a validated conjunction, and
/// the derived negation, residuated implication and De Morgan disjunction.
class Algebra {
 public:
  /// Throws StructuralError (bad shape) or AxiomError (T1-T5 violated).
  Algebra(Chain chain, ConjTable table);

  const Chain& chain() const { return chain_; }
  const ConjTable& table() const { return table_; }
  int size() const { return chain_.size(); }
  Value top() const { return chain_.top(); }

  Value neg(Value a) const { return neg_[a]; }
  Value conj(Value a, Value b) const { return table_(a, b); }
  Value impl(Value a, Value b) const { return impl_[a * size() + b]; }
  Value disj(Value a, Value b) const { return neg(conj(neg(a), neg(b))); }

  const std::vector<Value>& negation_table() const { return neg_; }

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.chain_ == b.chain_ && a.table_ == b.table_;
  }

 private:
  Chain chain_;
  ConjTable table_;
  std::vector<Value> neg_;
  std::vector<Value> impl_;
};

/// min-conjunction algebra on the standard n-chain.
Algebra min_algebra(int n, std::string_view prefix = "a");

/// I(a,b) = max{c : T(a,c) <= b}.
Value residuum(const Algebra& alg, Value a, Value b);

/// Modus ponens interval as stated for RI-4: empty when no c has I(a,c) = b,
/// [a,1] when b = 1, otherwise the point T(a,b).
std::optional<Interval> mp_interval(const Algebra& alg, Value a, Value b);

/// The exact set {c : I(a,c) = b}. I(a,.) is monotone, so the set is an
/// interval (or empty). Agrees with mp_interval except where I(a,.) is flat
/// over several c, e.g. nilpotent-minimum style tables.
std::optional<Interval> mp_solutions(const Algebra& alg, Value a, Value b);

/// S(a,b) = N(T(N(a), N(b))).
Value disjunction(const Algebra& alg, Value a, Value b);

/// Streams every conjunction table on the chain exactly once, in lexicographic
/// order of the upper-triangular free entries. The visitor returns false to
/// stop early. Throws CapExceeded when chain.size() > cap.
void for_each_conj(const Chain& chain,
                   const std::function<bool(const ConjTable&)>& visit,
                   int cap = kDefaultEnumerationCap);

std::vector<ConjTable> enumerate_conj(const Chain& chain,
                                      int cap = kDefaultEnumerationCap);

/// Every algebra on the standard n-chain.
std::vector<Algebra> enumerate_algebras(int n, std::string_view prefix = "a",
                                        int cap = kDefaultEnumerationCap);

}  // namespace mvl
