#pragma once

// Brute-force reference implementations, written directly from the
// definitions and sharing no code with the library. Tables are plain
// row-major matrices of chain indices, intervals are (lo, hi) pairs.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

using Table = std::vector<std::vector<int>>;
using Iv = std::pair<int, int>;
using Map = std::vector<Iv>;

int neg(int n, int x);

/// T1-T5 checked by scanning every tuple.
bool is_conjunction(const Table& t);

/// Every conjunction on an n-chain by product enumeration of the interior
/// upper triangle (boundary rows forced by T3 and T5, symmetry by T1),
/// filtered with is_conjunction. Sorted by row-major cells.
std::vector<Table> all_conjunctions(int n);

int residuum(const Table& t, int a, int b);
/// {c : I(a,c) = b} by scanning c.
std::vector<int> mp_set(const Table& t, int a, int b);

/// All [lo, hi] with lo <= hi, ordered by (lo, hi).
std::vector<Iv> intervals(int n);
/// Cover pairs of x <= y iff hi(x) <= lo(y), x != y, as positions in
/// intervals(n), computed from the transitive closure.
std::set<std::pair<int, int>> hasse(int n);

Iv neg_star(int m, Iv x);
Iv conj_star(const Table& t, Iv a, Iv b);

/// Conditions 1-4 by direct scan (containment reading of 4).
bool is_quasi_morphism(const Table& a, const Table& b, const Map& f);
/// Every quasi-morphism by enumerating all interval maps with f(0) = 0 and
/// f(1) = 1.
std::vector<Map> all_quasi_morphisms(const Table& a, const Table& b);
/// Every point map that is order-preserving, sends 0 to 0 and preserves N and T.
std::vector<std::vector<int>> all_morphisms(const Table& a, const Table& b);

/// Subsets (bitmask) containing 0 and top closed under N and T.
std::vector<std::uint32_t> subalgebra_masks(const Table& t);

// Entailment ----------------------------------------------------------------

/// Literal: atom * 2 + (negated ? 1 : 0).
struct Formula {
  std::vector<int> body;  // sorted literals
  int head = -1;          // -1 for non-rules
  bool operator<(const Formula& o) const {
    return std::tie(body, head) < std::tie(o.body, o.head);
  }
  bool operator==(const Formula& o) const { return body == o.body && head == o.head; }
};

struct Sentence {
  Formula f;
  Iv w;
};

/// Truth value of a formula under a valuation (atom -> value).
int evaluate(const Table& t, const Formula& f, const std::vector<int>& v);
/// Gamma |= s over all valuations of `atoms` atoms.
bool semantically_entails(const Table& t, int atoms, const std::vector<Sentence>& gamma,
                          const Sentence& s);

/// Naive saturation with RI-2, RI-3 (arity <= bound) and modus ponens
/// (T* if !exact, else the hull of exact solution sets) over every derived
/// pair, until no new (formula, weight) appears. Returns the subset-minimal
/// weights per formula.
std::map<Formula, std::set<Iv>> naive_closure(const Table& t, const std::vector<Sentence>& gamma,
                                              int arity_bound, bool exact);

}  // namespace oracle
