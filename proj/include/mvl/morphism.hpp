#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mvl/chain_algebra.hpp"
#include "mvl/interval.hpp"

namespace mvl {

/// A candidate quasi-morphism: one target interval per source value.
struct Renaming {
  std::vector<Interval> image;

  static Renaming from_points(const std::vector<Value>& values);

  int size() const { return static_cast<int>(image.size()); }
  const Interval& operator()(Value x) const { return image[x]; }
  bool all_points() const;

  /// Hull extension to interval weights: [lo(f(V.lo)), hi(f(V.hi))].
  Interval extend(const Interval& v) const {
    return {image[v.lo].lo, image[v.hi].hi};
  }

  friend auto operator<=>(const Renaming&, const Renaming&) = default;
};

/// A quasi-morphism condition that failed, with the first witness found.
/// `expected` is what the condition requires f(...) to equal or sit inside.
struct ConditionViolation {
  int condition = 0;  // 1 monotone, 2 f(0)=0, 3 negation, 4 conjunction
  std::vector<Value> witness;
  Interval actual;
  Interval expected;
};

struct QuasiMorphismReport {
  std::vector<ConditionViolation> violations;
  /// Condition 4 under the componentwise "f(T(x,y)) <= T*(f(x),f(y))" reading.
  /// Diagnostic only; acceptance uses containment.
  bool leq_reading_holds = true;
  /// f(1) = 1, implied by conditions 2 and 3.
  bool top_preserved = true;

  bool ok() const { return violations.empty(); }
  const ConditionViolation* find(int condition) const;
};

/// Checks the four quasi-morphism conditions from `a` to `b`. Throws
/// StructuralError when f is not total on a's chain or leaves b's chain.
QuasiMorphismReport is_quasi_morphism(const Algebra& a, const Algebra& b,
                                      const Renaming& f);

/// Early-exit variant used inside generators.
bool passes_quasi_morphism(const Algebra& a, const Algebra& b, const Renaming& f);

/// Conditions 2 and 3 only; these do not depend on either conjunction.
bool is_negation_morphism(const Chain& a, const Chain& b, const Renaming& f);

bool is_morphism(const Algebra& a, const Algebra& b, const Renaming& f);

/// Every order-preserving value map from chain `a` to chain `b` that commutes
/// with negation and sends 0 to 0, built from its restriction to negatives.
/// Empty when a has odd and b even length.
std::vector<std::vector<Value>> negation_morphisms(const Chain& a, const Chain& b);

/// Witness (a, b, c, d) with f(a)=f(b), f(c)=f(d), f(T(a,c)) != f(T(b,d)).
struct CompatibilityReport {
  std::optional<std::array<Value, 4>> witness;
  bool ok() const { return !witness.has_value(); }
};

/// Exhaustive congruence check of a value map against the conjunction.
CompatibilityReport is_compatible(const Algebra& a, const std::vector<Value>& f);

struct Quotient {
  Algebra algebra;
  /// Source value -> class index in the quotient chain.
  std::vector<Value> projection;
};

/// Quotient by the kernel of a monotone, compatible, negation-respecting map.
/// Throws AxiomError with the witness when f is not a congruence.
Quotient quotient(const Algebra& a, const std::vector<Value>& f);

/// Monomorphism sub -> sup given by an injective value map.
struct Embedding {
  Algebra sub;
  Algebra sup;
  std::vector<Value> map;
};

/// True iff map is injective, order-preserving and preserves 0, N and T.
bool is_monomorphism(const Embedding& e);

/// Extends sub's conjunction to a chain containing it, so that `embed` becomes
/// a monomorphism. Throws StructuralError on a bad embedding and AxiomError
/// when the chain negation does not restrict to sub's negation.
ConjTable extend_conj(const Algebra& sub, const Chain& sup_chain,
                      const std::vector<Value>& embed);

/// All subsets containing 0 and 1 closed under N and T, largest first.
std::vector<Embedding> subalgebras(const Algebra& a);

struct CommonSubalgebra {
  Embedding into_a;
  Embedding into_b;
  int size() const { return into_a.sub.size(); }
};

/// Algebras embeddable in both, paired by isomorphism type, largest first.
/// Always contains the booleans.
std::vector<CommonSubalgebra> common_subalgebras(const Algebra& a, const Algebra& b);

/// f(x) = [h2(c_x^-), h2(c_x^+)] where c_x^- / c_x^+ bracket x through h1.
/// Throws StructuralError when h1/h2 are not monomorphisms of one algebra
/// into a and b respectively.
Renaming quasi_from_common(const Algebra& a, const Algebra& b,
                           const Embedding& h1, const Embedding& h2);

}  // namespace mvl
