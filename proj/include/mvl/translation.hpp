#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mvl/chain_algebra.hpp"
#include "mvl/entailment.hpp"
#include "mvl/morphism.hpp"

namespace mvl {

/// Translation H_f between the logics of two algebras: a sentence keeps its
/// formula and its weight is mapped through the renaming's hull extension.
class Bridge {
 public:
  /// Throws AxiomError unless f is a quasi-morphism from source to target.
  Bridge(Algebra source, Algebra target, Renaming f);

  /// Skips the quasi-morphism check; for harnesses probing broken renamings.
  static Bridge unchecked(Algebra source, Algebra target, Renaming f);

  const Algebra& source() const { return source_; }
  const Algebra& target() const { return target_; }
  const Renaming& renaming() const { return f_; }
  bool is_morphism() const { return mvl::is_morphism(source_, target_, f_); }

  /// Throws StructuralError when the interval is not over the source chain.
  Interval translate(const Interval& v) const;
  Sentence translate(const Sentence& s) const;
  /// Same signature over the target algebra with every sentence translated.
  KnowledgeModule translate(const KnowledgeModule& km) const;

 private:
  struct Unchecked {};
  Bridge(Algebra source, Algebra target, Renaming f, Unchecked);

  Algebra source_;
  Algebra target_;
  Renaming f_;
};

/// Re-executes a target derivation over the source algebra, starting from
/// the untranslated premises. Throws StructuralError when a leaf is not the
/// translation of some sentence of `gamma`.
Sentence replay_witness(const Bridge& bridge, const KnowledgeModule& gamma,
                        const DerivationTrace& target_trace);

/// Map property for one instance: gamma |- e implies H(gamma) |- H(e).
bool check_map(const Bridge& bridge, const KnowledgeModule& gamma, const Sentence& e,
               ClosureOptions options = {});

struct WeakConservativeResult {
  bool holds = false;
  Sentence witness;
  DerivationTrace target_trace;
};

/// For E' derivable from H(gamma), builds E by trace replay and verifies
/// gamma |- E and H(E) |- E'. Throws PreconditionError when E' is not
/// derivable.
WeakConservativeResult check_weak_conservative(const Bridge& bridge,
                                               const KnowledgeModule& gamma,
                                               const Sentence& e_prime,
                                               ClosureOptions options = {});

struct BridgeAudit {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// check_weak_conservative for every minimal sentence of the target closure
/// of H(gamma).
BridgeAudit audit_weak_conservative(const Bridge& bridge, const KnowledgeModule& gamma,
                                    ClosureOptions options = {});

/// check_map for every minimal sentence of the closure of gamma.
BridgeAudit audit_map(const Bridge& bridge, const KnowledgeModule& gamma,
                      ClosureOptions options = {});

struct MapCounterexample {
  KnowledgeModule gamma;
  Sentence e;
};

/// Searches two-premise instances around every pair where the renaming
/// breaks the negation or conjunction condition.
std::optional<MapCounterexample> find_map_counterexample(const Bridge& bridge);

}  // namespace mvl
