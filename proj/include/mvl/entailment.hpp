#pragma once

#include <compare>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvl/chain_algebra.hpp"
#include "mvl/interval.hpp"

namespace mvl {

/// Atom index (into the module signature) with polarity. Double negation is
/// normalized away by construction.
struct Literal {
  int atom = 0;
  bool negated = false;

  Literal negate() const { return {atom, !negated}; }
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// One of the three sentence shapes:
///   p1 & ... & pn            (conjunction; n = 1 is a literal)
///   p1 & ... & pn -> q       (rule; q a plain atom)
/// The body is a sorted multiset, so reordering and regrouping of conjuncts
/// is identity.
struct Formula {
  std::vector<Literal> body;
  std::optional<int> head;

  static Formula literal(Literal l) { return {{l}, std::nullopt}; }
  static Formula conjunction(std::vector<Literal> lits);
  static Formula rule(std::vector<Literal> lits, int head);

  bool is_rule() const { return head.has_value(); }
  bool is_literal() const { return !head && body.size() == 1; }
  int arity() const { return static_cast<int>(body.size()); }
  /// The antecedent of a rule as a conjunction formula.
  Formula antecedent() const { return conjunction(body); }

  friend auto operator<=>(const Formula&, const Formula&) = default;
};

struct Sentence {
  Formula formula;
  Interval weight;

  friend auto operator<=>(const Sentence&, const Sentence&) = default;
};

/// A task-scoped rule base with its own truth-value algebra.
class KnowledgeModule {
 public:
  /// Throws StructuralError on undeclared atoms or weights off the chain.
  KnowledgeModule(Algebra algebra, std::vector<std::string> atoms,
                  std::vector<Sentence> sentences = {});

  const Algebra& algebra() const { return algebra_; }
  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::vector<Sentence>& sentences() const { return sentences_; }

  /// Throws StructuralError for an undeclared atom.
  int atom(std::string_view name) const;
  /// Throws StructuralError unless the sentence is over this module.
  void check(const Sentence& s) const;

  /// Same signature and algebra, different sentences.
  KnowledgeModule with_sentences(std::vector<Sentence> sentences) const {
    return KnowledgeModule(algebra_, atoms_, std::move(sentences));
  }

 private:
  Algebra algebra_;
  std::vector<std::string> atoms_;
  std::vector<Sentence> sentences_;
};

// ---------------------------------------------------------------------------
// Text syntax:  "p & !q -> r : [a1,1]"   or   "p : a2"
// Values are chain labels, or indices when no label matches.

Formula parse_formula(const KnowledgeModule& km, std::string_view text);
Sentence parse_sentence(const KnowledgeModule& km, std::string_view text);
std::string format_formula(const KnowledgeModule& km, const Formula& f);
std::string format_sentence(const KnowledgeModule& km, const Sentence& s);

// ---------------------------------------------------------------------------
// Semantics

using Valuation = std::vector<Value>;

Value evaluate(const Algebra& alg, const Formula& f, const Valuation& v);
bool satisfies(const Algebra& alg, const Valuation& v, const Sentence& s);

/// Default cap on the number of valuations the semantic oracle enumerates.
inline constexpr std::size_t kDefaultValuationCap = std::size_t{1} << 20;

/// True iff every valuation satisfying all sentences of km satisfies s.
/// Exhaustive over size^|atoms| valuations; throws CapExceeded beyond cap.
bool semantic_entails(const KnowledgeModule& km, const Sentence& s,
                      std::size_t cap = kDefaultValuationCap);

// ---------------------------------------------------------------------------
// Derivations

enum class Rule {
  kPremise,            // member of the module
  kWeakening,          // RI-1
  kNot,                // RI-2
  kAnd,                // RI-3
  kModusPonens,        // RI-4'  weight T*(V1, V2)
  kModusPonensExact,   // RI-4   weight hull of {c : I(a,c) = b}
};

std::string_view rule_tag(Rule r);
std::optional<Rule> rule_from_tag(std::string_view tag);

/// Which detachment rule the engine applies.
enum class MpMode { kModified, kExact };

struct Step {
  Rule rule = Rule::kPremise;
  std::vector<int> premises;  // indices of earlier steps
  Sentence conclusion;
};

/// Steps in topological order; the last step is the conclusion.
struct DerivationTrace {
  std::vector<Step> steps;

  const Sentence& conclusion() const { return steps.back().conclusion; }
  std::vector<int> leaves() const;
};

struct ClosureOptions {
  MpMode mp = MpMode::kModified;
  /// Largest conjunction built by RI-3. Default: max(2, largest arity in the
  /// module).
  std::optional<int> max_arity;
  std::size_t max_steps = 2'000'000;
};

/// Saturation of a module under RI-2, RI-3 and the chosen modus ponens.
/// For every formula it keeps the antichain of subset-minimal derived
/// weights; RI-1 is the subset test at query time.
class Closure {
 public:
  explicit Closure(const KnowledgeModule& km, ClosureOptions options = {});

  const KnowledgeModule& module() const { return km_; }
  int arity_bound() const { return arity_bound_; }
  MpMode mp_mode() const { return options_.mp; }

  const Step& step(int id) const { return steps_[id]; }
  std::size_t step_count() const { return steps_.size(); }

  /// Minimal step ids per formula.
  const std::map<Formula, std::vector<int>>& entries() const { return entries_; }
  std::vector<int> minimal_steps() const;

  /// A minimal step whose weight is inside s.weight, if any.
  std::optional<int> find_entailing(const Sentence& s) const;

  DerivationTrace trace(int id) const;

  /// Detachments whose exact modus ponens result was empty (the premises
  /// admit no model); pairs of (fact step, rule step).
  const std::vector<std::pair<int, int>>& contradictions() const {
    return contradictions_;
  }

 private:
  void add(Rule rule, std::vector<int> premises, Sentence s);
  void process(int id);
  void detach(int fact, int rule);

  KnowledgeModule km_;
  ClosureOptions options_;
  int arity_bound_ = 2;
  std::vector<Step> steps_;
  std::vector<bool> live_;
  std::map<Formula, std::vector<int>> entries_;
  std::deque<int> worklist_;
  std::vector<std::pair<int, int>> contradictions_;
};

/// Weight of a detachment step under the given mode; nullopt when exact
/// modus ponens finds no consistent value.
std::optional<Interval> detach_weight(const Algebra& alg, MpMode mode,
                                      const Interval& fact, const Interval& rule);

struct EntailmentResult {
  bool holds = false;
  std::optional<DerivationTrace> trace;
};

/// Derivability of s from km. The closure's arity bound is raised to the
/// query's arity when needed. A final RI-1 step is added when the derived
/// weight is strictly inside s.weight.
EntailmentResult entails(const KnowledgeModule& km, const Sentence& s,
                         ClosureOptions options = {});

/// Recomputes every step's weight from the leaves with `alg`'s operators.
/// `leaf_weights`, when given, replaces the leaf weights (indexed by step).
/// A RI-1 step passes its premise weight through. nullopt marks an empty
/// exact detachment, or a step fed by one.
std::vector<std::optional<Interval>> replay(
    const Algebra& alg, const DerivationTrace& trace,
    const std::map<int, Interval>& leaf_weights = {});

}  // namespace mvl
