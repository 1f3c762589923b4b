#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvl/chain_algebra.hpp"
#include "mvl/morphism.hpp"

namespace mvl {

/// Ranking components, reported per candidate so a client can re-sort.
struct CandidateMetrics {
  bool morphism = false;
  /// Sum of image widths, hi - lo.
  int imprecision = 0;
  /// L1 distance of image midpoints from the initial renaming, in half steps
  /// (sum of |(lo+hi) - (lo0+hi0)|).
  int displacement = 0;
  /// Table cells differing from the initial table; 0 without one.
  int table_distance = 0;
};

struct Candidate {
  int id = 0;
  Renaming renaming;
  /// Present for table and pair candidates.
  std::optional<ConjTable> table;
  CandidateMetrics metrics;
};

/// Renamings built from an order-preserving f1 on the negative and fixed
/// values into negative/fixed target intervals, extended to the positives by
/// N'*(f1(N(x))). They commute with negation by construction; no conjunction
/// is involved.
std::vector<Renaming> negation_renamings(const Chain& a, const Chain& b);

/// Quasi-morphisms a -> b among negation_renamings, ranked.
std::vector<Candidate> gen_renamings(const Algebra& a, const Algebra& b,
                                     const std::optional<Renaming>& initial = {});

/// Conjunctions on b_chain under which f is a quasi-morphism, ranked. Empty
/// when f does not commute with negation.
std::vector<Candidate> gen_tables(const Algebra& a, const Chain& b_chain,
                                  const Renaming& f,
                                  const std::optional<ConjTable>& initial_table = {},
                                  int cap = kDefaultEnumerationCap);

/// (renaming, table) pairs forming a quasi-morphism, ranked.
std::vector<Candidate> gen_both(const Algebra& a, const Chain& b_chain,
                                const std::optional<Renaming>& initial = {},
                                const std::optional<ConjTable>& initial_table = {},
                                int cap = kDefaultEnumerationCap);

/// Fills metrics, sorts (morphisms first, then imprecision, displacement,
/// table distance, then lexicographically) and renumbers ids from 0.
void rank(std::vector<Candidate>& candidates, const std::optional<Renaming>& initial,
          const std::optional<ConjTable>& initial_table);

// ---------------------------------------------------------------------------
// Interactive session

enum class Phase { kCheck, kSelectRenaming, kSelectTable, kSelectBoth, kDone, kFailed };

std::string_view phase_name(Phase p);

/// The accepted triple. `origin` records which step produced it: "check",
/// "renaming", "table" or "both".
struct SessionResult {
  Algebra a;
  Algebra b;
  Renaming f;
  std::string origin;
};

struct SessionInputs {
  Algebra a;
  Chain b_chain;
  std::optional<ConjTable> b_table;
  Renaming f;
};

/// Selection attempted on a finished session, or in the wrong phase.
class TransitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Selection of an id the current phase never offered.
class UnknownCandidate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One expert's pass through check -> renamings -> tables -> both. Each
/// phase offers ranked candidates; selecting one finishes with that triple,
/// declining moves to the next phase, and declining the last yields no
/// result. Replaying the same selections reproduces the same session.
class Session {
 public:
  /// Throws StructuralError / AxiomError on malformed inputs. Without a target
  /// table the renaming check and renaming phase are skipped.
  static Session start(SessionInputs inputs, int cap = kDefaultEnumerationCap);

  /// nullopt declines the current phase. Throws TransitionError on a
  /// finished session and UnknownCandidate for an id not on offer.
  void select(std::optional<int> candidate_id);

  Phase phase() const { return phase_; }
  bool finished() const { return phase_ == Phase::kDone || phase_ == Phase::kFailed; }
  const SessionInputs& inputs() const { return inputs_; }
  const std::vector<Candidate>& candidates() const { return candidates_; }
  const std::optional<SessionResult>& result() const { return result_; }
  /// (phase, choice) per select call, in order.
  const std::vector<std::pair<Phase, std::optional<int>>>& history() const {
    return history_;
  }
  /// Phases that were offered and declined.
  std::vector<Phase> declined() const;

  static Session replay(SessionInputs inputs,
                        const std::vector<std::optional<int>>& choices,
                        int cap = kDefaultEnumerationCap);

 private:
  explicit Session(SessionInputs inputs, int cap) : inputs_(std::move(inputs)), cap_(cap) {}
  void enter(Phase p);

  SessionInputs inputs_;
  int cap_;
  Phase phase_ = Phase::kCheck;
  std::vector<Candidate> candidates_;
  std::optional<SessionResult> result_;
  std::vector<std::pair<Phase, std::optional<int>>> history_;
};

}  // namespace mvl
