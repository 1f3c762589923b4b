#include "mvl/generator.hpp"

#include <algorithm>
#include <cstdlib>
#include <tuple>

#include "mvl/errors.hpp"
#include "mvl/interval_algebra.hpp"

namespace mvl {

std::vector<Renaming> negation_renamings(const Chain& a, const Chain& b) {
  const SignPartition part = sign_partition(a);
  const SignClasses classes = sign_classes(b);
  const auto neg_b = negation(b);
  const auto neg_a = negation(a);

  // Domain in chain order: negatives then the fixed value (if any).
  std::vector<Value> domain = part.negatives;
  domain.insert(domain.end(), part.fixed.begin(), part.fixed.end());
  std::vector<Interval> lower = classes.negative;
  lower.insert(lower.end(), classes.fixed.begin(), classes.fixed.end());
  std::sort(lower.begin(), lower.end());
  auto is_fixed = [&](const Interval& j) { return j == Interval{neg_b[j.hi], neg_b[j.lo]}; };

  std::vector<Renaming> out;
  std::vector<Interval> f1(domain.size());
  f1[0] = Interval::point(0);
  auto emit = [&] {
    Renaming r;
    r.image.resize(a.size());
    for (std::size_t k = 0; k < domain.size(); ++k) r.image[domain[k]] = f1[k];
    for (Value x : part.positives) {
      const Interval& j = r.image[neg_a[x]];
      r.image[x] = {neg_b[j.hi], neg_b[j.lo]};
    }
    out.push_back(std::move(r));
  };
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == domain.size()) {
      emit();
      return;
    }
    const bool fixed_slot = neg_a[domain[k]] == domain[k];
    for (const Interval& j : lower) {
      if (j.lo < f1[k - 1].lo || j.hi < f1[k - 1].hi) continue;
      if (fixed_slot && !is_fixed(j)) continue;
      f1[k] = j;
      self(self, k + 1);
    }
  };
  rec(rec, 1);
  return out;
}

std::vector<Candidate> gen_renamings(const Algebra& a, const Algebra& b,
                                     const std::optional<Renaming>& initial) {
  std::vector<Candidate> out;
  for (auto& r : negation_renamings(a.chain(), b.chain())) {
    if (passes_quasi_morphism(a, b, r)) out.push_back({0, std::move(r), std::nullopt, {}});
  }
  rank(out, initial, std::nullopt);
  return out;
}

std::vector<Candidate> gen_tables(const Algebra& a, const Chain& b_chain, const Renaming& f,
                                  const std::optional<ConjTable>& initial_table, int cap) {
  std::vector<Candidate> out;
  if (!is_negation_morphism(a.chain(), b_chain, f)) return out;
  for_each_conj(
      b_chain,
      [&](const ConjTable& t) {
        if (passes_quasi_morphism(a, Algebra(b_chain, t), f)) out.push_back({0, f, t, {}});
        return true;
      },
      cap);
  rank(out, f, initial_table);
  return out;
}

std::vector<Candidate> gen_both(const Algebra& a, const Chain& b_chain,
                                const std::optional<Renaming>& initial,
                                const std::optional<ConjTable>& initial_table, int cap) {
  std::vector<Algebra> targets;
  for (auto& t : enumerate_conj(b_chain, cap)) targets.emplace_back(b_chain, std::move(t));
  std::vector<Candidate> out;
  for (const auto& r : negation_renamings(a.chain(), b_chain)) {
    for (const auto& b : targets) {
      if (passes_quasi_morphism(a, b, r)) out.push_back({0, r, b.table(), {}});
    }
  }
  rank(out, initial, initial_table);
  return out;
}

void rank(std::vector<Candidate>& candidates, const std::optional<Renaming>& initial,
          const std::optional<ConjTable>& initial_table) {
  for (auto& c : candidates) {
    CandidateMetrics m;
    m.morphism = c.renaming.all_points();
    for (const auto& j : c.renaming.image) m.imprecision += j.width();
    if (initial && initial->size() == c.renaming.size()) {
      for (int x = 0; x < c.renaming.size(); ++x) {
        const Interval& j = c.renaming(x);
        const Interval& j0 = (*initial)(x);
        m.displacement += std::abs((j.lo + j.hi) - (j0.lo + j0.hi));
      }
    }
    if (initial_table && c.table && initial_table->size() == c.table->size()) {
      const auto& u = c.table->cells();
      const auto& v = initial_table->cells();
      for (std::size_t k = 0; k < u.size(); ++k) m.table_distance += u[k] != v[k];
    }
    c.metrics = m;
  }
  auto key = [](const Candidate& c) {
    return std::tie(c.metrics.imprecision, c.metrics.displacement, c.metrics.table_distance,
                    c.renaming, c.table);
  };
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](const Candidate& x, const Candidate& y) {
                     if (x.metrics.morphism != y.metrics.morphism) return x.metrics.morphism;
                     return key(x) < key(y);
                   });
  for (std::size_t k = 0; k < candidates.size(); ++k) candidates[k].id = static_cast<int>(k);
}

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::kCheck: return "Check";
    case Phase::kSelectRenaming: return "SelectRenaming";
    case Phase::kSelectTable: return "SelectTable";
    case Phase::kSelectBoth: return "SelectBoth";
    case Phase::kDone: return "Done";
    case Phase::kFailed: return "Failed";
  }
  return "?";
}

namespace {

void check_renaming_shape(const Algebra& a, const Chain& b_chain, const Renaming& f) {
  if (f.size() != a.size()) {
    throw StructuralError("renaming has " + std::to_string(f.size()) + " images for a " +
                              std::to_string(a.size()) + "-element chain",
                          "/image");
  }
  for (int x = 0; x < f.size(); ++x) {
    if (!f(x).valid() || f(x).hi >= b_chain.size()) {
      throw StructuralError("image " + to_string(f(x)) + " is not an interval of the target",
                            "/image/" + a.chain().label(x));
    }
  }
}

}  // namespace

Session Session::start(SessionInputs inputs, int cap) {
  check_renaming_shape(inputs.a, inputs.b_chain, inputs.f);
  Session s(std::move(inputs), cap);
  const auto& in = s.inputs_;
  if (in.b_table) {
    Algebra b(in.b_chain, *in.b_table);
    if (is_quasi_morphism(in.a, b, in.f).ok()) {
      s.result_ = SessionResult{in.a, std::move(b), in.f, "check"};
      s.phase_ = Phase::kDone;
      return s;
    }
    s.enter(Phase::kSelectRenaming);
  } else {
    s.enter(Phase::kSelectTable);
  }
  return s;
}

void Session::enter(Phase p) {
  phase_ = p;
  candidates_.clear();
  const auto& in = inputs_;
  switch (p) {
    case Phase::kSelectRenaming:
      candidates_ = gen_renamings(in.a, Algebra(in.b_chain, *in.b_table), in.f);
      break;
    case Phase::kSelectTable:
      candidates_ = gen_tables(in.a, in.b_chain, in.f, in.b_table, cap_);
      break;
    case Phase::kSelectBoth:
      candidates_ = gen_both(in.a, in.b_chain, in.f, in.b_table, cap_);
      break;
    default:
      break;
  }
}

void Session::select(std::optional<int> candidate_id) {
  if (finished()) {
    throw TransitionError("session is " + std::string(phase_name(phase_)) +
                          "; no further selections");
  }
  if (!candidate_id) {
    history_.emplace_back(phase_, std::nullopt);
    switch (phase_) {
      case Phase::kSelectRenaming: enter(Phase::kSelectTable); break;
      case Phase::kSelectTable: enter(Phase::kSelectBoth); break;
      default: enter(Phase::kFailed); break;
    }
    return;
  }
  auto it = std::find_if(candidates_.begin(), candidates_.end(),
                         [&](const Candidate& c) { return c.id == *candidate_id; });
  if (it == candidates_.end()) {
    throw UnknownCandidate("candidate " + std::to_string(*candidate_id) + " is not offered in " +
                           std::string(phase_name(phase_)));
  }
  const ConjTable& table = it->table ? *it->table : *inputs_.b_table;
  Algebra b(inputs_.b_chain, table);
  if (!is_quasi_morphism(inputs_.a, b, it->renaming).ok()) {
    throw AxiomError("candidate " + std::to_string(it->id) + " failed the quasi-morphism recheck");
  }
  static constexpr std::string_view kOrigin[] = {"check", "renaming", "table", "both"};
  history_.emplace_back(phase_, candidate_id);
  result_ = SessionResult{inputs_.a, std::move(b), it->renaming,
                          std::string(kOrigin[static_cast<int>(phase_)])};
  phase_ = Phase::kDone;
  candidates_.clear();
}

std::vector<Phase> Session::declined() const {
  std::vector<Phase> out;
  for (const auto& [p, choice] : history_) {
    if (!choice) out.push_back(p);
  }
  return out;
}

Session Session::replay(SessionInputs inputs, const std::vector<std::optional<int>>& choices,
                        int cap) {
  Session s = start(std::move(inputs), cap);
  for (const auto& c : choices) s.select(c);
  return s;
}

}  // namespace mvl
