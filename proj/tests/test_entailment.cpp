#include <gtest/gtest.h>

#include <random>

#include "mvl/entailment.hpp"
#include "mvl/errors.hpp"
#include "mvl/sampling.hpp"
#include "support.hpp"

using namespace mvl;

namespace {

KnowledgeModule module(const Algebra& alg, std::vector<std::string> lines,
                       std::vector<std::string> atoms = {"p", "q", "r"}) {
  KnowledgeModule km(alg, std::move(atoms));
  std::vector<Sentence> s;
  for (const auto& l : lines) s.push_back(parse_sentence(km, l));
  return km.with_sentences(std::move(s));
}

// Minimal weights per formula from the engine, in the oracle's representation.
std::map<oracle::Formula, std::set<oracle::Iv>> engine_minimal(const Closure& c) {
  std::map<oracle::Formula, std::set<oracle::Iv>> out;
  for (int id : c.minimal_steps()) {
    const auto s = support::sentence(c.step(id).conclusion);
    out[s.f].insert(s.w);
  }
  return out;
}

std::vector<Algebra> small_algebras() { return support::algebras(2, 4); }

}  // namespace

TEST(Syntax, ParseAndFormatRoundTrip) {
  const auto km = module(min_algebra(4), {});
  const Sentence s = parse_sentence(km, "p & !q -> r : [a1,1]");
  EXPECT_EQ(s.formula.body, (std::vector<Literal>{{0, false}, {1, true}}));
  EXPECT_EQ(s.formula.head, 2);
  EXPECT_EQ(s.weight, (Interval{1, 3}));
  EXPECT_EQ(format_sentence(km, s), "p & !q -> r : [a1,1]");
  EXPECT_EQ(parse_sentence(km, format_sentence(km, s)), s);
}

TEST(Syntax, AlternativeSymbolsAndPointWeights) {
  const auto km = module(min_algebra(4), {});
  EXPECT_EQ(parse_sentence(km, "\xC2\xAC" "q \xE2\x86\x92 r : a2"),
            parse_sentence(km, "~q -> r : [a2,a2]"));
  EXPECT_EQ(parse_sentence(km, "!!p : 1"), parse_sentence(km, "p : [3,3]"));
  // Conjunct order does not matter.
  EXPECT_EQ(parse_formula(km, "q & p"), parse_formula(km, "p & q"));
}

TEST(Syntax, Errors) {
  const auto km = module(min_algebra(4), {});
  EXPECT_THROW(parse_sentence(km, "p & x : 1"), StructuralError);
  EXPECT_THROW(parse_sentence(km, "p -> !q : 1"), StructuralError);
  EXPECT_THROW(parse_sentence(km, "p"), StructuralError);
  EXPECT_THROW(parse_sentence(km, "p : [a2,a1]"), StructuralError);
  EXPECT_THROW(parse_sentence(km, "p : a7"), StructuralError);
  EXPECT_THROW(parse_sentence(km, "p : [a1,1"), StructuralError);
  EXPECT_THROW(parse_sentence(km, " & p : 1"), StructuralError);
}

TEST(Semantics, EvaluateMatchesOracle) {
  std::mt19937 rng(7);
  for (const auto& alg : small_algebras()) {
    const auto t = support::table(alg);
    for (int k = 0; k < 20; ++k) {
      const Sentence s = random_sentence(alg, {}, rng);
      for (Value x = 0; x < alg.size(); ++x) {
        for (Value y = 0; y < alg.size(); ++y) {
          const Valuation v{x, y, static_cast<Value>((x + y) % alg.size())};
          ASSERT_EQ(evaluate(alg, s.formula, v),
                    oracle::evaluate(t, support::formula(s.formula), {v.begin(), v.end()}));
        }
      }
    }
  }
}

TEST(Semantics, SemanticEntailmentMatchesOracle) {
  std::mt19937 rng(11);
  for (const auto& alg : small_algebras()) {
    const auto t = support::table(alg);
    for (int k = 0; k < 10; ++k) {
      const auto km = random_module(alg, 2, {}, rng);
      const Sentence s = random_sentence(alg, {}, rng);
      ASSERT_EQ(semantic_entails(km, s),
                oracle::semantically_entails(t, 3, support::sentences(km), support::sentence(s)));
    }
  }
}

TEST(Semantics, ValuationCap) {
  const auto km = module(min_algebra(4), {"p : 1"});
  EXPECT_THROW(semantic_entails(km, parse_sentence(km, "q : 1"), 10), CapExceeded);
}

TEST(Detach, ExactWeightIsHullOfSolutionSets) {
  for (const auto& alg : support::algebras(2, 5)) {
    const auto t = support::table(alg);
    const int n = alg.size();
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        for (int c = 0; c < n; ++c) {
          for (int d = c; d < n; ++d) {
            std::optional<oracle::Iv> hull;
            for (int x = a; x <= b; ++x) {
              for (int y = c; y <= d; ++y) {
                for (int z : oracle::mp_set(t, x, y)) {
                  hull = hull ? oracle::Iv{std::min(hull->first, z), std::max(hull->second, z)}
                              : oracle::Iv{z, z};
                }
              }
            }
            const auto got = detach_weight(alg, MpMode::kExact, {a, b}, {c, d});
            ASSERT_EQ(got.has_value(), hull.has_value());
            if (got) ASSERT_EQ(std::make_pair(got->lo, got->hi), *hull);
          }
        }
      }
    }
  }
}

TEST(Closure, MatchesNaiveSaturationInBothModes) {
  std::mt19937 rng(2024);
  for (const auto& alg : small_algebras()) {
    const auto t = support::table(alg);
    for (int k = 0; k < 12; ++k) {
      const auto km = random_module(alg, 1 + k % 3, {}, rng);
      for (MpMode mode : {MpMode::kModified, MpMode::kExact}) {
        ClosureOptions opt;
        opt.mp = mode;
        const Closure c(km, opt);
        if (!c.contradictions().empty()) continue;
        ASSERT_EQ(engine_minimal(c), oracle::naive_closure(t, support::sentences(km),
                                                           c.arity_bound(),
                                                           mode == MpMode::kExact))
            << "table " << k;
      }
    }
  }
}

TEST(Closure, DefaultArityBound) {
  const Algebra a = min_algebra(3);
  EXPECT_EQ(Closure(module(a, {"p : 1"})).arity_bound(), 2);
  EXPECT_EQ(Closure(module(a, {"p & q & r -> p : 1"})).arity_bound(), 3);
  ClosureOptions opt;
  opt.max_arity = 1;
  EXPECT_EQ(Closure(module(a, {"p : 1", "q : 1"}), opt).find_entailing(
                parse_sentence(module(a, {}), "p & q : 1")),
            std::nullopt);
}

TEST(Closure, StepCap) {
  ClosureOptions opt;
  opt.max_steps = 3;
  EXPECT_THROW(Closure(module(min_algebra(4), {"p : a1", "q : a2", "r : 1"}), opt),
               CapExceeded);
}

TEST(Soundness, NegationAndConjunctionRulesOnGeneralWeights) {
  std::mt19937 rng(5);
  for (const auto& alg : support::algebras(2, 5)) {
    const auto t = support::table(alg);
    for (int k = 0; k < 6; ++k) {
      auto km = random_module(alg, 3, {}, rng);
      std::vector<Sentence> facts;
      for (const auto& s : km.sentences()) {
        if (!s.formula.is_rule()) facts.push_back(s);
      }
      km = km.with_sentences(facts);
      const Closure c(km);
      const auto gamma = support::sentences(km);
      for (int id : c.minimal_steps()) {
        ASSERT_TRUE(oracle::semantically_entails(t, 3, gamma,
                                                 support::sentence(c.step(id).conclusion)));
      }
    }
  }
}

TEST(Soundness, ExactModusPonensOnGeneralWeights) {
  std::mt19937 rng(6);
  for (const auto& alg : support::algebras(2, 5)) {
    const auto t = support::table(alg);
    for (int k = 0; k < 6; ++k) {
      const auto km = random_module(alg, 3, {}, rng);
      ClosureOptions opt;
      opt.mp = MpMode::kExact;
      const Closure c(km, opt);
      const auto gamma = support::sentences(km);
      for (int id : c.minimal_steps()) {
        ASSERT_TRUE(oracle::semantically_entails(t, 3, gamma,
                                                 support::sentence(c.step(id).conclusion)));
      }
    }
  }
}

TEST(Soundness, ModifiedModusPonensOnUpperNegationFreeWeights) {
  std::mt19937 rng(8);
  ShapeOptions shape;
  shape.negation = false;
  shape.upper_only = true;
  for (const auto& alg : support::algebras(2, 5)) {
    const auto t = support::table(alg);
    for (int k = 0; k < 6; ++k) {
      const auto km = random_module(alg, 3, shape, rng);
      const Closure c(km);
      const auto gamma = support::sentences(km);
      for (int id : c.minimal_steps()) {
        ASSERT_TRUE(oracle::semantically_entails(t, 3, gamma,
                                                 support::sentence(c.step(id).conclusion)));
      }
    }
  }
}

TEST(Soundness, ModifiedModusPonensOverreachesOnPointWeights) {
  // rho(p) = a1, rho(q) = 1 satisfies both premises; T*(a1, 1) = a1 excludes it.
  const auto km = module(min_algebra(3), {"p : a1", "p -> q : 1"});
  const Sentence q = parse_sentence(km, "q : a1");
  EXPECT_TRUE(entails(km, q).holds);
  EXPECT_FALSE(semantic_entails(km, q));
  EXPECT_FALSE(oracle::semantically_entails(support::table(km.algebra()), 3,
                                            support::sentences(km), support::sentence(q)));
  ClosureOptions exact;
  exact.mp = MpMode::kExact;
  EXPECT_FALSE(entails(km, q, exact).holds);
  EXPECT_TRUE(entails(km, parse_sentence(km, "q : [a1,1]"), exact).holds);
}

TEST(Entails, TraceEndsInQueryAndReplays) {
  const auto km = module(min_algebra(4), {"p : [a2,1]", "q : 1", "p & q -> r : [a2,1]"});
  const Sentence goal = parse_sentence(km, "r : [a1,1]");
  const auto res = entails(km, goal);
  ASSERT_TRUE(res.holds);
  const auto& tr = *res.trace;
  EXPECT_EQ(tr.conclusion(), goal);
  EXPECT_EQ(tr.steps.back().rule, Rule::kWeakening);
  for (int leaf : tr.leaves()) {
    const auto& s = km.sentences();
    EXPECT_NE(std::find(s.begin(), s.end(), tr.steps[leaf].conclusion), s.end());
  }
  const auto w = replay(km.algebra(), tr);
  for (std::size_t i = 0; i + 1 < tr.steps.size(); ++i) {
    ASSERT_TRUE(w[i].has_value());
    EXPECT_EQ(*w[i], tr.steps[i].conclusion.weight);
  }
  EXPECT_TRUE(w.back()->subset_of(goal.weight));
}

TEST(Entails, RaisesArityForTheQuery) {
  const auto km = module(min_algebra(3), {"p : 1", "q : 1", "r : 1"});
  EXPECT_TRUE(entails(km, parse_sentence(km, "p & q & r : 1")).holds);
  EXPECT_FALSE(entails(km, parse_sentence(km, "p & q & r : a1")).holds);
}

TEST(Entails, RejectsForeignSentences) {
  const auto km = module(min_algebra(3), {"p : 1"});
  Sentence s = parse_sentence(km, "p : 1");
  s.weight = {0, 5};
  EXPECT_THROW(entails(km, s), StructuralError);
}

TEST(Entails, RuleTagsRoundTrip) {
  for (Rule r : {Rule::kPremise, Rule::kWeakening, Rule::kNot, Rule::kAnd, Rule::kModusPonens,
                 Rule::kModusPonensExact}) {
    EXPECT_EQ(rule_from_tag(rule_tag(r)), r);
  }
  EXPECT_FALSE(rule_from_tag("nope").has_value());
}
