#include <gtest/gtest.h>

#include "support.hpp"

using namespace fai;
using fai::testing::Space;

namespace {

struct S6 {
  Config cfg = fai::testing::params(6);
  Theory sigma = load_theory(fai::testing::data("s6_base.txt"), cfg);
  Proof proof = load_proof(fai::testing::data("s6_proof.json"), cfg.params);
  FAI rule(const std::string& lit) const { return parse_fai(lit, *cfg.universe, *cfg.chain); }
};

void expect_normal_form(const Proof& p) {
  bool seen_cut = false;
  for (const auto& st : p.steps) {
    if (st.rule == Rule::cut || st.rule == Rule::cut_f) {
      seen_cut = true;
    } else {
      EXPECT_FALSE(seen_cut) << "leading step after a cut";
    }
    if (st.rule == Rule::apply_f) {
      EXPECT_EQ(p.steps[st.i - 1].rule, Rule::hyp);
    }
    EXPECT_NE(st.rule, Rule::cut_f);
  }
}

std::vector<Parameterization> closed_parameterizations(const Space& sp, std::mt19937_64& rng) {
  std::vector<Parameterization> out;
  out.push_back(sp.trivial());
  auto gens = fai::testing::builtin_generators(sp, rng);
  for (std::size_t i = 1; i < gens.size(); i += 2) out.push_back(sp.monoid({gens[i], gens[(i * 7) % gens.size()]}));
  return out;
}

}  // namespace

TEST(CheckProof, HolidaysS6) {
  S6 h;
  EXPECT_EQ(h.cfg.params.size(), 8u);
  EXPECT_NO_THROW(check_proof(h.sigma, h.cfg.params, h.proof, h.rule("0.75/a, e -> 0.5/k, l, a")));
  try {
    check_proof(h.sigma, h.cfg.params, h.proof, h.rule("0.75/a, e -> k"));
    FAIL();
  } catch (const ProofError& e) {
    EXPECT_EQ(e.code(), Errc::goal_mismatch);
  }
}

TEST(CheckProof, AxiomOnly) {
  Space sp(3, {"x", "y"});
  Proof p{{detail::make_step(sp.rule("x, 0.5/y -> 0.5/y"), Rule::axiom)}};
  EXPECT_NO_THROW(check_proof({}, sp.trivial(), p));
  p.steps[0].formula = sp.rule("0.5/y -> x");
  try {
    check_proof({}, sp.trivial(), p);
    FAIL();
  } catch (const ProofError& e) {
    EXPECT_EQ(e.code(), Errc::invalid_step);
    EXPECT_EQ(e.step(), 1u);
  }
}

TEST(CheckProof, RejectsBadSteps) {
  S6 h;
  // Connection outside S.
  Proof p = h.proof;
  p.steps[1].conn = Connection::make(const_mult_term(Degree(2)), *h.cfg.chain, 4);
  try {
    check_proof(h.sigma, h.cfg.params, p);
    FAIL();
  } catch (const ProofError& e) {
    EXPECT_EQ(e.step(), 2u);
  }
  // Forward reference.
  p = h.proof;
  p.steps[4].i = 5;
  EXPECT_THROW(check_proof(h.sigma, h.cfg.params, p), ProofError);
  // Wrong hypothesis number.
  p = h.proof;
  p.steps[0].i = 2;
  EXPECT_THROW(check_proof(h.sigma, h.cfg.params, p), ProofError);
  p.steps[0].i = 0;
  EXPECT_NO_THROW(check_proof(h.sigma, h.cfg.params, p));
  // Wrong cut witness.
  p = h.proof;
  p.steps[4].c = empty_set(4);
  EXPECT_THROW(check_proof(h.sigma, h.cfg.params, p), ProofError);
  EXPECT_THROW(check_proof(h.sigma, h.cfg.params, Proof{}), ProofError);
}

TEST(ExpandTheory, Size) {
  S6 h;
  auto ex = expand_theory(h.sigma, h.cfg.params);
  EXPECT_LE(ex.size(), h.sigma.size() * h.cfg.params.size());
  for (const auto& r : ex) EXPECT_TRUE(entails(h.sigma, r, h.cfg.params));
}

TEST(Normalize, HolidaysS6) {
  S6 h;
  Proof q = normalize_proof(h.sigma, h.cfg.params, h.proof);
  EXPECT_EQ(q.goal(), h.proof.goal());
  expect_normal_form(q);
}

TEST(Prove, HolidaysS6) {
  S6 h;
  FAI goal = h.rule("0.75/a, e -> 0.5/k, l, a");
  Proof p = prove(h.sigma, h.cfg.params, goal);
  EXPECT_NO_THROW(check_proof(h.sigma, h.cfg.params, p, goal));
  expect_normal_form(p);
  try {
    prove(h.sigma, h.cfg.params, h.rule("0.75/a, e -> k"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_provable);
  }
  EXPECT_FALSE(try_prove(h.sigma, h.cfg.params, h.rule("0_Y -> k")));
  EXPECT_TRUE(try_prove_cut_only(h.sigma, h.cfg.params, goal));
}

TEST(Prove, SoundAndCompleteOnRandomTheories) {
  std::mt19937_64 rng(11);
  for (Logic l : {Logic::godel, Logic::lukasiewicz}) {
    Space sp(3, {"x", "y", "z"}, l);
    auto params = closed_parameterizations(sp, rng);
    for (int i = 0; i < 80; ++i) {
      const auto& s = params[i % params.size()];
      Theory sigma = fai::testing::random_theory(rng, *sp.chain, 3, 4);
      FAI goal{fai::testing::random_set(rng, *sp.chain, 3), fai::testing::random_set(rng, *sp.chain, 3)};
      auto p = try_prove(sigma, s, goal);
      EXPECT_EQ(p.has_value(), entails(sigma, goal, s));
      EXPECT_EQ(try_prove_cut_only(sigma, s, goal).has_value(), p.has_value());
      if (!p) continue;
      EXPECT_NO_THROW(check_proof(sigma, s, *p, goal));
      Proof q = normalize_proof(sigma, s, *p);
      expect_normal_form(q);
      EXPECT_NO_THROW(check_proof(sigma, s, introduce_cutf(sigma, s, *p), goal, true));
      EXPECT_NO_THROW(check_proof(sigma, s, eliminate_cutf(sigma, s, introduce_cutf(sigma, s, *p)), goal));
      EXPECT_EQ(provability_degree(sigma, s, goal), entail_degree(sigma, goal, s));
    }
  }
}

TEST(ProvabilityDegree, MatchesEntailDegree) {
  S6 h;
  std::mt19937_64 rng(13);
  for (int i = 0; i < 40; ++i) {
    FAI r{fai::testing::random_set(rng, *h.cfg.chain, 4), fai::testing::random_set(rng, *h.cfg.chain, 4)};
    EXPECT_EQ(provability_degree(h.sigma, h.cfg.params, r), entail_degree(h.sigma, r, h.cfg.params));
  }
}

// Any proof that still checks after a random edit proves an entailed formula.
TEST(CheckProof, SoundUnderMutation) {
  S6 h;
  std::mt19937_64 rng(14);
  std::size_t accepted = 0;
  for (int i = 0; i < 2000; ++i) {
    Proof p = h.proof;
    auto& st = p.steps[rng() % p.steps.size()];
    LSet& side = rng() % 2 ? st.formula.ant : st.formula.cons;
    side[rng() % 4] = Degree(rng() % 5);
    if (rng() % 3 == 0) p.steps.resize(1 + rng() % p.steps.size());
    try {
      check_proof(h.sigma, h.cfg.params, p);
    } catch (const ProofError&) {
      continue;
    }
    ++accepted;
    for (const auto& s : p.steps) EXPECT_TRUE(entails(h.sigma, s.formula, h.cfg.params));
  }
  EXPECT_GT(accepted, 0u);
}

TEST(CutF, RoundTripHolidaysS6) {
  S6 h;
  Proof with = introduce_cutf(h.sigma, h.cfg.params, h.proof);
  bool any = false;
  for (const auto& st : with.steps) any = any || st.rule == Rule::cut_f;
  EXPECT_TRUE(any);
  EXPECT_THROW(check_proof(h.sigma, h.cfg.params, with), ProofError);
  EXPECT_NO_THROW(check_proof(h.sigma, h.cfg.params, with, h.proof.goal(), true));
  Proof back = eliminate_cutf(h.sigma, h.cfg.params, with);
  for (const auto& st : back.steps) EXPECT_NE(st.rule, Rule::cut_f);
  Proof q = normalize_proof(h.sigma, h.cfg.params, with);
  expect_normal_form(q);
}
