#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "support.hpp"

using namespace fai;
using fai::testing::Space;

namespace {

struct Holidays {
  Config cfg;
  LContext ctx;
  explicit Holidays(int i)
      : cfg(fai::testing::params(i)), ctx(load_context(fai::testing::data("holidays.csv"), cfg)) {}
  ContextOperator op() const { return ContextOperator(ctx, cfg.params); }
  LSet set(const std::string& lit) const { return parse_lset(lit, *cfg.universe, *cfg.chain); }
  FAI rule(const std::string& lit) const { return parse_fai(lit, *cfg.universe, *cfg.chain); }
};

LContext random_context(std::mt19937_64& rng, const Space& sp, std::size_t objects) {
  std::vector<std::string> names;
  std::vector<LSet> rows;
  for (std::size_t i = 0; i < objects; ++i) {
    names.push_back("o" + std::to_string(i));
    rows.push_back(fai::testing::random_set(rng, *sp.chain, sp.n()));
  }
  return LContext(names, sp.universe, rows);
}

}  // namespace

TEST(LContext, Validation) {
  Space sp(3, {"x", "y"});
  EXPECT_THROW(LContext({}, sp.universe, {}), Error);
  EXPECT_THROW(LContext({"a"}, sp.universe, {}), Error);
  EXPECT_THROW(LContext({"a"}, sp.universe, {LSet(3)}), Error);
  Holidays h(1);
  EXPECT_EQ(h.ctx.size(), 5u);
  EXPECT_EQ(h.ctx.object(2), "beach holiday");
  EXPECT_EQ(render_lset(h.ctx.row(2), *h.cfg.universe, *h.cfg.chain), "0.75/k, 0.25/l, 0.75/a, 0.25/e");
}

TEST(ContextOperator, UpDownGaloisProperty) {
  Holidays h(6);
  auto op = h.op();
  std::mt19937_64 rng(3);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < h.ctx.size(); ++x)
    for (std::size_t k = 0; k < h.cfg.params.size(); ++k) pairs.emplace_back(x, k);
  for (int i = 0; i < 300; ++i) {
    LSet g = fai::testing::random_set(rng, *h.cfg.chain, 4);
    RowOperatorSet f;
    for (const auto& p : pairs)
      if (rng() % 4 == 0) f.insert(p);
    RowOperatorSet dg = op.down(g);
    bool lhs = std::includes(dg.begin(), dg.end(), f.begin(), f.end());
    EXPECT_EQ(lhs, leq(g, op.up(f)));
    EXPECT_EQ(op.closure(g), op.up(dg));
  }
}

TEST(ContextOperator, Examples) {
  Holidays h(1);
  auto op = h.op();
  EXPECT_EQ(render_lset(op.closure(empty_set(4)), *h.cfg.universe, *h.cfg.chain),
            "0.25/k, 0.25/l, 0.25/a, 0.25/e");
  EXPECT_EQ(downup(h.ctx, empty_set(4), h.cfg.params), op.closure(empty_set(4)));
  EXPECT_EQ(up(h.ctx, {}, h.cfg.params), full_set(*h.cfg.chain, 4));
  EXPECT_EQ(down(h.ctx, full_set(*h.cfg.chain, 4), h.cfg.params).size(), 0u);
}

TEST(HoldsInContext, Examples) {
  Holidays h(1);
  EXPECT_TRUE(holds_in_context(h.ctx, h.rule("l -> e"), h.cfg.params));
  EXPECT_FALSE(holds_in_context(h.ctx, h.rule("e -> k"), h.cfg.params));
}

TEST(HoldsInContext, ThreeFormsAgree) {
  std::mt19937_64 rng(4);
  for (int i = 1; i <= 6; ++i) {
    Holidays h(i);
    for (int t = 0; t < 200; ++t) {
      FAI r{fai::testing::random_set(rng, *h.cfg.chain, 4), fai::testing::random_set(rng, *h.cfg.chain, 4)};
      bool a = holds_in_context(h.ctx, r, h.cfg.params);
      EXPECT_EQ(a, holds_in_rows(h.ctx, r, h.cfg.params));
      EXPECT_EQ(a, holds_by_extents(h.ctx, r, h.cfg.params));
    }
  }
}

TEST(Intents, HolidayCounts) {
  const std::size_t expected[] = {22, 28, 24, 26, 21, 65};
  for (int i = 1; i <= 6; ++i) {
    Holidays h(i);
    auto op = h.op();
    auto intents = intents_enum(op);
    EXPECT_EQ(intents.size(), expected[i - 1]) << "S" << i;
    EXPECT_EQ(intents, intents_brute(op)) << "S" << i;
    EXPECT_TRUE(std::is_sorted(intents.begin(), intents.end()));
  }
}

TEST(Intents, RandomAgreeWithBruteForce) {
  std::mt19937_64 rng(6);
  for (Logic l : {Logic::godel, Logic::lukasiewicz, Logic::goguen}) {
    Space sp(l == Logic::goguen ? 2 : 3, {"x", "y", "z"}, l);
    auto gens = fai::testing::builtin_generators(sp, rng);
    for (int i = 0; i < 15; ++i) {
      auto ctx = random_context(rng, sp, 1 + rng() % 4);
      auto s = sp.monoid({gens[rng() % gens.size()], gens[rng() % gens.size()]});
      ContextOperator op(ctx, s);
      EXPECT_EQ(intents_enum(op), intents_brute(op));
    }
  }
}

TEST(Intents, CapExceeded) {
  Holidays h(1);
  try {
    intents_enum(h.op(), 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::cap_exceeded);
  }
}

TEST(PseudoIntents, Holidays) {
  Holidays h(1);
  auto op = h.op();
  auto p = pseudo_intents(op);
  EXPECT_EQ(p.size(), 11u);
  EXPECT_NE(std::find(p.begin(), p.end(), empty_set(4)), p.end());
  std::set<LSet> a(p.begin(), p.end());
  auto q = pseudo_intents(op, ScanOrder::lectic);
  EXPECT_EQ(a, std::set<LSet>(q.begin(), q.end()));
}

TEST(PseudoIntents, SingleObject) {
  Space sp(3, {"x", "y"});
  LContext ctx({"o"}, sp.universe, {sp.set("0.5/x, y")});
  auto id = sp.trivial();
  ContextOperator op(ctx, id);
  auto sigma = complete_set(op);
  EXPECT_TRUE(is_complete(sigma, op));
  for (const auto& r : sigma) EXPECT_TRUE(op.holds(r));
}

TEST(CompleteSet, HolidaysMatchesReference) {
  Holidays h(1);
  auto op = h.op();
  auto sigma = complete_set(op);
  auto ref = load_theory(fai::testing::data("s1_complete.txt"), h.cfg);
  EXPECT_EQ(std::set<FAI>(sigma.begin(), sigma.end()), std::set<FAI>(ref.begin(), ref.end()));
  EXPECT_TRUE(is_complete(sigma, op));
  EXPECT_FALSE(is_complete({}, op));
  EXPECT_FALSE(is_complete_sampled({}, op, 50));
  EXPECT_TRUE(is_complete_sampled(sigma, op, 200));
}

// Completeness of the pseudo-intent system, checked directly; it is
// non-redundant only for S = {identity}.
TEST(CompleteSet, RandomContexts) {
  std::mt19937_64 rng(7);
  for (Logic l : {Logic::godel, Logic::lukasiewicz}) {
    Space sp(3, {"x", "y", "z"}, l);
    auto gens = fai::testing::builtin_generators(sp, rng);
    for (int i = 0; i < 12; ++i) {
      auto ctx = random_context(rng, sp, 1 + rng() % 4);
      auto s = sp.monoid({gens[rng() % gens.size()]});
      ContextOperator op(ctx, s);
      auto sigma = complete_set(op);
      for (const auto& a : sp.all()) EXPECT_EQ(least_model(sigma, s, a), op.closure(a));
      Theory base = s.size() == 1 ? sigma : reduce_to_base(sigma, op);
      EXPECT_TRUE(is_complete(base, op));
      for (std::size_t k = 0; k < base.size(); ++k) {
        Theory rest = base;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
        EXPECT_FALSE(entails(rest, base[k], s));
      }
      auto lectic = complete_set(op, ScanOrder::lectic);
      EXPECT_EQ(std::set<FAI>(sigma.begin(), sigma.end()), std::set<FAI>(lectic.begin(), lectic.end()));
    }
  }
}

TEST(ReduceToBase, RemovesEntailedRules) {
  Holidays h(1);
  auto op = h.op();
  auto sigma = complete_set(op);
  Theory dup = sigma;
  dup.push_back(sigma.front());
  dup.push_back({sigma.front().ant, intersect(sigma.front().cons, sigma.front().ant)});
  auto base = reduce_to_base(dup, op);
  EXPECT_EQ(base.size(), 11u);
  EXPECT_TRUE(is_complete(base, op));
  EXPECT_THROW(reduce_to_base({}, op), Error);
}

TEST(ReduceToBase, HolidaysS4) {
  Holidays h(4);
  auto op = h.op();
  auto sigma = complete_set(op);
  EXPECT_EQ(sigma.size(), 17u);
  auto base = reduce_to_base(sigma, op);
  EXPECT_EQ(base.size(), 10u);
  EXPECT_TRUE(is_complete(base, op));
  for (std::size_t k = 0; k < base.size(); ++k) {
    Theory rest = base;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
    EXPECT_FALSE(entails(rest, base[k], h.cfg.params));
  }
}

TEST(MinimizeSides, HolidaysS1) {
  Holidays h(1);
  auto op = h.op();
  auto sigma = minimize_sides(complete_set(op), op);
  EXPECT_TRUE(is_complete(sigma, op));
  auto ref = load_theory(fai::testing::data("s1_minimized.txt"), h.cfg);
  EXPECT_EQ(std::set<FAI>(sigma.begin(), sigma.end()), std::set<FAI>(ref.begin(), ref.end()));
  // No single degree can be lowered further.
  for (std::size_t k = 0; k < sigma.size(); ++k)
    for (int side = 0; side < 2; ++side)
      for (std::size_t y = 0; y < 4; ++y) {
        Theory t = sigma;
        LSet& s = side ? t[k].cons : t[k].ant;
        if (s[y].index == 0) continue;
        s[y] = Degree(s[y].index - 1u);
        EXPECT_FALSE(is_complete(t, op));
      }
}

TEST(HasseDot, Structure) {
  Holidays h(1);
  auto intents = intents_enum(h.op());
  auto edges = cover_edges(intents);
  // Oracle: transitive reduction through path lengths.
  std::size_t n = intents.size(), count = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!lt(intents[i], intents[j])) continue;
      bool direct = true;
      for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != j && leq(intents[i], intents[k]) && leq(intents[k], intents[j])) direct = false;
      if (direct) ++count;
    }
  EXPECT_EQ(edges.size(), count);
  std::string dot = hasse_dot(intents, *h.cfg.universe, *h.cfg.chain);
  EXPECT_EQ(dot.rfind("digraph intents {", 0), 0u);
  auto occurrences = [&](const std::string& needle) {
    std::size_t c = 0;
    for (auto p = dot.find(needle); p != std::string::npos; p = dot.find(needle, p + 1)) ++c;
    return c;
  };
  EXPECT_EQ(occurrences("[label="), n);
  EXPECT_EQ(occurrences(" -> "), count);
}
