#ifndef FAI_TESTS_SUPPORT_HPP
#define FAI_TESTS_SUPPORT_HPP

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "fai/fai.hpp"

namespace fai::testing {

inline std::string data(const std::string& rel) { return std::string(FAI_DATA_DIR) + "/" + rel; }

inline Config params(int i) { return load_config(data("params/s" + std::to_string(i) + ".json")); }

/// Chain + universe bundle for hand-built scenarios.
struct Space {
  std::shared_ptr<const ResiduatedChain> chain;
  std::shared_ptr<const Universe> universe;

  Space(std::size_t levels, std::vector<std::string> names, Logic logic = Logic::godel)
      : chain(std::make_shared<const ResiduatedChain>(ResiduatedChain::uniform(levels, logic))),
        universe(std::make_shared<const Universe>(std::move(names))) {}

  std::size_t n() const { return universe->size(); }
  LSet set(const std::string& lit) const { return parse_lset(lit, *universe, *chain); }
  FAI rule(const std::string& lit) const { return parse_fai(lit, *universe, *chain); }
  Degree deg(const std::string& v) const { return chain->parse(v); }
  std::string str(const LSet& a) const { return render_lset(a, *universe, *chain); }
  Connection conn(TermPtr t) const { return Connection::make(std::move(t), *chain, n()); }
  Parameterization monoid(const std::vector<Connection>& gens) const {
    return generate_monoid(chain, universe, gens);
  }
  Parameterization trivial() const { return trivial_parameterization(chain, universe); }

  std::vector<LSet> all() const {
    std::vector<LSet> out;
    for_each_lset(*chain, n(), SIZE_MAX, [&](const LSet& a) { out.push_back(a); });
    return out;
  }
};

/// Holidays table with attributes k, l, a, e on the 5-degree Godel chain.
inline Space holidays_space() { return Space(5, {"k", "l", "a", "e"}); }

inline LSet random_set(std::mt19937_64& rng, const ResiduatedChain& chain, std::size_t n) {
  std::uniform_int_distribution<std::size_t> pick(0, chain.size() - 1);
  LSet a(n);
  for (std::size_t y = 0; y < n; ++y) a[y] = Degree(pick(rng));
  return a;
}

inline Theory random_theory(std::mt19937_64& rng, const ResiduatedChain& chain, std::size_t n, std::size_t max_rules) {
  std::uniform_int_distribution<std::size_t> count(0, max_rules);
  Theory t;
  for (std::size_t i = count(rng); i > 0; --i) t.push_back({random_set(rng, chain, n), random_set(rng, chain, n)});
  return t;
}

/// Every built-in generator family on a space (diff-set only on symmetric chains).
inline std::vector<Connection> builtin_generators(const Space& sp, std::mt19937_64& rng) {
  std::vector<Connection> out;
  out.push_back(sp.conn(identity_term()));
  for (std::size_t c = 0; c < sp.chain->size(); ++c) out.push_back(sp.conn(const_mult_term(Degree(c))));
  for (int i = 0; i < 3; ++i) out.push_back(sp.conn(const_mult_set_term(random_set(rng, *sp.chain, sp.n()))));
  if (sp.chain->symmetric())
    for (int i = 0; i < 3; ++i) out.push_back(sp.conn(diff_set_term(random_set(rng, *sp.chain, sp.n()))));
  for (std::size_t s = 0; s < sp.n(); ++s) out.push_back(sp.conn(rotate_term(s)));
  out.push_back(compose(out[2], out.back()));
  return out;
}

}  // namespace fai::testing

#endif  // FAI_TESTS_SUPPORT_HPP
