#ifndef FAI_SEMANTICS_HPP
#define FAI_SEMANTICS_HPP

#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "fset.hpp"
#include "gconn.hpp"
#include "lattice.hpp"

namespace fai {

/// A => B
struct FAI {
  LSet ant;
  LSet cons;

  friend bool operator==(const FAI&, const FAI&) = default;
  friend auto operator<=>(const FAI&, const FAI&) = default;
};

/// Ordered rule list; order drives every greedy pass over it.
using Theory = std::vector<FAI>;

inline std::string render_fai(const FAI& r, const Universe& u, const ResiduatedChain& chain) {
  return render_lset(r.ant, u, chain) + " -> " + render_lset(r.cons, u, chain);
}

/// Parses `ANT -> CONS` (also accepts `=>`).
inline FAI parse_fai(std::string_view text, const Universe& u, const ResiduatedChain& chain) {
  std::size_t at = text.find("->");
  if (at == std::string_view::npos) at = text.find("=>");
  if (at == std::string_view::npos) throw Error(Errc::parse, "expected 'ANT -> CONS' in '" + std::string(text) + "'");
  return {parse_lset(text.substr(0, at), u, chain), parse_lset(text.substr(at + 2), u, chain)};
}

/// For every <f,g> in S: f(A) not in M, or f(B) in M.
inline bool holds_in(const LSet& m, const FAI& r, const Parameterization& s) {
  detail::check_same(m, r.ant);
  detail::check_same(m, r.cons);
  for (const auto& c : s)
    if (leq(c.lower(r.ant), m) && !leq(c.lower(r.cons), m)) return false;
  return true;
}

/// Same condition through upper adjoints: A in g(M) implies B in g(M).
inline bool holds_in_upper(const LSet& m, const FAI& r, const Parameterization& s) {
  detail::check_same(m, r.ant);
  for (const auto& c : s) {
    LSet gm = c.upper(m);
    if (leq(r.ant, gm) && !leq(r.cons, gm)) return false;
  }
  return true;
}

/// S(A,M)* -> S(B,M)
inline Degree hedge_truth_degree(const LSet& m, const FAI& r, const ResiduatedChain& chain, const Hedge& h) {
  return chain.residuum(h.apply(subsethood(chain, r.ant, m)), subsethood(chain, r.cons, m));
}

inline bool is_model(const LSet& m, const Theory& sigma, const Parameterization& s) {
  for (const auto& r : sigma)
    if (!holds_in(m, r, s)) return false;
  return true;
}

/// One round of forward chaining: M plus f(B) for every rule A => B and f with f(A) in M.
inline LSet t_step(const Theory& sigma, const Parameterization& s, const LSet& m) {
  LSet out = m;
  for (const auto& r : sigma)
    for (const auto& c : s)
      if (leq(c.lower(r.ant), m)) out = unite(out, c.lower(r.cons));
  return out;
}

/// Least S-model of sigma containing A.
inline LSet least_model(const Theory& sigma, const Parameterization& s, const LSet& a) {
  LSet m = a;
  const std::size_t bound = s.chain().size() * a.size();
  for (std::size_t i = 0;; ++i) {
    LSet next = t_step(sigma, s, m);
    if (next == m) return m;
    if (i >= bound) throw std::logic_error("least_model did not stabilize within |L|*|Y| steps");
    m = std::move(next);
  }
}

inline bool entails(const Theory& sigma, const FAI& r, const Parameterization& s) {
  return leq(r.cons, least_model(sigma, s, r.ant));
}

/// Greatest c such that A => c * B holds in M.
inline Degree truth_degree(const LSet& m, const FAI& r, const Parameterization& s) {
  const auto& chain = s.chain();
  for (std::size_t c = chain.size(); c-- > 0;) {
    Degree d(c);
    if (holds_in(m, {r.ant, c_mult(chain, d, r.cons)}, s)) return d;
  }
  return chain.bottom();
}

/// S(B, [A])
inline Degree entail_degree(const Theory& sigma, const FAI& r, const Parameterization& s) {
  return subsethood(s.chain(), r.cons, least_model(sigma, s, r.ant));
}

/// All S-models of sigma in lectic order. Throws Errc::cap_exceeded if |L|^|Y| > cap.
inline std::vector<LSet> models_enum(const Theory& sigma, const Parameterization& s, std::size_t cap = 1'000'000) {
  std::vector<LSet> out;
  for_each_lset(s.chain(), s.attributes(), cap, [&](const LSet& m) {
    if (is_model(m, sigma, s)) out.push_back(m);
  });
  return out;
}

/// Rules {A => C(A)} for a system of models closed under intersections and
/// under every upper adjoint in S, where C(A) is the least member above A.
/// Rules with A = C(A) are omitted. Throws Errc::not_closure_system.
inline Theory theory_of_system(const std::vector<LSet>& models, const Parameterization& s,
                               std::size_t cap = 1'000'000) {
  const std::size_t n = s.attributes();
  std::unordered_set<LSet, LSetHash> member(models.begin(), models.end());
  if (!member.count(full_set(s.chain(), n)))
    throw Error(Errc::not_closure_system, "the full set 1_Y is missing");
  for (const auto& m : models) {
    if (m.size() != n) throw Error(Errc::universe_mismatch, "model over another universe");
    for (const auto& c : s)
      if (!member.count(c.upper(m)))
        throw Error(Errc::not_closure_system, "not closed under the upper adjoint " +
                                                  describe(*c.term(), s.universe(), s.chain()));
    for (const auto& k : models)
      if (!member.count(intersect(m, k))) throw Error(Errc::not_closure_system, "not closed under intersection");
  }
  Theory out;
  for_each_lset(s.chain(), n, cap, [&](const LSet& a) {
    LSet c = full_set(s.chain(), n);
    for (const auto& m : models)
      if (leq(a, m)) c = intersect(c, m);
    if (c != a) out.push_back({a, c});
  });
  return out;
}

}  // namespace fai

#endif  // FAI_SEMANTICS_HPP
