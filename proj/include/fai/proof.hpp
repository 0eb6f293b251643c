#ifndef FAI_PROOF_HPP
#define FAI_PROOF_HPP

// Proofs from a theory under a parameterization S.
//
// Rules: axioms A u B => A; hypotheses from the theory; Cut (from A => B and
// B u C => D infer A u C => D); ApplyF (from A => B infer f(A) => f(B) for f
// in S); and optionally CutF (from A => f(B) and B u C => D infer
// A u f(C) => f(D)). Step references are 1-based.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "fset.hpp"
#include "gconn.hpp"
#include "semantics.hpp"

namespace fai {

enum class Rule { axiom, hyp, cut, apply_f, cut_f };

struct ProofStep {
  FAI formula;
  Rule rule = Rule::axiom;
  std::size_t i = 0;  // premise step, or the theory rule for hyp (0 = look it up)
  std::size_t j = 0;  // second premise
  std::optional<LSet> b, c;
  std::optional<Connection> conn;
};

struct Proof {
  std::vector<ProofStep> steps;

  const FAI& goal() const {
    if (steps.empty()) throw ProofError(Errc::invalid_proof, 0, "empty proof");
    return steps.back().formula;
  }
};

namespace detail {

inline const FAI& premise(const Proof& p, std::size_t k, std::size_t ref) {
  if (ref == 0 || ref >= k) throw ProofError(Errc::invalid_step, k, "reference to step " + std::to_string(ref) +
                                                                         " which does not precede it");
  return p.steps[ref - 1].formula;
}

/// Largest C with E = B u C and X = A u C, if any: C = E n X.
inline std::optional<LSet> cut_witness(const FAI& p1, const FAI& p2, const FAI& concl, const std::optional<LSet>& c) {
  if (concl.cons != p2.cons) return std::nullopt;
  LSet cc = c ? *c : intersect(p2.ant, concl.ant);
  if (unite(p1.cons, cc) != p2.ant || unite(p1.ant, cc) != concl.ant) return std::nullopt;
  return cc;
}

/// (B, C) for a CutF instance, recovering omitted parts as E n g(Y1) and E n g(X).
inline std::optional<std::pair<LSet, LSet>> cutf_witness(const FAI& p1, const FAI& p2, const FAI& concl,
                                                         const Connection& f, const std::optional<LSet>& b,
                                                         const std::optional<LSet>& c) {
  LSet bb = b ? *b : intersect(p2.ant, f.upper(p1.cons));
  LSet cc = c ? *c : intersect(p2.ant, f.upper(concl.ant));
  if (f.lower(bb) != p1.cons || unite(bb, cc) != p2.ant) return std::nullopt;
  if (concl.ant != unite(p1.ant, f.lower(cc)) || concl.cons != f.lower(p2.cons)) return std::nullopt;
  return std::make_pair(std::move(bb), std::move(cc));
}

inline std::size_t resolve(const Parameterization& s, const ProofStep& st, std::size_t k) {
  if (!st.conn) throw ProofError(Errc::invalid_step, k, "missing connection");
  auto idx = s.find(*st.conn);
  if (!idx) throw ProofError(Errc::invalid_step, k, "connection is not a member of S");
  return *idx;
}

}  // namespace detail

/// Throws ProofError(invalid_step, k, reason) at the first bad step, or
/// ProofError(goal_mismatch) when `goal` is given and differs from the last formula.
inline void check_proof(const Theory& sigma, const Parameterization& s, const Proof& p,
                        const std::optional<FAI>& goal = std::nullopt, bool allow_cutf = false) {
  if (p.steps.empty()) throw ProofError(Errc::invalid_proof, 0, "empty proof");
  const std::size_t n = s.attributes();
  for (std::size_t k = 1; k <= p.steps.size(); ++k) {
    const ProofStep& st = p.steps[k - 1];
    const FAI& phi = st.formula;
    if (phi.ant.size() != n || phi.cons.size() != n)
      throw ProofError(Errc::invalid_step, k, "formula over another universe");
    switch (st.rule) {
      case Rule::axiom:
        if (!leq(phi.cons, phi.ant)) throw ProofError(Errc::invalid_step, k, "not an axiom: consequent exceeds antecedent");
        break;
      case Rule::hyp: {
        if (st.i == 0) {
          bool found = false;
          for (const auto& r : sigma) found = found || r == phi;
          if (!found) throw ProofError(Errc::invalid_step, k, "formula is not in the theory");
        } else if (st.i > sigma.size() || sigma[st.i - 1] != phi) {
          throw ProofError(Errc::invalid_step, k, "formula differs from theory rule " + std::to_string(st.i));
        }
        break;
      }
      case Rule::cut: {
        const FAI& p1 = detail::premise(p, k, st.i);
        const FAI& p2 = detail::premise(p, k, st.j);
        if (!detail::cut_witness(p1, p2, phi, st.c))
          throw ProofError(Errc::invalid_step, k, "not a cut of steps " + std::to_string(st.i) + " and " +
                                                      std::to_string(st.j));
        break;
      }
      case Rule::apply_f: {
        const FAI& p1 = detail::premise(p, k, st.i);
        const Connection& f = s[detail::resolve(s, st, k)];
        if (f.lower(p1.ant) != phi.ant || f.lower(p1.cons) != phi.cons)
          throw ProofError(Errc::invalid_step, k, "not the image of step " + std::to_string(st.i));
        break;
      }
      case Rule::cut_f: {
        if (!allow_cutf) throw ProofError(Errc::invalid_step, k, "CutF is not enabled");
        const FAI& p1 = detail::premise(p, k, st.i);
        const FAI& p2 = detail::premise(p, k, st.j);
        const Connection& f = s[detail::resolve(s, st, k)];
        if (!detail::cutf_witness(p1, p2, phi, f, st.b, st.c))
          throw ProofError(Errc::invalid_step, k, "not a CutF instance of steps " + std::to_string(st.i) + " and " +
                                                      std::to_string(st.j));
        break;
      }
    }
  }
  if (goal && p.goal() != *goal) throw ProofError(Errc::goal_mismatch, p.steps.size(), "last formula is not the goal");
}

/// {f(A) => f(B) : A => B in sigma, f in S} without repeats, in order.
inline Theory expand_theory(const Theory& sigma, const Parameterization& s) {
  Theory out;
  std::set<FAI> seen;
  for (const auto& r : sigma)
    for (const auto& c : s) {
      FAI img{c.lower(r.ant), c.lower(r.cons)};
      if (seen.insert(img).second) out.push_back(std::move(img));
    }
  return out;
}

namespace detail {

/// Collects steps, then emits hypothesis/ApplyF/axiom steps ahead of the
/// cuts. Dependencies of a leading step are leading steps, so the order
/// stays valid.
class ProofBuilder {
 public:
  std::size_t add(ProofStep st, bool leading) {
    nodes_.push_back({std::move(st), leading});
    return nodes_.size();
  }
  const FAI& formula(std::size_t id) const { return nodes_[id - 1].step.formula; }

  Proof finish(std::size_t last) const {
    std::vector<std::size_t> order, pos(nodes_.size() + 1, 0);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t id = 1; id <= nodes_.size(); ++id)
        if (nodes_[id - 1].leading == (pass == 0)) order.push_back(id);
    // Keep only steps the last one depends on.
    std::vector<bool> live(nodes_.size() + 1, false);
    live[last] = true;
    for (std::size_t id = nodes_.size(); id >= 1; --id) {
      if (!live[id]) continue;
      const auto& st = nodes_[id - 1].step;
      if (st.rule == Rule::cut || st.rule == Rule::cut_f || st.rule == Rule::apply_f) live[st.i] = true;
      if (st.rule == Rule::cut || st.rule == Rule::cut_f) live[st.j] = true;
    }
    Proof p;
    for (std::size_t id : order) {
      if (!live[id]) continue;
      ProofStep st = nodes_[id - 1].step;
      if (st.rule == Rule::cut || st.rule == Rule::cut_f || st.rule == Rule::apply_f) st.i = pos[st.i];
      if (st.rule == Rule::cut || st.rule == Rule::cut_f) st.j = pos[st.j];
      p.steps.push_back(std::move(st));
      pos[id] = p.steps.size();
    }
    return p;
  }

 private:
  struct Node {
    ProofStep step;
    bool leading;
  };
  std::vector<Node> nodes_;
};

inline ProofStep make_step(FAI formula, Rule rule, std::size_t i = 0, std::size_t j = 0) {
  ProofStep st;
  st.formula = std::move(formula);
  st.rule = rule;
  st.i = i;
  st.j = j;
  return st;
}

}  // namespace detail

/// Equivalent proof in which ApplyF is applied only to hypotheses and every
/// hypothesis/ApplyF/axiom step precedes every Cut. Throws
/// Error(invalid_proof) if the input does not check or S is not closed
/// under the compositions the rewriting needs.
inline Proof normalize_proof(const Theory& sigma, const Parameterization& s, const Proof& p) {
  try {
    check_proof(sigma, s, p, std::nullopt, true);
  } catch (const ProofError& e) {
    throw ProofError(Errc::invalid_proof, e.step(), e.reason());
  }
  std::vector<std::size_t> conn_of(p.steps.size() + 1, 0);
  for (std::size_t k = 1; k <= p.steps.size(); ++k)
    if (p.steps[k - 1].conn) conn_of[k] = *s.find(*p.steps[k - 1].conn);

  detail::ProofBuilder out;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::map<FAI, std::size_t> hyps;

  auto compose_in_s = [&](std::size_t h, std::size_t f) {
    auto idx = s.compose_index(h, f);
    if (!idx) throw ProofError(Errc::invalid_proof, 0, "S is not closed under composition");
    return *idx;
  };

  // normal(k, h) proves h applied to both sides of step k.
  std::function<std::size_t(std::size_t, std::size_t)> normal = [&](std::size_t k, std::size_t h) -> std::size_t {
    if (auto it = memo.find({k, h}); it != memo.end()) return it->second;
    const ProofStep& st = p.steps[k - 1];
    const Connection& hc = s[h];
    FAI img{hc.lower(st.formula.ant), hc.lower(st.formula.cons)};
    std::size_t id = 0;
    switch (st.rule) {
      case Rule::axiom:
        id = out.add(detail::make_step(img, Rule::axiom), true);
        break;
      case Rule::hyp: {
        auto hit = hyps.find(st.formula);
        std::size_t hid = hit != hyps.end() ? hit->second
                                            : (hyps[st.formula] = out.add(detail::make_step(st.formula, Rule::hyp, st.i), true));
        if (h == 0) {
          id = hid;
        } else {
          ProofStep a = detail::make_step(img, Rule::apply_f, hid);
          a.conn = hc;
          id = out.add(std::move(a), true);
        }
        break;
      }
      case Rule::apply_f:
        id = normal(st.i, compose_in_s(h, conn_of[k]));
        break;
      case Rule::cut: {
        LSet c = *detail::cut_witness(p.steps[st.i - 1].formula, p.steps[st.j - 1].formula, st.formula, st.c);
        std::size_t a = normal(st.i, h), b = normal(st.j, h);
        ProofStep cs = detail::make_step(img, Rule::cut, a, b);
        cs.c = hc.lower(c);
        id = out.add(std::move(cs), false);
        break;
      }
      case Rule::cut_f: {
        const Connection& f = s[conn_of[k]];
        auto w = *detail::cutf_witness(p.steps[st.i - 1].formula, p.steps[st.j - 1].formula, st.formula, f, st.b,
                                       st.c);
        std::size_t hf = compose_in_s(h, conn_of[k]);
        std::size_t a = normal(st.i, h), b = normal(st.j, hf);
        ProofStep cs = detail::make_step(img, Rule::cut, a, b);
        cs.c = s[hf].lower(w.second);
        id = out.add(std::move(cs), false);
        break;
      }
    }
    memo[{k, h}] = id;
    return id;
  };

  Proof q = out.finish(normal(p.steps.size(), 0));
  check_proof(sigma, s, q, p.goal());
  return q;
}

/// Proof of `goal` if sigma entails it. Replays forward chaining: each rule
/// image f(E) => f(F) that fires extends the current closure A => M by a
/// cut, and a final cut against the axiom M => B extracts the goal.
inline std::optional<Proof> try_prove(const Theory& sigma, const Parameterization& s, const FAI& goal) {
  for (std::size_t r = 0; r < sigma.size(); ++r)
    if (sigma[r] == goal) return Proof{{detail::make_step(goal, Rule::hyp, r + 1)}};
  if (leq(goal.cons, goal.ant)) return Proof{{detail::make_step(goal, Rule::axiom)}};
  if (!entails(sigma, goal, s)) return std::nullopt;

  detail::ProofBuilder out;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> images;
  std::map<std::size_t, std::size_t> hyps;
  LSet m = goal.ant;
  std::size_t acc = out.add(detail::make_step({m, m}, Rule::axiom), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t r = 0; r < sigma.size(); ++r)
      for (std::size_t k = 0; k < s.size(); ++k) {
        const Connection& f = s[k];
        LSet fe = f.lower(sigma[r].ant), ff = f.lower(sigma[r].cons);
        if (!leq(fe, m) || leq(ff, m)) continue;
        auto key = std::make_pair(r, k);
        if (!images.count(key)) {
          if (!hyps.count(r)) hyps[r] = out.add(detail::make_step(sigma[r], Rule::hyp, r + 1), true);
          std::size_t h = hyps[r];
          if (k != 0) {
            ProofStep a = detail::make_step({fe, ff}, Rule::apply_f, h);
            a.conn = f;
            h = out.add(std::move(a), true);
          }
          images[key] = h;
        }
        LSet next = unite(m, ff);
        std::size_t ax = out.add(detail::make_step({next, next}, Rule::axiom), true);
        ProofStep c1 = detail::make_step({m, next}, Rule::cut, images[key], ax);
        c1.c = m;
        std::size_t step = out.add(std::move(c1), false);
        ProofStep c2 = detail::make_step({goal.ant, next}, Rule::cut, acc, step);
        c2.c = empty_set(m.size());
        acc = out.add(std::move(c2), false);
        m = std::move(next);
        changed = true;
      }
  }
  if (m != goal.cons) {
    std::size_t ax = out.add(detail::make_step({m, goal.cons}, Rule::axiom), true);
    ProofStep c = detail::make_step(goal, Rule::cut, acc, ax);
    c.c = empty_set(m.size());
    acc = out.add(std::move(c), false);
  }
  return out.finish(acc);
}

/// Throws Error(not_provable) when sigma does not entail the goal.
inline Proof prove(const Theory& sigma, const Parameterization& s, const FAI& goal) {
  if (auto p = try_prove(sigma, s, goal)) return *p;
  throw Error(Errc::not_provable, "the goal does not follow from the theory");
}

/// Greatest c such that A => c * B is provable.
inline Degree provability_degree(const Theory& sigma, const Parameterization& s, const FAI& r) {
  const auto& chain = s.chain();
  for (std::size_t c = chain.size(); c-- > 0;)
    if (try_prove(sigma, s, {r.ant, c_mult(chain, Degree(c), r.cons)})) return Degree(c);
  return chain.bottom();
}

/// Provability from the expanded theory with Cut only (S = {identity}).
inline std::optional<Proof> try_prove_cut_only(const Theory& sigma, const Parameterization& s, const FAI& goal) {
  return try_prove(expand_theory(sigma, s), trivial_parameterization(s.chain_ptr(), s.universe_ptr()), goal);
}

namespace detail {
inline std::vector<std::size_t> shift_map(std::size_t n) {
  std::vector<std::size_t> m(n + 1);
  for (std::size_t k = 0; k <= n; ++k) m[k] = k;
  return m;
}
}  // namespace detail

/// Replaces every CutF by ApplyF on its second premise followed by a Cut.
inline Proof eliminate_cutf(const Theory& sigma, const Parameterization& s, const Proof& p) {
  check_proof(sigma, s, p, std::nullopt, true);
  Proof q;
  auto pos = detail::shift_map(p.steps.size());
  for (std::size_t k = 1; k <= p.steps.size(); ++k) {
    ProofStep st = p.steps[k - 1];
    if (st.rule == Rule::cut || st.rule == Rule::apply_f || st.rule == Rule::cut_f) st.i = pos[st.i];
    if (st.rule == Rule::cut || st.rule == Rule::cut_f) st.j = pos[st.j];
    if (st.rule == Rule::cut_f) {
      const Connection& f = *st.conn;
      const FAI& p1 = q.steps[st.i - 1].formula;
      const FAI& p2 = q.steps[st.j - 1].formula;
      auto w = *detail::cutf_witness(p1, p2, st.formula, f, st.b, st.c);
      ProofStep a = detail::make_step({f.lower(p2.ant), f.lower(p2.cons)}, Rule::apply_f, st.j);
      a.conn = f;
      q.steps.push_back(std::move(a));
      ProofStep c = detail::make_step(st.formula, Rule::cut, st.i, q.steps.size());
      c.c = f.lower(w.second);
      q.steps.push_back(std::move(c));
    } else {
      q.steps.push_back(std::move(st));
    }
    pos[k] = q.steps.size();
  }
  check_proof(sigma, s, q, p.goal());
  return q;
}

/// Replaces every Cut by CutF with the identity, and every ApplyF by CutF
/// from the axiom 0_Y => 0_Y.
inline Proof introduce_cutf(const Theory& sigma, const Parameterization& s, const Proof& p) {
  check_proof(sigma, s, p, std::nullopt, true);
  const std::size_t n = s.attributes();
  Proof q;
  auto pos = detail::shift_map(p.steps.size());
  for (std::size_t k = 1; k <= p.steps.size(); ++k) {
    ProofStep st = p.steps[k - 1];
    if (st.rule == Rule::cut || st.rule == Rule::apply_f || st.rule == Rule::cut_f) st.i = pos[st.i];
    if (st.rule == Rule::cut || st.rule == Rule::cut_f) st.j = pos[st.j];
    if (st.rule == Rule::cut) {
      const FAI& p1 = q.steps[st.i - 1].formula;
      const FAI& p2 = q.steps[st.j - 1].formula;
      LSet c = *detail::cut_witness(p1, p2, st.formula, st.c);
      ProofStep cf = detail::make_step(st.formula, Rule::cut_f, st.i, st.j);
      cf.conn = s[0];
      cf.b = p1.cons;
      cf.c = std::move(c);
      q.steps.push_back(std::move(cf));
    } else if (st.rule == Rule::apply_f) {
      q.steps.push_back(detail::make_step({empty_set(n), empty_set(n)}, Rule::axiom));
      ProofStep cf = detail::make_step(st.formula, Rule::cut_f, q.steps.size(), st.i);
      cf.conn = st.conn;
      cf.b = empty_set(n);
      cf.c = q.steps[st.i - 1].formula.ant;
      q.steps.push_back(std::move(cf));
    } else {
      q.steps.push_back(std::move(st));
    }
    pos[k] = q.steps.size();
  }
  check_proof(sigma, s, q, p.goal(), true);
  return q;
}

}  // namespace fai

#endif  // FAI_PROOF_HPP
