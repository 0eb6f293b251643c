#ifndef FAI_CONTEXT_HPP
#define FAI_CONTEXT_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "fset.hpp"
#include "gconn.hpp"
#include "semantics.hpp"

namespace fai {

/// Object-attribute table with degrees from the chain.
class LContext {
 public:
  LContext(std::vector<std::string> objects, std::shared_ptr<const Universe> universe, std::vector<LSet> rows)
      : objects_(std::move(objects)), universe_(std::move(universe)), rows_(std::move(rows)) {
    if (objects_.empty()) throw Error(Errc::parse, "a context needs at least one object");
    if (objects_.size() != rows_.size()) throw Error(Errc::parse, "object/row count mismatch");
    for (const auto& r : rows_)
      if (r.size() != universe_->size()) throw Error(Errc::universe_mismatch, "row width differs from |Y|");
  }

  std::size_t size() const noexcept { return objects_.size(); }
  const std::string& object(std::size_t x) const { return objects_.at(x); }
  const std::vector<std::string>& objects() const noexcept { return objects_; }
  const Universe& universe() const noexcept { return *universe_; }
  const std::shared_ptr<const Universe>& universe_ptr() const noexcept { return universe_; }
  /// I_x
  const LSet& row(std::size_t x) const { return rows_.at(x); }

 private:
  std::vector<std::string> objects_;
  std::shared_ptr<const Universe> universe_;
  std::vector<LSet> rows_;
};

/// Pairs (object index, connection index) standing for <x, g>.
using RowOperatorSet = std::set<std::pair<std::size_t, std::size_t>>;

/// The antitone pair up/down for a context under S, with every g(I_x)
/// computed once.
class ContextOperator {
 public:
  ContextOperator(const LContext& ctx, const Parameterization& s) : ctx_(&ctx), s_(&s) {
    if (!(ctx.universe() == s.universe()))
      throw Error(Errc::universe_mismatch, "context and parameterization use different attributes");
    for (std::size_t x = 0; x < ctx.size(); ++x)
      for (std::size_t k = 0; k < s.size(); ++k) images_.push_back(s[k].upper(ctx.row(x)));
  }

  const LContext& context() const noexcept { return *ctx_; }
  const Parameterization& params() const noexcept { return *s_; }

  /// g_k(I_x)
  const LSet& image(std::size_t x, std::size_t k) const { return images_.at(x * s_->size() + k); }

  /// F-up = intersection of g(I_x) over <x,g> in F.
  LSet up(const RowOperatorSet& f) const {
    LSet r = full_set(s_->chain(), s_->attributes());
    for (auto [x, k] : f) r = intersect(r, image(x, k));
    return r;
  }

  /// G-down = {<x,g> : G in g(I_x)}
  RowOperatorSet down(const LSet& g) const {
    RowOperatorSet out;
    for (std::size_t x = 0; x < ctx_->size(); ++x)
      for (std::size_t k = 0; k < s_->size(); ++k)
        if (leq(g, image(x, k))) out.emplace(x, k);
    return out;
  }

  /// G-down-up, without materializing G-down.
  LSet closure(const LSet& g) const {
    detail::check_same(g, LSet(s_->attributes()));
    LSet r = full_set(s_->chain(), s_->attributes());
    for (const auto& im : images_)
      if (leq(g, im))
        for (std::size_t y = 0; y < r.size(); ++y) r[y] = std::min(r[y], im[y]);
    return r;
  }

  bool holds(const FAI& r) const { return leq(r.cons, closure(r.ant)); }

 private:
  const LContext* ctx_;
  const Parameterization* s_;
  std::vector<LSet> images_;
};

inline LSet up(const LContext& ctx, const RowOperatorSet& f, const Parameterization& s) {
  return ContextOperator(ctx, s).up(f);
}
inline RowOperatorSet down(const LContext& ctx, const LSet& g, const Parameterization& s) {
  return ContextOperator(ctx, s).down(g);
}
inline LSet downup(const LContext& ctx, const LSet& g, const Parameterization& s) {
  return ContextOperator(ctx, s).closure(g);
}

/// B in A-down-up.
inline bool holds_in_context(const LContext& ctx, const FAI& r, const Parameterization& s) {
  return ContextOperator(ctx, s).holds(r);
}
/// True in every row I_x.
inline bool holds_in_rows(const LContext& ctx, const FAI& r, const Parameterization& s) {
  for (std::size_t x = 0; x < ctx.size(); ++x)
    if (!holds_in(ctx.row(x), r, s)) return false;
  return true;
}
/// A-down contained in B-down.
inline bool holds_by_extents(const LContext& ctx, const FAI& r, const Parameterization& s) {
  ContextOperator op(ctx, s);
  auto da = op.down(r.ant), db = op.down(r.cons);
  return std::includes(db.begin(), db.end(), da.begin(), da.end());
}

/// Fixed points of the closure in lectic order (NextClosure).
inline std::vector<LSet> intents_enum(const ContextOperator& op, std::size_t cap = 1'000'000) {
  const auto& chain = op.params().chain();
  const std::size_t n = op.params().attributes();
  std::vector<LSet> out;
  LSet a = op.closure(empty_set(n));
  while (true) {
    if (out.size() >= cap) throw Error(Errc::cap_exceeded, "more than " + std::to_string(cap) + " intents");
    out.push_back(a);
    bool advanced = false;
    for (std::size_t i = n; i-- > 0 && !advanced;) {
      if (a[i] == chain.top()) continue;
      LSet cand(n);
      for (std::size_t j = 0; j < i; ++j) cand[j] = a[j];
      cand[i] = Degree(a[i].index + 1u);
      LSet b = op.closure(cand);
      bool keeps_prefix = true;
      for (std::size_t j = 0; j < i && keeps_prefix; ++j) keeps_prefix = b[j] == a[j];
      if (keeps_prefix) {
        a = std::move(b);
        advanced = true;
      }
    }
    if (!advanced) return out;
  }
}

inline std::vector<LSet> intents_enum(const LContext& ctx, const Parameterization& s, std::size_t cap = 1'000'000) {
  return intents_enum(ContextOperator(ctx, s), cap);
}

/// Fixed points by scanning all of L^Y; oracle for intents_enum.
inline std::vector<LSet> intents_brute(const ContextOperator& op, std::size_t cap = 1'000'000) {
  std::vector<LSet> out;
  for_each_lset(op.params().chain(), op.params().attributes(), cap, [&](const LSet& m) {
    if (op.closure(m) == m) out.push_back(m);
  });
  return out;
}

/// Linear orders of L^Y used to classify pseudo-intents; both extend strict inclusion.
enum class ScanOrder { degree_sum, lectic };

/// Non-intents P such that closure(Q) is in P for every pseudo-intent Q strictly in P.
/// Returned in scan order.
inline std::vector<LSet> pseudo_intents(const ContextOperator& op, ScanOrder order = ScanOrder::degree_sum,
                                        std::size_t cap = 1'000'000) {
  std::vector<LSet> space;
  for_each_lset(op.params().chain(), op.params().attributes(), cap, [&](const LSet& m) { space.push_back(m); });
  if (order == ScanOrder::degree_sum)
    std::stable_sort(space.begin(), space.end(),
                     [](const LSet& a, const LSet& b) { return degree_sum(a) < degree_sum(b); });
  std::vector<LSet> found, closed;
  for (const auto& p : space) {
    LSet c = op.closure(p);
    if (c == p) continue;
    bool ok = true;
    for (std::size_t i = 0; i < found.size() && ok; ++i)
      if (lt(found[i], p) && !leq(closed[i], p)) ok = false;
    if (ok) {
      found.push_back(p);
      closed.push_back(std::move(c));
    }
  }
  return found;
}

/// {P => closure(P) : P pseudo-intent}
inline Theory complete_set(const ContextOperator& op, ScanOrder order = ScanOrder::degree_sum,
                           std::size_t cap = 1'000'000) {
  Theory out;
  for (auto& p : pseudo_intents(op, order, cap)) {
    LSet c = op.closure(p);
    out.push_back({std::move(p), std::move(c)});
  }
  return out;
}

/// [M] = closure(M) for every M in L^Y.
inline bool is_complete(const Theory& sigma, const ContextOperator& op, std::size_t cap = 1'000'000) {
  bool ok = true;
  for_each_lset(op.params().chain(), op.params().attributes(), cap, [&](const LSet& m) {
    if (ok && least_model(sigma, op.params(), m) != op.closure(m)) ok = false;
  });
  return ok;
}

/// Same check on `samples` random sets; can only refute completeness.
inline bool is_complete_sampled(const Theory& sigma, const ContextOperator& op, std::size_t samples,
                                std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  const auto& chain = op.params().chain();
  std::uniform_int_distribution<std::size_t> pick(0, chain.size() - 1);
  LSet m(op.params().attributes());
  for (std::size_t i = 0; i < samples; ++i) {
    for (std::size_t y = 0; y < m.size(); ++y) m[y] = Degree(pick(rng));
    if (least_model(sigma, op.params(), m) != op.closure(m)) return false;
  }
  return true;
}

/// Completeness of `sigma` given a theory `ref` already known to be complete:
/// sigma is true in the context and entails every rule of ref.
inline bool is_complete_relative(const Theory& sigma, const Theory& ref, const ContextOperator& op) {
  for (const auto& r : sigma)
    if (!op.holds(r)) return false;
  for (const auto& r : ref)
    if (!entails(sigma, r, op.params())) return false;
  return true;
}

namespace detail {
inline void require_complete(const Theory& sigma, const ContextOperator& op, std::size_t cap) {
  if (space_size(op.params().chain().size(), op.params().attributes()) <= cap) {
    if (!is_complete(sigma, op, cap)) throw Error(Errc::not_complete, "theory is not complete in the context");
  } else if (!is_complete_relative(sigma, complete_set(op, ScanOrder::lectic, SIZE_MAX), op)) {
    throw Error(Errc::not_complete, "theory is not complete in the context");
  }
}
}  // namespace detail

/// Drops, in theory order, every rule entailed by the rules still kept.
/// Throws Errc::not_complete unless sigma is complete.
inline Theory reduce_to_base(Theory sigma, const ContextOperator& op, std::size_t cap = 1'000'000) {
  detail::require_complete(sigma, op, cap);
  for (std::size_t i = 0; i < sigma.size();) {
    FAI r = sigma[i];
    sigma.erase(sigma.begin() + static_cast<std::ptrdiff_t>(i));
    if (entails(sigma, r, op.params())) continue;
    sigma.insert(sigma.begin() + static_cast<std::ptrdiff_t>(i), std::move(r));
    ++i;
  }
  return sigma;
}

/// Lowers degrees one chain step at a time (rule by rule, antecedent then
/// consequent, attributes in universe order) while the theory stays complete.
/// Throws Errc::not_complete unless sigma is complete.
inline Theory minimize_sides(Theory sigma, const ContextOperator& op, std::size_t cap = 1'000'000) {
  detail::require_complete(sigma, op, cap);
  const Theory ref = sigma;
  for (auto& rule : sigma)
    for (LSet* side : {&rule.ant, &rule.cons})
      for (std::size_t y = 0; y < side->size(); ++y)
        while ((*side)[y].index > 0) {
          Degree old = (*side)[y];
          (*side)[y] = Degree(old.index - 1u);
          if (!is_complete_relative(sigma, ref, op)) {
            (*side)[y] = old;
            break;
          }
        }
  return sigma;
}

/// Cover relation of a family of sets as (lower, upper) index pairs.
inline std::vector<std::pair<std::size_t, std::size_t>> cover_edges(const std::vector<LSet>& sets) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (!lt(sets[i], sets[j])) continue;
      bool cover = true;
      for (std::size_t k = 0; k < sets.size() && cover; ++k)
        if (lt(sets[i], sets[k]) && lt(sets[k], sets[j])) cover = false;
      if (cover) out.emplace_back(i, j);
    }
  return out;
}

/// DOT digraph of the cover relation, edges pointing upward.
inline std::string hasse_dot(const std::vector<LSet>& sets, const Universe& u, const ResiduatedChain& chain) {
  std::string out = "digraph intents {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < sets.size(); ++i)
    out += "  n" + std::to_string(i) + " [label=\"" + render_lset(sets[i], u, chain) + "\"];\n";
  for (auto [a, b] : cover_edges(sets)) out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace fai

#endif  // FAI_CONTEXT_HPP
