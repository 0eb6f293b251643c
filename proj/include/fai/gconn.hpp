#ifndef FAI_GCONN_HPP
#define FAI_GCONN_HPP

// Isotone Galois connections on <L^Y, subseteq> and finite monoids of them.
//
// A connection keeps the generator term it was built from (for printing and
// serialization) and a fingerprint: the lower-adjoint image of every
// singleton {a/y}. Lower adjoints preserve unions, so the fingerprint
// determines the lower adjoint, which in turn determines the upper one:
//
//   f(A)    = union over y of f({A(y)/y})
//   g(B)(y) = max{ a : f({a/y}) subseteq B }
//
// Two connections are equal iff their fingerprints are equal.

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "error.hpp"
#include "fset.hpp"
#include "lattice.hpp"

namespace fai {

using SetMap = std::function<LSet(const LSet&)>;

struct Term;
using TermPtr = std::shared_ptr<const Term>;

namespace term {
struct Identity {};
/// f(A) = c * A, g(B) = c -> B
struct ConstMult {
  Degree c;
};
/// f(A) = C * A, g(B) = C -> B (componentwise)
struct ConstMultSet {
  LSet c;
};
/// f(A) = A (-) C, g(B) = C (+) B (componentwise)
struct DiffSet {
  LSet c;
};
/// f(A)(y) = A((y + shift) mod n), g(B)(y) = B((y - shift) mod n)
struct Rotate {
  std::size_t shift;
};
/// lower = outer o inner, upper = inner_g o outer_g
struct Compose {
  TermPtr outer, inner;
};
/// Arbitrary pair supplied by the caller; verified before use.
struct Custom {
  std::string name;
  SetMap lower, upper;
};
}  // namespace term

struct Term {
  std::variant<term::Identity, term::ConstMult, term::ConstMultSet, term::DiffSet, term::Rotate, term::Compose,
               term::Custom>
      node;
};

inline TermPtr identity_term() { return std::make_shared<const Term>(Term{term::Identity{}}); }
inline TermPtr const_mult_term(Degree c) { return std::make_shared<const Term>(Term{term::ConstMult{c}}); }
inline TermPtr const_mult_set_term(LSet c) { return std::make_shared<const Term>(Term{term::ConstMultSet{std::move(c)}}); }
inline TermPtr diff_set_term(LSet c) { return std::make_shared<const Term>(Term{term::DiffSet{std::move(c)}}); }
inline TermPtr rotate_term(std::size_t shift) { return std::make_shared<const Term>(Term{term::Rotate{shift}}); }
inline TermPtr compose_term(TermPtr outer, TermPtr inner) {
  return std::make_shared<const Term>(Term{term::Compose{std::move(outer), std::move(inner)}});
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

/// Evaluates the lower adjoint straight from the term.
inline LSet apply_lower(const Term& t, const ResiduatedChain& chain, const LSet& a) {
  return std::visit(
      overloaded{
          [&](const term::Identity&) { return a; },
          [&](const term::ConstMult& m) { return c_mult(chain, m.c, a); },
          [&](const term::ConstMultSet& m) {
            detail::check_same(m.c, a);
            LSet r(a.size());
            for (std::size_t y = 0; y < a.size(); ++y) r[y] = chain.tnorm(m.c[y], a[y]);
            return r;
          },
          [&](const term::DiffSet& m) {
            detail::check_same(m.c, a);
            LSet r(a.size());
            for (std::size_t y = 0; y < a.size(); ++y) r[y] = chain.dual_diff(a[y], m.c[y]);
            return r;
          },
          [&](const term::Rotate& m) {
            const std::size_t n = a.size();
            LSet r(n);
            for (std::size_t y = 0; y < n; ++y) r[y] = a[(y + m.shift) % n];
            return r;
          },
          [&](const term::Compose& m) { return apply_lower(*m.outer, chain, apply_lower(*m.inner, chain, a)); },
          [&](const term::Custom& m) { return m.lower(a); },
      },
      t.node);
}

/// Evaluates the upper adjoint straight from the term.
inline LSet apply_upper(const Term& t, const ResiduatedChain& chain, const LSet& b) {
  return std::visit(
      overloaded{
          [&](const term::Identity&) { return b; },
          [&](const term::ConstMult& m) { return c_shift(chain, m.c, b); },
          [&](const term::ConstMultSet& m) {
            detail::check_same(m.c, b);
            LSet r(b.size());
            for (std::size_t y = 0; y < b.size(); ++y) r[y] = chain.residuum(m.c[y], b[y]);
            return r;
          },
          [&](const term::DiffSet& m) {
            detail::check_same(m.c, b);
            LSet r(b.size());
            for (std::size_t y = 0; y < b.size(); ++y) r[y] = chain.dual_add(m.c[y], b[y]);
            return r;
          },
          [&](const term::Rotate& m) {
            const std::size_t n = b.size();
            LSet r(n);
            for (std::size_t y = 0; y < n; ++y) r[y] = b[(y + n - m.shift % n) % n];
            return r;
          },
          [&](const term::Compose& m) { return apply_upper(*m.inner, chain, apply_upper(*m.outer, chain, b)); },
          [&](const term::Custom& m) { return m.upper(b); },
      },
      t.node);
}

/// Human-readable form, e.g. `compose(rotate(2), diff-set(k, 0.5/a))`.
inline std::string describe(const Term& t, const Universe& u, const ResiduatedChain& chain) {
  return std::visit(overloaded{
                        [&](const term::Identity&) -> std::string { return "identity"; },
                        [&](const term::ConstMult& m) { return "const-mult(" + chain.format(m.c) + ")"; },
                        [&](const term::ConstMultSet& m) { return "const-mult-set(" + render_lset(m.c, u, chain) + ")"; },
                        [&](const term::DiffSet& m) { return "diff-set(" + render_lset(m.c, u, chain) + ")"; },
                        [&](const term::Rotate& m) { return "rotate(" + std::to_string(m.shift) + ")"; },
                        [&](const term::Compose& m) {
                          return "compose(" + describe(*m.outer, u, chain) + ", " + describe(*m.inner, u, chain) + ")";
                        },
                        [&](const term::Custom& m) { return "custom(" + m.name + ")"; },
                    },
                    t.node);
}

/// Exhaustive check that <lower, upper> is an isotone Galois connection:
/// both maps monotone (checked on covering pairs), A subseteq g(f(A)) and
/// f(g(B)) subseteq B for all A, B. Together these are equivalent to
/// f(A) subseteq B iff A subseteq g(B).
/// Throws Errc::cap_exceeded if |L|^|Y| > cap, Errc::not_adjoint on failure.
inline void verify_adjoint(const SetMap& lower, const SetMap& upper, const ResiduatedChain& chain, std::size_t n,
                           std::size_t cap = 1'000'000) {
  auto fail = [&](const std::string& why, const LSet& at) {
    std::string s;
    for (Degree d : at) s += (s.empty() ? "" : ",") + chain.format(d);
    throw Error(Errc::not_adjoint, why + " at (" + s + ")");
  };
  for_each_lset(chain, n, cap, [&](const LSet& a) {
    LSet fa = lower(a), ga = upper(a);
    if (fa.size() != n || ga.size() != n) throw Error(Errc::universe_mismatch, "map changes the universe");
    if (!leq(a, upper(fa))) fail("A not contained in g(f(A))", a);
    if (!leq(lower(ga), a)) fail("f(g(B)) not contained in B", a);
    for (std::size_t y = 0; y < n; ++y) {
      if (a[y] == chain.top()) continue;
      LSet up = a;
      up[y] = Degree(a[y].index + 1u);
      if (!leq(fa, lower(up))) fail("lower map not monotone", a);
      if (!leq(ga, upper(up))) fail("upper map not monotone", a);
    }
  });
}

class Connection {
 public:
  /// Built-in generator families are adjoint by construction; no verification.
  static Connection make(TermPtr t, const ResiduatedChain& chain, std::size_t n) {
    if (const auto* d = std::get_if<term::DiffSet>(&t->node)) {
      if (!chain.symmetric())
        throw Error(Errc::chain_not_symmetric, "diff-set needs a chain closed under x -> 1 - x");
      detail::check_same(d->c, LSet(n));
    }
    if (const auto* m = std::get_if<term::ConstMultSet>(&t->node)) detail::check_same(m->c, LSet(n));
    Connection c(std::move(t), chain.size(), n);
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t a = 0; a < c.levels_; ++a)
        c.images_[y * c.levels_ + a] = apply_lower(*c.term_, chain, singleton(n, y, Degree(a)));
    c.finish();
    return c;
  }

  /// User-supplied pair; verified exhaustively (gated by `cap`) before use.
  static Connection custom(std::string name, SetMap lower, SetMap upper, const ResiduatedChain& chain,
                           std::size_t n, std::size_t cap = 1'000'000) {
    verify_adjoint(lower, upper, chain, n, cap);
    return make(std::make_shared<const Term>(Term{term::Custom{std::move(name), std::move(lower), std::move(upper)}}),
                chain, n);
  }

  /// <f1 f2, g2 g1>; the fingerprint is computed from the factors' fingerprints.
  friend Connection compose(const Connection& outer, const Connection& inner) {
    if (outer.n_ != inner.n_ || outer.levels_ != inner.levels_)
      throw Error(Errc::universe_mismatch, "composing connections over different spaces");
    Connection c(compose_term(outer.term_, inner.term_), outer.levels_, outer.n_);
    for (std::size_t i = 0; i < c.images_.size(); ++i) c.images_[i] = outer.lower(inner.images_[i]);
    c.finish();
    return c;
  }

  const TermPtr& term() const noexcept { return term_; }
  std::size_t attributes() const noexcept { return n_; }

  /// f({a/y})
  const LSet& image(std::size_t y, Degree a) const { return images_[y * levels_ + a.index]; }

  /// Lower adjoint via fingerprint decomposition.
  LSet lower(const LSet& a) const {
    if (a.size() != n_) throw Error(Errc::universe_mismatch, "L-set does not match the connection");
    LSet r(n_);
    for (std::size_t y = 0; y < n_; ++y) {
      const LSet& im = images_[y * levels_ + a[y].index];
      for (std::size_t z = 0; z < n_; ++z)
        if (r[z] < im[z]) r[z] = im[z];
    }
    return r;
  }

  /// Upper adjoint derived from the fingerprint: g(B)(y) = max{a : f({a/y}) subseteq B}.
  LSet upper(const LSet& b) const {
    if (b.size() != n_) throw Error(Errc::universe_mismatch, "L-set does not match the connection");
    LSet r(n_);
    for (std::size_t y = 0; y < n_; ++y) {
      std::size_t a = levels_;
      while (a-- > 1)
        if (leq(images_[y * levels_ + a], b)) break;
      r[y] = Degree(a);
    }
    return r;
  }

  /// f(M) subseteq M for every M.
  bool intensive() const {
    for (std::size_t y = 0; y < n_; ++y)
      for (std::size_t a = 0; a < levels_; ++a)
        if (!leq(images_[y * levels_ + a], singleton(n_, y, Degree(a)))) return false;
    return true;
  }

  bool is_identity() const {
    for (std::size_t y = 0; y < n_; ++y)
      for (std::size_t a = 0; a < levels_; ++a)
        if (images_[y * levels_ + a] != singleton(n_, y, Degree(a))) return false;
    return true;
  }

  std::uint64_t fingerprint_hash() const noexcept { return hash_; }

  /// Extensional equality.
  bool same_map(const Connection& o) const { return hash_ == o.hash_ && images_ == o.images_; }

 private:
  Connection(TermPtr t, std::size_t levels, std::size_t n)
      : term_(std::move(t)), n_(n), levels_(levels), images_(n * levels) {}

  void finish() {
    std::uint64_t h = 1469598103934665603ull;
    for (const LSet& im : images_)
      for (Degree d : im) h = (h ^ d.index) * 1099511628211ull;
    hash_ = h;
  }

  TermPtr term_;
  std::size_t n_ = 0;
  std::size_t levels_ = 0;
  std::vector<LSet> images_;
  std::uint64_t hash_ = 0;
};

/// A finite set S of connections containing the identity (at index 0),
/// deduplicated by fingerprint. Built by generate_monoid, from_hedge, or
/// trivial_parameterization.
class Parameterization {
 public:
  std::size_t size() const noexcept { return conns_.size(); }
  const Connection& operator[](std::size_t i) const { return conns_.at(i); }
  auto begin() const noexcept { return conns_.begin(); }
  auto end() const noexcept { return conns_.end(); }

  const ResiduatedChain& chain() const noexcept { return *chain_; }
  const std::shared_ptr<const ResiduatedChain>& chain_ptr() const noexcept { return chain_; }
  const Universe& universe() const noexcept { return *universe_; }
  const std::shared_ptr<const Universe>& universe_ptr() const noexcept { return universe_; }
  std::size_t attributes() const noexcept { return universe_->size(); }

  std::optional<std::size_t> find(const Connection& c) const {
    auto it = by_hash_.find(c.fingerprint_hash());
    if (it == by_hash_.end()) return std::nullopt;
    for (std::size_t i : it->second)
      if (conns_[i].same_map(c)) return i;
    return std::nullopt;
  }

  /// Index of members[outer] o members[inner], if it is in S.
  std::optional<std::size_t> compose_index(std::size_t outer, std::size_t inner) const {
    return find(compose(conns_.at(outer), conns_.at(inner)));
  }

  /// Closed under composition (always true for generate_monoid output).
  bool closed() const {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (!compose_index(i, j)) return false;
    return true;
  }

  /// Every lower adjoint is intensive (hypothesis of the deduction theorem).
  bool intensive() const {
    for (const auto& c : conns_)
      if (!c.intensive()) return false;
    return true;
  }

  /// Appends `c` unless an extensionally equal member exists; returns its index.
  std::size_t insert(Connection c) {
    if (auto i = find(c)) return *i;
    by_hash_[c.fingerprint_hash()].push_back(conns_.size());
    conns_.push_back(std::move(c));
    return conns_.size() - 1;
  }

  Parameterization(std::shared_ptr<const ResiduatedChain> chain, std::shared_ptr<const Universe> universe)
      : chain_(std::move(chain)), universe_(std::move(universe)) {
    insert(Connection::make(identity_term(), *chain_, universe_->size()));
  }

 private:
  std::shared_ptr<const ResiduatedChain> chain_;
  std::shared_ptr<const Universe> universe_;
  std::vector<Connection> conns_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_hash_;
};

inline Parameterization trivial_parameterization(std::shared_ptr<const ResiduatedChain> chain,
                                                 std::shared_ptr<const Universe> universe) {
  return Parameterization(std::move(chain), std::move(universe));
}

/// Least monoid containing `generators`: breadth-first closure under right
/// multiplication by generators with fingerprint dedup.
/// Throws Errc::cap_exceeded if |S| would exceed `cap`.
inline Parameterization generate_monoid(std::shared_ptr<const ResiduatedChain> chain,
                                        std::shared_ptr<const Universe> universe,
                                        const std::vector<Connection>& generators, std::size_t cap = 4096) {
  Parameterization s(std::move(chain), std::move(universe));
  std::vector<std::size_t> gens;
  auto add = [&](Connection c) -> std::optional<std::size_t> {
    if (s.find(c)) return std::nullopt;
    if (s.size() + 1 > cap)
      throw Error(Errc::cap_exceeded, "monoid has more than " + std::to_string(cap) + " connections");
    return s.insert(std::move(c));
  };
  std::deque<std::size_t> queue;
  for (const auto& g : generators) {
    if (g.attributes() != s.attributes()) throw Error(Errc::universe_mismatch, "generator over another universe");
    auto idx = s.find(g);
    if (!idx) {
      idx = add(g);
      queue.push_back(*idx);
    }
    gens.push_back(*idx);
  }
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t g : gens)
      if (auto idx = add(compose(s[x], s[g]))) queue.push_back(*idx);
  }
  return s;
}

/// Parameterization induced by a hedge: { <c* (x) ., c* -> .> : c in L }.
/// With `drop_vacuous` the constant-0 map (c* = 0) is left out; that set is
/// then not composition-closed in general but has the same models.
inline Parameterization from_hedge(std::shared_ptr<const ResiduatedChain> chain,
                                   std::shared_ptr<const Universe> universe, const Hedge& hedge,
                                   bool drop_vacuous = false) {
  Parameterization s(chain, universe);
  for (Degree c : hedge.fixed_points()) {
    if (drop_vacuous && c == chain->bottom()) continue;
    s.insert(Connection::make(const_mult_term(c), *chain, universe->size()));
  }
  return s;
}

}  // namespace fai

#endif  // FAI_GCONN_HPP
