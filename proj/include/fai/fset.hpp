#ifndef FAI_FSET_HPP
#define FAI_FSET_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "lattice.hpp"

namespace fai {

/// Ordered attribute names. The order drives lectic order and rotations.
class Universe {
 public:
  explicit Universe(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw Error(Errc::parse, "attribute universe must not be empty");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      const auto& n = names_[i];
      if (n.empty() || n.find_first_of(",/{} \t") != std::string::npos || n == "0_Y")
        throw Error(Errc::parse, "invalid attribute name '" + n + "'");
      if (!index_.emplace(n, i).second) throw Error(Errc::parse, "duplicate attribute '" + n + "'");
    }
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const Universe& a, const Universe& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Dense fuzzy set: one degree per attribute position.
/// Comparison operators order sets lectically (first attribute most significant).
class LSet {
 public:
  LSet() = default;
  explicit LSet(std::size_t n) : d_(n) {}
  explicit LSet(std::vector<Degree> d) : d_(std::move(d)) {}

  std::size_t size() const noexcept { return d_.size(); }
  Degree operator[](std::size_t y) const { return d_[y]; }
  Degree& operator[](std::size_t y) { return d_[y]; }
  auto begin() const noexcept { return d_.begin(); }
  auto end() const noexcept { return d_.end(); }
  const std::vector<Degree>& degrees() const noexcept { return d_; }

  friend bool operator==(const LSet&, const LSet&) = default;
  friend auto operator<=>(const LSet&, const LSet&) = default;

 private:
  std::vector<Degree> d_;
};

struct LSetHash {
  std::size_t operator()(const LSet& s) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Degree d : s) h = (h ^ d.index) * 1099511628211ull;
    return h;
  }
};

namespace detail {
inline void check_same(const LSet& a, const LSet& b) {
  if (a.size() != b.size())
    throw Error(Errc::universe_mismatch, "L-sets over universes of size " + std::to_string(a.size()) + " and " +
                                             std::to_string(b.size()));
}
}  // namespace detail

inline LSet empty_set(std::size_t n) { return LSet(n); }

inline LSet constant_set(std::size_t n, Degree c) { return LSet(std::vector<Degree>(n, c)); }

inline LSet full_set(const ResiduatedChain& chain, std::size_t n) { return constant_set(n, chain.top()); }

inline LSet singleton(std::size_t n, std::size_t y, Degree a) {
  LSet s(n);
  s[y] = a;
  return s;
}

/// A(y) <= B(y) for every y.
inline bool leq(const LSet& a, const LSet& b) {
  detail::check_same(a, b);
  for (std::size_t y = 0; y < a.size(); ++y)
    if (b[y] < a[y]) return false;
  return true;
}

/// Strict containment.
inline bool lt(const LSet& a, const LSet& b) { return a != b && leq(a, b); }

/// Graded subsethood: min over y of A(y) -> B(y).
inline Degree subsethood(const ResiduatedChain& chain, const LSet& a, const LSet& b) {
  detail::check_same(a, b);
  Degree r = chain.top();
  for (std::size_t y = 0; y < a.size(); ++y) r = std::min(r, chain.residuum(a[y], b[y]));
  return r;
}

inline LSet unite(const LSet& a, const LSet& b) {
  detail::check_same(a, b);
  LSet r(a.size());
  for (std::size_t y = 0; y < a.size(); ++y) r[y] = std::max(a[y], b[y]);
  return r;
}

inline LSet intersect(const LSet& a, const LSet& b) {
  detail::check_same(a, b);
  LSet r(a.size());
  for (std::size_t y = 0; y < a.size(); ++y) r[y] = std::min(a[y], b[y]);
  return r;
}

/// c-multiple: (c * A)(y) = c * A(y).
inline LSet c_mult(const ResiduatedChain& chain, Degree c, const LSet& a) {
  LSet r(a.size());
  for (std::size_t y = 0; y < a.size(); ++y) r[y] = chain.tnorm(c, a[y]);
  return r;
}

/// c-shift: (c -> A)(y) = c -> A(y).
inline LSet c_shift(const ResiduatedChain& chain, Degree c, const LSet& a) {
  LSet r(a.size());
  for (std::size_t y = 0; y < a.size(); ++y) r[y] = chain.residuum(c, a[y]);
  return r;
}

/// Sum of degree indices; strictly increases along strict containment.
inline std::size_t degree_sum(const LSet& a) {
  std::size_t s = 0;
  for (Degree d : a) s += d.index;
  return s;
}

/// Advances `a` to its lectic successor in L^Y (last attribute least
/// significant). Returns false after the top set 1_Y.
inline bool next_lectic(LSet& a, Degree top) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] < top) {
      a[i] = Degree(a[i].index + 1u);
      return true;
    }
    a[i] = Degree(0);
  }
  return false;
}

/// |L|^|Y|, saturating at SIZE_MAX.
inline std::size_t space_size(std::size_t chain_size, std::size_t n) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (r > SIZE_MAX / chain_size) return SIZE_MAX;
    r *= chain_size;
  }
  return r;
}

/// Visits every L-set in lectic order. Throws Errc::cap_exceeded if |L|^|Y| > cap.
inline void for_each_lset(const ResiduatedChain& chain, std::size_t n, std::size_t cap,
                          const std::function<void(const LSet&)>& fn) {
  if (space_size(chain.size(), n) > cap)
    throw Error(Errc::cap_exceeded, "|L|^|Y| = " + std::to_string(chain.size()) + "^" + std::to_string(n) +
                                        " exceeds cap " + std::to_string(cap));
  LSet a(n);
  do {
    fn(a);
  } while (next_lectic(a, chain.top()));
}

/// Renders `{A(y)/y, ...}` without braces, omitting 0 entries and writing
/// bare names for degree 1. The empty set renders as `{}`.
inline std::string render_lset(const LSet& a, const Universe& u, const ResiduatedChain& chain) {
  if (a.size() != u.size()) throw Error(Errc::universe_mismatch, "L-set does not match the universe");
  std::string out;
  for (std::size_t y = 0; y < a.size(); ++y) {
    if (a[y] == chain.bottom()) continue;
    if (!out.empty()) out += ", ";
    if (a[y] != chain.top()) out += chain.format(a[y]) + "/";
    out += u.name(y);
  }
  return out.empty() ? "{}" : out;
}

/// Parses the literal grammar: comma-separated `<decimal>/<attr>` or `<attr>`,
/// optionally wrapped in braces. Empty text, `{}` and `0_Y` denote the empty set.
/// Degrees must be chain members; repeated attributes are rejected.
inline LSet parse_lset(std::string_view text, const Universe& u, const ResiduatedChain& chain) {
  std::string_view s = detail::trim(text);
  if (!s.empty() && s.front() == '{') {
    if (s.back() != '}') throw Error(Errc::parse, "unbalanced braces in '" + std::string(text) + "'");
    s = detail::trim(s.substr(1, s.size() - 2));
  }
  LSet out(u.size());
  if (s.empty() || s == "0_Y") return out;
  std::vector<bool> seen(u.size(), false);
  while (true) {
    auto comma = s.find(',');
    std::string_view item = detail::trim(s.substr(0, comma));
    if (item.empty()) throw Error(Errc::parse, "empty item in '" + std::string(text) + "'");
    std::string_view name = item;
    Degree deg = chain.top();
    if (auto slash = item.rfind('/'); slash != std::string_view::npos) {
      name = detail::trim(item.substr(slash + 1));
      deg = chain.parse(item.substr(0, slash));
    }
    auto y = u.index_of(name);
    if (!y) throw Error(Errc::parse, "unknown attribute '" + std::string(name) + "'");
    if (seen[*y]) throw Error(Errc::parse, "attribute '" + std::string(name) + "' given twice");
    seen[*y] = true;
    out[*y] = deg;
    if (comma == std::string_view::npos) break;
    s = s.substr(comma + 1);
  }
  return out;
}

}  // namespace fai

#endif  // FAI_FSET_HPP
