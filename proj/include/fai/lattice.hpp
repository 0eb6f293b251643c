#ifndef FAI_LATTICE_HPP
#define FAI_LATTICE_HPP

// Finite residuated chains of truth degrees.
//
// A degree is an index into a strictly increasing list of rationals in [0,1]
// starting at 0 and ending at 1. The t-norm, its residuum and (when the chain
// is symmetric under x -> 1-x) the dual addition/difference are tabulated at
// construction so that every operation is a table lookup.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace fai {

/// Position of a degree in its chain. 0 is the bottom.
struct Degree {
  std::uint16_t index = 0;

  constexpr Degree() = default;
  constexpr explicit Degree(std::size_t i) : index(static_cast<std::uint16_t>(i)) {}

  friend constexpr bool operator==(Degree, Degree) = default;
  friend constexpr auto operator<=>(Degree, Degree) = default;
};

enum class Logic { godel, lukasiewicz, goguen };

inline const char* logic_name(Logic l) {
  switch (l) {
    case Logic::godel: return "godel";
    case Logic::lukasiewicz: return "lukasiewicz";
    case Logic::goguen: return "goguen";
  }
  return "?";
}

inline Logic parse_logic(std::string_view s) {
  if (s == "godel" || s == "goedel" || s == "minimum") return Logic::godel;
  if (s == "lukasiewicz") return Logic::lukasiewicz;
  if (s == "goguen" || s == "product") return Logic::goguen;
  throw Error(Errc::parse, "unknown logic '" + std::string(s) + "'");
}

namespace detail {

inline Rational tnorm_value(Logic logic, const Rational& a, const Rational& b) {
  switch (logic) {
    case Logic::godel: return std::min(a, b);
    case Logic::lukasiewicz: return std::max(a + b - Rational(1), Rational(0));
    case Logic::goguen: return a * b;
  }
  return a;
}

inline Rational residuum_value(Logic logic, const Rational& a, const Rational& b) {
  if (a <= b) return Rational(1);
  switch (logic) {
    case Logic::godel: return b;
    case Logic::lukasiewicz: return std::min(Rational(1) - a + b, Rational(1));
    case Logic::goguen: return b / a;
  }
  return b;
}

inline std::optional<std::size_t> find_value(const std::vector<Rational>& values, const Rational& v) {
  auto it = std::lower_bound(values.begin(), values.end(), v);
  if (it == values.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - values.begin());
}

}  // namespace detail

/// Checks that `degrees` is a valid carrier for `logic`: at least two
/// strictly increasing values from 0 to 1, closed under the t-norm and the
/// residuum. Throws Errc::chain_invalid or Errc::chain_not_closed.
inline void validate_chain(const std::vector<Rational>& degrees, Logic logic) {
  if (degrees.size() < 2) throw Error(Errc::chain_invalid, "a chain needs at least two degrees");
  if (degrees.size() > 4096) throw Error(Errc::chain_invalid, "chain too large");
  if (degrees.front() != Rational(0) || degrees.back() != Rational(1))
    throw Error(Errc::chain_invalid, "a chain must start at 0 and end at 1");
  for (std::size_t i = 1; i < degrees.size(); ++i)
    if (!(degrees[i - 1] < degrees[i]))
      throw Error(Errc::chain_invalid, "degrees must be strictly increasing");
  for (const auto& a : degrees)
    for (const auto& b : degrees) {
      if (!detail::find_value(degrees, detail::tnorm_value(logic, a, b)))
        throw Error(Errc::chain_not_closed, std::string(logic_name(logic)) + " product " + a.to_string() +
                                                " * " + b.to_string() + " leaves the chain");
      if (!detail::find_value(degrees, detail::residuum_value(logic, a, b)))
        throw Error(Errc::chain_not_closed, std::string(logic_name(logic)) + " residuum " + a.to_string() +
                                                " -> " + b.to_string() + " leaves the chain");
    }
}

class ResiduatedChain {
 public:
  ResiduatedChain(std::vector<Rational> degrees, Logic logic) : values_(std::move(degrees)), logic_(logic) {
    validate_chain(values_, logic_);
    const std::size_t n = values_.size();
    mul_.resize(n * n);
    res_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        mul_[i * n + j] = Degree(*detail::find_value(values_, detail::tnorm_value(logic_, values_[i], values_[j])));
        res_[i * n + j] = Degree(*detail::find_value(values_, detail::residuum_value(logic_, values_[i], values_[j])));
      }
    build_dual();
  }

  /// Evenly spaced chain {0, 1/(n-1), ..., 1}.
  static ResiduatedChain uniform(std::size_t n, Logic logic) {
    std::vector<Rational> v;
    for (std::size_t i = 0; i < n; ++i)
      v.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(n - 1));
    return ResiduatedChain(std::move(v), logic);
  }

  std::size_t size() const noexcept { return values_.size(); }
  Logic logic() const noexcept { return logic_; }
  const std::vector<Rational>& values() const noexcept { return values_; }
  const Rational& value(Degree d) const { return values_.at(d.index); }

  Degree bottom() const noexcept { return Degree(0); }
  Degree top() const noexcept { return Degree(values_.size() - 1); }

  Degree tnorm(Degree a, Degree b) const { return mul_[a.index * size() + b.index]; }
  Degree residuum(Degree a, Degree b) const { return res_[a.index * size() + b.index]; }
  static Degree meet(Degree a, Degree b) noexcept { return std::min(a, b); }
  static Degree join(Degree a, Degree b) noexcept { return std::max(a, b); }

  bool symmetric() const noexcept { return !add_.empty(); }

  /// a (+) b = 1 - ((1-a) * (1-b)). Throws Errc::chain_not_symmetric.
  Degree dual_add(Degree a, Degree b) const {
    require_dual();
    return add_[a.index * size() + b.index];
  }
  /// a (-) b = 1 - ((1-b) -> (1-a)). Throws Errc::chain_not_symmetric.
  Degree dual_diff(Degree a, Degree b) const {
    require_dual();
    return diff_[a.index * size() + b.index];
  }

  std::optional<Degree> find(const Rational& v) const {
    if (auto i = detail::find_value(values_, v)) return Degree(*i);
    return std::nullopt;
  }

  /// Exact lookup; no rounding. Throws Errc::not_in_chain or Errc::parse.
  Degree parse(std::string_view text) const {
    Rational r = parse_rational(text);
    if (auto d = find(r)) return *d;
    throw Error(Errc::not_in_chain, "degree " + std::string(detail::trim(text)) + " is not a member of the chain");
  }

  std::string format(Degree d) const { return value(d).to_string(); }

  friend bool operator==(const ResiduatedChain& a, const ResiduatedChain& b) {
    return a.logic_ == b.logic_ && a.values_ == b.values_;
  }

 private:
  void require_dual() const {
    if (add_.empty())
      throw Error(Errc::chain_not_symmetric, "chain is not closed under x -> 1 - x; no dual operations");
  }

  void build_dual() {
    const std::size_t n = size();
    std::vector<std::size_t> neg(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto j = detail::find_value(values_, Rational(1) - values_[i]);
      if (!j) return;
      neg[i] = *j;
    }
    add_.resize(n * n);
    diff_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        add_[a * n + b] = Degree(neg[mul_[neg[a] * n + neg[b]].index]);
        diff_[a * n + b] = Degree(neg[res_[neg[b] * n + neg[a]].index]);
      }
  }

  std::vector<Rational> values_;
  Logic logic_;
  std::vector<Degree> mul_, res_, add_, diff_;
};

/// Checks the laws of an addition/difference pair on a symmetric chain:
/// commutative, associative, neutral 0, and a (-) b <= c iff a <= b (+) c.
/// Throws Errc::chain_not_symmetric or Errc::chain_invalid.
inline void validate_dual(const ResiduatedChain& chain) {
  const std::size_t n = chain.size();
  for (std::size_t i = 0; i < n; ++i) {
    Degree a(i);
    if (chain.dual_add(a, chain.bottom()) != a) throw Error(Errc::chain_invalid, "0 is not neutral for (+)");
    for (std::size_t j = 0; j < n; ++j) {
      Degree b(j);
      if (chain.dual_add(a, b) != chain.dual_add(b, a)) throw Error(Errc::chain_invalid, "(+) not commutative");
      for (std::size_t k = 0; k < n; ++k) {
        Degree c(k);
        if (chain.dual_add(chain.dual_add(a, b), c) != chain.dual_add(a, chain.dual_add(b, c)))
          throw Error(Errc::chain_invalid, "(+) not associative");
        if ((chain.dual_diff(a, b) <= c) != (a <= chain.dual_add(b, c)))
          throw Error(Errc::chain_invalid, "(+)/(-) not adjoint");
      }
    }
  }
}

/// Idempotent truth-stressing hedge given by its fixed points F:
/// a* = max{ b in F : b <= a }.
class Hedge {
 public:
  /// Throws Errc::invalid_hedge when F misses 0 or 1, or when
  /// (a -> b)* <= a* -> b* fails somewhere on the chain.
  Hedge(const ResiduatedChain& chain, std::vector<Degree> fixed_points) {
    std::sort(fixed_points.begin(), fixed_points.end());
    fixed_points.erase(std::unique(fixed_points.begin(), fixed_points.end()), fixed_points.end());
    for (Degree d : fixed_points)
      if (d.index >= chain.size()) throw Error(Errc::invalid_hedge, "fixed point outside the chain");
    if (fixed_points.empty() || fixed_points.back() != chain.top())
      throw Error(Errc::invalid_hedge, "1 must be a fixed point");
    if (fixed_points.front() != chain.bottom())
      throw Error(Errc::invalid_hedge, "0 must be a fixed point (a* <= a forces 0* = 0)");
    table_.resize(chain.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      while (k + 1 < fixed_points.size() && fixed_points[k + 1].index <= i) ++k;
      table_[i] = fixed_points[k];
    }
    fixed_ = std::move(fixed_points);
    for (std::size_t i = 0; i < chain.size(); ++i)
      for (std::size_t j = 0; j < chain.size(); ++j) {
        Degree a(i), b(j);
        if (!(apply(chain.residuum(a, b)) <= chain.residuum(apply(a), apply(b))))
          throw Error(Errc::invalid_hedge, "(a -> b)* <= a* -> b* fails for a=" + chain.format(a) +
                                               ", b=" + chain.format(b));
      }
  }

  static Hedge globalization(const ResiduatedChain& chain) { return Hedge(chain, {chain.bottom(), chain.top()}); }

  static Hedge identity(const ResiduatedChain& chain) {
    std::vector<Degree> all;
    for (std::size_t i = 0; i < chain.size(); ++i) all.emplace_back(i);
    return Hedge(chain, std::move(all));
  }

  Degree apply(Degree a) const { return table_.at(a.index); }
  const std::vector<Degree>& fixed_points() const noexcept { return fixed_; }

 private:
  std::vector<Degree> table_;
  std::vector<Degree> fixed_;
};

}  // namespace fai

#endif  // FAI_LATTICE_HPP
