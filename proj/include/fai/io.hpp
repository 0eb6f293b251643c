#ifndef FAI_IO_HPP
#define FAI_IO_HPP

// File formats: parameterization JSON, context CSV, theory text, proof JSON.

#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "context.hpp"
#include "error.hpp"
#include "fset.hpp"
#include "gconn.hpp"
#include "lattice.hpp"
#include "proof.hpp"
#include "semantics.hpp"

namespace fai {

using json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Rational json_degree(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_number()) return rational_from_double(v.get<double>());
  throw Error(Errc::parse, "degree must be a number or a string, got " + v.dump());
}

inline Degree json_chain_degree(const json& v, const ResiduatedChain& chain) {
  Rational r = json_degree(v);
  if (auto d = chain.find(r)) return *d;
  throw Error(Errc::not_in_chain, "degree " + r.to_string() + " is not a member of the chain");
}

// ---------------------------------------------------------------------------
// Generator descriptors

inline std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline json term_descriptor(const Term& t, const Universe& u, const ResiduatedChain& chain) {
  return std::visit(overloaded{
                        [&](const term::Identity&) { return json{{"kind", "identity"}}; },
                        [&](const term::ConstMult& m) { return json{{"kind", "const-mult"}, {"c", chain.format(m.c)}}; },
                        [&](const term::ConstMultSet& m) {
                          return json{{"kind", "const-mult-set"}, {"C", render_lset(m.c, u, chain)}};
                        },
                        [&](const term::DiffSet& m) { return json{{"kind", "diff-set"}, {"C", render_lset(m.c, u, chain)}}; },
                        [&](const term::Rotate& m) { return json{{"kind", "rotate"}, {"shift", m.shift}}; },
                        [&](const term::Compose& m) {
                          return json{{"kind", "compose"},
                                      {"of", {term_descriptor(*m.outer, u, chain), term_descriptor(*m.inner, u, chain)}}};
                        },
                        [&](const term::Custom& m) -> json {
                          throw Error(Errc::unknown_connection, "custom connection '" + m.name + "' has no descriptor");
                        },
                    },
                    t.node);
}

inline json connection_descriptor(const Connection& c, const Universe& u, const ResiduatedChain& chain) {
  json d = term_descriptor(*c.term(), u, chain);
  d["hash"] = hash_hex(c.fingerprint_hash());
  return d;
}

/// Connections a descriptor stands for; `hedge` yields one per fixed point.
inline std::vector<Connection> connections_from_descriptor(const json& d, const ResiduatedChain& chain,
                                                           const Universe& u) {
  if (!d.is_object() || !d.contains("kind")) throw Error(Errc::parse, "generator descriptor needs a \"kind\": " + d.dump());
  const std::string kind = d.at("kind").get<std::string>();
  const std::size_t n = u.size();
  auto one = [&](TermPtr t) { return std::vector<Connection>{Connection::make(std::move(t), chain, n)}; };
  if (kind == "identity") return one(identity_term());
  if (kind == "const-mult") return one(const_mult_term(json_chain_degree(d.at("c"), chain)));
  if (kind == "const-mult-set") return one(const_mult_set_term(parse_lset(d.at("C").get<std::string>(), u, chain)));
  if (kind == "diff-set") return one(diff_set_term(parse_lset(d.at("C").get<std::string>(), u, chain)));
  if (kind == "rotate") {
    auto shift = d.at("shift").get<std::int64_t>();
    auto m = static_cast<std::int64_t>(n);
    return one(rotate_term(static_cast<std::size_t>(((shift % m) + m) % m)));
  }
  if (kind == "hedge") {
    std::vector<Degree> fixed;
    for (const auto& v : d.at("fixed_points")) fixed.push_back(json_chain_degree(v, chain));
    Hedge h(chain, fixed);
    std::vector<Connection> out;
    for (Degree c : h.fixed_points()) out.push_back(Connection::make(const_mult_term(c), chain, n));
    return out;
  }
  if (kind == "compose") {
    const auto& of = d.at("of");
    if (!of.is_array() || of.empty()) throw Error(Errc::parse, "compose needs a non-empty \"of\" list");
    std::vector<Connection> parts;
    for (const auto& sub : of) {
      auto cs = connections_from_descriptor(sub, chain, u);
      if (cs.size() != 1) throw Error(Errc::parse, "compose parts must denote single connections");
      parts.push_back(std::move(cs.front()));
    }
    Connection acc = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;) acc = compose(parts[i], acc);
    return {acc};
  }
  throw Error(Errc::parse, "unknown generator kind '" + kind + "'");
}

inline Connection connection_from_descriptor(const json& d, const ResiduatedChain& chain, const Universe& u) {
  auto cs = connections_from_descriptor(d, chain, u);
  if (cs.size() != 1) throw Error(Errc::parse, "descriptor denotes more than one connection: " + d.dump());
  if (d.contains("hash") && d.at("hash").get<std::string>() != hash_hex(cs.front().fingerprint_hash()))
    throw Error(Errc::unknown_connection, "fingerprint hash does not match descriptor " + d.dump());
  return cs.front();
}

// ---------------------------------------------------------------------------
// Parameterization file

struct Caps {
  std::size_t monoid = 4096;
  std::size_t enumeration = 1'000'000;
  std::size_t verification = 1'000'000;
};

struct Config {
  std::shared_ptr<const ResiduatedChain> chain;
  std::shared_ptr<const Universe> universe;
  Caps caps;
  bool drop_vacuous = false;
  Parameterization params;
};

/// S without the constant-0 map.
inline Parameterization drop_vacuous_members(const Parameterization& s) {
  Parameterization out(s.chain_ptr(), s.universe_ptr());
  const LSet zero = empty_set(s.attributes());
  for (const auto& c : s) {
    bool vacuous = true;
    for (std::size_t y = 0; y < s.attributes() && vacuous; ++y) vacuous = c.image(y, s.chain().top()) == zero;
    if (!vacuous) out.insert(c);
  }
  return out;
}

/// {"chain":{"degrees":[...],"logic":"godel"},"attributes":[...],
///  "generators":[...],"caps":{...},"drop_vacuous":false}
inline Config parse_config(const json& j) {
  const auto& cj = j.at("chain");
  std::vector<Rational> degrees;
  for (const auto& v : cj.at("degrees")) degrees.push_back(json_degree(v));
  auto chain = std::make_shared<const ResiduatedChain>(std::move(degrees), parse_logic(cj.value("logic", "godel")));
  auto universe = std::make_shared<const Universe>(j.at("attributes").get<std::vector<std::string>>());
  Caps caps;
  if (j.contains("caps")) {
    const auto& k = j.at("caps");
    caps.monoid = k.value("monoid", caps.monoid);
    caps.enumeration = k.value("enumeration", caps.enumeration);
    caps.verification = k.value("verification", caps.verification);
    if (!caps.monoid || !caps.enumeration || !caps.verification) throw Error(Errc::parse, "caps must be positive");
  }
  std::vector<Connection> gens;
  for (const auto& d : j.value("generators", json::array()))
    for (auto& c : connections_from_descriptor(d, *chain, *universe)) gens.push_back(std::move(c));
  Parameterization s = generate_monoid(chain, universe, gens, caps.monoid);
  bool drop = j.value("drop_vacuous", false);
  if (drop) s = drop_vacuous_members(s);
  return Config{chain, universe, caps, drop, std::move(s)};
}

inline Config load_config(const std::string& path) {
  try {
    return parse_config(json::parse(read_file(path)));
  } catch (const json::exception& e) {
    throw Error(Errc::parse, path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Context CSV

namespace detail {
inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.emplace_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (quoted) throw Error(Errc::parse, "unterminated quote in CSV line");
  out.emplace_back(trim(cur));
  return out;
}
}  // namespace detail

/// Header `object,<attr>,...`; one row per object; cells must be chain members.
inline LContext parse_context_csv(const std::string& text, const ResiduatedChain& chain,
                                  const std::shared_ptr<const Universe>& universe) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  std::vector<std::string> objects;
  std::vector<LSet> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    auto cells = detail::split_csv_line(line);
    if (header.empty()) {
      header = cells;
      std::vector<std::string> attrs(header.begin() + 1, header.end());
      if (attrs != universe->names())
        throw Error(Errc::universe_mismatch, "context attributes do not match the parameterization");
      continue;
    }
    if (cells.size() != header.size())
      throw Error(Errc::parse, "line " + std::to_string(lineno) + ": expected " + std::to_string(header.size()) +
                                   " cells, got " + std::to_string(cells.size()));
    LSet row(universe->size());
    for (std::size_t y = 0; y < row.size(); ++y) {
      try {
        row[y] = chain.parse(cells[y + 1]);
      } catch (const Error& e) {
        throw Error(e.code(), "line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    objects.push_back(cells[0]);
    rows.push_back(std::move(row));
  }
  if (header.empty()) throw Error(Errc::parse, "empty context file");
  return LContext(std::move(objects), universe, std::move(rows));
}

inline LContext load_context(const std::string& path, const Config& cfg) {
  return parse_context_csv(read_file(path), *cfg.chain, cfg.universe);
}

// ---------------------------------------------------------------------------
// Theory text

inline Theory parse_theory(const std::string& text, const Universe& u, const ResiduatedChain& chain) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  Theory out;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (detail::trim(line).empty()) continue;
    try {
      out.push_back(parse_fai(line, u, chain));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

inline std::string format_theory(const Theory& sigma, const Universe& u, const ResiduatedChain& chain) {
  std::string out;
  for (const auto& r : sigma) out += render_fai(r, u, chain) + "\n";
  return out;
}

inline Theory load_theory(const std::string& path, const Config& cfg) {
  return parse_theory(read_file(path), *cfg.universe, *cfg.chain);
}

// ---------------------------------------------------------------------------
// Proof JSON: [{"formula": "ANT -> CONS", "by": ...}, ...]

inline Proof parse_proof(const json& j, const Parameterization& s) {
  const auto& u = s.universe();
  const auto& chain = s.chain();
  const json& arr = j.is_object() && j.contains("steps") ? j.at("steps") : j;
  if (!arr.is_array() || arr.empty()) throw ProofError(Errc::invalid_proof, 0, "a proof is a non-empty array of steps");
  Proof p;
  for (std::size_t k = 1; k <= arr.size(); ++k) {
    const json& sj = arr[k - 1];
    try {
      ProofStep st;
      st.formula = parse_fai(sj.at("formula").get<std::string>(), u, chain);
      const json& by = sj.at("by");
      auto ref = [&](const json& v) { return v.get<std::size_t>(); };
      auto opt_set = [&](const char* key) -> std::optional<LSet> {
        if (!by.contains(key)) return std::nullopt;
        return parse_lset(by.at(key).get<std::string>(), u, chain);
      };
      if (by.is_string() && by.get<std::string>() == "axiom") {
        st.rule = Rule::axiom;
      } else if (by.is_string() && by.get<std::string>() == "hyp") {
        st.rule = Rule::hyp;
      } else if (by.is_object() && by.contains("hyp")) {
        st.rule = Rule::hyp;
        st.i = ref(by.at("hyp"));
      } else if (by.is_object() && by.contains("cut")) {
        st.rule = Rule::cut;
        st.i = ref(by.at("cut").at(0));
        st.j = ref(by.at("cut").at(1));
        st.c = opt_set("C");
      } else if (by.is_object() && by.contains("applyF")) {
        st.rule = Rule::apply_f;
        st.i = ref(by.at("applyF"));
        st.conn = connection_from_descriptor(by.at("conn"), chain, u);
      } else if (by.is_object() && by.contains("cutF")) {
        st.rule = Rule::cut_f;
        st.i = ref(by.at("cutF").at(0));
        st.j = ref(by.at("cutF").at(1));
        st.conn = connection_from_descriptor(by.at("conn"), chain, u);
        st.b = opt_set("B");
        st.c = opt_set("C");
      } else {
        throw Error(Errc::parse, "unknown justification " + by.dump());
      }
      p.steps.push_back(std::move(st));
    } catch (const ProofError&) {
      throw;
    } catch (const Error& e) {
      throw ProofError(Errc::invalid_step, k, e.what());
    } catch (const json::exception& e) {
      throw ProofError(Errc::invalid_step, k, e.what());
    }
  }
  return p;
}

inline json proof_to_json(const Proof& p, const Parameterization& s) {
  const auto& u = s.universe();
  const auto& chain = s.chain();
  json arr = json::array();
  for (const auto& st : p.steps) {
    json by;
    switch (st.rule) {
      case Rule::axiom: by = "axiom"; break;
      case Rule::hyp: by = st.i ? json{{"hyp", st.i}} : json("hyp"); break;
      case Rule::cut:
        by = {{"cut", {st.i, st.j}}};
        if (st.c) by["C"] = render_lset(*st.c, u, chain);
        break;
      case Rule::apply_f:
        by = {{"applyF", st.i}, {"conn", connection_descriptor(*st.conn, u, chain)}};
        break;
      case Rule::cut_f:
        by = {{"cutF", {st.i, st.j}}, {"conn", connection_descriptor(*st.conn, u, chain)}};
        if (st.b) by["B"] = render_lset(*st.b, u, chain);
        if (st.c) by["C"] = render_lset(*st.c, u, chain);
        break;
    }
    arr.push_back({{"formula", render_fai(st.formula, u, chain)}, {"by", by}});
  }
  return arr;
}

inline Proof load_proof(const std::string& path, const Parameterization& s) {
  try {
    return parse_proof(json::parse(read_file(path)), s);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse, path + ": " + e.what());
  }
}

}  // namespace fai

#endif  // FAI_IO_HPP
