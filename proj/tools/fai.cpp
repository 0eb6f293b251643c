// fai: command-line front end.
//
// Exit codes: 0 success, 1 negative answer (not entailed, invalid proof,
// not provable), 2 usage error, 3 invalid input.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fai/fai.hpp"

namespace {

using fai::json;

struct Options {
  std::string params, context, theory, query, set, dot, proof, out;
  bool json = false, allow_cutf = false, minimize_sides = false, complete_only = false, list = false;
  std::size_t cap = 0;
};

struct Session {
  fai::Config cfg;
  std::size_t cap;

  const fai::Parameterization& s() const { return cfg.params; }
  const fai::Universe& u() const { return *cfg.universe; }
  const fai::ResiduatedChain& chain() const { return *cfg.chain; }
  std::string render(const fai::LSet& a) const { return fai::render_lset(a, u(), chain()); }
};

Session open_session(const Options& o) {
  Session ses{fai::load_config(o.params), 0};
  ses.cap = o.cap ? o.cap : ses.cfg.caps.enumeration;
  std::cerr << "|S| = " << ses.s().size() << "\n";
  if (!ses.s().intensive())
    std::cerr << "notice: S has non-intensive members; the deduction theorem does not apply\n";
  return ses;
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw CLI::RequiredError(flag);
}

void emit(const Options& o, const json& j, const std::string& text) {
  if (o.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw fai::Error(fai::Errc::parse, "cannot write '" + path + "'");
  f << content;
}

int cmd_closure(const Options& o) {
  require(o.set, "--set");
  Session ses = open_session(o);
  fai::Theory sigma = o.theory.empty() ? fai::Theory{} : fai::load_theory(o.theory, ses.cfg);
  fai::LSet m = fai::least_model(sigma, ses.s(), fai::parse_lset(o.set, ses.u(), ses.chain()));
  emit(o, {{"closure", ses.render(m)}}, ses.render(m) + "\n");
  return 0;
}

int cmd_entail(const Options& o) {
  require(o.query, "--query");
  Session ses = open_session(o);
  fai::Theory sigma = o.theory.empty() ? fai::Theory{} : fai::load_theory(o.theory, ses.cfg);
  fai::FAI q = fai::parse_fai(o.query, ses.u(), ses.chain());
  fai::Degree d = fai::entail_degree(sigma, q, ses.s());
  bool full = d == ses.chain().top();
  emit(o, {{"degree", ses.chain().format(d)}, {"entailed", full}}, ses.chain().format(d) + "\n");
  return full ? 0 : 1;
}

int cmd_base(const Options& o, bool complete_only) {
  require(o.context, "--context");
  Session ses = open_session(o);
  fai::LContext ctx = fai::load_context(o.context, ses.cfg);
  fai::ContextOperator op(ctx, ses.s());
  fai::Theory sigma = fai::complete_set(op, fai::ScanOrder::degree_sum, ses.cap);
  if (!complete_only) sigma = fai::reduce_to_base(sigma, op, ses.cap);
  if (o.minimize_sides) sigma = fai::minimize_sides(sigma, op, ses.cap);
  std::string body = fai::format_theory(sigma, ses.u(), ses.chain());
  json rules = json::array();
  for (const auto& r : sigma) rules.push_back(fai::render_fai(r, ses.u(), ses.chain()));
  std::string count = "# rules: " + std::to_string(sigma.size()) + "\n";
  if (!o.out.empty()) {
    write_file(o.out, count + body);
    emit(o, {{"count", sigma.size()}, {"out", o.out}}, count);
  } else {
    emit(o, {{"count", sigma.size()}, {"rules", rules}}, count + body);
  }
  return 0;
}

int cmd_intents(const Options& o) {
  require(o.context, "--context");
  Session ses = open_session(o);
  fai::LContext ctx = fai::load_context(o.context, ses.cfg);
  auto intents = fai::intents_enum(fai::ContextOperator(ctx, ses.s()), ses.cap);
  if (!o.dot.empty()) write_file(o.dot, fai::hasse_dot(intents, ses.u(), ses.chain()));
  json list = json::array();
  std::string text = "intents: " + std::to_string(intents.size()) + "\n";
  for (const auto& m : intents) {
    list.push_back(ses.render(m));
    if (o.list) text += ses.render(m) + "\n";
  }
  emit(o, {{"count", intents.size()}, {"intents", list}}, text);
  return 0;
}

int cmd_models(const Options& o) {
  Session ses = open_session(o);
  fai::Theory sigma = o.theory.empty() ? fai::Theory{} : fai::load_theory(o.theory, ses.cfg);
  auto models = fai::models_enum(sigma, ses.s(), ses.cap);
  json list = json::array();
  std::string text = "models: " + std::to_string(models.size()) + "\n";
  for (const auto& m : models) {
    list.push_back(ses.render(m));
    if (o.list) text += ses.render(m) + "\n";
  }
  emit(o, {{"count", models.size()}, {"models", list}}, text);
  return 0;
}

int cmd_check_proof(const Options& o) {
  require(o.proof, "--proof");
  Session ses = open_session(o);
  fai::Theory sigma = o.theory.empty() ? fai::Theory{} : fai::load_theory(o.theory, ses.cfg);
  std::optional<fai::FAI> goal;
  if (!o.query.empty()) goal = fai::parse_fai(o.query, ses.u(), ses.chain());
  try {
    fai::Proof p = fai::load_proof(o.proof, ses.s());
    fai::check_proof(sigma, ses.s(), p, goal, o.allow_cutf);
    emit(o, {{"valid", true}, {"steps", p.steps.size()}}, "ok\n");
    return 0;
  } catch (const fai::ProofError& e) {
    std::cerr << e.what() << "\n";
    emit(o, {{"valid", false}, {"step", e.step()}, {"reason", e.reason()}},
         "invalid: step " + std::to_string(e.step()) + ": " + e.reason() + "\n");
    return 1;
  }
}

int cmd_prove(const Options& o) {
  require(o.query, "--query");
  Session ses = open_session(o);
  fai::Theory sigma = o.theory.empty() ? fai::Theory{} : fai::load_theory(o.theory, ses.cfg);
  fai::FAI goal = fai::parse_fai(o.query, ses.u(), ses.chain());
  auto p = fai::try_prove(sigma, ses.s(), goal);
  if (!p) {
    std::cerr << "not provable\n";
    emit(o, {{"provable", false}}, "not provable\n");
    return 1;
  }
  std::string doc = fai::proof_to_json(*p, ses.s()).dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << doc;
  } else {
    write_file(o.out, doc);
    emit(o, {{"provable", true}, {"steps", p->steps.size()}, {"out", o.out}},
         "steps: " + std::to_string(p->steps.size()) + "\n");
  }
  return 0;
}

int cmd_validate(const Options& o) {
  Session ses = open_session(o);
  json members = json::array();
  std::string text;
  text += "chain: " + std::string(fai::logic_name(ses.chain().logic())) + ", " +
          std::to_string(ses.chain().size()) + " degrees\n";
  text += "attributes: " + std::to_string(ses.u().size()) + "\n";
  text += "|S| = " + std::to_string(ses.s().size()) + "\n";
  for (const auto& c : ses.s()) {
    std::string d = fai::describe(*c.term(), ses.u(), ses.chain());
    members.push_back(d);
    text += "  " + d + (c.intensive() ? "" : "  (not intensive)") + "\n";
  }
  bool closed = ses.s().closed();
  text += std::string("closed under composition: ") + (closed ? "yes" : "no") + "\n";
  json j = {{"logic", fai::logic_name(ses.chain().logic())},
            {"degrees", ses.chain().size()},
            {"attributes", ses.u().names()},
            {"size", ses.s().size()},
            {"members", members},
            {"closed", closed},
            {"intensive", ses.s().intensive()}};
  if (!o.context.empty()) {
    fai::LContext ctx = fai::load_context(o.context, ses.cfg);
    text += "objects: " + std::to_string(ctx.size()) + "\n";
    j["objects"] = ctx.size();
  }
  if (!o.theory.empty()) {
    fai::Theory sigma = fai::load_theory(o.theory, ses.cfg);
    text += "rules: " + std::to_string(sigma.size()) + "\n";
    j["rules"] = sigma.size();
  }
  emit(o, j, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy attribute implications parameterized by isotone Galois connections"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--params", o.params, "parameterization JSON")->required();
    sub->add_option("--cap", o.cap, "enumeration cap over L^Y");
    sub->add_flag("--json", o.json, "JSON output");
  };

  auto* closure = app.add_subcommand("closure", "least model of a set under a theory");
  common(closure);
  closure->add_option("--theory", o.theory);
  closure->add_option("--set", o.set, "L-set literal");

  auto* entail = app.add_subcommand("entail", "degree of entailment of 'ANT -> CONS'");
  common(entail);
  entail->add_option("--theory", o.theory);
  entail->add_option("--query", o.query);

  auto* base = app.add_subcommand("base", "non-redundant complete set of a context");
  common(base);
  base->add_option("--context", o.context);
  base->add_option("--out", o.out);
  base->add_flag("--complete-only", o.complete_only);
  base->add_flag("--minimize-sides", o.minimize_sides);

  auto* complete = app.add_subcommand("complete-set", "rules from pseudo-intents");
  common(complete);
  complete->add_option("--context", o.context);
  complete->add_option("--out", o.out);
  complete->add_flag("--minimize-sides", o.minimize_sides);

  auto* intents = app.add_subcommand("intents", "fixed points of the context closure");
  common(intents);
  intents->add_option("--context", o.context);
  intents->add_option("--dot", o.dot, "write the Hasse diagram as DOT");
  intents->add_flag("--list", o.list, "print every intent");

  auto* models = app.add_subcommand("models", "all models of a theory");
  common(models);
  models->add_option("--theory", o.theory);
  models->add_flag("--list", o.list, "print every model");

  auto* check = app.add_subcommand("check-proof", "verify a proof file");
  common(check);
  check->add_option("--theory", o.theory);
  check->add_option("--proof", o.proof);
  check->add_option("--query", o.query, "expected goal");
  check->add_flag("--allow-cutf", o.allow_cutf);

  auto* prove = app.add_subcommand("prove", "synthesize a proof");
  common(prove);
  prove->add_option("--theory", o.theory);
  prove->add_option("--query", o.query);
  prove->add_option("--out", o.out);

  auto* validate = app.add_subcommand("validate", "check and summarize inputs");
  common(validate);
  validate->add_option("--context", o.context);
  validate->add_option("--theory", o.theory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*closure) return cmd_closure(o);
    if (*entail) return cmd_entail(o);
    if (*base) return cmd_base(o, o.complete_only);
    if (*complete) return cmd_base(o, true);
    if (*intents) return cmd_intents(o);
    if (*models) return cmd_models(o);
    if (*check) return cmd_check_proof(o);
    if (*prove) return cmd_prove(o);
    if (*validate) return cmd_validate(o);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: missing " << e.what() << "\n";
    return 2;
  } catch (const fai::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
