/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

// pts: evaluate, translate and export probabilistic team formulas, and run
// the randomized property suites.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pts/eval.hpp"
#include "pts/ffp.hpp"
#include "pts/harness/suites.hpp"
#include "pts/io/json.hpp"
#include "pts/metafinite.hpp"
#include "pts/syntax/parser.hpp"
#include "pts/syntax/printer.hpp"
#include "pts/translate/ffp.hpp"
#include "pts/translate/fo2team.hpp"
#include "pts/translate/fot.hpp"
#include "pts/translate/metafinite.hpp"
#include "pts/translate/real.hpp"
#include "pts/translate/rewrites.hpp"

namespace {

using namespace pts;

constexpr int kInputError = 2;
constexpr int kVerifyFailed = 1;

std::optional<Dialect> dialect_from(const std::string &name) {
  for (Dialect d : {Dialect::FOT, Dialect::FOTdown, Dialect::FOPT_leq, Dialect::FOPT_leq_ci, Dialect::FOPT_cpi})
    if (name == dialect_name(d))
      return d;
  if (name == "auto")
    return std::nullopt;
  throw Error("unknown dialect " + name);
}

Fopt read_formula(const std::string &text, const std::string &dialect) {
  auto d = dialect_from(dialect);
  return d ? parse(text, *d) : parse_any(text);
}

/// "x=0,y=1"
Assignment parse_assignment(const std::string &text) {
  Assignment s;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error("malformed assignment item '" + item + "'");
    s = s.with(item.substr(0, eq), std::stoi(item.substr(eq + 1)));
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
  return s;
}

struct Options {
  std::string structure, team, rstructure, formula, dialect = "auto", to, from, fn = "f", assign, out;
  std::string suite = "all";
  int arity = -1;
  int cases = 100;
  std::uint64_t seed = 1;
  bool log = false;
};

int cmd_eval(const Options &o) {
  Structure st = io::structure_from_json(io::read_json_file(o.structure));
  ProbTeam team = io::team_from_json(io::read_json_file(o.team));
  Fopt phi = read_formula(o.formula, o.dialect);
  bool plain = o.dialect == "fot" || o.dialect == "fot-down";
  bool v = plain ? eval_fot(st, support_team(team), phi) : eval_fopt(st, team, phi);
  std::cout << (v ? "true" : "false") << "\n";
  return 0;
}

int cmd_eval_mf(const Options &o) {
  RStructure rs = io::rstructure_from_json(io::read_json_file(o.rstructure));
  MfFormula phi = parse_mf(o.formula);
  Assignment s = parse_assignment(o.assign);
  require_vars(free_vars(phi), s.domain());
  std::cout << (eval_mf(rs, s, phi) ? "true" : "false") << "\n";
  return 0;
}

int cmd_eval_ffp(const Options &o) {
  RAlgebra alg = [&] {
    if (!o.rstructure.empty())
      return structure_to_algebra(io::rstructure_from_json(io::read_json_file(o.rstructure)));
    Structure st = io::structure_from_json(io::read_json_file(o.structure));
    if (o.team.empty())
      return structure_to_algebra(RStructure(st, o.fn, 0));
    return structure_to_algebra(st, io::team_from_json(io::read_json_file(o.team)), o.fn);
  }();
  FfpTerm t = parse_ffp(o.formula);
  Assignment s = parse_assignment(o.assign);
  require_vars(free_vars(t), s.domain());
  FfpEvaluator ev(alg, o.log ? &std::cerr : nullptr);
  std::cout << to_string(ev.eval(s, t)) << "\n";
  return 0;
}

int cmd_translate(const Options &o) {
  std::string from = o.from;
  if (from.empty())
    from = o.to == "fopt" ? "mf" : "fopt";
  if (from == "mf") {
    MfFormula psi = parse_mf(o.formula);
    if (o.to == "fopt") {
      auto r = metafinite_to_fopt(psi, o.arity >= 0 ? std::optional<int>(o.arity) : std::nullopt);
      std::cout << to_string(r.formula) << "\n";
    } else if (o.to == "ffp") {
      std::cout << to_string(mf_to_ffp(psi)) << "\n";
    } else {
      throw DialectError("no translation from metafinite formulas to " + o.to);
    }
    return 0;
  }
  if (from != "fopt")
    throw Error("unknown source language " + from);
  Fopt phi = read_formula(o.formula, o.dialect);
  auto structure = [&] {
    if (o.structure.empty())
      throw Error("--to " + o.to + " needs --structure");
    return io::structure_from_json(io::read_json_file(o.structure));
  };
  if (o.to == "fopt")
    std::cout << to_string(fot_to_fopt(phi)) << "\n";
  else if (o.to == "cpi")
    std::cout << to_string(leq_and_ci_to_cpi(phi)) << "\n";
  else if (o.to == "real")
    std::cout << to_string(fopt_to_real(structure(), phi)) << "\n";
  else if (o.to == "smt2")
    std::cout << export_smtlib(fopt_to_real(structure(), phi));
  else if (o.to == "metafinite")
    std::cout << to_string(fopt_to_metafinite(phi, o.fn)) << "\n";
  else if (o.to == "ffp")
    std::cout << to_string(mf_to_ffp(fopt_to_metafinite(phi, o.fn))) << "\n";
  else
    throw DialectError("unknown translation target " + o.to);
  return 0;
}

int cmd_export(const Options &o) {
  Structure st = io::structure_from_json(io::read_json_file(o.structure));
  std::string script = export_smtlib(fopt_to_real(st, read_formula(o.formula, o.dialect)));
  if (o.out.empty() || o.out == "-") {
    std::cout << script;
    return 0;
  }
  std::ofstream file(o.out);
  if (!file)
    throw Error("cannot write " + o.out);
  file << script;
  return 0;
}

int cmd_verify(const Options &o) {
  std::vector<std::string> names;
  if (o.suite == "all")
    for (const auto &[name, _] : harness::suites())
      names.push_back(name);
  else
    names.push_back(o.suite);
  bool ok = true;
  for (const auto &name : names) {
    auto report = harness::run_suite(name, o.seed, o.cases);
    harness::print_report(std::cout, report);
    ok = ok && report.passed == report.cases;
  }
  return ok ? 0 : kVerifyFailed;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Probabilistic team semantics: evaluation, translations and property checks"};
  app.require_subcommand(1);
  Options o;

  auto *eval = app.add_subcommand("eval", "evaluate an FOT/FOPT formula on a team");
  eval->add_option("--structure", o.structure, "structure JSON")->required();
  eval->add_option("--team", o.team, "team JSON")->required();
  eval->add_option("--formula", o.formula, "formula text")->required();
  eval->add_option("--dialect", o.dialect, "fot, fot-down, fopt-leq, fopt-leq-ci, fopt-cpi or auto");

  auto *eval_mf = app.add_subcommand("eval-mf", "evaluate a metafinite formula");
  eval_mf->add_option("--rstructure", o.rstructure, "R-structure JSON")->required();
  eval_mf->add_option("--formula", o.formula, "formula text")->required();
  eval_mf->add_option("--assign", o.assign, "free variables, e.g. x=0,y=1");

  auto *eval_ffp = app.add_subcommand("eval-ffp", "evaluate an FFP term");
  eval_ffp->add_option("--rstructure", o.rstructure, "R-structure JSON");
  eval_ffp->add_option("--structure", o.structure, "structure JSON (with --team)");
  eval_ffp->add_option("--team", o.team, "team JSON providing the weight function");
  eval_ffp->add_option("--fn", o.fn, "name of the weight function");
  eval_ffp->add_option("--term", o.formula, "term text")->required();
  eval_ffp->add_option("--assign", o.assign, "free variables, e.g. x=0,y=1");
  eval_ffp->add_flag("--log", o.log, "print fixed-point iterations to stderr");

  auto *translate = app.add_subcommand("translate", "translate a formula");
  translate->add_option("--formula", o.formula, "formula text")->required();
  translate->add_option("--to", o.to, "fopt, cpi, real, smt2, metafinite or ffp")->required();
  translate->add_option("--from", o.from, "fopt or mf (default: mf for --to fopt, else fopt)");
  translate->add_option("--structure", o.structure, "structure JSON (for real and smt2)");
  translate->add_option("--dialect", o.dialect, "dialect of the input formula");
  translate->add_option("--fn", o.fn, "weight function name");
  translate->add_option("--arity", o.arity, "weight function arity when f does not occur");

  auto *exp = app.add_subcommand("export", "write the SMT-LIB script for a formula");
  exp->add_option("--structure", o.structure, "structure JSON")->required();
  exp->add_option("--formula", o.formula, "formula text")->required();
  exp->add_option("--dialect", o.dialect, "dialect of the input formula");
  exp->add_option("-o,--output", o.out, "output file (default stdout)");

  auto *verify = app.add_subcommand("verify", "run randomized property suites");
  verify->add_option("--suite", o.suite, "suite name or all");
  verify->add_option("--seed", o.seed, "random seed");
  verify->add_option("--cases", o.cases, "cases per suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (eval->parsed())
      return cmd_eval(o);
    if (eval_mf->parsed())
      return cmd_eval_mf(o);
    if (eval_ffp->parsed())
      return cmd_eval_ffp(o);
    if (translate->parsed())
      return cmd_translate(o);
    if (exp->parsed())
      return cmd_export(o);
    if (verify->parsed())
      return cmd_verify(o);
  } catch (const std::exception &e) {
    std::cerr << "pts: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
