/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "../eval.hpp"
#include "../ffp.hpp"
#include "../io/json.hpp"
#include "../metafinite.hpp"
#include "../syntax/printer.hpp"
#include "../translate/ffp.hpp"
#include "../translate/fo2team.hpp"
#include "../translate/fot.hpp"
#include "../translate/metafinite.hpp"
#include "../translate/real.hpp"
#include "gen.hpp"

namespace pts::harness {

/// Outcome of one randomized case; `failure` holds a replayable description.
struct CaseResult {
  bool ok = true;
  io::json failure;
};

struct SuiteReport {
  std::string suite;
  int cases = 0;
  int passed = 0;
  std::optional<io::json> counterexample; ///< first failure, with its case index
};

using Suite = std::function<CaseResult(Gen &)>;

namespace detail {

inline io::json instance(const Structure &st, const ProbTeam &team, const Fopt &phi) {
  return {{"structure", io::to_json(st)}, {"team", io::to_json(team)}, {"formula", to_string(phi)}};
}

inline CaseResult check(bool ok, io::json failure) {
  if (ok)
    return {};
  return {false, std::move(failure)};
}

inline FoptOptions cpi_options() {
  FoptOptions o;
  o.ci = o.cpi = true;
  return o;
}

inline const std::vector<Var> &team_pool() {
  static const std::vector<Var> pool{"x", "y", "z"};
  return pool;
}

inline CaseResult scaling(Gen &g) {
  Structure st = g.structure();
  ProbTeam team = g.team(st.size(), g.vars(team_pool()), true);
  Fopt phi = g.fopt(team.vars(), st.size(), cpi_options());
  bool a = eval_fopt(st, team, phi), b = eval_fopt(st, distr(team), phi);
  return check(a == b, instance(st, team, phi));
}

inline CaseResult locality(Gen &g) {
  Structure st = g.structure();
  ProbTeam team = g.team(st.size(), g.vars(team_pool()), g.rng().coin(9, 10));
  Fopt phi = g.fopt(team.vars(), st.size(), cpi_options());
  VarSet v = free_vars(phi);
  for (const auto &x : team.vars())
    if (g.rng().coin())
      v.push_back(x);
  v = make_varset(v);
  bool a = eval_fopt(st, team, phi), b = eval_fopt(st, restrict(team, v), phi);
  io::json out = instance(st, team, phi);
  out["restrict_to"] = v;
  return check(a == b, out);
}

inline CaseResult substitution(Gen &g) {
  Structure st = g.structure();
  ProbTeam team = g.team(st.size(), g.vars(team_pool()), g.rng().coin(9, 10));
  VarSet xs = g.vars(team_pool(), 1);
  std::vector<Element> as;
  std::map<Var, Element> consts;
  for (const auto &x : xs) {
    as.push_back(g.rng().below(st.size()));
    consts[x] = as.back();
  }
  VarSet scope = set_union(team.vars(), xs);
  Fopt phi = g.fopt(scope, st.size(), cpi_options());
  bool a = eval_fopt(st, extend(team, as, xs), phi);
  bool b = eval_fopt(st, team, substitute_consts(phi, consts));
  io::json out = instance(st, team, phi);
  out["substitute"] = consts;
  return check(a == b, out);
}

inline CaseResult renaming(Gen &g) {
  Structure st = g.structure();
  ProbTeam team = g.team(st.size(), g.vars(team_pool()), g.rng().coin(9, 10));
  FoptOptions o = cpi_options();
  o.quantifiers = 3;
  Fopt phi = g.fopt(team.vars(), st.size(), o);
  Fopt renamed = rename_bound(phi);
  // no binder may reuse a free variable
  VarSet fv = free_vars(phi);
  bool clash = false;
  auto walk = [&](auto &self, const Fopt &f) -> void {
    std::visit(overloaded{[&](const fo::Exists1 &q) {
                            clash = clash || std::binary_search(fv.begin(), fv.end(), q.var);
                            self(self, q.body);
                          },
                          [&](const fo::Forall1 &q) {
                            clash = clash || std::binary_search(fv.begin(), fv.end(), q.var);
                            self(self, q.body);
                          },
                          [&](const fo::DotNeg &n) { self(self, n.arg); },
                          [&](const fo::And &a) {
                            self(self, a.lhs);
                            self(self, a.rhs);
                          },
                          [&](const fo::WeakOr &w) {
                            self(self, w.lhs);
                            self(self, w.rhs);
                          },
                          [](const auto &) {}},
               f.node());
  };
  walk(walk, renamed);
  bool ok = !clash && free_vars(renamed) == fv &&
            eval_fopt(st, team, phi) == eval_fopt(st, team, renamed);
  io::json out = instance(st, team, phi);
  out["renamed"] = to_string(renamed);
  return check(ok, out);
}

inline CaseResult embedding(Gen &g) {
  Structure st = g.structure();
  ProbTeam team = g.team(st.size(), g.vars(team_pool(), 1), g.rng().coin(9, 10));
  FoptOptions o;
  o.leq = false;
  o.incl = true;
  Fopt phi = g.fopt(team.vars(), st.size(), o);
  bool a = eval_fot(st, support_team(team), phi);
  bool b = eval_fopt(st, team, fot_to_fopt(phi));
  return check(a == b, instance(st, team, phi));
}

inline CaseResult team2fo(Gen &g) {
  Structure st = g.structure();
  ProbTeam team = g.team(st.size(), g.vars(team_pool()), g.rng().coin(9, 10));
  Fopt phi = g.fopt(team.vars(), st.size(), cpi_options());
  MfFormula psi = fopt_to_metafinite(phi, "f", team.vars());
  RStructure rs = team_to_rstructure(st, team, "f", team.vars());
  bool a = eval_fopt(st, team, phi), b = eval_mf(rs, {}, psi);
  io::json out = instance(st, team, phi);
  out["translation"] = to_string(psi);
  return check(a == b, out);
}

inline CaseResult fo2team(Gen &g) {
  int k = 1 + g.rng().below(2);
  Structure st = g.structure();
  MfFormula psi = g.sum_star(st.size(), k);
  Fo2TeamResult r = metafinite_to_fopt(psi, k);
  ProbTeam team = g.team(st.size(), r.team_vars, true);
  RStructure rs = team_to_rstructure(st, team, r.fn, r.team_vars);
  bool a = eval_mf(rs, {}, psi), b = eval_fopt(st, team, r.formula);
  io::json out = instance(st, team, r.formula);
  out["sentence"] = to_string(psi);
  return check(a == b, out);
}

/// Uniform quantifiers cost n^m over a prefix of length m, so formulas whose
/// round trip has a longer prefix than `max_prefix` are redrawn.
inline CaseResult roundtrip(Gen &g) {
  constexpr std::size_t max_prefix = 8;
  Structure st = g.structure();
  ProbTeam team = g.team(st.size(), g.vars(team_pool()), true);
  auto draw = [&] {
    FoptOptions o;
    for (int attempt = 0;; ++attempt) {
      if (attempt == 20)
        o.depth = 1;
      Fopt phi = g.fopt(team.vars(), st.size(), o);
      MfFormula psi = fopt_to_metafinite(phi, "f");
      if (prenex(psi).prefix.size() <= max_prefix)
        return std::pair{phi, psi};
    }
  };
  auto [phi, psi] = draw();
  VarSet v = free_vars(phi);
  ProbTeam x = restrict(team, v);
  Fo2TeamResult r = metafinite_to_fopt(psi, static_cast<int>(v.size()));
  ProbTeam renamed = rename_vars(x, v, r.team_vars);
  bool a = eval_fopt(st, x, phi), b = eval_fopt(st, renamed, r.formula);
  io::json out = instance(st, x, phi);
  out["round_trip"] = to_string(r.formula);
  return check(a == b, out);
}

/// Exact check of the translated term and the fixed-point bound.
inline CaseResult toffp(Gen &g) {
  int k = 1 + g.rng().below(2);
  RStructure rs = g.rstructure(3, k);
  MfFormula psi = g.mf_sentence(rs.base().size(), k);
  FfpTerm term = mf_to_ffp(psi);
  RAlgebra alg = structure_to_algebra(rs);
  FfpEvaluator ev(alg);
  FfpValue v = ev.eval({}, term);
  bool expected = eval_mf(rs, {}, psi);
  bool ok = v && *v == (expected ? 1 : 0);
  for (const auto &s : ev.stats())
    ok = ok && s.iterations <= s.bound;
  return check(ok, {{"rstructure", io::to_json(rs)},
                    {"sentence", to_string(psi)},
                    {"value", to_string(v)},
                    {"expected", expected}});
}

inline CaseResult ra_witness(Gen &g) {
  Structure st = g.structure();
  ProbTeam team = g.team(st.size(), g.vars(team_pool()), true);
  bool leq_only = g.rng().coin();
  FoptOptions o = leq_only ? FoptOptions{} : cpi_options();
  o.depth = 3;
  o.quantifiers = 2;
  Fopt phi = g.fopt(team.vars(), st.size(), o);
  RaFormula psi = fopt_to_real(st, phi);
  ProbTeam x = restrict(team, free_vars(phi));
  bool a = eval_fopt(st, team, phi);
  bool b = eval_ra_instance(psi, weights_of(x), st.size());
  bool ok = a == b && !(leq_only && has_mul(psi));
  return check(ok, instance(st, team, phi));
}

/// i0 × i0 ≤ i1 with i0 = SUM_ȳ(f(ȳ), y1=y1), i1 = SUM_x(i0, x=x).
inline MfFormula notransl_sentence(int k) {
  std::vector<Var> ys;
  for (int i = 1; i <= k; ++i)
    ys.push_back("y" + std::to_string(i));
  NumTerm i0 = mf::sum(ys, mf::fn("f", vars_to_terms(ys)), qf::eq(Term::var("y1"), Term::var("y1")));
  NumTerm i1 = mf::sum({"x"}, i0, qf::eq(Term::var("x"), Term::var("x")));
  return mf::leq(mf::times(i0, i0), i1);
}

/// The sentence fails on weights (1, 2) over a 2-element domain and holds
/// after normalization to (1/3, 2/3).
inline CaseResult notransl(Gen &) {
  MfFormula psi = notransl_sentence(1);
  RStructure raw(Structure(2), "f", 1), scaled(Structure(2), "f", 1);
  raw.set({0}, 1);
  raw.set({1}, 2);
  scaled.set({0}, rational(1, 3));
  scaled.set({1}, rational(2, 3));
  bool ok = !eval_mf(raw, {}, psi) && eval_mf(scaled, {}, psi);
  return check(ok, {{"sentence", to_string(psi)}});
}

} // namespace detail

inline const std::map<std::string, Suite> &suites() {
  static const std::map<std::string, Suite> all{
      {"scaling", detail::scaling},       {"locality", detail::locality},
      {"substitution", detail::substitution}, {"renaming", detail::renaming},
      {"embedding", detail::embedding},   {"team2fo", detail::team2fo},
      {"fo2team", detail::fo2team},       {"roundtrip", detail::roundtrip},
      {"toffp", detail::toffp},           {"ra-witness", detail::ra_witness},
      {"notransl", detail::notransl}};
  return all;
}

/// Runs `cases` instances (a single one for notransl); errors count as
/// failures.
inline SuiteReport run_suite(const std::string &name, std::uint64_t seed, int cases) {
  auto it = suites().find(name);
  if (it == suites().end())
    throw Error("unknown suite " + name);
  if (name == "notransl")
    cases = 1;
  SuiteReport report{name, cases, 0, std::nullopt};
  for (int i = 0; i < cases; ++i) {
    Gen g(case_seed(seed, i));
    CaseResult r;
    try {
      r = it->second(g);
    } catch (const std::exception &e) {
      r = {false, {{"error", e.what()}}};
    }
    if (r.ok) {
      ++report.passed;
    } else if (!report.counterexample) {
      r.failure["case"] = i;
      r.failure["seed"] = seed;
      report.counterexample = r.failure;
    }
  }
  return report;
}

inline void print_report(std::ostream &out, const SuiteReport &r) {
  out << r.suite << ": " << r.passed << "/" << r.cases << " passed\n";
  if (r.counterexample)
    out << "counterexample: " << r.counterexample->dump(2) << "\n";
}

} // namespace pts::harness
