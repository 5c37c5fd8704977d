/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

#include "../ffp.hpp"
#include "../metafinite.hpp"
#include "../syntax/ast.hpp"
#include "../syntax/ops.hpp"
#include "metafinite.hpp"

namespace pts {

namespace detail {

class MfToFfp {
public:
  explicit MfToFfp(std::set<Var> used, std::string ranking)
      : used_(std::move(used)), ranking_(std::move(ranking)) {
    w_ = fresh("w");
  }

  FfpTerm formula(const MfFormula &f) {
    return std::visit(
        overloaded{[&](const mf::Atom &a) { return guard(a.atom); },
                   [&](const mf::Leq &l) { return ffb::chi_leq(term(l.lhs), term(l.rhs)); },
                   [&](const mf::Not &n) { return ffb::chi_not(formula(n.arg)); },
                   [&](const mf::And &a) { return ffb::chi_and(formula(a.lhs), formula(a.rhs)); },
                   [&](const mf::Or &o) { return ffb::chi_or(formula(o.lhs), formula(o.rhs)); },
                   [&](const mf::Exists &q) { return ff::max({q.var}, formula(q.body)); },
                   [&](const mf::Forall &q) {
                     return ffb::chi_not(ff::max({q.var}, ffb::chi_not(formula(q.body))));
                   }},
        f.node());
  }

  FfpTerm term(const NumTerm &t) {
    return std::visit(
        overloaded{[&](const mf::Fn &f) { return ff::fn(f.fn, names(f.args)); },
                   [&](const mf::Times &m) { return ff::mul(term(m.lhs), term(m.rhs)); },
                   [&](const mf::Sum &s) { return sum(t, s); }},
        t.node());
  }

  /// χ[γ] for a quantifier-free guard.
  FfpTerm guard(const Qf &g) {
    return std::visit(
        overloaded{[&](const qf::Atom &a) { return ff::fn("chi_" + a.relation, names(a.args)); },
                   [&](const qf::Eq &e) { return ff::fn("eq", names({e.lhs, e.rhs})); },
                   [&](const qf::Not &n) { return ffb::chi_not(guard(n.arg)); },
                   [&](const qf::And &a) { return ffb::chi_and(guard(a.lhs), guard(a.rhs)); },
                   [&](const qf::Or &o) { return ffb::chi_or(guard(o.lhs), guard(o.rhs)); }},
        g.node());
  }

private:
  Var fresh(const Var &base) {
    Var v = fresh_name(base, used_);
    used_.insert(v);
    return v;
  }

  static std::vector<Var> names(const std::vector<Term> &ts) {
    std::vector<Var> out;
    for (const auto &t : ts) {
      if (!t.is_var())
        throw DialectError("FFP terms take variables only, found " +
                           (t.kind == Term::Kind::Lit ? "#" + std::to_string(t.value) : "$" + t.name));
      out.push_back(t.name);
    }
    return out;
  }

  /**
   * SUM_x̄(i0, γ) = max_x̄ fp[Z(ȳ) ← j](ȳ) with ȳ = x̄ followed by the other
   * free variables and
   *   j = χ[x̲=0]·i0·χγ + max_ū(χ[x̲=ū̲+1]·(Z(ȳ(ū/x̄)) + i0·χγ)),
   * so Z(ȳ) is the prefix sum of i0·χγ up to x̲.
   */
  FfpTerm sum(const NumTerm &t, const mf::Sum &s) {
    std::vector<Var> y = s.bound;
    for (const auto &v : free_vars(t))
      y.push_back(v);
    std::vector<Var> u;
    for (const auto &x : s.bound)
      u.push_back(fresh("u" + x));
    Var z = fresh("Z");
    std::vector<Var> shifted = y;
    for (std::size_t i = 0; i < u.size(); ++i)
      shifted[i] = u[i];

    FfpTerm cell = ff::mul(term(s.body), guard(s.guard));
    FfpTerm rank_x = ffb::rank(ranking_, s.bound, w_);
    FfpTerm first = ff::mul(ffb::chi_eq(rank_x, ff::zero()), cell);
    FfpTerm next = ffb::chi_eq(rank_x, ff::add(ffb::rank(ranking_, u, w_), ff::one()));
    FfpTerm step = ff::max(u, ff::mul(next, ff::add(ff::fn(z, shifted), cell)));
    FfpTerm fixed = ff::fp(z, y, ff::add(first, step), y);
    return s.bound.empty() ? fixed : ff::max(s.bound, fixed);
  }

  std::set<Var> used_;
  std::string ranking_;
  Var w_;
};

} // namespace detail

/**
 * i_φ with [i_φ]_s = 1 if 𝒜 ⊨_s φ and 0 otherwise, over the algebra built
 * by structure_to_algebra: relations become χ_R ("chi_R"), equality "eq",
 * and the ranking is `ranking`.
 */
inline FfpTerm mf_to_ffp(const MfFormula &phi, const std::string &ranking = "E") {
  return detail::MfToFfp(all_vars(phi), ranking).formula(phi);
}

/// The numeric value of a term, for closed SUM terms and the like.
inline FfpTerm numterm_to_ffp(const NumTerm &t, const std::string &ranking = "E") {
  return detail::MfToFfp(all_vars(t), ranking).term(t);
}

/// Plain-set algebra with χ_R, eq, the weight function and E = identity.
inline RAlgebra structure_to_algebra(const RStructure &rs, const std::string &ranking = "E") {
  const Structure &st = rs.base();
  RAlgebra alg(st.size(), ranking);
  for (const auto &[name, rel] : st.relations()) {
    if (!rel.arity)
      continue;
    alg.declare("chi_" + name, *rel.arity);
    for (const auto &t : rel.tuples)
      alg.set("chi_" + name, t, 1);
  }
  alg.declare("eq", 2);
  for (Element a = 0; a < st.size(); ++a)
    alg.set("eq", {a, a}, 1);
  if (rs.fn() == ranking || rs.fn() == "eq" || rs.fn().rfind("chi_", 0) == 0)
    throw Error("weight function name " + rs.fn() + " clashes with an algebra function");
  alg.declare(rs.fn(), rs.arity());
  for (const auto &[t, w] : rs.weights())
    alg.set(rs.fn(), t, w);
  alg.set_identity_ranking();
  return alg;
}

/// The algebra of (𝒜, f_𝕏) for a team over `team_vars` (default: its variables).
inline RAlgebra structure_to_algebra(const Structure &st, const ProbTeam &team, const std::string &f = "f",
                                     std::optional<std::vector<Var>> team_vars = std::nullopt,
                                     const std::string &ranking = "E") {
  return structure_to_algebra(team_to_rstructure(st, team, f, std::move(team_vars)), ranking);
}

} // namespace pts
