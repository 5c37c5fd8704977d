/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

#include "../metafinite.hpp"
#include "../structures.hpp"
#include "../syntax/ast.hpp"
#include "../syntax/ops.hpp"

namespace pts {

/// f(ū) = 0, written SUM_∅(f(ū), u1=u1) = SUM_∅(f(ū), ¬u1=u1).
inline MfFormula fn_is_zero(const std::string &f, const std::vector<Var> &us) {
  Qf g = us.empty() ? qf::top() : qf::eq(Term::var(us[0]), Term::var(us[0]));
  NumTerm fu = mf::fn(f, vars_to_terms(us));
  return mf::num_eq(mf::sum({}, fu, g), mf::sum({}, fu, qf::neg(g)));
}

namespace detail {

class Team2Fo {
public:
  Team2Fo(std::string f, std::vector<Var> v, std::vector<Var> u)
      : f_(std::move(f)), v_(std::move(v)), u_(std::move(u)) {
    for (std::size_t i = 0; i < v_.size(); ++i)
      to_u_.emplace(v_[i], Term::var(u_[i]));
  }

  MfFormula go(const Fopt &phi) const {
    return std::visit(
        overloaded{[&](const fo::Delta &d) {
                     return mf::forall(u_, mf::disj(fn_is_zero(f_, u_), mf::atom(sub(d.delta))));
                   },
                   [&](const fo::Leq &l) { return mf::leq(sum(l.lhs), sum(l.rhs)); },
                   [&](const fo::CondIndep &c) {
                     return mf::num_eq(
                         mf::times(sum(qf::conj(c.cond, c.left)), sum(qf::conj(c.cond, c.right))),
                         mf::times(sum(c.cond), sum(qf::conj(c.cond, qf::conj(c.left, c.right)))));
                   },
                   [&](const fo::CondProbLeq &c) {
                     return mf::leq(mf::times(sum(qf::conj(c.lhs, c.lhs_given)), sum(c.rhs_given)),
                                    mf::times(sum(qf::conj(c.rhs, c.rhs_given)), sum(c.lhs_given)));
                   },
                   [](const fo::Incl &) -> MfFormula {
                     throw DialectError("inclusion atoms have no metafinite translation");
                   },
                   [&](const fo::DotNeg &n) {
                     return mf::disj(mf::neg(go(n.arg)), mf::forall(u_, fn_is_zero(f_, u_)));
                   },
                   [&](const fo::And &a) { return mf::conj(go(a.lhs), go(a.rhs)); },
                   [&](const fo::WeakOr &o) { return mf::disj(go(o.lhs), go(o.rhs)); },
                   [&](const fo::Exists1 &q) { return mf::exists(q.var, go(q.body)); },
                   [&](const fo::Forall1 &q) { return mf::forall(q.var, go(q.body)); }},
        phi.node());
  }

private:
  Qf sub(const Qf &d) const { return substitute(d, to_u_); }
  NumTerm sum(const Qf &d) const { return mf::sum(u_, mf::fn(f_, vars_to_terms(u_)), sub(d)); }

  std::string f_;
  std::vector<Var> v_, u_;
  TermMap to_u_;
};

} // namespace detail

/**
 * ψ_φ(f) with 𝒜0 ⊨_𝕏 φ iff (𝒜0, f_𝕏) ⊨ ψ_φ for teams 𝕏 over `team_vars`,
 * where f_𝕏(s(v̄)) = 𝕏(s). `team_vars` must contain Var(φ) and fixes the
 * argument order of f (default: Var(φ)).
 */
inline MfFormula fopt_to_metafinite(const Fopt &phi, const std::string &f,
                                    std::optional<std::vector<Var>> team_vars = std::nullopt) {
  std::vector<Var> v = team_vars ? *team_vars : free_vars(phi);
  if (!is_subset(free_vars(phi), make_varset(v)))
    throw VarsNotInDomain("free variables of the formula are not among the team variables");
  std::set<Var> avoid(v.begin(), v.end());
  Fopt renamed = rename_bound(phi, avoid);
  std::set<Var> used = all_vars(renamed);
  used.insert(v.begin(), v.end());
  std::vector<Var> u = fresh_names("u", v.size(), used);
  return detail::Team2Fo(f, v, u).go(renamed);
}

/// (𝒜0, f_𝕏) with f_𝕏(s(v̄)) = 𝕏(s) for v̄ = `team_vars` (default: the team's
/// variables). The team is first restricted to `team_vars`.
inline RStructure team_to_rstructure(const Structure &st, const ProbTeam &team, const std::string &f,
                                     std::optional<std::vector<Var>> team_vars = std::nullopt) {
  std::vector<Var> v = team_vars ? *team_vars : team.vars();
  ProbTeam x = restrict(team, make_varset(v));
  RStructure rs(st, f, static_cast<int>(v.size()));
  for (const auto &[row, w] : x.rows()) {
    Assignment s = x.assignment(row);
    Tuple args;
    for (const auto &name : v)
      args.push_back(s.at(name));
    rs.set(args, w);
  }
  return rs;
}

} // namespace pts
