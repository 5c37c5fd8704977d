/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

#include <optional>

#include "event.hpp"
#include "structures.hpp"
#include "syntax/ast.hpp"
#include "syntax/ops.hpp"

namespace pts {

namespace detail {

inline Tuple term_values(const Structure &st, const Assignment &s, const std::vector<Term> &ts) {
  Tuple out;
  for (const auto &t : ts)
    out.push_back(term_value(st, s, t));
  return out;
}

/// x̄ ⊆ ȳ over a set of assignments.
inline bool inclusion_holds(const Structure &st, const std::vector<Assignment> &team,
                            const fo::Incl &inc) {
  std::set<Tuple> rhs;
  for (const auto &s : team)
    rhs.insert(term_values(st, s, inc.rhs));
  for (const auto &s : team)
    if (!rhs.count(term_values(st, s, inc.lhs)))
      return false;
  return true;
}

inline bool fot(const Structure &st, const PlainTeam &team, const Fopt &f) {
  if (team.empty())
    return true;
  auto members = [&] {
    std::vector<Assignment> out;
    for (const auto &row : team.rows())
      out.push_back(team.assignment(row));
    return out;
  };
  return std::visit(
      overloaded{[&](const fo::Delta &d) {
                   for (const auto &row : team.rows())
                     if (!eval_delta(st, team.assignment(row), d.delta))
                       return false;
                   return true;
                 },
                 [&](const fo::Incl &i) { return inclusion_holds(st, members(), i); },
                 [&](const fo::DotNeg &n) { return !fot(st, team, n.arg); },
                 [&](const fo::And &a) { return fot(st, team, a.lhs) && fot(st, team, a.rhs); },
                 [&](const fo::WeakOr &o) { return fot(st, team, o.lhs) || fot(st, team, o.rhs); },
                 [&](const fo::Exists1 &q) {
                   for (Element a = 0; a < st.size(); ++a)
                     if (fot(st, team.extend(a, q.var), q.body))
                       return true;
                   return false;
                 },
                 [&](const fo::Forall1 &q) {
                   for (Element a = 0; a < st.size(); ++a)
                     if (!fot(st, team.extend(a, q.var), q.body))
                       return false;
                   return true;
                 },
                 [](const auto &) -> bool {
                   throw DialectError("probabilistic atom in a team-semantics formula");
                 }},
      f.node());
}

inline bool fopt(const Structure &st, const ProbTeam &team, const Fopt &f) {
  if (team.empty())
    return true;
  auto w = [&](const Qf &d) { return event_weight(st, team, d); };
  return std::visit(
      overloaded{[&](const fo::Delta &d) {
                   for (const auto &[row, _] : team.rows())
                     if (!eval_delta(st, team.assignment(row), d.delta))
                       return false;
                   return true;
                 },
                 [&](const fo::Leq &l) { return w(l.lhs) <= w(l.rhs); },
                 [&](const fo::CondIndep &c) {
                   return w(qf::conj(c.cond, c.left)) * w(qf::conj(c.cond, c.right)) ==
                          w(c.cond) * w(qf::conj(c.cond, qf::conj(c.left, c.right)));
                 },
                 [&](const fo::CondProbLeq &c) {
                   return w(qf::conj(c.lhs, c.lhs_given)) * w(c.rhs_given) <=
                          w(qf::conj(c.rhs, c.rhs_given)) * w(c.lhs_given);
                 },
                 [&](const fo::Incl &i) { return inclusion_holds(st, support(team), i); },
                 [&](const fo::DotNeg &n) { return !fopt(st, team, n.arg); },
                 [&](const fo::And &a) { return fopt(st, team, a.lhs) && fopt(st, team, a.rhs); },
                 [&](const fo::WeakOr &o) { return fopt(st, team, o.lhs) || fopt(st, team, o.rhs); },
                 [&](const fo::Exists1 &q) {
                   for (Element a = 0; a < st.size(); ++a)
                     if (fopt(st, extend(team, a, q.var), q.body))
                       return true;
                   return false;
                 },
                 [&](const fo::Forall1 &q) {
                   for (Element a = 0; a < st.size(); ++a)
                     if (!fopt(st, extend(team, a, q.var), q.body))
                       return false;
                   return true;
                 }},
      f.node());
}

} // namespace detail

/// A ⊨_X φ for FOT and FOT↓ formulas over a plain team.
inline bool eval_fot(const Structure &st, const PlainTeam &team, const Fopt &phi) {
  if (!in_dialect(phi, Dialect::FOT))
    throw DialectError("eval_fot needs a formula of FOT or FOT-down");
  require_vars(free_vars(phi), team.vars());
  return detail::fot(st, team, phi);
}

/// A ⊨_𝕏 φ. Inclusion atoms are read on the support.
inline bool eval_fopt(const Structure &st, const ProbTeam &team, const Fopt &phi) {
  require_vars(free_vars(phi), team.vars());
  return detail::fopt(st, team, phi);
}

/**
 * Tries every weighting of the assignments over Var(φ) drawn from `grid`
 * (odometer order, last assignment fastest) and returns the first nonempty
 * team satisfying φ.
 */
inline std::optional<ProbTeam> find_satisfying_team(const Structure &st, const Fopt &phi,
                                                    const std::vector<Weight> &grid) {
  VarSet vars = free_vars(phi);
  std::vector<Tuple> rows;
  for_each_tuple(st.size(), vars.size(), [&](const Tuple &t) { rows.push_back(t); });
  if (grid.empty())
    return std::nullopt;
  std::vector<std::size_t> idx(rows.size(), 0);
  while (true) {
    ProbTeam team(vars);
    for (std::size_t i = 0; i < rows.size(); ++i)
      team.add(rows[i], grid[idx[i]]);
    if (!team.empty() && detail::fopt(st, team, phi))
      return team;
    std::size_t i = rows.size();
    while (i > 0) {
      if (++idx[i - 1] < grid.size())
        break;
      idx[i - 1] = 0;
      --i;
    }
    if (i == 0)
      return std::nullopt;
  }
}

} // namespace pts
