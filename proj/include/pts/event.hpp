/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

#include "structures.hpp"
#include "syntax/ast.hpp"
#include "syntax/ops.hpp"

namespace pts {

inline Element term_value(const Structure &st, const Assignment &s, const Term &t) {
  switch (t.kind) {
  case Term::Kind::Var: return s.at(t.name);
  case Term::Kind::Lit: st.check_element(t.value); return t.value;
  case Term::Kind::Const: return st.constant(t.name);
  }
  return 0;
}

/// Classical satisfaction A ⊨_s δ (also accepts guards with ∨).
inline bool eval_delta(const Structure &st, const Assignment &s, const Qf &delta) {
  return std::visit(
      overloaded{[&](const qf::Atom &a) {
                   Tuple args;
                   for (const auto &t : a.args)
                     args.push_back(term_value(st, s, t));
                   return st.holds(a.relation, args);
                 },
                 [&](const qf::Eq &e) { return term_value(st, s, e.lhs) == term_value(st, s, e.rhs); },
                 [&](const qf::Not &n) { return !eval_delta(st, s, n.arg); },
                 [&](const qf::And &a) { return eval_delta(st, s, a.lhs) && eval_delta(st, s, a.rhs); },
                 [&](const qf::Or &o) { return eval_delta(st, s, o.lhs) || eval_delta(st, s, o.rhs); }},
      delta.node());
}

inline void require_vars(const VarSet &needed, const VarSet &domain) {
  if (!is_subset(needed, domain))
    throw VarsNotInDomain("free variables " + join_vars(set_minus(needed, domain)) +
                          " are not in the team domain " + join_vars(domain));
}

/// Σ weight(s) over the assignments s with A ⊨_s δ.
inline Weight event_weight(const Structure &st, const ProbTeam &team, const Qf &delta) {
  require_vars(free_vars(delta), team.vars());
  Weight sum = 0;
  for (const auto &[row, w] : team.rows())
    if (eval_delta(st, team.assignment(row), delta))
      sum += w;
  return sum;
}

} // namespace pts
