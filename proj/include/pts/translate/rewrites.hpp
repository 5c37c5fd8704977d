/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

#include "../syntax/ast.hpp"
#include "../syntax/ops.hpp"

namespace pts {

namespace detail {

inline std::set<Var> names_of(std::initializer_list<const std::vector<Var> *> lists) {
  std::set<Var> out;
  for (auto *l : lists)
    out.insert(l->begin(), l->end());
  return out;
}

} // namespace detail

/// v̄0 ≈ v̄1 as ∀¹x̄((v̄0=x̄) ≤ (v̄1=x̄)).
inline Fopt marginal_identity(const std::vector<Var> &v0, const std::vector<Var> &v1) {
  if (v0.size() != v1.size())
    throw ArityMismatch("marginal identity over tuples of different length");
  std::set<Var> used = detail::names_of({&v0, &v1});
  auto zs = fresh_names("z", v0.size(), used);
  auto z = vars_to_terms(zs);
  return fo::forall1(zs, fo::leq(qf::tuple_eq(vars_to_terms(v0), z), qf::tuple_eq(vars_to_terms(v1), z)));
}

/// v̄0 ≈ v̄1 as ∀¹x̄((v̄0=x̄) ≤ (v̄1=x̄) ∧ (v̄1=x̄) ≤ (v̄0=x̄)).
inline Fopt marginal_identity_two_sided(const std::vector<Var> &v0, const std::vector<Var> &v1) {
  if (v0.size() != v1.size())
    throw ArityMismatch("marginal identity over tuples of different length");
  std::set<Var> used = detail::names_of({&v0, &v1});
  auto zs = fresh_names("z", v0.size(), used);
  auto z = vars_to_terms(zs);
  Qf a = qf::tuple_eq(vars_to_terms(v0), z), b = qf::tuple_eq(vars_to_terms(v1), z);
  return fo::forall1(zs, fo::conj(fo::leq(a, b), fo::leq(b, a)));
}

/// v̄1 ⊥⊥_{v̄0} v̄2 as ∀¹x̄ȳz̄ ci(v̄0=x̄; v̄1=ȳ; v̄2=z̄).
inline Fopt prob_indep(const std::vector<Var> &v0, const std::vector<Var> &v1,
                       const std::vector<Var> &v2) {
  std::set<Var> used = detail::names_of({&v0, &v1, &v2});
  auto as = fresh_names("a", v0.size(), used);
  auto bs = fresh_names("b", v1.size(), used);
  auto cs = fresh_names("c", v2.size(), used);
  std::vector<Var> all = as;
  all.insert(all.end(), bs.begin(), bs.end());
  all.insert(all.end(), cs.begin(), cs.end());
  return fo::forall1(all, fo::ci(qf::tuple_eq(vars_to_terms(v0), vars_to_terms(as)),
                                 qf::tuple_eq(vars_to_terms(v1), vars_to_terms(bs)),
                                 qf::tuple_eq(vars_to_terms(v2), vars_to_terms(cs))));
}

/**
 * Rewrites every ≤ and ⊥⊥ atom into conditional probability inequalities:
 *   δ0 ≤ δ1       as (δ0 | x=x) ≤ (δ1 | x=x)
 *   δ1 ⊥⊥_δ0 δ2   as (δ1|δ0) ≤ (δ1|δ0∧δ2) ∧ (δ1|δ0∧δ2) ≤ (δ1|δ0)
 * where x is the first free variable of φ (#0=#0 for sentences).
 */
inline Fopt leq_and_ci_to_cpi(const Fopt &phi) {
  VarSet fv = free_vars(phi);
  Qf top = fv.empty() ? qf::top() : qf::eq(Term::var(fv[0]), Term::var(fv[0]));
  auto go = [&](auto &self, const Fopt &f) -> Fopt {
    return std::visit(
        overloaded{[&](const fo::Leq &l) { return fo::cpi(l.lhs, top, l.rhs, top); },
                   [&](const fo::CondIndep &c) -> Fopt {
                     Qf both = qf::conj(c.cond, c.right);
                     return fo::And{fo::cpi(c.left, c.cond, c.left, both),
                                    fo::cpi(c.left, both, c.left, c.cond)};
                   },
                   [&](const fo::DotNeg &n) { return fo::dotneg(self(self, n.arg)); },
                   [&](const fo::And &a) -> Fopt { return fo::And{self(self, a.lhs), self(self, a.rhs)}; },
                   [&](const fo::WeakOr &o) { return fo::weak_or(self(self, o.lhs), self(self, o.rhs)); },
                   [&](const fo::Exists1 &q) { return fo::exists1(q.var, self(self, q.body)); },
                   [&](const fo::Forall1 &q) { return fo::forall1(q.var, self(self, q.body)); },
                   [&](const auto &) { return f; }},
        f.node());
  };
  return go(go, phi);
}

} // namespace pts
