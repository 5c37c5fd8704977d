/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

#include "../syntax/ast.hpp"
#include "../syntax/ops.hpp"

namespace pts {

/**
 * Embeds FOT / FOT↓ into FOPT(≤δ): every inclusion atom x̄ ⊆ ȳ becomes
 * ∀¹z̄(¬x̄=z̄ ⩛ ∼¬ȳ=z̄) with fresh z̄; everything else is kept.
 */
inline Fopt fot_to_fopt(const Fopt &phi) {
  if (!in_dialect(phi, Dialect::FOT))
    throw DialectError("fot_to_fopt needs a formula of FOT or FOT-down");
  std::set<Var> used = all_vars(phi);
  auto go = [&](auto &self, const Fopt &f) -> Fopt {
    return std::visit(
        overloaded{[&](const fo::Incl &inc) {
                     std::set<Var> avoid = used;
                     auto zs = fresh_names("z", inc.lhs.size(), avoid);
                     auto z = vars_to_terms(zs);
                     Fopt lhs = fo::delta(qf::neg(qf::tuple_eq(inc.lhs, z)));
                     Fopt rhs = fo::dotneg(fo::delta(qf::neg(qf::tuple_eq(inc.rhs, z))));
                     return fo::forall1(zs, fo::weak_or(lhs, rhs));
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
