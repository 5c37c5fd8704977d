/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

#include <optional>
#include <utility>

#include "../metafinite.hpp"
#include "../syntax/ast.hpp"
#include "../syntax/ops.hpp"

namespace pts {

/// γ* : every γ0 ∨ γ1 written as ¬(¬γ0* ∧ ¬γ1*).
inline Qf eliminate_or(const Qf &g) {
  return std::visit(overloaded{[&](const qf::Atom &) { return g; }, [&](const qf::Eq &) { return g; },
                               [](const qf::Not &n) { return qf::neg(eliminate_or(n.arg)); },
                               [](const qf::And &a) { return qf::conj(eliminate_or(a.lhs), eliminate_or(a.rhs)); },
                               [](const qf::Or &o) {
                                 return qf::neg(qf::conj(qf::neg(eliminate_or(o.lhs)),
                                                         qf::neg(eliminate_or(o.rhs))));
                               }},
                    g.node());
}

/**
 * Rewrites SUM_x̄(f(ȳ), γ) into SUM_ū(f(ū), γ* ∧ ⋀ u_p = y_p) with ū
 * distinct. Position p keeps y_p when it is the first occurrence of a
 * bound variable and otherwise gets a fresh u_p (added to `used`).
 */
inline NumTerm normalize_sum(const NumTerm &t, std::set<Var> &used) {
  auto s = t.as<mf::Sum>();
  auto f = s ? s->body.as<mf::Fn>() : nullptr;
  if (!f)
    throw DialectError("normalize_sum expects an aggregate sum of a weight function");
  std::set<Var> bound(s->bound.begin(), s->bound.end()), seen;
  std::vector<Var> us;
  std::vector<Qf> eqs;
  for (std::size_t p = 0; p < f->args.size(); ++p) {
    const Term &y = f->args[p];
    if (y.is_var() && bound.count(y.name) && seen.insert(y.name).second) {
      us.push_back(y.name);
      continue;
    }
    Var u = fresh_name("u" + std::to_string(p), used);
    used.insert(u);
    us.push_back(u);
    eqs.push_back(qf::eq(Term::var(u), y));
  }
  if (seen.size() != bound.size())
    throw DialectError("summation variable not among the arguments of " + f->fn);
  Qf guard = eliminate_or(s->guard);
  for (const auto &e : eqs)
    guard = qf::conj(guard, e);
  return mf::sum(us, mf::fn(f->fn, vars_to_terms(us)), guard);
}

inline NumTerm normalize_sum(const NumTerm &t) {
  std::set<Var> used = all_vars(t);
  return normalize_sum(t, used);
}

namespace detail {

inline NumTerm substitute_num(const NumTerm &t, const TermMap &m) {
  return std::visit(overloaded{[&](const mf::Fn &f) { return mf::fn(f.fn, substitute(f.args, m)); },
                               [&](const mf::Times &x) {
                                 return mf::times(substitute_num(x.lhs, m), substitute_num(x.rhs, m));
                               },
                               [&](const mf::Sum &s) {
                                 TermMap inner = m;
                                 for (const auto &b : s.bound)
                                   inner.erase(b);
                                 return mf::sum(s.bound, substitute_num(s.body, inner),
                                                substitute(s.guard, inner));
                               }},
                    t.node());
}

inline MfFormula substitute_mf(const MfFormula &f, const TermMap &m) {
  auto without = [&](const Var &v) {
    TermMap inner = m;
    inner.erase(v);
    return inner;
  };
  return std::visit(
      overloaded{[&](const mf::Atom &a) { return mf::atom(substitute(a.atom, m)); },
                 [&](const mf::Leq &l) { return mf::leq(substitute_num(l.lhs, m), substitute_num(l.rhs, m)); },
                 [&](const mf::Not &n) { return mf::neg(substitute_mf(n.arg, m)); },
                 [&](const mf::And &a) { return mf::conj(substitute_mf(a.lhs, m), substitute_mf(a.rhs, m)); },
                 [&](const mf::Or &o) { return mf::disj(substitute_mf(o.lhs, m), substitute_mf(o.rhs, m)); },
                 [&](const mf::Exists &q) { return mf::exists(q.var, substitute_mf(q.body, without(q.var))); },
                 [&](const mf::Forall &q) { return mf::forall(q.var, substitute_mf(q.body, without(q.var))); }},
      f.node());
}

/// Gives every ∃/∀ binder a name used nowhere else in the formula.
inline MfFormula unique_binders(const MfFormula &phi, std::set<Var> &taken) {
  std::set<Var> binders;
  auto go = [&](auto &self, const MfFormula &f) -> MfFormula {
    auto quant = [&](const Var &v, const MfFormula &body, bool exists) {
      Var name = v;
      MfFormula b = body;
      if (!binders.insert(v).second) {
        name = fresh_name(v, taken);
        taken.insert(name);
        binders.insert(name);
        b = substitute_mf(body, TermMap{{v, Term::var(name)}});
      }
      MfFormula inner = self(self, b);
      return exists ? mf::exists(name, inner) : mf::forall(name, inner);
    };
    return std::visit(overloaded{[&](const mf::Not &n) { return mf::neg(self(self, n.arg)); },
                                 [&](const mf::And &a) {
                                   MfFormula l = self(self, a.lhs);
                                   return mf::conj(l, self(self, a.rhs));
                                 },
                                 [&](const mf::Or &o) {
                                   MfFormula l = self(self, o.lhs);
                                   return mf::disj(l, self(self, o.rhs));
                                 },
                                 [&](const mf::Exists &q) { return quant(q.var, q.body, true); },
                                 [&](const mf::Forall &q) { return quant(q.var, q.body, false); },
                                 [&](const auto &) { return f; }},
                        f.node());
  };
  return go(go, phi);
}

inline std::optional<std::pair<std::string, std::size_t>> weight_fn(const NumTerm &t) {
  return std::visit(overloaded{[](const mf::Fn &f) -> std::optional<std::pair<std::string, std::size_t>> {
                                 return std::pair{f.fn, f.args.size()};
                               },
                               [](const mf::Times &m) {
                                 auto l = weight_fn(m.lhs);
                                 return l ? l : weight_fn(m.rhs);
                               },
                               [](const mf::Sum &s) { return weight_fn(s.body); }},
                    t.node());
}

inline std::optional<std::pair<std::string, std::size_t>> weight_fn(const MfFormula &f) {
  using R = std::optional<std::pair<std::string, std::size_t>>;
  return std::visit(overloaded{[](const mf::Atom &) -> R { return std::nullopt; },
                               [](const mf::Leq &l) {
                                 auto r = weight_fn(l.lhs);
                                 return r ? r : weight_fn(l.rhs);
                               },
                               [](const mf::Not &n) { return weight_fn(n.arg); },
                               [](const mf::And &a) {
                                 auto r = weight_fn(a.lhs);
                                 return r ? r : weight_fn(a.rhs);
                               },
                               [](const mf::Or &o) {
                                 auto r = weight_fn(o.lhs);
                                 return r ? r : weight_fn(o.rhs);
                               },
                               [](const auto &q) { return weight_fn(q.body); }},
                    f.node());
}

} // namespace detail

struct Prefix {
  bool exists;
  Var var;
};

struct Prenex {
  std::vector<Prefix> prefix;
  MfFormula matrix;
};

/// Prenex normal form; binders must already be distinct from each other and
/// from the free variables.
inline Prenex prenex(const MfFormula &phi) {
  auto join = [](Prenex l, const Prenex &r) {
    l.prefix.insert(l.prefix.end(), r.prefix.begin(), r.prefix.end());
    return l.prefix;
  };
  return std::visit(
      overloaded{[&](const mf::Atom &) { return Prenex{{}, phi}; },
                 [&](const mf::Leq &) { return Prenex{{}, phi}; },
                 [&](const mf::Not &n) {
                   Prenex p = prenex(n.arg);
                   for (auto &q : p.prefix)
                     q.exists = !q.exists;
                   return Prenex{p.prefix, mf::neg(p.matrix)};
                 },
                 [&](const mf::And &a) {
                   Prenex l = prenex(a.lhs), r = prenex(a.rhs);
                   return Prenex{join(l, r), mf::conj(l.matrix, r.matrix)};
                 },
                 [&](const mf::Or &o) {
                   Prenex l = prenex(o.lhs), r = prenex(o.rhs);
                   return Prenex{join(l, r), mf::disj(l.matrix, r.matrix)};
                 },
                 [&](const mf::Exists &q) {
                   Prenex p = prenex(q.body);
                   p.prefix.insert(p.prefix.begin(), Prefix{true, q.var});
                   return p;
                 },
                 [&](const mf::Forall &q) {
                   Prenex p = prenex(q.body);
                   p.prefix.insert(p.prefix.begin(), Prefix{false, q.var});
                   return p;
                 }},
      phi.node());
}

struct Fo2TeamResult {
  Fopt formula;
  std::vector<Var> team_vars; ///< v1..vk, position p of f is v_{p+1}
  std::string fn;
};

/**
 * φ_ψ(v̄) for a SUM* sentence ψ(f): for nonempty 𝕏 over v̄,
 * 𝒜0 ⊨_𝕏 φ_ψ iff (𝒜0, f_𝕏) ⊨ ψ. `arity` fixes k when f does not occur.
 */
inline Fo2TeamResult metafinite_to_fopt(const MfFormula &psi, std::optional<int> arity = std::nullopt) {
  if (!in_sum_star(psi))
    throw DialectError("metafinite_to_fopt needs a sentence of the SUM* fragment");
  if (!free_vars(psi).empty())
    throw DialectError("metafinite_to_fopt needs a sentence, free: " + join_vars(free_vars(psi)));
  auto fn = detail::weight_fn(psi);
  std::size_t k = fn ? fn->second : static_cast<std::size_t>(arity.value_or(0));
  if (fn && arity && static_cast<std::size_t>(*arity) != fn->second)
    throw ArityMismatch("weight function " + fn->first + " has arity " + std::to_string(fn->second));

  std::set<Var> used = all_vars(psi);
  MfFormula renamed = detail::unique_binders(psi, used);
  std::vector<Var> v;
  for (std::size_t p = 1; p <= k; ++p) {
    v.push_back(fresh_name("v" + std::to_string(p), used));
    used.insert(v.back());
  }

  Prenex pn = prenex(renamed);
  auto matrix = [&](auto &self, const MfFormula &f) -> Fopt {
    return std::visit(
        overloaded{[&](const mf::Atom &a) { return fo::delta(eliminate_or(a.atom)); },
                   [&](const mf::Leq &l) {
                     auto side = [&](const NumTerm &t) {
                       NumTerm n = normalize_sum(t, used);
                       const auto &s = *n.as<mf::Sum>();
                       TermMap m;
                       for (std::size_t p = 0; p < s.bound.size(); ++p)
                         m.emplace(s.bound[p], Term::var(v[p]));
                       return substitute(s.guard, m);
                     };
                     return fo::leq(side(l.lhs), side(l.rhs));
                   },
                   [&](const mf::Not &n) { return fo::dotneg(self(self, n.arg)); },
                   [&](const mf::And &a) -> Fopt { return fo::And{self(self, a.lhs), self(self, a.rhs)}; },
                   [&](const mf::Or &o) { return fo::weak_or(self(self, o.lhs), self(self, o.rhs)); },
                   [](const auto &) -> Fopt { throw ShapeError("quantifier left in prenex matrix"); }},
        f.node());
  };
  Fopt out = matrix(matrix, pn.matrix);
  for (auto it = pn.prefix.rbegin(); it != pn.prefix.rend(); ++it)
    out = it->exists ? fo::exists1(it->var, out) : fo::forall1(it->var, out);
  return {out, v, fn ? fn->first : std::string("f")};
}

} // namespace pts
