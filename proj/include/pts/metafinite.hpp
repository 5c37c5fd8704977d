/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

#include <map>
#include <string>

#include "event.hpp"
#include "structures.hpp"
#include "syntax/ast.hpp"
#include "syntax/ops.hpp"

namespace pts {

/**
 * An R≥0-structure: a finite structure together with one weight function
 * f : A^k → R≥0, stored sparsely (absent tuples map to 0).
 */
class RStructure {
public:
  RStructure(Structure base, std::string fn, int arity)
      : base_(std::move(base)), fn_(std::move(fn)), arity_(arity) {
    if (arity < 0)
      throw Error("negative arity");
  }

  const Structure &base() const noexcept { return base_; }
  const std::string &fn() const noexcept { return fn_; }
  int arity() const noexcept { return arity_; }
  const std::map<Tuple, Weight> &weights() const noexcept { return weights_; }

  void set(Tuple t, const Weight &w) {
    if (static_cast<int>(t.size()) != arity_)
      throw ArityMismatch("weight function " + fn_ + " has arity " + std::to_string(arity_));
    for (Element e : t)
      base_.check_element(e);
    if (w < 0)
      throw Error("negative weight " + to_string(w));
    if (w == 0)
      weights_.erase(t);
    else
      weights_[std::move(t)] = w;
  }

  Weight value(const Tuple &t) const {
    auto it = weights_.find(t);
    return it == weights_.end() ? Weight(0) : it->second;
  }

private:
  Structure base_;
  std::string fn_;
  int arity_;
  std::map<Tuple, Weight> weights_;
};

inline Weight eval_numterm(const RStructure &rs, const Assignment &s, const NumTerm &t) {
  return std::visit(
      overloaded{[&](const mf::Fn &f) {
                   if (f.fn != rs.fn())
                     throw Error("unknown weight function " + f.fn);
                   if (static_cast<int>(f.args.size()) != rs.arity())
                     throw ArityMismatch("weight function " + f.fn + " applied to " +
                                         std::to_string(f.args.size()) + " arguments");
                   Tuple args;
                   for (const auto &a : f.args)
                     args.push_back(term_value(rs.base(), s, a));
                   return rs.value(args);
                 },
                 [&](const mf::Times &m) { return eval_numterm(rs, s, m.lhs) * eval_numterm(rs, s, m.rhs); },
                 [&](const mf::Sum &sum) {
                   Weight total = 0;
                   for_each_tuple(rs.base().size(), sum.bound.size(), [&](const Tuple &as) {
                     Assignment inner = s;
                     for (std::size_t i = 0; i < as.size(); ++i)
                       inner = inner.with(sum.bound[i], as[i]);
                     if (eval_delta(rs.base(), inner, sum.guard))
                       total += eval_numterm(rs, inner, sum.body);
                   });
                   return total;
                 }},
      t.node());
}

inline bool eval_mf(const RStructure &rs, const Assignment &s, const MfFormula &phi) {
  return std::visit(
      overloaded{[&](const mf::Atom &a) { return eval_delta(rs.base(), s, a.atom); },
                 [&](const mf::Leq &l) { return eval_numterm(rs, s, l.lhs) <= eval_numterm(rs, s, l.rhs); },
                 [&](const mf::Not &n) { return !eval_mf(rs, s, n.arg); },
                 [&](const mf::And &a) { return eval_mf(rs, s, a.lhs) && eval_mf(rs, s, a.rhs); },
                 [&](const mf::Or &o) { return eval_mf(rs, s, o.lhs) || eval_mf(rs, s, o.rhs); },
                 [&](const mf::Exists &q) {
                   for (Element a = 0; a < rs.base().size(); ++a)
                     if (eval_mf(rs, s.with(q.var, a), q.body))
                       return true;
                   return false;
                 },
                 [&](const mf::Forall &q) {
                   for (Element a = 0; a < rs.base().size(); ++a)
                     if (!eval_mf(rs, s.with(q.var, a), q.body))
                       return false;
                   return true;
                 }},
      phi.node());
}

namespace detail {

/// SUM_x̄(f(ȳ), γ) with x̄ distinct variables among ȳ.
inline bool is_star_sum(const NumTerm &t, std::string *fn) {
  auto s = t.as<mf::Sum>();
  if (!s)
    return false;
  auto f = s->body.as<mf::Fn>();
  if (!f)
    return false;
  if (!fn->empty() && *fn != f->fn)
    return false;
  *fn = f->fn;
  std::set<Var> seen;
  for (const auto &x : s->bound) {
    if (!seen.insert(x).second)
      return false;
    if (std::find(f->args.begin(), f->args.end(), Term::var(x)) == f->args.end())
      return false;
  }
  return true;
}

inline bool sum_star(const MfFormula &phi, std::string *fn) {
  return std::visit(
      overloaded{[](const mf::Atom &) { return true; },
                 [&](const mf::Leq &l) { return is_star_sum(l.lhs, fn) && is_star_sum(l.rhs, fn); },
                 [&](const mf::Not &n) { return sum_star(n.arg, fn); },
                 [&](const mf::And &a) { return sum_star(a.lhs, fn) && sum_star(a.rhs, fn); },
                 [&](const mf::Or &o) { return sum_star(o.lhs, fn) && sum_star(o.rhs, fn); },
                 [&](const mf::Exists &q) { return sum_star(q.body, fn); },
                 [&](const mf::Forall &q) { return sum_star(q.body, fn); }},
      phi.node());
}

} // namespace detail

/// Membership in FO_{R≥0}(SUM*): every numeric atom compares two aggregate
/// sums of one weight function and × does not occur.
inline bool in_sum_star(const MfFormula &phi) {
  std::string fn;
  return detail::sum_star(phi, &fn);
}

} // namespace pts
